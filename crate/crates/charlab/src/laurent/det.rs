//! Determinants: cofactor expansion with minor memoization for symbolic
//! matrices, fraction-free Bareiss elimination for matrices of exact
//! rationals. Elimination on symbolic entries fills in badly, which is why
//! the symbolic path expands instead.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{LaurentError, LaurentPoly};
use crate::Rat;

/// Determinant of a square matrix of Laurent polynomials.
///
/// Expands along rows, memoizing the minors indexed by column subsets, so the
/// cost is `O(2^n)` polynomial multiplications rather than `O(n!)`.
pub fn det_symbolic(rows: &[Vec<LaurentPoly>]) -> Result<LaurentPoly, LaurentError> {
    let n = rows.len();
    if n == 0 || n > 20 || rows.iter().any(|r| r.len() != n) {
        return Err(LaurentError::BadMatrix);
    }
    let nvars = rows[0][0].nvars();
    for row in rows {
        for entry in row {
            if entry.nvars() != nvars {
                return Err(LaurentError::VarMismatch {
                    left: nvars,
                    right: entry.nvars(),
                });
            }
        }
    }

    // minor[mask] = det of the submatrix on rows 0..popcount(mask) and the
    // column set encoded by mask.
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut minors: Vec<Option<LaurentPoly>> = vec![None; (full as usize) + 1];
    minors[0] = Some(LaurentPoly::one(nvars));
    for mask in 1..=full {
        let k = mask.count_ones() as usize; // expand along row k-1
        let mut acc = LaurentPoly::zero(nvars);
        let mut pos = 0usize;
        for j in 0..n {
            let bit = 1u32 << j;
            if mask & bit == 0 {
                continue;
            }
            let sub = minors[(mask ^ bit) as usize]
                .as_ref()
                .expect("minor computed in mask order");
            let term = rows[k - 1][j].try_mul(sub)?;
            if (k - 1 + pos) % 2 == 0 {
                acc = &acc + &term;
            } else {
                acc = &acc - &term;
            }
            pos += 1;
        }
        minors[mask as usize] = Some(acc);
    }
    Ok(minors[full as usize].take().unwrap())
}

/// Determinant of a square matrix of rationals.
///
/// Rows are scaled to integers, then eliminated fraction-free (Bareiss): all
/// intermediate divisions are exact, so there is no coefficient blowup from
/// rational normalization.
pub fn det_rational(rows: &[Vec<Rat>]) -> Result<Rat, LaurentError> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(LaurentError::BadMatrix);
    }

    let mut scale = BigInt::one();
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for row in rows {
        let mut l = BigInt::one();
        for v in row {
            l = l.lcm(v.denom());
        }
        m.push(row.iter().map(|v| v.numer() * (&l / v.denom())).collect());
        scale *= l;
    }

    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(Rat::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }

    let mut det = m[n - 1][n - 1].clone();
    if sign < 0 {
        det = -det;
    }
    Ok(Rat::new(det, scale))
}
