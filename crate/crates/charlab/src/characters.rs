//! Determinantal character evaluators and Weyl denominator products.
//!
//! Each family is a quotient of determinants built from one exponent
//! pattern; the pattern table in [`FamilyPattern`] is the single source of
//! truth so the exponents cannot drift between the symbolic, rational-point,
//! and q-specialization code paths.
//!
//! Three evaluation routes are provided:
//! - [`character_poly`]: full symbolic expansion (guarded, small variable
//!   counts), numerator determinant divided exactly by the Weyl denominator
//!   product with a zero-remainder assertion;
//! - [`character_at`]: exact evaluation at a rational point via fraction-free
//!   determinants, refusing singular denominators;
//! - [`principal_specialization`]: the `x_h -> q^h` (or `x_h -> -q^(h-1)`)
//!   substitution, a univariate exact quotient, then `q = 1`. This is the
//!   route for the all-ones and all-minus-ones points, where the denominator
//!   determinant vanishes.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::laurent::{
    det_rational, det_symbolic, rat_pow_halfexp, HalfExp, LaurentError, LaurentPoly, Monomial,
    Subst,
};
use crate::shapes::{odd_columns, subshapes_of_rectangle, Shape, ShapeError, SkewDiagram};
use crate::{Int, Rat};

/// Default cap on symbolic determinant size; override with the
/// `CHARLAB_MAX_SYMBOLIC_VARS` environment variable.
pub const DEFAULT_MAX_SYMBOLIC_VARS: usize = 8;

pub fn symbolic_var_limit() -> usize {
    std::env::var("CHARLAB_MAX_SYMBOLIC_VARS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_SYMBOLIC_VARS)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CharError {
    #[error("shape has {shape_len} parts but the character has {nvars} variables")]
    ShapeLength { shape_len: usize, nvars: usize },
    #[error("{family} requires {requirement}")]
    InvalidShape {
        family: Family,
        requirement: &'static str,
    },
    #[error(
        "o-even is defined here only for strictly positive parts: with the last part zero
the determinant quotient with its leading factor 2 is twice the irreducible
character and would have to be renormalized; pass a positive shape or use the
so-even family"
    )]
    OEvenZeroPart,
    #[error("symbolic computation limited to {limit} variables (requested {nvars}); set CHARLAB_MAX_SYMBOLIC_VARS to raise")]
    SymbolicGuard { nvars: usize, limit: usize },
    #[error("Weyl denominator vanishes at this point; use the principal specialization path")]
    SingularDenominator,
    #[error("point must have {expected} nonzero coordinates")]
    BadPoint { expected: usize },
    #[error("value is not rational (needs a square root that does not exist exactly)")]
    NonRationalValue,
    #[error("specialization did not reduce to an integer")]
    NonIntegerSpecialization,
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// Classical families handled by this crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Schur function (general linear); type A.
    Gl,
    /// Odd orthogonal character; type B.
    SoOdd,
    /// Symplectic character; type C.
    Sp,
    /// Even orthogonal character with leading factor 2; type D.
    OEven,
    /// SO(2n) irreducible character, sum of two determinants over the type D
    /// denominator; the last part of the shape may be negative.
    SoEven,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Gl => "gl",
            Family::SoOdd => "so-odd",
            Family::Sp => "sp",
            Family::OEven => "o-even",
            Family::SoEven => "so-even",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "gl" => Ok(Family::Gl),
            "so-odd" => Ok(Family::SoOdd),
            "sp" => Ok(Family::Sp),
            "o-even" => Ok(Family::OEven),
            "so-even" => Ok(Family::SoEven),
            other => Err(format!(
                "unknown family {other:?} (expected gl, so-odd, sp, o-even, so-even)"
            )),
        }
    }
}

/// Whether a matrix entry is `x^a`, `x^a + x^-a`, or `x^a - x^-a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Bar {
    None,
    Plus,
    Minus,
}

/// Exponent pattern of one family, `a_t = λ_t + N - t + shift`.
struct FamilyPattern {
    shift: HalfExp,
    bar: Bar,
    /// Leading constant on the numerator determinant (2 for o-even).
    prefactor: i64,
    /// so-even adds a second numerator determinant with the opposite bar.
    second_det: bool,
}

impl Family {
    fn pattern(self) -> FamilyPattern {
        match self {
            Family::Gl => FamilyPattern {
                shift: HalfExp::ZERO,
                bar: Bar::None,
                prefactor: 1,
                second_det: false,
            },
            Family::SoOdd => FamilyPattern {
                shift: HalfExp::HALF,
                bar: Bar::Minus,
                prefactor: 1,
                second_det: false,
            },
            Family::Sp => FamilyPattern {
                shift: HalfExp::ONE,
                bar: Bar::Minus,
                prefactor: 1,
                second_det: false,
            },
            Family::OEven => FamilyPattern {
                shift: HalfExp::ZERO,
                bar: Bar::Plus,
                prefactor: 2,
                second_det: false,
            },
            Family::SoEven => FamilyPattern {
                shift: HalfExp::ZERO,
                bar: Bar::Plus,
                prefactor: 1,
                second_det: true,
            },
        }
    }
}

/// A validated (family, shape, variable count) triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterSpec {
    family: Family,
    shape: Shape,
    nvars: usize,
}

impl CharacterSpec {
    pub fn new(family: Family, shape: Shape, nvars: usize) -> Result<Self, CharError> {
        if shape.len() != nvars || nvars == 0 {
            return Err(CharError::ShapeLength {
                shape_len: shape.len(),
                nvars,
            });
        }
        match family {
            Family::Gl => {
                if !shape.is_integral() {
                    return Err(CharError::InvalidShape {
                        family,
                        requirement: "integer parts",
                    });
                }
                if !shape.is_nonnegative() {
                    return Err(CharError::InvalidShape {
                        family,
                        requirement: "non-negative parts",
                    });
                }
            }
            Family::Sp => {
                if !shape.is_integral() {
                    return Err(CharError::InvalidShape {
                        family,
                        requirement: "integer parts",
                    });
                }
                if !shape.is_nonnegative() {
                    return Err(CharError::InvalidShape {
                        family,
                        requirement: "non-negative parts",
                    });
                }
            }
            Family::SoOdd => {
                if !shape.is_nonnegative() {
                    return Err(CharError::InvalidShape {
                        family,
                        requirement: "non-negative parts",
                    });
                }
            }
            Family::OEven => {
                // non-increasing, so it suffices to look at the last part
                let last = shape.part(nvars - 1);
                if last.is_negative() {
                    return Err(CharError::InvalidShape {
                        family,
                        requirement: "strictly positive parts",
                    });
                }
                if last.is_zero() {
                    return Err(CharError::OEvenZeroPart);
                }
            }
            Family::SoEven => {
                if nvars >= 2 {
                    let second_last = shape.part(nvars - 2);
                    let last = shape.part(nvars - 1);
                    let abs_last = if last.is_negative() { -last } else { last };
                    if second_last < abs_last {
                        return Err(CharError::InvalidShape {
                            family,
                            requirement: "second-to-last part at least |last part|",
                        });
                    }
                }
            }
        }
        Ok(CharacterSpec {
            family,
            shape,
            nvars,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// `a_t = λ_t + N - t + shift` for `t = 1..N`.
    fn numerator_exps(&self) -> Vec<HalfExp> {
        let n = self.nvars as i64;
        let shift = self.family.pattern().shift;
        (0..self.nvars)
            .map(|t| self.shape.part(t) + HalfExp::from_int(n - 1 - t as i64) + shift)
            .collect()
    }

    fn denominator_exps(&self) -> Vec<HalfExp> {
        let n = self.nvars as i64;
        let shift = self.family.pattern().shift;
        (0..self.nvars)
            .map(|t| HalfExp::from_int(n - 1 - t as i64) + shift)
            .collect()
    }
}

fn entry_symbolic(nvars: usize, h: usize, a: HalfExp, bar: Bar) -> LaurentPoly {
    let pos = LaurentPoly::var_pow(nvars, h, a);
    match bar {
        Bar::None => pos,
        Bar::Plus => &pos + &LaurentPoly::var_pow(nvars, h, -a),
        Bar::Minus => &pos - &LaurentPoly::var_pow(nvars, h, -a),
    }
}

fn matrix_symbolic(nvars: usize, exps: &[HalfExp], bar: Bar) -> Vec<Vec<LaurentPoly>> {
    (0..nvars)
        .map(|h| {
            exps.iter()
                .map(|&a| entry_symbolic(nvars, h, a, bar))
                .collect()
        })
        .collect()
}

/// The symbolic matrix whose determinant is the family's Weyl denominator.
pub fn denominator_matrix(family: Family, nvars: usize) -> Vec<Vec<LaurentPoly>> {
    let spec = CharacterSpec {
        family,
        shape: Shape::rectangle(HalfExp::ZERO, nvars).expect("zero rectangle"),
        nvars,
    };
    matrix_symbolic(nvars, &spec.denominator_exps(), family.pattern().bar)
}

/// Weyl denominator in closed product form, as a list of factors
/// (a monomial prefactor, binomials, and for type D the constant 2).
pub fn weyl_denominator_factors(family: Family, nvars: usize) -> Vec<LaurentPoly> {
    assert!(nvars >= 1);
    let n = nvars;
    let mut factors = Vec::new();
    let one = LaurentPoly::one(n);

    let monomial_all = |e: HalfExp| -> LaurentPoly {
        LaurentPoly::term(Monomial::new(vec![e; n]), Rat::one(), n)
    };

    match family {
        // det(x_h^(N-t)) = prod_{h<t} (x_h - x_t)
        Family::Gl => {
            for h in 0..n {
                for t in h + 1..n {
                    factors.push(&LaurentPoly::var(n, h) - &LaurentPoly::var(n, t));
                }
            }
        }
        // (x_1...x_n)^(-n+1/2) prod_{h<t}(x_h-x_t)(x_h x_t - 1) prod_h (x_h - 1)
        Family::SoOdd => {
            factors.push(monomial_all(
                HalfExp::from_int(-(n as i64)) + HalfExp::HALF,
            ));
            push_pair_factors(&mut factors, n);
            for h in 0..n {
                factors.push(&LaurentPoly::var(n, h) - &one);
            }
        }
        // (x_1...x_n)^(-n) prod_{h<t}(x_h-x_t)(x_h x_t - 1) prod_h (x_h^2 - 1)
        Family::Sp => {
            factors.push(monomial_all(HalfExp::from_int(-(n as i64))));
            push_pair_factors(&mut factors, n);
            for h in 0..n {
                factors.push(
                    &LaurentPoly::var_pow(n, h, HalfExp::from_int(2)) - &one,
                );
            }
        }
        // 2 (x_1...x_n)^(-n+1) prod_{h<t}(x_h-x_t)(x_h x_t - 1)
        Family::OEven | Family::SoEven => {
            factors.push(LaurentPoly::from_int(2, n));
            factors.push(monomial_all(HalfExp::from_int(-(n as i64) + 1)));
            push_pair_factors(&mut factors, n);
        }
    }
    factors
}

fn push_pair_factors(factors: &mut Vec<LaurentPoly>, n: usize) {
    let one = LaurentPoly::one(n);
    for h in 0..n {
        for t in h + 1..n {
            factors.push(&LaurentPoly::var(n, h) - &LaurentPoly::var(n, t));
            factors.push(&(&LaurentPoly::var(n, h) * &LaurentPoly::var(n, t)) - &one);
        }
    }
}

/// Product form of the Weyl denominator for the family.
pub fn weyl_denominator(family: Family, nvars: usize) -> LaurentPoly {
    weyl_denominator_factors(family, nvars)
        .iter()
        .fold(LaurentPoly::one(nvars), |acc, f| &acc * f)
}

/// Fully expanded character as a Laurent polynomial.
pub fn character_poly(spec: &CharacterSpec) -> Result<LaurentPoly, CharError> {
    let limit = symbolic_var_limit();
    if spec.nvars > limit {
        return Err(CharError::SymbolicGuard {
            nvars: spec.nvars,
            limit,
        });
    }
    let pat = spec.family.pattern();
    let exps = spec.numerator_exps();
    let mut num = det_symbolic(&matrix_symbolic(spec.nvars, &exps, pat.bar))?;
    if pat.second_det {
        num = &num + &det_symbolic(&matrix_symbolic(spec.nvars, &exps, Bar::Minus))?;
    }
    if pat.prefactor != 1 {
        num = num.scale(&Rat::from_integer(pat.prefactor.into()));
    }
    let mut out = num;
    for factor in weyl_denominator_factors(spec.family, spec.nvars) {
        out = out.exact_div(&factor)?;
    }
    Ok(out)
}

/// Common fractional part (0 or 1/2) of an exponent list.
fn frac_part(exps: &[HalfExp]) -> HalfExp {
    let f = if exps[0].is_integral() {
        HalfExp::ZERO
    } else {
        HalfExp::HALF
    };
    debug_assert!(
        exps.iter().all(|e| e.is_integral() == f.is_zero()),
        "shape parity invariant violated"
    );
    f
}

fn rat_pow(v: &Rat, k: HalfExp) -> Result<Rat, CharError> {
    rat_pow_halfexp(v, k).map_err(|e| match e {
        LaurentError::NonSquareValue => CharError::NonRationalValue,
        other => CharError::Laurent(other),
    })
}

fn matrix_at(v: &[Rat], exps: &[HalfExp], bar: Bar, f: HalfExp) -> Result<Vec<Vec<Rat>>, CharError> {
    v.iter()
        .map(|x| {
            exps.iter()
                .map(|&a| {
                    let hi = rat_pow(x, a - f)?;
                    Ok(match bar {
                        Bar::None => hi,
                        Bar::Plus => hi + rat_pow(x, -(a + f))?,
                        Bar::Minus => hi - rat_pow(x, -(a + f))?,
                    })
                })
                .collect()
        })
        .collect()
}

/// Exact character value at a rational point.
///
/// `negate`, when given, flips the sign of the marked coordinates first
/// (`so_λ(-x)` is `character_at(so_λ, x, all-true)`). The common half-integer
/// part of the exponent pattern is factored out of the determinant rows, so
/// integer shapes evaluate exactly at arbitrary nonzero rational points,
/// signs included; half-integer shapes additionally need the coordinate
/// product to have an exact square root.
pub fn character_at(
    spec: &CharacterSpec,
    point: &[Rat],
    negate: Option<&[bool]>,
) -> Result<Rat, CharError> {
    let n = spec.nvars;
    if point.len() != n || point.iter().any(|p| p.is_zero()) {
        return Err(CharError::BadPoint { expected: n });
    }
    let mut v: Vec<Rat> = point.to_vec();
    if let Some(signs) = negate {
        if signs.len() != n {
            return Err(CharError::BadPoint { expected: n });
        }
        for (x, &s) in v.iter_mut().zip(signs) {
            if s {
                *x = -x.clone();
            }
        }
    }

    let pat = spec.family.pattern();
    let num_exps = spec.numerator_exps();
    let den_exps = spec.denominator_exps();
    let f_num = frac_part(&num_exps);
    let f_den = frac_part(&den_exps);

    let den = det_rational(&matrix_at(&v, &den_exps, pat.bar, f_den)?)?;
    if den.is_zero() {
        return Err(CharError::SingularDenominator);
    }
    let mut num = det_rational(&matrix_at(&v, &num_exps, pat.bar, f_num)?)?;
    if pat.second_det {
        num += det_rational(&matrix_at(&v, &num_exps, Bar::Minus, f_num)?)?;
    }
    if pat.prefactor != 1 {
        num *= Rat::from_integer(pat.prefactor.into());
    }

    let mut value = num / den;
    let f_diff = f_num - f_den;
    if !f_diff.is_zero() {
        let prod = v.iter().fold(Rat::one(), |acc, x| acc * x);
        value *= rat_pow(&prod, f_diff)?;
    }
    Ok(value)
}

/// `x_h -> q^h` (or `-q^(h-1)` when negating), reduced to a univariate exact
/// quotient, evaluated at `q = 1`. This is the dimension-like value, sign
/// included; the all-ones point always goes through here because the Weyl
/// denominator vanishes there.
pub fn principal_specialization(spec: &CharacterSpec, negate: bool) -> Result<Int, CharError> {
    let n = spec.nvars;
    let pat = spec.family.pattern();
    let num_exps = spec.numerator_exps();
    let den_exps = spec.denominator_exps();
    let f_num = frac_part(&num_exps);
    let f_den = frac_part(&den_exps);

    // v_h^k as a univariate monomial in q (h is 1-based).
    let v_pow = |h: usize, k: HalfExp| -> LaurentPoly {
        let k = k.as_int().expect("reduced exponents are integers");
        let base = if negate { h as i64 - 1 } else { h as i64 };
        let coeff = if negate && k % 2 != 0 {
            -Rat::one()
        } else {
            Rat::one()
        };
        LaurentPoly::term(
            Monomial::new(vec![HalfExp::from_int(base * k)]),
            coeff,
            1,
        )
    };
    let build = |exps: &[HalfExp], bar: Bar, f: HalfExp| -> Vec<Vec<LaurentPoly>> {
        (1..=n)
            .map(|h| {
                exps.iter()
                    .map(|&a| {
                        let hi = v_pow(h, a - f);
                        match bar {
                            Bar::None => hi,
                            Bar::Plus => &hi + &v_pow(h, -(a + f)),
                            Bar::Minus => &hi - &v_pow(h, -(a + f)),
                        }
                    })
                    .collect()
            })
            .collect()
    };

    let den = det_symbolic(&build(&den_exps, pat.bar, f_den))?;
    if den.is_zero() {
        return Err(CharError::SingularDenominator);
    }
    let mut num = det_symbolic(&build(&num_exps, pat.bar, f_num))?;
    if pat.second_det {
        num = &num + &det_symbolic(&build(&num_exps, Bar::Minus, f_num))?;
    }
    if pat.prefactor != 1 {
        num = num.scale(&Rat::from_integer(pat.prefactor.into()));
    }

    let mut quot = num.exact_div(&den)?;

    let f_diff = f_num - f_den;
    if !f_diff.is_zero() {
        if negate {
            // (prod_h -q^(h-1))^(±1/2) is not a real monomial for odd n and
            // never needed by the identities; refuse instead of branch-picking.
            return Err(CharError::NonRationalValue);
        }
        let e_sum: i64 = (1..=n as i64).sum();
        let exp = HalfExp::from_int(e_sum).checked_mul(f_diff)?;
        quot = quot.mul_term(&Monomial::new(vec![exp]), &Rat::one());
    }

    let value = quot.coeff_sum();
    if !value.is_integer() {
        return Err(CharError::NonIntegerSpecialization);
    }
    Ok(value.to_integer())
}

/// `sp_(m^N)(1,...,1) = prod_{1<=h<t<=N+1} (2m+2N+3-h-t)/(2N+3-h-t)`.
pub fn sp_dimension_product(m: i64, big_n: i64) -> Rat {
    assert!(m >= 0 && big_n >= 0);
    let mut value = Rat::one();
    for h in 1..=big_n + 1 {
        for t in h + 1..=big_n + 1 {
            value *= Rat::new(
                (2 * m + 2 * big_n + 3 - h - t).into(),
                (2 * big_n + 3 - h - t).into(),
            );
        }
    }
    value
}

/// `SPP*(2m,n,n) = 2 prod_{1<=h<t<=n} (2m+2n-h-t)/(2n-h-t)`.
pub fn spp_star_product(m: i64, n: i64) -> Rat {
    assert!(m >= 0 && n >= 1);
    let mut value = Rat::from_integer(2.into());
    for h in 1..=n {
        for t in h + 1..=n {
            value *= Rat::new((2 * m + 2 * n - h - t).into(), (2 * n - h - t).into());
        }
    }
    value
}

/// Which odd-column count is admitted in the Schur expansion of so-even.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OddColsMode {
    /// `oddcols(((2c)^n)/ν) = 0`: expands `so-even` at shape `(c^n)`.
    Zero,
    /// `oddcols(((2c)^n)/ν) = 2c`: expands `so-even` at `(c^(n-1), -c)`.
    TwoC,
}

/// `(x_1...x_n)^(-c) * Σ s_ν` over subshapes `ν` of the `(2c) x n` rectangle
/// with the admissible odd-column count.
pub fn so_even_schur_sum(
    c: HalfExp,
    nvars: usize,
    mode: OddColsMode,
) -> Result<LaurentPoly, CharError> {
    assert!(!c.is_negative());
    let two_c = c.doubled();
    let rect = Shape::rectangle(HalfExp::from_int(two_c), nvars)?;
    let target = match mode {
        OddColsMode::Zero => 0,
        OddColsMode::TwoC => two_c as usize,
    };

    let mut sum = LaurentPoly::zero(nvars);
    for nu in subshapes_of_rectangle(two_c, nvars) {
        let skew = SkewDiagram::new(&rect, &nu)?;
        if odd_columns(&skew) != target {
            continue;
        }
        let spec = CharacterSpec::new(Family::Gl, nu.padded(nvars)?, nvars)?;
        sum = &sum + &character_poly(&spec)?;
    }
    let prefactor = Monomial::new(vec![-c; nvars]);
    Ok(sum.mul_term(&prefactor, &Rat::one()))
}

/// `s_(M^n)` evaluated at `x_1, x_1^-1, ..., x_n, x_n^-1`, as a Laurent
/// polynomial in `x_1..x_n`: the 2n-variable Schur polynomial with the last
/// n variables substituted by inverses.
pub fn schur_at_inverse_pairs(shape: &Shape, n: usize) -> Result<LaurentPoly, CharError> {
    let spec = CharacterSpec::new(Family::Gl, shape.padded(2 * n)?, 2 * n)?;
    let poly = character_poly(&spec)?;
    let mut actions: Vec<Subst> = (0..2 * n).map(|_| Subst::Keep).collect();
    for i in 0..n {
        actions[n + i] = Subst::invert(i);
    }
    let substituted = poly.substitute(&actions)?;
    Ok(restrict_vars(&substituted, n))
}

/// Reinterprets a polynomial using only the first `n` variables in the
/// n-variable ring. Panics if a later variable actually occurs.
pub fn restrict_vars(p: &LaurentPoly, n: usize) -> LaurentPoly {
    let mut out = LaurentPoly::zero(n);
    for (m, c) in p.terms() {
        assert!(
            m.exps()[n..].iter().all(|e| e.is_zero()),
            "polynomial uses variables beyond the first {n}"
        );
        out = &out
            + &LaurentPoly::term(Monomial::new(m.exps()[..n].to_vec()), c.clone(), n);
    }
    out
}
