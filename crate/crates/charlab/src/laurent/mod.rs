//! Sparse multivariate Laurent polynomials with exact rational coefficients.
//!
//! Exponents may be half-integers; they are stored doubled, so all exponent
//! arithmetic is plain integer arithmetic and `x^(1/2)` needs no special
//! casing. Equivalently, everything happens in the variables `y_i = x_i^(1/2)`.
//!
//! Polynomials are kept in canonical form (no zero coefficients, terms in a
//! `BTreeMap` under the lexicographic monomial order), so structural equality
//! is polynomial equality.

mod det;

pub use det::{det_rational, det_symbolic};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::Rat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LaurentError {
    #[error("variable count mismatch: {left} vs {right}")]
    VarMismatch { left: usize, right: usize },
    #[error("matrix is not square (or is empty)")]
    BadMatrix,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division left a nonzero remainder")]
    NonzeroRemainder,
    #[error("substituting zero (or zero raised to a negative or fractional power)")]
    ZeroSubstitution,
    #[error("half-integer exponent applied to a value without an exact rational square root")]
    NonSquareValue,
    #[error("substitution would produce a quarter-integer exponent")]
    QuarterExponent,
    #[error("exponent too large")]
    ExponentOverflow,
}

/// An exponent that may be a half-integer, stored as twice its value.
///
/// `doubled` even means the exponent is an ordinary integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfExp {
    doubled: i64,
}

impl HalfExp {
    pub const ZERO: HalfExp = HalfExp { doubled: 0 };
    pub const HALF: HalfExp = HalfExp { doubled: 1 };
    pub const ONE: HalfExp = HalfExp { doubled: 2 };

    pub fn from_int(k: i64) -> Self {
        HalfExp { doubled: 2 * k }
    }

    pub fn from_doubled(doubled: i64) -> Self {
        HalfExp { doubled }
    }

    pub fn doubled(self) -> i64 {
        self.doubled
    }

    pub fn is_integral(self) -> bool {
        self.doubled % 2 == 0
    }

    pub fn is_zero(self) -> bool {
        self.doubled == 0
    }

    pub fn is_negative(self) -> bool {
        self.doubled < 0
    }

    /// The exponent as an integer, if it is one.
    pub fn as_int(self) -> Option<i64> {
        if self.is_integral() {
            Some(self.doubled / 2)
        } else {
            None
        }
    }

    /// Multiplies two half-integer exponents; fails if the product would be a
    /// quarter-integer.
    pub fn checked_mul(self, other: HalfExp) -> Result<HalfExp, LaurentError> {
        let prod = self
            .doubled
            .checked_mul(other.doubled)
            .ok_or(LaurentError::ExponentOverflow)?;
        if prod % 2 != 0 {
            return Err(LaurentError::QuarterExponent);
        }
        Ok(HalfExp { doubled: prod / 2 })
    }

    pub fn scale(self, k: i64) -> HalfExp {
        HalfExp {
            doubled: self.doubled * k,
        }
    }
}

impl Add for HalfExp {
    type Output = HalfExp;
    fn add(self, rhs: HalfExp) -> HalfExp {
        HalfExp {
            doubled: self.doubled + rhs.doubled,
        }
    }
}

impl Sub for HalfExp {
    type Output = HalfExp;
    fn sub(self, rhs: HalfExp) -> HalfExp {
        HalfExp {
            doubled: self.doubled - rhs.doubled,
        }
    }
}

impl Neg for HalfExp {
    type Output = HalfExp;
    fn neg(self) -> HalfExp {
        HalfExp {
            doubled: -self.doubled,
        }
    }
}

impl fmt::Display for HalfExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.doubled % 2 == 0 {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}

/// Exponent vector of a single term; ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: Vec<HalfExp>,
}

impl Monomial {
    pub fn unit(nvars: usize) -> Self {
        Monomial {
            exps: vec![HalfExp::ZERO; nvars],
        }
    }

    pub fn new(exps: Vec<HalfExp>) -> Self {
        Monomial { exps }
    }

    pub fn exps(&self) -> &[HalfExp] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    fn combine(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    fn sub(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&d, &m)| d <= m)
    }

    fn is_unit(&self) -> bool {
        self.exps.iter().all(|e| e.is_zero())
    }
}

/// A per-variable substitution action. See [`LaurentPoly::substitute`].
#[derive(Clone, Debug)]
pub enum Subst {
    /// Leave the variable alone.
    Keep,
    /// `x_i -> c * x_var^(±1)` with `c` a nonzero rational.
    Var {
        coeff: Rat,
        var: usize,
        invert: bool,
    },
    /// `x_i -> c` with `c` a nonzero rational.
    Const(Rat),
    /// `x_i -> c * q^power`, mapping into a univariate ring in `q`.
    QPow { coeff: Rat, power: HalfExp },
}

impl Subst {
    /// `x_i -> x_i^(-1)`.
    pub fn invert(var: usize) -> Subst {
        Subst::Var {
            coeff: Rat::one(),
            var,
            invert: true,
        }
    }

    /// `x_i -> -x_i`.
    pub fn negate(var: usize) -> Subst {
        Subst::Var {
            coeff: -Rat::one(),
            var,
            invert: false,
        }
    }
}

/// Multivariate Laurent polynomial in canonical sparse form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(Rat::one(), nvars)
    }

    pub fn constant(c: Rat, nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::unit(nvars), c);
        }
        p
    }

    pub fn from_int(k: i64, nvars: usize) -> Self {
        Self::constant(Rat::from_integer(k.into()), nvars)
    }

    /// The variable `x_var` (0-based).
    pub fn var(nvars: usize, var: usize) -> Self {
        Self::var_pow(nvars, var, HalfExp::ONE)
    }

    /// `x_var^e` for a half-integer exponent `e`.
    pub fn var_pow(nvars: usize, var: usize, e: HalfExp) -> Self {
        assert!(var < nvars, "variable index out of range");
        let mut exps = vec![HalfExp::ZERO; nvars];
        exps[var] = e;
        Self::term(Monomial::new(exps), Rat::one(), nvars)
    }

    pub fn term(m: Monomial, c: Rat, nvars: usize) -> Self {
        assert_eq!(m.nvars(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.is_unit() && c.is_one())
                .unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Constant term.
    pub fn constant_coeff(&self) -> Rat {
        self.coeff(&Monomial::unit(self.nvars))
    }

    /// If the polynomial is a constant, returns it.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_unit() {
                return Some(c.clone());
            }
        }
        None
    }

    /// Leading term under the lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Smallest and largest exponent of `x_var` over all terms.
    pub fn exp_range(&self, var: usize) -> Option<(HalfExp, HalfExp)> {
        self.terms
            .keys()
            .map(|m| m.exps[var])
            .fold(None, |acc, e| match acc {
                None => Some((e, e)),
                Some((lo, hi)) => Some((lo.min(e), hi.max(e))),
            })
    }

    /// Sum of all coefficients, i.e. the value at the all-ones point.
    pub fn coeff_sum(&self) -> Rat {
        self.terms.values().fold(Rat::zero(), |a, c| a + c)
    }

    fn insert_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_nvars(&self, other: &LaurentPoly) -> Result<(), LaurentError> {
        if self.nvars != other.nvars {
            return Err(LaurentError::VarMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.check_nvars(other)?;
        let mut out = LaurentPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.insert_term(m1.combine(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn negate(&self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Multiplies by the single term `c * x^m`.
    pub fn mul_term(&self, m: &Monomial, c: &Rat) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.combine(m), cc * c))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut out = LaurentPoly::one(self.nvars);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Exact division in the Laurent ring.
    ///
    /// Reduces leading term by leading term under the lexicographic order
    /// after shifting both operands into the ordinary polynomial ring; a
    /// nonzero remainder is reported as an error rather than discarded.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.check_nvars(divisor)?;
        if divisor.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero(self.nvars));
        }

        // Shift so every exponent is non-negative; lex on N^n is a
        // well-order, which makes the reduction loop terminate.
        let min_p = self.min_exps();
        let min_d = divisor.min_exps();
        let mut rem = self.mul_term(&negated(&min_p), &Rat::one());
        let div = divisor.mul_term(&negated(&min_d), &Rat::one());
        let (lm_d, lc_d) = {
            let (m, c) = div.leading().unwrap();
            (m.clone(), c.clone())
        };

        let mut quot = LaurentPoly::zero(self.nvars);
        while let Some((lm_r, lc_r)) = rem.leading() {
            if !lm_d.divides(lm_r) {
                return Err(LaurentError::NonzeroRemainder);
            }
            let t = lm_r.sub(&lm_d);
            let c = lc_r / &lc_d;
            quot.insert_term(t.clone(), c.clone());
            rem = &rem - &div.mul_term(&t, &c);
        }

        // Undo the shifts.
        let back = min_p.sub(&min_d);
        Ok(quot.mul_term(&back, &Rat::one()))
    }

    fn min_exps(&self) -> Monomial {
        let mut iter = self.terms.keys();
        let mut mins = match iter.next() {
            Some(m) => m.exps.clone(),
            None => vec![HalfExp::ZERO; self.nvars],
        };
        for m in iter {
            for (i, &e) in m.exps.iter().enumerate() {
                if e < mins[i] {
                    mins[i] = e;
                }
            }
        }
        Monomial::new(mins)
    }

    /// Applies one substitution action per variable.
    ///
    /// If any action maps into the univariate `q`-ring, all of them must
    /// (constants are also fine), and the result lives in one variable.
    /// Otherwise the ambient ring is unchanged.
    pub fn substitute(&self, actions: &[Subst]) -> Result<LaurentPoly, LaurentError> {
        if actions.len() != self.nvars {
            return Err(LaurentError::VarMismatch {
                left: self.nvars,
                right: actions.len(),
            });
        }
        let to_q = actions.iter().any(|a| matches!(a, Subst::QPow { .. }));
        if to_q
            && !actions
                .iter()
                .all(|a| matches!(a, Subst::QPow { .. } | Subst::Const(_)))
        {
            return Err(LaurentError::VarMismatch {
                left: self.nvars,
                right: 1,
            });
        }
        for a in actions {
            let c = match a {
                Subst::Var { coeff, .. } | Subst::QPow { coeff, .. } => coeff,
                Subst::Const(c) => c,
                Subst::Keep => continue,
            };
            if c.is_zero() {
                return Err(LaurentError::ZeroSubstitution);
            }
            if let Subst::Var { var, .. } = a {
                if *var >= self.nvars {
                    return Err(LaurentError::VarMismatch {
                        left: self.nvars,
                        right: *var + 1,
                    });
                }
            }
        }

        let out_nvars = if to_q { 1 } else { self.nvars };
        let mut out = LaurentPoly::zero(out_nvars);
        for (mono, coeff) in &self.terms {
            let mut c = coeff.clone();
            let mut exps = vec![HalfExp::ZERO; out_nvars];
            for (i, &e) in mono.exps.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                match &actions[i] {
                    Subst::Keep => exps[i] = exps[i] + e,
                    Subst::Var { coeff, var, invert } => {
                        c *= rat_pow_halfexp(coeff, e)?;
                        exps[*var] = exps[*var] + if *invert { -e } else { e };
                    }
                    Subst::Const(v) => c *= rat_pow_halfexp(v, e)?,
                    Subst::QPow { coeff, power } => {
                        c *= rat_pow_halfexp(coeff, e)?;
                        exps[0] = exps[0] + power.checked_mul(e)?;
                    }
                }
            }
            out.insert_term(Monomial::new(exps), c);
        }
        Ok(out)
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Rat]) -> Result<Rat, LaurentError> {
        if point.len() != self.nvars {
            return Err(LaurentError::VarMismatch {
                left: self.nvars,
                right: point.len(),
            });
        }
        let mut total = Rat::zero();
        'terms: for (mono, coeff) in &self.terms {
            let mut v = coeff.clone();
            for (i, &e) in mono.exps.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                if point[i].is_zero() {
                    if e.is_negative() || !e.is_integral() {
                        return Err(LaurentError::ZeroSubstitution);
                    }
                    continue 'terms;
                }
                v *= rat_pow_halfexp(&point[i], e)?;
            }
            total += v;
        }
        Ok(total)
    }
}

fn negated(m: &Monomial) -> Monomial {
    Monomial::new(m.exps.iter().map(|&e| -e).collect())
}

/// `c^e` for a half-integer exponent; half exponents require `c` to be the
/// square of a rational.
pub fn rat_pow_halfexp(c: &Rat, e: HalfExp) -> Result<Rat, LaurentError> {
    if e.is_zero() {
        return Ok(Rat::one());
    }
    if c.is_zero() {
        return Err(LaurentError::ZeroSubstitution);
    }
    if let Some(k) = e.as_int() {
        return rat_pow_i64(c, k);
    }
    let s = rat_sqrt(c).ok_or(LaurentError::NonSquareValue)?;
    rat_pow_i64(&s, e.doubled())
}

fn rat_pow_i64(c: &Rat, k: i64) -> Result<Rat, LaurentError> {
    if k == 0 {
        return Ok(Rat::one());
    }
    if c.is_zero() {
        return Err(LaurentError::ZeroSubstitution);
    }
    let e = u32::try_from(k.unsigned_abs()).map_err(|_| LaurentError::ExponentOverflow)?;
    let p = num_traits::pow::pow(c.clone(), e as usize);
    Ok(if k < 0 { p.recip() } else { p })
}

/// Exact square root of a non-negative rational, if one exists.
pub fn rat_sqrt(c: &Rat) -> Option<Rat> {
    if c.is_negative() {
        return None;
    }
    if c.is_zero() {
        return Some(Rat::zero());
    }
    let n = c.numer().sqrt();
    let d = c.denom().sqrt();
    if &(&n * &n) == c.numer() && &(&d * &d) == c.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("variable count mismatch")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(&rhs.negate()).expect("variable count mismatch")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("variable count mismatch")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.negate()
    }
}

impl fmt::Display for LaurentPoly {
    /// Canonical text form: terms sorted descending by monomial order, each
    /// written `coeff * x1^e1 x2^e2 ...` with half exponents as `a/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.is_unit() {
                write!(f, "{}", c)?;
                continue;
            }
            write!(f, "{} *", c)?;
            for (i, &e) in m.exps.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                if e == HalfExp::ONE {
                    write!(f, " x{}", i + 1)?;
                } else {
                    write!(f, " x{}^{}", i + 1, e)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
