//! Exact-arithmetic toolkit for classical group characters and plane
//! partition counts.
//!
//! Everything here is computed over arbitrary-precision rationals; there is
//! no floating point on any code path. The crate is organized around five
//! layers:
//!
//! - [`laurent`]: sparse multivariate Laurent polynomials with half-integer
//!   exponents and exact rational coefficients, plus symbolic and
//!   fraction-free determinants.
//! - [`shapes`]: partitions / highest-weight sequences, skew diagrams, and
//!   column statistics.
//! - [`characters`]: determinantal evaluators for Schur, odd/even orthogonal
//!   and symplectic characters, Weyl denominator products, and principal
//!   specializations.
//! - [`identities`]: mechanical verification of the subset-sum lemmas and the
//!   character factorization identities, symbolically on small instances and
//!   by randomized exact evaluation on larger ones.
//! - [`combinat`]: brute-force enumeration of plane partitions in a box with
//!   symmetry filters, cross-checked against character and product-formula
//!   counts.

pub mod characters;
pub mod combinat;
pub mod identities;
pub mod laurent;
pub mod shapes;

/// Exact rational scalar used throughout the crate.
pub type Rat = num_rational::BigRational;

/// Arbitrary-precision integer used for counts and dimensions.
pub type Int = num_bigint::BigInt;

pub use laurent::{HalfExp, LaurentPoly, Monomial};
pub use shapes::Shape;

/// Canonical text form of a rational: `p` for integers, `p/q` otherwise.
pub fn rat_str(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p`, or `p/q` into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    use num_traits::Zero;
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: Int = num
        .parse()
        .map_err(|_| format!("cannot parse rational {s:?}"))?;
    let d: Int = den
        .parse()
        .map_err(|_| format!("cannot parse rational {s:?}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rat::new(n, d))
}
