//! Partitions, highest-weight sequences, skew diagrams, and column
//! statistics.
//!
//! A [`Shape`] is a non-increasing sequence of half-integers of explicit
//! length `N`; trailing zeros are significant because the determinantal
//! character formulas are indexed by `N`. All parts must share parity
//! (all integers or all strict half-integers), and only the last part may be
//! negative, which is exactly what the even orthogonal weights
//! `(c^(n-1), -c)` need.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::laurent::HalfExp;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ShapeError {
    #[error("parts must be non-increasing")]
    NotNonIncreasing,
    #[error("parts must be all integers or all half-integers")]
    MixedParity,
    #[error("only the last part may be negative")]
    NegativePart,
    #[error("operation requires integer parts")]
    NonIntegerPart,
    #[error("operation requires non-negative parts")]
    NegativeNotAllowed,
    #[error("cannot pad a shape whose last part is negative")]
    PadNegative,
    #[error("cannot parse shape part {0:?}")]
    Parse(String),
}

/// A non-increasing sequence of half-integers with explicit length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Shape {
    parts: Vec<HalfExp>,
}

impl Shape {
    pub fn new(parts: Vec<HalfExp>) -> Result<Self, ShapeError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(ShapeError::NotNonIncreasing);
        }
        if parts
            .windows(2)
            .any(|w| w[0].is_integral() != w[1].is_integral())
        {
            return Err(ShapeError::MixedParity);
        }
        let n = parts.len();
        if n > 1 && parts[..n - 1].iter().any(|p| p.is_negative()) {
            return Err(ShapeError::NegativePart);
        }
        Ok(Shape { parts })
    }

    pub fn from_ints(parts: &[i64]) -> Result<Self, ShapeError> {
        Shape::new(parts.iter().map(|&k| HalfExp::from_int(k)).collect())
    }

    pub fn empty() -> Self {
        Shape { parts: Vec::new() }
    }

    /// The rectangle `(M^n)`.
    pub fn rectangle(m: HalfExp, n: usize) -> Result<Self, ShapeError> {
        if m.is_negative() {
            return Err(ShapeError::NegativeNotAllowed);
        }
        Ok(Shape {
            parts: vec![m; n],
        })
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &[HalfExp] {
        &self.parts
    }

    /// `λ_i` (0-based), or zero past the end.
    pub fn part(&self, i: usize) -> HalfExp {
        self.parts.get(i).copied().unwrap_or(HalfExp::ZERO)
    }

    pub fn sum(&self) -> HalfExp {
        self.parts
            .iter()
            .fold(HalfExp::ZERO, |acc, &p| acc + p)
    }

    pub fn is_integral(&self) -> bool {
        self.parts.iter().all(|p| p.is_integral())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.parts.iter().all(|p| !p.is_negative())
    }

    pub fn integer_parts(&self) -> Result<Vec<i64>, ShapeError> {
        self.parts
            .iter()
            .map(|p| p.as_int().ok_or(ShapeError::NonIntegerPart))
            .collect()
    }

    /// Extends with zeros to length `n`. A shape already longer than `n`
    /// stays as it is only if the overhang is all zeros.
    pub fn padded(&self, n: usize) -> Result<Self, ShapeError> {
        if self.parts.len() >= n {
            if self.parts[n..].iter().any(|p| !p.is_zero()) {
                return Err(ShapeError::PadNegative);
            }
            return Ok(Shape {
                parts: self.parts[..n].to_vec(),
            });
        }
        if self.parts.last().map(|p| p.is_negative()).unwrap_or(false) {
            return Err(ShapeError::PadNegative);
        }
        if !self.is_integral() {
            // padding a strict half-integer shape with zeros would mix parity
            return Err(ShapeError::MixedParity);
        }
        let mut parts = self.parts.clone();
        parts.resize(n, HalfExp::ZERO);
        Ok(Shape { parts })
    }

    /// Drops trailing zeros.
    pub fn trimmed(&self) -> Shape {
        let mut parts = self.parts.clone();
        while parts.last().map(|p| p.is_zero()).unwrap_or(false) {
            parts.pop();
        }
        Shape { parts }
    }

    /// `λ + 1/2`, the shift appearing in the bridge identities.
    pub fn plus_half(&self) -> Shape {
        Shape {
            parts: self.parts.iter().map(|&p| p + HalfExp::HALF).collect(),
        }
    }

    /// `(λ_1, ..., λ_{N-1}, -λ_N)`, the conjugate even orthogonal weight.
    pub fn negate_last(&self) -> Result<Shape, ShapeError> {
        let mut parts = self.parts.clone();
        match parts.last_mut() {
            Some(last) => *last = -*last,
            None => return Err(ShapeError::NegativeNotAllowed),
        }
        Shape::new(parts)
    }

    /// Conjugate (transposed) partition; integer non-negative parts only.
    /// The result has no trailing zeros.
    pub fn conjugate(&self) -> Result<Shape, ShapeError> {
        if !self.is_nonnegative() {
            return Err(ShapeError::NegativeNotAllowed);
        }
        let parts = self.integer_parts()?;
        let width = parts.first().copied().unwrap_or(0) as usize;
        let conj = (1..=width)
            .map(|j| HalfExp::from_int(parts.iter().filter(|&&p| p >= j as i64).count() as i64))
            .collect();
        Ok(Shape { parts: conj })
    }
}

impl fmt::Display for Shape {
    /// Comma-separated parts, halves written `a/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        Ok(())
    }
}

impl FromStr for Shape {
    type Err = ShapeError;

    /// Parses `"2,2"`, `"3/2,1/2"`, `"2,2,-2"`. An empty string is the empty
    /// shape.
    fn from_str(s: &str) -> Result<Self, ShapeError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Shape::empty());
        }
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            let half = match tok.split_once('/') {
                Some((num, den)) => {
                    if den.trim() != "2" {
                        return Err(ShapeError::Parse(tok.to_string()));
                    }
                    let d: i64 = num
                        .trim()
                        .parse()
                        .map_err(|_| ShapeError::Parse(tok.to_string()))?;
                    HalfExp::from_doubled(d)
                }
                None => {
                    let k: i64 = tok.parse().map_err(|_| ShapeError::Parse(tok.to_string()))?;
                    HalfExp::from_int(k)
                }
            };
            parts.push(half);
        }
        Shape::new(parts)
    }
}

/// A skew diagram `outer/inner` with integer, non-negative shapes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewDiagram {
    outer: Vec<i64>,
    inner: Vec<i64>,
}

impl SkewDiagram {
    pub fn new(outer: &Shape, inner: &Shape) -> Result<Self, ShapeError> {
        if !outer.is_nonnegative() || !inner.is_nonnegative() {
            return Err(ShapeError::NegativeNotAllowed);
        }
        let mut o = outer.integer_parts()?;
        let mut i = inner.integer_parts()?;
        let n = o.len().max(i.len());
        o.resize(n, 0);
        i.resize(n, 0);
        if o.iter().zip(&i).any(|(a, b)| a < b) {
            return Err(ShapeError::NotNonIncreasing);
        }
        Ok(SkewDiagram { outer: o, inner: i })
    }

    pub fn cells(&self) -> usize {
        self.outer
            .iter()
            .zip(&self.inner)
            .map(|(o, i)| (o - i) as usize)
            .sum()
    }

    /// Height of column `j` (1-based) of the skew shape.
    pub fn column_height(&self, j: i64) -> usize {
        self.outer
            .iter()
            .zip(&self.inner)
            .filter(|&(&o, &i)| o >= j && i < j)
            .count()
    }

    pub fn width(&self) -> i64 {
        self.outer.first().copied().unwrap_or(0)
    }
}

/// Number of columns of a skew diagram with an odd number of cells.
pub fn odd_columns(d: &SkewDiagram) -> usize {
    (1..=d.width())
        .filter(|&j| d.column_height(j) % 2 == 1)
        .count()
}

/// All partitions fitting in the `M x n` rectangle (at most `n` parts, each
/// at most `M`), in descending lexicographic order, trailing zeros trimmed.
/// There are `C(M+n, n)` of them.
pub fn subshapes_of_rectangle(m: i64, n: usize) -> SubshapeIter {
    assert!(m >= 0, "rectangle width must be non-negative");
    SubshapeIter {
        next: Some(vec![m; n]),
    }
}

pub struct SubshapeIter {
    next: Option<Vec<i64>>,
}

impl Iterator for SubshapeIter {
    type Item = Shape;

    fn next(&mut self) -> Option<Shape> {
        let cur = self.next.take()?;
        let shape = Shape::from_ints(&cur).expect("enumeration keeps parts sorted").trimmed();
        // Successor in descending lex: decrement the last nonzero part and
        // raise everything after it to the new value.
        let mut nxt = cur;
        match nxt.iter().rposition(|&p| p > 0) {
            Some(i) => {
                nxt[i] -= 1;
                let v = nxt[i];
                for p in nxt.iter_mut().skip(i + 1) {
                    *p = v;
                }
                self.next = Some(nxt);
            }
            None => self.next = None,
        }
        Some(shape)
    }
}
