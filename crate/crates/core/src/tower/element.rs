use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::spec::TowerSpec;
use crate::error::{Error, Result};
use crate::number::QuadraticElement;

/// `(Σ xs[i] ξ^i + ω Σ ys[i] ξ^i) / den`
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompositeElement {
    pub xs: Vec<BigInt>,
    pub ys: Vec<BigInt>,
    pub den: BigInt,
}

impl CompositeElement {
    pub fn new(xs: Vec<BigInt>, ys: Vec<BigInt>, den: BigInt) -> Self {
        assert_eq!(
            xs.len(),
            ys.len(),
            "coordinate vectors must have equal length"
        );
        assert!(den.is_positive(), "denominator must be positive");
        CompositeElement { xs, ys, den }
    }

    pub fn from_i64s(xs: &[i64], ys: &[i64], den: i64) -> Self {
        Self::new(
            xs.iter().map(|&x| BigInt::from(x)).collect(),
            ys.iter().map(|&y| BigInt::from(y)).collect(),
            BigInt::from(den),
        )
    }

    /// `ξ` itself, over the denominator 1.
    pub fn xi(ell: usize) -> Self {
        let mut xs = vec![BigInt::zero(); ell];
        xs[1] = BigInt::one();
        Self::new(xs, vec![BigInt::zero(); ell], BigInt::one())
    }

    pub fn degree(&self) -> usize {
        self.xs.len()
    }

    /// Check that the element matches the tower's degree.
    pub fn check_shape(&self, t: &TowerSpec) -> Result<()> {
        if self.xs.len() != t.degree() {
            return Err(Error::validation(
                "element-shape",
                "/element",
                format!(
                    "element has {} coordinates per part, tower degree is {}",
                    self.xs.len(),
                    t.degree()
                ),
            ));
        }
        Ok(())
    }

    /// Coefficients in `M` of the powers of `ξ`: `(x_k + ω y_k)/den`.
    pub fn m_coeffs(&self) -> Vec<QuadraticElement> {
        let d = BigRational::from_integer(self.den.clone());
        self.xs
            .iter()
            .zip(&self.ys)
            .map(|(x, y)| {
                QuadraticElement::new(
                    BigRational::from_integer(x.clone()) / &d,
                    BigRational::from_integer(y.clone()) / &d,
                )
            })
            .collect()
    }

    /// `(Σ ys[k] ξ^k)/den` as rational coordinates in `L`.
    pub fn y_part(&self) -> Vec<BigRational> {
        self.ys
            .iter()
            .map(|y| BigRational::new(y.clone(), self.den.clone()))
            .collect()
    }

    /// `−α`, in the same denominator.
    pub fn negated(&self) -> Self {
        Self {
            xs: self.xs.iter().map(|x| -x).collect(),
            ys: self.ys.iter().map(|y| -y).collect(),
            den: self.den.clone(),
        }
    }

    /// `α + t` for an integer `t`.
    pub fn translated(&self, t: &BigInt) -> Self {
        let mut r = self.clone();
        r.xs[0] += t * &self.den;
        r
    }

    /// `α + t·ω` for an integer `t`.
    pub fn translated_omega(&self, t: &BigInt) -> Self {
        let mut r = self.clone();
        r.ys[0] += t * &self.den;
        r
    }
}

impl fmt::Debug for CompositeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CompositeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[BigInt]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "{}|{}/{}", join(&self.xs), join(&self.ys), self.den)
    }
}

/// Compact form `x0,x1,...|y0,y1,.../den`; the `/den` suffix is optional.
impl FromStr for CompositeElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::Syntax(format!("element `{s}`: {m}"));
        let (body, den) = match s.rsplit_once('/') {
            Some((b, d)) => (
                b,
                d.trim()
                    .parse::<BigInt>()
                    .map_err(|_| bad("bad denominator"))?,
            ),
            None => (s, BigInt::one()),
        };
        if !den.is_positive() {
            return Err(bad("denominator must be positive"));
        }
        let (xs, ys) = body
            .split_once('|')
            .ok_or_else(|| bad("expected `xs|ys`"))?;
        let parse = |part: &str| -> Result<Vec<BigInt>> {
            part.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<BigInt>()
                        .map_err(|_| bad("bad integer coordinate"))
                })
                .collect()
        };
        let (xs, ys) = (parse(xs)?, parse(ys)?);
        if xs.len() != ys.len() {
            return Err(bad("x and y parts differ in length"));
        }
        Ok(CompositeElement { xs, ys, den })
    }
}
