//! Rational univariate polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dense::Poly;
use super::field::Rationals;
use crate::number::rational::{self, rat_int};

pub type UniPoly = Poly<BigRational>;

impl Poly<BigRational> {
    pub fn from_i64s(c: &[i64]) -> Self {
        Poly::new(
            &Rationals,
            c.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect(),
        )
    }

    pub fn from_ints(c: &[BigInt]) -> Self {
        Poly::new(&Rationals, c.iter().map(rat_int).collect())
    }

    pub fn from_rationals(c: Vec<BigRational>) -> Self {
        Poly::new(&Rationals, c)
    }

    pub fn value_at(&self, x: &BigRational) -> BigRational {
        self.eval(&Rationals, x)
    }

    pub fn sign_at(&self, x: &BigRational) -> i32 {
        let v = self.value_at(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Sign of the leading coefficient (0 for the zero polynomial).
    pub fn lc_sign(&self) -> i32 {
        match self.lc() {
            None => 0,
            Some(c) if c.is_positive() => 1,
            Some(_) => -1,
        }
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs().iter().all(rational::is_integer)
    }

    /// `(c, P)` with `self = c·P`, `P` primitive with integer coefficients and
    /// positive leading coefficient.
    pub fn primitive_integer(&self) -> (BigRational, Vec<BigInt>) {
        if self.is_zero() {
            return (BigRational::zero(), Vec::new());
        }
        let den = rational::common_denom(self.coeffs());
        let ints: Vec<BigInt> = self
            .coeffs()
            .iter()
            .map(|q| (q * rat_int(&den)).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim = ints.iter().map(|x| x / &g).collect();
        (BigRational::new(g, den), prim)
    }

    /// Primitive integer associate as a rational polynomial.
    pub fn primitive(&self) -> Self {
        Self::from_ints(&self.primitive_integer().1)
    }

    /// `self / gcd(self, self′)`, monic.
    pub fn squarefree_part(&self) -> Self {
        let q = Rationals;
        if self.degree().unwrap_or(0) == 0 {
            return self.monic(&q);
        }
        let g = self.gcd(&q, &self.derivative(&q));
        self.div_rem(&q, &g).0.monic(&q)
    }

    pub fn is_squarefree(&self) -> bool {
        let q = Rationals;
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&q, &self.derivative(&q)).degree() == Some(0),
        }
    }

    /// Strict bound on the absolute value of every complex root.
    pub fn cauchy_bound(&self) -> BigRational {
        let lc = self.lc().expect("root bound of the zero polynomial").abs();
        let m = self.coeffs()[..self.deg0()]
            .iter()
            .map(|c| c.abs() / &lc)
            .max()
            .unwrap_or_else(BigRational::zero);
        m + BigRational::one()
    }

    /// Pretty form in `var`, highest degree first.
    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                out.push_str(&a.to_string());
            }
            match i {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{i}")),
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::rational::{int, rat};

    #[test]
    fn primitive_parts() {
        let p = UniPoly::from_rationals(vec![rat(-1, 2), rat(0, 1), rat(-3, 4)]);
        let (c, prim) = p.primitive_integer();
        assert_eq!(prim, vec![int(2), int(0), int(3)]);
        assert_eq!(c, rat(-1, 4));
    }

    #[test]
    fn squarefree() {
        let p = UniPoly::from_i64s(&[1, -2, 1]);
        assert_eq!(p.squarefree_part(), UniPoly::from_i64s(&[-1, 1]));
        assert!(!p.is_squarefree());
        assert!(UniPoly::from_i64s(&[17, -3, 0, 1]).is_squarefree());
    }

    #[test]
    fn display() {
        let p = UniPoly::from_i64s(&[-1982251, 0, 3249, 0, -114, 0, 1]);
        assert_eq!(p.display("x"), "x^6 - 114x^4 + 3249x^2 - 1982251");
    }
}
