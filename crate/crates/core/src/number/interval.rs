use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// A closed interval with exact rational endpoints.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RealInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RealInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RealInterval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        RealInterval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&BigRational::zero())
    }

    pub fn is_subset_of(&self, other: &RealInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn intersects(&self, other: &RealInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn add(&self, other: &RealInterval) -> RealInterval {
        RealInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn neg(&self) -> RealInterval {
        RealInterval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn sub(&self, other: &RealInterval) -> RealInterval {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RealInterval) -> RealInterval {
        let c = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        RealInterval { lo, hi }
    }

    pub fn scale(&self, q: &BigRational) -> RealInterval {
        let a = &self.lo * q;
        let b = &self.hi * q;
        if q.is_negative() {
            RealInterval { lo: b, hi: a }
        } else {
            RealInterval { lo: a, hi: b }
        }
    }

    pub fn offset(&self, q: &BigRational) -> RealInterval {
        RealInterval {
            lo: &self.lo + q,
            hi: &self.hi + q,
        }
    }

    /// Strictly positive, strictly negative, or straddling zero.
    pub fn sign(&self) -> Option<i32> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    /// Approximate midpoint as `f64`, for display and search seeding only.
    pub fn approx(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Debug for RealInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}] (~{:.6})", self.lo, self.hi, self.approx())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::rational::rat;

    #[test]
    fn arithmetic_encloses() {
        let a = RealInterval::new(rat(-1, 2), rat(1, 1));
        let b = RealInterval::new(rat(2, 1), rat(3, 1));
        let p = a.mul(&b);
        assert_eq!(p.lo(), &rat(-3, 2));
        assert_eq!(p.hi(), &rat(3, 1));
        assert!(a.add(&b).contains(&rat(2, 1)));
        assert_eq!(a.sign(), None);
        assert_eq!(b.sign(), Some(1));
        assert_eq!(b.scale(&rat(-1, 1)).sign(), Some(-1));
    }
}
