//! The real quadratic field `M = Q(√D)` with integral basis `{1, ω}`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::RealInterval;
use super::rational::{self, Squarefree};
use crate::error::{Error, Result};
use crate::poly::field::{Field, Ring};

/// Trial-division bound for the squarefreeness check on the radicand.
pub const SQUAREFREE_TRIAL_BOUND: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OmegaKind {
    /// `ω = √D`
    Sqrt,
    /// `ω = (1 + √D)/2`, only for `D ≡ 1 (mod 4)`
    Half,
}

/// `a + b·ω` with rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadraticElement {
    pub a: BigRational,
    pub b: BigRational,
}

impl QuadraticElement {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QuadraticElement { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        QuadraticElement {
            a: rational::rat(a, 1),
            b: rational::rat(b, 1),
        }
    }

    pub fn from_bigints(a: &BigInt, b: &BigInt) -> Self {
        QuadraticElement {
            a: rational::rat_int(a),
            b: rational::rat_int(b),
        }
    }

    pub fn rational(q: BigRational) -> Self {
        QuadraticElement {
            a: q,
            b: BigRational::zero(),
        }
    }

    pub fn zero() -> Self {
        QuadraticElement {
            a: BigRational::zero(),
            b: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        QuadraticElement {
            a: BigRational::one(),
            b: BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        rational::is_integer(&self.a) && rational::is_integer(&self.b)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        QuadraticElement {
            a: &self.a * q,
            b: &self.b * q,
        }
    }

    /// Least common denominator of both coordinates.
    pub fn denom(&self) -> BigInt {
        self.a.denom().lcm(self.b.denom())
    }
}

impl fmt::Debug for QuadraticElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}ω)", self.a, self.b)
    }
}

/// Arithmetic context for `M`: reduces `ω² = c0 + c1·ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticField {
    radicand: BigInt,
    kind: OmegaKind,
    c0: BigRational,
    c1: BigRational,
}

impl QuadraticField {
    /// Context only; no validation of the radicand (see [`QuadraticFieldSpec::new`]).
    pub fn new(radicand: BigInt, kind: OmegaKind) -> Self {
        let (c0, c1) = match kind {
            OmegaKind::Sqrt => (rational::rat_int(&radicand), BigRational::zero()),
            OmegaKind::Half => (
                BigRational::new(&radicand - 1, BigInt::from(4)),
                BigRational::one(),
            ),
        };
        QuadraticField {
            radicand,
            kind,
            c0,
            c1,
        }
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn kind(&self) -> OmegaKind {
        self.kind
    }

    /// Field discriminant: `4D` for `ω = √D`, `D` otherwise.
    pub fn discriminant(&self) -> BigInt {
        match self.kind {
            OmegaKind::Sqrt => &self.radicand * 4,
            OmegaKind::Half => self.radicand.clone(),
        }
    }

    pub fn omega(&self) -> QuadraticElement {
        QuadraticElement::new(BigRational::zero(), BigRational::one())
    }

    /// `√D` as an element of `M`.
    pub fn sqrt_d(&self) -> QuadraticElement {
        match self.kind {
            OmegaKind::Sqrt => self.omega(),
            OmegaKind::Half => QuadraticElement::from_ints(-1, 2),
        }
    }

    /// `ω − ω̄`; its square is the field discriminant.
    pub fn omega_diff(&self) -> QuadraticElement {
        let w = self.omega();
        self.sub(&w, &self.conj(&w))
    }

    pub fn conj(&self, x: &QuadraticElement) -> QuadraticElement {
        QuadraticElement {
            a: &x.a + &x.b * &self.c1,
            b: -&x.b,
        }
    }

    pub fn norm(&self, x: &QuadraticElement) -> BigRational {
        &x.a * &x.a + &x.a * &x.b * &self.c1 - &x.b * &x.b * &self.c0
    }

    pub fn trace(&self, x: &QuadraticElement) -> BigRational {
        &x.a * BigRational::from_integer(2.into()) + &x.b * &self.c1
    }

    /// Coordinates `(p, q)` with `x = p + q·√D`.
    pub fn sqrt_coords(&self, x: &QuadraticElement) -> (BigRational, BigRational) {
        match self.kind {
            OmegaKind::Sqrt => (x.a.clone(), x.b.clone()),
            OmegaKind::Half => {
                let half = rational::rat(1, 2);
                (&x.a + &x.b * &half, &x.b * &half)
            }
        }
    }

    /// Inverse of [`sqrt_coords`](Self::sqrt_coords).
    pub fn from_sqrt_coords(&self, p: &BigRational, q: &BigRational) -> QuadraticElement {
        match self.kind {
            OmegaKind::Sqrt => QuadraticElement::new(p.clone(), q.clone()),
            OmegaKind::Half => {
                let b = q * BigRational::from_integer(2.into());
                QuadraticElement::new(p - q, b)
            }
        }
    }

    /// Exact sign of the real embedding with `√D > 0`.
    pub fn sign(&self, x: &QuadraticElement) -> Ordering {
        let (p, q) = self.sqrt_coords(x);
        let sp = p.cmp(&BigRational::zero());
        let sq = q.cmp(&BigRational::zero());
        if sq == Ordering::Equal {
            return sp;
        }
        if sp == Ordering::Equal || sp == sq {
            return sq;
        }
        // opposite signs: compare p² with q²·D
        let lhs = &p * &p;
        let rhs = &q * &q * rational::rat_int(&self.radicand);
        if lhs > rhs {
            sp
        } else {
            sq
        }
    }

    /// Exact comparison of real embeddings.
    pub fn cmp_real(&self, x: &QuadraticElement, y: &QuadraticElement) -> Ordering {
        self.sign(&self.sub(x, y))
    }

    /// Compare `|x|` (real embedding) with 1.
    pub fn cmp_abs_one(&self, x: &QuadraticElement) -> Ordering {
        let one = QuadraticElement::one();
        let ax = if self.sign(x) == Ordering::Less {
            self.neg(x)
        } else {
            x.clone()
        };
        self.cmp_real(&ax, &one)
    }

    /// Enclosure of `√D` of width at most `2^-bits`; nested in `bits`.
    pub fn sqrt_d_interval(&self, bits: u32) -> RealInterval {
        let scaled = &self.radicand << (2 * bits as usize);
        let r = scaled.sqrt();
        let den = BigInt::one() << bits as usize;
        let lo = BigRational::new(r.clone(), den.clone());
        let hi = if &r * &r == scaled {
            lo.clone()
        } else {
            BigRational::new(r + 1, den)
        };
        RealInterval::new(lo, hi)
    }

    /// Certified enclosure of the real embedding of `x` (with `√D > 0`) of
    /// width at most `target_width`. Precision doubles until the target is met,
    /// so a smaller target always yields a sub-interval.
    pub fn embed_real(&self, x: &QuadraticElement, target_width: &BigRational) -> RealInterval {
        assert!(target_width.is_positive(), "target width must be positive");
        let (p, q) = self.sqrt_coords(x);
        if q.is_zero() {
            return RealInterval::point(p);
        }
        let mut bits = 16u32;
        loop {
            let iv = self.sqrt_d_interval(bits).scale(&q).offset(&p);
            if &iv.width() <= target_width {
                return iv;
            }
            bits *= 2;
        }
    }

    /// `ln|x|` of the real embedding, approximately. Seeds exact searches only.
    pub fn approx_ln_abs(&self, x: &QuadraticElement) -> f64 {
        let (p, q) = self.sqrt_coords(x);
        // max(|x|, |x̄|) = |p| + |q|√D; for a norm-±1 element the smaller one is its reciprocal
        let terms: Vec<f64> = [
            (!p.is_zero()).then(|| rational::ln_abs(&p)),
            (!q.is_zero())
                .then(|| rational::ln_abs(&q) + 0.5 * rational::ln_abs_int(&self.radicand)),
        ]
        .into_iter()
        .flatten()
        .collect();
        if terms.is_empty() {
            return f64::NEG_INFINITY;
        }
        let m = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let l = m + terms.iter().map(|t| (t - m).exp()).sum::<f64>().ln();
        if self.cmp_abs_one(x) == Ordering::Less {
            -l
        } else {
            l
        }
    }

    pub fn pow_signed(&self, x: &QuadraticElement, n: i64) -> QuadraticElement {
        if n >= 0 {
            self.pow(x, n as u32)
        } else {
            let xi = self.inv(x).expect("power of zero with negative exponent");
            self.pow(&xi, (-n) as u32)
        }
    }
}

impl Ring for QuadraticField {
    type Elem = QuadraticElement;

    fn zero(&self) -> QuadraticElement {
        QuadraticElement::zero()
    }
    fn one(&self) -> QuadraticElement {
        QuadraticElement::one()
    }
    fn is_zero(&self, a: &QuadraticElement) -> bool {
        a.is_zero()
    }
    fn add(&self, x: &QuadraticElement, y: &QuadraticElement) -> QuadraticElement {
        QuadraticElement {
            a: &x.a + &y.a,
            b: &x.b + &y.b,
        }
    }
    fn sub(&self, x: &QuadraticElement, y: &QuadraticElement) -> QuadraticElement {
        QuadraticElement {
            a: &x.a - &y.a,
            b: &x.b - &y.b,
        }
    }
    fn neg(&self, x: &QuadraticElement) -> QuadraticElement {
        QuadraticElement { a: -&x.a, b: -&x.b }
    }
    fn mul(&self, x: &QuadraticElement, y: &QuadraticElement) -> QuadraticElement {
        if x.b.is_zero() {
            return y.scale(&x.a);
        }
        if y.b.is_zero() {
            return x.scale(&y.a);
        }
        let bb = &x.b * &y.b;
        QuadraticElement {
            a: &x.a * &y.a + &bb * &self.c0,
            b: &x.a * &y.b + &x.b * &y.a + &bb * &self.c1,
        }
    }
    fn exact_div(&self, x: &QuadraticElement, y: &QuadraticElement) -> Option<QuadraticElement> {
        self.div(x, y)
    }
    fn from_int(&self, n: i64) -> QuadraticElement {
        QuadraticElement::from_ints(n, 0)
    }
}

impl Field for QuadraticField {
    fn inv(&self, x: &QuadraticElement) -> Option<QuadraticElement> {
        if x.is_zero() {
            return None;
        }
        if x.b.is_zero() {
            return Some(QuadraticElement::rational(x.a.recip()));
        }
        let n = self.norm(x);
        Some(self.conj(x).scale(&n.recip()))
    }
    fn from_rational(&self, q: &BigRational) -> QuadraticElement {
        QuadraticElement::rational(q.clone())
    }
    fn scale(&self, a: &QuadraticElement, q: &BigRational) -> QuadraticElement {
        a.scale(q)
    }
}

/// Validated data for `M`: radicand, choice of `ω`, fundamental unit `ε > 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticFieldSpec {
    field: QuadraticField,
    unit: QuadraticElement,
    unit_norm: i32,
    /// Set when squarefreeness could not be fully verified by trial division.
    squarefree_unverified: bool,
}

impl QuadraticFieldSpec {
    pub fn new(
        radicand: BigInt,
        kind: OmegaKind,
        unit: QuadraticElement,
        unit_norm: i32,
    ) -> Result<Self> {
        let loc = "/quadratic_field";
        if radicand <= BigInt::one() {
            return Err(Error::validation(
                "radicand-range",
                loc,
                format!("radicand {radicand} must exceed 1"),
            ));
        }
        let mut squarefree_unverified = false;
        match rational::squarefree_trial(&radicand, SQUAREFREE_TRIAL_BOUND) {
            Squarefree::Yes => {}
            Squarefree::No(p) => {
                return Err(Error::validation(
                    "radicand-squarefree",
                    loc,
                    format!("{p}² divides the radicand {radicand}"),
                ))
            }
            Squarefree::Unverified => {
                log::warn!(
                    "radicand {radicand} has no square factor below {SQUAREFREE_TRIAL_BOUND}; larger square factors are not excluded"
                );
                squarefree_unverified = true;
            }
        }
        if kind == OmegaKind::Half && radicand.mod_floor(&BigInt::from(4)) != BigInt::one() {
            return Err(Error::validation(
                "omega-half-congruence",
                loc,
                format!("ω = (1+√D)/2 requires D ≡ 1 (mod 4), got D = {radicand}"),
            ));
        }
        let field = QuadraticField::new(radicand, kind);
        if !unit.is_integral() {
            return Err(Error::validation(
                "unit-integral",
                loc,
                "fundamental unit must have integer coordinates",
            ));
        }
        if unit_norm.abs() != 1 {
            return Err(Error::validation(
                "unit-norm",
                loc,
                format!("declared unit norm {unit_norm} is not ±1"),
            ));
        }
        let n = field.norm(&unit);
        if n != rational::rat(unit_norm as i64, 1) {
            return Err(Error::validation(
                "unit-norm",
                loc,
                format!("N(ε) = {n}, declared {unit_norm}"),
            ));
        }
        if field.cmp_real(&unit, &QuadraticElement::one()) != Ordering::Greater {
            return Err(Error::validation(
                "unit-greater-than-one",
                loc,
                "fundamental unit must exceed 1",
            ));
        }
        Ok(QuadraticFieldSpec {
            field,
            unit,
            unit_norm,
            squarefree_unverified,
        })
    }

    pub fn field(&self) -> &QuadraticField {
        &self.field
    }

    pub fn unit(&self) -> &QuadraticElement {
        &self.unit
    }

    pub fn unit_norm(&self) -> i32 {
        self.unit_norm
    }

    pub fn squarefree_unverified(&self) -> bool {
        self.squarefree_unverified
    }

    /// `ε^h` for any integer `h`.
    pub fn unit_pow(&self, h: i64) -> QuadraticElement {
        self.field.pow_signed(&self.unit, h)
    }

    /// `N(ε^h) = N(ε)^h`.
    pub fn unit_pow_norm(&self, h: i64) -> i32 {
        if self.unit_norm == -1 && h.rem_euclid(2) == 1 {
            -1
        } else {
            1
        }
    }

    /// Returns `(s, h)` with `γ = s·ε^h` exactly, or `None` if `γ` is not a
    /// signed power of the fundamental unit. A logarithmic estimate seeds
    /// the exponent; the decision is made by exact division.
    pub fn recognize_unit_power(&self, gamma: &QuadraticElement) -> Option<(i32, i64)> {
        let f = &self.field;
        if gamma.is_zero() || f.norm(gamma).abs() != BigRational::one() {
            return None;
        }
        let ln_eps = f.approx_ln_abs(&self.unit);
        let seed = (f.approx_ln_abs(gamma) / ln_eps).round();
        let mut h: i64 = if seed.is_finite() { seed as i64 } else { 0 };
        let mut g = f.mul(gamma, &self.unit_pow(-h));
        let eps_inv = f.inv(&self.unit).unwrap();
        let sign_of = |g: &QuadraticElement| -> Option<i32> {
            if *g == QuadraticElement::one() {
                Some(1)
            } else if *g == f.neg(&QuadraticElement::one()) {
                Some(-1)
            } else {
                None
            }
        };
        match f.cmp_abs_one(&g) {
            Ordering::Equal => sign_of(&g).map(|s| (s, h)),
            Ordering::Greater => loop {
                g = f.mul(&g, &eps_inv);
                h += 1;
                match f.cmp_abs_one(&g) {
                    Ordering::Greater => continue,
                    Ordering::Equal => return sign_of(&g).map(|s| (s, h)),
                    Ordering::Less => return None,
                }
            },
            Ordering::Less => loop {
                g = f.mul(&g, &self.unit);
                h -= 1;
                match f.cmp_abs_one(&g) {
                    Ordering::Less => continue,
                    Ordering::Equal => return sign_of(&g).map(|s| (s, h)),
                    Ordering::Greater => return None,
                }
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::rational::{int, rat};

    fn q19() -> QuadraticFieldSpec {
        QuadraticFieldSpec::new(
            int(19),
            OmegaKind::Sqrt,
            QuadraticElement::from_ints(170, 39),
            1,
        )
        .unwrap()
    }

    #[test]
    fn norms_and_conjugates() {
        let f19 = q19();
        assert_eq!(
            f19.field().norm(&QuadraticElement::from_ints(170, 39)),
            rat(1, 1)
        );
        let f2 = QuadraticField::new(int(2), OmegaKind::Sqrt);
        assert_eq!(f2.norm(&QuadraticElement::from_ints(1, 1)), rat(-1, 1));
        let f5 = QuadraticField::new(int(5), OmegaKind::Half);
        assert_eq!(f5.conj(&f5.omega()), QuadraticElement::from_ints(1, -1));
        // ω·ω̄ = (1-D)/4 = -1 for D = 5
        assert_eq!(f5.norm(&f5.omega()), rat(-1, 1));
        assert_eq!(
            f5.mul(&f5.omega(), &f5.omega()),
            QuadraticElement::from_ints(1, 1)
        );
    }

    #[test]
    fn discriminants_and_diffs() {
        let f5 = QuadraticField::new(int(5), OmegaKind::Half);
        let d = f5.omega_diff();
        assert_eq!(f5.mul(&d, &d), QuadraticElement::from_ints(5, 0));
        let f2 = QuadraticField::new(int(2), OmegaKind::Sqrt);
        let d = f2.omega_diff();
        assert_eq!(f2.mul(&d, &d), QuadraticElement::from_ints(8, 0));
        assert_eq!(f2.discriminant(), int(8));
    }

    #[test]
    fn exact_sign() {
        let f = QuadraticField::new(int(2), OmegaKind::Sqrt);
        assert_eq!(
            f.sign(&QuadraticElement::from_ints(-1, 1)),
            Ordering::Greater
        );
        assert_eq!(
            f.sign(&QuadraticElement::from_ints(3, -2)),
            Ordering::Greater
        );
        assert_eq!(f.sign(&QuadraticElement::from_ints(-3, 2)), Ordering::Less);
        assert_eq!(f.sign(&QuadraticElement::zero()), Ordering::Equal);
    }

    #[test]
    fn real_embeddings() {
        let f2 = QuadraticField::new(int(2), OmegaKind::Sqrt);
        let w = rat(1, 10000);
        let iv = f2.embed_real(&QuadraticElement::from_ints(1, 1), &w);
        assert!(iv.width() <= w);
        assert!(iv.lo() < &rat(2414214, 1000000) && iv.hi() > &rat(2414213, 1000000));
        let finer = f2.embed_real(
            &QuadraticElement::from_ints(1, 1),
            &rat(1, 10u64.pow(12) as i64),
        );
        assert!(finer.is_subset_of(&iv));
        let z = f2.embed_real(&QuadraticElement::zero(), &w);
        assert_eq!(z, RealInterval::point(rat(0, 1)));
        let f19 = QuadraticField::new(int(19), OmegaKind::Sqrt);
        let iv = f19.embed_real(&f19.omega(), &w);
        assert!(iv.lo() < &rat(4358899, 1000000) && iv.hi() > &rat(4358898, 1000000));
        // half basis: ω = (1+√5)/2 ≈ 1.6180
        let f5 = QuadraticField::new(int(5), OmegaKind::Half);
        let iv = f5.embed_real(&f5.omega(), &w);
        assert!(iv.lo() < &rat(1618034, 1000000) && iv.hi() > &rat(1618033, 1000000));
    }

    #[test]
    fn unit_recognition() {
        let f = q19();
        assert_eq!(
            f.recognize_unit_power(&QuadraticElement::from_ints(57799, 13260)),
            Some((1, 2))
        );
        assert_eq!(
            f.recognize_unit_power(&QuadraticElement::one()),
            Some((1, 0))
        );
        assert_eq!(
            f.recognize_unit_power(&QuadraticElement::from_ints(3, 0)),
            None
        );
        let inv = f.unit_pow(-3);
        assert_eq!(f.recognize_unit_power(&f.field().neg(&inv)), Some((-1, -3)));
        // norm one but not integral
        let x = QuadraticElement::new(rat(170, 1), rat(39, 1)).scale(&rat(1, 1));
        let y = f
            .field()
            .div(&x, &QuadraticElement::from_ints(2, 0))
            .unwrap();
        assert_eq!(f.recognize_unit_power(&y), None);
    }

    #[test]
    fn spec_validation() {
        let e = QuadraticFieldSpec::new(
            int(18),
            OmegaKind::Sqrt,
            QuadraticElement::from_ints(17, 4),
            1,
        )
        .unwrap_err();
        assert_eq!(e.rule(), Some("radicand-squarefree"));
        let e = QuadraticFieldSpec::new(
            int(3),
            OmegaKind::Half,
            QuadraticElement::from_ints(2, 1),
            1,
        )
        .unwrap_err();
        assert_eq!(e.rule(), Some("omega-half-congruence"));
        let e = QuadraticFieldSpec::new(
            int(2),
            OmegaKind::Sqrt,
            QuadraticElement::from_ints(1, 1),
            1,
        )
        .unwrap_err();
        assert_eq!(e.rule(), Some("unit-norm"));
        let e = QuadraticFieldSpec::new(
            int(2),
            OmegaKind::Sqrt,
            QuadraticElement::from_ints(-1, 1),
            -1,
        )
        .unwrap_err();
        assert_eq!(e.rule(), Some("unit-greater-than-one"));
        let e = QuadraticFieldSpec::new(
            int(1),
            OmegaKind::Sqrt,
            QuadraticElement::from_ints(1, 1),
            -1,
        )
        .unwrap_err();
        assert_eq!(e.rule(), Some("radicand-range"));
        assert!(QuadraticFieldSpec::new(
            int(5),
            OmegaKind::Half,
            QuadraticElement::from_ints(0, 1),
            -1
        )
        .is_ok());
    }
}
