//! Absolute and relative indices of elements of `K`.
//!
//! Everything is exact. The relative quantities come from characteristic
//! polynomials and norms in `L⊗M` and in the pair algebra, so no conjugate
//! is ever approximated.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::algebra::Flat;
use super::element::CompositeElement;
use super::spec::TowerSpec;
use crate::error::{Error, Result};
use crate::number::rational::{exact_rsqrt, is_integer, rat_int};
use crate::number::{QuadraticElement, QuadraticField};
use crate::poly::{resultant::resultant_euclid, Field, Poly, Rationals, Ring, UniPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexReport {
    /// `I(α)`; zero when `α` does not generate `K`.
    pub abs_index: BigInt,
    pub rel_index_km: BigInt,
    pub rel_index_kl: BigInt,
    pub co_index_jm: BigRational,
    pub co_index_jl: BigRational,
    pub mixed_jlm: BigRational,
    pub disc_lm: BigInt,
}

impl IndexReport {
    /// `I = I_{K/M}·I_{K/L}·J_{L,M}`, `I = I_{K/M}·J_M`, `I = I_{K/L}·J_L`.
    pub fn identities(&self) -> [bool; 3] {
        let i = rat_int(&self.abs_index);
        let km = rat_int(&self.rel_index_km);
        let kl = rat_int(&self.rel_index_kl);
        [
            i == &km * &kl * &self.mixed_jlm,
            i == &km * &self.co_index_jm,
            i == &kl * &self.co_index_jl,
        ]
    }

    pub fn is_power_basis(&self) -> bool {
        self.abs_index == BigInt::from(1)
    }
}

/// `(−1)^{n(n−1)/2} res(p, p′) / lc(p)` over any field.
pub fn poly_discriminant<F: Field>(f: &F, p: &Poly<F::Elem>) -> Result<F::Elem> {
    let n = p
        .degree()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::Degenerate("discriminant of a constant".into()))?;
    let r = resultant_euclid(f, p, &p.derivative(f));
    let r = f.div(&r, p.lc().unwrap()).unwrap();
    Ok(if (n * (n - 1) / 2) % 2 == 1 {
        f.neg(&r)
    } else {
        r
    })
}

/// Characteristic polynomial of multiplication by `α` on `K` over `Q`.
pub fn char_poly(a: &CompositeElement, t: &TowerSpec) -> Result<UniPoly> {
    a.check_shape(t)?;
    let lm = t.l_over_m();
    Ok(Flat::<Rationals>::charpoly(&lm, &a.m_coeffs()))
}

/// Characteristic polynomial of `α` over `M` (degree `ℓ`).
pub fn relative_char_poly(a: &CompositeElement, t: &TowerSpec) -> Result<Poly<QuadraticElement>> {
    a.check_shape(t)?;
    let lm = t.l_over_m();
    Ok(Flat::<QuadraticField>::charpoly(&lm, &a.m_coeffs()))
}

pub fn is_integral(a: &CompositeElement, t: &TowerSpec) -> Result<bool> {
    Ok(char_poly(a, t)?.has_integer_coeffs())
}

fn checked_isqrt(q: &BigRational, what: &str) -> Result<BigRational> {
    exact_rsqrt(&q.abs())
        .ok_or_else(|| Error::Inconsistent(format!("{what} = {q} is not a rational square")))
}

fn as_integer(q: BigRational, what: &str) -> Result<BigInt> {
    if is_integer(&q) {
        Ok(q.to_integer())
    } else {
        Err(Error::Inconsistent(format!(
            "{what} = {q} is not an integer"
        )))
    }
}

/// `√(|disc χ(α)| / D_K)`, or zero when `χ(α)` has a repeated root.
fn abs_index_or_zero(cp: &UniPoly, t: &TowerSpec) -> Result<BigInt> {
    let disc = poly_discriminant(&Rationals, cp)?;
    if disc.is_zero() {
        return Ok(BigInt::zero());
    }
    let q = disc / rat_int(t.disc_k());
    as_integer(checked_isqrt(&q, "disc(χ(α))/D_K")?, "I(α)")
}

/// `I(α) = (Z_K⁺ : Z[α]⁺)`.
pub fn absolute_index(a: &CompositeElement, t: &TowerSpec) -> Result<BigInt> {
    let cp = char_poly(a, t)?;
    if !cp.has_integer_coeffs() {
        return Err(Error::NotIntegral);
    }
    let i = abs_index_or_zero(&cp, t)?;
    if i.is_zero() {
        return Err(Error::NonPrimitive);
    }
    Ok(i)
}

/// `N_{A⊗M/M}(α(s) − ᾱ(t))` over the ordered pairs of distinct roots of `f`.
pub fn mixed_product(a: &CompositeElement, t: &TowerSpec) -> Result<BigRational> {
    a.check_shape(t)?;
    let m = t.field();
    let lm = t.l_over_m();
    let pair = t.pair_algebra();
    let c = a.m_coeffs();
    let a_s = pair.lift(&c);
    let conj: Vec<Vec<QuadraticElement>> = c.iter().map(|x| lm.lift(&m.conj(x))).collect();
    let a_t = pair.reduce(conj);
    let p = Flat::<QuadraticField>::norm(&pair, &pair.sub(&a_s, &a_t));
    if !p.b.is_zero() {
        return Err(Error::Inconsistent(format!(
            "mixed product {p:?} is not rational"
        )));
    }
    Ok(p.a)
}

/// All indices of `α` and the exact identities between them.
pub fn relative_indices(a: &CompositeElement, t: &TowerSpec) -> Result<IndexReport> {
    let cp = char_poly(a, t)?;
    if !cp.has_integer_coeffs() {
        return Err(Error::NotIntegral);
    }
    let abs_index = abs_index_or_zero(&cp, t)?;
    let m = t.field();
    let ell = t.degree() as u32;

    let rel = relative_char_poly(a, t)?;
    let disc_m = poly_discriminant(m, &rel)?;
    let km_sq = m.norm(&disc_m) / rat_int(t.norm_rel_disc_km());
    let rel_index_km = as_integer(checked_isqrt(&km_sq, "I_{K/M}(α)^2")?, "I_{K/M}(α)")?;

    let l = t.l_over_q();
    let ny = Flat::<Rationals>::norm(&l, &a.y_part());
    let dm_pow = rat_int(t.disc_m()).pow(ell as i32);
    let kl_sq = &dm_pow * &ny * &ny / rat_int(t.norm_rel_disc_kl());
    let rel_index_kl = as_integer(checked_isqrt(&kl_sq, "I_{K/L}(α)^2")?, "I_{K/L}(α)")?;

    let p = mixed_product(a, t)?.abs();
    let mixed_jlm = &p / rat_int(t.sqrt_disc_lm());
    let co_index_jm = ny.abs() * &p;
    let km = rat_int(&rel_index_km);
    let dl = rat_int(t.disc_l());
    let jl_sq = &km * &km * rat_int(t.norm_rel_disc_km()) * &p * &p / (&dl * &dl);
    let co_index_jl = checked_isqrt(&jl_sq, "J_L(α)^2")?;

    let report = IndexReport {
        abs_index,
        rel_index_km,
        rel_index_kl,
        co_index_jm,
        co_index_jl,
        mixed_jlm,
        disc_lm: t.disc_lm().clone(),
    };
    if report.identities().iter().any(|ok| !ok) {
        return Err(Error::Inconsistent(format!(
            "index identities fail for {a}: {report:?}"
        )));
    }
    Ok(report)
}

/// `N_{L/Q}(Σ ys[k] ξ^k)`.
pub fn norm_l_int(t: &TowerSpec, ys: &[BigInt]) -> BigRational {
    let l = t.l_over_q();
    Flat::<Rationals>::norm(&l, &ys.iter().map(rat_int).collect())
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::number::rational::int;
    use crate::number::OmegaKind;
    use crate::tower::spec::{validate_tower, TowerData};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| int(x)).collect()
    }

    pub(crate) fn example1() -> TowerSpec {
        validate_tower(&TowerData {
            radicand: int(19),
            omega: OmegaKind::Sqrt,
            unit: (int(170), int(39)),
            unit_norm: 1,
            min_poly: ints(&[17, -3, 0, 1]),
            den: int(19),
            disc_m: int(76),
            disc_l: int(-7695),
            disc_k: int(64 * 6561 * 25 * 6859),
        })
        .unwrap()
    }

    pub(crate) fn example2() -> TowerSpec {
        validate_tower(&TowerData {
            radicand: int(2),
            omega: OmegaKind::Sqrt,
            unit: (int(1), int(1)),
            unit_norm: -1,
            min_poly: ints(&[1, 2, 2, 0, 1]),
            den: int(4),
            disc_m: int(8),
            disc_l: int(592),
            disc_k: int(65536 * 1369),
        })
        .unwrap()
    }

    #[test]
    fn discriminant_tower() {
        let t = example1();
        assert_eq!(t.norm_rel_disc_km(), &int(6561 * 25));
        assert_eq!(t.norm_rel_disc_kl(), &int(64 * 19));
        assert_eq!(t.disc_lm(), &int(361));
        let t = example2();
        assert_eq!(t.norm_rel_disc_km(), &int(16 * 1369));
        assert_eq!(t.norm_rel_disc_kl(), &int(256));
        assert_eq!(t.disc_lm(), &int(16));
    }

    #[test]
    fn generators_have_unit_indices() {
        let t = example1();
        let a = CompositeElement::from_i64s(&[0, 0, 0], &[2, 1, -1], 19);
        let r = relative_indices(&a, &t).unwrap();
        assert_eq!(
            (
                r.abs_index.clone(),
                r.rel_index_km.clone(),
                r.rel_index_kl.clone()
            ),
            (int(1), int(1), int(1))
        );
        assert_eq!(r.mixed_jlm, rat_int(&int(1)));
        let t = example2();
        for a in [
            CompositeElement::from_i64s(&[0; 4], &[2, 0, 2, 0], 4),
            CompositeElement::from_i64s(&[0; 4], &[4, 2, 0, 2], 4),
        ] {
            let r = relative_indices(&a, &t).unwrap();
            assert!(r.is_power_basis(), "{a}: {r:?}");
            assert_eq!(r.rel_index_km, int(1));
            assert_eq!(r.rel_index_kl, int(1));
        }
    }

    #[test]
    fn xi_in_example2_has_relative_index_four() {
        let t = example2();
        let r = relative_indices(&CompositeElement::xi(4), &t).unwrap();
        assert_eq!(r.rel_index_km, int(4));
        assert_eq!(r.abs_index, int(0));
    }

    #[test]
    fn non_primitive_and_non_integral() {
        let t = example1();
        let omega = CompositeElement::from_i64s(&[0, 0, 0], &[1, 0, 0], 1);
        assert!(matches!(
            absolute_index(&omega, &t),
            Err(Error::NonPrimitive)
        ));
        let xi19 = CompositeElement::from_i64s(&[0, 1, 0], &[0, 0, 0], 19);
        assert!(!is_integral(&xi19, &t).unwrap());
        assert!(matches!(absolute_index(&xi19, &t), Err(Error::NotIntegral)));
    }

    #[test]
    fn theta_char_polys() {
        let t = example1();
        let theta = CompositeElement::from_i64s(&[0, 0, 0], &[0, 1, 0], 1);
        assert_eq!(
            char_poly(&theta, &t).unwrap(),
            UniPoly::from_i64s(&[-1982251, 0, 3249, 0, -114, 0, 1])
        );
        let t = example2();
        let theta = CompositeElement::from_i64s(&[0; 4], &[0, 1, 0, 0], 1);
        assert_eq!(
            char_poly(&theta, &t).unwrap(),
            UniPoly::from_i64s(&[16, 0, 0, 0, 24, 0, 8, 0, 1])
        );
    }
}
