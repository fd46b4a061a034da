//! Validated model of the composite `K = L·M`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::algebra::Extension;
use crate::error::{Error, Result};
use crate::number::rational::{exact_isqrt, rat_int};
use crate::number::{OmegaKind, QuadraticElement, QuadraticField, QuadraticFieldSpec};
use crate::poly::{discriminant, integer_roots, Rationals, UniPoly};

/// Raw field data before validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerData {
    pub radicand: BigInt,
    pub omega: OmegaKind,
    pub unit: (BigInt, BigInt),
    pub unit_norm: i32,
    /// Minimal polynomial of `ξ`, constant term first.
    pub min_poly: Vec<BigInt>,
    pub den: BigInt,
    pub disc_m: BigInt,
    pub disc_l: BigInt,
    pub disc_k: BigInt,
}

#[derive(Clone, Debug)]
pub struct TowerSpec {
    quad: QuadraticFieldSpec,
    min_poly: Vec<BigInt>,
    den: BigInt,
    disc_m: BigInt,
    disc_l: BigInt,
    disc_k: BigInt,
    disc_xi: BigInt,
    norm_rel_disc_km: BigInt,
    norm_rel_disc_kl: BigInt,
    disc_lm: BigInt,
    sqrt_disc_lm: BigInt,
}

/// The `ξ`-power part of the M-algebra `L⊗M`, realized as `M[x]/(f)`.
pub type LOverM = Extension<QuadraticField>;
/// `L⊗M[t]/((f(t) − f(ξ))/(t − ξ))`: its M-embeddings are the ordered pairs
/// of distinct roots of `f`.
pub type PairAlgebra = Extension<LOverM>;

fn pow_int(b: &BigInt, e: usize) -> BigInt {
    num_traits::pow(b.clone(), e)
}

pub fn validate_tower(raw: &TowerData) -> Result<TowerSpec> {
    let unit = QuadraticElement::from_bigints(&raw.unit.0, &raw.unit.1);
    let quad = QuadraticFieldSpec::new(raw.radicand.clone(), raw.omega, unit, raw.unit_norm)?;

    let f = &raw.min_poly;
    let ell = f.len().saturating_sub(1);
    if ell != 3 && ell != 4 {
        return Err(Error::validation(
            "extension-degree",
            "/extension/min_poly",
            format!("minimal polynomial must have degree 3 or 4, got {ell}"),
        ));
    }
    if !f[ell].is_one() {
        return Err(Error::validation(
            "min-poly-monic",
            "/extension/min_poly",
            "minimal polynomial must be monic",
        ));
    }
    let fp = UniPoly::from_ints(f);
    let roots = integer_roots(&fp)?;
    if !roots.is_empty() {
        return Err(Error::validation(
            "min-poly-no-rational-root",
            "/extension/min_poly",
            format!("minimal polynomial has the rational root {}", roots[0]),
        ));
    }
    if !raw.den.is_positive() {
        return Err(Error::validation(
            "denominator-positive",
            "/denominator",
            "common denominator must be positive",
        ));
    }

    let expect_dm = quad.field().discriminant();
    if raw.disc_m != expect_dm {
        return Err(Error::validation(
            "disc-m-matches-field",
            "/discriminants/D_M",
            format!(
                "D_M = {} but the quadratic field data gives {expect_dm}",
                raw.disc_m
            ),
        ));
    }

    let disc_xi = discriminant(&fp)?.to_integer();
    if raw.disc_l.is_zero() || !(&disc_xi % &raw.disc_l).is_zero() {
        return Err(Error::validation(
            "disc-l-divides-poly-disc",
            "/discriminants/D_L",
            format!(
                "disc(f) = {disc_xi} is not an integer multiple of D_L = {}",
                raw.disc_l
            ),
        ));
    }
    let q = &disc_xi / &raw.disc_l;
    if q.is_negative() || exact_isqrt(&q).is_none() {
        return Err(Error::validation(
            "disc-l-square-cofactor",
            "/discriminants/D_L",
            format!("disc(f)/D_L = {q} is not a positive square"),
        ));
    }

    let dm_pow = pow_int(&raw.disc_m, ell);
    if raw.disc_k.is_zero() || !(&raw.disc_k % &dm_pow).is_zero() {
        return Err(Error::validation(
            "disc-tower-over-m",
            "/discriminants/D_K",
            format!(
                "D_K = N(D_K/M)·D_M^{ell} fails: D_M^{ell} = {dm_pow} does not divide D_K = {}",
                raw.disc_k
            ),
        ));
    }
    let norm_rel_disc_km = &raw.disc_k / &dm_pow;
    let dl_sq = &raw.disc_l * &raw.disc_l;
    if !(&raw.disc_k % &dl_sq).is_zero() {
        return Err(Error::validation(
            "disc-tower-over-l",
            "/discriminants/D_K",
            format!(
                "D_K = N(D_K/L)·D_L^2 fails: D_L^2 = {dl_sq} does not divide D_K = {}",
                raw.disc_k
            ),
        ));
    }
    let norm_rel_disc_kl = &raw.disc_k / &dl_sq;
    let prod = &norm_rel_disc_km * &norm_rel_disc_kl;
    if !(&raw.disc_k % &prod).is_zero() {
        return Err(Error::validation(
            "disc-lm-integral",
            "/discriminants/D_K",
            format!("N(D_K/M)·N(D_K/L) = {prod} does not divide D_K"),
        ));
    }
    let disc_lm = &raw.disc_k / &prod;
    let sqrt_disc_lm = exact_isqrt(&disc_lm.abs()).ok_or_else(|| {
        Error::validation(
            "disc-lm-square",
            "/discriminants/D_K",
            format!("D_K/(N(D_K/M)·N(D_K/L)) = {disc_lm} is not a perfect square"),
        )
    })?;

    Ok(TowerSpec {
        quad,
        min_poly: f.clone(),
        den: raw.den.clone(),
        disc_m: raw.disc_m.clone(),
        disc_l: raw.disc_l.clone(),
        disc_k: raw.disc_k.clone(),
        disc_xi,
        norm_rel_disc_km,
        norm_rel_disc_kl,
        disc_lm,
        sqrt_disc_lm,
    })
}

impl TowerSpec {
    pub fn quad(&self) -> &QuadraticFieldSpec {
        &self.quad
    }

    pub fn field(&self) -> &QuadraticField {
        self.quad.field()
    }

    /// `ℓ = [L : Q]`
    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    pub fn min_poly_ints(&self) -> &[BigInt] {
        &self.min_poly
    }

    pub fn min_poly(&self) -> UniPoly {
        UniPoly::from_ints(&self.min_poly)
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn disc_m(&self) -> &BigInt {
        &self.disc_m
    }

    pub fn disc_l(&self) -> &BigInt {
        &self.disc_l
    }

    pub fn disc_k(&self) -> &BigInt {
        &self.disc_k
    }

    /// `disc(f)` of the minimal polynomial of `ξ`.
    pub fn disc_xi(&self) -> &BigInt {
        &self.disc_xi
    }

    /// `N_{M/Q}(D_{K/M})`
    pub fn norm_rel_disc_km(&self) -> &BigInt {
        &self.norm_rel_disc_km
    }

    /// `N_{L/Q}(D_{K/L})`
    pub fn norm_rel_disc_kl(&self) -> &BigInt {
        &self.norm_rel_disc_kl
    }

    /// `D_{L,M} = D_K / (N_{M/Q}(D_{K/M}) · N_{L/Q}(D_{K/L}))`
    pub fn disc_lm(&self) -> &BigInt {
        &self.disc_lm
    }

    pub fn sqrt_disc_lm(&self) -> &BigInt {
        &self.sqrt_disc_lm
    }

    /// `L` as `Q[x]/(f)`.
    pub fn l_over_q(&self) -> Extension<Rationals> {
        Extension::new(Rationals, self.min_poly.iter().map(rat_int).collect())
    }

    /// `L⊗M` as `M[x]/(f)`; this is `K` itself.
    pub fn l_over_m(&self) -> LOverM {
        let m = self.field().clone();
        Extension::new(
            m,
            self.min_poly
                .iter()
                .map(|c| QuadraticElement::from_bigints(c, &BigInt::zero()))
                .collect(),
        )
    }

    /// The pair algebra over `L⊗M` in a second variable `t`.
    pub fn pair_algebra(&self) -> PairAlgebra {
        let lm = self.l_over_m();
        let n = self.degree();
        // (f(t) − f(s))/(t − s) = Σ_i t^i Σ_{k>i} f_k s^{k−1−i}
        let g: Vec<Vec<QuadraticElement>> = (0..n)
            .map(|i| {
                let mut s_poly = vec![BigRational::zero(); n];
                for k in i + 1..=n {
                    s_poly[k - 1 - i] = rat_int(&self.min_poly[k]);
                }
                lm.reduce(s_poly.into_iter().map(QuadraticElement::rational).collect())
            })
            .collect();
        Extension::new(lm, g)
    }

    /// Coefficient `a` of the quadratic term `x^(ℓ−1)` of `f`.
    pub fn subleading(&self) -> &BigInt {
        &self.min_poly[self.degree() - 1]
    }
}

/// Check `d·x` integrality helper shared by loaders: `den | value`.
pub fn divides(d: &BigInt, v: &BigInt) -> bool {
    v.is_multiple_of(d)
}
