//! Cubic `L`: the relative Thue equation `N_{M/Q}(N_{K/M}(X − (a+ξ)Y)) = ±m0`
//! solved as a norm equation in `K`, followed by the shared endgame.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::endgame::{recover_generators, EndgameOutput};
use crate::error::{Error, Result};
use crate::norm::{solve_norm_equation, AmbientElem, AmbientField, NormEquation, PatternSolution};
use crate::number::rational::exact_isqrt;
use crate::number::QuadraticElement;
use crate::poly::{Matrix, Rationals, Ring};
use crate::tower::{Flat, TowerSpec};

type Qe = QuadraticElement;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicThueSetup {
    /// Coefficient of `x²` in the minimal polynomial of `ξ`.
    pub a: BigInt,
    pub disc_xi: BigInt,
    pub m0: BigInt,
}

/// `m0 = d⁶·√N(D_{K/M}) / |D(ξ)|`, which must be an integer.
pub fn build_cubic_thue(t: &TowerSpec) -> Result<CubicThueSetup> {
    if t.degree() != 3 {
        return Err(Error::validation(
            "cubic-degree",
            "/extension/degree",
            format!(
                "the cubic pipeline needs a cubic extension, got degree {}",
                t.degree()
            ),
        ));
    }
    let a = t.min_poly_ints()[2].clone();
    let disc_xi = t.disc_xi().clone();
    let root = exact_isqrt(&t.norm_rel_disc_km().abs()).ok_or_else(|| {
        Error::Inconsistent(format!(
            "N(D_K/M) = {} is not a square",
            t.norm_rel_disc_km()
        ))
    })?;
    let num = t.den().pow(6) * root;
    let (m0, rem) = num.div_rem(&disc_xi.abs());
    if !rem.is_zero() {
        return Err(Error::Inconsistent(format!(
            "d^6·√N(D_K/M) = {num} is not divisible by |D(ξ)| = {}",
            disc_xi.abs()
        )));
    }
    Ok(CubicThueSetup { a, disc_xi, m0 })
}

/// `K` viewed as `Q(θ)` for a primitive `θ ∈ L⊗M`, with the change of basis
/// between tower coordinates `(x_0..x_{ℓ−1}, y_0..y_{ℓ−1})` and powers of `θ`.
#[derive(Clone, Debug)]
pub struct TowerAmbient {
    pub field: AmbientField,
    theta: Vec<Qe>,
    /// Columns are `θ^k` in tower coordinates.
    powers: Matrix<BigRational>,
}

fn tower_coords(x: &[Qe]) -> Vec<BigRational> {
    x.iter()
        .map(|c| c.a.clone())
        .chain(x.iter().map(|c| c.b.clone()))
        .collect()
}

impl TowerAmbient {
    /// First primitive element among `ξω, ξ + ω, ξ + 2ω, …`.
    pub fn new(t: &TowerSpec) -> Result<Self> {
        let ell = t.degree();
        let mut cands = Vec::new();
        let mut xi_omega = vec![Qe::zero(); ell];
        xi_omega[1] = Qe::from_ints(0, 1);
        cands.push(xi_omega);
        for k in 1..=16 {
            let mut c = vec![Qe::zero(); ell];
            c[0] = Qe::from_ints(0, k);
            c[1] = Qe::from_ints(1, 0);
            cands.push(c);
        }
        for c in cands {
            if let Ok(a) = Self::with_generator(t, c) {
                return Ok(a);
            }
        }
        Err(Error::Inconsistent(
            "no primitive element found among ξω, ξ + kω".into(),
        ))
    }

    /// `θ` given by its coefficients over `M` in powers of `ξ`.
    pub fn with_generator(t: &TowerSpec, theta: Vec<Qe>) -> Result<Self> {
        let lm = t.l_over_m();
        let cp = Flat::<Rationals>::charpoly(&lm, &theta);
        if !cp.has_integer_coeffs() {
            return Err(Error::validation(
                "generator-integral",
                "/norm_equation/generator",
                "generator is not integral",
            ));
        }
        let ints: Vec<BigInt> = cp.coeffs().iter().map(|q| q.to_integer()).collect();
        let field = AmbientField::new(ints, "/norm_equation/generator")?;
        let n = field.degree();
        let mut cols = Vec::with_capacity(n);
        let mut p = lm.one();
        for _ in 0..n {
            cols.push(tower_coords(&p));
            p = lm.mul(&p, &theta);
        }
        let powers = Matrix::from_fn(n, n, |i, j| cols[j][i].clone());
        Ok(TowerAmbient {
            field,
            theta,
            powers,
        })
    }

    pub fn theta(&self) -> &[Qe] {
        &self.theta
    }

    /// Power-basis coordinates of the element with tower coordinates `v`.
    pub fn to_power(&self, v: &[BigRational], location: &str) -> Result<AmbientElem> {
        if v.len() != self.field.degree() {
            return Err(Error::validation(
                "vector-length",
                location,
                format!("expected {} coordinates", self.field.degree()),
            ));
        }
        self.powers
            .solve(&Rationals, v)
            .ok_or_else(|| Error::Inconsistent("basis change matrix is singular".into()))
    }

    pub fn from_power(&self, p: &AmbientElem) -> Vec<BigRational> {
        self.powers.mul_vec(&Rationals, p)
    }

    /// Power-basis coordinates of `Σ x_k ξ^k` with `x_k ∈ M`.
    pub fn of_element(&self, x: &[Qe]) -> AmbientElem {
        self.to_power(&tower_coords(x), "/")
            .expect("square basis change")
    }
}

/// `(1, ω, −(a+ξ), −ω(a+ξ))`, so that `β = X − (a+ξ)Y` with
/// `X = c0 + c1ω`, `Y = c2 + c3ω`.
pub fn cubic_pattern(
    t: &TowerSpec,
    amb: &TowerAmbient,
    setup: &CubicThueSetup,
) -> [AmbientElem; 4] {
    let m = t.field();
    let ell = t.degree();
    let embed = |c: Vec<Qe>| amb.of_element(&c);
    let mut one = vec![Qe::zero(); ell];
    one[0] = m.one();
    let mut om = vec![Qe::zero(); ell];
    om[0] = m.omega();
    let mut mu = vec![Qe::zero(); ell];
    mu[0] = Qe::from_bigints(&-&setup.a, &BigInt::zero());
    mu[1] = Qe::from_ints(-1, 0);
    let mu_om: Vec<Qe> = mu.iter().map(|c| m.mul(c, &m.omega())).collect();
    [embed(one), embed(om), embed(mu), embed(mu_om)]
}

/// `(X0, Y0) = (c0 + c1ω, c2 + c3ω)`.
pub fn thue_pair(c: &[BigInt; 4]) -> Vec<Qe> {
    vec![
        Qe::from_bigints(&c[0], &c[1]),
        Qe::from_bigints(&c[2], &c[3]),
    ]
}

#[derive(Clone, Debug)]
pub struct CubicRun {
    pub setup: CubicThueSetup,
    pub solutions: Vec<PatternSolution>,
    pub endgame: EndgameOutput,
}

/// Solve the Thue equation and recover every generator of a power integral
/// basis, up to equivalence. Complete relative to the exponent bound of `eq`;
/// `width` is the isolation width for the real roots that seed `h`.
pub fn run_cubic(t: &TowerSpec, eq: &NormEquation, width: &BigRational) -> Result<CubicRun> {
    let setup = build_cubic_thue(t)?;
    if eq.target_norm.abs() != setup.m0 {
        return Err(Error::validation(
            "target-norm-matches",
            "/norm_equation/target_norm",
            format!(
                "target norm {} differs from ±m0 = ±{}",
                eq.target_norm, setup.m0
            ),
        ));
    }
    let solutions = solve_norm_equation(eq)?;
    log::info!("thue equation: {} solutions", solutions.len());
    let cands: Vec<Vec<Qe>> = solutions.iter().map(|s| thue_pair(&s.c)).collect();
    let endgame = recover_generators(t, &cands, width)?;
    Ok(CubicRun {
        setup,
        solutions,
        endgame,
    })
}
