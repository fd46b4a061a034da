//! Quartic `L`, totally complex branch.
//!
//! `I_{K/M}(α) = 1` forces `N_{M/Q}(F(U, V)) = ±d¹²/i0` with
//! `U = Q1(X1, X2, X3)`, `V = Q2(X1, X2, X3)`. That cubic equation is solved
//! as a norm equation in `H = M(ρ)`, `F(ρ, 1) = 0`, which gives `(U, V)` up
//! to a power of `ε`. Because `Q1 + λQ2` is positive definite, the triples
//! `X_{i0}` come from enumerating lattice points on an ellipsoid; the
//! remaining unit factor and `y0` come from the shared endgame.

pub mod forms;
pub mod lattice;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;

use crate::endgame::{recover_generators, EndgameOutput};
use crate::error::{Error, Result};
use crate::norm::{solve_norm_equation, AmbientElem, AmbientField, NormEquation, PatternSolution};
use crate::number::rational::rat_int;
use crate::number::{OmegaKind, QuadraticElement};
use crate::poly::{real_roots, Ring};
use crate::tower::TowerSpec;

pub use forms::{choose_lambda, quartic_forms, split_s_t, LambdaSplit, QuarticForms, TernaryForm};
pub use lattice::enumerate_pd;

type Qe = QuadraticElement;

/// Refuse quartic fields with a real embedding: the positive definite
/// shortcut needs `L` totally complex.
pub fn check_totally_complex(t: &TowerSpec) -> Result<()> {
    let n = real_roots(&t.min_poly(), &BigRational::new(1.into(), 1024.into()))?.len();
    if n > 0 {
        return Err(Error::Unsupported(format!(
            "L has {n} real embeddings; only totally complex quartic fields are handled. The general \
             branch, which writes the X_i0 as binary quadratic forms in two parameters and solves the \
             resulting quartic relative Thue equations, is not implemented"
        )));
    }
    Ok(())
}

/// `d¹²/i0`.
pub fn quartic_target(t: &TowerSpec, forms: &QuarticForms) -> Result<BigInt> {
    let num = t.den().pow(12);
    let (q, r) = num.div_rem(&forms.i0);
    if !r.is_zero() {
        return Err(Error::Inconsistent(format!(
            "i0 = {} does not divide d^12 = {num}",
            forms.i0
        )));
    }
    Ok(q)
}

#[derive(Clone, Debug)]
pub struct QuarticSetup {
    pub forms: QuarticForms,
    pub lambda: BigRational,
    pub split: LambdaSplit,
    pub target: BigInt,
}

pub fn prepare_quartic(t: &TowerSpec) -> Result<QuarticSetup> {
    let forms = quartic_forms(t)?;
    check_totally_complex(t)?;
    let lambda = choose_lambda(&forms.cubic_at_one())?;
    let split = split_s_t(&forms, &lambda, t.field())?;
    let target = quartic_target(t, &forms)?;
    Ok(QuarticSetup {
        forms,
        lambda,
        split,
        target,
    })
}

/// The sextic field `H = M(ρ)` with the coordinates of `ω` and `ρ`.
#[derive(Clone, Debug)]
pub struct AuxField {
    pub field: AmbientField,
    pub omega: AmbientElem,
    pub rho: AmbientElem,
}

impl AuxField {
    pub fn new(
        t: &TowerSpec,
        forms: &QuarticForms,
        min_poly: Vec<BigInt>,
        omega: AmbientElem,
        rho: AmbientElem,
    ) -> Result<Self> {
        let field = AmbientField::new(min_poly, "/aux_field/min_poly")?;
        if field.degree() != 6 {
            return Err(Error::validation(
                "aux-degree",
                "/aux_field/min_poly",
                format!(
                    "auxiliary field must be sextic, got degree {}",
                    field.degree()
                ),
            ));
        }
        for (v, loc) in [
            (&omega, "/aux_field/omega_coords"),
            (&rho, "/aux_field/rho_coords"),
        ] {
            if v.len() != 6 {
                return Err(Error::validation(
                    "vector-length",
                    loc,
                    "expected 6 coordinates",
                ));
            }
        }
        let d = rat_int(t.field().radicand());
        let w2 = field.mul(&omega, &omega);
        let rhs = match t.field().kind() {
            OmegaKind::Sqrt => field.from_rational(&d),
            OmegaKind::Half => field.add(
                &omega,
                &field.from_rational(
                    &((d - BigRational::from_integer(1.into()))
                        / BigRational::from_integer(4.into())),
                ),
            ),
        };
        if w2 != rhs {
            return Err(Error::validation(
                "aux-omega-relation",
                "/aux_field/omega_coords",
                "ω does not satisfy its quadratic relation",
            ));
        }
        let c: Vec<BigRational> = [3, 2, 1, 0].iter().map(|&k| rat_int(&forms.f[k])).collect();
        if !field.eval_poly(&c, &rho).iter().all(Zero::is_zero) {
            return Err(Error::validation(
                "aux-rho-root",
                "/aux_field/rho_coords",
                "ρ is not a root of F(u, 1)",
            ));
        }
        Ok(AuxField { field, omega, rho })
    }

    /// `(1, ω, −ρ, −ωρ)`, so that `β = U − ρV`.
    pub fn pattern(&self) -> [AmbientElem; 4] {
        let f = &self.field;
        let neg_rho = f.neg(&self.rho);
        [
            f.one(),
            self.omega.clone(),
            neg_rho.clone(),
            f.mul(&self.omega, &neg_rho),
        ]
    }
}

/// A triple `X_{10}, X_{20}, X_{30}` with the `(U0, V0)` it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticCandidate {
    pub uv: [BigInt; 4],
    pub sign: i32,
    pub r0: u32,
    pub x: Vec<Qe>,
}

fn sign_normalized(x: Vec<Qe>) -> Vec<Qe> {
    let first = x
        .iter()
        .flat_map(|c| [&c.a, &c.b])
        .find(|v| !v.is_zero())
        .cloned();
    match first {
        Some(v) if v.is_negative() => x.iter().map(|c| Qe::new(-&c.a, -&c.b)).collect(),
        _ => x,
    }
}

/// All `X_{i0}` with `Q1(X0) = ±U0ε^{r0}` and `Q2(X0) = ±V0ε^{r0}`, sign
/// normalized and deduplicated.
pub fn lift_candidates(
    t: &TowerSpec,
    setup: &QuarticSetup,
    solutions: &[PatternSolution],
) -> Result<Vec<QuarticCandidate>> {
    let m = t.field();
    let eps = t.quad().unit().clone();
    let mut out: BTreeMap<Vec<(BigInt, BigInt)>, QuarticCandidate> = BTreeMap::new();
    for sol in solutions {
        let c = &sol.c;
        let (u0, v0) = (
            Qe::from_bigints(&c[0], &c[1]),
            Qe::from_bigints(&c[2], &c[3]),
        );
        for sign in [1, -1] {
            for r0 in [0u32, 1] {
                let f = m.mul(&m.from_int(sign as i64), &m.pow(&eps, r0));
                let (u, v) = (m.mul(&u0, &f), m.mul(&v0, &f));
                let rhs = m.add(&u, &v.scale(&setup.lambda));
                if m.sign(&rhs) != Ordering::Greater || m.sign(&m.conj(&rhs)) != Ordering::Greater {
                    continue;
                }
                let (p, q) = m.sqrt_coords(&rhs);
                for z in enumerate_pd(&setup.split.s, &p)? {
                    if setup.split.t_value(&z) != q {
                        continue;
                    }
                    let x: Vec<Qe> = (0..3).map(|i| Qe::from_bigints(&z[i], &z[i + 3])).collect();
                    if setup.forms.q1.eval_m(m, &x) != u || setup.forms.q2.eval_m(m, &x) != v {
                        continue;
                    }
                    let x = sign_normalized(x);
                    let key = x
                        .iter()
                        .map(|e| (e.a.to_integer(), e.b.to_integer()))
                        .collect();
                    out.entry(key).or_insert_with(|| QuarticCandidate {
                        uv: c.clone(),
                        sign,
                        r0,
                        x,
                    });
                }
            }
        }
    }
    Ok(out.into_values().collect())
}

#[derive(Clone, Debug)]
pub struct QuarticRun {
    pub setup: QuarticSetup,
    pub solutions: Vec<PatternSolution>,
    pub candidates: Vec<QuarticCandidate>,
    pub endgame: EndgameOutput,
}

/// Every generator of a power integral basis up to equivalence, complete
/// relative to the exponent bound of `eq`.
pub fn run_quartic_tc(
    t: &TowerSpec,
    setup: QuarticSetup,
    eq: &NormEquation,
    width: &BigRational,
) -> Result<QuarticRun> {
    if eq.target_norm.abs() != setup.target {
        return Err(Error::validation(
            "target-norm-matches",
            "/aux_field/norm_equation/target_norm",
            format!(
                "target norm {} differs from ±d^12/i0 = ±{}",
                eq.target_norm, setup.target
            ),
        ));
    }
    let solutions = solve_norm_equation(eq)?;
    log::info!(
        "cubic relative Thue equation: {} solutions",
        solutions.len()
    );
    let candidates = lift_candidates(t, &setup, &solutions)?;
    log::info!("{} candidate triples X_i0", candidates.len());
    let xs: Vec<Vec<Qe>> = candidates.iter().map(|c| c.x.clone()).collect();
    let endgame = recover_generators(t, &xs, width)?;
    Ok(QuarticRun {
        setup,
        solutions,
        candidates,
        endgame,
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::number::rational::{int, rat};
    use crate::tower::index::tests::example2;
    use crate::tower::CompositeElement;

    fn v(c: &[(i64, i64)]) -> AmbientElem {
        c.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    pub(crate) fn example2_aux(t: &TowerSpec, forms: &QuarticForms) -> AuxField {
        let omega = v(&[(0, 1), (2, 1), (0, 1), (-5, 8), (0, 1), (1, 32)]);
        let rho = v(&[(2, 1), (0, 1), (-1, 1), (0, 1), (1, 16), (0, 1)]);
        let mp = [-128, 0, 128, 0, -24, 0, 1]
            .iter()
            .map(|&x| int(x))
            .collect();
        AuxField::new(t, forms, mp, omega, rho).unwrap()
    }

    #[test]
    fn example2_setup_and_aux() {
        let t = example2();
        let s = prepare_quartic(&t).unwrap();
        assert_eq!(s.lambda, rat(0, 1));
        assert_eq!(s.target, int(2).pow(22));
        let aux = example2_aux(&t, &s.forms);
        // ϑ = ρ·ω
        assert_eq!(aux.field.mul(&aux.rho, &aux.omega), aux.field.gen());
    }

    #[test]
    fn lifts_reach_the_generators() {
        let t = example2();
        let s = prepare_quartic(&t).unwrap();
        let sol = PatternSolution {
            c: [int(16), int(0), int(8), int(0)],
            representative: 0,
            exponents: vec![],
        };
        let cands = lift_candidates(&t, &s, &[sol]).unwrap();
        assert!(!cands.is_empty());
        for c in &cands {
            let m = t.field();
            let u = m.mul(
                &Qe::from_ints(16 * c.sign as i64, 0),
                &m.pow(t.quad().unit(), c.r0),
            );
            assert_eq!(s.forms.q1.eval_m(m, &c.x), u);
        }
        // (2ω + 2ωξ²)/4 has X0 = (0, 2ω, 0) up to a unit
        let out = recover_generators(
            &t,
            &cands.iter().map(|c| c.x.clone()).collect::<Vec<_>>(),
            &crate::endgame::default_root_width(),
        )
        .unwrap();
        assert!(
            out.generators
                .contains(&CompositeElement::from_i64s(&[0; 4], &[2, 0, 2, 0], 4)),
            "{:?}",
            out.generators
        );
    }

    #[test]
    fn real_quartic_is_unsupported() {
        use crate::number::OmegaKind;
        use crate::tower::{validate_tower, TowerData};
        let t = validate_tower(&TowerData {
            radicand: int(5),
            omega: OmegaKind::Half,
            unit: (int(0), int(1)),
            unit_norm: -1,
            min_poly: [-1, -1, 0, 0, 1].iter().map(|&x| int(x)).collect(),
            den: int(1),
            disc_m: int(5),
            disc_l: int(-283),
            disc_k: int(283 * 283 * 625),
        })
        .unwrap();
        assert!(matches!(prepare_quartic(&t), Err(Error::Unsupported(_))));
    }
}
