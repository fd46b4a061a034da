//! Randomized and exhaustive checks against independent oracles.

use std::collections::BTreeSet;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pibcomp::endgame::{canonicalize, default_root_width, recover_generators};
use pibcomp::io::load_field_data;
use pibcomp::number::{OmegaKind, QuadraticElement as Qe, QuadraticField, QuadraticFieldSpec};
use pibcomp::poly::roots::count_real_roots;
use pibcomp::poly::{
    integer_roots, real_roots, resultant_e_multimodular, resultant_euclid, resultant_subresultant,
    resultant_sylvester, BiPoly, Field, Matrix, Rationals, Ring, UniPoly, Var,
};
use pibcomp::quartic::{enumerate_pd, prepare_quartic};
use pibcomp::tower::{absolute_index, char_poly, relative_indices, CompositeElement, TowerSpec};

fn tower(name: &str) -> TowerSpec {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    load_field_data(&p).unwrap().tower
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn field(idx: usize) -> QuadraticField {
    let (d, k) = [
        (2, OmegaKind::Sqrt),
        (19, OmegaKind::Sqrt),
        (5, OmegaKind::Half),
        (13, OmegaKind::Half),
        (7, OmegaKind::Sqrt),
    ][idx];
    QuadraticField::new(BigInt::from(d), k)
}

fn qe() -> impl Strategy<Value = Qe> {
    (-1000i64..1000, 1i64..50, -1000i64..1000, 1i64..50)
        .prop_map(|(a, da, b, db)| Qe::new(q(a, da), q(b, db)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn quadratic_norm_is_multiplicative(k in 0usize..5, x in qe(), y in qe()) {
        let m = field(k);
        prop_assert_eq!(m.norm(&m.mul(&x, &y)), m.norm(&x) * m.norm(&y));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn conjugation_is_an_involution(k in 0usize..5, x in qe()) {
        let m = field(k);
        prop_assert_eq!(m.conj(&m.conj(&x)), x.clone());
        prop_assert!(m.add(&x, &m.conj(&x)).is_rational());
        prop_assert!(m.mul(&x, &m.conj(&x)).is_rational());
    }

    #[test]
    fn real_embeddings_refine(k in 0usize..5, x in qe(), a in 1u32..30, b in 1u32..30) {
        let m = field(k);
        let w1 = BigRational::new(BigInt::one(), BigInt::from(2).pow(a));
        let w2 = &w1 / BigRational::from_integer(BigInt::from(2).pow(b));
        let coarse = m.embed_real(&x, &w1);
        let fine = m.embed_real(&x, &w2);
        prop_assert!(fine.width() <= w2);
        prop_assert!(fine.is_subset_of(&coarse));
    }
}

#[test]
fn unit_powers_round_trip() {
    let specs = [
        QuadraticFieldSpec::new(BigInt::from(19), OmegaKind::Sqrt, Qe::from_ints(170, 39), 1)
            .unwrap(),
        QuadraticFieldSpec::new(BigInt::from(2), OmegaKind::Sqrt, Qe::from_ints(1, 1), -1).unwrap(),
        QuadraticFieldSpec::new(BigInt::from(5), OmegaKind::Half, Qe::from_ints(0, 1), -1).unwrap(),
    ];
    for s in &specs {
        for h in -50..=50 {
            assert_eq!(s.recognize_unit_power(&s.unit_pow(h)), Some((1, h)));
        }
    }
}

fn from_roots(roots: &[i64]) -> UniPoly {
    roots.iter().fold(UniPoly::from_i64s(&[1]), |acc, &r| {
        acc.mul(&Rationals, &UniPoly::from_i64s(&[-r, 1]))
    })
}

#[test]
fn resultant_vanishes_exactly_on_common_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..200 {
        let a: Vec<i64> = (0..rng.gen_range(1..5))
            .map(|_| rng.gen_range(-20..20))
            .collect();
        let b: Vec<i64> = (0..rng.gen_range(1..5))
            .map(|_| rng.gen_range(-20..20))
            .collect();
        let r = resultant_euclid(&Rationals, &from_roots(&a), &from_roots(&b));
        // for monic polynomials Res = Π (a_i − b_j)
        let prod: BigInt = a
            .iter()
            .flat_map(|x| b.iter().map(move |y| BigInt::from(x - y)))
            .product();
        assert_eq!(r, BigRational::from_integer(prod), "{a:?} {b:?}");
        assert_eq!(r.is_zero(), a.iter().any(|x| b.contains(x)));
    }
}

fn random_poly(rng: &mut ChaCha8Rng, deg: usize, c: i64) -> UniPoly {
    let mut v: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-c..=c)).collect();
    if v[deg] == 0 {
        v[deg] = 1;
    }
    UniPoly::from_i64s(&v)
}

#[test]
fn integer_roots_match_a_brute_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..25 {
        let k = rng.gen_range(0..4);
        let roots: Vec<i64> = (0..k).map(|_| rng.gen_range(-60..60)).collect();
        let deg = rng.gen_range(0..=6 - k);
        let extra = random_poly(&mut rng, deg, 9);
        let p = from_roots(&roots).mul(&Rationals, &extra);
        if p.is_zero() {
            continue;
        }
        let found = integer_roots(&p).unwrap();
        let ints: Vec<BigInt> = p.coeffs().iter().map(|c| c.to_integer()).collect();
        let scan: Vec<BigInt> = (-10_000i64..=10_000)
            .map(BigInt::from)
            .filter(|x| {
                ints.iter()
                    .rev()
                    .fold(BigInt::zero(), |acc, c| acc * x + c)
                    .is_zero()
            })
            .collect();
        assert_eq!(found, scan, "{p:?}");
    }
}

#[test]
fn isolation_agrees_with_sturm_counts() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let w = q(1, 1000);
    for _ in 0..120 {
        let deg = rng.gen_range(1..=8);
        let p = random_poly(&mut rng, deg, 20);
        let iv = real_roots(&p, &w).unwrap();
        assert_eq!(iv.len(), count_real_roots(&p), "{p:?}");
        for i in &iv {
            assert!(i.width() <= w);
            let (a, b) = (p.sign_at(i.lo()), p.sign_at(i.hi()));
            assert!(a * b <= 0, "{p:?} on [{}, {}]", i.lo(), i.hi());
        }
    }
}

#[test]
fn univariate_resultant_routes_agree_up_to_degree_12() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..120 {
        let (da, db) = (rng.gen_range(0..=12), rng.gen_range(0..=12));
        let a = random_poly(&mut rng, da, 30);
        let b = random_poly(&mut rng, db, 30);
        let e = resultant_euclid(&Rationals, &a, &b);
        assert_eq!(e, resultant_subresultant(&Rationals, &a, &b));
        assert_eq!(e, resultant_sylvester(&Rationals, &a, &b));
    }
}

fn random_bipoly(rng: &mut ChaCha8Rng, m: &QuadraticField, de: usize, dy: usize) -> BiPoly<Qe> {
    let mut grid: Vec<Vec<Qe>> = (0..=de)
        .map(|_| {
            (0..=dy)
                .map(|_| Qe::from_ints(rng.gen_range(-20..=20), rng.gen_range(-20..=20)))
                .collect()
        })
        .collect();
    grid[de][0] = Qe::from_ints(rng.gen_range(1..=20), rng.gen_range(-20..=20));
    BiPoly::from_grid(m, grid)
}

#[test]
fn bivariate_resultant_routes_agree_up_to_degree_12() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for case in 0..40 {
        let m = field(case % 5);
        let (de1, de2) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let (dy1, dy2) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
        if dy1 * de2 + dy2 * de1 > 12 {
            continue;
        }
        let p = random_bipoly(&mut rng, &m, de1, dy1);
        let r = random_bipoly(&mut rng, &m, de2, dy2);
        let ev = p.resultant(&m, &r, Var::E).unwrap();
        assert_eq!(ev, p.resultant_subresultant(&m, &r, Var::E).unwrap());
        assert_eq!(ev, resultant_e_multimodular(&m, &p, &r).unwrap());
        assert!(ev.degree().unwrap_or(0) <= 12);
    }
}

fn power_basis_generators() -> Vec<(TowerSpec, CompositeElement)> {
    vec![
        (
            tower("example1.json"),
            CompositeElement::from_i64s(&[0, 0, 0], &[2, 1, -1], 19),
        ),
        (
            tower("example2.json"),
            CompositeElement::from_i64s(&[0; 4], &[2, 0, 2, 0], 4),
        ),
        (
            tower("example2.json"),
            CompositeElement::from_i64s(&[0; 4], &[4, 2, 0, 2], 4),
        ),
    ]
}

/// `k·g + v` with `v` in `Z[ξ, ω]`, always integral.
fn random_integral(rng: &mut ChaCha8Rng, g: &CompositeElement) -> CompositeElement {
    let k = BigInt::from(rng.gen_range(-3..=3));
    let mut coord = |v: &BigInt| &k * v + &g.den * BigInt::from(rng.gen_range(-4..=4));
    let xs = g.xs.iter().map(&mut coord).collect();
    let ys = g.ys.iter().map(&mut coord).collect();
    CompositeElement::new(xs, ys, g.den.clone())
}

#[test]
fn index_product_identity_on_random_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for (t, g) in power_basis_generators()
        .into_iter()
        .skip(1)
        .chain(power_basis_generators().into_iter().take(1))
    {
        let mut primitive = 0;
        while primitive < 100 {
            let a = random_integral(&mut rng, &g);
            let r = relative_indices(&a, &t).unwrap();
            if r.abs_index.is_zero() {
                continue;
            }
            primitive += 1;
            assert_eq!(r.identities(), [true; 3], "{a}");
            assert_eq!(r.abs_index, absolute_index(&a, &t).unwrap());
        }
    }
}

fn times_m(t: &TowerSpec, a: &CompositeElement, u: &Qe) -> CompositeElement {
    let m = t.field();
    let d = BigRational::from_integer(a.den.clone());
    let c: Vec<Qe> = a.m_coeffs().iter().map(|c| m.mul(c, u)).collect();
    CompositeElement::new(
        c.iter().map(|c| (&c.a * &d).to_integer()).collect(),
        c.iter().map(|c| (&c.b * &d).to_integer()).collect(),
        a.den.clone(),
    )
}

#[test]
fn indices_are_invariant_under_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (t, g) in power_basis_generators() {
        let eps = t.quad().unit().clone();
        let eps_inv = t.quad().unit_pow(-1);
        for _ in 0..15 {
            let a = random_integral(&mut rng, &g);
            let base = relative_indices(&a, &t).unwrap();
            let s = BigInt::from(rng.gen_range(-50..=50));
            assert_eq!(
                absolute_index(&a.translated(&s), &t).unwrap(),
                base.abs_index
            );
            assert_eq!(absolute_index(&a.negated(), &t).unwrap(), base.abs_index);
            for u in [&eps, &eps_inv] {
                let b = times_m(&t, &a, u)
                    .translated(&s)
                    .translated_omega(&BigInt::from(rng.gen_range(-9..=9)));
                assert_eq!(
                    relative_indices(&b, &t).unwrap().rel_index_km,
                    base.rel_index_km,
                    "{a} -> {b}"
                );
            }
        }
    }
}

#[test]
fn characteristic_polynomial_annihilates() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for (t, g) in power_basis_generators() {
        let lm = t.l_over_m();
        let m = t.field();
        for _ in 0..10 {
            let a = random_integral(&mut rng, &g);
            let cp = char_poly(&a, &t).unwrap();
            let x = a.m_coeffs();
            let mut acc = lm.zero();
            for c in cp.coeffs().iter().rev() {
                acc = lm.add(&lm.mul(&acc, &x), &lm.lift(&m.from_rational(c)));
            }
            assert!(acc.iter().all(|c| c.is_zero()), "{a}");
        }
    }
}

fn inverse_diagonal(s: &Matrix<BigRational>) -> Vec<BigRational> {
    let n = s.rows();
    (0..n)
        .map(|i| {
            let e: Vec<BigRational> = (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect();
            s.solve(&Rationals, &e).unwrap()[i].clone()
        })
        .collect()
}

/// Every integer point with `zᵀSz ≤ pmax`, by scanning the bounding box.
fn box_scan(s: &Matrix<BigRational>, pmax: i64) -> Vec<(BigRational, Vec<BigInt>)> {
    let n = s.rows();
    let bounds: Vec<i64> = inverse_diagonal(s)
        .iter()
        .map(|d| {
            let lim = d * BigRational::from_integer(pmax.into());
            let mut b = 0i64;
            while BigRational::from_integer(((b + 1) * (b + 1)).into()) <= lim {
                b += 1;
            }
            b
        })
        .collect();
    let mut out = Vec::new();
    let mut z = bounds.iter().map(|b| -b).collect::<Vec<i64>>();
    loop {
        let zb: Vec<BigInt> = z.iter().map(|&x| BigInt::from(x)).collect();
        let v = pibcomp::quartic::forms::quad_value(s, &zb);
        if v <= BigRational::from_integer(pmax.into()) {
            out.push((v, zb));
        }
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            if z[k] < bounds[k] {
                z[k] += 1;
                break;
            }
            z[k] = -bounds[k];
            k += 1;
        }
    }
}

fn check_against_box(s: &Matrix<BigRational>, pmax: i64, halves: bool) {
    let pts = box_scan(s, pmax);
    let step = if halves { q(1, 2) } else { BigRational::one() };
    let mut p = BigRational::zero();
    while p <= BigRational::from_integer(pmax.into()) {
        let mut expect: Vec<Vec<BigInt>> = pts
            .iter()
            .filter(|(v, _)| *v == p)
            .map(|(_, z)| z.clone())
            .collect();
        expect.sort();
        assert_eq!(enumerate_pd(s, &p).unwrap(), expect, "p = {p}");
        p += &step;
    }
}

#[test]
fn ellipsoid_enumeration_matches_box_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..12 {
        let n = rng.gen_range(2..=4);
        let b = Matrix::from_fn(n, n, |_, _| q(rng.gen_range(-2..=2), 1));
        let mut s = b.transpose().mul(&Rationals, &b);
        for i in 0..n {
            let v = s.get(i, i) + BigRational::one();
            s.set(i, i, v);
        }
        // half-integral off-diagonal entries exercise the rational scaling
        if rng.gen_bool(0.5) {
            let v = s.get(0, 1) + q(1, 2);
            s.set(0, 1, v.clone());
            s.set(1, 0, v);
        }
        if s.leading_minors(&Rationals).iter().all(|m| m.is_positive()) {
            check_against_box(&s, 100, true);
        }
    }
}

#[test]
fn quartic_split_form_against_box_and_identity() {
    let t = tower("example2.json");
    let setup = prepare_quartic(&t).unwrap();
    let s = &setup.split.s;
    assert!(s.leading_minors(&Rationals).iter().all(|m| m.is_positive()));
    // the box for this form grows like p^3; p <= 10 keeps it near 5·10^5 points
    check_against_box(s, 10, false);

    let m = t.field();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..1000 {
        let z: Vec<BigInt> = (0..6)
            .map(|_| BigInt::from(rng.gen_range(-30..=30)))
            .collect();
        let x: Vec<Qe> = (0..3).map(|i| Qe::from_bigints(&z[i], &z[i + 3])).collect();
        let lhs = m.add(
            &setup.forms.q1.eval_m(m, &x),
            &setup.forms.q2.eval_m(m, &x).scale(&setup.lambda),
        );
        assert_eq!(
            lhs,
            m.from_sqrt_coords(&setup.split.s_value(&z), &setup.split.t_value(&z))
        );
    }
}

#[test]
fn cubic_endgame_is_independent_of_the_orbit_representative() {
    let t = tower("example1.json");
    let m = t.field();
    let eps = t.quad().unit().clone();
    let x0 = vec![Qe::from_ints(0, 1), Qe::from_ints(0, -1)];
    let w = default_root_width();
    let run = |x: Vec<Qe>| -> BTreeSet<CompositeElement> {
        recover_generators(&t, &[x], &w)
            .unwrap()
            .generators
            .into_iter()
            .collect()
    };
    let base = run(x0.clone());
    assert_eq!(base.len(), 1);
    assert_eq!(run(x0.iter().map(|c| m.neg(c)).collect()), base);
    assert_eq!(run(x0.iter().map(|c| m.mul(c, &eps)).collect()), base);
}

/// Elements `Σ c_i g^i`, `|c_i| ≤ 2`, over the power integral basis of the
/// known generator `g`: those of index 1 must all be `±g + Z`.
#[test]
fn small_box_of_example1_has_only_the_known_generator() {
    let t = tower("example1.json");
    let g = CompositeElement::from_i64s(&[0, 0, 0], &[2, 1, -1], 19);
    let lm = t.l_over_m();
    let m = t.field();
    let d = BigRational::from_integer(g.den.clone());
    let mut pows = vec![lm.one()];
    for _ in 1..6 {
        let p = lm.mul(pows.last().unwrap(), &g.m_coeffs());
        pows.push(p);
    }
    let to_elem = |v: &[Qe]| {
        CompositeElement::new(
            v.iter().map(|c| (&c.a * &d).to_integer()).collect(),
            v.iter().map(|c| (&c.b * &d).to_integer()).collect(),
            g.den.clone(),
        )
    };
    let target = canonicalize(&g);
    let mut found = 0;
    let r = 2i64;
    let side = (2 * r + 1) as usize;
    for code in 0..side.pow(5) {
        let mut c = code;
        let mut v = lm.zero();
        for p in &pows[1..] {
            let k = (c % side) as i64 - r;
            c /= side;
            v = lm.add(
                &v,
                &p.iter().map(|x| m.mul(x, &Qe::from_ints(k, 0))).collect(),
            );
        }
        if v.iter().all(|x| x.is_zero()) {
            continue;
        }
        let a = to_elem(&v);
        if matches!(absolute_index(&a, &t), Ok(i) if i.is_one()) {
            assert_eq!(canonicalize(&a), target, "{a}");
            found += 1;
        }
    }
    assert_eq!(found, 2);
}
