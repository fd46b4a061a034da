//! Shared final stage of both pipelines: from `X_{k0}` known up to a unit
//! factor, recover `h` with `X_k = ε^h X_{k0}` and the coordinate `y0`.
//!
//! With `e = ε^h`, `ε̄^h = σ/e` and `δ = ω − ω̄`,
//!
//! ```text
//! F2 = Π_j      (e²X0(ξ_j)  + e·y0·δ − σ·X̄0(ξ_j))  − s2·c2·e^ℓ
//! F3 = Π_{j1≠j2}(e²X0(ξ_j1) + e·y0·δ − σ·X̄0(ξ_j2)) − s3·c3·e^{ℓ(ℓ−1)}
//! ```
//!
//! encode `I_{K/L}(α) = 1` and `J_{L,M}(α) = 1`; `F2` comes from the norm of
//! `L⊗M` over `M`, `F3` from the pair algebra. Both are built by evaluating
//! characteristic polynomials at integer values of `e` and interpolating.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::number::rational::{is_integer, ln_abs, rat_int};
use crate::number::{QuadraticElement, QuadraticField, QuadraticFieldSpec};
use crate::poly::resultant::interpolate;
use crate::poly::{
    integer_roots, real_roots, resultant_e_multimodular, BiPoly, Field, Poly, Ring, UniPoly,
};
use crate::tower::{absolute_index, is_integral, CompositeElement, Flat, TowerSpec};

type Qe = QuadraticElement;

/// `Σ_i p_i (k·y0)^i` for `p` in `T`: the substitution `T = k·y0`.
fn scale_var(m: &QuadraticField, p: &Poly<Qe>, k: &Qe) -> Vec<Qe> {
    let mut pw = m.one();
    p.coeffs()
        .iter()
        .map(|c| {
            let v = m.mul(c, &pw);
            pw = m.mul(&pw, k);
            v
        })
        .collect()
}

/// Interpolate per `y0`-power from values at `e = 0, 1, …`.
fn interpolate_grid(m: &QuadraticField, rows: Vec<Vec<Qe>>) -> BiPoly<Qe> {
    let nodes: Vec<Qe> = (0..rows.len() as i64).map(|k| m.from_int(k)).collect();
    let dy = rows.iter().map(Vec::len).max().unwrap_or(0);
    // column j: coefficient of y0^j as a polynomial in e
    let cols: Vec<Poly<Qe>> = (0..dy)
        .map(|j| {
            let vals: Vec<Qe> = rows
                .iter()
                .map(|r| r.get(j).cloned().unwrap_or_else(Qe::zero))
                .collect();
            interpolate(m, &nodes, &vals)
        })
        .collect();
    let de = cols.iter().map(|c| c.coeffs().len()).max().unwrap_or(0);
    let grid = (0..de)
        .map(|i| cols.iter().map(|c| c.coeff(m, i)).collect())
        .collect();
    BiPoly::from_grid(m, grid)
}

/// Scale to integer `ω`-coordinates with content 1.
pub fn primitive_m(m: &QuadraticField, p: &BiPoly<Qe>) -> BiPoly<Qe> {
    let grid = p.grid(m);
    let all: Vec<&BigRational> = grid.iter().flatten().flat_map(|q| [&q.a, &q.b]).collect();
    let den = all.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let num = all.iter().fold(BigInt::zero(), |acc, q| {
        acc.gcd(&(q.numer() * (&den / q.denom())))
    });
    if num.is_zero() {
        return p.clone();
    }
    let s = BigRational::new(den, num);
    p.scale(m, &Qe::rational(s))
}

/// The two constant-free parts `P2`, `P3` with `F2 = P2 − s2·c2·e^ℓ`,
/// `F3 = P3 − s3·c3·e^{ℓ(ℓ−1)}`.
pub fn norm_parts(t: &TowerSpec, x0: &[Qe], sigma: i32) -> (BiPoly<Qe>, BiPoly<Qe>) {
    let m = t.field();
    let ell = t.degree();
    let lm = t.l_over_m();
    let pair = t.pair_algebra();
    let delta = m.omega_diff();
    // X0(ξ) = Σ_{k≥1} X_{k0} ξ^k and its conjugate-coefficient twin
    let mut xs = vec![Qe::zero(); ell];
    let mut xb = vec![Qe::zero(); ell];
    for (k, x) in x0.iter().enumerate() {
        xs[k + 1] = x.clone();
        xb[k + 1] = m.conj(x);
    }
    let sig = m.from_int(sigma as i64);
    let xb_s = xb.iter().map(|c| m.mul(c, &sig)).collect::<Vec<_>>();
    let x_pair = pair.lift(&xs);
    let xb_pair = pair.reduce(xb_s.iter().map(|c| lm.lift(c)).collect());

    let rows2: Vec<Vec<Qe>> = (0..=2 * ell as i64)
        .into_par_iter()
        .map(|e| {
            let ee = m.from_int(e * e);
            let w: Vec<Qe> = (0..ell)
                .map(|k| m.sub(&m.mul(&ee, &xs[k]), &xb_s[k]))
                .collect();
            let cp = Flat::<QuadraticField>::charpoly(&lm, &lm.neg(&w));
            scale_var(m, &cp, &m.mul(&m.from_int(e), &delta))
        })
        .collect();
    let n3 = 2 * ell * (ell - 1);
    let rows3: Vec<Vec<Qe>> = (0..=n3 as i64)
        .into_par_iter()
        .map(|e| {
            let ee = pair.lift(&lm.lift(&m.from_int(e * e)));
            let w = pair.sub(&pair.mul(&ee, &x_pair), &xb_pair);
            let cp = Flat::<QuadraticField>::charpoly(&pair, &pair.neg(&w));
            scale_var(m, &cp, &m.mul(&m.from_int(e), &delta))
        })
        .collect();
    (interpolate_grid(m, rows2), interpolate_grid(m, rows3))
}

/// `c2 = d^ℓ δ^ℓ / √|D_{L,M}|` and `c3 = d^{ℓ(ℓ−1)} √|D_{L,M}|`.
pub fn rhs_constants(t: &TowerSpec) -> (Qe, Qe) {
    let m = t.field();
    let ell = t.degree() as u32;
    let d = rat_int(t.den());
    let s = rat_int(t.sqrt_disc_lm());
    let c2 = m.pow(&m.omega_diff(), ell).scale(&(d.pow(ell as i32) / &s));
    let c3 = Qe::rational(d.pow((ell * (ell - 1)) as i32) * &s);
    (c2, c3)
}

fn minus_monomial(m: &QuadraticField, p: &BiPoly<Qe>, c: &Qe, e_deg: usize) -> BiPoly<Qe> {
    let mut grid = vec![vec![]; e_deg + 1];
    grid[e_deg] = vec![c.clone()];
    p.sub(m, &BiPoly::from_grid(m, grid))
}

/// Per-branch diagnostics for the result document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchReport {
    pub x0: Vec<Qe>,
    pub sigma: i32,
    pub s2: i32,
    pub s3: i32,
    pub f2_degrees: (usize, usize),
    pub f3_degrees: (usize, usize),
    /// `None` when the resultant in `e` vanished and `y0` was eliminated.
    pub f4_degree: Option<usize>,
    pub y0_roots: Vec<BigInt>,
    pub h_values: Vec<i64>,
}

#[derive(Clone, Debug, Default)]
pub struct EndgameOutput {
    pub generators: Vec<CompositeElement>,
    pub branches: Vec<BranchReport>,
}

/// `F2`, `F3` for one sign choice, primitive.
pub fn build_f2_f3(
    t: &TowerSpec,
    x0: &[Qe],
    sigma: i32,
    s2: i32,
    s3: i32,
) -> (BiPoly<Qe>, BiPoly<Qe>) {
    let (p2, p3) = norm_parts(t, x0, sigma);
    finish_f2_f3(t, &p2, &p3, s2, s3)
}

fn finish_f2_f3(
    t: &TowerSpec,
    p2: &BiPoly<Qe>,
    p3: &BiPoly<Qe>,
    s2: i32,
    s3: i32,
) -> (BiPoly<Qe>, BiPoly<Qe>) {
    let m = t.field();
    let ell = t.degree();
    let (c2, c3) = rhs_constants(t);
    let f2 = minus_monomial(m, p2, &c2.scale(&BigRational::from_integer(s2.into())), ell);
    let f3 = minus_monomial(
        m,
        p3,
        &c3.scale(&BigRational::from_integer(s3.into())),
        ell * (ell - 1),
    );
    (primitive_m(m, &f2), primitive_m(m, &f3))
}

/// Split `Σ (a_i + b_i ω) y^i` into `(Σ a_i y^i, Σ b_i y^i)`.
fn split_rational(p: &Poly<Qe>) -> (UniPoly, UniPoly) {
    (
        UniPoly::from_rationals(p.coeffs().iter().map(|c| c.a.clone()).collect()),
        UniPoly::from_rationals(p.coeffs().iter().map(|c| c.b.clone()).collect()),
    )
}

/// Integer `y` with `p(y) = 0` for `p` over `M`.
pub fn integer_roots_m(p: &Poly<Qe>) -> Result<Vec<BigInt>> {
    let (a, b) = split_rational(p);
    let (first, other) = if a.is_zero() { (&b, &a) } else { (&a, &b) };
    if first.is_zero() {
        return Err(Error::Degenerate(
            "integer roots of the zero polynomial".into(),
        ));
    }
    Ok(integer_roots(first)?
        .into_iter()
        .filter(|r| other.value_at(&rat_int(r)).is_zero())
        .collect())
}

/// `p·p̄ ∈ Q[x]` for `p` over `M`.
fn times_conjugate(m: &QuadraticField, p: &Poly<Qe>) -> UniPoly {
    let pc = Poly::new(m, p.coeffs().iter().map(|c| m.conj(c)).collect());
    let prod = p.mul(m, &pc);
    UniPoly::from_rationals(prod.coeffs().iter().map(|c| c.a.clone()).collect())
}

/// Default isolation width for the real roots that seed `h`.
pub fn default_root_width() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(1u64 << 20))
}

/// Widest `h` range a single isolating interval may produce before the
/// width is declared too coarse.
const MAX_H_SPREAD: i64 = 64;

/// Candidate exponents `h` from the positive real roots of `p·p̄`: every
/// integer within one of `ln γ / ln ε` over the isolating interval of `γ`.
fn h_candidates(q: &QuadraticFieldSpec, p: &Poly<Qe>, width: &BigRational) -> Result<Vec<i64>> {
    let m = q.field();
    let pr = times_conjugate(m, p);
    if pr.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let roots = real_roots(&pr, width)?;
    let ln_eps = m.approx_ln_abs(q.unit());
    let mut hs = BTreeSet::new();
    for iv in roots {
        if iv.sign() != Some(1) {
            continue;
        }
        let (a, b) = (ln_abs(iv.lo()) / ln_eps, ln_abs(iv.hi()) / ln_eps);
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::Precision(format!(
                "isolating interval [{}, {}] touches zero; use a finer --precision",
                iv.lo(),
                iv.hi()
            )));
        }
        let (lo, hi) = (a.min(b).floor() as i64 - 1, a.max(b).ceil() as i64 + 1);
        if hi - lo > MAX_H_SPREAD {
            return Err(Error::Precision(format!(
                "root interval of width {} leaves {} candidates for h; use a finer --precision",
                iv.hi() - iv.lo(),
                hi - lo + 1
            )));
        }
        hs.extend(lo..=hi);
    }
    Ok(hs.into_iter().collect())
}

/// Integer `ω`-coordinates of an element of `M`, if it lies in `Z_M`.
fn integral_coords(x: &Qe) -> Option<(BigInt, BigInt)> {
    (is_integer(&x.a) && is_integer(&x.b)).then(|| (x.a.to_integer(), x.b.to_integer()))
}

/// `±α + Z` representative: the sign making `(ys, xs[1..])` lexicographically
/// largest, then `x0` reduced to its least nonnegative residue mod `den`.
pub fn canonicalize(a: &CompositeElement) -> CompositeElement {
    let n = a.negated();
    let key = |c: &CompositeElement| (c.ys.clone(), c.xs[1..].to_vec());
    let mut best = if key(&n) > key(a) { n } else { a.clone() };
    best.xs[0] = best.xs[0].mod_floor(&best.den);
    best
}

/// Every `α = (x0 + y0·ω + Σ X_k ξ^k)/d` with `x0 ∈ [0, d)` that is integral
/// and has index one.
fn complete(t: &TowerSpec, xk: &[Qe], y0: &BigInt) -> Result<Vec<CompositeElement>> {
    let ell = t.degree();
    let mut xs = vec![BigInt::zero(); ell];
    let mut ys = vec![BigInt::zero(); ell];
    for (k, x) in xk.iter().enumerate() {
        let Some((a, b)) = integral_coords(x) else {
            log::debug!("discarding h: X_{} = {x:?} is not in Z_M", k + 1);
            return Ok(Vec::new());
        };
        xs[k + 1] = a;
        ys[k + 1] = b;
    }
    ys[0] = y0.clone();
    let mut out = Vec::new();
    let d = t.den();
    let mut x0 = BigInt::zero();
    while &x0 < d {
        xs[0] = x0.clone();
        let a = CompositeElement::new(xs.clone(), ys.clone(), d.clone());
        if is_integral(&a, t)? {
            match absolute_index(&a, t) {
                Ok(i) if i.is_one() => out.push(canonicalize(&a)),
                Ok(i) => log::debug!("{a} is integral with index {i}"),
                Err(Error::NonPrimitive) => log::debug!("{a} is not primitive"),
                Err(e) => return Err(e),
            }
        }
        x0 += 1;
    }
    Ok(out)
}

struct Branch<'a> {
    t: &'a TowerSpec,
    x0: &'a [Qe],
    sigma: i32,
    width: &'a BigRational,
}

impl Branch<'_> {
    /// `h` with `F2(ε^h, y0) = F3(ε^h, y0) = 0` and `N(ε)^h = σ`.
    fn exact_h(&self, f2: &BiPoly<Qe>, f3: &BiPoly<Qe>, h: i64, y0: &Qe) -> bool {
        let q = self.t.quad();
        if q.unit_pow_norm(h) != self.sigma {
            return false;
        }
        let m = q.field();
        let e = q.unit_pow(h);
        f2.eval(m, &e, y0).is_zero() && f3.eval(m, &e, y0).is_zero()
    }

    fn lift(&self, h: i64) -> Vec<Qe> {
        let q = self.t.quad();
        let m = q.field();
        let e = q.unit_pow(h);
        self.x0.iter().map(|x| m.mul(&e, x)).collect()
    }

    fn run(
        &self,
        f2: &BiPoly<Qe>,
        f3: &BiPoly<Qe>,
        rep: &mut BranchReport,
    ) -> Result<Vec<CompositeElement>> {
        let m = self.t.field();
        let mut out = Vec::new();
        match resultant_e_multimodular(m, f2, f3)? {
            f4 if !f4.is_zero() => {
                rep.f4_degree = f4.degree();
                rep.y0_roots = integer_roots_m(&f4)?;
                for y0 in rep.y0_roots.clone() {
                    let yq = m.from_rational(&rat_int(&y0));
                    for h in h_candidates(self.t.quad(), &f2.eval_y0(m, &yq), self.width)? {
                        if self.exact_h(f2, f3, h, &yq) {
                            rep.h_values.push(h);
                            out.extend(complete(self.t, &self.lift(h), &y0)?);
                        }
                    }
                }
            }
            _ => {
                log::warn!("F4 vanishes identically; eliminating y0 instead");
                let r = resultant_e_multimodular(m, &f2.swap(m), &f3.swap(m))?;
                if r.is_zero() {
                    return Err(Error::ZeroResultant(
                        "both eliminations vanish; F2 and F3 share a factor".into(),
                    ));
                }
                rep.f4_degree = None;
                for h in h_candidates(self.t.quad(), &r, self.width)? {
                    let e = self.t.quad().unit_pow(h);
                    if self.t.quad().unit_pow_norm(h) != self.sigma {
                        continue;
                    }
                    let g = f2.eval_e(m, &e);
                    if g.is_zero() {
                        continue;
                    }
                    for y0 in integer_roots_m(&g)? {
                        let yq = m.from_rational(&rat_int(&y0));
                        if f3.eval(m, &e, &yq).is_zero() {
                            rep.y0_roots.push(y0.clone());
                            rep.h_values.push(h);
                            out.extend(complete(self.t, &self.lift(h), &y0)?);
                        }
                    }
                }
            }
        }
        rep.y0_roots.sort();
        rep.y0_roots.dedup();
        rep.h_values.sort();
        rep.h_values.dedup();
        Ok(out)
    }
}

/// Run the endgame for every candidate `(X_{10}, …, X_{ℓ−1,0})`.
pub fn recover_generators(
    t: &TowerSpec,
    candidates: &[Vec<Qe>],
    width: &BigRational,
) -> Result<EndgameOutput> {
    let sigmas: Vec<i32> = if t.quad().unit_norm() == -1 {
        vec![1, -1]
    } else {
        vec![1]
    };
    let jobs: Vec<(usize, i32)> = candidates
        .iter()
        .enumerate()
        .filter(|(_, x)| x.iter().any(|c| !c.is_zero()))
        .flat_map(|(i, _)| sigmas.iter().map(move |&s| (i, s)))
        .collect();
    let results: Vec<Result<Vec<(BranchReport, Vec<CompositeElement>)>>> = jobs
        .par_iter()
        .map(|&(i, sigma)| {
            let x0 = &candidates[i];
            let (p2, p3) = norm_parts(t, x0, sigma);
            let br = Branch { t, x0, sigma, width };
            let mut v = Vec::new();
            for s2 in [1, -1] {
                for s3 in [1, -1] {
                    let (f2, f3) = finish_f2_f3(t, &p2, &p3, s2, s3);
                    let mut rep = BranchReport {
                        x0: x0.clone(),
                        sigma,
                        s2,
                        s3,
                        f2_degrees: (f2.deg_e().unwrap_or(0), f2.deg_y0().unwrap_or(0)),
                        f3_degrees: (f3.deg_e().unwrap_or(0), f3.deg_y0().unwrap_or(0)),
                        f4_degree: None,
                        y0_roots: Vec::new(),
                        h_values: Vec::new(),
                    };
                    let found = br.run(&f2, &f3, &mut rep)?;
                    log::info!(
                        "branch X0={:?} σ={sigma} s2={s2} s3={s3}: deg F4 = {:?}, y0 roots {:?}, h {:?}",
                        x0,
                        rep.f4_degree,
                        rep.y0_roots,
                        rep.h_values
                    );
                    v.push((rep, found));
                }
            }
            Ok(v)
        })
        .collect();
    let mut out = EndgameOutput::default();
    let mut gens = BTreeSet::new();
    for r in results {
        for (rep, found) in r? {
            gens.extend(found);
            out.branches.push(rep);
        }
    }
    out.generators = gens.into_iter().collect();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::index::tests::{example1, example2};

    #[test]
    fn canonical_form() {
        let a = CompositeElement::from_i64s(&[-20, 0, 0], &[-2, -1, 1], 19);
        let c = canonicalize(&a);
        assert_eq!(c, CompositeElement::from_i64s(&[1, 0, 0], &[2, 1, -1], 19));
    }

    #[test]
    fn f2_vanishes_at_the_example1_generator() {
        let t = example1();
        // X0 = ω, Y0 = −ω from the Thue solution (0, 1, 0, −1)
        let x0 = vec![Qe::from_ints(0, 1), Qe::from_ints(0, -1)];
        let m = t.field();
        let mut hit = false;
        for (s2, s3) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let (f2, f3) = build_f2_f3(&t, &x0, 1, s2, s3);
            assert!(f2.deg_e().unwrap() <= 6 && f2.deg_y0().unwrap() <= 3);
            assert!(f3.deg_e().unwrap() <= 12 && f3.deg_y0().unwrap() <= 6);
            let (one, two) = (m.one(), m.from_int(2));
            if f2.eval(m, &one, &two).is_zero() && f3.eval(m, &one, &two).is_zero() {
                hit = true;
            }
        }
        assert!(hit);
    }

    #[test]
    fn example1_endgame() {
        let t = example1();
        let cands = vec![
            vec![Qe::from_ints(0, 1), Qe::from_ints(0, -1)],
            vec![Qe::from_ints(0, 2), Qe::from_ints(0, 1)],
        ];
        let out = recover_generators(&t, &cands, &default_root_width()).unwrap();
        assert_eq!(
            out.generators,
            vec![CompositeElement::from_i64s(&[0, 0, 0], &[2, 1, -1], 19)]
        );
        assert!(out
            .branches
            .iter()
            .all(|b| b.f4_degree.is_none_or(|d| d <= 72)));
    }

    #[test]
    fn f2_degrees_quartic() {
        let t = example2();
        let x0 = vec![
            Qe::from_ints(0, 1),
            Qe::from_ints(0, 0),
            Qe::from_ints(0, 1),
        ];
        let (f2, f3) = build_f2_f3(&t, &x0, 1, 1, 1);
        assert!(f2.deg_e().unwrap() <= 8 && f2.deg_y0().unwrap() <= 4);
        assert!(f3.deg_e().unwrap() <= 24 && f3.deg_y0().unwrap() <= 12);
    }
}

#[cfg(test)]
mod resultant_check {
    use super::*;
    use crate::poly::Var;
    use crate::tower::index::tests::example2;

    #[test]
    fn modular_f4_matches_exact() {
        let t = example2();
        let m = t.field();
        let x0 = vec![
            Qe::from_ints(0, 0),
            Qe::from_ints(0, 2),
            Qe::from_ints(0, 0),
        ];
        let (p2, p3) = norm_parts(&t, &x0, 1);
        let (f2, f3) = finish_f2_f3(&t, &p2, &p3, 1, 1);
        let fast = resultant_e_multimodular(m, &f2, &f3).unwrap();
        assert_eq!(fast, f2.resultant(m, &f3, Var::E).unwrap());
        assert_eq!(
            integer_roots_m(&fast).unwrap(),
            vec![BigInt::from(-2), BigInt::from(2)]
        );
    }
}
