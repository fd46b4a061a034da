//! Unit-orbit enumeration for norm-form equations.
//!
//! Each orbit element `γ·Π η_i^{a_i}` is tracked modulo two word-sized primes
//! while the exponents follow a reflected Gray code, so every step is one
//! small matrix-vector product. The pattern annihilator is applied to the
//! modular image; only candidates that survive it are rebuilt exactly and
//! matched with exact linear algebra. The modular test can only produce
//! false positives, never lose a solution.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::ambient::{has_abs_norm, AmbientElem, AmbientField, PatternBasis};
use crate::error::{Error, Result};
use crate::number::rational::rat_int;

#[derive(Clone, Debug)]
pub struct NormEquation {
    pub ambient: AmbientField,
    pub representatives: Vec<AmbientElem>,
    pub units: Vec<AmbientElem>,
    pub target_norm: BigInt,
    pub exponent_bound: u32,
    pub pattern: [AmbientElem; 4],
}

/// A solution `c` with the first witness `(representative, exponents)` that
/// produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternSolution {
    pub c: [BigInt; 4],
    pub representative: usize,
    pub exponents: Vec<i64>,
}

impl NormEquation {
    /// Validate norms and integrality; `location` prefixes diagnostics.
    pub fn new(
        ambient: AmbientField,
        representatives: Vec<AmbientElem>,
        units: Vec<AmbientElem>,
        target_norm: BigInt,
        exponent_bound: u32,
        pattern: [AmbientElem; 4],
        location: &str,
    ) -> Result<Self> {
        let n = ambient.degree();
        if target_norm.is_zero() {
            return Err(Error::validation(
                "target-norm-nonzero",
                format!("{location}/target_norm"),
                "target norm must be nonzero",
            ));
        }
        for (i, g) in representatives.iter().enumerate() {
            let loc = format!("{location}/representatives/{i}");
            if g.len() != n {
                return Err(Error::validation(
                    "vector-length",
                    loc,
                    format!("expected {n} coordinates"),
                ));
            }
            if !ambient.is_integral(g) {
                return Err(Error::validation(
                    "representative-integral",
                    loc,
                    "representative is not integral",
                ));
            }
            if !has_abs_norm(&ambient, g, &target_norm) {
                return Err(Error::validation(
                    "representative-norm",
                    loc,
                    format!(
                        "norm {} differs from ±{}",
                        ambient.norm(g),
                        target_norm.abs()
                    ),
                ));
            }
        }
        for (i, u) in units.iter().enumerate() {
            let loc = format!("{location}/units/{i}");
            if u.len() != n {
                return Err(Error::validation(
                    "vector-length",
                    loc,
                    format!("expected {n} coordinates"),
                ));
            }
            if !ambient.is_integral(u) {
                return Err(Error::validation(
                    "unit-integral",
                    loc,
                    format!("unit {i} is not integral"),
                ));
            }
            if !has_abs_norm(&ambient, u, &BigInt::from(1)) {
                return Err(Error::validation(
                    "unit-norm",
                    loc,
                    format!("unit {i} has norm {}, expected ±1", ambient.norm(u)),
                ));
            }
        }
        for (i, p) in pattern.iter().enumerate() {
            if p.len() != n {
                return Err(Error::validation(
                    "vector-length",
                    format!("{location}/pattern/{i}"),
                    format!("expected {n} coordinates"),
                ));
            }
        }
        Ok(NormEquation {
            ambient,
            representatives,
            units,
            target_norm,
            exponent_bound,
            pattern,
        })
    }

    pub fn pattern_basis(&self) -> Result<PatternBasis> {
        PatternBasis::new(&self.pattern, "/pattern")
    }

    /// `γ_r · Π η_i^{a_i}` by direct exponentiation.
    pub fn orbit_element(&self, rep: usize, exps: &[i64]) -> AmbientElem {
        let f = &self.ambient;
        self.units
            .iter()
            .zip(exps)
            .fold(self.representatives[rep].clone(), |acc, (u, &a)| {
                f.mul(&acc, &f.pow(u, a).expect("units are invertible"))
            })
    }
}

/// Canonical sign: first nonzero coordinate positive.
pub fn canonical_sign(c: [BigInt; 4]) -> [BigInt; 4] {
    match c.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => c.map(|x| -x),
        _ => c,
    }
}

/// Word-sized primes for the modular filter.
const PRIMES: [u64; 5] = [
    2_305_843_009_213_693_951,
    4_294_967_291,
    2_147_483_647,
    1_000_000_007,
    998_244_353,
];

#[derive(Clone, Copy)]
struct Zp(u64);

impl Zp {
    fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    fn add(self, a: u64, b: u64) -> u64 {
        let s = a as u128 + b as u128;
        (s % self.0 as u128) as u64
    }

    fn int(self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.0)).to_u64().unwrap()
    }

    fn inv(self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let mut r = 1u64;
        let (mut b, mut e) = (a, self.0 - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        Some(r)
    }

    fn rat(self, q: &BigRational) -> Option<u64> {
        let d = self.int(q.denom());
        Some(self.mul(self.int(q.numer()), self.inv(d)?))
    }

    fn vec(self, v: &[BigRational]) -> Option<Vec<u64>> {
        v.iter().map(|q| self.rat(q)).collect()
    }
}

/// Modular images used by the walk: unit matrices (forward and inverse),
/// annihilator rows and representatives.
struct ModImage {
    zp: Zp,
    n: usize,
    fwd: Vec<Vec<u64>>,
    bwd: Vec<Vec<u64>>,
    ann: Vec<Vec<u64>>,
    reps: Vec<Vec<u64>>,
}

impl ModImage {
    fn build(eq: &NormEquation, pb: &PatternBasis, p: u64) -> Option<Self> {
        let zp = Zp(p);
        let f = &eq.ambient;
        let n = f.degree();
        let flat = |m: &crate::poly::Matrix<BigRational>| -> Option<Vec<u64>> {
            let mut out = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    out.push(zp.rat(m.get(i, j))?);
                }
            }
            Some(out)
        };
        let mut fwd = Vec::new();
        let mut bwd = Vec::new();
        for u in &eq.units {
            fwd.push(flat(&f.mult_matrix(u))?);
            bwd.push(flat(&f.mult_matrix(&f.inv(u)?))?);
        }
        let ann = pb
            .annihilator()
            .iter()
            .map(|w| zp.vec(w))
            .collect::<Option<Vec<_>>>()?;
        let reps = eq
            .representatives
            .iter()
            .map(|g| zp.vec(g))
            .collect::<Option<Vec<_>>>()?;
        Some(ModImage {
            zp,
            n,
            fwd,
            bwd,
            ann,
            reps,
        })
    }

    fn apply(&self, m: &[u64], v: &[u64], out: &mut [u64]) {
        let n = self.n;
        let p = self.zp.0 as u128;
        for i in 0..n {
            let row = &m[i * n..(i + 1) * n];
            let mut acc: u128 = 0;
            for j in 0..n {
                acc += row[j] as u128 * v[j] as u128;
                // keep the accumulator below 2^127
                if j % 8 == 7 {
                    acc %= p;
                }
            }
            out[i] = (acc % p) as u64;
        }
    }

    fn passes(&self, v: &[u64]) -> bool {
        self.ann.iter().all(|w| {
            let acc = w
                .iter()
                .zip(v)
                .fold(0u64, |a, (x, y)| self.zp.add(a, self.zp.mul(*x, *y)));
            acc == 0
        })
    }

    /// Unit `k` raised to `a`, applied to `v`.
    fn apply_pow(&self, k: usize, a: i64, v: &mut Vec<u64>) {
        let m = if a >= 0 { &self.fwd[k] } else { &self.bwd[k] };
        let mut tmp = vec![0u64; self.n];
        for _ in 0..a.unsigned_abs() {
            self.apply(m, v, &mut tmp);
            std::mem::swap(v, &mut tmp);
        }
    }
}

/// Number of orbit candidates `|reps| · (2A+1)^u`.
pub fn candidate_count(eq: &NormEquation) -> u128 {
    let side = 2 * eq.exponent_bound as u128 + 1;
    eq.representatives.len() as u128 * side.pow(eq.units.len() as u32)
}

struct Walker<'a> {
    images: &'a [ModImage],
    a: i64,
    exps: Vec<i64>,
    dirs: Vec<i64>,
    states: Vec<Vec<u64>>,
    scratch: Vec<u64>,
    hits: Vec<Vec<i64>>,
    /// Record every visited state, for testing the incremental updates.
    trace: Option<Vec<(Vec<i64>, Vec<u64>)>>,
}

impl Walker<'_> {
    fn visit(&mut self) {
        if let Some(t) = &mut self.trace {
            t.push((self.exps.clone(), self.states[0].clone()));
        }
        if self
            .images
            .iter()
            .zip(&self.states)
            .all(|(im, s)| im.passes(s))
        {
            self.hits.push(self.exps.clone());
        }
    }

    fn step(&mut self, k: usize) {
        let d = self.dirs[k];
        self.exps[k] += d;
        for (im, s) in self.images.iter().zip(self.states.iter_mut()) {
            let m = if d > 0 { &im.fwd[k] } else { &im.bwd[k] };
            im.apply(m, s, &mut self.scratch);
            s.copy_from_slice(&self.scratch);
        }
    }

    /// Sweep coordinates `k..` in reflected Gray order.
    fn walk(&mut self, k: usize) {
        if k == self.exps.len() {
            self.visit();
            return;
        }
        let len = 2 * self.a;
        for i in 0..=len {
            self.walk(k + 1);
            if i < len {
                self.step(k);
            }
        }
        self.dirs[k] = -self.dirs[k];
    }
}

/// All integer pattern coordinates of `±γ·Π η_i^{a_i}` with `|a_i| ≤ A`:
/// canonical sign, deduplicated, sorted. Complete relative to `A` only.
pub fn solve_norm_equation(eq: &NormEquation) -> Result<Vec<PatternSolution>> {
    let pb = eq.pattern_basis()?;
    if eq.representatives.is_empty() {
        return Ok(Vec::new());
    }
    let images: Vec<ModImage> = PRIMES
        .iter()
        .filter_map(|&p| ModImage::build(eq, &pb, p))
        .take(2)
        .collect();
    if images.is_empty() {
        return Err(Error::Inconsistent(
            "no usable prime for the modular filter".into(),
        ));
    }
    let a = eq.exponent_bound as i64;
    let u = eq.units.len();
    // blocks: (representative, first exponent)
    let blocks: Vec<(usize, i64)> = (0..eq.representatives.len())
        .flat_map(|r| {
            let firsts: Vec<i64> = if u == 0 { vec![0] } else { (-a..=a).collect() };
            firsts.into_iter().map(move |f| (r, f))
        })
        .collect();
    log::info!(
        "norm equation: {} candidates in {} blocks",
        candidate_count(eq),
        blocks.len()
    );

    let hits: Vec<(usize, Vec<i64>)> = blocks
        .par_iter()
        .flat_map_iter(|&(r, first)| {
            let mut states: Vec<Vec<u64>> = images.iter().map(|im| im.reps[r].clone()).collect();
            let mut exps = vec![-a; u];
            if u > 0 {
                exps[0] = first;
            }
            for (im, s) in images.iter().zip(states.iter_mut()) {
                for (k, &e) in exps.iter().enumerate() {
                    im.apply_pow(k, e, s);
                }
            }
            let mut w = Walker {
                images: &images,
                a,
                exps,
                dirs: vec![1; u],
                states,
                scratch: vec![0; eq.ambient.degree()],
                hits: Vec::new(),
                trace: None,
            };
            if u == 0 {
                w.visit();
            } else {
                w.walk(1);
            }
            w.hits.into_iter().map(move |e| (r, e))
        })
        .collect();

    log::info!(
        "norm equation: {} candidates passed the modular filter",
        hits.len()
    );
    let found: Vec<(usize, Vec<i64>, [BigInt; 4])> = hits
        .into_par_iter()
        .filter_map(|(r, e)| {
            let beta = eq.orbit_element(r, &e);
            pb.match_pattern(&beta).map(|c| (r, e, canonical_sign(c)))
        })
        .collect();

    let mut best: BTreeMap<[BigInt; 4], (usize, Vec<i64>)> = BTreeMap::new();
    for (r, e, c) in found {
        let w = (r, e);
        match best.get(&c) {
            Some(old) if *old <= w => {}
            _ => {
                best.insert(c, w);
            }
        }
    }
    let out: Vec<PatternSolution> = best
        .into_iter()
        .map(|(c, (representative, exponents))| PatternSolution {
            c,
            representative,
            exponents,
        })
        .collect();
    for s in &out {
        if !has_abs_norm(&eq.ambient, &pb.combine(&s.c), &eq.target_norm) {
            return Err(Error::Inconsistent(format!(
                "solution {:?} fails the norm check",
                s.c
            )));
        }
    }
    Ok(out)
}

/// Exact combination `Σ c_j p_j`, for reconstruction checks.
pub fn reconstruct(eq: &NormEquation, c: &[BigInt; 4]) -> AmbientElem {
    let f = &eq.ambient;
    (0..4).fold(vec![BigRational::zero(); f.degree()], |acc, j| {
        f.add(
            &acc,
            &eq.pattern[j].iter().map(|x| x * rat_int(&c[j])).collect(),
        )
    })
}
