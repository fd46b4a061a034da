//! Integer roots by p-adic lifting and certified real-root isolation by
//! Sturm sequences.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::Rationals;
use super::unipoly::UniPoly;
use crate::error::{Error, Result};
use crate::number::interval::RealInterval;
use crate::number::rational::mod_inverse;

/// Evaluate an integer polynomial (constant first) at an integer.
fn eval_int(c: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for a in c.iter().rev() {
        acc = acc * x + a;
    }
    acc
}

fn eval_int_mod(c: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for a in c.iter().rev() {
        acc = (acc * x + a).mod_floor(m);
    }
    acc
}

fn is_small_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn reduce_mod(c: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    c.iter()
        .map(|a| a.mod_floor(&pb).to_u64().unwrap())
        .collect()
}

fn eval_mod_small(c: &[u64], x: u64, p: u64) -> u64 {
    c.iter().rev().fold(0u64, |acc, &a| (acc * x + a) % p)
}

fn derivative_int(c: &[BigInt]) -> Vec<BigInt> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(i, a)| a * BigInt::from(i))
        .collect()
}

/// Number of independent lifting primes. A root of multiplicity `m` is missed
/// only if every prime divides the nonzero integer `p^(m)(r)`.
const LIFTING_PRIMES: usize = 3;

/// Sorted integer roots of `p`, each verified by exact evaluation.
///
/// No squarefree decomposition is needed: for each root `ρ` mod `q` the
/// smallest `k` with `p^(k+1)(ρ) ≢ 0` is found, and `ρ` is lifted as a simple
/// root of `p^(k)` past twice the root bound. Several primes are used and the
/// verified candidates are merged.
pub fn integer_roots(p: &UniPoly) -> Result<Vec<BigInt>> {
    if p.is_zero() {
        return Err(Error::Degenerate(
            "every integer is a root of the zero polynomial".into(),
        ));
    }
    let mut roots = Vec::new();
    let mut c = p.primitive_integer().1;
    if c[0].is_zero() {
        roots.push(BigInt::zero());
        let z = c.iter().take_while(|a| a.is_zero()).count();
        c.drain(..z);
    }
    let n = c.len() - 1;
    if n == 0 {
        return Ok(roots);
    }
    // integer roots divide the constant term and obey the Cauchy bound
    let lc = c[n].abs();
    let cauchy = c.iter().map(|a| a.abs()).max().unwrap().div_ceil(&lc) + 1;
    let bound = std::cmp::min(c[0].abs(), cauchy);
    let target = &bound * 2 + 1;

    let mut derivs: Vec<Vec<BigInt>> = vec![c.clone()];
    for _ in 0..n {
        let d = derivative_int(derivs.last().unwrap());
        derivs.push(d);
    }
    let mut prime = std::cmp::max(1u64 << 15, n as u64 + 1) | 1;
    let mut used = 0;
    while used < LIFTING_PRIMES {
        if !is_small_prime(prime) || (&lc % prime).is_zero() {
            prime += 2;
            continue;
        }
        used += 1;
        let red: Vec<Vec<u64>> = derivs.iter().map(|d| reduce_mod(d, prime)).collect();
        let pb = BigInt::from(prime);
        for r0 in 0..prime {
            if eval_mod_small(&red[0], r0, prime) != 0 {
                continue;
            }
            // p^(n) is the nonzero constant n!·lc mod q, so this terminates
            let mut k = 0;
            while eval_mod_small(&red[k + 1], r0, prime) == 0 {
                k += 1;
            }
            let (f, df) = (&derivs[k], &derivs[k + 1]);
            let mut r = BigInt::from(r0);
            let mut m = pb.clone();
            while m <= target {
                m = &m * &m;
                let fv = eval_int_mod(f, &r, &m);
                let dv = eval_int_mod(df, &r, &m);
                let inv = mod_inverse(&dv, &m).expect("simple root stays simple");
                r = (r - fv * inv).mod_floor(&m);
            }
            let cand = crate::number::rational::symmetric_mod(&r, &m);
            if cand.abs() <= bound && !cand.is_zero() && eval_int(&c, &cand).is_zero() {
                roots.push(cand);
            }
        }
        prime += 2;
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// Sturm sequence `p, p′, −rem(p, p′), …`.
pub fn sturm_sequence(p: &UniPoly) -> Vec<UniPoly> {
    let q = Rationals;
    let mut seq = vec![p.clone(), p.derivative(&q)];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].rem(&q, &seq[n - 1]).neg(&q);
        if r.is_zero() {
            break;
        }
        seq.push(r);
    }
    seq
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut v = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

fn variations_at(seq: &[UniPoly], x: &BigRational) -> usize {
    variations(seq.iter().map(|p| p.sign_at(x)))
}

/// Sign variations at `+∞` (`pos`) or `−∞`.
fn variations_at_infinity(seq: &[UniPoly], pos: bool) -> usize {
    variations(seq.iter().map(|p| {
        let s = p.lc_sign();
        if pos || p.deg0() % 2 == 0 {
            s
        } else {
            -s
        }
    }))
}

/// Number of distinct real roots of `p`.
pub fn count_real_roots(p: &UniPoly) -> usize {
    let seq = sturm_sequence(&p.squarefree_part());
    variations_at_infinity(&seq, false) - variations_at_infinity(&seq, true)
}

/// One interval per distinct real root, each of width at most `target_width`,
/// pairwise disjoint and ordered. Split points that land on a root are
/// nudged, so every interval endpoint is a certified non-root.
pub fn real_roots(p: &UniPoly, target_width: &BigRational) -> Result<Vec<RealInterval>> {
    if p.is_zero() {
        return Err(Error::Degenerate(
            "real roots of the zero polynomial".into(),
        ));
    }
    assert!(target_width.is_positive(), "target width must be positive");
    let sf = p.squarefree_part();
    if sf.deg0() == 0 {
        return Ok(Vec::new());
    }
    let seq = sturm_sequence(&sf);
    let b = sf.cauchy_bound();
    let lo = -b.clone();
    let hi = b;
    let total = variations_at(&seq, &lo) - variations_at(&seq, &hi);
    let mut isolated: Vec<(BigRational, BigRational)> = Vec::new();
    let mut stack = vec![(lo, hi, total)];
    let two = BigRational::from_integer(2.into());
    while let Some((a, b, n)) = stack.pop() {
        if n == 0 {
            continue;
        }
        if n == 1 {
            isolated.push((a, b));
            continue;
        }
        let m = split_point(&sf, &a, &b, &two);
        let va = variations_at(&seq, &a);
        let vm = variations_at(&seq, &m);
        let vb = variations_at(&seq, &b);
        stack.push((a, m.clone(), va - vm));
        stack.push((m, b, vm - vb));
    }
    isolated.sort();
    // refine by sign bisection until narrow enough and separated
    loop {
        for (a, b) in isolated.iter_mut() {
            while &(&*b - &*a) > target_width {
                bisect_sign(&sf, a, b, &two);
            }
        }
        let touching: Vec<usize> = (1..isolated.len())
            .filter(|&i| isolated[i - 1].1 >= isolated[i].0)
            .collect();
        if touching.is_empty() {
            break;
        }
        for i in touching {
            let (a, b) = &mut isolated[i - 1];
            bisect_sign(&sf, a, b, &two);
            let (a, b) = &mut isolated[i];
            bisect_sign(&sf, a, b, &two);
        }
    }
    Ok(isolated
        .into_iter()
        .map(|(a, b)| RealInterval::new(a, b))
        .collect())
}

/// A point strictly inside `(a, b)` that is not a root of `p`.
fn split_point(p: &UniPoly, a: &BigRational, b: &BigRational, two: &BigRational) -> BigRational {
    let mut m = (a + b) / two;
    let mut k = 3i64;
    while p.sign_at(&m).is_zero() {
        m = a + (b - a) / BigRational::from_integer(k.into());
        k += 1;
    }
    m
}

/// Halve an interval with a sign change of `p` at its non-root endpoints.
fn bisect_sign(p: &UniPoly, a: &mut BigRational, b: &mut BigRational, two: &BigRational) {
    let m = split_point(p, a, b, two);
    if p.sign_at(a) * p.sign_at(&m) < 0 {
        *b = m;
    } else {
        *a = m;
    }
}

/// Real root intervals as `f64` midpoints; display only.
pub fn approx_real_roots(p: &UniPoly) -> Vec<f64> {
    let w = BigRational::new(BigInt::one(), BigInt::from(1u64 << 40));
    real_roots(p, &w)
        .map(|v| v.iter().map(|iv| iv.approx()).collect())
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::rational::{int, rat};

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_i64s(c)
    }

    #[test]
    fn integer_root_examples() {
        assert_eq!(
            integer_roots(&p(&[0, -1, 0, 1])).unwrap(),
            vec![int(-1), int(0), int(1)]
        );
        assert_eq!(integer_roots(&p(&[-38, 19])).unwrap(), vec![int(2)]);
        assert_eq!(integer_roots(&p(&[1, 0, 1])).unwrap(), Vec::<BigInt>::new());
        // repeated roots and a rational non-integer root
        let q = Rationals;
        let f = p(&[-3, 1])
            .pow(&q, 3)
            .mul(&q, &p(&[1, 2]))
            .mul(&q, &p(&[7, 1]));
        assert_eq!(integer_roots(&f).unwrap(), vec![int(-7), int(3)]);
        assert!(integer_roots(&UniPoly::zero()).is_err());
    }

    #[test]
    fn large_roots() {
        let q = Rationals;
        let r: BigInt = int(10).pow(30u32) + 7;
        let f = UniPoly::from_ints(&[-r.clone(), int(1)]).mul(&q, &p(&[5, 0, 3]));
        assert_eq!(integer_roots(&f).unwrap(), vec![r]);
    }

    #[test]
    fn repeated_roots_need_no_squarefree_part() {
        let q = Rationals;
        // (y − 2)^3 (y + 5)^2 (y^2 + 1) y
        let f = p(&[-2, 1])
            .pow(&q, 3)
            .mul(&q, &p(&[5, 1]).pow(&q, 2))
            .mul(&q, &p(&[1, 0, 1]))
            .mul(&q, &p(&[0, 1]));
        assert_eq!(integer_roots(&f).unwrap(), vec![int(-5), int(0), int(2)]);
    }

    #[test]
    fn isolation_examples() {
        let w = rat(1, 1000);
        let roots = real_roots(&p(&[4, -4, -2, 1]), &w).unwrap();
        assert_eq!(roots.len(), 3);
        for (iv, x) in roots
            .iter()
            .zip([rat(-1709, 1000), rat(806, 1000), rat(2903, 1000)])
        {
            assert!(iv.width() <= w);
            assert!((iv.midpoint() - x).abs() < rat(2, 1000));
        }
        assert_eq!(real_roots(&p(&[1, 0, 1]), &w).unwrap().len(), 0);
        let r2 = real_roots(&p(&[-2, 0, 1]), &rat(1, 100000)).unwrap();
        assert!(r2[1].contains(&rat(141421, 100000)) || r2[1].lo() > &rat(141421, 100000));
        // exact rational roots at would-be split points
        let f = p(&[0, -1, 0, 1]);
        let r = real_roots(&f, &rat(1, 10)).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r[1].contains(&rat(0, 1)));
        for i in 1..r.len() {
            assert!(r[i - 1].hi() < r[i].lo());
        }
    }

    #[test]
    fn counts() {
        assert_eq!(count_real_roots(&p(&[4, -4, -2, 1])), 3);
        assert_eq!(count_real_roots(&p(&[1, 0, 1])), 0);
        assert_eq!(count_real_roots(&p(&[1, -2, 1])), 1);
    }
}
