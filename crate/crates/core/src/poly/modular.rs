//! Multi-modular resultants of bivariate polynomials with coefficients in
//! `Z[ω]`.
//!
//! The Sylvester determinant is taken modulo word-sized primes `p` for
//! which `ω` has two distinct images in `F_p`, at enough values of the
//! surviving variable to interpolate. The two images separate the rational
//! and `ω` parts, and the Chinese remainder theorem recovers them. The
//! number of primes comes from a rigorous coefficient bound: for a matrix
//! of polynomials, `‖det‖₁ ≤ Π_rows Σ_j ‖a_ij‖₁`, applied in each real
//! embedding.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::bipoly::BiPoly;
use super::dense::Poly;
use crate::error::{Error, Result};
use crate::number::{OmegaKind, QuadraticElement, QuadraticField};

type Qe = QuadraticElement;

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Tonelli–Shanks; `None` when `a` is not a square mod the odd prime `p`.
pub(crate) fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let (mut m, mut c, mut t, mut r) = (
        s,
        pow_mod(z, q, p),
        pow_mod(a, q, p),
        pow_mod(a, q.div_ceil(2), p),
    );
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

fn bigint_mod(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// Determinant mod `p` by Gaussian elimination; consumes the matrix.
fn det_mod(mut a: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = a.len();
    let mut det = 1u64;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| a[r][c] != 0) else {
            return 0;
        };
        if piv != c {
            a.swap(piv, c);
            det = (p - det) % p;
        }
        det = mul_mod(det, a[c][c], p);
        let inv = inv_mod(a[c][c], p);
        for r in c + 1..n {
            if a[r][c] == 0 {
                continue;
            }
            let f = mul_mod(a[r][c], inv, p);
            for k in c..n {
                let s = mul_mod(f, a[c][k], p);
                a[r][k] = (a[r][k] + p - s) % p;
            }
        }
    }
    det
}

/// Coefficients (constant first) of the polynomial of degree `< xs.len()`
/// through the points, by Newton divided differences.
fn interpolate_mod(xs: &[u64], ys: &[u64], p: u64) -> Vec<u64> {
    let n = xs.len();
    let mut c = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = (c[i] + p - c[i - 1]) % p;
            let den = (xs[i] + p - xs[i - j]) % p;
            c[i] = mul_mod(num, inv_mod(den, p), p);
        }
    }
    let mut out = vec![0u64; n];
    for i in (0..n).rev() {
        // out = out·(x − xs[i]) + c[i]
        let mut next = vec![0u64; n];
        for k in 0..n {
            if out[k] == 0 {
                continue;
            }
            if k + 1 < n {
                next[k + 1] = (next[k + 1] + out[k]) % p;
            }
            next[k] = (next[k] + p - mul_mod(out[k], xs[i], p)) % p;
        }
        next[0] = (next[0] + c[i]) % p;
        out = next;
    }
    out
}

/// Integer coordinates `(a, b)` of every coefficient, `grid[i][j]` for
/// `e^i y^j`.
fn integer_grid(p: &BiPoly<Qe>, m: &QuadraticField) -> Result<Vec<Vec<(BigInt, BigInt)>>> {
    p.grid(m)
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|c| {
                    if c.a.is_integer() && c.b.is_integer() {
                        Ok((c.a.to_integer(), c.b.to_integer()))
                    } else {
                        Err(Error::Degenerate(
                            "multi-modular resultant needs coefficients in Z[ω]".into(),
                        ))
                    }
                })
                .collect()
        })
        .collect()
}

fn lg_add(x: f64, y: f64) -> f64 {
    if x == f64::NEG_INFINITY {
        return y;
    }
    if y == f64::NEG_INFINITY {
        return x;
    }
    let (hi, lo) = if x > y { (x, y) } else { (y, x) };
    hi + (1.0 + (lo - hi).exp2()).log2()
}

fn lg_abs_upper(x: &BigInt) -> f64 {
    if x.is_zero() {
        f64::NEG_INFINITY
    } else {
        x.bits() as f64
    }
}

/// `log2` of an upper bound for `Σ |a + b·w|` over the grid.
fn lg_norm(g: &[Vec<(BigInt, BigInt)>], lg_w: f64) -> f64 {
    g.iter().flatten().fold(f64::NEG_INFINITY, |acc, (a, b)| {
        lg_add(acc, lg_add(lg_abs_upper(a), lg_abs_upper(b) + lg_w))
    })
}

/// Images of `ω` in `F_p`, distinct; `None` if `p` is unusable.
fn omega_images(m: &QuadraticField, p: u64) -> Option<(u64, u64)> {
    let d = bigint_mod(m.radicand(), p);
    if d == 0 || p == 2 {
        return None;
    }
    let s = sqrt_mod(d, p)?;
    match m.kind() {
        OmegaKind::Sqrt => Some((s, (p - s) % p)),
        OmegaKind::Half => {
            let h = inv_mod(2, p);
            Some((mul_mod((1 + s) % p, h, p), mul_mod((1 + p - s) % p, h, p)))
        }
    }
}

struct Images {
    p: u64,
    a: Vec<u64>,
    b: Vec<u64>,
}

fn image_at_prime(
    gp: &[Vec<(BigInt, BigInt)>],
    gq: &[Vec<(BigInt, BigInt)>],
    r: (u64, u64),
    p: u64,
    count: usize,
) -> Images {
    let reduce = |g: &[Vec<(BigInt, BigInt)>], w: u64| -> Vec<Vec<u64>> {
        g.iter()
            .map(|row| {
                row.iter()
                    .map(|(a, b)| (bigint_mod(a, p) + mul_mod(bigint_mod(b, p), w, p)) % p)
                    .collect()
            })
            .collect()
    };
    let eval = |row: &[u64], y: u64| {
        row.iter()
            .rev()
            .fold(0u64, |acc, &c| (mul_mod(acc, y, p) + c) % p)
    };
    let xs: Vec<u64> = (0..count as u64).collect();
    let dp = gp.len() - 1;
    let dq = gq.len() - 1;
    let n = dp + dq;
    let res_values = |w: u64| -> Vec<u64> {
        let (rp, rq) = (reduce(gp, w), reduce(gq, w));
        xs.iter()
            .map(|&y| {
                let cp: Vec<u64> = rp.iter().map(|row| eval(row, y)).collect();
                let cq: Vec<u64> = rq.iter().map(|row| eval(row, y)).collect();
                let mut mat = vec![vec![0u64; n]; n];
                for i in 0..dq {
                    for k in 0..=dp {
                        mat[i][i + k] = cp[dp - k];
                    }
                }
                for i in 0..dp {
                    for k in 0..=dq {
                        mat[dq + i][i + k] = cq[dq - k];
                    }
                }
                det_mod(mat, p)
            })
            .collect()
    };
    let v1 = interpolate_mod(&xs, &res_values(r.0), p);
    let v2 = interpolate_mod(&xs, &res_values(r.1), p);
    let inv = inv_mod((r.0 + p - r.1) % p, p);
    let b: Vec<u64> = v1
        .iter()
        .zip(&v2)
        .map(|(x, y)| mul_mod((x + p - y) % p, inv, p))
        .collect();
    let a: Vec<u64> = v1
        .iter()
        .zip(&b)
        .map(|(x, bb)| (x + p - mul_mod(r.0, *bb, p)) % p)
        .collect();
    Images { p, a, b }
}

/// Garner step: `x ≡ x (mod modulus)`, `x ≡ r (mod p)`.
fn crt_step(x: &mut BigInt, modulus: &BigInt, r: u64, p: u64) {
    let xm = bigint_mod(x, p);
    let mm = bigint_mod(modulus, p);
    let t = mul_mod((r + p - xm) % p, inv_mod(mm, p), p);
    *x += modulus * BigInt::from(t);
}

fn symmetric(x: BigInt, modulus: &BigInt) -> BigInt {
    if &x * 2 > *modulus {
        x - modulus
    } else {
        x
    }
}

/// `Res_e(p, q)` for `p, q` with coefficients in `Z[ω]`, as a polynomial in
/// `y0`. Equal to [`BiPoly::resultant`] with `e` eliminated.
pub fn resultant_e_multimodular(
    m: &QuadraticField,
    p: &BiPoly<Qe>,
    q: &BiPoly<Qe>,
) -> Result<Poly<Qe>> {
    let (Some(dp), Some(dq)) = (p.deg_e(), q.deg_e()) else {
        return Err(Error::Degenerate("resultant of a zero polynomial".into()));
    };
    if dp == 0 || dq == 0 {
        return Err(Error::Degenerate(
            "resultant needs positive degree in e for both inputs".into(),
        ));
    }
    let gp = integer_grid(p, m)?;
    let gq = integer_grid(q, m)?;
    let dy = p.deg_y0().unwrap_or(0) * dq + q.deg_y0().unwrap_or(0) * dp;
    let count = dy + 1;

    let sqrt_d = m.radicand().to_f64().unwrap_or(f64::MAX).sqrt();
    let (w1, w2) = match m.kind() {
        OmegaKind::Sqrt => (sqrt_d, -sqrt_d),
        OmegaKind::Half => ((1.0 + sqrt_d) / 2.0, (1.0 - sqrt_d) / 2.0),
    };
    let mut lg = f64::NEG_INFINITY;
    for w in [w1, w2] {
        let lw = w.abs().log2();
        lg = lg.max(dq as f64 * lg_norm(&gp, lw) + dp as f64 * lg_norm(&gq, lw));
    }
    // separating a and b costs at most a factor (1 + |w1| + |w2|)/|w1 − w2|
    let sep = ((1.0 + w1.abs() + w2.abs()) / (w1 - w2).abs())
        .log2()
        .max(0.0);
    let need_bits = (lg + sep).max(0.0).ceil() as u64 + 16;

    let mut primes = Vec::new();
    let mut bits = 0u64;
    let mut cand: u64 = (1u64 << 62) - 1;
    while bits <= need_bits + 1 {
        if is_prime_u64(cand) {
            if let Some(r) = omega_images(m, cand) {
                primes.push((cand, r));
                bits += 61;
            }
        }
        cand -= 2;
    }
    log::debug!(
        "multi-modular resultant: degree ≤ {dy}, {need_bits} bits, {} primes",
        primes.len()
    );
    let images: Vec<Images> = primes
        .par_iter()
        .map(|&(pr, r)| image_at_prime(&gp, &gq, r, pr, count))
        .collect();

    let mut modulus = BigInt::one();
    let mut a = vec![BigInt::zero(); count];
    let mut b = vec![BigInt::zero(); count];
    for im in &images {
        for k in 0..count {
            crt_step(&mut a[k], &modulus, im.a[k], im.p);
            crt_step(&mut b[k], &modulus, im.b[k], im.p);
        }
        modulus *= BigInt::from(im.p);
    }
    let coeffs = a
        .into_iter()
        .zip(b)
        .map(|(x, y)| {
            Qe::new(
                BigRational::from_integer(symmetric(x, &modulus)),
                BigRational::from_integer(symmetric(y, &modulus)),
            )
        })
        .collect();
    debug_assert!(modulus.sign() == Sign::Plus);
    Ok(Poly::new(m, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Var;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn modular_helpers() {
        assert!(is_prime_u64((1u64 << 61) - 1));
        assert!(!is_prime_u64((1u64 << 62) - 1));
        let p = 1_000_000_007u64;
        let s = sqrt_mod(19, p);
        if let Some(s) = s {
            assert_eq!(mul_mod(s, s, p), 19);
        }
        let xs = [0, 1, 2, 3];
        // 3 + 2x + x³
        let ys: Vec<u64> = xs.iter().map(|&x| (3 + 2 * x + x * x * x) % p).collect();
        assert_eq!(interpolate_mod(&xs, &ys, p), vec![3, 2, 0, 1]);
        assert_eq!(det_mod(vec![vec![2, 1], vec![5, 3]], p), 1);
    }

    fn random_bipoly(rng: &mut ChaCha8Rng, m: &QuadraticField, de: usize, dy: usize) -> BiPoly<Qe> {
        let grid = (0..=de)
            .map(|_| {
                (0..=dy)
                    .map(|_| Qe::from_ints(rng.gen_range(-9..=9), rng.gen_range(-9..=9)))
                    .collect()
            })
            .collect();
        BiPoly::from_grid(m, grid)
    }

    #[test]
    fn agrees_with_evaluation_interpolation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for kind in [OmegaKind::Sqrt, OmegaKind::Half] {
            let d = if kind == OmegaKind::Sqrt { 2 } else { 5 };
            let m = QuadraticField::new(BigInt::from(d), kind);
            for _ in 0..6 {
                let (de1, dy1, de2, dy2) = (
                    rng.gen_range(1..4),
                    rng.gen_range(0..3),
                    rng.gen_range(1..4),
                    rng.gen_range(0..3),
                );
                let p = random_bipoly(&mut rng, &m, de1, dy1);
                let q = random_bipoly(&mut rng, &m, de2, dy2);
                if p.deg_e() != Some(de1) || q.deg_e() != Some(de2) {
                    continue;
                }
                let exact = p.resultant(&m, &q, Var::E).unwrap();
                assert_eq!(resultant_e_multimodular(&m, &p, &q).unwrap(), exact);
            }
        }
    }
}
