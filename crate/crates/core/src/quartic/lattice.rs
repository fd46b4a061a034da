//! Integer points on an ellipsoid `zᵀSz = p`, `S` positive definite.
//!
//! `S` is diagonalized as `Σ d_i (z_i + Σ_{j>i} l_ij z_j)²` over the
//! rationals, then everything is scaled to integers so the recursive bounds
//! are exact integer square roots. The last coordinate is solved from a
//! perfect-square condition instead of being scanned.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::number::rational::{is_integer, rat_int};
use crate::poly::Matrix;

struct Scaled {
    n: usize,
    /// `k_i = G·d_i / den_i²`.
    k: Vec<i128>,
    den: Vec<i128>,
    /// `l_ij · den_i`, zero for `j ≤ i`.
    l: Vec<Vec<i128>>,
}

fn to_i128(x: &BigInt) -> Result<i128> {
    x.to_i128()
        .ok_or_else(|| Error::Precision(format!("{x} exceeds the lattice enumeration range")))
}

fn ldl(s: &Matrix<BigRational>) -> Result<(Vec<BigRational>, Vec<Vec<BigRational>>)> {
    let n = s.rows();
    let mut d = vec![BigRational::zero(); n];
    let mut l = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        let mut di = s.get(i, i).clone();
        for k in 0..i {
            di -= &d[k] * &l[k][i] * &l[k][i];
        }
        if !di.is_positive() {
            return Err(Error::Inconsistent("form is not positive definite".into()));
        }
        for j in i + 1..n {
            let mut v = s.get(i, j).clone();
            for k in 0..i {
                v -= &d[k] * &l[k][i] * &l[k][j];
            }
            l[i][j] = v / &di;
        }
        d[i] = di;
    }
    Ok((d, l))
}

fn scale(
    d: &[BigRational],
    l: &[Vec<BigRational>],
    p: &BigRational,
) -> Result<Option<(Scaled, i128)>> {
    let n = d.len();
    let dens: Vec<BigInt> = (0..n)
        .map(|i| {
            l[i][i + 1..]
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
        })
        .collect();
    let g = (0..n).fold(BigInt::one(), |acc, i| {
        acc.lcm(&(d[i].denom() * &dens[i] * &dens[i]))
    });
    let pg = p * rat_int(&g);
    if !is_integer(&pg) {
        return Ok(None);
    }
    let mut k = Vec::with_capacity(n);
    let mut lint = vec![vec![0i128; n]; n];
    for i in 0..n {
        let ki = &d[i] * rat_int(&g) / rat_int(&(&dens[i] * &dens[i]));
        k.push(to_i128(&ki.to_integer())?);
        for j in i + 1..n {
            lint[i][j] = to_i128(&(&l[i][j] * rat_int(&dens[i])).to_integer())?;
        }
    }
    let den = dens.iter().map(to_i128).collect::<Result<Vec<_>>>()?;
    Ok(Some((
        Scaled { n, k, den, l: lint },
        to_i128(&pg.to_integer())?,
    )))
}

impl Scaled {
    /// `C_i = −Σ_{j>i} (l_ij·den_i) z_j`.
    fn center(&self, i: usize, z: &[i64]) -> i128 {
        -(i + 1..self.n)
            .map(|j| self.l[i][j] * z[j] as i128)
            .sum::<i128>()
    }

    /// Range of `z_i` with `k_i (den_i z_i − C_i)² ≤ r`.
    fn range(&self, i: usize, c: i128, r: i128) -> (i128, i128) {
        let s = Roots::sqrt(&(r / self.k[i]));
        let den = self.den[i];
        (
            Integer::div_ceil(&(c - s), &den),
            Integer::div_floor(&(c + s), &den),
        )
    }

    fn rec(&self, i: usize, r: i128, z: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let c = self.center(i, z);
        let den = self.den[i];
        if i == 0 {
            if r % self.k[0] != 0 {
                return;
            }
            let sq = r / self.k[0];
            let s = Roots::sqrt(&sq);
            if s * s != sq {
                return;
            }
            let us = if s == 0 { vec![0] } else { vec![-s, s] };
            for u in us {
                let t = c + u;
                if t % den == 0 {
                    z[0] = (t / den) as i64;
                    out.push(z.clone());
                }
            }
            return;
        }
        let (lo, hi) = self.range(i, c, r);
        for zi in lo..=hi {
            let u = den * zi - c;
            z[i] = zi as i64;
            self.rec(i - 1, r - self.k[i] * u * u, z, out);
        }
        z[i] = 0;
    }
}

/// Every integer `z` with `zᵀSz = p`, sorted. Errors when `S` is not
/// positive definite.
pub fn enumerate_pd(s: &Matrix<BigRational>, p: &BigRational) -> Result<Vec<Vec<BigInt>>> {
    let n = s.rows();
    let (d, l) = ldl(s)?;
    if p.is_negative() {
        return Ok(Vec::new());
    }
    if n == 0 || p.is_zero() {
        return Ok(vec![vec![BigInt::zero(); n]]);
    }
    let Some((sc, pg)) = scale(&d, &l, p)? else {
        return Ok(Vec::new());
    };
    // headroom: every partial value is at most pg
    if pg.checked_mul(4).is_none() || sc.k.iter().any(|k| k.checked_mul(pg).is_none()) {
        return Err(Error::Precision(
            "target too large for the lattice enumeration".into(),
        ));
    }
    let top = n - 1;
    let (lo, hi) = sc.range(top, 0, pg);
    let mut out: Vec<Vec<i64>> = (lo..=hi)
        .into_par_iter()
        .flat_map_iter(|zt| {
            let mut z = vec![0i64; n];
            let mut v = Vec::new();
            let u = sc.den[top] * zt;
            z[top] = zt as i64;
            if top == 0 {
                if sc.k[0] * u * u == pg {
                    v.push(z);
                }
            } else {
                sc.rec(top - 1, pg - sc.k[top] * u * u, &mut z, &mut v);
            }
            v
        })
        .collect();
    out.sort();
    Ok(out
        .into_iter()
        .map(|z| z.into_iter().map(BigInt::from).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::rational::rat;

    fn m(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x, 1)).collect())
                .collect(),
        )
    }

    #[test]
    fn circle() {
        let s = m(&[&[1, 0], &[0, 1]]);
        let pts = enumerate_pd(&s, &rat(2, 1)).unwrap();
        assert_eq!(pts.len(), 4);
        assert!(enumerate_pd(&s, &rat(-1, 1)).unwrap().is_empty());
        assert_eq!(enumerate_pd(&s, &rat(0, 1)).unwrap().len(), 1);
        assert!(enumerate_pd(&s, &rat(3, 1)).unwrap().is_empty());
    }

    #[test]
    fn rational_entries() {
        // x² + xy + y²
        let s = Matrix::from_rows(vec![vec![rat(1, 1), rat(1, 2)], vec![rat(1, 2), rat(1, 1)]]);
        assert_eq!(enumerate_pd(&s, &rat(1, 1)).unwrap().len(), 6);
        assert!(enumerate_pd(&s, &rat(1, 2)).unwrap().is_empty());
    }

    #[test]
    fn indefinite_is_rejected() {
        let s = m(&[&[1, 2], &[2, 1]]);
        assert!(enumerate_pd(&s, &rat(1, 1)).is_err());
    }
}
