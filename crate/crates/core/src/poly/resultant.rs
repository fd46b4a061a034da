//! Univariate resultants by three independent routes, discriminants and
//! interpolation.

use num_rational::BigRational;
use rayon::prelude::*;

use super::dense::Poly;
use super::field::{Field, Rationals, Ring};
use super::matrix::Matrix;
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// Resultant over a field by the Euclidean remainder sequence.
pub fn resultant_euclid<F: Field + ?Sized>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> F::Elem {
    let (Some(mut m), Some(mut n)) = (a.degree(), b.degree()) else {
        return f.zero();
    };
    let mut a = a.clone();
    let mut b = b.clone();
    let mut res = f.one();
    loop {
        if n == 0 {
            return f.mul(&res, &f.pow(b.lc().unwrap(), m as u32));
        }
        let r = a.rem(f, &b);
        let Some(dr) = r.degree() else {
            return f.zero();
        };
        let mut t = f.pow(b.lc().unwrap(), (m - dr) as u32);
        if m % 2 == 1 && n % 2 == 1 {
            t = f.neg(&t);
        }
        res = f.mul(&res, &t);
        a = b;
        b = r;
        m = n;
        n = dr;
    }
}

/// The `(m+n)×(m+n)` Sylvester matrix of `a` (degree m) and `b` (degree n).
pub fn sylvester_matrix<R: Ring + ?Sized>(
    r: &R,
    a: &Poly<R::Elem>,
    b: &Poly<R::Elem>,
) -> Matrix<R::Elem> {
    let m = a.deg0();
    let n = b.deg0();
    let size = m + n;
    Matrix::from_fn(size, size, |i, j| {
        if i < n {
            // row i holds a shifted by i, highest coefficient first
            j.checked_sub(i)
                .filter(|&k| k <= m)
                .map_or_else(|| r.zero(), |k| a.coeff(r, m - k))
        } else {
            let s = i - n;
            j.checked_sub(s)
                .filter(|&k| k <= n)
                .map_or_else(|| r.zero(), |k| b.coeff(r, n - k))
        }
    })
}

/// Resultant as the Sylvester determinant (fraction-free).
pub fn resultant_sylvester<R: Ring + ?Sized>(
    r: &R,
    a: &Poly<R::Elem>,
    b: &Poly<R::Elem>,
) -> R::Elem {
    if a.is_zero() || b.is_zero() {
        return r.zero();
    }
    if a.deg0() + b.deg0() == 0 {
        return r.one();
    }
    sylvester_matrix(r, a, b).det_bareiss(r)
}

/// Resultant over an integral domain with exact division, by the
/// subresultant pseudo-remainder sequence.
pub fn resultant_subresultant<R: Ring + ?Sized>(
    r: &R,
    a: &Poly<R::Elem>,
    b: &Poly<R::Elem>,
) -> R::Elem {
    if a.is_zero() || b.is_zero() {
        return r.zero();
    }
    let mut a = a.clone();
    let mut b = b.clone();
    let mut neg = false;
    if a.deg0() < b.deg0() {
        std::mem::swap(&mut a, &mut b);
        if a.deg0() % 2 == 1 && b.deg0() % 2 == 1 {
            neg = !neg;
        }
    }
    if b.deg0() == 0 {
        let v = r.pow(b.lc().unwrap(), a.deg0() as u32);
        return if neg { r.neg(&v) } else { v };
    }
    let mut g = r.one();
    let mut h = r.one();
    loop {
        let da = a.deg0();
        let db = b.deg0();
        let delta = (da - db) as u32;
        if da % 2 == 1 && db % 2 == 1 {
            neg = !neg;
        }
        let rem = a.pseudo_rem(r, &b);
        a = b;
        let div = r.mul(&g, &r.pow(&h, delta));
        b = Poly::new(
            r,
            rem.coeffs()
                .iter()
                .map(|c| {
                    r.exact_div(c, &div)
                        .expect("subresultant division is exact")
                })
                .collect(),
        );
        g = a.lc().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            r.exact_div(&r.pow(&g, delta), &r.pow(&h, delta - 1))
                .expect("exact")
        };
        match b.degree() {
            None => return r.zero(),
            Some(0) => break,
            Some(_) => {}
        }
    }
    let da = a.deg0() as u32;
    let lcb = b.lc().unwrap();
    let v = r
        .exact_div(&r.pow(lcb, da), &r.pow(&h, da - 1))
        .expect("exact");
    if neg {
        r.neg(&v)
    } else {
        v
    }
}

/// `disc(p) = (−1)^(n(n−1)/2) · res(p, p′) / lc(p)`.
pub fn discriminant(p: &UniPoly) -> Result<BigRational> {
    let q = Rationals;
    let n = p
        .degree()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::Degenerate("discriminant of a constant polynomial".into()))?;
    let r = resultant_euclid(&q, p, &p.derivative(&q));
    let mut d = r / p.lc().unwrap();
    if (n * (n - 1) / 2) % 2 == 1 {
        d = -d;
    }
    Ok(d)
}

/// Newton interpolation through `(x_i, y_i)`; the `x_i` must be distinct.
pub fn interpolate<F: Field + ?Sized>(f: &F, xs: &[F::Elem], ys: &[F::Elem]) -> Poly<F::Elem> {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    // divided differences in place
    let mut c: Vec<F::Elem> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = f.sub(&c[i], &c[i - 1]);
            let den = f.sub(&xs[i], &xs[i - j]);
            c[i] = f
                .div(&num, &den)
                .expect("interpolation nodes must be distinct");
        }
    }
    let mut p = Poly::zero();
    for i in (0..n).rev() {
        let lin = Poly::new(f, vec![f.neg(&xs[i]), f.one()]);
        p = p.mul(f, &lin).add(f, &Poly::constant(f, c[i].clone()));
    }
    p
}

/// Values `g(x)` for every node, computed in parallel; order is preserved.
pub fn eval_nodes<T, G>(nodes: &[i64], g: G) -> Vec<T>
where
    T: Send,
    G: Fn(i64) -> T + Sync + Send,
{
    nodes.par_iter().map(|&x| g(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::rational::rat;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_i64s(c)
    }

    #[test]
    fn three_routes_agree() {
        let q = Rationals;
        let cases = [
            (p(&[17, -3, 0, 1]), p(&[-3, 0, 3])),
            (p(&[1, 2, 2, 0, 1]), p(&[4, -4, -2, 1])),
            (p(&[5, 0, 1]), p(&[2])),
            (p(&[-1, 1]), p(&[1, 0, 0, 0, 0, 1])),
        ];
        for (a, b) in cases {
            let e = resultant_euclid(&q, &a, &b);
            assert_eq!(e, resultant_sylvester(&q, &a, &b), "{a:?} {b:?}");
            assert_eq!(e, resultant_subresultant(&q, &a, &b), "{a:?} {b:?}");
            // symmetry (−1)^(deg a · deg b)
            let s = resultant_euclid(&q, &b, &a);
            let sign = if a.deg0() * b.deg0() % 2 == 1 { -s } else { s };
            assert_eq!(e, sign);
        }
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant(&p(&[17, -3, 0, 1])).unwrap(), rat(-7695, 1));
        assert_eq!(discriminant(&p(&[-19, 0, 1])).unwrap(), rat(76, 1));
        assert_eq!(discriminant(&p(&[1, 2, 2, 0, 1])).unwrap(), rat(592, 1));
        assert!(discriminant(&p(&[3])).is_err());
    }

    #[test]
    fn common_root_detection() {
        let q = Rationals;
        let a = p(&[-2, 1]).mul(&q, &p(&[1, 1, 1]));
        let b = p(&[-2, 1]).mul(&q, &p(&[7, 0, 1]));
        assert_eq!(resultant_euclid(&q, &a, &b), rat(0, 1));
        assert_eq!(resultant_subresultant(&q, &a, &b), rat(0, 1));
    }

    #[test]
    fn newton_interpolation() {
        let q = Rationals;
        let target = p(&[3, -1, 0, 2]);
        let xs: Vec<_> = (0..4).map(|i| rat(i, 1)).collect();
        let ys: Vec<_> = xs.iter().map(|x| target.value_at(x)).collect();
        assert_eq!(interpolate(&q, &xs, &ys), target);
    }
}
