//! Bivariate polynomials in `(e, y0)`, stored as polynomials in `e` whose
//! coefficients are polynomials in `y0`.

use std::fmt;

use super::dense::{Poly, PolyRing};
use super::field::{Field, Ring};
use super::resultant::{eval_nodes, interpolate, resultant_euclid, resultant_subresultant};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    E,
    Y0,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::E => Var::Y0,
            Var::Y0 => Var::E,
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly<E> {
    /// `inner.coeffs()[i]` is the coefficient of `e^i`, a polynomial in `y0`.
    inner: Poly<Poly<E>>,
}

impl<E: Clone + PartialEq + fmt::Debug + Send + Sync> BiPoly<E> {
    pub fn zero() -> Self {
        BiPoly {
            inner: Poly::zero(),
        }
    }

    /// `grid[i][j]` is the coefficient of `e^i y0^j`.
    pub fn from_grid<R: Ring<Elem = E>>(r: &R, grid: Vec<Vec<E>>) -> Self {
        let pr = PolyRing::new(r);
        BiPoly {
            inner: Poly::new(&pr, grid.into_iter().map(|row| Poly::new(r, row)).collect()),
        }
    }

    pub fn from_e_poly(p: Poly<Poly<E>>) -> Self {
        BiPoly { inner: p }
    }

    pub fn as_e_poly(&self) -> &Poly<Poly<E>> {
        &self.inner
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    pub fn deg_e(&self) -> Option<usize> {
        self.inner.degree()
    }

    pub fn deg_y0(&self) -> Option<usize> {
        self.inner.coeffs().iter().filter_map(|c| c.degree()).max()
    }

    pub fn degree(&self, v: Var) -> Option<usize> {
        match v {
            Var::E => self.deg_e(),
            Var::Y0 => self.deg_y0(),
        }
    }

    pub fn coeff<R: Ring<Elem = E>>(&self, r: &R, i: usize, j: usize) -> E {
        self.inner
            .coeffs()
            .get(i)
            .map_or_else(|| r.zero(), |c| c.coeff(r, j))
    }

    /// Coefficient grid `[i][j]` for `e^i y0^j`, dense.
    pub fn grid<R: Ring<Elem = E>>(&self, r: &R) -> Vec<Vec<E>> {
        let dy = self.deg_y0().map_or(0, |d| d + 1);
        self.inner
            .coeffs()
            .iter()
            .map(|c| (0..dy).map(|j| c.coeff(r, j)).collect())
            .collect()
    }

    /// Exchange the roles of `e` and `y0`.
    pub fn swap<R: Ring<Elem = E>>(&self, r: &R) -> Self {
        let g = self.grid(r);
        let de = g.len();
        let dy = g.first().map_or(0, |x| x.len());
        let t = (0..dy)
            .map(|j| (0..de).map(|i| g[i][j].clone()).collect())
            .collect();
        Self::from_grid(r, t)
    }

    /// Polynomial in the other variable after fixing `e`.
    pub fn eval_e<R: Ring<Elem = E>>(&self, r: &R, e: &E) -> Poly<E> {
        let mut acc = Poly::zero();
        for c in self.inner.coeffs().iter().rev() {
            acc = acc.scale(r, e).add(r, c);
        }
        acc
    }

    /// Polynomial in `e` after fixing `y0`.
    pub fn eval_y0<R: Ring<Elem = E>>(&self, r: &R, y: &E) -> Poly<E> {
        Poly::new(
            r,
            self.inner.coeffs().iter().map(|c| c.eval(r, y)).collect(),
        )
    }

    pub fn eval<R: Ring<Elem = E>>(&self, r: &R, e: &E, y: &E) -> E {
        self.eval_y0(r, y).eval(r, e)
    }

    /// Fix the named variable.
    pub fn eval_var<R: Ring<Elem = E>>(&self, r: &R, v: Var, x: &E) -> Poly<E> {
        match v {
            Var::E => self.eval_e(r, x),
            Var::Y0 => self.eval_y0(r, x),
        }
    }

    pub fn add<R: Ring<Elem = E>>(&self, r: &R, o: &Self) -> Self {
        BiPoly {
            inner: self.inner.add(&PolyRing::new(r), &o.inner),
        }
    }

    pub fn sub<R: Ring<Elem = E>>(&self, r: &R, o: &Self) -> Self {
        BiPoly {
            inner: self.inner.sub(&PolyRing::new(r), &o.inner),
        }
    }

    pub fn mul<R: Ring<Elem = E>>(&self, r: &R, o: &Self) -> Self {
        BiPoly {
            inner: self.inner.mul(&PolyRing::new(r), &o.inner),
        }
    }

    pub fn scale<R: Ring<Elem = E>>(&self, r: &R, a: &E) -> Self {
        let pr = PolyRing::new(r);
        BiPoly {
            inner: self.inner.scale(&pr, &Poly::constant(r, a.clone())),
        }
    }

    pub fn map_coeffs<R2: Ring>(&self, r2: &R2, f: impl Fn(&E) -> R2::Elem) -> BiPoly<R2::Elem> {
        let pr = PolyRing::new(r2);
        BiPoly {
            inner: self.inner.map(&pr, |c| c.map(r2, &f)),
        }
    }

    fn oriented<R: Ring<Elem = E>>(&self, r: &R, eliminate: Var) -> Self {
        match eliminate {
            Var::E => self.clone(),
            Var::Y0 => self.swap(r),
        }
    }

    /// Degree bound `deg_v(p)·deg_w(q) + deg_v(q)·deg_w(p)` on the resultant
    /// eliminating `v`, in the surviving variable `w`.
    pub fn resultant_degree_bound(&self, o: &Self, eliminate: Var) -> usize {
        let (v, w) = (eliminate, eliminate.other());
        let d = |p: &Self, x: Var| p.degree(x).unwrap_or(0);
        d(self, v) * d(o, w) + d(o, v) * d(self, w)
    }

    /// Resultant eliminating `eliminate`, by evaluation at integer nodes of
    /// the surviving variable and interpolation. Nodes at which a leading
    /// coefficient vanishes are skipped, so each specialization is exact.
    pub fn resultant<F: Field<Elem = E>>(
        &self,
        f: &F,
        o: &Self,
        eliminate: Var,
    ) -> Result<Poly<E>> {
        if self.is_zero() || o.is_zero() {
            return Err(Error::Degenerate("resultant of a zero polynomial".into()));
        }
        let p = self.oriented(f, eliminate);
        let q = o.oriented(f, eliminate);
        if p.deg_e() == Some(0) || q.deg_e() == Some(0) {
            return Err(Error::Degenerate(format!(
                "resultant needs positive degree in {eliminate:?} for both inputs"
            )));
        }
        let bound = self.resultant_degree_bound(o, eliminate);
        let lp = p.inner.lc().unwrap().clone();
        let lq = q.inner.lc().unwrap().clone();
        let mut nodes = Vec::with_capacity(bound + 1);
        let mut k: i64 = 0;
        while nodes.len() <= bound {
            let x = f.from_int(k);
            if !f.is_zero(&lp.eval(f, &x)) && !f.is_zero(&lq.eval(f, &x)) {
                nodes.push(k);
            }
            k = if k > 0 { -k } else { -k + 1 };
        }
        let values = eval_nodes(&nodes, |x| {
            let xe = f.from_int(x);
            resultant_euclid(f, &p.eval_y0(f, &xe), &q.eval_y0(f, &xe))
        });
        let xs: Vec<E> = nodes.iter().map(|&x| f.from_int(x)).collect();
        Ok(interpolate(f, &xs, &values))
    }

    /// Resultant by the subresultant sequence over the polynomial ring in the
    /// surviving variable; an independent route for cross-checks.
    pub fn resultant_subresultant<F: Field<Elem = E>>(
        &self,
        f: &F,
        o: &Self,
        eliminate: Var,
    ) -> Result<Poly<E>> {
        if self.is_zero() || o.is_zero() {
            return Err(Error::Degenerate("resultant of a zero polynomial".into()));
        }
        let p = self.oriented(f, eliminate);
        let q = o.oriented(f, eliminate);
        Ok(resultant_subresultant(
            &PolyRing::new(f),
            &p.inner,
            &q.inner,
        ))
    }
}

impl<E: fmt::Debug> fmt::Debug for BiPoly<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly[e: {:?}]", self.inner)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::rational::rat;
    use crate::poly::field::Rationals;
    use crate::poly::unipoly::UniPoly;
    use num_rational::BigRational;

    fn bp(grid: &[&[i64]]) -> BiPoly<BigRational> {
        BiPoly::from_grid(
            &Rationals,
            grid.iter()
                .map(|r| r.iter().map(|&x| rat(x, 1)).collect())
                .collect(),
        )
    }

    #[test]
    fn simple_elimination() {
        let q = Rationals;
        // e^2 - 2 and y0 - e
        let a = bp(&[&[-2], &[], &[1]]);
        let b = bp(&[&[0, 1], &[-1]]);
        let r = a.resultant(&q, &b, Var::E).unwrap();
        assert_eq!(r, UniPoly::from_i64s(&[-2, 0, 1]));
        assert_eq!(a.resultant_subresultant(&q, &b, Var::E).unwrap(), r);
    }

    #[test]
    fn vanishing_resultant_and_swap() {
        let q = Rationals;
        // (e−1)(y−3) and (e−1)(y+e)
        let f2 = bp(&[&[3, -1], &[-3, 1]]);
        let f3 = bp(&[&[0, -1], &[-1, 1], &[1]]);
        let r = f2.resultant(&q, &f3, Var::E).unwrap();
        assert!(r.is_zero());
        let ry = f2.resultant(&q, &f3, Var::Y0).unwrap();
        // (e−1)^2 (e+3), up to sign
        let expect = UniPoly::from_i64s(&[-1, 1])
            .pow(&q, 2)
            .mul(&q, &UniPoly::from_i64s(&[3, 1]));
        assert!(ry == expect || ry == expect.neg(&q), "{ry:?}");
        assert_eq!(f2.resultant_subresultant(&q, &f3, Var::Y0).unwrap(), ry);
    }

    #[test]
    fn evaluation_and_swap() {
        let q = Rationals;
        let a = bp(&[&[1, 2], &[0, 0, 3]]);
        assert_eq!(a.eval(&q, &rat(2, 1), &rat(1, 1)), rat(9, 1));
        let s = a.swap(&q);
        assert_eq!(s.eval(&q, &rat(1, 1), &rat(2, 1)), rat(9, 1));
        assert_eq!(a.deg_e(), Some(1));
        assert_eq!(a.deg_y0(), Some(2));
        assert_eq!(a.resultant_degree_bound(&a, Var::E), 4);
    }
}
