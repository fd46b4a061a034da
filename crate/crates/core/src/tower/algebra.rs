//! Finite-dimensional commutative algebras `R[x]/(g)` with `g` monic, and
//! their multiplication matrices over a chosen base field.

use crate::number::{QuadraticElement, QuadraticField};
use crate::poly::{Field, Matrix, Poly, Rationals, Ring};

/// An algebra that is a finite free module over the field `B`, with a fixed
/// coordinate system.
pub trait Flat<B: Field>: Ring {
    fn base(&self) -> &B;
    fn dim(&self) -> usize;
    fn flatten_into(&self, x: &Self::Elem, out: &mut Vec<B::Elem>);
    fn unflatten(&self, c: &[B::Elem]) -> Self::Elem;
    fn embed(&self, s: &B::Elem) -> Self::Elem;

    fn flatten(&self, x: &Self::Elem) -> Vec<B::Elem> {
        let mut v = Vec::with_capacity(self.dim());
        self.flatten_into(x, &mut v);
        v
    }

    /// Matrix of `y ↦ x·y` in the flattened coordinates (columns are images
    /// of basis vectors).
    fn mult_matrix(&self, x: &Self::Elem) -> Matrix<B::Elem> {
        let b = self.base();
        let n = self.dim();
        let cols: Vec<Vec<B::Elem>> = (0..n)
            .map(|j| {
                let e: Vec<B::Elem> = (0..n)
                    .map(|i| if i == j { b.one() } else { b.zero() })
                    .collect();
                self.flatten(&self.mul(x, &self.unflatten(&e)))
            })
            .collect();
        Matrix::from_fn(n, n, |i, j| cols[j][i].clone())
    }

    fn norm(&self, x: &Self::Elem) -> B::Elem {
        self.mult_matrix(x).det(self.base())
    }

    fn charpoly(&self, x: &Self::Elem) -> Poly<B::Elem> {
        self.mult_matrix(x).charpoly(self.base())
    }
}

impl Flat<Rationals> for Rationals {
    fn base(&self) -> &Rationals {
        self
    }
    fn dim(&self) -> usize {
        1
    }
    fn flatten_into(&self, x: &Self::Elem, out: &mut Vec<Self::Elem>) {
        out.push(x.clone());
    }
    fn unflatten(&self, c: &[Self::Elem]) -> Self::Elem {
        c[0].clone()
    }
    fn embed(&self, s: &Self::Elem) -> Self::Elem {
        s.clone()
    }
}

impl Flat<QuadraticField> for QuadraticField {
    fn base(&self) -> &QuadraticField {
        self
    }
    fn dim(&self) -> usize {
        1
    }
    fn flatten_into(&self, x: &QuadraticElement, out: &mut Vec<QuadraticElement>) {
        out.push(x.clone());
    }
    fn unflatten(&self, c: &[QuadraticElement]) -> QuadraticElement {
        c[0].clone()
    }
    fn embed(&self, s: &QuadraticElement) -> QuadraticElement {
        s.clone()
    }
}

impl Flat<Rationals> for QuadraticField {
    fn base(&self) -> &Rationals {
        &Rationals
    }
    fn dim(&self) -> usize {
        2
    }
    fn flatten_into(&self, x: &QuadraticElement, out: &mut Vec<num_rational::BigRational>) {
        out.push(x.a.clone());
        out.push(x.b.clone());
    }
    fn unflatten(&self, c: &[num_rational::BigRational]) -> QuadraticElement {
        QuadraticElement::new(c[0].clone(), c[1].clone())
    }
    fn embed(&self, s: &num_rational::BigRational) -> QuadraticElement {
        QuadraticElement::rational(s.clone())
    }
}

/// `R[x]/(g)` for monic `g` of degree `n ≥ 1`; elements are dense
/// coefficient vectors of length exactly `n`.
#[derive(Clone, Debug)]
pub struct Extension<R: Ring> {
    inner: R,
    /// `g` without its leading 1: `g = x^n + Σ modulus[i] x^i`.
    modulus: Vec<R::Elem>,
}

impl<R: Ring> Extension<R> {
    /// `g` given constant term first, including the leading coefficient 1.
    pub fn new(inner: R, g: Vec<R::Elem>) -> Self {
        assert!(g.len() >= 2, "modulus must have positive degree");
        assert!(inner.is_one(g.last().unwrap()), "modulus must be monic");
        let mut modulus = g;
        modulus.pop();
        Extension { inner, modulus }
    }

    pub fn inner(&self) -> &R {
        &self.inner
    }

    pub fn degree(&self) -> usize {
        self.modulus.len()
    }

    /// The class of `x`.
    pub fn gen(&self) -> Vec<R::Elem> {
        let mut v = self.zero();
        if self.degree() == 1 {
            v[0] = self.inner.neg(&self.modulus[0]);
        } else {
            v[1] = self.inner.one();
        }
        v
    }

    /// Embed an element of the coefficient ring.
    pub fn lift(&self, a: &R::Elem) -> Vec<R::Elem> {
        let mut v = self.zero();
        v[0] = a.clone();
        v
    }

    /// Reduce an arbitrary coefficient vector modulo `g`.
    pub fn reduce(&self, mut c: Vec<R::Elem>) -> Vec<R::Elem> {
        let n = self.degree();
        let r = &self.inner;
        while c.len() > n {
            let top = c.pop().unwrap();
            if r.is_zero(&top) {
                continue;
            }
            let shift = c.len() - n;
            for (i, m) in self.modulus.iter().enumerate() {
                c[shift + i] = r.sub(&c[shift + i], &r.mul(&top, m));
            }
        }
        c.resize(n, r.zero());
        c
    }

    /// Evaluate a polynomial with coefficients in `R` at the generator.
    pub fn from_poly(&self, p: &Poly<R::Elem>) -> Vec<R::Elem> {
        self.reduce(p.coeffs().to_vec())
    }

    /// Evaluate a polynomial with coefficients in `R` at an algebra element.
    pub fn eval_at(&self, coeffs: &[R::Elem], x: &Vec<R::Elem>) -> Vec<R::Elem> {
        let mut acc = self.zero();
        for c in coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, x), &self.lift(c));
        }
        acc
    }
}

impl<R: Ring> Ring for Extension<R> {
    type Elem = Vec<R::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.inner.zero(); self.degree()]
    }
    fn one(&self) -> Self::Elem {
        self.lift(&self.inner.one())
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|x| self.inner.is_zero(x))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.inner.add(x, y)).collect()
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.inner.sub(x, y)).collect()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.inner.neg(x)).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let r = &self.inner;
        let n = self.degree();
        let mut c = vec![r.zero(); 2 * n - 1];
        for (i, x) in a.iter().enumerate() {
            if r.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !r.is_zero(y) {
                    c[i + j] = r.add(&c[i + j], &r.mul(x, y));
                }
            }
        }
        self.reduce(c)
    }
    fn exact_div(&self, _a: &Self::Elem, _b: &Self::Elem) -> Option<Self::Elem> {
        None
    }
    fn from_int(&self, n: i64) -> Self::Elem {
        self.lift(&self.inner.from_int(n))
    }
}

impl<B: Field, R: Flat<B>> Flat<B> for Extension<R> {
    fn base(&self) -> &B {
        self.inner.base()
    }
    fn dim(&self) -> usize {
        self.degree() * self.inner.dim()
    }
    fn flatten_into(&self, x: &Self::Elem, out: &mut Vec<B::Elem>) {
        for c in x {
            self.inner.flatten_into(c, out);
        }
    }
    fn unflatten(&self, c: &[B::Elem]) -> Self::Elem {
        c.chunks(self.inner.dim())
            .map(|ch| self.inner.unflatten(ch))
            .collect()
    }
    fn embed(&self, s: &B::Elem) -> Self::Elem {
        self.lift(&self.inner.embed(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::rational::{int, rat};
    use crate::number::OmegaKind;
    use crate::poly::UniPoly;

    #[test]
    fn cubic_field_norms() {
        let q = Rationals;
        let g: Vec<_> = [17, -3, 0, 1].iter().map(|&x| rat(x, 1)).collect();
        let l = Extension::new(q, g);
        let xi = l.gen();
        // N(ξ) = −17 for x^3 − 3x + 17
        assert_eq!(Flat::<Rationals>::norm(&l, &xi), rat(-17, 1));
        assert_eq!(
            Flat::<Rationals>::charpoly(&l, &xi),
            UniPoly::from_i64s(&[17, -3, 0, 1])
        );
    }

    #[test]
    fn relative_and_absolute_charpolys() {
        let m = QuadraticField::new(int(19), OmegaKind::Sqrt);
        let g: Vec<_> = [17, -3, 0, 1]
            .iter()
            .map(|&x| QuadraticElement::from_ints(x, 0))
            .collect();
        let k = Extension::new(m.clone(), g);
        let theta = k.mul(&k.gen(), &k.lift(&m.omega()));
        let abs = Flat::<Rationals>::charpoly(&k, &theta);
        assert_eq!(abs, UniPoly::from_i64s(&[-1982251, 0, 3249, 0, -114, 0, 1]));
        let rel = Flat::<QuadraticField>::charpoly(&k, &theta);
        assert_eq!(rel.degree(), Some(3));
    }
}
