//! Dense univariate polynomials over an arbitrary [`Ring`].
//!
//! Coefficients are stored constant term first with no trailing zeros, so the
//! zero polynomial is the empty vector. Every operation takes the coefficient
//! domain explicitly.

use std::fmt;

use super::field::{Field, Ring};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly<E> {
    c: Vec<E>,
}

impl<E: Clone + PartialEq + fmt::Debug> Poly<E> {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    /// Builds a polynomial from constant-first coefficients, trimming zeros.
    pub fn new<R: Ring<Elem = E> + ?Sized>(r: &R, mut c: Vec<E>) -> Self {
        while c.last().is_some_and(|x| r.is_zero(x)) {
            c.pop();
        }
        Poly { c }
    }

    pub fn constant<R: Ring<Elem = E> + ?Sized>(r: &R, a: E) -> Self {
        Self::new(r, vec![a])
    }

    pub fn one<R: Ring<Elem = E> + ?Sized>(r: &R) -> Self {
        Poly { c: vec![r.one()] }
    }

    /// `a·x^n`
    pub fn monomial<R: Ring<Elem = E> + ?Sized>(r: &R, a: E, n: usize) -> Self {
        if r.is_zero(&a) {
            return Self::zero();
        }
        let mut c = vec![r.zero(); n + 1];
        c[n] = a;
        Poly { c }
    }

    /// The polynomial `x`.
    pub fn x<R: Ring<Elem = E> + ?Sized>(r: &R) -> Self {
        Self::monomial(r, r.one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; for bounds only.
    pub fn deg0(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[E] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.c
    }

    pub fn coeff<R: Ring<Elem = E> + ?Sized>(&self, r: &R, i: usize) -> E {
        self.c.get(i).cloned().unwrap_or_else(|| r.zero())
    }

    pub fn lc(&self) -> Option<&E> {
        self.c.last()
    }

    pub fn add<R: Ring<Elem = E> + ?Sized>(&self, r: &R, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => r.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::new(r, c)
    }

    pub fn neg<R: Ring<Elem = E> + ?Sized>(&self, r: &R) -> Self {
        Poly {
            c: self.c.iter().map(|a| r.neg(a)).collect(),
        }
    }

    pub fn sub<R: Ring<Elem = E> + ?Sized>(&self, r: &R, o: &Self) -> Self {
        self.add(r, &o.neg(r))
    }

    pub fn mul<R: Ring<Elem = E> + ?Sized>(&self, r: &R, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![r.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if r.is_zero(a) {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = r.add(&c[i + j], &r.mul(a, b));
            }
        }
        Self::new(r, c)
    }

    pub fn scale<R: Ring<Elem = E> + ?Sized>(&self, r: &R, a: &E) -> Self {
        Self::new(r, self.c.iter().map(|x| r.mul(x, a)).collect())
    }

    /// Multiply by `x^n`.
    pub fn shift(&self, r: &impl Ring<Elem = E>, n: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![r.zero(); n];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    pub fn pow<R: Ring<Elem = E> + ?Sized>(&self, r: &R, mut n: u32) -> Self {
        let mut acc = Self::one(r);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(r, &base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(r, &base);
            }
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval<R: Ring<Elem = E> + ?Sized>(&self, r: &R, x: &E) -> E {
        let mut acc = r.zero();
        for a in self.c.iter().rev() {
            acc = r.add(&r.mul(&acc, x), a);
        }
        acc
    }

    /// `self(g(x))`
    pub fn compose<R: Ring<Elem = E> + ?Sized>(&self, r: &R, g: &Self) -> Self {
        let mut acc = Self::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul(r, g).add(r, &Self::constant(r, a.clone()));
        }
        acc
    }

    pub fn derivative<R: Ring<Elem = E> + ?Sized>(&self, r: &R) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| r.mul(a, &r.from_int(i as i64)))
            .collect();
        Self::new(r, c)
    }

    pub fn map<F, R2>(&self, r2: &R2, f: F) -> Poly<R2::Elem>
    where
        R2: Ring + ?Sized,
        F: Fn(&E) -> R2::Elem,
    {
        Poly::new(r2, self.c.iter().map(f).collect())
    }

    /// Division with remainder when the leading coefficient of `d` divides
    /// every leading coefficient met along the way. Always succeeds over a
    /// field; returns `None` if an inexact step occurs or `d = 0`.
    pub fn div_rem_exact<R: Ring<Elem = E> + ?Sized>(
        &self,
        r: &R,
        d: &Self,
    ) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let lc = d.lc().unwrap();
        let mut rem = self.c.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut q = vec![r.zero(); rem.len() - dd];
        for k in (0..q.len()).rev() {
            let top = &rem[k + dd];
            if r.is_zero(top) {
                continue;
            }
            let t = r.exact_div(top, lc)?;
            for (i, b) in d.c.iter().enumerate() {
                rem[k + i] = r.sub(&rem[k + i], &r.mul(&t, b));
            }
            q[k] = t;
        }
        rem.truncate(dd);
        Some((Self::new(r, q), Self::new(r, rem)))
    }

    /// Exact quotient `self / d`, `None` unless `d` divides `self`.
    pub fn exact_quo<R: Ring<Elem = E> + ?Sized>(&self, r: &R, d: &Self) -> Option<Self> {
        let (q, rem) = self.div_rem_exact(r, d)?;
        rem.is_zero().then_some(q)
    }

    /// Pseudo-remainder `prem(self, d)`: `lc(d)^(deg self − deg d + 1) · self mod d`.
    pub fn pseudo_rem<R: Ring<Elem = E> + ?Sized>(&self, r: &R, d: &Self) -> Self {
        let dd = d.degree().expect("pseudo-remainder by zero");
        let lc = d.lc().unwrap().clone();
        let Some(ds) = self.degree() else {
            return Self::zero();
        };
        if ds < dd {
            return self.clone();
        }
        let mut rem = self.clone();
        let mut steps = ds - dd + 1;
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let t = Self::monomial(r, rem.lc().unwrap().clone(), dr - dd);
            rem = rem.scale(r, &lc).sub(r, &t.mul(r, d));
            steps -= 1;
        }
        for _ in 0..steps {
            rem = rem.scale(r, &lc);
        }
        rem
    }
}

impl<E: Clone + PartialEq + fmt::Debug> Poly<E> {
    pub fn div_rem<F: Field<Elem = E> + ?Sized>(&self, f: &F, d: &Self) -> (Self, Self) {
        self.div_rem_exact(f, d)
            .expect("division by the zero polynomial")
    }

    pub fn rem<F: Field<Elem = E> + ?Sized>(&self, f: &F, d: &Self) -> Self {
        self.div_rem(f, d).1
    }

    pub fn monic<F: Field<Elem = E> + ?Sized>(&self, f: &F) -> Self {
        match self.lc() {
            None => Self::zero(),
            Some(lc) => {
                let inv = f.inv(lc).unwrap();
                self.scale(f, &inv)
            }
        }
    }

    /// Monic gcd over a field.
    pub fn gcd<F: Field<Elem = E> + ?Sized>(&self, f: &F, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }
}

impl<E: fmt::Debug> fmt::Debug for Poly<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{a:?}")?,
                1 => write!(f, "{a:?}·x")?,
                _ => write!(f, "{a:?}·x^{i}")?,
            }
        }
        Ok(())
    }
}

/// `R[x]` as a coefficient domain in its own right, so that bivariate
/// polynomials are `Poly<Poly<E>>` over `PolyRing<R>`.
#[derive(Clone, Debug)]
pub struct PolyRing<R> {
    pub base: R,
}

impl<R> PolyRing<R> {
    pub fn new(base: R) -> Self {
        PolyRing { base }
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = Poly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        Poly::zero()
    }
    fn one(&self) -> Self::Elem {
        Poly::one(&self.base)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(&self.base, b)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.sub(&self.base, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.neg(&self.base)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.mul(&self.base, b)
    }
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        a.exact_quo(&self.base, b)
    }
    fn from_int(&self, n: i64) -> Self::Elem {
        Poly::constant(&self.base, self.base.from_int(n))
    }
}
