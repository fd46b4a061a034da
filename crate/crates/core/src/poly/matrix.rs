//! Small dense matrices over a [`Field`] (or [`Ring`] for fraction-free routines).

use super::dense::Poly;
use super::field::{Field, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone + PartialEq + std::fmt::Debug> Matrix<E> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn zeros<R: Ring<Elem = E> + ?Sized>(r: &R, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![r.zero(); rows * cols],
        }
    }

    pub fn identity<R: Ring<Elem = E> + ?Sized>(r: &R, n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { r.one() } else { r.zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<R2: Ring + ?Sized>(&self, _r2: &R2, f: impl Fn(&E) -> R2::Elem) -> Matrix<R2::Elem> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn add<R: Ring<Elem = E> + ?Sized>(&self, r: &R, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| r.add(a, b))
                .collect(),
        }
    }

    pub fn scale<R: Ring<Elem = E> + ?Sized>(&self, r: &R, s: &E) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| r.mul(a, s)).collect(),
        }
    }

    pub fn mul<R: Ring<Elem = E> + ?Sized>(&self, r: &R, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        Self::from_fn(self.rows, o.cols, |i, j| {
            let mut acc = r.zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if !r.is_zero(a) {
                    acc = r.add(&acc, &r.mul(a, o.get(k, j)));
                }
            }
            acc
        })
    }

    pub fn mul_vec<R: Ring<Elem = E> + ?Sized>(&self, r: &R, v: &[E]) -> Vec<E> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = r.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    acc = r.add(&acc, &r.mul(a, b));
                }
                acc
            })
            .collect()
    }

    /// Determinant by Gaussian elimination over a field.
    pub fn det<F: Field<Elem = E> + ?Sized>(&self, f: &F) -> E {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = f.one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !f.is_zero(a.get(i, k))) else {
                return f.zero();
            };
            if p != k {
                a.swap_rows(p, k);
                det = f.neg(&det);
            }
            let piv = a.get(k, k).clone();
            det = f.mul(&det, &piv);
            let inv = f.inv(&piv).unwrap();
            for i in k + 1..n {
                let m = f.mul(a.get(i, k), &inv);
                if f.is_zero(&m) {
                    continue;
                }
                for j in k..n {
                    let v = f.sub(a.get(i, j), &f.mul(&m, a.get(k, j)));
                    a.set(i, j, v);
                }
            }
        }
        det
    }

    /// Fraction-free (Bareiss) determinant over an integral domain.
    pub fn det_bareiss<R: Ring<Elem = E> + ?Sized>(&self, r: &R) -> E {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return r.one();
        }
        let mut a = self.clone();
        let mut sign = false;
        let mut prev = r.one();
        for k in 0..n - 1 {
            if r.is_zero(a.get(k, k)) {
                let Some(p) = (k + 1..n).find(|&i| !r.is_zero(a.get(i, k))) else {
                    return r.zero();
                };
                a.swap_rows(p, k);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = r.sub(
                        &r.mul(a.get(i, j), a.get(k, k)),
                        &r.mul(a.get(i, k), a.get(k, j)),
                    );
                    let v = r.exact_div(&v, &prev).expect("Bareiss step is exact");
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        let d = a.get(n - 1, n - 1).clone();
        if sign {
            r.neg(&d)
        } else {
            d
        }
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.rows {
            self.data.swap(k * self.cols + i, k * self.cols + j);
        }
    }

    /// Solutions of `self · x = b` for possibly overdetermined systems:
    /// `Some(x)` if the system is consistent with a unique solution.
    pub fn solve<F: Field<Elem = E> + ?Sized>(&self, f: &F, b: &[E]) -> Option<Vec<E>> {
        assert_eq!(self.rows, b.len());
        let (m, n) = (self.rows, self.cols);
        let mut a = Self::from_fn(m, n + 1, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let mut row = 0;
        for col in 0..n {
            let p = (row..m).find(|&i| !f.is_zero(a.get(i, col)))?;
            a.swap_rows(p, row);
            let inv = f.inv(a.get(row, col)).unwrap();
            for j in col..=n {
                let v = f.mul(a.get(row, j), &inv);
                a.set(row, j, v);
            }
            for i in 0..m {
                if i == row || f.is_zero(a.get(i, col)) {
                    continue;
                }
                let factor = a.get(i, col).clone();
                for j in col..=n {
                    let v = f.sub(a.get(i, j), &f.mul(&factor, a.get(row, j)));
                    a.set(i, j, v);
                }
            }
            row += 1;
        }
        if (n..m).any(|i| !f.is_zero(a.get(i, n))) {
            return None;
        }
        Some((0..n).map(|i| a.get(i, n).clone()).collect())
    }

    pub fn inverse<F: Field<Elem = E> + ?Sized>(&self, f: &F) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let e: Vec<E> = (0..n)
                .map(|i| if i == j { f.one() } else { f.zero() })
                .collect();
            cols.push(self.solve(f, &e)?);
        }
        Some(Self::from_fn(n, n, |i, j| cols[j][i].clone()))
    }

    /// Leading principal minors `det(A[0..k, 0..k])` for `k = 1..n`.
    pub fn leading_minors<F: Field<Elem = E> + ?Sized>(&self, f: &F) -> Vec<E> {
        (1..=self.rows)
            .map(|k| Self::from_fn(k, k, |i, j| self.get(i, j).clone()).det(f))
            .collect()
    }

    /// Characteristic polynomial `det(x·I − A)` via reduction to Hessenberg form.
    pub fn charpoly<F: Field<Elem = E> + ?Sized>(&self, f: &F) -> Poly<E> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !f.is_zero(h.get(i, m - 1))) else {
                continue;
            };
            if i != m {
                h.swap_rows(i, m);
                h.swap_cols(i, m);
            }
            let t_inv = f.inv(h.get(m, m - 1)).unwrap();
            for j in m + 1..n {
                let u = f.mul(h.get(j, m - 1), &t_inv);
                if f.is_zero(&u) {
                    continue;
                }
                for k in 0..n {
                    let v = f.sub(h.get(j, k), &f.mul(&u, h.get(m, k)));
                    h.set(j, k, v);
                }
                for k in 0..n {
                    let v = f.add(h.get(k, m), &f.mul(&u, h.get(k, j)));
                    h.set(k, m, v);
                }
            }
        }
        // p_k = (x − h_kk) p_{k−1} − Σ_i h_{k−i,k} (Π_{j=k−i+1..k} h_{j,j−1}) p_{k−i−1}, 1-indexed
        let x = Poly::x(f);
        let mut p: Vec<Poly<E>> = vec![Poly::one(f)];
        for k in 1..=n {
            let hkk = Poly::constant(f, h.get(k - 1, k - 1).clone());
            let mut pk = x.sub(f, &hkk).mul(f, &p[k - 1]);
            let mut prod = f.one();
            for i in 1..k {
                prod = f.mul(&prod, h.get(k - i, k - i - 1));
                if f.is_zero(&prod) {
                    break;
                }
                let c = f.mul(&prod, h.get(k - i - 1, k - 1));
                pk = pk.sub(f, &p[k - i - 1].scale(f, &c));
            }
            p.push(pk);
        }
        p.pop().unwrap()
    }
}
