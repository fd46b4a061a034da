use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::number::rational::{is_integer, rat_int};
use crate::poly::{discriminant, Matrix, Rationals, Ring, UniPoly};
use crate::tower::{Extension, Flat};

pub type AmbientElem = Vec<BigRational>;

/// A number field `Q(θ)` in the power basis `1, θ, …, θ^{n−1}`.
#[derive(Clone, Debug)]
pub struct AmbientField {
    min_poly: Vec<BigInt>,
    alg: Extension<Rationals>,
}

impl AmbientField {
    pub fn new(min_poly: Vec<BigInt>, location: &str) -> Result<Self> {
        let n = min_poly.len().saturating_sub(1);
        if n < 2 {
            return Err(Error::validation(
                "ambient-degree",
                location,
                "generator polynomial must have degree at least 2",
            ));
        }
        if !min_poly[n].is_one() {
            return Err(Error::validation(
                "ambient-monic",
                location,
                "generator polynomial must be monic",
            ));
        }
        let p = UniPoly::from_ints(&min_poly);
        if discriminant(&p)?.is_zero() {
            return Err(Error::validation(
                "ambient-squarefree",
                location,
                "generator polynomial has repeated roots",
            ));
        }
        let alg = Extension::new(Rationals, min_poly.iter().map(rat_int).collect());
        Ok(AmbientField { min_poly, alg })
    }

    pub fn degree(&self) -> usize {
        self.alg.degree()
    }

    pub fn min_poly(&self) -> &[BigInt] {
        &self.min_poly
    }

    pub fn algebra(&self) -> &Extension<Rationals> {
        &self.alg
    }

    pub fn one(&self) -> AmbientElem {
        self.alg.one()
    }

    pub fn gen(&self) -> AmbientElem {
        self.alg.gen()
    }

    pub fn from_rational(&self, q: &BigRational) -> AmbientElem {
        self.alg.lift(q)
    }

    pub fn add(&self, a: &AmbientElem, b: &AmbientElem) -> AmbientElem {
        self.alg.add(a, b)
    }

    pub fn sub(&self, a: &AmbientElem, b: &AmbientElem) -> AmbientElem {
        self.alg.sub(a, b)
    }

    pub fn neg(&self, a: &AmbientElem) -> AmbientElem {
        self.alg.neg(a)
    }

    pub fn mul(&self, a: &AmbientElem, b: &AmbientElem) -> AmbientElem {
        self.alg.mul(a, b)
    }

    pub fn mult_matrix(&self, a: &AmbientElem) -> Matrix<BigRational> {
        Flat::<Rationals>::mult_matrix(&self.alg, a)
    }

    pub fn norm(&self, a: &AmbientElem) -> BigRational {
        Flat::<Rationals>::norm(&self.alg, a)
    }

    pub fn char_poly(&self, a: &AmbientElem) -> UniPoly {
        Flat::<Rationals>::charpoly(&self.alg, a)
    }

    pub fn is_integral(&self, a: &AmbientElem) -> bool {
        self.char_poly(a).has_integer_coeffs()
    }

    pub fn inv(&self, a: &AmbientElem) -> Option<AmbientElem> {
        self.mult_matrix(a).solve(&Rationals, &self.one())
    }

    /// `a^k` for any integer `k`; `None` only for `0^k` with `k < 0`.
    pub fn pow(&self, a: &AmbientElem, k: i64) -> Option<AmbientElem> {
        let base = if k < 0 { self.inv(a)? } else { a.clone() };
        Some(self.alg.pow(&base, k.unsigned_abs() as u32))
    }

    /// Value of a polynomial with rational coefficients at `x`.
    pub fn eval_poly(&self, coeffs: &[BigRational], x: &AmbientElem) -> AmbientElem {
        self.alg.eval_at(coeffs, x)
    }
}

/// Exact recovery of integer coordinates against four pattern elements.
#[derive(Clone, Debug)]
pub struct PatternBasis {
    /// `n × 4`, columns are the pattern elements.
    matrix: Matrix<BigRational>,
    /// Rational functionals vanishing on the pattern span.
    annihilator: Vec<Vec<BigRational>>,
}

impl PatternBasis {
    pub fn new(pattern: &[AmbientElem; 4], location: &str) -> Result<Self> {
        let n = pattern[0].len();
        let matrix = Matrix::from_fn(n, 4, |i, j| pattern[j][i].clone());
        let annihilator = left_kernel(&matrix);
        if annihilator.len() != n - 4 {
            return Err(Error::validation(
                "pattern-independent",
                location,
                "pattern elements are linearly dependent over Q",
            ));
        }
        Ok(PatternBasis {
            matrix,
            annihilator,
        })
    }

    pub fn annihilator(&self) -> &[Vec<BigRational>] {
        &self.annihilator
    }

    /// Combination of the pattern with coefficients `c`.
    pub fn combine(&self, c: &[BigInt; 4]) -> AmbientElem {
        let cv: Vec<BigRational> = c.iter().map(rat_int).collect();
        self.matrix.mul_vec(&Rationals, &cv)
    }

    /// The unique integer `c` with `β = Σ c_j p_j`, if there is one.
    pub fn match_pattern(&self, beta: &AmbientElem) -> Option<[BigInt; 4]> {
        let c = self.matrix.solve(&Rationals, beta)?;
        if !c.iter().all(is_integer) {
            return None;
        }
        let c: Vec<BigInt> = c.into_iter().map(|q| q.to_integer()).collect();
        Some([c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()])
    }
}

/// Basis of `{w : wᵀ A = 0}`.
fn left_kernel(a: &Matrix<BigRational>) -> Vec<Vec<BigRational>> {
    let at = a.transpose();
    let (m, n) = (at.rows(), at.cols());
    let mut r = at.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..m).find(|&i| !r.get(i, col).is_zero()) else {
            continue;
        };
        r.swap_rows(p, row);
        let inv = r.get(row, col).recip();
        for j in 0..n {
            let v = r.get(row, j) * &inv;
            r.set(row, j, v);
        }
        for i in 0..m {
            if i != row && !r.get(i, col).is_zero() {
                let f = r.get(i, col).clone();
                for j in 0..n {
                    let v = r.get(i, j) - &f * r.get(row, j);
                    r.set(i, j, v);
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m {
            break;
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut w = vec![BigRational::zero(); n];
            w[fc] = BigRational::one();
            for (k, &pc) in pivots.iter().enumerate() {
                w[pc] = -r.get(k, fc).clone();
            }
            w
        })
        .collect()
}

/// `|N(x)| = |target|` as exact rationals.
pub fn has_abs_norm(f: &AmbientField, x: &AmbientElem, target: &BigInt) -> bool {
    f.norm(x).abs() == rat_int(&target.abs())
}
