//! The binary cubic resolvent form and the ternary quadratic forms attached to
//! a quartic `ξ`, the choice of `λ` and the split into rational and `√D`
//! parts.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::number::rational::rat_int;
use crate::number::{QuadraticElement, QuadraticField};
use crate::poly::{real_roots, Field, Matrix, Rationals, Ring, UniPoly};
use crate::tower::{relative_indices, CompositeElement, TowerSpec};

type Qe = QuadraticElement;

/// `Σ_{i,j} A_ij x_i x_j` with `A` symmetric and rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryForm {
    pub matrix: [[BigRational; 3]; 3],
}

impl TernaryForm {
    /// From monomial coefficients of `x1², x1x2, x2², x1x3, x2x3, x3²`.
    pub fn from_monomials(c: [BigInt; 6]) -> Self {
        let half = |x: &BigInt| BigRational::new(x.clone(), BigInt::from(2));
        let [c11, c12, c22, c13, c23, c33] = c;
        TernaryForm {
            matrix: [
                [rat_int(&c11), half(&c12), half(&c13)],
                [half(&c12), rat_int(&c22), half(&c23)],
                [half(&c13), half(&c23), rat_int(&c33)],
            ],
        }
    }

    /// `self + λ·other`.
    pub fn plus_scaled(&self, other: &TernaryForm, lambda: &BigRational) -> Self {
        let mut matrix = self.matrix.clone();
        for (i, row) in matrix.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v += &other.matrix[i][j] * lambda;
            }
        }
        TernaryForm { matrix }
    }

    pub fn eval_m(&self, m: &QuadraticField, x: &[Qe]) -> Qe {
        let mut acc = m.zero();
        for i in 0..3 {
            for j in 0..3 {
                if !self.matrix[i][j].is_zero() {
                    acc = m.add(&acc, &m.mul(&x[i], &x[j]).scale(&self.matrix[i][j]));
                }
            }
        }
        acc
    }

    pub fn eval_q(&self, x: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for i in 0..3 {
            for j in 0..3 {
                acc += &self.matrix[i][j] * &x[i] * &x[j];
            }
        }
        acc
    }
}

#[derive(Clone, Debug)]
pub struct QuarticForms {
    /// `(a1, a2, a3, a4)` of `f = x⁴ + a1x³ + a2x² + a3x + a4`.
    pub a: [BigInt; 4],
    /// Coefficients of `u³, u²v, uv², v³`.
    pub f: [BigInt; 4],
    pub q1: TernaryForm,
    pub q2: TernaryForm,
    /// `I_{K/M}(ξ)`.
    pub i0: BigInt,
}

impl QuarticForms {
    /// `F(u, 1)`.
    pub fn cubic_at_one(&self) -> UniPoly {
        UniPoly::from_ints(&[
            self.f[3].clone(),
            self.f[2].clone(),
            self.f[1].clone(),
            self.f[0].clone(),
        ])
    }

    pub fn eval_f_m(&self, m: &QuadraticField, u: &Qe, v: &Qe) -> Qe {
        let c = |k: usize| m.from_rational(&rat_int(&self.f[k]));
        let (u2, v2) = (m.mul(u, u), m.mul(v, v));
        let terms = [
            m.mul(&c(0), &m.mul(&u2, u)),
            m.mul(&c(1), &m.mul(&u2, v)),
            m.mul(&c(2), &m.mul(u, &v2)),
            m.mul(&c(3), &m.mul(&v2, v)),
        ];
        terms.iter().fold(m.zero(), |acc, t| m.add(&acc, t))
    }
}

/// The forms for a quartic tower.
pub fn quartic_forms(t: &TowerSpec) -> Result<QuarticForms> {
    if t.degree() != 4 {
        return Err(Error::validation(
            "quartic-degree",
            "/extension/degree",
            format!(
                "the quartic pipeline needs a quartic extension, got degree {}",
                t.degree()
            ),
        ));
    }
    let c = t.min_poly_ints();
    let (a1, a2, a3, a4) = (c[3].clone(), c[2].clone(), c[1].clone(), c[0].clone());
    let f = [
        BigInt::one(),
        -&a2,
        &a1 * &a3 - 4 * &a4,
        4 * &a2 * &a4 - &a3 * &a3 - &a1 * &a1 * &a4,
    ];
    let q1 = TernaryForm::from_monomials([
        BigInt::one(),
        -&a1,
        a2.clone(),
        &a1 * &a1 - 2 * &a2,
        &a3 - &a1 * &a2,
        -&a1 * &a3 + &a2 * &a2 + &a4,
    ]);
    let q2 = TernaryForm::from_monomials([
        BigInt::zero(),
        BigInt::zero(),
        BigInt::one(),
        -BigInt::one(),
        -&a1,
        a2.clone(),
    ]);
    let i0 = relative_indices(&CompositeElement::xi(4), t)?.rel_index_km;
    if i0.is_zero() {
        return Err(Error::Inconsistent("I_K/M(ξ) vanishes".into()));
    }
    Ok(QuarticForms {
        a: [a1, a2, a3, a4],
        f,
        q1,
        q2,
        i0,
    })
}

/// `(lo, hi)` bounds of the three real roots of `p`, refined until `x` lies
/// outside all of them; also the number of roots below `x`.
fn roots_below(p: &UniPoly, x: &BigRational) -> Result<usize> {
    let mut bits = 10u32;
    loop {
        let w = BigRational::new(BigInt::one(), BigInt::one() << bits);
        let roots = real_roots(p, &w)?;
        if roots.iter().all(|iv| !iv.contains(x)) {
            return Ok(roots.iter().filter(|iv| iv.hi() < x).count());
        }
        bits += 10;
        if bits > 400 {
            return Err(Error::Precision(format!(
                "cannot separate {x} from the roots"
            )));
        }
    }
}

/// Rational `λ` with `−λ2 < λ < −λ1` for the real roots `λ1 < λ2 < λ3` of
/// `F(u, 1)`: least denominator first, then least `|λ|`, then least `λ`.
pub fn choose_lambda(f_at_one: &UniPoly) -> Result<BigRational> {
    let roots = real_roots(
        f_at_one,
        &BigRational::new(BigInt::one(), BigInt::from(1 << 20)),
    )?;
    if roots.len() != 3 || !f_at_one.is_squarefree() {
        return Err(Error::Unsupported(format!(
            "F(u, 1) has {} distinct real roots; three are needed, so L is not totally complex",
            roots.len()
        )));
    }
    // λ admissible iff −λ ∈ (λ1, λ2) iff F(−λ) ≠ 0 with exactly one root below −λ
    let admissible = |lam: &BigRational| -> Result<bool> {
        let x = -lam;
        if f_at_one.value_at(&x).is_zero() {
            return Ok(false);
        }
        Ok(roots_below(f_at_one, &x)? == 1)
    };
    let lo = -roots[1].hi().clone();
    let hi = -roots[0].lo().clone();
    let mut q = BigInt::one();
    loop {
        let qr = rat_int(&q);
        let n_lo: BigInt = (&lo * &qr).floor().to_integer() - 1;
        let n_hi: BigInt = (&hi * &qr).ceil().to_integer() + 1;
        let mut cands = Vec::new();
        let mut n = n_lo;
        while n <= n_hi {
            cands.push(BigRational::new(n.clone(), q.clone()));
            n += 1;
        }
        // only reduced fractions belong to this denominator
        cands.retain(|c| c.denom() == &q);
        cands.sort_by(|x, y| match x.abs().cmp(&y.abs()) {
            Ordering::Equal => x.cmp(y),
            o => o,
        });
        for c in cands {
            if admissible(&c)? {
                return Ok(c);
            }
        }
        q += 1;
    }
}

/// `Q1 + λQ2` evaluated at `X_j = x_j + ω y_j` equals `S(x, y) + √D·T(x, y)`,
/// with variables ordered `(x1, x2, x3, y1, y2, y3)`.
#[derive(Clone, Debug)]
pub struct LambdaSplit {
    pub lambda: BigRational,
    pub form: TernaryForm,
    pub s: Matrix<BigRational>,
    pub t: Matrix<BigRational>,
}

pub fn quad_value(a: &Matrix<BigRational>, z: &[BigInt]) -> BigRational {
    let zr: Vec<BigRational> = z.iter().map(rat_int).collect();
    let az = a.mul_vec(&Rationals, &zr);
    az.iter()
        .zip(&zr)
        .fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

impl LambdaSplit {
    pub fn s_value(&self, z: &[BigInt]) -> BigRational {
        quad_value(&self.s, z)
    }

    pub fn t_value(&self, z: &[BigInt]) -> BigRational {
        quad_value(&self.t, z)
    }
}

/// With `ω = w1 + w2√D`, `X = P z + √D·R z` for `P = [I | w1 I]`,
/// `R = [0 | w2 I]`; then `S = PᵀAP + D·RᵀAR` and `T = PᵀAR + RᵀAP`.
pub fn split_s_t(
    forms: &QuarticForms,
    lambda: &BigRational,
    m: &QuadraticField,
) -> Result<LambdaSplit> {
    let form = forms.q1.plus_scaled(&forms.q2, lambda);
    let (w1, w2) = m.sqrt_coords(&m.omega());
    let a = Matrix::from_fn(3, 3, |i, j| form.matrix[i][j].clone());
    let p = Matrix::from_fn(3, 6, |i, j| {
        if j == i {
            BigRational::one()
        } else if j == i + 3 {
            w1.clone()
        } else {
            BigRational::zero()
        }
    });
    let r = Matrix::from_fn(3, 6, |i, j| {
        if j == i + 3 {
            w2.clone()
        } else {
            BigRational::zero()
        }
    });
    let q = &Rationals;
    let pt = p.transpose();
    let rt = r.transpose();
    let d = rat_int(m.radicand());
    let s = pt
        .mul(q, &a.mul(q, &p))
        .add(q, &rt.mul(q, &a.mul(q, &r)).scale(q, &d));
    let t = pt.mul(q, &a.mul(q, &r)).add(q, &rt.mul(q, &a.mul(q, &p)));
    if let Some(k) = s.leading_minors(q).iter().position(|x| !x.is_positive()) {
        return Err(Error::Inconsistent(format!(
            "S is not positive definite for λ = {lambda}: leading minor {} is not positive",
            k + 1
        )));
    }
    Ok(LambdaSplit {
        lambda: lambda.clone(),
        form,
        s,
        t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::rational::{int, rat};
    use crate::number::OmegaKind;
    use crate::tower::index::tests::example2;

    #[test]
    fn example2_forms() {
        let t = example2();
        let f = quartic_forms(&t).unwrap();
        assert_eq!(f.f, [int(1), int(-2), int(-4), int(4)]);
        assert_eq!(
            f.q2,
            TernaryForm::from_monomials([int(0), int(0), int(1), int(-1), int(0), int(2)])
        );
        assert_eq!(f.i0, int(4));
    }

    #[test]
    fn lambda_rule() {
        let f = UniPoly::from_i64s(&[4, -4, -2, 1]);
        assert_eq!(choose_lambda(&f).unwrap(), rat(0, 1));
        // roots −3, −1, 2
        let g = UniPoly::from_i64s(&[-6, -5, 2, 1]);
        assert_eq!(choose_lambda(&g).unwrap(), rat(2, 1));
        // roots 0, 1/3, 1: interval (−1/3, 0) needs denominator 4 or more
        let h = UniPoly::from_i64s(&[0, 1, -4, 3]);
        assert_eq!(choose_lambda(&h).unwrap(), rat(-1, 4));
        assert!(matches!(
            choose_lambda(&UniPoly::from_i64s(&[1, 0, 0, 1])),
            Err(Error::Unsupported(_))
        ));
        let rep = UniPoly::from_i64s(&[0, 0, -1, 1]);
        assert!(matches!(choose_lambda(&rep), Err(Error::Unsupported(_))));
    }

    #[test]
    fn split_identity_sqrt_case() {
        let t = example2();
        let forms = quartic_forms(&t).unwrap();
        let m = t.field();
        let sp = split_s_t(&forms, &rat(0, 1), m).unwrap();
        // S = Q1(x) + 2·Q1(y)
        let z = [int(1), int(-2), int(3), int(0), int(1), int(-1)];
        let x: Vec<BigRational> = z[..3].iter().map(rat_int).collect();
        let y: Vec<BigRational> = z[3..].iter().map(rat_int).collect();
        assert_eq!(
            sp.s_value(&z),
            forms.q1.eval_q(&x) + forms.q1.eval_q(&y) * rat(2, 1)
        );
        let xm: Vec<Qe> = (0..3).map(|i| Qe::from_bigints(&z[i], &z[i + 3])).collect();
        let v = sp.form.eval_m(m, &xm);
        assert_eq!(m.sqrt_coords(&v), (sp.s_value(&z), sp.t_value(&z)));
    }

    #[test]
    fn split_half_case_has_quarter_integral_t() {
        let m = QuadraticField::new(int(5), OmegaKind::Half);
        let forms = QuarticForms {
            a: [int(0), int(2), int(2), int(1)],
            f: [int(1), int(-2), int(-4), int(4)],
            q1: TernaryForm::from_monomials([int(1), int(0), int(2), int(-4), int(2), int(5)]),
            q2: TernaryForm::from_monomials([int(0), int(0), int(1), int(-1), int(0), int(2)]),
            i0: int(1),
        };
        let sp = split_s_t(&forms, &rat(0, 1), &m).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                // 4T has integer monomial coefficients: T_ii and 2·T_ij
                let c = if i == j {
                    sp.t.get(i, j).clone()
                } else {
                    sp.t.get(i, j) * rat(2, 1)
                };
                assert!((c * rat(4, 1)).is_integer());
            }
        }
        let z = [int(2), int(-1), int(0), int(3), int(1), int(-2)];
        let xm: Vec<Qe> = (0..3).map(|i| Qe::from_bigints(&z[i], &z[i + 3])).collect();
        assert_eq!(
            m.sqrt_coords(&sp.form.eval_m(&m, &xm)),
            (sp.s_value(&z), sp.t_value(&z))
        );
    }
}
