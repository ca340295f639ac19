//! Exact elements of SL(m+n) in the block roles used throughout: unipotents
//! `u(Phi)`, `u^-(X)`, the diagonal flow `a(N)`, the centralizer `Z_H(A)` and
//! the embedded Weyl element `sigma(X)`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::exactalg::{AlgError, Matrix, RatFunc, Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Role {
    /// `[[I_m, Phi], [0, I_n]]`
    Unipotent,
    /// `[[I_m, 0], [X, I_n]]`
    OppositeUnipotent,
    /// `diag(N^n I_m, N^-m I_n)`
    Diagonal,
    /// `diag(B, C)` with `det B det C = 1`
    Centralizer,
    /// `[[0, X, 0], [-X^-1, 0, 0], [0, 0, I]]`
    Weyl,
    Identity,
    Product,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    m: usize,
    n: usize,
    role: Role,
    matrix: Matrix<Rational>,
}

fn pow_i(n: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(n.clone(), e as usize)
    } else {
        num_traits::pow(n.recip(), (-e) as usize)
    }
}

impl GroupElement {
    pub fn identity(m: usize, n: usize) -> Self {
        GroupElement { m, n, role: Role::Identity, matrix: Matrix::identity(m + n) }
    }

    /// `u(Phi)` for an `m x n` matrix `Phi`.
    pub fn u(phi: &Matrix<Rational>) -> Self {
        let (m, n) = (phi.rows(), phi.cols());
        let mut g = Matrix::identity(m + n);
        g.set_block(0, m, phi);
        GroupElement { m, n, role: Role::Unipotent, matrix: g }
    }

    /// `u^-(X)` for an `n x m` matrix `X`.
    pub fn u_minus(x: &Matrix<Rational>) -> Self {
        let (n, m) = (x.rows(), x.cols());
        let mut g = Matrix::identity(m + n);
        g.set_block(m, 0, x);
        GroupElement { m, n, role: Role::OppositeUnipotent, matrix: g }
    }

    /// `a(log N) = diag(N^n I_m, N^-m I_n)`.
    pub fn a(big_n: &Rational, m: usize, n: usize) -> Result<Self, AlgError> {
        if big_n <= &Rational::zero() {
            return Err(AlgError::ShapeMismatch("flow parameter N must be positive".into()));
        }
        let top = pow_i(big_n, n as i64);
        let bottom = pow_i(big_n, -(m as i64));
        let g = Matrix::from_fn(m + n, m + n, |i, j| {
            if i != j {
                Rational::zero()
            } else if i < m {
                top.clone()
            } else {
                bottom.clone()
            }
        });
        Ok(GroupElement { m, n, role: Role::Diagonal, matrix: g })
    }

    /// `z = diag(B, C)`; requires `det B det C = 1`.
    pub fn centralizer(b: &Matrix<Rational>, c: &Matrix<Rational>) -> Result<Self, AlgError> {
        let db = b.det()?;
        let dc = c.det()?;
        if db * dc != Rational::one() {
            return Err(AlgError::ShapeMismatch("centralizer element needs det B * det C = 1".into()));
        }
        Ok(GroupElement {
            m: b.rows(),
            n: c.rows(),
            role: Role::Centralizer,
            matrix: Matrix::block_diag(b, c),
        })
    }

    /// `u'(Y) = diag(I_m, [[I_m, Y], [0, I_{n-m}]])` for `Y` of size `m x (n-m)`.
    pub fn u_prime(y: &Matrix<Rational>) -> Self {
        let m = y.rows();
        let n = m + y.cols();
        let mut c = Matrix::identity(n);
        c.set_block(0, m, y);
        GroupElement::centralizer(&Matrix::identity(m), &c).expect("unipotent has det 1")
    }

    /// Image of `[[0, 1], [-1, 0]]` under the embedding attached to an invertible `m x m` `X`
    /// inside SL(m+n) (requires `2m <= m + n`).
    pub fn sigma(x: &Matrix<Rational>, n: usize) -> Result<Self, AlgError> {
        let m = x.rows();
        if 2 * m > m + n {
            return Err(AlgError::ShapeMismatch(format!("sigma needs 2m <= m+n, got m={m}, n={n}")));
        }
        let xinv = x.inverse()?;
        let mut g = Matrix::identity(m + n);
        for i in 0..2 * m {
            g.set(i, i, Rational::zero());
        }
        g.set_block(0, m, x);
        g.set_block(m, 0, &xinv.neg());
        Ok(GroupElement { m, n, role: Role::Weyl, matrix: g })
    }

    /// Image of `[[a, b], [c, d]]` in SL(2) under `[[aI, bX, 0], [cX^-1, dI, 0], [0, 0, I]]`.
    pub fn embedded_sl2(x: &Matrix<Rational>, n: usize, abcd: [&Rational; 4]) -> Result<Self, AlgError> {
        let m = x.rows();
        if 2 * m > m + n {
            return Err(AlgError::ShapeMismatch(format!("SL(2,X) needs 2m <= m+n, got m={m}, n={n}")));
        }
        let [a, b, c, d] = abcd;
        if a * d - b * c != Rational::one() {
            return Err(AlgError::ShapeMismatch("SL(2) element must have determinant 1".into()));
        }
        let xinv = x.inverse()?;
        let id = Matrix::<Rational>::identity(m);
        let mut g = Matrix::identity(m + n);
        g.set_block(0, 0, &id.scale(a));
        g.set_block(0, m, &x.scale(b));
        g.set_block(m, 0, &xinv.scale(c));
        g.set_block(m, m, &id.scale(d));
        Ok(GroupElement { m, n, role: Role::Product, matrix: g })
    }

    pub fn from_matrix(m: usize, n: usize, matrix: Matrix<Rational>) -> Result<Self, AlgError> {
        if matrix.rows() != m + n || !matrix.is_square() {
            return Err(AlgError::ShapeMismatch(format!("expected {0}x{0} matrix", m + n)));
        }
        if matrix.det()? != Rational::one() {
            return Err(AlgError::ShapeMismatch("group element must have determinant 1".into()));
        }
        Ok(GroupElement { m, n, role: Role::Product, matrix })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.matrix
    }

    /// Top-left `m x m` block (`B` for centralizer elements).
    pub fn b_block(&self) -> Matrix<Rational> {
        self.matrix.block(0, self.m, 0, self.m)
    }

    /// Bottom-right `n x n` block (`C` for centralizer elements).
    pub fn c_block(&self) -> Matrix<Rational> {
        let d = self.m + self.n;
        self.matrix.block(self.m, d, self.m, d)
    }

    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        let role = if self.role == Role::Centralizer && other.role == Role::Centralizer {
            Role::Centralizer
        } else {
            Role::Product
        };
        GroupElement { m: self.m, n: self.n, role, matrix: &self.matrix * &other.matrix }
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            m: self.m,
            n: self.n,
            role: self.role,
            matrix: self.matrix.inverse().expect("group elements are invertible"),
        }
    }

    /// `z . Phi = B Phi C^-1` for a centralizer element.
    pub fn act_on<T: Scalar>(&self, phi: &Matrix<T>, lift: impl Fn(&Rational) -> T) -> Result<Matrix<T>, AlgError> {
        if self.role != Role::Centralizer && self.role != Role::Identity {
            return Err(AlgError::ShapeMismatch("only centralizer elements act on matrix curves".into()));
        }
        let b = self.b_block().map(&lift);
        let cinv = self.c_block().inverse()?.map(&lift);
        b.try_mul(phi)?.try_mul(&cinv)
    }

    pub fn act_on_rational(&self, phi: &Matrix<Rational>) -> Result<Matrix<Rational>, AlgError> {
        self.act_on(phi, Rational::clone)
    }

    pub fn act_on_curve(&self, phi: &Matrix<RatFunc>) -> Result<Matrix<RatFunc>, AlgError> {
        self.act_on(phi, |r| RatFunc::constant(r.clone()))
    }
}

/// `E_b(m)`: the `m x m` matrix `diag(1, ..., 1, 0, ..., 0)` with `b` ones.
pub fn e_b(b: usize, m: usize) -> Matrix<Rational> {
    Matrix::from_fn(m, m, |i, j| if i == j && i < b { Rational::one() } else { Rational::zero() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};

    #[test]
    fn conjugation_by_centralizer_moves_phi() {
        let phi = Matrix::from_i64(1, 2, &[3, 5]);
        let b = Matrix::from_i64(1, 1, &[2]);
        let c = Matrix::new(2, 2, vec![int(1), int(1), int(0), rat(1, 2)]).unwrap();
        let z = GroupElement::centralizer(&b, &c).unwrap();
        let lhs = z.compose(&GroupElement::u(&phi)).compose(&z.inverse());
        let moved = z.act_on_rational(&phi).unwrap();
        assert_eq!(lhs.matrix(), GroupElement::u(&moved).matrix());
    }

    #[test]
    fn flow_matrix_has_determinant_one() {
        let a = GroupElement::a(&int(2), 1, 2).unwrap();
        assert_eq!(a.matrix().det().unwrap(), int(1));
        assert_eq!(*a.matrix().get(0, 0), int(4));
        assert_eq!(*a.matrix().get(2, 2), rat(1, 2));
        assert!(GroupElement::a(&int(0), 1, 1).is_err());
    }

    #[test]
    fn sigma_is_embedded_rotation() {
        let x = Matrix::from_i64(1, 1, &[2]);
        let s = GroupElement::sigma(&x, 1).unwrap();
        let via = GroupElement::embedded_sl2(&x, 1, [&int(0), &int(1), &int(-1), &int(0)]).unwrap();
        assert_eq!(s.matrix(), via.matrix());
        assert_eq!(s.matrix().det().unwrap(), int(1));
    }

    #[test]
    fn e_b_shape() {
        let e = e_b(1, 2);
        assert_eq!(e, Matrix::from_i64(2, 2, &[1, 0, 0, 0]));
    }
}
