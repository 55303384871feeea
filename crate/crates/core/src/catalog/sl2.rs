//! Finite-dimensional irreducible sl₂-modules `M(λ)`.
//!
//! Basis `u_0, …, u_λ` with `h u_k = (λ − 2k) u_k`, `f u_k = u_{k+1}` and
//! `e u_k = k(λ − k + 1) u_{k−1}`, so all structure constants are integers.

use num_traits::One;

use super::CatalogError;
use crate::algebra::Family;
use crate::linalg::Matrix;
use crate::scalar::{int, Scalar};

#[derive(Debug, Clone)]
pub struct Sl2Irrep {
    pub lambda: u32,
    pub e: Matrix,
    pub f: Matrix,
    pub h: Matrix,
}

impl Sl2Irrep {
    pub fn dim(&self) -> usize {
        self.lambda as usize + 1
    }

    /// Image of `u_k` under `x ∈ {e, f, h}` as `(coefficient, index)`, or `None` when zero.
    pub fn act(lambda: u32, x: Family, k: u32) -> Option<(Scalar, u32)> {
        let (l, kk) = (i64::from(lambda), i64::from(k));
        match x {
            Family::H => Some((int(l - 2 * kk), k)).filter(|_| l != 2 * kk),
            Family::F => (k < lambda).then(|| (Scalar::one(), k + 1)),
            Family::E => (k > 0).then(|| (int(kk * (l - kk + 1)), k - 1)),
            _ => None,
        }
    }
}

pub fn sl2_irrep(lambda: i64) -> Result<Sl2Irrep, CatalogError> {
    let lambda = u32::try_from(lambda).map_err(|_| CatalogError::NegativeHighestWeight(lambda))?;
    let n = lambda as usize + 1;
    let matrix = |x: Family| {
        let mut m = Matrix::zeros(n, n);
        for k in 0..=lambda {
            if let Some((c, j)) = Sl2Irrep::act(lambda, x, k) {
                m[(j as usize, k as usize)] = c;
            }
        }
        m
    };
    Ok(Sl2Irrep { lambda, e: matrix(Family::E), f: matrix(Family::F), h: matrix(Family::H) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
        a.mul(b).sub(&b.mul(a))
    }

    #[test]
    fn trivial_module() {
        let m = sl2_irrep(0).unwrap();
        assert_eq!(m.dim(), 1);
        assert!(m.e.is_zero() && m.f.is_zero() && m.h.is_zero());
    }

    #[test]
    fn standard_module() {
        let m = sl2_irrep(1).unwrap();
        assert_eq!(m.h, Matrix::from_rows(vec![vec![int(1), int(0)], vec![int(0), int(-1)]]));
        assert_eq!(m.e, Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(0), int(0)]]));
        assert_eq!(m.f, Matrix::from_rows(vec![vec![int(0), int(0)], vec![int(1), int(0)]]));
    }

    #[test]
    fn adjoint_normalization() {
        let m = sl2_irrep(2).unwrap();
        assert_eq!(m.e[(1, 2)], int(2));
        assert_eq!(m.e[(0, 1)], int(2));
    }

    #[test]
    fn relations_hold_up_to_eight() {
        for lambda in 0..=8 {
            let m = sl2_irrep(lambda).unwrap();
            assert_eq!(commutator(&m.h, &m.e), m.e.scaled(&int(2)), "λ={lambda}");
            assert_eq!(commutator(&m.h, &m.f), m.f.scaled(&int(-2)), "λ={lambda}");
            assert_eq!(commutator(&m.e, &m.f), m.h, "λ={lambda}");
        }
    }

    #[test]
    fn negative_weight_rejected() {
        assert_eq!(sl2_irrep(-1).unwrap_err(), CatalogError::NegativeHighestWeight(-1));
    }
}
