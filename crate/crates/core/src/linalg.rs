//! Minimum-norm solves of real linear systems with Grassmann-valued
//! right-hand sides.
//!
//! The systems that show up here (coboundary matrices, graph Laplacians) have
//! real integer coefficients, so a system with values in Λ splits into one
//! real system per monomial and per real/imaginary part. All of them share a
//! single pseudo-inverse.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::grassmann::{GrassmannElement, Monomial};

/// Rank tolerance on singular values.
pub(crate) const RANK_TOL: f64 = 1e-9;

pub(crate) struct MinNormSolver {
    a: DMatrix<f64>,
    pinv: DMatrix<f64>,
    rank: usize,
}

pub(crate) struct Solution {
    pub x: Vec<GrassmannElement>,
    /// Largest coefficient of `A x − b`.
    pub residual: f64,
}

impl MinNormSolver {
    pub fn new(a: DMatrix<f64>) -> Self {
        let (rows, cols) = a.shape();
        if rows == 0 || cols == 0 {
            return MinNormSolver {
                pinv: DMatrix::zeros(cols, rows),
                a,
                rank: 0,
            };
        }
        let svd = a.clone().svd(true, true);
        let rank = svd.rank(RANK_TOL);
        let pinv = svd
            .pseudo_inverse(RANK_TOL)
            .expect("both singular vector sets were computed");
        MinNormSolver { a, pinv, rank }
    }

    /// Dimension of the kernel of `A`.
    pub fn nullity(&self) -> usize {
        self.a.ncols() - self.rank
    }

    pub fn solve(&self, b: &[GrassmannElement], n: u32) -> Solution {
        let (rows, cols) = self.a.shape();
        debug_assert_eq!(b.len(), rows);
        let monos: Vec<Monomial> = b
            .iter()
            .flat_map(|x| x.terms().map(|(m, _)| m))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if monos.is_empty() {
            return Solution {
                x: (0..cols).map(|_| GrassmannElement::zero(n)).collect(),
                residual: 0.0,
            };
        }
        let k = monos.len();
        let mut rhs = DMatrix::<f64>::zeros(rows, 2 * k);
        for (r, x) in b.iter().enumerate() {
            for (c, &m) in monos.iter().enumerate() {
                let v = x.coeff(m);
                rhs[(r, 2 * c)] = v.re;
                rhs[(r, 2 * c + 1)] = v.im;
            }
        }
        let sol = &self.pinv * &rhs;
        let resid = &self.a * &sol - &rhs;
        let residual = resid.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        let x = (0..cols)
            .map(|r| {
                let terms = monos
                    .iter()
                    .enumerate()
                    .map(|(c, &m)| (m, Complex64::new(sol[(r, 2 * c)], sol[(r, 2 * c + 1)])));
                GrassmannElement::from_terms(n, terms).expect("monomials come from valid elements")
            })
            .collect();
        Solution { x, residual }
    }
}

/// Numerical rank of a real matrix.
pub(crate) fn rank(a: &DMatrix<f64>) -> usize {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0;
    }
    a.clone().svd(false, false).rank(RANK_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_norm_on_underdetermined_system() {
        // x1 + x2 = θ1 has least-norm solution x1 = x2 = θ1/2
        let a = DMatrix::from_row_slice(1, 2, &[1.0, 1.0]);
        let s = MinNormSolver::new(a);
        let t1 = GrassmannElement::generator(2, 1).unwrap();
        let sol = s.solve(core::slice::from_ref(&t1), 2);
        assert!(sol.x[0].approx_eq(&t1.scale(0.5), 1e-12));
        assert!(sol.x[1].approx_eq(&t1.scale(0.5), 1e-12));
        assert!(sol.residual < 1e-12);
        assert_eq!(s.nullity(), 1);
    }

    #[test]
    fn inconsistent_system_has_residual() {
        let a = DMatrix::from_row_slice(2, 1, &[1.0, 1.0]);
        let s = MinNormSolver::new(a);
        let one = GrassmannElement::one(1);
        let sol = s.solve(&[one.clone(), -one], 1);
        assert!(sol.residual > 0.5);
    }
}
