use gibbs_chains::{exact_distribution, StochasticMatrix};
use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::OracleError;

/// Largest |m_i K_ij - m_j K_ji| accepted as detailed balance.
pub const REVERSIBILITY_TOL: f64 = 1e-10;

fn symmetrized(matrix: &StochasticMatrix) -> Result<(DMatrix<f64>, Vec<f64>), OracleError> {
    let residual = matrix.detailed_balance_residual();
    if !matrix.is_reversible() || !(residual <= REVERSIBILITY_TOL) {
        return Err(OracleError::NotReversible { residual });
    }
    let d = matrix.dim();
    let root: Vec<f64> = matrix.stationary().iter().map(|m| m.sqrt()).collect();
    if root.iter().any(|r| !(*r > 0.0)) {
        return Err(OracleError::NotReversible { residual: f64::INFINITY });
    }
    let s = DMatrix::from_fn(d, d, |i, j| root[i] * matrix.get(i, j) / root[j]);
    // rounding leaves S a hair off symmetric
    Ok(((&s + s.transpose()) * 0.5, root))
}

/// Eigenvalues of D^{1/2} K D^{-1/2}, sorted in decreasing order.
pub fn brute_eigenvalues(matrix: &StochasticMatrix) -> Result<Vec<f64>, OracleError> {
    let (s, _) = symmetrized(matrix)?;
    let mut values: Vec<f64> = SymmetricEigen::new(s).eigenvalues.iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

/// Eigenvalues with right eigenvectors of K, decreasing.
///
/// Each vector is scaled to 1 at the first state when that entry is not
/// negligible, else to unit sup norm with a positive largest entry.
pub fn brute_eigenpairs(matrix: &StochasticMatrix) -> Result<Vec<(f64, Vec<f64>)>, OracleError> {
    let (s, root) = symmetrized(matrix)?;
    let eig = SymmetricEigen::new(s);
    let mut pairs: Vec<(f64, Vec<f64>)> = (0..matrix.dim())
        .map(|k| {
            let u = eig.eigenvectors.column(k);
            let mut v: Vec<f64> = u.iter().zip(&root).map(|(a, r)| a / r).collect();
            let big = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            let scale = if v[0].abs() > 1e-8 * big {
                v[0]
            } else {
                *v.iter().max_by(|a, b| a.abs().total_cmp(&b.abs())).expect("nonempty")
            };
            v.iter_mut().for_each(|x| *x /= scale);
            (eig.eigenvalues[k], v)
        })
        .collect();
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
    Ok(pairs)
}

/// Distances of the ℓ-step law from the stationary vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BruteDistance {
    pub chi_square: f64,
    pub tv: f64,
}

/// Chi-square and total variation after ℓ steps from `start`, by matrix powers.
pub fn brute_distances(matrix: &StochasticMatrix, start: usize, ell: usize) -> BruteDistance {
    let p = exact_distribution(matrix, start, ell);
    let mut chi_square = 0.0;
    let mut tv = 0.0;
    for (a, m) in p.iter().zip(matrix.stationary()) {
        chi_square += (a - m) * (a - m) / m;
        tv += (a - m).abs();
    }
    BruteDistance { chi_square, tv: 0.5 * tv }
}

/// ‖S u - λu‖ / ‖u‖ for u = √m · `vector`, S the symmetrized kernel.
///
/// S is symmetric, so some eigenvalue lies within this distance of λ.
pub fn eigen_residual(matrix: &StochasticMatrix, value: f64, vector: &[f64]) -> Result<f64, OracleError> {
    let (s, root) = symmetrized(matrix)?;
    let u = nalgebra::DVector::from_iterator(root.len(), vector.iter().zip(&root).map(|(v, r)| v * r));
    let r = &s * &u - &u * value;
    Ok(r.norm() / u.norm())
}
