//! Reduced density matrices and von Neumann entropy.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::layout::Subsystem;
use crate::state::StateVector;

#[derive(Debug, Clone, PartialEq)]
pub struct ReducedDensity {
    label: String,
    qubits: Vec<usize>,
    matrix: DMatrix<Complex64>,
}

impl ReducedDensity {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| (self.matrix[(i, j)] - self.matrix[(j, i)].conj()).norm() <= tol))
    }

    /// Diagonal entries, i.e. the Born-rule marginal of the kept qubits.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.matrix[(i, i)].re).collect()
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self.matrix.clone().symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// Von Neumann entropy in bits.
    pub fn entropy_bits(&self) -> f64 {
        let s: f64 = self
            .eigenvalues()
            .into_iter()
            .filter(|&l| l > 1e-15)
            .map(|l| -l * l.log2())
            .sum();
        s.max(0.0)
    }

    /// `Tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }
}

/// Traces out everything except `keep`. The reduced matrix is indexed by
/// the kept qubits' outcome value, first listed qubit most significant.
pub fn partial_trace(state: &StateVector, keep: &Subsystem) -> Result<ReducedDensity> {
    let layout = state.layout();
    let kept = layout.qubits(keep)?;
    if kept.len() == layout.total_qubits() {
        return Err(Error::Subsystem("cannot keep the full system".into()));
    }
    let rest: Vec<usize> = (0..layout.total_qubits()).filter(|q| !kept.contains(q)).collect();

    let da = 1usize << kept.len();
    let db = 1usize << rest.len();
    // psi[b * da + a]
    let mut psi = vec![Complex64::new(0.0, 0.0); da * db];
    for (i, amp) in state.amplitudes().iter().enumerate() {
        let a = layout.extract(i, &kept) as usize;
        let b = layout.extract(i, &rest) as usize;
        psi[b * da + a] = *amp;
    }

    let mut matrix = DMatrix::from_element(da, da, Complex64::new(0.0, 0.0));
    for block in psi.chunks_exact(da) {
        for (r, &ar) in block.iter().enumerate() {
            if ar.norm_sqr() == 0.0 {
                continue;
            }
            for (c, &ac) in block.iter().enumerate() {
                matrix[(r, c)] += ar * ac.conj();
            }
        }
    }

    Ok(ReducedDensity {
        label: keep.to_string(),
        qubits: kept,
        matrix,
    })
}

/// Entropy (bits) of `part` against the rest of the system.
pub fn entanglement_entropy(state: &StateVector, part: &Subsystem) -> Result<f64> {
    Ok(partial_trace(state, part)?.entropy_bits())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::{BasisIndex, RegisterLayout};
    use crate::state::{make_uniform_input, TOLERANCE};

    #[test]
    fn product_input_has_pure_k_marginal() {
        let s = make_uniform_input(2).unwrap();
        let rho = partial_trace(&s, &Subsystem::K).unwrap();
        assert_eq!(rho.dim(), 4);
        for i in 0..4 {
            for j in 0..4 {
                assert!((rho.matrix()[(i, j)] - Complex64::new(0.25, 0.0)).norm() < TOLERANCE);
            }
        }
        assert!((rho.purity() - 1.0).abs() < TOLERANCE);
        assert!(rho.entropy_bits().abs() < 1e-9);
    }

    #[test]
    fn rejects_empty_and_full() {
        let s = make_uniform_input(1).unwrap();
        assert!(partial_trace(&s, &Subsystem::Qubits(vec![])).is_err());
        assert!(partial_trace(&s, &Subsystem::Qubits(vec![0, 1, 2])).is_err());
    }

    #[test]
    fn v_marginal_of_input() {
        let s = make_uniform_input(2).unwrap();
        let rho = partial_trace(&s, &Subsystem::V).unwrap();
        assert!((rho.matrix()[(0, 1)].re + 0.5).abs() < TOLERANCE);
        assert_eq!(rho.diagonal().len(), 2);
    }

    #[test]
    fn sharp_state_projector() {
        let layout = RegisterLayout::new(2).unwrap();
        let s = StateVector::basis_state(layout, BasisIndex::new(1, 3, 0)).unwrap();
        let rho = partial_trace(&s, &Subsystem::K).unwrap();
        assert_eq!(rho.diagonal(), vec![0.0, 1.0, 0.0, 0.0]);
        let rx = partial_trace(&s, &Subsystem::Qubits(vec![3, 2])).unwrap();
        assert_eq!(rx.diagonal(), vec![0.0, 0.0, 0.0, 1.0]);
    }
}
