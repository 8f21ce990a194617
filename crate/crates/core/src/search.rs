//! Exhaustive search over sign patterns of the post-query state.
//!
//! For n = 2 every v-independent sign assignment `sigma(k, x)` in
//! `{+1, -1}^16` defines the state
//! `sum sigma(k, x) |k>|x> (|0> - |1>) / (4 sqrt 2)`. The search computes
//! the K-register entropy of all 65,536 of them and compares the maximum
//! with the pattern produced by the history phases.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::density::entanglement_entropy;
use crate::error::Result;
use crate::exec::Execution;
use crate::histories::{derive_phases, full_history_space, reconstruct};
use crate::layout::{RegisterLayout, Subsystem};
use crate::state::StateVector;

pub const SEARCH_N: usize = 2;
pub const ASSIGNMENTS: usize = 1 << 16;
/// Entropies within this distance of the maximum count as maximizers.
pub const ENTROPY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntanglementReport {
    pub assignments: usize,
    pub max_entropy: f64,
    pub maximizers: usize,
    /// Bit `4k + x` set means `sigma(k, x) = -1`.
    pub quantum_mask: u16,
    pub quantum_entropy: f64,
    pub quantum_attains_max: bool,
}

/// The n = 2 state for sign mask `mask` (bit `4k + x` set means `-1`).
pub fn sign_pattern_state(mask: u16) -> StateVector {
    let layout = RegisterLayout::new(SEARCH_N).expect("n = 2");
    let amplitudes = (0..layout.dim())
        .map(|i| {
            let b = layout.basis(i);
            let sigma = if mask >> (b.k * 4 + b.x) & 1 == 1 { -1.0 } else { 1.0 };
            let v_sign = if b.v == 1 { -1.0 } else { 1.0 };
            Complex64::new(sigma * v_sign * 0.25 * std::f64::consts::FRAC_1_SQRT_2, 0.0)
        })
        .collect();
    StateVector::from_parts_unchecked(layout, amplitudes)
}

pub fn sign_pattern_entropy(mask: u16) -> Result<f64> {
    entanglement_entropy(&sign_pattern_state(mask), &Subsystem::K)
}

/// Reads the sign pattern off the output side of the history sum.
pub fn quantum_sign_mask() -> Result<u16> {
    let (_, after) = reconstruct(&derive_phases(SEARCH_N)?, &full_history_space(SEARCH_N)?)?;
    let layout = after.layout();
    let mut mask = 0u16;
    for (i, a) in after.amplitudes().iter().enumerate() {
        let b = layout.basis(i);
        if b.v == 0 && a.re < 0.0 {
            mask |= 1 << (b.k * 4 + b.x);
        }
    }
    Ok(mask)
}

#[derive(Debug, Clone, Copy)]
struct Best {
    entropy: f64,
    count: usize,
}

impl Best {
    fn empty() -> Self {
        Best {
            entropy: f64::NEG_INFINITY,
            count: 0,
        }
    }

    fn merge(self, other: Best) -> Best {
        if (self.entropy - other.entropy).abs() <= ENTROPY_TOLERANCE {
            Best {
                entropy: self.entropy.max(other.entropy),
                count: self.count + other.count,
            }
        } else if self.entropy > other.entropy {
            self
        } else {
            other
        }
    }
}

pub fn entanglement_max_search(exec: Execution) -> Result<EntanglementReport> {
    let best = exec.fold_range(
        0..ASSIGNMENTS,
        Best::empty,
        |acc, mask| {
            let entropy = sign_pattern_entropy(mask as u16).expect("K is a valid subsystem");
            acc.merge(Best { entropy, count: 1 })
        },
        Best::merge,
    );
    let quantum_mask = quantum_sign_mask()?;
    let quantum_entropy = sign_pattern_entropy(quantum_mask)?;
    Ok(EntanglementReport {
        assignments: ASSIGNMENTS,
        max_entropy: best.entropy,
        maximizers: best.count,
        quantum_mask,
        quantum_entropy,
        quantum_attains_max: quantum_entropy >= best.entropy - ENTROPY_TOLERANCE,
    })
}
