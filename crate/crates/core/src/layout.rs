//! Register layout for the three-register system.
//!
//! Flat amplitude index: k bits most significant, then x bits, then v.
//! Qubits are numbered 0..2n from the most significant: `K_i` is qubit
//! `i`, `X_i` is qubit `n + i`, `V` is qubit `2n`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::format_bits;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RegisterLayout {
    n: usize,
}

impl RegisterLayout {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Size {
                n,
                reason: "search registers need at least one qubit",
            });
        }
        if n >= (usize::BITS as usize - 1) / 2 {
            return Err(Error::Size {
                n,
                reason: "2^(2n+1) amplitudes overflow the host word size",
            });
        }
        Ok(RegisterLayout { n })
    }

    /// Qubits in each of K and X.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn total_qubits(&self) -> usize {
        2 * self.n + 1
    }

    pub fn dim(&self) -> usize {
        1 << self.total_qubits()
    }

    /// Values a search register can take, `2^n`.
    pub fn register_values(&self) -> u64 {
        1 << self.n
    }

    pub fn index(&self, b: BasisIndex) -> Result<usize> {
        let top = self.register_values();
        if b.k >= top || b.x >= top || b.v > 1 {
            return Err(Error::BasisOutOfRange(b.label(self.n)));
        }
        Ok(((b.k as usize) << (self.n + 1)) | ((b.x as usize) << 1) | b.v as usize)
    }

    pub fn basis(&self, index: usize) -> BasisIndex {
        debug_assert!(index < self.dim());
        let mask = (1usize << self.n) - 1;
        BasisIndex {
            k: ((index >> (self.n + 1)) & mask) as u64,
            x: ((index >> 1) & mask) as u64,
            v: (index & 1) as u8,
        }
    }

    pub fn basis_states(&self) -> impl Iterator<Item = BasisIndex> + '_ {
        (0..self.dim()).map(move |i| self.basis(i))
    }

    /// Position of `qubit` as a bit of the flat index.
    pub fn bit_position(&self, qubit: usize) -> usize {
        self.total_qubits() - 1 - qubit
    }

    /// Resolves a subsystem to its ordered qubit list.
    pub fn qubits(&self, sub: &Subsystem) -> Result<Vec<usize>> {
        let qs: Vec<usize> = match sub {
            Subsystem::K => (0..self.n).collect(),
            Subsystem::X => (self.n..2 * self.n).collect(),
            Subsystem::V => vec![2 * self.n],
            Subsystem::Qubits(qs) => qs.clone(),
        };
        if qs.is_empty() {
            return Err(Error::Subsystem("empty qubit subset".into()));
        }
        let mut seen = vec![false; self.total_qubits()];
        for &q in &qs {
            if q >= self.total_qubits() {
                return Err(Error::Subsystem(format!(
                    "qubit {q} outside 0..{}",
                    self.total_qubits()
                )));
            }
            if std::mem::replace(&mut seen[q], true) {
                return Err(Error::Subsystem(format!("qubit {q} listed twice")));
            }
        }
        Ok(qs)
    }

    /// Gathers the bits of `index` at `qubits` into an outcome value,
    /// first listed qubit most significant.
    pub fn extract(&self, index: usize, qubits: &[usize]) -> u64 {
        qubits
            .iter()
            .fold(0u64, |acc, &q| acc << 1 | ((index >> self.bit_position(q)) & 1) as u64)
    }
}

/// One sharp configuration `|k>_K |x>_X |v>_V`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisIndex {
    pub k: u64,
    pub x: u64,
    pub v: u8,
}

impl BasisIndex {
    pub const fn new(k: u64, x: u64, v: u8) -> Self {
        BasisIndex { k, x, v }
    }

    /// Ket notation, e.g. `|01>_K |01>_X |1>_V`.
    pub fn label(&self, n: usize) -> String {
        format!(
            "|{}>_K |{}>_X |{}>_V",
            format_bits(self.k, n),
            format_bits(self.x, n),
            self.v
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subsystem {
    K,
    X,
    V,
    /// Explicit qubit numbers in the layout's numbering.
    Qubits(Vec<usize>),
}

impl fmt::Display for Subsystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subsystem::K => write!(f, "K"),
            Subsystem::X => write!(f, "X"),
            Subsystem::V => write!(f, "V"),
            Subsystem::Qubits(qs) => write!(f, "qubits{qs:?}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_is_a_bijection() {
        for n in 1..=3 {
            let layout = RegisterLayout::new(n).unwrap();
            for i in 0..layout.dim() {
                assert_eq!(layout.index(layout.basis(i)).unwrap(), i);
            }
        }
    }

    #[test]
    fn k_is_most_significant() {
        let layout = RegisterLayout::new(2).unwrap();
        assert_eq!(layout.index(BasisIndex::new(0b01, 0b00, 0)).unwrap(), 8);
        assert_eq!(layout.index(BasisIndex::new(0, 0b01, 0)).unwrap(), 2);
        assert_eq!(layout.index(BasisIndex::new(0, 0, 1)).unwrap(), 1);
        assert_eq!(layout.dim(), 32);
    }

    #[test]
    fn size_errors() {
        assert!(matches!(RegisterLayout::new(0), Err(Error::Size { .. })));
        assert!(matches!(RegisterLayout::new(32), Err(Error::Size { .. })));
        let layout = RegisterLayout::new(2).unwrap();
        assert!(layout.index(BasisIndex::new(4, 0, 0)).is_err());
        assert!(layout.index(BasisIndex::new(0, 0, 2)).is_err());
    }

    #[test]
    fn subsystems_resolve() {
        let layout = RegisterLayout::new(2).unwrap();
        assert_eq!(layout.qubits(&Subsystem::K).unwrap(), vec![0, 1]);
        assert_eq!(layout.qubits(&Subsystem::X).unwrap(), vec![2, 3]);
        assert_eq!(layout.qubits(&Subsystem::V).unwrap(), vec![4]);
        assert!(layout.qubits(&Subsystem::Qubits(vec![])).is_err());
        assert!(layout.qubits(&Subsystem::Qubits(vec![1, 1])).is_err());
        assert!(layout.qubits(&Subsystem::Qubits(vec![5])).is_err());
        // K = 10, X = 01, v = 1
        let i = layout.index(BasisIndex::new(2, 1, 1)).unwrap();
        assert_eq!(layout.extract(i, &[0, 1]), 2);
        assert_eq!(layout.extract(i, &[2, 3]), 1);
        assert_eq!(layout.extract(i, &[3, 0]), 0b11);
    }
}
