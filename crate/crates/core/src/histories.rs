//! Histories of the classical algorithm that knows half of the oracle's
//! choice in advance, and their signed sum.
//!
//! A history is a pair of sharp states, one before and one after a single
//! evaluation of delta. Summing every history of the full space with the
//! phase `(-1)^v` of its input reproduces the uniform input state on the
//! input side and the oracle's output on the output side.

use std::collections::{BTreeMap, HashSet};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bits::{bit_at, format_bits};
use crate::error::{Error, Result};
use crate::grover::OracleSpec;
use crate::layout::{BasisIndex, RegisterLayout};
use crate::state::{Sign, StateVector};

/// Advance knowledge of some bits of the oracle's choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AdvancedInfo {
    n: usize,
    /// Bit `i` (from the left, as in `k_i`) is known when set.
    known_mask: u64,
    known_values: u64,
}

impl AdvancedInfo {
    /// `known` lists `(bit position i of k_i, value)`; exactly `floor(n/2)`
    /// bits must be given.
    pub fn new(n: usize, known: &[(usize, u8)]) -> Result<Self> {
        RegisterLayout::new(n)?;
        let mut mask = 0u64;
        let mut values = 0u64;
        for &(i, b) in known {
            if i >= n {
                return Err(Error::AdvancedInfo(format!("bit k{i} does not exist for n={n}")));
            }
            if b > 1 {
                return Err(Error::AdvancedInfo(format!("k{i}={b} is not a bit")));
            }
            let m = 1u64 << (n - 1 - i);
            if mask & m != 0 {
                return Err(Error::AdvancedInfo(format!("k{i} given twice")));
            }
            mask |= m;
            if b == 1 {
                values |= m;
            }
        }
        if known.len() != n / 2 {
            return Err(Error::AdvancedInfo(format!(
                "{} known bits given, half of n={n} is {}",
                known.len(),
                n / 2
            )));
        }
        Ok(AdvancedInfo {
            n,
            known_mask: mask,
            known_values: values,
        })
    }

    /// Every half-information scenario for `n`, in a fixed order.
    pub fn all(n: usize) -> Result<Vec<AdvancedInfo>> {
        RegisterLayout::new(n)?;
        let half = n / 2;
        let mut out = Vec::new();
        for mask in 0..(1u64 << n) {
            if mask.count_ones() as usize != half {
                continue;
            }
            let positions: Vec<usize> = (0..n).filter(|&i| bit_at(mask, i, n) == 1).collect();
            for vals in 0..(1u64 << half) {
                let known: Vec<(usize, u8)> = positions
                    .iter()
                    .enumerate()
                    .map(|(j, &i)| (i, bit_at(vals, j, half)))
                    .collect();
                out.push(AdvancedInfo::new(n, &known)?);
            }
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn known_mask(&self) -> u64 {
        self.known_mask
    }

    pub fn known_values(&self) -> u64 {
        self.known_values
    }

    pub fn admits(&self, k: u64) -> bool {
        k & self.known_mask == self.known_values
    }

    /// All k values consistent with the known bits, ascending.
    pub fn candidates(&self) -> Vec<u64> {
        (0..(1u64 << self.n)).filter(|&k| self.admits(k)).collect()
    }

    /// e.g. `k0=0`, or `k0=1,k2=0`.
    pub fn label(&self) -> String {
        (0..self.n)
            .filter(|&i| bit_at(self.known_mask, i, self.n) == 1)
            .map(|i| format!("k{i}={}", bit_at(self.known_values, i, self.n)))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub(crate) fn not_a_candidate(&self, what: &'static str, value: u64) -> Error {
        Error::NotACandidate {
            what,
            value: format_bits(value, self.n),
            candidates: self.candidates().iter().map(|&k| format_bits(k, self.n)).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct History {
    pub s_in: BasisIndex,
    pub s_out: BasisIndex,
}

impl History {
    pub fn from_input(s_in: BasisIndex) -> Self {
        History {
            s_in,
            s_out: classical_delta_step(s_in),
        }
    }

    pub fn label(&self, n: usize) -> String {
        format!("{} -> {}", self.s_in.label(n), self.s_out.label(n))
    }
}

/// `(k, x, v) -> (k, x, v xor delta(k, x))` on one sharp state.
pub fn classical_delta_step(s_in: BasisIndex) -> BasisIndex {
    BasisIndex {
        v: s_in.v ^ u8::from(s_in.k == s_in.x),
        ..s_in
    }
}

/// The histories of one advanced-information scenario: every candidate k,
/// the given query, both initial values of V.
pub fn enumerate_histories(info: &AdvancedInfo, query: u64) -> Result<Vec<History>> {
    if !info.admits(query) || query >= 1 << info.n {
        return Err(info.not_a_candidate("query", query));
    }
    Ok(info
        .candidates()
        .into_iter()
        .flat_map(|k| (0..2).map(move |v| History::from_input(BasisIndex::new(k, query, v))))
        .collect())
}

/// One history per sharp input state, in flat-index order.
pub fn full_history_space(n: usize) -> Result<Vec<History>> {
    let layout = RegisterLayout::new(n)?;
    Ok(layout.basis_states().map(History::from_input).collect())
}

/// A `+1`/`-1` weight per history, keyed by the history's input state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseAssignment {
    layout: RegisterLayout,
    phases: BTreeMap<BasisIndex, Sign>,
}

impl PhaseAssignment {
    pub fn new(layout: RegisterLayout) -> Self {
        PhaseAssignment {
            layout,
            phases: BTreeMap::new(),
        }
    }

    pub fn from_fn(layout: RegisterLayout, f: impl Fn(BasisIndex) -> Sign) -> Self {
        PhaseAssignment {
            layout,
            phases: layout.basis_states().map(|b| (b, f(b))).collect(),
        }
    }

    pub fn layout(&self) -> RegisterLayout {
        self.layout
    }

    pub fn set(&mut self, s_in: BasisIndex, sign: Sign) -> Result<()> {
        self.layout.index(s_in)?;
        self.phases.insert(s_in, sign);
        Ok(())
    }

    pub fn get(&self, s_in: BasisIndex) -> Option<Sign> {
        self.phases.get(&s_in).copied()
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (BasisIndex, Sign)> + '_ {
        self.phases.iter().map(|(b, s)| (*b, *s))
    }
}

/// `phi(k, x, v) = (-1)^v`.
///
/// Each basis state is the input of exactly one history, so matching the
/// input sum to the uniform input state leaves no freedom beyond a global
/// sign; the output sum is then what carries the content.
pub fn derive_phases(n: usize) -> Result<PhaseAssignment> {
    let layout = RegisterLayout::new(n)?;
    Ok(PhaseAssignment::from_fn(layout, |b| Sign::from_parity(b.v == 1)))
}

/// Normalized `(sum phi |s_in>, sum phi |s_out>)` over `space`.
pub fn reconstruct(phases: &PhaseAssignment, space: &[History]) -> Result<(StateVector, StateVector)> {
    let layout = phases.layout();
    let n = layout.n();
    let zero = Complex64::new(0.0, 0.0);
    let mut before = vec![zero; layout.dim()];
    let mut after = vec![zero; layout.dim()];
    let mut seen = HashSet::with_capacity(space.len());
    for h in space {
        if !seen.insert(h.s_in) {
            return Err(Error::DuplicateHistory(h.s_in.label(n)));
        }
        let sign = phases
            .get(h.s_in)
            .ok_or_else(|| Error::MissingPhase(h.s_in.label(n)))?
            .value();
        before[layout.index(h.s_in)?] += sign;
        after[layout.index(h.s_out)?] += sign;
    }
    Ok((
        StateVector::normalized(layout, before)?,
        StateVector::normalized(layout, after)?,
    ))
}

/// Checks the history invariant against the oracle definition.
pub fn history_is_consistent(h: &History, oracle: &OracleSpec) -> bool {
    h.s_in.k == h.s_out.k && h.s_in.x == h.s_out.x && h.s_out.v == h.s_in.v ^ oracle.delta(h.s_in.k, h.s_in.x)
}
