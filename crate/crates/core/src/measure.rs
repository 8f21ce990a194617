//! Projective measurement in the computational basis.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::layout::Subsystem;
use crate::state::{StateVector, TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasurementMode {
    /// Reduce onto the given outcome; it must have nonzero probability.
    Forced(u64),
    /// Draw an outcome from the Born distribution with a seeded generator.
    Sampled(u64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementRecord {
    pub qubits: Vec<usize>,
    pub outcome: u64,
    pub probability: f64,
    pub post_state: StateVector,
}

/// Born-rule probability of every outcome of `sub`, indexed by outcome value.
pub fn outcome_probabilities(state: &StateVector, sub: &Subsystem) -> Result<Vec<f64>> {
    let layout = state.layout();
    let qubits = layout.qubits(sub)?;
    let mut probs = vec![0.0; 1 << qubits.len()];
    for (i, a) in state.amplitudes().iter().enumerate() {
        probs[layout.extract(i, &qubits) as usize] += a.norm_sqr();
    }
    Ok(probs)
}

pub fn measure(state: &StateVector, sub: &Subsystem, mode: MeasurementMode) -> Result<MeasurementRecord> {
    let layout = state.layout();
    let qubits = layout.qubits(sub)?;
    let probs = outcome_probabilities(state, sub)?;

    let outcome = match mode {
        MeasurementMode::Forced(o) => {
            let p = probs.get(o as usize).copied().unwrap_or(0.0);
            if p <= TOLERANCE {
                return Err(Error::ImpossibleOutcome {
                    outcome: o,
                    probability: p,
                });
            }
            o
        }
        MeasurementMode::Sampled(seed) => sample_outcome(&probs, seed),
    };
    let probability = probs[outcome as usize];

    let scale = probability.sqrt();
    let amplitudes: Vec<Complex64> = state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            if layout.extract(i, &qubits) == outcome {
                a / scale
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();

    Ok(MeasurementRecord {
        qubits,
        outcome,
        probability,
        post_state: StateVector::normalized(layout, amplitudes)?,
    })
}

fn sample_outcome(probs: &[f64], seed: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u: f64 = rng.random();
    let mut acc = 0.0;
    let mut last = 0;
    for (o, &p) in probs.iter().enumerate() {
        if p <= TOLERANCE {
            continue;
        }
        last = o;
        acc += p;
        if u < acc {
            return o as u64;
        }
    }
    last as u64
}

/// Exact outcome table for measuring `sets` one after another in the given
/// order. Each key lists the outcomes in the same order as `sets`.
pub type Distribution = BTreeMap<Vec<u64>, f64>;

pub fn joint_outcome_distribution(state: &StateVector, sets: &[Subsystem]) -> Result<Distribution> {
    let layout = state.layout();
    let mut seen = vec![false; layout.total_qubits()];
    for sub in sets {
        for q in layout.qubits(sub)? {
            if std::mem::replace(&mut seen[q], true) {
                return Err(Error::OverlappingSubsets(q));
            }
        }
    }
    let mut table = Distribution::new();
    branch(state, sets, 1.0, &mut Vec::new(), &mut table)?;
    Ok(table)
}

fn branch(
    state: &StateVector,
    sets: &[Subsystem],
    weight: f64,
    prefix: &mut Vec<u64>,
    table: &mut Distribution,
) -> Result<()> {
    let Some((first, rest)) = sets.split_first() else {
        *table.entry(prefix.clone()).or_insert(0.0) += weight;
        return Ok(());
    };
    for (o, p) in outcome_probabilities(state, first)?.into_iter().enumerate() {
        if p <= TOLERANCE {
            continue;
        }
        let rec = measure(state, first, MeasurementMode::Forced(o as u64))?;
        prefix.push(o as u64);
        branch(&rec.post_state, rest, weight * p, prefix, table)?;
        prefix.pop();
    }
    Ok(())
}

/// Largest entry-wise difference between two tables (missing keys count as 0).
pub fn distribution_distance(a: &Distribution, b: &Distribution) -> f64 {
    a.keys()
        .chain(b.keys())
        .map(|key| (a.get(key).unwrap_or(&0.0) - b.get(key).unwrap_or(&0.0)).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::{BasisIndex, RegisterLayout};
    use crate::state::make_uniform_input;

    #[test]
    fn forced_impossible_outcome() {
        let layout = RegisterLayout::new(2).unwrap();
        let s = StateVector::basis_state(layout, BasisIndex::new(1, 1, 0)).unwrap();
        let err = measure(&s, &Subsystem::K, MeasurementMode::Forced(3)).unwrap_err();
        assert!(matches!(err, Error::ImpossibleOutcome { outcome: 3, .. }));
        // out-of-range outcome value is just impossible
        assert!(measure(&s, &Subsystem::K, MeasurementMode::Forced(9)).is_err());
    }

    #[test]
    fn uniform_k_marginal() {
        let s = make_uniform_input(2).unwrap();
        let d = joint_outcome_distribution(&s, &[Subsystem::K]).unwrap();
        assert_eq!(d.len(), 4);
        assert!(d.values().all(|p| (p - 0.25).abs() < TOLERANCE));
    }

    #[test]
    fn overlap_rejected() {
        let s = make_uniform_input(2).unwrap();
        let sets = [Subsystem::K, Subsystem::Qubits(vec![1, 2])];
        assert!(matches!(
            joint_outcome_distribution(&s, &sets),
            Err(Error::OverlappingSubsets(1))
        ));
    }

    #[test]
    fn sampling_is_seeded() {
        let s = make_uniform_input(2).unwrap();
        for seed in 0..20 {
            let a = measure(&s, &Subsystem::X, MeasurementMode::Sampled(seed)).unwrap();
            let b = measure(&s, &Subsystem::X, MeasurementMode::Sampled(seed)).unwrap();
            assert_eq!(a, b);
        }
        let outcomes: std::collections::BTreeSet<u64> = (0..64)
            .map(|seed| {
                measure(&s, &Subsystem::X, MeasurementMode::Sampled(seed))
                    .unwrap()
                    .outcome
            })
            .collect();
        assert_eq!(outcomes.len(), 4);
    }

    #[test]
    fn post_state_vanishes_off_outcome() {
        let s = make_uniform_input(2).unwrap();
        let rec = measure(&s, &Subsystem::K, MeasurementMode::Forced(2)).unwrap();
        assert!((rec.probability - 0.25).abs() < TOLERANCE);
        for b in s.layout().basis_states() {
            let a = rec.post_state.amplitude(b).unwrap();
            if b.k != 2 {
                assert!(a.norm() <= TOLERANCE);
            }
        }
        assert!((rec.post_state.norm() - 1.0).abs() < TOLERANCE);
    }
}
