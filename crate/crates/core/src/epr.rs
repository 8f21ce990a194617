//! Two photons in a polarization singlet, with the spatial degree of
//! freedom reduced to a time tag. Polarization basis order is `|L R>`:
//! 00, 01, 10, 11 with 0 = horizontal.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measure::MeasurementMode;
use crate::state::TOLERANCE;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Epoch {
    /// t = 0, both photons at the common origin x_O.
    Emission,
    /// t = T, photons at x_L and x_R.
    Separated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Photon {
    L,
    R,
}

impl Photon {
    fn bit(self, index: usize) -> u8 {
        match self {
            Photon::L => (index >> 1 & 1) as u8,
            Photon::R => (index & 1) as u8,
        }
    }

    pub fn other(self) -> Photon {
        match self {
            Photon::L => Photon::R,
            Photon::R => Photon::L,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPhotonState {
    epoch: Epoch,
    polarization: [Complex64; 4],
}

impl TwoPhotonState {
    pub fn new(epoch: Epoch, polarization: [Complex64; 4]) -> Result<Self> {
        let norm = polarization.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > TOLERANCE {
            return Err(Error::NotNormalized(norm));
        }
        Ok(TwoPhotonState { epoch, polarization })
    }

    pub fn epoch(&self) -> Epoch {
        self.epoch
    }

    pub fn polarization(&self) -> &[Complex64; 4] {
        &self.polarization
    }

    pub fn norm(&self) -> f64 {
        self.polarization.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `(L position, R position)`.
    pub fn positions(&self) -> (&'static str, &'static str) {
        match self.epoch {
            Epoch::Emission => ("x_O", "x_O"),
            Epoch::Separated => ("x_L", "x_R"),
        }
    }

    pub fn max_abs_diff(&self, other: &TwoPhotonState) -> f64 {
        if self.epoch != other.epoch {
            return f64::INFINITY;
        }
        self.polarization
            .iter()
            .zip(&other.polarization)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn outcome_probabilities(&self, which: Photon) -> [f64; 2] {
        let mut p = [0.0; 2];
        for (i, a) in self.polarization.iter().enumerate() {
            p[which.bit(i) as usize] += a.norm_sqr();
        }
        p
    }
}

pub fn make_singlet() -> TwoPhotonState {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let z = Complex64::new(0.0, 0.0);
    TwoPhotonState {
        epoch: Epoch::Emission,
        polarization: [z, Complex64::new(h, 0.0), Complex64::new(-h, 0.0), z],
    }
}

/// Free flight from the origin to the two detectors; polarization is untouched.
pub fn evolve_to_t(state: &TwoPhotonState) -> Result<TwoPhotonState> {
    if state.epoch == Epoch::Separated {
        return Err(Error::AlreadyEvolved);
    }
    Ok(TwoPhotonState {
        epoch: Epoch::Separated,
        polarization: state.polarization,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhotonMeasurement {
    pub photon: Photon,
    pub outcome: u8,
    pub probability: f64,
    pub post_state: TwoPhotonState,
}

pub fn measure_photon(state: &TwoPhotonState, which: Photon, mode: MeasurementMode) -> Result<PhotonMeasurement> {
    let probs = state.outcome_probabilities(which);
    let outcome = match mode {
        MeasurementMode::Forced(o) => {
            let p = if o < 2 { probs[o as usize] } else { 0.0 };
            if p <= TOLERANCE {
                return Err(Error::ImpossibleOutcome {
                    outcome: o,
                    probability: p,
                });
            }
            o as u8
        }
        MeasurementMode::Sampled(seed) => {
            let u: f64 = ChaCha8Rng::seed_from_u64(seed).random();
            if probs[1] > TOLERANCE && (u >= probs[0] || probs[0] <= TOLERANCE) {
                1
            } else {
                0
            }
        }
    };
    let probability = probs[outcome as usize];
    let scale = probability.sqrt();
    let mut polarization = state.polarization;
    for (i, a) in polarization.iter_mut().enumerate() {
        *a = if which.bit(i) == outcome {
            *a / scale
        } else {
            Complex64::new(0.0, 0.0)
        };
    }
    Ok(PhotonMeasurement {
        photon: which,
        outcome,
        probability,
        post_state: TwoPhotonState {
            epoch: state.epoch,
            polarization,
        },
    })
}

/// Exact `(L, R)` outcome table when `first` is measured before the other photon.
pub fn joint_distribution(state: &TwoPhotonState, first: Photon) -> Result<BTreeMap<(u8, u8), f64>> {
    let mut table = BTreeMap::new();
    for o1 in 0..2u64 {
        let Ok(m1) = measure_photon(state, first, MeasurementMode::Forced(o1)) else {
            continue;
        };
        for o2 in 0..2u64 {
            let Ok(m2) = measure_photon(&m1.post_state, first.other(), MeasurementMode::Forced(o2)) else {
                continue;
            };
            let key = match first {
                Photon::L => (o1 as u8, o2 as u8),
                Photon::R => (o2 as u8, o1 as u8),
            };
            *table.entry(key).or_insert(0.0) += m1.probability * m2.probability;
        }
    }
    Ok(table)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BackdatingBranch {
    pub l_outcome: u8,
    pub probability: f64,
    /// Polarization after measuring at T versus after reducing at t = 0
    /// and then evolving.
    pub max_amplitude_diff: f64,
    pub pipelines_agree: bool,
    pub r_outcome: u8,
    pub r_probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BackdatingReport {
    pub branches: Vec<BackdatingBranch>,
    /// Joint (L, R) table measured at T, keyed `"LR"`.
    pub joint_at_t: BTreeMap<String, f64>,
    /// Joint table from reducing at t = 0 and evolving, weighted by the
    /// branch probability.
    pub joint_backdated: BTreeMap<String, f64>,
    pub equal_outcome_probability: f64,
}

impl BackdatingReport {
    pub fn passed(&self) -> bool {
        self.branches.iter().all(|b| b.pipelines_agree)
            && self.equal_outcome_probability == 0.0
            && self
                .joint_at_t
                .iter()
                .all(|(k, p)| self.joint_backdated.get(k).is_some_and(|q| (p - q).abs() <= TOLERANCE))
            && self.joint_at_t.len() == self.joint_backdated.len()
    }
}

/// Compares evolve-then-measure with reduce-at-origin-then-evolve for both
/// outcomes of the left photon.
pub fn backdating_equivalence_check() -> Result<BackdatingReport> {
    let origin = make_singlet();
    let at_t = evolve_to_t(&origin)?;

    let mut branches = Vec::new();
    let mut joint_backdated = BTreeMap::new();
    for b in 0..2u64 {
        let forward = measure_photon(&at_t, Photon::L, MeasurementMode::Forced(b))?;
        let reduced = measure_photon(&origin, Photon::L, MeasurementMode::Forced(b))?;
        let backdated = evolve_to_t(&reduced.post_state)?;
        let diff = forward.post_state.max_abs_diff(&backdated);

        let r = measure_photon(&backdated, Photon::R, MeasurementMode::Forced(1 - b))?;
        for ((l, rr), p) in joint_distribution(&backdated, Photon::L)? {
            *joint_backdated.entry(format!("{l}{rr}")).or_insert(0.0) += reduced.probability * p;
        }
        branches.push(BackdatingBranch {
            l_outcome: b as u8,
            probability: forward.probability,
            max_amplitude_diff: diff,
            pipelines_agree: diff <= TOLERANCE,
            r_outcome: r.outcome,
            r_probability: r.probability,
        });
    }

    let joint = joint_distribution(&at_t, Photon::L)?;
    let equal_outcome_probability = joint
        .iter()
        .filter(|((l, r), _)| l == r)
        .fold(0.0, |acc, (_, p)| acc + p);
    Ok(BackdatingReport {
        branches,
        joint_at_t: joint.into_iter().map(|((l, r), p)| (format!("{l}{r}"), p)).collect(),
        joint_backdated,
        equal_outcome_probability,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singlet_amplitudes() {
        let s = make_singlet();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(s.polarization()[0], Complex64::new(0.0, 0.0));
        assert!((s.polarization()[1].re - h).abs() < 1e-15);
        assert!((s.polarization()[2].re + h).abs() < 1e-15);
        assert!((s.norm() - 1.0).abs() < TOLERANCE);
        assert_eq!(s.positions(), ("x_O", "x_O"));
    }

    #[test]
    fn evolution_only_moves_the_tag() {
        let s = make_singlet();
        let t = evolve_to_t(&s).unwrap();
        assert_eq!(t.polarization(), s.polarization());
        assert_eq!(t.positions(), ("x_L", "x_R"));
        assert_eq!(evolve_to_t(&t), Err(Error::AlreadyEvolved));
    }

    #[test]
    fn left_zero_forces_right_one() {
        let t = evolve_to_t(&make_singlet()).unwrap();
        let m = measure_photon(&t, Photon::L, MeasurementMode::Forced(0)).unwrap();
        assert!((m.probability - 0.5).abs() < TOLERANCE);
        assert!((m.post_state.polarization()[1].re - 1.0).abs() < TOLERANCE);
        let r = measure_photon(&m.post_state, Photon::R, MeasurementMode::Forced(1)).unwrap();
        assert!((r.probability - 1.0).abs() < TOLERANCE);
        assert!(measure_photon(&m.post_state, Photon::R, MeasurementMode::Forced(0)).is_err());
    }

    #[test]
    fn seeded_photon_sampling() {
        let t = evolve_to_t(&make_singlet()).unwrap();
        let outcomes: Vec<u8> = (0..32)
            .map(|s| {
                measure_photon(&t, Photon::L, MeasurementMode::Sampled(s))
                    .unwrap()
                    .outcome
            })
            .collect();
        let again: Vec<u8> = (0..32)
            .map(|s| {
                measure_photon(&t, Photon::L, MeasurementMode::Sampled(s))
                    .unwrap()
                    .outcome
            })
            .collect();
        assert_eq!(outcomes, again);
        assert!(outcomes.contains(&0) && outcomes.contains(&1));
    }

    #[test]
    fn backdating_report_passes() {
        let r = backdating_equivalence_check().unwrap();
        assert!(r.passed());
        assert_eq!(r.branches.len(), 2);
        assert_eq!(r.branches[0].r_outcome, 1);
        assert_eq!(r.branches[1].r_outcome, 0);
    }
}
