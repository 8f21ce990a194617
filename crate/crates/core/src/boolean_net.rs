//! The N = 4 search problem as a Boolean network:
//! `delta = AND(y0, y1)`, `y0 = XNOR(k0, x0)`, `y1 = XNOR(k1, x1)`, `delta = 1`.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::layout::Subsystem;
use crate::measure::joint_outcome_distribution;
use crate::queries::{factorial, nth_permutation};
use crate::state::{StateVector, TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NetworkAssignment {
    pub k0: u8,
    pub k1: u8,
    pub x0: u8,
    pub x1: u8,
    pub y0: u8,
    pub y1: u8,
    pub delta: u8,
}

impl NetworkAssignment {
    pub fn k(&self) -> u64 {
        u64::from(self.k0 << 1 | self.k1)
    }

    pub fn x(&self) -> u64 {
        u64::from(self.x0 << 1 | self.x1)
    }

    pub fn is_consistent(&self) -> bool {
        self.y0 == xnor(self.k0, self.x0) && self.y1 == xnor(self.k1, self.x1) && self.delta == (self.y0 & self.y1)
    }
}

#[inline]
fn xnor(a: u8, b: u8) -> u8 {
    1 ^ (a ^ b)
}

pub fn eval_network(k0: u8, k1: u8, x0: u8, x1: u8) -> NetworkAssignment {
    let y0 = xnor(k0 & 1, x0 & 1);
    let y1 = xnor(k1 & 1, x1 & 1);
    NetworkAssignment {
        k0: k0 & 1,
        k1: k1 & 1,
        x0: x0 & 1,
        x1: x1 & 1,
        y0,
        y1,
        delta: y0 & y1,
    }
}

/// Evaluates the network on packed two-bit register values.
pub fn eval_packed(k: u64, x: u64) -> NetworkAssignment {
    eval_network((k >> 1 & 1) as u8, (k & 1) as u8, (x >> 1 & 1) as u8, (x & 1) as u8)
}

/// AND over `n` XNOR gates, the same network for `n`-bit registers.
pub fn eval_network_n(n: usize, k: u64, x: u64) -> u8 {
    (0..n).fold(1, |acc, i| acc & xnor((k >> i & 1) as u8, (x >> i & 1) as u8))
}

/// Input bits pinned before solving; `None` leaves the bit free.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialAssignment {
    pub k0: Option<u8>,
    pub k1: Option<u8>,
    pub x0: Option<u8>,
    pub x1: Option<u8>,
}

impl PartialAssignment {
    pub fn with_k(k: u64) -> Self {
        PartialAssignment {
            k0: Some((k >> 1 & 1) as u8),
            k1: Some((k & 1) as u8),
            ..Default::default()
        }
    }

    fn admits(&self, a: &NetworkAssignment) -> bool {
        let ok = |fixed: Option<u8>, v: u8| fixed.is_none_or(|f| f == v);
        ok(self.k0, a.k0) && ok(self.k1, a.k1) && ok(self.x0, a.x0) && ok(self.x1, a.x1)
    }
}

/// Every completion of `fixed` with `delta = 1`, ordered by `(k, x)`.
pub fn satisfying_assignments(fixed: &PartialAssignment) -> Vec<NetworkAssignment> {
    (0..16u64)
        .map(|kx| eval_packed(kx >> 2, kx & 3))
        .filter(|a| a.delta == 1 && fixed.admits(a))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialCount {
    pub expected: Ratio<u64>,
    pub worst: u64,
}

fn trials_for(k: u64, order: &[u64]) -> u64 {
    let mut trials = 0;
    for (i, &x) in order.iter().enumerate() {
        if i + 1 == order.len() {
            break;
        }
        trials += 1;
        if eval_packed(k, x).delta == 1 {
            break;
        }
    }
    trials
}

/// One trial is one evaluation of all three gates; after three failures the
/// last x is inferred. Without `fixed_k` the expectation is over uniform k.
pub fn classical_trial_count(fixed_k: Option<u64>, order: &[u64]) -> Result<TrialCount> {
    let mut seen = [false; 4];
    if order.len() != 4
        || !order
            .iter()
            .all(|&x| x < 4 && !std::mem::replace(&mut seen[x as usize], true))
    {
        return Err(Error::NotAPermutation(4));
    }
    let ks: Vec<u64> = match fixed_k {
        Some(k) if k < 4 => vec![k],
        Some(k) => {
            return Err(Error::Bitstring {
                text: k.to_string(),
                reason: "k must be a two-bit value",
            })
        }
        None => (0..4).collect(),
    };
    let counts: Vec<u64> = ks.iter().map(|&k| trials_for(k, order)).collect();
    Ok(TrialCount {
        expected: Ratio::new(counts.iter().sum(), counts.len() as u64),
        worst: counts.into_iter().max().unwrap_or(0),
    })
}

/// Mean of the expected trial count over all 24 trial orders.
pub fn average_over_orders(fixed_k: Option<u64>) -> Result<Ratio<u64>> {
    let orders = factorial(4);
    let mut total = Ratio::from_integer(0u64);
    for idx in 0..orders {
        total += classical_trial_count(fixed_k, &nth_permutation(4, idx))?.expected;
    }
    Ok(total / orders as u64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SatisfactionReport {
    /// Probability that the measured (k, x) satisfies the network.
    pub satisfying_mass: f64,
    /// `(k, x, probability)` for every outcome with nonzero probability.
    pub support: Vec<(u64, u64, f64)>,
}

impl SatisfactionReport {
    pub fn support_size(&self) -> usize {
        self.support.len()
    }

    /// Single outcome with probability 1.
    pub fn is_definite(&self) -> bool {
        self.support.len() == 1 && (self.support[0].2 - 1.0).abs() <= TOLERANCE
    }
}

pub fn verify_quantum_satisfaction(state: &StateVector) -> Result<SatisfactionReport> {
    if state.layout().n() != 2 {
        return Err(Error::LayoutMismatch {
            expected: 2,
            found: state.layout().n(),
        });
    }
    let table = joint_outcome_distribution(state, &[Subsystem::K, Subsystem::X])?;
    let support: Vec<(u64, u64, f64)> = table.iter().map(|(key, &p)| (key[0], key[1], p)).collect();
    let satisfying_mass = support
        .iter()
        .filter(|(k, x, _)| eval_packed(*k, *x).delta == 1)
        .map(|(_, _, p)| p)
        .sum();
    Ok(SatisfactionReport {
        satisfying_mass,
        support,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grover::OracleSpec;

    #[test]
    fn gate_values() {
        let a = eval_network(0, 1, 0, 1);
        assert_eq!((a.y0, a.y1, a.delta), (1, 1, 1));
        let a = eval_network(0, 1, 0, 0);
        assert_eq!((a.y0, a.y1, a.delta), (1, 0, 0));
        let hits = (0..16u64).filter(|&kx| eval_packed(kx >> 2, kx & 3).delta == 1).count();
        assert_eq!(hits, 4);
    }

    #[test]
    fn matches_oracle_and_general_form() {
        let o = OracleSpec::new(2).unwrap();
        for k in 0..4 {
            for x in 0..4 {
                let a = eval_packed(k, x);
                assert!(a.is_consistent());
                assert_eq!(a.delta, o.delta(k, x));
                assert_eq!(eval_network_n(2, k, x), a.delta);
            }
        }
        for k in 0..8 {
            for x in 0..8 {
                assert_eq!(eval_network_n(3, k, x), u8::from(k == x));
            }
        }
    }

    #[test]
    fn satisfying_sets() {
        let all = satisfying_assignments(&PartialAssignment::default());
        assert_eq!(all.len(), 4);
        assert!(all.iter().all(|a| a.k() == a.x()));

        let one = satisfying_assignments(&PartialAssignment::with_k(0b01));
        assert_eq!(one.len(), 1);
        assert_eq!((one[0].x0, one[0].x1), (0, 1));

        let none = satisfying_assignments(&PartialAssignment {
            x0: Some(1),
            ..PartialAssignment::with_k(0b01)
        });
        assert!(none.is_empty());
    }

    #[test]
    fn trial_counts() {
        let t = classical_trial_count(None, &[0, 1, 2, 3]).unwrap();
        assert_eq!((t.expected, t.worst), (Ratio::new(9, 4), 3));
        let t = classical_trial_count(Some(0b01), &[1, 0, 2, 3]).unwrap();
        assert_eq!((t.expected, t.worst), (Ratio::from_integer(1), 1));
        assert_eq!(average_over_orders(Some(0b01)).unwrap(), Ratio::new(9, 4));
        assert_eq!(average_over_orders(None).unwrap(), Ratio::new(9, 4));
        assert!(classical_trial_count(None, &[0, 1, 2]).is_err());
        assert!(classical_trial_count(Some(4), &[0, 1, 2, 3]).is_err());
    }

    #[test]
    fn fixing_k_keeps_counts_in_range() {
        for k in 0..4 {
            for idx in 0..24 {
                let t = classical_trial_count(Some(k), &nth_permutation(4, idx)).unwrap();
                assert!((1..=3).contains(&t.worst));
            }
        }
    }
}
