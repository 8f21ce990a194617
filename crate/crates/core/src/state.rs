//! Dense state vectors over the (K, X, V) registers and signed basis maps.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bits::format_bits;
use crate::error::{Error, Result};
use crate::layout::{BasisIndex, RegisterLayout};

/// Global equality tolerance for amplitudes and probabilities.
pub const TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    layout: RegisterLayout,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Wraps amplitudes that are already normalized.
    pub fn from_amplitudes(layout: RegisterLayout, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != layout.dim() {
            return Err(Error::Length {
                expected: layout.dim(),
                found: amplitudes.len(),
            });
        }
        let norm = l2_norm(&amplitudes);
        if (norm - 1.0).abs() > TOLERANCE {
            return Err(Error::NotNormalized(norm));
        }
        Ok(StateVector { layout, amplitudes })
    }

    /// Normalizes an arbitrary nonzero amplitude vector.
    pub fn normalized(layout: RegisterLayout, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != layout.dim() {
            return Err(Error::Length {
                expected: layout.dim(),
                found: amplitudes.len(),
            });
        }
        let norm = l2_norm(&amplitudes);
        if norm <= TOLERANCE {
            return Err(Error::DegenerateSum);
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Ok(StateVector { layout, amplitudes })
    }

    pub fn basis_state(layout: RegisterLayout, b: BasisIndex) -> Result<Self> {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); layout.dim()];
        amplitudes[layout.index(b)?] = Complex64::new(1.0, 0.0);
        Ok(StateVector { layout, amplitudes })
    }

    pub fn layout(&self) -> RegisterLayout {
        self.layout
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, b: BasisIndex) -> Result<Complex64> {
        Ok(self.amplitudes[self.layout.index(b)?])
    }

    pub fn norm(&self) -> f64 {
        l2_norm(&self.amplitudes)
    }

    /// Largest amplitude-wise modulus difference; infinite on layout mismatch.
    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        if self.layout != other.layout {
            return f64::INFINITY;
        }
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &StateVector, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    /// True when V factors out as `(|0> - |1>)/sqrt(2)`, i.e. every
    /// `amp(k, x, 1) == -amp(k, x, 0)`.
    pub fn has_minus_v_factor(&self, tol: f64) -> bool {
        self.amplitudes
            .chunks_exact(2)
            .all(|pair| (pair[0] + pair[1]).norm() <= tol)
    }

    /// Nonzero amplitudes as `(k, x, v, re, im)` records.
    pub fn records(&self) -> Vec<StateRecord> {
        let n = self.layout.n();
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > TOLERANCE)
            .map(|(i, a)| {
                let b = self.layout.basis(i);
                StateRecord {
                    k: format_bits(b.k, n),
                    x: format_bits(b.x, n),
                    v: b.v,
                    re: a.re,
                    im: a.im,
                }
            })
            .collect()
    }

    pub(crate) fn from_parts_unchecked(layout: RegisterLayout, amplitudes: Vec<Complex64>) -> Self {
        debug_assert!((l2_norm(&amplitudes) - 1.0).abs() <= 1e-9);
        StateVector { layout, amplitudes }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateRecord {
    pub k: String,
    pub x: String,
    pub v: u8,
    pub re: f64,
    pub im: f64,
}

fn l2_norm(amps: &[Complex64]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// Even superposition over K and X with V in `(|0> - |1>)/sqrt(2)`:
/// every `(k, x, v)` has amplitude `(-1)^v / (2^n sqrt(2))`.
pub fn make_uniform_input(n: usize) -> Result<StateVector> {
    let layout = RegisterLayout::new(n)?;
    let scale = 1.0 / ((1u64 << n) as f64 * std::f64::consts::SQRT_2);
    let amplitudes = (0..layout.dim())
        .map(|i| {
            let sign = if i & 1 == 1 { -1.0 } else { 1.0 };
            Complex64::new(sign * scale, 0.0)
        })
        .collect();
    Ok(StateVector { layout, amplitudes })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// A signed permutation of the computational basis: `|b> -> sign(b) |f(b)>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisMap {
    layout: RegisterLayout,
    // targets[i] = (image of flat index i, phase)
    targets: Vec<(usize, Sign)>,
}

impl BasisMap {
    pub fn new<F>(layout: RegisterLayout, f: F) -> Result<Self>
    where
        F: Fn(BasisIndex) -> (BasisIndex, Sign),
    {
        let mut hit = vec![false; layout.dim()];
        let mut targets = Vec::with_capacity(layout.dim());
        for i in 0..layout.dim() {
            let (image, sign) = f(layout.basis(i));
            let j = layout.index(image)?;
            if std::mem::replace(&mut hit[j], true) {
                return Err(Error::NotBijective(j));
            }
            targets.push((j, sign));
        }
        Ok(BasisMap { layout, targets })
    }

    pub fn identity(layout: RegisterLayout) -> Self {
        BasisMap {
            layout,
            targets: (0..layout.dim()).map(|i| (i, Sign::Plus)).collect(),
        }
    }

    pub fn layout(&self) -> RegisterLayout {
        self.layout
    }

    pub fn image(&self, b: BasisIndex) -> Result<(BasisIndex, Sign)> {
        let (j, s) = self.targets[self.layout.index(b)?];
        Ok((self.layout.basis(j), s))
    }

    /// Applies the map to a raw amplitude vector (no normalization
    /// requirement), which makes linearity directly checkable.
    pub fn apply_raw(&self, amps: &[Complex64]) -> Result<Vec<Complex64>> {
        if amps.len() != self.layout.dim() {
            return Err(Error::Length {
                expected: self.layout.dim(),
                found: amps.len(),
            });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); amps.len()];
        for (a, &(j, s)) in amps.iter().zip(&self.targets) {
            out[j] = a * s.value();
        }
        Ok(out)
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if state.layout != self.layout {
            return Err(Error::LayoutMismatch {
                expected: self.layout.n(),
                found: state.layout.n(),
            });
        }
        let amplitudes = self.apply_raw(&state.amplitudes)?;
        Ok(StateVector::from_parts_unchecked(self.layout, amplitudes))
    }
}

pub fn apply_basis_map(state: &StateVector, map: &BasisMap) -> Result<StateVector> {
    map.apply(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    #[test]
    fn uniform_input_amplitudes() {
        let s = make_uniform_input(2).unwrap();
        let a = 1.0 / (4.0 * SQRT_2);
        assert!((s.amplitude(BasisIndex::new(0, 0, 0)).unwrap().re - a).abs() < 1e-15);
        assert!((s.amplitude(BasisIndex::new(0, 0, 1)).unwrap().re + a).abs() < 1e-15);
        for b in s.layout().basis_states() {
            assert!((s.amplitude(b).unwrap().norm() - a).abs() < 1e-15);
        }
        assert!((s.norm() - 1.0).abs() < TOLERANCE);

        let s1 = make_uniform_input(1).unwrap();
        let a1 = s1.amplitude(BasisIndex::new(0, 0, 0)).unwrap();
        assert!((a1.re - 1.0 / (2.0 * SQRT_2)).abs() < 1e-15);
        assert!((s1.norm() - 1.0).abs() < TOLERANCE);
        assert!(s1.has_minus_v_factor(TOLERANCE));
    }

    #[test]
    fn uniform_input_size_error() {
        assert!(matches!(make_uniform_input(0), Err(Error::Size { .. })));
        assert!(matches!(make_uniform_input(40), Err(Error::Size { .. })));
    }

    #[test]
    fn identity_and_involution() {
        let layout = RegisterLayout::new(2).unwrap();
        let s = make_uniform_input(2).unwrap();
        let id = BasisMap::identity(layout);
        assert_eq!(id.apply(&s).unwrap(), s);
        let flip_v = BasisMap::new(layout, |b| (BasisIndex { v: b.v ^ 1, ..b }, Sign::Plus)).unwrap();
        let once = flip_v.apply(&s).unwrap();
        assert!(!once.approx_eq(&s, TOLERANCE));
        assert!(flip_v.apply(&once).unwrap().approx_eq(&s, 0.0));
    }

    #[test]
    fn non_bijection_rejected() {
        let layout = RegisterLayout::new(1).unwrap();
        let collapse = BasisMap::new(layout, |b| (BasisIndex { v: 0, ..b }, Sign::Plus));
        assert!(matches!(collapse, Err(Error::NotBijective(_))));
    }

    #[test]
    fn constructors_validate() {
        let layout = RegisterLayout::new(1).unwrap();
        let z = Complex64::new(0.0, 0.0);
        assert!(matches!(
            StateVector::from_amplitudes(layout, vec![z; 8]),
            Err(Error::NotNormalized(_))
        ));
        assert!(matches!(
            StateVector::normalized(layout, vec![z; 8]),
            Err(Error::DegenerateSum)
        ));
        assert!(matches!(
            StateVector::normalized(layout, vec![z; 7]),
            Err(Error::Length { .. })
        ));
    }

    #[test]
    fn records_skip_zero_amplitudes() {
        let layout = RegisterLayout::new(2).unwrap();
        let s = StateVector::basis_state(layout, BasisIndex::new(1, 1, 1)).unwrap();
        let r = s.records();
        assert_eq!(r.len(), 1);
        assert_eq!((r[0].k.as_str(), r[0].x.as_str(), r[0].v), ("01", "01", 1));
    }
}
