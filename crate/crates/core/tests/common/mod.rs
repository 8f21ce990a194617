//! Hand-written reference states for the four-drawer run, built from their
//! closed forms and independent of the library's pipeline.
#![allow(dead_code)]

use advinfo_core::{RegisterLayout, StateVector};
use num_complex::Complex64;

const S2: f64 = std::f64::consts::SQRT_2;

fn build(f: impl Fn(u64, u64, u8) -> f64) -> StateVector {
    let layout = RegisterLayout::new(2).unwrap();
    let mut amps = Vec::with_capacity(32);
    // k, then x, then v; k most significant
    for k in 0..4u64 {
        for x in 0..4u64 {
            for v in 0..2u8 {
                amps.push(Complex64::new(f(k, x, v), 0.0));
            }
        }
    }
    StateVector::from_amplitudes(layout, amps).unwrap()
}

fn v_sign(v: u8) -> f64 {
    if v == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Even superposition, V in the minus state.
pub fn input() -> StateVector {
    build(|_, _, v| v_sign(v) / (4.0 * S2))
}

/// After one delta evaluation: the k = x terms are negated.
pub fn second_stage() -> StateVector {
    build(|k, x, v| if k == x { -1.0 } else { 1.0 } * v_sign(v) / (4.0 * S2))
}

/// After the X rotation: K and X perfectly correlated.
pub fn output() -> StateVector {
    build(|k, x, v| if k == x { v_sign(v) / (2.0 * S2) } else { 0.0 })
}

/// Output reduced on the oracle's choice `k`.
pub fn reduced(k0: u64) -> StateVector {
    build(|k, x, v| if k == k0 && x == k0 { v_sign(v) / S2 } else { 0.0 })
}
