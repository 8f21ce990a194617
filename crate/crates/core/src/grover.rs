//! The search algorithm: the reversible delta oracle, inversion about the
//! mean on X, query counting and the composed pipeline.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::layout::{BasisIndex, RegisterLayout};
use crate::state::{make_uniform_input, BasisMap, Sign, StateVector, TOLERANCE};

/// The black box: Kronecker delta of the oracle's choice and the query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleSpec {
    n: usize,
}

impl OracleSpec {
    pub fn new(n: usize) -> Result<Self> {
        RegisterLayout::new(n)?;
        Ok(OracleSpec { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn delta(&self, k: u64, x: u64) -> u8 {
        u8::from(k == x)
    }

    /// `|k, x, v> -> |k, x, v xor delta(k, x)>`.
    pub fn basis_map(&self) -> BasisMap {
        let layout = RegisterLayout::new(self.n).expect("validated in new");
        BasisMap::new(layout, |b| {
            (
                BasisIndex {
                    v: b.v ^ self.delta(b.k, b.x),
                    ..b
                },
                Sign::Plus,
            )
        })
        .expect("v xor delta is a bijection")
    }
}

/// Number of oracle evaluations so far.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct QueryCounter {
    count: u64,
}

impl QueryCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    fn tick(&mut self) {
        self.count += 1;
    }
}

pub fn oracle_apply(state: &StateVector, counter: &mut QueryCounter) -> Result<StateVector> {
    let oracle = OracleSpec::new(state.layout().n())?;
    let out = oracle.basis_map().apply(state)?;
    counter.tick();
    Ok(out)
}

/// Inversion about the mean on X, `2|s><s| - I`, for every fixed (k, v).
pub fn diffusion_apply(state: &StateVector) -> Result<StateVector> {
    let layout = state.layout();
    let amplitudes = diffuse_x(layout, state.amplitudes());
    StateVector::normalized(layout, amplitudes)
}

fn diffuse_x(layout: RegisterLayout, amps: &[Complex64]) -> Vec<Complex64> {
    let n = layout.n();
    let xs = layout.register_values() as usize;
    let mut out = amps.to_vec();
    for k in 0..xs {
        for v in 0..2 {
            let at = |x: usize| (k << (n + 1)) | (x << 1) | v;
            let mean = (0..xs).map(|x| amps[at(x)]).sum::<Complex64>() / xs as f64;
            for x in 0..xs {
                out[at(x)] = mean * 2.0 - amps[at(x)];
            }
        }
    }
    out
}

/// Standard iteration count `floor(pi/4 * sqrt(N))`; 1 for N = 2 and N = 4.
pub fn grover_iterations(n: usize) -> usize {
    let big_n = (1u64 << n) as f64;
    ((std::f64::consts::FRAC_PI_4 * big_n.sqrt()).floor() as usize).max(1)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Step {
    Oracle,
    Diffusion,
    Map(BasisMap),
}

/// An ordered list of unitary steps over a fixed layout.
#[derive(Debug, Clone, PartialEq)]
pub struct Pipeline {
    layout: RegisterLayout,
    steps: Vec<Step>,
}

impl Pipeline {
    pub fn new(layout: RegisterLayout, steps: Vec<Step>) -> Result<Self> {
        for step in &steps {
            if let Step::Map(m) = step {
                if m.layout() != layout {
                    return Err(Error::LayoutMismatch {
                        expected: layout.n(),
                        found: m.layout().n(),
                    });
                }
            }
        }
        Ok(Pipeline { layout, steps })
    }

    /// `iterations` rounds of oracle then diffusion.
    pub fn grover(n: usize, iterations: usize) -> Result<Self> {
        let layout = RegisterLayout::new(n)?;
        let steps = (0..iterations).flat_map(|_| [Step::Oracle, Step::Diffusion]).collect();
        Pipeline::new(layout, steps)
    }

    pub fn layout(&self) -> RegisterLayout {
        self.layout
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn apply(&self, state: &StateVector, counter: &mut QueryCounter) -> Result<StateVector> {
        if state.layout() != self.layout {
            return Err(Error::LayoutMismatch {
                expected: self.layout.n(),
                found: state.layout().n(),
            });
        }
        self.steps.iter().try_fold(state.clone(), |s, step| match step {
            Step::Oracle => oracle_apply(&s, counter),
            Step::Diffusion => diffusion_apply(&s),
            Step::Map(m) => m.apply(&s),
        })
    }

    /// True iff no step moves any sharp state out of its k block.
    pub fn preserves_k(&self) -> bool {
        k_register_invariance_check(self).holds
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvarianceReport {
    pub holds: bool,
    pub basis_states_checked: usize,
    /// First `(step, input)` that leaks amplitude into another k value.
    pub first_violation: Option<(usize, BasisIndex)>,
}

/// Feeds every sharp basis state through every step and checks the image
/// stays inside the input's k value.
pub fn k_register_invariance_check(pipeline: &Pipeline) -> InvarianceReport {
    let layout = pipeline.layout;
    let mut checked = 0;
    for (si, step) in pipeline.steps.iter().enumerate() {
        for b in layout.basis_states() {
            checked += 1;
            let input = StateVector::basis_state(layout, b).expect("basis state of own layout");
            let image = match step {
                Step::Oracle => oracle_apply(&input, &mut QueryCounter::new()),
                Step::Diffusion => diffusion_apply(&input),
                Step::Map(m) => m.apply(&input),
            }
            .expect("step over own layout");
            let leaks = image
                .amplitudes()
                .iter()
                .enumerate()
                .any(|(i, a)| a.norm() > TOLERANCE && layout.basis(i).k != b.k);
            if leaks {
                return InvarianceReport {
                    holds: false,
                    basis_states_checked: checked,
                    first_violation: Some((si, b)),
                };
            }
        }
    }
    InvarianceReport {
        holds: true,
        basis_states_checked: checked,
        first_violation: None,
    }
}

pub fn run_grover(n: usize, iterations: usize, counter: &mut QueryCounter) -> Result<StateVector> {
    if iterations == 0 {
        return Err(Error::ZeroIterations);
    }
    Pipeline::grover(n, iterations)?.apply(&make_uniform_input(n)?, counter)
}
