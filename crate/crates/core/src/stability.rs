//! Randomized checks of continuity and semicontinuity under perturbation of a
//! sublevel filtration.

use num_traits::Zero;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::diagram::{diagram_leq, type_a_diagram, type_b_diagram, DiagramGrid};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::homology::{
    component_labels, component_map, component_module, inclusion_interleaving,
    perturb_with_resolution, Coefficients, FilteredComplex, SublevelHomology,
};
use crate::metrics::{erode, erosion_distance};
use crate::module::{interleaving_failure, ConstructibleModule, InterleavingPair};

/// Which persistence module a filtration is turned into.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Functor {
    Homology {
        degree: usize,
        coeffs: Coefficients,
    },
    /// Connected components, valued in FinSet.
    Components,
}

/// Result of one perturbation trial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialOutcome {
    pub index: usize,
    pub seed: u64,
    /// Why the inclusion maps failed to interleave, if they did.
    pub interleaving_failure: Option<String>,
    /// Erosion distance of the type B diagrams; `None` without a B group.
    pub distance: Option<Option<Rational>>,
    /// `Dist_E(F_B, G_B) ≤ ε`; `None` without a B group.
    pub continuity: Option<bool>,
    /// `∇^ε F_A → G_A`; `None` when `ε ≥ ρ`.
    pub semicontinuity: Option<bool>,
}

impl TrialOutcome {
    pub fn passed(&self) -> bool {
        self.interleaving_failure.is_none()
            && self.continuity != Some(false)
            && self.semicontinuity != Some(false)
    }
}

/// `ρ = ¼ · min gap` between critical values; `None` (infinite) with fewer than two.
pub fn rho(critical: &[Rational]) -> Option<Rational> {
    critical
        .windows(2)
        .map(|w| &w[1] - &w[0])
        .min()
        .map(|g| g / Rational::from_integer(4.into()))
}

/// Seed of trial `index` derived from the experiment seed.
pub fn trial_seed(seed: u64, index: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng.next_u64()
}

/// A base filtration with its diagrams computed once.
pub struct Experiment {
    complex: FilteredComplex,
    functor: Functor,
    base: Built,
    /// Offsets are multiples of `ε / resolution`.
    pub resolution: u32,
}

struct Built {
    homology: Option<SublevelHomology>,
    module: ConstructibleModule,
    type_a: DiagramGrid,
    type_b: Option<DiagramGrid>,
}

fn build(complex: &FilteredComplex, functor: &Functor) -> Result<Built> {
    let (homology, module) = match functor {
        Functor::Homology { degree, coeffs } => {
            let h = SublevelHomology::new(complex, *degree, coeffs)?;
            let m = h.module()?;
            (Some(h), m)
        }
        Functor::Components => (None, component_module(complex)?),
    };
    let type_a = type_a_diagram(&module)?;
    let type_b = if module.category().is_abelian() {
        Some(type_b_diagram(&module)?)
    } else {
        None
    };
    Ok(Built {
        homology,
        module,
        type_a,
        type_b,
    })
}

/// Interleaving of component modules induced by inclusions of sublevel sets.
fn components_interleaving(
    f: &FilteredComplex,
    g: &FilteredComplex,
    mf: &ConstructibleModule,
    mg: &ConstructibleModule,
    epsilon: &Rational,
) -> Result<InterleavingPair> {
    let map = |src: &FilteredComplex, tgt: &FilteredComplex, r: &Rational| {
        component_map(
            &component_labels(src, r),
            &component_labels(tgt, &(r + epsilon)),
        )
    };
    InterleavingPair::from_fn(mf, mg, epsilon, |r| map(f, g, r), |r| map(g, f, r))
}

impl Experiment {
    pub fn new(complex: FilteredComplex, functor: Functor) -> Result<Self> {
        let base = build(&complex, &functor)?;
        Ok(Experiment {
            complex,
            functor,
            base,
            resolution: 4,
        })
    }

    pub fn module(&self) -> &ConstructibleModule {
        &self.base.module
    }

    pub fn type_a(&self) -> &DiagramGrid {
        &self.base.type_a
    }

    pub fn type_b(&self) -> Option<&DiagramGrid> {
        self.base.type_b.as_ref()
    }

    pub fn rho(&self) -> Option<Rational> {
        rho(self.complex.critical_values().as_slice())
    }

    /// Perturbs by `ε` with the given seed and checks both theorems.
    pub fn run_trial(&self, index: usize, seed: u64, epsilon: &Rational) -> Result<TrialOutcome> {
        let g_complex = perturb_with_resolution(&self.complex, epsilon, seed, self.resolution)?;
        let g = build(&g_complex, &self.functor)?;
        let pair = match (&self.base.homology, &g.homology) {
            (Some(hf), Some(hg)) => inclusion_interleaving(hf, hg, epsilon)?,
            _ => components_interleaving(
                &self.complex,
                &g_complex,
                &self.base.module,
                &g.module,
                epsilon,
            )?,
        };
        let failure = interleaving_failure(&self.base.module, &g.module, &pair)?;
        let (distance, continuity) = match (&self.base.type_b, &g.type_b) {
            (Some(fb), Some(gb)) => {
                let d = erosion_distance(fb, gb)?.distance;
                let ok = d.as_ref().is_some_and(|d| d <= epsilon);
                (Some(d), Some(ok))
            }
            _ => (None, None),
        };
        let below_rho = self.rho().is_none_or(|r| *epsilon < r);
        let semicontinuity = if below_rho {
            Some(diagram_leq(&erode(&self.base.type_a, epsilon)?, &g.type_a)?)
        } else {
            None
        };
        Ok(TrialOutcome {
            index,
            seed,
            interleaving_failure: failure,
            distance,
            continuity,
            semicontinuity,
        })
    }

    /// `trials` independent trials, run in parallel and returned in index order.
    pub fn run(&self, epsilon: &Rational, trials: usize, seed: u64) -> Result<Vec<TrialOutcome>> {
        if *epsilon < Rational::zero() {
            return Err(Error::InvalidArgument("negative perturbation".into()));
        }
        (0..trials)
            .into_par_iter()
            .map(|i| self.run_trial(i, trial_seed(seed, i), epsilon))
            .collect()
    }
}
