use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use super::bareiss::bareiss_det;
use super::interp::det_interpolated;
use super::modular::det_mod;
use super::{GramError, GramMatrix};
use crate::polyring::{PrimeField, NVARS};
use crate::{FactoredPoly, Poly};

/// Largest side `det_exact` accepts by default.
pub const DEFAULT_EXACT_CAP: usize = 70;

/// Above this side, fraction-free elimination loses to interpolation.
const BAREISS_MAX_SIDE: usize = 12;

pub fn det_exact(g: &GramMatrix) -> Result<Poly, GramError> {
    det_exact_with_cap(g, DEFAULT_EXACT_CAP)
}

pub fn det_exact_with_cap(g: &GramMatrix, cap: usize) -> Result<Poly, GramError> {
    if g.side() > cap {
        return Err(GramError::CapExceeded {
            side: g.side(),
            cap,
        });
    }
    if g.side() <= BAREISS_MAX_SIDE {
        bareiss_det(g.to_poly_rows()).map_err(GramError::InternalNondivisibility)
    } else {
        det_interpolated(g)
    }
}

/// Numeric determinant of `g` at `point`.
pub fn det_mod_at(g: &GramMatrix, point: &[u64; NVARS], f: &PrimeField) -> u64 {
    let mut a = g.eval_mod(point, f);
    det_mod(&mut a, g.side(), f)
}

impl GramMatrix {
    /// Upper bound on the total degree of the determinant: the sum over rows
    /// of the largest entry degree.
    pub fn det_degree_bound(&self) -> u32 {
        let n = self.side();
        (0..n)
            .map(|i| (0..n).map(|j| self.entry(i, j).degree()).max().unwrap_or(0))
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbabilisticVerdict {
    pub passed: bool,
    pub trials: u32,
    pub seed: u64,
    pub prime: u64,
    /// Schwartz–Zippel bound on a false agreement in a single trial.
    pub per_trial_bound: f64,
    /// First point where the two sides differ, with both values.
    pub counterexample: Option<([u64; NVARS], u64, u64)>,
}

/// `count` uniform points mod `field`, reproducible from `seed`.
pub fn random_points(seed: u64, count: u32, field: &PrimeField) -> Vec<[u64; NVARS]> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| std::array::from_fn(|_| field.random(&mut rng)))
        .collect()
}

/// Compares `det(g)` with `f` at `trials` seeded random points mod `prime`.
pub fn det_matches_formula_probabilistic(
    g: &GramMatrix,
    f: &FactoredPoly,
    trials: u32,
    seed: u64,
    field: &PrimeField,
) -> ProbabilisticVerdict {
    let degree = g.det_degree_bound().max(f.total_degree());
    let mut counterexample = None;
    for point in random_points(seed, trials.max(1), field) {
        let lhs = det_mod_at(g, &point, field);
        let rhs = f.eval_mod(&point, field);
        if lhs != rhs {
            counterexample = Some((point, lhs, rhs));
            break;
        }
    }
    ProbabilisticVerdict {
        passed: counterexample.is_none(),
        trials: trials.max(1),
        seed,
        prime: field.prime(),
        per_trial_bound: degree as f64 / field.prime() as f64,
        counterexample,
    }
}
