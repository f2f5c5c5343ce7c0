use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use super::modular::rank_mod;
use super::GramMatrix;
use crate::diagrams::binomial;
use crate::polyring::{chebyshev_t, PrimeField, Var, NVARS};
use crate::Poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RankVerdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub matrix: String,
    pub substitution: String,
    pub prime: u64,
    pub seed: u64,
    pub trials: u32,
    pub side: usize,
    pub ranks: Vec<usize>,
    /// Maximum rank over the trials: a lower bound on the generic rank.
    pub observed_rank: usize,
    pub observed_nullity: usize,
    pub claimed_nullity: usize,
    /// Some trial hit the claimed nullity exactly.
    pub tight: bool,
    pub verdict: RankVerdict,
}

/// `(-1)^(k-1) T_k(d)`.
pub fn chebyshev_substituent(k: u32) -> Poly {
    let t = chebyshev_t(k);
    if k % 2 == 0 {
        t.neg()
    } else {
        t
    }
}

/// Rank of `g` with `z := (-1)^(k-1) T_k(d)` at random values of the other
/// variables, against the claimed nullity `C(2n, n-k)`.
pub fn rank_at_substitution(
    g: &GramMatrix,
    k: u32,
    trials: u32,
    seed: u64,
    field: &PrimeField,
) -> RankReport {
    let n = g.family().n;
    let s = chebyshev_substituent(k);
    let claimed = if k <= n {
        binomial(2 * n as u64, (n - k) as u64) as usize
    } else {
        0
    };
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let side = g.side();
    let ranks: Vec<usize> = (0..trials)
        .map(|_| {
            let mut point: [u64; NVARS] = std::array::from_fn(|_| field.random(&mut rng));
            // evaluating the substituted entries equals evaluating the
            // originals at z = s(d)
            point[Var::Z.index()] = s.eval_mod(&point, field.prime());
            let mut a = g.eval_mod(&point, field);
            rank_mod(&mut a, side, side, field)
        })
        .collect();
    let observed_rank = ranks.iter().copied().max().unwrap_or(0);
    let observed_nullity = side - observed_rank;
    let verdict = if ranks.is_empty() {
        RankVerdict::Inconclusive
    } else if observed_nullity >= claimed {
        RankVerdict::Pass
    } else {
        RankVerdict::Fail
    };
    RankReport {
        matrix: g.family().to_string(),
        substitution: format!("z := {s}"),
        prime: field.prime(),
        seed,
        trials,
        side,
        tight: ranks.iter().any(|&r| side - r == claimed),
        ranks,
        observed_rank,
        observed_nullity,
        claimed_nullity: claimed,
        verdict,
    }
}
