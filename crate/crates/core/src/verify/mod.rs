//! Closed product formulas for Gram determinants, and checks of computed
//! determinants against them.
//!
//! Equality can be checked exactly or by random evaluation. Divisibility is
//! exact only: evaluation cannot certify that one polynomial divides another.

mod formulas;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagrams::{BasisFamily, FamilyTag};
use crate::gram::{
    build_gram, det_exact_with_cap, det_matches_formula_probabilistic, rank_at_substitution, GramError,
    GramMatrix, RankReport, RankVerdict, DEFAULT_EXACT_CAP,
};
use crate::polyring::{Division, PolyError, PrimeField, NVARS};
use crate::{FactoredPoly, Poly, DEFAULT_PRIME};

pub use formulas::formula;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("{tag} is not defined for n = {n}")]
    UnsupportedN { tag: FormulaTag, n: u32 },
    #[error("{tag} does not apply to the {family} family")]
    Incompatible { tag: FormulaTag, family: FamilyTag },
    #[error("{tag} is a divisibility statement and has no equality check")]
    NotAnEquality { tag: FormulaTag },
    #[error("divisibility is only checked in exact mode")]
    DivisibilityNeedsExact,
    #[error("{0} is not a usable prime (need a prime above 2^30)")]
    BadPrime(u64),
    #[error("k = {k} outside 1..={n}")]
    BadK { n: u32, k: u32 },
    #[error(transparent)]
    Gram(#[from] GramError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl From<crate::diagrams::DiagramError> for VerifyError {
    fn from(e: crate::diagrams::DiagramError) -> Self {
        VerifyError::Gram(e.into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormulaTag {
    TheoremB,
    ChenMb,
    ConjMb1,
    Prop28,
    Prop29,
    Prop210,
    Prop33,
    Thm317Factor,
}

impl FormulaTag {
    pub const ALL: [FormulaTag; 8] = [
        FormulaTag::TheoremB,
        FormulaTag::ChenMb,
        FormulaTag::ConjMb1,
        FormulaTag::Prop28,
        FormulaTag::Prop29,
        FormulaTag::Prop210,
        FormulaTag::Prop33,
        FormulaTag::Thm317Factor,
    ];

    /// Command-line name.
    pub fn name(self) -> &'static str {
        match self {
            FormulaTag::TheoremB => "thm-b",
            FormulaTag::ChenMb => "chen-mb",
            FormulaTag::ConjMb1 => "conj-mb1",
            FormulaTag::Prop28 => "prop-2.8",
            FormulaTag::Prop29 => "prop-2.9",
            FormulaTag::Prop210 => "prop-2.10",
            FormulaTag::Prop33 => "prop-3.3",
            FormulaTag::Thm317Factor => "thm-3.17",
        }
    }

    /// Whether the statement is an equality (otherwise a divisibility).
    pub fn is_equality(self) -> bool {
        matches!(self, FormulaTag::TheoremB | FormulaTag::ChenMb | FormulaTag::ConjMb1)
    }

    /// The matrix family the statement is about.
    pub fn family(self) -> FamilyTag {
        match self {
            FormulaTag::TheoremB => FamilyTag::B,
            FormulaTag::ChenMb | FormulaTag::Prop28 | FormulaTag::Prop29 | FormulaTag::Prop210 => {
                FamilyTag::MbFull
            }
            FormulaTag::ConjMb1 | FormulaTag::Prop33 | FormulaTag::Thm317Factor => FamilyTag::Mb1Union,
        }
    }
}

impl fmt::Display for FormulaTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown formula `{0}`")]
pub struct UnknownFormula(pub String);

impl FromStr for FormulaTag {
    type Err = UnknownFormula;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FormulaTag::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownFormula(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FormulaSpec {
    pub tag: FormulaTag,
    pub n: u32,
}

impl FormulaSpec {
    pub fn new(tag: FormulaTag, n: u32) -> FormulaSpec {
        FormulaSpec { tag, n }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Probabilistic,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "exact" => Ok(Mode::Exact),
            "probabilistic" | "prob" => Ok(Mode::Probabilistic),
            _ => Err(format!("unknown mode `{s}` (exact | probabilistic)")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Probabilistic => "probabilistic",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Pass,
    Fail,
}

/// Evidence behind a verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// `det / formula`; equal to 1 for a passing equality.
    Quotient(Poly),
    /// Division by `factor` failed after `divided` successful divisions.
    Remainder {
        factor: Poly,
        divided: u32,
        remainder: Poly,
    },
    /// A point (values of `d, z, x, y, w`) where the two sides differ mod `prime`.
    Counterexample {
        point: [u64; NVARS],
        det: u64,
        formula: u64,
    },
    /// All random evaluations agreed.
    Agreement { trials: u32, per_trial_bound: f64 },
    Rank(RankReport),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub tag: String,
    pub family: FamilyTag,
    pub n: u32,
    pub mode: Mode,
    pub verdict: Verdict,
    pub seed: Option<u64>,
    pub prime: Option<u64>,
    pub duration_ms: u64,
    pub witness: Witness,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Parameters of random evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sampling {
    pub trials: u32,
    pub seed: u64,
    pub prime: u64,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling {
            trials: 20,
            seed: 0,
            prime: DEFAULT_PRIME,
        }
    }
}

impl Sampling {
    fn field(&self) -> Result<PrimeField, VerifyError> {
        PrimeField::new(self.prime).ok_or(VerifyError::BadPrime(self.prime))
    }
}

/// Runs checks, reusing matrices and determinants across calls.
#[derive(Debug)]
pub struct Verifier {
    pub sampling: Sampling,
    /// Largest matrix side for exact determinants.
    pub exact_cap: usize,
    grams: HashMap<BasisFamily, GramMatrix>,
    dets: HashMap<BasisFamily, Poly>,
}

impl Default for Verifier {
    fn default() -> Self {
        Verifier {
            sampling: Sampling::default(),
            exact_cap: DEFAULT_EXACT_CAP,
            grams: HashMap::new(),
            dets: HashMap::new(),
        }
    }
}

impl Verifier {
    pub fn new(sampling: Sampling) -> Verifier {
        Verifier {
            sampling,
            ..Verifier::default()
        }
    }

    /// Supplies a matrix (e.g. from a cache) instead of building it.
    pub fn insert_gram(&mut self, g: GramMatrix) {
        self.grams.insert(g.family(), g);
    }

    /// Supplies a determinant computed elsewhere.
    pub fn insert_det(&mut self, family: BasisFamily, det: Poly) {
        self.dets.insert(family, det);
    }

    pub fn gram(&mut self, family: BasisFamily) -> Result<&GramMatrix, VerifyError> {
        if !self.grams.contains_key(&family) {
            let g = build_gram(family)?;
            self.grams.insert(family, g);
        }
        Ok(&self.grams[&family])
    }

    pub fn det(&mut self, family: BasisFamily) -> Result<&Poly, VerifyError> {
        if !self.dets.contains_key(&family) {
            let cap = self.exact_cap;
            let d = det_exact_with_cap(self.gram(family)?, cap)?;
            self.dets.insert(family, d);
        }
        Ok(&self.dets[&family])
    }

    fn compatible(spec: FormulaSpec, family: BasisFamily) -> Result<(), VerifyError> {
        if spec.tag.family() != family.tag {
            return Err(VerifyError::Incompatible {
                tag: spec.tag,
                family: family.tag,
            });
        }
        Ok(())
    }

    pub fn check_equality(
        &mut self,
        family: BasisFamily,
        spec: FormulaSpec,
        mode: Mode,
    ) -> Result<VerificationReport, VerifyError> {
        Self::compatible(spec, family)?;
        if !spec.tag.is_equality() {
            return Err(VerifyError::NotAnEquality { tag: spec.tag });
        }
        let start = Instant::now();
        let f = formula(spec)?;
        let sampling = self.sampling;
        let field = sampling.field()?;
        let (verdict, witness, seed, prime) = match mode {
            Mode::Exact => {
                let det = self.det(family)?;
                if *det == f.expand() {
                    (Verdict::Pass, Witness::Quotient(Poly::one()), None, None)
                } else {
                    let w = counterexample(det, &f, sampling.seed, &field);
                    (Verdict::Fail, w, Some(sampling.seed), Some(field.prime()))
                }
            }
            Mode::Probabilistic => {
                let g = self.gram(family)?;
                let v = det_matches_formula_probabilistic(g, &f, sampling.trials, sampling.seed, &field);
                let witness = match v.counterexample {
                    Some((point, det, formula)) => Witness::Counterexample { point, det, formula },
                    None => Witness::Agreement {
                        trials: v.trials,
                        per_trial_bound: v.per_trial_bound,
                    },
                };
                let verdict = if v.passed { Verdict::Pass } else { Verdict::Fail };
                (verdict, witness, Some(v.seed), Some(v.prime))
            }
        };
        Ok(report(spec, family, mode, verdict, seed, prime, start, witness))
    }

    pub fn check_divisibility(
        &mut self,
        family: BasisFamily,
        spec: FormulaSpec,
        mode: Mode,
    ) -> Result<VerificationReport, VerifyError> {
        Self::compatible(spec, family)?;
        if mode != Mode::Exact {
            return Err(VerifyError::DivisibilityNeedsExact);
        }
        let start = Instant::now();
        let f = formula(spec)?;
        let mut cur = self.det(family)?.clone();
        for (factor, e) in f.factors() {
            for divided in 0..*e {
                match cur.exact_div(factor)? {
                    Division::Exact(q) => cur = q,
                    Division::NotDivisible { remainder, .. } => {
                        let w = Witness::Remainder {
                            factor: factor.clone(),
                            divided,
                            remainder,
                        };
                        return Ok(report(spec, family, mode, Verdict::Fail, None, None, start, w));
                    }
                }
            }
        }
        Ok(report(spec, family, mode, Verdict::Pass, None, None, start, Witness::Quotient(cur)))
    }

    /// Nullity of the substituted `Mb1Union` matrix against `C(2n, n-k)`.
    pub fn check_nullity(&mut self, n: u32, k: u32) -> Result<VerificationReport, VerifyError> {
        if k == 0 || k > n {
            return Err(VerifyError::BadK { n, k });
        }
        let start = Instant::now();
        let sampling = self.sampling;
        let field = sampling.field()?;
        let family = BasisFamily::new(FamilyTag::Mb1Union, n);
        let r = rank_at_substitution(self.gram(family)?, k, sampling.trials.max(1), sampling.seed, &field);
        let verdict = if r.verdict == RankVerdict::Pass {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Ok(VerificationReport {
            tag: format!("nullity-k{k}"),
            family: FamilyTag::Mb1Union,
            n,
            mode: Mode::Probabilistic,
            verdict,
            seed: Some(r.seed),
            prime: Some(r.prime),
            duration_ms: start.elapsed().as_millis() as u64,
            witness: Witness::Rank(r),
        })
    }

    /// Equality or divisibility, whichever the tag states.
    pub fn check(&mut self, spec: FormulaSpec, mode: Mode) -> Result<VerificationReport, VerifyError> {
        let family = BasisFamily::new(spec.tag.family(), spec.n);
        if spec.tag.is_equality() {
            self.check_equality(family, spec, mode)
        } else {
            self.check_divisibility(family, spec, mode)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn report(
    spec: FormulaSpec,
    family: BasisFamily,
    mode: Mode,
    verdict: Verdict,
    seed: Option<u64>,
    prime: Option<u64>,
    start: Instant,
    witness: Witness,
) -> VerificationReport {
    VerificationReport {
        tag: spec.tag.name().to_string(),
        family: family.tag,
        n: family.n,
        mode,
        verdict,
        seed,
        prime,
        duration_ms: start.elapsed().as_millis() as u64,
        witness,
    }
}

/// A point where `det` and `f` differ. They are known to differ, so a random
/// point works with overwhelming probability.
fn counterexample(det: &Poly, f: &FactoredPoly, seed: u64, field: &PrimeField) -> Witness {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut point = [0u64; NVARS];
    let (mut a, mut b) = (0, 0);
    for _ in 0..64 {
        point = std::array::from_fn(|_| field.random(&mut rng));
        a = det.eval_mod(&point, field.prime());
        b = f.eval_mod(&point, field);
        if a != b {
            break;
        }
    }
    Witness::Counterexample {
        point,
        det: a,
        formula: b,
    }
}

pub fn check_equality(
    family: BasisFamily,
    spec: FormulaSpec,
    mode: Mode,
    sampling: Sampling,
) -> Result<VerificationReport, VerifyError> {
    Verifier::new(sampling).check_equality(family, spec, mode)
}

pub fn check_divisibility(
    family: BasisFamily,
    spec: FormulaSpec,
    mode: Mode,
) -> Result<VerificationReport, VerifyError> {
    Verifier::default().check_divisibility(family, spec, mode)
}

pub fn check_nullity(n: u32, k: u32, sampling: Sampling) -> Result<VerificationReport, VerifyError> {
    Verifier::new(sampling).check_nullity(n, k)
}
