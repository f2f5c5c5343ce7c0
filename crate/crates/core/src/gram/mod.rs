//! Gram matrices over `Z[d, z, x, y, w]`, their determinants and ranks.

mod bareiss;
mod det;
mod interp;
pub mod modular;
mod rank;

use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagrams::{enumerate_basis_with_caps, BasisFamily, Caps, Diagram, DiagramError, FamilyTag};
use crate::pairing::{pairing_b, pairing_mb, PairingError};
use crate::polyring::{Monomial, PrimeField, NVARS};
use crate::Poly;

pub use bareiss::{bareiss_det, IntegralDomain, Nondivisible};
pub use det::{
    det_exact, det_exact_with_cap, det_matches_formula_probabilistic, det_mod_at, random_points, ProbabilisticVerdict,
    DEFAULT_EXACT_CAP,
};
pub use rank::{rank_at_substitution, RankReport, RankVerdict};

/// Identifies the algorithms that produced a matrix or determinant.
pub const CODE_VERSION: &str = concat!("skeingram-", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GramError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Pairing(#[from] PairingError),
    #[error("matrix side {side} exceeds the exact cap {cap}")]
    CapExceeded { side: usize, cap: usize },
    #[error("elimination division failed at step {0:?}")]
    InternalNondivisibility(Nondivisible),
    #[error("determinant reconstruction: {0}")]
    Reconstruction(String),
    #[error("matrix JSON: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// Seconds since the Unix epoch.
    pub built_unix: u64,
    pub code_version: String,
}

impl Provenance {
    pub fn now() -> Provenance {
        Provenance {
            built_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            code_version: CODE_VERSION.to_string(),
        }
    }
}

/// A Gram matrix. Every entry is a monomial with coefficient 1, so entries
/// are stored as [`Monomial`]s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramMatrix {
    family: BasisFamily,
    basis: Vec<Diagram>,
    entries: Vec<Monomial>,
    provenance: Provenance,
}

pub fn build_gram(family: BasisFamily) -> Result<GramMatrix, GramError> {
    build_gram_with_caps(family, &Caps::default())
}

pub fn build_gram_with_caps(family: BasisFamily, caps: &Caps) -> Result<GramMatrix, GramError> {
    let basis = enumerate_basis_with_caps(family, caps)?;
    GramMatrix::from_basis(family, basis)
}

impl GramMatrix {
    /// Pairs every ordered couple of `basis` with the family's form.
    pub fn from_basis(family: BasisFamily, basis: Vec<Diagram>) -> Result<GramMatrix, GramError> {
        let pair = if family.tag == FamilyTag::B {
            pairing_b
        } else {
            pairing_mb
        };
        let mut entries = Vec::with_capacity(basis.len() * basis.len());
        for a in &basis {
            for b in &basis {
                entries.push(pair(a, b)?);
            }
        }
        Ok(GramMatrix {
            family,
            basis,
            entries,
            provenance: Provenance::now(),
        })
    }

    pub fn family(&self) -> BasisFamily {
        self.family
    }

    pub fn basis(&self) -> &[Diagram] {
        &self.basis
    }

    pub fn side(&self) -> usize {
        self.basis.len()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn entry(&self, i: usize, j: usize) -> Monomial {
        self.entries[i * self.side() + j]
    }

    pub fn entry_poly(&self, i: usize, j: usize) -> Poly {
        Poly::term(1.into(), self.entry(i, j))
    }

    pub fn entries(&self) -> &[Monomial] {
        &self.entries
    }

    pub fn to_poly_rows(&self) -> Vec<Vec<Poly>> {
        (0..self.side())
            .map(|i| (0..self.side()).map(|j| self.entry_poly(i, j)).collect())
            .collect()
    }

    /// Same matrix over the basis reordered as `basis[perm[0]], basis[perm[1]], ..`.
    pub fn permuted(&self, perm: &[usize]) -> GramMatrix {
        let n = self.side();
        assert_eq!(perm.len(), n);
        let mut entries = Vec::with_capacity(n * n);
        for &i in perm {
            for &j in perm {
                entries.push(self.entry(i, j));
            }
        }
        GramMatrix {
            family: self.family,
            basis: perm.iter().map(|&i| self.basis[i].clone()).collect(),
            entries,
            provenance: self.provenance.clone(),
        }
    }

    /// Replaces one entry; used for mutation tests.
    pub fn with_entry(&self, i: usize, j: usize, m: Monomial) -> GramMatrix {
        let mut g = self.clone();
        let n = g.side();
        g.entries[i * n + j] = m;
        g
    }

    /// Row-major numeric matrix at `point` (values of `d, z, x, y, w`).
    pub fn eval_mod(&self, point: &[u64; NVARS], f: &PrimeField) -> Vec<u64> {
        let tables = PowerCache::new(point, self.max_exponent(), f);
        self.entries.iter().map(|m| tables.eval(*m, f)).collect()
    }

    fn max_exponent(&self) -> u32 {
        self.entries
            .iter()
            .flat_map(|m| m.exponents())
            .max()
            .unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MatrixJson::from(self)).expect("matrix serializes")
    }

    pub fn from_json(s: &str) -> Result<GramMatrix, GramError> {
        let j: MatrixJson = serde_json::from_str(s).map_err(|e| GramError::Json(e.to_string()))?;
        j.try_into()
    }
}

pub(crate) struct PowerCache {
    pows: Vec<Vec<u64>>,
}

impl PowerCache {
    pub(crate) fn new(point: &[u64; NVARS], max_exp: u32, f: &PrimeField) -> PowerCache {
        let pows = point
            .iter()
            .map(|&v| {
                let mut row = vec![1u64; max_exp as usize + 1];
                for e in 1..row.len() {
                    row[e] = f.mul(row[e - 1], v);
                }
                row
            })
            .collect();
        PowerCache { pows }
    }

    pub(crate) fn eval(&self, m: Monomial, f: &PrimeField) -> u64 {
        m.exponents()
            .iter()
            .zip(&self.pows)
            .fold(1, |acc, (&e, row)| f.mul(acc, row[e as usize]))
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    family: FamilyTag,
    n: u32,
    basis: Vec<String>,
    entries: Vec<Vec<Poly>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<Provenance>,
}

impl From<&GramMatrix> for MatrixJson {
    fn from(g: &GramMatrix) -> Self {
        MatrixJson {
            family: g.family.tag,
            n: g.family.n,
            basis: g.basis.iter().map(|d| d.to_string()).collect(),
            entries: g.to_poly_rows(),
            provenance: Some(g.provenance.clone()),
        }
    }
}

impl TryFrom<MatrixJson> for GramMatrix {
    type Error = GramError;

    fn try_from(j: MatrixJson) -> Result<Self, Self::Error> {
        let bad = |m: &str| GramError::Json(m.to_string());
        let basis = j
            .basis
            .iter()
            .map(|s| s.parse::<Diagram>())
            .collect::<Result<Vec<_>, _>>()?;
        if basis.iter().any(|d| d.n() != j.n) {
            return Err(bad("basis diagram of the wrong size"));
        }
        let side = basis.len();
        if j.entries.len() != side || j.entries.iter().any(|r| r.len() != side) {
            return Err(bad("entries are not a square array matching the basis"));
        }
        let entries = j
            .entries
            .iter()
            .flatten()
            .map(|p| p.as_unit_monomial().ok_or_else(|| bad("entry is not a unit monomial")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GramMatrix {
            family: BasisFamily::new(j.family, j.n),
            basis,
            entries,
            provenance: j.provenance.unwrap_or_else(|| Provenance {
                built_unix: 0,
                code_version: String::new(),
            }),
        })
    }
}

#[cfg(test)]
mod tests;
