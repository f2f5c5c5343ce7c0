//! Crossingless-connection diagrams on the annulus and the Möbius band.
//!
//! Boundary points are labelled `1..=2n` in cyclic order. A fixed seam runs
//! from the hole (or crosscap) out to the boundary gap between `2n` and `1`;
//! each plain arc records whether it crosses that seam. Through-arcs pass
//! the crosscap exactly once and are determined by their endpoint set: with
//! endpoints `e_1 < .. < e_2t`, `e_p` is joined to `e_{p+t}`.

mod enumerate;
mod text;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use enumerate::{enumerate_basis, enumerate_basis_with_caps, enumerate_stratum, Caps};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("n must be at least 1")]
    ZeroN,
    #[error("{family} at n={n} exceeds the enumeration cap {cap}")]
    CapExceeded { family: FamilyTag, n: u32, cap: u32 },
    #[error("arc ({0}, {1}) is degenerate or out of range")]
    BadArc(u32, u32),
    #[error("endpoints do not form a perfect matching of 1..={0}")]
    NotPerfectMatching(u32),
    #[error("arcs cross")]
    Crossing,
    #[error("through-arcs are not paired antipodally")]
    ThroughPairing,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// An arc that avoids the hole/crosscap. Always stored with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlainArc {
    pub i: u32,
    pub j: u32,
    pub seam: bool,
}

impl PlainArc {
    pub fn new(i: u32, j: u32, seam: bool) -> PlainArc {
        PlainArc {
            i: i.min(j),
            j: i.max(j),
            seam,
        }
    }

    /// The chord this arc lifts to on the universal cover of the boundary.
    fn lift(self, n: u32) -> (i64, i64) {
        let (i, j) = (self.i as i64, self.j as i64);
        if self.seam {
            (j, i + 2 * n as i64)
        } else {
            (i, j)
        }
    }
}

/// A crossingless connection of `2n` boundary points. Annular diagrams are
/// the ones without through-arcs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    n: u32,
    plain: Vec<PlainArc>,
    through: Vec<(u32, u32)>,
}

pub type AnnularDiagram = Diagram;
pub type MobiusDiagram = Diagram;

impl Diagram {
    /// Validates and canonicalizes. Through-arcs may be given in any order.
    pub fn new(
        n: u32,
        mut plain: Vec<PlainArc>,
        through: Vec<(u32, u32)>,
    ) -> Result<Diagram, DiagramError> {
        if n == 0 {
            return Err(DiagramError::ZeroN);
        }
        let m = 2 * n;
        let mut seen = vec![false; m as usize + 1];
        let mut mark = |a: u32, b: u32| {
            if a == b || a == 0 || b == 0 || a > m || b > m {
                return Err(DiagramError::BadArc(a, b));
            }
            for p in [a, b] {
                if std::mem::replace(&mut seen[p as usize], true) {
                    return Err(DiagramError::NotPerfectMatching(m));
                }
            }
            Ok(())
        };
        for a in &plain {
            mark(a.i, a.j)?;
        }
        for &(a, b) in &through {
            mark(a, b)?;
        }
        if seen[1..].iter().any(|s| !s) {
            return Err(DiagramError::NotPerfectMatching(m));
        }
        for a in plain.iter_mut() {
            *a = PlainArc::new(a.i, a.j, a.seam);
        }
        plain.sort();
        let mut through: Vec<(u32, u32)> =
            through.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        through.sort();
        if through != through_pairing(&spokes_of(&through)) {
            return Err(DiagramError::ThroughPairing);
        }
        let spokes = spokes_of(&through);
        if !noncrossing_with_spokes(n, &plain, &spokes) {
            return Err(DiagramError::Crossing);
        }
        Ok(Diagram { n, plain, through })
    }

    /// Skips validation; callers guarantee the invariants.
    pub(crate) fn from_parts(n: u32, plain: Vec<PlainArc>, through: Vec<(u32, u32)>) -> Diagram {
        Diagram { n, plain, through }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn plain_arcs(&self) -> &[PlainArc] {
        &self.plain
    }

    pub fn through_arcs(&self) -> &[(u32, u32)] {
        &self.through
    }

    pub fn is_annular(&self) -> bool {
        self.through.is_empty()
    }

    pub fn through_count(&self) -> usize {
        self.through.len()
    }

    /// Mirror image `i -> 2n+1-i`. Seam bits are unchanged because the seam
    /// gap maps to itself.
    pub fn invert(&self) -> Diagram {
        let r = |p: u32| 2 * self.n + 1 - p;
        let mut plain: Vec<_> = self
            .plain
            .iter()
            .map(|a| PlainArc::new(r(a.j), r(a.i), a.seam))
            .collect();
        plain.sort();
        let mut through: Vec<_> = self.through.iter().map(|&(a, b)| (r(b), r(a))).collect();
        through.sort();
        Diagram {
            n: self.n,
            plain,
            through,
        }
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram({})", self)
    }
}

impl PartialOrd for Diagram {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordered by canonical text form.
impl Ord for Diagram {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.to_string().cmp(&other.to_string())
    }
}

fn spokes_of(through: &[(u32, u32)]) -> Vec<u32> {
    let mut s: Vec<u32> = through.iter().flat_map(|&(a, b)| [a, b]).collect();
    s.sort_unstable();
    s
}

/// Antipodal pairing of sorted spoke endpoints.
pub(crate) fn through_pairing(spokes: &[u32]) -> Vec<(u32, u32)> {
    let t = spokes.len() / 2;
    (0..t).map(|p| (spokes[p], spokes[p + t])).collect()
}

fn interleave(a: (i64, i64), b: (i64, i64)) -> bool {
    (a.0 < b.0 && b.0 < a.1 && a.1 < b.1) || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1)
}

pub(crate) fn arcs_cross(n: u32, a: PlainArc, b: PlainArc) -> bool {
    let period = 2 * n as i64;
    let (la, lb) = (a.lift(n), b.lift(n));
    (-1..=1).any(|k| interleave(la, (lb.0 + k * period, lb.1 + k * period)))
}

/// Whether the lift of `a` separates spoke point `e` from the crosscap.
pub(crate) fn arc_blocks_spoke(n: u32, a: PlainArc, e: u32) -> bool {
    let period = 2 * n as i64;
    let (lo, hi) = a.lift(n);
    (-1..=2).any(|k| {
        let p = e as i64 + k * period;
        lo < p && p < hi
    })
}

/// Lift test on a partial matching of `1..=2n`.
pub fn is_noncrossing(n: u32, arcs: &[PlainArc]) -> bool {
    noncrossing_with_spokes(n, arcs, &[])
}

/// Lift test including through-arc spokes.
pub fn noncrossing_with_spokes(n: u32, arcs: &[PlainArc], spokes: &[u32]) -> bool {
    for (k, &a) in arcs.iter().enumerate() {
        if arcs[k + 1..].iter().any(|&b| arcs_cross(n, a, b)) {
            return false;
        }
        if spokes.iter().any(|&e| arc_blocks_spoke(n, a, e)) {
            return false;
        }
    }
    true
}

/// Which basis a diagram family enumerates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyTag {
    B,
    Mb0,
    Mb1,
    Mb1Union,
    MbFull,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 5] = [
        FamilyTag::B,
        FamilyTag::Mb0,
        FamilyTag::Mb1,
        FamilyTag::Mb1Union,
        FamilyTag::MbFull,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::B => "b",
            FamilyTag::Mb0 => "mb0",
            FamilyTag::Mb1 => "mb1",
            FamilyTag::Mb1Union => "mb1union",
            FamilyTag::MbFull => "mbfull",
        }
    }

    /// Through-arc counts present in the family at this `n`.
    pub fn strata(self, n: u32) -> std::ops::RangeInclusive<u32> {
        match self {
            FamilyTag::B | FamilyTag::Mb0 => 0..=0,
            FamilyTag::Mb1 => 1..=1,
            FamilyTag::Mb1Union => 0..=1,
            FamilyTag::MbFull => 0..=n,
        }
    }

    /// Whether pairings use the Klein-bottle form rather than the annular one.
    pub fn is_mobius(self) -> bool {
        self != FamilyTag::B
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for FamilyTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyTag::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown family `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisFamily {
    pub tag: FamilyTag,
    pub n: u32,
}

impl BasisFamily {
    pub fn new(tag: FamilyTag, n: u32) -> BasisFamily {
        BasisFamily { tag, n }
    }

    /// Cardinality predicted by the binomial count formulas.
    pub fn expected_size(self) -> u64 {
        self.tag
            .strata(self.n)
            .map(|t| stratum_size(self.n, t))
            .sum()
    }
}

impl fmt::Display for BasisFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(n={})", self.tag, self.n)
    }
}

/// `C(2n, n-t)`: the number of diagrams with exactly `t` through-arcs.
pub fn stratum_size(n: u32, t: u32) -> u64 {
    if t > n {
        return 0;
    }
    binomial(2 * n as u64, (n - t) as u64)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    n: u32,
    plain: Vec<(u32, u32, bool)>,
    through: Vec<(u32, u32)>,
}

impl Serialize for Diagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DiagramJson {
            n: self.n,
            plain: self.plain.iter().map(|a| (a.i, a.j, a.seam)).collect(),
            through: self.through.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Diagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = DiagramJson::deserialize(d)?;
        let plain = j
            .plain
            .into_iter()
            .map(|(i, k, s)| PlainArc::new(i, k, s))
            .collect();
        Diagram::new(j.n, plain, j.through).map_err(serde::de::Error::custom)
    }
}
