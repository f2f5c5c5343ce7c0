//! Gluing two diagrams along their boundary and classifying the closed curves.
//!
//! The first diagram sits inside the boundary circle, the second is reflected
//! through it, so both meet at the same labels. Each closed curve alternates
//! between arcs of the two diagrams. Its homotopy class is read off from the
//! seam crossings and crosscap passes it makes, as an element of
//!
//! ```text
//! pi1(Klein bottle) = < a, a' | a^2 = a'^2 >
//! ```
//!
//! where `a` (resp. `a'`) is a pass through the first (resp. second) crosscap
//! and `E = a^2` is a full turn around the boundary, i.e. one signed seam
//! crossing. Elements are kept in the normal form `c^m a^k` with `c = a a'^-1`,
//! which gives a direct conjugacy-class test.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagrams::Diagram;
use crate::polyring::{Monomial, Var};
use crate::Poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PairingError {
    #[error("diagrams have different sizes ({0} and {1})")]
    MismatchedSize(u32, u32),
    #[error("annular form applied to a diagram with through-arcs")]
    NotAnnular,
    #[error("curve winds {0} times around the annulus")]
    InvalidWinding(i64),
    #[error("curve word c^{m} a^{k} is not the class of a simple closed curve")]
    UnrecognizedClass { m: i64, k: i64 },
}

/// One step of a traced curve. Signs are `+1` when the arc is traversed from
/// its higher label to its lower one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Event {
    CrossSeam(i8),
    PassCrosscap1(i8),
    PassCrosscap2(i8),
}

/// A closed curve of a gluing: the boundary points it visits (starting with
/// an arc of the first diagram) and the events along the way.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluedCurve {
    pub points: Vec<u32>,
    pub events: Vec<Event>,
}

impl GluedCurve {
    pub fn net_seam(&self) -> i64 {
        self.events
            .iter()
            .map(|e| match e {
                Event::CrossSeam(s) => *s as i64,
                _ => 0,
            })
            .sum()
    }

    /// Number of passes through each crosscap.
    pub fn crosscap_passes(&self) -> (usize, usize) {
        let count = |f: fn(&Event) -> bool| self.events.iter().filter(|e| f(e)).count();
        (
            count(|e| matches!(e, Event::PassCrosscap1(_))),
            count(|e| matches!(e, Event::PassCrosscap2(_))),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveClass {
    D,
    Z,
    X,
    Y,
    W,
}

impl CurveClass {
    pub fn var(self) -> Var {
        match self {
            CurveClass::D => Var::D,
            CurveClass::Z => Var::Z,
            CurveClass::X => Var::X,
            CurveClass::Y => Var::Y,
            CurveClass::W => Var::W,
        }
    }
}

#[derive(Clone, Copy)]
enum Partner {
    Plain(u32, bool),
    Through(u32),
}

fn partners(d: &Diagram) -> Vec<Partner> {
    let mut out = vec![Partner::Through(0); 2 * d.n() as usize + 1];
    for a in d.plain_arcs() {
        out[a.i as usize] = Partner::Plain(a.j, a.seam);
        out[a.j as usize] = Partner::Plain(a.i, a.seam);
    }
    for &(i, j) in d.through_arcs() {
        out[i as usize] = Partner::Through(j);
        out[j as usize] = Partner::Through(i);
    }
    out
}

/// Follows one arc from `p`, recording its event if any.
fn step(p: u32, partner: Partner, first: bool, events: &mut Vec<Event>) -> u32 {
    let sign = |q: u32| if p > q { 1 } else { -1 };
    match partner {
        Partner::Plain(q, seam) => {
            if seam {
                events.push(Event::CrossSeam(sign(q)));
            }
            q
        }
        Partner::Through(q) => {
            events.push(if first {
                Event::PassCrosscap1(sign(q))
            } else {
                Event::PassCrosscap2(sign(q))
            });
            q
        }
    }
}

/// Glues `inner` to the reflection of `outer` and traces every closed curve.
pub fn glue_and_trace(inner: &Diagram, outer: &Diagram) -> Result<Vec<GluedCurve>, PairingError> {
    if inner.n() != outer.n() {
        return Err(PairingError::MismatchedSize(inner.n(), outer.n()));
    }
    let (pi, po) = (partners(inner), partners(outer));
    let mut seen = vec![false; pi.len()];
    let mut curves = Vec::new();
    for start in 1..pi.len() as u32 {
        if seen[start as usize] {
            continue;
        }
        let mut curve = GluedCurve {
            points: Vec::new(),
            events: Vec::new(),
        };
        let mut p = start;
        loop {
            seen[p as usize] = true;
            curve.points.push(p);
            let q = step(p, pi[p as usize], true, &mut curve.events);
            seen[q as usize] = true;
            curve.points.push(q);
            p = step(q, po[q as usize], false, &mut curve.events);
            if p == start {
                break;
            }
        }
        curves.push(curve);
    }
    Ok(curves)
}

/// `d` or `z` by net winding around the annulus.
pub fn classify_annulus(c: &GluedCurve) -> Result<CurveClass, PairingError> {
    if c.crosscap_passes() != (0, 0) {
        return Err(PairingError::NotAnnular);
    }
    match c.net_seam() {
        0 => Ok(CurveClass::D),
        1 | -1 => Ok(CurveClass::Z),
        k => Err(PairingError::InvalidWinding(k)),
    }
}

/// An element `c^m a^k` of the Klein bottle group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KleinWord {
    pub m: i64,
    pub k: i64,
}

impl KleinWord {
    pub const ONE: KleinWord = KleinWord { m: 0, k: 0 };

    /// `a c = c^-1 a`, so `a^k1 c^m2 = c^((-1)^k1 m2) a^k1`.
    pub fn mul(self, o: KleinWord) -> KleinWord {
        let m2 = if self.k.rem_euclid(2) == 0 { o.m } else { -o.m };
        KleinWord {
            m: self.m + m2,
            k: self.k + o.k,
        }
    }

    fn of_event(e: Event) -> KleinWord {
        match e {
            Event::CrossSeam(s) => KleinWord { m: 0, k: 2 * s as i64 },
            Event::PassCrosscap1(s) => KleinWord { m: 0, k: s as i64 },
            // a' = c^-1 a and a'^-1 = c^-1 a^-1
            Event::PassCrosscap2(s) => KleinWord { m: -1, k: s as i64 },
        }
    }

    pub fn of_events(events: &[Event]) -> KleinWord {
        events
            .iter()
            .fold(KleinWord::ONE, |w, &e| w.mul(KleinWord::of_event(e)))
    }

    /// Class of an unoriented simple closed curve with this word, if any.
    pub fn class(self) -> Option<CurveClass> {
        match (self.m.abs(), self.k.abs()) {
            (0, 0) => Some(CurveClass::D),
            (0, 2) => Some(CurveClass::Z),
            (1, 0) => Some(CurveClass::W),
            (m, 1) if m % 2 == 0 => Some(CurveClass::X),
            (_, 1) => Some(CurveClass::Y),
            _ => None,
        }
    }
}

pub fn classify_klein(c: &GluedCurve) -> Result<CurveClass, PairingError> {
    let w = KleinWord::of_events(&c.events);
    w.class()
        .ok_or(PairingError::UnrecognizedClass { m: w.m, k: w.k })
}

fn monomial_of(
    curves: &[GluedCurve],
    classify: fn(&GluedCurve) -> Result<CurveClass, PairingError>,
) -> Result<Monomial, PairingError> {
    let mut exps = [0u32; 5];
    for c in curves {
        exps[classify(c)?.var().index()] += 1;
    }
    Ok(Monomial::new(exps).expect("curve count fits the exponent range"))
}

/// Annular form as a monomial `d^m z^k`.
pub fn pairing_b(b_i: &Diagram, b_j: &Diagram) -> Result<Monomial, PairingError> {
    if !b_i.is_annular() || !b_j.is_annular() {
        return Err(PairingError::NotAnnular);
    }
    monomial_of(&glue_and_trace(b_i, b_j)?, classify_annulus)
}

/// Klein-bottle form as a monomial in `d, z, x, y, w`.
pub fn pairing_mb(m_i: &Diagram, m_j: &Diagram) -> Result<Monomial, PairingError> {
    monomial_of(&glue_and_trace(m_i, m_j)?, classify_klein)
}

pub fn bilinear_b(b_i: &Diagram, b_j: &Diagram) -> Result<Poly, PairingError> {
    Ok(Poly::term(1.into(), pairing_b(b_i, b_j)?))
}

pub fn bilinear_mb(m_i: &Diagram, m_j: &Diagram) -> Result<Poly, PairingError> {
    Ok(Poly::term(1.into(), pairing_mb(m_i, m_j)?))
}
