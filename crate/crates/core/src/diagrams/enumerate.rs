use super::{
    arc_blocks_spoke, arcs_cross, through_pairing, BasisFamily, Diagram, DiagramError, FamilyTag,
    PlainArc,
};

/// Largest `n` each family will enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub general: u32,
    pub mbfull: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            general: 8,
            mbfull: 4,
        }
    }
}

impl Caps {
    pub fn check(&self, family: BasisFamily) -> Result<(), DiagramError> {
        if family.n == 0 {
            return Err(DiagramError::ZeroN);
        }
        let cap = match family.tag {
            FamilyTag::MbFull => self.mbfull,
            _ => self.general,
        };
        if family.n > cap {
            return Err(DiagramError::CapExceeded {
                family: family.tag,
                n: family.n,
                cap,
            });
        }
        Ok(())
    }
}

pub fn enumerate_basis(family: BasisFamily) -> Result<Vec<Diagram>, DiagramError> {
    enumerate_basis_with_caps(family, &Caps::default())
}

/// The family's basis in canonical order (sorted by text form).
pub fn enumerate_basis_with_caps(
    family: BasisFamily,
    caps: &Caps,
) -> Result<Vec<Diagram>, DiagramError> {
    caps.check(family)?;
    let mut out: Vec<Diagram> = family
        .tag
        .strata(family.n)
        .flat_map(|t| enumerate_stratum(family.n, t))
        .collect();
    out.sort_by_cached_key(|d| d.to_string());
    out.dedup();
    Ok(out)
}

/// All diagrams with exactly `t` through-arcs, unsorted. No cap is applied.
pub fn enumerate_stratum(n: u32, t: u32) -> Vec<Diagram> {
    let mut out = Vec::new();
    if n == 0 || t > n {
        return out;
    }
    let m = 2 * n;
    let mut spokes = Vec::with_capacity(2 * t as usize);
    for_each_subset(1, m, 2 * t as usize, &mut spokes, &mut |spokes| {
        let mut used = vec![false; m as usize + 1];
        for &e in spokes.iter() {
            used[e as usize] = true;
        }
        let through = through_pairing(spokes);
        let mut arcs = Vec::with_capacity((n - t) as usize);
        fill(n, &mut used, spokes, &mut arcs, &mut |arcs| {
            out.push(Diagram::from_parts(n, arcs.to_vec(), through.clone()));
        });
    });
    out
}

fn for_each_subset(
    from: u32,
    to: u32,
    k: usize,
    cur: &mut Vec<u32>,
    f: &mut dyn FnMut(&[u32]),
) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for p in from..=to {
        if (to - p + 1) as usize + cur.len() < k {
            break;
        }
        cur.push(p);
        for_each_subset(p + 1, to, k, cur, f);
        cur.pop();
    }
}

/// Matches the smallest free point with every admissible partner and side.
fn fill(
    n: u32,
    used: &mut [bool],
    spokes: &[u32],
    arcs: &mut Vec<PlainArc>,
    emit: &mut dyn FnMut(&[PlainArc]),
) {
    let Some(p) = (1..used.len()).find(|&p| !used[p]) else {
        let mut sorted = arcs.clone();
        sorted.sort();
        emit(&sorted);
        return;
    };
    used[p] = true;
    for q in p + 1..used.len() {
        if used[q] {
            continue;
        }
        for seam in [false, true] {
            let a = PlainArc::new(p as u32, q as u32, seam);
            if arcs.iter().any(|&b| arcs_cross(n, a, b))
                || spokes.iter().any(|&e| arc_blocks_spoke(n, a, e))
            {
                continue;
            }
            used[q] = true;
            arcs.push(a);
            fill(n, used, spokes, arcs, emit);
            arcs.pop();
            used[q] = false;
        }
    }
    used[p] = false;
}

#[cfg(test)]
mod tests {
    use super::super::{noncrossing_with_spokes, stratum_size};
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn small_examples() {
        let b1 = enumerate_basis(BasisFamily::new(FamilyTag::B, 1)).unwrap();
        assert_eq!(
            b1.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            ["n=1;A(1,2)", "n=1;A(1,2,s)"]
        );
        let u2 = enumerate_basis(BasisFamily::new(FamilyTag::Mb1Union, 2)).unwrap();
        assert_eq!(u2.len(), 10);
        let full = enumerate_basis(BasisFamily::new(FamilyTag::MbFull, 2)).unwrap();
        let by_t: Vec<usize> = (0..=2)
            .map(|t| full.iter().filter(|d| d.through_count() == t).count())
            .collect();
        assert_eq!(by_t, [6, 4, 1]);
    }

    #[test]
    fn stratum_counts_match_binomials() {
        for n in 1..=5 {
            for t in 0..=n {
                assert_eq!(enumerate_stratum(n, t).len() as u64, stratum_size(n, t), "n={n} t={t}");
            }
        }
    }

    #[test]
    fn enumerated_diagrams_are_valid_and_distinct() {
        for n in 1..=4 {
            let all = enumerate_basis(BasisFamily::new(FamilyTag::MbFull, n)).unwrap();
            let names: HashSet<String> = all.iter().map(|d| d.to_string()).collect();
            assert_eq!(names.len(), all.len());
            for d in &all {
                let spokes: Vec<u32> = d.through_arcs().iter().flat_map(|&(a, b)| [a, b]).collect();
                assert!(noncrossing_with_spokes(n, d.plain_arcs(), &spokes));
                let rebuilt = Diagram::new(n, d.plain_arcs().to_vec(), d.through_arcs().to_vec());
                assert_eq!(rebuilt.as_ref(), Ok(d));
            }
        }
    }

    #[test]
    fn invert_preserves_each_family() {
        for tag in FamilyTag::ALL {
            for n in 1..=3 {
                let basis = enumerate_basis(BasisFamily::new(tag, n)).unwrap();
                let mut inv: Vec<Diagram> = basis.iter().map(Diagram::invert).collect();
                inv.sort();
                assert_eq!(inv, basis, "{tag} n={n}");
                assert!(basis.iter().all(|d| d.invert().invert() == *d));
            }
        }
    }

    #[test]
    fn caps() {
        let err = enumerate_basis(BasisFamily::new(FamilyTag::MbFull, 5)).unwrap_err();
        assert_eq!(
            err,
            DiagramError::CapExceeded {
                family: FamilyTag::MbFull,
                n: 5,
                cap: 4
            }
        );
        assert_eq!(
            enumerate_basis(BasisFamily::new(FamilyTag::B, 0)),
            Err(DiagramError::ZeroN)
        );
        let caps = Caps {
            general: 2,
            mbfull: 1,
        };
        assert!(enumerate_basis_with_caps(BasisFamily::new(FamilyTag::B, 3), &caps).is_err());
    }
}
