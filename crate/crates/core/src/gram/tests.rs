use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use super::*;
use crate::diagrams::{BasisFamily, FamilyTag};
use crate::polyring::{chebyshev_t, FactoredPolynomial, Var, DEFAULT_PRIME};
use crate::{Coeff, FactoredPoly};

fn gram(tag: FamilyTag, n: u32) -> GramMatrix {
    build_gram(BasisFamily::new(tag, n)).unwrap()
}

fn field() -> PrimeField {
    PrimeField::new(DEFAULT_PRIME).unwrap()
}

fn d() -> Poly {
    Poly::var(Var::D)
}

fn z() -> Poly {
    Poly::var(Var::Z)
}

/// `prod (T_k^2 - z^2)^C(2n, n-k)`, written out independently of `verify`.
fn annular_formula(n: u32) -> FactoredPoly {
    let mut f = FactoredPolynomial::one();
    for k in 1..=n {
        let e = crate::diagrams::binomial(2 * n as u64, (n - k) as u64) as u32;
        f.push(chebyshev_t::<Coeff>(k).pow(2).sub(&z().pow(2)), e).unwrap();
    }
    f
}

#[test]
fn smallest_matrices() {
    let g = gram(FamilyTag::B, 1);
    let m = |s: [u32; 5]| Monomial::new(s).unwrap();
    assert_eq!(
        g.entries(),
        &[m([1, 0, 0, 0, 0]), m([0, 1, 0, 0, 0]), m([0, 1, 0, 0, 0]), m([1, 0, 0, 0, 0])]
    );
    assert_eq!(det_exact(&g).unwrap(), d().pow(2).sub(&z().pow(2)));
    assert_eq!(gram(FamilyTag::MbFull, 1).side(), 3);
    assert_eq!(gram(FamilyTag::Mb1Union, 2).side(), 10);
}

#[test]
fn entries_are_small_unit_monomials() {
    for tag in FamilyTag::ALL {
        for n in 1..=3 {
            let g = gram(tag, n);
            assert_eq!(g.side() as u64, BasisFamily::new(tag, n).expected_size());
            assert!(g.entries().iter().all(|m| (1..=n + 1).contains(&m.degree())), "{tag} n={n}");
        }
    }
}

#[test]
fn json_round_trip() {
    let g = gram(FamilyTag::Mb1Union, 2);
    let back = GramMatrix::from_json(&g.to_json()).unwrap();
    assert_eq!(back, g);
    assert!(GramMatrix::from_json("{}").is_err());
    let mut v: serde_json::Value = serde_json::from_str(&g.to_json()).unwrap();
    v["entries"][0][0] = serde_json::json!([["2", [1, 0, 0, 0, 0]]]);
    assert!(matches!(GramMatrix::from_json(&v.to_string()), Err(GramError::Json(_))));
}

#[test]
fn determinant_is_invariant_under_basis_shuffles() {
    let mut rng = ChaCha20Rng::seed_from_u64(2024);
    for (tag, n) in [(FamilyTag::B, 2), (FamilyTag::Mb1Union, 2), (FamilyTag::MbFull, 2)] {
        let g = gram(tag, n);
        let det = det_exact(&g).unwrap();
        for _ in 0..3 {
            let mut perm: Vec<usize> = (0..g.side()).collect();
            perm.shuffle(&mut rng);
            let h = g.permuted(&perm);
            assert_ne!(h.basis(), g.basis());
            assert_eq!(det_exact(&h).unwrap(), det, "{tag} n={n}");
        }
    }
}

#[test]
fn determinant_is_fixed_by_swapping_x_and_y() {
    for n in 1..=2 {
        let det = det_exact(&gram(FamilyTag::Mb1Union, n)).unwrap();
        assert_eq!(det.swap_vars(Var::X, Var::Y), det);
    }
}

#[test]
fn exact_and_probabilistic_agree() {
    let f = field();
    for (tag, n) in [
        (FamilyTag::B, 1),
        (FamilyTag::B, 2),
        (FamilyTag::B, 3),
        (FamilyTag::Mb1Union, 1),
        (FamilyTag::Mb1Union, 2),
        (FamilyTag::MbFull, 1),
        (FamilyTag::MbFull, 2),
    ] {
        let g = gram(tag, n);
        let det = det_exact(&g).unwrap();
        let as_factored = FactoredPolynomial::new(vec![(det, 1)]).unwrap();
        let v = det_matches_formula_probabilistic(&g, &as_factored, 5, 11, &f);
        assert!(v.passed, "{tag} n={n}");
    }
}

#[test]
fn probabilistic_check_accepts_and_rejects() {
    let f = field();
    let g = gram(FamilyTag::B, 2);
    let v = det_matches_formula_probabilistic(&g, &annular_formula(2), 20, 1, &f);
    assert!(v.passed);
    assert_eq!((v.trials, v.seed, v.prime), (20, 1, DEFAULT_PRIME));
    assert!(v.per_trial_bound < 1e-15);

    let wrong = FactoredPolynomial::new(vec![(d().sub(&z()), 1)]).unwrap();
    let v = det_matches_formula_probabilistic(&gram(FamilyTag::B, 1), &wrong, 20, 1, &f);
    assert!(!v.passed);
    assert!(v.counterexample.is_some());

    // one perturbed entry
    let mutated = g.with_entry(0, 1, Monomial::var(Var::W));
    let v = det_matches_formula_probabilistic(&mutated, &annular_formula(2), 20, 1, &f);
    assert!(!v.passed);
}

#[test]
fn probabilistic_check_is_deterministic() {
    let f = field();
    let g = gram(FamilyTag::B, 1);
    let wrong = FactoredPolynomial::new(vec![(d(), 2)]).unwrap();
    let a = det_matches_formula_probabilistic(&g, &wrong, 3, 99, &f);
    let b = det_matches_formula_probabilistic(&g, &wrong, 3, 99, &f);
    assert_eq!(a, b);
}

#[test]
fn rank_drops_at_chebyshev_substitutions() {
    let f = field();
    for (tag, n, k, claimed) in [
        (FamilyTag::Mb1Union, 2, 1, 4),
        (FamilyTag::Mb1Union, 2, 2, 1),
        (FamilyTag::B, 2, 1, 4),
        (FamilyTag::B, 2, 2, 1),
    ] {
        let r = rank_at_substitution(&gram(tag, n), k, 10, 5, &f);
        assert_eq!(r.claimed_nullity, claimed);
        assert_eq!(r.verdict, RankVerdict::Pass, "{tag} n={n} k={k}: {r:?}");
        assert!(r.observed_rank <= r.side);
        assert_eq!(r.ranks.len(), 10);
    }
    // without the substitution the matrix is generically invertible
    let g = gram(FamilyTag::B, 2);
    let mut rng = ChaCha20Rng::seed_from_u64(1);
    let point: [u64; 5] = std::array::from_fn(|_| f.random(&mut rng));
    assert_ne!(det_mod_at(&g, &point, &f), 0);
}

#[test]
fn rank_report_without_trials_is_inconclusive() {
    let r = rank_at_substitution(&gram(FamilyTag::B, 1), 1, 0, 0, &field());
    assert_eq!(r.verdict, RankVerdict::Inconclusive);
}

#[test]
fn exact_cap_is_enforced() {
    let g = gram(FamilyTag::B, 3);
    assert_eq!(
        det_exact_with_cap(&g, 10),
        Err(GramError::CapExceeded { side: 20, cap: 10 })
    );
}
