use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;
use crate::Poly;

fn p(s: &str) -> Poly {
    s.parse().unwrap()
}

fn d() -> Poly {
    Poly::var(Var::D)
}

fn z() -> Poly {
    Poly::var(Var::Z)
}

#[test]
fn add_examples() {
    assert_eq!(d().add(&Poly::zero()), d());
    let t2 = chebyshev_t::<BigInt>(2);
    assert_eq!(t2.add(&Poly::from_i64(2)), d().pow(2));
    let t1 = chebyshev_t::<BigInt>(1);
    assert_eq!(t1.add(&t1), d().scale(&BigInt::from(2)));
}

#[test]
fn mul_examples() {
    assert_eq!(d().mul(&z()), Poly::monomial([1, 1, 0, 0, 0]));
    assert_eq!(d().sub(&z()).mul(&d().add(&z())), p("1*d^2 + -1*z^2"));
    let sq = chebyshev_t::<BigInt>(2).pow(2).sub(&z().pow(2));
    assert_eq!(sq, p("1*d^4 + -4*d^2 + -1*z^2 + 4"));
}

#[test]
fn exact_div_examples() {
    let num = p("1*d^2 + -1*z^2");
    assert_eq!(
        num.exact_div(&d().sub(&z())).unwrap(),
        Division::Exact(d().add(&z()))
    );
    let q = d().sub(&z().scale(&BigInt::from(2)));
    assert!(!num.exact_div(&q).unwrap().is_exact());
    assert_eq!(
        Poly::zero().exact_div(&d()).unwrap(),
        Division::Exact(Poly::zero())
    );
    assert_eq!(d().exact_div(&Poly::zero()), Err(PolyError::DivisionByZero));
}

#[test]
fn not_divisible_carries_a_consistent_remainder() {
    let num = p("1*d^2 + -1*z^2");
    let q = d().sub(&z().scale(&BigInt::from(2)));
    match num.exact_div(&q).unwrap() {
        Division::NotDivisible {
            quotient,
            remainder,
        } => {
            assert!(!remainder.is_zero());
            assert_eq!(q.mul(&quotient).add(&remainder), num);
        }
        Division::Exact(_) => panic!("d - 2z does not divide d^2 - z^2"),
    }
    assert!(num.div_exact_unchecked(&q).is_none());
}

#[test]
fn substitute_z_examples() {
    let t1 = chebyshev_t::<BigInt>(1);
    assert_eq!(z().substitute_z(&t1.neg()).unwrap(), d().neg());
    let t2 = chebyshev_t::<BigInt>(2);
    let lhs = p("1*d^2 + -1*z^2").substitute_z(&t2).unwrap();
    assert_eq!(lhs, d().pow(2).sub(&t2.pow(2)));
    let xy = Poly::monomial([0, 0, 1, 1, 0]);
    assert_eq!(xy.substitute_z(&t2).unwrap(), xy);
    assert_eq!(d().substitute_z(&z()), Err(PolyError::InvalidSubstituent));
    assert_eq!(
        d().substitute_z(&Poly::var(Var::W)),
        Err(PolyError::InvalidSubstituent)
    );
}

#[test]
fn eval_mod_examples() {
    assert_eq!(d().eval_mod(&[7, 0, 0, 0, 0], DEFAULT_PRIME), 7);
    assert_eq!(p("1*d^2 + -1*z^2").eval_mod(&[3, 2, 0, 0, 0], 101), 5);
    assert_eq!(chebyshev_t::<BigInt>(4).eval_mod(&[2, 0, 0, 0, 0], DEFAULT_PRIME), 2);
    // negative values wrap
    assert_eq!(z().neg().eval_mod(&[0, 1, 0, 0, 0], 101), 100);
}

#[test]
fn expand_examples() {
    let dz = d().sub(&z());
    let f = FactoredPolynomial::new(vec![(dz.clone(), 1)]).unwrap();
    assert_eq!(f.expand(), dz);
    let f = FactoredPolynomial::new(vec![(dz.clone(), 2)]).unwrap();
    assert_eq!(f.expand(), p("1*d^2 + -2*d^1*z^1 + 1*z^2"));
    let t1 = chebyshev_t::<BigInt>(1);
    let f = FactoredPolynomial::new(vec![(t1.pow(2).sub(&z().pow(2)), 1)]).unwrap();
    assert_eq!(f.expand(), p("1*d^2 + -1*z^2"));
    assert_eq!(
        FactoredPolynomial::new(vec![(Poly::zero(), 1)]),
        Err(PolyError::ZeroFactor)
    );
}

#[test]
fn text_form() {
    let q = p("1*d^4 + -4*d^2 + -1*z^2 + 4");
    assert_eq!(q.to_string(), "1*d^4 + -4*d^2 + -1*z^2 + 4");
    assert_eq!(Poly::zero().to_string(), "0");
    assert_eq!(
        Poly::monomial([1, 2, 0, 1, 3]).to_string(),
        "1*d^1*z^2*y^1*w^3"
    );
    assert!("1*q^2".parse::<Poly>().is_err());
    assert!("x".parse::<Poly>().is_err());
}

#[test]
fn json_form() {
    let q = p("3*d^2*w^1 + -12");
    let j = serde_json::to_string(&q).unwrap();
    assert_eq!(j, r#"[["3",[2,0,0,0,1]],["-12",[0,0,0,0,0]]]"#);
    let back: Poly = serde_json::from_str(&j).unwrap();
    assert_eq!(back, q);
    assert!(serde_json::from_str::<Poly>(r#"[["0",[1,0,0,0,0]]]"#).is_err());
}

#[test]
fn generic_over_machine_integers() {
    let a: Polynomial<i64> = "2*d^1 + 3*z^1".parse().unwrap();
    let b: Polynomial<i64> = "1*d^1 + -1*x^1".parse().unwrap();
    let prod = a.mul(&b);
    assert_eq!(prod.exact_div(&b).unwrap(), Division::Exact(a));
}

fn arb_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((-5i64..=5, prop::array::uniform5(0u32..3)), 0..6).prop_map(|ts| {
        Poly::from_terms(
            ts.into_iter()
                .map(|(c, e)| (Monomial::new(e).unwrap(), BigInt::from(c))),
        )
    })
}

fn arb_point() -> impl Strategy<Value = [u64; NVARS]> {
    prop::array::uniform5(0u64..DEFAULT_PRIME)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn division_inverts_multiplication(q in arb_poly(), r in arb_poly()) {
        prop_assume!(!q.is_zero());
        let prod = q.mul(&r);
        prop_assert_eq!(prod.exact_div(&q).unwrap(), Division::Exact(r.clone()));
        prop_assert_eq!(prod.div_exact_unchecked(&q), Some(r));
    }

    #[test]
    fn eval_is_a_ring_homomorphism(a in arb_poly(), b in arb_poly(), pt in arb_point()) {
        let f = PrimeField::new(DEFAULT_PRIME).unwrap();
        let (ea, eb) = (a.eval_mod(&pt, f.prime()), b.eval_mod(&pt, f.prime()));
        prop_assert_eq!(a.mul(&b).eval_mod(&pt, f.prime()), f.mul(ea, eb));
        prop_assert_eq!(a.add(&b).eval_mod(&pt, f.prime()), f.add(ea, eb));
    }

    #[test]
    fn expand_agrees_with_factorwise_eval(a in arb_poly(), b in arb_poly(), e1 in 1u32..4, e2 in 1u32..3, pt in arb_point()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let f = PrimeField::new(DEFAULT_PRIME).unwrap();
        let fp = FactoredPolynomial::new(vec![(a, e1), (b, e2)]).unwrap();
        prop_assert_eq!(fp.expand().eval_mod(&pt, f.prime()), fp.eval_mod(&pt, &f));
    }

    #[test]
    fn text_and_json_round_trip(a in arb_poly()) {
        prop_assert_eq!(a.to_string().parse::<Poly>().unwrap(), a.clone());
        let j = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Poly>(&j).unwrap(), a);
    }
}
