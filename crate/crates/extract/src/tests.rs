use super::*;
use num_bigint::BigUint;
use proptest::prelude::*;
use prtt_checker::generate::TermGen;
use prtt_core::{Context, Natural, Term};
use prtt_nbe::Nbe;
use prtt_prir::{eval_pr, PRFun};

fn n(x: u64) -> Natural {
    Natural::from(x)
}

fn nats(xs: &[u64]) -> Vec<Natural> {
    xs.iter().map(|&x| n(x)).collect()
}

/// `x + y` by recursion on `y`, over the context `[x, y]`.
fn add_body() -> Term {
    Term::nat_ind(Term::Nat, Term::Var(1), Term::suc(Term::Var(0)), Term::Var(0))
}

/// `x * y` by recursion on `y`.
fn mult_body() -> Term {
    let add_acc_x = Term::nat_ind(Term::Nat, Term::Var(0), Term::suc(Term::Var(0)), Term::Var(3));
    Term::nat_ind(Term::Nat, Term::Zero, add_acc_x, Term::Var(0))
}

#[test]
fn sigma_codes_are_cantor_pairs() {
    let e = encode_type(&Term::product(Term::Nat, Term::Nat)).unwrap();
    let v = Term::pair(Term::numeral(2), Term::numeral(3));
    assert_eq!(e.enc(&v).unwrap(), n(17));
    assert_eq!(e.dec(&n(17)).unwrap(), Some(v));
    assert_eq!(e.card().unwrap(), Card::Infinite);
}

#[test]
fn unit_collapses_every_code() {
    let e = encode_type(&Term::Unit).unwrap();
    assert_eq!(e.enc(&Term::Star).unwrap(), Natural::ZERO);
    assert_eq!(e.dec(&n(41)).unwrap(), Some(Term::Star));
    assert_eq!(e.card().unwrap(), Card::Finite(1));
}

#[test]
fn booleans_split_by_parity() {
    let e = encode_type(&Term::sum(Term::Unit, Term::Unit)).unwrap();
    assert_eq!(e.enc(&Term::inl(Term::Star)).unwrap(), n(0));
    assert_eq!(e.enc(&Term::inr(Term::Star)).unwrap(), n(1));
    assert_eq!(e.dec(&n(6)).unwrap(), Some(Term::inl(Term::Star)));
    assert_eq!(e.card().unwrap(), Card::Finite(2));
}

#[test]
fn identity_types_have_at_most_one_code() {
    let yes = encode_type(&Term::eq(Term::Nat, Term::numeral(2), Term::numeral(2))).unwrap();
    assert_eq!(yes.card().unwrap(), Card::Finite(1));
    assert_eq!(yes.dec(&n(9)).unwrap(), Some(Term::refl(Term::numeral(2))));
    let no = encode_type(&Term::eq(Term::Nat, Term::numeral(2), Term::numeral(3))).unwrap();
    assert_eq!(no.card().unwrap(), Card::Finite(0));
    assert_eq!(no.dec(&n(0)).unwrap(), None);
    let empty = encode_type(&Term::Empty).unwrap();
    assert_eq!(empty.values().unwrap(), Some(vec![]));
}

#[test]
fn dependent_sigma_counts_fibres() {
    // Σ (b : Unit + Unit). Eq (Unit + Unit) b (inl star) has one element.
    let bool_ty = Term::sum(Term::Unit, Term::Unit);
    let fibre = Term::eq(bool_ty.clone(), Term::Var(0), Term::inl(Term::Star));
    let e = encode_type(&Term::sigma(bool_ty, fibre)).unwrap();
    assert_eq!(e.card().unwrap(), Card::Finite(1));
    let vs = e.values().unwrap().unwrap();
    assert_eq!(vs.len(), 1);
    assert_eq!(e.dec(&e.enc(&vs[0]).unwrap()).unwrap(), Some(vs[0].clone()));
}

#[test]
fn encoding_rejects_large_and_open_types() {
    assert!(matches!(encode_type(&Term::arrow(Term::Nat, Term::Nat)), Err(ExtractError::NotLevelZero(_))));
    assert!(matches!(encode_type(&Term::Var(0)), Err(ExtractError::NotGroundType(_))));
}

#[test]
fn addition_extracts_and_agrees() {
    let f = extract(2, &add_body()).unwrap();
    assert_eq!(f.arity().unwrap(), 2);
    assert_eq!(eval_pr(&f, &nats(&[2, 3])).unwrap(), n(5));
    let report = differential_test(2, &add_body(), &grid(2, 10)).unwrap();
    assert_eq!(report.points, 121);
    assert!(report.passed(), "{:?}", report.mismatches);
}

#[test]
fn successor_chains_are_compositions() {
    let f = extract(1, &Term::suc(Term::suc(Term::Var(0)))).unwrap();
    for x in 0..=20 {
        assert_eq!(eval_pr(&f, &nats(&[x])).unwrap(), n(x + 2));
    }
    let long = (0..12).fold(Term::Var(0), |t, _| Term::suc(t));
    let g = extract(1, &long).unwrap();
    assert_eq!(eval_pr(&g, &nats(&[30])).unwrap(), n(42));
}

#[test]
fn arguments_follow_binding_order() {
    let first = extract(3, &Term::Var(2)).unwrap();
    assert_eq!(first, PRFun::Proj(3, 0));
    let report = differential_test(3, &Term::suc(Term::Var(1)), &grid(3, 3)).unwrap();
    assert!(report.passed());
}

#[test]
fn multiplication_nests_recursions() {
    let report = differential_test(2, &mult_body(), &grid(2, 10)).unwrap();
    assert!(report.passed(), "{:?}", report.mismatches);
}

#[test]
fn case_analysis_selects_by_parity() {
    // case (if x is zero then inl star else inr x) of inl => 7 | inr m => m + y
    let scrut = Term::nat_ind(
        Term::sum(Term::Unit, Term::Nat),
        Term::inl(Term::Star),
        Term::inr(Term::suc(Term::Var(1))),
        Term::Var(1),
    );
    let plus_y = Term::nat_ind(Term::Nat, Term::Var(0), Term::suc(Term::Var(0)), Term::Var(1));
    let body = Term::sum_ind(Term::Nat, Term::numeral(7), plus_y, scrut);
    let report = differential_test(2, &body, &grid(2, 6)).unwrap();
    assert!(report.passed(), "{:?}", report.mismatches);
}

#[test]
fn pairs_round_trip_through_codes() {
    // snd (x, y) + fst (y, x), with pairs built under a recursion so they
    // stay symbolic after normalization.
    let p = Term::nat_ind(
        Term::product(Term::Nat, Term::Nat),
        Term::pair(Term::Var(1), Term::Var(0)),
        Term::pair(Term::snd(Term::Var(0)), Term::fst(Term::Var(0))),
        Term::Var(1),
    );
    let body = Term::nat_ind(Term::Nat, Term::fst(p.clone()), Term::suc(Term::Var(0)), Term::snd(p));
    let report = differential_test(2, &body, &grid(2, 6)).unwrap();
    assert!(report.passed(), "{:?}", report.mismatches);
}

#[test]
fn dependent_motives_go_through_the_total_space() {
    // ind (n. Eq Nat n n * Nat) (refl 0, x) (m s. (refl (suc m), suc (snd s))) y, second component.
    let motive = Term::product(Term::eq(Term::Nat, Term::Var(0), Term::Var(0)), Term::Nat);
    let base = Term::pair(Term::refl(Term::Zero), Term::Var(1));
    let step = Term::pair(Term::refl(Term::suc(Term::Var(1))), Term::suc(Term::snd(Term::Var(0))));
    let body = Term::snd(Term::nat_ind(motive, base, step, Term::Var(0)));
    let report = differential_test(2, &body, &grid(2, 8)).unwrap();
    assert!(report.passed(), "{:?}", report.mismatches);
    let packed = Extractor::new().total_space(true).extract(2, &body).unwrap();
    let plain = extract(2, &body).unwrap();
    assert_ne!(packed, plain);
    let report = compare(&packed, &body, &grid(2, 4), 1_000_000, 100_000_000);
    assert!(report.passed(), "{:?}", report.mismatches);
}

#[test]
fn higher_type_normal_forms_raise_the_alarm() {
    let lam = Term::lam(Term::Nat, Term::Var(0));
    assert!(matches!(extract_normal(0, &lam), Err(ExtractError::NotFirstOrder(_))));
    assert!(matches!(extract(0, &lam), Err(ExtractError::Check(_))));
}

#[test]
fn extraction_is_stable_under_normalization() {
    let body = mult_body();
    let normal = Nbe::default().normalize(&Context::nats(2), &body, &Term::Nat).unwrap();
    let (f, g) = (extract(2, &body).unwrap(), extract(2, &normal).unwrap());
    for args in grid(2, 6) {
        assert_eq!(eval_pr(&f, &nats(&args)).unwrap(), eval_pr(&g, &nats(&args)).unwrap());
    }
}

#[test]
fn mismatches_are_reported() {
    let wrong = PRFun::comp(PRFun::Succ, [PRFun::proj(2, 0)]);
    let report = compare(&wrong, &add_body(), &grid(2, 2), 1_000_000, 1_000_000);
    assert_eq!(report.points, 9);
    // x + 1 and x + y agree exactly when y = 1.
    assert_eq!(report.mismatches.len(), 6);
    assert!(report.mismatches.iter().all(|m| m.expected != m.actual));
}

#[test]
fn grid_enumerates_all_tuples() {
    assert_eq!(grid(0, 5), vec![Vec::<u64>::new()]);
    assert_eq!(grid(2, 1), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    assert_eq!(grid(3, 4).len(), 125);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decoding_retracts_encoding(seed in any::<u64>()) {
        let mut gen = TermGen::new(seed);
        let (t, ty) = gen.closed_term(40);
        let e = match encode_type(&ty) {
            Ok(e) => e,
            Err(ExtractError::NotLevelZero(_)) => return Ok(()),
            Err(err) => return Err(TestCaseError::fail(err.to_string())),
        };
        let v = Nbe::default().normalize(&Context::new(), &t, &ty).unwrap();
        let code = e.enc(&v).unwrap();
        prop_assert_eq!(e.dec(&code).unwrap(), Some(v));
    }

    #[test]
    fn finite_types_enumerate_their_codes(seed in any::<u64>()) {
        let ty = TermGen::new(seed).u0_type(3);
        let e = encode_type(&ty).unwrap();
        if let (Card::Finite(k), Some(vs)) = (e.card().unwrap(), e.values().unwrap()) {
            prop_assert_eq!(vs.len() as u64, k);
            let mut codes: Vec<BigUint> = vs.iter().map(|v| e.enc(v).unwrap().to_biguint()).collect();
            codes.sort();
            codes.dedup();
            prop_assert_eq!(codes.len(), vs.len());
            for v in &vs {
                let back = e.dec(&e.enc(v).unwrap()).unwrap();
                prop_assert_eq!(back.as_ref(), Some(v));
            }
        }
    }

    #[test]
    fn generated_terms_extract_faithfully(seed in any::<u64>()) {
        let body = TermGen::new(seed).nat_term(2, 40);
        let report = differential_test(2, &body, &grid(2, 4)).unwrap();
        prop_assert!(report.passed(), "{:?}", report.mismatches);
    }
}
