use super::*;
use crate::generate::TermGen;
use proptest::prelude::*;

fn checker() -> Checker {
    Checker::new(Config::default())
}

fn kind(r: Result<impl std::fmt::Debug>) -> TypeErrorKind {
    r.expect_err("expected a type error").kind().expect("type error, not evaluation error")
}

fn nat_to_nat() -> Term {
    Term::arrow(Term::Nat, Term::Nat)
}

#[test]
fn pi_over_data_lands_in_u1() {
    let t = checker().infer(&Context::new(), &nat_to_nat()).unwrap();
    assert_eq!(t.ty, Term::Univ(Level::ONE));
}

#[test]
fn sigma_of_data_stays_in_u0() {
    let t = checker().infer(&Context::new(), &Term::product(Term::Nat, Term::Nat)).unwrap();
    assert_eq!(t.ty, Term::Univ(Level::ZERO));
}

#[test]
fn successor_of_zero_is_nat() {
    let t = checker().infer(&Context::new(), &Term::suc(Term::Zero)).unwrap();
    assert_eq!(t.ty, Term::Nat);
    assert_eq!(t.level, Level::ZERO);
}

#[test]
fn identity_checks_against_arrow() {
    checker().check(&Context::new(), &Term::lam(Term::Nat, Term::Var(0)), &nat_to_nat()).unwrap();
}

#[test]
fn star_is_not_a_nat() {
    let err = checker().check(&Context::new(), &Term::Star, &Term::Nat).unwrap_err();
    let CheckError::Type(e) = err else { panic!("expected a type error") };
    assert_eq!(e.kind, Mismatch);
    assert_eq!(e.expected, Some(Term::Nat));
    assert_eq!(e.actual, Some(Term::Unit));
}

#[test]
fn dependent_pair_with_proof() {
    let ty = Term::sigma(Term::Nat, Term::eq(Term::Nat, Term::Var(0), Term::Zero));
    let t = Term::pair(Term::Zero, Term::refl(Term::Zero));
    checker().check(&Context::new(), &t, &ty).unwrap();
    let bad = Term::pair(Term::numeral(1), Term::refl(Term::Zero));
    assert_eq!(kind(checker().check(&Context::new(), &bad, &ty)), Mismatch);
}

#[test]
fn motives_must_be_small() {
    let mut ctx = Context::new();
    ctx.push(Term::Nat, Level::ZERO);
    checker().check_elim_motive(&ctx, &Term::Nat).unwrap();
    assert_eq!(kind(checker().check_elim_motive(&ctx, &nat_to_nat())), MotiveNotInU0);
}

#[test]
fn large_elimination_is_rejected() {
    let ack_like =
        Term::nat_ind(nat_to_nat(), Term::lam(Term::Nat, Term::suc(Term::Var(0))), Term::Var(0), Term::numeral(2));
    assert_eq!(kind(checker().infer(&Context::new(), &ack_like)), MotiveNotInU0);
    let open = Checker::new(Config { motive_gate: false, ..Config::default() });
    let t = open.infer(&Context::new(), &ack_like).unwrap();
    assert_eq!(t.ty, nat_to_nat());
}

#[test]
fn beta_and_eta() {
    let c = checker();
    let redex = Term::app(Term::lam(Term::Nat, Term::suc(Term::Var(0))), Term::Zero);
    assert!(c.conv(&Context::new(), &redex, &Term::suc(Term::Zero), &Term::Nat).unwrap());
    let mut ctx = Context::new();
    ctx.push(nat_to_nat(), Level::ONE);
    let eta = Term::lam(Term::Nat, Term::app(Term::Var(1), Term::Var(0)));
    assert!(c.conv(&ctx, &Term::Var(0), &eta, &nat_to_nat()).unwrap());
}

#[test]
fn recursion_unfolds_once() {
    let mut ctx = Context::new();
    ctx.push(Term::Nat, Level::ZERO);
    ctx.push(Term::arrow(Term::Nat, nat_to_nat()), Level::ONE);
    let step = Term::apps(Term::Var(2), [Term::Var(1), Term::Var(0)]);
    let lhs = Term::nat_ind(Term::Nat, Term::Var(1), step, Term::suc(Term::Zero));
    let rhs = Term::apps(Term::Var(0), [Term::Zero, Term::Var(1)]);
    assert!(checker().conv(&ctx, &lhs, &rhs, &Term::Nat).unwrap());
}

#[test]
fn function_space_is_not_small() {
    let c = checker();
    assert_eq!(kind(c.check(&Context::new(), &nat_to_nat(), &Term::Univ(Level::ZERO))), PiNotInU0);
    c.check(&Context::new(), &nat_to_nat(), &Term::Univ(Level::ONE)).unwrap();
}

#[test]
fn universe_hierarchy_is_bounded() {
    let c = checker();
    let t = c.infer(&Context::new(), &Term::Univ(Level::ZERO)).unwrap();
    assert_eq!(t.ty, Term::Univ(Level::ONE));
    assert_eq!(kind(c.infer(&Context::new(), &Term::Univ(Level::ONE))), LevelOverflow);
    let tall = Checker::new(Config { max_level: Level::new(2).unwrap(), ..Config::default() });
    tall.infer(&Context::new(), &Term::Univ(Level::ONE)).unwrap();
}

#[test]
fn lifted_types_are_convertible() {
    let lifted = Term::lift(Level::ZERO, Level::ONE, Term::Nat);
    let c = checker();
    c.check(&Context::new(), &Term::numeral(3), &lifted).unwrap();
    assert_eq!(c.infer(&Context::new(), &lifted).unwrap().ty, Term::Univ(Level::ONE));
}

#[test]
fn empty_has_no_introductions() {
    assert_eq!(kind(checker().check(&Context::new(), &Term::Star, &Term::Empty)), EmptyImpossible);
}

#[test]
fn unbound_and_misapplied() {
    let c = checker();
    assert_eq!(kind(c.infer(&Context::new(), &Term::Var(0))), UnboundVariable);
    assert_eq!(kind(c.infer(&Context::new(), &Term::app(Term::Zero, Term::Zero))), NotAFunction);
    assert_eq!(kind(c.infer(&Context::new(), &Term::fst(Term::Zero))), NotAPair);
}

#[test]
fn generated_terms_check() {
    let c = checker();
    let mut g = TermGen::new(7);
    for _ in 0..200 {
        let (t, ty) = g.closed_term(60);
        c.check(&Context::new(), &t, &ty).unwrap_or_else(|e| panic!("{e}\n{t}\n: {ty}"));
        let n = g.nat_term(3, 60);
        c.check(&Context::nats(3), &n, &Term::Nat).unwrap_or_else(|e| panic!("{e}\n{n}"));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inference_is_deterministic(seed in any::<u64>()) {
        let (t, _) = TermGen::new(seed).closed_term(50);
        let a = checker().infer(&Context::new(), &t).unwrap();
        let b = checker().infer(&Context::new(), &t).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn small_types_exclude_pi(seed in any::<u64>()) {
        let ty = TermGen::new(seed).u0_type(3);
        let c = checker();
        c.check(&Context::new(), &ty, &Term::Univ(Level::ZERO)).unwrap();
        let pi = Term::pi(ty.clone(), Term::Nat);
        prop_assert_eq!(kind(c.check(&Context::new(), &pi, &Term::Univ(Level::ZERO))), PiNotInU0);
    }

    #[test]
    fn gate_rejects_large_motives(seed in any::<u64>()) {
        let mut g = TermGen::new(seed);
        let motive = g.large_motive();
        let mut ctx = Context::new();
        ctx.push(Term::Nat, Level::ZERO);
        prop_assert_eq!(kind(checker().check_elim_motive(&ctx, &motive)), MotiveNotInU0);
        let open = Checker::new(Config { motive_gate: false, ..Config::default() });
        prop_assert!(open.check_elim_motive(&ctx, &motive).is_ok());
    }

    #[test]
    fn conversion_is_an_equivalence(seed in any::<u64>()) {
        let mut g = TermGen::new(seed);
        let a = g.nat_term(0, 30);
        let b = g.nat_term(0, 30);
        let c = checker();
        let ctx = Context::new();
        prop_assert!(c.conv(&ctx, &a, &a, &Term::Nat).unwrap());
        prop_assert_eq!(c.conv(&ctx, &a, &b, &Term::Nat).unwrap(), c.conv(&ctx, &b, &a, &Term::Nat).unwrap());
        let na = prtt_nbe::canonical_nat(&a).unwrap();
        let nb = prtt_nbe::canonical_nat(&b).unwrap();
        prop_assert_eq!(c.conv(&ctx, &a, &b, &Term::Nat).unwrap(), na == nb);
    }
}
