use lindep::batch::{solve_batch, solve_batch_sequential};
use lindep::random::{self, SupplyShape};
use lindep::solver::{normalize_supply, solve, sub_multiset, symmetrize};
use lindep::supply::{check_production, compose};
use lindep::syntax::*;
use proptest::prelude::*;

fn shape(opaque: bool) -> SupplyShape {
    SupplyShape {
        vars: 3,
        max_atoms: 6,
        opaque,
    }
}

fn arb_supply(opaque: bool) -> impl Strategy<Value = Term> {
    any::<u64>().prop_map(move |seed| random::supply(&mut random::rng(seed), &shape(opaque)))
}

fn arb_pair(opaque: bool) -> impl Strategy<Value = (Term, Term)> {
    any::<u64>().prop_map(move |seed| random::supply_pair(&mut random::rng(seed), &shape(opaque)))
}

fn arb_walk(opaque: bool) -> impl Strategy<Value = (Term, Term)> {
    (any::<u64>(), 0usize..12).prop_map(move |(seed, steps)| {
        let mut r = random::rng(seed);
        let d = random::supply(&mut r, &shape(opaque));
        let e = random::rewrite_walk(&mut r, &d, steps);
        (d, e)
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn weaken_then_instantiate_is_identity(d in arb_supply(true), s in 0usize..3) {
        prop_assert_eq!(instantiate(&weaken(&d, 0, 1), &var(s)), d);
    }

    #[test]
    fn weakening_composes(d in arb_supply(true), a in 0usize..3, b in 0usize..3) {
        prop_assert_eq!(weaken(&weaken(&d, 0, a), 0, b), weaken(&d, 0, a + b));
    }

    #[test]
    fn abstracting_a_variable_and_putting_it_back(d in arb_supply(false), i in 0usize..3) {
        prop_assert_eq!(instantiate(&abstract_term(&d, &var(i)), &var(i)), d);
    }

    #[test]
    fn normalization_round_trips(d in arb_supply(true)) {
        let (env, ctx) = random::context(3);
        let (nf, to, from) = normalize_supply(&env, &ctx, &d).unwrap();
        let r = nf.reify();
        prop_assert!(check_production(&env, &ctx, &to, &d, &r).is_ok());
        prop_assert!(check_production(&env, &ctx, &from, &r, &d).is_ok());
        prop_assert!(check_production(&env, &ctx, &compose(from, to), &d, &d).is_ok());
    }

    #[test]
    fn rewriting_preserves_the_normal_form((d, e) in arb_walk(true)) {
        let (env, ctx) = random::context(3);
        let a = normalize_supply(&env, &ctx, &d).unwrap().0;
        let b = normalize_supply(&env, &ctx, &e).unwrap().0;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn walks_are_always_solved((d, e) in arb_walk(true)) {
        let (env, ctx) = random::context(3);
        let p = solve(&env, &ctx, &d, &e);
        prop_assert!(p.is_ok(), "{} ▷ {}", ctx.show(&d), ctx.show(&e));
        prop_assert!(check_production(&env, &ctx, &p.unwrap(), &d, &e).is_ok());
    }

    #[test]
    fn solved_witnesses_check((d, e) in arb_pair(true)) {
        let (env, ctx) = random::context(3);
        if let Ok(p) = solve(&env, &ctx, &d, &e) {
            prop_assert!(check_production(&env, &ctx, &p, &d, &e).is_ok());
        }
    }

    #[test]
    fn failures_report_the_difference((d, e) in arb_pair(false)) {
        let (env, ctx) = random::context(3);
        if let Err(err) = solve(&env, &ctx, &d, &e) {
            let diag = err.into_diagnostic(&ctx);
            let r = diag.residue.expect("a residue");
            prop_assert!(!(r.left.is_empty() && r.right.is_empty()));
        }
    }

    #[test]
    fn inverses_check((d, e) in arb_walk(false)) {
        let (env, ctx) = random::context(3);
        let p = solve(&env, &ctx, &d, &e).unwrap();
        let q = symmetrize(&ctx, &p).unwrap();
        prop_assert!(check_production(&env, &ctx, &q, &e, &d).is_ok());
    }

    #[test]
    fn framing_leaves_the_rest(d in arb_supply(true), e in arb_supply(true)) {
        let (env, ctx) = random::context(3);
        let rest = sub_multiset(&env, &ctx, &tensor(d.clone(), e.clone()), &d).unwrap();
        let rest = rest.expect("a part of the tensor is contained in it");
        let a = normalize_supply(&env, &ctx, &rest).unwrap().0;
        let b = normalize_supply(&env, &ctx, &e).unwrap().0;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn parallel_and_sequential_batches_agree(seed in any::<u64>()) {
        let (env, ctx) = random::context(3);
        let mut r = random::rng(seed);
        let problems: Vec<(Term, Term)> =
            (0..16).map(|_| random::supply_pair(&mut r, &shape(true))).collect();
        let a = solve_batch(&env, &ctx, &problems);
        let b = solve_batch_sequential(&env, &ctx, &problems);
        for (x, y) in a.iter().zip(&b) {
            prop_assert_eq!(x.as_ref().ok(), y.as_ref().ok());
        }
    }
}
