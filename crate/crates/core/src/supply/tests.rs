use super::*;
use crate::kernel::Ctx;

fn xy() -> (Env, Ctx) {
    let mut env = Env::new();
    env.postulate("A", Term::Universe).unwrap();
    env.postulate("B", Term::Universe).unwrap();
    let ctx = Ctx::new().with("x", konst("A")).with("y", konst("B"));
    (env, ctx)
}

fn ends(env: &Env, ctx: &Ctx, p: &Term) -> (Term, Term) {
    endpoints(env, ctx, p).unwrap()
}

#[test]
fn supply_formation() {
    let (env, ctx) = xy();
    check_supply(&env, &ctx, &tensor(iota(var(0)), Term::Empty)).unwrap();
    check_supply(&env, &Ctx::new(), &Term::Empty).unwrap();
    assert!(check_supply(&env, &Ctx::new(), &pow(Term::Empty, Term::Tt)).is_err());
    assert!(check_supply(&env, &Ctx::new(), &iota(var(0))).is_err());
}

#[test]
fn switch_production_endpoints() {
    let (env, ctx) = xy();
    let (x, y) = (var(1), var(0));
    let p = comp_chain(vec![
        prod(P::LaxPair(y.clone(), x.clone())),
        swap(iota(x.clone()), iota(y.clone())),
        prod(P::OplPair(x.clone(), y.clone())),
    ])
    .unwrap();
    let (a, b) = ends(&env, &ctx, &p);
    assert_eq!(a, iota(pair(x.clone(), y.clone())));
    assert_eq!(b, iota(pair(y, x)));
}

#[test]
fn simple_endpoints() {
    let (env, ctx) = xy();
    assert_eq!(
        ends(&env, &ctx, &id(Term::Empty)),
        (Term::Empty, Term::Empty)
    );
    let u = prod(P::Use(iota(var(0))));
    assert_eq!(ends(&env, &ctx, &u), (bang(iota(var(0))), iota(var(0))));
}

#[test]
fn check_production_examples() {
    let (env, ctx) = xy();
    let ix = iota(var(1));
    check_production(&env, &ctx, &id(ix.clone()), &ix, &ix).unwrap();
    check_production(
        &env,
        &ctx,
        &unitr_inv(Term::Empty),
        &Term::Empty,
        &tensor(Term::Empty, Term::Empty),
    )
    .unwrap();
    let err = check_production(
        &env,
        &ctx,
        &prod(P::Dupl(ix.clone())),
        &ix,
        &bang(tensor(ix.clone(), ix.clone())),
    )
    .unwrap_err();
    assert_eq!(err.rule, "production.endpoint");
}

#[test]
fn composition_mismatch() {
    let (env, ctx) = xy();
    let p = compose(unitr(iota(var(0))), id(iota(var(1))));
    let err = endpoints(&env, &ctx, &p).unwrap_err();
    assert_eq!(err.rule, "production.compose");
}

#[test]
fn derived_productions() {
    let (env, ctx) = xy();
    let (a, b) = (iota(var(1)), iota(var(0)));
    assert_eq!(
        ends(&env, &ctx, &unitl(a.clone())),
        (tensor(Term::Empty, a.clone()), a.clone())
    );
    assert_eq!(
        ends(&env, &ctx, &unitl_inv(a.clone())),
        (a.clone(), tensor(Term::Empty, a.clone()))
    );
    let round = compose(unitl(a.clone()), unitl_inv(a.clone()));
    assert_eq!(ends(&env, &ctx, &round), (a.clone(), a.clone()));
    let e = Term::Empty;
    assert_eq!(
        ends(&env, &ctx, &assoc_inv(e.clone(), e.clone(), e.clone())),
        (
            tensor(e.clone(), tensor(e.clone(), e.clone())),
            tensor(tensor(e.clone(), e.clone()), e.clone())
        )
    );
    let c = bang(a.clone());
    assert_eq!(
        ends(&env, &ctx, &assoc_inv(a.clone(), b.clone(), c.clone())),
        (
            tensor(a.clone(), tensor(b.clone(), c.clone())),
            tensor(tensor(a.clone(), b.clone()), c.clone())
        )
    );
    let d = tensor(a.clone(), b.clone());
    assert_eq!(
        ends(
            &env,
            &ctx,
            &interchange(a.clone(), b.clone(), c.clone(), d.clone())
        ),
        (
            tensor(tensor(a.clone(), b.clone()), tensor(c.clone(), d.clone())),
            tensor(tensor(a, c), tensor(b, d))
        )
    );
}

#[test]
fn bind_rejects_dependent_source() {
    let (env, ctx) = xy();
    let p = prod(P::Bind(konst("A"), id(iota(var(0)))));
    let err = endpoints(&env, &ctx, &p).unwrap_err();
    assert_eq!(err.rule, "production.bind-escape");
    let ok = prod(P::Bind(
        konst("A"),
        compose(swap(iota(var(2)), Term::Empty), unitr_inv(iota(var(2)))),
    ));
    let (s, t) = ends(&env, &ctx, &ok);
    assert_eq!(s, iota(var(1)));
    assert_eq!(t, sup_abs(konst("A"), tensor(Term::Empty, iota(var(2)))));
}

#[test]
fn powers_of_productions() {
    let (env, ctx) = xy();
    let delta = unitr(iota(var(1)));
    let src = tensor(iota(var(1)), Term::Empty);
    for k in 0..5 {
        let p = pow_production(&env, &delta, &numeral(k)).unwrap();
        check_production(
            &env,
            &ctx,
            &p,
            &pow(src.clone(), numeral(k)),
            &pow(iota(var(1)), numeral(k)),
        )
        .unwrap();
    }
    let (a, b) = ends(
        &env,
        &ctx,
        &pow_production(&env, &delta, &numeral(2)).unwrap(),
    );
    assert_eq!(a, tensor(src.clone(), tensor(src, Term::Empty)));
    assert_eq!(b, tensor(iota(var(1)), tensor(iota(var(1)), Term::Empty)));
    let err = pow_production(&env, &delta, &var(0)).unwrap_err();
    assert_eq!(err.rule, "production.open-power");
}

#[test]
fn distributivity_instances() {
    let (env, ctx) = xy();
    let (d0, d1) = (iota(var(1)), iota(var(0)));
    for m in 0..4u64 {
        for n in 0..4u64 {
            let p = tensor_pow_distr(&env, &numeral(m), &numeral(n), &d0, &d1).unwrap();
            let src = tensor(pow(d0.clone(), numeral(m)), pow(d1.clone(), numeral(m * n)));
            let tgt = pow(tensor(d0.clone(), pow(d1.clone(), numeral(n))), numeral(m));
            check_production(&env, &ctx, &p, &src, &tgt)
                .unwrap_or_else(|e| panic!("m={m} n={n}: {e}"));
        }
    }
    let zero_case = tensor_pow_distr(&env, &zero(), &numeral(2), &d0, &d1).unwrap();
    assert_eq!(
        ends(&env, &ctx, &zero_case),
        (tensor(Term::Empty, Term::Empty), Term::Empty)
    );
}

#[test]
fn inverse_pairs_have_equal_endpoints() {
    let (env, ctx) = xy();
    let x = var(1);
    let pairs = [
        compose(unitr_inv(iota(x.clone())), unitr(iota(x.clone()))),
        compose(prod(P::RetInl(x.clone())), prod(P::SecInl(x.clone()))),
        compose(prod(P::SecInit(x.clone())), prod(P::RetInit(x.clone()))),
        compose(prod(P::LaxTt), prod(P::OplTt)),
        compose(
            swap(iota(var(0)), iota(x.clone())),
            swap(iota(x.clone()), iota(var(0))),
        ),
    ];
    for p in pairs {
        let (a, b) = ends(&env, &ctx, &p);
        assert!(conv(&env, &a, &b), "{}", ctx.show(&p));
    }
}
