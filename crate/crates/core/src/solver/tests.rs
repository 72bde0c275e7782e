use super::*;
use crate::random::{self, SupplyShape};
use crate::supply::{check_production, endpoints};

fn xy() -> (Env, Ctx) {
    random::context(2)
}

fn atoms(env: &Env, ctx: &Ctx, d: &Term) -> Vec<Atom> {
    normalize_supply(env, ctx, d).unwrap().0.atoms
}

#[test]
fn pair_splits_into_two_atoms() {
    let (env, ctx) = xy();
    let d = iota(pair(var(1), var(0)));
    let (nf, to, from) = normalize_supply(&env, &ctx, &d).unwrap();
    assert_eq!(nf.atoms, vec![Atom::Iota(var(0)), Atom::Iota(var(1))]);
    assert_eq!(nf.show(&ctx), "{ι x0, ι x1}");
    check_production(&env, &ctx, &to, &d, &nf.reify()).unwrap();
    check_production(&env, &ctx, &from, &nf.reify(), &d).unwrap();
    let shown = ctx.show(&to);
    assert!(shown.contains("opl"), "{shown}");
}

#[test]
fn unit_and_injections_are_stripped() {
    let (env, ctx) = xy();
    assert!(atoms(&env, &ctx, &iota(Term::Tt)).is_empty());
    let (_, to, _) = normalize_supply(&env, &ctx, &iota(Term::Tt)).unwrap();
    assert!(ctx.show(&to).contains("opltt"));
    let d = iota(inl(var(0)));
    assert_eq!(atoms(&env, &ctx, &d), vec![Atom::Iota(var(0))]);
    let (_, to, _) = normalize_supply(&env, &ctx, &d).unwrap();
    assert!(ctx.show(&to).contains("secinl"));
}

#[test]
fn switch_witness() {
    let (env, ctx) = xy();
    let d0 = iota(pair(var(1), var(0)));
    let d1 = iota(pair(var(0), var(1)));
    let w = solve(&env, &ctx, &d0, &d1).unwrap();
    check_production(&env, &ctx, &w, &d0, &d1).unwrap();
    let shown = ctx.show(&w);
    for rule in ["lax", "swap", "opl"] {
        assert!(shown.contains(rule), "{shown}");
    }
}

#[test]
fn identical_supplies() {
    let (env, ctx) = xy();
    let d = tensor(iota(var(0)), iota(var(1)));
    let w = solve(&env, &ctx, &d, &d).unwrap();
    check_production(&env, &ctx, &w, &d, &d).unwrap();
}

#[test]
fn impossible_residue() {
    let (env, ctx) = random::context(1);
    let x = var(0);
    let err = solve(
        &env,
        &ctx,
        &iota(x.clone()),
        &iota(pair(x.clone(), x.clone())),
    )
    .unwrap_err();
    let SolveError::Mismatch(res) = err else {
        panic!("expected a residue")
    };
    assert!(res.left_only.is_empty());
    assert_eq!(res.right_only, vec![Atom::Iota(x)]);
    let diag = res.to_diagnostic(&ctx);
    assert_eq!(diag.rule, "solver.residue");
    assert!(diag.message.contains("ι x0 ⊗ ◇ ≠ ◇"), "{}", diag.message);
}

#[test]
fn stuck_powers() {
    let mut env = Env::new();
    env.postulate("A", Term::Universe).unwrap();
    let ctx = Ctx::new().with("x", konst("A")).with("m", nat());
    let ix = iota(var(1));
    let m = var(0);
    // ι x ^ suc m splits off one copy
    let d0 = pow(ix.clone(), suc(m.clone()));
    let d1 = tensor(pow(ix.clone(), m.clone()), ix.clone());
    let w = solve(&env, &ctx, &d0, &d1).unwrap();
    check_production(&env, &ctx, &w, &d0, &d1).unwrap();
    // a different exponent does not match
    assert!(solve(
        &env,
        &ctx,
        &pow(ix.clone(), m.clone()),
        &pow(ix.clone(), suc(m.clone()))
    )
    .is_err());
    // unfolding closed numerals
    assert_eq!(atoms(&env, &ctx, &pow(ix.clone(), numeral(2))).len(), 2);
}

#[test]
fn opaque_atoms_bridge_up_to_normal_form() {
    let (env, ctx) = xy();
    let (x, y) = (iota(var(1)), iota(var(0)));
    let h0 = hom(tensor(x.clone(), y.clone()), x.clone());
    let h1 = hom(tensor(y.clone(), x.clone()), tensor(x.clone(), Term::Empty));
    let w = solve(&env, &ctx, &h0, &h1).unwrap();
    check_production(&env, &ctx, &w, &h0, &h1).unwrap();
    let b0 = bang(iota(pair(var(0), var(1))));
    let b1 = tensor(bang(tensor(y.clone(), x.clone())), Term::Empty);
    let w = solve(&env, &ctx, &b0, &b1).unwrap();
    check_production(&env, &ctx, &w, &b0, &b1).unwrap();
    let sym = symmetrize(&ctx, &w).unwrap();
    check_production(&env, &ctx, &sym, &b1, &b0).unwrap();
    let a0 = sup_abs(konst("A"), iota(pair(var(0), var(1))));
    let a1 = sup_abs(konst("A"), tensor(iota(var(1)), iota(var(0))));
    let w = solve(&env, &ctx, &a0, &a1).unwrap();
    check_production(&env, &ctx, &w, &a0, &a1).unwrap();
    // bang atoms are never duplicated or dropped
    assert!(solve(&env, &ctx, &bang(x.clone()), &Term::Empty).is_err());
}

#[test]
fn symmetrize_examples() {
    let (env, ctx) = xy();
    let d = iota(var(0));
    assert_eq!(
        symmetrize(&ctx, &unitr(d.clone())).unwrap(),
        unitr_inv(d.clone())
    );
    assert_eq!(
        symmetrize(&ctx, &swap(d.clone(), Term::Empty)).unwrap(),
        swap(Term::Empty, d.clone())
    );
    let c = compose(unitr(d.clone()), swap(Term::Empty, d.clone()));
    assert_eq!(
        symmetrize(&ctx, &c).unwrap(),
        compose(swap(d.clone(), Term::Empty), unitr_inv(d.clone()))
    );
    let (a, b) = endpoints(&env, &ctx, &c).unwrap();
    check_production(&env, &ctx, &symmetrize(&ctx, &c).unwrap(), &b, &a).unwrap();
    let err = symmetrize(&ctx, &prod(Production::Erase(d))).unwrap_err();
    assert_eq!(err.rule, "solver.not-invertible");
}

#[test]
fn random_witnesses_check() {
    let (env, ctx) = random::context(3);
    let mut rng = random::rng(11);
    let shape = SupplyShape {
        opaque: true,
        ..SupplyShape::default()
    };
    for _ in 0..150 {
        let (d0, d1) = random::supply_pair(&mut rng, &shape);
        let (nf, to, from) = normalize_supply(&env, &ctx, &d0).unwrap();
        check_production(&env, &ctx, &to, &d0, &nf.reify()).unwrap();
        check_production(&env, &ctx, &from, &nf.reify(), &d0).unwrap();
        match solve(&env, &ctx, &d0, &d1) {
            Ok(w) => check_production(&env, &ctx, &w, &d0, &d1).unwrap(),
            Err(SolveError::Mismatch(r)) => {
                assert!(!r.left_only.is_empty() || !r.right_only.is_empty())
            }
            Err(SolveError::Ill(d)) => panic!("{d}"),
        }
    }
}

#[test]
fn canonical_for_convertible_supplies() {
    let (env, ctx) = random::context(1);
    let ix = iota(var(0));
    let a = pow(ix.clone(), numeral(2));
    let b = tensor(ix.clone(), tensor(ix.clone(), Term::Empty));
    assert_eq!(
        normalize_supply(&env, &ctx, &a).unwrap().0,
        normalize_supply(&env, &ctx, &b).unwrap().0
    );
}
