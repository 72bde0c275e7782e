//! Linear types as pairs `(A , Θ)` and their encoding into kernel types.

use crate::kernel::{normalize, whnf, Env};
use crate::syntax::*;

/// An intuitionistic type with a supply family `fam` (one binder over `base`).
#[derive(Debug, Clone, PartialEq)]
pub struct LType {
    pub base: Term,
    pub fam: Term,
}

impl LType {
    /// `(A , ι)`.
    pub fn plain(base: Term) -> LType {
        LType {
            base,
            fam: iota(var(0)),
        }
    }

    /// The supply of an inhabitant `a`.
    pub fn at(&self, a: &Term) -> Term {
        instantiate(&self.fam, a)
    }

    pub fn weaken(&self, amount: usize) -> LType {
        LType {
            base: weaken(&self.base, 0, amount),
            fam: weaken(&self.fam, 1, amount),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Mult {
    /// A domain supply used as is, without `^` or `!`.
    Plain,
    Num(Term),
    Bang,
}

impl Mult {
    /// Wrap the domain supply `d` (a term in the context of the bound input).
    pub fn wrap(&self, d: Term) -> Term {
        match self {
            Mult::Plain => d,
            Mult::Num(m) => pow(d, m.clone()),
            Mult::Bang => bang(d),
        }
    }

    pub fn weaken(&self, amount: usize) -> Mult {
        match self {
            Mult::Num(m) => Mult::Num(weaken(m, 0, amount)),
            other => other.clone(),
        }
    }
}

/// `Δ ⊩ (A , Θ) = Σ[a ∈ A] (Δ ▷ Θ a)`.
pub fn judg(delta: &Term, l: &LType) -> Term {
    sigma(l.base.clone(), prod_ty(weaken(delta, 0, 1), l.fam.clone()))
}

/// Read back `Δ` and `(A , Θ)` from a judgment type.
pub fn judg_view(env: &Env, ty: &Term) -> Option<(Term, LType)> {
    let Term::Sigma(base, body) = whnf(env, ty) else {
        return None;
    };
    let Term::ProdTy(d, fam) = whnf(env, &body) else {
        return None;
    };
    let delta = strengthen(&d).or_else(|| strengthen(&normalize(env, &d)))?;
    Some((
        delta,
        LType {
            base: *base,
            fam: *fam,
        },
    ))
}

/// A linear function type taken apart. `cod` lives under the input binder.
#[derive(Debug, Clone, PartialEq)]
pub struct Arrow {
    pub dom: LType,
    pub mult: Mult,
    pub cod: LType,
}

/// `⟨A , Θ₀⟩^m ⊸ (B , Θ₁) = ((x : A) → B x) , λf. Λx:A. [W(Θ₀ x) , Θ₁ (f x)]`.
pub fn arrow(a: &Arrow) -> LType {
    let w = a.mult.weaken(2).wrap(weaken(&a.dom.fam, 1, 1));
    let out = instantiate(&weaken(&a.cod.fam, 2, 1), &app(var(1), var(0)));
    LType {
        base: pi(a.dom.base.clone(), a.cod.base.clone()),
        fam: sup_abs(weaken(&a.dom.base, 0, 1), hom(w, out)),
    }
}

/// Remove the unused index `k`.
fn lower(t: &Term, k: usize) -> Option<Term> {
    (!has_free(t, k)).then(|| substitute(t, k, &Term::Tt))
}

pub fn arrow_view(env: &Env, l: &LType) -> Option<Arrow> {
    let Term::Pi(a, b) = whnf(env, &l.base) else {
        return None;
    };
    let Term::SupAbs(_, h) = whnf(env, &l.fam) else {
        return None;
    };
    let Term::Hom(x, y) = whnf(env, &h) else {
        return None;
    };
    // context here: …, f, x
    let (theta0, mult) = match *x {
        Term::Pow(t, m) => (*t, Mult::Num(lower(&lower(&m, 0)?, 0)?)),
        Term::Bang(t) => (*t, Mult::Bang),
        t => (t, Mult::Plain),
    };
    let theta0 = lower(&theta0, 1)?;
    let theta1 = abstract_term(&y, &app(var(1), var(0)));
    let theta1 = lower(&theta1, 2)?;
    Some(Arrow {
        dom: LType {
            base: *a,
            fam: theta0,
        },
        mult,
        cod: LType {
            base: *b,
            fam: theta1,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{check, check_type, conv, Ctx};

    fn env() -> Env {
        let mut env = Env::new();
        env.postulate("A", Term::Universe).unwrap();
        env.postulate("B", arrow_ty()).unwrap();
        env
    }

    fn arrow_ty() -> Term {
        crate::syntax::arrow(konst("A"), Term::Universe)
    }

    fn sample(mult: Mult) -> Arrow {
        Arrow {
            dom: LType::plain(konst("A")),
            mult,
            cod: LType::plain(app(konst("B"), var(0))),
        }
    }

    #[test]
    fn arrow_round_trips() {
        let env = env();
        for mult in [
            Mult::Num(numeral(1)),
            Mult::Num(numeral(0)),
            Mult::Bang,
            Mult::Plain,
        ] {
            let a = sample(mult);
            let l = arrow(&a);
            check_type(&env, &Ctx::new(), &judg(&Term::Empty, &l)).unwrap();
            assert_eq!(arrow_view(&env, &l), Some(a));
        }
    }

    #[test]
    fn family_matches_the_definition() {
        // λf. Λx:A. [ι x ^ 1 , ι (f x)]
        let l = arrow(&sample(Mult::Num(numeral(1))));
        let expected = sup_abs(
            konst("A"),
            hom(pow(iota(var(0)), numeral(1)), iota(app(var(1), var(0)))),
        );
        assert_eq!(l.fam, expected);
        // ^0 is ◇ under the binder
        let z = arrow(&sample(Mult::Num(numeral(0))));
        let Term::SupAbs(_, h) = z.fam else { panic!() };
        let Term::Hom(w, _) = *h else { panic!() };
        assert!(conv(&env(), &w, &Term::Empty));
    }

    #[test]
    fn judgment_view() {
        let env = env();
        let delta = iota(var(0));
        let l = LType::plain(konst("A"));
        let ty = judg(&delta, &l);
        let ctx = Ctx::new().with("x", konst("A"));
        check_type(&env, &ctx, &ty).unwrap();
        check(
            &env,
            &ctx,
            &pair(var(0), prod(Production::Id(iota(var(0))))),
            &ty,
        )
        .unwrap();
        assert_eq!(judg_view(&env, &ty), Some((delta, l)));
        assert_eq!(judg_view(&env, &konst("A")), None);
    }
}
