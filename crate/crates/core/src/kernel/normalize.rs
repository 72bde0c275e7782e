//! Normalization by substitution: weak-head reduction plus full normal forms.
//!
//! Reductions: β for functions, projections and the case eliminators on
//! canonical scrutinees, δ for non-recursive definitions, guarded δ for
//! recursive ones, and the two unfolding rules of `Δ ^ m` on `zero` and
//! `suc`-headed exponents.

use super::{Env, Step};
use crate::syntax::*;

/// A term in full normal form. Productions are inert: their fields are
/// normalized but they never reduce.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Value(Term);

impl Value {
    pub fn reify(&self) -> Term {
        self.0.clone()
    }

    pub fn as_term(&self) -> &Term {
        &self.0
    }
}

pub fn eval(env: &Env, t: &Term) -> Value {
    Value(normalize(env, t))
}

pub fn whnf(env: &Env, t: &Term) -> Term {
    use Term::*;
    match t {
        App(f, a) => match whnf(env, f) {
            Lam(body) => whnf(env, &instantiate(&body, a)),
            f => unfold(env, App(Box::new(f), a.clone())),
        },
        Fst(p) => match whnf(env, p) {
            Pair(a, _) => whnf(env, &a),
            p => unfold(env, Fst(Box::new(p))),
        },
        Snd(p) => match whnf(env, p) {
            Pair(_, b) => whnf(env, &b),
            p => unfold(env, Snd(Box::new(p))),
        },
        SigmaCase(s, m, b) => match whnf(env, s) {
            Pair(x, y) => whnf(env, &instantiate2(b, &x, &y)),
            s => SigmaCase(Box::new(s), m.clone(), b.clone()),
        },
        SumCase(s, m, l, r) => match whnf(env, s) {
            Inl(x) => whnf(env, &instantiate(l, &x)),
            Inr(y) => whnf(env, &instantiate(r, &y)),
            s => SumCase(Box::new(s), m.clone(), l.clone(), r.clone()),
        },
        UnitCase(s, m, b) => match whnf(env, s) {
            Tt => whnf(env, b),
            s => UnitCase(Box::new(s), m.clone(), b.clone()),
        },
        MuCase(s, m, b) => match whnf(env, s) {
            Init(x) => whnf(env, &instantiate(b, &x)),
            s => MuCase(Box::new(s), m.clone(), b.clone()),
        },
        Pow(d, m) => {
            let m = whnf(env, m);
            if let Init(x) = &m {
                match whnf(env, x) {
                    Inl(_) => return Empty,
                    Inr(n) => return tensor((**d).clone(), pow((**d).clone(), *n)),
                    _ => {}
                }
            }
            Pow(d.clone(), Box::new(m))
        }
        Const(n) => match env.get(n) {
            Some(def) if def.recursion.is_none() => match &def.body {
                Some(body) => whnf(env, body),
                None => t.clone(),
            },
            _ => t.clone(),
        },
        _ => t.clone(),
    }
}

enum Elim<'a> {
    App(&'a Term),
    Fst,
    Snd,
}

/// Unfold a recursive definition at the head of a stuck elimination spine
/// when its decreasing argument has become a constructor.
fn unfold(env: &Env, t: Term) -> Term {
    let mut spine = Vec::new();
    let mut head = &t;
    loop {
        match head {
            Term::App(f, a) => {
                spine.push(Elim::App(a));
                head = f;
            }
            Term::Fst(p) => {
                spine.push(Elim::Fst);
                head = p;
            }
            Term::Snd(p) => {
                spine.push(Elim::Snd);
                head = p;
            }
            _ => break,
        }
    }
    let Term::Const(name) = head else {
        return t;
    };
    let Some(def) = env.get(name) else {
        return t;
    };
    let (Some(body), Some(path)) = (&def.body, &def.recursion) else {
        return t;
    };
    spine.reverse();
    if spine.len() < path.len() {
        return t;
    }
    let matches = path.iter().zip(&spine).all(|(step, e)| {
        matches!(
            (step, e),
            (Step::App, Elim::App(_)) | (Step::Fst, Elim::Fst)
        )
    });
    if !matches {
        return t;
    }
    let Elim::App(arg) = spine[path.len() - 1] else {
        return t;
    };
    if !matches!(whnf(env, arg), Term::Init(_)) {
        return t;
    }
    let rebuilt = spine.iter().fold(body.clone(), |acc, e| match e {
        Elim::App(a) => Term::App(Box::new(acc), Box::new((*a).clone())),
        Elim::Fst => Term::Fst(Box::new(acc)),
        Elim::Snd => Term::Snd(Box::new(acc)),
    });
    whnf(env, &rebuilt)
}

pub fn normalize(env: &Env, t: &Term) -> Term {
    whnf(env, t).map_children(|c, _| normalize(env, c))
}

/// Definitional equality: alpha-equality (de Bruijn syntax) of normal forms.
pub fn conv(env: &Env, a: &Term, b: &Term) -> bool {
    a == b || normalize(env, a) == normalize(env, b)
}
