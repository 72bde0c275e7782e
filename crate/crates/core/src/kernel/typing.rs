//! Bidirectional typing for host terms, supplies and productions.

use super::{conv, normalize, whnf, Env};
use crate::diag::{Diagnostic, Result};
use crate::pretty;
use crate::supply;
use crate::syntax::*;

/// Typing context; the last entry is de Bruijn index 0.
#[derive(Debug, Clone, Default)]
pub struct Ctx {
    entries: Vec<(String, Term)>,
}

impl Ctx {
    pub fn new() -> Ctx {
        Ctx::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Extended copy; `ty` lives in `self`.
    pub fn with(&self, name: &str, ty: Term) -> Ctx {
        let mut c = self.clone();
        c.entries.push((name.to_string(), ty));
        c
    }

    pub fn push(&mut self, name: &str, ty: Term) {
        self.entries.push((name.to_string(), ty));
    }

    pub fn pop(&mut self) {
        self.entries.pop();
    }

    /// Type of `Var(i)`, weakened into the full context.
    pub fn lookup(&self, i: usize) -> Option<Term> {
        let n = self.entries.len();
        let (_, ty) = self.entries.get(n.checked_sub(i + 1)?)?;
        Some(weaken(ty, 0, i + 1))
    }

    pub fn names(&self) -> Vec<String> {
        self.entries.iter().map(|(n, _)| n.clone()).collect()
    }

    pub fn show(&self, t: &Term) -> String {
        pretty::show(t, &self.names())
    }
}

fn not_inferable(ctx: &Ctx, t: &Term) -> Diagnostic {
    Diagnostic::error(
        "kernel.not-inferable",
        format!(
            "cannot infer a type for `{}`; add an annotation",
            ctx.show(t)
        ),
    )
}

fn expected(ctx: &Ctx, what: &str, got: &Term) -> Diagnostic {
    Diagnostic::error(
        "kernel.type-mismatch",
        format!("expected {what}, found `{}`", ctx.show(got)),
    )
}

pub fn check_type(env: &Env, ctx: &Ctx, t: &Term) -> Result<()> {
    check(env, ctx, t, &Term::Universe)
}

fn check_supply(env: &Env, ctx: &Ctx, t: &Term) -> Result<()> {
    check(env, ctx, t, &Term::SupplyTy)
}

/// Motive `m` (one binder over the scrutinee type) rewritten for a branch
/// with `binders` fresh variables, at the scrutinee value `pattern`.
fn motive_at(m: &Term, binders: usize, pattern: &Term) -> Term {
    substitute(&weaken(m, 1, binders), 0, pattern)
}

pub fn infer(env: &Env, ctx: &Ctx, t: &Term) -> Result<Term> {
    use Term::*;
    match t {
        Var(i) => ctx
            .lookup(*i)
            .ok_or_else(|| Diagnostic::error("kernel.unbound", format!("unbound variable #{i}"))),
        Const(n) => env
            .get(n)
            .map(|d| d.ty.clone())
            .ok_or_else(|| Diagnostic::error("kernel.unbound", format!("unknown name `{n}`"))),
        Universe => Ok(Universe),
        Pi(a, b) | Sigma(a, b) => {
            check_type(env, ctx, a)?;
            check_type(env, &ctx.with("x", (**a).clone()), b)?;
            Ok(Universe)
        }
        App(f, a) => {
            let fty = infer(env, ctx, f)?;
            match whnf(env, &fty) {
                Pi(dom, cod) => {
                    check(env, ctx, a, &dom)?;
                    Ok(instantiate(&cod, a))
                }
                other => Err(expected(ctx, "a function", &other)),
            }
        }
        Fst(p) => match whnf(env, &infer(env, ctx, p)?) {
            Sigma(a, _) => Ok(*a),
            other => Err(expected(ctx, "a pair type", &other)),
        },
        Snd(p) => match whnf(env, &infer(env, ctx, p)?) {
            Sigma(_, b) => Ok(instantiate(&b, &Fst(p.clone()))),
            other => Err(expected(ctx, "a pair type", &other)),
        },
        SigmaCase(s, m, b) => {
            let sty = infer(env, ctx, s)?;
            let Sigma(a, fam) = whnf(env, &sty) else {
                return Err(expected(ctx, "a pair type", &sty));
            };
            check_type(env, &ctx.with("p", sty.clone()), m)?;
            let inner = ctx.with("x", (*a).clone()).with("y", (*fam).clone());
            check(env, &inner, b, &motive_at(m, 2, &pair(var(1), var(0))))?;
            Ok(instantiate(m, s))
        }
        Sum(a, b) => {
            check_type(env, ctx, a)?;
            check_type(env, ctx, b)?;
            Ok(Universe)
        }
        SumCase(s, m, l, r) => {
            let sty = infer(env, ctx, s)?;
            let Sum(a, b) = whnf(env, &sty) else {
                return Err(expected(ctx, "a sum type", &sty));
            };
            check_type(env, &ctx.with("s", sty.clone()), m)?;
            check(env, &ctx.with("x", *a), l, &motive_at(m, 1, &inl(var(0))))?;
            check(env, &ctx.with("y", *b), r, &motive_at(m, 1, &inr(var(0))))?;
            Ok(instantiate(m, s))
        }
        Unit | SupplyTy => Ok(Universe),
        Tt => Ok(Unit),
        UnitCase(s, m, b) => {
            check(env, ctx, s, &Unit)?;
            check_type(env, &ctx.with("u", Unit), m)?;
            check(env, ctx, b, &instantiate(m, &Tt))?;
            Ok(instantiate(m, s))
        }
        Mu(f) => {
            check_type(env, &ctx.with("X", Universe), f)?;
            let nf = normalize(env, f);
            if !strictly_positive(&nf, 0) {
                return Err(Diagnostic::error(
                    "kernel.positivity",
                    format!(
                        "the recursive type variable occurs negatively in `{}`",
                        ctx.show(t)
                    ),
                ));
            }
            Ok(Universe)
        }
        MuCase(s, m, b) => {
            let sty = infer(env, ctx, s)?;
            let Mu(f) = whnf(env, &sty) else {
                return Err(expected(ctx, "an inductive type", &sty));
            };
            check_type(env, &ctx.with("s", sty.clone()), m)?;
            let unrolled = instantiate(&f, &Mu(f.clone()));
            check(
                env,
                &ctx.with("y", unrolled),
                b,
                &motive_at(m, 1, &init(var(0))),
            )?;
            Ok(instantiate(m, s))
        }
        Empty => Ok(SupplyTy),
        Tensor(a, b) | Hom(a, b) => {
            check_supply(env, ctx, a)?;
            check_supply(env, ctx, b)?;
            Ok(SupplyTy)
        }
        Iota(a) => {
            well_typed_any(env, ctx, a)?;
            Ok(SupplyTy)
        }
        SupAbs(a, body) => {
            check_type(env, ctx, a)?;
            check_supply(env, &ctx.with("x", (**a).clone()), body)?;
            Ok(SupplyTy)
        }
        Bang(a) => {
            check_supply(env, ctx, a)?;
            Ok(SupplyTy)
        }
        Pow(d, m) => {
            check_supply(env, ctx, d)?;
            check(env, ctx, m, &nat())?;
            Ok(SupplyTy)
        }
        ProdTy(a, b) => {
            check_supply(env, ctx, a)?;
            check_supply(env, ctx, b)?;
            Ok(Universe)
        }
        Prod(p) => {
            let (a, b) = supply::infer_production(env, ctx, p)?;
            Ok(prod_ty(a, b))
        }
        Lam(_) | Pair(..) | Inl(_) | Inr(_) | Init(_) => Err(not_inferable(ctx, t)),
    }
}

pub fn check(env: &Env, ctx: &Ctx, t: &Term, ty: &Term) -> Result<()> {
    use Term::*;
    let want = whnf(env, ty);
    match (t, &want) {
        (Lam(body), Pi(a, b)) => check(env, &ctx.with("x", (**a).clone()), body, b),
        (Pair(x, y), Sigma(a, b)) => {
            check(env, ctx, x, a)?;
            check(env, ctx, y, &instantiate(b, x))
        }
        (Inl(x), Sum(a, _)) => check(env, ctx, x, a),
        (Inr(y), Sum(_, b)) => check(env, ctx, y, b),
        (Init(x), Mu(f)) => check(env, ctx, x, &instantiate(f, &want)),
        (Lam(_) | Pair(..) | Inl(_) | Inr(_) | Init(_), _) => Err(Diagnostic::error(
            "kernel.type-mismatch",
            format!(
                "`{}` cannot have type `{}`",
                ctx.show(t),
                ctx.show(&normalize(env, ty))
            ),
        )),
        _ => {
            let got = infer(env, ctx, t)?;
            if conv(env, &got, ty) {
                Ok(())
            } else {
                Err(Diagnostic::error(
                    "kernel.type-mismatch",
                    format!(
                        "`{}` has type `{}` but `{}` was expected",
                        ctx.show(t),
                        ctx.show(&normalize(env, &got)),
                        ctx.show(&normalize(env, ty))
                    ),
                ))
            }
        }
    }
}

/// Check that `t` has *some* type, for the argument of `ι`. Constructor
/// forms that cannot be inferred are accepted when their components are
/// well typed: each such term has a type built from constant functors.
pub fn well_typed_any(env: &Env, ctx: &Ctx, t: &Term) -> Result<()> {
    match t {
        Term::Inl(a) | Term::Inr(a) | Term::Init(a) => well_typed_any(env, ctx, a),
        Term::Pair(a, b) => {
            well_typed_any(env, ctx, a)?;
            well_typed_any(env, ctx, b)
        }
        Term::Lam(_) => Err(not_inferable(ctx, t)),
        _ => infer(env, ctx, t).map(drop),
    }
}

/// Syntactic strict positivity of index `x` in a functor body.
fn strictly_positive(t: &Term, x: usize) -> bool {
    if !has_free(t, x) {
        return true;
    }
    match t {
        Term::Var(_) => true,
        Term::Sum(a, b) => strictly_positive(a, x) && strictly_positive(b, x),
        Term::Sigma(a, b) => strictly_positive(a, x) && strictly_positive(b, x + 1),
        Term::Pi(a, b) => !has_free(a, x) && strictly_positive(b, x + 1),
        Term::Mu(f) => strictly_positive(f, x + 1),
        _ => false,
    }
}
