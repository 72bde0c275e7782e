//! Typing of productions, plus derived productions built from the
//! primitive constructors.

use crate::diag::{Diagnostic, Result};
use crate::kernel::{check, check_type, conv, infer, normalize, well_typed_any, whnf, Ctx, Env};
use crate::syntax::*;
use Production as P;

pub fn check_supply(env: &Env, ctx: &Ctx, d: &Term) -> Result<()> {
    check(env, ctx, d, &Term::SupplyTy)
}

/// Source and target of a production-valued term.
pub fn endpoints(env: &Env, ctx: &Ctx, t: &Term) -> Result<(Term, Term)> {
    if let Term::Prod(p) = t {
        return infer_production(env, ctx, p);
    }
    let ty = infer(env, ctx, t)?;
    match whnf(env, &ty) {
        Term::ProdTy(a, b) => Ok((*a, *b)),
        other => Err(Diagnostic::error(
            "kernel.type-mismatch",
            format!(
                "expected a production, found a term of type `{}`",
                ctx.show(&other)
            ),
        )),
    }
}

fn shape_error(ctx: &Ctx, rule: &str, what: &str, got: &Term) -> Diagnostic {
    Diagnostic::error(
        "production.shape",
        format!("`{rule}` needs {what}, but got `{}`", ctx.show(got)),
    )
}

pub fn infer_production(env: &Env, ctx: &Ctx, p: &Production) -> Result<(Term, Term)> {
    let sup = |d: &Term| check_supply(env, ctx, d);
    let wf = |a: &Term| well_typed_any(env, ctx, a);
    Ok(match p {
        P::Id(d) => {
            sup(d)?;
            (d.clone(), d.clone())
        }
        P::Comp(d1, d0) => {
            let (a, b) = endpoints(env, ctx, d0)?;
            let (b2, c) = endpoints(env, ctx, d1)?;
            if !conv(env, &b, &b2) {
                return Err(Diagnostic::error(
                    "production.compose",
                    format!(
                        "cannot compose: the first production ends in `{}` but the second starts from `{}`",
                        ctx.show(&normalize(env, &b)),
                        ctx.show(&normalize(env, &b2))
                    ),
                ));
            }
            (a, c)
        }
        P::TensorF(d, e) => {
            let (a, b) = endpoints(env, ctx, d)?;
            let (a2, b2) = endpoints(env, ctx, e)?;
            (tensor(a, a2), tensor(b, b2))
        }
        P::Assoc(a, b, c) => {
            sup(a)?;
            sup(b)?;
            sup(c)?;
            (
                tensor(tensor(a.clone(), b.clone()), c.clone()),
                tensor(a.clone(), tensor(b.clone(), c.clone())),
            )
        }
        P::Swap(a, b) => {
            sup(a)?;
            sup(b)?;
            (tensor(a.clone(), b.clone()), tensor(b.clone(), a.clone()))
        }
        P::Unitr(d) => {
            sup(d)?;
            (tensor(d.clone(), Term::Empty), d.clone())
        }
        P::UnitrInv(d) => {
            sup(d)?;
            (d.clone(), tensor(d.clone(), Term::Empty))
        }
        P::OplTt => (iota(Term::Tt), Term::Empty),
        P::LaxTt => (Term::Empty, iota(Term::Tt)),
        P::OplPair(a, b) => {
            wf(a)?;
            wf(b)?;
            (
                iota(pair(a.clone(), b.clone())),
                tensor(iota(a.clone()), iota(b.clone())),
            )
        }
        P::LaxPair(a, b) => {
            wf(a)?;
            wf(b)?;
            (
                tensor(iota(a.clone()), iota(b.clone())),
                iota(pair(a.clone(), b.clone())),
            )
        }
        P::SecInl(a) => {
            wf(a)?;
            (iota(inl(a.clone())), iota(a.clone()))
        }
        P::RetInl(a) => {
            wf(a)?;
            (iota(a.clone()), iota(inl(a.clone())))
        }
        P::SecInr(a) => {
            wf(a)?;
            (iota(inr(a.clone())), iota(a.clone()))
        }
        P::RetInr(a) => {
            wf(a)?;
            (iota(a.clone()), iota(inr(a.clone())))
        }
        P::SecInit(a) => {
            wf(a)?;
            (iota(init(a.clone())), iota(a.clone()))
        }
        P::RetInit(a) => {
            wf(a)?;
            (iota(a.clone()), iota(init(a.clone())))
        }
        P::Curry(d) => {
            let (src, c) = endpoints(env, ctx, d)?;
            match whnf(env, &src) {
                Term::Tensor(a, b) => (*a, hom(*b, c)),
                other => {
                    return Err(shape_error(
                        ctx,
                        "curry",
                        "a source of the form `Δ ⊗ Δ'`",
                        &other,
                    ))
                }
            }
        }
        P::Uncurry(d) => {
            let (a, h) = endpoints(env, ctx, d)?;
            match whnf(env, &h) {
                Term::Hom(b, c) => (tensor(a, *b), *c),
                other => {
                    return Err(shape_error(
                        ctx,
                        "uncurry",
                        "a target of the form `[Δ , Δ']`",
                        &other,
                    ))
                }
            }
        }
        P::Bind(a, d) => {
            check_type(env, ctx, a)?;
            let inner = ctx.with("x", a.clone());
            let (src, tgt) = endpoints(env, &inner, d)?;
            let src = strengthen(&src)
                .or_else(|| strengthen(&normalize(env, &src)))
                .ok_or_else(|| {
                    Diagnostic::error(
                        "production.bind-escape",
                        format!(
                            "`bind` needs a source independent of the bound variable, found `{}`",
                            inner.show(&src)
                        ),
                    )
                })?;
            (src, sup_abs(a.clone(), tgt))
        }
        P::Free(d, a) => {
            let (src, tgt) = endpoints(env, ctx, d)?;
            match whnf(env, &tgt) {
                Term::SupAbs(ty, body) => {
                    check(env, ctx, a, &ty)?;
                    (src, instantiate(&body, a))
                }
                other => {
                    return Err(shape_error(
                        ctx,
                        "free",
                        "a target of the form `Λ x. Θ`",
                        &other,
                    ))
                }
            }
        }
        P::BangF(d) => {
            let (a, b) = endpoints(env, ctx, d)?;
            (bang(a), bang(b))
        }
        P::Dupl(d) => {
            sup(d)?;
            (bang(d.clone()), bang(tensor(d.clone(), d.clone())))
        }
        P::Erase(d) => {
            sup(d)?;
            (bang(d.clone()), Term::Empty)
        }
        P::Use(d) => {
            sup(d)?;
            (bang(d.clone()), d.clone())
        }
        P::Mult(d) => {
            sup(d)?;
            (bang(d.clone()), bang(bang(d.clone())))
        }
        P::CohEmpty => (Term::Empty, bang(Term::Empty)),
        P::CohTensor(a, b) => {
            sup(a)?;
            sup(b)?;
            (
                tensor(bang(a.clone()), bang(b.clone())),
                bang(tensor(a.clone(), b.clone())),
            )
        }
    })
}

/// Check `p : d0 ▷ d1`.
pub fn check_production(env: &Env, ctx: &Ctx, p: &Term, d0: &Term, d1: &Term) -> Result<()> {
    let (a, b) = endpoints(env, ctx, p)?;
    for (what, got, want) in [("source", &a, d0), ("target", &b, d1)] {
        if !conv(env, got, want) {
            return Err(Diagnostic::error(
                "production.endpoint",
                format!(
                    "production {what} is `{}` but `{}` was expected",
                    ctx.show(&normalize(env, got)),
                    ctx.show(&normalize(env, want))
                ),
            ));
        }
    }
    Ok(())
}

// Derived productions.

pub fn id(d: Term) -> Term {
    prod(P::Id(d))
}
pub fn compose(second: Term, first: Term) -> Term {
    prod(P::Comp(second, first))
}
pub fn tensor_f(a: Term, b: Term) -> Term {
    prod(P::TensorF(a, b))
}
pub fn assoc(a: Term, b: Term, c: Term) -> Term {
    prod(P::Assoc(a, b, c))
}
pub fn swap(a: Term, b: Term) -> Term {
    prod(P::Swap(a, b))
}
pub fn unitr(d: Term) -> Term {
    prod(P::Unitr(d))
}
pub fn unitr_inv(d: Term) -> Term {
    prod(P::UnitrInv(d))
}

/// `a ⊗ (b ⊗ c) ▷ (a ⊗ b) ⊗ c`, from `assoc` and `swap`.
pub fn assoc_inv(a: Term, b: Term, c: Term) -> Term {
    let bc = tensor(b.clone(), c.clone());
    let ca = tensor(c.clone(), a.clone());
    let ab = tensor(a.clone(), b.clone());
    comp_chain(vec![
        swap(c.clone(), ab),
        assoc(c.clone(), a.clone(), b.clone()),
        swap(b.clone(), ca),
        assoc(b, c, a.clone()),
        swap(a, bc),
    ])
    .unwrap()
}

/// `◇ ⊗ Δ ▷ Δ`.
pub fn unitl(d: Term) -> Term {
    compose(unitr(d.clone()), swap(Term::Empty, d))
}

/// `Δ ▷ ◇ ⊗ Δ`.
pub fn unitl_inv(d: Term) -> Term {
    compose(swap(d.clone(), Term::Empty), unitr_inv(d))
}

/// `(a ⊗ b) ⊗ (c ⊗ d) ▷ (a ⊗ c) ⊗ (b ⊗ d)`.
pub fn interchange(a: Term, b: Term, c: Term, d: Term) -> Term {
    let middle = comp_chain(vec![
        assoc(c.clone(), b.clone(), d.clone()),
        tensor_f(swap(b.clone(), c.clone()), id(d.clone())),
        assoc_inv(b.clone(), c.clone(), d.clone()),
    ])
    .unwrap();
    comp_chain(vec![
        assoc_inv(a.clone(), c.clone(), tensor(b.clone(), d.clone())),
        tensor_f(id(a.clone()), middle),
        assoc(a, b, tensor(c, d)),
    ])
    .unwrap()
}

/// `δ ^ m : Δ ^ m ▷ Δ' ^ m` for a production `δ : Δ ▷ Δ'` and a closed
/// numeral `m`.
pub fn pow_production(env: &Env, delta: &Term, m: &Term) -> Result<Term> {
    let k = as_numeral(&normalize(env, m)).ok_or_else(|| {
        Diagnostic::error(
            "production.open-power",
            "cannot build the power of a production at a non-numeral multiplicity; supply it with `by`",
        )
    })?;
    Ok(pow_production_k(delta, k))
}

fn pow_production_k(delta: &Term, k: u64) -> Term {
    if k == 0 {
        id(Term::Empty)
    } else {
        tensor_f(delta.clone(), pow_production_k(delta, k - 1))
    }
}

fn numeral_arg(env: &Env, m: &Term) -> Result<u64> {
    as_numeral(&normalize(env, m)).ok_or_else(|| {
        Diagnostic::error(
            "production.open-power",
            format!(
                "expected a numeral exponent, found `{}`",
                crate::pretty::show_closed(m)
            ),
        )
    })
}

/// `Δ₀ ^ m ⊗ Δ₁ ^ (m · n) ▷ (Δ₀ ⊗ Δ₁ ^ n) ^ m` for numerals `m`, `n`.
pub fn tensor_pow_distr(env: &Env, m: &Term, n: &Term, d0: &Term, d1: &Term) -> Result<Term> {
    let m = numeral_arg(env, m)?;
    let n = numeral_arg(env, n)?;
    Ok(distr_k(m, n, d0, d1))
}

fn distr_k(m: u64, n: u64, d0: &Term, d1: &Term) -> Term {
    let p = |d: &Term, k: u64| pow(d.clone(), numeral(k));
    if m == 0 {
        return unitr(Term::Empty);
    }
    let m1 = m - 1;
    comp_chain(vec![
        tensor_f(id(tensor(d0.clone(), p(d1, n))), distr_k(m1, n, d0, d1)),
        interchange(d0.clone(), p(d0, m1), p(d1, n), p(d1, m1 * n)),
        tensor_f(id(tensor(d0.clone(), p(d0, m1))), pow_split(n, m1 * n, d1)),
    ])
    .unwrap()
}

/// `Δ ^ (n + k) ▷ Δ ^ n ⊗ Δ ^ k`.
fn pow_split(n: u64, k: u64, d: &Term) -> Term {
    let p = |j: u64| pow(d.clone(), numeral(j));
    if n == 0 {
        return unitl_inv(p(k));
    }
    compose(
        assoc_inv(d.clone(), p(n - 1), p(k)),
        tensor_f(id(d.clone()), pow_split(n - 1, k, d)),
    )
}

#[cfg(test)]
mod tests;
