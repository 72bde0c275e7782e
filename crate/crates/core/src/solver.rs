//! Decision procedure for `Δ₀ ▷ Δ₁` with witness reconstruction.
//!
//! A supply is first stripped of constructor symbols under `ι` (the `opl…`
//! and `sec…` productions), flattened into a right-nested list closed by `◇`,
//! and sorted by adjacent transpositions. Two supplies are related iff their
//! sorted atom lists coincide; the witness is `from₁ ∘ to₀`.

use crate::diag::{Diagnostic, ResidueReport, Result};
use crate::kernel::{conv, normalize, whnf, Ctx, Env};
use crate::supply::{
    assoc, assoc_inv, compose, endpoints, id, swap, tensor_f, unitl, unitl_inv, unitr, unitr_inv,
};
use crate::syntax::*;
use Production as P;

/// An irreducible supply, keyed for comparison.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    /// `ι a` for a neutral `a`, stored in normal form.
    Iota(Term),
    Hom(SupplyNF, SupplyNF),
    /// `Λx:A. Θ`: normalized domain and the normal form of the body.
    Abs(Term, SupplyNF),
    Bang(SupplyNF),
    /// `Δ ^ m` with a neutral exponent; base and exponent in normal form.
    PowStuck(Term, Term),
    /// Any other neutral supply (a variable or a stuck application).
    Neutral(Term),
}

/// Canonical multiset of atoms, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SupplyNF {
    pub atoms: Vec<Atom>,
}

impl Atom {
    /// The supply this atom stands for.
    pub fn reify(&self) -> Term {
        match self {
            Atom::Iota(a) => iota(a.clone()),
            Atom::Hom(a, b) => hom(a.reify(), b.reify()),
            Atom::Abs(ty, body) => sup_abs(ty.clone(), body.reify()),
            Atom::Bang(a) => bang(a.reify()),
            Atom::PowStuck(d, m) => pow(d.clone(), m.clone()),
            Atom::Neutral(t) => t.clone(),
        }
    }
}

impl SupplyNF {
    pub fn reify(&self) -> Term {
        tensor_list(&self.atoms.iter().map(Atom::reify).collect::<Vec<_>>())
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// `{ι x, ι y}` notation, atoms in alphabetical order.
    pub fn show(&self, ctx: &Ctx) -> String {
        let mut items: Vec<String> = self.atoms.iter().map(|a| ctx.show(&a.reify())).collect();
        items.sort();
        format!("{{{}}}", items.join(", "))
    }
}

/// Atoms only one side has, when no production exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MismatchResidue {
    pub left_only: Vec<Atom>,
    pub right_only: Vec<Atom>,
}

impl MismatchResidue {
    pub fn report(&self, ctx: &Ctx) -> ResidueReport {
        let show = |atoms: &[Atom]| atoms.iter().map(|a| ctx.show(&a.reify())).collect();
        ResidueReport {
            left: show(&self.left_only),
            right: show(&self.right_only),
        }
    }

    pub fn to_diagnostic(&self, ctx: &Ctx) -> Diagnostic {
        let report = self.report(ctx);
        Diagnostic::error(
            "solver.residue",
            format!("no production exists: {}", report.inequation()),
        )
        .with_residue(report)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SolveError {
    #[error("supplies differ")]
    Mismatch(MismatchResidue),
    #[error(transparent)]
    Ill(#[from] Diagnostic),
}

impl SolveError {
    pub fn into_diagnostic(self, ctx: &Ctx) -> Diagnostic {
        match self {
            SolveError::Mismatch(r) => r.to_diagnostic(ctx),
            SolveError::Ill(d) => d,
        }
    }
}

/// A flattened supply: `to : Δ ▷ R(items)` and `from : R(items) ▷ Δ`, where
/// `R` is the right-nested tensor closed by `◇`.
struct Flat {
    items: Vec<(Atom, Term)>,
    to: Term,
    from: Term,
}

fn right_nested(items: &[(Atom, Term)]) -> Term {
    tensor_list(&items.iter().map(|(_, s)| s.clone()).collect::<Vec<_>>())
}

/// `R(l₁) ⊗ R(l₂) ▷ R(l₁ ++ l₂)` and its inverse.
fn append(l1: &[(Atom, Term)], l2: &[(Atom, Term)]) -> (Term, Term) {
    if l2.is_empty() {
        let r = right_nested(l1);
        return (unitr(r.clone()), unitr_inv(r));
    }
    match l1.split_first() {
        None => {
            let r = right_nested(l2);
            (unitl(r.clone()), unitl_inv(r))
        }
        Some(((_, a), rest)) => {
            let (to, from) = append(rest, l2);
            let (rr, r2) = (right_nested(rest), right_nested(l2));
            (
                compose(
                    tensor_f(id(a.clone()), to),
                    assoc(a.clone(), rr.clone(), r2.clone()),
                ),
                compose(assoc_inv(a.clone(), rr, r2), tensor_f(id(a.clone()), from)),
            )
        }
    }
}

fn flatten(env: &Env, d: &Term) -> Result<Flat> {
    let w = whnf(env, d);
    match &w {
        Term::Empty => Ok(Flat {
            items: vec![],
            to: id(Term::Empty),
            from: id(Term::Empty),
        }),
        Term::Tensor(a, b) => {
            let fa = flatten(env, a)?;
            let fb = flatten(env, b)?;
            let (app, app_inv) = append(&fa.items, &fb.items);
            let mut items = fa.items;
            items.extend(fb.items);
            Ok(Flat {
                items,
                to: compose(app, tensor_f(fa.to, fb.to)),
                from: compose(tensor_f(fa.from, fb.from), app_inv),
            })
        }
        Term::Iota(a) => {
            let a = whnf(env, a);
            let (strip, unstrip, inner) = match &a {
                Term::Tt => {
                    return Ok(Flat {
                        items: vec![],
                        to: prod(P::OplTt),
                        from: prod(P::LaxTt),
                    })
                }
                Term::Pair(x, y) => (
                    P::OplPair((**x).clone(), (**y).clone()),
                    P::LaxPair((**x).clone(), (**y).clone()),
                    tensor(iota((**x).clone()), iota((**y).clone())),
                ),
                Term::Inl(x) => (
                    P::SecInl((**x).clone()),
                    P::RetInl((**x).clone()),
                    iota((**x).clone()),
                ),
                Term::Inr(x) => (
                    P::SecInr((**x).clone()),
                    P::RetInr((**x).clone()),
                    iota((**x).clone()),
                ),
                Term::Init(x) => (
                    P::SecInit((**x).clone()),
                    P::RetInit((**x).clone()),
                    iota((**x).clone()),
                ),
                _ => return Ok(single(Atom::Iota(normalize(env, &a)), iota(a))),
            };
            let f = flatten(env, &inner)?;
            Ok(Flat {
                items: f.items,
                to: compose(f.to, prod(strip)),
                from: compose(prod(unstrip), f.from),
            })
        }
        Term::Hom(a, b) => Ok(single(
            Atom::Hom(normal_form(env, a)?, normal_form(env, b)?),
            w.clone(),
        )),
        Term::SupAbs(ty, body) => Ok(single(
            Atom::Abs(normalize(env, ty), normal_form(env, body)?),
            w.clone(),
        )),
        Term::Bang(a) => Ok(single(Atom::Bang(normal_form(env, a)?), w.clone())),
        Term::Pow(b, m) => Ok(single(
            Atom::PowStuck(normalize(env, b), normalize(env, m)),
            w.clone(),
        )),
        Term::Var(_)
        | Term::Const(_)
        | Term::App(..)
        | Term::Fst(_)
        | Term::Snd(_)
        | Term::SumCase(..)
        | Term::MuCase(..)
        | Term::SigmaCase(..)
        | Term::UnitCase(..) => Ok(single(Atom::Neutral(normalize(env, &w)), w.clone())),
        other => Err(Diagnostic::error(
            "solver.not-a-supply",
            format!("not a supply: {other:?}"),
        )),
    }
}

fn single(atom: Atom, supply: Term) -> Flat {
    Flat {
        items: vec![(atom, supply.clone())],
        to: unitr_inv(supply.clone()),
        from: unitr(supply),
    }
}

/// Just the canonical atom multiset of `d`.
fn normal_form(env: &Env, d: &Term) -> Result<SupplyNF> {
    let mut atoms: Vec<Atom> = flatten(env, d)?.items.into_iter().map(|(a, _)| a).collect();
    atoms.sort();
    Ok(SupplyNF { atoms })
}

/// Wrap `p`, acting on the suffix after `prefix`, with identities.
fn frame(prefix: &[(Atom, Term)], p: Term) -> Term {
    prefix
        .iter()
        .rev()
        .fold(p, |acc, (_, s)| tensor_f(id(s.clone()), acc))
}

/// Exchange positions `i` and `i + 1` of `R(items)`.
fn transposition(items: &[(Atom, Term)], i: usize) -> Term {
    let a = items[i].1.clone();
    let b = items[i + 1].1.clone();
    let rest = right_nested(&items[i + 2..]);
    let local = comp_chain(vec![
        assoc(b.clone(), a.clone(), rest.clone()),
        tensor_f(swap(a.clone(), b.clone()), id(rest.clone())),
        assoc_inv(a, b, rest),
    ])
    .unwrap();
    frame(&items[..i], local)
}

/// Bubble sort with witnesses: `(sorted, R(items) ▷ R(sorted), inverse)`.
fn sort_items(mut items: Vec<(Atom, Term)>) -> (Vec<(Atom, Term)>, Vec<Term>, Vec<Term>) {
    let mut fwd = Vec::new();
    let mut back = Vec::new();
    let n = items.len();
    for pass in 0..n {
        let mut swapped = false;
        for i in 0..n.saturating_sub(pass + 1) {
            if items[i].0 > items[i + 1].0 {
                fwd.push(transposition(&items, i));
                items.swap(i, i + 1);
                back.push(transposition(&items, i));
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    fwd.reverse();
    (items, fwd, back)
}

/// Production from an item supply to the reified atom it stands for.
fn bridge(env: &Env, ctx: &Ctx, s: &Term, atom: &Atom) -> Result<(Term, Term)> {
    let t = atom.reify();
    if conv(env, s, &t) {
        return Ok((id(s.clone()), id(t)));
    }
    let pair = |x: &Term, y: &Term| -> Result<(Term, Term)> {
        let go = solve(env, ctx, x, y).map_err(|e| e.into_diagnostic(ctx))?;
        let back = solve(env, ctx, y, x).map_err(|e| e.into_diagnostic(ctx))?;
        Ok((go, back))
    };
    match (whnf(env, s), whnf(env, &t)) {
        (Term::Hom(a, b), Term::Hom(a2, b2)) => {
            let (a_a2, a2_a) = pair(&a, &a2)?;
            let (b_b2, b2_b) = pair(&b, &b2)?;
            Ok((hom_bridge(s, &a2_a, &b_b2), hom_bridge(&t, &a_a2, &b2_b)))
        }
        (Term::SupAbs(ty, body), Term::SupAbs(_, body2)) => {
            let inner = ctx.with("x", (*ty).clone());
            let go = solve(env, &inner, &body, &body2).map_err(|e| e.into_diagnostic(&inner))?;
            let back = solve(env, &inner, &body2, &body).map_err(|e| e.into_diagnostic(&inner))?;
            Ok((abs_bridge(&ty, s, go), abs_bridge(&ty, &t, back)))
        }
        (Term::Bang(a), Term::Bang(b)) => {
            let (go, back) = pair(&a, &b)?;
            Ok((prod(P::BangF(go)), prod(P::BangF(back))))
        }
        _ => Err(Diagnostic::error(
            "solver.internal",
            "atoms with equal keys have incompatible shapes",
        )),
    }
}

/// `[a , b] ▷ [a' , b']` from `a' ▷ a` and `b ▷ b'`.
fn hom_bridge(h: &Term, pre: &Term, post: &Term) -> Term {
    let body = comp_chain(vec![
        post.clone(),
        prod(P::Uncurry(id(h.clone()))),
        tensor_f(id(h.clone()), pre.clone()),
    ])
    .unwrap();
    prod(P::Curry(body))
}

/// `Λx:A. Θ ▷ Λx:A. Θ'` from `Θ ▷ Θ'` under the binder.
fn abs_bridge(ty: &Term, abs: &Term, under: Term) -> Term {
    let free = prod(P::Free(id(weaken(abs, 0, 1)), var(0)));
    prod(P::Bind(ty.clone(), compose(under, free)))
}

/// Canonical form of a supply together with `Δ ▷ reify(nf)` and back.
pub fn normalize_supply(env: &Env, ctx: &Ctx, d: &Term) -> Result<(SupplyNF, Term, Term)> {
    let flat = flatten(env, d)?;
    let (sorted, fwd, back) = sort_items(flat.items);
    let mut to_steps = Vec::new();
    let mut from_steps = Vec::new();
    let mut bridges_to = Vec::new();
    let mut bridges_from = Vec::new();
    for (atom, s) in &sorted {
        let (go, ret) = bridge(env, ctx, s, atom)?;
        bridges_to.push(go);
        bridges_from.push(ret);
    }
    let trivial = |bs: &[Term]| {
        bs.iter()
            .all(|b| matches!(b, Term::Prod(p) if matches!(**p, P::Id(_))))
    };
    if !trivial(&bridges_to) {
        to_steps.push(tensor_all(bridges_to));
    }
    to_steps.extend(fwd);
    to_steps.push(flat.to);
    from_steps.push(flat.from);
    from_steps.extend(back);
    if !trivial(&bridges_from) {
        from_steps.push(tensor_all(bridges_from));
    }
    let nf = SupplyNF {
        atoms: sorted.into_iter().map(|(a, _)| a).collect(),
    };
    Ok((
        nf,
        comp_chain(to_steps).unwrap(),
        comp_chain(from_steps).unwrap(),
    ))
}

/// `p₁ ⊗f (p₂ ⊗f (… ⊗f id ◇))`.
fn tensor_all(ps: Vec<Term>) -> Term {
    ps.into_iter()
        .rev()
        .fold(id(Term::Empty), |acc, p| tensor_f(p, acc))
}

/// Find a production `Δ₀ ▷ Δ₁`, or the atoms that cannot be matched.
pub fn solve(env: &Env, ctx: &Ctx, d0: &Term, d1: &Term) -> std::result::Result<Term, SolveError> {
    let (nf0, to0, _) = normalize_supply(env, ctx, d0)?;
    let (nf1, _, from1) = normalize_supply(env, ctx, d1)?;
    if nf0 == nf1 {
        let p = comp_chain(vec![from1, to0]).unwrap();
        return Ok(simplify(env, ctx, &p));
    }
    Err(SolveError::Mismatch(residue(&nf0, &nf1)))
}

/// The part of `Δ` left over once `Δ'` is taken out, if `Δ'` is contained
/// in `Δ` as a multiset of atoms.
pub fn sub_multiset(env: &Env, ctx: &Ctx, d: &Term, part: &Term) -> Result<Option<Term>> {
    let (nf0, _, _) = normalize_supply(env, ctx, d)?;
    let (nf1, _, _) = normalize_supply(env, ctx, part)?;
    let r = residue(&nf0, &nf1);
    if !r.right_only.is_empty() {
        return Ok(None);
    }
    Ok(Some(tensor_list(
        &r.left_only.iter().map(Atom::reify).collect::<Vec<_>>(),
    )))
}

/// Whether `Δ₀ ▷ Δ₁` holds, without building a witness.
pub fn decide(env: &Env, d0: &Term, d1: &Term) -> Result<bool> {
    Ok(normal_form(env, d0)? == normal_form(env, d1)?)
}

fn residue(nf0: &SupplyNF, nf1: &SupplyNF) -> MismatchResidue {
    let (mut i, mut j) = (0, 0);
    let (a, b) = (&nf0.atoms, &nf1.atoms);
    let mut left_only = Vec::new();
    let mut right_only = Vec::new();
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) if x == y => {
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                left_only.push(x.clone());
                i += 1;
            }
            (Some(_), Some(y)) => {
                right_only.push(y.clone());
                j += 1;
            }
            (Some(x), None) => {
                left_only.push(x.clone());
                i += 1;
            }
            (None, Some(y)) => {
                right_only.push(y.clone());
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    MismatchResidue {
        left_only,
        right_only,
    }
}

fn factors(p: &Term, out: &mut Vec<Term>) {
    match p {
        Term::Prod(b) if matches!(**b, P::Comp(..)) => {
            let P::Comp(second, first) = &**b else {
                unreachable!()
            };
            factors(first, out);
            factors(second, out);
        }
        _ => out.push(p.clone()),
    }
}

/// Shorten a well-typed composite without changing its endpoints: drop
/// identities and cancel a rule against its inverse.
fn simplify(env: &Env, ctx: &Ctx, p: &Term) -> Term {
    shorten(env, ctx, p).unwrap_or_else(|| identity_like(env, ctx, p))
}

/// `id Δ` for a production that cancels out entirely.
fn identity_like(env: &Env, ctx: &Ctx, p: &Term) -> Term {
    match endpoints(env, ctx, p) {
        Ok((s, _)) => id(s),
        Err(_) => p.clone(),
    }
}

/// `None` when the production reduces to an identity.
fn shorten(env: &Env, ctx: &Ctx, p: &Term) -> Option<Term> {
    let mut raw = Vec::new();
    factors(p, &mut raw);
    let no_ctx = Ctx::new();
    let mut out: Vec<Term> = Vec::new();
    for f in raw {
        let f = match &f {
            Term::Prod(b) => match &**b {
                P::Id(_) => continue,
                P::TensorF(l, r) => match (shorten(env, ctx, l), shorten(env, ctx, r)) {
                    (None, None) => continue,
                    (l2, r2) => tensor_f(
                        l2.unwrap_or_else(|| identity_like(env, ctx, l)),
                        r2.unwrap_or_else(|| identity_like(env, ctx, r)),
                    ),
                },
                _ => f.clone(),
            },
            _ => f.clone(),
        };
        if out
            .last()
            .is_some_and(|t| symmetrize(&no_ctx, t).is_ok_and(|inv| inv == f))
        {
            out.pop();
            continue;
        }
        out.push(f);
    }
    out.reverse();
    comp_chain(out)
}

/// Invert a production built from the invertible rules.
pub fn symmetrize(ctx: &Ctx, p: &Term) -> Result<Term> {
    let Term::Prod(inner) = p else {
        return Err(not_invertible(ctx, p));
    };
    Ok(match &**inner {
        P::Id(d) => id(d.clone()),
        P::Comp(b, a) => compose(symmetrize(ctx, a)?, symmetrize(ctx, b)?),
        P::TensorF(a, b) => tensor_f(symmetrize(ctx, a)?, symmetrize(ctx, b)?),
        P::Assoc(a, b, c) => assoc_inv(a.clone(), b.clone(), c.clone()),
        P::Swap(a, b) => swap(b.clone(), a.clone()),
        P::Unitr(d) => unitr_inv(d.clone()),
        P::UnitrInv(d) => unitr(d.clone()),
        P::OplTt => prod(P::LaxTt),
        P::LaxTt => prod(P::OplTt),
        P::OplPair(a, b) => prod(P::LaxPair(a.clone(), b.clone())),
        P::LaxPair(a, b) => prod(P::OplPair(a.clone(), b.clone())),
        P::SecInl(a) => prod(P::RetInl(a.clone())),
        P::RetInl(a) => prod(P::SecInl(a.clone())),
        P::SecInr(a) => prod(P::RetInr(a.clone())),
        P::RetInr(a) => prod(P::SecInr(a.clone())),
        P::SecInit(a) => prod(P::RetInit(a.clone())),
        P::RetInit(a) => prod(P::SecInit(a.clone())),
        P::BangF(d) => prod(P::BangF(symmetrize(ctx, d)?)),
        _ => return Err(not_invertible(ctx, p)),
    })
}

fn not_invertible(ctx: &Ctx, p: &Term) -> Diagnostic {
    Diagnostic::error(
        "solver.not-invertible",
        format!("`{}` is not built from invertible rules", ctx.show(p)),
    )
}

#[cfg(test)]
mod tests;
