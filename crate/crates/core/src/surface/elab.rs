//! Elaboration of surface expressions into kernel terms.
//!
//! Host expressions are checked or synthesized bidirectionally. Expressions
//! checked against a judgment type `Δ ⊩ L` go through [`Elab::check_judg`],
//! which builds the production half and leaves one solver obligation per
//! leaf (see `judg.rs`).

use super::ast::*;
use super::ltype::{judg, judg_view, Arrow, LType, Mult};
use crate::diag::{Diagnostic, Result, Span};
use crate::kernel::{conv, infer, normalize, whnf, Ctx, Env};
use crate::syntax::*;
use std::collections::HashMap;

/// A pattern synonym: parameter names and right-hand side.
#[derive(Debug, Clone, PartialEq)]
pub struct Synonym {
    pub params: Vec<String>,
    pub rhs: Pat,
}

pub type Synonyms = HashMap<String, Synonym>;

/// A production found by the solver for one leaf obligation.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub span: Span,
    /// Variable names of the context the supplies live in.
    pub names: Vec<String>,
    pub source: Term,
    pub target: Term,
    pub production: Term,
}

impl Witness {
    pub fn render(&self) -> String {
        let show = |t: &Term| crate::pretty::show(t, &self.names);
        format!(
            "{}: {} ▷ {}\n    {}",
            self.span,
            show(&self.source),
            show(&self.target),
            show(&self.production)
        )
    }
}

#[derive(Debug, Clone)]
pub(super) enum Binding {
    /// A context variable at de Bruijn level `level`. `fam` is its supply
    /// family, a term under one binder in the context of length `level`.
    Bound { level: usize, fam: Option<Term> },
    /// A name for a term built in a context of length `len_at`.
    Alias { term: Term, len_at: usize },
}

pub struct Elab<'a> {
    pub(super) env: &'a Env,
    pub(super) synonyms: &'a Synonyms,
    pub(super) ctx: Ctx,
    pub(super) scope: Vec<(String, Binding)>,
    pub witnesses: Vec<Witness>,
}

pub(super) fn err(rule: &str, msg: impl Into<String>, span: Span) -> Diagnostic {
    Diagnostic::error(rule, msg).with_span(span)
}

/// Production rule names usable in production positions.
pub(super) const KEYWORDS: &[&str] = &[
    "id", "assoc", "assoc'", "swap", "unitr", "unitr'", "unitl", "unitl'", "opltt", "laxtt", "opl",
    "lax", "secinl", "retinl", "secinr", "retinr", "secinit", "retinit", "curry", "uncurry",
    "free", "!f", "dupl", "erase", "use", "mult", "coh◇", "coh⊗", "distr",
];

/// Head variable and arguments of an application spine.
pub(super) fn spine(e: &Expr) -> (&Expr, Vec<&Expr>) {
    let mut args = Vec::new();
    let mut cur = e;
    while let ExprKind::App(f, a) = &cur.kind {
        args.push(&**a);
        cur = f;
    }
    args.reverse();
    (cur, args)
}

impl<'a> Elab<'a> {
    pub fn new(env: &'a Env, synonyms: &'a Synonyms) -> Elab<'a> {
        Elab {
            env,
            synonyms,
            ctx: Ctx::new(),
            scope: Vec::new(),
            witnesses: Vec::new(),
        }
    }

    /// Add a named variable to the context of later elaborations.
    pub fn push_local(&mut self, name: &str, ty: Term) {
        self.bind(name, ty, None);
    }

    pub fn context(&self) -> &Ctx {
        &self.ctx
    }

    /// Elaborate a closed run-time argument without type information.
    /// Unknown names stay as opaque constants and `_` as the constant `_`.
    pub fn elab_untyped(&mut self, e: &Expr) -> Result<Term> {
        use ExprKind as K;
        if let Some(x) = self.expand_synonym(e) {
            return self.elab_untyped(&x?);
        }
        Ok(match &e.kind {
            K::Var(x) => match self.local(x) {
                Some((t, _)) => t,
                None => konst(x),
            },
            K::Hole => konst("_"),
            K::Num(n) => numeral(*n),
            K::Tt => Term::Tt,
            K::Pair(a, b) => pair(self.elab_untyped(a)?, self.elab_untyped(b)?),
            K::Prim(p, a) => {
                let a = self.elab_untyped(a)?;
                match p {
                    Prim::Inl => inl(a),
                    Prim::Inr => inr(a),
                    Prim::Init => init(a),
                    Prim::Fst => fst(a),
                    Prim::Snd => snd(a),
                }
            }
            K::App(f, a) => app(self.elab_untyped(f)?, self.elab_untyped(a)?),
            _ => self.synth(e)?.0,
        })
    }

    // Scope management.

    pub(super) fn mark(&self) -> (usize, usize) {
        (self.ctx.len(), self.scope.len())
    }

    pub(super) fn reset(&mut self, mark: (usize, usize)) {
        while self.ctx.len() > mark.0 {
            self.ctx.pop();
        }
        self.scope.truncate(mark.1);
    }

    /// Extend the context with a named variable.
    pub(super) fn bind(&mut self, name: &str, ty: Term, fam: Option<Term>) {
        let level = self.ctx.len();
        self.ctx.push(name, ty);
        self.scope
            .push((name.to_string(), Binding::Bound { level, fam }));
    }

    pub(super) fn alias(&mut self, name: &str, term: Term) {
        let len_at = self.ctx.len();
        self.scope
            .push((name.to_string(), Binding::Alias { term, len_at }));
    }

    pub(super) fn is_local(&self, name: &str) -> bool {
        self.scope.iter().any(|(n, _)| n == name)
    }

    /// Term and supply family of a local name, in the current context.
    pub(super) fn local(&self, name: &str) -> Option<(Term, Option<Term>)> {
        let n = self.ctx.len();
        let (_, b) = self.scope.iter().rev().find(|(x, _)| x == name)?;
        Some(match b {
            Binding::Bound { level, fam } => (
                var(n - 1 - level),
                fam.as_ref().map(|f| weaken(f, 1, n - level)),
            ),
            Binding::Alias { term, len_at } => (weaken(term, 0, n - len_at), None),
        })
    }

    pub(super) fn synonym(&self, name: &str) -> Option<&'a Synonym> {
        if self.is_local(name) {
            return None;
        }
        self.synonyms.get(name)
    }

    pub(super) fn is_keyword(&self, name: &str) -> bool {
        KEYWORDS.contains(&name) && !self.is_local(name)
    }

    pub(super) fn show(&self, t: &Term) -> String {
        self.ctx.show(&normalize(self.env, t))
    }

    pub(super) fn infer(&self, t: &Term, span: Span) -> Result<Term> {
        infer(self.env, &self.ctx, t).map_err(|d| d.with_span(span))
    }

    // Pattern synonyms as expressions.

    /// Expand `name args` into the constructor expression it abbreviates.
    pub(super) fn expand_synonym(&self, e: &Expr) -> Option<Result<Expr>> {
        let (head, args) = spine(e);
        let ExprKind::Var(name) = &head.kind else {
            return None;
        };
        let syn = self.synonym(name)?;
        if syn.params.len() != args.len() {
            return Some(Err(err(
                "surface.synonym-arity",
                format!(
                    "`{name}` takes {} argument(s), but {} were given",
                    syn.params.len(),
                    args.len()
                ),
                e.span,
            )));
        }
        let map: HashMap<&str, &Expr> = syn
            .params
            .iter()
            .map(String::as_str)
            .zip(args.iter().copied())
            .collect();
        Some(Ok(pat_expr(&syn.rhs, &map, e.span)))
    }

    // Types.

    pub fn elab_type(&mut self, e: &Expr) -> Result<Term> {
        self.check(e, &Term::Universe)
    }

    pub(super) fn elab_supply(&mut self, e: &Expr) -> Result<Term> {
        self.check(e, &Term::SupplyTy)
    }

    pub(super) fn elab_ltype(&mut self, e: &Expr) -> Result<LType> {
        let ExprKind::LArrow {
            binder,
            dom,
            mult,
            cod,
        } = &e.kind
        else {
            return Ok(LType::plain(self.elab_type(e)?));
        };
        let dom = self.elab_ltype(dom)?;
        let mult = match mult {
            MultExpr::One => Mult::Num(numeral(1)),
            MultExpr::Num(m) => Mult::Num(self.check(m, &nat())?),
            MultExpr::Bang => Mult::Bang,
        };
        let mark = self.mark();
        match binder {
            None => self.bind("_", dom.base.clone(), Some(dom.fam.clone())),
            Some(Pat::Var(x)) => self.bind(x, dom.base.clone(), Some(dom.fam.clone())),
            Some(p) => {
                self.bind("•", dom.base.clone(), Some(dom.fam.clone()));
                self.bind_projections(p, var(0), e.span)?;
            }
        }
        let cod = self.elab_ltype(cod);
        self.reset(mark);
        Ok(super::ltype::arrow(&Arrow {
            dom,
            mult,
            cod: cod?,
        }))
    }

    /// Names for the components of a pair-shaped binder.
    pub(super) fn bind_projections(&mut self, p: &Pat, t: Term, span: Span) -> Result<()> {
        match p {
            Pat::Var(x) => {
                self.alias(x, t);
                Ok(())
            }
            Pat::Wild => Ok(()),
            Pat::Pair(a, b) => {
                self.bind_projections(a, fst(t.clone()), span)?;
                self.bind_projections(b, snd(t), span)
            }
            _ => Err(err(
                "surface.binder",
                "only variables and pairs may appear in a linear function binder",
                span,
            )),
        }
    }

    // Host terms.

    /// Elaborate an argument of `ι`, which needs no type.
    pub(super) fn elab_any(&mut self, e: &Expr) -> Result<Term> {
        match &e.kind {
            ExprKind::Pair(a, b) => Ok(pair(self.elab_any(a)?, self.elab_any(b)?)),
            ExprKind::Prim(Prim::Inl, a) => Ok(inl(self.elab_any(a)?)),
            ExprKind::Prim(Prim::Inr, a) => Ok(inr(self.elab_any(a)?)),
            ExprKind::Prim(Prim::Init, a) => Ok(init(self.elab_any(a)?)),
            ExprKind::Tt => Ok(Term::Tt),
            _ => match self.expand_synonym(e) {
                Some(x) => self.elab_any(&x?),
                None => Ok(self.synth(e)?.0),
            },
        }
    }

    fn global(&self, name: &str, span: Span) -> Result<(Term, Term)> {
        match self.env.get(name) {
            Some(def) => Ok((konst(name), def.ty.clone())),
            None if KEYWORDS.contains(&name) => Err(err(
                "surface.production-keyword",
                format!("`{name}` is a production rule and can only be used where a production is expected"),
                span,
            )),
            None => Err(err("scope.unbound", format!("unknown name `{name}`"), span)),
        }
    }

    fn apply(&mut self, f: Term, fty: &Term, arg: &Expr, span: Span) -> Result<(Term, Term)> {
        match whnf(self.env, fty) {
            Term::Pi(a, b) => {
                let x = self.check(arg, &a)?;
                Ok((app(f, x.clone()), instantiate(&b, &x)))
            }
            other => Err(err(
                "surface.not-a-function",
                format!(
                    "`{}` has type `{}`, which is not a function type",
                    self.ctx.show(&f),
                    self.show(&other)
                ),
                span,
            )),
        }
    }

    /// Apply a prelude function, bypassing local names.
    fn library_call(&mut self, name: &str, args: &[&Expr], span: Span) -> Result<(Term, Term)> {
        let (mut f, mut ty) = self.global(name, span).map_err(|_| {
            err(
                "scope.needs-prelude",
                format!("this notation is defined through the prelude function `{name}`, which is not loaded"),
                span,
            )
        })?;
        for a in args {
            (f, ty) = self.apply(f, &ty, a, span)?;
        }
        Ok((f, ty))
    }

    pub fn synth(&mut self, e: &Expr) -> Result<(Term, Term)> {
        self.synth_inner(e).map_err(|d| d.with_span(e.span))
    }

    fn synth_inner(&mut self, e: &Expr) -> Result<(Term, Term)> {
        use ExprKind as K;
        let sp = e.span;
        Ok(match &e.kind {
            K::Var(x) => {
                if let Some((t, _)) = self.local(x) {
                    let ty = self.infer(&t, sp)?;
                    return Ok((t, ty));
                }
                if self.synonym(x).is_some() {
                    return Err(not_inferable(sp));
                }
                self.global(x, sp)?
            }
            K::Hole => {
                return Err(err(
                    "surface.hole",
                    "cannot work out what `_` stands for here",
                    sp,
                ))
            }
            K::Num(n) => (numeral(*n), nat()),
            K::Type => (Term::Universe, Term::Universe),
            K::SupplyTy | K::Unit => {
                let t = if matches!(e.kind, K::Unit) {
                    Term::Unit
                } else {
                    Term::SupplyTy
                };
                (t, Term::Universe)
            }
            K::Tt => (Term::Tt, Term::Unit),
            K::Empty => (Term::Empty, Term::SupplyTy),
            K::App(f, a) => {
                let (head, _) = spine(e);
                if let K::Var(name) = &head.kind {
                    if self.synonym(name).is_some() {
                        return Err(not_inferable(sp));
                    }
                    if self.is_keyword(name) && !self.env.contains(name) {
                        let (p, s, t) = self.elab_prod(e, None)?;
                        return Ok((p, prod_ty(s, t)));
                    }
                }
                let (tf, tyf) = self.synth(f)?;
                self.apply(tf, &tyf, a, sp)?
            }
            K::Pi { name, dom, cod } | K::Sigma { name, dom, cod } => {
                let a = self.elab_type(dom)?;
                let mark = self.mark();
                self.bind(name.as_deref().unwrap_or("_"), a.clone(), None);
                let b = self.elab_type(cod);
                self.reset(mark);
                let b = b?;
                let t = if matches!(e.kind, K::Pi { .. }) {
                    pi(a, b)
                } else {
                    sigma(a, b)
                };
                (t, Term::Universe)
            }
            K::Sum(a, b) => (sum(self.elab_type(a)?, self.elab_type(b)?), Term::Universe),
            K::Mu(x, body) => {
                let mark = self.mark();
                self.bind(x, Term::Universe, None);
                let f = self.elab_type(body);
                self.reset(mark);
                (mu(f?), Term::Universe)
            }
            K::Prim(Prim::Fst, p) => {
                let (t, ty) = self.synth(p)?;
                match whnf(self.env, &ty) {
                    Term::Sigma(a, _) => (fst(t), *a),
                    other => return Err(not_pair(self, &other, sp)),
                }
            }
            K::Prim(Prim::Snd, p) => {
                let (t, ty) = self.synth(p)?;
                match whnf(self.env, &ty) {
                    Term::Sigma(_, b) => {
                        let first = fst(t.clone());
                        (snd(t), instantiate(&b, &first))
                    }
                    other => return Err(not_pair(self, &other, sp)),
                }
            }
            K::Prim(..) | K::Pair(..) | K::Lam { .. } | K::Case(..) | K::If(..) => {
                return Err(not_inferable(sp))
            }
            K::Iota(a) => (iota(self.elab_any(a)?), Term::SupplyTy),
            K::Bang(d) => (bang(self.elab_supply(d)?), Term::SupplyTy),
            K::Tensor(a, b) => (
                tensor(self.elab_supply(a)?, self.elab_supply(b)?),
                Term::SupplyTy,
            ),
            K::Hom(a, b) => (
                hom(self.elab_supply(a)?, self.elab_supply(b)?),
                Term::SupplyTy,
            ),
            K::Pow(d, m) => (
                pow(self.elab_supply(d)?, self.check(m, &nat())?),
                Term::SupplyTy,
            ),
            K::SupAbs(x, a, body) => {
                let a = self.elab_type(a)?;
                let mark = self.mark();
                self.bind(x, a.clone(), None);
                let body = self.elab_supply(body);
                self.reset(mark);
                (sup_abs(a, body?), Term::SupplyTy)
            }
            K::ProdTy(a, b) => (
                prod_ty(self.elab_supply(a)?, self.elab_supply(b)?),
                Term::Universe,
            ),
            K::Judg(d, l) => {
                let d = self.elab_supply(d)?;
                let l = self.elab_ltype(l)?;
                (judg(&d, &l), Term::Universe)
            }
            K::LArrow { .. } => {
                return Err(err(
                    "surface.linear-type",
                    "a linear function type must appear to the right of `⊩`",
                    sp,
                ))
            }
            K::Res(x) => match self.local(x) {
                Some((t, Some(fam))) => (instantiate(&fam, &t), Term::SupplyTy),
                Some(_) => {
                    return Err(err(
                        "surface.no-family",
                        format!("`{x}` is not bound by a linear function, so it has no supply"),
                        sp,
                    ))
                }
                None => return Err(err("scope.unbound", format!("unknown name `{x}`"), sp)),
            },
            K::Mul(a, b) => self.library_call("mul", &[a, b], sp)?,
            K::BoolNat(b) => self.library_call("toNat", &[b], sp)?,
            K::Not(b) => self.library_call("not", &[b], sp)?,
            K::VarRule(_) | K::FnJudg(_) | K::LApp { .. } => {
                let (j, d, l) = self.synth_judg(e, None)?;
                (j, judg(&d, &l))
            }
            K::By(..) => {
                return Err(err(
                    "surface.by-needs-goal",
                    "`by` needs a known goal judgment; add a type annotation",
                    sp,
                ))
            }
            K::Comp(..) | K::TensorF(..) | K::Bind(..) => {
                let (p, s, t) = self.elab_prod(e, None)?;
                (p, prod_ty(s, t))
            }
        })
    }

    pub fn check(&mut self, e: &Expr, ty: &Term) -> Result<Term> {
        self.check_inner(e, ty).map_err(|d| d.with_span(e.span))
    }

    fn check_inner(&mut self, e: &Expr, ty: &Term) -> Result<Term> {
        use ExprKind as K;
        let want = whnf(self.env, ty);
        if let (K::Pair(x, y), Term::Sigma(a, b)) = (&e.kind, &want) {
            let x = self.check(x, a)?;
            let y = self.check(y, &instantiate(b, &x))?;
            return Ok(pair(x, y));
        }
        if let Some((delta, l)) = judg_view(self.env, &want) {
            return self.check_judg(e, &delta, &l);
        }
        if let Term::ProdTy(s, t) = &want {
            let (p, s1, t1) = self.elab_prod(e, Some(s))?;
            self.expect_endpoints(&s1, &t1, s, t, e.span)?;
            return Ok(p);
        }
        if let Some(x) = self.expand_synonym(e) {
            return self.check(&x?, ty);
        }
        match (&e.kind, &want) {
            (K::Lam { pat, bang, body }, Term::Pi(a, b)) => {
                if *bang {
                    return Err(err(
                        "surface.bang-lambda",
                        "`!↦` introduces a `!⟨_⟩ ⊸` function, but an ordinary function type is expected",
                        e.span,
                    ));
                }
                let mark = self.mark();
                let name = match pat {
                    Pat::Var(x) => x.as_str(),
                    _ => "_",
                };
                self.bind(name, (**a).clone(), None);
                let body = if pat.is_irrefutable() {
                    self.check(body, b)
                } else {
                    self.match_one(pat, body, b, e.span)
                };
                self.reset(mark);
                Ok(lam(body?))
            }
            (K::Case(s, clauses), _) => self.elab_case(s, clauses, ty, e.span),
            (K::If(c, t, f), _) => self.elab_if(c, t, f, ty, e.span),
            (K::Prim(Prim::Inl, x), Term::Sum(a, _)) => Ok(inl(self.check(x, a)?)),
            (K::Prim(Prim::Inr, x), Term::Sum(_, b)) => Ok(inr(self.check(x, b)?)),
            (K::Prim(Prim::Init, x), Term::Mu(f)) => {
                Ok(init(self.check(x, &instantiate(f, &want))?))
            }
            (K::Tt, Term::Unit) => Ok(Term::Tt),
            (K::Lam { .. } | K::Pair(..) | K::Prim(Prim::Inl | Prim::Inr | Prim::Init, _), _) => {
                Err(err(
                    "surface.type-mismatch",
                    format!("this expression cannot have type `{}`", self.show(ty)),
                    e.span,
                ))
            }
            _ => {
                let (t, got) = self.synth(e)?;
                if conv(self.env, &got, ty) {
                    Ok(t)
                } else {
                    Err(err(
                        "surface.type-mismatch",
                        format!(
                            "expected `{}`, found `{}` of type `{}`",
                            self.show(ty),
                            self.ctx.show(&t),
                            self.show(&got)
                        ),
                        e.span,
                    ))
                }
            }
        }
    }

    pub(super) fn expect_endpoints(
        &self,
        s1: &Term,
        t1: &Term,
        s: &Term,
        t: &Term,
        span: Span,
    ) -> Result<()> {
        for (what, got, want) in [("source", s1, s), ("target", t1, t)] {
            if !conv(self.env, got, want) {
                return Err(err(
                    "production.endpoint",
                    format!(
                        "production {what} is `{}` but `{}` was expected",
                        self.show(got),
                        self.show(want)
                    ),
                    span,
                ));
            }
        }
        Ok(())
    }
}

fn not_inferable(span: Span) -> Diagnostic {
    err(
        "surface.not-inferable",
        "cannot infer the type of this expression; it needs a known expected type",
        span,
    )
}

fn not_pair(el: &Elab, ty: &Term, span: Span) -> Diagnostic {
    err(
        "surface.type-mismatch",
        format!("expected a pair, found a value of type `{}`", el.show(ty)),
        span,
    )
}

/// The expression a synonym's right-hand side denotes, given its arguments.
fn pat_expr(p: &Pat, args: &HashMap<&str, &Expr>, span: Span) -> Expr {
    let mk = |k| Expr::new(k, span);
    let bx = |p: &Pat| Box::new(pat_expr(p, args, span));
    match p {
        Pat::Var(x) => match args.get(x.as_str()) {
            Some(e) => (*e).clone(),
            None => mk(ExprKind::Var(x.clone())),
        },
        Pat::Wild => mk(ExprKind::Hole),
        Pat::Tt => mk(ExprKind::Tt),
        Pat::Pair(a, b) => mk(ExprKind::Pair(bx(a), bx(b))),
        Pat::Inl(a) => mk(ExprKind::Prim(Prim::Inl, bx(a))),
        Pat::Inr(a) => mk(ExprKind::Prim(Prim::Inr, bx(a))),
        Pat::Init(a) => mk(ExprKind::Prim(Prim::Init, bx(a))),
        Pat::Syn(n, ps) => ps.iter().fold(mk(ExprKind::Var(n.clone())), |f, p| {
            mk(ExprKind::App(Box::new(f), bx(p)))
        }),
    }
}
