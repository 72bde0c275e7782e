//! Judgments `Δ ⊩ L`: linear lambdas, applications, the variable rule and
//! `by`. Every leaf closes its supply gap with one call to the solver.

use super::ast::*;
use super::elab::{err, Elab, Witness};
use super::ltype::{arrow_view, judg, LType, Mult};
use crate::diag::{Result, Span};
use crate::kernel::conv;
use crate::solver::{solve, sub_multiset};
use crate::supply::{compose, id, tensor_f};
use crate::syntax::*;

impl Elab<'_> {
    /// A production `d0 ▷ d1` found by the solver, recorded as a witness.
    pub(super) fn bridge(&mut self, d0: &Term, d1: &Term, span: Span) -> Result<Term> {
        if conv(self.env, d0, d1) {
            return Ok(id(d0.clone()));
        }
        let p = solve(self.env, &self.ctx, d0, d1)
            .map_err(|e| e.into_diagnostic(&self.ctx).with_span(span))?;
        self.witnesses.push(Witness {
            span,
            names: self.ctx.names(),
            source: d0.clone(),
            target: d1.clone(),
            production: p.clone(),
        });
        Ok(p)
    }

    pub(super) fn check_judg(&mut self, e: &Expr, delta: &Term, l: &LType) -> Result<Term> {
        use ExprKind as K;
        match &e.kind {
            K::Lam { pat, bang, body } => self.linear_lambda(pat, *bang, body, delta, l, e.span),
            K::Case(s, clauses) => self.elab_case(s, clauses, &judg(delta, l), e.span),
            K::If(c, t, f) => self.elab_if(c, t, f, &judg(delta, l), e.span),
            K::By(inner, p) => self.by(inner, p, delta, l, e.span),
            _ => {
                if let Some(x) = self.expand_synonym(e) {
                    return self.check_judg(&x?, delta, l);
                }
                self.leaf(e, delta, l)
            }
        }
    }

    fn linear_lambda(
        &mut self,
        pat: &Pat,
        bang: bool,
        body: &Expr,
        delta: &Term,
        l: &LType,
        span: Span,
    ) -> Result<Term> {
        let ar = arrow_view(self.env, l).ok_or_else(|| {
            err(
                "surface.type-mismatch",
                format!(
                    "a linear lambda needs a linear function type, but `{}` was expected",
                    self.show(&l.base)
                ),
                span,
            )
        })?;
        if bang != matches!(ar.mult, Mult::Bang) {
            let msg = if bang {
                "`!↦` binds a `!⟨_⟩ ⊸` input, but this function takes its input linearly"
            } else {
                "this function takes a `!⟨_⟩` input; bind it with `!↦`"
            };
            return Err(err("surface.bang-lambda", msg, span));
        }
        let mark = self.mark();
        let goal_delta = tensor(
            weaken(delta, 0, 1),
            ar.mult.weaken(1).wrap(ar.dom.fam.clone()),
        );
        let name = match pat {
            Pat::Var(x) => x.as_str(),
            _ => "_",
        };
        self.bind(name, ar.dom.base.clone(), Some(ar.dom.fam.clone()));
        let res = if pat.is_irrefutable() {
            self.check_judg(body, &goal_delta, &ar.cod)
        } else {
            self.match_one(pat, body, &judg(&goal_delta, &ar.cod), span)
        };
        self.reset(mark);
        let j = res?;
        Ok(pair(
            lam(fst(j.clone())),
            prod(Production::Bind(
                ar.dom.base.clone(),
                prod(Production::Curry(snd(j))),
            )),
        ))
    }

    /// Synthesize a judgment and retarget its output supply to `l`'s.
    fn synth_against(&mut self, e: &Expr, l: &LType) -> Result<(Term, Term, Term)> {
        let (j, ds, ls) = self.synth_judg(e, Some(l))?;
        if !conv(self.env, &ls.base, &l.base) {
            return Err(err(
                "surface.type-mismatch",
                format!(
                    "expected `{}`, found a judgment about `{}`",
                    self.show(&l.base),
                    self.show(&ls.base)
                ),
                e.span,
            ));
        }
        let a = fst(j.clone());
        let fix = self.bridge(&ls.at(&a), &l.at(&a), e.span)?;
        let p = comp_chain(vec![fix, snd(j)]).unwrap();
        Ok((a, p, ds))
    }

    fn leaf(&mut self, e: &Expr, delta: &Term, l: &LType) -> Result<Term> {
        let (a, p, ds) = self.synth_against(e, l)?;
        let w = self.bridge(delta, &ds, e.span)?;
        Ok(pair(a, comp_chain(vec![p, w]).unwrap()))
    }

    fn by(&mut self, e: &Expr, p: &Expr, delta: &Term, l: &LType, span: Span) -> Result<Term> {
        let (a, p0, ds) = self.synth_against(e, l)?;
        let (q, s, t) = self.elab_prod(p, Some(delta))?;
        let (pre, core, out) = if conv(self.env, delta, &s) {
            (id(delta.clone()), q, t)
        } else {
            let rest = sub_multiset(self.env, &self.ctx, delta, &s)
                .map_err(|d| d.with_span(p.span))?
                .ok_or_else(|| {
                    err(
                        "surface.by-source",
                        format!(
                            "the production consumes `{}`, which is not part of the available supply `{}`",
                            self.show(&s),
                            self.show(delta)
                        ),
                        p.span,
                    )
                })?;
            let pre = self.bridge(delta, &tensor(s.clone(), rest.clone()), p.span)?;
            (pre, tensor_f(q, id(rest.clone())), tensor(t, rest))
        };
        let post = self.bridge(&out, &ds, span)?;
        Ok(pair(a, comp_chain(vec![p0, post, core, pre]).unwrap()))
    }

    /// The judgment an expression denotes, its supply `Δ` and linear type.
    pub(super) fn synth_judg(
        &mut self,
        e: &Expr,
        hint: Option<&LType>,
    ) -> Result<(Term, Term, LType)> {
        use ExprKind as K;
        match &e.kind {
            K::VarRule(x) => {
                let (t, ty) = match hint {
                    Some(h) => (self.check(x, &h.base)?, h.base.clone()),
                    None => self.synth(x)?,
                };
                let d = iota(t.clone());
                Ok((pair(t, id(d.clone())), d, LType::plain(ty)))
            }
            K::FnJudg(f) => {
                let K::Var(name) = &f.kind else {
                    return Err(err(
                        "surface.fn-judgment",
                        "`⊖` applies to a variable bound by a linear function",
                        e.span,
                    ));
                };
                match self.local(name) {
                    Some((t, Some(fam))) => {
                        let ty = self.infer(&t, e.span)?;
                        let d = instantiate(&fam, &t);
                        Ok((pair(t, id(d.clone())), d, LType { base: ty, fam }))
                    }
                    Some(_) => Err(err(
                        "surface.no-family",
                        format!("`{name}` is not bound by a linear function, so it has no supply"),
                        e.span,
                    )),
                    None => Err(err(
                        "scope.unbound",
                        format!("unknown name `{name}`"),
                        f.span,
                    )),
                }
            }
            K::LApp { fun, mult, arg } => self.linear_app(fun, mult, arg, e.span),
            K::By(..) => Err(err(
                "surface.by-needs-goal",
                "`by` needs a known goal judgment; add a type annotation",
                e.span,
            )),
            _ => {
                let (t, ty) = self.synth(e)?;
                match super::ltype::judg_view(self.env, &ty) {
                    Some((d, l)) => Ok((t, d, l)),
                    None => Err(err(
                        "surface.not-a-judgment",
                        format!(
                            "expected a judgment `Δ ⊩ L`, found `{}` of type `{}`; use `{}ι` for the variable rule",
                            self.ctx.show(&t),
                            self.show(&ty),
                            self.ctx.show(&t)
                        ),
                        e.span,
                    )),
                }
            }
        }
    }

    fn linear_app(
        &mut self,
        fun: &Expr,
        mult: &MultExpr,
        arg: &Expr,
        span: Span,
    ) -> Result<(Term, Term, LType)> {
        let (jf, d0, lf) = self.synth_judg(fun, None)?;
        let ar = arrow_view(self.env, &lf).ok_or_else(|| {
            err(
                "surface.not-a-linear-function",
                format!(
                    "`@` needs a linear function, found a judgment about `{}`",
                    self.show(&lf.base)
                ),
                fun.span,
            )
        })?;
        let mismatch = |el: &Self, want: &str| {
            err(
                "surface.multiplicity",
                format!(
                    "this application uses its argument {want}, but the function takes `{}`",
                    el.describe_mult(&ar.mult)
                ),
                span,
            )
        };
        match (mult, &ar.mult) {
            (MultExpr::One, Mult::Plain) => {}
            (MultExpr::One, Mult::Num(m)) if conv(self.env, m, &numeral(1)) => {}
            (MultExpr::One, _) => return Err(mismatch(self, "once (`@`)")),
            (MultExpr::Num(me), Mult::Num(m)) => {
                let k = self.check(me, &crate::syntax::nat())?;
                if !conv(self.env, &k, m) {
                    return Err(mismatch(self, &format!("`{}` times", self.show(&k))));
                }
            }
            (MultExpr::Num(_), _) => return Err(mismatch(self, "a counted number of times")),
            (MultExpr::Bang, Mult::Bang) => {}
            (MultExpr::Bang, _) => return Err(mismatch(self, "without restriction (`!@`)")),
        }
        let (a, d1, da) = self.synth_against(arg, &ar.dom)?;
        let (powd, wrapped) = match &ar.mult {
            Mult::Plain => (d1, da),
            Mult::Num(m) => {
                let p = match &d1 {
                    Term::Prod(b) if matches!(**b, Production::Id(_)) => {
                        let Production::Id(d) = &**b else {
                            unreachable!()
                        };
                        id(pow(d.clone(), m.clone()))
                    }
                    _ => crate::supply::pow_production(self.env, &d1, m)
                        .map_err(|d| d.with_span(arg.span))?,
                };
                (p, pow(da, m.clone()))
            }
            Mult::Bang => (prod(Production::BangF(d1)), bang(da)),
        };
        let call = prod(Production::Uncurry(prod(Production::Free(
            snd(jf.clone()),
            a.clone(),
        ))));
        let p = compose(call, tensor_f(id(d0.clone()), powd));
        let ls = LType {
            base: instantiate(&ar.cod.base, &a),
            fam: substitute(&ar.cod.fam, 1, &weaken(&a, 0, 1)),
        };
        Ok((pair(app(fst(jf), a), p), tensor(d0, wrapped), ls))
    }

    fn describe_mult(&self, m: &Mult) -> String {
        match m {
            Mult::Plain => "its input once".into(),
            Mult::Num(k) => format!("`{}` copies of its input", self.show(k)),
            Mult::Bang => "an unrestricted `!` input".into(),
        }
    }
}
