//! Production expressions: rule names applied to arguments, `∘`, `⊗f` and
//! `bind`. Omitted arguments are read off the expected source supply.

use super::ast::*;
use super::elab::{err, spine, Elab};
use crate::diag::{Diagnostic, Result, Span};
use crate::kernel::{conv, whnf};
use crate::supply::{self, endpoints};
use crate::syntax::*;
use Production as P;

/// What a rule argument denotes.
#[derive(Clone, Copy, PartialEq)]
enum Slot {
    Supply,
    Term,
    Nat,
    Prod,
}

fn slots(rule: &str) -> &'static [Slot] {
    use Slot::*;
    match rule {
        "opltt" | "laxtt" | "coh◇" => &[],
        "id" | "unitr" | "unitr'" | "unitl" | "unitl'" | "dupl" | "erase" | "use" | "mult" => {
            &[Supply]
        }
        "swap" | "coh⊗" => &[Supply, Supply],
        "assoc" | "assoc'" => &[Supply, Supply, Supply],
        "opl" | "lax" => &[Term, Term],
        "curry" | "uncurry" | "!f" => &[Prod],
        "free" => &[Prod, Term],
        "distr" => &[Nat, Nat, Supply, Supply],
        _ => &[Term],
    }
}

impl Elab<'_> {
    fn view(&self, t: &Term, f: impl Fn(&Term) -> Option<Vec<Term>>) -> Option<Vec<Term>> {
        f(t).or_else(|| f(&whnf(self.env, t)))
    }

    fn split_tensor(&self, t: &Term) -> Option<(Term, Term)> {
        let v = self.view(t, |t| match t {
            Term::Tensor(a, b) => Some(vec![(**a).clone(), (**b).clone()]),
            _ => None,
        })?;
        Some((v[0].clone(), v[1].clone()))
    }

    fn under_iota(&self, t: &Term) -> Option<Term> {
        self.view(t, |t| match t {
            Term::Iota(a) => Some(vec![(**a).clone()]),
            _ => None,
        })
        .map(|v| v[0].clone())
    }

    fn under_bang(&self, t: &Term) -> Option<Term> {
        self.view(t, |t| match t {
            Term::Bang(a) => Some(vec![(**a).clone()]),
            _ => None,
        })
        .map(|v| v[0].clone())
    }

    fn pow_base(&self, t: &Term) -> Option<Term> {
        self.view(t, |t| match t {
            Term::Pow(a, _) => Some(vec![(**a).clone()]),
            _ => None,
        })
        .map(|v| v[0].clone())
    }

    /// Default values for a rule's supply and term arguments, from the source.
    fn defaults(&self, rule: &str, src: &Term) -> Vec<Option<Term>> {
        let tens = |t: &Term| self.split_tensor(t);
        let inside = |t: &Term, ctor: fn(&Term) -> Option<Term>| {
            self.under_iota(t)
                .and_then(|a| ctor(&a).or_else(|| ctor(&whnf(self.env, &a))))
        };
        match rule {
            "id" | "unitr'" | "unitl'" => vec![Some(src.clone())],
            "assoc" => match tens(src).and_then(|(ab, c)| Some((tens(&ab)?, c))) {
                Some(((a, b), c)) => vec![Some(a), Some(b), Some(c)],
                None => vec![None; 3],
            },
            "assoc'" => match tens(src).and_then(|(a, bc)| Some((a, tens(&bc)?))) {
                Some((a, (b, c))) => vec![Some(a), Some(b), Some(c)],
                None => vec![None; 3],
            },
            "swap" => match tens(src) {
                Some((a, b)) => vec![Some(a), Some(b)],
                None => vec![None; 2],
            },
            "unitr" => vec![tens(src).map(|(d, _)| d)],
            "unitl" => vec![tens(src).map(|(_, d)| d)],
            "opl" => match self.under_iota(src).map(|a| whnf(self.env, &a)) {
                Some(Term::Pair(a, b)) => vec![Some(*a), Some(*b)],
                _ => vec![None; 2],
            },
            "lax" => match tens(src) {
                Some((a, b)) => vec![self.under_iota(&a), self.under_iota(&b)],
                None => vec![None; 2],
            },
            "secinl" => vec![inside(src, |t| match t {
                Term::Inl(a) => Some((**a).clone()),
                _ => None,
            })],
            "secinr" => vec![inside(src, |t| match t {
                Term::Inr(a) => Some((**a).clone()),
                _ => None,
            })],
            "secinit" => vec![inside(src, |t| match t {
                Term::Init(a) => Some((**a).clone()),
                _ => None,
            })],
            "retinl" | "retinr" | "retinit" => vec![self.under_iota(src)],
            "dupl" | "erase" | "use" | "mult" => vec![self.under_bang(src)],
            "coh⊗" => match tens(src) {
                Some((a, b)) => vec![self.under_bang(&a), self.under_bang(&b)],
                None => vec![None; 2],
            },
            "distr" => match tens(src) {
                Some((a, b)) => vec![None, None, self.pow_base(&a), self.pow_base(&b)],
                None => vec![None; 4],
            },
            _ => vec![],
        }
    }

    /// Elaborate a production; returns it with its source and target.
    pub(super) fn elab_prod(&mut self, e: &Expr, src: Option<&Term>) -> Result<(Term, Term, Term)> {
        use ExprKind as K;
        match &e.kind {
            K::Comp(second, first) => {
                let (p0, s, mid) = self.elab_prod(first, src)?;
                let (p1, mid2, t) = self.elab_prod(second, Some(&mid))?;
                if !conv(self.env, &mid, &mid2) {
                    return Err(err(
                        "production.compose",
                        format!(
                            "cannot compose: the first production ends in `{}` but the second starts from `{}`",
                            self.show(&mid),
                            self.show(&mid2)
                        ),
                        e.span,
                    ));
                }
                Ok((supply::compose(p1, p0), s, t))
            }
            K::TensorF(l, r) => {
                let halves = src.and_then(|s| self.split_tensor(s));
                let (sl, sr) = match &halves {
                    Some((a, b)) => (Some(a), Some(b)),
                    None => (None, None),
                };
                let (pl, s0, t0) = self.elab_prod(l, sl)?;
                let (pr, s1, t1) = self.elab_prod(r, sr)?;
                Ok((supply::tensor_f(pl, pr), tensor(s0, s1), tensor(t0, t1)))
            }
            K::Bind(x, ty, body) => {
                let a = self.elab_type(ty)?;
                let mark = self.mark();
                self.bind(x, a.clone(), None);
                let inner_src = src.map(|s| weaken(s, 0, 1));
                let res = self.elab_prod(body, inner_src.as_ref());
                self.reset(mark);
                let (p, s, t) = res?;
                let s = strengthen(&s).ok_or_else(|| {
                    err(
                        "production.bind-escape",
                        format!("the source of the body of `bind {x}` must not mention `{x}`"),
                        e.span,
                    )
                })?;
                Ok((prod(P::Bind(a.clone(), p)), s, sup_abs(a, t)))
            }
            K::Hole => Err(err(
                "surface.hole",
                "cannot work out which production `_` stands for",
                e.span,
            )),
            _ => {
                let (head, args) = spine(e);
                if let K::Var(name) = &head.kind {
                    if self.is_keyword(name) {
                        return self.rule(name, &args, src, e.span);
                    }
                }
                let (t, ty) = self.synth(e)?;
                match whnf(self.env, &ty) {
                    Term::ProdTy(s, d) => Ok((t, *s, *d)),
                    other => Err(err(
                        "production.expected",
                        format!(
                            "expected a production, found `{}` of type `{}`",
                            self.ctx.show(&t),
                            self.show(&other)
                        ),
                        e.span,
                    )),
                }
            }
        }
    }

    fn rule(
        &mut self,
        name: &str,
        args: &[&Expr],
        src: Option<&Term>,
        span: Span,
    ) -> Result<(Term, Term, Term)> {
        let kinds = slots(name);
        if args.len() > kinds.len() {
            return Err(err(
                "production.arity",
                format!(
                    "`{name}` takes {} argument(s), but {} were given",
                    kinds.len(),
                    args.len()
                ),
                span,
            ));
        }
        let defaults = src.map(|s| self.defaults(name, s)).unwrap_or_default();
        let mut vals: Vec<Term> = Vec::with_capacity(kinds.len());
        for (i, kind) in kinds.iter().enumerate() {
            let given = args.get(i).filter(|a| !matches!(a.kind, ExprKind::Hole));
            let missing = || {
                err(
                    "production.hole",
                    format!(
                        "cannot work out argument {} of `{name}` from the source supply; write it explicitly",
                        i + 1
                    ),
                    args.get(i).map_or(span, |a| a.span),
                )
            };
            let v = match (kind, given) {
                (Slot::Supply, Some(a)) => self.elab_supply(a)?,
                (Slot::Term, Some(a)) => self.elab_any(a)?,
                (Slot::Nat, Some(a)) => self.check(a, &nat())?,
                (Slot::Prod, Some(a)) => {
                    let inner_src = src.and_then(|s| match name {
                        "uncurry" => self.split_tensor(s).map(|(l, _)| l),
                        "!f" => self.under_bang(s),
                        "free" => Some(s.clone()),
                        _ => None,
                    });
                    self.elab_prod(a, inner_src.as_ref())?.0
                }
                (Slot::Prod, None) => return Err(missing()),
                (_, None) => defaults.get(i).cloned().flatten().ok_or_else(missing)?,
            };
            vals.push(v);
        }
        let p = self.build(name, vals).map_err(|d| d.with_span(span))?;
        let (s, t) = endpoints(self.env, &self.ctx, &p).map_err(|d| d.with_span(span))?;
        Ok((p, s, t))
    }

    fn build(&self, name: &str, v: Vec<Term>) -> Result<Term> {
        let mut it = v.into_iter();
        let mut next = || it.next().unwrap();
        Ok(match name {
            "id" => supply::id(next()),
            "assoc" => supply::assoc(next(), next(), next()),
            "assoc'" => supply::assoc_inv(next(), next(), next()),
            "swap" => supply::swap(next(), next()),
            "unitr" => supply::unitr(next()),
            "unitr'" => supply::unitr_inv(next()),
            "unitl" => supply::unitl(next()),
            "unitl'" => supply::unitl_inv(next()),
            "opltt" => prod(P::OplTt),
            "laxtt" => prod(P::LaxTt),
            "opl" => prod(P::OplPair(next(), next())),
            "lax" => prod(P::LaxPair(next(), next())),
            "secinl" => prod(P::SecInl(next())),
            "retinl" => prod(P::RetInl(next())),
            "secinr" => prod(P::SecInr(next())),
            "retinr" => prod(P::RetInr(next())),
            "secinit" => prod(P::SecInit(next())),
            "retinit" => prod(P::RetInit(next())),
            "curry" => prod(P::Curry(next())),
            "uncurry" => prod(P::Uncurry(next())),
            "free" => prod(P::Free(next(), next())),
            "!f" => prod(P::BangF(next())),
            "dupl" => prod(P::Dupl(next())),
            "erase" => prod(P::Erase(next())),
            "use" => prod(P::Use(next())),
            "mult" => prod(P::Mult(next())),
            "coh◇" => prod(P::CohEmpty),
            "coh⊗" => prod(P::CohTensor(next(), next())),
            "distr" => {
                let (m, n, d0, d1) = (next(), next(), next(), next());
                supply::tensor_pow_distr(self.env, &m, &n, &d0, &d1)?
            }
            _ => {
                return Err(Diagnostic::error(
                    "production.unknown",
                    format!("unknown rule `{name}`"),
                ))
            }
        })
    }
}
