//! Compilation of nested pattern matching into the kernel's one-level
//! eliminators, with the goal generalized over the scrutinee.

use super::ast::*;
use super::elab::{err, Elab};
use crate::diag::{Result, Span};
use crate::kernel::whnf;
use crate::syntax::*;

#[derive(Clone)]
struct Row<'e> {
    pats: Vec<Pat>,
    body: &'e Expr,
    binds: Vec<(String, Term)>,
}

/// Which constructor a split handles and how many fields it binds.
#[derive(Clone, Copy, PartialEq)]
enum Ctor {
    Inl,
    Inr,
    Init,
    Pair,
    Tt,
}

impl Ctor {
    fn arity(self) -> usize {
        match self {
            Ctor::Pair => 2,
            Ctor::Tt => 0,
            _ => 1,
        }
    }

    /// The constructor applied to the freshly bound fields.
    fn pattern(self) -> Term {
        match self {
            Ctor::Inl => inl(var(0)),
            Ctor::Inr => inr(var(0)),
            Ctor::Init => init(var(0)),
            Ctor::Pair => pair(var(1), var(0)),
            Ctor::Tt => Term::Tt,
        }
    }

    /// Sub-patterns if `p` is headed by this constructor.
    fn matches(self, p: &Pat) -> Option<Vec<Pat>> {
        match (self, p) {
            (Ctor::Inl, Pat::Inl(a)) | (Ctor::Inr, Pat::Inr(a)) | (Ctor::Init, Pat::Init(a)) => {
                Some(vec![(**a).clone()])
            }
            (Ctor::Pair, Pat::Pair(a, b)) => Some(vec![(**a).clone(), (**b).clone()]),
            (Ctor::Tt, Pat::Tt) => Some(vec![]),
            _ => None,
        }
    }
}

/// `u` with the scrutinee `c` replaced by a constructor pattern over `k`
/// new variables.
fn specialize(u: &Term, c: &Term, k: usize, pattern: &Term) -> Term {
    instantiate(&weaken(&abstract_term(u, c), 1, k), pattern)
}

impl Elab<'_> {
    pub(super) fn elab_case(
        &mut self,
        scrut: &Expr,
        clauses: &[(Pat, Expr)],
        goal: &Term,
        span: Span,
    ) -> Result<Term> {
        let (t, _) = self.synth(scrut)?;
        let rows = clauses
            .iter()
            .map(|(p, body)| Row {
                pats: vec![p.clone()],
                body,
                binds: vec![],
            })
            .collect();
        self.compile(vec![t], rows, goal, span)
    }

    pub(super) fn elab_if(
        &mut self,
        c: &Expr,
        t: &Expr,
        f: &Expr,
        goal: &Term,
        span: Span,
    ) -> Result<Term> {
        let (ct, _) = self.synth(c)?;
        let wild = |inj: fn(Box<Pat>) -> Pat| inj(Box::new(Pat::Wild));
        let rows = vec![
            Row {
                pats: vec![wild(Pat::Inl)],
                body: t,
                binds: vec![],
            },
            Row {
                pats: vec![wild(Pat::Inr)],
                body: f,
                binds: vec![],
            },
        ];
        self.compile(vec![ct], rows, goal, span)
    }

    /// The body of a lambda whose binder is a pattern; the input is `Var(0)`.
    pub(super) fn match_one(
        &mut self,
        pat: &Pat,
        body: &Expr,
        goal: &Term,
        span: Span,
    ) -> Result<Term> {
        let rows = vec![Row {
            pats: vec![pat.clone()],
            body,
            binds: vec![],
        }];
        self.compile(vec![var(0)], rows, goal, span)
    }

    /// Unfold pattern synonyms at the head of `p`.
    fn head_pat(&self, p: &Pat, span: Span) -> Result<Pat> {
        let mut p = p.clone();
        loop {
            let (name, args) = match &p {
                Pat::Syn(n, args) => (n.clone(), args.clone()),
                Pat::Var(n) if self.synonyms.get(n).is_some_and(|s| s.params.is_empty()) => {
                    (n.clone(), vec![])
                }
                _ => return Ok(p),
            };
            let syn = self.synonyms.get(&name).ok_or_else(|| {
                err(
                    "surface.unknown-pattern",
                    format!("`{name}` is not a pattern synonym"),
                    span,
                )
            })?;
            if syn.params.len() != args.len() {
                return Err(err(
                    "surface.synonym-arity",
                    format!(
                        "`{name}` takes {} argument(s), but {} were given",
                        syn.params.len(),
                        args.len()
                    ),
                    span,
                ));
            }
            let sub: Vec<(String, Pat)> = syn.params.iter().cloned().zip(args).collect();
            p = syn.rhs.subst(&sub);
        }
    }

    fn compile(
        &mut self,
        cols: Vec<Term>,
        mut rows: Vec<Row>,
        goal: &Term,
        span: Span,
    ) -> Result<Term> {
        for row in &mut rows {
            for p in &mut row.pats {
                *p = self.head_pat(p, row.body.span)?;
            }
        }
        let Some(first) = rows.first() else {
            return Err(err(
                "surface.case-missing",
                "this pattern match does not cover every case",
                span,
            ));
        };
        let Some(i) = first.pats.iter().position(|p| !p.is_irrefutable()) else {
            let first = first.clone();
            let mark = self.mark();
            for (x, t) in &first.binds {
                self.alias(x, t.clone());
            }
            for (p, c) in first.pats.iter().zip(&cols) {
                if let Pat::Var(x) = p {
                    self.alias(x, c.clone());
                }
            }
            let res = self.check(first.body, goal);
            self.reset(mark);
            return res;
        };
        let c = cols[i].clone();
        let cty = whnf(self.env, &self.infer(&c, span)?);
        let motive = abstract_term(goal, &c);
        let mk_err = |what: &str| {
            err(
                "surface.pattern-type",
                format!(
                    "{what} pattern used on a value of type `{}`",
                    self.show(&cty)
                ),
                first.body.span,
            )
        };
        let s = Box::new(c.clone());
        let m = Box::new(motive);
        Ok(match (&cty, &first.pats[i]) {
            (Term::Sum(a, b), Pat::Inl(_) | Pat::Inr(_)) => {
                let l = self.branch(&cols, &rows, i, goal, Ctor::Inl, &[(**a).clone()], span)?;
                let r = self.branch(&cols, &rows, i, goal, Ctor::Inr, &[(**b).clone()], span)?;
                Term::SumCase(s, m, Box::new(l), Box::new(r))
            }
            (Term::Mu(f), Pat::Init(_)) => {
                let field = instantiate(f, &cty);
                let br = self.branch(&cols, &rows, i, goal, Ctor::Init, &[field], span)?;
                Term::MuCase(s, m, Box::new(br))
            }
            (Term::Sigma(a, b), Pat::Pair(..)) => {
                let br = self.branch(
                    &cols,
                    &rows,
                    i,
                    goal,
                    Ctor::Pair,
                    &[(**a).clone(), (**b).clone()],
                    span,
                )?;
                Term::SigmaCase(s, m, Box::new(br))
            }
            (Term::Unit, Pat::Tt) => {
                let br = self.branch(&cols, &rows, i, goal, Ctor::Tt, &[], span)?;
                Term::UnitCase(s, m, Box::new(br))
            }
            (_, Pat::Inl(_) | Pat::Inr(_)) => return Err(mk_err("an injection")),
            (_, Pat::Init(_)) => return Err(mk_err("an `init`")),
            (_, Pat::Pair(..)) => return Err(mk_err("a pair")),
            _ => return Err(mk_err("a `tt`")),
        })
    }

    /// Compile the rows that survive when column `i` is the constructor
    /// `ctor`, whose fields have the given types (each under the previous).
    #[allow(clippy::too_many_arguments)]
    fn branch(
        &mut self,
        cols: &[Term],
        rows: &[Row],
        i: usize,
        goal: &Term,
        ctor: Ctor,
        fields: &[Term],
        span: Span,
    ) -> Result<Term> {
        let c = &cols[i];
        let k = ctor.arity();
        let pattern = ctor.pattern();
        let sp = |u: &Term| specialize(u, c, k, &pattern);
        let mut new_rows = Vec::new();
        for row in rows {
            let (subpats, extra) = match &row.pats[i] {
                Pat::Var(x) => (vec![Pat::Wild; k], Some((x.clone(), c.clone()))),
                Pat::Wild => (vec![Pat::Wild; k], None),
                p => match ctor.matches(p) {
                    Some(sub) => (sub, None),
                    None => continue,
                },
            };
            let mut pats = row.pats[..i].to_vec();
            pats.extend(subpats);
            pats.extend_from_slice(&row.pats[i + 1..]);
            let binds = row
                .binds
                .iter()
                .cloned()
                .chain(extra)
                .map(|(x, t)| (x, sp(&t)))
                .collect();
            new_rows.push(Row {
                pats,
                body: row.body,
                binds,
            });
        }
        let mut new_cols: Vec<Term> = cols[..i].iter().map(sp).collect();
        new_cols.extend((0..k).rev().map(var));
        new_cols.extend(cols[i + 1..].iter().map(sp));
        let new_goal = sp(goal);
        let mut names = vec!["_".to_string(); k];
        for row in rows {
            if let Some(sub) = ctor.matches(&row.pats[i]) {
                for (n, p) in names.iter_mut().zip(&sub) {
                    if let Pat::Var(x) = p {
                        if n == "_" && !self.synonyms.contains_key(x) {
                            *n = x.clone();
                        }
                    }
                }
            }
        }
        let mark = self.mark();
        for (f, n) in fields.iter().zip(&names) {
            self.ctx.push(n, f.clone());
        }
        let res = self.compile(new_cols, new_rows, &new_goal, span);
        self.reset(mark);
        res
    }
}
