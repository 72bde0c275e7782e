//! Syntactic structural-recursion check for self-referential definitions.

use super::{whnf, Env};
use crate::diag::{Diagnostic, Result};
use crate::syntax::{Production, Term};
use serde::Serialize;
use std::collections::BTreeSet;

/// One elimination on the way from a definition to its decreasing argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Step {
    App,
    Fst,
}

/// Walk `ty` through Σ (first projection) and Π (application) until a Π
/// whose domain is an inductive type; that argument is the decreasing one.
pub fn recursion_path(env: &Env, ty: &Term) -> Option<Vec<Step>> {
    let mut path = Vec::new();
    let mut cur = whnf(env, ty);
    loop {
        match cur {
            Term::Sigma(a, _) => {
                path.push(Step::Fst);
                cur = whnf(env, &a);
            }
            Term::Pi(a, b) => {
                path.push(Step::App);
                if matches!(whnf(env, &a), Term::Mu(_)) {
                    return Some(path);
                }
                cur = whnf(env, &b);
            }
            _ => return None,
        }
    }
}

struct Checker<'a> {
    name: &'a str,
    path: &'a [Step],
    /// De Bruijn levels of the decreasing parameter.
    roots: BTreeSet<usize>,
    /// De Bruijn levels of variables strictly below the parameter.
    smaller: BTreeSet<usize>,
}

fn level(depth: usize, index: usize) -> Option<usize> {
    depth.checked_sub(index + 1)
}

/// Every self-reference in `body` must apply the definition along `path`
/// with a structurally smaller decreasing argument.
pub fn check_structural(name: &str, body: &Term, path: &[Step]) -> Result<()> {
    let mut ck = Checker {
        name,
        path,
        roots: BTreeSet::new(),
        smaller: BTreeSet::new(),
    };
    ck.enter(body, 0, path)
}

impl Checker<'_> {
    /// Peel the binders leading to the decreasing parameter.
    fn enter(&mut self, t: &Term, depth: usize, rest: &[Step]) -> Result<()> {
        match (rest, t) {
            ([], _) => self.walk(t, depth),
            ([Step::App], Term::Lam(b)) => {
                self.roots.insert(depth);
                self.walk(b, depth + 1)
            }
            ([Step::App, ..], Term::Lam(b)) => self.enter(b, depth + 1, &rest[1..]),
            ([Step::Fst, ..], Term::Pair(a, p)) => {
                self.enter(a, depth, &rest[1..])?;
                self.enter_production(p, depth, &rest[1..])
            }
            _ => {
                Err(self
                    .error("the recursive definition must bind its decreasing argument directly"))
            }
        }
    }

    /// The production half of a linear function is `bind (curry …)`; its
    /// binder is the decreasing parameter.
    fn enter_production(&mut self, p: &Term, depth: usize, rest: &[Step]) -> Result<()> {
        if let (Term::Prod(pr), [Step::App]) = (p, rest) {
            if let Production::Bind(ty, d) = &**pr {
                self.walk(ty, depth)?;
                self.roots.insert(depth);
                return self.walk(d, depth + 1);
            }
        }
        self.walk(p, depth)
    }

    fn is_smaller(&self, t: &Term, depth: usize) -> bool {
        match t {
            Term::Var(i) => level(depth, *i).is_some_and(|l| self.smaller.contains(&l)),
            Term::Fst(p) | Term::Snd(p) => self.is_smaller(p, depth),
            _ => false,
        }
    }

    fn is_root_or_smaller(&self, t: &Term, depth: usize) -> bool {
        let root = match t {
            Term::Var(i) => level(depth, *i).is_some_and(|l| self.roots.contains(&l)),
            _ => false,
        };
        root || self.is_smaller(t, depth)
    }

    /// Eliminations applied to the definition itself, outermost last.
    fn spine<'t>(&self, t: &'t Term) -> Option<(Vec<Step>, Vec<&'t Term>)> {
        let mut args = Vec::new();
        let mut steps = Vec::new();
        let mut cur = t;
        loop {
            match cur {
                Term::App(f, a) => {
                    steps.push(Step::App);
                    args.push(&**a);
                    cur = f;
                }
                Term::Fst(p) => {
                    steps.push(Step::Fst);
                    cur = p;
                }
                Term::Const(n) if n == self.name => break,
                _ => return None,
            }
        }
        steps.reverse();
        args.reverse();
        Some((steps, args))
    }

    /// Arguments of a call matching `path`, or `None`.
    fn call_args<'t>(&self, t: &'t Term) -> Option<Vec<&'t Term>> {
        let (steps, args) = self.spine(t)?;
        if steps.len() < self.path.len() || steps[..self.path.len()] != *self.path {
            return None;
        }
        Some(args)
    }

    /// For `path = prefix ++ [Fst, App]`, the arguments of `snd (f prefix…)`
    /// when `d` is that production.
    fn production_call<'t>(&self, d: &'t Term) -> Option<Vec<&'t Term>> {
        let n = self.path.len();
        if n < 2 || self.path[n - 2..] != [Step::Fst, Step::App] {
            return None;
        }
        let Term::Snd(c) = d else { return None };
        let (steps, args) = self.spine(c)?;
        (steps == self.path[..n - 2]).then_some(args)
    }

    fn walk(&mut self, t: &Term, depth: usize) -> Result<()> {
        if let Some(args) = self.call_args(t) {
            let designated = self.path.iter().filter(|s| **s == Step::App).count() - 1;
            if !self.is_smaller(args[designated], depth) {
                return Err(
                    self.error("recursive call on an argument that is not structurally smaller")
                );
            }
            for a in args {
                self.walk(a, depth)?;
            }
            return Ok(());
        }
        match t {
            Term::Const(n) if n == self.name => {
                Err(self.error("recursive reference outside a structurally decreasing call"))
            }
            Term::Prod(p) => match &**p {
                Production::Free(d, a) if self.production_call(d).is_some() => {
                    if !self.is_smaller(a, depth) {
                        return Err(self.error("recursive production instantiated at a term that is not structurally smaller"));
                    }
                    for x in self.production_call(d).unwrap_or_default() {
                        self.walk(x, depth)?;
                    }
                    self.walk(a, depth)
                }
                _ => self.walk_children(t, depth),
            },
            Term::MuCase(s, m, b) => {
                self.walk(s, depth)?;
                self.walk(m, depth + 1)?;
                if self.is_root_or_smaller(s, depth) {
                    self.smaller.insert(depth);
                }
                self.walk(b, depth + 1)
            }
            Term::SumCase(s, m, l, r) => {
                self.walk(s, depth)?;
                self.walk(m, depth + 1)?;
                if self.is_smaller(s, depth) {
                    self.smaller.insert(depth);
                }
                self.walk(l, depth + 1)?;
                self.walk(r, depth + 1)
            }
            Term::SigmaCase(s, m, b) => {
                self.walk(s, depth)?;
                self.walk(m, depth + 1)?;
                if self.is_smaller(s, depth) {
                    self.smaller.insert(depth);
                    self.smaller.insert(depth + 1);
                }
                self.walk(b, depth + 2)
            }
            _ => self.walk_children(t, depth),
        }
    }

    fn walk_children(&mut self, t: &Term, depth: usize) -> Result<()> {
        for (c, b) in t.children() {
            self.walk(c, depth + b)?;
        }
        Ok(())
    }

    fn error(&self, what: &str) -> Diagnostic {
        Diagnostic::error(
            "kernel.non-structural-recursion",
            format!("in `{}`: {what}", self.name),
        )
    }
}
