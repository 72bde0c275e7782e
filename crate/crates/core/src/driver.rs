//! Loading and checking `.ld` programs, running definitions and computing
//! supply normal forms.

use crate::diag::{Diagnostic, Result, Span};
use crate::kernel::{check_type, normalize, whnf, Ctx, Env};
use crate::pretty;
use crate::solver::normalize_supply;
use crate::surface::ast::Item;
use crate::surface::elab::{Elab, Synonym, Synonyms, Witness};
use crate::surface::ltype::judg_view;
use crate::surface::parser::{parse_expr, parse_file};
use crate::syntax::*;
use std::sync::OnceLock;

/// Source of the library loaded before every file without `#no-prelude`.
pub const PRELUDE: &str = include_str!("../../../corpus/prelude.ld");

/// Global definitions and pattern synonyms in scope.
#[derive(Debug, Clone, Default)]
pub struct Program {
    pub env: Env,
    pub synonyms: Synonyms,
}

/// Result of checking one top-level item that introduces names.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub name: String,
    pub span: Span,
    pub witnesses: Vec<Witness>,
    pub error: Option<Diagnostic>,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub program: Program,
    pub outcomes: Vec<Outcome>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.outcomes.iter().all(|o| o.error.is_none())
    }

    pub fn diagnostics(&self) -> Vec<Diagnostic> {
        self.outcomes
            .iter()
            .filter_map(|o| o.error.clone())
            .collect()
    }

    pub fn outcome(&self, name: &str) -> Option<&Outcome> {
        self.outcomes.iter().find(|o| o.name == name)
    }
}

/// The checked prelude.
pub fn prelude() -> &'static Program {
    static PRELUDE_PROGRAM: OnceLock<Program> = OnceLock::new();
    PRELUDE_PROGRAM.get_or_init(|| {
        let report = check_source(PRELUDE).expect("the prelude parses");
        if let Some(d) = report.diagnostics().first() {
            panic!("the prelude does not check: {}", d.render("prelude.ld"));
        }
        report.program
    })
}

/// Parse and check a whole file. A parse error is returned as `Err`; type
/// errors are collected per definition in the report.
pub fn check_source(src: &str) -> Result<Report> {
    let items = parse_file(src)?;
    let standalone = items
        .iter()
        .any(|i| matches!(i, Item::Pragma { key, .. } if key == "no-prelude"));
    let base = if standalone {
        Program::default()
    } else {
        prelude().clone()
    };
    Ok(check_items(base, &items))
}

pub fn check_items(mut program: Program, items: &[Item]) -> Report {
    let mut outcomes = Vec::new();
    for item in items {
        match item {
            Item::Pragma { .. } => {}
            Item::Pattern {
                name,
                params,
                rhs,
                span,
            } => {
                let error = program.synonyms.contains_key(name).then(|| {
                    Diagnostic::error(
                        "scope.duplicate",
                        format!("pattern `{name}` is already defined"),
                    )
                    .with_span(*span)
                });
                if error.is_none() {
                    program.synonyms.insert(
                        name.clone(),
                        Synonym {
                            params: params.clone(),
                            rhs: rhs.clone(),
                        },
                    );
                }
                outcomes.push(Outcome {
                    name: name.clone(),
                    span: *span,
                    witnesses: vec![],
                    error,
                });
            }
            Item::Postulate { names, ty, span } => {
                let res = elab_closed_type(&program, ty);
                for name in names {
                    let error = res
                        .clone()
                        .and_then(|t| program.env.postulate(name, t))
                        .err()
                        .map(|d| d.with_span(*span));
                    outcomes.push(Outcome {
                        name: name.clone(),
                        span: *span,
                        witnesses: vec![],
                        error,
                    });
                }
            }
            Item::Def {
                name,
                ty,
                body,
                span,
            } => {
                let (witnesses, error) = match check_def(&mut program, name, ty, body) {
                    Ok(w) => (w, None),
                    Err(d) => (vec![], Some(d.with_span(*span))),
                };
                outcomes.push(Outcome {
                    name: name.clone(),
                    span: *span,
                    witnesses,
                    error,
                });
            }
        }
    }
    Report { program, outcomes }
}

fn elab_closed_type(program: &Program, ty: &crate::surface::ast::Expr) -> Result<Term> {
    let mut el = Elab::new(&program.env, &program.synonyms);
    let t = el.elab_type(ty)?;
    check_type(&program.env, &Ctx::new(), &t).map_err(|d| d.with_span(ty.span))?;
    Ok(t)
}

fn check_def(
    program: &mut Program,
    name: &str,
    ty: &crate::surface::ast::Expr,
    body: &crate::surface::ast::Expr,
) -> Result<Vec<Witness>> {
    if program.env.contains(name) {
        return Err(Diagnostic::error(
            "scope.duplicate",
            format!("`{name}` is already defined"),
        ));
    }
    let ty = elab_closed_type(program, ty)?;
    let mut scratch = program.env.clone();
    scratch.postulate(name, ty.clone())?;
    let mut el = Elab::new(&scratch, &program.synonyms);
    let term = el.check(body, &ty)?;
    let witnesses = std::mem::take(&mut el.witnesses);
    program.env.check_definition(name, ty, term)?;
    Ok(witnesses)
}

/// Evaluate `name args…`, projecting out the intuitionistic part of every
/// judgment along the way, and return the normal form.
pub fn run(program: &Program, name: &str, args: &[String]) -> Result<Term> {
    let def = program
        .env
        .get(name)
        .ok_or_else(|| Diagnostic::error("run.unknown", format!("no definition named `{name}`")))?;
    let env = &program.env;
    let mut t = konst(name);
    let mut ty = def.ty.clone();
    let project = |t: &mut Term, ty: &mut Term| {
        while let Some((_, l)) = judg_view(env, ty) {
            *t = fst(t.clone());
            *ty = l.base;
        }
    };
    for src in args {
        let e = parse_expr(src)?;
        let mut el = Elab::new(env, &program.synonyms);
        let a = el.elab_untyped(&e)?;
        project(&mut t, &mut ty);
        match whnf(env, &ty) {
            Term::Pi(_, b) => {
                t = app(t, a.clone());
                ty = instantiate(&b, &a);
            }
            _ => {
                return Err(Diagnostic::error(
                    "run.arity",
                    format!("`{name}` does not take {} argument(s)", args.len()),
                ))
            }
        }
    }
    project(&mut t, &mut ty);
    let v = normalize(env, &t);
    if v.mentions_const("_") {
        return Err(Diagnostic::error(
            "run.open-result",
            format!(
                "the result `{}` still depends on an argument given as `_`",
                pretty::show_closed(&v)
            ),
        ));
    }
    Ok(v)
}

/// Parse a telescope `x : A, y : B x` into a context.
fn telescope(program: &Program, el: &mut Elab, src: &str) -> Result<()> {
    let mut depth = 0i32;
    let mut parts = vec![String::new()];
    for ch in src.chars() {
        match ch {
            '(' | '[' | '⟨' => depth += 1,
            ')' | ']' | '⟩' => depth -= 1,
            _ => {}
        }
        if ch == ',' && depth == 0 {
            parts.push(String::new());
        } else {
            parts.last_mut().unwrap().push(ch);
        }
    }
    for part in parts.iter().filter(|p| !p.trim().is_empty()) {
        let (name, ty) = part.split_once(':').ok_or_else(|| {
            Diagnostic::error(
                "parse.expected",
                format!(
                    "expected `name : Type` in the context, found `{}`",
                    part.trim()
                ),
            )
        })?;
        let ty = parse_expr(ty)?;
        let t = el.elab_type(&ty)?;
        check_type(&program.env, el.context(), &t)?;
        el.push_local(name.trim(), t);
    }
    Ok(())
}

/// The canonical atom multiset of a supply expression, rendered `{a, b}`.
pub fn supply_nf(program: &Program, ctx_src: &str, expr: &str) -> Result<String> {
    let mut el = Elab::new(&program.env, &program.synonyms);
    telescope(program, &mut el, ctx_src)?;
    let e = parse_expr(expr)?;
    let d = el.check(&e, &Term::SupplyTy)?;
    let (nf, _, _) = normalize_supply(&program.env, el.context(), &d)?;
    Ok(nf.show(el.context()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prelude_checks() {
        let p = prelude();
        for name in ["add", "mul", "toNat", "not", "isJust", "length", "ljust"] {
            assert!(p.env.contains(name), "{name}");
        }
    }

    #[test]
    fn empty_file_is_fine() {
        assert!(check_source("").unwrap().ok());
    }

    #[test]
    fn normal_forms() {
        let p = prelude();
        assert_eq!(supply_nf(p, "x:A,y:B", "ι (x , y)").unwrap(), "{ι x, ι y}");
        assert_eq!(supply_nf(p, "", "◇ ⊗ ◇").unwrap(), "{}");
        assert_eq!(supply_nf(p, "x:A", "ι x ^ 2").unwrap(), "{ι x, ι x}");
    }
}
