//! Type checker and evaluator for the host theory.
//!
//! Supplies and productions are ordinary types and terms here; the typing of
//! production constructors lives in [`crate::supply`] and is called back from
//! [`infer`].

mod normalize;
mod termination;
mod typing;

pub use normalize::{conv, eval, normalize, whnf, Value};
pub use termination::{check_structural, recursion_path, Step};
pub use typing::{check, check_type, infer, well_typed_any, Ctx};

use crate::diag::{Diagnostic, Result};
use crate::syntax::{Name, Term};
use std::collections::HashMap;
use std::sync::Arc;

/// A top-level unit: a postulate when `body` is `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct Definition {
    pub name: Name,
    pub ty: Term,
    pub body: Option<Term>,
    /// Set only once `body` has been checked against `ty`.
    pub checked: bool,
    /// For self-recursive definitions: the elimination path leading to the
    /// structurally decreasing argument. Such definitions unfold only when
    /// that argument is a constructor.
    pub recursion: Option<Vec<Step>>,
}

/// Append-only environment of global definitions.
#[derive(Debug, Clone, Default)]
pub struct Env {
    defs: HashMap<Name, Arc<Definition>>,
    order: Vec<Name>,
}

impl Env {
    pub fn new() -> Env {
        Env::default()
    }

    pub fn get(&self, name: &str) -> Option<&Definition> {
        self.defs.get(name).map(|d| &**d)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.defs.contains_key(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &Name> {
        self.order.iter()
    }

    pub fn postulate(&mut self, name: &str, ty: Term) -> Result<()> {
        if self.contains(name) {
            return Err(duplicate(name));
        }
        check_type(self, &Ctx::new(), &ty)?;
        self.insert(Definition {
            name: name.to_string(),
            ty,
            body: None,
            checked: true,
            recursion: None,
        });
        Ok(())
    }

    /// Check `body : ty` in the empty context and add the definition.
    ///
    /// The name is visible (opaquely) inside its own body; self-references
    /// must descend structurally on the argument picked by
    /// [`recursion_path`].
    pub fn check_definition(&mut self, name: &str, ty: Term, body: Term) -> Result<()> {
        if self.contains(name) {
            return Err(duplicate(name));
        }
        check_type(self, &Ctx::new(), &ty)?;
        let recursive = body.mentions_const(name);
        let recursion = if recursive {
            let path = recursion_path(self, &ty).ok_or_else(|| {
                Diagnostic::error(
                    "kernel.non-structural-recursion",
                    format!("`{name}` refers to itself but its type has no inductive argument"),
                )
            })?;
            check_structural(name, &body, &path)?;
            Some(path)
        } else {
            None
        };
        let mut scratch = self.clone();
        scratch.insert(Definition {
            name: name.to_string(),
            ty: ty.clone(),
            body: None,
            checked: false,
            recursion: None,
        });
        check(&scratch, &Ctx::new(), &body, &ty)?;
        self.insert(Definition {
            name: name.to_string(),
            ty,
            body: Some(body),
            checked: true,
            recursion,
        });
        Ok(())
    }

    fn insert(&mut self, def: Definition) {
        self.order.push(def.name.clone());
        self.defs.insert(def.name.clone(), Arc::new(def));
    }
}

fn duplicate(name: &str) -> Diagnostic {
    Diagnostic::error("kernel.duplicate", format!("`{name}` is already defined"))
}
