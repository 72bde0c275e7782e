//! Independent reachability search over single rule rewrites, used to test
//! the solver.
//!
//! States are supply terms compared syntactically. The search runs from both
//! ends: forward from `Δ₀` with the rules that take structure apart (`assoc`,
//! `swap`, `unitr`, `opltt`, `opl`, `sec…`), backward from `Δ₁` undoing the
//! rules that build structure (`assoc`, `swap`, `unitr′`, `laxtt`, `lax`,
//! `ret…`). Any meeting point spells out a sequence of genuine rule
//! applications from `Δ₀` to `Δ₁`, so a `true` answer is always sound.
//!
//! No rule adds or removes a leaf other than `tt` or `◇`, so two supplies
//! whose leaves differ are rejected before searching.

use crate::syntax::*;
use std::collections::HashSet;

/// Upper bound on explored states per side.
const STATE_BUDGET: usize = 20_000;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Forward,
    Backward,
}

/// Rewrites applicable at the root of `t`.
fn root_moves(t: &Term, side: Side, out: &mut Vec<Term>) {
    match t {
        Term::Tensor(a, b) => {
            out.push(tensor((**b).clone(), (**a).clone()));
            match side {
                Side::Forward => {
                    if let Term::Tensor(x, y) = &**a {
                        out.push(tensor((**x).clone(), tensor((**y).clone(), (**b).clone())));
                    }
                }
                Side::Backward => {
                    if let Term::Tensor(y, z) = &**b {
                        out.push(tensor(tensor((**a).clone(), (**y).clone()), (**z).clone()));
                    }
                }
            }
            if **b == Term::Empty {
                out.push((**a).clone());
            }
        }
        Term::Iota(a) => match &**a {
            Term::Tt => out.push(Term::Empty),
            Term::Pair(x, y) => out.push(tensor(iota((**x).clone()), iota((**y).clone()))),
            Term::Inl(x) | Term::Inr(x) | Term::Init(x) => out.push(iota((**x).clone())),
            _ => {}
        },
        _ => {}
    }
}

/// Rewrites at every position reachable through `⊗`.
fn moves(t: &Term, side: Side) -> Vec<Term> {
    let mut out = Vec::new();
    root_moves(t, side, &mut out);
    if let Term::Tensor(a, b) = t {
        for a2 in moves(a, side) {
            out.push(tensor(a2, (**b).clone()));
        }
        for b2 in moves(b, side) {
            out.push(tensor((**a).clone(), b2));
        }
    }
    out
}

/// All single-step rewrites in either direction; each one is a rule or the
/// inverse of a rule, so every result is interderivable with `t`.
pub fn neighbours(t: &Term) -> Vec<Term> {
    let mut out = moves(t, Side::Forward);
    out.extend(moves(t, Side::Backward));
    out
}

/// Host subterms that no rule takes apart, and opaque supplies.
fn leaves(t: &Term, out: &mut Vec<Term>) {
    match t {
        Term::Tensor(a, b) | Term::Pair(a, b) => {
            leaves(a, out);
            leaves(b, out);
        }
        Term::Iota(a) | Term::Inl(a) | Term::Inr(a) | Term::Init(a) => leaves(a, out),
        Term::Empty | Term::Tt => {}
        _ => out.push(t.clone()),
    }
}

fn leaf_multiset(t: &Term) -> Vec<Term> {
    let mut out = Vec::new();
    leaves(t, &mut out);
    out.sort();
    out
}

/// Whether `Δ₁` is reachable from `Δ₀` in at most `depth` rewrites.
pub fn brute_force_reachable(d0: &Term, d1: &Term, depth: usize) -> bool {
    if d0 == d1 {
        return true;
    }
    if leaf_multiset(d0) != leaf_multiset(d1) {
        return false;
    }
    let mut seen_f: HashSet<Term> = HashSet::from([d0.clone()]);
    let mut seen_b: HashSet<Term> = HashSet::from([d1.clone()]);
    let mut front_f = vec![d0.clone()];
    let mut front_b = vec![d1.clone()];
    for _ in 0..depth {
        if front_f.is_empty() && front_b.is_empty() {
            return false;
        }
        let side = if !front_f.is_empty() && (front_b.is_empty() || front_f.len() <= front_b.len())
        {
            Side::Forward
        } else {
            Side::Backward
        };
        let (front, seen, other) = match side {
            Side::Forward => (&mut front_f, &mut seen_f, &seen_b),
            Side::Backward => (&mut front_b, &mut seen_b, &seen_f),
        };
        let mut next = Vec::new();
        for t in front.iter() {
            for u in moves(t, side) {
                if other.contains(&u) {
                    return true;
                }
                if seen.len() < STATE_BUDGET && seen.insert(u.clone()) {
                    next.push(u);
                }
            }
        }
        *front = next;
    }
    false
}
