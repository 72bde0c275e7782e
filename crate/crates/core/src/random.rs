//! Seeded generators of supplies for property tests and benchmarks.

use crate::kernel::{Ctx, Env};
use crate::oracle::neighbours;
use crate::syntax::*;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Shape limits for generated supplies.
#[derive(Debug, Clone, Copy)]
pub struct SupplyShape {
    /// Host variables available, bound in [`context`].
    pub vars: usize,
    /// Maximum number of `ι` leaves holding a variable.
    pub max_atoms: usize,
    /// Allow one `!` or `[_ , _]` atom.
    pub opaque: bool,
}

impl Default for SupplyShape {
    fn default() -> Self {
        SupplyShape {
            vars: 3,
            max_atoms: 6,
            opaque: false,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// An environment with `A : Type` and a context `x0 … x(n-1) : A`.
pub fn context(vars: usize) -> (Env, Ctx) {
    let mut env = Env::new();
    env.postulate("A", Term::Universe)
        .expect("fresh environment");
    let mut ctx = Ctx::new();
    for i in 0..vars {
        ctx.push(&format!("x{i}"), konst("A"));
    }
    (env, ctx)
}

/// A host term built from variables with `tt`, pairs, injections and `init`,
/// holding at most `budget` variable occurrences.
pub fn host_term<R: Rng>(rng: &mut R, vars: usize, budget: &mut usize, depth: u32) -> Term {
    let choice = if depth == 0 || *budget <= 1 {
        rng.gen_range(0..2)
    } else {
        rng.gen_range(0..6)
    };
    match choice {
        0 if *budget > 0 => {
            *budget -= 1;
            var(rng.gen_range(0..vars))
        }
        0 | 1 => Term::Tt,
        2 | 3 => {
            let a = host_term(rng, vars, budget, depth - 1);
            let b = host_term(rng, vars, budget, depth - 1);
            pair(a, b)
        }
        4 => {
            let a = host_term(rng, vars, budget, depth - 1);
            if rng.gen_bool(0.5) {
                inl(a)
            } else {
                inr(a)
            }
        }
        _ => init(host_term(rng, vars, budget, depth - 1)),
    }
}

fn supply_rec<R: Rng>(
    rng: &mut R,
    shape: &SupplyShape,
    budget: &mut usize,
    opaque: &mut bool,
    depth: u32,
) -> Term {
    let k = if depth == 0 {
        rng.gen_range(0..3)
    } else {
        rng.gen_range(0..6)
    };
    match k {
        0 => Term::Empty,
        1 | 2 => {
            if *opaque && *budget > 0 && rng.gen_bool(0.2) {
                *opaque = false;
                *budget -= 1;
                let x = iota(var(rng.gen_range(0..shape.vars)));
                return if rng.gen_bool(0.5) {
                    bang(x)
                } else {
                    hom(x, iota(var(rng.gen_range(0..shape.vars))))
                };
            }
            iota(host_term(rng, shape.vars, budget, 2))
        }
        _ => {
            let a = supply_rec(rng, shape, budget, opaque, depth - 1);
            let b = supply_rec(rng, shape, budget, opaque, depth - 1);
            tensor(a, b)
        }
    }
}

/// A well-formed supply in the context of [`context`].
pub fn supply<R: Rng>(rng: &mut R, shape: &SupplyShape) -> Term {
    let mut budget = rng.gen_range(1..=shape.max_atoms);
    let mut opaque = shape.opaque;
    supply_rec(rng, shape, &mut budget, &mut opaque, 4)
}

/// A random walk of `steps` interderivable rewrites from `d`.
pub fn rewrite_walk<R: Rng>(rng: &mut R, d: &Term, steps: usize) -> Term {
    let mut cur = d.clone();
    for _ in 0..steps {
        let next = neighbours(&cur);
        match next.choose(rng) {
            Some(t) => cur = t.clone(),
            None => break,
        }
    }
    cur
}

/// A pair of supplies: about half are related by a rewrite walk, the rest
/// drawn independently (and usually unrelated).
pub fn supply_pair<R: Rng>(rng: &mut R, shape: &SupplyShape) -> (Term, Term) {
    let d0 = supply(rng, shape);
    let d1 = if rng.gen_bool(0.5) {
        let steps = rng.gen_range(1..10);
        rewrite_walk(rng, &d0, steps)
    } else {
        supply(rng, shape)
    };
    (d0, d1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::supply::check_supply;

    #[test]
    fn generated_supplies_are_well_formed() {
        let (env, ctx) = context(3);
        let mut r = rng(7);
        let shape = SupplyShape {
            opaque: true,
            ..SupplyShape::default()
        };
        for _ in 0..200 {
            let (a, b) = supply_pair(&mut r, &shape);
            check_supply(&env, &ctx, &a).unwrap();
            check_supply(&env, &ctx, &b).unwrap();
        }
    }

    #[test]
    fn seeds_are_deterministic() {
        let shape = SupplyShape::default();
        let a = supply(&mut rng(3), &shape);
        let b = supply(&mut rng(3), &shape);
        assert_eq!(a, b);
    }
}
