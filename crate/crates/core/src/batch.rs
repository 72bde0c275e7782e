//! Data-parallel helpers. With the `parallel` feature (on by default) work
//! is spread over a rayon pool; without it everything runs sequentially.
//! Results are always returned in input order.

use crate::kernel::{Ctx, Env};
use crate::solver::{solve, SolveError};
use crate::syntax::Term;

/// Apply `f` to every item, in parallel when available.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_sequential(items, f)
    }
}

pub fn map_sequential<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

pub type SolveResult = Result<Term, SolveError>;

/// Solve many `Δ₀ ▷ Δ₁` problems in one context.
pub fn solve_batch(env: &Env, ctx: &Ctx, problems: &[(Term, Term)]) -> Vec<SolveResult> {
    map(problems, |(a, b)| solve(env, ctx, a, b))
}

pub fn solve_batch_sequential(env: &Env, ctx: &Ctx, problems: &[(Term, Term)]) -> Vec<SolveResult> {
    map_sequential(problems, |(a, b)| solve(env, ctx, a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::*;

    #[test]
    fn parallel_and_sequential_agree() {
        let env = Env::new();
        let ctx = Ctx::new().with("x", Term::Unit).with("y", Term::Unit);
        let problems: Vec<(Term, Term)> = (0..40)
            .map(|i| {
                let a = tensor(iota(var(i % 2)), iota(var(1 - i % 2)));
                let b = if i % 3 == 0 {
                    iota(var(0))
                } else {
                    tensor(iota(var(1)), iota(var(0)))
                };
                (a, b)
            })
            .collect();
        let par = solve_batch(&env, &ctx, &problems);
        let seq = solve_batch_sequential(&env, &ctx, &problems);
        for (p, s) in par.iter().zip(&seq) {
            assert_eq!(p.as_ref().ok(), s.as_ref().ok());
        }
    }
}
