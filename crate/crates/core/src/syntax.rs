//! The unified term language.
//!
//! Host-theory terms, types, supplies and productions all live in one AST.
//! Variables are de Bruijn indices: `Var(0)` is the innermost binder.
//! Every field documented as "under a binder" sees exactly one extra
//! variable at index 0 (two for the branch of [`Term::SigmaCase`]).

use std::collections::BTreeSet;

/// Global identifier of a top-level definition or postulate.
pub type Name = String;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(usize),
    Const(Name),
    Universe,

    /// `(x : dom) → cod`, `cod` under a binder.
    Pi(Box<Term>, Box<Term>),
    Lam(Box<Term>),
    App(Box<Term>, Box<Term>),

    /// `Σ[x ∈ fst] snd`, `snd` under a binder.
    Sigma(Box<Term>, Box<Term>),
    Pair(Box<Term>, Box<Term>),
    Fst(Box<Term>),
    Snd(Box<Term>),
    /// Dependent pair elimination: scrutinee, motive (one binder), branch
    /// (two binders: first component at index 1, second at index 0).
    SigmaCase(Box<Term>, Box<Term>, Box<Term>),

    Sum(Box<Term>, Box<Term>),
    Inl(Box<Term>),
    Inr(Box<Term>),
    /// scrutinee, motive, left branch, right branch; all but the scrutinee
    /// under one binder.
    SumCase(Box<Term>, Box<Term>, Box<Term>, Box<Term>),

    Unit,
    Tt,
    /// scrutinee, motive (one binder), branch.
    UnitCase(Box<Term>, Box<Term>, Box<Term>),

    /// Initial algebra of the functor body (one binder: the recursive type).
    Mu(Box<Term>),
    Init(Box<Term>),
    /// scrutinee, motive (one binder), branch (one binder: the unrolled value).
    MuCase(Box<Term>, Box<Term>, Box<Term>),

    SupplyTy,
    Empty,
    Tensor(Box<Term>, Box<Term>),
    Iota(Box<Term>),
    /// Internal hom `[Δ₀ , Δ₁]`.
    Hom(Box<Term>, Box<Term>),
    /// Supply abstraction `Λx:A. Θ`, body under a binder.
    SupAbs(Box<Term>, Box<Term>),
    Bang(Box<Term>),
    /// `Δ ^ m` with `m : ℕ`.
    Pow(Box<Term>, Box<Term>),

    /// `Δ₀ ▷ Δ₁`.
    ProdTy(Box<Term>, Box<Term>),
    Prod(Box<Production>),
}

/// Production constructors. Every field is a [`Term`]: supplies, host terms,
/// or sub-productions (which may themselves be neutral, e.g. `snd f`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Production {
    Id(Term),
    /// `Comp(second, first)` is `second ∘ first`.
    Comp(Term, Term),
    TensorF(Term, Term),
    Assoc(Term, Term, Term),
    Swap(Term, Term),
    Unitr(Term),
    UnitrInv(Term),
    OplTt,
    LaxTt,
    OplPair(Term, Term),
    LaxPair(Term, Term),
    SecInl(Term),
    RetInl(Term),
    SecInr(Term),
    RetInr(Term),
    SecInit(Term),
    RetInit(Term),
    Curry(Term),
    Uncurry(Term),
    /// Domain type and a production under a binder.
    Bind(Term, Term),
    /// Production into a `Λ`, instantiated at the given term.
    Free(Term, Term),
    BangF(Term),
    Dupl(Term),
    Erase(Term),
    Use(Term),
    Mult(Term),
    CohEmpty,
    CohTensor(Term, Term),
}

impl Production {
    /// Fields paired with the number of binders each sits under.
    fn children(&self) -> Vec<(&Term, usize)> {
        use Production::*;
        match self {
            OplTt | LaxTt | CohEmpty => vec![],
            Id(a) | Unitr(a) | UnitrInv(a) | SecInl(a) | RetInl(a) | SecInr(a) | RetInr(a)
            | SecInit(a) | RetInit(a) | Curry(a) | Uncurry(a) | BangF(a) | Dupl(a) | Erase(a)
            | Use(a) | Mult(a) => vec![(a, 0)],
            Comp(a, b)
            | TensorF(a, b)
            | Swap(a, b)
            | OplPair(a, b)
            | LaxPair(a, b)
            | Free(a, b)
            | CohTensor(a, b) => vec![(a, 0), (b, 0)],
            Bind(a, b) => vec![(a, 0), (b, 1)],
            Assoc(a, b, c) => vec![(a, 0), (b, 0), (c, 0)],
        }
    }

    fn rebuild(&self, mut f: impl FnMut(&Term, usize) -> Term) -> Production {
        use Production::*;
        match self {
            OplTt => OplTt,
            LaxTt => LaxTt,
            CohEmpty => CohEmpty,
            Id(a) => Id(f(a, 0)),
            Unitr(a) => Unitr(f(a, 0)),
            UnitrInv(a) => UnitrInv(f(a, 0)),
            SecInl(a) => SecInl(f(a, 0)),
            RetInl(a) => RetInl(f(a, 0)),
            SecInr(a) => SecInr(f(a, 0)),
            RetInr(a) => RetInr(f(a, 0)),
            SecInit(a) => SecInit(f(a, 0)),
            RetInit(a) => RetInit(f(a, 0)),
            Curry(a) => Curry(f(a, 0)),
            Uncurry(a) => Uncurry(f(a, 0)),
            BangF(a) => BangF(f(a, 0)),
            Dupl(a) => Dupl(f(a, 0)),
            Erase(a) => Erase(f(a, 0)),
            Use(a) => Use(f(a, 0)),
            Mult(a) => Mult(f(a, 0)),
            Comp(a, b) => Comp(f(a, 0), f(b, 0)),
            TensorF(a, b) => TensorF(f(a, 0), f(b, 0)),
            Swap(a, b) => Swap(f(a, 0), f(b, 0)),
            OplPair(a, b) => OplPair(f(a, 0), f(b, 0)),
            LaxPair(a, b) => LaxPair(f(a, 0), f(b, 0)),
            Free(a, b) => Free(f(a, 0), f(b, 0)),
            CohTensor(a, b) => CohTensor(f(a, 0), f(b, 0)),
            Bind(a, b) => Bind(f(a, 0), f(b, 1)),
            Assoc(a, b, c) => Assoc(f(a, 0), f(b, 0), f(c, 0)),
        }
    }

    /// Short rule identifier, used in diagnostics.
    pub fn rule_name(&self) -> &'static str {
        use Production::*;
        match self {
            Id(_) => "id",
            Comp(..) => "comp",
            TensorF(..) => "tensor-f",
            Assoc(..) => "assoc",
            Swap(..) => "swap",
            Unitr(_) => "unitr",
            UnitrInv(_) => "unitr'",
            OplTt => "opl-tt",
            LaxTt => "lax-tt",
            OplPair(..) => "opl-pair",
            LaxPair(..) => "lax-pair",
            SecInl(_) => "sec-inl",
            RetInl(_) => "ret-inl",
            SecInr(_) => "sec-inr",
            RetInr(_) => "ret-inr",
            SecInit(_) => "sec-init",
            RetInit(_) => "ret-init",
            Curry(_) => "curry",
            Uncurry(_) => "uncurry",
            Bind(..) => "bind",
            Free(..) => "free",
            BangF(_) => "bang-f",
            Dupl(_) => "dupl",
            Erase(_) => "erase",
            Use(_) => "use",
            Mult(_) => "mult",
            CohEmpty => "coh-empty",
            CohTensor(..) => "coh-tensor",
        }
    }
}

fn bx(t: Term) -> Box<Term> {
    Box::new(t)
}

impl Term {
    /// Immediate subterms paired with the number of binders each sits under.
    pub fn children(&self) -> Vec<(&Term, usize)> {
        use Term::*;
        match self {
            Var(_) | Const(_) | Universe | Unit | Tt | SupplyTy | Empty => vec![],
            Lam(a) | Mu(a) => vec![(a, 1)],
            Fst(a) | Snd(a) | Inl(a) | Inr(a) | Init(a) | Iota(a) | Bang(a) => vec![(a, 0)],
            Pi(a, b) | Sigma(a, b) | SupAbs(a, b) => vec![(a, 0), (b, 1)],
            App(a, b)
            | Pair(a, b)
            | Sum(a, b)
            | Tensor(a, b)
            | Hom(a, b)
            | Pow(a, b)
            | ProdTy(a, b) => vec![(a, 0), (b, 0)],
            SigmaCase(s, m, b) => vec![(s, 0), (m, 1), (b, 2)],
            SumCase(s, m, l, r) => vec![(s, 0), (m, 1), (l, 1), (r, 1)],
            UnitCase(s, m, b) => vec![(s, 0), (m, 1), (b, 0)],
            MuCase(s, m, b) => vec![(s, 0), (m, 1), (b, 1)],
            Prod(p) => p.children(),
        }
    }

    /// Rebuild this node with every immediate subterm replaced by
    /// `f(child, binders)`.
    pub fn map_children(&self, mut f: impl FnMut(&Term, usize) -> Term) -> Term {
        use Term::*;
        match self {
            Var(_) | Const(_) | Universe | Unit | Tt | SupplyTy | Empty => self.clone(),
            Lam(a) => Lam(bx(f(a, 1))),
            Mu(a) => Mu(bx(f(a, 1))),
            Fst(a) => Fst(bx(f(a, 0))),
            Snd(a) => Snd(bx(f(a, 0))),
            Inl(a) => Inl(bx(f(a, 0))),
            Inr(a) => Inr(bx(f(a, 0))),
            Init(a) => Init(bx(f(a, 0))),
            Iota(a) => Iota(bx(f(a, 0))),
            Bang(a) => Bang(bx(f(a, 0))),
            Pi(a, b) => Pi(bx(f(a, 0)), bx(f(b, 1))),
            Sigma(a, b) => Sigma(bx(f(a, 0)), bx(f(b, 1))),
            SupAbs(a, b) => SupAbs(bx(f(a, 0)), bx(f(b, 1))),
            App(a, b) => App(bx(f(a, 0)), bx(f(b, 0))),
            Pair(a, b) => Pair(bx(f(a, 0)), bx(f(b, 0))),
            Sum(a, b) => Sum(bx(f(a, 0)), bx(f(b, 0))),
            Tensor(a, b) => Tensor(bx(f(a, 0)), bx(f(b, 0))),
            Hom(a, b) => Hom(bx(f(a, 0)), bx(f(b, 0))),
            Pow(a, b) => Pow(bx(f(a, 0)), bx(f(b, 0))),
            ProdTy(a, b) => ProdTy(bx(f(a, 0)), bx(f(b, 0))),
            SigmaCase(s, m, b) => SigmaCase(bx(f(s, 0)), bx(f(m, 1)), bx(f(b, 2))),
            SumCase(s, m, l, r) => SumCase(bx(f(s, 0)), bx(f(m, 1)), bx(f(l, 1)), bx(f(r, 1))),
            UnitCase(s, m, b) => UnitCase(bx(f(s, 0)), bx(f(m, 1)), bx(f(b, 0))),
            MuCase(s, m, b) => MuCase(bx(f(s, 0)), bx(f(m, 1)), bx(f(b, 1))),
            Prod(p) => Prod(Box::new(p.rebuild(f))),
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|(c, _)| c.size()).sum::<usize>()
    }

    pub fn mentions_const(&self, name: &str) -> bool {
        match self {
            Term::Const(n) => n == name,
            _ => self.children().iter().any(|(c, _)| c.mentions_const(name)),
        }
    }
}

/// Shift every free index `≥ cut` up by `amount`.
pub fn weaken(t: &Term, cut: usize, amount: usize) -> Term {
    if amount == 0 {
        return t.clone();
    }
    match t {
        Term::Var(i) if *i >= cut => Term::Var(i + amount),
        Term::Var(_) => t.clone(),
        _ => t.map_children(|c, b| weaken(c, cut + b, amount)),
    }
}

/// Decrement every free index `> cut`; index `cut` must not occur.
fn strengthen_above(t: &Term, cut: usize) -> Term {
    match t {
        Term::Var(i) if *i > cut => Term::Var(i - 1),
        Term::Var(_) => t.clone(),
        _ => t.map_children(|c, b| strengthen_above(c, cut + b)),
    }
}

/// Capture-free replacement of index `target` by `s`. Indices above
/// `target` are decremented; `s` lives in the context with `target` removed.
pub fn substitute(t: &Term, target: usize, s: &Term) -> Term {
    fn go(t: &Term, depth: usize, target: usize, s: &Term) -> Term {
        match t {
            Term::Var(i) => {
                let k = target + depth;
                if *i == k {
                    weaken(s, 0, depth)
                } else if *i > k {
                    Term::Var(i - 1)
                } else {
                    t.clone()
                }
            }
            _ => t.map_children(|c, b| go(c, depth + b, target, s)),
        }
    }
    go(t, 0, target, s)
}

/// Instantiate the innermost binder of `body` with `arg`.
pub fn instantiate(body: &Term, arg: &Term) -> Term {
    substitute(body, 0, arg)
}

/// Instantiate a two-binder body: `first` for index 1, `second` for index 0.
pub fn instantiate2(body: &Term, first: &Term, second: &Term) -> Term {
    let once = substitute(body, 0, &weaken(second, 0, 1));
    substitute(&once, 0, first)
}

/// Remove index 0 from a term that does not mention it.
pub fn strengthen(t: &Term) -> Option<Term> {
    if has_free(t, 0) {
        None
    } else {
        Some(strengthen_above(t, 0))
    }
}

pub fn free_indices(t: &Term) -> BTreeSet<usize> {
    fn go(t: &Term, depth: usize, out: &mut BTreeSet<usize>) {
        match t {
            Term::Var(i) if *i >= depth => {
                out.insert(i - depth);
            }
            _ => {
                for (c, b) in t.children() {
                    go(c, depth + b, out);
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    go(t, 0, &mut out);
    out
}

pub fn has_free(t: &Term, index: usize) -> bool {
    match t {
        Term::Var(i) => *i == index,
        _ => t.children().iter().any(|(c, b)| has_free(c, index + b)),
    }
}

/// Replace every syntactic occurrence of `target` (a term in the current
/// context) by a fresh variable bound just outside `t`; the result lives
/// under one extra binder.
pub fn abstract_term(t: &Term, target: &Term) -> Term {
    fn go(t: &Term, depth: usize, target: &Term) -> Term {
        let shifted = weaken(target, 0, depth + 1);
        if *t == shifted {
            return Term::Var(depth);
        }
        match t {
            Term::Var(_) => t.clone(),
            _ => t.map_children(|c, b| go(c, depth + b, target)),
        }
    }
    go(&weaken(t, 0, 1), 0, target)
}

// Smart constructors.

pub fn var(i: usize) -> Term {
    Term::Var(i)
}
pub fn konst(n: &str) -> Term {
    Term::Const(n.to_string())
}
pub fn pi(a: Term, b: Term) -> Term {
    Term::Pi(bx(a), bx(b))
}
/// Non-dependent function type.
pub fn arrow(a: Term, b: Term) -> Term {
    pi(a, weaken(&b, 0, 1))
}
pub fn lam(b: Term) -> Term {
    Term::Lam(bx(b))
}
pub fn app(f: Term, a: Term) -> Term {
    match f {
        Term::Lam(body) => instantiate(&body, &a),
        f => Term::App(bx(f), bx(a)),
    }
}
pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
    args.into_iter().fold(f, app)
}
pub fn sigma(a: Term, b: Term) -> Term {
    Term::Sigma(bx(a), bx(b))
}
/// Non-dependent pair type.
pub fn times(a: Term, b: Term) -> Term {
    sigma(a, weaken(&b, 0, 1))
}
pub fn pair(a: Term, b: Term) -> Term {
    Term::Pair(bx(a), bx(b))
}
pub fn fst(p: Term) -> Term {
    match p {
        Term::Pair(a, _) => *a,
        p => Term::Fst(bx(p)),
    }
}
pub fn snd(p: Term) -> Term {
    match p {
        Term::Pair(_, b) => *b,
        p => Term::Snd(bx(p)),
    }
}
pub fn sum(a: Term, b: Term) -> Term {
    Term::Sum(bx(a), bx(b))
}
pub fn inl(a: Term) -> Term {
    Term::Inl(bx(a))
}
pub fn inr(a: Term) -> Term {
    Term::Inr(bx(a))
}
pub fn mu(f: Term) -> Term {
    Term::Mu(bx(f))
}
pub fn init(a: Term) -> Term {
    Term::Init(bx(a))
}
pub fn tensor(a: Term, b: Term) -> Term {
    Term::Tensor(bx(a), bx(b))
}
pub fn iota(a: Term) -> Term {
    Term::Iota(bx(a))
}
pub fn hom(a: Term, b: Term) -> Term {
    Term::Hom(bx(a), bx(b))
}
pub fn sup_abs(a: Term, body: Term) -> Term {
    Term::SupAbs(bx(a), bx(body))
}
pub fn bang(a: Term) -> Term {
    Term::Bang(bx(a))
}
pub fn pow(d: Term, m: Term) -> Term {
    Term::Pow(bx(d), bx(m))
}
pub fn prod_ty(a: Term, b: Term) -> Term {
    Term::ProdTy(bx(a), bx(b))
}
pub fn prod(p: Production) -> Term {
    Term::Prod(Box::new(p))
}

/// `ℕ := μX. ⊤ + X`.
pub fn nat() -> Term {
    mu(sum(Term::Unit, var(0)))
}
pub fn zero() -> Term {
    init(inl(Term::Tt))
}
pub fn suc(n: Term) -> Term {
    init(inr(n))
}
pub fn numeral(k: u64) -> Term {
    (0..k).fold(zero(), |acc, _| suc(acc))
}

/// Read a closed numeral `init (inr (… init (inl tt)))`.
pub fn as_numeral(t: &Term) -> Option<u64> {
    let mut n = 0;
    let mut cur = t;
    loop {
        match cur {
            Term::Init(x) => match &**x {
                Term::Inl(u) if **u == Term::Tt => return Some(n),
                Term::Inr(m) => {
                    n += 1;
                    cur = m;
                }
                _ => return None,
            },
            _ => return None,
        }
    }
}

/// Right-nested tensor of a list of supplies ending in `◇`.
pub fn tensor_list(items: &[Term]) -> Term {
    items
        .iter()
        .rev()
        .fold(Term::Empty, |acc, a| tensor(a.clone(), acc))
}

/// Composite `ps[0] ∘ ps[1] ∘ … ∘ ps[n-1]`, with `ps[n-1]` applied first.
/// Identity productions are dropped unless nothing else remains.
pub fn comp_chain(ps: Vec<Term>) -> Option<Term> {
    let is_id = |p: &Term| matches!(p, Term::Prod(b) if matches!(**b, Production::Id(_)));
    let mut ps = ps;
    if ps.len() > 1 && !ps.iter().all(is_id) {
        ps.retain(|p| !is_id(p));
    } else if ps.len() > 1 {
        ps.drain(..ps.len() - 1);
    }
    fn balanced(ps: &mut Vec<Term>) -> Term {
        if ps.len() == 1 {
            return ps.pop().unwrap();
        }
        let mut later = ps.split_off(ps.len() / 2);
        let first = balanced(&mut later);
        prod(Production::Comp(balanced(ps), first))
    }
    (!ps.is_empty()).then(|| balanced(&mut ps))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weaken_examples() {
        assert_eq!(weaken(&var(0), 0, 1), var(1));
        assert_eq!(weaken(&lam(var(0)), 0, 5), lam(var(0)));
        assert_eq!(weaken(&iota(var(2)), 1, 1), iota(var(3)));
        assert_eq!(weaken(&iota(var(0)), 1, 1), iota(var(0)));
    }

    #[test]
    fn substitute_examples() {
        assert_eq!(substitute(&iota(var(0)), 0, &Term::Tt), iota(Term::Tt));
        assert_eq!(substitute(&var(1), 0, &Term::Tt), var(0));
        let q = pair(var(3), Term::Tt);
        assert_eq!(
            substitute(&tensor(var(0), Term::Empty), 0, &q),
            tensor(q.clone(), Term::Empty)
        );
        // under a binder the substituted term is shifted
        assert_eq!(
            substitute(&sup_abs(Term::Unit, tensor(var(1), var(0))), 0, &var(4)),
            sup_abs(Term::Unit, tensor(var(5), var(0)))
        );
    }

    #[test]
    fn free_index_examples() {
        assert!(free_indices(&lam(var(0))).is_empty());
        assert_eq!(
            free_indices(&tensor(iota(var(0)), iota(var(2)))),
            [0, 2].into_iter().collect()
        );
        let a = sigma(var(3), var(0));
        assert_eq!(
            free_indices(&sup_abs(a.clone(), iota(var(0)))),
            free_indices(&a)
        );
    }

    #[test]
    fn production_children_are_visited() {
        let p = prod(Production::Bind(var(0), prod(Production::Id(iota(var(1))))));
        assert_eq!(free_indices(&p), [0].into_iter().collect());
        assert_eq!(
            weaken(&p, 0, 2),
            prod(Production::Bind(var(2), prod(Production::Id(iota(var(3))))))
        );
    }

    #[test]
    fn numerals_round_trip() {
        for k in 0..6 {
            assert_eq!(as_numeral(&numeral(k)), Some(k));
        }
        assert_eq!(as_numeral(&var(0)), None);
    }

    #[test]
    fn abstract_replaces_occurrences() {
        // iota (fst x) with x = Var 0, abstracted over `fst x`
        let t = tensor(iota(fst(var(0))), iota(var(0)));
        let abs = abstract_term(&t, &fst(var(0)));
        assert_eq!(abs, tensor(iota(var(0)), iota(var(1))));
        assert_eq!(instantiate(&abs, &fst(var(0))), t);
    }

    #[test]
    fn strengthen_rejects_used_index() {
        assert_eq!(strengthen(&iota(var(0))), None);
        assert_eq!(strengthen(&iota(var(2))), Some(iota(var(1))));
    }
}
