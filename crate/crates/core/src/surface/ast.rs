//! Surface syntax tree.

use crate::diag::Span;

#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

/// How many copies of its argument a linear function consumes.
#[derive(Debug, Clone, PartialEq)]
pub enum MultExpr {
    One,
    Num(Box<Expr>),
    Bang,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prim {
    Inl,
    Inr,
    Init,
    Fst,
    Snd,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Var(String),
    Hole,
    Num(u64),
    Type,
    SupplyTy,
    Unit,
    Tt,
    Empty,
    App(Box<Expr>, Box<Expr>),
    Lam {
        pat: Pat,
        bang: bool,
        body: Box<Expr>,
    },
    Pi {
        name: Option<String>,
        dom: Box<Expr>,
        cod: Box<Expr>,
    },
    Sigma {
        name: Option<String>,
        dom: Box<Expr>,
        cod: Box<Expr>,
    },
    Sum(Box<Expr>, Box<Expr>),
    Mu(String, Box<Expr>),
    Pair(Box<Expr>, Box<Expr>),
    Prim(Prim, Box<Expr>),
    /// Prefix `ι e`: the supply of one copy of `e`.
    Iota(Box<Expr>),
    Bang(Box<Expr>),
    Tensor(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Hom(Box<Expr>, Box<Expr>),
    SupAbs(String, Box<Expr>, Box<Expr>),
    ProdTy(Box<Expr>, Box<Expr>),
    /// `Δ ⊩ L`.
    Judg(Box<Expr>, Box<Expr>),
    /// `⟨ x : L ⟩ ^ m ⊸ L'`; the binder may be a pair pattern.
    LArrow {
        binder: Option<Pat>,
        dom: Box<Expr>,
        mult: MultExpr,
        cod: Box<Expr>,
    },
    /// Postfix `e ι`: the variable rule.
    VarRule(Box<Expr>),
    /// Postfix `f ⊖`: a function as the identity judgment on its supply.
    FnJudg(Box<Expr>),
    /// `f @ a`, `f < m @ a`, `f !@ a`.
    LApp {
        fun: Box<Expr>,
        mult: MultExpr,
        arg: Box<Expr>,
    },
    By(Box<Expr>, Box<Expr>),
    Case(Box<Expr>, Vec<(Pat, Expr)>),
    If(Box<Expr>, Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// `| b |`.
    BoolNat(Box<Expr>),
    Not(Box<Expr>),
    Comp(Box<Expr>, Box<Expr>),
    TensorF(Box<Expr>, Box<Expr>),
    Bind(String, Box<Expr>, Box<Expr>),
    /// The supply a linearly bound variable stands for.
    Res(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Pat {
    Var(String),
    Wild,
    Tt,
    Pair(Box<Pat>, Box<Pat>),
    Inl(Box<Pat>),
    Inr(Box<Pat>),
    Init(Box<Pat>),
    /// A pattern synonym applied to arguments.
    Syn(String, Vec<Pat>),
}

impl Pat {
    /// The numeral `k` as `init (inr … (init (inl tt)))`.
    pub fn numeral(k: u64) -> Pat {
        let mut p = Pat::Init(Box::new(Pat::Inl(Box::new(Pat::Tt))));
        for _ in 0..k {
            p = Pat::Init(Box::new(Pat::Inr(Box::new(p))));
        }
        p
    }

    pub fn is_irrefutable(&self) -> bool {
        matches!(self, Pat::Var(_) | Pat::Wild)
    }

    /// Replace variables named in `args` by the given patterns.
    pub fn subst(&self, args: &[(String, Pat)]) -> Pat {
        let go = |p: &Pat| Box::new(p.subst(args));
        match self {
            Pat::Var(x) => args
                .iter()
                .find(|(n, _)| n == x)
                .map(|(_, p)| p.clone())
                .unwrap_or_else(|| self.clone()),
            Pat::Wild | Pat::Tt => self.clone(),
            Pat::Pair(a, b) => Pat::Pair(go(a), go(b)),
            Pat::Inl(a) => Pat::Inl(go(a)),
            Pat::Inr(a) => Pat::Inr(go(a)),
            Pat::Init(a) => Pat::Init(go(a)),
            Pat::Syn(n, ps) => Pat::Syn(n.clone(), ps.iter().map(|p| p.subst(args)).collect()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Item {
    Pragma {
        key: String,
        value: String,
        span: Span,
    },
    Postulate {
        names: Vec<String>,
        ty: Expr,
        span: Span,
    },
    Def {
        name: String,
        ty: Expr,
        body: Expr,
        span: Span,
    },
    Pattern {
        name: String,
        params: Vec<String>,
        rhs: Pat,
        span: Span,
    },
}

impl Item {
    pub fn span(&self) -> Span {
        match self {
            Item::Pragma { span, .. }
            | Item::Postulate { span, .. }
            | Item::Def { span, .. }
            | Item::Pattern { span, .. } => *span,
        }
    }
}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Expr {
        Expr { kind, span }
    }
}
