//! Human-readable rendering of terms, using surface notation.

use crate::syntax::{as_numeral, has_free, Production, Term};

/// Render `t` in a context whose variable names are `names` (outermost first).
pub fn show(t: &Term, names: &[String]) -> String {
    let mut p = Printer {
        names: names.to_vec(),
    };
    p.term(t, 0)
}

/// Render a closed term.
pub fn show_closed(t: &Term) -> String {
    show(t, &[])
}

struct Printer {
    names: Vec<String>,
}

const BINDER: u8 = 0;
const ARROW: u8 = 1;
const SUM: u8 = 2;
const TIMES: u8 = 3;
const COMP: u8 = 4;
const TENSOR: u8 = 5;
const POW: u8 = 6;
const APP: u8 = 7;
const ATOM: u8 = 8;

impl Printer {
    fn fresh(&self, base: &str) -> String {
        if !self.names.iter().any(|n| n == base) {
            return base.to_string();
        }
        (1..)
            .map(|i| format!("{base}{i}"))
            .find(|c| !self.names.iter().any(|n| n == c))
            .unwrap()
    }

    fn under<R>(&mut self, base: &str, f: impl FnOnce(&mut Self, &str) -> R) -> R {
        let n = self.fresh(base);
        self.names.push(n.clone());
        let r = f(self, &n);
        self.names.pop();
        r
    }

    fn var(&self, i: usize) -> String {
        let len = self.names.len();
        match len.checked_sub(i + 1) {
            Some(k) => self.names[k].clone(),
            None => format!("#{}", i - len),
        }
    }

    fn paren(&self, s: String, prec: u8, ctx: u8) -> String {
        if prec < ctx {
            format!("({s})")
        } else {
            s
        }
    }

    fn term(&mut self, t: &Term, ctx: u8) -> String {
        use Term::*;
        if let Some(k) = as_numeral(t) {
            return k.to_string();
        }
        let (s, prec) = match t {
            Var(i) => (self.var(*i), ATOM),
            Const(n) => (n.clone(), ATOM),
            Universe => ("Type".into(), ATOM),
            Unit => ("⊤".into(), ATOM),
            Tt => ("tt".into(), ATOM),
            SupplyTy => ("Supply".into(), ATOM),
            Empty => ("◇".into(), ATOM),
            Pi(a, b) if !has_free(b, 0) => {
                let a = self.term(a, SUM);
                let b = self.under("_", |p, _| p.term(b, ARROW));
                (format!("{a} → {b}"), ARROW)
            }
            Pi(a, b) => {
                let a = self.term(a, BINDER);
                let b = self.under("x", |p, x| format!("({x} : {a}) → {}", p.term(b, ARROW)));
                (b, ARROW)
            }
            Sigma(a, b) if !has_free(b, 0) => {
                let a = self.term(a, COMP);
                let b = self.under("_", |p, _| p.term(b, TIMES));
                (format!("{a} × {b}"), TIMES)
            }
            Sigma(a, b) => {
                let a = self.term(a, BINDER);
                let b = self.under("x", |p, x| format!("({x} : {a}) × {}", p.term(b, TIMES)));
                (b, TIMES)
            }
            Lam(b) => (
                self.under("x", |p, x| format!("λ{x}. {}", p.term(b, BINDER))),
                BINDER,
            ),
            App(f, a) => {
                let f = self.term(f, APP);
                let a = self.term(a, ATOM);
                (format!("{f} {a}"), APP)
            }
            Pair(a, b) => {
                let a = self.term(a, BINDER);
                let b = self.term(b, BINDER);
                (format!("({a} , {b})"), ATOM)
            }
            Fst(a) => (format!("fst {}", self.term(a, ATOM)), APP),
            Snd(a) => (format!("snd {}", self.term(a, ATOM)), APP),
            Inl(a) => (format!("inl {}", self.term(a, ATOM)), APP),
            Inr(a) => (format!("inr {}", self.term(a, ATOM)), APP),
            Init(a) => (format!("init {}", self.term(a, ATOM)), APP),
            Iota(a) => (format!("ι {}", self.term(a, ATOM)), APP),
            Bang(a) => (format!("! {}", self.term(a, ATOM)), APP),
            Sum(a, b) => {
                let a = self.term(a, TIMES);
                let b = self.term(b, SUM);
                (format!("{a} + {b}"), SUM)
            }
            Mu(f) => (
                self.under("X", |p, x| format!("μ{x}. {}", p.term(f, BINDER))),
                BINDER,
            ),
            SigmaCase(s, _, b) => {
                let s = self.term(s, BINDER);
                let body = self.under("x", |p, x| {
                    p.under("y", |p, y| format!("({x} , {y}) ↦ {}", p.term(b, BINDER)))
                });
                (format!("case {s} of {{ {body} }}"), BINDER)
            }
            SumCase(s, _, l, r) => {
                let s = self.term(s, BINDER);
                let l = self.under("x", |p, x| format!("inl {x} ↦ {}", p.term(l, BINDER)));
                let r = self.under("y", |p, y| format!("inr {y} ↦ {}", p.term(r, BINDER)));
                (format!("case {s} of {{ {l} ; {r} }}"), BINDER)
            }
            UnitCase(s, _, b) => {
                let s = self.term(s, BINDER);
                let b = self.term(b, BINDER);
                (format!("case {s} of {{ tt ↦ {b} }}"), BINDER)
            }
            MuCase(s, _, b) => {
                let s = self.term(s, BINDER);
                let b = self.under("y", |p, y| format!("init {y} ↦ {}", p.term(b, BINDER)));
                (format!("case {s} of {{ {b} }}"), BINDER)
            }
            Tensor(a, b) => {
                let a = self.term(a, POW);
                let b = self.term(b, TENSOR);
                (format!("{a} ⊗ {b}"), TENSOR)
            }
            Hom(a, b) => {
                let a = self.term(a, BINDER);
                let b = self.term(b, BINDER);
                (format!("[{a} , {b}]"), ATOM)
            }
            SupAbs(a, b) => {
                let a = self.term(a, BINDER);
                let b = self.under("x", |p, x| format!("Λ({x} : {a}). {}", p.term(b, BINDER)));
                (b, BINDER)
            }
            Pow(d, m) => {
                let d = self.term(d, APP);
                let m = self.term(m, APP);
                (format!("{d} ^ {m}"), POW)
            }
            ProdTy(a, b) => {
                let a = self.term(a, SUM);
                let b = self.term(b, SUM);
                (format!("{a} ▷ {b}"), ARROW)
            }
            Prod(p) => self.production(p),
        };
        self.paren(s, prec, ctx)
    }

    fn keyword(&mut self, kw: &str, args: &[&Term]) -> (String, u8) {
        if args.is_empty() {
            return (kw.to_string(), ATOM);
        }
        let mut s = kw.to_string();
        for a in args {
            s.push(' ');
            s.push_str(&self.term(a, ATOM));
        }
        (s, APP)
    }

    fn production(&mut self, p: &Production) -> (String, u8) {
        use Production::*;
        match p {
            Comp(a, b) => {
                let a = self.term(a, TENSOR);
                let b = self.term(b, COMP);
                (format!("{a} ∘ {b}"), COMP)
            }
            TensorF(a, b) => {
                let a = self.term(a, POW);
                let b = self.term(b, TENSOR);
                (format!("{a} ⊗f {b}"), TENSOR)
            }
            Bind(a, d) => {
                let a = self.term(a, BINDER);
                let s = self.under("x", |p, x| {
                    format!("bind ({x} : {a}). {}", p.term(d, BINDER))
                });
                (s, BINDER)
            }
            Id(a) => self.keyword("id", &[a]),
            Assoc(a, b, c) => self.keyword("assoc", &[a, b, c]),
            Swap(a, b) => self.keyword("swap", &[a, b]),
            Unitr(a) => self.keyword("unitr", &[a]),
            UnitrInv(a) => self.keyword("unitr'", &[a]),
            OplTt => self.keyword("opltt", &[]),
            LaxTt => self.keyword("laxtt", &[]),
            OplPair(a, b) => self.keyword("opl", &[a, b]),
            LaxPair(a, b) => self.keyword("lax", &[a, b]),
            SecInl(a) => self.keyword("secinl", &[a]),
            RetInl(a) => self.keyword("retinl", &[a]),
            SecInr(a) => self.keyword("secinr", &[a]),
            RetInr(a) => self.keyword("retinr", &[a]),
            SecInit(a) => self.keyword("secinit", &[a]),
            RetInit(a) => self.keyword("retinit", &[a]),
            Curry(a) => self.keyword("curry", &[a]),
            Uncurry(a) => self.keyword("uncurry", &[a]),
            Free(a, b) => self.keyword("free", &[a, b]),
            BangF(a) => self.keyword("!f", &[a]),
            Dupl(a) => self.keyword("dupl", &[a]),
            Erase(a) => self.keyword("erase", &[a]),
            Use(a) => self.keyword("use", &[a]),
            Mult(a) => self.keyword("mult", &[a]),
            CohEmpty => self.keyword("coh◇", &[]),
            CohTensor(a, b) => self.keyword("coh⊗", &[a, b]),
        }
    }
}
