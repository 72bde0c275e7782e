//! Recursive-descent parser for `.ld` files.
//!
//! Precedence, loosest first: `by`; binders (`λ`, `case`, `if`, `μ`, `Λ`,
//! `bind`, telescopes); `→ ⊸ ⊩ ▷`; `+`; `×`; `∘`; `⊗ ⊗f`; `*`; `^`;
//! `@ < m @ !@`; juxtaposition; postfix `ι ⊖`.

use super::ast::*;
use super::lexer::{lex, Tok, Token};
use crate::diag::{Diagnostic, Result, Span};

pub fn parse_file(src: &str) -> Result<Vec<Item>> {
    let mut p = Parser::new(lex(src)?);
    let mut items = Vec::new();
    while p.peek() != &Tok::Eof {
        items.push(p.item()?);
    }
    Ok(items)
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser::new(lex(src)?);
    let e = p.expr()?;
    p.expect(Tok::Eof, "end of input")?;
    Ok(e)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    in_bars: bool,
}

type Ex = Box<Expr>;
type BinOp = fn(Ex, Ex) -> ExprKind;

impl Parser {
    fn new(toks: Vec<Token>) -> Parser {
        Parser {
            toks,
            pos: 0,
            in_bars: false,
        }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error(&self, what: &str) -> Diagnostic {
        Diagnostic::error(
            "parse.expected",
            format!("expected {what}, found {}", self.peek().describe()),
        )
        .with_span(self.span())
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<Token> {
        if self.peek() == &t {
            Ok(self.bump())
        } else {
            Err(self.error(what))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.error("a name")),
        }
    }

    fn binder_name(&mut self) -> Result<String> {
        if self.eat(&Tok::Underscore) {
            Ok("_".into())
        } else {
            self.ident()
        }
    }

    /// Span from `start` to the end of the last consumed token.
    fn since(&self, start: Span) -> Span {
        let last = self.toks[self.pos.saturating_sub(1)].span;
        Span::new(start.start, last.end)
    }

    fn mk(&self, kind: ExprKind, start: Span) -> Expr {
        Expr::new(kind, self.since(start))
    }

    // Items.

    fn item(&mut self) -> Result<Item> {
        let start = self.span();
        match self.peek().clone() {
            Tok::Pragma(key, value) => {
                self.bump();
                Ok(Item::Pragma {
                    key,
                    value,
                    span: start,
                })
            }
            Tok::Postulate => {
                self.bump();
                let mut names = vec![self.ident()?];
                while let Tok::Ident(_) = self.peek() {
                    names.push(self.ident()?);
                }
                self.expect(Tok::Colon, "`:`")?;
                let ty = self.expr()?;
                Ok(Item::Postulate {
                    names,
                    ty,
                    span: self.since(start),
                })
            }
            Tok::Def => {
                self.bump();
                let name = self.ident()?;
                self.expect(Tok::Colon, "`:`")?;
                let ty = self.expr()?;
                self.expect(Tok::Equals, "`=`")?;
                let body = self.expr()?;
                Ok(Item::Def {
                    name,
                    ty,
                    body,
                    span: self.since(start),
                })
            }
            Tok::Pattern => {
                self.bump();
                let name = self.ident()?;
                let mut params = Vec::new();
                while let Tok::Ident(_) = self.peek() {
                    params.push(self.ident()?);
                }
                self.expect(Tok::Equals, "`=`")?;
                let rhs = self.pattern()?;
                Ok(Item::Pattern {
                    name,
                    params,
                    rhs,
                    span: self.since(start),
                })
            }
            _ => Err(self.error("`def`, `postulate`, `pattern` or a pragma")),
        }
    }

    // Expressions.

    pub fn expr(&mut self) -> Result<Expr> {
        let start = self.span();
        let mut e = self.arrow()?;
        while self.eat(&Tok::By) {
            let p = self.arrow()?;
            e = self.mk(ExprKind::By(Box::new(e), Box::new(p)), start);
        }
        Ok(e)
    }

    fn starts_telescope(&self) -> bool {
        if self.peek() != &Tok::LParen {
            return false;
        }
        let mut k = 1;
        while matches!(self.peek_at(k), Tok::Ident(_) | Tok::Underscore) {
            k += 1;
        }
        k > 1 && self.peek_at(k) == &Tok::Colon
    }

    fn arrow(&mut self) -> Result<Expr> {
        let start = self.span();
        match self.peek() {
            Tok::Lambda => return self.lambda(),
            Tok::Case => return self.case(),
            Tok::If => {
                self.bump();
                let c = self.expr()?;
                self.expect(Tok::Then, "`then`")?;
                let t = self.expr()?;
                self.expect(Tok::Else, "`else`")?;
                let e = self.expr()?;
                return Ok(self.mk(ExprKind::If(Box::new(c), Box::new(t), Box::new(e)), start));
            }
            Tok::Mu => {
                self.bump();
                let x = self.ident()?;
                self.expect(Tok::Dot, "`.`")?;
                let body = self.arrow()?;
                return Ok(self.mk(ExprKind::Mu(x, Box::new(body)), start));
            }
            Tok::CapLambda | Tok::Bind => {
                let is_bind = self.bump().tok == Tok::Bind;
                let (x, ty) = self.annotated_binder()?;
                self.expect(Tok::Dot, "`.`")?;
                let body = self.arrow()?;
                let kind = if is_bind {
                    ExprKind::Bind(x, ty, Box::new(body))
                } else {
                    ExprKind::SupAbs(x, ty, Box::new(body))
                };
                return Ok(self.mk(kind, start));
            }
            Tok::LAngle | Tok::Lt => return self.larrow(false),
            Tok::Bang if matches!(self.peek_at(1), Tok::LAngle | Tok::Lt) => {
                self.bump();
                return self.larrow(true);
            }
            _ if self.starts_telescope() => return self.telescope(),
            _ => {}
        }
        let lhs = self.sum()?;
        let rhs = |p: &mut Parser,
                   lhs: Expr,
                   f: fn(Ex, Ex) -> ExprKind,
                   next: fn(&mut Parser) -> Result<Expr>| {
            p.bump();
            let r = next(p)?;
            Ok(p.mk(f(Box::new(lhs), Box::new(r)), start))
        };
        match self.peek() {
            Tok::Arrow => rhs(
                self,
                lhs,
                |a, b| ExprKind::Pi {
                    name: None,
                    dom: a,
                    cod: b,
                },
                Parser::arrow,
            ),
            Tok::Lollipop => rhs(
                self,
                lhs,
                |a, b| ExprKind::LArrow {
                    binder: None,
                    dom: a,
                    mult: MultExpr::One,
                    cod: b,
                },
                Parser::arrow,
            ),
            Tok::Turnstile => rhs(self, lhs, ExprKind::Judg, Parser::arrow),
            Tok::Triangle => rhs(self, lhs, ExprKind::ProdTy, Parser::sum),
            _ => Ok(lhs),
        }
    }

    /// `(x : A)` or `x : A`, as used by `Λ` and `bind`.
    fn annotated_binder(&mut self) -> Result<(String, Ex)> {
        let parens = self.eat(&Tok::LParen);
        let x = self.binder_name()?;
        self.expect(Tok::Colon, "`:`")?;
        let ty = if parens { self.expr()? } else { self.sum()? };
        if parens {
            self.expect(Tok::RParen, "`)`")?;
        }
        Ok((x, Box::new(ty)))
    }

    fn telescope(&mut self) -> Result<Expr> {
        let start = self.span();
        self.expect(Tok::LParen, "`(`")?;
        let mut names = Vec::new();
        while !matches!(self.peek(), Tok::Colon) {
            names.push(self.binder_name()?);
        }
        self.bump();
        let dom = self.expr()?;
        self.expect(Tok::RParen, "`)`")?;
        let is_pi = match self.peek() {
            Tok::Arrow => true,
            Tok::Times => false,
            _ => return Err(self.error("`→` or `×` after a telescope")),
        };
        self.bump();
        let mut body = self.arrow()?;
        for name in names.into_iter().rev() {
            let name = (name != "_").then_some(name);
            let (dom, cod) = (Box::new(dom.clone()), Box::new(body));
            let kind = if is_pi {
                ExprKind::Pi { name, dom, cod }
            } else {
                ExprKind::Sigma { name, dom, cod }
            };
            body = self.mk(kind, start);
        }
        Ok(body)
    }

    fn larrow(&mut self, bang: bool) -> Result<Expr> {
        let start = self.span();
        self.bump();
        let binder = self.larrow_binder();
        let dom = self.expr()?;
        self.expect(Tok::RAngle, "`⟩`")?;
        let mult = if bang {
            MultExpr::Bang
        } else if self.eat(&Tok::Caret) {
            MultExpr::Num(Box::new(self.app()?))
        } else {
            MultExpr::One
        };
        self.expect(Tok::Lollipop, "`⊸`")?;
        let cod = self.arrow()?;
        Ok(self.mk(
            ExprKind::LArrow {
                binder,
                dom: Box::new(dom),
                mult,
                cod: Box::new(cod),
            },
            start,
        ))
    }

    /// `x :` or `(x , y) :` at the start of a linear arrow domain.
    fn larrow_binder(&mut self) -> Option<Pat> {
        let save = self.pos;
        let pat = match self.peek() {
            Tok::Ident(_) | Tok::Underscore | Tok::LParen => self.pattern_atom().ok(),
            _ => None,
        };
        match pat {
            Some(p) if self.eat(&Tok::Colon) => Some(p),
            _ => {
                self.pos = save;
                None
            }
        }
    }

    fn lambda(&mut self) -> Result<Expr> {
        let start = self.span();
        self.bump();
        let mut pats = Vec::new();
        loop {
            match self.peek() {
                Tok::MapsTo | Tok::BangMapsTo => break,
                Tok::Ident(_) => pats.push(Pat::Var(self.ident()?)),
                Tok::Underscore => {
                    self.bump();
                    pats.push(Pat::Wild);
                }
                Tok::LParen => pats.push(self.pattern_atom()?),
                _ => return Err(self.error("a binder or `↦`")),
            }
        }
        if pats.is_empty() {
            return Err(self.error("a binder"));
        }
        let bang = self.bump().tok == Tok::BangMapsTo;
        let mut body = self.expr()?;
        for pat in pats.into_iter().rev() {
            body = self.mk(
                ExprKind::Lam {
                    pat,
                    bang,
                    body: Box::new(body),
                },
                start,
            );
        }
        Ok(body)
    }

    fn case(&mut self) -> Result<Expr> {
        let start = self.span();
        self.bump();
        let scrut = self.expr()?;
        self.expect(Tok::Of, "`of`")?;
        self.expect(Tok::LBrace, "`{`")?;
        let mut clauses = Vec::new();
        while self.peek() != &Tok::RBrace {
            let pat = self.pattern()?;
            if !(self.eat(&Tok::MapsTo) || self.eat(&Tok::Arrow)) {
                return Err(self.error("`↦`"));
            }
            let body = self.expr()?;
            clauses.push((pat, body));
            if !self.eat(&Tok::Semi) {
                break;
            }
        }
        self.expect(Tok::RBrace, "`}`")?;
        Ok(self.mk(ExprKind::Case(Box::new(scrut), clauses), start))
    }

    fn binary(
        &mut self,
        next: fn(&mut Parser) -> Result<Expr>,
        ops: &[(Tok, BinOp)],
        right: bool,
    ) -> Result<Expr> {
        let start = self.span();
        let mut lhs = next(self)?;
        loop {
            let Some((_, f)) = ops.iter().find(|(t, _)| t == self.peek()) else {
                return Ok(lhs);
            };
            self.bump();
            let rhs = if right {
                self.binary(next, ops, right)?
            } else {
                next(self)?
            };
            lhs = self.mk(f(Box::new(lhs), Box::new(rhs)), start);
            if right {
                return Ok(lhs);
            }
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        self.binary(Parser::times, &[(Tok::Plus, ExprKind::Sum)], true)
    }

    fn times(&mut self) -> Result<Expr> {
        self.binary(
            Parser::comp,
            &[(Tok::Times, |a, b| ExprKind::Sigma {
                name: None,
                dom: a,
                cod: b,
            })],
            true,
        )
    }

    fn comp(&mut self) -> Result<Expr> {
        self.binary(Parser::tens, &[(Tok::Circ, ExprKind::Comp)], true)
    }

    fn tens(&mut self) -> Result<Expr> {
        self.binary(
            Parser::mul,
            &[
                (Tok::Tensor, ExprKind::Tensor),
                (Tok::TensorF, ExprKind::TensorF),
            ],
            true,
        )
    }

    fn mul(&mut self) -> Result<Expr> {
        self.binary(Parser::pow, &[(Tok::Star, ExprKind::Mul)], false)
    }

    fn pow(&mut self) -> Result<Expr> {
        let start = self.span();
        let base = self.lapp()?;
        if self.eat(&Tok::Caret) {
            let m = self.lapp()?;
            return Ok(self.mk(ExprKind::Pow(Box::new(base), Box::new(m)), start));
        }
        Ok(base)
    }

    fn lapp(&mut self) -> Result<Expr> {
        let start = self.span();
        let mut f = self.app()?;
        loop {
            let mult = match self.peek() {
                Tok::At => {
                    self.bump();
                    MultExpr::One
                }
                Tok::BangAt => {
                    self.bump();
                    MultExpr::Bang
                }
                Tok::Lt => {
                    self.bump();
                    let m = self.app()?;
                    self.expect(Tok::At, "`@`")?;
                    MultExpr::Num(Box::new(m))
                }
                _ => return Ok(f),
            };
            let arg = self.app()?;
            f = self.mk(
                ExprKind::LApp {
                    fun: Box::new(f),
                    mult,
                    arg: Box::new(arg),
                },
                start,
            );
        }
    }

    fn starts_atom(&self, t: &Tok) -> bool {
        match t {
            Tok::Ident(_)
            | Tok::Num(_)
            | Tok::Underscore
            | Tok::Type
            | Tok::SupplyTy
            | Tok::Unit
            | Tok::Tt
            | Tok::Diamond
            | Tok::LParen
            | Tok::LBracket => true,
            Tok::Bar => !self.in_bars,
            _ => false,
        }
    }

    fn app(&mut self) -> Result<Expr> {
        let start = self.span();
        let prefix: Option<fn(Ex) -> ExprKind> = match self.peek() {
            Tok::Iota => Some(ExprKind::Iota),
            Tok::Bang => Some(ExprKind::Bang),
            Tok::Not => Some(ExprKind::Not),
            Tok::Inl => Some(|e| ExprKind::Prim(Prim::Inl, e)),
            Tok::Inr => Some(|e| ExprKind::Prim(Prim::Inr, e)),
            Tok::Init => Some(|e| ExprKind::Prim(Prim::Init, e)),
            Tok::Fst => Some(|e| ExprKind::Prim(Prim::Fst, e)),
            Tok::Snd => Some(|e| ExprKind::Prim(Prim::Snd, e)),
            Tok::Res => {
                self.bump();
                let x = self.ident()?;
                return Ok(self.mk(ExprKind::Res(x), start));
            }
            _ => None,
        };
        if let Some(f) = prefix {
            self.bump();
            let arg = self.app_operand()?;
            return Ok(self.mk(f(Box::new(arg)), start));
        }
        let mut head = self.postfix()?;
        while self.starts_atom(self.peek()) {
            let arg = self.postfix()?;
            head = self.mk(ExprKind::App(Box::new(head), Box::new(arg)), start);
        }
        Ok(head)
    }

    /// Operand of a prefix operator: another prefix form or a postfix item.
    fn app_operand(&mut self) -> Result<Expr> {
        match self.peek() {
            Tok::Iota
            | Tok::Bang
            | Tok::Not
            | Tok::Inl
            | Tok::Inr
            | Tok::Init
            | Tok::Fst
            | Tok::Snd
            | Tok::Res => self.app(),
            _ => self.postfix(),
        }
    }

    fn postfix(&mut self) -> Result<Expr> {
        let start = self.span();
        let mut e = self.atom()?;
        loop {
            match self.peek() {
                Tok::Iota if !self.starts_atom(self.peek_at(1)) => {
                    self.bump();
                    e = self.mk(ExprKind::VarRule(Box::new(e)), start);
                }
                Tok::Ominus => {
                    self.bump();
                    e = self.mk(ExprKind::FnJudg(Box::new(e)), start);
                }
                _ => return Ok(e),
            }
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let start = self.span();
        let kind = match self.peek().clone() {
            Tok::Ident(s) => ExprKind::Var(s),
            Tok::Num(n) => ExprKind::Num(n),
            Tok::Underscore => ExprKind::Hole,
            Tok::Type => ExprKind::Type,
            Tok::SupplyTy => ExprKind::SupplyTy,
            Tok::Unit => ExprKind::Unit,
            Tok::Tt => ExprKind::Tt,
            Tok::Diamond => ExprKind::Empty,
            Tok::LParen => {
                self.bump();
                let saved = std::mem::replace(&mut self.in_bars, false);
                let e = self.tuple()?;
                self.in_bars = saved;
                self.expect(Tok::RParen, "`)`")?;
                return Ok(Expr::new(e.kind, self.since(start)));
            }
            Tok::LBracket => {
                self.bump();
                let saved = std::mem::replace(&mut self.in_bars, false);
                let a = self.expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let b = self.expr()?;
                self.in_bars = saved;
                self.expect(Tok::RBracket, "`]`")?;
                return Ok(self.mk(ExprKind::Hom(Box::new(a), Box::new(b)), start));
            }
            Tok::Bar if !self.in_bars => {
                self.bump();
                self.in_bars = true;
                let e = self.expr();
                self.in_bars = false;
                let e = e?;
                self.expect(Tok::Bar, "`|`")?;
                return Ok(self.mk(ExprKind::BoolNat(Box::new(e)), start));
            }
            _ => return Err(self.error("an expression")),
        };
        self.bump();
        Ok(self.mk(kind, start))
    }

    /// `e` or `e₁ , e₂ , …` (right-nested pairs) inside parentheses.
    fn tuple(&mut self) -> Result<Expr> {
        let start = self.span();
        let first = self.expr()?;
        if self.eat(&Tok::Comma) {
            let rest = self.tuple()?;
            return Ok(self.mk(ExprKind::Pair(Box::new(first), Box::new(rest)), start));
        }
        Ok(first)
    }

    // Patterns.

    fn pattern(&mut self) -> Result<Pat> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                let mut args = Vec::new();
                while matches!(
                    self.peek(),
                    Tok::Ident(_) | Tok::Underscore | Tok::Tt | Tok::Num(_) | Tok::LParen
                ) {
                    args.push(self.pattern_atom()?);
                }
                Ok(if args.is_empty() {
                    Pat::Var(name)
                } else {
                    Pat::Syn(name, args)
                })
            }
            Tok::Inl | Tok::Inr | Tok::Init => {
                let t = self.bump().tok;
                let p = Box::new(self.pattern_atom()?);
                Ok(match t {
                    Tok::Inl => Pat::Inl(p),
                    Tok::Inr => Pat::Inr(p),
                    _ => Pat::Init(p),
                })
            }
            _ => self.pattern_atom(),
        }
    }

    fn pattern_atom(&mut self) -> Result<Pat> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(Pat::Var(name))
            }
            Tok::Underscore => {
                self.bump();
                Ok(Pat::Wild)
            }
            Tok::Tt => {
                self.bump();
                Ok(Pat::Tt)
            }
            Tok::Num(k) => {
                self.bump();
                Ok(Pat::numeral(k))
            }
            Tok::LParen => {
                self.bump();
                let p = self.pattern_tuple()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(p)
            }
            _ => Err(self.error("a pattern")),
        }
    }

    fn pattern_tuple(&mut self) -> Result<Pat> {
        let first = self.pattern()?;
        if self.eat(&Tok::Comma) {
            let rest = self.pattern_tuple()?;
            return Ok(Pat::Pair(Box::new(first), Box::new(rest)));
        }
        Ok(first)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kind(src: &str) -> ExprKind {
        parse_expr(src).unwrap().kind
    }

    fn show(e: &Expr) -> String {
        use ExprKind::*;
        match &e.kind {
            Var(x) => x.clone(),
            Num(n) => n.to_string(),
            Hole => "_".into(),
            Empty => "◇".into(),
            App(f, a) => format!("({} {})", show(f), show(a)),
            Iota(a) => format!("(ι {})", show(a)),
            VarRule(a) => format!("{}ι", show(a)),
            FnJudg(a) => format!("{}⊖", show(a)),
            Pow(a, b) => format!("({} ^ {})", show(a), show(b)),
            Tensor(a, b) => format!("({} ⊗ {})", show(a), show(b)),
            TensorF(a, b) => format!("({} ⊗f {})", show(a), show(b)),
            Comp(a, b) => format!("({} ∘ {})", show(a), show(b)),
            Judg(a, b) => format!("({} ⊩ {})", show(a), show(b)),
            Pair(a, b) => format!("({} , {})", show(a), show(b)),
            By(a, b) => format!("({} by {})", show(a), show(b)),
            LApp { fun, mult, arg } => {
                let m = match mult {
                    MultExpr::One => "@".to_string(),
                    MultExpr::Bang => "!@".to_string(),
                    MultExpr::Num(m) => format!("< {} @", show(m)),
                };
                format!("({} {m} {})", show(fun), show(arg))
            }
            LArrow {
                binder,
                dom,
                mult,
                cod,
            } => {
                let m = match mult {
                    MultExpr::One => String::new(),
                    MultExpr::Bang => "!".into(),
                    MultExpr::Num(m) => format!("^{}", show(m)),
                };
                let n = match binder {
                    Some(Pat::Var(n)) => format!("{n} : "),
                    Some(p) => format!("{p:?} : "),
                    None => String::new(),
                };
                format!("⟨{n}{}⟩{m} ⊸ {}", show(dom), show(cod))
            }
            Pi { name, dom, cod } => format!(
                "({}:{}) → {}",
                name.clone().unwrap_or_default(),
                show(dom),
                show(cod)
            ),
            Sigma { dom, cod, .. } => format!("({} × {})", show(dom), show(cod)),
            Lam { pat, bang, body } => {
                format!("λ{pat:?}{}{}", if *bang { "!" } else { "" }, show(body))
            }
            BoolNat(b) => format!("|{}|", show(b)),
            other => format!("{other:?}"),
        }
    }

    fn s(src: &str) -> String {
        show(&parse_expr(src).unwrap())
    }

    #[test]
    fn supplies_and_postfix() {
        assert_eq!(s("ι x ^ 2 ⊗ ◇"), "(((ι x) ^ 2) ⊗ ◇)");
        assert_eq!(s("(x , y)ι"), "(x , y)ι");
        assert_eq!(s("pair @ yι @ xι"), "((pair @ yι) @ xι)");
        assert_eq!(s("f⊖ @ (pair @ xι @ yι)"), "(f⊖ @ ((pair @ xι) @ yι))");
    }

    #[test]
    fn multiplicity_application() {
        assert_eq!(
            s("map @ xs ι < length A xs @ f ⊖"),
            "((map @ xsι) < ((length A) xs) @ f⊖)"
        );
        assert_eq!(
            s("copy A < 2 @ (copy A < 2 @ xι)"),
            "((copy A) < 2 @ ((copy A) < 2 @ xι))"
        );
    }

    #[test]
    fn linear_arrows_and_judgments() {
        assert_eq!(s("◇ ⊩ ⟨x : A⟩^2 ⊸ A × A"), "(◇ ⊩ ⟨x : A⟩^2 ⊸ (A × A))");
        assert_eq!(s("(x : A) → ι x ⊩ A"), "(x:A) → ((ι x) ⊩ A)");
        assert_eq!(s("◇ ⊩ !⟨A⟩ ⊸ A"), "(◇ ⊩ ⟨A⟩! ⊸ A)");
        assert!(s("⟨(x , y) : (x : A) × B x⟩ ⊸ C x y").starts_with("⟨Pair("));
        assert_eq!(s("⟨(A × B)⟩ ⊸ C"), "⟨(A × B)⟩ ⊸ C");
        assert_eq!(
            s("<b : Bool>^0 -o <A>^|b| -o A"),
            "⟨b : Bool⟩^0 ⊸ ⟨A⟩^|b| ⊸ A"
        );
    }

    #[test]
    fn by_and_productions() {
        assert_eq!(
            s("e by unitl _ ⊗f distr m n _ _ ∘ assoc _ _ _"),
            "(e by (((unitl _) ⊗f ((((distr m) n) _) _)) ∘ (((assoc _) _) _)))"
        );
    }

    #[test]
    fn lambdas_and_cases() {
        let e = parse_expr("λ (x , y) ↦ case x of { inl a ↦ a ; inr _ → y }").unwrap();
        let ExprKind::Lam { pat, body, .. } = e.kind else {
            panic!()
        };
        assert_eq!(
            pat,
            Pat::Pair(
                Box::new(Pat::Var("x".into())),
                Box::new(Pat::Var("y".into()))
            )
        );
        let ExprKind::Case(_, clauses) = body.kind else {
            panic!()
        };
        assert_eq!(clauses.len(), 2);
        assert_eq!(clauses[1].0, Pat::Inr(Box::new(Pat::Wild)));
        assert!(matches!(kind("λ x !↦ x"), ExprKind::Lam { bang: true, .. }));
    }

    #[test]
    fn files_and_errors() {
        let items = parse_file(
            "#import prelude\npostulate A B : Type\npattern cons x xs = init (inr (x , xs))\ndef i : A → A = λ x ↦ x",
        )
        .unwrap();
        assert_eq!(items.len(), 4);
        assert!(matches!(&items[2], Item::Pattern { params, .. } if params.len() == 2));
        let err = parse_file("def x : = y").unwrap_err();
        assert_eq!(err.rule, "parse.expected");
        assert_eq!(err.span.start.col, 9);
    }
}
