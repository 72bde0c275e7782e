//! Tokenizer for `.ld` sources. Every Unicode operator has an ASCII spelling.

use crate::diag::{Diagnostic, Pos, Result, Span};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(u64),
    /// `#key value`, with the value running to the end of the line.
    Pragma(String, String),
    // keywords
    Def,
    Postulate,
    Pattern,
    Case,
    Of,
    If,
    Then,
    Else,
    By,
    Res,
    Type,
    SupplyTy,
    Unit,
    Tt,
    Inl,
    Inr,
    Init,
    Fst,
    Snd,
    Bind,
    // punctuation
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Colon,
    Semi,
    Equals,
    Underscore,
    Dot,
    Bar,
    // operators
    Lambda,
    MapsTo,
    BangMapsTo,
    Arrow,
    Lollipop,
    LAngle,
    /// `<`: an opening angle in prefix position, `f < m @ a` otherwise.
    Lt,
    RAngle,
    At,
    BangAt,
    Bang,
    Caret,
    Iota,
    Ominus,
    Tensor,
    TensorF,
    Diamond,
    Times,
    Plus,
    Star,
    Circ,
    Triangle,
    Turnstile,
    Not,
    Mu,
    CapLambda,
    Eof,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

impl Tok {
    /// Human-readable form for parse errors.
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Num(n) => format!("`{n}`"),
            Tok::Pragma(k, _) => format!("`#{k}`"),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", symbol(other)),
        }
    }
}

fn symbol(t: &Tok) -> &'static str {
    use Tok::*;
    match t {
        Def => "def",
        Postulate => "postulate",
        Pattern => "pattern",
        Case => "case",
        Of => "of",
        If => "if",
        Then => "then",
        Else => "else",
        By => "by",
        Res => "res",
        Type => "Type",
        SupplyTy => "Supply",
        Unit => "⊤",
        Tt => "tt",
        Inl => "inl",
        Inr => "inr",
        Init => "init",
        Fst => "fst",
        Snd => "snd",
        Bind => "bind",
        LParen => "(",
        RParen => ")",
        LBracket => "[",
        RBracket => "]",
        LBrace => "{",
        RBrace => "}",
        Comma => ",",
        Colon => ":",
        Semi => ";",
        Equals => "=",
        Underscore => "_",
        Dot => ".",
        Bar => "|",
        Lambda => "λ",
        MapsTo => "↦",
        BangMapsTo => "!↦",
        Arrow => "→",
        Lollipop => "⊸",
        LAngle => "⟨",
        Lt => "<",
        RAngle => "⟩",
        At => "@",
        BangAt => "!@",
        Bang => "!",
        Caret => "^",
        Iota => "ι",
        Ominus => "⊖",
        Tensor => "⊗",
        TensorF => "⊗f",
        Diamond => "◇",
        Times => "×",
        Plus => "+",
        Star => "*",
        Circ => "∘",
        Triangle => "▷",
        Turnstile => "⊩",
        Not => "¬",
        Mu => "μ",
        CapLambda => "Λ",
        Ident(_) | Num(_) | Pragma(..) | Eof => "",
    }
}

fn keyword(word: &str) -> Option<Tok> {
    use Tok::*;
    Some(match word {
        "def" => Def,
        "postulate" => Postulate,
        "pattern" => Pattern,
        "case" => Case,
        "of" => Of,
        "if" => If,
        "then" => Then,
        "else" => Else,
        "by" => By,
        "res" => Res,
        "Type" => Type,
        "Supply" => SupplyTy,
        "Unit" | "Top" => Unit,
        "tt" => Tt,
        "inl" => Inl,
        "inr" => Inr,
        "init" => Init,
        "fst" => Fst,
        "snd" => Snd,
        "bind" => Bind,
        "iota" => Iota,
        "fn" => Ominus,
        "mu" => Mu,
        "bangf" => Ident("!f".into()),
        "coh-empty" => Ident("coh◇".into()),
        "coh-tensor" => Ident("coh⊗".into()),
        _ => return None,
    })
}

/// Greek letters with a fixed meaning never occur inside identifiers.
fn reserved_letter(c: char) -> bool {
    matches!(c, 'λ' | 'ι' | 'μ' | 'Λ')
}

fn ident_start(c: char) -> bool {
    (c.is_alphabetic() || c == '_') && !reserved_letter(c)
}

fn ident_continue(c: char) -> bool {
    (c.is_alphanumeric() || c == '_' || c == '\'') && !reserved_letter(c)
}

/// Multi-character operators, longest first within each shared prefix.
const OPERATORS: &[(&str, Tok)] = &[
    ("!|->", Tok::BangMapsTo),
    ("!=>", Tok::BangMapsTo),
    ("!↦", Tok::BangMapsTo),
    ("!@", Tok::BangAt),
    ("|->", Tok::MapsTo),
    ("||-", Tok::Turnstile),
    ("|>", Tok::Triangle),
    ("=>", Tok::MapsTo),
    ("->", Tok::Arrow),
    ("-o", Tok::Lollipop),
    ("<<", Tok::Circ),
    ("<>", Tok::Diamond),
    ("&f", Tok::TensorF),
    ("⊗f", Tok::TensorF),
    ("**", Tok::Times),
    ("/\\", Tok::CapLambda),
];

pub fn lex(src: &str) -> Result<Vec<Token>> {
    Lexer::new(src).run()
}

struct Lexer<'a> {
    chars: Vec<char>,
    src: &'a str,
    i: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            chars: src.chars().collect(),
            src,
            i: 0,
            line: 1,
            col: 1,
        }
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            col: self.col,
        }
    }

    fn peek(&self, k: usize) -> Option<char> {
        self.chars.get(self.i + k).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.i).copied()?;
        self.i += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn starts_with(&self, s: &str) -> bool {
        s.chars().enumerate().all(|(k, c)| self.peek(k) == Some(c))
    }

    fn run(mut self) -> Result<Vec<Token>> {
        let _ = self.src;
        let mut out = Vec::new();
        loop {
            self.skip_trivia();
            let start = self.pos();
            let Some(c) = self.peek(0) else {
                out.push(Token {
                    tok: Tok::Eof,
                    span: Span::new(start, start),
                });
                return Ok(out);
            };
            let tok = self.token(c, start)?;
            out.push(Token {
                tok,
                span: Span::new(start, self.pos()),
            });
        }
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek(0) {
            if c.is_whitespace() {
                self.bump();
            } else if self.starts_with("--") {
                while let Some(c) = self.peek(0) {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn token(&mut self, c: char, start: Pos) -> Result<Tok> {
        if c == '#' {
            return self.pragma(start);
        }
        if c.is_ascii_digit() {
            return self.number(start);
        }
        // `!f` is the functorial action of `!`
        if c == '!' && self.peek(1) == Some('f') && !self.peek(2).is_some_and(ident_continue) {
            self.bump();
            self.bump();
            return Ok(Tok::Ident("!f".into()));
        }
        for (text, tok) in OPERATORS {
            if self.starts_with(text) {
                // `-o` only when not the start of a longer word
                if *text == "-o" && self.peek(2).is_some_and(ident_continue) {
                    continue;
                }
                for _ in text.chars() {
                    self.bump();
                }
                return Ok(tok.clone());
            }
        }
        if c == '_' && !self.peek(1).is_some_and(ident_continue) {
            self.bump();
            return Ok(Tok::Underscore);
        }
        if ident_start(c) {
            return Ok(self.word());
        }
        let single = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            ',' => Tok::Comma,
            ':' => Tok::Colon,
            ';' => Tok::Semi,
            '=' => Tok::Equals,
            '.' => Tok::Dot,
            '|' => Tok::Bar,
            'λ' | '\\' => Tok::Lambda,
            '↦' => Tok::MapsTo,
            '→' => Tok::Arrow,
            '⊸' => Tok::Lollipop,
            '⟨' => Tok::LAngle,
            '<' => Tok::Lt,
            '⟩' | '>' => Tok::RAngle,
            '@' => Tok::At,
            '!' => Tok::Bang,
            '^' => Tok::Caret,
            'ι' => Tok::Iota,
            '⊖' => Tok::Ominus,
            '⊗' | '&' => Tok::Tensor,
            '◇' => Tok::Diamond,
            '×' => Tok::Times,
            '+' => Tok::Plus,
            '*' => Tok::Star,
            '∘' => Tok::Circ,
            '▷' => Tok::Triangle,
            '⊩' => Tok::Turnstile,
            '¬' | '~' => Tok::Not,
            'μ' => Tok::Mu,
            'Λ' => Tok::CapLambda,
            '⊤' => Tok::Unit,
            _ => {
                return Err(Diagnostic::error(
                    "parse.unexpected-character",
                    format!("unexpected character `{c}`"),
                )
                .with_span(Span::new(start, start)))
            }
        };
        self.bump();
        Ok(single)
    }

    fn word(&mut self) -> Tok {
        let mut s = String::new();
        while let Some(c) = self.peek(0) {
            let hyphen = c == '-'
                && self.peek(1).is_some_and(|d| {
                    (d.is_alphabetic() && !reserved_letter(d))
                        || (d.is_ascii_digit() && (s.ends_with('\'') || s.contains('-')))
                })
                && !(self.peek(1) == Some('o') && !self.peek(2).is_some_and(ident_continue));
            if !ident_continue(c) && !hyphen {
                break;
            }
            s.push(c);
            self.bump();
        }
        if s == "coh" {
            if let Some(c @ ('◇' | '⊗')) = self.peek(0) {
                self.bump();
                s.push(c);
                return Tok::Ident(s);
            }
        }
        keyword(&s).unwrap_or(Tok::Ident(s))
    }

    fn number(&mut self, start: Pos) -> Result<Tok> {
        let mut s = String::new();
        while let Some(c) = self.peek(0).filter(char::is_ascii_digit) {
            s.push(c);
            self.bump();
        }
        s.parse().map(Tok::Num).map_err(|_| {
            Diagnostic::error("parse.number", format!("numeral `{s}` is too large"))
                .with_span(Span::new(start, self.pos()))
        })
    }

    fn pragma(&mut self, start: Pos) -> Result<Tok> {
        self.bump();
        let mut key = String::new();
        while let Some(c) = self.peek(0).filter(|c| c.is_alphanumeric() || *c == '-') {
            key.push(c);
            self.bump();
        }
        if key.is_empty() {
            return Err(
                Diagnostic::error("parse.pragma", "expected a pragma name after `#`")
                    .with_span(Span::new(start, self.pos())),
            );
        }
        let mut value = String::new();
        while let Some(c) = self.peek(0).filter(|c| *c != '\n') {
            value.push(c);
            self.bump();
        }
        Ok(Tok::Pragma(key, value.trim().to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        lex(s)
            .unwrap()
            .into_iter()
            .map(|t| t.tok)
            .filter(|t| *t != Tok::Eof)
            .collect()
    }

    #[test]
    fn postfix_iota_splits_from_identifier() {
        assert_eq!(toks("xι"), vec![Tok::Ident("x".into()), Tok::Iota]);
        assert_eq!(toks("x iota"), toks("xι"));
    }

    #[test]
    fn ascii_aliases_agree_with_unicode() {
        assert_eq!(
            toks("<x : A> ^ 2 -o B"),
            vec![
                Tok::Lt,
                Tok::Ident("x".into()),
                Tok::Colon,
                Tok::Ident("A".into()),
                Tok::RAngle,
                Tok::Caret,
                Tok::Num(2),
                Tok::Lollipop,
                Tok::Ident("B".into()),
            ]
        );
        assert_eq!(toks("\\x |-> a & b <> ||- c"), toks("λx ↦ a ⊗ b ◇ ⊩ c"));
        assert_eq!(toks("p << q &f r"), toks("p ∘ q ⊗f r"));
    }

    #[test]
    fn hyphenated_names_and_comments() {
        assert_eq!(
            toks("foldMaybe-ish -- a comment\n A -o B"),
            vec![
                Tok::Ident("foldMaybe-ish".into()),
                Tok::Ident("A".into()),
                Tok::Lollipop,
                Tok::Ident("B".into())
            ]
        );
    }

    #[test]
    fn bang_forms() {
        assert_eq!(
            toks("!f d"),
            vec![Tok::Ident("!f".into()), Tok::Ident("d".into())]
        );
        assert_eq!(toks("! fx"), vec![Tok::Bang, Tok::Ident("fx".into())]);
        assert_eq!(
            toks("f !@ x"),
            vec![Tok::Ident("f".into()), Tok::BangAt, Tok::Ident("x".into())]
        );
        assert_eq!(
            toks("coh◇ coh-tensor"),
            vec![Tok::Ident("coh◇".into()), Tok::Ident("coh⊗".into())]
        );
    }

    #[test]
    fn pragmas_and_spans() {
        let ts = lex("#import prelude\ndef").unwrap();
        assert_eq!(ts[0].tok, Tok::Pragma("import".into(), "prelude".into()));
        assert_eq!(ts[1].tok, Tok::Def);
        assert_eq!(ts[1].span.start, Pos { line: 2, col: 1 });
    }

    #[test]
    fn bad_character() {
        let err = lex("a $ b").unwrap_err();
        assert_eq!(err.rule, "parse.unexpected-character");
        assert_eq!(err.span.start.col, 3);
    }
}
