//! Lexer and recursive-descent parser for the rule language.
//!
//! Grammar (one rule per line; `.` also terminates a rule, so several rules
//! may share a line):
//!
//! ```text
//! program  := { rule }
//! rule     := [ weight ":" ] clause ( "." | NEWLINE | EOF )
//! weight   := NUMBER | "alpha"
//! clause   := "<-" body                  (constraint: Implies(body, bot))
//!           | formula [ "<-" [ body ] ]  (H <- B; empty body keeps just H)
//! body     := formula { "," formula }    (comma = conjunction, weakest)
//! formula  := or [ "->" formula ]        (right-associative)
//! or       := and { "|" and }
//! and      := unary { "&" unary }
//! unary    := ( "~" | "not" ) unary | primary
//! primary  := ATOM | "top" | "bot" | "(" formula ")"
//! ```
//!
//! `%` starts a comment running to the end of the line. An omitted weight
//! means `alpha`. Atoms match `[a-z][A-Za-z0-9_]*` and are never reserved
//! words; numbers are optionally signed decimals with an optional fraction
//! and exponent.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{is_valid_atom, Formula, Program, Weight, WeightedRule};

/// A positioned syntax error. Lines and columns are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: u32,
    pub col: u32,
    pub message: String,
}

impl ParseError {
    fn new(line: u32, col: u32, message: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }
}

impl core::fmt::Display for ParseError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "parse error at line {}, column {}: {}",
            self.line, self.col, self.message
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Number(f64),
    Alpha,
    NotKw,
    TopKw,
    BotKw,
    Colon,
    Dot,
    Comma,
    Amp,
    Pipe,
    Tilde,
    Arrow,
    LeftArrow,
    LParen,
    RParen,
    Newline,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(n) => format!("number `{n}`"),
            Tok::Alpha => "`alpha`".to_string(),
            Tok::NotKw => "`not`".to_string(),
            Tok::TopKw => "`top`".to_string(),
            Tok::BotKw => "`bot`".to_string(),
            Tok::Colon => "`:`".to_string(),
            Tok::Dot => "`.`".to_string(),
            Tok::Comma => "`,`".to_string(),
            Tok::Amp => "`&`".to_string(),
            Tok::Pipe => "`|`".to_string(),
            Tok::Tilde => "`~`".to_string(),
            Tok::Arrow => "`->`".to_string(),
            Tok::LeftArrow => "`<-`".to_string(),
            Tok::LParen => "`(`".to_string(),
            Tok::RParen => "`)`".to_string(),
            Tok::Newline => "end of line".to_string(),
            Tok::Eof => "end of input".to_string(),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: u32,
    col: u32,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: u32,
    col: u32,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn error(&self, line: u32, col: u32, msg: impl Into<String>) -> ParseError {
        ParseError::new(line, col, msg)
    }

    fn tokens(mut self) -> Result<Vec<Token>, ParseError> {
        let mut out = Vec::new();
        loop {
            // Skip horizontal whitespace and comments.
            while let Some(c) = self.peek() {
                match c {
                    b' ' | b'\t' | b'\r' => {
                        self.bump();
                    }
                    b'%' => {
                        while self.peek().is_some_and(|c| c != b'\n') {
                            self.bump();
                        }
                    }
                    _ => break,
                }
            }
            let (line, col) = (self.line, self.col);
            let Some(c) = self.peek() else {
                out.push(Token {
                    tok: Tok::Eof,
                    line,
                    col,
                });
                return Ok(out);
            };
            let tok = match c {
                b'\n' => {
                    self.bump();
                    Tok::Newline
                }
                b':' => {
                    self.bump();
                    Tok::Colon
                }
                b'.' => {
                    self.bump();
                    Tok::Dot
                }
                b',' => {
                    self.bump();
                    Tok::Comma
                }
                b'&' => {
                    self.bump();
                    Tok::Amp
                }
                b'|' => {
                    self.bump();
                    Tok::Pipe
                }
                b'~' => {
                    self.bump();
                    Tok::Tilde
                }
                b'(' => {
                    self.bump();
                    Tok::LParen
                }
                b')' => {
                    self.bump();
                    Tok::RParen
                }
                b'<' => {
                    self.bump();
                    if self.peek() == Some(b'-') {
                        self.bump();
                        Tok::LeftArrow
                    } else {
                        return Err(self.error(line, col, "expected `<-`"));
                    }
                }
                b'-' => {
                    self.bump();
                    match self.peek() {
                        Some(b'>') => {
                            self.bump();
                            Tok::Arrow
                        }
                        Some(d) if d.is_ascii_digit() => self.number(line, col, true)?,
                        _ => {
                            return Err(self.error(line, col, "expected `->` or a digit after `-`"))
                        }
                    }
                }
                b'+' => {
                    self.bump();
                    match self.peek() {
                        Some(d) if d.is_ascii_digit() => self.number(line, col, false)?,
                        _ => return Err(self.error(line, col, "expected a digit after `+`")),
                    }
                }
                d if d.is_ascii_digit() => self.number(line, col, false)?,
                a if a.is_ascii_alphabetic() || a == b'_' => {
                    let mut name = String::new();
                    while let Some(c) = self.peek() {
                        if c.is_ascii_alphanumeric() || c == b'_' {
                            name.push(c as char);
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    match name.as_str() {
                        "not" => Tok::NotKw,
                        "top" => Tok::TopKw,
                        "bot" => Tok::BotKw,
                        "alpha" => Tok::Alpha,
                        _ if is_valid_atom(&name) => Tok::Ident(name),
                        _ => {
                            return Err(self.error(
                                line,
                                col,
                                format!("invalid atom `{name}`: atoms match [a-z][A-Za-z0-9_]*"),
                            ))
                        }
                    }
                }
                other => {
                    return Err(self.error(
                        line,
                        col,
                        format!("unexpected character `{}`", other as char),
                    ))
                }
            };
            out.push(Token { tok, line, col });
        }
    }

    /// Scan a decimal literal. The leading sign, if any, has been consumed.
    fn number(&mut self, line: u32, col: u32, negative: bool) -> Result<Tok, ParseError> {
        let mut text = String::new();
        if negative {
            text.push('-');
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            text.push(self.bump().unwrap() as char);
        }
        if self.peek() == Some(b'.') && self.src.get(self.pos + 1).is_some_and(u8::is_ascii_digit) {
            text.push(self.bump().unwrap() as char);
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                text.push(self.bump().unwrap() as char);
            }
        }
        if matches!(self.peek(), Some(b'e') | Some(b'E')) {
            // Only commit to an exponent when one actually follows; `1e`
            // would otherwise swallow the start of an atom.
            let mut ahead = self.pos + 1;
            if matches!(self.src.get(ahead), Some(b'+') | Some(b'-')) {
                ahead += 1;
            }
            if self.src.get(ahead).is_some_and(u8::is_ascii_digit) {
                text.push(self.bump().unwrap() as char);
                if matches!(self.peek(), Some(b'+') | Some(b'-')) {
                    text.push(self.bump().unwrap() as char);
                }
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    text.push(self.bump().unwrap() as char);
                }
            } else {
                return Err(self.error(self.line, self.col, "malformed exponent in weight"));
            }
        }
        let value: f64 = text
            .parse()
            .map_err(|_| self.error(line, col, format!("malformed number `{text}`")))?;
        if !value.is_finite() {
            return Err(self.error(line, col, format!("weight `{text}` out of range")));
        }
        Ok(Tok::Number(value))
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn cur(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek_tok(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn advance(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.cur().line, self.cur().col, msg)
    }

    fn at_terminator(&self) -> bool {
        matches!(self.peek_tok(), Tok::Dot | Tok::Newline | Tok::Eof)
    }

    fn parse_program(&mut self) -> Result<Program, ParseError> {
        let mut rules = Vec::new();
        loop {
            while matches!(self.peek_tok(), Tok::Dot | Tok::Newline) {
                self.advance();
            }
            if *self.peek_tok() == Tok::Eof {
                return Ok(Program::new(rules));
            }
            rules.push(self.parse_rule()?);
            if self.at_terminator() {
                if *self.peek_tok() != Tok::Eof {
                    self.advance();
                }
            } else {
                return Err(self.error_here(format!(
                    "expected `.` or end of line after rule, found {}",
                    self.peek_tok().describe()
                )));
            }
        }
    }

    fn parse_rule(&mut self) -> Result<WeightedRule, ParseError> {
        let line = self.cur().line;
        let weight = match self.peek_tok() {
            Tok::Number(_) | Tok::Alpha => {
                let w = match self.advance().tok {
                    Tok::Number(n) => Weight::Soft(n),
                    _ => Weight::Hard,
                };
                if *self.peek_tok() != Tok::Colon {
                    return Err(self.error_here("expected `:` after rule weight"));
                }
                self.advance();
                w
            }
            _ => Weight::Hard,
        };
        let formula = self.parse_clause()?;
        Ok(WeightedRule {
            weight,
            formula,
            line,
        })
    }

    fn parse_clause(&mut self) -> Result<Formula, ParseError> {
        if *self.peek_tok() == Tok::LeftArrow {
            self.advance();
            let body = self.parse_body()?;
            return Ok(Formula::implies(body, Formula::Bot));
        }
        let head = self.parse_formula()?;
        if *self.peek_tok() == Tok::LeftArrow {
            self.advance();
            if self.at_terminator() {
                return Ok(head); // `H <- .` is just H
            }
            let body = self.parse_body()?;
            return Ok(Formula::implies(body, head));
        }
        Ok(head)
    }

    fn parse_body(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.parse_formula()?;
        while *self.peek_tok() == Tok::Comma {
            self.advance();
            f = Formula::and(f, self.parse_formula()?);
        }
        Ok(f)
    }

    fn parse_formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.parse_or()?;
        if *self.peek_tok() == Tok::Arrow {
            self.advance();
            let rhs = self.parse_formula()?; // right-associative
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn parse_or(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.parse_and()?;
        while *self.peek_tok() == Tok::Pipe {
            self.advance();
            f = Formula::or(f, self.parse_and()?);
        }
        Ok(f)
    }

    fn parse_and(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.parse_unary()?;
        while *self.peek_tok() == Tok::Amp {
            self.advance();
            f = Formula::and(f, self.parse_unary()?);
        }
        Ok(f)
    }

    fn parse_unary(&mut self) -> Result<Formula, ParseError> {
        if matches!(self.peek_tok(), Tok::Tilde | Tok::NotKw) {
            self.advance();
            return Ok(Formula::not(self.parse_unary()?));
        }
        self.parse_primary()
    }

    fn parse_primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek_tok() {
            Tok::Ident(_) => {
                let Tok::Ident(name) = self.advance().tok else {
                    unreachable!()
                };
                Ok(Formula::Atom(name))
            }
            Tok::TopKw => {
                self.advance();
                Ok(Formula::Top)
            }
            Tok::BotKw => {
                self.advance();
                Ok(Formula::Bot)
            }
            Tok::LParen => {
                self.advance();
                let f = self.parse_formula()?;
                if *self.peek_tok() != Tok::RParen {
                    return Err(self.error_here(format!(
                        "expected `)`, found {}",
                        self.peek_tok().describe()
                    )));
                }
                self.advance();
                Ok(f)
            }
            Tok::Alpha => Err(self.error_here("`alpha` is a weight, not an atom")),
            Tok::Newline | Tok::Eof => Err(self.error_here(format!(
                "incomplete rule: unexpected {}",
                self.peek_tok().describe()
            ))),
            other => {
                Err(self.error_here(format!("expected a formula, found {}", other.describe())))
            }
        }
    }
}

/// Parse a whole program. Iteration order of the result is source order and
/// duplicate rules are kept.
pub fn parse_program(src: &str) -> Result<Program, ParseError> {
    let tokens = Lexer::new(src).tokens()?;
    Parser { tokens, pos: 0 }.parse_program()
}

/// Parse a single bare formula (no weight, `<-` sugar not allowed).
/// A trailing `.` is tolerated.
pub fn parse_formula(src: &str) -> Result<Formula, ParseError> {
    let tokens = Lexer::new(src).tokens()?;
    let mut p = Parser { tokens, pos: 0 };
    while *p.peek_tok() == Tok::Newline {
        p.advance();
    }
    let f = p.parse_formula()?;
    while matches!(p.peek_tok(), Tok::Dot | Tok::Newline) {
        p.advance();
    }
    if *p.peek_tok() != Tok::Eof {
        return Err(p.error_here(format!(
            "trailing input after formula: {}",
            p.peek_tok().describe()
        )));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn atom(s: &str) -> Formula {
        Formula::atom(s)
    }

    #[test]
    fn parses_the_three_rule_example() {
        let p = parse_program("0: not a\n2: b <- a.\n3: a <- not not a.").unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(
            p.rules()[0],
            WeightedRule::soft(0.0, Formula::not(atom("a")))
        );
        assert_eq!(
            p.rules()[1],
            WeightedRule::soft(2.0, Formula::implies(atom("a"), atom("b")))
        );
        assert_eq!(
            p.rules()[2],
            WeightedRule::soft(
                3.0,
                Formula::implies(Formula::not(Formula::not(atom("a"))), atom("a"))
            )
        );
        assert_eq!(p.rules()[0].line, 1);
        assert_eq!(p.rules()[2].line, 3);
        assert_eq!(p.signature().len(), 2);
    }

    #[test]
    fn rule_sugar_equals_plain_implication() {
        let sugar = parse_program("2: b <- a.").unwrap();
        let plain = parse_program("2: a -> b.").unwrap();
        assert_eq!(sugar, plain);
    }

    #[test]
    fn body_commas_conjoin_left() {
        let p = parse_program("1: h <- a, b, c.").unwrap();
        assert_eq!(
            p.rules()[0].formula,
            Formula::implies(
                Formula::and(Formula::and(atom("a"), atom("b")), atom("c")),
                atom("h")
            )
        );
    }

    #[test]
    fn constraint_and_empty_body() {
        let p = parse_program("alpha: <- a, b.").unwrap();
        assert_eq!(
            p.rules()[0].formula,
            Formula::implies(Formula::and(atom("a"), atom("b")), Formula::Bot)
        );
        assert_eq!(p.rules()[0].weight, Weight::Hard);
        let q = parse_program("1: h <- .").unwrap();
        assert_eq!(q.rules()[0].formula, atom("h"));
    }

    #[test]
    fn omitted_weight_is_hard() {
        let p = parse_program("a -> b.").unwrap();
        assert_eq!(p.rules()[0].weight, Weight::Hard);
    }

    #[test]
    fn precedence_and_associativity() {
        let f = parse_formula("~a & b | c -> d -> e").unwrap();
        assert_eq!(
            f,
            Formula::implies(
                Formula::or(Formula::and(Formula::not(atom("a")), atom("b")), atom("c")),
                Formula::implies(atom("d"), atom("e"))
            )
        );
        let g = parse_formula("a | (b | c)").unwrap();
        assert_eq!(g, Formula::or(atom("a"), Formula::or(atom("b"), atom("c"))));
        let h = parse_formula("not (a & b)").unwrap();
        assert_eq!(h, Formula::not(Formula::and(atom("a"), atom("b"))));
    }

    #[test]
    fn tilde_and_not_agree() {
        assert_eq!(
            parse_formula("~~a").unwrap(),
            parse_formula("not not a").unwrap()
        );
    }

    #[test]
    fn duplicates_are_kept() {
        let p = parse_program("1: a. 1: a.").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.rules()[0], p.rules()[1]);
    }

    #[test]
    fn comments_and_blank_lines() {
        let p = parse_program("% header\n\n1: a. % trailing\n%only comment\n2: b.\n").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.rules()[1].line, 5);
    }

    #[test]
    fn weights_parse_signed_fraction_exponent() {
        let p = parse_program("-1: a.\n+0.5: b.\n2.5e-1: c.\nalpha: d.").unwrap();
        assert_eq!(p.rules()[0].weight, Weight::Soft(-1.0));
        assert_eq!(p.rules()[1].weight, Weight::Soft(0.5));
        assert_eq!(p.rules()[2].weight, Weight::Soft(0.25));
        assert_eq!(p.rules()[3].weight, Weight::Hard);
    }

    #[test]
    fn empty_and_whitespace_programs() {
        assert!(parse_program("").unwrap().is_empty());
        assert!(parse_program("\n\n% nothing\n").unwrap().is_empty());
        assert!(parse_program("..").unwrap().is_empty());
    }

    #[test]
    fn error_positions() {
        let e = parse_program("1: a |\n").unwrap_err();
        assert_eq!((e.line, e.col), (1, 7));
        let e = parse_program("1: Abc.").unwrap_err();
        assert_eq!((e.line, e.col), (1, 4));
        assert!(e.message.contains("invalid atom"));
        let e = parse_program("2 b.").unwrap_err();
        assert!(e.message.contains("expected `:`"));
        let e = parse_program("1: alpha.").unwrap_err();
        assert!(e.message.contains("weight, not an atom"));
        let e = parse_program("1: (a | b.").unwrap_err();
        assert!(e.message.contains("expected `)`"));
        let e = parse_program("1: a b.").unwrap_err();
        assert_eq!((e.line, e.col), (1, 6));
        let e = parse_program("1: not.").unwrap_err();
        assert!(e.message.contains("expected a formula"));
    }

    #[test]
    fn reserved_words_are_never_atoms() {
        // The lexer classifies these as keywords, so they can only play
        // their grammatical role: `top`/`bot` are constants, `not` demands
        // an operand, `alpha` is a weight.
        assert_eq!(parse_formula("top").unwrap(), Formula::Top);
        assert_eq!(parse_formula("bot").unwrap(), Formula::Bot);
        assert!(parse_formula("not").is_err());
        assert!(parse_formula("alpha").is_err());
    }

    #[test]
    fn rules_do_not_span_lines() {
        let e = parse_program("1: a &\nb.").unwrap_err();
        assert_eq!(e.line, 1);
    }

    #[test]
    fn formula_entry_point() {
        assert_eq!(
            parse_formula("a -> b.").unwrap(),
            Formula::implies(atom("a"), atom("b"))
        );
        assert!(parse_formula("a <- b").is_err()); // sugar is rule-level only
        assert!(parse_formula("a. b").is_err());
    }

    #[test]
    fn multiple_rules_on_one_line() {
        let p = parse_program("0: not a. 2: b <- a.").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.rules()[1].line, 1);
    }

    #[test]
    fn number_like_atom_boundary() {
        // `1e` is not an exponent here; it must error as a malformed weight
        // rather than swallow the atom that follows.
        assert!(parse_program("1e: a.").is_err());
        let p = parse_program("1: e2.").unwrap(); // e2 is a perfectly fine atom
        assert_eq!(p.rules()[0].formula, atom("e2"));
    }

    #[test]
    fn vec_program_roundtrip_source_order() {
        let p = parse_program("1: b.\n2: a.").unwrap();
        let names: vec::Vec<_> = p.formulas().cloned().collect();
        assert_eq!(names, vec![atom("b"), atom("a")]);
    }
}
