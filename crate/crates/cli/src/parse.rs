//! The text format for semilinear sets.
//!
//! A document declares an ambient dimension, then named sets and
//! optionally the pieces of an integrand:
//!
//! ```text
//! doc     := { decl }
//! decl    := "dim" INT ";"
//!          | NAME "=" formula ";"
//!          | "piece" ["-"] INT ":" formula ";"
//! formula := conj { "|" conj }
//! conj    := unary { "&" unary }
//! unary   := "!" unary | "(" formula ")" | atom
//! atom    := linexpr REL linexpr         REL in =, !=, <, <=, >, >=
//! linexpr := ["+"|"-"] term { ("+"|"-") term }
//! term    := NUMBER "*" VAR | NUMBER | VAR
//! ```
//!
//! Variables are `x1` through `xd`, numbers are unsigned rationals
//! `p` or `p/q`, and `!` binds tighter than `&`, which binds tighter
//! than `|`. The `dim` declaration must come first. `piece`
//! declarations attach an integer value to a region and together
//! describe an integrand; any part of space they leave uncovered
//! carries the value 0.

use std::fmt;

use polychi_core::polyset::{Formula, LinearForm, PolyhedralSet, Relation};
use polychi_core::{rat_int, Int, Rat};

/// A parsed document: the ambient dimension, the named sets in
/// declaration order, and the integrand pieces, if any.
#[derive(Debug)]
pub struct SetDocument {
    pub dim: usize,
    names: Vec<(String, PolyhedralSet)>,
    pieces: Vec<(Int, PolyhedralSet)>,
}

impl SetDocument {
    pub fn get(&self, name: &str) -> Option<&PolyhedralSet> {
        self.names.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(|(n, _)| n.as_str())
    }

    pub fn pieces(&self) -> &[(Int, PolyhedralSet)] {
        &self.pieces
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum TokenKind {
    Ident(String),
    Number(Rat),
    Semi,
    Colon,
    Plus,
    Minus,
    Star,
    Bang,
    Amp,
    Pipe,
    LParen,
    RParen,
    Eq,
    NotEq,
    Lt,
    Le,
    Gt,
    Ge,
    End,
}

impl TokenKind {
    fn describe(&self) -> String {
        match self {
            TokenKind::Ident(n) => format!("'{n}'"),
            TokenKind::Number(_) => "a number".to_string(),
            TokenKind::Semi => "';'".to_string(),
            TokenKind::Colon => "':'".to_string(),
            TokenKind::Plus => "'+'".to_string(),
            TokenKind::Minus => "'-'".to_string(),
            TokenKind::Star => "'*'".to_string(),
            TokenKind::Bang => "'!'".to_string(),
            TokenKind::Amp => "'&'".to_string(),
            TokenKind::Pipe => "'|'".to_string(),
            TokenKind::LParen => "'('".to_string(),
            TokenKind::RParen => "')'".to_string(),
            TokenKind::Eq => "'='".to_string(),
            TokenKind::NotEq => "'!='".to_string(),
            TokenKind::Lt => "'<'".to_string(),
            TokenKind::Le => "'<='".to_string(),
            TokenKind::Gt => "'>'".to_string(),
            TokenKind::Ge => "'>='".to_string(),
            TokenKind::End => "end of input".to_string(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1usize, 1usize);
    macro_rules! error {
        ($l:expr, $c:expr, $($arg:tt)*) => {
            return Err(ParseError { line: $l, column: $c, message: format!($($arg)*) })
        };
    }
    while let Some(&ch) = chars.peek() {
        let (tok_line, tok_column) = (line, column);
        let mut advance = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        if ch.is_whitespace() {
            advance(&mut chars);
            continue;
        }
        let kind = if ch.is_ascii_alphabetic() || ch == '_' {
            let mut name = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    name.push(advance(&mut chars));
                } else {
                    break;
                }
            }
            TokenKind::Ident(name)
        } else if ch.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_digit() {
                    digits.push(advance(&mut chars));
                } else {
                    break;
                }
            }
            let numerator: Int = digits.parse().unwrap();
            if chars.peek() == Some(&'/') {
                advance(&mut chars);
                let mut denom = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        denom.push(advance(&mut chars));
                    } else {
                        break;
                    }
                }
                if denom.is_empty() {
                    error!(line, column, "expected digits after '/' in a rational literal");
                }
                let denominator: Int = denom.parse().unwrap();
                if denominator == Int::from(0) {
                    error!(tok_line, tok_column, "rational literal with zero denominator");
                }
                TokenKind::Number(Rat::new(numerator, denominator))
            } else {
                TokenKind::Number(Rat::from(numerator))
            }
        } else {
            advance(&mut chars);
            match ch {
                ';' => TokenKind::Semi,
                ':' => TokenKind::Colon,
                '+' => TokenKind::Plus,
                '-' => TokenKind::Minus,
                '*' => TokenKind::Star,
                '&' => TokenKind::Amp,
                '|' => TokenKind::Pipe,
                '(' => TokenKind::LParen,
                ')' => TokenKind::RParen,
                '=' => TokenKind::Eq,
                '!' => {
                    if chars.peek() == Some(&'=') {
                        advance(&mut chars);
                        TokenKind::NotEq
                    } else {
                        TokenKind::Bang
                    }
                }
                '<' => {
                    if chars.peek() == Some(&'=') {
                        advance(&mut chars);
                        TokenKind::Le
                    } else {
                        TokenKind::Lt
                    }
                }
                '>' => {
                    if chars.peek() == Some(&'=') {
                        advance(&mut chars);
                        TokenKind::Ge
                    } else {
                        TokenKind::Gt
                    }
                }
                _ => error!(tok_line, tok_column, "unexpected character '{ch}'"),
            }
        };
        tokens.push(Token { kind, line: tok_line, column: tok_column });
    }
    tokens.push(Token { kind: TokenKind::End, line, column });
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, token: &Token, message: String) -> Result<T, ParseError> {
        Err(ParseError { line: token.line, column: token.column, message })
    }

    fn expect(&mut self, kind: TokenKind) -> Result<Token, ParseError> {
        let t = self.next();
        if t.kind == kind {
            Ok(t)
        } else {
            self.error(&t, format!("expected {}, found {}", kind.describe(), t.kind.describe()))
        }
    }

    // An unsigned integer literal.
    fn integer(&mut self, what: &str) -> Result<Int, ParseError> {
        let t = self.next();
        match &t.kind {
            TokenKind::Number(q) if q.is_integer() => Ok(q.numer().clone()),
            _ => self.error(&t, format!("expected {what}, found {}", t.kind.describe())),
        }
    }

    // The variable index of an `x1`-style identifier, zero-based.
    fn variable_index(&self, token: &Token, name: &str, dim: usize) -> Result<usize, ParseError> {
        let index = name
            .strip_prefix('x')
            .and_then(|digits| digits.parse::<usize>().ok())
            .filter(|&i| i >= 1);
        match index {
            Some(i) if i <= dim => Ok(i - 1),
            Some(i) => self.error(
                token,
                format!("variable x{i} exceeds the declared dimension {dim}"),
            ),
            None => self.error(token, format!("expected a variable, found '{name}'")),
        }
    }

    fn linexpr(&mut self, dim: usize) -> Result<(Vec<Rat>, Rat), ParseError> {
        let mut coeffs = vec![Rat::from(Int::from(0)); dim];
        let mut constant = Rat::from(Int::from(0));
        let mut sign = match self.peek().kind {
            TokenKind::Plus => {
                self.next();
                rat_int(1)
            }
            TokenKind::Minus => {
                self.next();
                rat_int(-1)
            }
            _ => rat_int(1),
        };
        loop {
            let t = self.next();
            match t.kind {
                TokenKind::Number(q) => {
                    if self.peek().kind == TokenKind::Star {
                        self.next();
                        let v = self.next();
                        match &v.kind {
                            TokenKind::Ident(name) => {
                                let i = self.variable_index(&v, name, dim)?;
                                coeffs[i] += &sign * &q;
                            }
                            other => {
                                return self.error(
                                    &v,
                                    format!("expected a variable after '*', found {}", other.describe()),
                                )
                            }
                        }
                    } else {
                        constant += &sign * &q;
                    }
                }
                TokenKind::Ident(ref name) => {
                    let i = self.variable_index(&t, name, dim)?;
                    coeffs[i] += sign.clone();
                }
                ref other => {
                    return self.error(&t, format!("expected a term, found {}", other.describe()))
                }
            }
            sign = match self.peek().kind {
                TokenKind::Plus => {
                    self.next();
                    rat_int(1)
                }
                TokenKind::Minus => {
                    self.next();
                    rat_int(-1)
                }
                _ => break,
            };
        }
        Ok((coeffs, constant))
    }

    fn atom(&mut self, dim: usize) -> Result<Formula, ParseError> {
        let (lc, lk) = self.linexpr(dim)?;
        let rel = self.next();
        let (rc, rk) = match rel.kind {
            TokenKind::Eq
            | TokenKind::NotEq
            | TokenKind::Lt
            | TokenKind::Le
            | TokenKind::Gt
            | TokenKind::Ge => self.linexpr(dim)?,
            ref other => {
                return self.error(&rel, format!("expected a relation, found {}", other.describe()))
            }
        };
        // lhs REL rhs becomes (lhs - rhs) REL 0, with > and >= flipped.
        let difference = |a: &[Rat], k_a: &Rat, b: &[Rat], k_b: &Rat| {
            let coeffs = a.iter().zip(b).map(|(x, y)| x - y).collect();
            LinearForm::new(coeffs, k_a - k_b)
        };
        let forward = difference(&lc, &lk, &rc, &rk);
        let backward = difference(&rc, &rk, &lc, &lk);
        Ok(match rel.kind {
            TokenKind::Eq => Formula::atom(forward, Relation::Eq),
            TokenKind::NotEq => Formula::not(Formula::atom(forward, Relation::Eq)),
            TokenKind::Lt => Formula::atom(forward, Relation::Lt),
            TokenKind::Le => Formula::atom(forward, Relation::Le),
            TokenKind::Gt => Formula::atom(backward, Relation::Lt),
            TokenKind::Ge => Formula::atom(backward, Relation::Le),
            _ => unreachable!("relation kinds are filtered above"),
        })
    }

    fn unary(&mut self, dim: usize) -> Result<Formula, ParseError> {
        match self.peek().kind {
            TokenKind::Bang => {
                self.next();
                Ok(Formula::not(self.unary(dim)?))
            }
            TokenKind::LParen => {
                self.next();
                let f = self.formula(dim)?;
                self.expect(TokenKind::RParen)?;
                Ok(f)
            }
            _ => self.atom(dim),
        }
    }

    fn conjunction(&mut self, dim: usize) -> Result<Formula, ParseError> {
        let mut parts = vec![self.unary(dim)?];
        while self.peek().kind == TokenKind::Amp {
            self.next();
            parts.push(self.unary(dim)?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::and(parts) })
    }

    fn formula(&mut self, dim: usize) -> Result<Formula, ParseError> {
        let mut parts = vec![self.conjunction(dim)?];
        while self.peek().kind == TokenKind::Pipe {
            self.next();
            parts.push(self.conjunction(dim)?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::or(parts) })
    }
}

/// Parses a document; see the module header for the grammar.
pub fn parse_document(text: &str) -> Result<SetDocument, ParseError> {
    let mut p = Parser { tokens: lex(text)?, pos: 0 };
    let mut dim: Option<usize> = None;
    let mut names: Vec<(String, PolyhedralSet)> = Vec::new();
    let mut pieces: Vec<(Int, PolyhedralSet)> = Vec::new();
    loop {
        let t = p.next();
        let name = match &t.kind {
            TokenKind::End => break,
            TokenKind::Ident(name) => name.clone(),
            other => {
                return p.error(&t, format!("expected a declaration, found {}", other.describe()))
            }
        };
        if name == "dim" {
            if dim.is_some() {
                return p.error(&t, "the dimension is already declared".to_string());
            }
            if !(names.is_empty() && pieces.is_empty()) {
                return p.error(&t, "the dimension must be declared first".to_string());
            }
            let d = p.integer("the dimension")?;
            let d = usize::try_from(&d)
                .ok()
                .filter(|&d| d >= 1)
                .ok_or(ParseError {
                    line: t.line,
                    column: t.column,
                    message: format!("the dimension must be a positive integer, not {d}"),
                })?;
            p.expect(TokenKind::Semi)?;
            dim = Some(d);
            continue;
        }
        let Some(d) = dim else {
            return p.error(&t, "the dimension must be declared first".to_string());
        };
        if name == "piece" {
            let negative = if p.peek().kind == TokenKind::Minus {
                p.next();
                true
            } else {
                false
            };
            let mut value = p.integer("an integer value")?;
            if negative {
                value = -value;
            }
            p.expect(TokenKind::Colon)?;
            let formula = p.formula(d)?;
            p.expect(TokenKind::Semi)?;
            let set = PolyhedralSet::new(d, formula).expect("atoms are built at the declared dimension");
            pieces.push((value, set));
            continue;
        }
        if name.strip_prefix('x').is_some_and(|rest| rest.chars().all(|c| c.is_ascii_digit()) && !rest.is_empty()) {
            return p.error(&t, format!("the name '{name}' is reserved for variables"));
        }
        if names.iter().any(|(n, _)| *n == name) {
            return p.error(&t, format!("the name '{name}' is already defined"));
        }
        p.expect(TokenKind::Eq)?;
        let formula = p.formula(d)?;
        p.expect(TokenKind::Semi)?;
        let set = PolyhedralSet::new(d, formula).expect("atoms are built at the declared dimension");
        names.push((name, set));
    }
    let Some(dim) = dim else {
        return Err(ParseError {
            line: 1,
            column: 1,
            message: "the document declares no dimension".to_string(),
        });
    };
    Ok(SetDocument { dim, names, pieces })
}

#[cfg(test)]
fn print_linexpr(form: &LinearForm) -> String {
    let mut out = String::new();
    let mut first = true;
    let mut push_term = |q: &Rat, var: Option<usize>, out: &mut String| {
        if q.numer() == &Int::from(0) {
            return;
        }
        let negative = q < &Rat::from(Int::from(0));
        let magnitude = if negative { -q.clone() } else { q.clone() };
        if first {
            if negative {
                out.push('-');
            }
            first = false;
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mag = polychi_core::rat::format_rat(&magnitude);
        match var {
            Some(i) => {
                out.push_str(&mag);
                out.push_str(&format!("*x{}", i + 1));
            }
            None => out.push_str(&mag),
        }
    };
    for (i, c) in form.coeffs.iter().enumerate() {
        push_term(c, Some(i), &mut out);
    }
    push_term(&form.constant, None, &mut out);
    if out.is_empty() {
        out.push('0');
    }
    out
}

// Precedence levels for printing: | is 0, & is 1, leaves are 2.
#[cfg(test)]
fn print_formula_at(f: &Formula, level: u8, out: &mut String) {
    let own = match f {
        Formula::Or(_) => 0,
        Formula::And(_) => 1,
        _ => 2,
    };
    if own < level {
        out.push('(');
        print_formula_at(f, 0, out);
        out.push(')');
        return;
    }
    match f {
        Formula::True => out.push_str("0 = 0"),
        Formula::False => out.push_str("0 < 0"),
        Formula::Atom(a) => {
            out.push_str(&print_linexpr(&a.form));
            out.push_str(match a.relation {
                Relation::Eq => " = 0",
                Relation::Lt => " < 0",
                Relation::Le => " <= 0",
            });
        }
        Formula::Not(inner) => {
            out.push('!');
            print_formula_at(inner, 2, out);
        }
        Formula::And(parts) if parts.is_empty() => out.push_str("0 = 0"),
        Formula::Or(parts) if parts.is_empty() => out.push_str("0 < 0"),
        Formula::And(parts) => {
            for (i, part) in parts.iter().enumerate() {
                if i > 0 {
                    out.push_str(" & ");
                }
                print_formula_at(part, 2, out);
            }
        }
        Formula::Or(parts) => {
            for (i, part) in parts.iter().enumerate() {
                if i > 0 {
                    out.push_str(" | ");
                }
                print_formula_at(part, 1, out);
            }
        }
    }
}

#[cfg(test)]
pub fn print_formula(f: &Formula) -> String {
    let mut out = String::new();
    print_formula_at(f, 0, &mut out);
    out
}

/// Pretty-prints a document in the same grammar it was parsed from.
/// Reparsing the result yields semantically identical sets.
#[cfg(test)]
pub fn print_document(doc: &SetDocument) -> String {
    let mut out = format!("dim {};\n", doc.dim);
    for (name, set) in &doc.names {
        out.push_str(&format!("{name} = {};\n", print_formula(&set.formula)));
    }
    for (value, set) in &doc.pieces {
        out.push_str(&format!("piece {value} : {};\n", print_formula(&set.formula)));
    }
    out
}
