//! Recursive-descent parser for the formula language.
//!
//! ```text
//! S  ::= 'true' | 'false' | ATOM | '!' S | S '&' S | S '|' S | S '->' S | '(' S ')'
//!      | PO '[' P ']' | ('E'|'A') '[' P ']'
//! P  ::= 'X' S | S 'U' S | S 'U<=' INT S | 'F' S | 'G' S
//! PO ::= 'Po' ('>='|'>'|'<='|'<'|'=') DECIMAL
//!      | 'Po' 'in' ('['|'(') DECIMAL ',' DECIMAL (']'|')')
//! ```
//!
//! Precedence is `!` > `&` > `|` > `->`; binary operators associate to the left.
//! Atoms are double-quoted strings or bare identifiers other than the keywords.

use thiserror::Error;

use super::ast::{FormulaClass, Interval, PathFormula, StateFormula, WellFormednessError};
use crate::possibility::Possibility;

const KEYWORDS: &[&str] = &["true", "false", "X", "U", "F", "G", "E", "A", "Po", "in"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    WellFormedness(#[from] WellFormednessError),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Bang,
    Amp,
    Pipe,
    Arrow,
    Ge,
    Gt,
    Le,
    Lt,
    Eq,
    Number(String),
    Ident(String),
    Quoted(String),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Number(n) => format!("number `{n}`"),
            Tok::Ident(i) => format!("`{i}`"),
            Tok::Quoted(q) => format!("atom \"{q}\""),
            Tok::End => "end of input".to_string(),
            other => format!("`{}`", other.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Comma => ",",
            Tok::Bang => "!",
            Tok::Amp => "&",
            Tok::Pipe => "|",
            Tok::Arrow => "->",
            Tok::Ge => ">=",
            Tok::Gt => ">",
            Tok::Le => "<=",
            Tok::Lt => "<",
            Tok::Eq => "=",
            _ => "",
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let peek = chars.get(i + 1).copied();
        let (tok, len) = match c {
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '[' => (Tok::LBracket, 1),
            ']' => (Tok::RBracket, 1),
            ',' => (Tok::Comma, 1),
            '!' => (Tok::Bang, 1),
            '&' => (Tok::Amp, 1),
            '|' => (Tok::Pipe, 1),
            '=' => (Tok::Eq, 1),
            '-' if peek == Some('>') => (Tok::Arrow, 2),
            '>' if peek == Some('=') => (Tok::Ge, 2),
            '>' => (Tok::Gt, 1),
            '<' if peek == Some('=') => (Tok::Le, 2),
            '<' => (Tok::Lt, 1),
            '"' => {
                let end = chars[i + 1..]
                    .iter()
                    .position(|&ch| ch == '"' || ch == '\n')
                    .map(|p| i + 1 + p)
                    .filter(|&e| chars[e] == '"')
                    .ok_or_else(|| syntax(line, col, "unterminated quoted atom"))?;
                let name: String = chars[i + 1..end].iter().collect();
                if name.is_empty() {
                    return Err(syntax(line, col, "empty quoted atom"));
                }
                (Tok::Quoted(name), end + 1 - i)
            }
            c if c.is_ascii_digit() || c == '.' => {
                let len = chars[i..]
                    .iter()
                    .take_while(|ch| ch.is_ascii_digit() || **ch == '.')
                    .count();
                (Tok::Number(chars[i..i + len].iter().collect()), len)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let len = chars[i..]
                    .iter()
                    .take_while(|ch| ch.is_ascii_alphanumeric() || **ch == '_')
                    .count();
                (Tok::Ident(chars[i..i + len].iter().collect()), len)
            }
            other => return Err(syntax(line, col, format!("unexpected character `{other}`"))),
        };
        tokens.push(Token {
            tok,
            line: start_line,
            column: start_col,
        });
        i += len;
        col += len;
    }
    tokens.push(Token {
        tok: Tok::End,
        line,
        column: col,
    });
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.tokens[self.pos];
        (t.line, t.column)
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.pos].tok.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let (l, c) = self.here();
        syntax(l, c, message)
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        self.error(format!(
            "expected {wanted}, found {}",
            self.peek().describe()
        ))
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{}`", tok.symbol())))
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(i) if i == kw)
    }

    fn state(&mut self) -> Result<StateFormula, ParseError> {
        let mut left = self.disjunction()?;
        while *self.peek() == Tok::Arrow {
            self.bump();
            let right = self.disjunction()?;
            left = left.implies(right);
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<StateFormula, ParseError> {
        let mut left = self.conjunction()?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            let right = self.conjunction()?;
            left = left.or(right);
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<StateFormula, ParseError> {
        let mut left = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let right = self.unary()?;
            left = left.and(right);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<StateFormula, ParseError> {
        if *self.peek() == Tok::Bang {
            self.bump();
            return Ok(self.unary()?.not());
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<StateFormula, ParseError> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let inner = self.state()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Quoted(name) => {
                self.bump();
                Ok(StateFormula::Atom(name))
            }
            Tok::Ident(word) => match word.as_str() {
                "true" => {
                    self.bump();
                    Ok(StateFormula::True)
                }
                "false" => {
                    self.bump();
                    Ok(StateFormula::falsity())
                }
                "Po" => {
                    self.bump();
                    let bound = self.bound()?;
                    let path = self.bracketed_path()?;
                    Ok(StateFormula::po(bound, path))
                }
                "E" => {
                    self.bump();
                    Ok(StateFormula::exists(self.bracketed_path()?))
                }
                "A" => {
                    self.bump();
                    Ok(StateFormula::forall(self.bracketed_path()?))
                }
                w if KEYWORDS.contains(&w) => Err(self.unexpected("a state formula")),
                _ => {
                    self.bump();
                    Ok(StateFormula::Atom(word))
                }
            },
            _ => Err(self.unexpected("a state formula")),
        }
    }

    fn decimal(&mut self) -> Result<Possibility, ParseError> {
        let (l, c) = self.here();
        match self.bump() {
            Tok::Number(n) => n.parse().map_err(|e| syntax(l, c, format!("{e}"))),
            other => Err(syntax(
                l,
                c,
                format!("expected a number, found {}", other.describe()),
            )),
        }
    }

    fn bound(&mut self) -> Result<Interval, ParseError> {
        let (l, c) = self.here();
        match self.bump() {
            Tok::Ge => Ok(Interval::at_least(self.decimal()?)),
            Tok::Gt => Ok(Interval::greater_than(self.decimal()?)),
            Tok::Le => Ok(Interval::at_most(self.decimal()?)),
            Tok::Lt => Ok(Interval::less_than(self.decimal()?)),
            Tok::Eq => Ok(Interval::exactly(self.decimal()?)),
            Tok::Ident(w) if w == "in" => {
                let lower_closed = match self.bump() {
                    Tok::LBracket => true,
                    Tok::LParen => false,
                    other => {
                        return Err(syntax(
                            l,
                            c,
                            format!("expected `[` or `(`, found {}", other.describe()),
                        ))
                    }
                };
                let lower = self.decimal()?;
                self.expect(Tok::Comma)?;
                let upper = self.decimal()?;
                let upper_closed = match self.peek() {
                    Tok::RBracket => true,
                    Tok::RParen => false,
                    _ => return Err(self.unexpected("`]` or `)`")),
                };
                self.bump();
                Interval::new(lower, lower_closed, upper, upper_closed)
                    .map_err(|e| syntax(l, c, e.to_string()))
            }
            other => Err(syntax(
                l,
                c,
                format!("expected a bound after `Po`, found {}", other.describe()),
            )),
        }
    }

    fn bracketed_path(&mut self) -> Result<PathFormula, ParseError> {
        self.expect(Tok::LBracket)?;
        let path = self.path()?;
        self.expect(Tok::RBracket)?;
        Ok(path)
    }

    fn path(&mut self) -> Result<PathFormula, ParseError> {
        for (kw, ctor) in [
            ("X", PathFormula::next as fn(StateFormula) -> PathFormula),
            ("F", PathFormula::eventually),
            ("G", PathFormula::always),
        ] {
            if self.is_keyword(kw) {
                self.bump();
                return Ok(ctor(self.state()?));
            }
        }
        let hold = self.state()?;
        if !self.is_keyword("U") {
            return Err(self.unexpected("`U`"));
        }
        self.bump();
        if *self.peek() == Tok::Le {
            self.bump();
            let (l, c) = self.here();
            let n = match self.bump() {
                Tok::Number(n) if n.bytes().all(|b| b.is_ascii_digit()) => n
                    .parse::<usize>()
                    .map_err(|e| syntax(l, c, format!("bad step bound: {e}")))?,
                other => {
                    return Err(syntax(
                        l,
                        c,
                        format!("expected a step bound, found {}", other.describe()),
                    ))
                }
            };
            let goal = self.state()?;
            return Ok(PathFormula::bounded_until(hold, goal, n));
        }
        let goal = self.state()?;
        Ok(PathFormula::until(hold, goal))
    }
}

/// Parses a state formula of either logic, checking only that it does not mix them.
pub fn parse_formula(text: &str) -> Result<StateFormula, ParseError> {
    let mut parser = Parser {
        tokens: lex(text)?,
        pos: 0,
    };
    let formula = parser.state()?;
    if *parser.peek() != Tok::End {
        return Err(parser.unexpected("end of input"));
    }
    formula.class()?;
    Ok(formula)
}

/// Parses a PoCTL state formula; `E`/`A` are rejected.
pub fn parse_poctl(text: &str) -> Result<StateFormula, ParseError> {
    let f = parse_formula(text)?;
    match f.class()? {
        FormulaClass::Ctl => Err(WellFormednessError::ExpectedPoctl.into()),
        _ => Ok(f),
    }
}

/// Parses a CTL state formula; `Po` and bounded until are rejected.
pub fn parse_ctl(text: &str) -> Result<StateFormula, ParseError> {
    let f = parse_formula(text)?;
    match f.class()? {
        FormulaClass::Poctl => Err(WellFormednessError::ExpectedCtl.into()),
        _ => Ok(f),
    }
}
