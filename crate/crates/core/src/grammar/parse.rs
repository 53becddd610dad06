//! Reader for the `.rtg` text format:
//!
//! ```text
//! file  := { rule } ;
//! rule  := IDENT "::=" [ alt { "|" alt } ] ";" ;
//! alt   := IDENT [ "(" IDENT { "," IDENT } ")" ] ;
//! ```
//!
//! `#` starts a comment running to the end of the line. A comment of the
//! form `# variables: x y z` additionally marks the listed nullary symbols as
//! variables; [`Grammar`](super::Grammar)'s `Display` writes that line back.

use super::{GrammarError, RawAlternative, RawGrammar, RawRule};

const VARIABLES_PRAGMA: &str = "variables:";

pub(crate) fn is_ident_byte(b: u8, first: bool) -> bool {
    b.is_ascii_alphabetic() || b == b'_' || (!first && (b.is_ascii_digit() || b == b'\''))
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Defines,
    Bar,
    Semi,
    LParen,
    RParen,
    Comma,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Defines => "`::=`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Semi => "`;`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    col: usize,
    variables: Vec<String>,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src,
            pos: 0,
            line: 1,
            col: 1,
            variables: Vec::new(),
        }
    }

    fn peek_byte(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn bump(&mut self) {
        if let Some(c) = self.src[self.pos..].chars().next() {
            self.pos += c.len_utf8();
            if c == '\n' {
                self.line += 1;
                self.col = 1;
            } else {
                self.col += 1;
            }
        }
    }

    fn error(&self, message: impl Into<String>) -> GrammarError {
        GrammarError::Syntax {
            line: self.line,
            column: self.col,
            message: message.into(),
        }
    }

    fn skip_trivia(&mut self) {
        while let Some(b) = self.peek_byte() {
            if b.is_ascii_whitespace() {
                self.bump();
            } else if b == b'#' {
                let start = self.pos + 1;
                while self.peek_byte().is_some_and(|b| b != b'\n') {
                    self.bump();
                }
                let body = self.src[start..self.pos].trim();
                if let Some(rest) = body.strip_prefix(VARIABLES_PRAGMA) {
                    self.variables
                        .extend(rest.split_whitespace().map(str::to_string));
                }
            } else {
                break;
            }
        }
    }

    /// Next token with its 1-based line and column.
    fn next(&mut self) -> Result<(Tok, usize, usize), GrammarError> {
        self.skip_trivia();
        let (line, col) = (self.line, self.col);
        let Some(b) = self.peek_byte() else {
            return Ok((Tok::Eof, line, col));
        };
        let tok = match b {
            b'|' => {
                self.bump();
                Tok::Bar
            }
            b';' => {
                self.bump();
                Tok::Semi
            }
            b'(' => {
                self.bump();
                Tok::LParen
            }
            b')' => {
                self.bump();
                Tok::RParen
            }
            b',' => {
                self.bump();
                Tok::Comma
            }
            b':' => {
                if self.src[self.pos..].starts_with("::=") {
                    for _ in 0..3 {
                        self.bump();
                    }
                    Tok::Defines
                } else {
                    return Err(self.error("expected `::=`"));
                }
            }
            b if is_ident_byte(b, true) => {
                let start = self.pos;
                while self.peek_byte().is_some_and(|b| is_ident_byte(b, false)) {
                    self.bump();
                }
                Tok::Ident(self.src[start..self.pos].to_string())
            }
            _ => {
                let c = self.src[self.pos..].chars().next().unwrap_or('?');
                return Err(self.error(format!("unexpected character `{c}`")));
            }
        };
        Ok((tok, line, col))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    line: usize,
    col: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, GrammarError> {
        let mut lexer = Lexer::new(src);
        let (tok, line, col) = lexer.next()?;
        Ok(Parser {
            lexer,
            tok,
            line,
            col,
        })
    }

    fn advance(&mut self) -> Result<Tok, GrammarError> {
        let (tok, line, col) = self.lexer.next()?;
        self.line = line;
        self.col = col;
        Ok(std::mem::replace(&mut self.tok, tok))
    }

    fn unexpected(&self, expected: &str) -> GrammarError {
        GrammarError::Syntax {
            line: self.line,
            column: self.col,
            message: format!("expected {expected}, found {}", self.tok.describe()),
        }
    }

    fn expect(&mut self, want: Tok) -> Result<(), GrammarError> {
        if self.tok == want {
            self.advance()?;
            Ok(())
        } else {
            Err(self.unexpected(&want.describe()))
        }
    }

    fn ident(&mut self) -> Result<String, GrammarError> {
        match self.tok {
            Tok::Ident(_) => match self.advance()? {
                Tok::Ident(s) => Ok(s),
                _ => unreachable!(),
            },
            _ => Err(self.unexpected("identifier")),
        }
    }

    fn file(&mut self) -> Result<RawGrammar, GrammarError> {
        let mut rules = Vec::new();
        while self.tok != Tok::Eof {
            rules.push(self.rule()?);
        }
        Ok(RawGrammar {
            rules,
            variables: std::mem::take(&mut self.lexer.variables),
        })
    }

    fn rule(&mut self) -> Result<RawRule, GrammarError> {
        let lhs = self.ident()?;
        self.expect(Tok::Defines)?;
        let mut alternatives = Vec::new();
        if self.tok != Tok::Semi {
            alternatives.push(self.alternative()?);
            while self.tok == Tok::Bar {
                self.advance()?;
                alternatives.push(self.alternative()?);
            }
        }
        self.expect(Tok::Semi)?;
        Ok(RawRule { lhs, alternatives })
    }

    fn alternative(&mut self) -> Result<RawAlternative, GrammarError> {
        let symbol = self.ident()?;
        let mut args = Vec::new();
        if self.tok == Tok::LParen {
            self.advance()?;
            args.push(self.ident()?);
            while self.tok == Tok::Comma {
                self.advance()?;
                args.push(self.ident()?);
            }
            self.expect(Tok::RParen)?;
        }
        Ok(RawAlternative { symbol, args })
    }
}

/// Parses `.rtg` text into an unchecked [`RawGrammar`].
pub fn parse_raw(text: &str) -> Result<RawGrammar, GrammarError> {
    Parser::new(text)?.file()
}
