use std::fmt;

use thiserror::Error;

use crate::term::Term;

/// A malformed input, located at the first offending position.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column} (byte {byte_offset}): expected {expected}, found {found}")]
pub struct ParseError {
    pub byte_offset: usize,
    /// 1-based.
    pub line: usize,
    /// 1-based, counted in characters.
    pub column: usize,
    pub expected: String,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Ident(String),
    Str(String),
    LParen,
    RParen,
    Comma,
    Eof,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Ident(s) => write!(f, "`{s}`"),
            Token::Str(_) => f.write_str("string literal"),
            Token::LParen => f.write_str("`(`"),
            Token::RParen => f.write_str("`)`"),
            Token::Comma => f.write_str("`,`"),
            Token::Eof => f.write_str("end of input"),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn error_at(
        &self,
        offset: usize,
        expected: impl Into<String>,
        found: impl Into<String>,
    ) -> ParseError {
        let before = &self.src[..offset];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map_or(0, |i| i + 1);
        let column = before[line_start..].chars().count() + 1;
        ParseError {
            byte_offset: offset,
            line,
            column,
            expected: expected.into(),
            found: found.into(),
        }
    }

    fn peek_char(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_whitespace(&mut self) {
        while let Some(c) = self.peek_char() {
            if !matches!(c, ' ' | '\t' | '\n' | '\r') {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    /// Next token and its starting byte offset.
    fn next_token(&mut self) -> Result<(usize, Token), ParseError> {
        self.skip_whitespace();
        let start = self.pos;
        let Some(c) = self.peek_char() else {
            return Ok((start, Token::Eof));
        };
        let tok = match c {
            '(' => {
                self.pos += 1;
                Token::LParen
            }
            ')' => {
                self.pos += 1;
                Token::RParen
            }
            ',' => {
                self.pos += 1;
                Token::Comma
            }
            '"' => Token::Str(self.string()?),
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let len = self.src[start..]
                    .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
                    .unwrap_or(self.src.len() - start);
                self.pos += len;
                Token::Ident(self.src[start..self.pos].to_owned())
            }
            other => {
                return Err(self.error_at(start, "a token", format!("`{}`", other.escape_debug())))
            }
        };
        Ok((start, tok))
    }

    fn string(&mut self) -> Result<String, ParseError> {
        let open = self.pos;
        self.pos += 1;
        let mut out = String::new();
        loop {
            let here = self.pos;
            let Some(c) = self.peek_char() else {
                return Err(self.error_at(
                    here,
                    "closing `\"` for string opened at byte ".to_owned() + &open.to_string(),
                    "end of input",
                ));
            };
            self.pos += c.len_utf8();
            match c {
                '"' => return Ok(out),
                '\\' => out.push(self.escape(here)?),
                c => out.push(c),
            }
        }
    }

    // Called after the backslash at `start` has been consumed.
    fn escape(&mut self, start: usize) -> Result<char, ParseError> {
        let expected = r#"escape `\"`, `\\`, `\n`, `\t` or `\u{XXXX}`"#;
        let Some(c) = self.peek_char() else {
            return Err(self.error_at(self.pos, expected, "end of input"));
        };
        self.pos += c.len_utf8();
        match c {
            '"' => Ok('"'),
            '\\' => Ok('\\'),
            'n' => Ok('\n'),
            't' => Ok('\t'),
            'u' => self.unicode_escape(start),
            other => Err(self.error_at(start, expected, format!("`\\{}`", other.escape_debug()))),
        }
    }

    fn unicode_escape(&mut self, start: usize) -> Result<char, ParseError> {
        if self.peek_char() != Some('{') {
            let found = self.peek_char().map_or("end of input".to_owned(), |c| {
                format!("`{}`", c.escape_debug())
            });
            return Err(self.error_at(self.pos, "`{` after `\\u`", found));
        }
        self.pos += 1;
        let digits_start = self.pos;
        while self.peek_char().is_some_and(|c| c.is_ascii_hexdigit()) {
            self.pos += 1;
        }
        let digits = &self.src[digits_start..self.pos];
        if digits.is_empty() || digits.len() > 6 {
            let found = if digits.is_empty() {
                self.peek_char().map_or("end of input".to_owned(), |c| {
                    format!("`{}`", c.escape_debug())
                })
            } else {
                format!("`{digits}`")
            };
            return Err(self.error_at(digits_start, "1 to 6 hex digits", found));
        }
        if self.peek_char() != Some('}') {
            let found = self.peek_char().map_or("end of input".to_owned(), |c| {
                format!("`{}`", c.escape_debug())
            });
            return Err(self.error_at(self.pos, "`}` closing unicode escape", found));
        }
        self.pos += 1;
        let code = u32::from_str_radix(digits, 16).expect("validated hex digits");
        char::from_u32(code).ok_or_else(|| {
            self.error_at(
                start,
                "a unicode scalar value",
                format!("`\\u{{{digits}}}`"),
            )
        })
    }
}

enum Frame {
    Node,
    Cap,
    Enter,
    Named(String),
}

/// Parses one term. The whole input must be consumed.
pub fn parse(input: &str) -> Result<Term, ParseError> {
    let mut lexer = Lexer { src: input, pos: 0 };
    let expect = |lexer: &mut Lexer<'_>, want: Token, what: &str| -> Result<(), ParseError> {
        let (at, tok) = lexer.next_token()?;
        if tok == want {
            Ok(())
        } else {
            Err(lexer.error_at(at, what, tok.to_string()))
        }
    };

    // Wrappers are collected outermost first, then closed innermost first.
    let mut frames: Vec<Frame> = Vec::new();
    let leaf = loop {
        let (at, tok) = lexer.next_token()?;
        let Token::Ident(kw) = tok else {
            return Err(lexer.error_at(at, "a term", tok.to_string()));
        };
        let frame = match kw.as_str() {
            "base" => break Term::base(),
            "self" => break Term::self_ref(),
            "node" => Frame::Node,
            "cap" => Frame::Cap,
            "enter" => Frame::Enter,
            "named" => {
                expect(&mut lexer, Token::LParen, "`(`")?;
                let (at, tok) = lexer.next_token()?;
                let Token::Str(label) = tok else {
                    return Err(lexer.error_at(at, "a string literal", tok.to_string()));
                };
                expect(&mut lexer, Token::Comma, "`,`")?;
                frames.push(Frame::Named(label));
                continue;
            }
            _ => return Err(lexer.error_at(at, "a term", Token::Ident(kw).to_string())),
        };
        expect(&mut lexer, Token::LParen, "`(`")?;
        frames.push(frame);
    };

    let mut term = leaf;
    while let Some(frame) = frames.pop() {
        expect(&mut lexer, Token::RParen, "`)`")?;
        term = match frame {
            Frame::Node => Term::node(term),
            Frame::Cap => Term::cap(term),
            Frame::Enter => Term::enter(term),
            Frame::Named(label) => Term::named(label, term),
        };
    }

    let (at, tok) = lexer.next_token()?;
    if tok != Token::Eof {
        return Err(lexer.error_at(at, "end of input", tok.to_string()));
    }
    Ok(term)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse(r#"named("Liar", self)"#).unwrap(),
            Term::paradox("Liar")
        );
        assert_eq!(parse("base").unwrap(), Term::base());
        assert_eq!(
            parse("  node (\n cap( enter(base) ) )\t").unwrap(),
            Term::node(Term::cap(Term::enter(Term::base())))
        );
    }

    #[test]
    fn unfinished_input_reports_end_of_input() {
        let e = parse("node(").unwrap_err();
        assert_eq!(e.byte_offset, 5);
        assert_eq!((e.line, e.column), (1, 6));
        assert_eq!(e.expected, "a term");
        assert_eq!(e.found, "end of input");
    }

    #[test]
    fn escapes_decode() {
        let t = parse(r#"named("q\"b\\n\nt\t\u{1F600}\u{e9}", base)"#).unwrap();
        assert_eq!(t.label(), Some("q\"b\\n\nt\t\u{1F600}\u{e9}"));
    }

    #[test]
    fn positions_count_lines_and_characters() {
        let e = parse("named(\"é\",\n  bogus)").unwrap_err();
        assert_eq!(e.line, 2);
        assert_eq!(e.column, 3);
        assert_eq!(e.byte_offset, "named(\"é\",\n  ".len());
        assert_eq!(e.found, "`bogus`");
    }

    #[test]
    fn self_ref_spelling_is_not_a_keyword() {
        assert!(parse("self_ref").is_err());
    }

    #[test]
    fn very_deep_input_parses() {
        let depth = 100_000;
        let src = format!("{}base{}", "node(".repeat(depth), ")".repeat(depth));
        let t = parse(&src).unwrap();
        assert_eq!(t.node_depth_prefix(), depth);
    }
}
