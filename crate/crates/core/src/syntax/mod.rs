//! Concrete syntax for terms.
//!
//! ```text
//! term   := "base" | "self"
//!         | "node" "(" term ")" | "cap" "(" term ")" | "enter" "(" term ")"
//!         | "named" "(" string "," term ")"
//! string := '"' ( char | '\"' | '\\' | '\n' | '\t' | '\u{' hex{1,6} '}' )* '"'
//! ```
//!
//! Whitespace between tokens is ignored. The printer emits the canonical
//! form: no whitespace except one space after each comma.

mod parser;
pub mod structured;

use std::fmt::{self, Write};

use crate::term::{Term, TermKind};

pub use parser::{parse, ParseError};

pub(crate) fn write_term<W: Write>(out: &mut W, t: &Term) -> fmt::Result {
    let mut depth = 0usize;
    for s in t.subterms() {
        match s.kind() {
            TermKind::Base => out.write_str("base")?,
            TermKind::SelfRef => out.write_str("self")?,
            TermKind::Node(_) => out.write_str("node(")?,
            TermKind::Cap(_) => out.write_str("cap(")?,
            TermKind::Enter(_) => out.write_str("enter(")?,
            TermKind::Named(label, _) => {
                out.write_str("named(")?;
                write_string(out, label)?;
                out.write_str(", ")?;
            }
        }
        if s.child().is_some() {
            depth += 1;
        }
    }
    for _ in 0..depth {
        out.write_char(')')?;
    }
    Ok(())
}

fn write_string<W: Write>(out: &mut W, s: &str) -> fmt::Result {
    out.write_char('"')?;
    for c in s.chars() {
        match c {
            '"' => out.write_str("\\\"")?,
            '\\' => out.write_str("\\\\")?,
            '\n' => out.write_str("\\n")?,
            '\t' => out.write_str("\\t")?,
            c if c.is_control() => write!(out, "\\u{{{:x}}}", c as u32)?,
            c => out.write_char(c)?,
        }
    }
    out.write_char('"')
}

/// Canonical rendering of `t`.
pub fn print(t: &Term) -> String {
    let mut s = String::with_capacity(t.size() * 6);
    write_term(&mut s, t).expect("writing to a String cannot fail");
    s
}
