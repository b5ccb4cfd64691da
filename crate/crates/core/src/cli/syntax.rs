//! Line-oriented block syntax shared by every document kind.
//!
//! ```text
//! # comment
//! kind = dgla
//! basis {
//!   e : 0
//! }
//! ```
//!
//! A line ending in `{` opens a named block closed by a lone `}`; any other
//! non-blank line is an entry, tokenized on demand.

use crate::graded_linear::{parse_scalar, Scalar};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    /// 1-based position, when the error can be located.
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl InputError {
    pub fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        InputError {
            line: Some(line),
            column: Some(column),
            message: message.into(),
        }
    }

    pub fn semantic(message: impl Into<String>) -> Self {
        InputError {
            line: None,
            column: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "line {l}, column {c}: {}", self.message),
            _ => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for InputError {}

pub type Parsed<T> = std::result::Result<T, InputError>;

#[derive(Clone, Debug)]
pub struct Line {
    pub text: String,
    pub line: usize,
    /// Column of the first character of `text`.
    pub column: usize,
}

#[derive(Clone, Debug)]
pub enum Entry {
    Line(Line),
    Block { name: String, at: Line, body: Block },
}

#[derive(Clone, Debug, Default)]
pub struct Block {
    pub entries: Vec<Entry>,
    /// Position of the opening line (0 for the document itself).
    pub line: usize,
}

impl Block {
    pub fn lines(&self) -> impl Iterator<Item = &Line> {
        self.entries.iter().filter_map(|e| match e {
            Entry::Line(l) => Some(l),
            _ => None,
        })
    }

    pub fn block(&self, name: &str) -> Option<&Block> {
        self.entries.iter().find_map(|e| match e {
            Entry::Block { name: n, body, .. } if n == name => Some(body),
            _ => None,
        })
    }

    /// The value of a `key = value` line.
    pub fn value(&self, key: &str) -> Option<(&str, &Line)> {
        self.lines().find_map(|l| {
            let (k, v) = l.text.split_once('=')?;
            (k.trim() == key).then(|| (v.trim(), l))
        })
    }

    /// Rejects blocks and `key = value` lines outside the allowed sets.
    pub fn expect_only(&self, keys: &[&str], blocks: &[&str]) -> Parsed<()> {
        for e in &self.entries {
            match e {
                Entry::Block { name, at, .. } if !blocks.contains(&name.as_str()) => {
                    return Err(InputError::at(at.line, at.column, format!("unexpected block '{name}'")));
                }
                Entry::Line(l) => {
                    let key = l.text.split_once('=').map(|(k, _)| k.trim()).unwrap_or("");
                    if !keys.contains(&key) {
                        return Err(InputError::at(l.line, l.column, format!("unexpected entry '{}'", l.text)));
                    }
                }
                _ => {}
            }
        }
        Ok(())
    }
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if !c.is_ascii_digit() && !RESERVED.contains(c) && !c.is_whitespace() && c != '/' => {}
        _ => return false,
    }
    chars.all(|c| !RESERVED.contains(c) && !c.is_whitespace())
}

const RESERVED: &str = "+-*[](),=:{}#";

pub fn parse_blocks(text: &str) -> Parsed<Block> {
    let mut stack: Vec<(String, Line, Block)> = Vec::new();
    let mut root = Block::default();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let column = content.chars().take_while(|c| c.is_whitespace()).count() + 1;
        let line = Line {
            text: trimmed.to_string(),
            line: line_no,
            column,
        };
        if trimmed == "}" {
            let Some((name, at, body)) = stack.pop() else {
                return Err(InputError::at(line_no, column, "unmatched '}'"));
            };
            let parent = stack.last_mut().map(|s| &mut s.2).unwrap_or(&mut root);
            parent.entries.push(Entry::Block { name, at, body });
            continue;
        }
        if let Some(head) = trimmed.strip_suffix('{') {
            let name = head.trim();
            if !is_name(name) {
                return Err(InputError::at(line_no, column, format!("invalid block name '{name}'")));
            }
            stack.push((
                name.to_string(),
                line,
                Block {
                    entries: Vec::new(),
                    line: line_no,
                },
            ));
            continue;
        }
        if let Some(pos) = trimmed.find(['{', '}']) {
            return Err(InputError::at(
                line_no,
                column + trimmed[..pos].chars().count(),
                "braces must end a line or stand alone",
            ));
        }
        let parent = stack.last_mut().map(|s| &mut s.2).unwrap_or(&mut root);
        parent.entries.push(Entry::Line(line));
    }
    if let Some((name, at, _)) = stack.pop() {
        return Err(InputError::at(at.line, at.column, format!("block '{name}' is never closed")));
    }
    Ok(root)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Name(String),
    Number(Scalar),
    Sym(char),
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub fn tokenize(l: &Line) -> Parsed<Vec<Token>> {
    tokenize_at(&l.text, l.line, l.column)
}

pub fn tokenize_at(text: &str, line: usize, column: usize) -> Parsed<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = column + i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if RESERVED.contains(c) {
            out.push(Token {
                tok: Tok::Sym(c),
                line,
                column: col,
            });
            i += 1;
            continue;
        }
        let start = i;
        while i < chars.len() && !chars[i].is_whitespace() && !RESERVED.contains(chars[i]) {
            i += 1;
        }
        let word: String = chars[start..i].iter().collect();
        if c.is_ascii_digit() || c == '/' {
            let value = parse_scalar(&word).ok_or_else(|| InputError::at(line, col, format!("malformed number '{word}'")))?;
            out.push(Token {
                tok: Tok::Number(value),
                line,
                column: col,
            });
        } else {
            out.push(Token {
                tok: Tok::Name(word),
                line,
                column: col,
            });
        }
    }
    Ok(out)
}

/// Cursor over the tokens of one line.
pub struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
    line: &'a Line,
}

impl<'a> Cursor<'a> {
    pub fn new(toks: &'a [Token], line: &'a Line) -> Self {
        Cursor { toks, pos: 0, line }
    }

    pub fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    pub fn next(&mut self) -> Option<&'a Token> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    pub fn done(&self) -> bool {
        self.pos >= self.toks.len()
    }

    /// Error located at the current token, or just past the end of the line.
    pub fn error(&self, message: impl Into<String>) -> InputError {
        match self.toks.get(self.pos) {
            Some(t) => InputError::at(t.line, t.column, message),
            None => InputError::at(self.line.line, self.line.column + self.line.text.chars().count(), message),
        }
    }

    pub fn expect_sym(&mut self, c: char) -> Parsed<()> {
        match self.peek() {
            Some(Tok::Sym(s)) if *s == c => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.error(format!("expected '{c}'"))),
        }
    }

    pub fn eat_sym(&mut self, c: char) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(s)) if *s == c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn name(&mut self) -> Parsed<(&'a str, usize, usize)> {
        match self.toks.get(self.pos) {
            Some(Token {
                tok: Tok::Name(n),
                line,
                column,
            }) => {
                self.pos += 1;
                Ok((n.as_str(), *line, *column))
            }
            _ => Err(self.error("expected a name")),
        }
    }

    pub fn end(&self) -> Parsed<()> {
        if self.done() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }
}
