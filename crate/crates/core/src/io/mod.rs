//! Line-oriented text formats: categories, domains, maps, size scripts and
//! skeleton witnesses. Each format has a parser reporting [`SourceSpan`]s and
//! a canonical emitter; parsing the canonical text gives back the same value.

mod cat;
mod domain;
mod size;
mod witness;

use std::fmt;

use thiserror::Error;

use crate::domain::{is_token_char, ElementId, TAG_SEPARATOR};

pub use cat::{emit_category, emit_category_spec, parse_category};
pub use domain::{emit_domain, emit_map, emit_map_doc, parse_domain, parse_map, resolve_map, MapDoc, NamedDomain, ResolveError};
pub use size::{emit_size_script, parse_size_script};
pub use witness::{emit_witnesses, parse_witnesses, resolve_witnesses, WitnessDoc, Witnesses};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub file: String,
    /// 1-based.
    pub line: usize,
    /// 1-based.
    pub column: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{span}: {reason}")]
pub struct ParseError {
    pub span: SourceSpan,
    pub reason: String,
}

/// Any parsed file, selected by its first keyword.
#[derive(Debug, Clone)]
pub enum Document {
    Category(crate::category::CategorySpec),
    Domain(NamedDomain),
    Map(MapDoc),
    Size(crate::size::SizeScript),
    Witnesses(WitnessDoc),
}

pub fn parse(text: &str, file: &str) -> Result<Document, ParseError> {
    let lines = tokenize(text, file)?;
    let Some(first) = lines.first() else {
        return Err(ParseError {
            span: SourceSpan {
                file: file.to_string(),
                line: 1,
                column: 1,
            },
            reason: "empty file".to_string(),
        });
    };
    match first.tokens[0].text.as_str() {
        "category" => parse_category(text, file).map(Document::Category),
        "domain" => parse_domain(text, file).map(Document::Domain),
        "map" => parse_map(text, file).map(Document::Map),
        "let" | "inject" | "size" => parse_size_script(text, file).map(Document::Size),
        "witnesses" => parse_witnesses(text, file).map(Document::Witnesses),
        other => Err(first.error_at(0, format!("unknown file header `{other}`"))),
    }
}

/// Canonical text of a parsed document.
pub fn emit(doc: &Document) -> String {
    match doc {
        Document::Category(spec) => emit_category_spec(spec),
        Document::Domain(d) => emit_domain(d),
        Document::Map(m) => emit_map_doc(m),
        Document::Size(s) => emit_size_script(s),
        Document::Witnesses(w) => witness::emit_witness_doc(w),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Token {
    pub text: String,
    pub column: usize,
}

/// One non-empty line, comments removed.
#[derive(Debug, Clone)]
pub(crate) struct Line {
    pub file: String,
    pub number: usize,
    pub tokens: Vec<Token>,
}

const PUNCT: [&str; 8] = ["->", ":", "*", "=", "(", ")", ",", ";"];

pub(crate) fn tokenize(text: &str, file: &str) -> Result<Vec<Line>, ParseError> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let chars: Vec<(usize, char)> = content.char_indices().collect();
        let mut i = 0;
        while i < chars.len() {
            let (_, c) = chars[i];
            let column = i + 1;
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let rest: String = chars[i..].iter().map(|&(_, c)| c).collect();
            if let Some(p) = PUNCT.iter().find(|p| rest.starts_with(**p)) {
                tokens.push(Token {
                    text: p.to_string(),
                    column,
                });
                i += p.chars().count();
                continue;
            }
            if is_token_char(c) || c == TAG_SEPARATOR {
                let start = i;
                while i < chars.len() && (is_token_char(chars[i].1) || chars[i].1 == TAG_SEPARATOR) {
                    i += 1;
                }
                tokens.push(Token {
                    text: chars[start..i].iter().map(|&(_, c)| c).collect(),
                    column,
                });
                continue;
            }
            return Err(ParseError {
                span: SourceSpan {
                    file: file.to_string(),
                    line: n + 1,
                    column,
                },
                reason: format!("unexpected character `{c}`"),
            });
        }
        if !tokens.is_empty() {
            out.push(Line {
                file: file.to_string(),
                number: n + 1,
                tokens,
            });
        }
    }
    Ok(out)
}

impl Line {
    pub fn span(&self, token: usize) -> SourceSpan {
        let column = self
            .tokens
            .get(token)
            .map(|t| t.column)
            .unwrap_or_else(|| self.tokens.last().map(|t| t.column + t.text.chars().count()).unwrap_or(1));
        SourceSpan {
            file: self.file.clone(),
            line: self.number,
            column,
        }
    }

    pub fn error_at(&self, token: usize, reason: impl Into<String>) -> ParseError {
        ParseError {
            span: self.span(token),
            reason: reason.into(),
        }
    }

    pub fn keyword(&self) -> &str {
        &self.tokens[0].text
    }

    pub fn cursor(&self) -> Cursor<'_> {
        Cursor { line: self, pos: 0 }
    }
}

pub(crate) struct Cursor<'a> {
    pub line: &'a Line,
    pub pos: usize,
}

impl Cursor<'_> {
    pub fn peek(&self) -> Option<&str> {
        self.line.tokens.get(self.pos).map(|t| t.text.as_str())
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.line.tokens.len()
    }

    pub fn error(&self, reason: impl Into<String>) -> ParseError {
        self.line.error_at(self.pos, reason)
    }

    pub fn expect(&mut self, text: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if t == text => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.error(format!("expected `{text}`, found `{t}`"))),
            None => Err(self.error(format!("expected `{text}` at end of line"))),
        }
    }

    /// A user id: rejects punctuation and the reserved separator.
    pub fn id(&mut self) -> Result<ElementId, ParseError> {
        let Some(t) = self.peek() else {
            return Err(self.error("expected an id at end of line"));
        };
        if PUNCT.contains(&t) {
            return Err(self.error(format!("expected an id, found `{t}`")));
        }
        if t.contains(TAG_SEPARATOR) {
            return Err(self.error(format!("reserved character `{TAG_SEPARATOR}` in id `{t}`")));
        }
        let id = ElementId::new(t).map_err(|e| self.error(e.to_string()))?;
        self.pos += 1;
        Ok(id)
    }

    /// The id's position, for error reporting after the fact.
    pub fn id_with_pos(&mut self) -> Result<(ElementId, usize), ParseError> {
        let pos = self.pos;
        Ok((self.id()?, pos))
    }

    pub fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.error(format!("unexpected `{t}` at end of line"))),
        }
    }
}

/// Rejects a second header line of the same kind.
pub(crate) fn expect_header<'a>(lines: &'a [Line], keyword: &str, file: &str) -> Result<&'a Line, ParseError> {
    let first = lines.first().ok_or_else(|| ParseError {
        span: SourceSpan {
            file: file.to_string(),
            line: 1,
            column: 1,
        },
        reason: format!("expected `{keyword}` header"),
    })?;
    if first.keyword() != keyword {
        return Err(first.error_at(0, format!("expected `{keyword}` header, found `{}`", first.keyword())));
    }
    if let Some(dup) = lines[1..].iter().find(|l| l.keyword() == keyword) {
        return Err(dup.error_at(0, format!("duplicate `{keyword}` header")));
    }
    Ok(first)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_and_columns() {
        let lines = tokenize("  morph f : a -> b # note\n\n# only comment\ncompose f*g=h", "t").unwrap();
        assert_eq!(lines.len(), 2);
        let texts: Vec<&str> = lines[0].tokens.iter().map(|t| t.text.as_str()).collect();
        assert_eq!(texts, ["morph", "f", ":", "a", "->", "b"]);
        assert_eq!(lines[0].tokens[1].column, 9);
        assert_eq!(lines[1].number, 4);
        let texts: Vec<&str> = lines[1].tokens.iter().map(|t| t.text.as_str()).collect();
        assert_eq!(texts, ["compose", "f", "*", "g", "=", "h"]);
    }

    #[test]
    fn bad_characters_and_reserved_separator() {
        let e = tokenize("objects: a $b", "x.cat").unwrap_err();
        assert_eq!(e.to_string(), "x.cat:1:12: unexpected character `$`");
        let lines = tokenize("objects: a.b", "x").unwrap();
        let mut c = lines[0].cursor();
        c.pos = 2;
        assert!(c.id().unwrap_err().reason.contains("reserved character"));
    }

    #[test]
    fn dispatch_on_header() {
        assert!(matches!(parse("category c\nobjects: a\n", "f").unwrap(), Document::Category(_)));
        assert!(matches!(parse("# hi\ndomain d\nelements: a\n", "f").unwrap(), Document::Domain(_)));
        assert!(matches!(parse("let a = set\n", "f").unwrap(), Document::Size(_)));
        assert!(parse("frobnicate\n", "f").is_err());
        assert!(parse("", "f").is_err());
    }
}
