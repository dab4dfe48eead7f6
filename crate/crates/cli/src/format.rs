//! The line-oriented algebra file format.
//!
//! ```text
//! # comment
//! algebra goedel-2
//! size 3
//! signature meet/2 join/2 mul/2 imp/2 bot/0 top/0
//! names 0 1/2 1
//! class BL
//! note free text
//! table meet
//! 0 0 0
//! 0 1 1
//! 0 1 2
//! ...
//! tau 0 2 2
//! ```
//!
//! Tables follow the signature order. A nullary table is one entry, a unary
//! table one row, and a table of arity `k ≥ 2` has `n^(k-1)` rows of `n`
//! entries in row-major order.

use std::fmt;

use smorph_core::residuated::AlgebraClass;
use smorph_core::{FiniteAlgebra, Signature, StateMorphismAlgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeclaredClass {
    Class(AlgebraClass),
    Generic,
}

impl DeclaredClass {
    pub fn parse(s: &str) -> Option<DeclaredClass> {
        if s == "generic" {
            return Some(DeclaredClass::Generic);
        }
        AlgebraClass::parse(s).map(DeclaredClass::Class)
    }

    pub fn class(self) -> Option<AlgebraClass> {
        match self {
            DeclaredClass::Class(c) => Some(c),
            DeclaredClass::Generic => None,
        }
    }
}

impl fmt::Display for DeclaredClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeclaredClass::Class(c) => write!(f, "{c}"),
            DeclaredClass::Generic => f.write_str("generic"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDocument {
    pub name: String,
    pub algebra: FiniteAlgebra,
    pub names: Option<Vec<String>>,
    pub tau: Option<Vec<usize>>,
    pub class: Option<DeclaredClass>,
    pub notes: Vec<String>,
}

impl AlgebraDocument {
    pub fn new(name: impl Into<String>, algebra: FiniteAlgebra) -> Self {
        AlgebraDocument {
            name: name.into(),
            algebra,
            names: None,
            tau: None,
            class: None,
            notes: Vec::new(),
        }
    }

    pub fn with_class(mut self, class: AlgebraClass) -> Self {
        self.class = Some(DeclaredClass::Class(class));
        self
    }

    pub fn with_tau(mut self, tau: Vec<usize>) -> Self {
        self.tau = Some(tau);
        self
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        self.names = Some(names);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// The declared class, if it is one of the residuated classes.
    pub fn declared(&self) -> Option<AlgebraClass> {
        self.class.and_then(DeclaredClass::class)
    }

    /// Display label of an element.
    pub fn label(&self, x: usize) -> String {
        match &self.names {
            Some(names) => names[x].clone(),
            None => x.to_string(),
        }
    }

    /// The state-morphism algebra, when a tau row is present and is an
    /// idempotent endomorphism.
    pub fn state_morphism(&self) -> Option<smorph_core::Result<StateMorphismAlgebra>> {
        self.tau
            .as_ref()
            .map(|t| StateMorphismAlgebra::new(self.algebra.clone(), t.clone()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Copy)]
struct Token<'a> {
    line: usize,
    column: usize,
    text: &'a str,
}

impl Token<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }
}

/// Splits a line into whitespace-separated tokens with 1-based columns.
fn tokens(line_no: usize, line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    let mut col = 0;
    let mut start_col = 0;
    for (i, c) in line.char_indices() {
        col += 1;
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    line: line_no,
                    column: start_col,
                    text: &line[s..i],
                });
            }
        } else if start.is_none() {
            start = Some(i);
            start_col = col;
        }
    }
    if let Some(s) = start {
        out.push(Token {
            line: line_no,
            column: start_col,
            text: &line[s..],
        });
    }
    out
}

fn number(tok: &Token<'_>) -> Result<usize, ParseError> {
    tok.text
        .parse()
        .map_err(|_| tok.error(format!("expected a number, found `{}`", tok.text)))
}

fn element(tok: &Token<'_>, size: usize) -> Result<usize, ParseError> {
    let v = number(tok)?;
    if v >= size {
        return Err(tok.error(format!("entry out of range: {v} with size {size}")));
    }
    Ok(v)
}

struct Lines<'a> {
    lines: Vec<(usize, &'a str, Vec<Token<'a>>)>,
    pos: usize,
    last_line: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let mut lines = Vec::new();
        let mut last_line = 0;
        for (i, raw) in text.lines().enumerate() {
            last_line = i + 1;
            let content = raw.split('#').next().unwrap_or("");
            let toks = tokens(i + 1, content);
            if !toks.is_empty() {
                lines.push((i + 1, raw, toks));
            }
        }
        Lines {
            lines,
            pos: 0,
            last_line,
        }
    }

    fn peek(&self) -> Option<&(usize, &'a str, Vec<Token<'a>>)> {
        self.lines.get(self.pos)
    }

    fn next(&mut self) -> Option<(usize, &'a str, Vec<Token<'a>>)> {
        let l = self.lines.get(self.pos).cloned();
        self.pos += 1;
        l
    }

    fn eof(&self, message: &str) -> ParseError {
        ParseError {
            line: self.last_line + 1,
            column: 1,
            message: message.to_string(),
        }
    }
}

/// Text after the keyword, untouched.
fn rest_of_line<'a>(raw: &'a str, keyword: &Token<'_>) -> &'a str {
    let content = raw.split('#').next().unwrap_or("");
    let start = content
        .char_indices()
        .nth(keyword.column - 1 + keyword.text.chars().count())
        .map_or(content.len(), |(i, _)| i);
    content[start..].trim()
}

pub fn parse_algebra_file(text: &str) -> Result<AlgebraDocument, ParseError> {
    let mut lines = Lines::new(text);
    let mut name: Option<String> = None;
    let mut size: Option<usize> = None;
    let mut signature: Option<Signature> = None;
    let mut names: Option<Vec<String>> = None;
    let mut tau: Option<Vec<usize>> = None;
    let mut class: Option<DeclaredClass> = None;
    let mut notes = Vec::new();
    let mut tables: Vec<Vec<usize>> = Vec::new();

    while let Some((_, raw, toks)) = lines.next() {
        let key = toks[0];
        let args = &toks[1..];
        let need_size = |size: Option<usize>| size.ok_or_else(|| key.error("`size` must come first"));
        match key.text {
            "algebra" => {
                if name.is_some() {
                    return Err(key.error("duplicate `algebra` line"));
                }
                if args.is_empty() {
                    return Err(key.error("missing algebra name"));
                }
                name = Some(rest_of_line(raw, &key).to_string());
            }
            "size" => {
                if size.is_some() {
                    return Err(key.error("duplicate `size` line"));
                }
                let [tok] = args else {
                    return Err(key.error("`size` takes one number"));
                };
                let n = number(tok)?;
                if n == 0 {
                    return Err(tok.error("size must be positive"));
                }
                size = Some(n);
            }
            "signature" => {
                if signature.is_some() {
                    return Err(key.error("duplicate `signature` line"));
                }
                let mut syms: Vec<(String, usize)> = Vec::new();
                for tok in args {
                    let (sym, arity) = tok
                        .text
                        .rsplit_once('/')
                        .ok_or_else(|| tok.error("expected `symbol/arity`"))?;
                    if sym.is_empty() {
                        return Err(tok.error("empty symbol name"));
                    }
                    let arity: usize = arity
                        .parse()
                        .map_err(|_| tok.error(format!("bad arity in `{}`", tok.text)))?;
                    if syms.iter().any(|(s, _)| s == sym) {
                        return Err(tok.error(format!("duplicate symbol `{sym}`")));
                    }
                    syms.push((sym.to_string(), arity));
                }
                signature = Some(Signature::new(syms).map_err(|e| key.error(e.to_string()))?);
            }
            "names" => {
                let n = need_size(size)?;
                if names.is_some() {
                    return Err(key.error("duplicate `names` line"));
                }
                if args.len() != n {
                    return Err(key.error(format!("expected {n} names, found {}", args.len())));
                }
                let list: Vec<String> = args.iter().map(|t| t.text.to_string()).collect();
                for (i, t) in args.iter().enumerate() {
                    if list[..i].contains(&list[i]) {
                        return Err(t.error(format!("duplicate name `{}`", t.text)));
                    }
                }
                names = Some(list);
            }
            "class" => {
                let [tok] = args else {
                    return Err(key.error("`class` takes one of BL, MV, MTL, naBL, hoop, generic"));
                };
                if class.is_some() {
                    return Err(key.error("duplicate `class` line"));
                }
                class = Some(
                    DeclaredClass::parse(tok.text)
                        .ok_or_else(|| tok.error(format!("unknown class `{}`", tok.text)))?,
                );
            }
            "note" => notes.push(rest_of_line(raw, &key).to_string()),
            "tau" => {
                let n = need_size(size)?;
                if tau.is_some() {
                    return Err(key.error("duplicate `tau` line"));
                }
                if args.len() != n {
                    return Err(key.error(format!("expected {n} tau entries, found {}", args.len())));
                }
                tau = Some(args.iter().map(|t| element(t, n)).collect::<Result<_, _>>()?);
            }
            "table" => {
                let n = need_size(size)?;
                let sig = signature
                    .as_ref()
                    .ok_or_else(|| key.error("`signature` must come before tables"))?;
                let [sym] = args else {
                    return Err(key.error("`table` takes one symbol"));
                };
                let op = tables.len();
                if op >= sig.len() {
                    return Err(sym.error("more tables than symbols"));
                }
                if sym.text != sig.name(op) {
                    return Err(sym.error(format!("expected table `{}`, found `{}`", sig.name(op), sym.text)));
                }
                let arity = sig.arity(op);
                let (rows, width) = match arity {
                    0 => (1, 1),
                    _ => (n.pow(arity as u32 - 1), n),
                };
                let mut table = Vec::with_capacity(rows * width);
                for _ in 0..rows {
                    let Some((_, _, row)) = lines.next() else {
                        return Err(lines.eof(&format!("table `{}` ends early", sym.text)));
                    };
                    if row.len() != width {
                        return Err(row[0].error(format!("expected {width} entries, found {}", row.len())));
                    }
                    for t in &row {
                        table.push(element(t, n)?);
                    }
                }
                tables.push(table);
            }
            other => return Err(key.error(format!("unknown keyword `{other}`"))),
        }
    }

    let name = name.ok_or_else(|| lines.eof("missing `algebra` line"))?;
    let size = size.ok_or_else(|| lines.eof("missing `size` line"))?;
    let signature = signature.ok_or_else(|| lines.eof("missing `signature` line"))?;
    if tables.len() != signature.len() {
        return Err(lines.eof(&format!(
            "missing table `{}`",
            signature.name(tables.len())
        )));
    }
    debug_assert!(lines.peek().is_none());
    let algebra = FiniteAlgebra::new(signature, size, tables).map_err(|e| lines.eof(&e.to_string()))?;
    Ok(AlgebraDocument {
        name,
        algebra,
        names,
        tau,
        class,
        notes,
    })
}

fn join(items: impl IntoIterator<Item = usize>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn render(doc: &AlgebraDocument) -> String {
    let alg = &doc.algebra;
    let n = alg.size();
    let sig = alg.signature();
    let mut out = String::new();
    out.push_str(&format!("algebra {}\n", doc.name));
    out.push_str(&format!("size {n}\n"));
    let syms: Vec<String> = sig.symbols().iter().map(|s| format!("{}/{}", s.name, s.arity)).collect();
    out.push_str(&format!("signature {}\n", syms.join(" ")));
    if let Some(names) = &doc.names {
        out.push_str(&format!("names {}\n", names.join(" ")));
    }
    if let Some(class) = doc.class {
        out.push_str(&format!("class {class}\n"));
    }
    for note in &doc.notes {
        out.push_str(&format!("note {note}\n"));
    }
    for op in 0..sig.len() {
        out.push_str(&format!("table {}\n", sig.name(op)));
        let table = alg.table(op);
        let width = if sig.arity(op) == 0 { 1 } else { n };
        for row in table.chunks(width) {
            out.push_str(&join(row.iter().copied()));
            out.push('\n');
        }
    }
    if let Some(tau) = &doc.tau {
        out.push_str(&format!("tau {}\n", join(tau.iter().copied())));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const BOOL: &str = "\
# two elements
algebra bool
size 2
signature meet/2 join/2 mul/2 imp/2 bot/0 top/0
class MV
table meet
0 0
0 1
table join
0 1
1 1
table mul
0 0
0 1
table imp
1 1
0 1
table bot
0
table top
1
";

    #[test]
    fn parses_and_round_trips() {
        let doc = parse_algebra_file(BOOL).unwrap();
        assert_eq!(doc.algebra.size(), 2);
        assert_eq!(doc.algebra.signature().len(), 6);
        assert_eq!(doc.declared(), Some(AlgebraClass::Mv));
        assert_eq!(parse_algebra_file(&render(&doc)).unwrap(), doc);
    }

    #[test]
    fn out_of_range_entry_has_location() {
        let bad = BOOL.replace("table mul\n0 0\n", "table mul\n0 5\n");
        let err = parse_algebra_file(&bad).unwrap_err();
        assert!(err.message.contains("entry out of range"));
        assert_eq!((err.line, err.column), (13, 3));
    }

    #[test]
    fn structural_errors() {
        let short = BOOL.replace("table top\n1\n", "");
        assert!(parse_algebra_file(&short).unwrap_err().message.contains("missing table `top`"));
        let dup = BOOL.replace("signature meet/2", "signature meet/2 meet/1");
        assert!(parse_algebra_file(&dup).unwrap_err().message.contains("duplicate symbol"));
        let wide = BOOL.replace("table join\n0 1\n", "table join\n0 1 1\n");
        let err = parse_algebra_file(&wide).unwrap_err();
        assert_eq!(err.line, 10);
        assert!(err.message.contains("expected 2 entries"));
        assert!(parse_algebra_file("size 2\nbogus 1\n").unwrap_err().message.contains("unknown keyword"));
    }

    #[test]
    fn tau_and_names() {
        let text = format!("{BOOL}tau 0 1\n").replace("class MV\n", "class MV\nnames bot top\nnote identity tau\n");
        let doc = parse_algebra_file(&text).unwrap();
        assert_eq!(doc.tau.as_deref(), Some(&[0, 1][..]));
        assert_eq!(doc.label(1), "top");
        assert_eq!(doc.notes, vec!["identity tau".to_string()]);
        assert!(doc.state_morphism().unwrap().unwrap().is_faithful());
        assert_eq!(parse_algebra_file(&render(&doc)).unwrap(), doc);
    }
}
