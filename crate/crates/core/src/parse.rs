//! Parsers for the presentation, word-list, and word-table file formats.
//!
//! Presentation grammar:
//!
//! ```text
//! file     := '<' names '|' relators '>'
//! names    := ident (',' ident)* | ε
//! relators := word (',' word)* | ε
//! word     := factor+            (optional '*' between factors)
//! factor   := atom ('^' signed_int)?
//! atom     := ident | '(' word ')'
//! ident    := [A-Za-z][A-Za-z0-9_]*
//! ```
//!
//! Word-list files carry one word per line; word-table files carry one
//! `name = word` definition per line, where later lines may use earlier
//! names. `#` starts a comment in every format.

use std::fmt;

use thiserror::Error;

use crate::presentation::{Presentation, WordTable};
use crate::word::Word;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{line}:{col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownName(String),
    Duplicate(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(msg) => write!(f, "{msg}"),
            ParseErrorKind::UnknownName(name) => write!(f, "unknown name `{name}`"),
            ParseErrorKind::Duplicate(name) => write!(f, "duplicate definition of `{name}`"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Lt,
    Gt,
    Bar,
    Comma,
    LParen,
    RParen,
    Caret,
    Star,
    Eq,
    Ident(String),
    Int(i64),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err(line: usize, col: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, col, kind }
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
    err(line, col, ParseErrorKind::Syntax(msg.into()))
}

/// Tokenizes `text` starting at the given 1-based line number (so the
/// line-based formats report positions within the whole file).
fn lex(text: &str, start_line: usize) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut line = start_line;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                bump(&mut chars);
            }
            continue;
        }
        let tok = match c {
            '<' => {
                bump(&mut chars);
                Tok::Lt
            }
            '>' => {
                bump(&mut chars);
                Tok::Gt
            }
            '|' => {
                bump(&mut chars);
                Tok::Bar
            }
            ',' => {
                bump(&mut chars);
                Tok::Comma
            }
            '(' => {
                bump(&mut chars);
                Tok::LParen
            }
            ')' => {
                bump(&mut chars);
                Tok::RParen
            }
            '^' => {
                bump(&mut chars);
                Tok::Caret
            }
            '*' => {
                bump(&mut chars);
                Tok::Star
            }
            '=' => {
                bump(&mut chars);
                Tok::Eq
            }
            c if c.is_ascii_alphabetic() => {
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                Tok::Ident(name)
            }
            c if c.is_ascii_digit() || c == '-' => {
                let mut digits = String::new();
                digits.push(bump(&mut chars));
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        digits.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                let n: i64 = digits
                    .parse()
                    .map_err(|_| syntax(tline, tcol, format!("bad integer `{digits}`")))?;
                Tok::Int(n)
            }
            other => return Err(syntax(tline, tcol, format!("unexpected character `{other}`"))),
        };
        out.push(Token {
            tok,
            line: tline,
            col: tcol,
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    resolve: &'a dyn Fn(&str) -> Option<Word>,
}

impl<'a> Parser<'a> {
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

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Token, ParseError> {
        let t = self.next();
        if t.tok == tok {
            Ok(t)
        } else {
            Err(syntax(t.line, t.col, format!("expected {what}")))
        }
    }

    fn at_word_start(&self) -> bool {
        matches!(self.peek().tok, Tok::Ident(_) | Tok::LParen)
    }

    /// word := factor+ with optional `*` separators.
    fn word(&mut self) -> Result<Word, ParseError> {
        let t = self.peek().clone();
        if !self.at_word_start() {
            return Err(syntax(t.line, t.col, "expected a word"));
        }
        let mut acc = self.factor()?;
        loop {
            if self.peek().tok == Tok::Star {
                self.next();
                if !self.at_word_start() {
                    let t = self.peek().clone();
                    return Err(syntax(t.line, t.col, "expected a factor after `*`"));
                }
            }
            if !self.at_word_start() {
                break;
            }
            let f = self.factor()?;
            acc = acc.concat(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Word, ParseError> {
        let base = self.atom()?;
        if self.peek().tok == Tok::Caret {
            self.next();
            let t = self.next();
            match t.tok {
                Tok::Int(n) => Ok(base.pow(n)),
                _ => Err(syntax(t.line, t.col, "expected an integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Word, ParseError> {
        let t = self.next();
        match t.tok {
            Tok::Ident(name) => (self.resolve)(&name)
                .ok_or_else(|| err(t.line, t.col, ParseErrorKind::UnknownName(name))),
            Tok::LParen => {
                let w = self.word()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(w)
            }
            _ => Err(syntax(t.line, t.col, "expected a generator or `(`")),
        }
    }
}

/// Parses a presentation file `< names | relators >`.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let tokens = lex(text, 1)?;
    // First pass: collect generator names so words can resolve against them.
    let mut names: Vec<String> = Vec::new();
    {
        let mut pos = 0usize;
        let t = &tokens[pos];
        if t.tok != Tok::Lt {
            return Err(syntax(t.line, t.col, "expected `<`"));
        }
        pos += 1;
        loop {
            match &tokens[pos].tok {
                Tok::Bar => break,
                Tok::Ident(name) => {
                    if names.contains(name) {
                        return Err(err(
                            tokens[pos].line,
                            tokens[pos].col,
                            ParseErrorKind::Duplicate(name.clone()),
                        ));
                    }
                    names.push(name.clone());
                    pos += 1;
                    match &tokens[pos].tok {
                        Tok::Comma => pos += 1,
                        Tok::Bar => break,
                        _ => {
                            return Err(syntax(
                                tokens[pos].line,
                                tokens[pos].col,
                                "expected `,` or `|`",
                            ))
                        }
                    }
                }
                _ => {
                    return Err(syntax(
                        tokens[pos].line,
                        tokens[pos].col,
                        "expected a generator name or `|`",
                    ))
                }
            }
        }
    }
    let names_ref = &names;
    let resolve = move |ident: &str| -> Option<Word> {
        names_ref
            .iter()
            .position(|n| n == ident)
            .map(Word::generator)
    };
    let mut parser = Parser {
        tokens,
        pos: 0,
        resolve: &resolve,
    };
    parser.expect(Tok::Lt, "`<`")?;
    // Skip the already-validated name list.
    while parser.peek().tok != Tok::Bar {
        parser.next();
    }
    parser.expect(Tok::Bar, "`|`")?;
    let mut relators = Vec::new();
    if parser.at_word_start() {
        relators.push(parser.word()?);
        while parser.peek().tok == Tok::Comma {
            parser.next();
            relators.push(parser.word()?);
        }
    }
    parser.expect(Tok::Gt, "`>`")?;
    let t = parser.peek().clone();
    if t.tok != Tok::Eof {
        return Err(syntax(t.line, t.col, "trailing input after `>`"));
    }
    Presentation::new(names, relators).map_err(|e| syntax(1, 1, e.to_string()))
}

fn line_resolver<'a>(
    p: &'a Presentation,
    table: Option<&'a WordTable>,
) -> impl Fn(&str) -> Option<Word> + 'a {
    move |ident: &str| {
        if let Some(i) = p.generator_index(ident) {
            return Some(Word::generator(i));
        }
        table.and_then(|t| t.lookup(ident).cloned())
    }
}

/// Parses a single word over `p`'s generators plus the names of `table`.
pub fn parse_word(
    text: &str,
    p: &Presentation,
    table: Option<&WordTable>,
) -> Result<Word, ParseError> {
    parse_word_at(text, 1, p, table)
}

fn parse_word_at(
    text: &str,
    start_line: usize,
    p: &Presentation,
    table: Option<&WordTable>,
) -> Result<Word, ParseError> {
    let tokens = lex(text, start_line)?;
    let resolve = line_resolver(p, table);
    let mut parser = Parser {
        tokens,
        pos: 0,
        resolve: &resolve,
    };
    let w = parser.word()?;
    let t = parser.peek().clone();
    if t.tok != Tok::Eof {
        return Err(syntax(t.line, t.col, "trailing input after word"));
    }
    Ok(w)
}

/// Parses a word-list file: one word per line, `#` comments, blank lines
/// ignored. Words may reference names defined in `table`.
pub fn parse_word_list(
    text: &str,
    p: &Presentation,
    table: Option<&WordTable>,
) -> Result<Vec<Word>, ParseError> {
    let mut words = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        words.push(parse_word_at(line, i + 1, p, table)?);
    }
    Ok(words)
}

/// Parses a word-table file (`name = word` per line) into `table`.
/// Later lines may use names defined on earlier lines or already in `table`.
pub fn parse_word_table(
    text: &str,
    p: &Presentation,
    table: &mut WordTable,
) -> Result<(), ParseError> {
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let tokens = lex(line, line_no)?;
        let (name, name_tok) = match &tokens[0] {
            Token {
                tok: Tok::Ident(name),
                ..
            } => (name.clone(), tokens[0].clone()),
            t => return Err(syntax(t.line, t.col, "expected `name = word`")),
        };
        if tokens[1].tok != Tok::Eq {
            return Err(syntax(
                tokens[1].line,
                tokens[1].col,
                "expected `=` after the name",
            ));
        }
        let word = {
            let resolve = line_resolver(p, Some(table));
            let mut parser = Parser {
                tokens: tokens[2..].to_vec(),
                pos: 0,
                resolve: &resolve,
            };
            let word = parser.word()?;
            let t = parser.peek().clone();
            if t.tok != Tok::Eof {
                return Err(syntax(t.line, t.col, "trailing input after definition"));
            }
            word
        };
        table.define(&name, word).map_err(|e| match e {
            crate::presentation::WordTableError::AlreadyDefined(n) => {
                err(name_tok.line, name_tok.col, ParseErrorKind::Duplicate(n))
            }
            other => syntax(name_tok.line, name_tok.col, other.to_string()),
        })?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Letter;

    #[test]
    fn parses_free_group() {
        let p = parse_presentation("< a | >").unwrap();
        assert_eq!(p.n_generators(), 1);
        assert_eq!(p.relators().len(), 0);
    }

    #[test]
    fn parses_cyclic_group_with_power_expansion() {
        let p = parse_presentation("< z | z^7 >").unwrap();
        assert_eq!(p.relators().len(), 1);
        assert_eq!(p.relators()[0].len(), 7);
        assert_eq!(p.relators()[0], Word::generator(0).pow(7));
    }

    #[test]
    fn parses_parenthesized_subword_powers() {
        let p = parse_presentation("< z, b | (b^2 z^-1)^3 >").unwrap();
        assert_eq!(p.relators()[0].len(), 9);
    }

    #[test]
    fn zero_exponent_relator_is_dropped() {
        let p = parse_presentation("< a, b | (a b)^0, a^2 >").unwrap();
        assert_eq!(p.relators().len(), 1);
    }

    #[test]
    fn star_concatenation_is_accepted() {
        let p = parse_presentation("< a, b | a*b*a^-1*b^-1 >").unwrap();
        assert_eq!(p.relators()[0].len(), 4);
    }

    #[test]
    fn reports_line_and_column() {
        let e = parse_presentation("< a |\n  a^2,\n  q^3 >").unwrap_err();
        assert_eq!((e.line, e.col), (3, 3));
        assert_eq!(e.kind, ParseErrorKind::UnknownName("q".into()));
    }

    #[test]
    fn rejects_trailing_garbage() {
        assert!(parse_presentation("< a | a^2 > junk").is_err());
    }

    #[test]
    fn rejects_duplicate_generators() {
        let e = parse_presentation("< a, a | >").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Duplicate("a".into()));
    }

    #[test]
    fn comments_are_ignored() {
        let p = parse_presentation("# header\n< z | # mid\n z^3 >").unwrap();
        assert_eq!(p.relators()[0].len(), 3);
    }

    #[test]
    fn word_list_with_table_names() {
        let p = Presentation::free(&["z", "b"]);
        let mut t = WordTable::new(&p);
        parse_word_table("g1 = b^3\ng2 = z g1 z^-1", &p, &mut t).unwrap();
        assert_eq!(t.expand("g2").unwrap().len(), 5);
        let words = parse_word_list("# subgroup\ng1 g2^-1\nz\n", &p, Some(&t)).unwrap();
        assert_eq!(words.len(), 2);
        assert_eq!(words[1], Word::generator(0));
    }

    #[test]
    fn word_table_rejects_forward_reference() {
        let p = Presentation::free(&["a"]);
        let mut t = WordTable::new(&p);
        let e = parse_word_table("x = y a\ny = a^2", &p, &mut t).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownName("y".into()));
        assert_eq!(e.line, 1);
    }

    #[test]
    fn word_table_duplicate_definition() {
        let p = Presentation::free(&["a"]);
        let mut t = WordTable::new(&p);
        let e = parse_word_table("x = a\nx = a^2", &p, &mut t).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Duplicate("x".into()));
        assert_eq!(e.line, 2);
    }

    #[test]
    fn nested_parentheses_and_inverses() {
        let p = Presentation::free(&["a", "b"]);
        let w = parse_word("((a b^-1)^2 a)^-1", &p, None).unwrap();
        let ab1 = Word::from_letters([Letter::gen(0), Letter::new(1, true)]);
        let expected = ab1.pow(2).concat(&Word::generator(0)).inverse();
        assert_eq!(w, expected);
    }
}
