use num::BigInt;

use super::ParseError;

#[derive(Clone, PartialEq, Debug)]
pub enum Tok {
    Int(BigInt),
    /// `p/q` written without spaces.
    Ratio(BigInt, BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number `{n}`"),
            Tok::Ratio(p, q) => format!("number `{p}/{q}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
    /// Byte offset just past the token.
    pub end: usize,
    pub start: usize,
}

pub fn tokenize(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut pos = 0usize;
    while pos < bytes.len() {
        let c = src[pos..].chars().next().expect("in bounds");
        if c == '\n' {
            pos += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_ascii_whitespace() {
            pos += 1;
            col += 1;
            continue;
        }
        let start = pos;
        let (l0, c0) = (line, col);
        let tok = if c.is_ascii_digit() {
            let num_end = scan_digits(bytes, pos);
            let p: BigInt = src[pos..num_end].parse().expect("digits");
            pos = num_end;
            if pos + 1 < bytes.len() && bytes[pos] == b'/' && bytes[pos + 1].is_ascii_digit() {
                let den_end = scan_digits(bytes, pos + 1);
                let q: BigInt = src[pos + 1..den_end].parse().expect("digits");
                if q == BigInt::from(0) {
                    return Err(ParseError::ZeroDenominator { line: l0, column: c0 });
                }
                pos = den_end;
                Tok::Ratio(p, q)
            } else {
                Tok::Int(p)
            }
        } else if c.is_ascii_alphabetic() {
            let mut end = pos;
            while end < bytes.len() && (bytes[end] as char).is_ascii_alphanumeric() {
                end += 1;
            }
            let s = src[pos..end].to_string();
            pos = end;
            Tok::Ident(s)
        } else {
            pos += c.len_utf8();
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                _ => {
                    let ch = src[start..].chars().next().unwrap_or('?');
                    return Err(ParseError::Syntax {
                        line: l0,
                        column: c0,
                        expected: vec!["an expression".into()],
                        found: format!("character `{ch}`"),
                    });
                }
            }
        };
        col += pos - start;
        out.push(Spanned { tok, line: l0, column: c0, end: pos, start });
    }
    out.push(Spanned { tok: Tok::Eof, line, column: col, end: pos, start: pos });
    Ok(out)
}

fn scan_digits(bytes: &[u8], mut pos: usize) -> usize {
    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
        pos += 1;
    }
    pos
}
