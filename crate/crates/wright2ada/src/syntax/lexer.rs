//! Lexer for the Wright concrete syntax.
//!
//! Identifiers follow the terminal rule letter `(letter | digit | '_' | '.')*`,
//! so a dotted event name like `client1.port_Client` is a single token. The
//! leading `_` of a signalled event and the leading `-` of an internal
//! traitement are separate symbol tokens.

use super::{SyntaxError, Token, TokenKind, KEYWORDS};
use crate::diag::SourceSpan;

pub fn tokenize(text: &str) -> Result<Vec<Token>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0usize;
    let mut line = 1u32;
    let mut col = 1u32;

    while i < chars.len() {
        let c = chars[i];
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            ' ' | '\t' | '\r' => {
                i += 1;
                col += 1;
            }
            'a'..='z' | 'A'..='Z' => {
                let start_col = col;
                let mut end = i + 1;
                while end < chars.len() && is_ident_continue(chars[end]) {
                    end += 1;
                }
                let text: String = chars[i..end].iter().collect();
                let len = (end - i) as u32;
                let kind = if KEYWORDS.contains(&text.as_str()) {
                    TokenKind::Keyword
                } else {
                    TokenKind::Identifier
                };
                tokens.push(Token {
                    kind,
                    text,
                    span: SourceSpan::new(line, start_col, len),
                });
                col += len;
                i = end;
            }
            '-' => {
                if i + 1 < chars.len() && chars[i + 1] == '>' {
                    tokens.push(symbol("->", line, col));
                    i += 2;
                    col += 2;
                } else {
                    tokens.push(symbol("-", line, col));
                    i += 1;
                    col += 1;
                }
            }
            '[' => {
                if i + 1 < chars.len() && chars[i + 1] == ']' {
                    tokens.push(symbol("[]", line, col));
                    i += 2;
                    col += 2;
                } else {
                    return Err(stray(line, col, c));
                }
            }
            '|' => {
                if i + 2 < chars.len() && chars[i + 1] == '~' && chars[i + 2] == '|' {
                    tokens.push(symbol("|~|", line, col));
                    i += 3;
                    col += 3;
                } else {
                    return Err(stray(line, col, c));
                }
            }
            '=' | ':' | '_' | '?' | '!' | '(' | ')' | '§' => {
                tokens.push(symbol(&c.to_string(), line, col));
                i += 1;
                col += 1;
            }
            _ => return Err(stray(line, col, c)),
        }
    }
    Ok(tokens)
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '.'
}

fn symbol(text: &str, line: u32, col: u32) -> Token {
    Token {
        kind: TokenKind::Symbol,
        text: text.to_owned(),
        span: SourceSpan::new(line, col, text.chars().count() as u32),
    }
}

fn stray(line: u32, col: u32, c: char) -> SyntaxError {
    SyntaxError {
        message: format!("unexpected character '{c}'"),
        span: SourceSpan::new(line, col, 1),
    }
}
