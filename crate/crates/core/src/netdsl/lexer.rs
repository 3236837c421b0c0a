use super::{ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Int(u64),
    Prime,
    Eq,
    Comma,
    Semi,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Not,
    And,
    Or,
    Xor,
    Iff,
    Arrow,
    Newline,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier '{s}'"),
            Tok::Int(v) => format!("integer {v}"),
            Tok::Prime => "'''".into(),
            Tok::Eq => "'='".into(),
            Tok::Comma => "','".into(),
            Tok::Semi => "';'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::LBrack => "'['".into(),
            Tok::RBrack => "']'".into(),
            Tok::Not => "'!'".into(),
            Tok::And => "'&'".into(),
            Tok::Or => "'|'".into(),
            Tok::Xor => "'^'".into(),
            Tok::Iff => "'<->'".into(),
            Tok::Arrow => "'->'".into(),
            Tok::Newline => "end of line".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

/// Splits source text into tokens. Newlines are significant except inside
/// parentheses, where expressions may wrap.
pub(crate) fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    for (lineno, line) in src.lines().enumerate() {
        let line_no = lineno + 1;
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            let push = |out: &mut Vec<Token>, tok| out.push(Token { tok, line: line_no, col });
            match c {
                '#' => break,
                c if c.is_whitespace() => {
                    i += 1;
                    continue;
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let start = i;
                    while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                        i += 1;
                    }
                    push(&mut out, Tok::Ident(chars[start..i].iter().collect()));
                    continue;
                }
                c if c.is_ascii_digit() => {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let text: String = chars[start..i].iter().collect();
                    let v = text.parse::<u64>().map_err(|_| {
                        ParseError::new(line_no, col, ParseErrorKind::Syntax(format!("integer literal {text} too large")))
                    })?;
                    push(&mut out, Tok::Int(v));
                    continue;
                }
                '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => {
                    push(&mut out, Tok::Iff);
                    i += 3;
                    continue;
                }
                '-' if chars.get(i + 1) == Some(&'>') => {
                    push(&mut out, Tok::Arrow);
                    i += 2;
                    continue;
                }
                '\'' => push(&mut out, Tok::Prime),
                '=' => push(&mut out, Tok::Eq),
                ',' => push(&mut out, Tok::Comma),
                ';' => push(&mut out, Tok::Semi),
                '(' => {
                    depth += 1;
                    push(&mut out, Tok::LParen)
                }
                ')' => {
                    depth = depth.saturating_sub(1);
                    push(&mut out, Tok::RParen)
                }
                '[' => push(&mut out, Tok::LBrack),
                ']' => push(&mut out, Tok::RBrack),
                '!' | '¬' => push(&mut out, Tok::Not),
                '&' | '∧' => push(&mut out, Tok::And),
                '|' | '∨' => push(&mut out, Tok::Or),
                '^' | '⊕' | '⊻' => push(&mut out, Tok::Xor),
                '↔' => push(&mut out, Tok::Iff),
                '→' => push(&mut out, Tok::Arrow),
                other => {
                    return Err(ParseError::new(
                        line_no,
                        col,
                        ParseErrorKind::Syntax(format!("unexpected character '{other}'")),
                    ))
                }
            }
            i += 1;
        }
        if depth == 0 {
            out.push(Token {
                tok: Tok::Newline,
                line: line_no,
                col: chars.len() + 1,
            });
        }
    }
    let last_line = src.lines().count().max(1);
    out.push(Token {
        tok: Tok::Eof,
        line: last_line,
        col: 1,
    });
    Ok(out)
}
