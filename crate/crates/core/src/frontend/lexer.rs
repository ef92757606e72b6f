use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Pipe,
    Tilde,
    Dot,
    Colon,
    Arrow,
    Eq,
    Neq,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Neq => "`!=`".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '$'
}

/// Splits `text` into tokens. `%` starts a line comment and `/* */`
/// delimits a block comment when `tptp_comments` is set, otherwise `#`
/// starts a line comment. TPTP mode also reads `'quoted'` names, quotes
/// included. Positions are 1-based; `first_line` is the line
/// number of the first line of `text`.
pub(crate) fn tokenize(text: &str, first_line: usize, tptp_comments: bool) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, first_line, 1);
    while i < chars.len() {
        let c = chars[i];
        let start = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let line_comment = if tptp_comments { c == '%' } else { c == '#' };
        if line_comment {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if tptp_comments && c == '/' && chars.get(i + 1) == Some(&'*') {
            i += 2;
            col += 2;
            loop {
                match chars.get(i) {
                    None => return Err(ParseError::syntax(start.0, start.1, "unterminated comment")),
                    Some('*') if chars.get(i + 1) == Some(&'/') => {
                        i += 2;
                        col += 2;
                        break;
                    }
                    Some('\n') => {
                        i += 1;
                        line += 1;
                        col = 1;
                    }
                    Some(_) => {
                        i += 1;
                        col += 1;
                    }
                }
            }
            continue;
        }
        let (tok, len) = match c {
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '{' => (Tok::LBrace, 1),
            '}' => (Tok::RBrace, 1),
            ',' => (Tok::Comma, 1),
            '|' => (Tok::Pipe, 1),
            '~' => (Tok::Tilde, 1),
            '.' => (Tok::Dot, 1),
            ':' => (Tok::Colon, 1),
            '=' => (Tok::Eq, 1),
            '!' if chars.get(i + 1) == Some(&'=') => (Tok::Neq, 2),
            '-' if chars.get(i + 1) == Some(&'>') => (Tok::Arrow, 2),
            '\'' if tptp_comments => {
                let Some(end) = chars[i + 1..].iter().position(|c| *c == '\'' || *c == '\n') else {
                    return Err(ParseError::syntax(start.0, start.1, "unterminated quoted name"));
                };
                if chars[i + 1 + end] != '\'' {
                    return Err(ParseError::syntax(start.0, start.1, "unterminated quoted name"));
                }
                (Tok::Ident(chars[i..i + end + 2].iter().collect()), end + 2)
            }
            c if is_ident_char(c) => {
                let len = chars[i..].iter().take_while(|c| is_ident_char(**c)).count();
                (Tok::Ident(chars[i..i + len].iter().collect()), len)
            }
            c => {
                return Err(ParseError::syntax(
                    start.0,
                    start.1,
                    format!("unexpected character `{c}`"),
                ));
            }
        };
        out.push(Token {
            tok,
            line: start.0,
            column: start.1,
        });
        i += len;
        col += len;
    }
    Ok(out)
}
