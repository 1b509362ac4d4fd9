use super::ParseDiagnostic;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    IriRef(String),
    PName {
        prefix: String,
        local: String,
    },
    Blank(String),
    Var(String),
    Str(String),
    Integer(String),
    /// Bare word: keywords, `a`, `true`/`false`.
    Word(String),
    /// `@prefix`, `@base`, or a language tag.
    AtWord(String),
    Punct(&'static str),
    Eof,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

impl Token {
    pub fn is_punct(&self, p: &str) -> bool {
        matches!(&self.tok, Tok::Punct(q) if *q == p)
    }

    pub fn is_word(&self, w: &str) -> bool {
        matches!(&self.tok, Tok::Word(x) if x.eq_ignore_ascii_case(w))
    }

    pub fn describe(&self) -> String {
        match &self.tok {
            Tok::IriRef(i) => format!("<{i}>"),
            Tok::PName { prefix, local } => format!("{prefix}:{local}"),
            Tok::Blank(b) => format!("_:{b}"),
            Tok::Var(v) => format!("?{v}"),
            Tok::Str(s) => format!("{s:?}"),
            Tok::Integer(i) => i.clone(),
            Tok::Word(w) => w.clone(),
            Tok::AtWord(w) => format!("@{w}"),
            Tok::Punct(p) => format!("'{p}'"),
            Tok::Eof => "end of input".to_string(),
        }
    }
}

const PUNCT: &[&str] = &[
    "||", "&&", "^^", "!=", "<=", ">=", ".", ";", ",", "{", "}", "(", ")", "[", "]", "=", "*", "+",
    "!", "/", "|", "^", "<", ">",
];

struct Lexer {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
}

impl Lexer {
    fn peek(&self, ahead: usize) -> Option<char> {
        self.chars.get(self.pos + ahead).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.pos).copied()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn error(&self, message: impl std::fmt::Display) -> ParseDiagnostic {
        ParseDiagnostic::new(self.line, self.column, message)
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek(0) {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.peek(0) {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let mut out = String::new();
        while let Some(c) = self.peek(0) {
            if !pred(c) {
                break;
            }
            out.push(c);
            self.bump();
        }
        out
    }

    /// Consumes name characters that may contain but not end with '.'.
    fn take_dotted(&mut self, pred: impl Fn(char) -> bool) -> String {
        let mut len = 0;
        let mut last_non_dot = 0;
        while let Some(c) = self.peek(len) {
            if !(pred(c) || c == '.') {
                break;
            }
            len += 1;
            if c != '.' {
                last_non_dot = len;
            }
        }
        let mut out = String::new();
        for _ in 0..last_non_dot {
            out.push(self.bump().expect("peeked"));
        }
        out
    }

    fn next_token(&mut self) -> Result<Token, ParseDiagnostic> {
        self.skip_trivia();
        let (line, column) = (self.line, self.column);
        let tok = match self.peek(0) {
            None => Tok::Eof,
            Some(c) => self.lex_one(c)?,
        };
        Ok(Token { tok, line, column })
    }

    fn lex_one(&mut self, c: char) -> Result<Tok, ParseDiagnostic> {
        match c {
            '<' if self.looks_like_iri() => self.lex_iri(),
            '"' | '\'' => self.lex_string(c),
            '?' | '$' => {
                self.bump();
                let name = self.take_while(is_name_char);
                if name.is_empty() {
                    return Err(self.error(format!("expected a variable name after '{c}'")));
                }
                Ok(Tok::Var(name))
            }
            '_' if self.peek(1) == Some(':') => {
                self.bump();
                self.bump();
                let label = self.take_dotted(|c| c.is_alphanumeric() || c == '_' || c == '-');
                if label.is_empty() {
                    return Err(self.error("expected a blank node label"));
                }
                Ok(Tok::Blank(label))
            }
            '@' => {
                self.bump();
                let word = self.take_while(|c| c.is_ascii_alphanumeric() || c == '-');
                if word.is_empty() {
                    return Err(self.error("expected a directive or language tag after '@'"));
                }
                Ok(Tok::AtWord(word))
            }
            c if c.is_ascii_digit()
                || (matches!(c, '+' | '-') && self.peek(1).is_some_and(|d| d.is_ascii_digit())) =>
            {
                self.lex_number()
            }
            c if c.is_alphabetic() || c == ':' || c == '_' => self.lex_name(),
            _ => {
                for p in PUNCT {
                    if p.chars()
                        .enumerate()
                        .all(|(i, pc)| self.peek(i) == Some(pc))
                    {
                        for _ in 0..p.chars().count() {
                            self.bump();
                        }
                        return Ok(Tok::Punct(p));
                    }
                }
                Err(self.error(format!("unexpected character {c:?}")))
            }
        }
    }

    fn looks_like_iri(&self) -> bool {
        let mut i = 1;
        while let Some(c) = self.peek(i) {
            if c == '>' {
                return true;
            }
            if c.is_whitespace() || c == '<' {
                return false;
            }
            i += 1;
        }
        false
    }

    fn lex_iri(&mut self) -> Result<Tok, ParseDiagnostic> {
        self.bump();
        let mut iri = String::new();
        loop {
            match self.peek(0) {
                Some('>') => {
                    self.bump();
                    return Ok(Tok::IriRef(iri));
                }
                Some(c @ ('"' | '{' | '}' | '|' | '^' | '`' | '\\')) => {
                    return Err(self.error(format!("character {c:?} is not allowed in an IRI")));
                }
                Some(c) => {
                    iri.push(c);
                    self.bump();
                }
                None => return Err(self.error("unterminated IRI")),
            }
        }
    }

    fn lex_string(&mut self, quote: char) -> Result<Tok, ParseDiagnostic> {
        if self.peek(1) == Some(quote) && self.peek(2) == Some(quote) {
            return Err(self.error("multiline (triple-quoted) strings are not supported"));
        }
        self.bump();
        let mut out = String::new();
        loop {
            match self.peek(0) {
                None | Some('\n') | Some('\r') => return Err(self.error("unterminated string")),
                Some(c) if c == quote => {
                    self.bump();
                    return Ok(Tok::Str(out));
                }
                Some('\\') => {
                    let esc_err = self.error("invalid escape sequence");
                    self.bump();
                    let c = self.bump().ok_or_else(|| esc_err.clone())?;
                    match c {
                        't' => out.push('\t'),
                        'b' => out.push('\u{8}'),
                        'n' => out.push('\n'),
                        'r' => out.push('\r'),
                        'f' => out.push('\u{c}'),
                        '"' => out.push('"'),
                        '\'' => out.push('\''),
                        '\\' => out.push('\\'),
                        'u' | 'U' => {
                            let width = if c == 'u' { 4 } else { 8 };
                            let mut hex = String::new();
                            for _ in 0..width {
                                hex.push(self.bump().ok_or_else(|| esc_err.clone())?);
                            }
                            let ch = u32::from_str_radix(&hex, 16)
                                .ok()
                                .and_then(char::from_u32)
                                .ok_or(esc_err)?;
                            out.push(ch);
                        }
                        _ => return Err(esc_err),
                    }
                }
                Some(c) => {
                    out.push(c);
                    self.bump();
                }
            }
        }
    }

    fn lex_number(&mut self) -> Result<Tok, ParseDiagnostic> {
        let mut text = String::new();
        if let Some(sign @ ('+' | '-')) = self.peek(0) {
            text.push(sign);
            self.bump();
        }
        text.push_str(&self.take_while(|c| c.is_ascii_digit()));
        let decimal = self.peek(0) == Some('.') && self.peek(1).is_some_and(|c| c.is_ascii_digit());
        if decimal || matches!(self.peek(0), Some('e' | 'E')) {
            return Err(self.error("decimal and double literals are not supported"));
        }
        Ok(Tok::Integer(text))
    }

    fn lex_name(&mut self) -> Result<Tok, ParseDiagnostic> {
        let prefix = self.take_dotted(|c| c.is_alphanumeric() || c == '_' || c == '-');
        if self.peek(0) != Some(':') {
            return Ok(Tok::Word(prefix));
        }
        self.bump();
        let local = self.take_dotted(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | ':' | '%'));
        Ok(Tok::PName { prefix, local })
    }
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

/// Splits `text` into tokens, ending with a single [`Tok::Eof`].
pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>, ParseDiagnostic> {
    let mut lexer = Lexer {
        chars: text.chars().collect(),
        pos: 0,
        line: 1,
        column: 1,
    };
    let mut out = Vec::new();
    loop {
        let token = lexer.next_token()?;
        let done = token.tok == Tok::Eof;
        out.push(token);
        if done {
            return Ok(out);
        }
    }
}
