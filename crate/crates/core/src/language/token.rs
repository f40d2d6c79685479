use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Word,
    /// A word starting with an uppercase letter.
    ProperWord,
    Punct,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    pub kind: TokenKind,
    /// Offset of the first character, counted in chars.
    pub position: usize,
}

impl Token {
    pub fn is_punct(&self, c: char) -> bool {
        self.kind == TokenKind::Punct && self.text.len() == c.len_utf8() && self.text.starts_with(c)
    }
}

const PUNCT: [char; 3] = ['.', '?', ','];

/// Splits on whitespace; `.`, `?` and `,` always become tokens of their own.
pub fn tokenize(text: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let mut word = String::new();
    let mut start = 0;
    let flush = |word: &mut String, start: usize, out: &mut Vec<Token>| {
        if word.is_empty() {
            return;
        }
        let kind = if word.chars().next().is_some_and(char::is_uppercase) { TokenKind::ProperWord } else { TokenKind::Word };
        out.push(Token { text: core::mem::take(word), kind, position: start });
    };
    for (pos, c) in text.chars().enumerate() {
        if c.is_whitespace() {
            flush(&mut word, start, &mut out);
        } else if PUNCT.contains(&c) {
            flush(&mut word, start, &mut out);
            out.push(Token { text: c.into(), kind: TokenKind::Punct, position: pos });
        } else {
            if word.is_empty() {
                start = pos;
            }
            word.push(c);
        }
    }
    flush(&mut word, start, &mut out);
    out
}
