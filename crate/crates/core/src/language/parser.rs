//! Recursive-descent parser for the controlled grammar.
//!
//! ```text
//! statement   := [ "actually" "," ] core "."
//! core        := subject "is" det noun                 # InstanceIsA
//!              | ("a" | "an") noun "is" det noun       # ConceptIsA
//!              | subject "is" ["not"] adjective        # HasAttribute
//!              | subject ["only"] verb3 objlist        # Relation, affirmed
//!              | subject "does" "not" verbBase objlist # Relation, negated
//! subject     := ProperName | "the" noun | pronoun
//! objlist     := object { "and" object }
//! object      := det noun | ProperName
//! det         := "a" | "an" | "the"
//! question    := "what" "does" subject verbBase "?"
//!              | "who" verb3 object "?"
//!              | "is" subject det noun "?"
//!              | "is" subject adjective "?"
//!              | "does" subject verbBase object "?"
//! ```
//!
//! Every alternative is tried from the same start; exactly one must consume
//! the whole sentence. The sentence-initial word is case-folded and kept as
//! an ordinary word when it is a closed word or in the lexicon.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use thiserror::Error;

use super::ast::*;
use super::lexicon::{is_closed_word, Lexicon};
use super::token::{Token, TokenKind};
use crate::substrate::Polarity;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("cannot parse at offset {offset}{}", found.as_ref().map(|f| alloc::format!(" near `{f}`")).unwrap_or_default())]
    NoParse { offset: usize, found: Option<String> },
    #[error("ambiguous sentence ({count} readings)")]
    AmbiguousParse { count: usize },
}

impl ParseError {
    pub fn offset(&self) -> Option<usize> {
        match self {
            ParseError::NoParse { offset, .. } => Some(*offset),
            ParseError::AmbiguousParse { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Proper(String),
    Punct(char),
}

/// Index of the token where an alternative gave up.
type Fail = usize;
type Step<T> = Result<(T, usize), Fail>;

struct Parser<'a> {
    toks: Vec<Tok>,
    raw: &'a [Token],
    lex: &'a Lexicon,
}

fn fold_initial(t: &Token, lex: &Lexicon) -> Tok {
    let lower = t.text.to_lowercase();
    if is_closed_word(&lower) || lex.contains(&lower) {
        Tok::Word(lower)
    } else {
        Tok::Proper(t.text.clone())
    }
}

impl<'a> Parser<'a> {
    fn new(raw: &'a [Token], lex: &'a Lexicon) -> Self {
        let mut toks: Vec<Tok> = raw
            .iter()
            .map(|t| match t.kind {
                TokenKind::Punct => Tok::Punct(t.text.chars().next().unwrap_or('.')),
                TokenKind::ProperWord => Tok::Proper(t.text.clone()),
                TokenKind::Word => Tok::Word(t.text.clone()),
            })
            .collect();
        if let Some(first) = raw.first() {
            if first.kind == TokenKind::ProperWord {
                toks[0] = fold_initial(first, lex);
            }
        }
        let revision = matches!(toks.first(), Some(Tok::Word(w)) if w == "actually") && matches!(toks.get(1), Some(Tok::Punct(',')));
        if revision && raw.len() > 2 && raw[2].kind == TokenKind::ProperWord {
            toks[2] = fold_initial(&raw[2], lex);
        }
        Parser { toks, raw, lex }
    }

    fn offset_of(&self, i: usize) -> usize {
        match self.raw.get(i) {
            Some(t) => t.position,
            None => self.raw.last().map_or(0, |t| t.position + t.text.chars().count()),
        }
    }

    fn fail(&self, i: usize) -> ParseError {
        ParseError::NoParse { offset: self.offset_of(i), found: self.raw.get(i).map(|t| t.text.clone()) }
    }

    fn word(&self, i: usize) -> Option<&str> {
        match self.toks.get(i) {
            Some(Tok::Word(w)) => Some(w),
            _ => None,
        }
    }

    fn keyword(&self, i: usize, kw: &str) -> Result<usize, Fail> {
        if self.word(i) == Some(kw) {
            Ok(i + 1)
        } else {
            Err(i)
        }
    }

    fn punct(&self, i: usize, c: char) -> Result<usize, Fail> {
        if self.toks.get(i) == Some(&Tok::Punct(c)) {
            Ok(i + 1)
        } else {
            Err(i)
        }
    }

    fn noun(&self, i: usize) -> Step<String> {
        match self.word(i) {
            Some(w) if !is_closed_word(w) => Ok((w.to_string(), i + 1)),
            _ => Err(i),
        }
    }

    fn proper(&self, i: usize) -> Step<String> {
        match self.toks.get(i) {
            Some(Tok::Proper(n)) => Ok((n.clone(), i + 1)),
            _ => Err(i),
        }
    }

    fn det(&self, i: usize) -> Step<&'static str> {
        match self.word(i) {
            Some("a") => Ok(("a", i + 1)),
            Some("an") => Ok(("an", i + 1)),
            Some("the") => Ok(("the", i + 1)),
            _ => Err(i),
        }
    }

    fn adjective(&self, i: usize) -> Step<String> {
        match self.word(i) {
            Some(w) if self.lex.is_adjective(w) => Ok((w.to_string(), i + 1)),
            _ => Err(i),
        }
    }

    fn verb3(&self, i: usize) -> Step<String> {
        match self.word(i).and_then(|w| self.lex.verb_from_third(w)) {
            Some(base) => Ok((base.to_string(), i + 1)),
            None => Err(i),
        }
    }

    fn verb_base(&self, i: usize) -> Step<String> {
        match self.word(i) {
            Some(w) if self.lex.is_verb_base(w) => Ok((w.to_string(), i + 1)),
            _ => Err(i),
        }
    }

    fn subject(&self, i: usize) -> Step<Subject> {
        if let Ok((n, j)) = self.proper(i) {
            return Ok((Subject::Named(n), j));
        }
        if let Some(p) = self.word(i).and_then(Pronoun::parse) {
            return Ok((Subject::Pronoun(p), i + 1));
        }
        let j = self.keyword(i, "the")?;
        let (n, j) = self.noun(j)?;
        Ok((Subject::Definite(n), j))
    }

    fn object(&self, i: usize) -> Step<Object> {
        if let Ok((n, j)) = self.proper(i) {
            return Ok((Object::Named(n), j));
        }
        let (d, j) = self.det(i)?;
        let (n, j) = self.noun(j)?;
        Ok((if d == "the" { Object::Definite(n) } else { Object::Indefinite(n) }, j))
    }

    fn objlist(&self, i: usize) -> Step<Vec<Object>> {
        let (first, mut j) = self.object(i)?;
        let mut objects = alloc::vec![first];
        while let Ok(k) = self.keyword(j, "and") {
            let (o, k) = self.object(k)?;
            objects.push(o);
            j = k;
        }
        Ok((objects, j))
    }

    // ---- statement alternatives -------------------------------------------

    fn instance_is_a(&self, i: usize) -> Step<StatementForm> {
        let (subject, j) = self.subject(i)?;
        let j = self.keyword(j, "is")?;
        let (_, j) = self.det(j)?;
        let (noun, j) = self.noun(j)?;
        Ok((StatementForm::InstanceIsA { subject, noun }, j))
    }

    fn concept_is_a(&self, i: usize) -> Step<StatementForm> {
        let j = self.keyword(i, "a").or_else(|_| self.keyword(i, "an"))?;
        let (noun, j) = self.noun(j)?;
        let j = self.keyword(j, "is")?;
        let (_, j) = self.det(j)?;
        let (parent, j) = self.noun(j)?;
        Ok((StatementForm::ConceptIsA { noun, parent }, j))
    }

    fn has_attribute(&self, i: usize) -> Step<StatementForm> {
        let (subject, j) = self.subject(i)?;
        let j = self.keyword(j, "is")?;
        let (polarity, j) = match self.keyword(j, "not") {
            Ok(k) => (Polarity::Negate, k),
            Err(_) => (Polarity::Affirm, j),
        };
        let (adjective, j) = self.adjective(j)?;
        Ok((StatementForm::HasAttribute { subject, adjective, polarity }, j))
    }

    fn relation_affirm(&self, i: usize) -> Step<StatementForm> {
        let (subject, j) = self.subject(i)?;
        let (only, j) = match self.keyword(j, "only") {
            Ok(k) => (true, k),
            Err(_) => (false, j),
        };
        let (verb, j) = self.verb3(j)?;
        let (objects, j) = self.objlist(j)?;
        Ok((StatementForm::Relation { subject, verb, objects, polarity: Polarity::Affirm, only }, j))
    }

    fn relation_negate(&self, i: usize) -> Step<StatementForm> {
        let (subject, j) = self.subject(i)?;
        let j = self.keyword(j, "does")?;
        let j = self.keyword(j, "not")?;
        let (verb, j) = self.verb_base(j)?;
        let (objects, j) = self.objlist(j)?;
        Ok((StatementForm::Relation { subject, verb, objects, polarity: Polarity::Negate, only: false }, j))
    }

    // ---- question alternatives --------------------------------------------

    fn wh_object(&self, i: usize) -> Step<QuestionForm> {
        let j = self.keyword(i, "what")?;
        let j = self.keyword(j, "does")?;
        let (subject, j) = self.subject(j)?;
        let (verb, j) = self.verb_base(j)?;
        Ok((QuestionForm::WhObject { subject, verb }, j))
    }

    fn wh_subject(&self, i: usize) -> Step<QuestionForm> {
        let j = self.keyword(i, "who")?;
        let (verb, j) = self.verb3(j)?;
        let (object, j) = self.object(j)?;
        Ok((QuestionForm::WhSubject { verb, object }, j))
    }

    fn yes_no_is_a(&self, i: usize) -> Step<QuestionForm> {
        let j = self.keyword(i, "is")?;
        let (subject, j) = self.subject(j)?;
        let (_, j) = self.det(j)?;
        let (noun, j) = self.noun(j)?;
        Ok((QuestionForm::YesNoIsA { subject, noun }, j))
    }

    fn yes_no_attr(&self, i: usize) -> Step<QuestionForm> {
        let j = self.keyword(i, "is")?;
        let (subject, j) = self.subject(j)?;
        let (adjective, j) = self.adjective(j)?;
        Ok((QuestionForm::YesNoAttr { subject, adjective }, j))
    }

    fn yes_no_rel(&self, i: usize) -> Step<QuestionForm> {
        let j = self.keyword(i, "does")?;
        let (subject, j) = self.subject(j)?;
        let (verb, j) = self.verb_base(j)?;
        let (object, j) = self.object(j)?;
        Ok((QuestionForm::YesNoRel { subject, verb, object }, j))
    }

    /// Runs every alternative from `start` and keeps those that end exactly
    /// at the terminal punctuation `end`.
    fn pick<T>(&self, start: usize, end: char, alts: &[fn(&Self, usize) -> Step<T>]) -> Result<T, ParseError> {
        let last = self.toks.len();
        let mut found = Vec::new();
        let mut far = start;
        for alt in alts {
            match alt(self, start) {
                Ok((v, j)) if j + 1 == last && self.punct(j, end).is_ok() => found.push(v),
                Ok((_, j)) => far = far.max(j),
                Err(f) => far = far.max(f),
            }
        }
        match found.len() {
            0 => Err(self.fail(far)),
            1 => Ok(found.pop().unwrap()),
            count => Err(ParseError::AmbiguousParse { count }),
        }
    }
}

fn source_text(tokens: &[Token]) -> String {
    let mut out = String::new();
    for (i, t) in tokens.iter().enumerate() {
        if i > 0 && t.kind != TokenKind::Punct {
            out.push(' ');
        }
        out.push_str(&t.text);
    }
    out
}

pub fn parse_statement(tokens: &[Token], lex: &Lexicon) -> Result<Statement, ParseError> {
    let p = Parser::new(tokens, lex);
    let (revision, start) = match p.keyword(0, "actually").and_then(|j| p.punct(j, ',')) {
        Ok(j) => (true, j),
        Err(_) => (false, 0),
    };
    let form = p.pick(
        start,
        '.',
        &[Parser::instance_is_a, Parser::concept_is_a, Parser::has_attribute, Parser::relation_affirm, Parser::relation_negate],
    )?;
    Ok(Statement { form, revision, source_text: source_text(tokens) })
}

pub fn parse_question(tokens: &[Token], lex: &Lexicon) -> Result<Question, ParseError> {
    let p = Parser::new(tokens, lex);
    let form = p.pick(0, '?', &[Parser::wh_object, Parser::wh_subject, Parser::yes_no_is_a, Parser::yes_no_attr, Parser::yes_no_rel])?;
    Ok(Question { form, source_text: source_text(tokens) })
}

#[derive(Debug, Clone, PartialEq)]
pub enum Utterance {
    Statement(Statement),
    Question(Question),
}

/// Parses a statement or, when the last token is `?`, a question.
pub fn parse(tokens: &[Token], lex: &Lexicon) -> Result<Utterance, ParseError> {
    if tokens.last().is_some_and(|t| t.is_punct('?')) {
        parse_question(tokens, lex).map(Utterance::Question)
    } else {
        parse_statement(tokens, lex).map(Utterance::Statement)
    }
}
