use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use hashbrown::HashMap;
use thiserror::Error;

pub const DETERMINERS: [&str; 3] = ["a", "an", "the"];
pub const PRONOUNS: [&str; 4] = ["she", "he", "it", "they"];
pub const WH_WORDS: [&str; 2] = ["what", "who"];
pub const CLOSED_WORDS: [&str; 16] =
    ["a", "an", "the", "is", "are", "not", "does", "only", "and", "actually", "she", "he", "it", "they", "what", "who"];

pub fn is_closed_word(w: &str) -> bool {
    CLOSED_WORDS.contains(&w)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexiconError {
    #[error("verb form `{0}` is used twice")]
    DuplicateVerbForm(String),
    #[error("`{0}` is a closed word")]
    ClosedWord(String),
    #[error("lexicon entry `{0}` must be a single lowercase word")]
    BadEntry(String),
}

/// Verbs (base and third-person forms) and adjectives known to the parser.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    verbs: Vec<(String, String)>,
    base: HashMap<String, usize>,
    third: HashMap<String, usize>,
    adjectives: BTreeSet<String>,
}

fn check_word(w: &str) -> Result<(), LexiconError> {
    if w.is_empty() || w.chars().any(|c| c.is_whitespace() || c.is_uppercase() || matches!(c, '.' | '?' | ',')) {
        return Err(LexiconError::BadEntry(w.into()));
    }
    if is_closed_word(w) {
        return Err(LexiconError::ClosedWord(w.into()));
    }
    Ok(())
}

impl Lexicon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_verb(&mut self, base: &str, third: &str) -> Result<(), LexiconError> {
        check_word(base)?;
        check_word(third)?;
        for form in [base, third] {
            if self.base.contains_key(form) || self.third.contains_key(form) {
                return Err(LexiconError::DuplicateVerbForm(form.into()));
            }
        }
        if base == third {
            return Err(LexiconError::DuplicateVerbForm(base.into()));
        }
        let i = self.verbs.len();
        self.verbs.push((base.into(), third.into()));
        self.base.insert(base.into(), i);
        self.third.insert(third.into(), i);
        Ok(())
    }

    pub fn add_adjective(&mut self, adj: &str) -> Result<(), LexiconError> {
        check_word(adj)?;
        self.adjectives.insert(adj.into());
        Ok(())
    }

    /// Base form for a third-person verb form.
    pub fn verb_from_third(&self, w: &str) -> Option<&str> {
        self.third.get(w).map(|&i| self.verbs[i].0.as_str())
    }

    pub fn is_verb_base(&self, w: &str) -> bool {
        self.base.contains_key(w)
    }

    pub fn third_person(&self, base: &str) -> Option<&str> {
        self.base.get(base).map(|&i| self.verbs[i].1.as_str())
    }

    pub fn is_adjective(&self, w: &str) -> bool {
        self.adjectives.contains(w)
    }

    /// True for any verb form or adjective.
    pub fn contains(&self, w: &str) -> bool {
        self.base.contains_key(w) || self.third.contains_key(w) || self.adjectives.contains(w)
    }

    pub fn verbs(&self) -> impl Iterator<Item = (&str, &str)> {
        self.verbs.iter().map(|(b, t)| (b.as_str(), t.as_str()))
    }

    pub fn adjectives(&self) -> impl Iterator<Item = &str> {
        self.adjectives.iter().map(String::as_str)
    }
}

const DEFAULT_VERBS: [(&str, &str); 16] = [
    ("want", "wants"),
    ("like", "likes"),
    ("have", "has"),
    ("own", "owns"),
    ("love", "loves"),
    ("need", "needs"),
    ("see", "sees"),
    ("know", "knows"),
    ("eat", "eats"),
    ("chase", "chases"),
    ("visit", "visits"),
    ("fear", "fears"),
    ("hate", "hates"),
    ("feed", "feeds"),
    ("carry", "carries"),
    ("watch", "watches"),
];

const DEFAULT_ADJECTIVES: [&str; 20] = [
    "red", "small", "big", "blue", "green", "yellow", "happy", "sad", "old", "young", "fast", "slow", "tall", "hungry", "friendly", "loud",
    "quiet", "brave", "female", "male",
];

impl Lexicon {
    /// The built-in English lexicon.
    pub fn english() -> Self {
        let mut lex = Lexicon::new();
        for (b, t) in DEFAULT_VERBS {
            lex.add_verb(b, t).expect("built-in verbs are unique");
        }
        for a in DEFAULT_ADJECTIVES {
            lex.add_adjective(a).expect("built-in adjectives are valid");
        }
        lex
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn english_lookups() {
        let lex = Lexicon::english();
        assert_eq!(lex.verb_from_third("wants"), Some("want"));
        assert_eq!(lex.third_person("have"), Some("has"));
        assert!(lex.is_verb_base("want"));
        assert!(!lex.is_verb_base("wants"));
        assert!(lex.is_adjective("red"));
    }

    #[test]
    fn verb_forms_unique() {
        let mut lex = Lexicon::new();
        lex.add_verb("want", "wants").unwrap();
        assert_eq!(lex.add_verb("wants", "wantss"), Err(LexiconError::DuplicateVerbForm("wants".into())));
        assert_eq!(lex.add_verb("is", "iss"), Err(LexiconError::ClosedWord("is".into())));
        assert_eq!(lex.add_verb("Run", "runs"), Err(LexiconError::BadEntry("Run".into())));
    }
}
