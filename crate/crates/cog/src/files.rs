//! Plain-text inputs: lexicon, ontology and QA corpus files.
//!
//! All formats are UTF-8, one entry per line, `#` starts a comment line and
//! blank lines are skipped.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use cog_core::cognition::Ontology;
use cog_core::language::Lexicon;

/// Non-comment lines with their 1-based line numbers, trimmed.
pub fn entries(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// ```text
/// [verbs]
/// want wants
/// [adjectives]
/// red
/// ```
pub fn parse_lexicon(text: &str) -> Result<Lexicon> {
    let mut lex = Lexicon::new();
    let mut section = "";
    for (n, line) in entries(text) {
        if line.starts_with('[') {
            section = match line {
                "[verbs]" => "verbs",
                "[adjectives]" => "adjectives",
                _ => bail!("line {n}: unknown section `{line}`"),
            };
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        match (section, words.as_slice()) {
            ("verbs", [base, third]) => lex.add_verb(base, third).with_context(|| format!("line {n}"))?,
            ("adjectives", [adj]) => lex.add_adjective(adj).with_context(|| format!("line {n}"))?,
            ("", _) => bail!("line {n}: entry outside a section"),
            _ => bail!("line {n}: malformed {section} entry `{line}`"),
        }
    }
    Ok(lex)
}

pub fn render_lexicon(lex: &Lexicon) -> String {
    let mut out = String::from("[verbs]\n");
    for (b, t) in lex.verbs() {
        writeln!(out, "{b} {t}").unwrap();
    }
    out.push_str("[adjectives]\n");
    for a in lex.adjectives() {
        writeln!(out, "{a}").unwrap();
    }
    out
}

/// A bare word declares a concept; `child is-a parent` links two.
pub fn parse_ontology(text: &str) -> Result<Ontology> {
    let mut o = Ontology::empty();
    for (n, line) in entries(text) {
        let words: Vec<&str> = line.split_whitespace().collect();
        match words.as_slice() {
            [c] => o.concepts.push((*c).into()),
            [c, "is-a", p] => o.is_a.push(((*c).into(), (*p).into())),
            _ => bail!("line {n}: expected `concept` or `child is-a parent`, got `{line}`"),
        }
    }
    Ok(o)
}

pub fn render_ontology(o: &Ontology) -> String {
    let mut out = String::new();
    for c in &o.concepts {
        writeln!(out, "{c}").unwrap();
    }
    for (c, p) in &o.is_a {
        writeln!(out, "{c} is-a {p}").unwrap();
    }
    out
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QaCorpus {
    pub statements: Vec<String>,
    pub questions: Vec<String>,
    /// Normalised expected answers, one per question.
    pub expected: Vec<String>,
}

/// Case-folds, drops terminal punctuation and collapses whitespace.
pub fn normalize_answer(s: &str) -> String {
    let folded = s.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase();
    folded.trim_end_matches(['.', '?', '!']).trim_end().to_string()
}

fn lines(text: &str) -> Vec<String> {
    entries(text).map(|(_, l)| l.to_string()).collect()
}

impl QaCorpus {
    pub fn parse(statements: &str, questions: &str, expected: &str) -> Result<Self> {
        let c = QaCorpus {
            statements: lines(statements),
            questions: lines(questions),
            expected: lines(expected).iter().map(|e| normalize_answer(e)).collect(),
        };
        if c.questions.len() != c.expected.len() {
            bail!("{} questions but {} expected answers", c.questions.len(), c.expected.len());
        }
        Ok(c)
    }

    pub fn load(statements: &Path, questions: &Path, expected: &Path) -> Result<Self> {
        let read = |p: &Path| std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()));
        QaCorpus::parse(&read(statements)?, &read(questions)?, &read(expected)?)
    }

    /// Writes `statements.txt`, `questions.txt` and `expected.txt` into `dir`.
    pub fn save(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        let join = |v: &[String]| v.iter().map(|l| format!("{l}\n")).collect::<String>();
        std::fs::write(dir.join("statements.txt"), join(&self.statements))?;
        std::fs::write(dir.join("questions.txt"), join(&self.questions))?;
        std::fs::write(dir.join("expected.txt"), join(&self.expected))?;
        Ok(())
    }

    pub fn load_dir(dir: &Path) -> Result<Self> {
        QaCorpus::load(&dir.join("statements.txt"), &dir.join("questions.txt"), &dir.join("expected.txt"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicon_round_trip() {
        let lex = Lexicon::english();
        let back = parse_lexicon(&render_lexicon(&lex)).unwrap();
        assert_eq!(render_lexicon(&back), render_lexicon(&lex));
        assert!(parse_lexicon("want wants\n").is_err());
        assert!(parse_lexicon("[verbs]\nis iss\n").is_err());
    }

    #[test]
    fn ontology_round_trip() {
        let o = Ontology::basic();
        assert_eq!(parse_ontology(&render_ontology(&o)).unwrap(), o);
        assert!(parse_ontology("dog is a animal\n").is_err());
    }

    #[test]
    fn normalisation() {
        assert_eq!(normalize_answer("  Yes. "), "yes");
        assert_eq!(normalize_answer("I don't  know."), "i don't know");
        assert_eq!(normalize_answer("a cat and a dog"), "a cat and a dog");
    }

    #[test]
    fn corpus_counts_must_match() {
        assert!(QaCorpus::parse("Tina wants a cat.\n", "What does Tina want?\n# c\n", "a cat\n").is_ok());
        assert!(QaCorpus::parse("", "What does Tina want?\n", "").is_err());
    }
}
