use alloc::collections::VecDeque;
use alloc::string::String;

/// Metacognitive readings emitted with every ingest and answer. All in `[0, 1]`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Signals {
    /// Highest prior certainty among the edges this input invalidated.
    pub surprise: f64,
    /// Certainty of the assertion or answer produced; 0 for rejected input.
    pub certainty: f64,
    /// 1 for an unresolved referent, `1/k` when `k` referents tied.
    pub confusion: f64,
    /// Share of the last [`BOREDOM_WINDOW`] inputs identical to this one.
    pub boredom: f64,
}

pub const BOREDOM_WINDOW: usize = 20;

/// Case-folds and collapses whitespace.
pub fn normalize_input(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for w in text.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.extend(w.chars().flat_map(char::to_lowercase));
    }
    out
}

/// The last [`BOREDOM_WINDOW`] normalised inputs.
#[derive(Debug, Clone, Default)]
pub struct RecentInputs {
    buf: VecDeque<String>,
}

impl RecentInputs {
    /// Scores `text` against the window, then pushes it.
    pub fn observe(&mut self, text: &str) -> f64 {
        let norm = normalize_input(text);
        let same = self.buf.iter().filter(|s| **s == norm).count();
        self.buf.push_back(norm);
        if self.buf.len() > BOREDOM_WINDOW {
            self.buf.pop_front();
        }
        same as f64 / BOREDOM_WINDOW as f64
    }

    pub fn len(&self) -> usize {
        self.buf.len()
    }

    pub fn is_empty(&self) -> bool {
        self.buf.is_empty()
    }
}
