//! Controlled-English front end: tokenizer, lexicon and parser for teaching
//! statements and questions.

mod ast;
mod lexicon;
mod parser;
mod token;

pub use ast::{article, Object, Pronoun, Question, QuestionForm, Statement, StatementForm, Subject};
pub use lexicon::{is_closed_word, Lexicon, LexiconError, CLOSED_WORDS, DETERMINERS, PRONOUNS, WH_WORDS};
pub use parser::{parse, parse_question, parse_statement, ParseError, Utterance};
pub use token::{tokenize, Token, TokenKind};
