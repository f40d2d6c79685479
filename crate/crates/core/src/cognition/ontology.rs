use alloc::string::String;
use alloc::vec::Vec;

/// Seed knowledge loaded into a fresh session: bare concepts plus `is-a`
/// links between concepts. Seeded edges have certainty 1.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Ontology {
    pub concepts: Vec<String>,
    pub is_a: Vec<(String, String)>,
}

const BASIC_CONCEPTS: [&str; 6] = ["person", "animal", "red", "small", "thing", "food"];

const BASIC_IS_A: [(&str, &str); 30] = [
    ("mammal", "animal"),
    ("bird", "animal"),
    ("fish", "animal"),
    ("reptile", "animal"),
    ("dog", "mammal"),
    ("cat", "mammal"),
    ("horse", "mammal"),
    ("cow", "mammal"),
    ("mouse", "mammal"),
    ("rabbit", "mammal"),
    ("puppy", "dog"),
    ("kitten", "cat"),
    ("parrot", "bird"),
    ("owl", "bird"),
    ("eagle", "bird"),
    ("goldfish", "fish"),
    ("shark", "fish"),
    ("snake", "reptile"),
    ("turtle", "reptile"),
    ("man", "person"),
    ("woman", "person"),
    ("child", "person"),
    ("toy", "thing"),
    ("ball", "toy"),
    ("doll", "toy"),
    ("vehicle", "thing"),
    ("car", "vehicle"),
    ("fruit", "food"),
    ("apple", "fruit"),
    ("bone", "food"),
];

impl Ontology {
    pub fn empty() -> Self {
        Self::default()
    }

    /// A small everyday ontology: people, animals, toys, food and a few
    /// attribute concepts.
    pub fn basic() -> Self {
        Ontology {
            concepts: BASIC_CONCEPTS.iter().map(|s| String::from(*s)).collect(),
            is_a: BASIC_IS_A.iter().map(|(c, p)| (String::from(*c), String::from(*p))).collect(),
        }
    }
}
