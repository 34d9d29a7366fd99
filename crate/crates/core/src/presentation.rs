//! Group presentations and named word tables.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::word::Word;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("generator name `{0}` is not a valid identifier")]
    InvalidName(String),
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("word references generator {found} but the presentation has {count}")]
    GeneratorOutOfRange { found: usize, count: usize },
}

/// A finitely presented group: generator names plus freely reduced relators.
///
/// Relators that reduce to the empty word are dropped on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Presentation {
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Presentation, PresentationError> {
        let mut seen = HashMap::new();
        for name in &names {
            if !is_identifier(name) {
                return Err(PresentationError::InvalidName(name.clone()));
            }
            if seen.insert(name.clone(), ()).is_some() {
                return Err(PresentationError::DuplicateName(name.clone()));
            }
        }
        let relators: Vec<Word> = relators.into_iter().filter(|r| !r.is_empty()).collect();
        for r in &relators {
            if let Some(found) = r.max_generator() {
                if found >= names.len() {
                    return Err(PresentationError::GeneratorOutOfRange {
                        found,
                        count: names.len(),
                    });
                }
            }
        }
        Ok(Presentation { names, relators })
    }

    /// Free group on the given generator names.
    pub fn free(names: &[&str]) -> Presentation {
        Presentation::new(names.iter().map(|s| s.to_string()).collect(), Vec::new())
            .expect("valid free presentation")
    }

    /// Parses the `< names | relators >` file format.
    pub fn parse(text: &str) -> Result<Presentation, crate::parse::ParseError> {
        crate::parse::parse_presentation(text)
    }

    pub fn n_generators(&self) -> usize {
        self.names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Checks that a word only uses this presentation's generators.
    pub fn validate_word(&self, w: &Word) -> Result<(), PresentationError> {
        if let Some(found) = w.max_generator() {
            if found >= self.names.len() {
                return Err(PresentationError::GeneratorOutOfRange {
                    found,
                    count: self.names.len(),
                });
            }
        }
        Ok(())
    }

    pub fn word_string(&self, w: &Word) -> String {
        w.display(&self.names).to_string()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} |", self.names.join(", "))?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, " {}", r.display(&self.names))?;
        }
        write!(f, " >")
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordTableError {
    #[error("`{0}` is not defined")]
    Undefined(String),
    #[error("`{0}` is already defined")]
    AlreadyDefined(String),
    #[error("`{0}` shadows a generator name")]
    ShadowsGenerator(String),
    #[error("`{0}` is not a valid identifier")]
    InvalidName(String),
    #[error(transparent)]
    Word(#[from] PresentationError),
}

/// Named word definitions over an ambient presentation.
///
/// Definitions are expanded eagerly, so each stored word is over the ambient
/// generators and later definitions may only reference earlier ones; forward
/// or cyclic references fail as unknown names when the definition is added.
#[derive(Clone, Debug)]
pub struct WordTable {
    generator_names: Vec<String>,
    names: Vec<String>,
    words: Vec<Word>,
    index: HashMap<String, usize>,
}

impl WordTable {
    pub fn new(ambient: &Presentation) -> WordTable {
        WordTable {
            generator_names: ambient.generator_names().to_vec(),
            names: Vec::new(),
            words: Vec::new(),
            index: HashMap::new(),
        }
    }

    /// Adds `name = word`, with `word` already expanded over the ambient
    /// generators.
    pub fn define(&mut self, name: &str, word: Word) -> Result<(), WordTableError> {
        if !is_identifier(name) {
            return Err(WordTableError::InvalidName(name.to_string()));
        }
        if self.generator_names.iter().any(|n| n == name) {
            return Err(WordTableError::ShadowsGenerator(name.to_string()));
        }
        if self.index.contains_key(name) {
            return Err(WordTableError::AlreadyDefined(name.to_string()));
        }
        if let Some(found) = word.max_generator() {
            if found >= self.generator_names.len() {
                return Err(PresentationError::GeneratorOutOfRange {
                    found,
                    count: self.generator_names.len(),
                }
                .into());
            }
        }
        self.index.insert(name.to_string(), self.names.len());
        self.names.push(name.to_string());
        self.words.push(word);
        Ok(())
    }

    /// Fully expanded word for `name`, over the ambient generators.
    pub fn expand(&self, name: &str) -> Result<&Word, WordTableError> {
        self.index
            .get(name)
            .map(|&i| &self.words[i])
            .ok_or_else(|| WordTableError::Undefined(name.to_string()))
    }

    pub fn lookup(&self, name: &str) -> Option<&Word> {
        self.index.get(name).map(|&i| &self.words[i])
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Letter;

    #[test]
    fn empty_relators_are_dropped() {
        let p = Presentation::new(
            vec!["a".into()],
            vec![Word::empty(), Word::generator(0).pow(2)],
        )
        .unwrap();
        assert_eq!(p.relators().len(), 1);
    }

    #[test]
    fn duplicate_names_rejected() {
        let err = Presentation::new(vec!["a".into(), "a".into()], vec![]).unwrap_err();
        assert_eq!(err, PresentationError::DuplicateName("a".into()));
    }

    #[test]
    fn out_of_range_relator_rejected() {
        let err = Presentation::new(vec!["a".into()], vec![Word::generator(1)]).unwrap_err();
        assert!(matches!(err, PresentationError::GeneratorOutOfRange { .. }));
    }

    #[test]
    fn word_table_resolves_earlier_names() {
        let p = Presentation::free(&["z", "b"]);
        let mut t = WordTable::new(&p);
        t.define("g1", Word::generator(1).pow(3)).unwrap();
        assert_eq!(t.expand("g1").unwrap().len(), 3);
        assert_eq!(
            t.expand("g9"),
            Err(WordTableError::Undefined("g9".into()))
        );
    }

    #[test]
    fn word_table_rejects_generator_shadowing() {
        let p = Presentation::free(&["z", "b"]);
        let mut t = WordTable::new(&p);
        assert_eq!(
            t.define("z", Word::empty()),
            Err(WordTableError::ShadowsGenerator("z".into()))
        );
    }

    #[test]
    fn empty_definition_expands_to_empty_word() {
        let p = Presentation::free(&["a"]);
        let mut t = WordTable::new(&p);
        t.define("e", Word::empty()).unwrap();
        assert!(t.expand("e").unwrap().is_empty());
    }

    #[test]
    fn display_round_trips_through_parse() {
        let p = Presentation::new(
            vec!["z".into(), "b".into()],
            vec![
                Word::generator(0).pow(7),
                Word::from_letters([Letter::gen(1), Letter::gen(1), Letter::new(0, true)]).pow(3),
            ],
        )
        .unwrap();
        let text = p.to_string();
        let q = Presentation::parse(&text).unwrap();
        assert_eq!(p, q);
    }
}
