//! The group corpus swept by the harness.

use serde::Deserialize;

use crate::error::{Error, Result};

const BUILTIN: &str = include_str!("corpus.toml");

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub spec: String,
    pub primes: Vec<u64>,
    #[serde(default)]
    pub stretch: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct Corpus {
    #[serde(rename = "group")]
    pub groups: Vec<CorpusEntry>,
}

impl Corpus {
    pub fn builtin() -> Self {
        Self::parse(BUILTIN).expect("builtin corpus parses")
    }

    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse {
            position: e.span().map_or(0, |s| s.start),
            message: e.message().to_string(),
        })
    }

    pub fn entry(&self, name: &str) -> Option<&CorpusEntry> {
        self.groups.iter().find(|g| g.name == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::parse_group_spec;

    #[test]
    fn builtin_corpus_specs_parse() {
        let c = Corpus::builtin();
        assert_eq!(c.groups.len(), 10);
        for g in &c.groups {
            parse_group_spec(&g.spec).unwrap();
        }
        assert!(c.entry("C5wrC5").unwrap().stretch);
        assert!(!c.entry("D8").unwrap().stretch);
        assert!(Corpus::parse("[[group]]\nname = 1").is_err());
    }
}
