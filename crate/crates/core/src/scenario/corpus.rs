//! The built-in scenario corpus, embedded at compile time.

use std::fmt;
use std::time::Instant;

use serde::Serialize;

use super::run::{run_compiled, ScenarioOutcome};
use super::Scenario;
use crate::error::Result;

macro_rules! corpus {
    ($($file:literal),* $(,)?) => {
        &[$(($file, include_str!(concat!("../../corpus/", $file, ".json")))),*]
    };
}

const ENTRIES: &[(&str, &str)] = corpus![
    "a2-hn-kvn",
    "a2-kvn-corrupted",
    "a2-nijenhuis-structure",
    "a2-operator-enumeration",
    "a2-mn-brackets",
    "a3a-hn-kvn",
    "a3a-kvb",
    "a3n-kvb",
    "a3h-rb-case1",
    "a3h-rb-case2",
    "a3h-rb-case3",
];

/// `(id, source)` for every corpus entry; the id is the file stem.
pub fn corpus_entries() -> &'static [(&'static str, &'static str)] {
    ENTRIES
}

pub fn corpus_ids() -> Vec<&'static str> {
    ENTRIES.iter().map(|(id, _)| *id).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryOutcome {
    pub id: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outcome: Option<ScenarioOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusOutcome {
    pub passed: bool,
    pub entries: Vec<EntryOutcome>,
}

/// Runs every entry whose id contains `filter`. A load error fails the entry
/// without stopping the run.
pub fn run_corpus(filter: Option<&str>, samples: Option<usize>) -> Result<CorpusOutcome> {
    let mut entries = Vec::new();
    for (id, src) in ENTRIES.iter().filter(|(id, _)| filter.map_or(true, |f| id.contains(f))) {
        let start = Instant::now();
        let result = Scenario::compile(src).and_then(|c| run_compiled(&c, samples));
        let millis = start.elapsed().as_millis();
        entries.push(match result {
            Ok(o) => EntryOutcome { id: id.to_string(), passed: o.passed, outcome: Some(o), error: None, millis },
            Err(e) => EntryOutcome { id: id.to_string(), passed: false, outcome: None, error: Some(e.to_string()), millis },
        });
    }
    if entries.is_empty() {
        return Err(crate::error::Error::Validation(format!("no corpus entry matches {:?}", filter.unwrap_or(""))));
    }
    Ok(CorpusOutcome { passed: entries.iter().all(|e| e.passed), entries })
}

impl fmt::Display for EntryOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.outcome, &self.error) {
            (Some(o), _) => write!(f, "{o}")?,
            (None, Some(e)) => write!(f, "{}: ERROR {e}", self.id)?,
            (None, None) => write!(f, "{}: no result", self.id)?,
        }
        write!(f, "\n  ({} ms)", self.millis)
    }
}

impl fmt::Display for CorpusOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{e}")?;
        }
        let passed = self.entries.iter().filter(|e| e.passed).count();
        write!(f, "{passed}/{} corpus entries pass", self.entries.len())
    }
}
