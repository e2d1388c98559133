//! The JSON DFA document.
//!
//! ```json
//! {
//!   "name": "left-ideal-4",
//!   "states": 4,
//!   "alphabet": ["a", "b"],
//!   "transitions": { "a": [0, 2, 3, 1], "b": [0, 2, 1, 3] },
//!   "initial": 0,
//!   "finals": [3],
//!   "notation": { "a": "(1,2,3)", "b": "(1,2)" }
//! }
//! ```

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use suffix_convex::{Dfa, Letter, Transformation};

use crate::{HarnessError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DfaDocument {
    pub name: String,
    pub states: usize,
    pub alphabet: Vec<String>,
    pub transitions: IndexMap<String, Vec<usize>>,
    pub initial: usize,
    pub finals: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notation: Option<IndexMap<String, String>>,
}

impl DfaDocument {
    /// Document for `d`, with the canonical notation of every letter.
    pub fn from_dfa(name: &str, d: &Dfa) -> Self {
        let transitions = d
            .alphabet()
            .iter()
            .zip(d.transformations())
            .map(|(l, t)| (l.to_string(), t.image().to_vec()))
            .collect();
        let notation = d
            .alphabet()
            .iter()
            .zip(d.transformations())
            .map(|(l, t)| (l.to_string(), t.notation()))
            .collect();
        DfaDocument {
            name: name.to_string(),
            states: d.n(),
            alphabet: d.alphabet().iter().map(|l| l.to_string()).collect(),
            transitions,
            initial: d.initial(),
            finals: d.finals(),
            notation: Some(notation),
        }
    }

    /// Validates the document and builds the DFA.
    pub fn to_dfa(&self) -> Result<Dfa> {
        let n = self.states;
        if n == 0 {
            return Err(HarnessError::at("states", "a DFA needs at least one state"));
        }
        let mut alphabet = Vec::with_capacity(self.alphabet.len());
        for (i, token) in self.alphabet.iter().enumerate() {
            let letter = Letter::new(token)
                .map_err(|e| HarnessError::at(format!("alphabet[{i}]"), e.to_string()))?;
            if alphabet.contains(&letter) {
                return Err(HarnessError::at(
                    format!("alphabet[{i}]"),
                    format!("letter `{token}` appears twice"),
                ));
            }
            alphabet.push(letter);
        }
        if let Some(extra) = self.transitions.keys().find(|k| !self.alphabet.contains(k)) {
            return Err(HarnessError::at(
                format!("transitions.{extra}"),
                "letter is not in the alphabet",
            ));
        }
        let mut delta = Vec::with_capacity(alphabet.len());
        for token in &self.alphabet {
            let location = format!("transitions.{token}");
            let image = self
                .transitions
                .get(token)
                .ok_or_else(|| HarnessError::at(&location, "missing row"))?;
            if image.len() != n {
                return Err(HarnessError::at(
                    &location,
                    format!("expected {n} entries, found {}", image.len()),
                ));
            }
            if let Some((q, &p)) = image.iter().enumerate().find(|(_, &p)| p >= n) {
                return Err(HarnessError::at(
                    format!("{location}[{q}]"),
                    format!("{p} is not a state of a {n}-state DFA"),
                ));
            }
            delta.push(Transformation::from_image(image.clone())?);
        }
        if self.initial >= n {
            return Err(HarnessError::at(
                "initial",
                format!("{} is not a state of a {n}-state DFA", self.initial),
            ));
        }
        if let Some((i, f)) = self.finals.iter().enumerate().find(|(_, &f)| f >= n) {
            return Err(HarnessError::at(
                format!("finals[{i}]"),
                format!("{f} is not a state of a {n}-state DFA"),
            ));
        }
        if let Some(notation) = &self.notation {
            for (token, text) in notation {
                let location = format!("notation.{token}");
                let a = self
                    .alphabet
                    .iter()
                    .position(|l| l == token)
                    .ok_or_else(|| HarnessError::at(&location, "letter is not in the alphabet"))?;
                let t = Transformation::parse(n, text)
                    .map_err(|e| HarnessError::at(&location, e.to_string()))?;
                if t != delta[a] {
                    return Err(HarnessError::at(
                        &location,
                        format!("`{text}` does not match the transitions of `{token}`"),
                    ));
                }
            }
        }
        Ok(Dfa::new(n, alphabet, delta, self.initial, self.finals.iter().copied())?)
    }
}

pub fn parse_document(text: &str) -> Result<DfaDocument> {
    serde_json::from_str(text).map_err(|e| {
        HarnessError::at(format!("line {} column {}", e.line(), e.column()), e.to_string())
    })
}

pub fn read_dfa(text: &str) -> Result<Dfa> {
    parse_document(text)?.to_dfa()
}

pub fn write_dfa(d: &Dfa, name: &str) -> String {
    let mut text = serde_json::to_string_pretty(&DfaDocument::from_dfa(name, d))
        .expect("documents always serialize");
    text.push('\n');
    text
}
