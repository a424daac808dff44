//! JSON documents emitted and consumed by the command-line tool.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const DOC_VERSION: u32 = 1;

/// Everything needed to reproduce a document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub version: String,
    #[serde(default)]
    pub inputs: Vec<String>,
    #[serde(default)]
    pub output: Option<String>,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        RunManifest {
            command: command.to_string(),
            params: BTreeMap::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            inputs: Vec::new(),
            output: None,
            seed: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryDoc {
    pub t: usize,
    pub j: usize,
    pub r: Option<usize>,
    pub p: u64,
    #[serde(rename = "N")]
    pub n: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoalitionDoc {
    pub version: u32,
    pub query: QueryDoc,
    pub minimal: bool,
    pub count: usize,
    pub coalitions: Vec<Vec<u64>>,
    pub r_min: Option<usize>,
    #[serde(rename = "N_min")]
    pub n_min: Option<usize>,
    pub manifest: RunManifest,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableCell {
    pub p: u64,
    pub j: usize,
    pub count: usize,
    pub r_min: Option<usize>,
    #[serde(rename = "N_min")]
    pub n_min: Option<usize>,
    pub per_length: BTreeMap<usize, usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableDoc {
    pub version: u32,
    pub t: usize,
    #[serde(rename = "N")]
    pub n: u64,
    pub primes: Vec<u64>,
    pub js: Vec<usize>,
    pub cells: Vec<TableCell>,
    pub manifest: RunManifest,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SetDoc {
    pub members: Vec<u64>,
    pub kind: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyDoc {
    pub j: usize,
    pub sets: Vec<SetDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccessDoc {
    pub version: u32,
    pub t: usize,
    pub p: u64,
    pub identities: Vec<u64>,
    pub families: Vec<FamilyDoc>,
    pub unextended: usize,
    pub manifest: RunManifest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParticipantDoc {
    pub id: u64,
    pub share: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SharesDoc {
    pub version: u32,
    pub p: u64,
    pub t: usize,
    pub participants: Vec<ParticipantDoc>,
    pub manifest: RunManifest,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub known_indices: Vec<usize>,
    pub known_values: Vec<u64>,
    pub share_values: Vec<u64>,
    pub histogram: Vec<u64>,
    pub reference: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditEntryDoc {
    pub subset: Vec<u64>,
    pub j: usize,
    pub authorized: bool,
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditDoc {
    pub version: u32,
    pub t: usize,
    pub p: u64,
    pub identities: Vec<u64>,
    pub domain: String,
    pub conditioning: String,
    pub polynomials: u64,
    pub ideal: bool,
    pub correctness_failures: usize,
    pub leaky: usize,
    pub pass: bool,
    pub entries: Vec<AuditEntryDoc>,
    pub manifest: RunManifest,
}
