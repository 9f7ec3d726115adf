//! JSON documents for partial solutions.
//!
//! ```json
//! {"carrier": {"kind": "finite", "size": 3},
//!  "sigma": [{"x": 0, "map": [[0, 0], [2, 2]]}, ...],
//!  "gamma": [...]}
//! {"carrier": {"kind": "countable", "family": "thompson"}}
//! ```
//!
//! Generators omitted from `sigma`/`gamma` get the empty map.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Read;

use serde::{Deserialize, Serialize};

use super::{PartialSolution, Rule};
use crate::algebra::{Carrier, PartialBijection};
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum CarrierDoc {
    Finite { size: u64 },
    Countable { family: String },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapDoc {
    x: u64,
    map: Vec<(u64, u64)>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    carrier: CarrierDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sigma: Option<Vec<MapDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gamma: Option<Vec<MapDoc>>,
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.into(),
        message: message.into(),
    }
}

pub fn load_str(text: &str) -> Result<PartialSolution> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: Document = serde_path_to_error::deserialize(de)
        .map_err(|e| schema(e.path().to_string(), e.inner().to_string()))?;
    from_document(doc)
}

pub fn load<R: Read>(mut reader: R) -> Result<PartialSolution> {
    let mut text = String::new();
    reader
        .read_to_string(&mut text)
        .map_err(|e| schema(".", e.to_string()))?;
    load_str(&text)
}

fn from_document(doc: Document) -> Result<PartialSolution> {
    match doc.carrier {
        CarrierDoc::Countable { family } => {
            if doc.sigma.is_some() || doc.gamma.is_some() {
                let field = if doc.sigma.is_some() {
                    "sigma"
                } else {
                    "gamma"
                };
                return Err(schema(field, "countable carriers take no explicit maps"));
            }
            match family.as_str() {
                "thompson" => Ok(PartialSolution::from_rule(Rule::Thompson)),
                other => Err(schema(
                    "carrier.family",
                    format!("unknown family `{other}`"),
                )),
            }
        }
        CarrierDoc::Finite { size } => {
            let sigma = maps("sigma", size, doc.sigma.unwrap_or_default())?;
            let gamma = maps("gamma", size, doc.gamma.unwrap_or_default())?;
            PartialSolution::from_maps(size, sigma, gamma)
        }
    }
}

fn maps(field: &str, size: u64, docs: Vec<MapDoc>) -> Result<Vec<PartialBijection>> {
    let mut out = vec![PartialBijection::empty(); size as usize];
    let mut seen = BTreeSet::new();
    for (i, doc) in docs.into_iter().enumerate() {
        if doc.x >= size {
            return Err(schema(
                format!("{field}[{i}].x"),
                format!("index {} outside 0..{size}", doc.x),
            ));
        }
        if !seen.insert(doc.x) {
            return Err(schema(
                format!("{field}[{i}].x"),
                format!("duplicate entry for {}", doc.x),
            ));
        }
        let mut pairs = BTreeMap::new();
        let mut images = BTreeSet::new();
        for (j, &(a, b)) in doc.map.iter().enumerate() {
            if a >= size || b >= size {
                return Err(schema(
                    format!("{field}[{i}].map[{j}]"),
                    format!("pair ({a}, {b}) outside 0..{size}"),
                ));
            }
            if pairs.insert(a, b).is_some() {
                return Err(schema(
                    format!("{field}[{i}].map[{j}]"),
                    format!("{a} listed twice"),
                ));
            }
            if !images.insert(b) {
                return Err(if field == "sigma" {
                    Error::NonInjectiveSigma { x: doc.x, value: b }
                } else {
                    Error::NonInjectiveGamma { y: doc.x, value: b }
                });
            }
        }
        out[doc.x as usize] = PartialBijection::from_pairs(pairs)?;
    }
    Ok(out)
}

pub fn save(s: &PartialSolution) -> serde_json::Value {
    let doc = match s.carrier() {
        Carrier::Countable => Document {
            carrier: CarrierDoc::Countable {
                family: s
                    .rule()
                    .expect("countable solutions are rule-based")
                    .name()
                    .into(),
            },
            sigma: None,
            gamma: None,
        },
        Carrier::Finite(size) => {
            let list = |maps: &[PartialBijection]| {
                maps.iter()
                    .enumerate()
                    .map(|(x, m)| MapDoc {
                        x: x as u64,
                        map: m.pairs(),
                    })
                    .collect()
            };
            Document {
                carrier: CarrierDoc::Finite { size },
                sigma: Some(list(s.sigma_maps().expect("finite"))),
                gamma: Some(list(s.gamma_maps().expect("finite"))),
            }
        }
    };
    serde_json::to_value(doc).expect("document serializes")
}

pub fn save_string(s: &PartialSolution) -> String {
    serde_json::to_string_pretty(&save(s)).expect("document serializes")
}
