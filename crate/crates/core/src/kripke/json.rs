//! JSON form of frames and models:
//!
//! ```json
//! {"worlds": ["base:L0:{}:#0", ...],
//!  "relation": [["base:L0:{}:#0", "base:L1:{1}:#1"], ...],
//!  "valuation": {"p1": ["base:L1:{1}:#1"], ...},
//!  "root": "base:L0:{}:#0"}
//! ```
//!
//! Worlds keep frame order, edges are sorted by (source, target) position,
//! valuation keys are sorted, so equal models serialize to equal bytes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::frame::KripkeFrame;
use super::model::KripkeModel;
use super::world::WorldId;
use super::KripkeError;

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ModelDoc {
    worlds: Vec<String>,
    relation: Vec<[String; 2]>,
    #[serde(default)]
    valuation: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    root: Option<String>,
}

fn frame_doc(fr: &KripkeFrame) -> ModelDoc {
    ModelDoc {
        worlds: fr.worlds().iter().map(|w| w.to_string()).collect(),
        relation: fr
            .edges()
            .map(|(i, j)| [fr.world(i).to_string(), fr.world(j).to_string()])
            .collect(),
        valuation: BTreeMap::new(),
        root: None,
    }
}

pub fn model_to_json(m: &KripkeModel) -> String {
    let fr = m.frame();
    let mut doc = frame_doc(fr);
    for (var, ext) in m.valuation() {
        doc.valuation.insert(
            format!("p{var}"),
            ext.iter().map(|&w| fr.world(w).to_string()).collect(),
        );
    }
    doc.root = Some(m.root_id().to_string());
    serde_json::to_string(&doc).expect("plain data serializes")
}

pub fn frame_to_json(fr: &KripkeFrame) -> String {
    serde_json::to_string(&frame_doc(fr)).expect("plain data serializes")
}

fn parse_doc(text: &str) -> Result<(ModelDoc, KripkeFrame), KripkeError> {
    let doc: ModelDoc = serde_json::from_str(text).map_err(|e| KripkeError::Json(e.to_string()))?;
    let mut fr =
        KripkeFrame::with_worlds(doc.worlds.iter().map(|s| s.parse::<WorldId>().unwrap()))?;
    for [a, b] in &doc.relation {
        fr.connect(&a.parse().unwrap(), &b.parse().unwrap())?;
    }
    Ok((doc, fr))
}

/// Reads a frame; `valuation` and `root`, if present, are ignored.
pub fn frame_from_json(text: &str) -> Result<KripkeFrame, KripkeError> {
    parse_doc(text).map(|(_, fr)| fr)
}

pub fn model_from_json(text: &str) -> Result<KripkeModel, KripkeError> {
    let (doc, fr) = parse_doc(text)?;
    let root: WorldId = doc
        .root
        .as_deref()
        .ok_or(KripkeError::MissingRoot)?
        .parse()
        .unwrap();
    let mut m = KripkeModel::new(fr, &root)?;
    for (name, worlds) in &doc.valuation {
        let var = name
            .strip_prefix('p')
            .and_then(|d| d.parse::<u32>().ok())
            .filter(|&v| v >= 1)
            .ok_or_else(|| KripkeError::Json(format!("bad variable name `{name}`")))?;
        m.declare(var);
        for w in worlds {
            let i = m.frame().position(&w.parse().unwrap())?;
            m.set_true(var, i);
        }
    }
    Ok(m)
}
