//! File formats: graph JSON and labeling JSON.
//!
//! The canonical graph form is compact JSON with alphabetically sorted keys
//! and no floats; load/store round-trips are bit-exact on that form.

use crate::labels::{
    ColoringLabel, Dir, HierLabeling, HierTag, MixedOut, Orientations, WaugLabeling, WaugOut,
    WaugSecondary, WeightOutput, WeightPrimary,
};
use crate::tree::{build_tree, InputLabel, Tree, TreeError};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("tree: {0}")]
    Tree(#[from] TreeError),
    #[error("bad label string: {0}")]
    BadLabel(String),
    #[error("node count mismatch: file says {0}, edges imply {1}")]
    NodeCount(usize, usize),
    #[error("labeling has {0} entries for {1} nodes")]
    LabelCount(usize, usize),
}

/// Free-form generator bookkeeping. Values must stay float-free; rationals go
/// in as "p/q" strings.
pub type Meta = BTreeMap<String, serde_json::Value>;

/// On-disk graph format. Field order is alphabetical so the default
/// serialization is the canonical form.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GraphFile {
    pub edges: Vec<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ids: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inputs: Option<Vec<InputLabel>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
    pub n: usize,
}

impl GraphFile {
    pub fn from_tree(tree: &Tree, inputs: Option<&[InputLabel]>, meta: Option<Meta>) -> GraphFile {
        let default_ids: Vec<u64> = (1..=tree.node_count() as u64).collect();
        GraphFile {
            edges: tree.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            ids: if tree.ids() == default_ids.as_slice() {
                None
            } else {
                Some(tree.ids().to_vec())
            },
            inputs: inputs.map(|i| i.to_vec()),
            meta,
            n: tree.node_count(),
        }
    }

    pub fn to_tree(&self) -> Result<Tree, IoError> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&[u, v]| (u, v)).collect();
        let tree = build_tree(&edges, self.ids.clone())?;
        if tree.node_count() != self.n {
            return Err(IoError::NodeCount(self.n, tree.node_count()));
        }
        Ok(tree)
    }

    /// Canonical byte form: compact JSON, sorted keys, no floats.
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(self).expect("graph serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<GraphFile, IoError> {
        Ok(serde_json::from_str(s)?)
    }
}

/// One node's entry in a labeling file.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Default)]
pub struct LabelEntry {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orient: Option<BTreeMap<String, String>>,
    pub primary: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub secondary: Option<String>,
}

/// On-disk labeling format.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct LabelFile {
    pub labels: Vec<LabelEntry>,
    pub params: Meta,
    pub problem: String,
}

impl LabelFile {
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(self).expect("label serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<LabelFile, IoError> {
        Ok(serde_json::from_str(s)?)
    }
}

fn parse_coloring(s: &str) -> Result<ColoringLabel, IoError> {
    use ColoringLabel::*;
    Ok(match s {
        "W" => W,
        "B" => B,
        "E" => E,
        "D" => D,
        "R" => R,
        "G" => G,
        "Y" => Y,
        _ => return Err(IoError::BadLabel(s.to_string())),
    })
}

fn parse_primary(s: &str) -> Result<WeightPrimary, IoError> {
    Ok(match s {
        "Decline" => WeightPrimary::Decline,
        "Connect" => WeightPrimary::Connect,
        "Copy" => WeightPrimary::Copy,
        _ => return Err(IoError::BadLabel(s.to_string())),
    })
}

fn parse_tag(s: &str) -> Result<HierTag, IoError> {
    let (kind, idx) = s.split_at(1);
    let index: u32 = idx.parse().map_err(|_| IoError::BadLabel(s.to_string()))?;
    match kind {
        "R" => Ok(HierTag::rake(index)),
        "C" => Ok(HierTag::comp(index)),
        _ => Err(IoError::BadLabel(s.to_string())),
    }
}

fn orient_entry(tree: &Tree, orient: &Orientations, v: usize) -> Option<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for u in tree.neighbors(v) {
        match orient.dir(v, u) {
            Dir::Out => map.insert(u.to_string(), "out".to_string()),
            Dir::In => map.insert(u.to_string(), "in".to_string()),
            Dir::None => None,
        };
    }
    if map.is_empty() { None } else { Some(map) }
}

fn orientations_from_entries(entries: &[LabelEntry]) -> Result<Orientations, IoError> {
    let mut orient = Orientations::new();
    for (v, e) in entries.iter().enumerate() {
        let Some(map) = &e.orient else { continue };
        for (u_str, dir) in map {
            let u: usize = u_str.parse().map_err(|_| IoError::BadLabel(u_str.clone()))?;
            match dir.as_str() {
                "out" => orient.orient(v, u),
                "in" => orient.orient(u, v),
                _ => return Err(IoError::BadLabel(dir.clone())),
            }
        }
    }
    Ok(orient)
}

pub fn encode_khier(out: &[ColoringLabel], params: Meta) -> LabelFile {
    LabelFile {
        labels: out
            .iter()
            .map(|c| LabelEntry { primary: c.as_str().to_string(), ..Default::default() })
            .collect(),
        params,
        problem: "khier".to_string(),
    }
}

pub fn decode_khier(file: &LabelFile, n: usize) -> Result<Vec<ColoringLabel>, IoError> {
    check_len(file, n)?;
    file.labels.iter().map(|e| parse_coloring(&e.primary)).collect()
}

pub fn encode_dfree(out: &[WeightPrimary], params: Meta) -> LabelFile {
    LabelFile {
        labels: out
            .iter()
            .map(|p| LabelEntry { primary: p.as_str().to_string(), ..Default::default() })
            .collect(),
        params,
        problem: "dfree".to_string(),
    }
}

pub fn decode_dfree(file: &LabelFile, n: usize) -> Result<Vec<WeightPrimary>, IoError> {
    check_len(file, n)?;
    file.labels.iter().map(|e| parse_primary(&e.primary)).collect()
}

pub fn encode_weighted(out: &[MixedOut], params: Meta) -> LabelFile {
    let labels = out
        .iter()
        .map(|m| match m {
            MixedOut::Active(c) => {
                LabelEntry { primary: c.as_str().to_string(), ..Default::default() }
            }
            MixedOut::Weight(w) => LabelEntry {
                primary: w.primary.as_str().to_string(),
                secondary: w.secondary.map(|c| c.as_str().to_string()),
                orient: None,
            },
        })
        .collect();
    LabelFile { labels, params, problem: "weighted".to_string() }
}

pub fn decode_weighted(
    file: &LabelFile,
    inputs: &[InputLabel],
) -> Result<Vec<MixedOut>, IoError> {
    check_len(file, inputs.len())?;
    file.labels
        .iter()
        .zip(inputs)
        .map(|(e, &input)| match input {
            InputLabel::Active => Ok(MixedOut::Active(parse_coloring(&e.primary)?)),
            InputLabel::Weight => Ok(MixedOut::Weight(WeightOutput {
                primary: parse_primary(&e.primary)?,
                secondary: e.secondary.as_deref().map(parse_coloring).transpose()?,
            })),
        })
        .collect()
}

pub fn encode_hier(tree: &Tree, out: &HierLabeling, params: Meta) -> LabelFile {
    let labels = out
        .tags
        .iter()
        .enumerate()
        .map(|(v, t)| LabelEntry {
            primary: t.as_string(),
            secondary: None,
            orient: orient_entry(tree, &out.orient, v),
        })
        .collect();
    LabelFile { labels, params, problem: "hier".to_string() }
}

pub fn decode_hier(file: &LabelFile, n: usize) -> Result<HierLabeling, IoError> {
    check_len(file, n)?;
    let tags = file
        .labels
        .iter()
        .map(|e| parse_tag(&e.primary))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(HierLabeling { tags, orient: orientations_from_entries(&file.labels)? })
}

pub fn encode_waug(tree: &Tree, out: &WaugLabeling, params: Meta) -> LabelFile {
    let labels = out
        .nodes
        .iter()
        .enumerate()
        .map(|(v, node)| match node {
            WaugOut::Active(c) => {
                LabelEntry { primary: c.as_str().to_string(), ..Default::default() }
            }
            WaugOut::Weight { tag, secondary } => LabelEntry {
                primary: tag.as_string(),
                secondary: Some(secondary.as_string()),
                orient: orient_entry(tree, &out.orient, v),
            },
        })
        .collect();
    LabelFile { labels, params, problem: "waug".to_string() }
}

pub fn decode_waug(file: &LabelFile, inputs: &[InputLabel]) -> Result<WaugLabeling, IoError> {
    check_len(file, inputs.len())?;
    let nodes = file
        .labels
        .iter()
        .zip(inputs)
        .map(|(e, &input)| match input {
            InputLabel::Active => Ok(WaugOut::Active(parse_coloring(&e.primary)?)),
            InputLabel::Weight => {
                let tag = parse_tag(&e.primary)?;
                let sec = e
                    .secondary
                    .as_deref()
                    .ok_or_else(|| IoError::BadLabel("missing secondary".into()))?;
                let secondary = if sec == "Decline" {
                    WaugSecondary::Decline
                } else {
                    WaugSecondary::Col(parse_coloring(sec)?)
                };
                Ok(WaugOut::Weight { tag, secondary })
            }
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    Ok(WaugLabeling { nodes, orient: orientations_from_entries(&file.labels)? })
}

fn check_len(file: &LabelFile, n: usize) -> Result<(), IoError> {
    if file.labels.len() != n {
        return Err(IoError::LabelCount(file.labels.len(), n));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::path_graph;

    #[test]
    fn graph_roundtrip_bit_exact() {
        let t = path_graph(4).unwrap();
        let mut meta = Meta::new();
        meta.insert("family".into(), serde_json::json!("lb"));
        meta.insert("k".into(), serde_json::json!(2));
        let f = GraphFile::from_tree(&t, Some(&[InputLabel::Active; 4]), Some(meta));
        let s1 = f.to_canonical_json();
        let f2 = GraphFile::from_json(&s1).unwrap();
        let s2 = f2.to_canonical_json();
        assert_eq!(s1, s2);
        assert_eq!(f2.to_tree().unwrap(), t);
        // keys really are sorted in the canonical form
        let pos = |key: &str| s1.find(key).unwrap();
        assert!(pos("\"edges\"") < pos("\"inputs\""));
        assert!(pos("\"inputs\"") < pos("\"meta\""));
        assert!(pos("\"meta\"") < pos("\"n\""));
    }

    #[test]
    fn hier_labeling_roundtrip() {
        let t = path_graph(3).unwrap();
        let mut orient = Orientations::new();
        orient.orient(0, 1);
        orient.orient(2, 1);
        let lab = HierLabeling {
            tags: vec![HierTag::rake(1), HierTag::rake(2), HierTag::rake(1)],
            orient,
        };
        let f = encode_hier(&t, &lab, Meta::new());
        let back = decode_hier(&LabelFile::from_json(&f.to_canonical_json()).unwrap(), 3).unwrap();
        assert_eq!(back, lab);
    }

    #[test]
    fn weighted_roundtrip() {
        let inputs = [InputLabel::Active, InputLabel::Weight];
        let out = vec![
            MixedOut::Active(ColoringLabel::W),
            MixedOut::Weight(WeightOutput {
                primary: WeightPrimary::Copy,
                secondary: Some(ColoringLabel::W),
            }),
        ];
        let f = encode_weighted(&out, Meta::new());
        let back = decode_weighted(&f, &inputs).unwrap();
        assert_eq!(back, out);
    }
}
