//! Output label vocabularies shared by checkers and solvers.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Labels of the hierarchical half-coloring problems. W/B/E/D belong to the
/// 2.5 variant; R/G/Y are additionally legal at level k in the 3.5 variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ColoringLabel {
    W,
    B,
    E,
    D,
    R,
    G,
    Y,
}

impl ColoringLabel {
    pub fn is_color2(self) -> bool {
        matches!(self, ColoringLabel::W | ColoringLabel::B)
    }

    pub fn is_color3(self) -> bool {
        matches!(self, ColoringLabel::R | ColoringLabel::G | ColoringLabel::Y)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ColoringLabel::W => "W",
            ColoringLabel::B => "B",
            ColoringLabel::E => "E",
            ColoringLabel::D => "D",
            ColoringLabel::R => "R",
            ColoringLabel::G => "G",
            ColoringLabel::Y => "Y",
        }
    }
}

impl fmt::Display for ColoringLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    TwoHalf,
    ThreeHalf,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::TwoHalf => "2.5",
            Variant::ThreeHalf => "3.5",
        }
    }
}

/// Primary output of a weight node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeightPrimary {
    Decline,
    Connect,
    Copy,
}

impl WeightPrimary {
    pub fn as_str(self) -> &'static str {
        match self {
            WeightPrimary::Decline => "Decline",
            WeightPrimary::Connect => "Connect",
            WeightPrimary::Copy => "Copy",
        }
    }
}

/// Weight node output: secondary present exactly when primary = Copy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeightOutput {
    pub primary: WeightPrimary,
    pub secondary: Option<ColoringLabel>,
}

/// Per-node output of the weighted coloring problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MixedOut {
    Active(ColoringLabel),
    Weight(WeightOutput),
}

/// Label of the hierarchical labeling problem: R_i (rake) or C_i (compress),
/// totally ordered R_1 < C_1 < R_2 < ... < C_{k-1} < R_k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HierTag {
    pub compress: bool,
    pub index: u32,
}

impl HierTag {
    pub fn rake(i: u32) -> HierTag {
        HierTag { compress: false, index: i }
    }

    pub fn comp(i: u32) -> HierTag {
        HierTag { compress: true, index: i }
    }

    /// Rank in the total order: R_i -> 2i-1, C_i -> 2i.
    pub fn rank(self) -> u32 {
        if self.compress {
            2 * self.index
        } else {
            2 * self.index - 1
        }
    }

    pub fn as_string(self) -> String {
        if self.compress {
            format!("C{}", self.index)
        } else {
            format!("R{}", self.index)
        }
    }
}

/// Edge orientation state from the perspective of the smaller endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EdgeDir {
    /// min -> max
    Forward,
    /// max -> min
    Backward,
}

/// Orientation record, stored once per edge so both endpoints always agree.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Orientations {
    map: BTreeMap<(usize, usize), EdgeDir>,
}

/// Direction of an edge as seen from one endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dir {
    Out,
    In,
    None,
}

impl Orientations {
    pub fn new() -> Orientations {
        Orientations::default()
    }

    /// Orients the edge u-v from u towards v.
    pub fn orient(&mut self, u: usize, v: usize) {
        let key = (u.min(v), u.max(v));
        let dir = if u < v { EdgeDir::Forward } else { EdgeDir::Backward };
        self.map.insert(key, dir);
    }

    pub fn clear_edge(&mut self, u: usize, v: usize) {
        self.map.remove(&(u.min(v), u.max(v)));
    }

    /// Direction of edge u-v from u's point of view.
    pub fn dir(&self, u: usize, v: usize) -> Dir {
        match self.map.get(&(u.min(v), u.max(v))) {
            None => Dir::None,
            Some(EdgeDir::Forward) => {
                if u < v {
                    Dir::Out
                } else {
                    Dir::In
                }
            }
            Some(EdgeDir::Backward) => {
                if u < v {
                    Dir::In
                } else {
                    Dir::Out
                }
            }
        }
    }

    pub fn oriented_edge_count(&self) -> usize {
        self.map.len()
    }

    /// Canonical (min, max) pairs that carry an orientation.
    pub fn oriented_pairs(&self) -> impl Iterator<Item = &(usize, usize)> {
        self.map.keys()
    }
}

/// Secondary output in the weight-augmented problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WaugSecondary {
    Col(ColoringLabel),
    Decline,
}

impl WaugSecondary {
    pub fn as_string(self) -> String {
        match self {
            WaugSecondary::Col(c) => c.as_str().to_string(),
            WaugSecondary::Decline => "Decline".to_string(),
        }
    }
}

/// Per-node output of the weight-augmented problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WaugOut {
    Active(ColoringLabel),
    Weight { tag: HierTag, secondary: WaugSecondary },
}

/// Full labeling of a weight-augmented instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WaugLabeling {
    pub nodes: Vec<WaugOut>,
    pub orient: Orientations,
}

/// Full labeling of a hierarchical labeling instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HierLabeling {
    pub tags: Vec<HierTag>,
    pub orient: Orientations,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hier_tag_order() {
        // R1 < C1 < R2 < C2 < R3
        let seq = [
            HierTag::rake(1),
            HierTag::comp(1),
            HierTag::rake(2),
            HierTag::comp(2),
            HierTag::rake(3),
        ];
        for w in seq.windows(2) {
            assert!(w[0].rank() < w[1].rank());
        }
    }

    #[test]
    fn orientation_consistency() {
        let mut o = Orientations::new();
        o.orient(5, 2);
        assert_eq!(o.dir(5, 2), Dir::Out);
        assert_eq!(o.dir(2, 5), Dir::In);
        assert_eq!(o.dir(1, 2), Dir::None);
        o.orient(2, 5);
        assert_eq!(o.dir(5, 2), Dir::In);
    }
}
