//! Checker verdicts. Checkers report every violation, not just the first.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub node: usize,
    pub rule: &'static str,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Verdict {
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, node: usize, rule: &'static str, message: String) {
        self.violations.push(Violation { node, rule, message });
    }

    pub fn absorb(&mut self, other: Verdict) {
        self.violations.extend(other.violations);
    }

    /// Absorbs a verdict whose node indices live in a subgraph, remapping them
    /// through `back` to the parent graph.
    pub fn absorb_mapped(&mut self, other: Verdict, back: &[usize]) {
        for mut v in other.violations {
            v.node = back[v.node];
            self.violations.push(v);
        }
    }
}
