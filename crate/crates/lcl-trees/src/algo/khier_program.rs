//! The hierarchical coloring algorithm as a message-passing node program for
//! the round engine.
//!
//! Nodes start with 1-hop knowledge (own id plus neighbor ids and degrees),
//! gossip peel stages until everyone knows its level, then follow the phase
//! schedule s_1 = 0, s_{i+1} = s_i + 2*gamma_i + k. In phase i the maximal
//! undecided level-i paths measure themselves by endpoint floods capped at
//! gamma_i and decide at s_i + 2*gamma_i; exemption announcements then
//! cascade one hop per round. The last phase either 2-colors from uncapped
//! endpoint floods (a node stops as soon as both endpoint distances are in)
//! or runs Cole-Vishkin with a globally fixed iteration count, three
//! elimination rounds and one repair round, mirroring [three_color_path_with]
//! step for step.
//!
//! This is the textbook algorithm without the conflict fixpoint of the
//! direct solver, so its output is only guaranteed valid on conflict-free
//! instances; there it matches [generic_khier] output for output and round
//! for round, which the tests pin down.
//!
//! [generic_khier]: crate::algo::generic_khier
//! [three_color_path_with]: crate::algo::three_color_path_with

use crate::algo::path_color::cv_iterations;
use crate::labels::{ColoringLabel, Variant};
use crate::sim::{NodeCtx, NodeProgram, Step};
use crate::tree::Tree;
use ColoringLabel::{B, D, E, G, R, W, Y};

#[derive(Clone)]
pub enum KhierMsg {
    /// My peel removal stage, as far as I have computed it.
    Peel(Option<u32>),
    /// Final announcement, sent alongside the output.
    Decided { label: ColoringLabel, level: u32 },
    /// Path measurement: `dist` hops from the endpoint with id `endpoint`.
    Flood { endpoint: u64, dist: u64 },
    /// Cole-Vishkin color exchange along the path.
    Cv { color: u64, parent_is_you: bool },
}

pub struct KhierProgram {
    pub k: u32,
    pub gammas: Vec<u64>,
    pub variant: Variant,
    /// Cole-Vishkin iteration count, fixed a priori from the id space.
    pub cv_iters: u64,
}

impl KhierProgram {
    pub fn new(tree: &Tree, k: u32, gammas: Vec<u64>, variant: Variant) -> KhierProgram {
        assert_eq!(gammas.len() + 1, k as usize, "need k-1 gammas");
        assert!(gammas.iter().all(|&g| g >= 1));
        let id_max = tree.ids().iter().copied().max().unwrap_or(1);
        KhierProgram { k, gammas, variant, cv_iters: cv_iterations(id_max) }
    }

    fn phase_start(&self, i: u32) -> u64 {
        (1..i).map(|j| 2 * self.gammas[j as usize - 1] + self.k as u64).sum()
    }

    fn finish(&self, st: &KhierState, label: ColoringLabel, level: u32, mut carry: KStep) -> KStep {
        carry
            .messages
            .extend(st.nbrs.iter().map(|&u| (u, KhierMsg::Decided { label, level })));
        carry.output = Some(label);
        carry
    }
}

pub struct KhierState {
    nbrs: Vec<usize>,
    nbr_ids: Vec<u64>,
    own_id: u64,
    // peeling; positions index into nbrs
    own_stage: Option<u32>,
    nbr_stage: Vec<Option<u32>>,
    computed_upto: u32,
    nbr_decided: Vec<Option<(ColoringLabel, u32)>>,
    // path phase
    path_nbrs: Vec<usize>,
    floods: [Option<(u64, u64)>; 2], // per side: (endpoint id, distance)
    // cole-vishkin
    parent: Option<usize>,
    children: Vec<usize>,
    color: u64,
}

impl KhierState {
    fn level(&self, k: u32) -> Option<u32> {
        match self.own_stage {
            Some(s) => Some(s),
            None if self.computed_upto >= k => Some(k + 1),
            None => None,
        }
    }
}

type KStep = Step<KhierMsg, ColoringLabel>;

impl NodeProgram for KhierProgram {
    type State = KhierState;
    type Msg = KhierMsg;
    type Out = ColoringLabel;

    fn init(&self, v: usize, ctx: &NodeCtx) -> KhierState {
        let nbrs: Vec<usize> = ctx.tree.neighbors(v).collect();
        let nbr_ids = nbrs.iter().map(|&u| ctx.id(u)).collect();
        // stage-1 removals depend only on degrees, which are 1-hop knowledge
        let nbr_stage = nbrs
            .iter()
            .map(|&u| if ctx.tree.degree(u) <= 2 { Some(1) } else { None })
            .collect();
        let own_stage = if ctx.tree.degree(v) <= 2 { Some(1) } else { None };
        let deg = nbrs.len();
        KhierState {
            nbrs,
            nbr_ids,
            own_id: ctx.id(v),
            own_stage,
            nbr_stage,
            computed_upto: 1,
            nbr_decided: vec![None; deg],
            path_nbrs: Vec::new(),
            floods: [None; 2],
            parent: None,
            children: Vec::new(),
            color: 0,
        }
    }

    fn step(
        &self,
        round: u64,
        _v: usize,
        _ctx: &NodeCtx,
        st: &mut KhierState,
        inbox: &[(usize, KhierMsg)],
    ) -> KStep {
        let k = self.k;
        let mut out = KStep::silent();

        // ingest the inbox
        let mut cv_snapshot: Vec<Option<u64>> = vec![None; st.nbrs.len()];
        let mut new_floods: Vec<(usize, u64, u64)> = Vec::new();
        for (from, msg) in inbox {
            let pos = st.nbrs.iter().position(|u| u == from).unwrap();
            match msg {
                KhierMsg::Peel(s) => {
                    if s.is_some() {
                        st.nbr_stage[pos] = *s;
                    }
                }
                KhierMsg::Decided { label, level } => {
                    st.nbr_decided[pos] = Some((*label, *level));
                }
                KhierMsg::Flood { endpoint, dist } => new_floods.push((pos, *endpoint, *dist)),
                KhierMsg::Cv { color, parent_is_you } => {
                    cv_snapshot[pos] = Some(*color);
                    if *parent_is_you && !st.children.contains(&pos) {
                        st.children.push(pos);
                    }
                }
            }
        }

        // advance the peel computation as far as the message timing allows:
        // at round r, neighbor statuses are complete through stage r+1, so
        // the own stage-(r+2) check is sound
        let limit = (round + 2).min(k as u64) as u32;
        while st.computed_upto < limit {
            let s = st.computed_upto + 1;
            if st.own_stage.is_none() {
                let alive = st
                    .nbr_stage
                    .iter()
                    .filter(|t| t.map_or(true, |r| r >= s))
                    .count();
                if alive <= 2 {
                    st.own_stage = Some(s);
                }
            }
            st.computed_upto = s;
        }
        if k >= 2 && round <= k as u64 - 2 {
            out.messages
                .extend(st.nbrs.iter().map(|&u| (u, KhierMsg::Peel(st.own_stage))));
        }

        let Some(level) = st.level(k) else { return out };

        // everything that survives k peel rounds is exempt
        if level == k + 1 {
            return self.finish(st, E, level, out);
        }

        // exemption trigger: a strictly lower-level neighbor went W, B or E
        if (2..=k).contains(&level) {
            let triggered = st
                .nbr_decided
                .iter()
                .any(|d| matches!(d, Some((l, lv)) if *lv < level && (l.is_color2() || *l == E)));
            if triggered {
                return self.finish(st, E, level, out);
            }
        }

        let s_i = self.phase_start(level);
        if round < s_i {
            return out;
        }

        if round == s_i {
            // the undecided same-level path around this node; announcements
            // from the previous phase all arrived by now, so both ends of
            // each edge agree on who is still in
            st.path_nbrs = (0..st.nbrs.len())
                .filter(|&p| st.nbr_decided[p].is_none() && st.nbr_stage[p] == Some(level))
                .collect();
            // missing sides are this node's own endpoints
            for side in st.path_nbrs.len()..2 {
                st.floods[side] = Some((st.own_id, 0));
            }
            let wants_floods = level < k || self.variant == Variant::TwoHalf;
            if wants_floods && st.path_nbrs.len() <= 1 {
                for &p in &st.path_nbrs {
                    out.messages
                        .push((st.nbrs[p], KhierMsg::Flood { endpoint: st.own_id, dist: 1 }));
                }
            }
            if self.variant == Variant::ThreeHalf && level == k {
                st.color = st.own_id; // iteration 0: colors are ids
                st.parent = st
                    .path_nbrs
                    .iter()
                    .copied()
                    .filter(|&p| st.nbr_ids[p] > st.own_id)
                    .max_by_key(|&p| st.nbr_ids[p]);
            }
        }

        // record endpoint floods and pass them along
        let gamma = if level < k { self.gammas[level as usize - 1] } else { u64::MAX };
        for (pos, endpoint, dist) in new_floods {
            let side = st.path_nbrs.iter().position(|&p| p == pos).unwrap();
            if st.floods[side].is_none() {
                st.floods[side] = Some((endpoint, dist));
                if dist < gamma {
                    for &p in &st.path_nbrs {
                        if p != pos {
                            out.messages
                                .push((st.nbrs[p], KhierMsg::Flood { endpoint, dist: dist + 1 }));
                        }
                    }
                }
            }
        }

        if level < k {
            if round == s_i + 2 * gamma {
                let label = match (st.floods[0], st.floods[1]) {
                    (Some((e1, d1)), Some((e2, d2))) if d1 + d2 + 1 < gamma => {
                        two_color_from_floods(e1, d1, e2, d2)
                    }
                    _ => D, // the path measured out to gamma or beyond
                };
                return self.finish(st, label, level, out);
            }
            return out;
        }

        // last phase
        match self.variant {
            Variant::TwoHalf => {
                if let (Some((e1, d1)), Some((e2, d2))) = (st.floods[0], st.floods[1]) {
                    let label = two_color_from_floods(e1, d1, e2, d2);
                    return self.finish(st, label, level, out);
                }
                out
            }
            Variant::ThreeHalf => {
                let t = round - s_i;
                let iters = self.cv_iters;
                if t >= 1 && t <= iters {
                    // one color halving step on the previous round's colors
                    let pc = match st.parent {
                        Some(p) => cv_snapshot[p].expect("parent color present"),
                        None => st.color ^ 1, // pseudo-parent for roots
                    };
                    let diff = st.color ^ pc;
                    let bit = diff.trailing_zeros() as u64;
                    st.color = 2 * bit + ((st.color >> bit) & 1);
                } else if t > iters && t <= iters + 3 {
                    let c = 5 - (t - iters - 1); // eliminate 5, then 4, then 3
                    if st.color == c {
                        let forest: Vec<u64> = st
                            .parent
                            .iter()
                            .chain(st.children.iter())
                            .map(|&p| cv_snapshot[p].expect("forest color present"))
                            .collect();
                        st.color = (0..3).find(|cand| !forest.contains(cand)).unwrap();
                    }
                } else if t == iters + 4 {
                    // repair round: local id minima recolor away from both
                    // path neighbors
                    if st.path_nbrs.iter().all(|&p| st.nbr_ids[p] > st.own_id) {
                        let nbr_cols: Vec<u64> =
                            st.path_nbrs.iter().map(|&p| cv_snapshot[p].unwrap()).collect();
                        st.color = (0..3).find(|cand| !nbr_cols.contains(cand)).unwrap();
                    }
                } else if t == iters + 5 {
                    let palette = [R, G, Y];
                    return self.finish(st, palette[st.color as usize], level, out);
                }
                if t < iters + 4 {
                    for &p in &st.path_nbrs {
                        out.messages.push((
                            st.nbrs[p],
                            KhierMsg::Cv { color: st.color, parent_is_you: Some(p) == st.parent },
                        ));
                    }
                }
                out
            }
        }
    }
}

/// Alternating 2-coloring anchored at the endpoint with the smaller id,
/// which gets W; the caller is `d1` hops from endpoint `e1` and `d2` from
/// `e2`.
fn two_color_from_floods(e1: u64, d1: u64, e2: u64, d2: u64) -> ColoringLabel {
    let d_anchor = if e1 <= e2 { d1 } else { d2 };
    if d_anchor % 2 == 0 {
        W
    } else {
        B
    }
}
