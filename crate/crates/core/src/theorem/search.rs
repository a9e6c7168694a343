use serde::Serialize;

use super::solutions::Relation;
use crate::cf::{Cylinder, Digit};
use crate::quadfield::{QuadRat, Rat};

/// Allowed partial quotients during the search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DigitRule {
    /// First digit at most 3, later digits at most 2.
    FirstAtMostThree,
    /// Every digit at most 2.
    AllAtMostTwo,
}

impl DigitRule {
    fn choices(self, position: usize) -> &'static [Digit] {
        match (self, position) {
            (DigitRule::FirstAtMostThree, 0) => &[1, 2, 3],
            _ => &[1, 2],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub relation: Relation,
    pub rule: DigitRule,
    pub depth: usize,
    /// A depth-`depth` triple is kept only if some extension survives to
    /// `depth + lookahead`.
    pub lookahead: usize,
}

impl SearchConfig {
    pub fn new(relation: Relation, depth: usize) -> Self {
        SearchConfig {
            relation,
            rule: DigitRule::FirstAtMostThree,
            depth,
            lookahead: DEFAULT_LOOKAHEAD,
        }
    }
}

pub const DEFAULT_LOOKAHEAD: usize = 8;
pub const MAX_SEARCH_DEPTH: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub survivors: Vec<[Vec<Digit>; 3]>,
    pub nodes: usize,
}

type Node = [Cylinder; 3];

fn alive(node: &Node, relation: Relation) -> bool {
    let [(xl, xh), (yl, yh), (zl, zh)] = [node[0].hull(), node[1].hull(), node[2].hull()];
    if xl >= yh {
        return false;
    }
    match relation {
        Relation::SumIsOne => {
            let one = Rat::from_integer(1.into());
            yl < zh && &xl + &yl + &zl < one && one < &xh + &yh + &zh
        }
        Relation::XPlusYIsZ => &xl + &yl - &zh < Rat::default() && Rat::default() < &xh + &yh - &zl,
    }
}

/// Widest component still shorter than `depth`; ties go to the lowest index.
fn branch_index(node: &Node, depth: usize) -> Option<usize> {
    let mut best: Option<(usize, Rat)> = None;
    for (i, c) in node.iter().enumerate() {
        if c.len() >= depth {
            continue;
        }
        let w = c.width();
        if best.as_ref().is_none_or(|(_, bw)| &w > bw) {
            best = Some((i, w));
        }
    }
    best.map(|(i, _)| i)
}

struct Walker<'a> {
    cfg: &'a SearchConfig,
    nodes: usize,
}

impl Walker<'_> {
    /// Collects full-depth survivors below `node` (or stops at the first one
    /// when `first_only`).
    fn walk(&mut self, node: Node, depth: usize, first_only: bool, out: &mut Vec<Node>) {
        self.nodes += 1;
        if !alive(&node, self.cfg.relation) {
            return;
        }
        let Some(i) = branch_index(&node, depth) else {
            out.push(node);
            return;
        };
        for &b in self.cfg.rule.choices(node[i].len()) {
            let mut child = node.clone();
            child[i] = node[i].child(b);
            self.walk(child, depth, first_only, out);
            if first_only && !out.is_empty() {
                return;
            }
        }
    }
}

/// Branch-and-bound over cylinder triples with exact interval pruning.
pub fn search_triples(cfg: &SearchConfig) -> SearchResult {
    let mut walker = Walker { cfg, nodes: 0 };
    let mut raw = Vec::new();
    let root = [Cylinder::root(), Cylinder::root(), Cylinder::root()];
    walker.walk(root, cfg.depth, false, &mut raw);
    let mut survivors = Vec::new();
    for node in raw {
        let mut probe = Vec::new();
        if cfg.lookahead > 0 {
            walker.walk(node.clone(), cfg.depth + cfg.lookahead, true, &mut probe);
            if probe.is_empty() {
                continue;
            }
        }
        survivors.push(node.map(|c| c.word().to_vec()));
    }
    SearchResult {
        survivors,
        nodes: walker.nodes,
    }
}

/// Whether `value` lies in the closed hull of the cylinder of `word`.
pub fn hull_contains(word: &[Digit], value: &QuadRat) -> bool {
    let (lo, hi) = Cylinder::new(word)
        .expect("search words have positive digits")
        .hull();
    let d = value.d();
    let lo = QuadRat::from_rat(&lo, d).expect("supported radicand");
    let hi = QuadRat::from_rat(&hi, d).expect("supported radicand");
    lo <= *value && *value <= hi
}

/// Whether a survivor's three cylinders contain the three values.
pub fn survivor_contains(survivor: &[Vec<Digit>; 3], values: [&QuadRat; 3]) -> bool {
    survivor
        .iter()
        .zip(values)
        .all(|(w, v)| hull_contains(w, v))
}
