//! Finite preference relations over edge identifiers.
//!
//! A relation is stored in decomposed form: strict pairs (`left ≻ right`)
//! and indifference pairs. Incomparability is the absence of any pair and
//! reflexivity is implicit. Only the strict part constrains maximal sets
//! and linear extensions.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::edge_set::EdgeSet;
use crate::error::{Error, Result};
use crate::graph::EdgeId;

/// The four fundamental relations partitioning ordered pairs of distinct elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum FundamentalKind {
    Indifference,
    StrictPreference,
    StrictAversion,
    Incomparability,
}

impl FundamentalKind {
    /// The kind of `(y, x)` given the kind of `(x, y)`.
    pub fn converse(self) -> Self {
        match self {
            FundamentalKind::StrictPreference => FundamentalKind::StrictAversion,
            FundamentalKind::StrictAversion => FundamentalKind::StrictPreference,
            other => other,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairKind {
    Strict,
    Indifferent,
}

/// A total order of the whole ground set, as edge indices from best to worst.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearExtension(pub Vec<usize>);

impl LinearExtension {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True when this is a permutation of the ground set placing every
    /// strict pair's left element before its right element.
    pub fn extends(&self, rel: &EdgeRelation) -> bool {
        let mut position = vec![usize::MAX; rel.len()];
        if self.0.len() != rel.len() {
            return false;
        }
        for (i, &e) in self.0.iter().enumerate() {
            if e >= rel.len() || position[e] != usize::MAX {
                return false;
            }
            position[e] = i;
        }
        rel.strict_pairs().all(|(l, r)| position[l] < position[r])
    }
}

/// Deterministic total order used to break ties between maximal elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// Least edge id first.
    #[default]
    Lexicographic,
    /// A pseudo-random permutation of the edges derived from the seed.
    Seeded(u64),
}

impl TieBreak {
    /// `ranks[e]` is the priority of edge `e` (lower wins).
    pub fn ranks(&self, ground: &[EdgeId]) -> Vec<usize> {
        let mut order: Vec<usize> = (0..ground.len()).collect();
        match *self {
            TieBreak::Lexicographic => order.sort_by(|&a, &b| ground[a].cmp(&ground[b])),
            TieBreak::Seeded(seed) => order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed)),
        }
        let mut ranks = vec![0; ground.len()];
        for (rank, e) in order.into_iter().enumerate() {
            ranks[e] = rank;
        }
        ranks
    }
}

impl FromStr for TieBreak {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s == "lex" {
            return Ok(TieBreak::Lexicographic);
        }
        s.strip_prefix("seed:")
            .and_then(|n| n.parse().ok())
            .map(TieBreak::Seeded)
            .ok_or_else(|| format!("expected `lex` or `seed:N`, got `{s}`"))
    }
}

impl fmt::Display for TieBreak {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TieBreak::Lexicographic => f.write_str("lex"),
            TieBreak::Seeded(seed) => write!(f, "seed:{seed}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct EdgeRelation {
    ground: Vec<EdgeId>,
    index: HashMap<EdgeId, usize>,
    strict: Vec<(usize, usize)>,
    indifferent: Vec<(usize, usize)>,
    strict_set: HashSet<(usize, usize)>,
    indifferent_set: HashSet<(usize, usize)>,
    successors: Vec<Vec<usize>>,
    predecessors: Vec<Vec<usize>>,
    lex_ranks: Vec<usize>,
}

impl PartialEq for EdgeRelation {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground
            && self.strict_set == other.strict_set
            && self.indifferent_set == other.indifferent_set
    }
}

impl Eq for EdgeRelation {}

fn unordered(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl EdgeRelation {
    /// Empty relation (everything incomparable) over the given ground set.
    pub fn new(ground: impl IntoIterator<Item = EdgeId>) -> Result<Self> {
        let ground: Vec<EdgeId> = ground.into_iter().collect();
        let mut index = HashMap::with_capacity(ground.len());
        for (i, id) in ground.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::DuplicateEdge(id.0.clone()));
            }
        }
        let n = ground.len();
        let lex_ranks = TieBreak::Lexicographic.ranks(&ground);
        Ok(EdgeRelation {
            lex_ranks,
            ground,
            index,
            strict: Vec::new(),
            indifferent: Vec::new(),
            strict_set: HashSet::new(),
            indifferent_set: HashSet::new(),
            successors: vec![Vec::new(); n],
            predecessors: vec![Vec::new(); n],
        })
    }

    fn contradiction(&self, l: usize, r: usize, reason: &'static str) -> Error {
        Error::ContradictoryPreference {
            left: self.ground[l].0.clone(),
            right: self.ground[r].0.clone(),
            reason,
        }
    }

    fn check_pair(&self, l: usize, r: usize) -> Result<()> {
        for x in [l, r] {
            if x >= self.len() {
                return Err(Error::UnknownEdge(format!("#{x}")));
            }
        }
        if l == r {
            return Err(self.contradiction(l, r, "relates an edge to itself"));
        }
        Ok(())
    }

    /// Records `left ≻ right`. Repeating an existing pair is a no-op.
    pub fn add_strict(&mut self, left: usize, right: usize) -> Result<()> {
        self.check_pair(left, right)?;
        if self.strict_set.contains(&(right, left)) {
            return Err(self.contradiction(left, right, "is declared strict in both directions"));
        }
        if self.indifferent_set.contains(&unordered(left, right)) {
            return Err(self.contradiction(left, right, "is declared both strict and indifferent"));
        }
        if self.strict_set.insert((left, right)) {
            self.strict.push((left, right));
            self.successors[left].push(right);
            self.predecessors[right].push(left);
        }
        Ok(())
    }

    pub fn add_indifferent(&mut self, left: usize, right: usize) -> Result<()> {
        self.check_pair(left, right)?;
        if self.strict_set.contains(&(left, right)) || self.strict_set.contains(&(right, left)) {
            return Err(self.contradiction(left, right, "is declared both strict and indifferent"));
        }
        if self.indifferent_set.insert(unordered(left, right)) {
            self.indifferent.push(unordered(left, right));
        }
        Ok(())
    }

    pub fn add_pair(&mut self, left: &str, right: &str, kind: PairKind) -> Result<()> {
        let l = self.require(left)?;
        let r = self.require(right)?;
        match kind {
            PairKind::Strict => self.add_strict(l, r),
            PairKind::Indifferent => self.add_indifferent(l, r),
        }
    }

    fn require(&self, id: &str) -> Result<usize> {
        self.index(id)
            .ok_or_else(|| Error::UnknownEdge(id.to_owned()))
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    /// Tie-break priorities over the ground set; the lexicographic ones are
    /// computed once at construction.
    pub fn tie_ranks(&self, tie_break: &TieBreak) -> Vec<usize> {
        match tie_break {
            TieBreak::Lexicographic => self.lex_ranks.clone(),
            seeded => seeded.ranks(&self.ground),
        }
    }

    pub fn ground(&self) -> &[EdgeId] {
        &self.ground
    }

    pub fn index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn id(&self, e: usize) -> &EdgeId {
        &self.ground[e]
    }

    /// Strict pairs `(left, right)` in insertion order.
    pub fn strict_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.strict.iter().copied()
    }

    /// Indifference pairs, each reported once with the smaller index first.
    pub fn indifferent_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.indifferent.iter().copied()
    }

    pub fn strict_count(&self) -> usize {
        self.strict.len()
    }

    /// Elements directly strictly preferred to `e`.
    pub fn predecessors(&self, e: usize) -> &[usize] {
        &self.predecessors[e]
    }

    /// Elements `e` is directly strictly preferred to.
    pub fn successors(&self, e: usize) -> &[usize] {
        &self.successors[e]
    }

    pub fn prefers(&self, x: usize, y: usize) -> bool {
        self.strict_set.contains(&(x, y))
    }

    /// `x ≿ y`: reflexive, strict, or indifferent.
    pub fn weakly_prefers(&self, x: usize, y: usize) -> bool {
        x == y || self.prefers(x, y) || self.indifferent_set.contains(&unordered(x, y))
    }

    pub fn decompose(&self, x: usize, y: usize) -> Result<FundamentalKind> {
        self.check_pair(x, y)?;
        Ok(
            match (self.weakly_prefers(x, y), self.weakly_prefers(y, x)) {
                (true, true) => FundamentalKind::Indifference,
                (true, false) => FundamentalKind::StrictPreference,
                (false, true) => FundamentalKind::StrictAversion,
                (false, false) => FundamentalKind::Incomparability,
            },
        )
    }

    pub fn decompose_ids(&self, x: &str, y: &str) -> Result<FundamentalKind> {
        self.decompose(self.require(x)?, self.require(y)?)
    }

    /// Some element lying on a circuit of strict pairs, if any.
    pub fn strict_circuit_member(&self) -> Option<usize> {
        // 0 unvisited, 1 on stack, 2 done
        let mut state = vec![0u8; self.len()];
        for root in 0..self.len() {
            if state[root] != 0 {
                continue;
            }
            let mut stack = vec![(root, 0usize)];
            state[root] = 1;
            while let Some(&mut (node, ref mut next)) = stack.last_mut() {
                if let Some(&succ) = self.successors[node].get(*next) {
                    *next += 1;
                    match state[succ] {
                        0 => {
                            state[succ] = 1;
                            stack.push((succ, 0));
                        }
                        1 => return Some(succ),
                        _ => {}
                    }
                } else {
                    state[node] = 2;
                    stack.pop();
                }
            }
        }
        None
    }

    pub fn is_p_acyclic(&self) -> bool {
        self.strict_circuit_member().is_none()
    }

    pub(crate) fn require_p_acyclic(&self) -> Result<()> {
        match self.strict_circuit_member() {
            Some(e) => Err(Error::NotPAcyclic(self.ground[e].0.clone())),
            None => Ok(()),
        }
    }

    /// Elements of `elements` not strictly beaten by another member.
    pub fn maximal_set(&self, elements: &EdgeSet) -> EdgeSet {
        let mut out = EdgeSet::empty(self.len());
        for x in elements.iter() {
            if !self.predecessors[x].iter().any(|&y| elements.contains(y)) {
                out.insert(x);
            }
        }
        out
    }

    /// Elements of `elements` weakly preferred to every member.
    pub fn optimal_set(&self, elements: &EdgeSet) -> EdgeSet {
        let mut out = EdgeSet::empty(self.len());
        for x in elements.iter() {
            if elements.iter().all(|y| self.weakly_prefers(x, y)) {
                out.insert(x);
            }
        }
        out
    }

    /// Repeatedly removes the tie-break-least maximal element of the remainder.
    pub fn greedy_linear_extension(&self, tie_break: &TieBreak) -> Result<LinearExtension> {
        let ranks = self.tie_ranks(tie_break);
        let mut pending: Vec<usize> = self.predecessors.iter().map(Vec::len).collect();
        let mut heap: BinaryHeap<Reverse<(usize, usize)>> = (0..self.len())
            .filter(|&e| pending[e] == 0)
            .map(|e| Reverse((ranks[e], e)))
            .collect();
        let mut order = Vec::with_capacity(self.len());
        while let Some(Reverse((_, e))) = heap.pop() {
            order.push(e);
            for &f in &self.successors[e] {
                pending[f] -= 1;
                if pending[f] == 0 {
                    heap.push(Reverse((ranks[f], f)));
                }
            }
        }
        if order.len() < self.len() {
            self.require_p_acyclic()?;
            unreachable!("topological sort stalled on an acyclic relation");
        }
        Ok(LinearExtension(order))
    }

    /// Every linear extension, in lexicographic order of edge ids position by position.
    pub fn enumerate_linear_extensions(&self, cap: usize) -> Result<Vec<LinearExtension>> {
        self.require_p_acyclic()?;
        let ranks = self.lex_ranks.clone();
        let mut by_rank: Vec<usize> = (0..self.len()).collect();
        by_rank.sort_by_key(|&e| ranks[e]);
        let mut walk = ExtensionWalk {
            rel: self,
            by_rank,
            pending: self.predecessors.iter().map(Vec::len).collect(),
            placed: vec![false; self.len()],
            prefix: Vec::with_capacity(self.len()),
            out: Vec::new(),
            cap,
        };
        walk.run()?;
        Ok(walk.out)
    }

    /// Number of linear extensions, by dynamic programming over subsets.
    ///
    /// Limited to ground sets of at most `MAX_COUNTED` elements.
    pub fn count_linear_extensions(&self) -> Result<u128> {
        const MAX_COUNTED: usize = 20;
        if self.len() > MAX_COUNTED {
            return Err(Error::OracleScaleExceeded {
                what: "elements for extension counting",
                cap: MAX_COUNTED,
            });
        }
        self.require_p_acyclic()?;
        let pred_mask: Vec<u32> = self
            .predecessors
            .iter()
            .map(|ps| ps.iter().fold(0u32, |m, &p| m | 1 << p))
            .collect();
        let full = (1usize << self.len()) - 1;
        let mut ways = vec![0u128; full + 1];
        ways[0] = 1;
        for placed in 0..full {
            if ways[placed] == 0 {
                continue;
            }
            for (e, &preds) in pred_mask.iter().enumerate() {
                let bit = 1usize << e;
                if placed & bit == 0 && (preds as usize) & !placed == 0 {
                    ways[placed | bit] += ways[placed];
                }
            }
        }
        Ok(ways[full])
    }

    /// Restriction to `keep` (reindexed in the given order); pairs with a
    /// dropped element vanish.
    pub fn restrict(&self, keep: &[EdgeId]) -> Result<EdgeRelation> {
        let mut out = EdgeRelation::new(keep.iter().cloned())?;
        let map: Vec<Option<usize>> = self
            .ground
            .iter()
            .map(|id| out.index(id.as_str()))
            .collect();
        for id in keep {
            self.require(id.as_str())?;
        }
        for (l, r) in self.strict_pairs() {
            if let (Some(l), Some(r)) = (map[l], map[r]) {
                out.add_strict(l, r)?;
            }
        }
        for (l, r) in self.indifferent_pairs() {
            if let (Some(l), Some(r)) = (map[l], map[r]) {
                out.add_indifferent(l, r)?;
            }
        }
        Ok(out)
    }
}

struct ExtensionWalk<'a> {
    rel: &'a EdgeRelation,
    by_rank: Vec<usize>,
    pending: Vec<usize>,
    placed: Vec<bool>,
    prefix: Vec<usize>,
    out: Vec<LinearExtension>,
    cap: usize,
}

impl ExtensionWalk<'_> {
    fn run(&mut self) -> Result<()> {
        if self.prefix.len() == self.rel.len() {
            if self.out.len() == self.cap {
                return Err(Error::OracleScaleExceeded {
                    what: "linear extensions",
                    cap: self.cap,
                });
            }
            self.out.push(LinearExtension(self.prefix.clone()));
            return Ok(());
        }
        for i in 0..self.by_rank.len() {
            let e = self.by_rank[i];
            if self.placed[e] || self.pending[e] != 0 {
                continue;
            }
            self.placed[e] = true;
            self.prefix.push(e);
            for &f in self.rel.successors(e) {
                self.pending[f] -= 1;
            }
            let result = self.run();
            for &f in self.rel.successors(e) {
                self.pending[f] += 1;
            }
            self.prefix.pop();
            self.placed[e] = false;
            result?;
        }
        Ok(())
    }
}
