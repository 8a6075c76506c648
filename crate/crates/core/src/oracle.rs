//! Brute-force ground truth: copy enumeration, exact-cover decomposition
//! search, the generic decomposition verifier, and exact `cex(n, F)` for tiny
//! `n`.
//!
//! Nothing here depends on the design-based constructions, so it can be used
//! to check them.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use crate::decomposition::{Decomposition, Host, PatternCopy};
use crate::error::{Error, Result};
use crate::graph::SmallGraph;
use crate::pattern::PatternSignature;

/// Largest host order [`enumerate_copies`] accepts by default.
pub const ENUMERATION_CAP: usize = 40;
/// Largest order [`cex_exact`] accepts by default.
pub const CEX_CAP: usize = 8;
/// Canonical codes are packed into a `u64`, which bounds any cex cap.
const CEX_HARD_CAP: usize = 11;

pub const BUDGET_ENV: &str = "INDUCED_DECOMP_BUDGET_NODES";

/// Limits for one exact-cover search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
    /// Wall-clock limit. `None` disables timing entirely (needed on targets
    /// without a clock).
    pub max_time: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 20_000_000,
            max_time: None,
        }
    }
}

impl SearchBudget {
    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget {
            max_nodes,
            max_time: None,
        }
    }

    /// Default budget with the node limit taken from
    /// `INDUCED_DECOMP_BUDGET_NODES` when set.
    pub fn from_env() -> Self {
        SearchBudget::default().with_env()
    }

    /// `self`, with the node limit replaced by `INDUCED_DECOMP_BUDGET_NODES`
    /// when that is set to a number.
    pub fn with_env(mut self) -> Self {
        if let Some(n) = std::env::var(BUDGET_ENV).ok().and_then(|s| s.trim().parse().ok()) {
            self.max_nodes = n;
        }
        self
    }
}

/// How the exact-cover search picks the edge to branch on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BranchRule {
    /// Lexicographically smallest uncovered edge.
    #[default]
    SmallestEdge,
    /// Uncovered edge with the fewest usable candidates, ties broken by
    /// edge order.
    FewestCandidates,
}

/// All placements of the pattern in `g`, one per orbit under the pattern's
/// automorphisms: classes are sorted, and among classes of equal size the
/// smallest vertices increase with the class position. With `induced` every
/// class must also be independent in `g`.
pub fn enumerate_copies(
    g: &SmallGraph,
    pattern: &PatternSignature,
    induced: bool,
) -> Result<Vec<Vec<Vec<usize>>>> {
    enumerate_copies_capped(g, pattern, induced, ENUMERATION_CAP)
}

pub fn enumerate_copies_capped(
    g: &SmallGraph,
    pattern: &PatternSignature,
    induced: bool,
    cap: usize,
) -> Result<Vec<Vec<Vec<usize>>>> {
    if g.order() > cap {
        return Err(Error::CapExceeded { n: g.order(), cap });
    }
    let sizes = pattern.parts();
    let prev_same = (0..sizes.len())
        .map(|i| (0..i).rev().find(|&j| sizes[j] == sizes[i]))
        .collect();
    let mut e = Enumerator {
        g,
        sizes,
        induced,
        prev_same,
        classes: vec![Vec::new(); sizes.len()],
        out: Vec::new(),
    };
    let all: Vec<usize> = (0..g.order()).collect();
    e.place_class(0, &all);
    Ok(e.out)
}

struct Enumerator<'a> {
    g: &'a SmallGraph,
    sizes: &'a [usize],
    induced: bool,
    prev_same: Vec<Option<usize>>,
    classes: Vec<Vec<usize>>,
    out: Vec<Vec<Vec<usize>>>,
}

impl Enumerator<'_> {
    fn place_class(&mut self, i: usize, allowed: &[usize]) {
        if i == self.sizes.len() {
            self.out.push(self.classes.clone());
            return;
        }
        let still_needed: usize = self.sizes[i..].iter().sum();
        if allowed.len() < still_needed {
            return;
        }
        self.choose(i, allowed, 0);
    }

    fn choose(&mut self, i: usize, allowed: &[usize], start: usize) {
        let remaining = self.sizes[i] - self.classes[i].len();
        if remaining == 0 {
            let class = &self.classes[i];
            let next: Vec<usize> = allowed
                .iter()
                .copied()
                .filter(|&v| class.iter().all(|&w| self.g.has_edge(v, w)))
                .collect();
            self.place_class(i + 1, &next);
            return;
        }
        let floor = if self.classes[i].is_empty() {
            self.prev_same[i].map(|j| self.classes[j][0])
        } else {
            None
        };
        for idx in start..=allowed.len().saturating_sub(remaining) {
            let v = allowed[idx];
            if floor.is_some_and(|f| v <= f) {
                continue;
            }
            if self.induced && self.classes[i].iter().any(|&w| self.g.has_edge(v, w)) {
                continue;
            }
            self.classes[i].push(v);
            self.choose(i, allowed, idx + 1);
            self.classes[i].pop();
        }
    }
}

/// Deterministic backtracking exact cover of `E(g)` by copies of the
/// pattern. Returns the first solution in branching order.
///
/// `Err(NoDecomposition)` means the search space was exhausted;
/// `Err(BudgetExceeded)` means the answer is unknown.
pub fn exact_cover_decompose(
    g: &SmallGraph,
    pattern: &PatternSignature,
    induced: bool,
    budget: SearchBudget,
) -> Result<Decomposition> {
    exact_cover_with_rule(g, pattern, induced, budget, BranchRule::default())
}

pub fn exact_cover_with_rule(
    g: &SmallGraph,
    pattern: &PatternSignature,
    induced: bool,
    budget: SearchBudget,
    rule: BranchRule,
) -> Result<Decomposition> {
    let copies = search_cover(g, pattern, induced, budget, rule)?;
    Ok(Decomposition {
        host: Host::from_graph(g),
        pattern: pattern.clone(),
        copies: copies.into_iter().map(PatternCopy::new).collect(),
        induced,
    })
}

fn search_cover(
    g: &SmallGraph,
    pattern: &PatternSignature,
    induced: bool,
    budget: SearchBudget,
    rule: BranchRule,
) -> Result<Vec<Vec<Vec<usize>>>> {
    let edges = g.edges();
    if edges.len() % pattern.edge_count() != 0 {
        return Err(Error::NoDecomposition);
    }
    if edges.is_empty() {
        return Ok(Vec::new());
    }
    let n = g.order();
    let mut edge_id = vec![usize::MAX; n * n];
    for (id, &(u, v)) in edges.iter().enumerate() {
        edge_id[u * n + v] = id;
        edge_id[v * n + u] = id;
    }
    let candidates = enumerate_copies(g, pattern, induced)?;
    let cand_edges: Vec<Vec<usize>> = candidates
        .iter()
        .map(|classes| {
            let mut ids = Vec::with_capacity(pattern.edge_count());
            for (i, a) in classes.iter().enumerate() {
                for b in &classes[i + 1..] {
                    for &u in a {
                        for &v in b {
                            ids.push(edge_id[u * n + v]);
                        }
                    }
                }
            }
            ids.sort_unstable();
            ids
        })
        .collect();
    let chosen = exact_cover_sets(edges.len(), &cand_edges, budget, rule)?;
    Ok(chosen.into_iter().map(|c| candidates[c].clone()).collect())
}

/// Exact cover of `0..universe` by pairwise disjoint members of `sets`,
/// returned as indices in the order they were chosen. Each set must be
/// sorted and free of repeats. Branching follows `rule`; among the sets
/// through the chosen element, lower indices are tried first.
pub(crate) fn exact_cover_sets(
    universe: usize,
    sets: &[Vec<usize>],
    budget: SearchBudget,
    rule: BranchRule,
) -> Result<Vec<usize>> {
    let mut by_edge = vec![Vec::new(); universe];
    for (c, set) in sets.iter().enumerate() {
        for &e in set {
            by_edge[e].push(c);
        }
    }
    let avail = by_edge.iter().map(Vec::len).collect::<Vec<_>>();
    let mut solver = CoverSearch {
        cand_edges: sets,
        by_edge: &by_edge,
        covered: vec![false; universe],
        uncovered: universe,
        dead: avail.iter().filter(|&&a| a == 0).count(),
        avail,
        blocked: vec![0; sets.len()],
        chosen: Vec::new(),
        nodes: 0,
        budget,
        started: budget.max_time.map(|_| Instant::now()),
        exceeded: false,
        rule,
    };
    if solver.search(0) {
        Ok(solver.chosen)
    } else if solver.exceeded {
        Err(Error::BudgetExceeded {
            nodes: solver.nodes,
        })
    } else {
        Err(Error::NoDecomposition)
    }
}

/// Backtracking state. `avail[e]` counts the usable candidates through edge
/// `e`, `blocked[c]` the covered edges of candidate `c`, and `dead` the
/// uncovered edges with no usable candidate left, which prunes the branch.
struct CoverSearch<'a> {
    cand_edges: &'a [Vec<usize>],
    by_edge: &'a [Vec<usize>],
    covered: Vec<bool>,
    uncovered: usize,
    avail: Vec<usize>,
    blocked: Vec<u32>,
    dead: usize,
    chosen: Vec<usize>,
    nodes: u64,
    budget: SearchBudget,
    started: Option<Instant>,
    exceeded: bool,
    rule: BranchRule,
}

impl CoverSearch<'_> {
    fn select(&mut self, c: usize) {
        for &e in &self.cand_edges[c] {
            self.covered[e] = true;
            if self.avail[e] == 0 {
                self.dead -= 1;
            }
        }
        self.uncovered -= self.cand_edges[c].len();
        for &e in &self.cand_edges[c] {
            for &other in &self.by_edge[e] {
                self.blocked[other] += 1;
                if self.blocked[other] == 1 {
                    for &f in &self.cand_edges[other] {
                        self.avail[f] -= 1;
                        if self.avail[f] == 0 && !self.covered[f] {
                            self.dead += 1;
                        }
                    }
                }
            }
        }
    }

    fn deselect(&mut self, c: usize) {
        for &e in self.cand_edges[c].iter().rev() {
            for &other in self.by_edge[e].iter().rev() {
                self.blocked[other] -= 1;
                if self.blocked[other] == 0 {
                    for &f in &self.cand_edges[other] {
                        if self.avail[f] == 0 && !self.covered[f] {
                            self.dead -= 1;
                        }
                        self.avail[f] += 1;
                    }
                }
            }
        }
        for &e in &self.cand_edges[c] {
            self.covered[e] = false;
            if self.avail[e] == 0 {
                self.dead += 1;
            }
        }
        self.uncovered += self.cand_edges[c].len();
    }

    fn over_budget(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            self.exceeded = true;
        } else if let (Some(limit), Some(start)) = (self.budget.max_time, self.started) {
            if self.nodes % 1024 == 0 && start.elapsed() > limit {
                self.exceeded = true;
            }
        }
        self.exceeded
    }

    fn pick_edge(&self, from: usize) -> Option<usize> {
        match self.rule {
            BranchRule::SmallestEdge => (from..self.covered.len()).find(|&e| !self.covered[e]),
            BranchRule::FewestCandidates => (0..self.covered.len())
                .filter(|&e| !self.covered[e])
                .min_by_key(|&e| self.avail[e]),
        }
    }

    fn search(&mut self, from: usize) -> bool {
        if self.uncovered == 0 {
            return true;
        }
        if self.dead > 0 || self.over_budget() {
            return false;
        }
        let Some(edge) = self.pick_edge(from) else {
            return true;
        };
        for idx in 0..self.by_edge[edge].len() {
            let c = self.by_edge[edge][idx];
            if self.blocked[c] > 0 {
                continue;
            }
            self.select(c);
            self.chosen.push(c);
            if self.search(edge + 1) {
                return true;
            }
            self.chosen.pop();
            self.deselect(c);
            if self.exceeded {
                return false;
            }
        }
        false
    }
}

/// First problem found by [`verify_decomposition`]. Vertices are 0-based;
/// `Display` prints them 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompositionViolation {
    VertexOutOfRange { copy: usize, vertex: usize },
    RepeatedVertex { copy: usize, vertex: usize },
    ClassSizes { copy: usize, found: Vec<usize> },
    MissingEdge { copy: usize, u: usize, v: usize },
    NotIndependent { copy: usize, u: usize, v: usize },
    EdgeReused { u: usize, v: usize, first: usize, second: usize },
    Uncovered { u: usize, v: usize },
}

impl fmt::Display for DecompositionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use DecompositionViolation::*;
        match self {
            VertexOutOfRange { copy, vertex } => {
                write!(f, "copy {}: vertex {} is not in the host", copy + 1, vertex + 1)
            }
            RepeatedVertex { copy, vertex } => {
                write!(f, "copy {}: vertex {} appears twice", copy + 1, vertex + 1)
            }
            ClassSizes { copy, found } => {
                write!(f, "copy {}: class sizes {found:?} do not match the pattern", copy + 1)
            }
            MissingEdge { copy, u, v } => write!(
                f,
                "copy {}: cross pair {} {} is not an edge of the host",
                copy + 1,
                u + 1,
                v + 1
            ),
            NotIndependent { copy, u, v } => write!(
                f,
                "copy {}: class contains host edge {} {}, so the copy is not induced",
                copy + 1,
                u + 1,
                v + 1
            ),
            EdgeReused { u, v, first, second } => write!(
                f,
                "edge {} {} is used by copies {} and {}",
                u + 1,
                v + 1,
                first + 1,
                second + 1
            ),
            Uncovered { u, v } => write!(f, "edge {} {} is covered by no copy", u + 1, v + 1),
        }
    }
}

impl std::error::Error for DecompositionViolation {}

/// Checks that `copies` is an (induced, when flagged) decomposition of `g`
/// into copies of the pattern and returns the first violation found.
pub fn verify_decomposition(
    g: &SmallGraph,
    pattern: &PatternSignature,
    copies: &[Vec<Vec<usize>>],
    induced: bool,
) -> Result<(), DecompositionViolation> {
    use DecompositionViolation::*;
    let n = g.order();
    let expected_sizes = pattern.sorted_parts();
    let mut owner = vec![u32::MAX; n * n];
    let mut seen = vec![usize::MAX; n];
    for (copy, classes) in copies.iter().enumerate() {
        for &vertex in classes.iter().flatten() {
            if vertex >= n {
                return Err(VertexOutOfRange { copy, vertex });
            }
            if seen[vertex] == copy {
                return Err(RepeatedVertex { copy, vertex });
            }
            seen[vertex] = copy;
        }
        let mut found: Vec<usize> = classes.iter().map(Vec::len).collect();
        found.sort_unstable();
        if found != expected_sizes {
            return Err(ClassSizes {
                copy,
                found: classes.iter().map(Vec::len).collect(),
            });
        }
        for (i, a) in classes.iter().enumerate() {
            for b in &classes[i + 1..] {
                for &x in a {
                    for &y in b {
                        let (u, v) = (x.min(y), x.max(y));
                        if !g.has_edge(u, v) {
                            return Err(MissingEdge { copy, u, v });
                        }
                    }
                }
            }
        }
        if induced {
            for class in classes {
                for (i, &x) in class.iter().enumerate() {
                    for &y in &class[i + 1..] {
                        if g.has_edge(x, y) {
                            return Err(NotIndependent {
                                copy,
                                u: x.min(y),
                                v: x.max(y),
                            });
                        }
                    }
                }
            }
        }
        for (i, a) in classes.iter().enumerate() {
            for b in &classes[i + 1..] {
                for &x in a {
                    for &y in b {
                        let (u, v) = (x.min(y), x.max(y));
                        let slot = &mut owner[u * n + v];
                        if *slot != u32::MAX {
                            return Err(EdgeReused {
                                u,
                                v,
                                first: *slot as usize,
                                second: copy,
                            });
                        }
                        *slot = copy as u32;
                    }
                }
            }
        }
    }
    match g.edges().into_iter().find(|&(u, v)| owner[u * n + v] == u32::MAX) {
        Some((u, v)) => Err(Uncovered { u, v }),
        None => Ok(()),
    }
}

/// True when every vertex misses at least one other vertex.
pub fn non_neighbor_check(g: &SmallGraph) -> bool {
    let n = g.order();
    (0..n).all(|u| g.degree(u) + 1 < n)
}

/// [`non_neighbor_check`] applied to the pattern graph itself.
pub fn pattern_non_neighbor_check(pattern: &PatternSignature) -> bool {
    non_neighbor_check(&SmallGraph::complete_multipartite(pattern.parts()))
}

/// Every vertex with at least one edge also has a non-neighbor.
pub fn non_isolated_have_non_neighbors(g: &SmallGraph) -> bool {
    let n = g.order();
    (0..n).all(|u| {
        let d = g.degree(u);
        d == 0 || d + 1 < n
    })
}

#[derive(Debug, Clone)]
pub struct CexResult {
    pub n: usize,
    /// `C(n,2) - ex(n, F)`.
    pub value: usize,
    pub witness: SmallGraph,
    pub decomposition: Decomposition,
    /// Non-isomorphic graphs handed to the exact-cover search.
    pub graphs_searched: usize,
}

/// Exact `cex(n, F)` over induced decompositions, scanning isomorphism
/// classes of `n`-vertex graphs by decreasing edge count. The witness is the
/// lexicographically least edge list among canonical representatives of
/// the maximizers.
pub fn cex_exact(n: usize, pattern: &PatternSignature, budget: SearchBudget) -> Result<CexResult> {
    cex_exact_capped(n, pattern, budget, CEX_CAP)
}

pub fn cex_exact_capped(
    n: usize,
    pattern: &PatternSignature,
    budget: SearchBudget,
    cap: usize,
) -> Result<CexResult> {
    let cap = cap.min(CEX_HARD_CAP);
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let pairs = n * n.saturating_sub(1) / 2;
    let mut level: BTreeSet<u64> = BTreeSet::new();
    level.insert(canonical_code(&SmallGraph::complete(n)));
    let mut graphs_searched = 0;
    for missing in 0..=pairs {
        let edge_count = pairs - missing;
        if edge_count % pattern.edge_count() == 0 {
            let mut best: Option<(Vec<(usize, usize)>, SmallGraph, Decomposition)> = None;
            for &code in &level {
                let g = decode_code(n, code);
                graphs_searched += 1;
                match exact_cover_decompose(&g, pattern, true, budget) {
                    Ok(d) => {
                        let edges = g.edges();
                        if best.as_ref().map_or(true, |(b, _, _)| edges < *b) {
                            best = Some((edges, g, d));
                        }
                    }
                    Err(Error::NoDecomposition) => {}
                    Err(e) => return Err(e),
                }
            }
            if let Some((_, witness, decomposition)) = best {
                return Ok(CexResult {
                    n,
                    value: missing,
                    witness,
                    decomposition,
                    graphs_searched,
                });
            }
        }
        let mut next = BTreeSet::new();
        for &code in &level {
            let g = decode_code(n, code);
            for (u, v) in g.edges() {
                let mut h = g.clone();
                h.remove_edge(u, v);
                next.insert(canonical_code(&h));
            }
        }
        level = next;
    }
    Err(Error::InternalInvariant(
        "the empty graph always has the empty decomposition".into(),
    ))
}

/// Pairs in column-major order: (0,1), (0,2), (1,2), (0,3), ...
fn pair_bit(i: usize, j: usize) -> usize {
    j * (j - 1) / 2 + i
}

fn decode_code(n: usize, code: u64) -> SmallGraph {
    let pairs = n * n.saturating_sub(1) / 2;
    let mut g = SmallGraph::empty(n);
    for j in 1..n {
        for i in 0..j {
            if code >> (pairs - 1 - pair_bit(i, j)) & 1 == 1 {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// Largest adjacency code over all labelings that list vertices by
/// non-increasing degree. Equal for isomorphic graphs.
pub(crate) fn canonical_code(g: &SmallGraph) -> u64 {
    let n = g.order();
    if n <= 1 {
        return 0;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let degrees: Vec<usize> = order.iter().map(|&v| g.degree(v)).collect();
    let mut state = Canon {
        g,
        degrees,
        total_bits: n * (n - 1) / 2,
        placed: Vec::with_capacity(n),
        used: vec![false; n],
        best: None,
    };
    state.extend(0, false);
    state.best.expect("at least one labeling exists")
}

struct Canon<'a> {
    g: &'a SmallGraph,
    degrees: Vec<usize>,
    total_bits: usize,
    placed: Vec<usize>,
    used: Vec<bool>,
    best: Option<u64>,
}

impl Canon<'_> {
    fn extend(&mut self, code: u64, ahead: bool) {
        let pos = self.placed.len();
        let n = self.g.order();
        if pos == n {
            if self.best.map_or(true, |b| code > b) {
                self.best = Some(code);
            }
            return;
        }
        for v in 0..n {
            if self.used[v] || self.g.degree(v) != self.degrees[pos] {
                continue;
            }
            let mut next = code;
            for &w in &self.placed {
                next = next << 1 | self.g.has_edge(w, v) as u64;
            }
            let bits = pos * (pos + 1) / 2;
            let mut now_ahead = ahead;
            if let (false, Some(best)) = (ahead, self.best) {
                let prefix = best >> (self.total_bits - bits);
                if next < prefix {
                    continue;
                }
                now_ahead = next > prefix;
            }
            self.used[v] = true;
            self.placed.push(v);
            self.extend(next, now_ahead);
            self.placed.pop();
            self.used[v] = false;
        }
    }
}
