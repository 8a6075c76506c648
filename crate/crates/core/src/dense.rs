//! Near-complete `n`-vertex graphs with an induced decomposition into copies
//! of `F = K_{a_1, ..., a_k}`.
//!
//! Write `n = n' p + t`. Decompose `K_{n'}` into (non-induced) copies of `F`,
//! replace every vertex by an independent `p`-set, split each `p`-set of a
//! class of size `a_i` into `a_i`-cells, and run the embedded decomposition
//! of `K_{p a_1, ..., p a_k}` on every blown-up copy. The `t` leftover
//! vertices stay isolated. Only the `p`-sets and the isolated vertices
//! contribute non-edges, fewer than `(pq + p/2) n`.

use std::collections::HashMap;

use serde_json::{json, Value};

use crate::decomposition::{pairs_to_json, Decomposition, Host, PatternCopy};
use crate::embedded::{embedded_decompose, star_parameters_capped, EmbeddedDecomposition, STAR_SEARCH_CAP};
use crate::error::{Error, Result};
use crate::graph::SmallGraph;
use crate::oracle::{enumerate_copies, exact_cover_sets, exact_cover_with_rule, BranchRule, SearchBudget, ENUMERATION_CAP};
use crate::pattern::{gcd, PatternSignature};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DenseParameters {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub s: usize,
    pub t: usize,
    pub n_prime: usize,
}

impl DenseParameters {
    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p, "q": self.q, "r": self.r, "s": self.s, "t": self.t,
            "n_prime": self.n_prime,
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct DenseOptions {
    pub budget: SearchBudget,
    pub branch_rule: BranchRule,
    pub star_cap: usize,
    /// Above this many non-edges the certificate stores the structural
    /// description instead of the list.
    pub non_edge_cap: usize,
}

/// Node limit for each Step 1 search. Running out only means that `n'` is
/// skipped in favour of a smaller one, so this stays well below the oracle
/// default.
pub const STEP1_NODES: u64 = 50_000;

impl Default for DenseOptions {
    fn default() -> Self {
        DenseOptions {
            budget: SearchBudget::nodes(STEP1_NODES),
            branch_rule: BranchRule::default(),
            star_cap: STAR_SEARCH_CAP,
            non_edge_cap: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DivisibilityCheck {
    /// `|E(F)|` divides `C(n', 2)`.
    pub edges_divisible: bool,
    /// The gcd of the degrees of `F` divides `n' - 1`.
    pub degrees_divisible: bool,
}

impl DivisibilityCheck {
    pub fn holds(&self) -> bool {
        self.edges_divisible && self.degrees_divisible
    }

    pub fn reasons(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.edges_divisible {
            out.push("C(n',2) is not divisible by |E(F)|");
        }
        if !self.degrees_divisible {
            out.push("n'-1 is not divisible by the gcd of the degrees of F");
        }
        out
    }
}

/// Necessary conditions for `K_{n'}` to split into copies of the pattern.
pub fn divisibility_check(pattern: &PatternSignature, n_prime: usize) -> DivisibilityCheck {
    let e = pattern.edge_count();
    let g = pattern.degree_gcd();
    let pairs = n_prime * n_prime.saturating_sub(1) / 2;
    DivisibilityCheck {
        edges_divisible: pairs % e == 0,
        degrees_divisible: (n_prime + g - 1) % g == 0,
    }
}

/// Smallest period `q` of [`divisibility_check`] in `n'`, and the residues
/// modulo `q` where it holds.
pub fn divisibility_period(pattern: &PatternSignature) -> (usize, Vec<usize>) {
    let e = pattern.edge_count();
    let g = pattern.degree_gcd();
    let l = 2 * e / gcd(2 * e, g) * g;
    let ok: Vec<bool> = (0..l).map(|x| divisibility_check(pattern, x).holds()).collect();
    let q = (1..=l)
        .filter(|d| l % d == 0)
        .find(|&d| (0..l).all(|x| ok[x] == ok[(x + d) % l]))
        .unwrap_or(l);
    (q, (0..q).filter(|&r| ok[r]).collect())
}

/// Step 1: an edge-disjoint (not necessarily induced) decomposition of
/// `K_{n'}` found by exact-cover search.
pub fn step1_decompose_clique(
    pattern: &PatternSignature,
    n_prime: usize,
    budget: SearchBudget,
) -> Result<Decomposition> {
    step1_with_rule(pattern, n_prime, budget, BranchRule::default())
}

fn step1_with_rule(
    pattern: &PatternSignature,
    n_prime: usize,
    budget: SearchBudget,
    rule: BranchRule,
) -> Result<Decomposition> {
    if !divisibility_check(pattern, n_prime).holds() {
        return Err(Error::NoDecomposition);
    }
    let copies = match cyclic_clique_cover(pattern, n_prime, budget, rule) {
        Ok(copies) => copies,
        Err(Error::NoDecomposition | Error::BudgetExceeded { .. }) => {
            exact_cover_with_rule(&SmallGraph::complete(n_prime), pattern, false, budget, rule)?.copies
        }
        Err(e) => return Err(e),
    };
    let d = Decomposition {
        host: Host::clique(n_prime),
        pattern: pattern.clone(),
        copies,
        induced: false,
    };
    d.verify()
        .map_err(|v| Error::InternalInvariant(format!("clique decomposition fails: {v}")))?;
    Ok(d)
}

/// Canonical form used by the copy enumeration: classes sorted, and classes
/// of equal size ordered by their smallest vertex.
fn normalize(mut classes: Vec<Vec<usize>>, sizes: &[usize]) -> Vec<Vec<usize>> {
    for c in classes.iter_mut() {
        c.sort_unstable();
    }
    let mut done = vec![false; sizes.len()];
    for i in 0..sizes.len() {
        if done[i] {
            continue;
        }
        let slots: Vec<usize> = (i..sizes.len()).filter(|&j| sizes[j] == sizes[i]).collect();
        let mut group: Vec<Vec<usize>> = slots.iter().map(|&j| std::mem::take(&mut classes[j])).collect();
        group.sort();
        for (&j, c) in slots.iter().zip(group) {
            classes[j] = c;
            done[j] = true;
        }
    }
    classes
}

/// Searches for a decomposition of `K_n` fixed by the rotation
/// `x -> x + 1 (mod n)`: the candidates are whole orbits of copies whose
/// members are pairwise edge-disjoint.
fn cyclic_clique_cover(
    pattern: &PatternSignature,
    n: usize,
    budget: SearchBudget,
    rule: BranchRule,
) -> Result<Vec<PatternCopy>> {
    let sizes = pattern.parts();
    let candidates = enumerate_copies(&SmallGraph::complete(n), pattern, false)?;
    let index: HashMap<&Vec<Vec<usize>>, usize> = candidates.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let edge_id = |u: usize, v: usize| {
        let (u, v) = (u.min(v), u.max(v));
        u * (2 * n - u - 1) / 2 + (v - u - 1)
    };
    let mut seen = vec![false; candidates.len()];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut orbit_edges: Vec<Vec<usize>> = Vec::new();
    for start in 0..candidates.len() {
        if seen[start] {
            continue;
        }
        let mut members = vec![start];
        seen[start] = true;
        let mut current = candidates[start].clone();
        loop {
            current = normalize(
                current.iter().map(|c| c.iter().map(|&v| (v + 1) % n).collect()).collect(),
                sizes,
            );
            let idx = index[&current];
            if idx == start {
                break;
            }
            seen[idx] = true;
            members.push(idx);
        }
        let mut edges = Vec::new();
        for &m in &members {
            let classes = &candidates[m];
            for (i, a) in classes.iter().enumerate() {
                for b in &classes[i + 1..] {
                    for &u in a {
                        edges.extend(b.iter().map(|&v| edge_id(u, v)));
                    }
                }
            }
        }
        edges.sort_unstable();
        let total = edges.len();
        edges.dedup();
        if edges.len() == total {
            orbits.push(members);
            orbit_edges.push(edges);
        }
    }
    let chosen = exact_cover_sets(n * (n - 1) / 2, &orbit_edges, budget, rule)?;
    Ok(chosen
        .into_iter()
        .flat_map(|o| orbits[o].iter().map(|&c| PatternCopy::new(candidates[c].clone())))
        .collect())
}

pub fn choose_parameters(pattern: &PatternSignature, n: usize) -> Result<DenseParameters> {
    choose_parameters_with(pattern, n, &DenseOptions::default()).map(|(params, _)| params)
}

/// Picks `p`, the period `q`, and the largest certified `n'`; also returns
/// the Step 1 decomposition that certified it.
pub fn choose_parameters_with(
    pattern: &PatternSignature,
    n: usize,
    opts: &DenseOptions,
) -> Result<(DenseParameters, Decomposition)> {
    let p = star_parameters_capped(pattern, opts.star_cap)?.p;
    let (q, _) = divisibility_period(pattern);
    let smallest = pattern.vertex_count();
    let largest = n / p;
    if largest < smallest {
        return Err(Error::NoFeasibleParameters(format!(
            "n = {n} is too small: need n' >= {smallest} with p = {p}, so n >= {}",
            smallest * p
        )));
    }
    let mut unknown = false;
    for n_prime in (smallest..=largest).rev() {
        if !divisibility_check(pattern, n_prime).holds() {
            continue;
        }
        if n_prime > ENUMERATION_CAP {
            return Err(Error::CapExceeded {
                n: n_prime,
                cap: ENUMERATION_CAP,
            });
        }
        let step1 = match step1_with_rule(pattern, n_prime, opts.budget, opts.branch_rule) {
            Ok(d) => d,
            Err(Error::NoDecomposition) => continue,
            Err(Error::BudgetExceeded { .. }) => {
                unknown = true;
                continue;
            }
            Err(e) => return Err(e),
        };
        let t = n - n_prime * p;
        if t >= p * q {
            return Err(Error::InternalInvariant(format!(
                "leftover t = {t} is not below pq = {}",
                p * q
            )));
        }
        let params = DenseParameters {
            n,
            p,
            q,
            r: n_prime % q,
            s: n_prime / q,
            t,
            n_prime,
        };
        return Ok((params, step1));
    }
    Err(Error::NoFeasibleParameters(format!(
        "no n' in [{smallest}, {largest}] admits a certified decomposition of K_n'{}",
        if unknown { " within the search budget" } else { "" }
    )))
}

/// A blown-up Step 1 copy: `class_sets[i]` lists the independent `p`-sets
/// forming class `i` of `F_p = K_{p a_1, ..., p a_k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placement {
    pub class_sets: Vec<Vec<Vec<usize>>>,
}

impl Placement {
    pub fn class(&self, i: usize) -> Vec<usize> {
        self.class_sets[i].iter().flatten().copied().collect()
    }
}

/// Step 2: vertex `v` of `K_{n'}` becomes the independent set
/// `{v p, ..., v p + p - 1}`.
pub fn step2_blow_up(d: &Decomposition, p: usize) -> (SmallGraph, Vec<Placement>) {
    let n_prime = d.host.order();
    let graph = SmallGraph::complete_multipartite(&vec![p; n_prime]);
    let placements = d
        .copies
        .iter()
        .map(|copy| Placement {
            class_sets: copy
                .classes
                .iter()
                .map(|class| class.iter().map(|&v| (v * p..(v + 1) * p).collect()).collect())
                .collect(),
        })
        .collect();
    (graph, placements)
}

/// Step 3: `p` cells of size `a_i` per class, numbered `p`-set by `p`-set
/// and consecutive inside each `p`-set.
pub fn step3_refine(
    placement: &Placement,
    pattern: &PatternSignature,
    p: usize,
) -> Result<Vec<Vec<Vec<usize>>>> {
    pattern
        .parts()
        .iter()
        .zip(&placement.class_sets)
        .map(|(&a, sets)| {
            if p % a != 0 {
                return Err(Error::DivisibilityViolation { part_size: a, p });
            }
            let cells: Vec<Vec<usize>> = sets.iter().flat_map(|s| s.chunks(a).map(<[usize]>::to_vec)).collect();
            if cells.len() != p {
                return Err(Error::InternalInvariant(format!(
                    "class of {} p-sets yields {} cells instead of {p}",
                    sets.len(),
                    cells.len()
                )));
            }
            Ok(cells)
        })
        .collect()
}

/// Step 4: copy the embedded decomposition onto one placement, identifying
/// abstract cell `V_{i,j}` with `cells[i][j]`.
pub fn step4_apply_embedded(
    cells: &[Vec<Vec<usize>>],
    embedded: &EmbeddedDecomposition,
) -> Vec<Vec<Vec<usize>>> {
    embedded
        .cell_choice
        .iter()
        .map(|choice| choice.iter().enumerate().map(|(i, &j)| cells[i][j].clone()).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonEdges {
    Listed(Vec<(usize, usize)>),
    Structural {
        independent_sets: usize,
        set_size: usize,
        isolated: usize,
    },
}

#[derive(Debug, Clone)]
pub struct DenseCertificate {
    pub params: DenseParameters,
    pub non_edge_count: usize,
    pub non_edges: NonEdges,
    pub decomposition: Decomposition,
    /// Step 1 decomposition of `K_{n'}`.
    pub clique_decomposition: Decomposition,
    /// `(2pq + p) n`, twice the bound so it stays integral.
    pub bound_twice: usize,
}

impl DenseCertificate {
    pub fn graph(&self) -> SmallGraph {
        self.decomposition.host.to_graph()
    }

    pub fn bound(&self) -> f64 {
        self.bound_twice as f64 / 2.0
    }

    pub fn to_json(&self) -> Value {
        let p = &self.params;
        let non_edges = match &self.non_edges {
            NonEdges::Listed(pairs) => pairs_to_json(pairs),
            NonEdges::Structural {
                independent_sets,
                set_size,
                isolated,
            } => json!({ "structural": {
                "independent_sets": independent_sets,
                "set_size": set_size,
                "isolated": isolated,
            }}),
        };
        json!({
            "n": p.n,
            "pattern": self.decomposition.pattern.parts(),
            "params": p.to_json(),
            "non_edges": non_edges,
            "host": self.decomposition.host.to_json(),
            "copies": self.decomposition.copies.iter().map(PatternCopy::to_json).collect::<Vec<_>>(),
            "induced": true,
            "bound": { "lhs": self.non_edge_count, "rhs": self.bound() },
        })
    }
}

pub fn assemble(pattern: &PatternSignature, n: usize) -> Result<DenseCertificate> {
    assemble_with(pattern, n, &DenseOptions::default())
}

pub fn assemble_with(pattern: &PatternSignature, n: usize, opts: &DenseOptions) -> Result<DenseCertificate> {
    let (params, step1) = choose_parameters_with(pattern, n, opts)?;
    let DenseParameters { p, q, t, n_prime, .. } = params;
    let (_, placements) = step2_blow_up(&step1, p);
    let embedded = embedded_decompose(pattern, p)?;
    let mut copies = Vec::with_capacity(placements.len() * p * p);
    for placement in &placements {
        let cells = step3_refine(placement, pattern, p)?;
        copies.extend(step4_apply_embedded(&cells, &embedded).into_iter().map(PatternCopy::new));
    }
    let decomposition = Decomposition {
        host: Host {
            parts: vec![p; n_prime],
            isolated: t,
            removed: Vec::new(),
        },
        pattern: pattern.clone(),
        copies,
        induced: true,
    };
    let graph = decomposition.host.to_graph();
    let missing = graph.non_edges();
    let expected = n_prime * (p * (p - 1) / 2) + t * t.saturating_sub(1) / 2 + t * (n - t);
    if missing.len() != expected {
        return Err(Error::InternalInvariant(format!(
            "counted {} non-edges, expected {expected}",
            missing.len()
        )));
    }
    let bound_twice = (2 * p * q + p) * n;
    if 2 * missing.len() >= bound_twice {
        return Err(Error::InternalInvariant(format!(
            "{} non-edges is not below (pq + p/2) n = {}",
            missing.len(),
            bound_twice as f64 / 2.0
        )));
    }
    if let Err(v) = decomposition.verify() {
        return Err(Error::InternalInvariant(format!("assembled decomposition fails: {v}")));
    }
    let non_edges = if missing.len() <= opts.non_edge_cap {
        NonEdges::Listed(missing.clone())
    } else {
        NonEdges::Structural {
            independent_sets: n_prime,
            set_size: p,
            isolated: t,
        }
    };
    Ok(DenseCertificate {
        params,
        non_edge_count: missing.len(),
        non_edges,
        decomposition,
        clique_decomposition: step1,
        bound_twice,
    })
}
