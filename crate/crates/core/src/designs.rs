//! Latin squares, mutually orthogonal families and transversal designs TD(k,n).
//!
//! Positions, symbols, groups and group indices are all 0-based in memory.
//! The JSON forms shift everything to 1-based.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gf::{factorize, prime_power, GaloisField};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatinSquare {
    order: usize,
    cells: Vec<usize>,
}

impl LatinSquare {
    /// Builds a square from rows of 0-based symbols, rejecting anything that
    /// is not Latin.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 || rows.iter().any(|r| r.len() != order) {
            return Err(Error::Malformed("latin square must be a non-empty n x n grid".into()));
        }
        let square = LatinSquare {
            order,
            cells: rows.into_iter().flatten().collect(),
        };
        if !square.is_latin() {
            return Err(Error::Malformed("rows and columns must be permutations".into()));
        }
        Ok(square)
    }

    fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let mut cells = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                cells.push(f(x, y));
            }
        }
        LatinSquare { order, cells }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> usize {
        self.cells[row * self.order + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.cells.chunks(self.order)
    }

    pub fn is_latin(&self) -> bool {
        let n = self.order;
        let mut seen = vec![false; n];
        let line_ok = |seen: &mut Vec<bool>, it: &mut dyn Iterator<Item = usize>| {
            seen.iter_mut().for_each(|s| *s = false);
            for s in it {
                if s >= n || seen[s] {
                    return false;
                }
                seen[s] = true;
            }
            true
        };
        (0..n).all(|i| {
            line_ok(&mut seen, &mut (0..n).map(|j| self.get(i, j)))
                && line_ok(&mut seen, &mut (0..n).map(|j| self.get(j, i)))
        })
    }

    /// True when superimposing the two squares yields every ordered symbol
    /// pair exactly once.
    pub fn is_orthogonal_to(&self, other: &LatinSquare) -> bool {
        let n = self.order;
        if other.order != n {
            return false;
        }
        let mut seen = vec![false; n * n];
        for (a, b) in self.cells.iter().zip(&other.cells) {
            let slot = a * n + b;
            if seen[slot] {
                return false;
            }
            seen[slot] = true;
        }
        true
    }

    pub fn to_json(&self) -> Value {
        let grid: Vec<Vec<usize>> = self
            .rows()
            .map(|r| r.iter().map(|s| s + 1).collect())
            .collect();
        json!({ "order": self.order, "grid": grid })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MolsFamily {
    order: usize,
    squares: Vec<LatinSquare>,
}

impl MolsFamily {
    pub fn empty(order: usize) -> Self {
        MolsFamily {
            order,
            squares: Vec::new(),
        }
    }

    /// Checks orders and pairwise orthogonality.
    pub fn new(order: usize, squares: Vec<LatinSquare>) -> Result<Self> {
        let family = MolsFamily { order, squares };
        if family.squares.iter().any(|s| s.order != order) {
            return Err(Error::Malformed("all squares must share the family order".into()));
        }
        if !family.is_mutually_orthogonal() {
            return Err(Error::Malformed("squares are not mutually orthogonal".into()));
        }
        Ok(family)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn squares(&self) -> &[LatinSquare] {
        &self.squares
    }

    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    pub fn is_mutually_orthogonal(&self) -> bool {
        let s = &self.squares;
        s.iter().all(LatinSquare::is_latin)
            && (0..s.len()).all(|i| (i + 1..s.len()).all(|j| s[i].is_orthogonal_to(&s[j])))
    }

    pub fn to_json(&self) -> Value {
        let squares: Vec<Value> = self.squares.iter().map(LatinSquare::to_json).collect();
        json!({ "order": self.order, "squares": squares })
    }
}

/// Number of MOLS the prime-power product construction guarantees for order
/// `n`. `None` stands for "unbounded" and only occurs at `n = 1`.
pub fn macneish(n: usize) -> Option<usize> {
    factorize(n)
        .into_iter()
        .map(|(p, e)| p.pow(e) - 1)
        .min()
}

/// Whether [`td_from_mols`] combined with [`mols`] can build TD(k,n).
pub fn td_constructible(k: usize, n: usize) -> bool {
    if k < 2 || n == 0 {
        return false;
    }
    match macneish(n) {
        None => true,
        Some(bound) => k - 2 <= bound,
    }
}

pub fn cyclic_latin(n: usize) -> LatinSquare {
    assert!(n >= 1, "order must be positive");
    LatinSquare::from_fn(n, |x, y| (x + y) % n)
}

/// Squares `L_λ(x, y) = λx + y` over GF(q) for the first `count` nonzero λ.
pub fn mols_prime_power(q: usize, count: usize) -> Result<MolsFamily> {
    if prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    if count > q - 1 {
        return Err(Error::CountExceedsBound {
            requested: count,
            bound: q - 1,
        });
    }
    let field = GaloisField::new(q);
    let squares = (1..=count)
        .map(|lambda| LatinSquare::from_fn(q, |x, y| field.add(field.mul(lambda, x), y)))
        .collect();
    Ok(MolsFamily { order: q, squares })
}

/// Direct product of two families, pairing the i-th squares of each.
pub fn mols_product(a: &MolsFamily, b: &MolsFamily, count: usize) -> Result<MolsFamily> {
    let bound = a.len().min(b.len());
    if count > bound {
        return Err(Error::CountExceedsBound {
            requested: count,
            bound,
        });
    }
    let nb = b.order;
    let order = a.order * nb;
    let squares = a.squares[..count]
        .iter()
        .zip(&b.squares[..count])
        .map(|(sa, sb)| {
            LatinSquare::from_fn(order, |x, y| {
                sa.get(x / nb, y / nb) * nb + sb.get(x % nb, y % nb)
            })
        })
        .collect();
    Ok(MolsFamily { order, squares })
}

/// `count` MOLS of order `n`, built from prime-power factors in increasing
/// prime order. Fails once `count` passes the MacNeish bound.
pub fn mols(n: usize, count: usize) -> Result<MolsFamily> {
    if n == 0 {
        return Err(Error::Malformed("order must be positive".into()));
    }
    if count == 0 {
        return Ok(MolsFamily::empty(n));
    }
    if n == 1 {
        let squares = vec![cyclic_latin(1); count];
        return Ok(MolsFamily { order: 1, squares });
    }
    if let Some(bound) = macneish(n) {
        if count > bound {
            return Err(Error::UnsupportedOrder {
                order: n,
                requested: count,
                bound,
            });
        }
    }
    let mut factors = factorize(n).into_iter().map(|(p, e)| p.pow(e));
    let first = factors.next().expect("n > 1 has a prime factor");
    let mut family = mols_prime_power(first, count)?;
    for q in factors {
        family = mols_product(&family, &mols_prime_power(q, count)?, count)?;
    }
    Ok(family)
}

/// A point of a transversal design: `index` within `group`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub group: usize,
    pub index: usize,
}

impl Point {
    pub fn new(group: usize, index: usize) -> Self {
        Point { group, index }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}:{}", self.group + 1, self.index + 1)
    }
}

/// TD(k,n): `k` groups of `n` points each and a list of blocks. Groups are
/// implicit in the point addressing.
#[derive(Debug, Clone)]
pub struct TransversalDesign {
    k: usize,
    n: usize,
    blocks: Vec<Vec<Point>>,
    /// Flat (point, point) -> first block containing both.
    pair_index: Vec<u32>,
}

const NO_BLOCK: u32 = u32::MAX;

impl TransversalDesign {
    /// Wraps arbitrary blocks without validation; see [`verify_td`].
    pub fn from_blocks(k: usize, n: usize, blocks: Vec<Vec<Point>>) -> Self {
        let points = k * n;
        let mut pair_index = vec![NO_BLOCK; points * points];
        let in_range = |pt: &Point| pt.group < k && pt.index < n;
        for (id, block) in blocks.iter().enumerate() {
            for a in block.iter().filter(|p| in_range(p)) {
                for b in block.iter().filter(|p| in_range(p)) {
                    let slot = (a.group * n + a.index) * points + b.group * n + b.index;
                    if pair_index[slot] == NO_BLOCK {
                        pair_index[slot] = id as u32;
                    }
                }
            }
        }
        TransversalDesign {
            k,
            n,
            blocks,
            pair_index,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<Point>] {
        &self.blocks
    }

    pub fn groups(&self) -> Vec<Vec<Point>> {
        (0..self.k)
            .map(|g| (0..self.n).map(|i| Point::new(g, i)).collect())
            .collect()
    }

    /// The unique block through two points of distinct groups.
    pub fn block_through(&self, a: Point, b: Point) -> Result<&[Point]> {
        for pt in [a, b] {
            if pt.group >= self.k || pt.index >= self.n {
                return Err(Error::PointOutOfRange {
                    group: pt.group,
                    index: pt.index,
                });
            }
        }
        if a.group == b.group {
            return Err(Error::SameGroup {
                group: a.group,
                a: a.index,
                b: b.index,
            });
        }
        let points = self.k * self.n;
        let slot = (a.group * self.n + a.index) * points + b.group * self.n + b.index;
        match self.pair_index[slot] {
            NO_BLOCK => Err(Error::InternalInvariant(format!(
                "no block through {a} and {b}"
            ))),
            id => Ok(&self.blocks[id as usize]),
        }
    }

    pub fn to_json(&self) -> Value {
        let ids = |pts: &[Point]| pts.iter().map(Point::to_string).collect::<Vec<_>>();
        let groups: Vec<Vec<String>> = self.groups().iter().map(|g| ids(g)).collect();
        let blocks: Vec<Vec<String>> = self.blocks.iter().map(|b| ids(b)).collect();
        json!({ "k": self.k, "n": self.n, "groups": groups, "blocks": blocks })
    }
}

/// Index of the point a block has in `group`.
pub fn index_in_group(block: &[Point], group: usize) -> Option<usize> {
    block.iter().find(|p| p.group == group).map(|p| p.index)
}

/// Blocks `{(0,x), (1,y), (2,L_1(x,y)), ..., (k-1,L_{k-2}(x,y))}` in
/// row-major `(x, y)` order.
pub fn td_from_mols(family: &MolsFamily, k: usize) -> Result<TransversalDesign> {
    let n = family.order;
    if k < 2 {
        return Err(Error::Malformed("blocksize k must be at least 2".into()));
    }
    if family.len() < k - 2 {
        return Err(Error::InsufficientSquares {
            k,
            n,
            needed: k - 2,
            available: family.len(),
        });
    }
    let mut blocks = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let mut block = vec![Point::new(0, x), Point::new(1, y)];
            block.extend(
                family.squares[..k - 2]
                    .iter()
                    .enumerate()
                    .map(|(s, sq)| Point::new(s + 2, sq.get(x, y))),
            );
            blocks.push(block);
        }
    }
    Ok(TransversalDesign::from_blocks(k, n, blocks))
}

/// Convenience: the deterministic TD(k,n) this crate builds, if any.
pub fn transversal_design(k: usize, n: usize) -> Result<TransversalDesign> {
    let family = mols(n, k.saturating_sub(2))?;
    td_from_mols(&family, k)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TdViolation {
    PointOutOfRange { block: usize, point: Point },
    NotTransversal { block: usize },
    WithinGroupPair { block: usize, a: Point, b: Point },
    Uncovered { a: Point, b: Point },
    CoveredMultiple { a: Point, b: Point, times: usize },
    BlockCount { expected: usize, found: usize },
}

impl fmt::Display for TdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TdViolation::PointOutOfRange { block, point } => {
                write!(f, "block {} holds out-of-range point {point}", block + 1)
            }
            TdViolation::NotTransversal { block } => {
                write!(f, "block {} does not meet every group once", block + 1)
            }
            TdViolation::WithinGroupPair { block, a, b } => {
                write!(f, "block {} contains same-group pair {a} {b}", block + 1)
            }
            TdViolation::Uncovered { a, b } => write!(f, "pair {a} {b} lies in no block"),
            TdViolation::CoveredMultiple { a, b, times } => {
                write!(f, "pair {a} {b} lies in {times} blocks")
            }
            TdViolation::BlockCount { expected, found } => {
                write!(f, "expected {expected} blocks, found {found}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TdReport {
    pub violations: Vec<TdViolation>,
}

impl TdReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn uncovered(&self) -> usize {
        self.violations
            .iter()
            .filter(|v| matches!(v, TdViolation::Uncovered { .. }))
            .count()
    }
}

/// Exhaustive check of the TD axioms.
pub fn verify_td(td: &TransversalDesign) -> TdReport {
    let (k, n) = (td.k, td.n);
    let points = k * n;
    let mut cover = vec![0usize; points * points];
    let mut violations = Vec::new();
    for (id, block) in td.blocks.iter().enumerate() {
        if let Some(&point) = block.iter().find(|p| p.group >= k || p.index >= n) {
            violations.push(TdViolation::PointOutOfRange { block: id, point });
            continue;
        }
        let mut groups: Vec<usize> = block.iter().map(|p| p.group).collect();
        groups.sort_unstable();
        groups.dedup();
        if block.len() != k || groups.len() != k {
            violations.push(TdViolation::NotTransversal { block: id });
        }
        for (i, a) in block.iter().enumerate() {
            for b in &block[i + 1..] {
                if a.group == b.group {
                    violations.push(TdViolation::WithinGroupPair {
                        block: id,
                        a: *a,
                        b: *b,
                    });
                    continue;
                }
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                cover[(lo.group * n + lo.index) * points + hi.group * n + hi.index] += 1;
            }
        }
    }
    for g1 in 0..k {
        for i1 in 0..n {
            for g2 in g1 + 1..k {
                for i2 in 0..n {
                    let (a, b) = (Point::new(g1, i1), Point::new(g2, i2));
                    match cover[(g1 * n + i1) * points + g2 * n + i2] {
                        0 => violations.push(TdViolation::Uncovered { a, b }),
                        1 => {}
                        times => violations.push(TdViolation::CoveredMultiple { a, b, times }),
                    }
                }
            }
        }
    }
    if td.blocks.len() != n * n {
        violations.push(TdViolation::BlockCount {
            expected: n * n,
            found: td.blocks.len(),
        });
    }
    TdReport { violations }
}
