//! Decomposition of `F* = K_{m a_1, ..., m a_k}` (`m = a_1 ... a_k`) into
//! `m^2` edge-disjoint induced copies of `F = K_{a_1, ..., a_k}`.
//!
//! Part `i` of `F*` is split into `m` cells of `a_i` vertices, one per cell
//! vector `j = (j_1, ..., j_k)` with `j_l < a_l`. A copy picks one cell in
//! every part, so it is described by `k` cell vectors `j^1, ..., j^k` (the
//! detailed representation). Copies are named by codewords `(b, c)`, two
//! cell vectors, and decoded with one transversal design `TD(k, a_l)` per
//! coordinate `l`:
//!
//! * `j^l_l = b_l` and `j^{l+1}_l = c_l` (part indices cyclic);
//! * the unique block `B^l` of `TD^l` through point `b_l` of group `l` and
//!   point `c_l` of group `l+1` fixes every other coordinate:
//!   `j^{i}_l` is the index of `B^l` in group `i`.
//!
//! An edge between parts `i` and `i'` pins `j^i` and `j^{i'}`, and therefore
//! the block through `(j^i_l, j^{i'}_l)` in each `TD^l`, so it lies in exactly
//! one copy.

use std::ops::Range;

use serde_json::{json, Value};

use crate::decomposition::{Decomposition, Host, PatternCopy};
use crate::designs::{index_in_group, td_constructible, transversal_design, verify_td, Point, TransversalDesign};
use crate::error::{Error, Result};
use crate::pattern::PatternSignature;

/// A cell vector `j`, 0-based: `j.0[l] < a_l`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellIndex(pub Vec<usize>);

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Codeword {
    pub b: CellIndex,
    pub c: CellIndex,
}

impl Codeword {
    /// The length-2k integer sequence `(b_1..b_k, c_1..c_k)`, 1-based.
    pub fn sequence(&self) -> Vec<usize> {
        self.b.0.iter().chain(&self.c.0).map(|x| x + 1).collect()
    }

    pub fn to_json(&self) -> Value {
        let one = |v: &CellIndex| v.0.iter().map(|x| x + 1).collect::<Vec<_>>();
        json!({ "b": one(&self.b), "c": one(&self.c) })
    }
}

/// One copy of `F` inside `F*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupCopy {
    /// `detailed[i]` is the cell `j^i` used in part `i`.
    pub detailed: Vec<CellIndex>,
    /// Global vertex ids of each class.
    pub classes: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct BlowupContext {
    pattern: PatternSignature,
    designs: Vec<TransversalDesign>,
    part_offsets: Vec<usize>,
    m: usize,
}

/// Builds `TD(k, a_i)` for every part and fixes the cell layout: cell `j`
/// of part `i` is the `a_i` consecutive vertices starting at
/// `a_i * rank(j)`, with `rank` the mixed-radix rank of `j` (radices
/// `a_1..a_k`, first coordinate most significant).
pub fn make_context(pattern: &PatternSignature) -> Result<BlowupContext> {
    let k = pattern.k();
    let failing: Vec<usize> = pattern
        .parts()
        .iter()
        .enumerate()
        .filter(|&(_, &a)| !td_constructible(k, a))
        .map(|(i, _)| i + 1)
        .collect();
    if !failing.is_empty() {
        return Err(Error::UnsupportedPattern {
            pattern: pattern.parts().to_vec(),
            parts: failing,
        });
    }
    let designs = pattern
        .parts()
        .iter()
        .map(|&a| {
            let td = transversal_design(k, a)?;
            let report = verify_td(&td);
            if !report.is_ok() {
                return Err(Error::InternalInvariant(format!(
                    "TD({k},{a}) failed verification: {}",
                    report.violations[0]
                )));
            }
            Ok(td)
        })
        .collect::<Result<Vec<_>>>()?;
    let m = pattern.m();
    let mut part_offsets = Vec::with_capacity(k + 1);
    let mut offset = 0;
    for &a in pattern.parts() {
        part_offsets.push(offset);
        offset += m * a;
    }
    part_offsets.push(offset);
    Ok(BlowupContext {
        pattern: pattern.clone(),
        designs,
        part_offsets,
        m,
    })
}

impl BlowupContext {
    pub fn pattern(&self) -> &PatternSignature {
        &self.pattern
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn designs(&self) -> &[TransversalDesign] {
        &self.designs
    }

    /// Part sizes `m a_i` of `F*`.
    pub fn host_parts(&self) -> Vec<usize> {
        self.pattern.parts().iter().map(|a| a * self.m).collect()
    }

    pub fn host_order(&self) -> usize {
        self.part_offsets[self.pattern.k()]
    }

    pub fn cell_rank(&self, cell: &CellIndex) -> usize {
        cell.0
            .iter()
            .zip(self.pattern.parts())
            .fold(0, |acc, (&j, &a)| acc * a + j)
    }

    pub fn cell_of_rank(&self, mut rank: usize) -> CellIndex {
        let parts = self.pattern.parts();
        let mut coords = vec![0; parts.len()];
        for (c, &a) in coords.iter_mut().zip(parts).rev() {
            *c = rank % a;
            rank /= a;
        }
        CellIndex(coords)
    }

    fn cell_in_range(&self, cell: &CellIndex) -> bool {
        cell.0.len() == self.pattern.k()
            && cell.0.iter().zip(self.pattern.parts()).all(|(&j, &a)| j < a)
    }

    /// Global vertex range of cell `cell` inside part `part`.
    pub fn cell_vertices(&self, part: usize, cell: &CellIndex) -> Range<usize> {
        let a = self.pattern.parts()[part];
        let start = self.part_offsets[part] + a * self.cell_rank(cell);
        start..start + a
    }

    /// Part and cell containing a global vertex id.
    pub fn locate(&self, vertex: usize) -> Result<(usize, CellIndex)> {
        if vertex >= self.host_order() {
            return Err(Error::VertexOutOfRange(vertex));
        }
        let part = self.part_offsets.partition_point(|&o| o <= vertex) - 1;
        let a = self.pattern.parts()[part];
        Ok((part, self.cell_of_rank((vertex - self.part_offsets[part]) / a)))
    }

    /// All `m^2` codewords in lexicographic `(b, c)` order.
    pub fn codewords(&self) -> impl Iterator<Item = Codeword> + '_ {
        (0..self.m * self.m).map(move |r| Codeword {
            b: self.cell_of_rank(r / self.m),
            c: self.cell_of_rank(r % self.m),
        })
    }

    fn copy_from_detailed(&self, detailed: Vec<CellIndex>) -> BlowupCopy {
        let classes = detailed
            .iter()
            .enumerate()
            .map(|(i, cell)| self.cell_vertices(i, cell).collect())
            .collect();
        BlowupCopy { detailed, classes }
    }

    /// Decodes a codeword into its copy. Afterwards checks that the block
    /// rule reproduced `b` and `c` in the positions they were written to.
    pub fn decode_codeword(&self, w: &Codeword) -> Result<BlowupCopy> {
        if !self.cell_in_range(&w.b) || !self.cell_in_range(&w.c) {
            return Err(Error::InvalidCodeword);
        }
        let k = self.pattern.k();
        let mut detailed = vec![vec![0; k]; k];
        for l in 0..k {
            let next = (l + 1) % k;
            detailed[l][l] = w.b.0[l];
            detailed[next][l] = w.c.0[l];
            let block = self.designs[l]
                .block_through(Point::new(l, w.b.0[l]), Point::new(next, w.c.0[l]))?;
            for (i, row) in detailed.iter_mut().enumerate() {
                row[l] = index_in_group(block, i).ok_or_else(|| {
                    Error::InternalInvariant(format!("block of TD^{} misses group {}", l + 1, i + 1))
                })?;
            }
        }
        for l in 0..k {
            if detailed[l][l] != w.b.0[l] || detailed[(l + 1) % k][l] != w.c.0[l] {
                return Err(Error::InternalInvariant(format!(
                    "block rule disagrees with the codeword at coordinate {}",
                    l + 1
                )));
            }
        }
        Ok(self.copy_from_detailed(detailed.into_iter().map(CellIndex).collect()))
    }

    /// The copy containing edge `uv` and its codeword.
    pub fn edge_to_copy(&self, u: usize, v: usize) -> Result<(Codeword, BlowupCopy)> {
        let (pu, ju) = self.locate(u)?;
        let (pv, jv) = self.locate(v)?;
        if pu == pv {
            return Err(Error::SamePart { part: pu, u, v });
        }
        let k = self.pattern.k();
        let mut detailed = vec![vec![0; k]; k];
        for l in 0..k {
            let block = self.designs[l]
                .block_through(Point::new(pu, ju.0[l]), Point::new(pv, jv.0[l]))?;
            for (i, row) in detailed.iter_mut().enumerate() {
                row[l] = index_in_group(block, i).ok_or_else(|| {
                    Error::InternalInvariant(format!("block of TD^{} misses group {}", l + 1, i + 1))
                })?;
            }
        }
        let codeword = Codeword {
            b: CellIndex((0..k).map(|l| detailed[l][l]).collect()),
            c: CellIndex((0..k).map(|l| detailed[(l + 1) % k][l]).collect()),
        };
        let copy = self.copy_from_detailed(detailed.into_iter().map(CellIndex).collect());
        if !(copy.classes[pu].contains(&u) && copy.classes[pv].contains(&v)) {
            return Err(Error::InternalInvariant(format!(
                "resolved copy misses edge {} {}",
                u + 1,
                v + 1
            )));
        }
        Ok((codeword, copy))
    }

    pub fn decompose(&self) -> Result<Decomposition> {
        let copies = self
            .codewords()
            .map(|w| {
                let copy = self.decode_codeword(&w)?;
                Ok(PatternCopy {
                    classes: copy.classes,
                    codeword: Some(w),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Decomposition {
            host: Host::multipartite(self.host_parts()),
            pattern: self.pattern.clone(),
            copies,
            induced: true,
        })
    }
}

pub fn decode_codeword(ctx: &BlowupContext, w: &Codeword) -> Result<BlowupCopy> {
    ctx.decode_codeword(w)
}

pub fn edge_to_copy(ctx: &BlowupContext, u: usize, v: usize) -> Result<(Codeword, BlowupCopy)> {
    ctx.edge_to_copy(u, v)
}

/// The full `m^2`-copy decomposition of `F*`, copies in codeword order.
pub fn blowup_decompose(pattern: &PatternSignature) -> Result<Decomposition> {
    make_context(pattern)?.decompose()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(parts: &[usize]) -> PatternSignature {
        PatternSignature::new(parts.to_vec()).unwrap()
    }

    fn cw(b: &[usize], c: &[usize]) -> Codeword {
        Codeword {
            b: CellIndex(b.to_vec()),
            c: CellIndex(c.to_vec()),
        }
    }

    #[test]
    fn context_examples() {
        assert_eq!(make_context(&pat(&[1, 2])).unwrap().m(), 2);
        let ctx = make_context(&pat(&[2, 2, 2])).unwrap();
        assert_eq!(ctx.m(), 8);
        assert_eq!(ctx.host_parts(), vec![16, 16, 16]);
        assert_eq!(
            make_context(&pat(&[2, 6, 3, 6])).unwrap_err(),
            Error::UnsupportedPattern {
                pattern: vec![2, 6, 3, 6],
                parts: vec![1, 2, 4]
            }
        );
    }

    #[test]
    fn layout_is_mixed_radix() {
        let ctx = make_context(&pat(&[2, 3])).unwrap();
        assert_eq!(ctx.cell_rank(&CellIndex(vec![1, 2])), 5);
        assert_eq!(ctx.cell_of_rank(4), CellIndex(vec![1, 1]));
        // part 2 has cells of 3 vertices and starts after the 12 of part 1
        assert_eq!(ctx.cell_vertices(1, &CellIndex(vec![0, 1])), 15..18);
        assert_eq!(ctx.locate(16).unwrap(), (1, CellIndex(vec![0, 1])));
        assert!(ctx.locate(30).is_err());
    }

    #[test]
    fn decode_pattern_1_2() {
        let ctx = make_context(&pat(&[1, 2])).unwrap();
        let copy = ctx.decode_codeword(&cw(&[0, 0], &[0, 0])).unwrap();
        assert_eq!(copy.detailed, vec![CellIndex(vec![0, 0]), CellIndex(vec![0, 0])]);
        // K_{2,4}: part 1 = {0,1}, part 2 = {2,..,5}
        assert_eq!(copy.classes, vec![vec![0], vec![2, 3]]);
        assert_eq!(ctx.decode_codeword(&cw(&[0, 2], &[0, 0])), Err(Error::InvalidCodeword));
    }

    #[test]
    fn decode_single_edge() {
        let d = blowup_decompose(&pat(&[1, 1])).unwrap();
        assert_eq!(d.copies.len(), 1);
        assert_eq!(d.copies[0].classes, vec![vec![0], vec![1]]);
    }

    #[test]
    fn decode_2_2_2_satisfies_both_rules() {
        let ctx = make_context(&pat(&[2, 2, 2])).unwrap();
        for w in ctx.codewords() {
            let copy = ctx.decode_codeword(&w).unwrap();
            for l in 0..3 {
                assert_eq!(copy.detailed[l].0[l], w.b.0[l]);
                assert_eq!(copy.detailed[(l + 1) % 3].0[l], w.c.0[l]);
            }
        }
    }

    #[test]
    fn edge_to_copy_errors() {
        let ctx = make_context(&pat(&[1, 2])).unwrap();
        assert_eq!(ctx.edge_to_copy(0, 1), Err(Error::SamePart { part: 0, u: 0, v: 1 }));
        assert_eq!(ctx.edge_to_copy(0, 6), Err(Error::VertexOutOfRange(6)));
        let (w, copy) = ctx.edge_to_copy(0, 2).unwrap();
        assert_eq!(ctx.decode_codeword(&w).unwrap(), copy);
    }

    #[test]
    fn codeword_sequence_is_one_based() {
        assert_eq!(cw(&[0, 1], &[0, 0]).sequence(), vec![1, 2, 1, 1]);
    }
}
