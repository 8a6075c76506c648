//! Embedded decompositions of `K_{p a_1, ..., p a_k}`: every block of
//! `TD(k, p)` becomes one copy of `K_{a_1, ..., a_k}` by substituting a cell
//! of `a_i` vertices for each point of group `i`.

use std::fmt;

use serde_json::Value;

use crate::decomposition::{Decomposition, Host, PatternCopy};
use crate::designs::{td_constructible, transversal_design};
use crate::error::{Error, Result};
use crate::oracle::DecompositionViolation;
use crate::pattern::PatternSignature;

#[derive(Debug, Clone)]
pub struct EmbeddedDecomposition {
    pub base: Decomposition,
    pub p: usize,
    /// `cells[i][j]` is `V_{i,j}`: the vertices of cell `j` in part `i`.
    pub cells: Vec<Vec<Vec<usize>>>,
    /// `cell_choice[c][i]` is the cell of part `i` used by copy `c`.
    pub cell_choice: Vec<Vec<usize>>,
}

impl EmbeddedDecomposition {
    pub fn to_json(&self) -> Value {
        let mut v = self.base.to_json();
        let cells: Vec<Vec<Vec<usize>>> = self
            .cells
            .iter()
            .map(|part| part.iter().map(|c| c.iter().map(|x| x + 1).collect()).collect())
            .collect();
        v["cells"] = serde_json::json!(cells);
        v
    }
}

pub fn embedded_decompose(pattern: &PatternSignature, p: usize) -> Result<EmbeddedDecomposition> {
    let k = pattern.k();
    if p == 0 || !td_constructible(k, p) {
        return Err(Error::UnsupportedP { k, p });
    }
    let td = transversal_design(k, p)?;
    let mut cells = Vec::with_capacity(k);
    let mut offset = 0;
    for &a in pattern.parts() {
        cells.push((0..p).map(|j| (offset + j * a..offset + (j + 1) * a).collect()).collect::<Vec<Vec<usize>>>());
        offset += p * a;
    }
    let mut copies = Vec::with_capacity(p * p);
    let mut cell_choice = Vec::with_capacity(p * p);
    for block in td.blocks() {
        let mut choice = vec![0; k];
        for pt in block {
            choice[pt.group] = pt.index;
        }
        copies.push(PatternCopy::new(
            choice.iter().enumerate().map(|(i, &j)| cells[i][j].clone()).collect(),
        ));
        cell_choice.push(choice);
    }
    let base = Decomposition {
        host: Host::multipartite(pattern.parts().iter().map(|a| a * p).collect()),
        pattern: pattern.clone(),
        copies,
        induced: true,
    };
    Ok(EmbeddedDecomposition {
        base,
        p,
        cells,
        cell_choice,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmbeddedViolation {
    CopyCount { expected: usize, found: usize },
    BadCells { part: usize },
    ClassNotACell { copy: usize, class: usize },
    Base(DecompositionViolation),
}

impl fmt::Display for EmbeddedViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmbeddedViolation::CopyCount { expected, found } => {
                write!(f, "expected {expected} copies, found {found}")
            }
            EmbeddedViolation::BadCells { part } => {
                write!(f, "cells of part {} do not partition it into a_i-sets", part + 1)
            }
            EmbeddedViolation::ClassNotACell { copy, class } => {
                write!(f, "copy {}: class {} is not one of the cells", copy + 1, class + 1)
            }
            EmbeddedViolation::Base(v) => v.fmt(f),
        }
    }
}

impl std::error::Error for EmbeddedViolation {}

/// Copy count, cell partition, class/cell coincidence, then the generic
/// decomposition checks.
pub fn verify_embedded(d: &EmbeddedDecomposition) -> Result<(), EmbeddedViolation> {
    let p = d.p;
    let base = &d.base;
    if base.copies.len() != p * p {
        return Err(EmbeddedViolation::CopyCount {
            expected: p * p,
            found: base.copies.len(),
        });
    }
    let parts = base.pattern.parts();
    let mut offset = 0;
    let mut sorted_cells = Vec::with_capacity(parts.len());
    for (part, &a) in parts.iter().enumerate() {
        let cells = d.cells.get(part).ok_or(EmbeddedViolation::BadCells { part })?;
        let mut all: Vec<usize> = cells.iter().flatten().copied().collect();
        all.sort_unstable();
        let expected: Vec<usize> = (offset..offset + p * a).collect();
        if cells.len() != p || cells.iter().any(|c| c.len() != a) || all != expected {
            return Err(EmbeddedViolation::BadCells { part });
        }
        let mut sorted: Vec<Vec<usize>> = cells
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.sort_unstable();
                c
            })
            .collect();
        sorted.sort();
        sorted_cells.push(sorted);
        offset += p * a;
    }
    for (copy, pc) in base.copies.iter().enumerate() {
        for (class, members) in pc.classes.iter().enumerate() {
            let mut m = members.clone();
            m.sort_unstable();
            let ok = sorted_cells
                .get(class)
                .is_some_and(|cells| cells.binary_search(&m).is_ok());
            if !ok {
                return Err(EmbeddedViolation::ClassNotACell { copy, class });
            }
        }
    }
    base.verify().map_err(EmbeddedViolation::Base)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarParameters {
    pub p: usize,
    pub amplified: PatternSignature,
}

pub const STAR_SEARCH_CAP: usize = 10_000;

/// Smallest `p > 1` that is a multiple of `m`, with `TD(k, p)` and every
/// `TD(k, p a_i)` constructible.
pub fn star_parameters(pattern: &PatternSignature) -> Result<StarParameters> {
    star_parameters_capped(pattern, STAR_SEARCH_CAP)
}

pub fn star_parameters_capped(pattern: &PatternSignature, cap: usize) -> Result<StarParameters> {
    let k = pattern.k();
    let m = pattern.m();
    let p = (1..)
        .map(|j| j * m)
        .take_while(|&p| p < cap)
        .filter(|&p| p > 1)
        .find(|&p| {
            td_constructible(k, p) && pattern.parts().iter().all(|&a| td_constructible(k, p * a))
        })
        .ok_or(Error::SearchExhausted { cap })?;
    Ok(StarParameters {
        p,
        amplified: pattern.scaled(p)?,
    })
}
