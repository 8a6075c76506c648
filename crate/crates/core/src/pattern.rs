use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The part sizes `(a_1, ..., a_k)` of the complete multipartite pattern
/// `F = K_{a_1,...,a_k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PatternSignature {
    parts: Vec<usize>,
}

impl PatternSignature {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.len() < 2 {
            return Err(Error::InvalidPattern(
                "a pattern needs at least two parts".into(),
            ));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPattern("part sizes must be positive".into()));
        }
        let sig = PatternSignature { parts };
        if sig.checked_m().is_none() {
            return Err(Error::InvalidPattern("product of part sizes overflows".into()));
        }
        Ok(sig)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    fn checked_m(&self) -> Option<usize> {
        self.parts.iter().try_fold(1usize, |acc, &a| acc.checked_mul(a))
    }

    /// `m = a_1 * ... * a_k`.
    pub fn m(&self) -> usize {
        self.checked_m().expect("checked at construction")
    }

    pub fn vertex_count(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `|E(F)| = sum over i < i' of a_i * a_i'`.
    pub fn edge_count(&self) -> usize {
        let total = self.vertex_count();
        self.parts.iter().map(|a| a * (total - a)).sum::<usize>() / 2
    }

    /// gcd of the vertex degrees `(sum a_j) - a_i`.
    pub fn degree_gcd(&self) -> usize {
        let total = self.vertex_count();
        self.parts.iter().map(|a| total - a).fold(0, gcd)
    }

    /// Pattern with every part multiplied by `factor`.
    pub fn scaled(&self, factor: usize) -> Result<Self> {
        PatternSignature::new(self.parts.iter().map(|a| a * factor).collect())
    }

    /// Part sizes in non-decreasing order; equal patterns up to isomorphism
    /// share this form.
    pub fn sorted_parts(&self) -> Vec<usize> {
        let mut parts = self.parts.clone();
        parts.sort_unstable();
        parts
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl FromStr for PatternSignature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPattern(format!("bad part size {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        PatternSignature::new(parts)
    }
}

impl fmt::Display for PatternSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        write!(f, "K_{{{}}}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_quantities() {
        let p: PatternSignature = "1,2".parse().unwrap();
        assert_eq!((p.k(), p.m(), p.edge_count(), p.degree_gcd()), (2, 2, 2, 1));
        let p: PatternSignature = "2,2,2".parse().unwrap();
        assert_eq!((p.m(), p.edge_count(), p.degree_gcd()), (8, 12, 4));
        let p: PatternSignature = "2,3".parse().unwrap();
        assert_eq!((p.m(), p.edge_count(), p.degree_gcd()), (6, 6, 1));
        assert_eq!(p.to_string(), "K_{2,3}");
    }

    #[test]
    fn rejects_bad_input() {
        assert!("3".parse::<PatternSignature>().is_err());
        assert!("1,0".parse::<PatternSignature>().is_err());
        assert!("1,x".parse::<PatternSignature>().is_err());
        assert!(" 1, 2 ".parse::<PatternSignature>().is_ok());
    }
}
