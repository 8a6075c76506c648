//! Host descriptors and decompositions, plus their JSON form.
//!
//! Vertices are 0-based in memory and 1-based in JSON.

use serde_json::{json, Map, Value};

use crate::blowup::{CellIndex, Codeword};
use crate::error::{Error, Result};
use crate::graph::SmallGraph;
use crate::oracle::{verify_decomposition, DecompositionViolation};
use crate::pattern::PatternSignature;

/// A host graph: the complete multipartite graph on `parts` (laid out
/// consecutively), followed by `isolated` isolated vertices, with the pairs
/// in `removed` deleted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Host {
    pub parts: Vec<usize>,
    pub isolated: usize,
    pub removed: Vec<(usize, usize)>,
}

impl Host {
    pub fn multipartite(parts: Vec<usize>) -> Self {
        Host {
            parts,
            isolated: 0,
            removed: Vec::new(),
        }
    }

    pub fn clique(n: usize) -> Self {
        Host::multipartite(vec![1; n])
    }

    /// Describes an arbitrary graph as `K_n` minus its non-edges.
    pub fn from_graph(g: &SmallGraph) -> Self {
        Host {
            parts: vec![1; g.order()],
            isolated: 0,
            removed: g.non_edges(),
        }
    }

    pub fn order(&self) -> usize {
        self.parts.iter().sum::<usize>() + self.isolated
    }

    pub fn to_graph(&self) -> SmallGraph {
        let mut g = SmallGraph::complete_multipartite(&self.parts);
        if self.isolated > 0 || !self.removed.is_empty() {
            let mut full = SmallGraph::empty(self.order());
            for (u, v) in g.edges() {
                full.add_edge(u, v);
            }
            for &(u, v) in &self.removed {
                full.remove_edge(u, v);
            }
            g = full;
        }
        g
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("parts".into(), json!(self.parts));
        if self.isolated > 0 {
            obj.insert("isolated".into(), json!(self.isolated));
        }
        if !self.removed.is_empty() {
            obj.insert("non_edges".into(), pairs_to_json(&self.removed));
        }
        Value::Object(obj)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let parts = usize_array(&v["parts"], "host.parts")?;
        let isolated = match &v["isolated"] {
            Value::Null => 0,
            x => x
                .as_u64()
                .ok_or_else(|| Error::Malformed("host.isolated must be an integer".into()))?
                as usize,
        };
        let removed = match &v["non_edges"] {
            Value::Null => Vec::new(),
            x => pairs_from_json(x)?,
        };
        Ok(Host {
            parts,
            isolated,
            removed,
        })
    }
}

pub(crate) fn pairs_to_json(pairs: &[(usize, usize)]) -> Value {
    Value::Array(pairs.iter().map(|&(u, v)| json!([u + 1, v + 1])).collect())
}

fn pairs_from_json(v: &Value) -> Result<Vec<(usize, usize)>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Malformed("expected a list of vertex pairs".into()))?;
    arr.iter()
        .map(|pair| match usize_array(pair, "pair")?.as_slice() {
            [u, v] if *u > 0 && *v > 0 => Ok((u - 1, v - 1)),
            _ => Err(Error::Malformed("pairs are two 1-based vertex ids".into())),
        })
        .collect()
}

fn usize_array(v: &Value, what: &str) -> Result<Vec<usize>> {
    v.as_array()
        .ok_or_else(|| Error::Malformed(format!("{what} must be an array")))?
        .iter()
        .map(|x| {
            x.as_u64()
                .map(|x| x as usize)
                .ok_or_else(|| Error::Malformed(format!("{what} must hold non-negative integers")))
        })
        .collect()
}

/// One copy of the pattern: `classes[i]` is the vertex set playing part `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternCopy {
    pub classes: Vec<Vec<usize>>,
    pub codeword: Option<Codeword>,
}

impl PatternCopy {
    pub fn new(classes: Vec<Vec<usize>>) -> Self {
        PatternCopy {
            classes,
            codeword: None,
        }
    }

    pub fn contains_edge(&self, u: usize, v: usize) -> bool {
        let class_of = |x| self.classes.iter().position(|c| c.contains(&x));
        matches!((class_of(u), class_of(v)), (Some(a), Some(b)) if a != b)
    }

    pub fn to_json(&self) -> Value {
        let classes: Vec<Vec<usize>> = self
            .classes
            .iter()
            .map(|c| c.iter().map(|v| v + 1).collect())
            .collect();
        let mut obj = Map::new();
        obj.insert("classes".into(), json!(classes));
        if let Some(w) = &self.codeword {
            obj.insert("codeword".into(), w.to_json());
        }
        Value::Object(obj)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let classes = v["classes"]
            .as_array()
            .ok_or_else(|| Error::Malformed("copy needs a \"classes\" array".into()))?
            .iter()
            .map(|c| {
                usize_array(c, "class")?
                    .into_iter()
                    .map(|x| x.checked_sub(1).ok_or_else(|| Error::Malformed("vertex ids are 1-based".into())))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let codeword = match &v["codeword"] {
            Value::Null => None,
            w => {
                let half = |key: &str| -> Result<CellIndex> {
                    let raw = usize_array(&w[key], "codeword")?;
                    raw.into_iter()
                        .map(|x| x.checked_sub(1).ok_or(Error::InvalidCodeword))
                        .collect::<Result<Vec<_>>>()
                        .map(CellIndex)
                };
                Some(Codeword {
                    b: half("b")?,
                    c: half("c")?,
                })
            }
        };
        Ok(PatternCopy { classes, codeword })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub host: Host,
    pub pattern: PatternSignature,
    pub copies: Vec<PatternCopy>,
    /// Whether every copy is claimed to be an induced subgraph of the host.
    pub induced: bool,
}

impl Decomposition {
    pub fn classes(&self) -> Vec<Vec<Vec<usize>>> {
        self.copies.iter().map(|c| c.classes.clone()).collect()
    }

    /// Runs the generic verifier against the host graph and the claimed
    /// induced flag.
    pub fn verify(&self) -> Result<(), DecompositionViolation> {
        verify_decomposition(&self.host.to_graph(), &self.pattern, &self.classes(), self.induced)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "host": self.host.to_json(),
            "pattern": self.pattern.parts(),
            "copies": self.copies.iter().map(PatternCopy::to_json).collect::<Vec<_>>(),
            "induced": self.induced,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let pattern = PatternSignature::new(usize_array(&v["pattern"], "pattern")?)?;
        let host = match &v["host"] {
            Value::Null => Host::multipartite(Vec::new()),
            h => Host::from_json(h)?,
        };
        let copies = v["copies"]
            .as_array()
            .ok_or_else(|| Error::Malformed("missing \"copies\" array".into()))?
            .iter()
            .map(PatternCopy::from_json)
            .collect::<Result<Vec<_>>>()?;
        let induced = v["induced"].as_bool().unwrap_or(false);
        Ok(Decomposition {
            host,
            pattern,
            copies,
            induced,
        })
    }
}

/// Pretty-printed JSON with sorted keys and a trailing newline.
pub fn to_canonical_json(v: &Value) -> String {
    // serde_json's default map is ordered, so keys come out sorted
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn host_graphs() {
        let h = Host {
            parts: vec![2, 2],
            isolated: 1,
            removed: vec![(0, 2)],
        };
        let g = h.to_graph();
        assert_eq!(g.order(), 5);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.degree(4), 0);
        assert_eq!(Host::from_json(&h.to_json()).unwrap(), h);
    }

    #[test]
    fn decomposition_json_round_trip() {
        let d = Decomposition {
            host: Host::multipartite(vec![1, 2]),
            pattern: PatternSignature::new(vec![1, 2]).unwrap(),
            copies: vec![PatternCopy {
                classes: vec![vec![0], vec![1, 2]],
                codeword: Some(Codeword {
                    b: CellIndex(vec![0, 0]),
                    c: CellIndex(vec![0, 1]),
                }),
            }],
            induced: true,
        };
        let v = d.to_json();
        assert_eq!(v["copies"][0]["classes"], json!([[1], [2, 3]]));
        assert_eq!(v["copies"][0]["codeword"]["c"], json!([1, 2]));
        assert_eq!(Decomposition::from_json(&v).unwrap(), d);
        assert!(d.verify().is_ok());
        let text = to_canonical_json(&v);
        let copies_at = text.find("\"copies\"").unwrap();
        let host_at = text.find("\"host\"").unwrap();
        assert!(copies_at < host_at);
    }

    #[test]
    fn malformed_json() {
        assert!(Decomposition::from_json(&json!({"pattern": [1, 2]})).is_err());
        assert!(Decomposition::from_json(&json!({"pattern": [1, 2], "copies": [{"classes": [[0]]}]})).is_err());
    }
}
