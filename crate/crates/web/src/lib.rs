//! Browser bindings for the demo page in `www/`. Every export takes plain
//! numbers or a pattern string like `"1,2"` and returns a JSON string; failures
//! come back as `{"error": "..."}`. Vertex numbers in the JSON are 1-based.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use induced_decomp::dense::assemble;
use induced_decomp::{make_context, mols, Error, PatternSignature};

/// Larger graphs make the page unusable, so the demo refuses them.
pub const MAX_VERTICES: usize = 600;

fn respond(result: Result<Value, Error>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

fn parse(pattern: &str) -> Result<PatternSignature, Error> {
    pattern.trim().parse()
}

fn too_large(vertices: usize) -> Error {
    Error::Malformed(format!(
        "{vertices} vertices is more than the demo draws (limit {MAX_VERTICES})"
    ))
}

/// `count` mutually orthogonal Latin squares of the given order.
#[wasm_bindgen]
pub fn latin_squares(order: usize, count: usize) -> String {
    respond((|| {
        if order == 0 || order > 64 {
            return Err(Error::Malformed("order must be between 1 and 64".into()));
        }
        let family = mols(order, count)?;
        let mut v = family.to_json();
        v["mutually_orthogonal"] = json!(family.is_mutually_orthogonal());
        Ok(v)
    })())
}

/// The blow-up decomposition of `K_{m a_1, ..., m a_k}` with a verdict from
/// the independent verifier.
#[wasm_bindgen]
pub fn blowup(pattern: &str) -> String {
    respond((|| {
        let ctx = make_context(&parse(pattern)?)?;
        if ctx.host_order() > MAX_VERTICES {
            return Err(too_large(ctx.host_order()));
        }
        let d = ctx.decompose()?;
        let mut v = d.to_json();
        v["m"] = json!(ctx.m());
        v["verified"] = json!(d.verify().is_ok());
        Ok(v)
    })())
}

/// The copy of the blow-up decomposition that contains edge `u v`.
#[wasm_bindgen]
pub fn edge_copy(pattern: &str, u: usize, v: usize) -> String {
    respond((|| {
        let ctx = make_context(&parse(pattern)?)?;
        let n = ctx.host_order();
        if u == 0 || v == 0 || u > n || v > n {
            return Err(Error::VertexOutOfRange(u.max(v)));
        }
        let (w, copy) = ctx.edge_to_copy(u - 1, v - 1)?;
        let m = ctx.m();
        let index = ctx.cell_rank(&w.b) * m + ctx.cell_rank(&w.c);
        let classes: Vec<Vec<usize>> = copy
            .classes
            .iter()
            .map(|c| c.iter().map(|x| x + 1).collect())
            .collect();
        Ok(json!({
            "codeword": w.to_json(),
            "sequence": w.sequence(),
            "copy": index + 1,
            "classes": classes,
        }))
    })())
}

/// A near-complete `n`-vertex graph with its induced decomposition.
#[wasm_bindgen]
pub fn dense(pattern: &str, n: usize) -> String {
    respond((|| {
        if n > MAX_VERTICES {
            return Err(too_large(n));
        }
        let cert = assemble(&parse(pattern)?, n)?;
        let mut v = cert.to_json();
        v["verified"] = json!(cert.decomposition.verify().is_ok());
        Ok(v)
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn squares() {
        let v = call(latin_squares(4, 3));
        assert_eq!(v["squares"].as_array().unwrap().len(), 3);
        assert_eq!(v["mutually_orthogonal"], true);
        assert!(call(latin_squares(6, 2))["error"].as_str().unwrap().contains("bound"));
        assert!(call(latin_squares(0, 1))["error"].is_string());
    }

    #[test]
    fn blowup_and_edges() {
        let v = call(blowup("1,2"));
        assert_eq!(v["verified"], true);
        assert_eq!(v["copies"].as_array().unwrap().len(), 4);
        assert_eq!(v["host"]["parts"], json!([2, 4]));

        // every edge lands in the copy the decomposition lists at that index
        let copies = v["copies"].as_array().unwrap();
        for u in 1..=2 {
            for w in 3..=6 {
                let e = call(edge_copy("1,2", u, w));
                let idx = e["copy"].as_u64().unwrap() as usize - 1;
                assert_eq!(copies[idx]["classes"], e["classes"]);
                assert_eq!(copies[idx]["codeword"], e["codeword"]);
            }
        }
        assert!(call(edge_copy("1,2", 3, 4))["error"].is_string());
        assert!(call(edge_copy("1,2", 0, 4))["error"].is_string());
        assert!(call(blowup("1,x"))["error"].is_string());
        assert!(call(blowup("3,3,3,3"))["error"].is_string());
    }

    #[test]
    fn dense_graph() {
        let v = call(dense("1,2", 9));
        assert_eq!(v["verified"], true);
        assert_eq!(v["bound"]["lhs"], 12);
        assert_eq!(v["non_edges"].as_array().unwrap().len(), 12);
        assert!(call(dense("1,2", 5))["error"].as_str().unwrap().contains("too small"));
        assert!(call(dense("1,2", 10_000))["error"].is_string());
    }
}
