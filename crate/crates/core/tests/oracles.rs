//! Examples checked against brute-force oracles written here, independent of
//! the library's own verifiers.

use std::collections::{BTreeSet, HashSet};

use induced_decomp::blowup::{make_context, Codeword};
use induced_decomp::dense::{assemble, step1_decompose_clique, step2_blow_up};
use induced_decomp::designs::{index_in_group, mols, mols_prime_power, mols_product, td_from_mols, Point};
use induced_decomp::embedded::{embedded_decompose, star_parameters, verify_embedded};
use induced_decomp::oracle::{exact_cover_decompose, verify_decomposition, SearchBudget};
use induced_decomp::{blowup_decompose, MolsFamily, PatternSignature, SmallGraph, TransversalDesign};
use proptest::prelude::*;

fn pat(parts: &[usize]) -> PatternSignature {
    PatternSignature::new(parts.to_vec()).unwrap()
}

/// Rows and columns are permutations; every pair of squares shows all n^2
/// symbol pairs.
fn brute_force_mols(family: &MolsFamily) -> bool {
    let n = family.order();
    let sq = family.squares();
    let latin = sq.iter().all(|s| {
        (0..n).all(|i| {
            let row: HashSet<usize> = (0..n).map(|j| s.get(i, j)).collect();
            let col: HashSet<usize> = (0..n).map(|j| s.get(j, i)).collect();
            row.len() == n && col.len() == n && row.iter().all(|&x| x < n)
        })
    });
    let orthogonal = (0..sq.len()).all(|a| {
        (a + 1..sq.len()).all(|b| {
            let pairs: HashSet<(usize, usize)> = (0..n)
                .flat_map(|x| (0..n).map(move |y| (x, y)))
                .map(|(x, y)| (sq[a].get(x, y), sq[b].get(x, y)))
                .collect();
            pairs.len() == n * n
        })
    });
    latin && orthogonal
}

/// Counts, for every pair of points, the blocks containing both.
fn brute_force_td(td: &TransversalDesign) -> bool {
    let (k, n) = (td.k(), td.n());
    let sets: Vec<HashSet<Point>> = td.blocks().iter().map(|b| b.iter().copied().collect()).collect();
    let points: Vec<Point> = (0..k).flat_map(|g| (0..n).map(move |i| Point::new(g, i))).collect();
    let blocks_ok = td.blocks().iter().all(|b| {
        let groups: BTreeSet<usize> = b.iter().map(|p| p.group).collect();
        b.len() == k && groups.len() == k
    });
    blocks_ok
        && td.blocks().len() == n * n
        && points.iter().enumerate().all(|(i, a)| {
            points[i + 1..].iter().all(|b| {
                let count = sets.iter().filter(|s| s.contains(a) && s.contains(b)).count();
                count == usize::from(a.group != b.group)
            })
        })
}

/// Exhaustive edge tally: every host edge in exactly one copy, every copy
/// complete between classes and independent inside them.
fn brute_force_induced_cover(g: &SmallGraph, copies: &[Vec<Vec<usize>>]) -> bool {
    let mut count = vec![0usize; g.order() * g.order()];
    for classes in copies {
        for (i, a) in classes.iter().enumerate() {
            for (j, b) in classes.iter().enumerate() {
                for &u in a {
                    for &v in b {
                        if u == v {
                            continue;
                        }
                        if i == j && g.has_edge(u, v) {
                            return false;
                        }
                        if i < j {
                            if !g.has_edge(u, v) {
                                return false;
                            }
                            count[u.min(v) * g.order() + u.max(v)] += 1;
                        }
                    }
                }
            }
        }
    }
    g.edges().iter().all(|&(u, v)| count[u * g.order() + v] == 1)
}

#[test]
fn mols_field_examples() {
    for (q, count) in [(3, 2), (4, 3), (5, 4), (8, 7), (9, 8)] {
        let f = mols_prime_power(q, count).unwrap();
        assert_eq!(f.len(), count);
        assert!(brute_force_mols(&f), "q = {q}");
    }
    let f = mols(5, 4).unwrap();
    assert!(brute_force_mols(&f));
}

#[test]
fn mols_product_order_21() {
    let a = mols(3, 2).unwrap();
    let b = mols(7, 2).unwrap();
    let f = mols_product(&a, &b, 2).unwrap();
    assert_eq!(f.order(), 21);
    assert!(brute_force_mols(&f));
    assert_eq!(mols(21, 2).unwrap(), f);
}

#[test]
fn td_examples() {
    let td = td_from_mols(&MolsFamily::new(3, vec![induced_decomp::cyclic_latin(3)]).unwrap(), 3).unwrap();
    assert!(brute_force_td(&td));
    let td = td_from_mols(&mols(3, 2).unwrap(), 4).unwrap();
    assert!(brute_force_td(&td));
    assert!(brute_force_td(&td_from_mols(&mols(12, 2).unwrap(), 4).unwrap()));
}

#[test]
fn td_points_lie_in_n_blocks() {
    let td = td_from_mols(&mols(7, 4).unwrap(), 6).unwrap();
    for g in 0..6 {
        for i in 0..7 {
            let hits = td.blocks().iter().filter(|b| b.contains(&Point::new(g, i))).count();
            assert_eq!(hits, 7);
        }
    }
}

#[test]
fn blowup_k24_matches_search() {
    let d = blowup_decompose(&pat(&[1, 2])).unwrap();
    let g = d.host.to_graph();
    assert_eq!((g.order(), g.edge_count(), d.copies.len()), (6, 8, 4));
    assert!(brute_force_induced_cover(&g, &d.classes()));
    let searched = exact_cover_decompose(&g, &pat(&[1, 2]), true, SearchBudget::default()).unwrap();
    assert_eq!(searched.copies.len(), 4);
}

#[test]
fn blowup_k88() {
    // m = 4, so the host is K_{8,8} with 64 = 16 * 4 edges
    let d = blowup_decompose(&pat(&[2, 2])).unwrap();
    let g = d.host.to_graph();
    assert_eq!((g.order(), g.edge_count(), d.copies.len()), (16, 64, 16));
    assert!(brute_force_induced_cover(&g, &d.classes()));
}

#[test]
fn blowup_copy_counts_and_edge_identity() {
    for parts in [vec![1, 3], vec![2, 3], vec![3, 3], vec![1, 2, 3], vec![2, 2, 2], vec![1, 3, 4, 5]] {
        let p = pat(&parts);
        let d = blowup_decompose(&p).unwrap();
        let m = p.m();
        let host_edges: usize = {
            let big: Vec<usize> = parts.iter().map(|a| a * m).collect();
            (0..big.len()).flat_map(|i| (i + 1..big.len()).map(move |j| (i, j))).map(|(i, j)| big[i] * big[j]).sum()
        };
        assert_eq!(d.copies.len(), m * m);
        assert_eq!(m * m * p.edge_count(), host_edges);
        let g = d.host.to_graph();
        assert_eq!(g.edge_count(), host_edges);
        assert!(brute_force_induced_cover(&g, &d.classes()), "{parts:?}");
    }
}

#[test]
fn edge_to_copy_exhaustive_k24() {
    let ctx = make_context(&pat(&[1, 2])).unwrap();
    let d = ctx.decompose().unwrap();
    for (u, v) in d.host.to_graph().edges() {
        let (w, copy) = ctx.edge_to_copy(u, v).unwrap();
        assert!(copy.classes[0].contains(&u) && copy.classes[1].contains(&v));
        let listed = d.copies.iter().find(|c| c.codeword.as_ref() == Some(&w)).unwrap();
        assert_eq!(listed.classes, copy.classes);
    }
}

#[test]
fn decode_matches_block_lookups_for_1_2() {
    // TD(2,1) has the single block {(1,1),(2,1)}; TD(2,2) blocks are cross pairs
    let ctx = make_context(&pat(&[1, 2])).unwrap();
    let td2 = &ctx.designs()[1];
    let w = Codeword {
        b: induced_decomp::CellIndex(vec![0, 1]),
        c: induced_decomp::CellIndex(vec![0, 0]),
    };
    let copy = ctx.decode_codeword(&w).unwrap();
    let block = td2.block_through(Point::new(1, 1), Point::new(0, 0)).unwrap();
    assert_eq!(copy.detailed[1].0[1], index_in_group(block, 1).unwrap());
    assert_eq!(copy.detailed[0].0[1], index_in_group(block, 0).unwrap());
    assert_eq!(copy.detailed[0].0[0], 0);
    assert_eq!(copy.detailed[1].0[0], 0);
}

#[test]
fn oracle_agrees_with_construction_small_hosts() {
    for parts in [vec![1, 1], vec![1, 2], vec![1, 3], vec![1, 1, 1], vec![1, 1, 2], vec![1, 1, 1, 1]] {
        let p = pat(&parts);
        let d = blowup_decompose(&p).unwrap();
        let g = d.host.to_graph();
        assert!(g.order() <= 14);
        assert_eq!(verify_decomposition(&g, &p, &d.classes(), true), Ok(()));
        let found = exact_cover_decompose(&g, &p, true, SearchBudget::default()).unwrap();
        assert_eq!(found.copies.len(), d.copies.len());
        assert!(brute_force_induced_cover(&g, &found.classes()));
    }
}

#[test]
fn embedded_examples() {
    let d = embedded_decompose(&pat(&[1, 2]), 3).unwrap();
    let g = d.base.host.to_graph();
    assert_eq!((g.edge_count(), d.base.copies.len()), (18, 9));
    assert!(brute_force_induced_cover(&g, &d.base.classes()));
    let d = embedded_decompose(&pat(&[2, 2, 2]), 6).unwrap();
    assert!(brute_force_induced_cover(&d.base.host.to_graph(), &d.base.classes()));
}

#[test]
fn star_parameters_admit_every_design() {
    for parts in [vec![1, 2], vec![2, 2], vec![2, 3], vec![1, 1, 1], vec![2, 3, 6], vec![1, 2, 1, 1]] {
        let p = pat(&parts);
        let s = star_parameters(&p).unwrap();
        assert_eq!(s.p % p.m(), 0);
        assert!(make_context(&s.amplified).is_ok());
        let e = embedded_decompose(&p, s.p).unwrap();
        if e.base.host.order() <= 200 {
            assert_eq!(verify_embedded(&e), Ok(()));
        }
    }
}

#[test]
fn cocktail_party_blowup() {
    let d = step1_decompose_clique(&pat(&[1, 2]), 4, SearchBudget::default()).unwrap();
    let (g, placements) = step2_blow_up(&d, 2);
    // K_8 minus a perfect matching
    assert_eq!(g.edge_count(), 28 - 4);
    assert!((0..8).all(|v| g.degree(v) == 6));
    for pl in &placements {
        let a = pl.class(0);
        let b = pl.class(1);
        assert!(a.iter().all(|&u| b.iter().all(|&v| g.has_edge(u, v))));
    }
}

#[test]
fn dense_full_pipeline_n9() {
    let cert = assemble(&pat(&[1, 2]), 9).unwrap();
    let g = cert.graph();
    assert_eq!(cert.non_edge_count, g.non_edges().len());
    assert_eq!(cert.non_edge_count, 4 + 8);
    // (pq + p/2) n with p = 2, q = 4
    assert_eq!(cert.bound(), 81.0);
    assert!(brute_force_induced_cover(&g, &cert.decomposition.classes()));
}

#[test]
fn dense_monotone_feasibility() {
    for n in 8..=40 {
        let cert = assemble(&pat(&[1, 2]), n).unwrap();
        assert!(cert.params.t < cert.params.p * cert.params.q, "n = {n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mols_are_orthogonal_and_deterministic(n in 2usize..40, want in 0usize..4) {
        let bound = induced_decomp::macneish(n).unwrap();
        let count = want.min(bound);
        let f = mols(n, count).unwrap();
        prop_assert_eq!(f.len(), count);
        prop_assert!(brute_force_mols(&f));
        prop_assert_eq!(f.to_json().to_string(), mols(n, count).unwrap().to_json().to_string());
    }

    #[test]
    fn td_round_trip(qi in 0usize..7, ki in 0usize..10) {
        let q = [2, 3, 4, 5, 7, 8, 9][qi];
        let k = 2 + ki % q;
        let td = td_from_mols(&mols(q, k - 2).unwrap(), k).unwrap();
        prop_assert!(brute_force_td(&td));
    }

    #[test]
    fn edge_resolution_is_consistent(
        parts in prop::collection::vec(1usize..=3, 2..=3),
        pick in any::<(usize, usize)>(),
    ) {
        let p = pat(&parts);
        let ctx = make_context(&p).unwrap();
        let w = ctx.codewords().nth(pick.0 % (ctx.m() * ctx.m())).unwrap();
        let copy = ctx.decode_codeword(&w).unwrap();
        // every edge of the decoded copy resolves back to the same codeword
        let k = parts.len();
        let i = pick.1 % k;
        let j = (i + 1 + pick.1 / k % (k - 1)) % k;
        for &u in &copy.classes[i] {
            for &v in &copy.classes[j] {
                let (w2, c2) = ctx.edge_to_copy(u, v).unwrap();
                prop_assert_eq!(&w2, &w);
                prop_assert_eq!(&c2, &copy);
            }
        }
    }
}
