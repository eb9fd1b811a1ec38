//! Seeded generators for the property suites.
//!
//! Everything is driven by a caller-supplied [`ChaCha8Rng`], so a seed fully
//! determines every instance. Vertices are named `v0, v1, …` and edges
//! `e0, e1, …`.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{EdgeSet, Multigraph};
use crate::labelled::{LabelledGraph, TestVector};
use crate::network::{Divisor, EdgeFlow, ResistiveNetwork};
use crate::rational::{ratio, Rational};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Connected multigraph with at most `max_vertices` vertices and at most
/// `max_edges` edges; loops and parallel edges occur freely.
pub fn connected_multigraph(
    rng: &mut ChaCha8Rng,
    max_vertices: usize,
    max_edges: usize,
) -> Multigraph {
    let n = rng.gen_range(1..=max_vertices.min(max_edges + 1));
    let m = rng.gen_range((n - 1).max(1)..=max_edges);
    let mut ends: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    while ends.len() < m {
        ends.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    ends.shuffle(rng);
    let mut g = Multigraph::new();
    for v in 0..n {
        g.add_vertex(format!("v{v}")).expect("fresh vertex name");
    }
    for (k, (a, b)) in ends.into_iter().enumerate() {
        let (a, b) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
        g.add_edge(format!("e{k}"), &format!("v{a}"), &format!("v{b}"))
            .expect("endpoints exist");
    }
    g
}

/// Positive rational `p/q` with `1 ≤ p ≤ 9` and `1 ≤ q ≤ 4`.
pub fn positive_rational(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(1..=9), rng.gen_range(1..=4))
}

pub fn resistances(rng: &mut ChaCha8Rng, edges: usize) -> Vec<Rational> {
    (0..edges).map(|_| positive_rational(rng)).collect()
}

/// Proper network on a random connected multigraph (≤ 5 vertices, ≤ 7 edges).
pub fn proper_network(rng: &mut ChaCha8Rng) -> ResistiveNetwork {
    let g = connected_multigraph(rng, 5, 7);
    let mu = resistances(rng, g.edge_count());
    ResistiveNetwork::new(g, mu).expect("positive resistances")
}

/// `e_i − e_j` for two vertices chosen independently; equal choices give
/// the zero divisor.
pub fn dipole(rng: &mut ChaCha8Rng, n: usize) -> Divisor {
    Divisor::dipole_at(n, rng.gen_range(0..n), rng.gen_range(0..n))
}

/// Integer zero-sum divisor with entries drawn from `-bound..=bound`
/// before the last entry balances them.
pub fn zero_sum_divisor(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Divisor {
    let mut values: Vec<i64> = (0..n.saturating_sub(1))
        .map(|_| rng.gen_range(-bound..=bound))
        .collect();
    values.push(-values.iter().sum::<i64>());
    Divisor::from_integers(&values[..n])
}

/// A rational multiple of the unit flow around a random fundamental cycle,
/// or the zero flow when the graph is a tree.
pub fn cycle_flow(rng: &mut ChaCha8Rng, g: &Multigraph) -> EdgeFlow {
    let trees = g.spanning_trees().expect("connected graph");
    let tree = *trees
        .choose(rng)
        .expect("a connected graph has a spanning tree");
    let chords: Vec<usize> = g.all_edges().difference(tree).iter().collect();
    let Some(&chord) = chords.choose(rng) else {
        return EdgeFlow::zero(g.edge_count());
    };
    let cycle = g
        .fundamental_cycle(tree, chord)
        .expect("chord closes a cycle");
    let unit = EdgeFlow::around(g.edge_count(), &cycle);
    let scale = positive_rational(rng);
    let sign = if rng.gen_bool(0.5) { scale } else { -scale };
    EdgeFlow::from_values(unit.values().iter().map(|x| x * &sign).collect())
}

/// Random subset of the edges, each kept with probability one half.
pub fn edge_subset(rng: &mut ChaCha8Rng, edges: usize) -> EdgeSet {
    EdgeSet::from_indices((0..edges).filter(|_| rng.gen_bool(0.5)))
}

/// Labelled graph with at most `max_vertices` vertices, `max_edges`
/// edges, `max_rank` components and exponents up to `max_exponent`.
pub fn labelled_graph(
    rng: &mut ChaCha8Rng,
    max_vertices: usize,
    max_edges: usize,
    max_rank: usize,
    max_exponent: u32,
) -> LabelledGraph {
    let g = connected_multigraph(rng, max_vertices, max_edges);
    let r = rng.gen_range(1..=max_rank);
    let labels = (0..g.edge_count())
        .map(|_| loop {
            let a: Vec<u32> = (0..r).map(|_| rng.gen_range(0..=max_exponent)).collect();
            if a.iter().any(|&x| x > 0) {
                break a;
            }
        })
        .collect();
    let components = (1..=r).map(|i| format!("Z{i}")).collect();
    LabelledGraph::new(g, components, labels).expect("connected graph with nonzero labels")
}

/// Nonzero test vector with entries in `0..=max`.
pub fn test_vector(rng: &mut ChaCha8Rng, r: usize, max: u64) -> TestVector {
    loop {
        let m: Vec<u64> = (0..r).map(|_| rng.gen_range(0..=max)).collect();
        if let Ok(t) = TestVector::new(m) {
            return t;
        }
    }
}

/// Every nonzero vector in `{lo..=max}^r`, in lexicographic order.
pub fn grid(r: usize, lo: u64, max: u64) -> Vec<TestVector> {
    let mut out = Vec::new();
    let mut m = vec![lo; r];
    loop {
        if let Ok(t) = TestVector::new(m.clone()) {
            out.push(t);
        }
        let Some(k) = (0..r).rev().find(|&k| m[k] < max) else {
            return out;
        };
        m[k] += 1;
        for x in &mut m[k + 1..] {
            *x = lo;
        }
    }
}
