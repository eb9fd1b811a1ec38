//! Green's function by spanning-tree and 2-forest enumeration.
//!
//! This is deliberately independent of the linear-algebra path in
//! [`crate::network`]: no Laplacian, no elimination, only sums of resistance
//! products over enumerated forests. It is exponential and intended as an
//! oracle on small graphs.
//!
//! For a proper connected network,
//!
//! ```text
//! g(e_i − e_j, e_k − e_l) = Σ_{F ∈ 2-forests} π(i,j;k,l|F) μ(E∖F)
//!                           ───────────────────────────────────────
//!                                Σ_{T ∈ trees} μ(E∖T)
//! ```
//!
//! where `μ(S)` is the product of the resistances in `S`.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Multigraph};
use crate::network::{Divisor, ResistiveNetwork};
use crate::rational::Rational;

/// How a 2-forest separates the pairs `(i, j)` and `(k, l)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PiSign {
    Minus,
    Zero,
    Plus,
}

impl PiSign {
    pub fn value(self) -> i8 {
        match self {
            PiSign::Minus => -1,
            PiSign::Zero => 0,
            PiSign::Plus => 1,
        }
    }
}

/// Sign computed from per-vertex component labels of a 2-forest.
pub(crate) fn pi_from_labels(labels: &[usize], i: usize, j: usize, k: usize, l: usize) -> PiSign {
    if labels[i] == labels[j] || labels[k] == labels[l] {
        PiSign::Zero
    } else if labels[i] == labels[k] {
        PiSign::Plus
    } else {
        PiSign::Minus
    }
}

/// `π(i,j;k,l|F)` for a 2-forest `f`.
pub fn pi_sign(g: &Multigraph, f: EdgeSet, i: &str, j: &str, k: &str, l: &str) -> Result<PiSign> {
    if !g.is_n_forest(f, 2) {
        return Err(Error::NotTwoForest);
    }
    let (labels, _) = g.component_labels(f);
    Ok(pi_from_labels(
        &labels,
        g.vertex(i)?,
        g.vertex(j)?,
        g.vertex(k)?,
        g.vertex(l)?,
    ))
}

/// Product of resistances over the edges not in `kept`; empty product is 1.
fn complement_weight(n: &ResistiveNetwork, kept: EdgeSet) -> Rational {
    n.graph()
        .all_edges()
        .difference(kept)
        .iter()
        .fold(Rational::one(), |acc, e| acc * n.resistance(e))
}

/// Drops zero-resistance loops and rejects any other zero resistance.
fn oracle_domain(n: &ResistiveNetwork) -> Result<ResistiveNetwork> {
    let g = n.graph();
    let zero_loops = n.zero_edges().intersection(g.loops());
    let n = if zero_loops.is_empty() {
        n.clone()
    } else {
        n.contract_edges(zero_loops)?.0
    };
    if let Some(e) = n.zero_edges().iter().next() {
        return Err(Error::ImproperNetwork(n.graph().edge_at(e).id.clone()));
    }
    if !n.graph().is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(n)
}

/// `Σ_T μ(E∖T)` over spanning trees.
pub fn tree_weight_sum(n: &ResistiveNetwork) -> Result<Rational> {
    Ok(n.graph()
        .spanning_trees()?
        .into_iter()
        .map(|t| complement_weight(n, t))
        .sum())
}

fn forest_formula_idx(
    n: &ResistiveNetwork,
    i: usize,
    j: usize,
    k: usize,
    l: usize,
) -> Result<Rational> {
    let g = n.graph();
    if i == j || k == l {
        return Ok(Rational::zero());
    }
    let denominator = tree_weight_sum(n)?;
    if denominator.is_zero() {
        return Err(Error::ImproperNetwork("zero tree weight".into()));
    }
    let mut numerator = Rational::zero();
    for f in g.n_forests(2)? {
        let (labels, _) = g.component_labels(f);
        match pi_from_labels(&labels, i, j, k, l) {
            PiSign::Zero => {}
            PiSign::Plus => numerator += complement_weight(n, f),
            PiSign::Minus => numerator -= complement_weight(n, f),
        }
    }
    Ok(numerator / denominator)
}

/// `g(e_i − e_j, e_k − e_l)` by the forest formula.
pub fn green_forest_formula(
    n: &ResistiveNetwork,
    i: &str,
    j: &str,
    k: &str,
    l: &str,
) -> Result<Rational> {
    let g = n.graph();
    let (i, j, k, l) = (g.vertex(i)?, g.vertex(j)?, g.vertex(k)?, g.vertex(l)?);
    // Deleting loops keeps vertex indices unchanged.
    let n = oracle_domain(n)?;
    forest_formula_idx(&n, i, j, k, l)
}

/// Forest-formula Green's function for arbitrary zero-sum divisors,
/// expanded by bilinearity over dipoles `e_v − e_0`.
pub fn green_forest_divisors(n: &ResistiveNetwork, d: &Divisor, e: &Divisor) -> Result<Rational> {
    let size = n.graph().vertex_count();
    for x in [d, e] {
        if x.len() != size {
            return Err(Error::DimensionMismatch {
                expected: size,
                actual: x.len(),
            });
        }
        if !x.is_zero_sum() {
            return Err(Error::NotZeroSum(crate::rational::format(&x.total())));
        }
    }
    let n = oracle_domain(n)?;
    let mut total = Rational::zero();
    for (a, da) in d.values().iter().enumerate().skip(1) {
        if da.is_zero() {
            continue;
        }
        for (b, eb) in e.values().iter().enumerate().skip(1) {
            if eb.is_zero() {
                continue;
            }
            total += da * eb * forest_formula_idx(&n, a, 0, b, 0)?;
        }
    }
    Ok(total)
}

/// Current along `edge` oriented `from → to` when a unit current enters at
/// `k` and leaves at `l` in the tree `Γ|_t`.
pub fn tree_current(
    g: &Multigraph,
    t: EdgeSet,
    k: &str,
    l: &str,
    edge: &str,
    from: &str,
    to: &str,
) -> Result<i8> {
    if !g.is_spanning_tree(t) {
        return Err(Error::NotSpanningTree);
    }
    let (k, l) = (g.vertex(k)?, g.vertex(l)?);
    let (e, from, to) = (g.edge(edge)?, g.vertex(from)?, g.vertex(to)?);
    tree_current_idx(g, t, k, l, e, from, to)
}

fn tree_current_idx(
    g: &Multigraph,
    t: EdgeSet,
    k: usize,
    l: usize,
    e: usize,
    from: usize,
    to: usize,
) -> Result<i8> {
    let edge = g.edge_at(e);
    let stored = if edge.ends == [from, to] {
        1
    } else if edge.ends == [to, from] {
        -1
    } else {
        return Err(Error::WrongOrientation(edge.id.clone()));
    };
    if edge.is_loop() {
        return Ok(0);
    }
    let path = g
        .path_within(t, k, l)
        .expect("spanning tree connects every pair");
    Ok(path
        .iter()
        .find(|&&(pe, _)| pe == e)
        .map_or(0, |&(_, forward)| if forward { stored } else { -stored }))
}

/// Tree-weighted average of tree currents,
/// `Σ_T μ(E∖T) I_T(e) / Σ_T μ(E∖T)`.
pub fn averaged_current(
    n: &ResistiveNetwork,
    k: &str,
    l: &str,
    edge: &str,
    from: &str,
    to: &str,
) -> Result<Rational> {
    let g = n.graph();
    let (k, l) = (g.vertex(k)?, g.vertex(l)?);
    let (e, from, to) = (g.edge(edge)?, g.vertex(from)?, g.vertex(to)?);
    averaged_current_idx(n, k, l, e, from, to)
}

pub(crate) fn averaged_current_idx(
    n: &ResistiveNetwork,
    k: usize,
    l: usize,
    e: usize,
    from: usize,
    to: usize,
) -> Result<Rational> {
    if !n.is_proper() {
        let z = n.zero_edges().iter().next().unwrap_or(0);
        return Err(Error::ImproperNetwork(n.graph().edge_at(z).id.clone()));
    }
    let g = n.graph();
    let mut numerator = Rational::zero();
    let mut denominator = Rational::zero();
    for t in g.spanning_trees()? {
        let w = complement_weight(n, t);
        match tree_current_idx(g, t, k, l, e, from, to)? {
            1 => numerator += &w,
            -1 => numerator -= &w,
            _ => {}
        }
        denominator += w;
    }
    Ok(numerator / denominator)
}
