//! Resistive networks and their Green's function.
//!
//! The Laplacian pseudoinverse is never formed. `L v = d` is solved with
//! one vertex pinned to zero voltage and the solution shifted to sum zero.
//! Networks with zero-resistance edges are evaluated on the quotient that
//! contracts those edges, which is the continuous extension of the proper
//! case.

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{Contraction, EdgeSet, Multigraph};
use crate::linalg;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResistiveNetwork {
    graph: Multigraph,
    resistance: Vec<Rational>,
}

/// Vertex-indexed values, positional with respect to a graph's vertex
/// order. Combinatorial divisors are integer-valued, but rational entries
/// are allowed so that the Green's function is bilinear over `Q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Divisor(Vec<Rational>);

/// Voltages normalized to sum zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoltageAssignment(Vec<Rational>);

/// Current along each edge, measured from `ends[0]` to `ends[1]`. The
/// reverse orientation carries the negated value, so antisymmetry holds by
/// construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeFlow(Vec<Rational>);

impl Divisor {
    pub fn zero(n: usize) -> Self {
        Divisor(vec![Rational::zero(); n])
    }

    pub fn from_values(values: Vec<Rational>) -> Self {
        Divisor(values)
    }

    pub fn from_integers(values: &[i64]) -> Self {
        Divisor(values.iter().map(|&v| rational::int(v)).collect())
    }

    /// `e_i - e_j`.
    pub fn dipole_at(n: usize, i: usize, j: usize) -> Self {
        let mut d = Divisor::zero(n);
        d.0[i] += rational::int(1);
        d.0[j] -= rational::int(1);
        d
    }

    pub fn dipole(g: &Multigraph, i: &str, j: &str) -> Result<Self> {
        Ok(Self::dipole_at(
            g.vertex_count(),
            g.vertex(i)?,
            g.vertex(j)?,
        ))
    }

    /// Builds a divisor from named entries; unnamed vertices get zero.
    pub fn from_named<'a>(
        g: &Multigraph,
        entries: impl IntoIterator<Item = (&'a str, Rational)>,
    ) -> Result<Self> {
        let mut d = Divisor::zero(g.vertex_count());
        for (v, x) in entries {
            d.0[g.vertex(v)?] += x;
        }
        Ok(d)
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> Rational {
        self.0.iter().sum()
    }

    pub fn is_zero_sum(&self) -> bool {
        self.total().is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Total inflow, the sum of the positive parts.
    pub fn norm(&self) -> Rational {
        self.0.iter().map(rational::positive_part).sum()
    }

    pub fn dot(&self, v: &[Rational]) -> Rational {
        self.0.iter().zip(v).map(|(a, b)| a * b).sum()
    }

    pub fn scaled(&self, a: &Rational) -> Self {
        Divisor(self.0.iter().map(|x| x * a).collect())
    }

    pub fn plus(&self, other: &Divisor) -> Self {
        Divisor(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Pushes the divisor through a vertex class map by summing each class.
    pub fn push_forward(&self, class_of: &[usize], classes: usize) -> Self {
        let mut out = Divisor::zero(classes);
        for (x, &c) in self.0.iter().zip(class_of) {
            out.0[c] += x;
        }
        out
    }

    fn check(&self, n: usize) -> Result<()> {
        if self.0.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: self.0.len(),
            });
        }
        if !self.is_zero_sum() {
            return Err(Error::NotZeroSum(rational::format(&self.total())));
        }
        Ok(())
    }
}

impl VoltageAssignment {
    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn at(&self, v: usize) -> &Rational {
        &self.0[v]
    }
}

impl EdgeFlow {
    pub fn zero(edges: usize) -> Self {
        EdgeFlow(vec![Rational::zero(); edges])
    }

    pub fn from_values(values: Vec<Rational>) -> Self {
        EdgeFlow(values)
    }

    /// Unit flow around an oriented closed walk given as
    /// `(edge, along ends[0] → ends[1])` steps.
    pub fn around(edges: usize, cycle: &[(usize, bool)]) -> Self {
        let mut f = EdgeFlow::zero(edges);
        for &(e, forward) in cycle {
            if forward {
                f.0[e] += rational::int(1);
            } else {
                f.0[e] -= rational::int(1);
            }
        }
        f
    }

    /// Current on each edge in its stored orientation.
    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    /// Current along edge `e` oriented `from → to`.
    pub fn along(&self, g: &Multigraph, e: usize, from: usize, to: usize) -> Result<Rational> {
        let edge = g.edge_at(e);
        if edge.ends == [from, to] {
            Ok(self.0[e].clone())
        } else if edge.ends == [to, from] {
            Ok(-self.0[e].clone())
        } else {
            Err(Error::WrongOrientation(edge.id.clone()))
        }
    }

    /// Net current leaving each vertex. Loops leave and re-enter the same
    /// vertex and so contribute nothing.
    pub fn net_outflow(&self, g: &Multigraph) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); g.vertex_count()];
        for (e, i) in g.edges().iter().zip(&self.0) {
            out[e.ends[0]] += i;
            out[e.ends[1]] -= i;
        }
        out
    }

    pub fn plus(&self, other: &EdgeFlow) -> Self {
        EdgeFlow(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl ResistiveNetwork {
    pub fn new(graph: Multigraph, resistance: Vec<Rational>) -> Result<Self> {
        if resistance.len() != graph.edge_count() {
            return Err(Error::DimensionMismatch {
                expected: graph.edge_count(),
                actual: resistance.len(),
            });
        }
        if let Some(i) = resistance.iter().position(Signed::is_negative) {
            return Err(Error::NegativeResistance(graph.edge_at(i).id.clone()));
        }
        Ok(ResistiveNetwork { graph, resistance })
    }

    /// Every edge gets resistance one.
    pub fn unit(graph: Multigraph) -> Self {
        let resistance = vec![rational::int(1); graph.edge_count()];
        ResistiveNetwork { graph, resistance }
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn resistances(&self) -> &[Rational] {
        &self.resistance
    }

    pub fn resistance(&self, e: usize) -> &Rational {
        &self.resistance[e]
    }

    pub fn resistance_of(&self, id: &str) -> Result<&Rational> {
        Ok(&self.resistance[self.graph.edge(id)?])
    }

    pub fn is_proper(&self) -> bool {
        self.resistance.iter().all(Signed::is_positive)
    }

    pub fn zero_edges(&self) -> EdgeSet {
        EdgeSet::from_indices(
            self.resistance
                .iter()
                .enumerate()
                .filter(|(_, r)| r.is_zero())
                .map(|(i, _)| i),
        )
    }

    /// `|μ|₁`.
    pub fn total_resistance(&self) -> Rational {
        self.resistance.iter().sum()
    }

    pub fn with_resistances(&self, resistance: Vec<Rational>) -> Result<Self> {
        ResistiveNetwork::new(self.graph.clone(), resistance)
    }

    pub fn scaled(&self, a: &Rational) -> Result<Self> {
        self.with_resistances(self.resistance.iter().map(|r| r * a).collect())
    }

    /// Edgewise sum of resistances on the same graph.
    pub fn plus(&self, other: &ResistiveNetwork) -> Result<Self> {
        if other.resistance.len() != self.resistance.len() {
            return Err(Error::DimensionMismatch {
                expected: self.resistance.len(),
                actual: other.resistance.len(),
            });
        }
        self.with_resistances(
            self.resistance
                .iter()
                .zip(&other.resistance)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Contracts all zero-resistance edges (deleting zero loops) and
    /// restricts the resistances, giving a proper network on the quotient.
    pub fn proper_quotient(&self) -> Result<(ResistiveNetwork, Contraction)> {
        self.contract_edges(self.zero_edges())
    }

    /// Contracts `s`, carrying the resistances of the surviving edges.
    pub fn contract_edges(&self, s: EdgeSet) -> Result<(ResistiveNetwork, Contraction)> {
        let c = self.graph.contract(s)?;
        let resistance = c
            .edge_origin
            .iter()
            .map(|&i| self.resistance[i].clone())
            .collect();
        let net = ResistiveNetwork {
            graph: c.graph.clone(),
            resistance,
        };
        Ok((net, c))
    }

    fn require_proper(&self) -> Result<()> {
        match self.resistance.iter().position(Zero::is_zero) {
            Some(i) => Err(Error::ImproperNetwork(self.graph.edge_at(i).id.clone())),
            None => Ok(()),
        }
    }

    fn require_connected(&self) -> Result<()> {
        if self.graph.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }
}

/// Weighted Laplacian, `(Lv)_i = Σ_{e: i→j} (v_i − v_j)/μ(e)`.
pub fn laplacian(n: &ResistiveNetwork) -> Result<Vec<Vec<Rational>>> {
    n.require_proper()?;
    let size = n.graph.vertex_count();
    let mut l = vec![vec![Rational::zero(); size]; size];
    for (e, r) in n.graph.edges().iter().zip(&n.resistance) {
        if e.is_loop() {
            continue;
        }
        let g = r.recip();
        let [a, b] = e.ends;
        l[a][a] += &g;
        l[b][b] += &g;
        l[a][b] -= &g;
        l[b][a] -= &g;
    }
    Ok(l)
}

/// `L⁺ d` for a proper connected network and zero-sum `d`.
pub fn solve_voltages(n: &ResistiveNetwork, d: &Divisor) -> Result<VoltageAssignment> {
    n.require_proper()?;
    n.require_connected()?;
    let size = n.graph.vertex_count();
    d.check(size)?;
    if size <= 1 || d.is_zero() {
        return Ok(VoltageAssignment(vec![Rational::zero(); size]));
    }
    let l = laplacian(n)?;
    // Pin the first vertex to zero and drop its row and column.
    let reduced: Vec<Vec<Rational>> = l[1..].iter().map(|row| row[1..].to_vec()).collect();
    let rhs = &d.values()[1..];
    let tail = linalg::solve(&reduced, rhs)
        .expect("reduced Laplacian of a connected proper network is nonsingular");
    let mut v = Vec::with_capacity(size);
    v.push(Rational::zero());
    v.extend(tail);
    let mean = v.iter().sum::<Rational>() / rational::int(size as i64);
    for x in &mut v {
        *x -= &mean;
    }
    Ok(VoltageAssignment(v))
}

/// `g(Γ, μ; d, e) = dᵀ L⁺ e`, extended to improper networks by contracting
/// the zero-resistance edges.
pub fn green(n: &ResistiveNetwork, d: &Divisor, e: &Divisor) -> Result<Rational> {
    n.require_connected()?;
    let size = n.graph.vertex_count();
    d.check(size)?;
    e.check(size)?;
    if n.is_proper() {
        return green_proper(n, d, e);
    }
    let (quotient, c) = n.proper_quotient()?;
    let k = quotient.graph.vertex_count();
    green_proper(
        &quotient,
        &d.push_forward(&c.class_of, k),
        &e.push_forward(&c.class_of, k),
    )
}

fn green_proper(n: &ResistiveNetwork, d: &Divisor, e: &Divisor) -> Result<Rational> {
    if n.graph.vertex_count() <= 1 || d.is_zero() || e.is_zero() {
        return Ok(Rational::zero());
    }
    let v = solve_voltages(n, e)?;
    Ok(d.dot(v.values()))
}

/// Effective resistance between two vertices, `g(e_i − e_j, e_i − e_j)`.
pub fn effective_resistance(n: &ResistiveNetwork, i: &str, j: &str) -> Result<Rational> {
    let d = Divisor::dipole(&n.graph, i, j)?;
    green(n, &d, &d)
}

/// Ohm's-law currents `(v_i − v_j)/μ(e)` for the voltages induced by `d`.
pub fn edge_currents(n: &ResistiveNetwork, d: &Divisor) -> Result<EdgeFlow> {
    let v = solve_voltages(n, d)?;
    Ok(EdgeFlow(
        n.graph
            .edges()
            .iter()
            .zip(&n.resistance)
            .map(|(e, r)| (v.at(e.ends[0]) - v.at(e.ends[1])) / r)
            .collect(),
    ))
}

/// Power dissipated, `Σ_e μ(e) I(e)²`.
pub fn power(n: &ResistiveNetwork, f: &EdgeFlow) -> Result<Rational> {
    if f.0.len() != n.resistance.len() {
        return Err(Error::DimensionMismatch {
            expected: n.resistance.len(),
            actual: f.0.len(),
        });
    }
    Ok(n.resistance.iter().zip(&f.0).map(|(r, i)| r * i * i).sum())
}

/// `Σ_e μ(e) I(e) c(e)`, the power cross term between two flows.
pub fn power_pairing(n: &ResistiveNetwork, f: &EdgeFlow, c: &EdgeFlow) -> Rational {
    n.resistance
        .iter()
        .zip(f.0.iter().zip(&c.0))
        .map(|(r, (a, b))| r * a * b)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn net(vs: &[&str], es: &[(&str, &str, &str)], rs: &[Rational]) -> ResistiveNetwork {
        let g = Multigraph::from_parts(vs.iter().copied(), es.iter().copied()).unwrap();
        ResistiveNetwork::new(g, rs.to_vec()).unwrap()
    }

    fn twogon(m: Rational, n: Rational) -> ResistiveNetwork {
        net(&["P", "O"], &[("cu", "P", "O"), ("cv", "P", "O")], &[m, n])
    }

    fn triangle_unit() -> ResistiveNetwork {
        net(
            &["1", "2", "3"],
            &[("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3")],
            &[int(1), int(1), int(1)],
        )
    }

    #[test]
    fn laplacian_single_edge() {
        let n = net(&["a", "b"], &[("e", "a", "b")], &[int(4)]);
        let l = laplacian(&n).unwrap();
        assert_eq!(
            l,
            vec![
                vec![ratio(1, 4), ratio(-1, 4)],
                vec![ratio(-1, 4), ratio(1, 4)]
            ]
        );
    }

    #[test]
    fn laplacian_parallel_conductances_add() {
        let l = laplacian(&twogon(int(2), int(3))).unwrap();
        assert_eq!(l[0][1], -(ratio(1, 2) + ratio(1, 3)));
        assert_eq!(l[0][0], ratio(5, 6));
    }

    #[test]
    fn laplacian_ignores_loops() {
        let n = net(&["a"], &[("l", "a", "a")], &[int(5)]);
        assert_eq!(laplacian(&n).unwrap(), vec![vec![int(0)]]);
    }

    #[test]
    fn laplacian_rejects_zero_resistance() {
        assert_eq!(
            laplacian(&twogon(int(1), int(0))),
            Err(Error::ImproperNetwork("cv".into()))
        );
    }

    #[test]
    fn negative_resistance_rejected() {
        let g = Multigraph::from_parts(["a", "b"], [("e", "a", "b")]).unwrap();
        assert_eq!(
            ResistiveNetwork::new(g, vec![int(-1)]),
            Err(Error::NegativeResistance("e".into()))
        );
    }

    #[test]
    fn voltages_examples() {
        let n = net(&["a", "b"], &[("e", "a", "b")], &[int(3)]);
        let v = solve_voltages(&n, &Divisor::from_integers(&[1, -1])).unwrap();
        assert_eq!(v.values(), &[ratio(3, 2), ratio(-3, 2)]);
        let z = solve_voltages(&n, &Divisor::zero(2)).unwrap();
        assert!(z.values().iter().all(Zero::is_zero));

        // Hand solve: with v = (x, y, z), zero sum, Lv = (1, -1, 0):
        // 2x - y - z = 1, 2y - x - z = -1, x + y + z = 0 gives
        // 3x = 1, 3y = -1, z = 0.
        let v = solve_voltages(&triangle_unit(), &Divisor::from_integers(&[1, -1, 0])).unwrap();
        assert_eq!(v.values(), &[ratio(1, 3), ratio(-1, 3), int(0)]);
    }

    #[test]
    fn voltages_errors() {
        let n = triangle_unit();
        assert_eq!(
            solve_voltages(&n, &Divisor::from_integers(&[1, 0, 0])),
            Err(Error::NotZeroSum("1".into()))
        );
        let split = net(&["a", "b"], &[("l", "a", "a")], &[int(1)]);
        assert_eq!(
            solve_voltages(&split, &Divisor::from_integers(&[1, -1])),
            Err(Error::Disconnected)
        );
        assert!(matches!(
            solve_voltages(&twogon(int(0), int(1)), &Divisor::from_integers(&[1, -1])),
            Err(Error::ImproperNetwork(_))
        ));
        assert!(matches!(
            solve_voltages(&n, &Divisor::from_integers(&[1, -1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn green_twogon_is_parallel_resistance() {
        for (m, n) in [(1, 1), (3, 5), (2, 7)] {
            let d = Divisor::from_integers(&[1, -1]);
            let g = green(&twogon(int(m), int(n)), &d, &d).unwrap();
            assert_eq!(g, ratio(m * n, m + n));
        }
    }

    #[test]
    fn green_improper_twogon_vanishes() {
        let d = Divisor::from_integers(&[1, -1]);
        assert_eq!(green(&twogon(int(4), int(0)), &d, &d).unwrap(), int(0));
    }

    #[test]
    fn green_triangle_forest_value() {
        // r_a (r_b + r_c) / (r_a + r_b + r_c) = 1 * 2 / 3
        let d = Divisor::from_integers(&[1, -1, 0]);
        assert_eq!(green(&triangle_unit(), &d, &d).unwrap(), ratio(2, 3));
    }

    #[test]
    fn green_zero_divisor() {
        let d = Divisor::from_integers(&[1, -1, 0]);
        assert_eq!(
            green(&triangle_unit(), &Divisor::zero(3), &d).unwrap(),
            int(0)
        );
    }

    #[test]
    fn green_single_vertex_only_loops() {
        let n = net(
            &["a"],
            &[("l", "a", "a"), ("k", "a", "a")],
            &[int(0), int(2)],
        );
        assert_eq!(
            green(&n, &Divisor::zero(1), &Divisor::zero(1)).unwrap(),
            int(0)
        );
    }

    #[test]
    fn green_zero_loop_is_deleted() {
        let n = net(
            &["P", "O"],
            &[("cu", "P", "O"), ("cv", "P", "O"), ("l", "P", "P")],
            &[int(3), int(5), int(0)],
        );
        let d = Divisor::from_integers(&[1, -1]);
        assert_eq!(green(&n, &d, &d).unwrap(), ratio(15, 8));
    }

    #[test]
    fn effective_resistance_examples() {
        let path = net(
            &["a", "b", "c"],
            &[("x", "a", "b"), ("y", "b", "c")],
            &[ratio(1, 2), int(3)],
        );
        assert_eq!(effective_resistance(&path, "a", "c").unwrap(), ratio(7, 2));
        assert_eq!(effective_resistance(&path, "b", "b").unwrap(), int(0));
        assert_eq!(
            effective_resistance(&twogon(int(3), int(5)), "P", "O").unwrap(),
            ratio(15, 8)
        );
        assert_eq!(
            effective_resistance(&path, "a", "zz"),
            Err(Error::UnknownVertex("zz".into()))
        );
    }

    #[test]
    fn currents_examples() {
        let single = net(&["a", "b"], &[("e", "a", "b")], &[int(7)]);
        let d = Divisor::from_integers(&[1, -1]);
        let i = edge_currents(&single, &d).unwrap();
        assert_eq!(i.along(single.graph(), 0, 0, 1).unwrap(), int(1));
        assert_eq!(i.along(single.graph(), 0, 1, 0).unwrap(), int(-1));

        let t = twogon(int(3), int(5));
        let i = edge_currents(&t, &d).unwrap();
        assert_eq!(i.values(), &[ratio(5, 8), ratio(3, 8)]);

        let z = edge_currents(&t, &Divisor::zero(2)).unwrap();
        assert!(z.values().iter().all(Zero::is_zero));
    }

    #[test]
    fn currents_satisfy_vertex_totals() {
        let n = net(
            &["a", "b", "c", "d"],
            &[
                ("p", "a", "b"),
                ("q", "b", "c"),
                ("r", "c", "d"),
                ("s", "d", "a"),
                ("t", "a", "c"),
                ("u", "b", "b"),
            ],
            &[int(1), ratio(1, 2), int(3), int(2), ratio(5, 3), int(4)],
        );
        let d = Divisor::from_integers(&[2, -1, 3, -4]);
        let i = edge_currents(&n, &d).unwrap();
        assert_eq!(i.net_outflow(n.graph()), d.values());
        assert_eq!(power(&n, &i).unwrap(), green(&n, &d, &d).unwrap());
    }

    #[test]
    fn power_examples() {
        let single = net(&["a", "b"], &[("e", "a", "b")], &[int(7)]);
        assert_eq!(power(&single, &EdgeFlow::zero(1)).unwrap(), int(0));
        assert_eq!(
            power(&single, &EdgeFlow::from_values(vec![int(1)])).unwrap(),
            int(7)
        );
    }

    #[test]
    fn wrong_orientation_is_an_error() {
        let t = triangle_unit();
        let f = EdgeFlow::zero(3);
        assert!(f.along(t.graph(), 0, 0, 2).is_err());
    }

    #[test]
    fn proper_quotient_contracts_zero_edges() {
        let n = net(
            &["a", "b", "c"],
            &[("x", "a", "b"), ("y", "b", "c"), ("z", "a", "c")],
            &[int(0), int(2), int(3)],
        );
        let (q, c) = n.proper_quotient().unwrap();
        assert_eq!(q.graph().vertex_count(), 2);
        assert_eq!(q.resistances(), &[int(2), int(3)]);
        assert_eq!(c.class_of, vec![0, 0, 1]);
        assert!(q.is_proper());
    }
}
