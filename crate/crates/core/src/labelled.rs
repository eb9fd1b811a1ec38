//! Labelled dual graphs.
//!
//! Each edge carries a monomial label `z_1^{a_1} ⋯ z_r^{a_r}`, stored as its
//! exponent vector over the `r` named boundary components. Pulling back
//! along a test vector `m` turns a label into the resistance
//! `Σ_i a_i m_i`.

use num::BigInt;

use crate::error::{Error, Result};
use crate::graph::{Contraction, EdgeSet, Multigraph};
use crate::network::ResistiveNetwork;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledGraph {
    graph: Multigraph,
    components: Vec<String>,
    labels: Vec<Vec<u32>>,
    /// Slices may carry the zero label; user-facing graphs may not.
    allows_zero_labels: bool,
}

/// Orders `m_i` of the pulled-back boundary components.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TestVector(Vec<u64>);

impl TestVector {
    pub fn new(m: Vec<u64>) -> Result<Self> {
        if m.iter().all(|&x| x == 0) {
            return Err(Error::ZeroTestVector);
        }
        Ok(TestVector(m))
    }

    /// The `i`-th standard basis vector of length `r`.
    pub fn unit(r: usize, i: usize) -> Self {
        let mut m = vec![0; r];
        m[i] = 1;
        TestVector(m)
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scaled(&self, a: u64) -> Result<Self> {
        let m = self
            .0
            .iter()
            .map(|&x| x.checked_mul(a))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Overflow("test vector scaling".into()))?;
        TestVector::new(m)
    }
}

/// Network at the generic point of one boundary component, with the map
/// from the original vertices to its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericPoint {
    pub network: ResistiveNetwork,
    pub contraction: Contraction,
}

impl LabelledGraph {
    pub fn new(graph: Multigraph, components: Vec<String>, labels: Vec<Vec<u32>>) -> Result<Self> {
        let lg = LabelledGraph {
            graph,
            components,
            labels,
            allows_zero_labels: false,
        };
        lg.validate()?;
        Ok(lg)
    }

    fn validate(&self) -> Result<()> {
        if !self.graph.is_connected() {
            return Err(Error::Disconnected);
        }
        if self.labels.len() != self.graph.edge_count() {
            return Err(Error::DimensionMismatch {
                expected: self.graph.edge_count(),
                actual: self.labels.len(),
            });
        }
        let r = self.components.len();
        for (e, a) in self.graph.edges().iter().zip(&self.labels) {
            if a.len() != r {
                return Err(Error::DimensionMismatch {
                    expected: r,
                    actual: a.len(),
                });
            }
            if !self.allows_zero_labels && a.iter().all(|&x| x == 0) {
                return Err(Error::ZeroLabel(e.id.clone()));
            }
        }
        Ok(())
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn components(&self) -> &[String] {
        &self.components
    }

    /// Number of boundary components `r`.
    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn labels(&self) -> &[Vec<u32>] {
        &self.labels
    }

    pub fn label(&self, edge: usize) -> &[u32] {
        &self.labels[edge]
    }

    pub fn is_slice(&self) -> bool {
        self.allows_zero_labels
    }

    /// `max_{i,c} a_{ic}`.
    pub fn max_exponent(&self) -> u32 {
        self.labels.iter().flatten().copied().max().unwrap_or(0)
    }

    /// `|a_j|₁ = Σ_c a_{jc}` for component `j`.
    pub fn label_mass(&self, j: usize) -> u64 {
        self.labels.iter().map(|a| u64::from(a[j])).sum()
    }

    /// Whether component `i` appears in some label.
    pub fn meets(&self, i: usize) -> bool {
        self.labels.iter().any(|a| a[i] > 0)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.rank() {
            return Err(Error::ComponentOutOfRange {
                index: i,
                count: self.rank(),
            });
        }
        Ok(())
    }

    fn check_test_vector(&self, m: &TestVector) -> Result<()> {
        if m.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                actual: m.len(),
            });
        }
        Ok(())
    }

    /// Resistance of edge `c` is `Σ_i a_{ic} m_i`; zero is possible when
    /// `m` vanishes on the components of a label.
    pub fn pullback(&self, m: &TestVector) -> Result<ResistiveNetwork> {
        self.check_test_vector(m)?;
        let resistance = self
            .labels
            .iter()
            .map(|a| {
                let s: BigInt = a
                    .iter()
                    .zip(m.entries())
                    .map(|(&x, &y)| BigInt::from(x) * BigInt::from(y))
                    .sum();
                Rational::from_integer(s)
            })
            .collect();
        ResistiveNetwork::new(self.graph.clone(), resistance)
    }

    /// Keeps only the exponent of component `i` (zero-based) on every edge.
    pub fn slice(&self, i: usize) -> Result<LabelledGraph> {
        self.check_index(i)?;
        let r = self.rank();
        let labels = self
            .labels
            .iter()
            .map(|a| {
                let mut b = vec![0; r];
                b[i] = a[i];
                b
            })
            .collect();
        Ok(LabelledGraph {
            graph: self.graph.clone(),
            components: self.components.clone(),
            labels,
            allows_zero_labels: true,
        })
    }

    /// The network seen at the generic point of component `i`: edges with
    /// `a_{ic} = 0` are contracted, and the rest get resistance `a_{ic}`.
    /// If component `i` meets no edge, everything contracts to one vertex.
    pub fn generic_point_graph(&self, i: usize) -> Result<GenericPoint> {
        self.check_index(i)?;
        let unit_labels = EdgeSet::from_indices(
            self.labels
                .iter()
                .enumerate()
                .filter(|(_, a)| a[i] == 0)
                .map(|(c, _)| c),
        );
        let contraction = self.graph.contract(unit_labels)?;
        let resistance = contraction
            .edge_origin
            .iter()
            .map(|&c| Rational::from_integer(BigInt::from(self.labels[c][i])))
            .collect();
        let network = ResistiveNetwork::new(contraction.graph.clone(), resistance)?;
        Ok(GenericPoint {
            network,
            contraction,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{green, Divisor};
    use crate::rational::int;

    fn twogon() -> LabelledGraph {
        let g = Multigraph::from_parts(["P", "O"], [("cu", "P", "O"), ("cv", "P", "O")]).unwrap();
        LabelledGraph::new(
            g,
            vec!["Z1".into(), "Z2".into()],
            vec![vec![1, 0], vec![0, 1]],
        )
        .unwrap()
    }

    #[test]
    fn rejects_zero_label_and_disconnected_graph() {
        let g = Multigraph::from_parts(["P", "O"], [("cu", "P", "O")]).unwrap();
        assert_eq!(
            LabelledGraph::new(g, vec!["Z".into()], vec![vec![0]]),
            Err(Error::ZeroLabel("cu".into()))
        );
        let g = Multigraph::from_parts(["P", "O"], Vec::<(&str, &str, &str)>::new()).unwrap();
        assert_eq!(
            LabelledGraph::new(g, vec!["Z".into()], vec![]),
            Err(Error::Disconnected)
        );
    }

    #[test]
    fn test_vector_must_be_nonzero() {
        assert_eq!(TestVector::new(vec![0, 0]), Err(Error::ZeroTestVector));
        assert!(TestVector::new(vec![0, 2]).is_ok());
    }

    #[test]
    fn pullback_examples() {
        let lg = twogon();
        let n = lg.pullback(&TestVector::new(vec![3, 5]).unwrap()).unwrap();
        assert_eq!(n.resistances(), &[int(3), int(5)]);

        let g = Multigraph::from_parts(["a", "b"], [("e", "a", "b")]).unwrap();
        let lg3 = LabelledGraph::new(
            g,
            vec!["X".into(), "Y".into(), "W".into()],
            vec![vec![2, 0, 3]],
        )
        .unwrap();
        let n = lg3
            .pullback(&TestVector::new(vec![1, 1, 1]).unwrap())
            .unwrap();
        assert_eq!(n.resistances(), &[int(5)]);

        let g = Multigraph::from_parts(["a", "b"], [("e", "a", "b")]).unwrap();
        let lg2 = LabelledGraph::new(g, vec!["X".into(), "Y".into()], vec![vec![0, 4]]).unwrap();
        let n = lg2.pullback(&TestVector::unit(2, 0)).unwrap();
        assert_eq!(n.resistances(), &[int(0)]);

        assert!(matches!(
            lg.pullback(&TestVector::new(vec![1]).unwrap()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn slice_examples() {
        let lg = twogon();
        let s = lg.slice(0).unwrap();
        assert_eq!(s.labels(), &[vec![1, 0], vec![0, 0]]);
        assert!(s.is_slice());
        assert_eq!(
            lg.slice(2),
            Err(Error::ComponentOutOfRange { index: 2, count: 2 })
        );

        let g = Multigraph::from_parts(["a", "b"], [("e", "a", "b"), ("f", "a", "b")]).unwrap();
        let single = LabelledGraph::new(g, vec!["Z".into()], vec![vec![2], vec![5]]).unwrap();
        assert_eq!(single.slice(0).unwrap().labels(), single.labels());
    }

    #[test]
    fn generic_point_examples() {
        let lg = twogon();
        let gp = lg.generic_point_graph(0).unwrap();
        assert_eq!(gp.network.graph().vertex_count(), 1);
        assert_eq!(gp.network.graph().edge_count(), 1);
        assert!(gp.network.graph().edges()[0].is_loop());
        assert_eq!(gp.network.resistances(), &[int(1)]);

        let g =
            Multigraph::from_parts(["a", "b", "c"], [("x", "a", "b"), ("y", "b", "c")]).unwrap();
        let lg = LabelledGraph::new(
            g,
            vec!["A".into(), "B".into()],
            vec![vec![1, 0], vec![1, 0]],
        )
        .unwrap();
        let gp = lg.generic_point_graph(0).unwrap();
        assert_eq!(gp.network.graph().vertex_count(), 3);
        assert_eq!(gp.network.resistances(), &[int(1), int(1)]);
        let gp = lg.generic_point_graph(1).unwrap();
        assert_eq!(gp.network.graph().vertex_count(), 1);
        assert_eq!(gp.network.graph().edge_count(), 0);
    }

    #[test]
    fn generic_point_identity_on_a_square() {
        // Square with a diagonal; labels mix two components.
        let g = Multigraph::from_parts(
            ["a", "b", "c", "d"],
            [
                ("p", "a", "b"),
                ("q", "b", "c"),
                ("r", "c", "d"),
                ("s", "d", "a"),
                ("t", "a", "c"),
            ],
        )
        .unwrap();
        let lg = LabelledGraph::new(
            g,
            vec!["A".into(), "B".into()],
            vec![vec![1, 0], vec![2, 1], vec![0, 3], vec![1, 1], vec![0, 2]],
        )
        .unwrap();
        let d = Divisor::from_integers(&[1, 0, -1, 0]);
        let e = Divisor::from_integers(&[0, 2, 0, -2]);
        let m = TestVector::new(vec![3, 2]).unwrap();
        for i in 0..2 {
            let gp = lg.generic_point_graph(i).unwrap();
            let k = gp.network.graph().vertex_count();
            let dd = d.push_forward(&gp.contraction.class_of, k);
            let ee = e.push_forward(&gp.contraction.class_of, k);
            let lhs = int(m.entries()[i] as i64) * green(&gp.network, &dd, &ee).unwrap();
            let rhs = green(&lg.slice(i).unwrap().pullback(&m).unwrap(), &d, &e).unwrap();
            assert_eq!(lhs, rhs, "component {i}");
        }
        assert!(lg.pullback(&m).unwrap().is_proper());
    }
}
