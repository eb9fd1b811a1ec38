//! The height jump of a labelled graph along a test vector.
//!
//! For labels `a_c ∈ Z_{≥0}^r` and a test vector `m`, the jump is
//!
//! ```text
//! J(m) = g(Γ, Σ_i a_i m_i; D, E) − Σ_i g(Γ, a_i m_i; D, E)
//! ```
//!
//! where the `i`-th slice term keeps only component `i` of every label.
//! `J` is the restriction to integer points of a rational function `Φ`
//! that is homogeneous of weight one and vanishes on the unit vectors.

use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::labelled::{LabelledGraph, TestVector};
use crate::network::{green, Divisor};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JumpResult {
    pub value: Rational,
    /// Green's function of the full pullback.
    pub full_term: Rational,
    /// Green's function of each slice pullback, in component order.
    pub slice_terms: Vec<Rational>,
}

/// `Φ` for a fixed labelled graph and pair of divisors, kept as an
/// evaluator rather than as an expanded fraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiFunction {
    pub graph: LabelledGraph,
    pub d: Divisor,
    pub e: Divisor,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JumpBound {
    /// `‖D‖·‖E‖`.
    pub c_prime: Rational,
    /// `max_{i,c} a_{ic}`.
    pub a_max: u32,
    /// Number of boundary components.
    pub rank: usize,
    /// `c′ (r − 1) a_max`.
    pub c: Rational,
    /// `|a_j|₁` per component.
    pub label_mass: Vec<u64>,
}

impl JumpBound {
    /// `c′ · min_i Σ_{j≠i} m_j |a_j|₁`, the bound obtained by applying the
    /// nonlinearity estimate to the summands `μ_j = m_j a_j`.
    pub fn weighted_limit(&self, m: &TestVector) -> Rational {
        let terms: Vec<u64> = m
            .entries()
            .iter()
            .zip(&self.label_mass)
            .map(|(&mj, &aj)| mj * aj)
            .collect();
        &self.c_prime * Rational::from_integer(BigInt::from(min_leave_one_out(&terms)))
    }

    /// `c · min_i Σ_{j≠i} m_j`.
    pub fn uniform_limit(&self, m: &TestVector) -> Rational {
        &self.c * Rational::from_integer(BigInt::from(min_leave_one_out(m.entries())))
    }
}

/// `min_i Σ_{j≠i} x_j`, which is zero for fewer than two entries.
fn min_leave_one_out(x: &[u64]) -> u64 {
    let total: u64 = x.iter().sum();
    x.iter().map(|&xi| total - xi).min().unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Effectivity {
    pub holds: bool,
    pub value: Rational,
}

/// The jump together with its full and slice terms.
pub fn height_jump(
    lg: &LabelledGraph,
    d: &Divisor,
    e: &Divisor,
    m: &TestVector,
) -> Result<JumpResult> {
    if m.entries().iter().all(|&x| x == 0) {
        return Err(Error::ZeroTestVector);
    }
    let full_term = green(&lg.pullback(m)?, d, e)?;
    let slice_terms = (0..lg.rank())
        .map(|i| green(&lg.slice(i)?.pullback(m)?, d, e))
        .collect::<Result<Vec<_>>>()?;
    let value = slice_terms.iter().fold(full_term.clone(), |acc, s| acc - s);
    Ok(JumpResult {
        value,
        full_term,
        slice_terms,
    })
}

impl PhiFunction {
    pub fn new(graph: LabelledGraph, d: Divisor, e: Divisor) -> Self {
        PhiFunction { graph, d, e }
    }

    pub fn evaluate(&self, m: &[Rational]) -> Result<Rational> {
        phi_evaluate(self, m)
    }
}

/// `Φ(m)` for nonnegative rational `m`, by clearing denominators and
/// dividing back out using homogeneity.
pub fn phi_evaluate(phi: &PhiFunction, m: &[Rational]) -> Result<Rational> {
    let r = phi.graph.rank();
    if m.len() != r {
        return Err(Error::DimensionMismatch {
            expected: r,
            actual: m.len(),
        });
    }
    if m.iter().any(Signed::is_negative) {
        return Err(Error::NegativeTestVector);
    }
    if m.iter().all(Zero::is_zero) {
        return Err(Error::ZeroTestVector);
    }
    let scale = m.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints = m
        .iter()
        .map(|q| {
            (q * Rational::from_integer(scale.clone()))
                .to_integer()
                .to_u64()
                .ok_or_else(|| Error::Overflow("test vector entry exceeds u64".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let jump = height_jump(&phi.graph, &phi.d, &phi.e, &TestVector::new(ints)?)?;
    Ok(jump.value / Rational::from_integer(scale))
}

/// Coefficient of the closed point in the admissible pairing: the Green's
/// function of the full pullback.
pub fn admissible_multiplicity(
    lg: &LabelledGraph,
    d: &Divisor,
    e: &Divisor,
    m: &TestVector,
) -> Result<Rational> {
    if m.entries().iter().all(|&x| x == 0) {
        return Err(Error::ZeroTestVector);
    }
    green(&lg.pullback(m)?, d, e)
}

pub fn jump_bound(lg: &LabelledGraph, d: &Divisor, e: &Divisor) -> Result<JumpBound> {
    for x in [d, e] {
        if x.len() != lg.graph().vertex_count() {
            return Err(Error::DimensionMismatch {
                expected: lg.graph().vertex_count(),
                actual: x.len(),
            });
        }
        if !x.is_zero_sum() {
            return Err(Error::NotZeroSum(crate::rational::format(&x.total())));
        }
    }
    let c_prime = d.norm() * e.norm();
    let a_max = lg.max_exponent();
    let rank = lg.rank();
    let c = &c_prime
        * Rational::from_integer(BigInt::from(rank.saturating_sub(1)))
        * Rational::from_integer(BigInt::from(a_max));
    Ok(JumpBound {
        c_prime,
        a_max,
        rank,
        c,
        label_mass: (0..rank).map(|j| lg.label_mass(j)).collect(),
    })
}

/// `J(f; D, D) ≥ 0`. A negative value is reported, not raised.
pub fn check_effectivity(lg: &LabelledGraph, d: &Divisor, m: &TestVector) -> Result<Effectivity> {
    let value = height_jump(lg, d, d, m)?.value;
    Ok(Effectivity {
        holds: !value.is_negative(),
        value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Multigraph;
    use crate::rational::{int, ratio};

    fn twogon() -> LabelledGraph {
        let g = Multigraph::from_parts(["P", "O"], [("cu", "P", "O"), ("cv", "P", "O")]).unwrap();
        LabelledGraph::new(
            g,
            vec!["Z1".into(), "Z2".into()],
            vec![vec![1, 0], vec![0, 1]],
        )
        .unwrap()
    }

    fn dipole() -> Divisor {
        Divisor::from_integers(&[1, -1])
    }

    fn tv(m: &[u64]) -> TestVector {
        TestVector::new(m.to_vec()).unwrap()
    }

    #[test]
    fn twogon_jump_is_parallel_resistance() {
        let j = height_jump(&twogon(), &dipole(), &dipole(), &tv(&[3, 5])).unwrap();
        assert_eq!(j.value, ratio(15, 8));
        assert_eq!(j.full_term, ratio(15, 8));
        assert_eq!(j.slice_terms, vec![int(0), int(0)]);
    }

    #[test]
    fn unit_vectors_give_zero() {
        let lg = twogon();
        for i in 0..2 {
            let j = height_jump(&lg, &dipole(), &dipole(), &TestVector::unit(2, i)).unwrap();
            assert_eq!(j.value, int(0));
        }
    }

    #[test]
    fn single_component_never_jumps() {
        let g = Multigraph::from_parts(
            ["a", "b", "c"],
            [
                ("x", "a", "b"),
                ("y", "b", "c"),
                ("z", "a", "c"),
                ("w", "a", "c"),
            ],
        )
        .unwrap();
        let lg = LabelledGraph::new(
            g,
            vec!["Z".into()],
            vec![vec![1], vec![2], vec![3], vec![1]],
        )
        .unwrap();
        let d = Divisor::from_integers(&[2, -1, -1]);
        for m in 1..6 {
            assert_eq!(height_jump(&lg, &d, &d, &tv(&[m])).unwrap().value, int(0));
        }
    }

    #[test]
    fn zero_divisor_gives_zero() {
        let j = height_jump(&twogon(), &Divisor::zero(2), &dipole(), &tv(&[2, 9])).unwrap();
        assert_eq!(j.value, int(0));
    }

    #[test]
    fn jump_errors() {
        let lg = twogon();
        assert_eq!(TestVector::unit(2, 0).scaled(0), Err(Error::ZeroTestVector));
        assert_eq!(
            height_jump(
                &lg,
                &Divisor::from_integers(&[1, 0]),
                &dipole(),
                &tv(&[1, 1])
            ),
            Err(Error::NotZeroSum("1".into()))
        );
        assert_eq!(TestVector::new(vec![0, 0]), Err(Error::ZeroTestVector));
    }

    #[test]
    fn phi_examples() {
        let phi = PhiFunction::new(twogon(), dipole(), dipole());
        assert_eq!(phi.evaluate(&[int(1), int(1)]).unwrap(), ratio(1, 2));
        assert_eq!(phi.evaluate(&[int(2), int(2)]).unwrap(), int(1));
        assert_eq!(phi.evaluate(&[int(1), int(0)]).unwrap(), int(0));
        // mn/(m+n) at (1/2, 1/3) is (1/6)/(5/6) = 1/5
        assert_eq!(
            phi.evaluate(&[ratio(1, 2), ratio(1, 3)]).unwrap(),
            ratio(1, 5)
        );
        assert_eq!(phi.evaluate(&[int(0), int(0)]), Err(Error::ZeroTestVector));
        assert_eq!(
            phi.evaluate(&[int(-1), int(2)]),
            Err(Error::NegativeTestVector)
        );
    }

    #[test]
    fn admissible_multiplicity_examples() {
        assert_eq!(
            admissible_multiplicity(&twogon(), &dipole(), &dipole(), &tv(&[3, 5])).unwrap(),
            ratio(15, 8)
        );
        // Tree: series law along the path a-b-c.
        let g =
            Multigraph::from_parts(["a", "b", "c"], [("x", "a", "b"), ("y", "b", "c")]).unwrap();
        let lg = LabelledGraph::new(
            g,
            vec!["A".into(), "B".into()],
            vec![vec![2, 1], vec![0, 3]],
        )
        .unwrap();
        let d = Divisor::from_integers(&[1, 0, -1]);
        // resistances 2*2+1*5 = 9 and 3*5 = 15
        assert_eq!(
            admissible_multiplicity(&lg, &d, &d, &tv(&[2, 5])).unwrap(),
            int(24)
        );
        assert_eq!(
            admissible_multiplicity(&lg, &Divisor::zero(3), &Divisor::zero(3), &tv(&[2, 5]))
                .unwrap(),
            int(0)
        );
    }

    #[test]
    fn bound_examples() {
        let b = jump_bound(&twogon(), &dipole(), &dipole()).unwrap();
        assert_eq!(
            (b.c_prime.clone(), b.a_max, b.rank, b.c.clone()),
            (int(1), 1, 2, int(1))
        );
        let b0 = jump_bound(&twogon(), &Divisor::zero(2), &dipole()).unwrap();
        assert_eq!(b0.c, int(0));

        let g = Multigraph::from_parts(["a", "b"], [("x", "a", "b"), ("y", "a", "b")]).unwrap();
        let lg = LabelledGraph::new(g, vec!["Z".into()], vec![vec![3], vec![1]]).unwrap();
        let b1 = jump_bound(&lg, &dipole(), &dipole()).unwrap();
        assert_eq!(b1.c, int(0));
        assert_eq!(b1.weighted_limit(&tv(&[7])), int(0));
    }

    #[test]
    fn effectivity_examples() {
        let e = check_effectivity(&twogon(), &dipole(), &tv(&[3, 5])).unwrap();
        assert!(e.holds);
        assert_eq!(e.value, ratio(15, 8));
        let e = check_effectivity(&twogon(), &dipole(), &TestVector::unit(2, 0)).unwrap();
        assert!(e.holds);
        assert_eq!(e.value, int(0));
    }

    #[test]
    fn leave_one_out_minimum() {
        assert_eq!(min_leave_one_out(&[]), 0);
        assert_eq!(min_leave_one_out(&[5]), 0);
        assert_eq!(min_leave_one_out(&[3, 5]), 3);
        assert_eq!(min_leave_one_out(&[1, 4, 2]), 3);
    }

    /// The uniform constant `c′(r−1)·max a_ic` does not dominate the jump in
    /// general: a k-edge path labelled by the first component in parallel
    /// with one edge labelled by the second gives `J(1, n) = kn/(k+n)`,
    /// which exceeds `c · min(m_1, m_2) = 1` for large `n`. The weighted
    /// form still holds.
    #[test]
    fn uniform_constant_is_exceeded_by_long_series_paths() {
        let k = 4u64;
        let g = Multigraph::from_parts(
            ["P", "x1", "x2", "x3", "O"],
            [
                ("p1", "P", "x1"),
                ("p2", "x1", "x2"),
                ("p3", "x2", "x3"),
                ("p4", "x3", "O"),
                ("q", "P", "O"),
            ],
        )
        .unwrap();
        let lg = LabelledGraph::new(
            g,
            vec!["A".into(), "B".into()],
            vec![vec![1, 0], vec![1, 0], vec![1, 0], vec![1, 0], vec![0, 1]],
        )
        .unwrap();
        let d = Divisor::from_integers(&[1, 0, 0, 0, -1]);
        let n = 20u64;
        let m = tv(&[1, n]);
        let j = height_jump(&lg, &d, &d, &m).unwrap().value;
        assert_eq!(j, ratio((k * n) as i64, (k + n) as i64));
        let b = jump_bound(&lg, &d, &d).unwrap();
        assert_eq!(b.c, int(1));
        assert!(j > b.uniform_limit(&m));
        assert!(j <= b.weighted_limit(&m));
    }
}
