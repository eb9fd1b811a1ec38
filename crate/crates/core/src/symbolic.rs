//! Expanded form of `Φ` as a ratio of polynomials, for inspection.
//!
//! Each label becomes the linear form `μ_c(x) = Σ_i a_{ic} x_i`; the full
//! term is the forest formula over those forms and each slice term is
//! `x_i · g_i` with `g_i` the Green's function at the generic point of
//! component `i`. The result is not reduced to lowest terms.

use std::collections::BTreeMap;
use std::fmt::Write;

use num::{BigInt, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::forest::pi_from_labels;
use crate::graph::EdgeSet;
use crate::labelled::LabelledGraph;
use crate::network::{green, Divisor};
use crate::rational::{self, Rational};

/// Polynomial in `r` variables with rational coefficients, keyed by
/// exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    vars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Poly {
    pub fn zero(vars: usize) -> Self {
        Poly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, c: Rational) -> Self {
        let mut p = Poly::zero(vars);
        p.add_term(vec![0; vars], c);
        p
    }

    /// `Σ_i coeffs[i] x_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let vars = coeffs.len();
        let mut p = Poly::zero(vars);
        for (i, c) in coeffs.iter().enumerate() {
            let mut exp = vec![0; vars];
            exp[i] = 1;
            p.add_term(exp, c.clone());
        }
        p
    }

    fn add_term(&mut self, exp: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (exp, c) in &other.terms {
            out.add_term(exp.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, a: &Rational) -> Poly {
        let mut out = Poly::zero(self.vars);
        for (exp, c) in &self.terms {
            out.add_term(exp.clone(), c * a);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exp, ca * cb);
            }
        }
        out
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(exp, c)| {
                exp.iter().zip(x).fold(c.clone(), |acc, (&k, xi)| {
                    acc * num::pow(xi.clone(), k as usize)
                })
            })
            .sum()
    }

    /// Total degree of every term, if they all agree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        // Highest total degree first, then lexicographically descending.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (n, (exp, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            if n == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mag = c.abs();
            let mut factors = Vec::new();
            if !mag.is_one() || exp.iter().all(|&k| k == 0) {
                factors.push(rational::format(&mag));
            }
            for (name, &k) in names.iter().zip(exp) {
                match k {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{k}")),
                }
            }
            let _ = write!(out, "{}", factors.join("*"));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiExpansion {
    pub numerator: Poly,
    pub denominator: Poly,
    /// Green's function at the generic point of each component.
    pub generic_terms: Vec<Rational>,
}

impl PhiExpansion {
    /// `None` where the denominator vanishes, which happens exactly when
    /// the pullback at `m` has a zero-resistance edge.
    pub fn eval(&self, m: &[Rational]) -> Option<Rational> {
        let den = self.denominator.eval(m);
        (!den.is_zero()).then(|| self.numerator.eval(m) / den)
    }
}

fn product_outside(forms: &[Poly], kept: EdgeSet, vars: usize) -> Poly {
    forms
        .iter()
        .enumerate()
        .filter(|(c, _)| !kept.contains(*c))
        .fold(Poly::constant(vars, Rational::one()), |acc, (_, f)| {
            acc.mul(f)
        })
}

/// Expands `Φ` for `lg` and the divisor pair `(d, e)`.
pub fn expand_phi(lg: &LabelledGraph, d: &Divisor, e: &Divisor) -> Result<PhiExpansion> {
    let g = lg.graph();
    let n = g.vertex_count();
    for x in [d, e] {
        if x.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: x.len(),
            });
        }
        if !x.is_zero_sum() {
            return Err(Error::NotZeroSum(rational::format(&x.total())));
        }
    }
    let r = lg.rank();
    let forms: Vec<Poly> = lg
        .labels()
        .iter()
        .map(|a| {
            let coeffs: Vec<Rational> = a
                .iter()
                .map(|&k| Rational::from_integer(BigInt::from(k)))
                .collect();
            Poly::linear(&coeffs)
        })
        .collect();

    let mut denominator = Poly::zero(r);
    for t in g.spanning_trees()? {
        denominator = denominator.add(&product_outside(&forms, t, r));
    }

    let mut full = Poly::zero(r);
    for f in g.n_forests(2)? {
        let (labels, _) = g.component_labels(f);
        let mut weight = Rational::zero();
        for (a, da) in d.values().iter().enumerate().skip(1) {
            for (b, eb) in e.values().iter().enumerate().skip(1) {
                if da.is_zero() || eb.is_zero() {
                    continue;
                }
                let sign = pi_from_labels(&labels, a, 0, b, 0).value();
                weight += da * eb * rational::int(i64::from(sign));
            }
        }
        if !weight.is_zero() {
            full = full.add(&product_outside(&forms, f, r).scale(&weight));
        }
    }

    let generic_terms = (0..r)
        .map(|i| {
            let gp = lg.generic_point_graph(i)?;
            let k = gp.network.graph().vertex_count();
            let cls = &gp.contraction.class_of;
            green(
                &gp.network,
                &d.push_forward(cls, k),
                &e.push_forward(cls, k),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let slices = Poly::linear(&generic_terms);
    let numerator = full.add(&denominator.mul(&slices).scale(&rational::int(-1)));
    Ok(PhiExpansion {
        numerator,
        denominator,
        generic_terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Multigraph;
    use crate::jump::height_jump;
    use crate::labelled::TestVector;
    use crate::rational::int;

    fn twogon() -> LabelledGraph {
        let g = Multigraph::from_parts(["P", "O"], [("cu", "P", "O"), ("cv", "P", "O")]).unwrap();
        LabelledGraph::new(
            g,
            vec!["u".into(), "v".into()],
            vec![vec![1, 0], vec![0, 1]],
        )
        .unwrap()
    }

    #[test]
    fn twogon_expansion_is_mn_over_m_plus_n() {
        let d = Divisor::from_integers(&[1, -1]);
        let x = expand_phi(&twogon(), &d, &d).unwrap();
        let names = ["u".to_string(), "v".to_string()];
        assert_eq!(x.numerator.render(&names), "u*v");
        assert_eq!(x.denominator.render(&names), "u + v");
        assert_eq!(x.generic_terms, vec![int(0), int(0)]);
    }

    #[test]
    fn expansion_agrees_with_jump_and_is_homogeneous() {
        let g = Multigraph::from_parts(
            ["a", "b", "c", "d"],
            [
                ("p", "a", "b"),
                ("q", "b", "c"),
                ("r", "c", "d"),
                ("s", "d", "a"),
                ("t", "a", "c"),
                ("l", "b", "b"),
            ],
        )
        .unwrap();
        let lg = LabelledGraph::new(
            g,
            vec!["x".into(), "y".into(), "z".into()],
            vec![
                vec![1, 0, 0],
                vec![0, 2, 1],
                vec![0, 0, 3],
                vec![1, 1, 0],
                vec![2, 0, 1],
                vec![0, 1, 0],
            ],
        )
        .unwrap();
        let d = Divisor::from_integers(&[1, 1, -2, 0]);
        let e = Divisor::from_integers(&[0, 3, -1, -2]);
        let x = expand_phi(&lg, &d, &e).unwrap();
        let den_deg = x.denominator.homogeneous_degree().unwrap();
        // |E| - |V| + 1 = 6 - 4 + 1
        assert_eq!(den_deg, 3);
        assert_eq!(x.numerator.homogeneous_degree(), Some(den_deg + 1));
        for m in [[1u64, 2, 3], [4, 1, 1], [2, 2, 5], [1, 1, 1]] {
            let mq: Vec<Rational> = m.iter().map(|&v| int(v as i64)).collect();
            let want = height_jump(&lg, &d, &e, &TestVector::new(m.to_vec()).unwrap())
                .unwrap()
                .value;
            assert_eq!(x.eval(&mq), Some(want), "m = {m:?}");
        }
    }

    #[test]
    fn render_signs_and_powers() {
        let names = ["a".to_string(), "b".to_string()];
        let p = Poly::linear(&[int(2), int(-1)]).mul(&Poly::linear(&[int(1), int(0)]));
        assert_eq!(p.render(&names), "2*a^2 - a*b");
        assert_eq!(Poly::zero(2).render(&names), "0");
        assert_eq!(Poly::constant(2, int(-3)).render(&names), "-3");
    }
}
