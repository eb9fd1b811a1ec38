//! Exact linear solves by fraction-free (Bareiss) elimination.

use num::{BigInt, Integer, One, Zero};

use crate::rational::Rational;

/// Solves `a x = b` for square nonsingular `a`. Rows are scaled to integers,
/// eliminated with Bareiss' exact-division update, and back-substituted over
/// the rationals. Pivots are taken in row order. Returns `None` when `a` is
/// singular.
pub(crate) fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    assert_eq!(b.len(), n, "right-hand side length");
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), n, "matrix must be square");
            integer_row(row.iter().chain(std::iter::once(rhs)))
        })
        .collect();

    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n).find(|&r| !m[r][k].is_zero())?;
        m.swap(k, p);
        for i in k + 1..n {
            for j in k + 1..=n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = t / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }

    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(m[i][n].clone());
        for j in i + 1..n {
            acc -= Rational::from_integer(m[i][j].clone()) * &x[j];
        }
        x[i] = acc / Rational::from_integer(m[i][i].clone());
    }
    Some(x)
}

fn integer_row<'a>(entries: impl Iterator<Item = &'a Rational> + Clone) -> Vec<BigInt> {
    let lcm = entries
        .clone()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    entries.map(|q| q.numer() * (&lcm / q.denom())).collect()
}
