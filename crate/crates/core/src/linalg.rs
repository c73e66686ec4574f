//! Exact rank, span membership and linear solves over ℚ.
//!
//! Rows are scaled to integer rows and reduced with Bareiss' fraction-free
//! elimination, so every intermediate value is an exact integer minor.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rational::Rational;

/// Integer row echelon form; returns the reduced rows and pivot columns.
fn bareiss(mut rows: Vec<Vec<BigInt>>) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let v = &rows[r][c] * &rows[i][j] - &rows[i][c] * &rows[r][j];
                debug_assert!((&v % &prev).is_zero());
                rows[i][j] = v / &prev;
            }
            rows[i][c] = BigInt::zero();
        }
        prev = rows[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    (rows, pivots)
}

fn integer_rows(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    bareiss(integer_rows(rows)).1.len()
}

/// Whether `target` lies in the span of `vectors` (all of equal length).
pub fn in_span(vectors: &[Vec<Rational>], target: &[Rational]) -> bool {
    let base = rank(vectors);
    let mut ext = vectors.to_vec();
    ext.push(target.to_vec());
    rank(&ext) == base
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveError {
    Inconsistent,
    Underdetermined,
}

/// Solves `Σ_j x_j · columns[j] = rhs` for the unique `x`.
pub fn solve_columns(columns: &[Vec<Rational>], rhs: &[Rational]) -> Result<Vec<Rational>, SolveError> {
    let n = columns.len();
    let rows: Vec<Vec<Rational>> = (0..rhs.len())
        .map(|i| {
            let mut row: Vec<Rational> = columns.iter().map(|col| col[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let (ech, pivots) = bareiss(integer_rows(&rows));
    if pivots.last() == Some(&n) {
        return Err(SolveError::Inconsistent);
    }
    if pivots.len() < n {
        return Err(SolveError::Underdetermined);
    }
    let mut x = vec![Rational::zero(); n];
    for (r, &c) in pivots.iter().enumerate().rev() {
        let mut acc = Rational::from_integer(ech[r][n].clone());
        for j in c + 1..n {
            acc -= Rational::from_integer(ech[r][j].clone()) * &x[j];
        }
        x[c] = acc / Rational::from_integer(ech[r][c].clone());
    }
    Ok(x)
}

/// Dense product `M v`.
pub fn mat_vec(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}
