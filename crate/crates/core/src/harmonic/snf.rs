//! Smith normal form of an integer matrix (diagonal only).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Invariant factors d_1 | d_2 | ... of a square integer matrix, zeros last.
pub fn smith_diagonal(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        // pivot: smallest nonzero entry of the trailing block
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !m[i][j].is_zero() && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                diag.extend(std::iter::repeat_n(BigInt::zero(), rows.min(cols) - t));
                return finish(diag);
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            let p = m[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t].div_floor(&p);
                if !q.is_zero() {
                    for j in t..cols {
                        let v = &m[t][j] * &q;
                        m[i][j] -= v;
                    }
                }
                clean &= m[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = m[t][j].div_floor(&p);
                if !q.is_zero() {
                    for i in t..rows {
                        let v = &m[i][t] * &q;
                        m[i][j] -= v;
                    }
                }
                clean &= m[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide the rest of the block
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !m[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let v = m[i][j].clone();
                        m[t][j] += v;
                    }
                }
                None => {
                    diag.push(p.abs());
                    break;
                }
            }
        }
    }
    finish(diag)
}

fn finish(mut d: Vec<BigInt>) -> Vec<BigInt> {
    // enforce the divisibility chain on the nonzero part
    let n = d.iter().take_while(|x| !x.is_zero()).count();
    for i in 0..n {
        for j in i + 1..n {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(smith_diagonal(mat(&[&[2, 0], &[0, 3]])), ints(&[1, 6]));
        assert_eq!(smith_diagonal(mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])), ints(&[2, 6, 12]));
        // A^3 - I for A = [[0,1],[1,1]] is [[0,2],[2,2]]
        assert_eq!(smith_diagonal(mat(&[&[0, 2], &[2, 2]])), ints(&[2, 2]));
        assert_eq!(smith_diagonal(mat(&[&[1, 2], &[2, 4]])), ints(&[1, 0]));
    }
}
