//! Exact linear algebra over ℚ and ℤ for cone computations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(x: i64) -> Rat {
    Rat::from_integer(BigInt::from(x))
}

/// Matrix whose columns are the given integer vectors.
pub fn columns_to_matrix(cols: &[&[i64]], rows: usize) -> Vec<Vec<Rat>> {
    (0..rows)
        .map(|r| cols.iter().map(|c| rat(c[r])).collect())
        .collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut [Vec<Rat>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in 0..cols {
                    let delta = &factor * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Rat>]) -> usize {
    rref(&mut m.to_vec()).len()
}

/// Rank of a set of integer vectors.
pub fn rank_of_vectors(vectors: &[&[i64]], dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    rank(&columns_to_matrix(vectors, dim))
}

/// A basis of the right kernel `{x : M x = 0}`.
pub fn kernel(m: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = vec![Rat::zero(); cols];
            x[free] = Rat::one();
            for (row, &pc) in pivots.iter().enumerate() {
                x[pc] = -a[row][free].clone();
            }
            x
        })
        .collect()
}

/// Some solution of `M x = b`, if one exists.
pub fn solve(m: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rat>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| row.iter().cloned().chain([bi.clone()]).collect())
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][cols].clone();
    }
    Some(x)
}

/// Minimal linearly dependent subsets whose unique dependency has all
/// coefficients strictly positive. Returns the first such subset found,
/// with its coefficient vector.
///
/// A nonnegative dependency exists iff one is supported on such a circuit,
/// so this decides whether `0` is a nontrivial nonnegative combination.
pub fn positive_circuit(vectors: &[Vec<i64>], dim: usize) -> Option<(Vec<usize>, Vec<Rat>)> {
    let k = vectors.len();
    let max_size = k.min(dim + 1);
    for size in 2..=max_size {
        for subset in subsets_of_size(k, size) {
            let cols: Vec<&[i64]> = subset.iter().map(|&i| vectors[i].as_slice()).collect();
            let m = columns_to_matrix(&cols, dim);
            let ker = kernel(&m, size);
            if ker.len() != 1 {
                continue;
            }
            let v = &ker[0];
            if v.iter().all(Signed::is_positive) {
                return Some((subset, v.clone()));
            }
            if v.iter().all(Signed::is_negative) {
                return Some((subset, v.iter().map(|x| -x).collect()));
            }
        }
    }
    None
}

/// All positive circuits, not just the first.
pub fn positive_circuits(vectors: &[Vec<i64>], dim: usize) -> Vec<Vec<usize>> {
    let k = vectors.len();
    let mut out = Vec::new();
    for size in 2..=k.min(dim + 1) {
        for subset in subsets_of_size(k, size) {
            let cols: Vec<&[i64]> = subset.iter().map(|&i| vectors[i].as_slice()).collect();
            let ker = kernel(&columns_to_matrix(&cols, dim), size);
            if ker.len() == 1
                && (ker[0].iter().all(Signed::is_positive) || ker[0].iter().all(Signed::is_negative))
            {
                out.push(subset);
            }
        }
    }
    out
}

/// Index subsets of `0..n` with exactly `size` elements, in lexicographic
/// order.
pub fn subsets_of_size(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < size - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if size <= n {
        go(0, n, size, &mut Vec::new(), &mut out);
    }
    out
}

/// Nonzero diagonal entries of the Smith normal form, in divisibility
/// order.
pub fn elementary_divisors(matrix: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut divisors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero absolute value in the trailing block.
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !m[i][j].is_zero())
            .min_by_key(|&(i, j)| m[i][j].abs())
        else {
            break;
        };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut done = true;
            for i in t + 1..rows {
                let q = m[i][t].div_floor(&m[t][t]);
                if !q.is_zero() {
                    for j in t..cols {
                        let delta = &q * &m[t][j];
                        m[i][j] -= delta;
                    }
                }
                if !m[i][t].is_zero() {
                    done = false;
                }
            }
            for j in t + 1..cols {
                let q = m[t][j].div_floor(&m[t][t]);
                if !q.is_zero() {
                    for i in t..rows {
                        let delta = &q * &m[i][t];
                        m[i][j] -= delta;
                    }
                }
                if !m[t][j].is_zero() {
                    done = false;
                }
            }
            if done {
                // The pivot must divide the whole remaining block.
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !m[i][j].is_multiple_of(&m[t][t]));
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            let x = m[i][j].clone();
                            m[t][j] += x;
                        }
                        continue;
                    }
                }
            }
            // Move the smallest remaining entry of row/column t to the pivot.
            let candidates = (t..rows)
                .map(|i| (i, t))
                .chain((t..cols).map(|j| (t, j)))
                .filter(|&(i, j)| !m[i][j].is_zero())
                .min_by_key(|&(i, j)| m[i][j].abs());
            if let Some((i, j)) = candidates {
                m.swap(t, i);
                for row in m.iter_mut() {
                    row.swap(t, j);
                }
            }
        }
        divisors.push(m[t][t].abs());
        t += 1;
    }
    divisors
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn divs(rows: &[&[i64]]) -> Vec<i64> {
        elementary_divisors(&ints(rows))
            .into_iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn smith_form_examples() {
        assert_eq!(divs(&[&[1, 0], &[0, 1]]), vec![1, 1]);
        assert_eq!(divs(&[&[1, 1], &[0, 2]]), vec![1, 2]);
        assert_eq!(divs(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), vec![2, 6, 12]);
        assert_eq!(divs(&[&[2, 0], &[0, 3]]), vec![1, 6]);
        assert_eq!(divs(&[&[0, 0], &[0, 0]]), Vec::<i64>::new());
        // Tall matrix: a 2-cone in ℤ³.
        assert_eq!(divs(&[&[1, 0], &[0, 1], &[1, 1]]), vec![1, 1]);
    }

    #[test]
    fn kernel_and_rank() {
        let m = columns_to_matrix(&[&[1, 0], &[0, 1], &[1, 1]], 2);
        assert_eq!(rank(&m), 2);
        let k = kernel(&m, 3);
        assert_eq!(k, vec![vec![rat(-1), rat(-1), rat(1)]]);
    }

    #[test]
    fn solve_consistency() {
        let m = columns_to_matrix(&[&[1, 0, 0], &[1, 2, 0]], 3);
        assert_eq!(
            solve(&m, &[rat(3), rat(4), rat(0)]),
            Some(vec![rat(1), rat(2)])
        );
        assert_eq!(solve(&m, &[rat(0), rat(0), rat(1)]), None);
    }

    #[test]
    fn positive_circuit_detects_lines() {
        assert!(positive_circuit(&[vec![1, 0], vec![-1, 0]], 2).is_some());
        assert!(positive_circuit(&[vec![1, 0], vec![0, 1], vec![1, 1]], 2).is_none());
        let (s, _) = positive_circuit(&[vec![1, 0], vec![0, 1], vec![-1, -1]], 2).unwrap();
        assert_eq!(s, vec![0, 1, 2]);
    }

    #[test]
    fn subsets() {
        assert_eq!(subsets_of_size(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets_of_size(2, 0), vec![Vec::<usize>::new()]);
        assert!(subsets_of_size(2, 3).is_empty());
    }
}
