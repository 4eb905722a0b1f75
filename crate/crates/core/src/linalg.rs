//! Dense linear algebra over GF(2).

/// A GF(2) matrix stored as packed rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        BitMatrix {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let w = &mut self.data[r * self.words + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r * self.words + c / 64] ^= 1 << (c % 64);
    }

    pub fn mul_vec(&self, v: &[bool]) -> Vec<bool> {
        (0..self.rows)
            .map(|r| (0..self.cols).filter(|&c| v[c] && self.get(r, c)).count() % 2 == 1)
            .collect()
    }

    fn xor_row(&mut self, dst: usize, src: usize) {
        let w = self.words;
        for k in 0..w {
            let s = self.data[src * w + k];
            self.data[dst * w + k] ^= s;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let w = self.words;
        for k in 0..w {
            self.data.swap(a * w + k, b * w + k);
        }
    }
}

/// The system has no solution; `row` is an original equation index that
/// reduces to `0 = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inconsistent {
    pub row: usize,
}

/// Solves `a · v = b` and returns the lexicographically smallest solution,
/// reading `v[0]` as the most significant coordinate.
///
/// Pivots are taken from the last column backwards, so every pivot variable
/// depends only on free variables with smaller index; setting all free
/// variables to zero then gives the smallest solution.
pub fn solve_lex_min(a: &BitMatrix, b: &[bool]) -> Result<Vec<bool>, Inconsistent> {
    assert_eq!(a.rows, b.len(), "right-hand side length");
    let mut m = a.clone();
    let mut rhs = b.to_vec();
    let mut origin: Vec<usize> = (0..a.rows).collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut next_row = 0;
    for col in (0..a.cols).rev() {
        if next_row == m.rows {
            break;
        }
        let Some(p) = (next_row..m.rows).find(|&r| m.get(r, col)) else {
            continue;
        };
        m.swap_rows(p, next_row);
        rhs.swap(p, next_row);
        origin.swap(p, next_row);
        for r in 0..m.rows {
            if r != next_row && m.get(r, col) {
                m.xor_row(r, next_row);
                rhs[r] ^= rhs[next_row];
            }
        }
        pivots.push((next_row, col));
        next_row += 1;
    }
    if let Some(r) = (next_row..m.rows).find(|&r| rhs[r]) {
        return Err(Inconsistent { row: origin[r] });
    }
    let mut v = vec![false; a.cols];
    for (row, col) in pivots {
        v[col] = rhs[row];
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn brute_force(a: &BitMatrix, b: &[bool]) -> Option<Vec<bool>> {
        // counting from 0 with v[0] as the top bit visits vectors in lex order
        let n = a.cols();
        (0u64..1 << n)
            .map(|k| (0..n).map(|c| k >> (n - 1 - c) & 1 == 1).collect::<Vec<_>>())
            .find(|v| a.mul_vec(v) == b)
    }

    #[test]
    fn agrees_with_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..400 {
            let rows = rng.gen_range(1..7);
            let cols = rng.gen_range(1..8);
            let mut a = BitMatrix::zeros(rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    a.set(r, c, rng.gen_bool(0.4));
                }
            }
            let b: Vec<bool> = (0..rows).map(|_| rng.gen_bool(0.5)).collect();
            match (solve_lex_min(&a, &b), brute_force(&a, &b)) {
                (Ok(v), Some(w)) => assert_eq!(v, w),
                (Err(e), None) => assert!(e.row < rows),
                (got, want) => panic!("solver {got:?} vs enumeration {want:?}"),
            }
        }
    }

    #[test]
    fn free_variables_resolve_to_zero() {
        // x0 + x1 = 1: smallest solution is (0, 1)
        let mut a = BitMatrix::zeros(1, 2);
        a.set(0, 0, true);
        a.set(0, 1, true);
        assert_eq!(solve_lex_min(&a, &[true]).unwrap(), vec![false, true]);
        let z = BitMatrix::zeros(2, 3);
        assert_eq!(solve_lex_min(&z, &[false, false]).unwrap(), vec![false; 3]);
        assert_eq!(solve_lex_min(&z, &[false, true]), Err(Inconsistent { row: 1 }));
    }

    #[test]
    fn wide_rows() {
        let mut a = BitMatrix::zeros(2, 130);
        a.set(0, 129, true);
        a.set(1, 0, true);
        a.flip(1, 64);
        let v = solve_lex_min(&a, &[true, true]).unwrap();
        assert!(v[129] && v[64] && !v[0]);
        assert_eq!(a.mul_vec(&v), vec![true, true]);
    }
}
