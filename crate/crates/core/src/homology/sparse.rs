//! Sparse column reduction over `GF(p)`.

use super::primes::{inv_mod, mul_mod};

/// `(row, value)` with `value` in `[0, p)`; columns are sorted by row.
pub type Entry = (u32, u32);

const NONE: u32 = u32::MAX;

/// Incremental left-to-right column reduction. Each stored column is
/// normalized so that its lowest (largest-row) entry is 1.
#[derive(Debug)]
pub struct Reducer {
    p: u64,
    pivot_of_row: Vec<u32>,
    stored: Vec<Vec<Entry>>,
    scratch: Vec<Entry>,
}

impl Reducer {
    pub fn new(nrows: usize, p: u64) -> Self {
        Self {
            p,
            pivot_of_row: vec![NONE; nrows],
            stored: Vec::new(),
            scratch: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.stored.len()
    }

    pub fn is_pivot_row(&self, row: u32) -> bool {
        self.pivot_of_row[row as usize] != NONE
    }

    /// Reduces `col` against the stored pivots. Returns the pivot row if the
    /// column is independent of the previous ones.
    pub fn push(&mut self, mut col: Vec<Entry>) -> Option<u32> {
        let p = self.p;
        loop {
            let &(low, v) = col.last()?;
            let k = self.pivot_of_row[low as usize];
            if k == NONE {
                let inv = inv_mod(v as u64, p);
                if inv != 1 {
                    for e in col.iter_mut() {
                        e.1 = mul_mod(e.1 as u64, inv, p) as u32;
                    }
                }
                self.pivot_of_row[low as usize] = self.stored.len() as u32;
                col.shrink_to_fit();
                self.stored.push(col);
                return Some(low);
            }
            // col -= v * stored[k]
            let piv = &self.stored[k as usize];
            let neg = p - v as u64;
            self.scratch.clear();
            self.scratch.reserve(col.len() + piv.len());
            let (mut i, mut j) = (0, 0);
            while i < col.len() || j < piv.len() {
                if j == piv.len() || (i < col.len() && col[i].0 < piv[j].0) {
                    self.scratch.push(col[i]);
                    i += 1;
                } else if i == col.len() || piv[j].0 < col[i].0 {
                    self.scratch.push((piv[j].0, mul_mod(piv[j].1 as u64, neg, p) as u32));
                    j += 1;
                } else {
                    let x = (col[i].1 as u64 + mul_mod(piv[j].1 as u64, neg, p)) % p;
                    if x != 0 {
                        self.scratch.push((col[i].0, x as u32));
                    }
                    i += 1;
                    j += 1;
                }
            }
            std::mem::swap(&mut col, &mut self.scratch);
        }
    }
}

/// Rank of a matrix given column by column, skipping columns flagged in
/// `skip`. Returns the rank and the set of pivot rows.
pub fn rank_mod_p<F>(nrows: usize, ncols: usize, p: u64, skip: Option<&[bool]>, column: F) -> (usize, Vec<bool>)
where
    F: Fn(usize) -> Vec<Entry>,
{
    let mut r = Reducer::new(nrows, p);
    let mut pivots = vec![false; nrows];
    for c in 0..ncols {
        if skip.is_some_and(|s| s[c]) {
            continue;
        }
        if let Some(row) = r.push(column(c)) {
            pivots[row as usize] = true;
        }
    }
    (r.rank(), pivots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense_rank(m: &[Vec<i64>], p: u64) -> usize {
        let mut a: Vec<Vec<u64>> = m
            .iter()
            .map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
            .collect();
        let (rows, cols) = (a.len(), a.first().map_or(0, |r| r.len()));
        let mut rank = 0;
        for c in 0..cols {
            let Some(piv) = (rank..rows).find(|&r| a[r][c] != 0) else { continue };
            a.swap(rank, piv);
            let inv = inv_mod(a[rank][c], p);
            for r in 0..rows {
                if r != rank && a[r][c] != 0 {
                    let f = mul_mod(a[r][c], inv, p);
                    for k in 0..cols {
                        a[r][k] = (a[r][k] + p - mul_mod(f, a[rank][k], p)) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn matches_dense_elimination() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let p = 1_000_003;
        for _ in 0..200 {
            let rows = rng.gen_range(1..9);
            let cols = rng.gen_range(1..9);
            let m: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..cols).map(|_| if rng.gen_bool(0.4) { rng.gen_range(-2..3) } else { 0 }).collect())
                .collect();
            let (r, _) = rank_mod_p(rows, cols, p, None, |c| {
                (0..rows)
                    .filter(|&r| m[r][c] != 0)
                    .map(|r| (r as u32, m[r][c].rem_euclid(p as i64) as u32))
                    .collect()
            });
            assert_eq!(r, dense_rank(&m, p));
        }
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // [[1, 1], [1, -1]] has determinant -2.
        let col = |c: usize, p: u64| -> Vec<Entry> {
            if c == 0 {
                vec![(0, 1), (1, 1)]
            } else {
                vec![(0, 1), (1, (p - 1) as u32)]
            }
        };
        assert_eq!(rank_mod_p(2, 2, 2, None, |c| col(c, 2)).0, 1);
        assert_eq!(rank_mod_p(2, 2, 7, None, |c| col(c, 7)).0, 2);
    }
}
