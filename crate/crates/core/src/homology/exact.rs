//! Exact oracles for small complexes: rational ranks by fraction-free
//! elimination, and an integral acyclicity certificate.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{BettiVector, ChainComplexData};
use crate::error::{Error, Result};
use crate::simplicial::SimplicialComplex;

/// Face limit for the dense exact oracle.
pub const EXACT_FACE_LIMIT: usize = 2_000;

/// Rank over `Q` of a dense integer matrix (Bareiss elimination).
pub fn rational_rank(matrix: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = matrix.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, piv);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = (&a[rank][c] * &a[r][k] - &a[r][c] * &a[rank][k]) / &prev;
                a[r][k] = v;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn dense_boundary(cc: &ChainComplexData, k: usize) -> Vec<Vec<i64>> {
    let rows = cc.num_faces(k as isize - 1);
    let cols = cc.num_faces(k as isize);
    let mut m = vec![vec![0i64; cols]; rows];
    for c in 0..cols {
        for (r, s) in cc.boundary_signed(k, c) {
            m[r as usize][c] = s;
        }
    }
    m
}

/// Reduced Betti numbers over `Q` by exact elimination; refuses complexes
/// with more than [`EXACT_FACE_LIMIT`] faces.
pub fn exact_reduced_betti(k: &SimplicialComplex) -> Result<BettiVector> {
    let cc = ChainComplexData::new(k, EXACT_FACE_LIMIT)?;
    let d = cc.dimension();
    let ranks: Vec<usize> = (0..=d.max(-1) + 1)
        .map(|j| {
            let j = j as usize;
            if j == 0 {
                usize::from(cc.num_faces(0) > 0)
            } else if j as isize > d {
                0
            } else {
                rational_rank(&dense_boundary(&cc, j))
            }
        })
        .collect();
    Ok(BettiVector::from_ranks(&cc.f_vector_reduced(), &ranks))
}

/// Product of the absolute values of a diagonalization of an integer
/// matrix, i.e. the product of its nonzero invariant factors.
fn invariant_factor_product(mut cols: Vec<Vec<(u32, i64)>>, nrows: usize) -> Result<BigInt> {
    // Unit pivots first, in i64 with overflow checks.
    let mut row_alive = vec![true; nrows];
    let mut col_alive = vec![true; cols.len()];
    let mut row_cols: Vec<Vec<u32>> = vec![Vec::new(); nrows];
    for (c, col) in cols.iter().enumerate() {
        for &(r, _) in col {
            row_cols[r as usize].push(c as u32);
        }
    }
    loop {
        let found = cols
            .iter()
            .enumerate()
            .filter(|(c, _)| col_alive[*c])
            .find_map(|(c, col)| col.iter().find(|e| e.1.abs() == 1).map(|&(r, v)| (c, r, v)));
        let Some((c, r, v)) = found else { break };
        let pivot_col = cols[c].clone();
        let others = std::mem::take(&mut row_cols[r as usize]);
        for &o in &others {
            let o = o as usize;
            if o == c || !col_alive[o] {
                continue;
            }
            let Some(x) = cols[o].iter().find(|e| e.0 == r).map(|e| e.1) else { continue };
            let f = x * v; // x / v since v = +-1
            let mut merged: Vec<(u32, i64)> = Vec::with_capacity(cols[o].len() + pivot_col.len());
            let (a, b) = (&cols[o], &pivot_col);
            let (mut i, mut j) = (0, 0);
            while i < a.len() || j < b.len() {
                if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                    merged.push(a[i]);
                    i += 1;
                } else {
                    let fb = b[j].1.checked_mul(f).ok_or(Error::ExactOverflow)?;
                    if i == a.len() || b[j].0 < a[i].0 {
                        merged.push((b[j].0, -fb));
                        row_cols[b[j].0 as usize].push(o as u32);
                        j += 1;
                    } else {
                        let y = a[i].1.checked_sub(fb).ok_or(Error::ExactOverflow)?;
                        if y != 0 {
                            merged.push((a[i].0, y));
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
            cols[o] = merged;
        }
        // row r now only meets column c
        col_alive[c] = false;
        row_alive[r as usize] = false;
    }
    let rows: Vec<usize> = (0..nrows).filter(|&r| row_alive[r]).collect();
    let live: Vec<&Vec<(u32, i64)>> = cols
        .iter()
        .enumerate()
        .filter(|(c, col)| col_alive[*c] && !col.is_empty())
        .map(|(_, col)| col)
        .collect();
    if live.is_empty() {
        return Ok(BigInt::one());
    }
    let mut m: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); live.len()]; rows.len()];
    for (c, col) in live.iter().enumerate() {
        for &(r, v) in col.iter() {
            let ri = rows.binary_search(&(r as usize)).expect("live row");
            m[ri][c] = BigInt::from(v);
        }
    }
    Ok(diagonal_product(m))
}

/// Diagonalizes a dense integer matrix by unimodular row and column
/// operations and returns the product of the absolute diagonal values.
fn diagonal_product(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut product = BigInt::one();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the remaining block
        let Some((pr, pc)) = (t..rows)
            .flat_map(|r| (t..cols).map(move |c| (r, c)))
            .filter(|&(r, c)| !m[r][c].is_zero())
            .min_by(|&(a, b), &(c, d)| m[a][b].abs().cmp(&m[c][d].abs()))
        else {
            break;
        };
        m.swap(t, pr);
        for row in m.iter_mut() {
            row.swap(t, pc);
        }
        let mut clean = true;
        for r in t + 1..rows {
            if !m[r][t].is_zero() {
                let q = &m[r][t] / &m[t][t];
                for c in t..cols {
                    let v = &m[r][c] - &q * &m[t][c];
                    m[r][c] = v;
                }
                clean &= m[r][t].is_zero();
            }
        }
        for c in t + 1..cols {
            if !m[t][c].is_zero() {
                let q = &m[t][c] / &m[t][t];
                for r in t..rows {
                    let v = &m[r][c] - &q * &m[r][t];
                    m[r][c] = v;
                }
                clean &= m[t][c].is_zero();
            }
        }
        if clean {
            product *= m[t][t].abs();
            t += 1;
        }
    }
    product
}

/// True iff the complex is nonempty and all its reduced homology over `Z`
/// vanishes: the rational Betti numbers are zero and every boundary map
/// has trivial invariant factors.
pub fn integral_acyclic(k: &SimplicialComplex, face_limit: usize) -> Result<bool> {
    if k.is_empty() {
        return Ok(false);
    }
    let cc = ChainComplexData::new(k, face_limit)?;
    let betti = super::betti_single_prime(&cc, super::primes::PrimeSource::default().next_prime());
    if !betti.is_zero() {
        return Ok(false);
    }
    for j in 1..=cc.dimension() as usize {
        let cols = (0..cc.num_faces(j as isize)).map(|c| cc.boundary_signed(j, c)).collect();
        if !invariant_factor_product(cols, cc.num_faces(j as isize - 1))?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(faces: &[&[u32]]) -> SimplicialComplex {
        SimplicialComplex::from_faces(faces.iter().map(|f| f.iter().copied()))
    }

    /// Minimal 6-vertex triangulation of the real projective plane.
    fn rp2() -> SimplicialComplex {
        cx(&[
            &[0, 1, 2],
            &[0, 2, 3],
            &[0, 3, 4],
            &[0, 4, 5],
            &[0, 1, 5],
            &[1, 2, 4],
            &[2, 3, 5],
            &[1, 3, 4],
            &[2, 4, 5],
            &[1, 3, 5],
        ])
    }

    #[test]
    fn bareiss_rank() {
        assert_eq!(rational_rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rational_rank(&[vec![1, 1], vec![1, -1]]), 2);
        assert_eq!(rational_rank(&[vec![0, 0, 0]]), 0);
        assert_eq!(rational_rank(&[]), 0);
    }

    #[test]
    fn exact_betti_examples() {
        assert_eq!(exact_reduced_betti(&SimplicialComplex::empty()).unwrap().0, vec![1]);
        let circle = cx(&[&[0, 1], &[1, 2], &[0, 2]]);
        assert_eq!(exact_reduced_betti(&circle).unwrap().0, vec![0, 0, 1]);
        // RP^2 is Q-acyclic but not Z-acyclic
        assert!(exact_reduced_betti(&rp2()).unwrap().is_zero());
    }

    #[test]
    fn integral_certificate() {
        assert!(!integral_acyclic(&rp2(), 1000).unwrap());
        assert!(integral_acyclic(&cx(&[&[0, 1, 2], &[2, 3]]), 1000).unwrap());
        assert!(!integral_acyclic(&cx(&[&[0], &[1]]), 1000).unwrap());
        assert!(!integral_acyclic(&SimplicialComplex::empty(), 1000).unwrap());
    }

    #[test]
    fn diagonalization() {
        let m = vec![vec![BigInt::from(2), BigInt::from(0)], vec![BigInt::from(0), BigInt::from(3)]];
        assert_eq!(diagonal_product(m), BigInt::from(6));
        let m = vec![vec![BigInt::from(2), BigInt::from(3)]];
        assert_eq!(diagonal_product(m), BigInt::from(1));
    }
}
