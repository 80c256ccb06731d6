//! Reduced rational Betti numbers via sparse elimination modulo random
//! primes.
//!
//! Ranks of the boundary maps are computed from the top dimension down with
//! clearing: a `k`-face that is a pivot row of the reduced `d_{k+1}` indexes
//! a column of `d_k` that reduces to zero, so it is skipped.

pub mod exact;
pub mod primes;
pub mod sparse;

use std::fmt;

use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::Execution;
use crate::simplicial::{for_each_subset, FVector, Simplex, SimplicialComplex, Vertex};
use primes::PrimeSource;
use sparse::{rank_mod_p, Entry};

/// Default cap on the number of faces in any single dimension.
pub const DEFAULT_FACE_LIMIT: usize = 50_000_000;

/// Reduced Betti numbers `b~_{-1}, b~_0, b~_1, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BettiVector(pub Vec<u64>);

impl BettiVector {
    /// From the reduced f-vector `(f_{-1}, f_0, ..., f_d)` and the ranks of
    /// `d_0, ..., d_{d+1}`.
    pub(crate) fn from_ranks(f: &[u64], ranks: &[usize]) -> Self {
        let mut b: Vec<u64> = f
            .iter()
            .enumerate()
            .map(|(i, &fi)| {
                let below = if i == 0 { 0 } else { ranks[i - 1] as u64 };
                fi - below - ranks.get(i).copied().unwrap_or(0) as u64
            })
            .collect();
        while b.len() > 1 && b.last() == Some(&0) {
            b.pop();
        }
        Self(b)
    }

    /// `b~_k` for `k >= -1`.
    pub fn get(&self, k: isize) -> u64 {
        self.0.get((k + 1) as usize).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }

    /// `(k, b~_k)` for every nonzero entry.
    pub fn nonzero(&self) -> Vec<(isize, u64)> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &b)| b != 0)
            .map(|(i, &b)| (i as isize - 1, b))
            .collect()
    }

    /// Reduced Euler characteristic `sum (-1)^k b~_k`.
    pub fn reduced_euler(&self) -> i64 {
        self.nonzero().iter().map(|&(k, b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.nonzero().iter().map(|(k, b)| format!("b~{k}={b}")).collect();
        if parts.is_empty() {
            f.write_str("acyclic")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// Faces of one dimension, sorted lexicographically, stored flat.
#[derive(Debug, Clone, Default)]
pub struct FaceList {
    width: usize,
    data: Vec<Vertex>,
}

impl FaceList {
    pub fn len(&self) -> usize {
        self.data.len().checked_div(self.width).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn get(&self, i: usize) -> &[Vertex] {
        &self.data[i * self.width..(i + 1) * self.width]
    }

    pub fn index_of(&self, face: &[Vertex]) -> Option<usize> {
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(face) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }
}

/// The simplicial chain complex of a facet-represented complex, faces
/// listed per dimension in lexicographic order.
#[derive(Debug, Clone)]
pub struct ChainComplexData {
    faces: Vec<FaceList>,
}

fn enumerate_faces(k: &SimplicialComplex, dim: usize, limit: usize) -> Result<FaceList> {
    let size = dim + 1;
    let bound: usize = k
        .facets()
        .iter()
        .map(|f| binomial(f.len(), size))
        .fold(0usize, |a, b| a.saturating_add(b));
    if bound > limit.saturating_mul(8) {
        return Err(Error::FaceOverflow {
            dim,
            count: bound,
            limit,
        });
    }
    let mut faces: Vec<Simplex> = Vec::with_capacity(bound);
    let mut buf = Simplex::new();
    for f in k.facets() {
        if f.len() == size {
            faces.push(f.clone());
        } else if f.len() > size {
            for_each_subset(f, size, &mut buf, &mut |s| faces.push(s.clone()));
        }
    }
    faces.sort_unstable();
    faces.dedup();
    if faces.len() > limit {
        return Err(Error::FaceOverflow {
            dim,
            count: faces.len(),
            limit,
        });
    }
    Ok(FaceList {
        width: size,
        data: faces.iter().flat_map(|f| f.iter().copied()).collect(),
    })
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

impl ChainComplexData {
    pub fn new(k: &SimplicialComplex, face_limit: usize) -> Result<Self> {
        Self::up_to(k, k.dimension(), face_limit)
    }

    /// Faces of dimension at most `top` only.
    pub fn up_to(k: &SimplicialComplex, top: isize, face_limit: usize) -> Result<Self> {
        let top = top.min(k.dimension());
        let faces = (0..=top)
            .map(|d| enumerate_faces(k, d as usize, face_limit))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { faces })
    }

    pub fn dimension(&self) -> isize {
        self.faces.len() as isize - 1
    }

    /// Number of faces of dimension `d`; one face in dimension `-1`.
    pub fn num_faces(&self, d: isize) -> usize {
        match d {
            -1 => 1,
            d if d < -1 || d > self.dimension() => 0,
            d => self.faces[d as usize].len(),
        }
    }

    pub fn faces(&self, d: usize) -> &FaceList {
        &self.faces[d]
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.faces.iter().map(|l| l.len() as u64).collect())
    }

    /// `(f_{-1}, f_0, ..., f_d)`.
    pub(crate) fn f_vector_reduced(&self) -> Vec<u64> {
        std::iter::once(1).chain(self.faces.iter().map(|l| l.len() as u64)).collect()
    }

    /// Column `c` of `d_k` (`k >= 1`) with integer signs, sorted by row.
    pub fn boundary_signed(&self, k: usize, c: usize) -> Vec<(u32, i64)> {
        let face = self.faces[k].get(c);
        let lower = &self.faces[k - 1];
        let mut buf: Simplex = Simplex::new();
        let mut col: Vec<(u32, i64)> = (0..=k)
            .map(|i| {
                buf.clear();
                buf.extend(face.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v));
                let r = lower.index_of(&buf).expect("boundary face present");
                (r as u32, if i % 2 == 0 { 1 } else { -1 })
            })
            .collect();
        col.sort_unstable_by_key(|e| e.0);
        col
    }

    fn boundary_mod(&self, k: usize, c: usize, p: u64) -> Vec<Entry> {
        self.boundary_signed(k, c)
            .into_iter()
            .map(|(r, s)| (r, if s > 0 { 1 } else { (p - 1) as u32 }))
            .collect()
    }

    /// Checks `d_{k-1} d_k = 0` on `samples` random columns of every `d_k`.
    pub fn check_boundary_squares_to_zero(&self, samples: usize, seed: u64) -> bool {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for k in 2..self.faces.len() {
            let n = self.faces[k].len();
            for _ in 0..samples.min(n) {
                let c = rng.gen_range(0..n);
                let mut acc: rustc_hash::FxHashMap<u32, i64> = Default::default();
                for (r, s) in self.boundary_signed(k, c) {
                    for (q, t) in self.boundary_signed(k - 1, r as usize) {
                        *acc.entry(q).or_default() += s * t;
                    }
                }
                if acc.values().any(|&v| v != 0) {
                    return false;
                }
            }
        }
        true
    }

    /// Ranks of `d_lo, ..., d_hi` modulo `p`, `d_0` being the augmentation.
    /// `d_{hi+1}` is reduced first when available so that clearing applies.
    pub fn ranks_mod_p(&self, lo: usize, hi: usize, p: u64) -> Vec<usize> {
        let d = self.dimension();
        let mut ranks = vec![0; hi + 1 - lo];
        let mut cleared: Option<Vec<bool>> = None;
        let start = (hi as isize + 1).min(d);
        let mut k = start;
        while k >= lo as isize && k >= 0 {
            let ku = k as usize;
            let rank = if ku == 0 {
                usize::from(self.num_faces(0) > 0)
            } else {
                let (r, pivots) = rank_mod_p(
                    self.num_faces(k - 1),
                    self.num_faces(k),
                    p,
                    cleared.as_deref(),
                    |c| self.boundary_mod(ku, c, p),
                );
                cleared = Some(pivots);
                r
            };
            if ku <= hi {
                ranks[ku - lo] = rank;
            }
            k -= 1;
        }
        ranks
    }
}

/// Reduced Betti numbers from one prime.
pub(crate) fn betti_single_prime(cc: &ChainComplexData, p: u64) -> BettiVector {
    let d = cc.dimension();
    let top = (d + 1).max(0) as usize;
    let ranks = cc.ranks_mod_p(0, top, p);
    BettiVector::from_ranks(&cc.f_vector_reduced(), &ranks)
}

/// How primes are chosen and how many must agree.
#[derive(Debug, Clone)]
pub struct HomologyConfig {
    /// `None` draws primes from OS entropy.
    pub prime_seed: Option<u64>,
    pub face_limit: usize,
    pub exec: Execution,
}

impl Default for HomologyConfig {
    fn default() -> Self {
        Self {
            prime_seed: Some(primes::DEFAULT_PRIME_SEED),
            face_limit: DEFAULT_FACE_LIMIT,
            exec: Execution::Parallel,
        }
    }
}

impl HomologyConfig {
    pub fn prime_source(&self) -> PrimeSource {
        match self.prime_seed {
            Some(s) => PrimeSource::seeded(s),
            None => PrimeSource::from_entropy(),
        }
    }
}

/// Result of [`reduced_betti`], serializable as the Betti JSON record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub id: String,
    pub coefficients: String,
    pub primes: Vec<u64>,
    pub betti: BettiVector,
    pub fvector: FVector,
}

/// Ranks agreed on by two primes, escalating to a third on disagreement.
fn agreed_ranks(cfg: &HomologyConfig, run: impl Fn(u64) -> Vec<usize> + Sync) -> Result<(Vec<u64>, Vec<usize>)> {
    let mut source = cfg.prime_source();
    let (p1, p2) = (source.next_prime(), source.next_prime());
    let (r1, r2) = cfg.exec.join(|| run(p1), || run(p2));
    if r1 == r2 {
        return Ok((vec![p1, p2], r1));
    }
    let p3 = source.next_prime();
    let r3 = run(p3);
    // modular ranks never exceed rational ones
    let best: Vec<usize> = (0..r1.len()).map(|i| r1[i].max(r2[i]).max(r3[i])).collect();
    let agreeing = [&r1, &r2, &r3].iter().filter(|r| ***r == best).count();
    if agreeing >= 2 {
        log::warn!("prime disagreement resolved by escalation: {r1:?} {r2:?} {r3:?}");
        return Ok((vec![p1, p2, p3], best));
    }
    Err(Error::PrimeDisagreement {
        primes: vec![p1, p2, p3],
        ranks: vec![r1, r2, r3],
    })
}

/// Reduced Betti numbers over `Q` of a complex.
pub fn reduced_betti(k: &SimplicialComplex, cfg: &HomologyConfig) -> Result<HomologyReport> {
    let cc = ChainComplexData::new(k, cfg.face_limit)?;
    if !cc.check_boundary_squares_to_zero(16, 0) {
        return Err(Error::Mismatch("boundary of boundary is nonzero".into()));
    }
    let top = (cc.dimension() + 1).max(0) as usize;
    let (primes, ranks) = agreed_ranks(cfg, |p| cc.ranks_mod_p(0, top, p))?;
    Ok(HomologyReport {
        id: String::new(),
        coefficients: "Q".into(),
        primes,
        betti: BettiVector::from_ranks(&cc.f_vector_reduced(), &ranks),
        fvector: cc.f_vector(),
    })
}

/// `b~_k` for `k` in `lo..=hi` only; faces above dimension `hi + 1` are
/// never enumerated.
pub fn reduced_betti_in_degrees(
    k: &SimplicialComplex,
    lo: usize,
    hi: usize,
    cfg: &HomologyConfig,
) -> Result<(Vec<u64>, Vec<u64>)> {
    let cc = ChainComplexData::up_to(k, hi as isize + 1, cfg.face_limit)?;
    let (primes, ranks) = agreed_ranks(cfg, |p| cc.ranks_mod_p(lo, hi + 1, p))?;
    let betti = (lo..=hi)
        .map(|d| cc.num_faces(d as isize) as u64 - ranks[d - lo] as u64 - ranks[d + 1 - lo] as u64)
        .collect();
    Ok((primes, betti))
}

/// Whether all reduced Betti numbers vanish modulo one prime; this
/// implies the same over `Q`.
pub fn is_acyclic_mod_p(k: &SimplicialComplex, p: u64, face_limit: usize) -> Result<bool> {
    if k.is_empty() {
        return Ok(false);
    }
    let cc = ChainComplexData::new(k, face_limit)?;
    Ok(betti_single_prime(&cc, p).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cx(faces: &[&[u32]]) -> SimplicialComplex {
        SimplicialComplex::from_faces(faces.iter().map(|f| f.iter().copied()))
    }

    fn betti(k: &SimplicialComplex) -> Vec<u64> {
        reduced_betti(k, &HomologyConfig::default()).unwrap().betti.0
    }

    fn sphere_boundary(n: u32) -> SimplicialComplex {
        // boundary of the n-simplex on n + 1 vertices
        SimplicialComplex::from_faces((0..=n).map(|skip| (0..=n).filter(move |&v| v != skip)))
    }

    #[test]
    fn conventions() {
        assert_eq!(betti(&SimplicialComplex::empty()), vec![1]);
        assert_eq!(betti(&cx(&[&[0]])), vec![0]);
        assert_eq!(betti(&cx(&[&[0], &[1]])), vec![0, 1]);
    }

    #[test]
    fn edge_boundary() {
        let cc = ChainComplexData::new(&cx(&[&[3, 7]]), 100).unwrap();
        assert_eq!(cc.boundary_signed(1, 0), vec![(0, -1), (1, 1)]);
    }

    #[test]
    fn spheres_and_balls() {
        for n in 1..6 {
            let b = betti(&sphere_boundary(n));
            assert_eq!(b.len(), n as usize + 1);
            assert_eq!(*b.last().unwrap(), 1);
            assert_eq!(b.iter().sum::<u64>(), 1);
            let ball: SimplicialComplex = cx(&[&(0..=n).collect::<Vec<_>>()]);
            assert!(reduced_betti(&ball, &HomologyConfig::default()).unwrap().betti.is_zero());
        }
    }

    #[test]
    fn hexagon_boundary_rank() {
        let hex = cx(&[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 5], &[0, 5]]);
        let cc = ChainComplexData::new(&hex, 100).unwrap();
        assert_eq!(cc.ranks_mod_p(1, 1, 1_000_003), vec![5]);
        assert_eq!(betti(&hex), vec![0, 0, 1]);
    }

    #[test]
    fn torus() {
        // 7-vertex torus
        let faces: Vec<Vec<u32>> = (0..7)
            .flat_map(|i| vec![vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]])
            .collect();
        let t = SimplicialComplex::from_faces(faces);
        assert_eq!(t.f_vector().0, vec![7, 21, 14]);
        assert_eq!(betti(&t), vec![0, 0, 2, 1]);
    }

    #[test]
    fn degree_range_matches_full() {
        let t = sphere_boundary(4);
        let cfg = HomologyConfig::default();
        let full = reduced_betti(&t, &cfg).unwrap().betti;
        for lo in 0..4 {
            for hi in lo..4 {
                let (_, part) = reduced_betti_in_degrees(&t, lo, hi, &cfg).unwrap();
                let expect: Vec<u64> = (lo..=hi).map(|d| full.get(d as isize)).collect();
                assert_eq!(part, expect);
            }
        }
    }

    #[test]
    fn two_primes_agree_and_are_reported() {
        let r = reduced_betti(&sphere_boundary(3), &HomologyConfig::default()).unwrap();
        assert_eq!(r.primes.len(), 2);
        assert_ne!(r.primes[0], r.primes[1]);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["coefficients"], "Q");
        assert_eq!(json["fvector"], serde_json::json!([4, 6, 4]));
    }

    #[test]
    fn face_overflow_is_reported() {
        let err = ChainComplexData::new(&sphere_boundary(6), 3).unwrap_err();
        assert!(matches!(err, Error::FaceOverflow { dim: 0, .. }));
    }

    #[test]
    fn single_prime_acyclicity() {
        assert!(is_acyclic_mod_p(&cx(&[&[0, 1, 2]]), 7, 100).unwrap());
        assert!(!is_acyclic_mod_p(&cx(&[&[0], &[1]]), 7, 100).unwrap());
        assert!(!is_acyclic_mod_p(&SimplicialComplex::empty(), 7, 100).unwrap());
    }

    fn random_complex() -> impl Strategy<Value = SimplicialComplex> {
        prop::collection::vec(prop::collection::btree_set(0u32..9, 1..5), 1..12)
            .prop_map(|faces| SimplicialComplex::from_faces(faces.into_iter().map(|f| f.into_iter())))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn modular_matches_exact(k in random_complex()) {
            let modular = betti(&k);
            let exact = exact::exact_reduced_betti(&k).unwrap();
            prop_assert_eq!(modular, exact.0);
        }

        #[test]
        fn euler_characteristic_matches_f_vector(k in random_complex()) {
            let r = reduced_betti(&k, &HomologyConfig::default()).unwrap();
            prop_assert_eq!(r.betti.reduced_euler(), r.fvector.euler_characteristic() - 1);
        }

        #[test]
        fn boundary_squares_to_zero(k in random_complex()) {
            let cc = ChainComplexData::new(&k, 10_000).unwrap();
            prop_assert!(cc.check_boundary_squares_to_zero(1000, 1));
        }

        #[test]
        fn disjoint_union_adds(k in random_complex(), l in random_complex()) {
            let shifted = l.relabel(|v| v + 100);
            let union = SimplicialComplex::from_faces(
                k.facets().iter().chain(shifted.facets()).map(|f| f.iter().copied()),
            );
            let (a, b, u) = (betti(&k), betti(&shifted), betti(&union));
            let get = |v: &Vec<u64>, i: usize| v.get(i).copied().unwrap_or(0);
            for i in 0..u.len().max(a.len()).max(b.len()) {
                let extra = u64::from(i == 1);
                prop_assert_eq!(get(&u, i), get(&a, i) + get(&b, i) + extra);
            }
        }
    }
}
