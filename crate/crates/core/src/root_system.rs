//! Cartan data, roots, and simple reflections in the co-weight basis.
//!
//! Simple roots follow Bourbaki numbering. The Cartan matrix convention is
//! `A[i][j] = <alpha_i, alpha_j^vee> = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j)`,
//! so the simple coroot `alpha_j^vee` has fundamental co-weight coordinates
//! given by column `j` of `A`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest rank handled by the lattice and complex machinery.
pub const MAX_RANK: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn valid_ranks(self) -> &'static str {
        match self {
            Family::A => "n >= 1",
            Family::B => "n >= 2",
            Family::C => "n >= 3",
            Family::D => "n >= 4",
            Family::E => "n in {6, 7, 8}",
            Family::F => "n = 4",
            Family::G => "n = 2",
        }
    }

    fn accepts(self, rank: usize) -> bool {
        match self {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        }
    }
}

/// An irreducible finite crystallographic root system type such as `E7`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct RootSystemSpec {
    family: Family,
    rank: usize,
}

impl RootSystemSpec {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if family.accepts(rank) {
            Ok(Self { family, rank })
        } else {
            Err(Error::InvalidSpec(
                format!("{}{}", family.letter(), rank),
                format!("type {} requires {}", family.letter(), family.valid_ranks()),
            ))
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Order of the Weyl group.
    pub fn weyl_group_order(&self) -> u64 {
        let n = self.rank as u64;
        let fact = |k: u64| (1..=k).product::<u64>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u64 << n) * fact(n),
            Family::D => (1u64 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1_152,
            Family::G => 12,
        }
    }

    pub fn coxeter_number(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n + 1,
            Family::B | Family::C => 2 * n,
            Family::D => 2 * n - 2,
            Family::E => match n {
                6 => 12,
                7 => 18,
                _ => 30,
            },
            Family::F => 12,
            Family::G => 6,
        }
    }

    /// Edges of the Dynkin diagram (0-based) and squared root lengths.
    fn dynkin(&self) -> (Vec<(usize, usize)>, Vec<i32>) {
        let n = self.rank;
        let path = |len: usize| (0..len.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>();
        match self.family {
            Family::A => (path(n), vec![1; n]),
            Family::B => {
                let mut lens = vec![2; n];
                lens[n - 1] = 1;
                (path(n), lens)
            }
            Family::C => {
                let mut lens = vec![1; n];
                lens[n - 1] = 2;
                (path(n), lens)
            }
            Family::D => {
                let mut edges = path(n - 1);
                edges.push((n - 3, n - 1));
                (edges, vec![1; n])
            }
            Family::E => {
                // 1-3-4-5-6-7-8 with 2 attached to 4.
                let mut edges = vec![(0, 2), (1, 3)];
                edges.extend((2..n - 1).map(|i| (i, i + 1)));
                (edges, vec![1; n])
            }
            Family::F => (path(4), vec![2, 2, 1, 1]),
            Family::G => (path(2), vec![1, 3]),
        }
    }
}

impl fmt::Display for RootSystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for RootSystemSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = |why: &str| Error::InvalidSpec(s.to_string(), why.to_string());
        let mut chars = t.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(bad("expected a family letter A-G followed by a rank, e.g. E7")),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| bad("expected a family letter A-G followed by a rank, e.g. E7"))?;
        RootSystemSpec::new(family, rank)
    }
}

impl TryFrom<String> for RootSystemSpec {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<RootSystemSpec> for String {
    fn from(s: RootSystemSpec) -> String {
        s.to_string()
    }
}

/// Dense square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        Self { n, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self {
            n,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::identity(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut out = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a != 0 {
                    for j in 0..n {
                        out[i * n + j] += a * other.get(k, j);
                    }
                }
            }
        }
        IntMatrix { n, data: out }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> i64 {
        let n = self.n;
        let mut m: Vec<i128> = self.data.iter().map(|&x| x as i128).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if m[k * n + k] == 0 {
                match (k + 1..n).find(|&r| m[r * n + k] != 0) {
                    Some(r) => {
                        for j in 0..n {
                            m.swap(k * n + j, r * n + j);
                        }
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i * n + j] = (m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j]) / prev;
                }
            }
            prev = m[k * n + k];
        }
        (sign * m[n * n - 1]) as i64
    }
}

/// Cartan matrix together with the simple reflections acting on the
/// co-weight lattice.
#[derive(Debug, Clone)]
pub struct CartanData {
    spec: RootSystemSpec,
    cartan: IntMatrix,
    reflections: Vec<IntMatrix>,
}

impl CartanData {
    pub fn new(spec: RootSystemSpec) -> Self {
        let cartan = cartan_matrix(spec);
        let reflections = (1..=spec.rank())
            .map(|j| reflection_matrix(&cartan, j).expect("index in range"))
            .collect();
        Self {
            spec,
            cartan,
            reflections,
        }
    }

    pub fn spec(&self) -> RootSystemSpec {
        self.spec
    }

    pub fn rank(&self) -> usize {
        self.spec.rank()
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    /// `A[i][j]`, 0-based.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.cartan.get(i, j)
    }

    /// Reflection `s_j` (0-based `j`) in the fundamental co-weight basis.
    pub fn reflection(&self, j: usize) -> &IntMatrix {
        &self.reflections[j]
    }

    pub fn reflections(&self) -> &[IntMatrix] {
        &self.reflections
    }

    pub fn roots(&self) -> Result<RootSet> {
        enumerate_roots(&self.cartan)
    }

    /// Index (0-based) of the fundamental co-weight used for the coset
    /// decomposition: the direction of the highest coroot when that is a
    /// fundamental co-weight, otherwise the co-weight with the smallest
    /// orbit (lowest index on ties).
    pub fn decomposition_coweight(&self) -> usize {
        let n = self.rank();
        let dual = self.cartan.transpose();
        if let Ok(coroots) = enumerate_roots(&dual) {
            let highest = coroots
                .roots()
                .iter()
                .max_by_key(|r| r.iter().sum::<i64>())
                .expect("nonempty root set");
            // coroot sum_k c_k alpha_k^vee has co-weight coordinates A c
            let coords = self.cartan.apply(highest);
            let support: Vec<usize> = (0..n).filter(|&j| coords[j] != 0).collect();
            if support.len() == 1 && coords[support[0]] > 0 {
                return support[0];
            }
        }
        let order = self.spec.weyl_group_order();
        (0..n)
            .min_by_key(|&i| order / parabolic_order(&self.cartan, &complement(n, i)))
            .expect("rank >= 1")
    }
}

pub(crate) fn complement(n: usize, i: usize) -> Vec<usize> {
    (0..n).filter(|&j| j != i).collect()
}

/// Order of the parabolic subgroup generated by the given simple
/// reflections (0-based). Each connected component is identified by its
/// rank, root count and whether it is simply laced.
pub fn parabolic_order(cartan: &IntMatrix, gens: &[usize]) -> u64 {
    let mut remaining: Vec<usize> = gens.to_vec();
    let mut order = 1u64;
    while let Some(start) = remaining.pop() {
        let mut comp = vec![start];
        let mut frontier = vec![start];
        while let Some(v) = frontier.pop() {
            let (adj, rest): (Vec<usize>, Vec<usize>) =
                remaining.iter().partition(|&&w| cartan.get(v, w) != 0);
            remaining = rest;
            comp.extend(&adj);
            frontier.extend(adj);
        }
        order *= component_order(cartan, &comp);
    }
    order
}

fn component_order(cartan: &IntMatrix, comp: &[usize]) -> u64 {
    let k = comp.len() as u64;
    let sub = IntMatrix::from_rows(
        &comp
            .iter()
            .map(|&i| comp.iter().map(|&j| cartan.get(i, j)).collect())
            .collect::<Vec<_>>(),
    );
    let roots = enumerate_roots(&sub).expect("parabolic of a finite type is finite").len() as u64;
    let simply_laced = comp
        .iter()
        .all(|&i| comp.iter().all(|&j| i == j || cartan.get(i, j) >= -1));
    let fact = |m: u64| (1..=m).product::<u64>();
    match (k, roots, simply_laced) {
        (_, r, true) if r == k * (k + 1) => fact(k + 1),
        (6, 72, true) => 51_840,
        (7, 126, true) => 2_903_040,
        (8, 240, true) => 696_729_600,
        (_, r, true) if r == 2 * k * (k - 1) => (1 << (k - 1)) * fact(k),
        (2, 12, false) => 12,
        (4, 48, false) => 1_152,
        (_, r, false) if r == 2 * k * k => (1 << k) * fact(k),
        _ => unreachable!("unclassified component of rank {k} with {roots} roots"),
    }
}

/// The standard Cartan matrix of the given type, built from its Dynkin
/// diagram.
pub fn cartan_matrix(spec: RootSystemSpec) -> IntMatrix {
    let n = spec.rank();
    let (edges, lens) = spec.dynkin();
    let mut a = IntMatrix::identity(n);
    for i in 0..n {
        a.set(i, i, 2);
    }
    for (i, j) in edges {
        a.set(i, j, -((lens[i] / lens[j]).max(1) as i64));
        a.set(j, i, -((lens[j] / lens[i]).max(1) as i64));
    }
    a
}

/// `s_j` in the fundamental co-weight basis: the identity with column `j`
/// replaced by `e_j - A[:, j]`. `j` is 1-based.
pub fn reflection_matrix(cartan: &IntMatrix, j: usize) -> Result<IntMatrix> {
    let n = cartan.dim();
    if j == 0 || j > n {
        return Err(Error::IndexOutOfRange { index: j, rank: n });
    }
    let j = j - 1;
    let mut m = IntMatrix::identity(n);
    for k in 0..n {
        let e = i64::from(k == j);
        m.set(k, j, e - cartan.get(k, j));
    }
    Ok(m)
}

/// All roots in simple-root coordinates.
#[derive(Debug, Clone)]
pub struct RootSet {
    roots: Vec<Vec<i64>>,
    index: FxHashMap<Vec<i64>, usize>,
}

impl RootSet {
    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn index_of(&self, root: &[i64]) -> Option<usize> {
        self.index.get(root).copied()
    }

    pub fn is_positive(&self, idx: usize) -> bool {
        self.roots[idx].iter().all(|&c| c >= 0)
    }
}

/// Breadth-first closure of the simple roots under simple reflections.
/// Roots are sorted by height, then lexicographically.
pub fn enumerate_roots(cartan: &IntMatrix) -> Result<RootSet> {
    let n = cartan.dim();
    let cap = 4 * n * n * n + 64;
    let mut seen: FxHashMap<Vec<i64>, ()> = FxHashMap::default();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        seen.insert(e.clone(), ());
        queue.push_back(e);
    }
    while let Some(beta) = queue.pop_front() {
        for j in 0..n {
            let pairing: i64 = (0..n).map(|k| beta[k] * cartan.get(k, j)).sum();
            if pairing == 0 {
                continue;
            }
            let mut img = beta.clone();
            img[j] -= pairing;
            if !seen.contains_key(&img) {
                if seen.len() >= cap {
                    return Err(Error::InfiniteRootSystem(cap));
                }
                seen.insert(img.clone(), ());
                queue.push_back(img);
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = seen.into_keys().collect();
    roots.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| a.cmp(b))
    });
    let index = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
    Ok(RootSet { roots, index })
}
