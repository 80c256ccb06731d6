//! Weyl group enumeration and its actions on roots and co-weights.
//!
//! Two representations are used. [`WeylElement`] stores a permutation of
//! the roots and is meant for individual elements (coset representatives,
//! reflections). Whole groups are never materialized for the large types:
//! [`ChamberWalk`] streams every element exactly once as the columns of its
//! co-weight matrix, walking a canonical spanning tree of the regular orbit
//! of `rho^vee = sum_i omega_i`.

use std::collections::VecDeque;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::par::Execution;
use crate::root_system::{parabolic_order, CartanData, IntMatrix, RootSet, RootSystemSpec, MAX_RANK};

/// A vector of the co-weight lattice in fundamental co-weight coordinates.
/// Coordinates of every vertex of a Coxeter complex of rank at most 8 lie
/// in `[-6, 6]`.
pub type Coweight = [i8; MAX_RANK];

pub fn unit_coweight(i: usize) -> Coweight {
    let mut e = [0i8; MAX_RANK];
    e[i] = 1;
    e
}

/// Packs a co-weight into a hash key.
#[inline]
pub fn pack(v: &Coweight) -> u64 {
    u64::from_le_bytes(v.map(|x| x as u8))
}

/// Compact copy of the Cartan matrix used by the hot loops.
#[derive(Debug, Clone)]
pub(crate) struct Kernel {
    pub n: usize,
    /// `a[k][j] = A[k][j]`.
    pub a: [[i8; MAX_RANK]; MAX_RANK],
    /// Rows `k` with `A[k][j] != 0`, per column `j`.
    pub support: Vec<Vec<usize>>,
}

impl Kernel {
    pub fn new(data: &CartanData) -> Result<Self> {
        let n = data.rank();
        if n > MAX_RANK {
            return Err(Error::InvalidSpec(
                data.spec().to_string(),
                format!("ranks above {MAX_RANK} are not supported by the complex machinery"),
            ));
        }
        let mut a = [[0i8; MAX_RANK]; MAX_RANK];
        let mut support = vec![Vec::new(); n];
        for k in 0..n {
            for j in 0..n {
                a[k][j] = data.entry(k, j) as i8;
                if a[k][j] != 0 {
                    support[j].push(k);
                }
            }
        }
        Ok(Self { n, a, support })
    }

    /// `s_j x = x - x_j A[:, j]`.
    #[inline]
    pub fn reflect(&self, j: usize, x: &mut Coweight) {
        let xj = x[j];
        if xj != 0 {
            for &k in &self.support[j] {
                x[k] -= xj * self.a[k][j];
            }
        }
    }

    /// Dual action of `s_j` on `u in GF(2)^n` (bit `k` is coordinate `k`):
    /// `u |-> M_j^T u mod 2`.
    #[inline]
    pub fn dual_reflect(&self, j: usize, u: u8) -> u8 {
        let mut bit = (u >> j) & 1;
        for &k in &self.support[j] {
            if k != j && (self.a[k][j] & 1) != 0 {
                bit ^= (u >> k) & 1;
            }
        }
        (u & !(1 << j)) | (bit << j)
    }
}

/// One element `w` of a (parabolic subgroup of a) Weyl group, given by the
/// columns `w . omega_i` of its co-weight matrix.
#[derive(Debug, Clone)]
pub struct Chamber {
    pub length: u32,
    cols: [Coweight; MAX_RANK],
    /// `w . rho^vee`.
    point: Coweight,
    /// Columns of `M(w^{-1})` and `w^{-1} . rho^vee`, kept when the walk
    /// tracks inverses.
    inv_cols: [Coweight; MAX_RANK],
    inv_point: Coweight,
}

impl Chamber {
    fn identity(n: usize) -> Self {
        let mut cols = [[0i8; MAX_RANK]; MAX_RANK];
        let mut point = [0i8; MAX_RANK];
        for i in 0..n {
            cols[i][i] = 1;
            point[i] = 1;
        }
        Self {
            length: 0,
            cols,
            point,
            inv_cols: cols,
            inv_point: point,
        }
    }

    /// `w . omega_i`.
    #[inline]
    pub fn vertex(&self, i: usize) -> &Coweight {
        &self.cols[i]
    }

    /// Pattern `M(w)^T u mod 2`: bit `i` tells whether `w . omega_i` lies in
    /// the vertex subset defined by `u`.
    #[inline]
    pub fn pattern(&self, n: usize, u: u8) -> u8 {
        let mut out = 0u8;
        for i in 0..n {
            let mut parity = 0u8;
            for k in 0..n {
                parity ^= (u >> k) & (self.cols[i][k] as u8) & 1;
            }
            out |= parity << i;
        }
        out
    }

    /// Bitmask of right descents `{j : l(w s_j) < l(w)}`; only valid when
    /// the walk tracks inverses.
    #[inline]
    pub fn right_descents(&self, n: usize) -> u8 {
        (0..n).filter(|&j| self.inv_point[j] < 0).fold(0, |m, j| m | (1 << j))
    }

    /// The co-weight matrix of `w`.
    pub fn matrix(&self, n: usize) -> IntMatrix {
        let mut m = IntMatrix::identity(n);
        for i in 0..n {
            for k in 0..n {
                m.set(k, i, self.cols[i][k] as i64);
            }
        }
        m
    }
}

/// Streams the elements of the parabolic subgroup `W_J` exactly once.
///
/// The canonical parent of `z = w . rho^vee` is `s_k z` for the smallest
/// `k in J` with `z_k < 0`, so children of `y` are `s_j y` for `j in J`
/// with `y_j > 0` and `(s_j y)_k >= 0` for all `k in J`, `k < j`.
#[derive(Debug, Clone)]
pub struct ChamberWalk {
    kernel: Kernel,
    gens: Vec<usize>,
    track_inverse: bool,
}

impl ChamberWalk {
    pub fn new(data: &CartanData) -> Result<Self> {
        let n = data.rank();
        Self::parabolic(data, &(0..n).collect::<Vec<_>>())
    }

    /// Walk of the parabolic subgroup generated by the given (0-based)
    /// simple reflections.
    pub fn parabolic(data: &CartanData, gens: &[usize]) -> Result<Self> {
        let kernel = Kernel::new(data)?;
        let mut gens = gens.to_vec();
        gens.sort_unstable();
        gens.dedup();
        Ok(Self {
            kernel,
            gens,
            track_inverse: false,
        })
    }

    pub fn with_inverse(mut self) -> Self {
        self.track_inverse = true;
        self
    }

    pub fn rank(&self) -> usize {
        self.kernel.n
    }

    fn children(&self, y: &Chamber, out: &mut Vec<Chamber>) {
        for (pos, &j) in self.gens.iter().enumerate() {
            if y.point[j] <= 0 {
                continue;
            }
            let mut z = y.point;
            self.kernel.reflect(j, &mut z);
            if self.gens[..pos].iter().any(|&k| z[k] < 0) {
                continue;
            }
            out.push(self.step(y, j, z));
        }
    }

    fn step(&self, y: &Chamber, j: usize, point: Coweight) -> Chamber {
        let n = self.kernel.n;
        let mut c = y.clone();
        c.length += 1;
        c.point = point;
        for i in 0..n {
            self.kernel.reflect(j, &mut c.cols[i]);
        }
        if self.track_inverse {
            // M(w'^{-1} s_j): only column j changes.
            let old = c.inv_cols[j];
            let mut new = [0i8; MAX_RANK];
            for &k in &self.kernel.support[j] {
                let a = self.kernel.a[k][j];
                for t in 0..n {
                    new[t] -= a * c.inv_cols[k][t];
                }
            }
            for t in 0..n {
                new[t] += old[t];
                c.inv_point[t] += new[t] - old[t];
            }
            c.inv_cols[j] = new;
        }
        c
    }

    fn dfs<F: FnMut(&Chamber)>(&self, root: Chamber, f: &mut F) {
        let mut stack = vec![root];
        let mut kids = Vec::with_capacity(MAX_RANK);
        while let Some(c) = stack.pop() {
            f(&c);
            kids.clear();
            self.children(&c, &mut kids);
            stack.append(&mut kids);
        }
    }

    /// Visits every element sequentially.
    pub fn for_each<F: FnMut(&Chamber)>(&self, mut f: F) {
        self.dfs(Chamber::identity(self.kernel.n), &mut f);
    }

    /// Folds over every element, splitting the tree into independent
    /// subtrees when running in parallel.
    pub fn fold<T, I, V, R>(&self, exec: Execution, init: I, visit: V, reduce: R) -> T
    where
        T: Send,
        I: Fn() -> T + Sync + Send,
        V: Fn(&mut T, &Chamber) + Sync + Send,
        R: Fn(T, T) -> T + Sync + Send,
    {
        let root = Chamber::identity(self.kernel.n);
        if !exec.is_parallel() {
            let mut acc = init();
            self.dfs(root, &mut |c| visit(&mut acc, c));
            return acc;
        }
        // Expand breadth-first until the frontier is wide enough.
        let target = 64 * exec.threads().max(1);
        let mut acc = init();
        let mut frontier = vec![root];
        let mut kids = Vec::new();
        while !frontier.is_empty() && frontier.len() < target {
            let mut next = Vec::new();
            for c in frontier.drain(..) {
                visit(&mut acc, &c);
                kids.clear();
                self.children(&c, &mut kids);
                next.append(&mut kids);
            }
            frontier = next;
        }
        let rest = exec.map_reduce(
            frontier,
            |c| {
                let mut local = init();
                self.dfs(c, &mut |x| visit(&mut local, x));
                local
            },
            &init,
            &reduce,
        );
        reduce(acc, rest)
    }

    pub fn count(&self, exec: Execution) -> u64 {
        self.fold(exec, || 0u64, |acc, _| *acc += 1, |a, b| a + b)
    }
}

/// An element of the Weyl group as a permutation of the roots, with the
/// word it was built from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    perm: Vec<u16>,
    word: Vec<u8>,
}

impl WeylElement {
    pub fn perm(&self) -> &[u16] {
        &self.perm
    }

    /// Word in the simple reflections (0-based indices), leftmost factor
    /// first. Not necessarily reduced for products.
    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| p as usize == i)
    }

    /// `self * other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement {
            perm: other.perm.iter().map(|&b| self.perm[b as usize]).collect(),
            word: self.word.iter().chain(&other.word).copied().collect(),
        }
    }

    pub fn inverse(&self) -> WeylElement {
        let mut perm = vec![0u16; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            perm[p as usize] = i as u16;
        }
        WeylElement {
            perm,
            word: self.word.iter().rev().copied().collect(),
        }
    }
}

/// Roots, generators and helpers for one Weyl group.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    data: CartanData,
    kernel: Kernel,
    roots: RootSet,
    simple: Vec<u16>,
    generators: Vec<WeylElement>,
}

/// Largest group [`WeylGroup::elements`] will materialize.
pub const MATERIALIZE_LIMIT: u64 = 200_000;

impl WeylGroup {
    pub fn new(spec: RootSystemSpec) -> Result<Self> {
        let data = CartanData::new(spec);
        let kernel = Kernel::new(&data)?;
        let roots = data.roots()?;
        let n = spec.rank();
        let simple: Vec<u16> = (0..n)
            .map(|i| {
                let mut e = vec![0i64; n];
                e[i] = 1;
                roots.index_of(&e).expect("simple root present") as u16
            })
            .collect();
        let generators = (0..n)
            .map(|j| {
                let perm = roots
                    .roots()
                    .iter()
                    .map(|beta| {
                        let pairing: i64 = (0..n).map(|k| beta[k] * data.entry(k, j)).sum();
                        let mut img = beta.clone();
                        img[j] -= pairing;
                        roots.index_of(&img).expect("roots closed under reflections") as u16
                    })
                    .collect();
                WeylElement {
                    perm,
                    word: vec![j as u8],
                }
            })
            .collect();
        Ok(Self {
            data,
            kernel,
            roots,
            simple,
            generators,
        })
    }

    pub fn spec(&self) -> RootSystemSpec {
        self.data.spec()
    }

    pub fn rank(&self) -> usize {
        self.data.rank()
    }

    pub fn cartan(&self) -> &CartanData {
        &self.data
    }

    pub fn roots(&self) -> &RootSet {
        &self.roots
    }

    pub fn order(&self) -> u64 {
        self.spec().weyl_group_order()
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement {
            perm: (0..self.roots.len() as u16).collect(),
            word: Vec::new(),
        }
    }

    /// Simple reflection `s_j`, 0-based.
    pub fn generator(&self, j: usize) -> &WeylElement {
        &self.generators[j]
    }

    pub fn from_word(&self, word: &[u8]) -> WeylElement {
        word.iter()
            .fold(self.identity(), |acc, &j| acc.compose(&self.generators[j as usize]))
    }

    /// Co-weight matrix of `w`: entry `(j, i)` is the `i`-th simple root
    /// coordinate of `w^{-1} alpha_j`.
    pub fn matrix(&self, w: &WeylElement) -> IntMatrix {
        let n = self.rank();
        let inv = w.inverse();
        let mut m = IntMatrix::identity(n);
        for j in 0..n {
            let img = &self.roots.roots()[inv.perm[self.simple[j] as usize] as usize];
            for i in 0..n {
                m.set(j, i, img[i]);
            }
        }
        m
    }

    /// `w . x` for a co-weight `x`.
    pub fn act(&self, w: &WeylElement, x: &Coweight) -> Coweight {
        let mut v = *x;
        for &j in w.word.iter().rev() {
            self.kernel.reflect(j as usize, &mut v);
        }
        v
    }

    /// Dual action `u |-> M(w)^{-T} u mod 2` on `GF(2)^n`.
    pub fn dual_act(&self, w: &WeylElement, u: u8) -> u8 {
        w.word
            .iter()
            .rev()
            .fold(u, |acc, &j| self.kernel.dual_reflect(j as usize, acc))
    }

    /// `l(w)`: the number of positive roots sent to negative roots.
    pub fn length(&self, w: &WeylElement) -> usize {
        (0..self.roots.len())
            .filter(|&b| self.roots.is_positive(b) && !self.roots.is_positive(w.perm[b] as usize))
            .count()
    }

    /// Every element, by breadth-first closure over the generators.
    /// Refuses groups larger than [`MATERIALIZE_LIMIT`].
    pub fn elements(&self) -> Result<Vec<WeylElement>> {
        let order = self.order();
        if order > MATERIALIZE_LIMIT {
            return Err(Error::BudgetExceeded {
                what: format!("materializing W({})", self.spec()),
                needed: order * (self.roots.len() as u64) * 2,
                budget: MATERIALIZE_LIMIT * (self.roots.len() as u64) * 2,
            });
        }
        let mut seen: FxHashMap<Vec<u16>, ()> = FxHashMap::default();
        let mut out = vec![self.identity()];
        seen.insert(out[0].perm.clone(), ());
        let mut head = 0;
        while head < out.len() {
            let w = out[head].clone();
            head += 1;
            for g in &self.generators {
                let next = g.compose(&w);
                if seen.insert(next.perm.clone(), ()).is_none() {
                    out.push(next);
                }
            }
        }
        Ok(out)
    }

    /// Orbit of `omega_i` (0-based `i`) in lexicographic order.
    pub fn coweight_orbit(&self, i: usize) -> Result<Vec<Coweight>> {
        let n = self.rank();
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i + 1, rank: n });
        }
        Ok(orbit_of(&self.kernel, unit_coweight(i)))
    }

    /// Generators `{s_j : j != i}` of the stabilizer of `omega_i`, and the
    /// subgroup order.
    pub fn stabilizer_parabolic(&self, i: usize) -> (Vec<usize>, u64) {
        let gens: Vec<usize> = (0..self.rank()).filter(|&j| j != i).collect();
        let order = parabolic_order(self.data.cartan(), &gens);
        (gens, order)
    }

    /// One minimal-length representative per coset of the standard
    /// parabolic subgroup `W_J`, found by breadth-first search on the orbit
    /// of `sum_{i not in J} omega_i`.
    pub fn coset_representatives(&self, subgroup: &[usize]) -> CosetTable {
        let n = self.rank();
        let mut start = [0i8; MAX_RANK];
        for i in (0..n).filter(|i| !subgroup.contains(i)) {
            start[i] = 1;
        }
        let mut index: FxHashMap<u64, usize> = FxHashMap::default();
        let mut points = vec![start];
        let mut reps = vec![self.identity()];
        index.insert(pack(&start), 0);
        let mut head = 0;
        while head < points.len() {
            let x = points[head];
            let w = reps[head].clone();
            head += 1;
            for j in 0..n {
                let mut y = x;
                self.kernel.reflect(j, &mut y);
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry(pack(&y)) {
                    e.insert(points.len());
                    points.push(y);
                    reps.push(self.generators[j].compose(&w));
                }
            }
        }
        let mut subgroup = subgroup.to_vec();
        subgroup.sort_unstable();
        CosetTable {
            subgroup_generators: subgroup,
            representatives: reps,
            points,
        }
    }
}

/// Breadth-first orbit of `x` under the simple reflections, sorted.
pub(crate) fn orbit_of(kernel: &Kernel, x: Coweight) -> Vec<Coweight> {
    let mut seen: FxHashMap<u64, ()> = FxHashMap::default();
    let mut queue = VecDeque::from([x]);
    let mut out = vec![x];
    seen.insert(pack(&x), ());
    while let Some(v) = queue.pop_front() {
        for j in 0..kernel.n {
            let mut y = v;
            kernel.reflect(j, &mut y);
            if seen.insert(pack(&y), ()).is_none() {
                queue.push_back(y);
                out.push(y);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Minimal coset representatives of a standard parabolic subgroup.
#[derive(Debug, Clone)]
pub struct CosetTable {
    pub subgroup_generators: Vec<usize>,
    /// In breadth-first (non-decreasing length) order; the first is the
    /// identity.
    pub representatives: Vec<WeylElement>,
    /// `representatives[k] . omega_J`, pairwise distinct.
    pub points: Vec<Coweight>,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn group(s: &str) -> WeylGroup {
        WeylGroup::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn chamber_walk_counts_group_order() {
        for s in ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2", "F4", "E6"] {
            let data = CartanData::new(s.parse().unwrap());
            let walk = ChamberWalk::new(&data).unwrap();
            let expect = data.spec().weyl_group_order();
            assert_eq!(walk.count(Execution::Sequential), expect, "{s}");
            assert_eq!(walk.count(Execution::Parallel), expect, "{s}");
        }
    }

    #[test]
    fn chamber_walk_visits_each_chamber_once() {
        let data = CartanData::new("F4".parse().unwrap());
        let mut seen = std::collections::HashSet::new();
        ChamberWalk::new(&data).unwrap().for_each(|c| {
            assert!(seen.insert(c.cols));
        });
        assert_eq!(seen.len(), 1152);
    }

    #[test]
    fn parabolic_walk_counts() {
        let data = CartanData::new("E7".parse().unwrap());
        let gens: Vec<usize> = (1..7).collect();
        let walk = ChamberWalk::parabolic(&data, &gens).unwrap();
        assert_eq!(walk.count(Execution::Sequential), 23_040);
    }

    #[test]
    fn materialized_group_orders() {
        assert_eq!(group("A2").elements().unwrap().len(), 6);
        assert_eq!(group("G2").elements().unwrap().len(), 12);
        assert_eq!(group("F4").elements().unwrap().len(), 1152);
        assert!(matches!(group("E7").elements(), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn a2_orbit_by_brute_force() {
        let g = group("A2");
        let orbit = g.coweight_orbit(0).unwrap();
        let mut brute: Vec<Coweight> = g
            .elements()
            .unwrap()
            .iter()
            .map(|w| g.act(w, &unit_coweight(0)))
            .collect();
        brute.sort_unstable();
        brute.dedup();
        assert_eq!(orbit, brute);
        assert_eq!(orbit.len(), 3);
    }

    #[test]
    fn orbit_stabilizer() {
        for s in ["A3", "B3", "C3", "D4", "G2", "F4", "E6", "E7"] {
            let g = group(s);
            for i in 0..g.rank() {
                let (gens, order) = g.stabilizer_parabolic(i);
                assert_eq!(gens.len(), g.rank() - 1);
                let orbit = g.coweight_orbit(i).unwrap().len() as u64;
                assert_eq!(orbit * order, g.order(), "{s} omega_{}", i + 1);
            }
        }
        let a2 = group("A2");
        assert_eq!(a2.stabilizer_parabolic(0), (vec![1], 2));
    }

    #[test]
    fn vertex_totals_e7_e8() {
        let total = |s: &str| {
            let g = group(s);
            (0..g.rank()).map(|i| g.coweight_orbit(i).unwrap().len()).sum::<usize>()
        };
        assert_eq!(total("E7"), 17_642);
        assert_eq!(total("E8"), 881_760);
    }

    #[test]
    fn coset_tables() {
        let a2 = group("A2");
        let t = a2.coset_representatives(&[1]);
        assert_eq!(t.len(), 3);
        assert!(t.representatives[0].is_identity());

        let g2 = group("G2");
        assert_eq!(g2.coset_representatives(&[1]).len(), 6);

        let e7 = group("E7");
        let t = e7.coset_representatives(&(1..7).collect::<Vec<_>>());
        assert_eq!(t.len(), 126);
        let mut pts = t.points.clone();
        pts.sort_unstable();
        pts.dedup();
        assert_eq!(pts.len(), 126);
        for (w, p) in t.representatives.iter().zip(&t.points) {
            assert_eq!(&e7.act(w, &unit_coweight(0)), p);
            // breadth-first discovery yields minimal length representatives
            assert_eq!(e7.length(w), w.word().len());
        }

        let e8 = group("E8");
        assert_eq!(e8.coset_representatives(&(0..7).collect::<Vec<_>>()).len(), 240);
    }

    #[test]
    fn coset_table_general_parabolic() {
        let b3 = group("B3");
        let t = b3.coset_representatives(&[0]);
        assert_eq!(t.len() as u64, b3.order() / 2);
    }

    #[test]
    fn simply_transitive_on_chambers() {
        let g = group("B3");
        let rho = [1i8, 1, 1, 0, 0, 0, 0, 0];
        let mut imgs: Vec<Coweight> = g.elements().unwrap().iter().map(|w| g.act(w, &rho)).collect();
        imgs.sort_unstable();
        imgs.dedup();
        assert_eq!(imgs.len() as u64, g.order());
    }

    #[test]
    fn inverse_tracking_gives_right_descents() {
        let data = CartanData::new("B3".parse().unwrap());
        let g = WeylGroup::new(data.spec()).unwrap();
        let walk = ChamberWalk::new(&data).unwrap().with_inverse();
        let elements = g.elements().unwrap();
        let by_matrix: FxHashMap<Vec<Vec<i64>>, &WeylElement> =
            elements.iter().map(|w| (g.matrix(w).rows(), w)).collect();
        walk.for_each(|c| {
            let w = by_matrix[&c.matrix(3).rows()];
            assert_eq!(c.length as usize, g.length(w));
            for j in 0..3 {
                let ws = w.compose(g.generator(j));
                let descent = g.length(&ws) < g.length(w);
                assert_eq!(c.right_descents(3) >> j & 1 == 1, descent);
            }
        });
    }

    proptest! {
        #[test]
        fn permutation_and_matrix_agree(word in proptest::collection::vec(0u8..4, 0..24)) {
            let g = group("F4");
            let w = g.from_word(&word);
            let by_gens = word.iter().fold(IntMatrix::identity(4), |acc, &j| {
                acc.mul(g.cartan().reflection(j as usize))
            });
            prop_assert_eq!(g.matrix(&w), by_gens.clone());
            let x: Coweight = [1, -2, 0, 3, 0, 0, 0, 0];
            let img = g.act(&w, &x);
            let direct = by_gens.apply(&x[..4].iter().map(|&v| v as i64).collect::<Vec<_>>());
            prop_assert_eq!(img[..4].iter().map(|&v| v as i64).collect::<Vec<_>>(), direct);
        }

        #[test]
        fn dual_action_is_inverse_transpose(word in proptest::collection::vec(0u8..4, 0..16), u in 1u8..16) {
            let g = group("C4");
            let w = g.from_word(&word);
            let m = g.matrix(&g.from_word(&word).inverse());
            // M(w)^{-T} = M(w^{-1})^T
            let uv: Vec<i64> = (0..4).map(|k| ((u >> k) & 1) as i64).collect();
            let img: Vec<i64> = (0..4).map(|i| (0..4).map(|k| m.get(k, i) * uv[k]).sum::<i64>().rem_euclid(2)).collect();
            let expect = img.iter().enumerate().fold(0u8, |acc, (i, &b)| acc | ((b as u8) << i));
            prop_assert_eq!(g.dual_act(&w, u), expect);
        }
    }
}
