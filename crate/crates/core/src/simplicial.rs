//! Facet-represented simplicial complexes.
//!
//! A complex is stored as its list of maximal faces, each a sorted vertex
//! array, with the facet list itself sorted. A complex without facets is the
//! complex `{emptyset}`: it has no vertices and its only reduced homology is
//! in degree -1.

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

pub type Vertex = u32;
pub type Simplex = SmallVec<[Vertex; 8]>;

/// A set of vertex IDs stored as a bitset.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VertexSubset {
    bits: Vec<u64>,
}

impl VertexSubset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(universe: usize) -> Self {
        Self {
            bits: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn from_ids<I: IntoIterator<Item = Vertex>>(ids: I) -> Self {
        let mut s = Self::new();
        for v in ids {
            s.insert(v);
        }
        s
    }

    pub fn insert(&mut self, v: Vertex) {
        let w = (v / 64) as usize;
        if w >= self.bits.len() {
            self.bits.resize(w + 1, 0);
        }
        self.bits[w] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: Vertex) {
        if let Some(w) = self.bits.get_mut((v / 64) as usize) {
            *w &= !(1 << (v % 64));
        }
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        self.bits
            .get((v / 64) as usize)
            .is_some_and(|w| w & (1 << (v % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.bits.iter().enumerate().flat_map(|(i, &w)| {
            let base = (i * 64) as Vertex;
            (0..64).filter(move |b| w & (1 << b) != 0).map(move |b| base + b)
        })
    }
}

impl FromIterator<Vertex> for VertexSubset {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        Self::from_ids(iter)
    }
}

/// Face counts by dimension, starting at dimension 0.
#[derive(Debug, Clone, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    /// `sum_k (-1)^k f_k`.
    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct SimplicialComplex {
    facets: Vec<Simplex>,
}

/// `a ⊆ b` for sorted slices.
#[inline]
pub(crate) fn is_subset(a: &[Vertex], b: &[Vertex]) -> bool {
    if a.len() > b.len() {
        return false;
    }
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

/// Keeps the inclusion-maximal faces of a list of sorted simplices and
/// returns them sorted.
pub(crate) fn maximalize(mut faces: Vec<Simplex>) -> Vec<Simplex> {
    faces.retain(|f| !f.is_empty());
    faces.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    faces.dedup();
    if faces.is_empty() {
        return faces;
    }
    let top = faces[0].len();
    if faces.iter().all(|f| f.len() == top) {
        faces.sort_unstable();
        return faces;
    }
    let max_v = faces.iter().flat_map(|f| f.iter()).copied().max().unwrap_or(0) as usize;
    let mut incidence: Vec<Vec<u32>> = vec![Vec::new(); max_v + 1];
    let mut kept: Vec<Simplex> = Vec::with_capacity(faces.len());
    for f in faces {
        if f.len() < top {
            let pivot = *f
                .iter()
                .min_by_key(|&&v| incidence[v as usize].len())
                .expect("nonempty face");
            let covered = incidence[pivot as usize]
                .iter()
                .any(|&k| is_subset(&f, &kept[k as usize]));
            if covered {
                continue;
            }
        }
        let idx = kept.len() as u32;
        for &v in &f {
            incidence[v as usize].push(idx);
        }
        kept.push(f);
    }
    kept.sort_unstable();
    kept
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

impl SimplicialComplex {
    /// The complex `{emptyset}`.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a complex from arbitrary faces; non-maximal faces and
    /// duplicates are dropped.
    pub fn from_faces<I, F>(faces: I) -> Self
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = Vertex>,
    {
        let faces = faces
            .into_iter()
            .map(|f| {
                let mut s: Simplex = f.into_iter().collect();
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect();
        Self {
            facets: maximalize(faces),
        }
    }

    /// Wraps a facet list that is already sorted, deduplicated and maximal.
    pub(crate) fn from_maximal(mut facets: Vec<Simplex>) -> Self {
        debug_assert!(facets.iter().all(|f| f.windows(2).all(|w| w[0] < w[1])));
        facets.sort_unstable();
        Self { facets }
    }

    pub(crate) fn from_candidates(faces: Vec<Simplex>) -> Self {
        Self {
            facets: maximalize(faces),
        }
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        let mut v: Vec<Vertex> = self.facets.iter().flatten().copied().collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn vertex_set(&self) -> VertexSubset {
        self.facets.iter().flatten().copied().collect()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices().len()
    }

    /// True for the complex `{emptyset}`.
    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Dimension, `-1` for `{emptyset}`.
    pub fn dimension(&self) -> isize {
        self.facets.iter().map(|f| f.len() as isize).max().unwrap_or(0) - 1
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    pub fn contains_face(&self, face: &[Vertex]) -> bool {
        let mut f: Simplex = face.iter().copied().collect();
        f.sort_unstable();
        self.facets.iter().any(|g| is_subset(&f, g))
    }

    /// Faces all of whose vertices lie in `subset`.
    pub fn induced(&self, subset: &VertexSubset) -> Self {
        let faces = self
            .facets
            .iter()
            .map(|f| f.iter().copied().filter(|&v| subset.contains(v)).collect())
            .collect();
        Self::from_candidates(faces)
    }

    /// `{sigma : v not in sigma, sigma + v in K}`.
    pub fn link(&self, v: Vertex) -> Self {
        let facets = self
            .facets
            .iter()
            .filter(|f| f.contains(&v))
            .map(|f| f.iter().copied().filter(|&w| w != v).collect::<Simplex>())
            .filter(|f| !f.is_empty())
            .collect();
        // Distinct facets through v stay incomparable after removing v.
        Self::from_maximal(facets)
    }

    /// Closed star `{sigma : sigma + v in K}`.
    pub fn star(&self, v: Vertex) -> Self {
        Self::from_maximal(self.facets.iter().filter(|f| f.contains(&v)).cloned().collect())
    }

    /// `K - W = {sigma - W : sigma in K}`.
    pub fn delete_vertices(&self, removed: &VertexSubset) -> Self {
        let mut unchanged = Vec::with_capacity(self.facets.len());
        let mut changed = Vec::new();
        for f in &self.facets {
            if f.iter().any(|&v| removed.contains(v)) {
                let g: Simplex = f.iter().copied().filter(|&v| !removed.contains(v)).collect();
                if !g.is_empty() {
                    changed.push(g);
                }
            } else {
                unchanged.push(f.clone());
            }
        }
        if changed.is_empty() {
            return Self::from_maximal(unchanged);
        }
        unchanged.extend(changed);
        Self::from_candidates(unchanged)
    }

    /// Components in order of their smallest vertex.
    /// Union-find over vertex positions, returning the index map and the
    /// compressed parent array.
    fn component_roots(&self) -> (FxHashMap<Vertex, usize>, Vec<usize>) {
        let verts = self.vertices();
        let index: FxHashMap<Vertex, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut parent: Vec<usize> = (0..verts.len()).collect();
        for f in &self.facets {
            for v in &f[1..] {
                let a = find(&mut parent, index[&f[0]]);
                let b = find(&mut parent, index[v]);
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        (index, parent)
    }

    pub fn num_components(&self) -> usize {
        let (_, parent) = self.component_roots();
        parent.iter().enumerate().filter(|&(i, &p)| i == p).count()
    }

    pub fn connected_components(&self) -> Vec<SimplicialComplex> {
        let (index, mut parent) = self.component_roots();
        let mut groups: FxHashMap<usize, Vec<Simplex>> = FxHashMap::default();
        for f in &self.facets {
            let r = find(&mut parent, index[&f[0]]);
            groups.entry(r).or_default().push(f.clone());
        }
        let mut comps: Vec<(Vertex, SimplicialComplex)> = groups
            .into_values()
            .map(|fs| {
                let c = Self::from_maximal(fs);
                (c.facets.iter().map(|f| f[0]).min().unwrap(), c)
            })
            .collect();
        comps.sort_by_key(|(m, _)| *m);
        comps.into_iter().map(|(_, c)| c).collect()
    }

    /// All faces of dimension `k`, sorted.
    pub fn faces(&self, k: usize) -> Vec<Simplex> {
        let size = k + 1;
        let mut out: Vec<Simplex> = Vec::new();
        let mut buf: Simplex = SmallVec::new();
        for f in &self.facets {
            if f.len() < size {
                continue;
            }
            if f.len() == size {
                out.push(f.clone());
                continue;
            }
            for_each_subset(f, size, &mut buf, &mut |s| out.push(s.clone()));
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn f_vector(&self) -> FVector {
        let d = self.dimension();
        FVector((0..=d.max(-1)).map(|k| self.faces(k as usize).len() as u64).collect())
    }

    /// Applies a vertex map to every facet. The map must be injective on the
    /// vertices of the complex.
    pub fn relabel<F: Fn(Vertex) -> Vertex>(&self, map: F) -> Self {
        let facets = self
            .facets
            .iter()
            .map(|f| {
                let mut g: Simplex = f.iter().map(|&v| map(v)).collect();
                g.sort_unstable();
                g
            })
            .collect();
        Self::from_maximal(facets)
    }

    /// True iff relabeling `self` by `map` gives exactly `other`.
    pub fn maps_onto<F: Fn(Vertex) -> Vertex>(&self, other: &SimplicialComplex, map: F) -> bool {
        self.facets.len() == other.facets.len() && self.relabel(map) == *other
    }
}

/// Calls `f` on every `size`-subset of the sorted slice `set`, in
/// lexicographic order.
pub(crate) fn for_each_subset<F: FnMut(&Simplex)>(set: &[Vertex], size: usize, buf: &mut Simplex, f: &mut F) {
    fn rec<F: FnMut(&Simplex)>(set: &[Vertex], start: usize, size: usize, buf: &mut Simplex, f: &mut F) {
        if buf.len() == size {
            f(buf);
            return;
        }
        let need = size - buf.len();
        for i in start..=set.len() - need {
            buf.push(set[i]);
            rec(set, i + 1, size, buf, f);
            buf.pop();
        }
    }
    buf.clear();
    if size <= set.len() {
        rec(set, 0, size, buf, f);
    }
}
