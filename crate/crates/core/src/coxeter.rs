//! The Coxeter complex `K_R`, its coset pieces `K^g = g . K_omega`, and
//! transport of induced subcomplexes between pieces.
//!
//! Vertex IDs are canonical: orbits of `omega_1, ..., omega_n` are numbered
//! consecutively in index order, and inside an orbit vectors are numbered in
//! lexicographic order. Since every chamber has exactly one vertex in each
//! orbit, a facet listed orbit by orbit is already sorted.

use std::ops::Range;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::par::Execution;
use crate::root_system::{complement, CartanData, RootSystemSpec, MAX_RANK};
use crate::simplicial::{Simplex, SimplicialComplex, Vertex, VertexSubset};
use crate::weyl::{orbit_of, pack, unit_coweight, ChamberWalk, CosetTable, Coweight, Kernel, WeylElement, WeylGroup};

/// Default memory budget for materialized facet lists (4 GiB).
pub const DEFAULT_MEMORY_BUDGET: u64 = 4 << 30;

/// All vertices of `K_R` with canonical IDs.
#[derive(Debug, Clone)]
pub struct VertexTable {
    spec: RootSystemSpec,
    coords: Vec<Coweight>,
    offsets: Vec<u32>,
    lookup: FxHashMap<u64, u32>,
}

impl VertexTable {
    pub fn new(data: &CartanData) -> Result<Self> {
        let kernel = Kernel::new(data)?;
        let n = data.rank();
        let mut coords = Vec::new();
        let mut offsets = vec![0u32];
        for i in 0..n {
            coords.extend(orbit_of(&kernel, unit_coweight(i)));
            offsets.push(coords.len() as u32);
        }
        let lookup = coords.iter().enumerate().map(|(id, v)| (pack(v), id as u32)).collect();
        Ok(Self {
            spec: data.spec(),
            coords,
            offsets,
            lookup,
        })
    }

    pub fn spec(&self) -> RootSystemSpec {
        self.spec
    }

    pub fn rank(&self) -> usize {
        self.spec.rank()
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    #[inline]
    pub fn id_of(&self, v: &Coweight) -> Option<Vertex> {
        self.lookup.get(&pack(v)).copied()
    }

    #[inline]
    pub(crate) fn id_unchecked(&self, v: &Coweight) -> Vertex {
        self.lookup[&pack(v)]
    }

    pub fn coweight(&self, id: Vertex) -> &Coweight {
        &self.coords[id as usize]
    }

    /// Orbit index (0-based) of a vertex.
    pub fn orbit_of(&self, id: Vertex) -> usize {
        self.offsets.partition_point(|&o| o <= id) - 1
    }

    pub fn orbit_range(&self, i: usize) -> Range<Vertex> {
        self.offsets[i]..self.offsets[i + 1]
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.offsets.windows(2).map(|w| (w[1] - w[0]) as usize).collect()
    }

    /// Orbit indices sorted by ascending orbit size, ties by index.
    pub fn orbits_by_size(&self) -> Vec<usize> {
        let sizes = self.orbit_sizes();
        let mut order: Vec<usize> = (0..sizes.len()).collect();
        order.sort_by_key(|&i| (sizes[i], i));
        order
    }

    /// Image of a vertex under a group element.
    pub fn act(&self, group: &WeylGroup, w: &WeylElement, id: Vertex) -> Vertex {
        self.id_unchecked(&group.act(w, self.coweight(id)))
    }

    pub fn stats(&self) -> Vec<(usize, usize)> {
        self.orbit_sizes().into_iter().enumerate().collect()
    }
}

/// `K_R` with its facets stored as a flat array, `rank` IDs per facet.
#[derive(Debug, Clone)]
pub struct CoxeterComplex {
    table: VertexTable,
    facets: Vec<Vertex>,
}

/// Bytes needed to hold `count` facets of the given rank.
pub fn facet_bytes(count: u64, rank: usize) -> u64 {
    // flat storage plus the sort buffer
    count * (rank as u64 * 4 + MAX_RANK as u64 * 4)
}

impl CoxeterComplex {
    /// Builds `K_R` by emitting `{id(w . omega_1), ..., id(w . omega_n)}` for
    /// every group element `w`.
    pub fn build(spec: RootSystemSpec, budget: u64, exec: Execution) -> Result<Self> {
        let data = CartanData::new(spec);
        let needed = facet_bytes(spec.weyl_group_order(), spec.rank());
        if needed > budget {
            return Err(Error::BudgetExceeded {
                what: format!("monolithic Coxeter complex of {spec}; use the piecewise path"),
                needed,
                budget,
            });
        }
        let table = VertexTable::new(&data)?;
        let walk = ChamberWalk::new(&data)?;
        let n = spec.rank();
        let mut rows: Vec<[Vertex; MAX_RANK]> = walk.fold(
            exec,
            Vec::new,
            |acc, c| {
                let mut f = [0; MAX_RANK];
                for (i, slot) in f.iter_mut().enumerate().take(n) {
                    *slot = table.id_unchecked(c.vertex(i));
                }
                acc.push(f);
            },
            |mut a, mut b| {
                a.append(&mut b);
                a
            },
        );
        rows.sort_unstable();
        let facets = rows.iter().flat_map(|f| f[..n].iter().copied()).collect();
        Ok(Self { table, facets })
    }

    pub fn table(&self) -> &VertexTable {
        &self.table
    }

    pub fn rank(&self) -> usize {
        self.table.rank()
    }

    pub fn num_vertices(&self) -> usize {
        self.table.len()
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len() / self.rank()
    }

    pub fn facet(&self, k: usize) -> &[Vertex] {
        let n = self.rank();
        &self.facets[k * n..(k + 1) * n]
    }

    pub fn facets(&self) -> impl Iterator<Item = &[Vertex]> {
        self.facets.chunks(self.rank())
    }

    pub fn to_simplicial(&self) -> SimplicialComplex {
        SimplicialComplex::from_maximal(self.facets().map(Simplex::from_slice).collect())
    }

    /// Induced subcomplex `K_S`, by intersecting every chamber with `S`.
    pub fn induced(&self, subset: &VertexSubset) -> SimplicialComplex {
        let faces = self
            .facets()
            .map(|f| f.iter().copied().filter(|&v| subset.contains(v)).collect())
            .collect();
        SimplicialComplex::from_candidates(faces)
    }
}

/// Whether the face of type `supp(pattern)` of a chamber with this pattern
/// is maximal in the induced subcomplex: every `s_j` with `j` outside the
/// support must fix the pattern.
pub(crate) fn pattern_is_maximal(kernel: &Kernel, pattern: u8) -> bool {
    (0..kernel.n)
        .filter(|&j| pattern >> j & 1 == 0)
        .all(|j| kernel.dual_reflect(j, pattern) == pattern)
}

/// Builds the induced subcomplex `K_S` for the row vector `u` by streaming
/// chambers, without materializing `K_R` or re-maximalizing.
///
/// For a chamber `w` with pattern `p = M(w)^T u mod 2`, the face
/// `{w . omega_i : i in supp(p)}` is a facet of `K_S` iff `W_I` fixes `p`
/// (`I` the complement of the support); it is emitted once, from the
/// minimal representative of `w W_I`.
pub fn induced_streaming(
    data: &CartanData,
    table: &VertexTable,
    u: u8,
    budget: u64,
    exec: Execution,
) -> Result<SimplicialComplex> {
    let kernel = Kernel::new(data)?;
    let n = data.rank();
    let full: u8 = ((1u16 << n) - 1) as u8;
    let maximal: Vec<bool> = (0..=full).map(|p| p != 0 && pattern_is_maximal(&kernel, p)).collect();
    let walk = ChamberWalk::new(data)?.with_inverse();
    let limit = budget / (MAX_RANK as u64 * 4 + 32);
    let faces: Vec<Simplex> = walk.fold(
        exec,
        Vec::new,
        |acc, c| {
            let p = c.pattern(n, u);
            if !maximal[p as usize] || c.right_descents(n) & !p & full != 0 {
                return;
            }
            if acc.len() as u64 > limit {
                return;
            }
            acc.push((0..n).filter(|&i| p >> i & 1 == 1).map(|i| table.id_unchecked(c.vertex(i))).collect());
        },
        |mut a, mut b| {
            a.append(&mut b);
            a
        },
    );
    if faces.len() as u64 > limit {
        return Err(Error::BudgetExceeded {
            what: format!("facets of an induced subcomplex of {}", data.spec()),
            needed: faces.len() as u64 * (MAX_RANK as u64 * 4 + 32),
            budget,
        });
    }
    Ok(SimplicialComplex::from_maximal(faces))
}

/// The decomposition `K_R = disjoint union of K^g` over `W / H_omega`.
#[derive(Debug, Clone)]
pub struct Decomposition {
    coweight: usize,
    cosets: CosetTable,
    /// Facets of `K_omega`, flat.
    base_facets: Vec<Vertex>,
    /// Sorted vertex set of `K_omega`.
    base_vertices: Vec<Vertex>,
    rank: usize,
}

/// One piece `K^g`.
#[derive(Debug, Clone)]
pub struct ChamberPiece {
    pub coset: usize,
    pub coset_rep: WeylElement,
    facets: Vec<Vertex>,
    rank: usize,
}

impl ChamberPiece {
    pub fn num_facets(&self) -> usize {
        self.facets.len() / self.rank
    }

    pub fn facets(&self) -> impl Iterator<Item = &[Vertex]> {
        self.facets.chunks(self.rank)
    }

    pub fn to_simplicial(&self) -> SimplicialComplex {
        SimplicialComplex::from_maximal(self.facets().map(Simplex::from_slice).collect())
    }

    /// `K^g_S`, the part of `K_S` inside this piece.
    pub fn induced(&self, subset: &VertexSubset) -> SimplicialComplex {
        let faces = self
            .facets()
            .map(|f| f.iter().copied().filter(|&v| subset.contains(v)).collect())
            .collect();
        SimplicialComplex::from_candidates(faces)
    }
}

impl Decomposition {
    /// Decomposition along `omega_i` (0-based); `K_omega` is built from the
    /// chambers of the stabilizer `H_omega`.
    pub fn new(group: &WeylGroup, table: &VertexTable, coweight: usize) -> Result<Self> {
        let n = group.rank();
        if coweight >= n {
            return Err(Error::IndexOutOfRange {
                index: coweight + 1,
                rank: n,
            });
        }
        let gens = complement(n, coweight);
        let cosets = group.coset_representatives(&gens);
        let walk = ChamberWalk::parabolic(group.cartan(), &gens)?;
        let mut base_facets = Vec::new();
        walk.for_each(|c| {
            for i in 0..n {
                base_facets.push(table.id_unchecked(c.vertex(i)));
            }
        });
        let mut base_vertices = base_facets.clone();
        base_vertices.sort_unstable();
        base_vertices.dedup();
        Ok(Self {
            coweight,
            cosets,
            base_facets,
            base_vertices,
            rank: n,
        })
    }

    /// Decomposition along the default co-weight of the type.
    pub fn default_for(group: &WeylGroup, table: &VertexTable) -> Result<Self> {
        Self::new(group, table, group.cartan().decomposition_coweight())
    }

    pub fn coweight(&self) -> usize {
        self.coweight
    }

    pub fn cosets(&self) -> &CosetTable {
        &self.cosets
    }

    pub fn num_pieces(&self) -> usize {
        self.cosets.len()
    }

    pub fn piece_size(&self) -> usize {
        self.base_facets.len() / self.rank
    }

    pub fn base_vertices(&self) -> &[Vertex] {
        &self.base_vertices
    }

    /// Images of the vertices of `K_omega` under `w`, aligned with
    /// [`Self::base_vertices`].
    fn vertex_images(&self, group: &WeylGroup, table: &VertexTable, w: &WeylElement) -> Vec<Vertex> {
        self.base_vertices.iter().map(|&v| table.act(group, w, v)).collect()
    }

    /// `K^g = g . K_omega` for the coset with the given index.
    pub fn piece(&self, group: &WeylGroup, table: &VertexTable, coset: usize) -> ChamberPiece {
        let g = &self.cosets.representatives[coset];
        let images = self.vertex_images(group, table, g);
        let facets = self
            .base_facets
            .iter()
            .map(|v| images[self.base_vertices.binary_search(v).expect("base vertex")])
            .collect();
        ChamberPiece {
            coset,
            coset_rep: g.clone(),
            facets,
            rank: self.rank,
        }
    }

    /// `V^g_S`: vertices of the piece lying in `S`, sorted.
    pub fn piece_vertices_in(
        &self,
        group: &WeylGroup,
        table: &VertexTable,
        coset: usize,
        subset: &VertexSubset,
    ) -> Vec<Vertex> {
        let g = &self.cosets.representatives[coset];
        let mut out: Vec<Vertex> = self
            .vertex_images(group, table, g)
            .into_iter()
            .filter(|&v| subset.contains(v))
            .collect();
        out.sort_unstable();
        out
    }
}

/// Outcome of [`transport_subcomplex`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Transport {
    Accepted(SimplicialComplex),
    /// `g . V^h_S != V^{gh}_S`; the target must be built directly.
    Rejected,
}

/// If `g` maps the vertex set of `source` (some `K^h_S`) exactly onto
/// `target` (`V^{gh}_S`, sorted), returns `g . source`, which then equals
/// `K^{gh}_S`.
pub fn transport_subcomplex(
    group: &WeylGroup,
    table: &VertexTable,
    g: &WeylElement,
    source: &SimplicialComplex,
    target: &[Vertex],
) -> Transport {
    let verts = source.vertices();
    if verts.len() != target.len() {
        return Transport::Rejected;
    }
    let images: FxHashMap<Vertex, Vertex> = verts.iter().map(|&v| (v, table.act(group, g, v))).collect();
    let mut imgs: Vec<Vertex> = images.values().copied().collect();
    imgs.sort_unstable();
    if imgs != target {
        return Transport::Rejected;
    }
    Transport::Accepted(source.relabel(|v| images[&v]))
}

/// True iff relabeling `k1` by `g` yields exactly `k2`.
pub fn isomorphic_via(
    group: &WeylGroup,
    table: &VertexTable,
    g: &WeylElement,
    k1: &SimplicialComplex,
    k2: &SimplicialComplex,
) -> bool {
    k1.maps_onto(k2, |v| table.act(group, g, v))
}

/// Counters from a piecewise build.
#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize)]
pub struct PieceStats {
    pub pieces: usize,
    pub built_directly: usize,
    pub transported: usize,
    pub rejected: usize,
    pub candidate_faces: usize,
}

/// Builds `K_S` piece by piece. Pieces whose pulled-back pattern
/// `M(g)^T u` was already seen are obtained by transporting the first such
/// piece along `g' g^{-1}`; the rest are built directly from `K^g`.
pub fn induced_piecewise(
    group: &WeylGroup,
    table: &VertexTable,
    decomposition: &Decomposition,
    u: u8,
    subset: &VertexSubset,
    exec: Execution,
) -> (SimplicialComplex, PieceStats) {
    let reps = &decomposition.cosets().representatives;
    let patterns: Vec<u8> = reps.iter().map(|g| group.dual_act(&g.inverse(), u)).collect();
    let mut groups: FxHashMap<u8, Vec<usize>> = FxHashMap::default();
    for (c, &p) in patterns.iter().enumerate() {
        groups.entry(p).or_default().push(c);
    }
    let mut groups: Vec<Vec<usize>> = groups.into_values().collect();
    groups.sort();

    let per_group = exec.map(&groups, |members| {
        let mut stats = PieceStats::default();
        let first = members[0];
        let source = decomposition.piece(group, table, first).induced(subset);
        stats.built_directly += 1;
        let mut faces: Vec<Simplex> = source.facets().to_vec();
        let back = reps[first].inverse();
        for &c in &members[1..] {
            let target = decomposition.piece_vertices_in(group, table, c, subset);
            let g = reps[c].compose(&back);
            match transport_subcomplex(group, table, &g, &source, &target) {
                Transport::Accepted(k) => {
                    stats.transported += 1;
                    faces.extend_from_slice(k.facets());
                }
                Transport::Rejected => {
                    stats.rejected += 1;
                    stats.built_directly += 1;
                    faces.extend_from_slice(decomposition.piece(group, table, c).induced(subset).facets());
                }
            }
        }
        (faces, stats)
    });
    let mut stats = PieceStats {
        pieces: reps.len(),
        ..Default::default()
    };
    let mut faces = Vec::new();
    for (f, s) in per_group {
        stats.built_directly += s.built_directly;
        stats.transported += s.transported;
        stats.rejected += s.rejected;
        faces.extend(f);
    }
    stats.candidate_faces = faces.len();
    (SimplicialComplex::from_candidates(faces), stats)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(s: &str) -> (WeylGroup, VertexTable) {
        let g = WeylGroup::new(s.parse().unwrap()).unwrap();
        let t = VertexTable::new(g.cartan()).unwrap();
        (g, t)
    }

    fn build(s: &str) -> CoxeterComplex {
        CoxeterComplex::build(s.parse().unwrap(), DEFAULT_MEMORY_BUDGET, Execution::Parallel).unwrap()
    }

    fn subset_for(table: &VertexTable, u: u8) -> VertexSubset {
        let n = table.rank();
        (0..table.len() as Vertex)
            .filter(|&v| {
                let c = table.coweight(v);
                (0..n).map(|k| (u >> k & 1) as i32 * c[k] as i32).sum::<i32>().rem_euclid(2) == 1
            })
            .collect()
    }

    #[test]
    fn a1_is_two_points() {
        let k = build("A1");
        assert_eq!(k.num_vertices(), 2);
        assert_eq!(k.num_facets(), 2);
        assert_eq!(k.to_simplicial().dimension(), 0);
    }

    #[test]
    fn a2_is_a_hexagon() {
        let k = build("A2");
        let s = k.to_simplicial();
        assert_eq!(s.num_vertices(), 6);
        assert_eq!(s.num_facets(), 6);
        assert_eq!(s.f_vector().0, vec![6, 6]);
        assert!(s.vertices().iter().all(|&v| s.link(v).num_vertices() == 2));
        // brute force: every chamber w gives the edge {w omega_1, w omega_2}
        let (g, t) = setup("A2");
        let brute = SimplicialComplex::from_faces(g.elements().unwrap().iter().map(|w| {
            vec![
                t.id_of(&g.act(w, &unit_coweight(0))).unwrap(),
                t.id_of(&g.act(w, &unit_coweight(1))).unwrap(),
            ]
        }));
        assert_eq!(brute, s);
    }

    #[test]
    fn facets_meet_every_orbit_once() {
        for s in ["B3", "D4", "F4"] {
            let k = build(s);
            let t = k.table();
            assert_eq!(k.num_facets() as u64, k.table().spec().weyl_group_order());
            for f in k.facets() {
                for (i, &v) in f.iter().enumerate() {
                    assert_eq!(t.orbit_of(v), i);
                }
            }
            // no two vertices of one orbit are adjacent: implied by the above
            let total: usize = t.orbit_sizes().iter().sum();
            assert_eq!(total, k.num_vertices());
        }
    }

    #[test]
    fn budget_refusal() {
        let e8 = "E8".parse().unwrap();
        let err = CoxeterComplex::build(e8, DEFAULT_MEMORY_BUDGET, Execution::Sequential).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
        assert!(err.to_string().contains("piecewise"));
    }

    #[test]
    fn orbit_lookup() {
        let (_, t) = setup("E6");
        for i in 0..6 {
            let r = t.orbit_range(i);
            assert_eq!(t.orbit_of(r.start), i);
            assert_eq!(t.orbit_of(r.end - 1), i);
            assert_eq!(t.coweight(r.start)[..6].len(), 6);
        }
        assert_eq!(t.id_of(&unit_coweight(2)).map(|v| t.orbit_of(v)), Some(2));
    }

    #[test]
    fn pieces_partition_the_facets() {
        for s in ["A2", "B3", "F4", "E6"] {
            let (g, t) = setup(s);
            let k = build(s);
            let d = Decomposition::default_for(&g, &t).unwrap();
            let mut all: Vec<Vec<Vertex>> = Vec::new();
            for c in 0..d.num_pieces() {
                let p = d.piece(&g, &t, c);
                assert_eq!(p.num_facets(), d.piece_size());
                all.extend(p.facets().map(|f| f.to_vec()));
            }
            assert_eq!(all.len(), k.num_facets(), "{s}");
            all.sort();
            let n = all.len();
            all.dedup();
            assert_eq!(all.len(), n, "pieces overlap in {s}");
            let mut direct: Vec<Vec<Vertex>> = k.facets().map(|f| f.to_vec()).collect();
            direct.sort();
            assert_eq!(all, direct);
        }
    }

    #[test]
    fn identity_piece_of_a2() {
        let (g, t) = setup("A2");
        let d = Decomposition::new(&g, &t, 0).unwrap();
        assert_eq!(d.num_pieces(), 3);
        let p = d.piece(&g, &t, 0).to_simplicial();
        assert_eq!(p.num_facets(), 2);
        let omega1 = t.id_of(&unit_coweight(0)).unwrap();
        assert!(p.facets().iter().all(|f| f.contains(&omega1)));
    }

    #[test]
    fn identity_transport_accepts() {
        let (g, t) = setup("F4");
        let d = Decomposition::default_for(&g, &t).unwrap();
        let s = subset_for(&t, 0b0101);
        let piece = d.piece(&g, &t, 3).induced(&s);
        let target = piece.vertices();
        assert_eq!(
            transport_subcomplex(&g, &t, &g.identity(), &piece, &target),
            Transport::Accepted(piece.clone())
        );
    }

    #[test]
    fn transport_from_identity_piece_matches_direct_build_f4() {
        let (g, t) = setup("F4");
        let d = Decomposition::default_for(&g, &t).unwrap();
        for u in 1u8..16 {
            let s = subset_for(&t, u);
            let base = d.piece(&g, &t, 0).induced(&s);
            for c in 0..d.num_pieces() {
                let rep = &d.cosets().representatives[c];
                let target = d.piece_vertices_in(&g, &t, c, &s);
                let direct = d.piece(&g, &t, c).induced(&s);
                if let Transport::Accepted(k) = transport_subcomplex(&g, &t, rep, &base, &target) {
                    assert_eq!(k, direct, "u={u:04b} coset {c}");
                }
            }
        }
    }

    #[test]
    fn transport_rejects_somewhere_in_e6() {
        let (g, t) = setup("E6");
        let d = Decomposition::default_for(&g, &t).unwrap();
        let s = subset_for(&t, 0b000001);
        let base = d.piece(&g, &t, 0).induced(&s);
        let mut rejected = 0;
        let mut accepted = 0;
        for c in 0..d.num_pieces() {
            let rep = &d.cosets().representatives[c];
            let target = d.piece_vertices_in(&g, &t, c, &s);
            match transport_subcomplex(&g, &t, rep, &base, &target) {
                Transport::Accepted(k) => {
                    accepted += 1;
                    assert_eq!(k, d.piece(&g, &t, c).induced(&s));
                }
                Transport::Rejected => rejected += 1,
            }
        }
        assert!(rejected > 0 && accepted > 0, "accepted {accepted} rejected {rejected}");
    }

    #[test]
    fn three_constructions_of_induced_subcomplexes_agree() {
        for s in ["A3", "B3", "C3", "D4", "G2", "F4", "E6"] {
            let (g, t) = setup(s);
            let k = build(s);
            let d = Decomposition::default_for(&g, &t).unwrap();
            let n = g.rank();
            for u in 1u8..(1 << n) {
                let sub = subset_for(&t, u);
                let direct = k.induced(&sub);
                let streamed =
                    induced_streaming(g.cartan(), &t, u, DEFAULT_MEMORY_BUDGET, Execution::Parallel).unwrap();
                assert_eq!(streamed, direct, "{s} u={u:b}");
                if n <= 4 || u % 7 == 1 {
                    let (piecewise, stats) = induced_piecewise(&g, &t, &d, u, &sub, Execution::Parallel);
                    assert_eq!(piecewise, direct, "{s} u={u:b}");
                    assert_eq!(stats.pieces, d.num_pieces());
                    assert_eq!(stats.transported + stats.built_directly, d.num_pieces());
                }
            }
        }
    }

    #[test]
    fn induced_commutes_with_group_action() {
        let (g, t) = setup("B3");
        let k = build("B3").to_simplicial();
        for w in g.elements().unwrap().iter().step_by(5) {
            for u in 1u8..8 {
                let s = subset_for(&t, u);
                let moved = g.dual_act(w, u);
                let ks = k.induced(&s);
                let kgs = k.induced(&subset_for(&t, moved));
                assert!(isomorphic_via(&g, &t, w, &ks, &kgs));
            }
        }
    }
}
