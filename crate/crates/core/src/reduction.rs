//! Removable vertices and the orbit-batched reduction of subcomplexes of
//! `K_R`.
//!
//! A vertex is removable when its link is nonempty with vanishing reduced
//! homology; deleting it then leaves the homology unchanged. Vertices of one
//! orbit of `K_R` are pairwise non-adjacent, so all removable vertices of an
//! orbit can be deleted at once.

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::coxeter::VertexTable;
use crate::error::{Error, Result};
use crate::homology::{self, exact, primes::PrimeSource, HomologyConfig};
use crate::par::Execution;
use crate::simplicial::{Simplex, SimplicialComplex, Vertex, VertexSubset};
use crate::weyl::{WeylElement, WeylGroup};

#[derive(Debug, Clone)]
pub struct ReductionConfig {
    /// Prime for the link tests; acyclicity mod `p` implies acyclicity over `Q`.
    pub prime: u64,
    pub face_limit: usize,
    /// Require links to be acyclic over `Z` (exact elimination).
    pub integral_links: bool,
    pub exec: Execution,
}

impl Default for ReductionConfig {
    fn default() -> Self {
        Self {
            prime: PrimeSource::default().next_prime(),
            face_limit: homology::DEFAULT_FACE_LIMIT,
            integral_links: false,
            exec: Execution::Parallel,
        }
    }
}

/// One orbit pass of [`reduce`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PassTrace {
    /// 1-based index of the fundamental co-weight of the orbit.
    pub orbit: usize,
    pub tested: usize,
    pub removed: usize,
    pub vertices: usize,
    pub facets: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub initial_vertices: usize,
    pub initial_facets: usize,
    pub passes: Vec<PassTrace>,
}

/// Vertex -> facet incidence of a complex.
pub struct Incidence<'a> {
    complex: &'a SimplicialComplex,
    facets_of: FxHashMap<Vertex, Vec<u32>>,
}

impl<'a> Incidence<'a> {
    pub fn new(complex: &'a SimplicialComplex) -> Self {
        let mut facets_of: FxHashMap<Vertex, Vec<u32>> = FxHashMap::default();
        for (i, f) in complex.facets().iter().enumerate() {
            for &v in f {
                facets_of.entry(v).or_default().push(i as u32);
            }
        }
        Self { complex, facets_of }
    }

    pub fn link(&self, v: Vertex) -> SimplicialComplex {
        let facets = self
            .facets_of
            .get(&v)
            .map(|ids| {
                ids.iter()
                    .map(|&i| {
                        self.complex.facets()[i as usize]
                            .iter()
                            .copied()
                            .filter(|&w| w != v)
                            .collect::<Simplex>()
                    })
                    .filter(|f| !f.is_empty())
                    .collect()
            })
            .unwrap_or_default();
        SimplicialComplex::from_maximal(facets)
    }
}

/// True iff `link` is nonempty and acyclic.
pub fn link_is_acyclic(link: &SimplicialComplex, cfg: &ReductionConfig) -> Result<bool> {
    if link.is_empty() {
        return Ok(false);
    }
    if cfg.integral_links {
        return exact::integral_acyclic(link, cfg.face_limit);
    }
    let facets = link.facets();
    if facets.len() == 1 {
        return Ok(true);
    }
    // a cone is contractible
    let apex = facets[0].iter().find(|v| facets.iter().all(|f| f.binary_search(v).is_ok()));
    if apex.is_some() {
        return Ok(true);
    }
    homology::is_acyclic_mod_p(link, cfg.prime, cfg.face_limit)
}

pub fn is_removable(k: &SimplicialComplex, v: Vertex, cfg: &ReductionConfig) -> Result<bool> {
    link_is_acyclic(&k.link(v), cfg)
}

/// Vertex permutations induced by a set of group elements, used to test
/// removability once per orbit of the subgroup they generate. Every
/// element must map the complex being reduced onto itself.
#[derive(Debug, Clone, Default)]
pub struct Symmetry {
    perms: Vec<Vec<Vertex>>,
}

impl Symmetry {
    pub fn new(group: &WeylGroup, table: &VertexTable, elements: &[WeylElement]) -> Self {
        let perms = elements.iter().map(|w| vertex_permutation(group, table, w)).collect();
        Self { perms }
    }

    pub fn is_trivial(&self) -> bool {
        self.perms.is_empty()
    }

    /// Whether every generator maps `k` onto itself.
    pub fn preserves(&self, k: &SimplicialComplex) -> bool {
        self.perms.iter().all(|p| k.maps_onto(k, |v| p[v as usize]))
    }

    /// Orbits of the generated group on `vertices`, which must be a union
    /// of orbits. Each orbit is listed with its smallest vertex first.
    fn orbits(&self, vertices: &[Vertex]) -> Vec<Vec<Vertex>> {
        let index: FxHashMap<Vertex, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut parent: Vec<usize> = (0..vertices.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for perm in &self.perms {
            for (i, &v) in vertices.iter().enumerate() {
                let j = index[&perm[v as usize]];
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut groups: FxHashMap<usize, Vec<Vertex>> = FxHashMap::default();
        for (i, &v) in vertices.iter().enumerate() {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(v);
        }
        let mut out: Vec<Vec<Vertex>> = groups.into_values().collect();
        out.sort();
        out
    }
}

/// `v -> w . v` on all vertex IDs, via the co-weight matrix of `w`.
pub fn vertex_permutation(group: &WeylGroup, table: &VertexTable, w: &WeylElement) -> Vec<Vertex> {
    let n = group.rank();
    let m = group.matrix(w);
    (0..table.len() as Vertex)
        .map(|v| {
            let x = table.coweight(v);
            let mut y = [0i8; crate::root_system::MAX_RANK];
            for (j, yj) in y.iter_mut().enumerate().take(n) {
                *yj = (0..n).map(|i| m.get(j, i) * x[i] as i64).sum::<i64>() as i8;
            }
            table.id_of(&y).expect("image is a vertex")
        })
        .collect()
}

/// Removability of the vertices of `k` in one orbit, evaluated against the
/// frozen `k`.
fn removable_in_orbit(
    k: &SimplicialComplex,
    candidates: &[Vertex],
    symmetry: Option<&Symmetry>,
    cfg: &ReductionConfig,
) -> Result<Vec<Vertex>> {
    let incidence = Incidence::new(k);
    let classes: Vec<Vec<Vertex>> = match symmetry {
        Some(s) if !s.is_trivial() => s.orbits(candidates),
        _ => candidates.iter().map(|&v| vec![v]).collect(),
    };
    let verdicts = cfg
        .exec
        .map(&classes, |class| link_is_acyclic(&incidence.link(class[0]), cfg));
    let mut out = Vec::new();
    for (class, ok) in classes.into_iter().zip(verdicts) {
        if ok? {
            out.extend(class);
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Runs one batch pass per vertex orbit of `K_R`, in ascending orbit size,
/// deleting every currently removable vertex of the orbit at once.
pub fn reduce(
    k: &SimplicialComplex,
    table: &VertexTable,
    symmetry: Option<&Symmetry>,
    cfg: &ReductionConfig,
) -> Result<(SimplicialComplex, ReductionTrace)> {
    reduce_in_order(k, table, &table.orbits_by_size(), symmetry, cfg)
}

/// [`reduce`] with an explicit orbit order (0-based orbit indices).
pub fn reduce_in_order(
    k: &SimplicialComplex,
    table: &VertexTable,
    order: &[usize],
    symmetry: Option<&Symmetry>,
    cfg: &ReductionConfig,
) -> Result<(SimplicialComplex, ReductionTrace)> {
    let mut current = k.clone();
    let mut trace = ReductionTrace {
        initial_vertices: k.num_vertices(),
        initial_facets: k.num_facets(),
        passes: Vec::new(),
    };
    for &i in order {
        let range = table.orbit_range(i);
        let candidates: Vec<Vertex> = current.vertices().into_iter().filter(|v| range.contains(v)).collect();
        let removed = removable_in_orbit(&current, &candidates, symmetry, cfg)?;
        if !removed.is_empty() {
            current = current.delete_vertices(&removed.iter().copied().collect());
        }
        log::info!(
            "orbit {}: tested {}, removed {}, {} vertices left",
            i + 1,
            candidates.len(),
            removed.len(),
            current.num_vertices()
        );
        trace.passes.push(PassTrace {
            orbit: i + 1,
            tested: candidates.len(),
            removed: removed.len(),
            vertices: current.num_vertices(),
            facets: current.num_facets(),
        });
    }
    Ok((current, trace))
}

/// Deletes all vertices of `orbit` from `k` after checking that each of
/// their links has vanishing `b~_{degree-1}` and `b~_degree`; the result is
/// only valid for computing `b~_degree`.
pub fn reduce_for_degree(
    k: &SimplicialComplex,
    degree: usize,
    orbit: &VertexSubset,
    symmetry: Option<&Symmetry>,
    cfg: &HomologyConfig,
) -> Result<SimplicialComplex> {
    let candidates: Vec<Vertex> = k.vertices().into_iter().filter(|&v| orbit.contains(v)).collect();
    if candidates.is_empty() {
        return Ok(k.clone());
    }
    let incidence = Incidence::new(k);
    let classes: Vec<Vec<Vertex>> = match symmetry {
        Some(s) if !s.is_trivial() => s.orbits(&candidates),
        _ => candidates.iter().map(|&v| vec![v]).collect(),
    };
    let inner = HomologyConfig {
        exec: Execution::Sequential,
        ..cfg.clone()
    };
    let failures = cfg.exec.map(&classes, |class| -> Result<Option<(Vertex, Vec<usize>)>> {
        let v = class[0];
        let link = incidence.link(v);
        let mut bad = Vec::new();
        if degree == 0 {
            if link.is_empty() {
                bad.push(0);
            }
            let (_, b) = homology::reduced_betti_in_degrees(&link, 0, 0, &inner)?;
            if b[0] != 0 {
                bad.push(0);
            }
        } else {
            let (_, b) = homology::reduced_betti_in_degrees(&link, degree - 1, degree, &inner)?;
            bad.extend((degree - 1..=degree).zip(b).filter(|(_, x)| *x != 0).map(|(d, _)| d));
        }
        bad.dedup();
        Ok((!bad.is_empty()).then_some((v, bad)))
    });
    let mut first: Option<(Vertex, Vec<usize>)> = None;
    for f in failures {
        if let Some((v, d)) = f? {
            if first.as_ref().is_none_or(|(w, _)| v < *w) {
                first = Some((v, d));
            }
        }
    }
    if let Some((vertex, degrees)) = first {
        return Err(Error::DegreePrecondition { vertex, degrees });
    }
    Ok(k.delete_vertices(&candidates.into_iter().collect()))
}
