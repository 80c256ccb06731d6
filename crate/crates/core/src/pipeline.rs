//! End-to-end Betti numbers of the real toric variety `X_R`: one induced
//! subcomplex per orbit of nonzero row elements, reduced and fed to the
//! homology engine, then assembled with the orbit sizes.

use std::path::PathBuf;
use std::sync::OnceLock;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::cache::CacheDir;
use crate::char_row::{orbit_transversal, reference_label, row_orbits, stabilizer_generators, CharacteristicMatrix, RowElement, RowOrbit};
use crate::coxeter::{
    facet_bytes, induced_piecewise, isomorphic_via, induced_streaming, CoxeterComplex, Decomposition, PieceStats, VertexTable,
    DEFAULT_MEMORY_BUDGET,
};
use crate::error::{Error, Result};
use crate::homology::{self, reduced_betti, BettiVector, HomologyConfig};
use crate::par::Execution;
use crate::reduction::{reduce, ReductionConfig, ReductionTrace, Symmetry};
use crate::root_system::{parabolic_order, Family, RootSystemSpec};
use crate::sequences::{binomial, closed_form_vector};
use crate::simplicial::SimplicialComplex;
use crate::weyl::WeylGroup;

/// Rank above which induced subcomplexes are built piece by piece.
pub const DEFAULT_PIECEWISE_ABOVE_RANK: usize = 6;

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub memory_budget: u64,
    /// `None` seeds the prime generator from OS entropy.
    pub prime_seed: Option<u64>,
    pub piecewise_above_rank: usize,
    pub cache_dir: Option<PathBuf>,
    pub integral_links: bool,
    pub face_limit: usize,
    pub exec: Execution,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            memory_budget: DEFAULT_MEMORY_BUDGET,
            prime_seed: Some(homology::primes::DEFAULT_PRIME_SEED),
            piecewise_above_rank: DEFAULT_PIECEWISE_ABOVE_RANK,
            cache_dir: None,
            integral_links: false,
            face_limit: homology::DEFAULT_FACE_LIMIT,
            exec: Execution::Parallel,
        }
    }
}

impl PipelineConfig {
    pub fn homology(&self) -> HomologyConfig {
        HomologyConfig {
            prime_seed: self.prime_seed,
            face_limit: self.face_limit,
            exec: self.exec,
        }
    }

    pub fn reduction(&self) -> ReductionConfig {
        let mut primes = self.homology().prime_source();
        ReductionConfig {
            prime: primes.next_prime(),
            face_limit: self.face_limit,
            integral_links: self.integral_links,
            exec: self.exec,
        }
    }
}

/// How an induced subcomplex was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum BuildMethod {
    Monolithic,
    Piecewise {
        coweight: usize,
        pieces: usize,
        built_directly: usize,
        transported: usize,
        rejected: usize,
        candidate_faces: usize,
    },
    Streaming,
    Cached,
}

/// Shared per-type data, built lazily.
pub struct Context {
    cfg: PipelineConfig,
    group: WeylGroup,
    table: VertexTable,
    matrix: CharacteristicMatrix,
    coxeter: OnceLock<CoxeterComplex>,
    decomposition: OnceLock<Decomposition>,
    cache: Option<CacheDir>,
}

impl Context {
    pub fn new(spec: RootSystemSpec, cfg: PipelineConfig) -> Result<Self> {
        let group = WeylGroup::new(spec)?;
        let table = VertexTable::new(group.cartan())?;
        let matrix = CharacteristicMatrix::new(&table);
        let cache = cfg.cache_dir.clone().map(CacheDir::new);
        Ok(Self {
            cfg,
            group,
            table,
            matrix,
            coxeter: OnceLock::new(),
            decomposition: OnceLock::new(),
            cache,
        })
    }

    pub fn spec(&self) -> RootSystemSpec {
        self.group.spec()
    }

    pub fn config(&self) -> &PipelineConfig {
        &self.cfg
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn table(&self) -> &VertexTable {
        &self.table
    }

    pub fn matrix(&self) -> &CharacteristicMatrix {
        &self.matrix
    }

    pub fn cache(&self) -> Option<&CacheDir> {
        self.cache.as_ref()
    }

    pub fn coxeter(&self) -> Result<&CoxeterComplex> {
        if let Some(k) = self.coxeter.get() {
            return Ok(k);
        }
        let k = CoxeterComplex::build(self.spec(), self.cfg.memory_budget, self.cfg.exec)?;
        Ok(self.coxeter.get_or_init(|| k))
    }

    pub fn decomposition(&self) -> Result<&Decomposition> {
        if let Some(d) = self.decomposition.get() {
            return Ok(d);
        }
        let d = Decomposition::default_for(&self.group, &self.table)?;
        Ok(self.decomposition.get_or_init(|| d))
    }

    pub fn row(&self, bits: &str) -> Result<RowElement> {
        let u = RowElement::parse(bits, self.group.rank())?;
        if u.is_zero() {
            return Err(Error::InvalidSpec(bits.into(), "the zero row has no subcomplex".into()));
        }
        Ok(u)
    }

    /// Bytes the piecewise build is expected to hold at its peak.
    fn piecewise_bytes(&self) -> u64 {
        let n = self.group.rank();
        let cosets = self.table.orbit_sizes()[self.group.cartan().decomposition_coweight()] as u64;
        let piece = self.spec().weyl_group_order() / cosets;
        // base piece, one relabeled piece per worker, and the candidate union
        // (measured at |W|/12 faces for E7 and |W|/32 for E8, two copies
        // while maximalizing)
        let simplex = std::mem::size_of::<crate::simplicial::Simplex>() as u64;
        facet_bytes(piece, n) * (2 + self.cfg.exec.threads() as u64) + self.spec().weyl_group_order() / 24 * 2 * simplex
    }

    /// `K_S` for a nonzero row element: monolithic up to the piecewise
    /// rank, piecewise above it, streaming when the piecewise peak does not
    /// fit the memory budget.
    pub fn induced(&self, u: RowElement) -> Result<(SimplicialComplex, BuildMethod)> {
        let path = self
            .cache
            .as_ref()
            .map(|c| c.path(self.spec(), "complex", Some(&u.to_string()), "txt"));
        if let (Some(c), Some(p)) = (&self.cache, &path) {
            if let Some(k) = c.load_complex(p, &self.table)? {
                return Ok((k, BuildMethod::Cached));
            }
        }
        let (k, method) = if self.group.rank() <= self.cfg.piecewise_above_rank {
            let subset = self.matrix.subset_for_row(u);
            (self.coxeter()?.induced(&subset), BuildMethod::Monolithic)
        } else if self.piecewise_bytes() <= self.cfg.memory_budget {
            let subset = self.matrix.subset_for_row(u);
            let d = self.decomposition()?;
            let (k, stats) = induced_piecewise(&self.group, &self.table, d, u.bits(), &subset, self.cfg.exec);
            let PieceStats {
                pieces,
                built_directly,
                transported,
                rejected,
                candidate_faces,
            } = stats;
            (
                k,
                BuildMethod::Piecewise {
                    coweight: d.coweight() + 1,
                    pieces,
                    built_directly,
                    transported,
                    rejected,
                    candidate_faces,
                },
            )
        } else {
            let k = induced_streaming(
                self.group.cartan(),
                &self.table,
                u.bits(),
                self.cfg.memory_budget,
                self.cfg.exec,
            )?;
            (k, BuildMethod::Streaming)
        };
        if let Some(p) = &path {
            crate::cache::write_complex(p, &self.table, &k)?;
        }
        Ok((k, method))
    }

    /// `K^_S`, the reduction of `K_S`, with its trace.
    pub fn reduced(&self, u: RowElement, k: &SimplicialComplex) -> Result<(SimplicialComplex, ReductionTrace, bool)> {
        let paths = self.cache.as_ref().map(|c| {
            (
                c.path(self.spec(), "reduced", Some(&u.to_string()), "txt"),
                c.path(self.spec(), "trace", Some(&u.to_string()), "json"),
            )
        });
        if let (Some(c), Some((pk, pt))) = (&self.cache, &paths) {
            if let (Some(hat), Some(trace)) = (c.load_complex(pk, &self.table)?, c.load_json(pt)?) {
                return Ok((hat, trace, true));
            }
        }
        let sym = Symmetry::new(&self.group, &self.table, &stabilizer_generators(&self.group, u));
        let (hat, trace) = reduce(k, &self.table, Some(&sym), &self.cfg.reduction())?;
        if let (Some(c), Some((pk, pt))) = (&self.cache, &paths) {
            crate::cache::write_complex(pk, &self.table, &hat)?;
            c.store_json(pt, &trace)?;
        }
        Ok((hat, trace, false))
    }
}

/// Result for one orbit of row elements.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitBetti {
    pub representative: String,
    pub orbit_size: usize,
    pub subset_size: usize,
    pub label: Option<String>,
    pub build: BuildMethod,
    pub complex_vertices: usize,
    pub complex_facets: usize,
    pub reduced_vertices: usize,
    pub reduced_facets: usize,
    pub trace: ReductionTrace,
    /// `b~_{-1}, b~_0, ...` of `K_S`.
    pub reduced_betti: BettiVector,
    pub primes: Vec<u64>,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub primes: Vec<u64>,
    pub cache_hits: usize,
    pub seconds: f64,
}

/// Schema version of [`BettiReport`] JSON.
pub const REPORT_SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BettiReport {
    pub schema: u32,
    pub spec: String,
    pub orbits: Vec<OrbitBetti>,
    /// `beta_0, beta_1, ...` of `X_R` over `Q`.
    pub betti: Vec<u128>,
    pub euler_characteristic: i128,
    pub provenance: Provenance,
}

/// `beta_0 = 1` and `beta_k = sum |orbit| b~_{k-1}(K_S)` for `k >= 1`.
pub fn assemble(orbits: &[(usize, &BettiVector)]) -> Vec<u128> {
    let mut beta = vec![1u128];
    for (size, b) in orbits {
        for (k, bk) in b.nonzero() {
            let idx = (k + 1) as usize;
            assert!(idx >= 1, "a nonempty K_S has b~_-1 = 0");
            if beta.len() <= idx {
                beta.resize(idx + 1, 0);
            }
            beta[idx] += *size as u128 * bk as u128;
        }
    }
    beta
}

pub fn alternating_sum(v: &[u128]) -> i128 {
    v.iter()
        .enumerate()
        .map(|(k, &b)| if k % 2 == 0 { b as i128 } else { -(b as i128) })
        .sum()
}

/// Computes one orbit: build, reduce, homology.
pub fn orbit_betti(ctx: &Context, orbit: &RowOrbit) -> Result<(OrbitBetti, usize)> {
    let u = orbit.representative;
    let start = Instant::now();
    let checkpoint = ctx
        .cache()
        .map(|c| c.path(ctx.spec(), "betti", Some(&u.to_string()), "json"));
    if let (Some(c), Some(p)) = (ctx.cache(), &checkpoint) {
        if let Some(done) = c.load_json::<OrbitBetti>(p)? {
            return Ok((done, 1));
        }
    }
    let (k, build) = ctx.induced(u)?;
    let mut hits = usize::from(build == BuildMethod::Cached);
    log::info!(
        "{} K_S for {u}: {} vertices, {} facets ({:?})",
        ctx.spec(),
        k.num_vertices(),
        k.num_facets(),
        build
    );
    let (hat, trace, cached) = ctx.reduced(u, &k)?;
    hits += usize::from(cached);
    let report = reduced_betti(&hat, &ctx.config().homology())?;
    let subset_size = ctx.matrix().subset_size(u);
    let out = OrbitBetti {
        representative: u.to_string(),
        orbit_size: orbit.size,
        subset_size,
        label: reference_label(ctx.table(), subset_size).map(String::from),
        build,
        complex_vertices: k.num_vertices(),
        complex_facets: k.num_facets(),
        reduced_vertices: hat.num_vertices(),
        reduced_facets: hat.num_facets(),
        trace,
        reduced_betti: report.betti,
        primes: report.primes,
        seconds: start.elapsed().as_secs_f64(),
    };
    if let (Some(c), Some(p)) = (ctx.cache(), &checkpoint) {
        c.store_json(p, &out)?;
    }
    Ok((out, hits))
}

/// Rational Betti numbers of `X_R`.
pub fn betti_of_real_toric(spec: RootSystemSpec, cfg: &PipelineConfig) -> Result<BettiReport> {
    let ctx = Context::new(spec, cfg.clone())?;
    betti_with_context(&ctx)
}

pub fn betti_with_context(ctx: &Context) -> Result<BettiReport> {
    let start = Instant::now();
    let mut orbits = Vec::new();
    let mut hits = 0;
    // orbits run one after another so that only one K_S is held at a time
    for o in row_orbits(ctx.group()) {
        let (r, h) = orbit_betti(ctx, &o)?;
        hits += h;
        orbits.push(r);
    }
    let pairs: Vec<(usize, &BettiVector)> = orbits.iter().map(|o| (o.orbit_size, &o.reduced_betti)).collect();
    let betti = assemble(&pairs);
    let mut primes: Vec<u64> = orbits.iter().flat_map(|o| o.primes.iter().copied()).collect();
    primes.sort_unstable();
    primes.dedup();
    Ok(BettiReport {
        schema: REPORT_SCHEMA,
        spec: ctx.spec().to_string(),
        euler_characteristic: alternating_sum(&betti),
        orbits,
        betti,
        provenance: Provenance {
            primes,
            cache_hits: hits,
            seconds: start.elapsed().as_secs_f64(),
        },
    })
}

/// f-vector `(f_{-1}, f_0, ..., f_{n-1})` of `K_R` from parabolic orders:
/// faces of type `T` correspond to cosets of `W_{[n] - T}`.
pub fn coxeter_f_vector(spec: RootSystemSpec) -> Vec<u128> {
    let data = crate::CartanData::new(spec);
    let n = spec.rank();
    let order = spec.weyl_group_order() as u128;
    let mut f = vec![0u128; n + 1];
    for t in 0u32..(1 << n) {
        let rest: Vec<usize> = (0..n).filter(|&i| t >> i & 1 == 0).collect();
        f[t.count_ones() as usize] += order / parabolic_order(data.cartan(), &rest) as u128;
    }
    f
}

/// `Z_2`-Betti numbers of `X_R`: the h-vector of `K_R`.
pub fn z2_betti(spec: RootSystemSpec) -> Vec<u128> {
    let f = coxeter_f_vector(spec);
    let n = spec.rank() as i64;
    (0..=n)
        .map(|i| {
            let h: i128 = (0..=i)
                .map(|j| {
                    let sign = if (i - j) % 2 == 0 { 1 } else { -1 };
                    sign * binomial(n - j, i - j) * f[j as usize] as i128
                })
                .sum();
            u128::try_from(h).expect("h-vector entries are nonnegative")
        })
        .collect()
}

/// Euler characteristic of `X_R` from the `Z_2` channel.
pub fn euler_characteristic(spec: RootSystemSpec) -> i128 {
    alternating_sum(&z2_betti(spec))
}

/// Fails with both values when the report's alternating sum differs from
/// the independently computed Euler characteristic.
pub fn euler_check(report: &BettiReport) -> Result<()> {
    let spec: RootSystemSpec = report.spec.parse()?;
    let expected = euler_characteristic(spec);
    let got = alternating_sum(&report.betti);
    if got != expected {
        return Err(Error::Mismatch(format!(
            "{spec}: alternating sum of Betti numbers is {got}, Euler characteristic is {expected}"
        )));
    }
    Ok(())
}

/// Known Betti numbers for the exceptional types.
pub fn reference_betti(spec: RootSystemSpec) -> Option<Vec<u128>> {
    let v: &[u128] = match (spec.family(), spec.rank()) {
        (Family::G, 2) => &[1, 9],
        (Family::F, 4) => &[1, 57, 264],
        (Family::E, 6) => &[1, 36, 1323, 4392],
        (Family::E, 7) => &[1, 63, 8127, 131_041, 122_976],
        (Family::E, 8) => &[1, 120, 103_815, 6_925_200, 23_932_800],
        _ => return None,
    };
    Some(v.to_vec())
}

/// Expected Betti numbers: closed forms for the classical types, the
/// reference table for the exceptional ones.
pub fn expected_betti(spec: RootSystemSpec) -> Option<(Vec<u128>, &'static str)> {
    if let Some(v) = closed_form_vector(spec) {
        let v = v.into_iter().map(|x| u128::try_from(x).expect("nonnegative")).collect();
        return Some((v, "closed form"));
    }
    reference_betti(spec).map(|v| (v, "reference table"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub spec: String,
    pub computed: Vec<u128>,
    pub expected: Option<Vec<u128>>,
    pub expected_source: Option<String>,
    pub euler_characteristic: i128,
    pub euler_expected: i128,
    pub ok: bool,
}

/// Runs the pipeline and compares with the expected values and the Euler
/// characteristic.
pub fn verify(spec: RootSystemSpec, cfg: &PipelineConfig) -> Result<(BettiReport, VerifyReport)> {
    let report = betti_of_real_toric(spec, cfg)?;
    let expected = expected_betti(spec);
    let euler_expected = euler_characteristic(spec);
    let matches = expected.as_ref().is_none_or(|(v, _)| *v == report.betti);
    let v = VerifyReport {
        schema: REPORT_SCHEMA,
        spec: spec.to_string(),
        computed: report.betti.clone(),
        expected: expected.as_ref().map(|(v, _)| v.clone()),
        expected_source: expected.map(|(_, s)| s.to_string()),
        euler_characteristic: report.euler_characteristic,
        euler_expected,
        ok: matches && report.euler_characteristic == euler_expected,
    };
    Ok((report, v))
}

/// Component isomorphism `K^_u` realized by a simple reflection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentIsomorphism {
    /// 1-based index of the simple reflection.
    pub reflection: usize,
    /// Orbit member `u'` for which `s_i` swaps the two components of
    /// `g . K^_u`, where `g . u = u'`.
    pub member: Option<String>,
}

/// Structural data of `K_S` and its reduction for one orbit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub representative: String,
    pub label: Option<String>,
    pub subset_size: usize,
    pub complex_vertices: usize,
    pub complex_facets: usize,
    pub complex_components: usize,
    pub reduced_vertices: usize,
    /// Connected components of `K^_S`.
    pub components: usize,
    pub pure: bool,
    /// f-vector of one component of `K^_S`, from dimension 0.
    pub component_f_vector: Vec<u64>,
    /// Whether all components have the same f-vector.
    pub components_alike: bool,
    pub isomorphism: Option<ComponentIsomorphism>,
}

/// Searches the orbit of `u` for a member on which `s_i` swaps the two
/// components `c0, c1` of `K^_u` transported to that member.
pub fn component_isomorphism(
    group: &WeylGroup,
    table: &VertexTable,
    u: RowElement,
    reflection: usize,
    c0: &SimplicialComplex,
    c1: &SimplicialComplex,
) -> Option<ComponentIsomorphism> {
    let s = group.generator(reflection);
    orbit_transversal(group, u).into_iter().find_map(|(x, g)| {
        let h = g.inverse().compose(&s.compose(&g));
        isomorphic_via(group, table, &h, c0, c1).then(|| ComponentIsomorphism {
            reflection: reflection + 1,
            member: Some(x.to_string()),
        })
    })
}

/// Simple reflection (0-based) named for the two-component orbit of the
/// given type.
fn reference_reflection(spec: RootSystemSpec) -> Option<usize> {
    match (spec.family(), spec.rank()) {
        (Family::E, 7) => Some(2),
        (Family::E, 8) => Some(1),
        _ => None,
    }
}

pub fn structure(ctx: &Context, u: RowElement) -> Result<StructureReport> {
    let (k, _) = ctx.induced(u)?;
    let (hat, _, _) = ctx.reduced(u, &k)?;
    Ok(structure_of(ctx, u, &k, &hat))
}

/// Structural data of a given `K_S` and reduction `K^_S`.
pub fn structure_of(ctx: &Context, u: RowElement, k: &SimplicialComplex, hat: &SimplicialComplex) -> StructureReport {
    let comps = hat.connected_components();
    let fvs: Vec<Vec<u64>> = comps.iter().map(|c| c.f_vector().0).collect();
    let isomorphism = match (comps.as_slice(), reference_reflection(ctx.spec())) {
        ([c0, c1], Some(r)) => component_isomorphism(ctx.group(), ctx.table(), u, r, c0, c1),
        _ => None,
    };
    let subset_size = ctx.matrix().subset_size(u);
    StructureReport {
        representative: u.to_string(),
        label: reference_label(ctx.table(), subset_size).map(String::from),
        subset_size,
        complex_vertices: k.num_vertices(),
        complex_facets: k.num_facets(),
        complex_components: k.num_components(),
        reduced_vertices: hat.num_vertices(),
        components: comps.len(),
        pure: hat.is_pure(),
        component_f_vector: fvs.first().cloned().unwrap_or_default(),
        components_alike: fvs.windows(2).all(|w| w[0] == w[1]),
        isomorphism,
    }
}

/// Vertex, facet and decomposition counts of `K_R`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexStats {
    pub schema: u32,
    pub spec: String,
    pub vertices: usize,
    /// Vertex orbit sizes, indexed by fundamental co-weight.
    pub orbit_sizes: Vec<usize>,
    pub facets: u64,
    /// False when the facet count is `|W|` rather than a count of built facets.
    pub facets_materialized: bool,
    /// 1-based co-weight of the coset decomposition.
    pub decomposition_coweight: usize,
    pub cosets: usize,
    pub facets_per_piece: usize,
}

/// Statistics of `K_R`. Facets are built only when `materialize` is set
/// and they fit the memory budget.
pub fn complex_stats(ctx: &Context, materialize: bool) -> Result<ComplexStats> {
    let facets = if materialize {
        match ctx.coxeter() {
            Ok(k) => Some(k.num_facets() as u64),
            Err(Error::BudgetExceeded { .. }) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let d = ctx.decomposition()?;
    Ok(ComplexStats {
        schema: REPORT_SCHEMA,
        spec: ctx.spec().to_string(),
        vertices: ctx.table().len(),
        orbit_sizes: ctx.table().orbit_sizes(),
        facets: facets.unwrap_or_else(|| ctx.group().order()),
        facets_materialized: facets.is_some(),
        decomposition_coweight: d.coweight() + 1,
        cosets: d.num_pieces(),
        facets_per_piece: d.piece_size(),
    })
}

/// Everything known about a type without homology computations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub schema: u32,
    pub spec: String,
    pub weyl_group_order: u64,
    pub closed_form: Option<Vec<u128>>,
    pub reference: Option<Vec<u128>>,
    pub z2_betti: Vec<u128>,
    pub euler_characteristic: i128,
}

pub fn oracle(spec: RootSystemSpec) -> OracleReport {
    OracleReport {
        schema: REPORT_SCHEMA,
        spec: spec.to_string(),
        weyl_group_order: spec.weyl_group_order(),
        closed_form: closed_form_vector(spec)
            .map(|v| v.into_iter().map(|x| u128::try_from(x).expect("nonnegative")).collect()),
        reference: reference_betti(spec),
        z2_betti: z2_betti(spec),
        euler_characteristic: euler_characteristic(spec),
    }
}

/// Output of the `reduce` command for one representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReduceReport {
    pub schema: u32,
    pub spec: String,
    pub structure: StructureReport,
    pub trace: ReductionTrace,
}

pub fn reduce_report(ctx: &Context, u: RowElement) -> Result<ReduceReport> {
    let (k, _) = ctx.induced(u)?;
    let (hat, trace, _) = ctx.reduced(u, &k)?;
    Ok(ReduceReport {
        schema: REPORT_SCHEMA,
        spec: ctx.spec().to_string(),
        structure: structure_of(ctx, u, &k, &hat),
        trace,
    })
}
