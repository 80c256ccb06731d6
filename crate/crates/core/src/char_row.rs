//! The mod-2 characteristic matrix, its row space, and the Weyl-group orbits
//! of nonzero row elements.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::coxeter::VertexTable;
use crate::error::{Error, Result};
use crate::simplicial::{Vertex, VertexSubset};
use crate::weyl::{WeylElement, WeylGroup};

/// A vector of `GF(2)^n`; bit `i` is the coordinate `u_{i+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RowElement {
    bits: u8,
    rank: u8,
}

impl RowElement {
    pub fn new(bits: u8, rank: usize) -> Result<Self> {
        if rank == 0 || rank > 8 || (rank < 8 && bits >> rank != 0) {
            return Err(Error::InvalidSpec(
                format!("{bits:#b}"),
                format!("not a vector of GF(2)^{rank}"),
            ));
        }
        Ok(Self { bits, rank: rank as u8 })
    }

    pub fn bits(self) -> u8 {
        self.bits
    }

    pub fn rank(self) -> usize {
        self.rank as usize
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    pub fn get(self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }

    /// `<u, x> mod 2`.
    pub fn dot(self, x: u8) -> bool {
        (self.bits & x).count_ones() % 2 == 1
    }

    /// Parses `u_1 u_2 ... u_n` written as a string of `0`/`1`.
    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        let s = s.trim();
        if s.len() != rank || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::InvalidSpec(s.to_string(), format!("expected {rank} binary digits")));
        }
        let bits = s.bytes().enumerate().fold(0u8, |acc, (i, b)| acc | ((b - b'0') << i));
        Self::new(bits, rank)
    }

    fn lex_key(self) -> u8 {
        self.bits.reverse_bits() >> (8 - self.rank)
    }
}

impl Ord for RowElement {
    /// Lexicographic order on `(u_1, ..., u_n)`.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.rank, self.lex_key()).cmp(&(other.rank, other.lex_key()))
    }
}

impl PartialOrd for RowElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RowElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rank() {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for RowElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s, s.trim().len())
    }
}

/// Columns `lambda(v) mod 2`, one per vertex, packed as bytes.
#[derive(Debug, Clone)]
pub struct CharacteristicMatrix {
    rank: usize,
    columns: Vec<u8>,
}

impl CharacteristicMatrix {
    pub fn new(table: &VertexTable) -> Self {
        let rank = table.rank();
        let columns = (0..table.len() as Vertex)
            .map(|v| {
                let c = table.coweight(v);
                (0..rank).fold(0u8, |acc, i| acc | (((c[i] & 1) as u8) << i))
            })
            .collect();
        Self { rank, columns }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_columns(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, v: Vertex) -> u8 {
        self.columns[v as usize]
    }

    /// Rank over `GF(2)`.
    pub fn gf2_rank(&self) -> usize {
        let mut basis = [0u8; 8];
        let mut r = 0;
        for &c in &self.columns {
            let mut x = c;
            for b in (0..8).rev() {
                if x >> b & 1 == 0 {
                    continue;
                }
                if basis[b] == 0 {
                    basis[b] = x;
                    r += 1;
                    break;
                }
                x ^= basis[b];
            }
            if r == self.rank {
                break;
            }
        }
        r
    }

    /// `S_u = {v : <u, lambda(v)> = 1}`.
    pub fn subset_for_row(&self, u: RowElement) -> VertexSubset {
        let mut s = VertexSubset::with_capacity(self.columns.len());
        for (v, &c) in self.columns.iter().enumerate() {
            if u.dot(c) {
                s.insert(v as Vertex);
            }
        }
        s
    }

    /// `|S_u|` without building the subset.
    pub fn subset_size(&self, u: RowElement) -> usize {
        self.columns.iter().filter(|&&c| u.dot(c)).count()
    }
}

/// One orbit of nonzero row elements under the dual action.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowOrbit {
    pub representative: RowElement,
    pub size: usize,
    pub members: Vec<RowElement>,
}

/// Orbits of the nonzero vectors of `GF(2)^n` under `u -> M(g)^{-T} u`,
/// ordered by `(size, representative)`; the representative is the
/// lexicographically smallest member.
pub fn row_orbits(group: &WeylGroup) -> Vec<RowOrbit> {
    let n = group.rank();
    let total = 1usize << n;
    let mut seen = vec![false; total];
    let mut orbits = Vec::new();
    for start in 1..total {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut members = vec![start as u8];
        let mut head = 0;
        while head < members.len() {
            let u = members[head];
            head += 1;
            for j in 0..n {
                let v = group.dual_act(group.generator(j), u);
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    members.push(v);
                }
            }
        }
        let mut members: Vec<RowElement> = members.into_iter().map(|b| RowElement { bits: b, rank: n as u8 }).collect();
        members.sort();
        orbits.push(RowOrbit {
            representative: members[0],
            size: members.len(),
            members,
        });
    }
    orbits.sort_by_key(|o| (o.size, o.representative));
    orbits
}

/// Orbit of `u` with one element `t` per member such that
/// `t . u = member`, in breadth-first order starting at `(u, 1)`.
pub fn orbit_transversal(group: &WeylGroup, u: RowElement) -> Vec<(RowElement, WeylElement)> {
    let n = group.rank();
    let mut transversal: Vec<Option<WeylElement>> = vec![None; 1 << n];
    transversal[u.bits() as usize] = Some(group.identity());
    let mut queue = vec![u.bits()];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for j in 0..n {
            let y = group.dual_act(group.generator(j), x);
            if transversal[y as usize].is_none() {
                let t = group.generator(j).compose(transversal[x as usize].as_ref().expect("visited"));
                transversal[y as usize] = Some(t);
                queue.push(y);
            }
        }
    }
    queue
        .into_iter()
        .map(|x| {
            let t = transversal[x as usize].take().expect("visited");
            (RowElement { bits: x, rank: n as u8 }, t)
        })
        .collect()
}

/// Schreier generators of `Stab_W(u)` under the dual action, deduplicated
/// and without the identity.
pub fn stabilizer_generators(group: &WeylGroup, u: RowElement) -> Vec<WeylElement> {
    let n = group.rank();
    let orbit = orbit_transversal(group, u);
    let mut index = vec![usize::MAX; 1 << n];
    for (i, (x, _)) in orbit.iter().enumerate() {
        index[x.bits() as usize] = i;
    }
    let mut seen: FxHashSet<Vec<u16>> = FxHashSet::default();
    let mut gens = Vec::new();
    for (x, tx) in &orbit {
        for j in 0..n {
            let y = group.dual_act(group.generator(j), x.bits());
            let ty = &orbit[index[y as usize]].1;
            let g = ty.inverse().compose(&group.generator(j).compose(tx));
            if !g.is_identity() && seen.insert(g.perm().to_vec()) {
                gens.push(g);
            }
        }
    }
    gens
}

/// Reference labels for the exceptional types, keyed by `|S|`.
pub fn reference_label(table: &VertexTable, subset_size: usize) -> Option<&'static str> {
    let spec = table.spec().to_string();
    let labels: &[(usize, &str)] = match spec.as_str() {
        "E7" => &[(9_176, "S1"), (8_672, "S2"), (4_664, "S3")],
        "E8" => &[(432_944, "S4"), (451_200, "S5")],
        _ => &[],
    };
    labels.iter().find(|(n, _)| *n == subset_size).map(|(_, l)| *l)
}

/// One line of the orbit report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowOrbitSummary {
    pub representative: String,
    pub size: usize,
    pub subset_size: usize,
    pub label: Option<&'static str>,
}

pub fn orbit_report(group: &WeylGroup, table: &VertexTable) -> Vec<RowOrbitSummary> {
    let matrix = CharacteristicMatrix::new(table);
    row_orbits(group)
        .into_iter()
        .map(|o| {
            let subset_size = matrix.subset_size(o.representative);
            RowOrbitSummary {
                representative: o.representative.to_string(),
                size: o.size,
                subset_size,
                label: reference_label(table, subset_size),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::unit_coweight;
    use proptest::prelude::*;

    fn setup(s: &str) -> (WeylGroup, VertexTable) {
        let g = WeylGroup::new(s.parse().unwrap()).unwrap();
        let t = VertexTable::new(g.cartan()).unwrap();
        (g, t)
    }

    #[test]
    fn row_element_parsing_and_order() {
        let u = RowElement::parse("1001000", 7).unwrap();
        assert_eq!(u.bits(), 0b0001001);
        assert_eq!(u.to_string(), "1001000");
        assert!(RowElement::parse("102", 3).is_err());
        assert!(RowElement::new(0b100, 2).is_err());
        let a: RowElement = "011".parse().unwrap();
        let b: RowElement = "100".parse().unwrap();
        assert!(a < b);
    }

    #[test]
    fn a1_matrix() {
        let (_, t) = setup("A1");
        let m = CharacteristicMatrix::new(&t);
        assert_eq!(m.columns, vec![1, 1]);
        let s = m.subset_for_row(RowElement::new(1, 1).unwrap());
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn fundamental_columns_are_the_standard_basis() {
        for s in ["A3", "B4", "C3", "D5", "G2", "F4", "E6", "E7"] {
            let (_, t) = setup(s);
            let m = CharacteristicMatrix::new(&t);
            for i in 0..t.rank() {
                assert_eq!(m.column(t.id_of(&unit_coweight(i)).unwrap()), 1 << i);
            }
            assert_eq!(m.gf2_rank(), t.rank());
        }
    }

    #[test]
    fn orbit_sizes_sum() {
        for s in ["A1", "A2", "A4", "B3", "C4", "D4", "D5", "G2", "F4", "E6", "E7", "E8"] {
            let (g, _) = setup(s);
            let orbits = row_orbits(&g);
            let total: usize = orbits.iter().map(|o| o.size).sum();
            assert_eq!(total, (1 << g.rank()) - 1, "{s}");
            for o in &orbits {
                assert_eq!(o.members.len(), o.size);
                assert_eq!(o.representative, o.members[0]);
            }
        }
        let (g, _) = setup("A1");
        assert_eq!(row_orbits(&g).len(), 1);
    }

    #[test]
    fn e7_and_e8_orbits() {
        let (g, _) = setup("E7");
        let sizes: Vec<usize> = row_orbits(&g).iter().map(|o| o.size).collect();
        assert_eq!(sizes, vec![1, 63, 63]);
        let (g, _) = setup("E8");
        let sizes: Vec<usize> = row_orbits(&g).iter().map(|o| o.size).collect();
        assert_eq!(sizes, vec![120, 135]);
    }

    #[test]
    fn e7_subset_sizes_and_labels() {
        let (g, t) = setup("E7");
        let report = orbit_report(&g, &t);
        let mut sizes: Vec<(Option<&str>, usize)> = report.iter().map(|r| (r.label, r.subset_size)).collect();
        sizes.sort();
        assert_eq!(sizes, vec![(Some("S1"), 9_176), (Some("S2"), 8_672), (Some("S3"), 4_664)]);
    }

    #[test]
    fn subset_size_is_an_orbit_invariant() {
        let (g, t) = setup("F4");
        let m = CharacteristicMatrix::new(&t);
        for o in row_orbits(&g) {
            let n = m.subset_size(o.representative);
            assert!(o.members.iter().all(|&u| m.subset_size(u) == n));
        }
    }

    #[test]
    fn transversal_reaches_every_member() {
        for s in ["B3", "F4", "E6"] {
            let (g, _) = setup(s);
            for o in row_orbits(&g) {
                let tr = orbit_transversal(&g, o.representative);
                assert_eq!(tr.len(), o.size);
                for (x, t) in &tr {
                    assert_eq!(g.dual_act(t, o.representative.bits()), x.bits());
                }
            }
        }
    }

    #[test]
    fn stabilizer_generators_fix_the_row() {
        for s in ["B3", "F4", "E6"] {
            let (g, _) = setup(s);
            for o in row_orbits(&g) {
                let gens = stabilizer_generators(&g, o.representative);
                for w in &gens {
                    assert_eq!(g.dual_act(w, o.representative.bits()), o.representative.bits());
                }
            }
        }
        // stabilizer of the fixed row of E7 is everything
        let (g, _) = setup("E7");
        let fixed = row_orbits(&g).into_iter().find(|o| o.size == 1).unwrap();
        assert!(stabilizer_generators(&g, fixed.representative).len() >= 7);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn dual_action_moves_subsets(
            spec in prop::sample::select(vec!["A2", "A3", "A4", "B2", "B3", "C3", "C4", "D4", "G2", "F4", "B4"]),
            word in prop::collection::vec(0u8..4, 0..12),
            bits in 1u8..16,
        ) {
            let (g, t) = setup(spec);
            let n = g.rank();
            let u = RowElement::new(bits & ((1 << n) - 1), n).unwrap();
            prop_assume!(!u.is_zero());
            let word: Vec<u8> = word.into_iter().filter(|&j| (j as usize) < n).collect();
            let w = g.from_word(&word);
            let m = CharacteristicMatrix::new(&t);
            let s = m.subset_for_row(u);
            let moved: VertexSubset = s.iter().map(|v| t.act(&g, &w, v)).collect();
            let target = m.subset_for_row(RowElement::new(g.dual_act(&w, u.bits()), n).unwrap());
            prop_assert_eq!(moved.iter().collect::<Vec<_>>(), target.iter().collect::<Vec<_>>());
        }
    }
}
