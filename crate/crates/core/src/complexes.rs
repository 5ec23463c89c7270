//! Flag complexes on `[m] = {1, ..., m}` and the combinatorics of their
//! full subcomplexes.
//!
//! A flag complex is stored by its 1-skeleton only; simplices are the
//! cliques of the graph and are always derived, never stored. Vertices are
//! 1-based throughout. Vertex subsets are bitmasks (`bit i-1` = vertex `i`).

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitRow, Gf2Matrix};

/// Largest supported vertex count. Clique enumeration and the subset scans
/// below are exponential in `m`.
pub const MAX_VERTICES: usize = 16;

/// A subset of `[m]`, iterated in ascending order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_mask(mask: u32) -> Self {
        VertexSet(mask)
    }

    pub fn full(m: usize) -> Self {
        if m >= 32 {
            VertexSet(u32::MAX)
        } else {
            VertexSet((1u32 << m) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        debug_assert!((1..=32).contains(&v));
        VertexSet(1 << (v - 1))
    }

    /// Builds a set from 1-based vertices, checking them against `m`.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(m: usize, vertices: I) -> Result<Self> {
        let mut mask = 0u32;
        for v in vertices {
            if v == 0 || v > m {
                return Err(Error::VertexOutOfRange { vertex: v, m });
            }
            mask |= 1 << (v - 1);
        }
        Ok(VertexSet(mask))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=32).contains(&v) && self.0 & (1 << (v - 1)) != 0
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | (1 << (v - 1)))
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1 << (v - 1)))
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 32 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut mask = self.0;
        std::iter::from_fn(move || {
            if mask == 0 {
                None
            } else {
                let v = mask.trailing_zeros() as usize + 1;
                mask &= mask - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// 0/1 exponent vector of length `m`.
    pub fn multidegree(self, m: usize) -> Vec<u32> {
        (1..=m).map(|v| u32::from(self.contains(v))).collect()
    }

    /// Lexicographic comparison of the ascending element lists.
    pub fn lex_cmp(self, other: Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// The nested commutator `c(J \ j, j) = [q_{i_1}, [q_{i_2}, ... [q_{i_k}, q_j]...]]`
/// with `J \ j = {i_1 < ... < i_k}`, identified by the pair `(J, j)`.
///
/// GPTW generators are the entries with `j` in `theta(J)`; the same index
/// type also names the ordered commutators produced by
/// [`crate::nk::order_nested`], where only `j != max(J)` is required.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CommIndex {
    pub set: VertexSet,
    pub last: usize,
}

impl CommIndex {
    pub fn new(set: VertexSet, last: usize) -> Result<Self> {
        if set.len() < 2 || !set.contains(last) {
            return Err(Error::Contract(format!(
                "c(J \\ j, j) needs |J| >= 2 and j in J, got J = {set}, j = {last}"
            )));
        }
        if set.max() == Some(last) {
            return Err(Error::Contract(format!(
                "c(J \\ j, j) needs j != max(J), got J = {set}, j = {last}"
            )));
        }
        Ok(CommIndex { set, last })
    }

    pub fn outer(self) -> VertexSet {
        self.set.without(self.last)
    }

    pub fn degree(self) -> usize {
        self.set.len()
    }

    /// Letters from the outermost inwards: `i_1, ..., i_k, j`.
    pub fn letters(self) -> Vec<usize> {
        let mut v: Vec<usize> = self.outer().iter().collect();
        v.push(self.last);
        v
    }

    pub fn multidegree(self, m: usize) -> Vec<u32> {
        self.set.multidegree(m)
    }
}

impl fmt::Debug for CommIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CommIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c(")?;
        for (k, v) in self.outer().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ";{})", self.last)
    }
}

/// All GPTW generators of a complex, ordered by degree, then `J`
/// lexicographically, then `j`.
pub type GptwIndex = Vec<CommIndex>;

/// Counts of full subcomplexes on two and three vertices by isomorphism type.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeCounts {
    pub edge: u64,
    pub non_edge: u64,
    pub three_discrete: u64,
    pub edge_and_point: u64,
    pub path: u64,
    pub triangle: u64,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FlagComplex {
    m: usize,
    adj: Vec<u32>,
}

impl fmt::Debug for FlagComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FlagComplex")
            .field("m", &self.m)
            .field("edges", &self.edges())
            .finish()
    }
}

impl FlagComplex {
    /// Flag complex of the graph with the given edges. Duplicate and
    /// reversed pairs are merged.
    pub fn new(m: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if m == 0 || m > MAX_VERTICES {
            return Err(Error::Input(format!(
                "vertex count must be in 1..={MAX_VERTICES}, got {m}"
            )));
        }
        let mut adj = vec![0u32; m];
        for &(i, j) in edges {
            for v in [i, j] {
                if v == 0 || v > m {
                    return Err(Error::VertexOutOfRange { vertex: v, m });
                }
            }
            if i == j {
                return Err(Error::Input(format!("loop edge {{{i},{i}}}")));
            }
            adj[i - 1] |= 1 << (j - 1);
            adj[j - 1] |= 1 << (i - 1);
        }
        Ok(FlagComplex { m, adj })
    }

    /// Builds a complex from a list of faces. The result must already be
    /// flag (every clique of the 1-skeleton is a face) unless
    /// `flag_completion` is set, in which case the flag completion is taken.
    pub fn from_faces(m: usize, faces: &[Vec<usize>], flag_completion: bool) -> Result<Self> {
        let mut face_sets = Vec::with_capacity(faces.len());
        let mut edges = Vec::new();
        for face in faces {
            let set = VertexSet::from_vertices(m, face.iter().copied())?;
            let vs = set.to_vec();
            for (a, &i) in vs.iter().enumerate() {
                for &j in &vs[a + 1..] {
                    edges.push((i, j));
                }
            }
            face_sets.push(set);
        }
        let k = FlagComplex::new(m, &edges)?;
        if !flag_completion {
            let mut missing = None;
            k.for_each_clique(k.vertices(), |c| {
                if missing.is_none() && c.len() >= 3 && !face_sets.iter().any(|f| c.is_subset(*f)) {
                    missing = Some(c);
                }
            });
            if let Some(c) = missing {
                return Err(Error::NotFlag { clique: c.to_vec() });
            }
        }
        Ok(k)
    }

    /// Simplex `Δ^{m-1}`: the complete graph.
    pub fn simplex(m: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for i in 1..=m {
            for j in i + 1..=m {
                edges.push((i, j));
            }
        }
        FlagComplex::new(m, &edges)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.m)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.m {
            for j in VertexSet(self.adj[i - 1]).iter().filter(|&j| j > i) {
                out.push((i, j));
            }
        }
        out
    }

    pub fn is_edge(&self, i: usize, j: usize) -> bool {
        i != j && self.adj[i - 1] & (1 << (j - 1)) != 0
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v - 1])
    }

    /// Neighbour bitmasks indexed by `vertex - 1`; exactly the pairs of
    /// commuting generators.
    pub fn adjacency_masks(&self) -> &[u32] {
        &self.adj
    }

    pub fn check_set(&self, set: VertexSet) -> Result<()> {
        if set.is_subset(self.vertices()) {
            Ok(())
        } else {
            let v = set.difference(self.vertices()).min().unwrap_or(0);
            Err(Error::VertexOutOfRange {
                vertex: v,
                m: self.m,
            })
        }
    }

    /// Calls `f` on every clique of `K_J`, the empty clique included.
    pub fn for_each_clique<F: FnMut(VertexSet)>(&self, set: VertexSet, mut f: F) {
        fn extend<F: FnMut(VertexSet)>(k: &FlagComplex, clique: VertexSet, cands: u32, f: &mut F) {
            f(clique);
            let mut rest = cands;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize + 1;
                rest &= rest - 1;
                // only extend by larger vertices so each clique is seen once
                let next = cands & k.adj[v - 1] & !((1u32 << v) - 1);
                extend(k, clique.with(v), next, f);
            }
        }
        extend(self, VertexSet::EMPTY, set.0, &mut f);
    }

    pub fn cliques(&self, set: VertexSet) -> Vec<VertexSet> {
        let mut out = Vec::new();
        self.for_each_clique(set, |c| out.push(c));
        out
    }

    /// Connected components of `K_J`, ordered by their least vertex.
    pub fn components(&self, set: VertexSet) -> Result<Vec<VertexSet>> {
        self.check_set(set)?;
        Ok(self.components_unchecked(set))
    }

    fn components_unchecked(&self, set: VertexSet) -> Vec<VertexSet> {
        let mut out = Vec::new();
        let mut rest = set.0;
        while rest != 0 {
            let start = rest.trailing_zeros() as usize;
            let mut comp = 1u32 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = self.adj[v] & set.0 & !comp;
                comp |= new;
                frontier |= new;
            }
            out.push(VertexSet(comp));
            rest &= !comp;
        }
        out
    }

    /// `Θ_K(J)`: vertices of `J` that are least in their component of `K_J`
    /// and lie in a different component than `max(J)`.
    pub fn theta(&self, set: VertexSet) -> Result<VertexSet> {
        self.check_set(set)?;
        let top = set
            .max()
            .ok_or_else(|| Error::Input("theta needs a nonempty vertex set".into()))?;
        let mut out = VertexSet::EMPTY;
        for comp in self.components_unchecked(set) {
            if !comp.contains(top) {
                out = out.with(comp.min().expect("components are nonempty"));
            }
        }
        Ok(out)
    }

    /// `1 - χ(K_J) = Σ_{I ∈ K_J} (-1)^{|I|}`.
    pub fn euler_term(&self, set: VertexSet) -> Result<i64> {
        self.check_set(set)?;
        let mut sum = 0i64;
        self.for_each_clique(set, |c| sum += if c.len() % 2 == 0 { 1 } else { -1 });
        Ok(sum)
    }

    pub fn h0_reduced(&self, set: VertexSet) -> Result<usize> {
        self.check_set(set)?;
        Ok(self.components_unchecked(set).len().saturating_sub(1))
    }

    /// `dim_{GF(2)} H_1(K_J)` from the vertices, edges and triangles of `K_J`.
    pub fn h1_dim_gf2(&self, set: VertexSet) -> Result<usize> {
        self.check_set(set)?;
        let verts = set.to_vec();
        let vpos = |v: usize| verts.iter().position(|&u| u == v).expect("vertex in set");
        let mut edges = Vec::new();
        let mut triangles = Vec::new();
        self.for_each_clique(set, |c| match c.len() {
            2 => edges.push(c),
            3 => triangles.push(c),
            _ => {}
        });
        if edges.is_empty() {
            return Ok(0);
        }
        let d1 = Gf2Matrix::from_rows(
            verts.len(),
            edges
                .iter()
                .map(|e| BitRow::from_indices(verts.len(), e.iter().map(vpos)))
                .collect(),
        );
        let epos = |e: VertexSet| {
            edges
                .iter()
                .position(|&f| f == e)
                .expect("edge of triangle")
        };
        let d2 = Gf2Matrix::from_rows(
            edges.len(),
            triangles
                .iter()
                .map(|t| BitRow::from_indices(edges.len(), t.iter().map(|v| epos(t.without(v)))))
                .collect(),
        );
        Ok(edges.len() - d1.rank() - d2.rank())
    }

    /// Chordality via maximum cardinality search and a perfect elimination
    /// ordering check.
    pub fn is_chordal(&self) -> bool {
        let m = self.m;
        let mut weight = vec![0usize; m];
        let mut numbered = 0u32;
        let mut order = Vec::with_capacity(m);
        for _ in 0..m {
            let v = (0..m)
                .filter(|&v| numbered & (1 << v) == 0)
                .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
                .expect("unnumbered vertex remains");
            numbered |= 1 << v;
            order.push(v);
            let mut nb = self.adj[v] & !numbered;
            while nb != 0 {
                let u = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                weight[u] += 1;
            }
        }
        // MCS visits vertices in reverse elimination order.
        order.reverse();
        let mut position = vec![0usize; m];
        for (p, &v) in order.iter().enumerate() {
            position[v] = p;
        }
        for &v in &order {
            let later: Vec<usize> = VertexSet(self.adj[v])
                .iter()
                .map(|u| u - 1)
                .filter(|&u| position[u] > position[v])
                .collect();
            let Some(&parent) = later.iter().min_by_key(|&&u| position[u]) else {
                continue;
            };
            for &u in &later {
                if u != parent && self.adj[parent] & (1 << u) == 0 {
                    return false;
                }
            }
        }
        true
    }

    /// All GPTW generators `(J, j)` with `j ∈ Θ_K(J)`.
    pub fn gptw_index(&self) -> GptwIndex {
        let mut out = Vec::new();
        for mask in 1..(1u32 << self.m) {
            let set = VertexSet(mask);
            if set.len() < 2 {
                continue;
            }
            let theta = self.theta(set).expect("set within range");
            for j in theta.iter() {
                out.push(CommIndex { set, last: j });
            }
        }
        out.sort_by(|a, b| {
            a.degree()
                .cmp(&b.degree())
                .then_with(|| a.set.lex_cmp(b.set))
                .then(a.last.cmp(&b.last))
        });
        out
    }

    pub fn is_gptw(&self, c: CommIndex) -> bool {
        c.set.is_subset(self.vertices())
            && c.set.len() >= 2
            && self
                .theta(c.set)
                .map(|t| t.contains(c.last))
                .unwrap_or(false)
    }

    /// Full subcomplexes on two and three vertices, by isomorphism type.
    pub fn subcomplex_type_counts(&self) -> TypeCounts {
        let mut t = TypeCounts::default();
        for i in 1..=self.m {
            for j in i + 1..=self.m {
                if self.is_edge(i, j) {
                    t.edge += 1;
                } else {
                    t.non_edge += 1;
                }
                for k in j + 1..=self.m {
                    let e = [(i, j), (i, k), (j, k)]
                        .iter()
                        .filter(|&&(a, b)| self.is_edge(a, b))
                        .count();
                    match e {
                        0 => t.three_discrete += 1,
                        1 => t.edge_and_point += 1,
                        2 => t.path += 1,
                        _ => t.triangle += 1,
                    }
                }
            }
        }
        t
    }

    /// Every subset of `[m]`, as vertex sets.
    pub fn subsets(&self) -> impl Iterator<Item = VertexSet> {
        (0..(1u32 << self.m)).map(VertexSet)
    }

    /// Vertex sets of all maximal cliques (facets of the flag complex).
    pub fn facets(&self) -> Vec<VertexSet> {
        let all = self.cliques(self.vertices());
        let set: BTreeSet<u32> = all.iter().map(|c| c.0).collect();
        all.into_iter()
            .filter(|c| {
                (1..=self.m)
                    .filter(|&v| !c.contains(v))
                    .all(|v| !set.contains(&c.with(v).0))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2() -> FlagComplex {
        FlagComplex::new(2, &[]).unwrap()
    }
    fn k3() -> FlagComplex {
        FlagComplex::new(3, &[(1, 3)]).unwrap()
    }
    fn pentagon() -> FlagComplex {
        FlagComplex::new(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)]).unwrap()
    }
    fn set(v: &[usize]) -> VertexSet {
        VertexSet::from_vertices(16, v.iter().copied()).unwrap()
    }

    #[test]
    fn components_examples() {
        assert_eq!(
            pentagon().components(set(&[1, 3])).unwrap(),
            vec![set(&[1]), set(&[3])]
        );
        assert_eq!(pentagon().components(set(&[4])).unwrap(), vec![set(&[4])]);
        assert_eq!(
            k3().components(set(&[1, 2, 3])).unwrap(),
            vec![set(&[1, 3]), set(&[2])]
        );
        assert!(matches!(
            k3().components(set(&[1, 4])),
            Err(Error::VertexOutOfRange { vertex: 4, m: 3 })
        ));
    }

    #[test]
    fn theta_examples() {
        assert_eq!(k3().theta(set(&[1, 2, 3])).unwrap(), set(&[2]));
        assert_eq!(k3().theta(set(&[2])).unwrap(), VertexSet::EMPTY);
        assert_eq!(k2().theta(set(&[1, 2])).unwrap(), set(&[1]));
        assert!(k2().theta(VertexSet::EMPTY).is_err());
    }

    #[test]
    fn euler_term_examples() {
        assert_eq!(k3().euler_term(VertexSet::EMPTY).unwrap(), 1);
        assert_eq!(k2().euler_term(set(&[1, 2])).unwrap(), -1);
        assert_eq!(k3().euler_term(set(&[1, 3])).unwrap(), 0);
        assert_eq!(pentagon().euler_term(pentagon().vertices()).unwrap(), 1);
    }

    #[test]
    fn homology_examples() {
        assert_eq!(pentagon().h1_dim_gf2(pentagon().vertices()).unwrap(), 1);
        assert_eq!(k2().h0_reduced(set(&[1, 2])).unwrap(), 1);
        assert_eq!(k2().h0_reduced(VertexSet::EMPTY).unwrap(), 0);
        let octahedron_equator = FlagComplex::new(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
        assert_eq!(
            octahedron_equator
                .h1_dim_gf2(octahedron_equator.vertices())
                .unwrap(),
            1
        );
        assert_eq!(
            FlagComplex::simplex(4)
                .unwrap()
                .h1_dim_gf2(set(&[1, 2, 3, 4]))
                .unwrap(),
            0
        );
    }

    #[test]
    fn chordality_examples() {
        assert!(!pentagon().is_chordal());
        assert!(k3().is_chordal());
        assert!(!FlagComplex::new(4, &[(1, 2), (2, 3), (3, 4), (1, 4)])
            .unwrap()
            .is_chordal());
        assert!(
            FlagComplex::new(4, &[(1, 2), (2, 3), (3, 4), (1, 4), (1, 3)])
                .unwrap()
                .is_chordal()
        );
    }

    #[test]
    fn gptw_examples() {
        let g = k2().gptw_index();
        assert_eq!(g.len(), 1);
        assert_eq!((g[0].set, g[0].last), (set(&[1, 2]), 1));
        let names: Vec<String> = k3().gptw_index().iter().map(|c| c.to_string()).collect();
        assert_eq!(names, vec!["c(2;1)", "c(3;2)", "c(1,3;2)"]);
        assert_eq!(pentagon().gptw_index().len(), 10);
        assert!(FlagComplex::simplex(4).unwrap().gptw_index().is_empty());
    }

    #[test]
    fn type_count_examples() {
        let p = pentagon().subcomplex_type_counts();
        assert_eq!((p.non_edge, p.three_discrete, p.edge_and_point), (5, 0, 5));
        assert_eq!(k2().subcomplex_type_counts().non_edge, 1);
        let t = k3().subcomplex_type_counts();
        assert_eq!((t.non_edge, t.three_discrete, t.edge_and_point), (2, 0, 1));
    }

    #[test]
    fn faces_input_requires_flagness() {
        let hollow = vec![vec![1, 2], vec![2, 3], vec![1, 3]];
        assert!(matches!(
            FlagComplex::from_faces(3, &hollow, false),
            Err(Error::NotFlag { .. })
        ));
        let k = FlagComplex::from_faces(3, &hollow, true).unwrap();
        assert_eq!(k, FlagComplex::simplex(3).unwrap());
        assert!(FlagComplex::from_faces(3, &[vec![1, 2, 3]], false).is_ok());
    }

    #[test]
    fn input_validation() {
        assert!(FlagComplex::new(3, &[(1, 1)]).is_err());
        assert!(FlagComplex::new(3, &[(1, 4)]).is_err());
        assert!(FlagComplex::new(0, &[]).is_err());
        assert!(FlagComplex::new(17, &[]).is_err());
        let k = FlagComplex::new(3, &[(1, 2), (2, 1), (1, 2)]).unwrap();
        assert_eq!(k.edges(), vec![(1, 2)]);
    }

    #[test]
    fn comm_index_contract() {
        assert!(CommIndex::new(set(&[1, 2]), 2).is_err());
        assert!(CommIndex::new(set(&[1]), 1).is_err());
        let c = CommIndex::new(set(&[1, 2, 3]), 2).unwrap();
        assert_eq!(c.letters(), vec![1, 3, 2]);
        assert_eq!(c.to_string(), "c(1,3;2)");
    }
}
