//! Faces, colexicographic indexing, complexes with a full codimension-one skeleton,
//! signed chains and the boundary matrix.
//!
//! Every face is oriented by increasing vertex order. A `k`-subset
//! `v_0 < v_1 < ... < v_{k-1}` has colex rank `sum_i C(v_i, i + 1)`, which does not
//! depend on the ambient vertex count, so adding a vertex never renumbers faces.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::io::{BufRead, Write};

use crate::binom::{binom, binom_checked, BinomTable};
use crate::error::{invalid, Error, Result};
use crate::linalg::SparseSignMatrix;

/// A face given by its strictly increasing vertex list.
///
/// Ordering is colexicographic (compare the largest vertices first), so sorted
/// collections of faces of one dimension come out in rank order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FaceKey {
    vertices: Vec<u32>,
}

impl FaceKey {
    /// Builds a face, checking that vertices strictly increase.
    pub fn new(vertices: Vec<u32>) -> Result<Self> {
        if vertices.is_empty() {
            return invalid("a face needs at least one vertex");
        }
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return invalid(format!("face vertices not strictly increasing: {vertices:?}"));
        }
        Ok(FaceKey { vertices })
    }

    /// Builds a face and checks every vertex lies in `[0, n)`.
    pub fn new_in(vertices: Vec<u32>, n: u32) -> Result<Self> {
        let f = Self::new(vertices)?;
        f.check_range(n)?;
        Ok(f)
    }

    pub(crate) fn from_sorted_unchecked(vertices: Vec<u32>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        FaceKey { vertices }
    }

    pub fn check_range(&self, n: u32) -> Result<()> {
        match self.vertices.last() {
            Some(&v) if v >= n => invalid(format!("vertex {v} out of range for n = {n}")),
            _ => Ok(()),
        }
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    /// Number of vertices minus one.
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// The face with the vertex at position `i` removed.
    pub fn without(&self, i: usize) -> FaceKey {
        let mut v = self.vertices.clone();
        v.remove(i);
        FaceKey { vertices: v }
    }

    /// The face with vertex `v` added (must not already be present).
    pub fn with_vertex(&self, v: u32) -> FaceKey {
        let mut vs = self.vertices.clone();
        let pos = vs.binary_search(&v).expect_err("vertex already present");
        vs.insert(pos, v);
        FaceKey { vertices: vs }
    }
}

impl Ord for FaceKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vertices
            .len()
            .cmp(&other.vertices.len())
            .then_with(|| self.vertices.iter().rev().cmp(other.vertices.iter().rev()))
    }
}

impl PartialOrd for FaceKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FaceKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Colex rank of a strictly increasing vertex list.
#[inline]
pub fn rank_vertices(vertices: &[u32]) -> u64 {
    vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| binom(v as u64, i as u64 + 1))
        .sum()
}

/// Colex rank of `face` among the `|face|`-subsets of `[0, n)`.
pub fn face_rank(face: &FaceKey, n: u32) -> Result<u64> {
    face.check_range(n)?;
    Ok(rank_vertices(face.vertices()))
}

/// Inverse of [`face_rank`]: the `k`-subset of `[0, n)` with the given colex rank.
pub fn face_unrank(rank: u64, k: usize, n: u32) -> Result<FaceKey> {
    if k == 0 || k > n as usize {
        return invalid(format!("cannot unrank a {k}-subset of [0, {n})"));
    }
    let total = binom_checked(n as u64, k as u64).unwrap_or(u128::MAX);
    if rank as u128 >= total {
        return invalid(format!("rank {rank} out of range: C({n}, {k}) = {total}"));
    }
    let mut out = vec![0u32; k];
    unrank_into(rank, n, &mut out, |v, j| binom(v as u64, j as u64));
    Ok(FaceKey::from_sorted_unchecked(out))
}

fn unrank_into(mut rank: u64, n: u32, out: &mut [u32], c: impl Fn(u32, usize) -> u64) {
    let mut hi = n;
    for i in (0..out.len()).rev() {
        // largest v < hi with C(v, i + 1) <= rank
        let (mut lo, mut up) = (i as u32, hi - 1);
        while lo < up {
            let mid = up - (up - lo) / 2;
            if c(mid, i + 1) <= rank {
                lo = mid;
            } else {
                up = mid - 1;
            }
        }
        out[i] = lo;
        rank -= c(lo, i + 1);
        hi = lo;
    }
}

/// Table-backed ranking for hot loops over faces of bounded size on `n` vertices.
#[derive(Debug, Clone)]
pub struct Colex {
    n: u32,
    table: BinomTable,
}

impl Colex {
    pub fn new(n: u32, k_max: usize) -> Self {
        Colex { n, table: BinomTable::new(n as usize, k_max) }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `C(v, j)` for `v <= n`, `j <= k_max`.
    #[inline]
    pub fn choose(&self, v: u32, j: usize) -> u64 {
        self.table.get(v as usize, j)
    }

    #[inline]
    pub fn rank(&self, vertices: &[u32]) -> u64 {
        vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| self.table.get(v as usize, i + 1))
            .sum()
    }

    #[inline]
    pub fn unrank(&self, rank: u64, out: &mut [u32]) {
        unrank_into(rank, self.n, out, |v, j| self.table.get(v as usize, j));
    }

    /// Ranks of the facets of `vertices`, in order of the removed position, with signs
    /// `(-1)^i`.
    #[inline]
    pub fn facets(&self, vertices: &[u32], out: &mut Vec<(u64, i32)>) {
        out.clear();
        let k = vertices.len();
        // prefix[i] = sum_{j < i} C(v_j, j + 1); suffix part uses shifted index j.
        let mut suffix: u64 = (1..k).map(|j| self.table.get(vertices[j] as usize, j)).sum();
        let mut prefix = 0u64;
        for i in 0..k {
            if i > 0 {
                suffix -= self.table.get(vertices[i] as usize, i);
            }
            let sign = if i % 2 == 0 { 1 } else { -1 };
            out.push((prefix + suffix, sign));
            prefix += self.table.get(vertices[i] as usize, i + 1);
        }
    }
}

/// Iterates the `k`-subsets of `[0, n)` in colex order; the `i`-th item has rank `i`.
#[derive(Debug, Clone)]
pub struct ColexSubsets {
    n: u32,
    cur: Vec<u32>,
    done: bool,
}

impl ColexSubsets {
    pub fn new(n: u32, k: usize) -> Self {
        ColexSubsets { n, cur: (0..k as u32).collect(), done: k as u32 > n }
    }

    /// The current subset without advancing.
    pub fn current(&self) -> Option<&[u32]> {
        (!self.done).then_some(self.cur.as_slice())
    }

    /// Advances to the next subset in place.
    pub fn next_ref(&mut self) {
        if self.done {
            return;
        }
        // Colex successor: bump the first position that can grow without colliding.
        let k = self.cur.len();
        let mut i = 0;
        loop {
            if i == k {
                self.done = true;
                break;
            }
            let limit = if i + 1 < k { self.cur[i + 1] } else { self.n };
            if self.cur[i] + 1 < limit {
                self.cur[i] += 1;
                for (j, slot) in self.cur.iter_mut().enumerate().take(i) {
                    *slot = j as u32;
                }
                break;
            }
            i += 1;
        }
    }
}

impl Iterator for ColexSubsets {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        self.next_ref();
        Some(out)
    }
}

/// Boundary columns of every `d`-face on `n` vertices, indexed by colex rank.
#[derive(Debug, Clone)]
pub struct BoundaryTable {
    k: usize,
    entries: Vec<(u32, i32)>,
}

impl BoundaryTable {
    pub fn new(n: u32, d: u32) -> Self {
        let k = d as usize + 1;
        let c = Colex::new(n, k);
        let total = binom(n as u64, k as u64) as usize;
        let mut entries = Vec::with_capacity(total * k);
        let mut facets = Vec::with_capacity(k);
        let mut it = ColexSubsets::new(n, k);
        while let Some(v) = it.current() {
            c.facets(v, &mut facets);
            facets.sort_unstable_by_key(|e| e.0);
            entries.extend(facets.iter().map(|&(r, s)| (r as u32, s)));
            it.next_ref();
        }
        BoundaryTable { k, entries }
    }

    #[inline]
    pub fn column(&self, rank: u64) -> &[(u32, i32)] {
        let i = rank as usize * self.k;
        &self.entries[i..i + self.k]
    }

    pub fn len(&self) -> usize {
        self.entries.len() / self.k
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// An `n`-vertex `d`-complex with full `(d-1)`-skeleton, stored as the sorted colex
/// ranks of its `d`-faces.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    n: u32,
    d: u32,
    faces: Vec<u64>,
}

impl SimplicialComplex {
    /// The complex with no `d`-faces.
    pub fn empty(n: u32, d: u32) -> Result<Self> {
        if d == 0 {
            return invalid("top dimension must be at least 1");
        }
        if binom_checked(n as u64, d as u64 + 1).is_none_or(|c| c > u64::MAX as u128) {
            return invalid(format!("C({n}, {}) does not fit in 64 bits", d + 1));
        }
        Ok(SimplicialComplex { n, d, faces: Vec::new() })
    }

    /// All `C(n, d+1)` faces.
    pub fn complete(n: u32, d: u32) -> Result<Self> {
        let mut x = Self::empty(n, d)?;
        x.faces = (0..binom(n as u64, d as u64 + 1)).collect();
        Ok(x)
    }

    /// Builds from face ranks; duplicates and out-of-range ranks are rejected.
    pub fn from_ranks(n: u32, d: u32, mut ranks: Vec<u64>) -> Result<Self> {
        let mut x = Self::empty(n, d)?;
        ranks.sort_unstable();
        if let Some(w) = ranks.windows(2).find(|w| w[0] == w[1]) {
            return invalid(format!("duplicate face rank {}", w[0]));
        }
        let total = x.total_faces();
        if let Some(&r) = ranks.last() {
            if r >= total {
                return invalid(format!("face rank {r} out of range (C({n}, {}) = {total})", d + 1));
            }
        }
        x.faces = ranks;
        Ok(x)
    }

    /// Builds from vertex lists; each must have `d + 1` strictly increasing vertices in `[0, n)`.
    pub fn from_faces<I>(n: u32, d: u32, faces: I) -> Result<Self>
    where
        I: IntoIterator<Item = FaceKey>,
    {
        let mut ranks = Vec::new();
        for f in faces {
            if f.len() != d as usize + 1 {
                return invalid(format!("face {f} does not have {} vertices", d + 1));
            }
            ranks.push(face_rank(&f, n)?);
        }
        Self::from_ranks(n, d, ranks)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Sorted colex ranks of the `d`-faces.
    pub fn face_ranks(&self) -> &[u64] {
        &self.faces
    }

    pub fn faces(&self) -> impl Iterator<Item = FaceKey> + '_ {
        let c = Colex::new(self.n, self.d as usize + 1);
        let k = self.d as usize + 1;
        self.faces.iter().map(move |&r| {
            let mut v = vec![0u32; k];
            c.unrank(r, &mut v);
            FaceKey::from_sorted_unchecked(v)
        })
    }

    pub fn contains_rank(&self, r: u64) -> bool {
        self.faces.binary_search(&r).is_ok()
    }

    pub fn contains(&self, f: &FaceKey) -> bool {
        f.len() == self.d as usize + 1
            && f.check_range(self.n).is_ok()
            && self.contains_rank(rank_vertices(f.vertices()))
    }

    /// Adds a face by rank; returns false if it was already present.
    pub fn insert_rank(&mut self, r: u64) -> bool {
        assert!(r < self.total_faces(), "face rank out of range");
        match self.faces.binary_search(&r) {
            Ok(_) => false,
            Err(pos) => {
                self.faces.insert(pos, r);
                true
            }
        }
    }

    pub fn remove_rank(&mut self, r: u64) -> bool {
        match self.faces.binary_search(&r) {
            Ok(pos) => {
                self.faces.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    /// `C(n, d+1)`: the number of possible `d`-faces.
    pub fn total_faces(&self) -> u64 {
        binom(self.n as u64, self.d as u64 + 1)
    }

    /// `C(n, d)`: the number of `(d-1)`-faces, i.e. rows of the boundary matrix.
    pub fn ridge_count(&self) -> u64 {
        binom(self.n as u64, self.d as u64)
    }

    /// `C(n-1, d)`: the face count of a hypertree.
    pub fn hypertree_size(&self) -> u64 {
        if self.n == 0 {
            0
        } else {
            binom(self.n as u64 - 1, self.d as u64)
        }
    }

    /// Same faces viewed on a larger vertex set (ranks are unchanged).
    pub fn with_vertex_count(&self, n: u32) -> Result<Self> {
        if n < self.n {
            return invalid("cannot shrink the vertex set");
        }
        let mut x = Self::empty(n, self.d)?;
        x.faces = self.faces.clone();
        Ok(x)
    }
}

/// A formal integer combination of faces with no zero coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SignedChain {
    terms: BTreeMap<FaceKey, i64>,
}

impl SignedChain {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `coeff * face`, dropping the term if it cancels.
    pub fn add_term(&mut self, face: FaceKey, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(face);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn coefficient(&self, face: &FaceKey) -> i64 {
        self.terms.get(face).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FaceKey, i64)> {
        self.terms.iter().map(|(f, &c)| (f, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Linear extension of [`boundary_chain`].
    pub fn boundary(&self) -> SignedChain {
        let mut out = SignedChain::new();
        for (f, c) in &self.terms {
            for (g, s) in boundary_chain(f).terms {
                out.add_term(g, s * c);
            }
        }
        out
    }
}

/// `sum_i (-1)^i (face without v_i)`. The boundary of a vertex is the empty chain.
pub fn boundary_chain(face: &FaceKey) -> SignedChain {
    let mut out = SignedChain::new();
    if face.len() < 2 {
        return out;
    }
    for i in 0..face.len() {
        out.add_term(face.without(i), if i % 2 == 0 { 1 } else { -1 });
    }
    out
}

/// The boundary matrix of `x`: `C(n, d)` rows indexed by colex rank of `(d-1)`-faces,
/// one column per `d`-face in colex order.
pub fn build_boundary_matrix(x: &SimplicialComplex) -> SparseSignMatrix {
    let c = Colex::new(x.n, x.d as usize + 1);
    let k = x.d as usize + 1;
    let mut verts = vec![0u32; k];
    let mut facets = Vec::with_capacity(k);
    let mut cols = Vec::with_capacity(x.len());
    for &r in &x.faces {
        c.unrank(r, &mut verts);
        c.facets(&verts, &mut facets);
        let mut col: Vec<(u32, i32)> = facets.iter().map(|&(row, s)| (row as u32, s)).collect();
        col.sort_unstable_by_key(|e| e.0);
        cols.push(col);
    }
    SparseSignMatrix::from_sorted_columns(x.ridge_count() as usize, cols)
}

/// The `n - |tau|` faces `tau + v` for `v` not in `tau`, in increasing `v`.
pub fn cofaces(tau: &FaceKey, n: u32) -> Vec<FaceKey> {
    (0..n).filter(|v| !tau.contains(*v)).map(|v| tau.with_vertex(v)).collect()
}

/// Reads the text format: a header `dim=<d> n=<n>`, then one face per line as
/// space-separated increasing vertex ids. Lines starting with `#` are comments.
pub fn read_complex<R: BufRead>(reader: R) -> Result<SimplicialComplex> {
    let mut header: Option<(u32, u32)> = None;
    let mut ranks = Vec::new();
    let mut seen: BTreeMap<u64, usize> = BTreeMap::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let Some((d, n)) = header else {
            header = Some(parse_header(t).map_err(|msg| Error::Parse { line: lineno, msg })?);
            continue;
        };
        let perr = |msg: String| Error::Parse { line: lineno, msg };
        let verts = t
            .split_whitespace()
            .map(|s| s.parse::<u32>().map_err(|_| perr(format!("bad vertex id '{s}'"))))
            .collect::<Result<Vec<u32>>>()?;
        if verts.len() != d as usize + 1 {
            return Err(perr(format!("expected {} vertices, found {}", d + 1, verts.len())));
        }
        let face = FaceKey::new_in(verts, n).map_err(|e| perr(e.to_string()))?;
        let r = rank_vertices(face.vertices());
        if let Some(prev) = seen.insert(r, lineno) {
            return Err(perr(format!("duplicate face {face} (first seen at line {prev})")));
        }
        ranks.push(r);
    }
    let (d, n) = header.ok_or(Error::Parse { line: 0, msg: "missing header".into() })?;
    SimplicialComplex::from_ranks(n, d, ranks)
}

fn parse_header(t: &str) -> std::result::Result<(u32, u32), String> {
    let mut d = None;
    let mut n = None;
    for tok in t.split_whitespace() {
        let (key, val) = tok.split_once('=').ok_or_else(|| format!("malformed header token '{tok}'"))?;
        let v: u32 = val.parse().map_err(|_| format!("bad header value '{val}'"))?;
        match key {
            "dim" => d = Some(v),
            "n" => n = Some(v),
            _ => return Err(format!("unknown header key '{key}'")),
        }
    }
    match (d, n) {
        (Some(d), Some(n)) if d >= 1 => Ok((d, n)),
        (Some(_), Some(_)) => Err("dim must be at least 1".into()),
        _ => Err("header must be 'dim=<d> n=<n>'".into()),
    }
}

/// Writes the text format with faces in colex order.
pub fn write_complex<W: Write>(x: &SimplicialComplex, mut w: W) -> Result<()> {
    writeln!(w, "dim={} n={}", x.d, x.n)?;
    for f in x.faces() {
        writeln!(w, "{f}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fk(v: &[u32]) -> FaceKey {
        FaceKey::new(v.to_vec()).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(face_rank(&fk(&[0, 1, 2]), 4).unwrap(), 0);
        assert_eq!(face_rank(&fk(&[1, 2, 3]), 4).unwrap(), 3);
        assert_eq!(face_rank(&fk(&[0, 2, 3]), 5).unwrap(), 2);
    }

    #[test]
    fn rank_errors() {
        assert!(face_rank(&fk(&[0, 4]), 4).is_err());
        assert!(FaceKey::new(vec![2, 1]).is_err());
        assert!(FaceKey::new(vec![1, 1]).is_err());
        assert!(face_unrank(10, 3, 5).is_err());
        assert!(face_unrank(0, 6, 5).is_err());
    }

    #[test]
    fn rank_unrank_exhaustive() {
        for n in 1..=12u32 {
            for k in 1..=n as usize {
                let total = binom(n as u64, k as u64);
                let mut it = ColexSubsets::new(n, k);
                for r in 0..total {
                    let f = face_unrank(r, k, n).unwrap();
                    assert_eq!(face_rank(&f, n).unwrap(), r);
                    assert_eq!(it.next().unwrap(), f.vertices());
                }
                assert!(it.next().is_none());
            }
        }
    }

    #[test]
    fn colex_order_matches_ord() {
        let mut all: Vec<FaceKey> = ColexSubsets::new(7, 3).map(FaceKey::from_sorted_unchecked).collect();
        let copy = all.clone();
        all.sort();
        assert_eq!(all, copy);
    }

    #[test]
    fn facets_match_chain() {
        let c = Colex::new(9, 4);
        let mut out = Vec::new();
        for v in ColexSubsets::new(9, 4) {
            c.facets(&v, &mut out);
            let chain = boundary_chain(&fk(&v));
            for &(r, s) in &out {
                let f = face_unrank(r, 3, 9).unwrap();
                assert_eq!(chain.coefficient(&f), s as i64);
            }
        }
    }

    #[test]
    fn table_matches_matrix() {
        let x = SimplicialComplex::complete(7, 2).unwrap();
        let m = build_boundary_matrix(&x);
        let t = BoundaryTable::new(7, 2);
        assert_eq!(t.len(), 35);
        for j in 0..35 {
            assert_eq!(t.column(j as u64), m.column(j));
        }
    }

    #[test]
    fn boundary_examples() {
        let b = boundary_chain(&fk(&[0, 1, 2]));
        assert_eq!(b.coefficient(&fk(&[1, 2])), 1);
        assert_eq!(b.coefficient(&fk(&[0, 2])), -1);
        assert_eq!(b.coefficient(&fk(&[0, 1])), 1);
        assert_eq!(b.len(), 3);
        let e = boundary_chain(&fk(&[0, 1]));
        assert_eq!(e.coefficient(&fk(&[1])), 1);
        assert_eq!(e.coefficient(&fk(&[0])), -1);
        assert!(b.boundary().is_empty());
        assert!(boundary_chain(&fk(&[3])).is_empty());
    }

    #[test]
    fn matrix_shapes() {
        let x = SimplicialComplex::complete(4, 2).unwrap();
        let m = build_boundary_matrix(&x);
        assert_eq!((m.rows(), m.cols()), (6, 4));
        for j in 0..m.cols() {
            assert_eq!(m.column(j).len(), 3);
            assert_eq!(m.column(j).iter().map(|e| e.1.abs()).sum::<i32>(), 3);
        }
        let e = SimplicialComplex::from_faces(2, 1, [fk(&[0, 1])]).unwrap();
        let m = build_boundary_matrix(&e);
        assert_eq!((m.rows(), m.cols()), (2, 1));
        assert_eq!(m.column(0), &[(0, -1), (1, 1)]);
    }

    #[test]
    fn coface_examples() {
        assert_eq!(cofaces(&fk(&[0, 1]), 4), vec![fk(&[0, 1, 2]), fk(&[0, 1, 3])]);
        assert_eq!(cofaces(&fk(&[2, 3]), 4), vec![fk(&[0, 2, 3]), fk(&[1, 2, 3])]);
        assert_eq!(cofaces(&fk(&[1, 4]), 9).len(), 7);
    }

    #[test]
    fn io_round_trip() {
        let star = SimplicialComplex::from_faces(
            5,
            2,
            [[0, 1, 2], [0, 1, 3], [0, 1, 4], [0, 2, 3], [0, 2, 4], [0, 3, 4]].map(|v| fk(&v)),
        )
        .unwrap();
        let mut buf = Vec::new();
        write_complex(&star, &mut buf).unwrap();
        let back = read_complex(buf.as_slice()).unwrap();
        assert_eq!(back, star);
    }

    #[test]
    fn io_errors() {
        let dup = "dim=2 n=5\n0 1 2\n# comment\n0 1 2\n";
        assert_eq!(read_complex(dup.as_bytes()).unwrap_err(), Error::Parse {
            line: 4,
            msg: "duplicate face 0 1 2 (first seen at line 2)".into()
        });
        let unsorted = "dim=2 n=5\n0 2 1\n";
        assert!(matches!(read_complex(unsorted.as_bytes()), Err(Error::Parse { line: 2, .. })));
        let bad_header = "dim=2\n";
        assert!(matches!(read_complex(bad_header.as_bytes()), Err(Error::Parse { line: 1, .. })));
        let empty = read_complex("dim=2 n=5\n".as_bytes()).unwrap();
        assert_eq!((empty.n(), empty.d(), empty.len()), (5, 2, 0));
    }
}
