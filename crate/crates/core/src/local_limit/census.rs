use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::binom::binom;
use crate::complex::{Colex, SimplicialComplex};
use crate::error::{invalid, Result};
use crate::random::{sample_1out, substream};

/// Degrees and child counts at or above this value share one bucket.
pub const DEGREE_CAP: u32 = 12;

/// Rooted neighbourhood type: the capped root degree and, at depth 2, the multiset of
/// cells, each given by the sorted capped child counts of its other facets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct TypeKey {
    degree: u32,
    cells: Vec<Vec<u32>>,
}

impl fmt::Display for TypeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = |v: u32| if v >= DEGREE_CAP { format!("{DEGREE_CAP}+") } else { v.to_string() };
        write!(f, "{}", num(self.degree))?;
        if !self.cells.is_empty() {
            let cells: Vec<String> =
                self.cells.iter().map(|c| c.iter().map(|&v| num(v)).collect::<Vec<_>>().join(",")).collect();
            write!(f, ":[{}]", cells.join("|"))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusRow {
    pub code: String,
    pub empirical: f64,
    pub limit: f64,
    pub abs_diff: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusReport {
    pub n: u32,
    pub d: u32,
    pub depth: u32,
    pub roots: u64,
    /// Total variation distance between the empirical and limiting type laws; limiting
    /// mass on unobserved types counts in full.
    pub tv: f64,
    pub rows: Vec<CensusRow>,
}

/// Poisson(`lambda`) point masses up to `cap - 1`, with the tail at index `cap`.
fn capped_poisson(lambda: f64, shift: u32) -> Vec<f64> {
    let cap = DEGREE_CAP as usize;
    let mut out = vec![0.0; cap + 1];
    let mut pmf = (-lambda).exp();
    for k in 0..cap as u32 {
        if k + shift < DEGREE_CAP {
            out[(k + shift) as usize] = pmf;
        }
        pmf *= lambda / (k + 1) as f64;
    }
    out[cap] = 1.0 - out[..cap].iter().sum::<f64>();
    out
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// Ways to order a sorted multiset, `len! / prod(mult!)`.
fn arrangements(sorted: &[u32]) -> f64 {
    let denom: f64 = sorted.chunk_by(|a, b| a == b).map(|run| factorial(run.len())).product();
    factorial(sorted.len()) / denom
}

struct Limit {
    /// child counts of A-facets: 1 + Poisson(d)
    fa: Vec<f64>,
    /// child counts of B-facets: Poisson(d)
    fb: Vec<f64>,
}

impl Limit {
    fn new(d: u32) -> Self {
        Limit { fa: capped_poisson(d as f64, 1), fb: capped_poisson(d as f64, 0) }
    }

    fn cell_a(&self, t: &[u32]) -> f64 {
        arrangements(t) * t.iter().map(|&v| self.fa[v as usize]).product::<f64>()
    }

    fn cell_b(&self, t: &[u32]) -> f64 {
        let mut total = 0.0;
        for (i, &v) in t.iter().enumerate() {
            if i > 0 && t[i - 1] == v {
                continue;
            }
            let rest: Vec<u32> = t[..i].iter().chain(&t[i + 1..]).copied().collect();
            total += self.fb[v as usize] * self.cell_a(&rest);
        }
        total
    }

    fn probability(&self, key: &TypeKey, depth: u32) -> f64 {
        match depth {
            0 => 1.0,
            1 => self.fa[key.degree as usize],
            _ if key.degree >= DEGREE_CAP => self.fa[DEGREE_CAP as usize],
            _ => {
                // the root degree fixes the Poisson count; one of the distinct cell
                // shapes is the A-cell and the rest are independent B-cells
                let m = key.degree as usize - 1;
                let pm = self.fb[m];
                let mut total = 0.0;
                for (i, t) in key.cells.iter().enumerate() {
                    if i > 0 && key.cells[i - 1] == *t {
                        continue;
                    }
                    let rest: Vec<&Vec<u32>> = key.cells[..i].iter().chain(&key.cells[i + 1..]).collect();
                    let mut pb = factorial(m);
                    for run in rest.chunk_by(|a, b| a == b) {
                        pb /= factorial(run.len());
                    }
                    pb *= rest.iter().map(|c| self.cell_b(c)).product::<f64>();
                    total += self.cell_a(t) * pb;
                }
                pm * total
            }
        }
    }
}

/// Neighbourhood types of every `(d-1)`-face of one 1-out sample.
fn sample_types(x: &SimplicialComplex, depth: u32) -> BTreeMap<TypeKey, u64> {
    let (n, d) = (x.n(), x.d() as usize);
    let colex = Colex::new(n, d + 1);
    let ridges = x.ridge_count() as usize;
    let mut verts = vec![0u32; d + 1];
    let mut facets = Vec::new();
    let mut face_facets: Vec<Vec<u64>> = Vec::with_capacity(x.len());
    let mut incident: Vec<Vec<u32>> = vec![Vec::new(); ridges];
    for (i, &r) in x.face_ranks().iter().enumerate() {
        colex.unrank(r, &mut verts);
        colex.facets(&verts, &mut facets);
        face_facets.push(facets.iter().map(|e| e.0).collect());
        for &(t, _) in &facets {
            incident[t as usize].push(i as u32);
        }
    }
    let cap = |v: usize| (v as u32).min(DEGREE_CAP);
    let mut out = BTreeMap::new();
    for (t, cells) in incident.iter().enumerate() {
        let degree = cap(cells.len());
        let mut key = TypeKey { degree, cells: Vec::new() };
        if depth >= 2 && degree < DEGREE_CAP {
            key.cells = cells
                .iter()
                .map(|&c| {
                    let mut counts: Vec<u32> = face_facets[c as usize]
                        .iter()
                        .filter(|&&u| u != t as u64)
                        .map(|&u| cap(incident[u as usize].len() - 1))
                        .collect();
                    counts.sort_unstable();
                    counts
                })
                .collect();
            key.cells.sort();
        }
        if depth == 0 {
            key.degree = 0;
        }
        *out.entry(key).or_insert(0) += 1;
    }
    out
}

/// Compares rooted neighbourhoods in 1-out samples with the limiting `d`-tree.
///
/// Every `(d-1)`-face of each of `trials` samples serves as a root. Depth counts facet
/// generations: depth 1 sees the root's cells, depth 2 also the child counts of their
/// other facets.
pub fn neighborhood_census(n: u32, d: u32, depth: u32, trials: u64, seed: u64) -> Result<CensusReport> {
    if depth > 2 {
        return invalid(format!("census depth must be at most 2, got {depth}"));
    }
    if trials == 0 {
        return invalid("need at least one trial");
    }
    if d == 0 || n <= d + 1 {
        return invalid(format!("need n > d + 1 and d >= 1, got n = {n}, d = {d}"));
    }
    let counts = (0..trials)
        .into_par_iter()
        .map(|i| {
            let s = sample_1out(n, d, &mut substream(seed, "census", i)).expect("validated parameters");
            sample_types(&s.complex, depth)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(BTreeMap::new(), |mut acc, m| {
            for (k, v) in m {
                *acc.entry(k).or_insert(0u64) += v;
            }
            acc
        });
    let roots = trials * binom(n as u64, d as u64);
    let limit = Limit::new(d);
    let mut rows = Vec::with_capacity(counts.len());
    let (mut diff, mut covered) = (0.0, 0.0);
    for (key, c) in &counts {
        let empirical = *c as f64 / roots as f64;
        let lim = limit.probability(key, depth);
        covered += lim;
        diff += (empirical - lim).abs();
        let code = if depth == 0 { "root".to_string() } else { key.to_string() };
        rows.push(CensusRow { code, empirical, limit: lim, abs_diff: (empirical - lim).abs() });
    }
    let tv = 0.5 * (diff + (1.0 - covered).max(0.0));
    Ok(CensusReport { n, d, depth, roots, tv, rows })
}
