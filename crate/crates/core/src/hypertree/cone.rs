use crate::binom::binom;
use crate::complex::{FaceKey, SimplicialComplex};
use crate::error::{invalid, Result};

use super::certify;

/// `T ∪ {n·τ : τ ∈ S}` on `n + 1` vertices, for a `d`-hypertree `T` and a
/// `(d-1)`-hypertree `S` on the same `n` vertices.
///
/// Colex ranks are stable under adding a vertex, so `T` keeps its ranks and each coned
/// face `τ + {n}` has rank `rank(τ) + C(n, d + 1)`. Requires `d >= 2`; the `d = 1` base
/// of the recursion is handled by [`cone_hypertree`].
pub fn cone_extend(t: &SimplicialComplex, s: &SimplicialComplex) -> Result<SimplicialComplex> {
    if t.n() != s.n() || t.d() != s.d() + 1 {
        return invalid(format!(
            "expected a d-complex and a (d-1)-complex on the same vertices, got (n={}, d={}) and (n={}, d={})",
            t.n(),
            t.d(),
            s.n(),
            s.d()
        ));
    }
    if !certify(t).is_hypertree {
        return invalid("first argument is not a hypertree");
    }
    if !certify(s).is_hypertree {
        return invalid("second argument is not a hypertree");
    }
    let shift = binom(t.n() as u64, t.d() as u64 + 1);
    let faces = t
        .face_ranks()
        .iter()
        .copied()
        .chain(s.face_ranks().iter().map(|&r| r + shift))
        .collect();
    SimplicialComplex::from_ranks(t.n() + 1, t.d(), faces)
}

/// The collapsible `d`-hypertree on `n` vertices obtained by repeated coning:
/// `G(n+1, d) = G(n, d) ∪ n·G(n, d-1)`, with `G(n, 0) = {{n-1}}` and `G(n, d)` empty when
/// `n <= d`.
pub fn cone_hypertree(n: u32, d: u32) -> Result<SimplicialComplex> {
    if d == 0 {
        return invalid("dimension must be at least 1");
    }
    let faces = cone_faces(n, d).into_iter().map(FaceKey::from_sorted_unchecked);
    SimplicialComplex::from_faces(n, d, faces)
}

fn cone_faces(n: u32, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return Vec::new();
    }
    if d == 0 {
        return vec![vec![n - 1]];
    }
    if n <= d {
        return Vec::new();
    }
    let mut out = cone_faces(n - 1, d);
    out.extend(cone_faces(n - 1, d - 1).into_iter().map(|mut f| {
        f.push(n - 1);
        f
    }));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypertree::peel_collapse;
    use crate::hypertree::tests::star;

    #[test]
    fn small_generator() {
        let g = cone_hypertree(4, 2).unwrap();
        let faces: Vec<Vec<u32>> = g.faces().map(|f| f.vertices().to_vec()).collect();
        assert_eq!(faces, vec![vec![0, 1, 2], vec![0, 1, 3], vec![1, 2, 3]]);
    }

    #[test]
    fn generator_sizes_and_collapsibility() {
        for d in 1..=4u32 {
            for n in d + 1..=9 {
                let g = cone_hypertree(n, d).unwrap();
                assert_eq!(g.len() as u64, binom(n as u64 - 1, d as u64), "n={n} d={d}");
                assert!(certify(&g).is_hypertree);
                assert!(peel_collapse(&g, None).collapsible);
            }
        }
        let g = cone_hypertree(6, 2).unwrap();
        assert_eq!(g.len(), 10);
    }

    #[test]
    fn extend_star_by_path() {
        let path = SimplicialComplex::from_faces(
            4,
            1,
            [[0, 1], [1, 2], [2, 3]].map(|f| FaceKey::new(f.to_vec()).unwrap()),
        )
        .unwrap();
        let out = cone_extend(&star(4, 2), &path).unwrap();
        assert_eq!((out.n(), out.len()), (5, 6));
        assert!(certify(&out).is_hypertree);
        assert!(peel_collapse(&out, None).collapsible);
        assert!(out.contains(&FaceKey::new(vec![1, 2, 4]).unwrap()));
    }

    #[test]
    fn extend_rejects_non_hypertrees() {
        let sphere = SimplicialComplex::complete(4, 2).unwrap();
        let path = cone_hypertree(4, 1).unwrap();
        assert!(cone_extend(&sphere, &path).is_err());
        assert!(cone_extend(&star(4, 2), &star(5, 1)).is_err());
    }
}
