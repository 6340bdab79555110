use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::Serialize;

use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TypeTag {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    /// A `(d-1)`-face.
    Facet,
    /// A `d`-face.
    Cell,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DTreeNode {
    pub role: Role,
    pub kind: TypeTag,
    pub children: Vec<DTreeNode>,
}

impl DTreeNode {
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(DTreeNode::size).sum::<usize>()
    }

    /// Checks the type rules below this node: cells have `d` facet children, an A-facet
    /// has exactly one A-cell child, a B-facet none, an A-cell only A-facets and a B-cell
    /// exactly one B-facet. Leaf facets are truncation points and are not checked.
    pub fn satisfies_rules(&self, d: u32) -> bool {
        let count = |role, kind| self.children.iter().filter(|c| c.role == role && c.kind == kind).count();
        let here = match (self.role, self.kind) {
            (Role::Facet, _) if self.children.is_empty() => true,
            (Role::Facet, TypeTag::A) => count(Role::Cell, TypeTag::A) == 1 && count(Role::Facet, TypeTag::A) == 0,
            (Role::Facet, TypeTag::B) => count(Role::Cell, TypeTag::A) == 0 && !self.children.iter().any(|c| c.role == Role::Facet),
            (Role::Cell, kind) => {
                let b_facets = count(Role::Facet, TypeTag::B);
                self.children.len() == d as usize
                    && count(Role::Facet, TypeTag::A) + b_facets == d as usize
                    && b_facets == usize::from(kind == TypeTag::B)
            }
        };
        here && self.children.iter().all(|c| c.satisfies_rules(d))
    }

    /// Number of cell children of the root facet.
    pub fn root_degree(&self) -> usize {
        self.children.len()
    }
}

/// Samples the `d`-tree from a type-A root facet, truncated after `depth` facet
/// generations.
///
/// A type-A facet has one type-A cell child and Poisson(d) type-B ones; a type-B facet
/// has Poisson(d) type-B cells. An A-cell has `d` A-facet children; a B-cell one
/// B-facet and `d - 1` A-facets.
pub fn sample_bd<R: Rng + ?Sized>(d: u32, depth: u32, rng: &mut R) -> Result<DTreeNode> {
    if d == 0 {
        return invalid("dimension must be at least 1");
    }
    let poisson = Poisson::new(d as f64).expect("positive rate");
    Ok(facet(TypeTag::A, d, depth, &poisson, rng))
}

fn facet<R: Rng + ?Sized>(kind: TypeTag, d: u32, depth: u32, poisson: &Poisson<f64>, rng: &mut R) -> DTreeNode {
    let mut children = Vec::new();
    if depth > 0 {
        if kind == TypeTag::A {
            children.push(cell(TypeTag::A, d, depth, poisson, rng));
        }
        let m = poisson.sample(rng) as u64;
        for _ in 0..m {
            children.push(cell(TypeTag::B, d, depth, poisson, rng));
        }
    }
    DTreeNode { role: Role::Facet, kind, children }
}

fn cell<R: Rng + ?Sized>(kind: TypeTag, d: u32, depth: u32, poisson: &Poisson<f64>, rng: &mut R) -> DTreeNode {
    let children = (0..d)
        .map(|i| {
            let k = if kind == TypeTag::B && i == 0 { TypeTag::B } else { TypeTag::A };
            facet(k, d, depth - 1, poisson, rng)
        })
        .collect();
    DTreeNode { role: Role::Cell, kind, children }
}
