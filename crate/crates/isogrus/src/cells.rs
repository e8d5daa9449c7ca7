//! Cell modules, the generator action and strong Alperin diagrams.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Generator, Triple};
use crate::cups::{cup_diagram, flip_unchecked, Cup};
use crate::orient::{dp_set, socle_weight};
use crate::scalar::Scalar;
use crate::tiles::TilePartition;
use crate::weight::Weight;

/// `Δ(λ)` with basis `u_μ`, `μ ∈ DP(λ)`, graded by degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellModule {
    pub lambda: Weight,
    pub basis: Vec<(Weight, usize)>,
}

impl CellModule {
    pub fn new(lambda: Weight) -> CellModule {
        CellModule { lambda, basis: dp_set(&lambda) }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree_of(&self, mu: &Weight) -> Option<usize> {
        self.basis.iter().find(|(m, _)| m == mu).map(|(_, d)| *d)
    }

    /// Grading layers; these are also the radical and socle layers.
    pub fn layers(&self) -> Vec<Vec<Weight>> {
        let mut by: BTreeMap<usize, Vec<Weight>> = BTreeMap::new();
        for (m, d) in &self.basis {
            by.entry(*d).or_default().push(*m);
        }
        by.into_values().collect()
    }

    /// The unique vertex of maximal degree, if unique.
    pub fn socle(&self) -> Option<Weight> {
        let top = self.layers().pop()?;
        match top.as_slice() {
            [m] => Some(*m),
            _ => None,
        }
    }
}

pub fn cell_module(lambda: &Weight) -> CellModule {
    CellModule::new(*lambda)
}

/// Whether `[a] ⊊ [b]`.
pub fn strictly_below(a: &Weight, b: &Weight) -> bool {
    let (x, y) = (TilePartition::from_weight(a).tile_set(), TilePartition::from_weight(b).tile_set());
    x.len() < y.len() && x.is_subset(&y)
}

/// `g · u_μ` in `Δ(λ)`, as coefficients on `u_ν`.
pub fn act<R: Scalar>(alg: &mut Algebra<R>, g: &Generator, lambda: &Weight, mu: &Weight) -> BTreeMap<Weight, R> {
    let t = Triple { lambda: *lambda, mu: *mu, nu: *lambda };
    let mut out = BTreeMap::new();
    for (s, c) in alg.act(g, &t).iter() {
        if s.lambda == *lambda {
            assert_eq!(s.nu, *lambda);
            out.insert(s.mu, c.clone());
        } else {
            assert!(strictly_below(&s.lambda, lambda), "{} escapes the cell ideal below {}", s, lambda);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    /// `ν = μ − p`.
    Remove,
    /// `μ = ν − p`.
    Add,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AlperinEdge {
    pub from: Weight,
    pub to: Weight,
    pub kind: EdgeKind,
    pub cup: Cup,
    /// Action coefficient as a Gaussian integer, when computed.
    pub coefficient: Option<(i64, i64)>,
}

impl AlperinEdge {
    /// The generator carrying `u_from` to `u_to`.
    pub fn generator(&self) -> Generator {
        match self.kind {
            EdgeKind::Remove => Generator::Lower { mu: self.from, cup: self.cup },
            EdgeKind::Add => Generator::Raise { mu: self.to, cup: self.cup },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlperinGraph {
    pub lambda: Weight,
    pub vertices: Vec<(Weight, usize)>,
    pub edges: Vec<AlperinEdge>,
}

impl AlperinGraph {
    pub fn layers(&self) -> Vec<Vec<Weight>> {
        CellModule { lambda: self.lambda, basis: self.vertices.clone() }.layers()
    }

    pub fn sources(&self) -> Vec<Weight> {
        let targets: BTreeSet<Weight> = self.edges.iter().map(|e| e.to).collect();
        self.vertices.iter().map(|(m, _)| *m).filter(|m| !targets.contains(m)).collect()
    }

    pub fn sinks(&self) -> Vec<Weight> {
        let origins: BTreeSet<Weight> = self.edges.iter().map(|e| e.from).collect();
        self.vertices.iter().map(|(m, _)| *m).filter(|m| !origins.contains(m)).collect()
    }

    pub fn edge_pairs(&self) -> BTreeSet<(Weight, Weight)> {
        self.edges.iter().map(|e| (e.from, e.to)).collect()
    }
}

/// Edges `μ → ν` between consecutive layers with `ν = μ ± p`.
pub fn alperin_diagram(lambda: &Weight) -> AlperinGraph {
    let module = CellModule::new(*lambda);
    let degree: BTreeMap<Weight, usize> = module.basis.iter().copied().collect();
    let mut edges = Vec::new();
    for (mu, d) in &module.basis {
        for cup in cup_diagram(mu).cups {
            let nu = flip_unchecked(mu, &cup);
            if degree.get(&nu) == Some(&(d + 1)) {
                edges.push(AlperinEdge { from: *mu, to: nu, kind: EdgeKind::Remove, cup, coefficient: None });
            }
        }
        for (nu, e) in &module.basis {
            if *e != d + 1 {
                continue;
            }
            for cup in cup_diagram(nu).cups {
                if flip_unchecked(nu, &cup) == *mu {
                    edges.push(AlperinEdge { from: *mu, to: *nu, kind: EdgeKind::Add, cup, coefficient: None });
                }
            }
        }
    }
    edges.sort();
    AlperinGraph { lambda: *lambda, vertices: module.basis, edges }
}

/// Edges found by acting with every degree-1 generator on every basis vector.
pub fn action_edges<R: Scalar>(alg: &mut Algebra<R>, lambda: &Weight) -> BTreeSet<(Weight, Weight)> {
    let module = CellModule::new(*lambda);
    let mut out = BTreeSet::new();
    for (mu, d) in &module.basis {
        for g in degree_one_from(mu) {
            for (nu, _) in act(alg, &g, lambda, mu) {
                if module.degree_of(&nu) == Some(d + 1) {
                    out.insert((*mu, nu));
                }
            }
        }
    }
    out
}

fn degree_one_from(mu: &Weight) -> Vec<Generator> {
    let mut out = Vec::new();
    for cup in cup_diagram(mu).cups {
        out.push(Generator::Lower { mu: *mu, cup });
    }
    for top in crate::weight::enumerate_weights(mu.rank()) {
        for cup in cup_diagram(&top).cups {
            if flip_unchecked(&top, &cup) == *mu {
                out.push(Generator::Raise { mu: top, cup });
            }
        }
    }
    out
}

/// The combinatorial diagram with every edge confirmed by the action; `None` if some edge is not.
pub fn checked_alperin_diagram<R: Scalar>(alg: &mut Algebra<R>, lambda: &Weight) -> Option<AlperinGraph> {
    let mut g = alperin_diagram(lambda);
    for e in &mut g.edges {
        let c = act(alg, &e.generator(), lambda, &e.from).remove(&e.to)?;
        e.coefficient = c.to_gauss();
    }
    Some(g)
}

/// Checks that the grading filtration is the radical filtration: degree-1 generators raise
/// the degree by exactly one, and every non-socle vector is raised by some generator.
pub fn grading_is_radical<R: Scalar>(alg: &mut Algebra<R>, lambda: &Weight) -> bool {
    let module = CellModule::new(*lambda);
    let top = module.basis.iter().map(|(_, d)| *d).max().unwrap_or(0);
    for (mu, d) in &module.basis {
        let mut raised = false;
        for g in degree_one_from(mu) {
            for (nu, _) in act(alg, &g, lambda, mu) {
                if module.degree_of(&nu) != Some(d + 1) {
                    return false;
                }
                raised = true;
            }
        }
        if *d < top && !raised {
            return false;
        }
    }
    true
}

/// Whether the unique maximal-degree vertex is the directly constructed socle weight.
pub fn socle_matches(lambda: &Weight) -> bool {
    CellModule::new(*lambda).socle() == Some(socle_weight(lambda))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GaussInt;

    #[test]
    fn rank_two_empty_partition() {
        let lam: Weight = "dd".parse().unwrap();
        let g = alperin_diagram(&lam);
        assert_eq!(g.vertices.len(), 2);
        assert_eq!(g.edges.len(), 1);
        let mut alg = Algebra::<GaussInt>::new(2);
        let checked = checked_alperin_diagram(&mut alg, &lam).unwrap();
        assert_eq!(checked.edges[0].coefficient, Some((1, 0)));
    }

    #[test]
    fn submodule_example() {
        let lam = TilePartition::new(7, vec![1, 2, 1, 1]).unwrap().to_weight();
        let g = alperin_diagram(&lam);
        let layers = g.layers();
        assert_eq!(layers.len(), 4);
        assert_eq!(layers[0], vec![lam]);
        assert_eq!(layers[3], vec![socle_weight(&lam)]);
        assert_eq!(g.sources(), vec![lam]);
        assert_eq!(g.sinks(), vec![socle_weight(&lam)]);
    }
}
