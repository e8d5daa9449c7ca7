//! Oriented cup diagrams, degrees, p-Kazhdan–Lusztig polynomials and DP sets.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cups::{cup_diagram, Cup};
use crate::weight::{enumerate_weights, Arrow, Weight};

/// `μ̄λ` together with its degree and the anticlockwise cups of `μ̄` flipped to reach `λ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientedPair {
    pub mu: Weight,
    pub lambda: Weight,
    pub degree: usize,
    pub flipped: Vec<Cup>,
}

/// Orients `μ̄` by `λ` if possible.
pub fn orient(mu: &Weight, lambda: &Weight) -> Option<OrientedPair> {
    if mu.rank() != lambda.rank() {
        return None;
    }
    let d = cup_diagram(mu);
    let mut flipped = Vec::new();
    for c in &d.cups {
        let (a, b) = (lambda.at(c.l), lambda.at(c.r));
        if c.dec != (a == b) {
            return None;
        }
        if b == Arrow::Down {
            flipped.push(*c);
        }
    }
    for r in &d.rays {
        let want = if r.dec { Arrow::Up } else { Arrow::Down };
        if lambda.at(r.v) != want {
            return None;
        }
    }
    Some(OrientedPair { mu: *mu, lambda: *lambda, degree: flipped.len(), flipped })
}

pub fn degree(mu: &Weight, lambda: &Weight) -> Option<usize> {
    orient(mu, lambda).map(|o| o.degree)
}

/// `^p n_{λ,μ}`: either zero or the monomial `q^degree`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KlPolynomial {
    pub degree: Option<usize>,
}

impl KlPolynomial {
    pub fn is_zero(&self) -> bool {
        self.degree.is_none()
    }

    /// Coefficients indexed by the power of q.
    pub fn coefficients(&self) -> Vec<u64> {
        match self.degree {
            None => vec![],
            Some(d) => {
                let mut v = vec![0; d + 1];
                v[d] = 1;
                v
            }
        }
    }
}

impl fmt::Display for KlPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.degree {
            None => f.write_str("0"),
            Some(0) => f.write_str("1"),
            Some(1) => f.write_str("q"),
            Some(d) => write!(f, "q^{}", d),
        }
    }
}

pub fn kl_polynomial(lambda: &Weight, mu: &Weight) -> KlPolynomial {
    KlPolynomial { degree: degree(mu, lambda) }
}

/// All `μ` with `μ̄λ` oriented, with their degrees, in increasing order of `μ`.
pub fn dp_set(lambda: &Weight) -> Vec<(Weight, usize)> {
    enumerate_weights(lambda.rank())
        .into_iter()
        .filter_map(|mu| degree(&mu, lambda).map(|d| (mu, d)))
        .collect()
}

/// `DP(λ)` stratified by degree.
pub fn dp_layers(lambda: &Weight) -> BTreeMap<usize, Vec<Weight>> {
    let mut out: BTreeMap<usize, Vec<Weight>> = BTreeMap::new();
    for (mu, d) in dp_set(lambda) {
        out.entry(d).or_default().push(mu);
    }
    out
}

pub fn dp_k(lambda: &Weight, k: usize) -> Vec<Weight> {
    dp_layers(lambda).remove(&k).unwrap_or_default()
}

/// The weight of maximal degree in `DP(λ)`, built directly from `λ`.
pub fn socle_weight(lambda: &Weight) -> Weight {
    let n = lambda.rank();
    let mut used = vec![false; n + 1];
    let mut cups = Vec::new();
    let mut stack = Vec::new();
    for i in 1..=n {
        match lambda.at(i) {
            Arrow::Up => stack.push(i),
            Arrow::Down => {
                if let Some(j) = stack.pop() {
                    cups.push(Cup::undecorated(j, i));
                    used[i] = true;
                    used[j] = true;
                }
            }
        }
    }
    let downs: Vec<usize> = (1..=n).filter(|&i| !used[i] && lambda.at(i) == Arrow::Down).collect();
    for pair in downs.chunks(2) {
        if let [a, b] = pair {
            cups.push(Cup::decorated(*a, *b));
            used[*a] = true;
            used[*b] = true;
        }
    }
    let mut rest: Vec<usize> = (1..=n).filter(|&i| !used[i]).collect();
    if rest.len() >= 2 && lambda.at(rest[0]) == Arrow::Down {
        cups.push(Cup::undecorated(rest[0], rest[1]));
        rest.drain(..2);
    }
    let mut arrows = vec![Arrow::Down; n];
    for c in &cups {
        if c.dec {
            arrows[c.l - 1] = Arrow::Up;
            arrows[c.r - 1] = Arrow::Up;
        } else {
            arrows[c.r - 1] = Arrow::Up;
        }
    }
    // leftover ∧'s pair into decorated cups, a final ∧ keeps a decorated ray
    for &v in &rest {
        arrows[v - 1] = lambda.at(v);
    }
    Weight::from_arrows(&arrows).expect("socle construction keeps parity")
}
