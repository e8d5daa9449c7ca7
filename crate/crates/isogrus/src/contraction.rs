//! Contraction of the truncation `1_k H_n 1_k` onto `H_{n−2}`.

use std::collections::BTreeSet;

use crate::algebra::{Algebra, Element, Generator, Triple};
use crate::cups::{cup_diagram, dyck_path, flip_unchecked, Cup, LocalShape};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::weight::{Arrow, Weight};

/// Every `k` at which `λ` is contractible.
pub fn contractible_sites(w: &Weight) -> BTreeSet<usize> {
    let n = w.rank();
    let mut out = BTreeSet::new();
    if n >= 2 && w.is_up(1) && w.is_up(2) {
        out.insert(0);
    }
    for k in 1..n {
        if !w.is_up(k) && w.is_up(k + 1) {
            out.insert(k);
        }
    }
    out
}

/// The small cup `(k − ½, k + ½)` witnessing contractibility, in vertex coordinates.
pub fn witness_cup(w: &Weight, k: usize) -> Option<Cup> {
    if !contractible_sites(w).contains(&k) {
        return None;
    }
    let a = k.max(1);
    cup_diagram(w).cup_at(a, a + 1)
}

fn check_site(w: &Weight, k: usize) -> Result<()> {
    if contractible_sites(w).contains(&k) {
        Ok(())
    } else {
        Err(Error::NotContractible(w.to_string(), k))
    }
}

/// `Φ_k(λ)`: delete the witness vertices, then fix the parity at the first vertex.
pub fn phi_weight(w: &Weight, k: usize) -> Result<Weight> {
    check_site(w, k)?;
    let a = k.max(1);
    let mut v: Vec<Arrow> = w.arrows().into_iter().enumerate().filter(|(i, _)| *i + 1 != a && *i != a).map(|(_, x)| x).collect();
    if v.iter().filter(|x| **x == Arrow::Up).count() % 2 == 1 {
        v[0] = v[0].flipped();
    }
    Weight::from_arrows(&v)
}

/// Inverse of `phi_weight` at `k`, raising the rank by two.
pub fn dilate_weight(v: &Weight, k: usize) -> Result<Weight> {
    let n = v.rank();
    let mut arrows = v.arrows();
    if k == 0 {
        arrows.splice(0..0, [Arrow::Up, Arrow::Up]);
    } else {
        if k > n + 1 {
            return Err(Error::NotContractible(v.to_string(), k));
        }
        if let Some(first) = arrows.first_mut() {
            *first = first.flipped();
        }
        arrows.splice(k - 1..k - 1, [Arrow::Down, Arrow::Up]);
    }
    let w = Weight::from_arrows(&arrows)?;
    check_site(&w, k)?;
    Ok(w)
}

fn shift_vertex(v: usize, a: usize) -> usize {
    if v < a {
        v
    } else {
        v - 2
    }
}

/// The image of `p ∈ μ̄` in the contracted diagram, read from `Φ_k(μ)`.
pub fn phi_cup(mu: &Weight, p: &Cup, k: usize) -> Result<Cup> {
    let d = cup_diagram(mu);
    if !d.contains(p) {
        return Err(Error::NoSuchCup(p.l, p.r));
    }
    if witness_cup(mu, k).as_ref() == Some(p) {
        return Err(Error::WitnessRemoved(k));
    }
    let a = k.max(1);
    let small = phi_weight(mu, k)?;
    let (l, r) = (shift_vertex(p.l, a), shift_vertex(p.r, a));
    cup_diagram(&small).cup_at(l, r).ok_or(Error::NoSuchCup(l, r))
}

/// The scalar attached to a generator removing `p` from `μ` under `Φ_k`.
pub fn generator_sign<R: Scalar>(mu: &Weight, p: &Cup, k: usize) -> R {
    // l_p < k < r_p with half-integer endpoints
    let inside = p.l <= k && k < p.r;
    if p.dec && k <= 1 && k < p.l {
        return -R::one();
    }
    if !inside {
        return R::one();
    }
    let path = dyck_path(p, mu).expect("cup of μ̄");
    let shapes = path.shapes_at_content(k);
    match shapes.iter().collect::<Vec<_>>().as_slice() {
        [LocalShape::Cap] => R::imag(),
        [LocalShape::Cup] => -R::imag(),
        other => panic!("ambiguous local shape {:?} of {} at content {}", other, p, k),
    }
}

/// `Φ_k` of a degree-0 or degree-1 generator.
pub fn phi_generator<R: Scalar>(g: &Generator, k: usize) -> Result<Element<R>> {
    for w in [g.source(), g.target()] {
        if !contractible_sites(&w).contains(&k) {
            return Err(Error::NotTruncated(k));
        }
    }
    let (mu, cup) = match *g {
        Generator::Idem(w) => {
            let v = phi_weight(&w, k)?;
            return Ok(Element::idempotent(v));
        }
        Generator::Lower { mu, cup } | Generator::Raise { mu, cup } => (mu, cup),
    };
    if witness_cup(&mu, k) == Some(cup) {
        return Err(Error::WitnessRemoved(k));
    }
    let a = phi_weight(&mu, k)?;
    let b = phi_weight(&flip_unchecked(&mu, &cup), k)?;
    let c = generator_sign::<R>(&mu, &cup, k);
    let t = match g {
        Generator::Lower { .. } => Triple { lambda: b, mu: b, nu: a },
        _ => Triple { lambda: b, mu: a, nu: b },
    };
    Ok(Element::term(t, c))
}

/// `Φ_k` of an element of the truncation, computed in `small` of rank `n − 2`.
pub fn phi_element<R: Scalar>(small: &mut Algebra<R>, x: &Element<R>, k: usize) -> Result<Element<R>> {
    let mut out = Element::zero();
    for (t, c) in x.iter() {
        for w in [t.lambda, t.mu, t.nu] {
            if !contractible_sites(&w).contains(&k) {
                return Err(Error::NotTruncated(k));
            }
        }
        let mut y = Element::idempotent(phi_weight(&t.nu, k)?);
        for g in t.word() {
            let img = phi_generator::<R>(&g, k)?;
            y = small.multiply(&img, &y)?;
        }
        out.add_scaled(&y, c);
    }
    Ok(out)
}
