//! Oracles for the algebra, the contraction maps and the cell modules.

use std::collections::BTreeMap;

use isogrus::algebra::{canonical_chain, lowering_chain, parse_word, raising_chain};
use isogrus::cells::{alperin_diagram, cell_module, grading_is_radical, socle_matches};
use isogrus::contraction::{contractible_sites, phi_cup, phi_element, phi_weight, witness_cup};
use isogrus::{basis, cup_diagram, dp_set, enumerate_weights, Algebra, ComplexF64, Cup, Element, GaussInt, Triple, Weight};
use num_bigint::BigInt;
use num_complex::Complex;

fn w(s: &str) -> Weight {
    s.parse().unwrap()
}

#[test]
fn rank_two_basis() {
    let (dd, uu) = (w("dd"), w("uu"));
    let got = basis(2);
    let want = vec![
        Triple { lambda: dd, mu: dd, nu: dd },
        Triple { lambda: dd, mu: dd, nu: uu },
        Triple { lambda: dd, mu: uu, nu: dd },
        Triple { lambda: dd, mu: uu, nu: uu },
        Triple { lambda: uu, mu: uu, nu: uu },
    ];
    let mut want = want;
    want.sort();
    assert_eq!(got, want);
}

#[test]
fn dimension_is_sum_of_squares() {
    for n in 1..=7 {
        let by_dp: usize = enumerate_weights(n).iter().map(|l| dp_set(l).len().pow(2)).sum();
        assert_eq!(basis(n).len(), by_dp);
    }
}

#[test]
fn graded_dimension_is_palindromic_in_the_dual() {
    for n in 1..=6 {
        let mut by_degree: BTreeMap<usize, usize> = BTreeMap::new();
        for t in basis(n) {
            *by_degree.entry(t.degree()).or_default() += 1;
            assert_eq!(t.dual().dual(), t);
            assert_eq!(t.dual().degree(), t.degree());
        }
        assert_eq!(by_degree[&0], enumerate_weights(n).len());
    }
}

#[test]
fn dual_example() {
    let t = Triple { lambda: w("dd"), mu: w("uu"), nu: w("dd") };
    assert_eq!(t.dual(), Triple { lambda: w("dd"), mu: w("dd"), nu: w("uu") });
}

#[test]
fn canonical_chains() {
    assert_eq!(canonical_chain(&w("uu"), &w("dd")), Some(vec![Cup::decorated(1, 2)]));
    assert_eq!(canonical_chain(&w("dd"), &w("dd")), Some(vec![]));
    assert_eq!(canonical_chain(&w("dd"), &w("uu")), None);
    for n in 1..=7 {
        for lam in enumerate_weights(n) {
            for (mu, d) in dp_set(&lam) {
                let down = lowering_chain(&mu, &lam);
                assert_eq!(down.len(), d);
                assert_eq!(down.first().map(|g| g.source()).unwrap_or(mu), mu);
                assert_eq!(down.last().map(|g| g.target()).unwrap_or(lam), lam);
                for pair in down.windows(2) {
                    assert_eq!(pair[0].target(), pair[1].source());
                }
                let up = raising_chain(&mu, &lam);
                assert_eq!(up.first().map(|g| g.source()).unwrap_or(lam), lam);
                assert_eq!(up.last().map(|g| g.target()).unwrap_or(mu), mu);
            }
        }
    }
}

#[test]
fn word_product_is_the_basis_element() {
    // applying a basis element's own word to the source idempotent reproduces it
    for n in 1..=5 {
        let mut alg = Algebra::<GaussInt>::new(n);
        for t in basis(n) {
            let x = alg.apply_word(&t.word(), Element::idempotent(t.nu));
            assert_eq!(x, Element::basis(t), "{}", t);
        }
    }
}

#[test]
fn cached_and_uncached_agree() {
    let n = 5;
    let mut a = Algebra::<GaussInt>::new(n);
    let mut b = Algebra::<GaussInt>::uncached(n);
    let ts = basis(n);
    for x in ts.iter().step_by(7) {
        for y in ts.iter().step_by(5) {
            let (x, y) = (Element::basis(*x), Element::basis(*y));
            assert_eq!(a.multiply(&x, &y).unwrap(), b.multiply(&x, &y).unwrap());
        }
    }
}

#[test]
fn exact_and_float_scalars_agree() {
    let n = 5;
    let mut exact = Algebra::<GaussInt>::new(n);
    let mut float = Algebra::<ComplexF64>::new(n);
    let ts = basis(n);
    for x in ts.iter().step_by(3) {
        for y in ts.iter().step_by(4) {
            let e = exact.multiply(&Element::basis(*x), &Element::basis(*y)).unwrap();
            let f = float.multiply(&Element::basis(*x), &Element::basis(*y)).unwrap();
            let to_f = e.map_coefficients(|c: &GaussInt| {
                let re: f64 = c.re.to_string().parse().unwrap();
                let im: f64 = c.im.to_string().parse().unwrap();
                Complex::new(re, im)
            });
            assert_eq!(to_f, f);
        }
    }
}

#[test]
fn rank_two_loops() {
    // the loop through the larger weight is the degree-two basis element, the other vanishes
    let mut alg = Algebra::<GaussInt>::new(2);
    let x = alg.product(&parse_word("L(uu,1-2);R(uu,1-2)").unwrap()).unwrap();
    assert!(x.is_zero());
    let y = alg.product(&parse_word("R(uu,1-2);L(uu,1-2)").unwrap()).unwrap();
    assert_eq!(y, Element::basis(Triple { lambda: w("dd"), mu: w("uu"), nu: w("uu") }));
}

#[test]
fn phi_cup_shifts_endpoints() {
    for n in 3..=8 {
        for mu in enumerate_weights(n) {
            for k in contractible_sites(&mu) {
                let wit = witness_cup(&mu, k);
                let a = k.max(1);
                let shift = |v: usize| if v < a { v } else { v - 2 };
                for p in cup_diagram(&mu).cups {
                    if Some(p) == wit {
                        assert!(phi_cup(&mu, &p, k).is_err());
                        continue;
                    }
                    let q = phi_cup(&mu, &p, k).unwrap();
                    assert_eq!((q.l, q.r), (shift(p.l), shift(p.r)), "{} in {} at {}", p, mu, k);
                }
            }
        }
    }
}

#[test]
fn contraction_preserves_degree() {
    for n in 3..=6 {
        let mut small = Algebra::<GaussInt>::new(n - 2);
        for t in basis(n) {
            let sites = contractible_sites(&t.lambda);
            for k in sites.iter().copied().filter(|k| contractible_sites(&t.mu).contains(k) && contractible_sites(&t.nu).contains(k)) {
                let img = phi_element(&mut small, &Element::basis(t), k).unwrap();
                let lam = phi_weight(&t.lambda, k).unwrap();
                let mu = phi_weight(&t.mu, k).unwrap();
                let nu = phi_weight(&t.nu, k).unwrap();
                let target = Triple { lambda: lam, mu, nu };
                assert_eq!(img.len(), 1, "{} at {}", t, k);
                assert_eq!(img.degree(), Some(t.degree()));
                assert!(!img.coefficient(&target).re.eq(&BigInt::from(0)) || !img.coefficient(&target).im.eq(&BigInt::from(0)));
            }
        }
    }
}

#[test]
fn cell_modules() {
    let cm = cell_module(&w("dd"));
    assert_eq!(cm.dim(), 2);
    assert_eq!(cm.layers(), vec![vec![w("dd")], vec![w("uu")]]);
    for n in 1..=6 {
        let mut alg = Algebra::<GaussInt>::new(n);
        for lam in enumerate_weights(n) {
            let cm = cell_module(&lam);
            assert_eq!(cm.dim(), dp_set(&lam).len());
            assert_eq!(alperin_diagram(&lam).vertices.len(), cm.dim());
            assert!(grading_is_radical(&mut alg, &lam), "{}", lam);
            assert!(socle_matches(&lam), "{}", lam);
        }
    }
}
