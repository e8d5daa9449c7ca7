use isogrus::algebra::{generator_pairs, generators, matching_rules, Rule};
use isogrus::{basis, Algebra, Element, GaussInt, Generator};

#[test]
fn basis_counts() {
    let counts: Vec<usize> = (1..=5).map(|n| basis(n).len()).collect();
    assert_eq!(counts, vec![1, 5, 13, 67, 187]);
}

#[test]
fn exactly_one_rule_per_pair() {
    for n in 1..=6 {
        for (a, b) in generator_pairs(n) {
            let rs = matching_rules(&a, &b);
            assert_eq!(rs.len(), 1, "{} then {}: {:?}", a, b, rs);
        }
    }
}

fn associator(alg: &mut Algebra<GaussInt>, a: &Generator, b: &Generator, c: &Generator) -> bool {
    let (x, y, z) = (Element::generator(a), Element::generator(b), Element::generator(c));
    let xy = alg.multiply(&x, &y).unwrap();
    let yz = alg.multiply(&y, &z).unwrap();
    alg.multiply(&xy, &z).unwrap() == alg.multiply(&x, &yz).unwrap()
}

#[test]
fn generator_triples_associate() {
    for n in 1..=5 {
        let mut alg = Algebra::<GaussInt>::new(n);
        let gens = generators(n);
        for a in &gens {
            for b in gens.iter().filter(|b| b.target() == a.source()) {
                for c in gens.iter().filter(|c| c.target() == b.source()) {
                    assert!(associator(&mut alg, a, b, c), "({} {}) {}", a, b, c);
                }
            }
        }
        assert!(alg.stats().keys().any(|r| *r == Rule::SelfDual) || n < 2);
    }
}
