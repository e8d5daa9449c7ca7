//! Worked examples and brute-force oracles for the combinatorics.

use std::collections::BTreeSet;

use isogrus::cups::{
    adjacent, commute, covers, doubly_covers, dyck_path, flip_cup, generated_cup, trace_tiled_diagram, LocalShape, Ray,
};
use isogrus::orient::{dp_k, dp_set, socle_weight};
use isogrus::{cup_diagram, enumerate_weights, kl_polynomial, orient, Cup, Tile, TilePartition, Weight};

fn w(s: &str) -> Weight {
    s.parse().unwrap()
}

#[test]
fn small_enumerations() {
    let names = |n| enumerate_weights(n).iter().map(|w| w.to_string()).collect::<Vec<_>>();
    assert_eq!(names(2), ["dd", "uu"]);
    assert_eq!(names(3), ["ddd", "duu", "udu", "uud"]);
    assert_eq!(enumerate_weights(7).len(), 64);
}

#[test]
fn weight_partition_bijection() {
    assert!(TilePartition::from_weight(&w("dddd")).is_empty());
    assert_eq!(TilePartition::from_weight(&w("uu")).tile_set(), BTreeSet::from([Tile::new(1, 1)]));
    assert_eq!(TilePartition::new(2, vec![1]).unwrap().to_weight(), w("uu"));
    let lam = TilePartition::new(7, vec![1, 2, 1, 1]).unwrap();
    assert_eq!(TilePartition::from_weight(&lam.to_weight()), lam);
    for n in 1..=10 {
        for x in enumerate_weights(n) {
            let t = TilePartition::from_weight(&x);
            assert_eq!(t.to_weight(), x);
            assert!(t.tiles().iter().all(|t| t.content() < n));
        }
    }
}

#[test]
fn tiles_reach_the_weight_by_length_increasing_steps() {
    // applying s_ct of each tile in stacking order to the all-∨ weight
    for n in 1..=8 {
        for x in enumerate_weights(n) {
            let mut arrows = vec![isogrus::Arrow::Down; n];
            let mut ups = 0;
            for t in TilePartition::from_weight(&x).tiles() {
                let before = arrows.clone();
                match t.content() {
                    0 => {
                        arrows[0] = arrows[0].flipped();
                        arrows[1] = arrows[1].flipped();
                        assert_eq!(before[0], before[1]);
                    }
                    k => arrows.swap(k - 1, k),
                }
                assert_ne!(arrows, before, "tile {} acts trivially on {}", t, x);
                ups += 1;
            }
            assert_eq!(Weight::from_arrows(&arrows).unwrap(), x);
            assert_eq!(ups, TilePartition::from_weight(&x).len());
        }
    }
}

#[test]
fn addable_removable_unique_per_content() {
    for x in enumerate_weights(7) {
        let t = TilePartition::from_weight(&x);
        let (add, rem) = t.addable_removable();
        for set in [&add, &rem] {
            let contents: Vec<usize> = set.iter().map(|t| t.content()).collect();
            let uniq: BTreeSet<usize> = contents.iter().copied().collect();
            assert_eq!(contents.len(), uniq.len(), "{}", t);
        }
        assert_eq!(rem.iter().map(|t| t.content()).collect::<BTreeSet<_>>(), t.removable_contents());
    }
}

#[test]
fn bruhat_is_a_partial_order() {
    let ps: Vec<TilePartition> = enumerate_weights(6).iter().map(TilePartition::from_weight).collect();
    let empty = TilePartition::new(6, vec![]).unwrap();
    for a in &ps {
        assert!(empty.bruhat_leq(a).unwrap());
        for b in &ps {
            if a.bruhat_leq(b).unwrap() && b.bruhat_leq(a).unwrap() {
                assert_eq!(a, b);
            }
            for c in &ps {
                if a.bruhat_leq(b).unwrap() && b.bruhat_leq(c).unwrap() {
                    assert!(a.bruhat_leq(c).unwrap());
                }
            }
        }
    }
}

#[test]
fn cup_diagram_examples() {
    let d = cup_diagram(&w("dddd"));
    assert!(d.cups.is_empty());
    assert_eq!(d.rays.len(), 4);
    let d = cup_diagram(&w("duud"));
    assert_eq!(d.cups, [Cup::undecorated(1, 2)]);
    assert_eq!(d.rays, [Ray { v: 3, dec: true }, Ray { v: 4, dec: false }]);
    assert!(trace_tiled_diagram(&TilePartition::new(5, vec![]).unwrap()).diagram.cups.is_empty());
}

#[test]
fn diagram_invariants() {
    for n in 1..=9 {
        for x in enumerate_weights(n) {
            let d = cup_diagram(&x);
            let mut seen = BTreeSet::new();
            for c in &d.cups {
                assert!(c.l < c.r && c.breadth() >= 1);
                assert!(seen.insert(c.l) && seen.insert(c.r));
                for e in &d.cups {
                    let disjoint = c.r < e.l || e.r < c.l;
                    let nested = (c.l < e.l && e.r < c.r) || (e.l < c.l && c.r < e.r);
                    assert!(c == e || disjoint || nested);
                }
                if c.dec {
                    assert!(!d.cups.iter().any(|e| !e.dec && e.l < c.l && c.l < e.r));
                }
            }
            for r in &d.rays {
                assert!(seen.insert(r.v));
            }
            assert_eq!(seen.len(), n);
            assert!(d.rays.iter().filter(|r| r.dec).count() <= 1);
        }
    }
}

#[test]
fn breadth_examples() {
    assert_eq!(Cup::undecorated(4, 7).breadth(), 2);
    assert_eq!(Cup::undecorated(5, 6).breadth(), 1);
    assert_eq!(Cup::decorated(1, 2).breadth(), 1);
}

#[test]
fn cover_relations() {
    let outer = Cup::undecorated(1, 4);
    let inner = Cup::undecorated(2, 3);
    assert!(covers(&outer, &inner) && !covers(&inner, &outer));
    let (a, b) = (Cup::undecorated(1, 2), Cup::undecorated(3, 4));
    assert!(!covers(&a, &b) && !covers(&b, &a) && !doubly_covers(&a, &b) && !doubly_covers(&b, &a));
    assert!(doubly_covers(&Cup::decorated(3, 4), &Cup::undecorated(1, 2)));
}

#[test]
fn commuting_examples() {
    // three nested cups: inner and outer commute, neighbours do not
    let d = cup_diagram(&w("ddduuuu"));
    let (outer, mid, inner) = (Cup::undecorated(1, 6), Cup::undecorated(2, 5), Cup::undecorated(3, 4));
    assert!(d.contains(&outer) && d.contains(&mid) && d.contains(&inner));
    assert!(commute(&outer, &inner, &d));
    assert!(!commute(&outer, &mid, &d));
    assert!(!commute(&mid, &inner, &d));
}

#[test]
fn removal_example() {
    let mu = w("uuudduuud");
    let lam = flip_cup(&mu, &Cup::undecorated(4, 7)).unwrap();
    let want = [Cup::decorated(1, 2), Cup::decorated(3, 4), Cup::undecorated(5, 6), Cup::undecorated(7, 8)];
    assert_eq!(cup_diagram(&lam).cups, want);
    assert_eq!(flip_cup(&w("uu"), &Cup::decorated(1, 2)).unwrap(), w("dd"));
    assert!(flip_cup(&w("uu"), &Cup::undecorated(1, 2)).is_err());
}

#[test]
fn adjacency_examples() {
    assert!(adjacent(&Cup::undecorated(2, 3), &Cup::undecorated(1, 2)));
    assert!(!adjacent(&Cup::undecorated(1, 2), &Cup::undecorated(3, 4)));
    let mu = w("dduu");
    assert_eq!(generated_cup(&Cup::undecorated(2, 3), &Cup::undecorated(3, 4), &mu), Some(Cup::undecorated(1, 4)));
    let mu = w("duuuu");
    let lam = flip_cup(&mu, &Cup::undecorated(1, 2)).unwrap();
    assert!(cup_diagram(&lam).contains(&Cup::decorated(1, 4)));
    assert_eq!(generated_cup(&Cup::undecorated(1, 2), &Cup::decorated(1, 4), &mu), Some(Cup::decorated(3, 4)));
}

#[test]
fn dyck_path_invariants() {
    for n in 1..=8 {
        for mu in enumerate_weights(n) {
            for p in cup_diagram(&mu).cups {
                let path = dyck_path(&p, &mu).unwrap();
                assert_eq!(path.count(LocalShape::Cup) + path.count(LocalShape::CupCap), p.breadth(), "{} in {}", p, mu);
                for (t, s) in &path.tiles {
                    if *s == LocalShape::CupCap {
                        assert!(p.dec && t.content() > 0 && t.content() % 2 == 0);
                    }
                }
                let lam = flip_cup(&mu, &p).unwrap();
                let small = TilePartition::from_weight(&lam).tile_set();
                let big = TilePartition::from_weight(&mu).tile_set();
                assert_eq!(path.tile_set(), big.difference(&small).copied().collect());
            }
        }
    }
}

#[test]
fn orientation_examples() {
    assert_eq!(orient(&w("uuudduuud"), &w("dduududud")).map(|o| o.degree), Some(2));
    assert!(orient(&w("dd"), &w("uu")).is_none());
    assert_eq!(kl_polynomial(&w("dduududud"), &w("uuudduuud")).to_string(), "q^2");
    assert!(kl_polynomial(&w("uu"), &w("dd")).is_zero());
}

#[test]
fn dp_examples() {
    assert_eq!(dp_set(&w("dd")), vec![(w("dd"), 0), (w("uu"), 1)]);
    assert_eq!(dp_set(&w("uu")), vec![(w("uu"), 0)]);
    assert_eq!(dp_k(&w("dd"), 1), vec![w("uu")]);
}

#[test]
fn socle_examples() {
    assert_eq!(cup_diagram(&socle_weight(&w("dddd"))).cups, [Cup::decorated(1, 2), Cup::decorated(3, 4)]);
    let lam = TilePartition::new(7, vec![1, 2, 1, 1]).unwrap().to_weight();
    assert_eq!(orient(&socle_weight(&lam), &lam).map(|o| o.degree), Some(3));
    for n in 1..=8 {
        for lam in enumerate_weights(n) {
            let dp = dp_set(&lam);
            let top = dp.iter().map(|(_, d)| *d).max().unwrap();
            let argmax: Vec<Weight> = dp.iter().filter(|(_, d)| *d == top).map(|(m, _)| *m).collect();
            assert_eq!(argmax, [socle_weight(&lam)], "{}", lam);
        }
    }
}
