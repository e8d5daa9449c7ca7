//! The invariant suite behind `selfcheck` and the acceptance harness.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use isogrus::algebra::{canonical_chain, generator_pairs, generators, matching_rules};
use isogrus::cells::{action_edges, alperin_diagram, grading_is_radical, socle_matches};
use isogrus::contraction::{contractible_sites, dilate_weight, phi_element, phi_generator, phi_weight};
use isogrus::cups::{cup_diagram, flip_cup, trace_tiled_diagram, Cup};
use isogrus::orient::{dp_set, orient};
use isogrus::{basis, enumerate_weights, Algebra, Element, GaussInt, Generator, TilePartition, Triple, Weight};

/// Outcome of one property: a summary on success, the first counterexample on failure.
pub type Outcome = Result<String, String>;

/// Upper ranks and sample sizes for each property.
#[derive(Debug, Clone, Copy)]
pub struct Bounds {
    pub cosets: usize,
    pub cups: usize,
    pub degree: usize,
    pub dimension: usize,
    pub assoc_generators: usize,
    pub assoc_basis: usize,
    pub hygiene: usize,
    pub duality: usize,
    pub duality_seeds: u64,
    pub chains: usize,
    pub chain_samples: usize,
    pub contract_weights: usize,
    pub contract_maps: usize,
    pub cell_edges: usize,
    pub socle: usize,
    pub seed: u64,
}

impl Bounds {
    pub fn full(seed: u64) -> Bounds {
        Bounds {
            cosets: 12,
            cups: 8,
            degree: 8,
            dimension: 7,
            assoc_generators: 5,
            assoc_basis: 4,
            hygiene: 6,
            duality: 5,
            duality_seeds: 1000,
            chains: 6,
            chain_samples: 500,
            contract_weights: 8,
            contract_maps: 6,
            cell_edges: 6,
            socle: 8,
            seed,
        }
    }

    /// The full bounds capped at rank `n`.
    pub fn up_to(n: usize, seed: u64) -> Bounds {
        let f = Bounds::full(seed);
        Bounds {
            cosets: f.cosets.min(n),
            cups: f.cups.min(n),
            degree: f.degree.min(n),
            dimension: f.dimension.min(n),
            assoc_generators: f.assoc_generators.min(n),
            assoc_basis: f.assoc_basis.min(n),
            hygiene: f.hygiene.min(n),
            duality: f.duality.min(n),
            chains: f.chains.min(n),
            contract_weights: f.contract_weights.min(n),
            contract_maps: f.contract_maps.min(n),
            cell_edges: f.cell_edges.min(n),
            socle: f.socle.min(n),
            ..f
        }
    }
}

fn w(s: &str) -> Weight {
    s.parse().expect("literal weight")
}

pub fn coset_count(b: &Bounds) -> Outcome {
    for n in 1..=b.cosets {
        let got = enumerate_weights(n).len();
        if got != 1 << (n - 1) {
            return Err(format!("rank {}: {} weights", n, got));
        }
    }
    Ok(format!("2^(n-1) weights for n <= {}", b.cosets))
}

pub fn cup_oracles(b: &Bounds) -> Outcome {
    let mut total = 0;
    for n in 1..=b.cups {
        for lam in enumerate_weights(n) {
            let traced = trace_tiled_diagram(&TilePartition::from_weight(&lam)).diagram;
            if traced != cup_diagram(&lam) {
                return Err(format!("{}: stack {:?} vs traced {:?}", lam, cup_diagram(&lam), traced));
            }
            total += 1;
        }
    }
    Ok(format!("{} diagrams agree", total))
}

/// Degree by right-vertex labels against the number of cups whose ends change.
pub fn degree_oracle(b: &Bounds) -> Outcome {
    let mut pairs = 0;
    for n in 1..=b.degree {
        let ws = enumerate_weights(n);
        for mu in &ws {
            let d = cup_diagram(mu);
            for lam in &ws {
                let Some(o) = orient(mu, lam) else { continue };
                let changed: Vec<&Cup> = d.cups.iter().filter(|c| lam.at(c.l) != mu.at(c.l) || lam.at(c.r) != mu.at(c.r)).collect();
                let mut arrows = mu.arrows();
                for c in &changed {
                    arrows[c.l - 1] = arrows[c.l - 1].flipped();
                    arrows[c.r - 1] = arrows[c.r - 1].flipped();
                }
                let reached = Weight::from_arrows(&arrows).map_err(|e| e.to_string())?;
                if changed.len() != o.degree || reached != *lam {
                    return Err(format!("{} on {}: degree {} vs {} flips", lam, mu, o.degree, changed.len()));
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{} oriented pairs", pairs))
}

pub fn worked_examples(_: &Bounds) -> Outcome {
    let d = cup_diagram(&w("uuudduuud"));
    let want = vec![Cup::decorated(1, 2), Cup::decorated(3, 8), Cup::undecorated(4, 7), Cup::undecorated(5, 6)];
    if d.cups != want || d.rays.len() != 1 || d.rays[0].v != 9 || d.rays[0].dec {
        return Err(format!("construction example: {:?}", d));
    }
    let deg = orient(&w("uuudduuud"), &w("dduududud")).map(|o| o.degree);
    if deg != Some(2) {
        return Err(format!("flip example degree {:?}", deg));
    }
    let lam = TilePartition::new(14, vec![1, 2, 3, 4, 5, 6, 7, 8, 9, 8, 8, 8, 3]).map_err(|e| e.to_string())?.to_weight();
    let sites = contractible_sites(&lam);
    if sites != BTreeSet::from([0, 5, 11]) {
        return Err(format!("dilation example sites {:?}", sites));
    }
    Ok("construction, flip and dilation examples".into())
}

pub fn dimension(b: &Bounds) -> Outcome {
    if basis(2).len() != 5 {
        return Err(format!("|basis(2)| = {}", basis(2).len()));
    }
    for n in 1..=b.dimension {
        let ws = enumerate_weights(n);
        let by_dp: usize = ws.iter().map(|l| dp_set(l).len().pow(2)).sum();
        let mut brute = 0;
        for lam in &ws {
            let ok: Vec<bool> = ws.iter().map(|m| orient(m, lam).is_some()).collect();
            let k = ok.iter().filter(|x| **x).count();
            brute += k * k;
        }
        let got = basis(n).len();
        if got != by_dp || got != brute {
            return Err(format!("rank {}: basis {} vs DP {} vs brute {}", n, got, by_dp, brute));
        }
    }
    for n in 1..=b.assoc_basis {
        let all = basis(n);
        let set: HashSet<Triple> = all.iter().copied().collect();
        let mut alg = Algebra::<GaussInt>::new(n);
        for x in &all {
            for y in all.iter().filter(|y| y.mu == x.nu) {
                let p = alg.multiply(&Element::basis(*x), &Element::basis(*y)).map_err(|e| e.to_string())?;
                let stray = p.iter().map(|(t, _)| *t).find(|t| !set.contains(t));
                if let Some(t) = stray {
                    return Err(format!("{} * {} emits {}", x, y, t));
                }
            }
        }
    }
    Ok(format!("dimensions to rank {}, closed products to rank {}", b.dimension, b.assoc_basis))
}

pub fn associativity(b: &Bounds) -> Outcome {
    let mut count = 0u64;
    for n in 1..=b.assoc_generators {
        let mut alg = Algebra::<GaussInt>::new(n);
        let gens = generators(n);
        let mut into: BTreeMap<Weight, Vec<Generator>> = BTreeMap::new();
        for g in &gens {
            into.entry(g.target()).or_default().push(*g);
        }
        for a in &gens {
            for bb in into.get(&a.source()).into_iter().flatten() {
                for c in into.get(&bb.source()).into_iter().flatten() {
                    let (x, y, z) = (Element::generator(a), Element::generator(bb), Element::generator(c));
                    if !associates(&mut alg, &x, &y, &z)? {
                        return Err(format!("({} {}) {}", a, bb, c));
                    }
                    count += 1;
                }
            }
        }
    }
    for n in 1..=b.assoc_basis {
        let mut alg = Algebra::<GaussInt>::new(n);
        let all = basis(n);
        for x in &all {
            for y in all.iter().filter(|y| y.mu == x.nu) {
                for z in all.iter().filter(|z| z.mu == y.nu) {
                    let (ex, ey, ez) = (Element::basis(*x), Element::basis(*y), Element::basis(*z));
                    if !associates(&mut alg, &ex, &ey, &ez)? {
                        return Err(format!("({} {}) {}", x, y, z));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{} triples associate", count))
}

fn associates(alg: &mut Algebra<GaussInt>, x: &Element<GaussInt>, y: &Element<GaussInt>, z: &Element<GaussInt>) -> Result<bool, String> {
    let e = |e: isogrus::Error| e.to_string();
    let xy = alg.multiply(x, y).map_err(e)?;
    let yz = alg.multiply(y, z).map_err(e)?;
    Ok(alg.multiply(&xy, z).map_err(e)? == alg.multiply(x, &yz).map_err(e)?)
}

pub fn relation_hygiene(b: &Bounds) -> Outcome {
    let mut count = 0;
    for n in 1..=b.hygiene {
        let mut alg = Algebra::<GaussInt>::new(n);
        for (first, second) in generator_pairs(n) {
            let rules = matching_rules(&first, &second);
            if rules.len() != 1 {
                return Err(format!("{} then {} matches {:?}", first, second, rules));
            }
            let p = alg.product(&[second, first]).map_err(|e| e.to_string())?;
            if !p.is_zero() && p.degree() != Some(2) {
                return Err(format!("{} then {} is not homogeneous of degree 2", first, second));
            }
            count += 1;
        }
    }
    Ok(format!("{} degree-1 pairs", count))
}

/// Degree-1 generators grouped by source.
pub fn generators_by_source(n: usize) -> BTreeMap<Weight, Vec<Generator>> {
    let mut out: BTreeMap<Weight, Vec<Generator>> = BTreeMap::new();
    for g in generators(n).into_iter().filter(|g| g.degree() == 1) {
        out.entry(g.source()).or_default().push(g);
    }
    out
}

/// A composable word of degree-1 generators in product order (the last acts first).
pub fn random_word(rng: &mut ChaCha8Rng, by_source: &BTreeMap<Weight, Vec<Generator>>, len: usize) -> Vec<Generator> {
    let starts: Vec<&Weight> = by_source.keys().collect();
    let mut cur = **starts.choose(rng).expect("some generator");
    let mut word = Vec::new();
    for _ in 0..len {
        let Some(g) = by_source.get(&cur).and_then(|gs| gs.choose(rng)) else { break };
        word.push(*g);
        cur = g.target();
    }
    word.reverse();
    word
}

pub fn duality(b: &Bounds) -> Outcome {
    if b.duality < 2 {
        return Ok("no ranks with degree-1 generators".into());
    }
    let ranks: Vec<usize> = (2..=b.duality).collect();
    type Workspace = (Algebra<GaussInt>, BTreeMap<Weight, Vec<Generator>>);
    let mut algs: BTreeMap<usize, Workspace> =
        ranks.iter().map(|&n| (n, (Algebra::new(n), generators_by_source(n)))).collect();
    for s in 0..b.duality_seeds {
        let seed = b.seed.wrapping_add(s);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = ranks[rng.gen_range(0..ranks.len())];
        let (alg, by) = algs.get_mut(&n).expect("rank");
        let word = random_word(&mut rng, by, 6);
        let x = alg.product(&word).map_err(|e| e.to_string())?;
        let dual_word: Vec<Generator> = word.iter().rev().map(|g| g.dual()).collect();
        let y = alg.product(&dual_word).map_err(|e| e.to_string())?;
        if x.dual() != y || x.dual().dual() != x {
            return Err(format!("seed {}: word {:?}", seed, word.iter().map(|g| g.to_string()).collect::<Vec<_>>()));
        }
    }
    Ok(format!("{} seeds", b.duality_seeds))
}

pub fn chain_independence(b: &Bounds) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(b.seed);
    let mut total = 0;
    for n in 2..=b.chains {
        let ws = enumerate_weights(n);
        let pairs: Vec<(Weight, Weight)> =
            ws.iter().flat_map(|m| ws.iter().map(move |l| (*m, *l))).filter(|(m, l)| orient(m, l).is_some_and(|o| o.degree >= 1)).collect();
        let mut alg = Algebra::<GaussInt>::new(n);
        for _ in 0..b.chain_samples {
            let (mu, lam) = *pairs.choose(&mut rng).expect("rank >= 2 has degree-1 pairs");
            let mut cur = mu;
            let mut x = Element::idempotent(mu);
            while cur != lam {
                let o = orient(&cur, &lam).expect("chain stays oriented");
                let ok: Vec<Cup> = o
                    .flipped
                    .iter()
                    .copied()
                    .filter(|c| flip_cup(&cur, c).is_ok_and(|next| orient(&next, &lam).is_some()))
                    .collect();
                let c = *ok.choose(&mut rng).ok_or_else(|| format!("{} -> {}: stuck at {}", mu, lam, cur))?;
                x = alg.apply(&Generator::Lower { mu: cur, cup: c }, &x);
                cur = flip_cup(&cur, &c).map_err(|e| e.to_string())?;
            }
            let want = Element::basis(Triple { lambda: lam, mu: lam, nu: mu });
            if x != want {
                return Err(format!("{} -> {}: {:?} vs canonical {:?}", mu, lam, x, canonical_chain(&mu, &lam)));
            }
            total += 1;
        }
    }
    Ok(format!("{} random factorizations", total))
}

pub fn contraction(b: &Bounds) -> Outcome {
    let mut trips = 0;
    for n in 2..=b.contract_weights {
        for k in 0..n {
            let domain: Vec<Weight> = enumerate_weights(n).into_iter().filter(|l| contractible_sites(l).contains(&k)).collect();
            let mut image = BTreeSet::new();
            for lam in &domain {
                let v = phi_weight(lam, k).map_err(|e| e.to_string())?;
                if dilate_weight(&v, k).as_ref() != Ok(lam) {
                    return Err(format!("round trip fails for {} at {}", lam, k));
                }
                image.insert(v);
                trips += 1;
            }
            let onto: BTreeSet<Weight> = enumerate_weights(n - 2).into_iter().collect();
            if !domain.is_empty() && (image != onto || domain.len() != onto.len()) {
                return Err(format!("rank {} site {}: {} weights onto {} of {}", n, k, domain.len(), image.len(), onto.len()));
            }
        }
    }
    let mut pairs = 0;
    for n in 2..=b.contract_maps {
        let mut big = Algebra::<GaussInt>::new(n);
        let mut small = Algebra::<GaussInt>::new(n - 2);
        for k in 0..n {
            let truncated: Vec<Generator> = generators(n)
                .into_iter()
                .filter(|g| g.degree() == 1 && [g.source(), g.target()].iter().all(|x| contractible_sites(x).contains(&k)))
                .collect();
            for g1 in &truncated {
                for g2 in truncated.iter().filter(|g| g.source() == g1.target()) {
                    let prod = big.product(&[*g2, *g1]).map_err(|e| e.to_string())?;
                    let lhs = phi_element(&mut small, &prod, k).map_err(|e| format!("{} then {}: {}", g1, g2, e))?;
                    let (a, c) = (phi_generator::<GaussInt>(g2, k), phi_generator::<GaussInt>(g1, k));
                    let rhs = small.multiply(&a.map_err(|e| e.to_string())?, &c.map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
                    if lhs != rhs {
                        return Err(format!("k={}: {} then {}", k, g1, g2));
                    }
                    pairs += 1;
                }
            }
        }
    }
    undec_example_sign()?;
    Ok(format!("{} round trips, {} generator pairs", trips, pairs))
}

/// The generator contracting at `k = 1` onto `D^{(1,1)}_{(1,2)}` carries the sign −1.
fn undec_example_sign() -> Result<(), String> {
    let n = 5;
    let mu = TilePartition::new(n, vec![1, 2, 3, 4]).map_err(|e| e.to_string())?.to_weight();
    let lam = TilePartition::new(n, vec![1, 2, 1, 1]).map_err(|e| e.to_string())?.to_weight();
    let g = cup_diagram(&mu)
        .cups
        .into_iter()
        .find(|c| flip_cup(&mu, c) == Ok(lam))
        .map(|cup| Generator::Lower { mu, cup })
        .ok_or("example generator missing")?;
    let (a, l) = (phi_weight(&mu, 1).map_err(|e| e.to_string())?, phi_weight(&lam, 1).map_err(|e| e.to_string())?);
    if TilePartition::from_weight(&a).rows != [1, 2] || TilePartition::from_weight(&l).rows != [1, 1] {
        return Err("example weights contract elsewhere".into());
    }
    let img = phi_generator::<GaussInt>(&g, 1).map_err(|e| e.to_string())?;
    let want = Element::term(Triple { lambda: l, mu: l, nu: a }, GaussInt::from(num_bigint::BigInt::from(-1)));
    if img != want {
        return Err(format!("example sign: {:?}", img));
    }
    Ok(())
}

pub fn cell_modules(b: &Bounds) -> Outcome {
    let mut count = 0;
    for n in 1..=b.cell_edges {
        let mut alg = Algebra::<GaussInt>::new(n);
        for lam in enumerate_weights(n) {
            if alperin_diagram(&lam).edge_pairs() != action_edges(&mut alg, &lam) {
                return Err(format!("edges differ for {}", lam));
            }
            if !grading_is_radical(&mut alg, &lam) {
                return Err(format!("grading is not the radical filtration for {}", lam));
            }
            count += 1;
        }
    }
    for n in 1..=b.socle {
        if let Some(lam) = enumerate_weights(n).into_iter().find(|l| !socle_matches(l)) {
            return Err(format!("socle of {}", lam));
        }
    }
    let lam = TilePartition::new(7, vec![1, 2, 1, 1]).map_err(|e| e.to_string())?.to_weight();
    let g = alperin_diagram(&lam);
    let layers = g.layers();
    if layers.len() != 4 || layers[0] != [lam] || layers[3].len() != 1 || g.sources() != [lam] || g.sinks().len() != 1 {
        return Err(format!("submodule example: layers {:?}", layers));
    }
    Ok(format!("{} cell modules, socles to rank {}", count, b.socle))
}

pub type Check = fn(&Bounds) -> Outcome;

/// Named properties in report order.
pub fn suite() -> Vec<(&'static str, Check)> {
    vec![
        ("coset count", coset_count as Check),
        ("two-oracle cup diagrams", cup_oracles),
        ("degree oracle", degree_oracle),
        ("worked examples", worked_examples),
        ("algebra dimension", dimension),
        ("associativity", associativity),
        ("relation hygiene", relation_hygiene),
        ("duality", duality),
        ("chain independence", chain_independence),
        ("contraction", contraction),
        ("cell modules", cell_modules),
    ]
}

/// Runs the suite on up to `jobs` threads; results keep suite order.
pub fn run_suite(b: &Bounds, jobs: usize) -> Vec<(&'static str, Outcome)> {
    let checks = suite();
    let jobs = jobs.max(1).min(checks.len());
    let next = std::sync::atomic::AtomicUsize::new(0);
    let mut results: Vec<Option<Outcome>> = vec![None; checks.len()];
    let slots = std::sync::Mutex::new(&mut results);
    std::thread::scope(|s| {
        for _ in 0..jobs {
            s.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                let Some((_, f)) = checks.get(i) else { break };
                let r = std::panic::catch_unwind(|| f(b)).unwrap_or_else(|p| Err(panic_message(p)));
                slots.lock().expect("no poisoned slots")[i] = Some(r);
            });
        }
    });
    checks.iter().zip(results).map(|((name, _), r)| (*name, r.expect("every check ran"))).collect()
}

fn panic_message(p: Box<dyn std::any::Any + Send>) -> String {
    match p.downcast::<String>() {
        Ok(s) => format!("panic: {}", s),
        Err(p) => format!("panic: {}", p.downcast::<&str>().map(|s| *s).unwrap_or("unknown")),
    }
}
