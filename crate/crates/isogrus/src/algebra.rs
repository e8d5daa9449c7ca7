//! The basic algebra: cellular basis, degree-0/1 generators and the rewriting engine.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::cups::{
    adjacent, adjacent_cups, commute, covers, cup_diagram, doubly_covers, flip_unchecked, generated_cup,
    non_commuting_cover, Cup,
};
use crate::error::{Error, Result};
use crate::orient::{dp_set, orient};
use crate::scalar::{sign, Scalar};
use crate::weight::{enumerate_weights, Weight};

/// The basis element `D^μ_λ D^λ_ν`: down from `ν` to `λ`, then up to `μ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triple {
    pub lambda: Weight,
    pub mu: Weight,
    pub nu: Weight,
}

impl Triple {
    pub fn new(lambda: Weight, mu: Weight, nu: Weight) -> Option<Triple> {
        (orient(&mu, &lambda).is_some() && orient(&nu, &lambda).is_some()).then_some(Triple { lambda, mu, nu })
    }

    pub fn idempotent(w: Weight) -> Triple {
        Triple { lambda: w, mu: w, nu: w }
    }

    pub fn degree(&self) -> usize {
        let a = orient(&self.mu, &self.lambda).expect("basis triple is oriented").degree;
        let b = orient(&self.nu, &self.lambda).expect("basis triple is oriented").degree;
        a + b
    }

    pub fn dual(&self) -> Triple {
        Triple { lambda: self.lambda, mu: self.nu, nu: self.mu }
    }

    /// Generators in application order: the lowering chain, then the raising chain.
    pub fn word(&self) -> Vec<Generator> {
        let mut w = lowering_chain(&self.nu, &self.lambda);
        w.extend(raising_chain(&self.mu, &self.lambda));
        w
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D[{} <- {} <- {}]", self.mu, self.lambda, self.nu)
    }
}

/// Degree-0 and degree-1 generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    /// `1_μ`.
    Idem(Weight),
    /// `D^{μ−p}_μ : μ → μ − p`.
    Lower { mu: Weight, cup: Cup },
    /// `D^μ_{μ−p} : μ − p → μ`.
    Raise { mu: Weight, cup: Cup },
}

impl Generator {
    pub fn lower(mu: Weight, cup: Cup) -> Result<Generator> {
        check_cup(&mu, &cup)?;
        Ok(Generator::Lower { mu, cup })
    }

    pub fn raise(mu: Weight, cup: Cup) -> Result<Generator> {
        check_cup(&mu, &cup)?;
        Ok(Generator::Raise { mu, cup })
    }

    pub fn source(&self) -> Weight {
        match self {
            Generator::Idem(w) => *w,
            Generator::Lower { mu, .. } => *mu,
            Generator::Raise { mu, cup } => flip_unchecked(mu, cup),
        }
    }

    pub fn target(&self) -> Weight {
        match self {
            Generator::Idem(w) => *w,
            Generator::Lower { mu, cup } => flip_unchecked(mu, cup),
            Generator::Raise { mu, .. } => *mu,
        }
    }

    pub fn rank(&self) -> usize {
        self.source().rank()
    }

    pub fn dual(&self) -> Generator {
        match *self {
            Generator::Idem(w) => Generator::Idem(w),
            Generator::Lower { mu, cup } => Generator::Raise { mu, cup },
            Generator::Raise { mu, cup } => Generator::Lower { mu, cup },
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Generator::Idem(_) => 0,
            _ => 1,
        }
    }

    /// The generator as a basis element.
    pub fn triple(&self) -> Triple {
        match *self {
            Generator::Idem(w) => Triple::idempotent(w),
            Generator::Lower { mu, cup } => {
                let lam = flip_unchecked(&mu, &cup);
                Triple { lambda: lam, mu: lam, nu: mu }
            }
            Generator::Raise { mu, cup } => {
                let lam = flip_unchecked(&mu, &cup);
                Triple { lambda: lam, mu, nu: lam }
            }
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Idem(w) => write!(f, "I({})", w),
            Generator::Lower { mu, cup } => write!(f, "L({},{}-{})", mu, cup.l, cup.r),
            Generator::Raise { mu, cup } => write!(f, "R({},{}-{})", mu, cup.l, cup.r),
        }
    }
}

impl std::str::FromStr for Generator {
    type Err = Error;

    /// Parses `I(μ)`, `L(μ,l-r)` or `R(μ,l-r)`; the decoration is read from `μ̄`.
    fn from_str(s: &str) -> Result<Generator> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad generator {:?}", s));
        let (head, rest) = s.split_once('(').ok_or_else(bad)?;
        let body = rest.strip_suffix(')').ok_or_else(bad)?;
        let mut parts = body.split(',').map(str::trim);
        let mu: Weight = parts.next().ok_or_else(bad)?.parse()?;
        let cup = parts.next();
        if parts.next().is_some() {
            return Err(bad());
        }
        let cup = match cup {
            None => None,
            Some(c) => {
                let (l, r) = c.split_once('-').ok_or_else(bad)?;
                let l: usize = l.trim().parse().map_err(|_| bad())?;
                let r: usize = r.trim().parse().map_err(|_| bad())?;
                Some(cup_diagram(&mu).cup_at(l, r).ok_or(Error::NoSuchCup(l, r))?)
            }
        };
        match (head.trim(), cup) {
            ("I", None) => Ok(Generator::Idem(mu)),
            ("L", Some(cup)) => Ok(Generator::Lower { mu, cup }),
            ("R", Some(cup)) => Ok(Generator::Raise { mu, cup }),
            _ => Err(bad()),
        }
    }
}

/// Parses a `;`-separated word of generators.
pub fn parse_word(s: &str) -> Result<Vec<Generator>> {
    s.split(';').filter(|p| !p.trim().is_empty()).map(str::parse).collect()
}

fn check_cup(mu: &Weight, cup: &Cup) -> Result<()> {
    if cup_diagram(mu).contains(cup) {
        Ok(())
    } else {
        Err(Error::NotFlippable(format!("{} in {}", cup, mu)))
    }
}

/// All generators of rank `n`.
pub fn generators(n: usize) -> Vec<Generator> {
    let mut out = Vec::new();
    for mu in enumerate_weights(n) {
        out.push(Generator::Idem(mu));
        for cup in cup_diagram(&mu).cups {
            out.push(Generator::Lower { mu, cup });
            out.push(Generator::Raise { mu, cup });
        }
    }
    out
}

/// The single generator joining two weights one flip apart.
pub fn generator_between(from: &Weight, to: &Weight) -> Option<Generator> {
    if let Some(cup) = cup_diagram(from).cups.into_iter().find(|c| flip_unchecked(from, c) == *to) {
        return Some(Generator::Lower { mu: *from, cup });
    }
    cup_diagram(to)
        .cups
        .into_iter()
        .find(|c| flip_unchecked(to, c) == *from)
        .map(|cup| Generator::Raise { mu: *to, cup })
}

/// Flipped cups of `μ̄λ` in the canonical order: largest right endpoint first, recomputed at each step.
pub fn canonical_chain(mu: &Weight, lambda: &Weight) -> Option<Vec<Cup>> {
    let mut out = Vec::new();
    let mut cur = *mu;
    let mut o = orient(&cur, lambda)?;
    while o.degree > 0 {
        let q = *o.flipped.iter().max_by_key(|c| c.r).expect("positive degree");
        out.push(q);
        cur = flip_unchecked(&cur, &q);
        let next = orient(&cur, lambda).expect("the max-r cup keeps the pair oriented");
        assert_eq!(next.degree + 1, o.degree);
        o = next;
    }
    Some(out)
}

/// `D^λ_μ` as lowering generators in application order.
pub fn lowering_chain(mu: &Weight, lambda: &Weight) -> Vec<Generator> {
    let mut cur = *mu;
    let mut out = Vec::new();
    for cup in canonical_chain(mu, lambda).expect("oriented pair") {
        out.push(Generator::Lower { mu: cur, cup });
        cur = flip_unchecked(&cur, &cup);
    }
    out
}

/// `D^μ_λ` as raising generators in application order.
pub fn raising_chain(mu: &Weight, lambda: &Weight) -> Vec<Generator> {
    let mut out: Vec<Generator> = lowering_chain(mu, lambda).iter().map(|g| g.dual()).collect();
    out.reverse();
    out
}

/// The cellular basis of rank `n`.
pub fn basis(n: usize) -> Vec<Triple> {
    let mut out = Vec::new();
    for lambda in enumerate_weights(n) {
        let dp: Vec<Weight> = dp_set(&lambda).into_iter().map(|(m, _)| m).collect();
        for mu in &dp {
            for nu in &dp {
                out.push(Triple { lambda, mu: *mu, nu: *nu });
            }
        }
    }
    out.sort();
    out
}

/// A finite combination of basis triples with nonzero coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Element<R> {
    terms: BTreeMap<Triple, R>,
}

impl<R: Scalar> Default for Element<R> {
    fn default() -> Self {
        Element { terms: BTreeMap::new() }
    }
}

impl<R: Scalar> Element<R> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(t: Triple) -> Self {
        Self::term(t, R::one())
    }

    pub fn term(t: Triple, c: R) -> Self {
        let mut e = Self::zero();
        e.add_term(t, c);
        e
    }

    pub fn generator(g: &Generator) -> Self {
        Self::basis(g.triple())
    }

    pub fn idempotent(w: Weight) -> Self {
        Self::basis(Triple::idempotent(w))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Triple, &R)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, t: &Triple) -> R {
        self.terms.get(t).cloned().unwrap_or_else(R::zero)
    }

    pub fn add_term(&mut self, t: Triple, c: R) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&t) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(t, sum);
        }
    }

    pub fn add_scaled(&mut self, other: &Element<R>, c: &R) {
        for (t, v) in &other.terms {
            self.add_term(*t, v.clone() * c.clone());
        }
    }

    pub fn scaled(&self, c: &R) -> Element<R> {
        let mut out = Element::zero();
        out.add_scaled(self, c);
        out
    }

    /// Image under the anti-involution `*`.
    pub fn dual(&self) -> Element<R> {
        Element { terms: self.terms.iter().map(|(t, c)| (t.dual(), c.clone())).collect() }
    }

    /// Degree if every term has the same degree; zero has no degree.
    pub fn degree(&self) -> Option<usize> {
        let mut ds = self.terms.keys().map(|t| t.degree());
        let d = ds.next()?;
        ds.all(|e| e == d).then_some(d)
    }

    pub fn map_coefficients<S: Scalar>(&self, f: impl Fn(&R) -> S) -> Element<S> {
        let mut out = Element::zero();
        for (t, c) in &self.terms {
            out.add_term(*t, f(c));
        }
        out
    }
}

impl<R: Scalar> FromIterator<(Triple, R)> for Element<R> {
    fn from_iter<I: IntoIterator<Item = (Triple, R)>>(iter: I) -> Self {
        let mut e = Element::zero();
        for (t, c) in iter {
            e.add_term(t, c);
        }
        e
    }
}

impl<R: Scalar> Add for Element<R> {
    type Output = Element<R>;

    fn add(mut self, rhs: Element<R>) -> Element<R> {
        self.add_scaled(&rhs, &R::one());
        self
    }
}

impl<R: Scalar> Sub for Element<R> {
    type Output = Element<R>;

    fn sub(mut self, rhs: Element<R>) -> Element<R> {
        self.add_scaled(&rhs, &-R::one());
        self
    }
}

impl<R: Scalar> Neg for Element<R> {
    type Output = Element<R>;

    fn neg(self) -> Element<R> {
        self.scaled(&-R::one())
    }
}

/// Relations of the presentation, used to classify degree-1 pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rule {
    Idempotent,
    Commuting,
    Adjacency,
    SelfDual,
    NonCommuting,
    DoublyNonCommuting,
    /// The pair is already a basis element.
    Normal,
}

/// Rules whose hypotheses hold for `second ∘ first` (first applied first).
pub fn matching_rules(first: &Generator, second: &Generator) -> Vec<Rule> {
    assert_eq!(first.target(), second.source(), "pair does not compose");
    use Generator::*;
    match (*first, *second) {
        (Idem(_), _) | (_, Idem(_)) => vec![Rule::Idempotent],
        (Lower { mu, cup: p }, Lower { cup: t, .. }) => lower_pair_rules(&mu, &p, &t),
        (Raise { .. }, Raise { .. }) => matching_rules(&second.dual(), &first.dual()),
        (Lower { .. }, Raise { .. }) => vec![Rule::Normal],
        (Raise { mu, cup: q }, Lower { cup: p, .. }) => {
            let d = cup_diagram(&mu);
            let mut out = Vec::new();
            if p == q {
                out.push(Rule::SelfDual);
            }
            if p != q && commute(&p, &q, &d) {
                out.push(Rule::Commuting);
            }
            if p != q && !commute(&p, &q, &d) {
                if covers(&p, &q) || covers(&q, &p) {
                    out.push(Rule::NonCommuting);
                }
                if doubly_covers(&p, &q) || doubly_covers(&q, &p) {
                    out.push(Rule::DoublyNonCommuting);
                }
            }
            out
        }
    }
}

fn lower_pair_rules(mu: &Weight, p: &Cup, t: &Cup) -> Vec<Rule> {
    let d = cup_diagram(mu);
    let mut out = Vec::new();
    let comm = d.contains(t) && commute(p, t, &d);
    if comm {
        out.push(Rule::Commuting);
    }
    if adjacent(p, t) {
        out.push(Rule::Adjacency);
    }
    let end = flip_unchecked(&flip_unchecked(mu, p), t);
    if !comm && canonical_chain(mu, &end).is_some_and(|ch| ch == [*p, *t]) {
        out.push(Rule::Normal);
    }
    out
}

fn single_rule(first: &Generator, second: &Generator) -> Rule {
    match matching_rules(first, second).as_slice() {
        [r] => *r,
        rs => panic!("{} rules match the pair {} then {}: {:?}", rs.len(), first, second, rs),
    }
}

/// Terms `(x, c)` of the self-dual relation for `p ∈ μ̄`: `D^{μ−p}_μ D^μ_{μ−p} = Σ c · D^{λ}_{λ−x} D^{λ−x}_{λ}`.
pub fn self_dual_terms(mu: &Weight, p: &Cup) -> Vec<(Cup, i64)> {
    let d = cup_diagram(mu);
    let lam = flip_unchecked(mu, p);
    let ld = cup_diagram(&lam);
    let b = |c: &Cup| c.breadth() as i64;
    let s = |k: i64| if k.rem_euclid(2) == 0 { 1 } else { -1 };
    let mut terms = Vec::new();
    for q in &d.cups {
        if q != p && commute(p, q, &d) && (covers(q, p) || doubly_covers(q, p)) {
            assert!(ld.contains(q), "commuting cup {} must survive the flip of {}", q, p);
            terms.push((*q, 2 * s(b(q))));
        }
    }
    let adj: Vec<Cup> = ld.cups.iter().copied().filter(|t| adjacent(p, t)).collect();
    let doubly = non_commuting_cover(p, &d).is_some_and(|q| doubly_covers(&q, p));
    if doubly {
        let (t, r) = match adj.as_slice() {
            [a, c] if covers(a, c) => (*a, *c),
            [a, c] if covers(c, a) => (*c, *a),
            _ => panic!("doubly covered {} in {} without a nested adjacent pair", p, mu),
        };
        terms.push((t, 2 * s(b(&t))));
        terms.push((r, s(b(&r))));
    } else {
        terms.extend(adj.iter().map(|t| (*t, s(b(t)))));
    }
    let g = s(b(p) - 1);
    terms.into_iter().map(|(x, c)| (x, g * c)).collect()
}

/// Usage counts of each rule during normalization.
pub type RuleStats = BTreeMap<Rule, u64>;

/// Normalizing multiplication over the coefficient ring `R`.
pub struct Algebra<R> {
    n: usize,
    memo: HashMap<(Generator, Triple), Element<R>>,
    active: HashSet<(Generator, Triple)>,
    caching: bool,
    stats: RuleStats,
}

impl<R: Scalar> Algebra<R> {
    pub fn new(n: usize) -> Self {
        Algebra { n, memo: HashMap::new(), active: HashSet::new(), caching: true, stats: RuleStats::new() }
    }

    /// An engine that recomputes every product; results must agree with the cached engine.
    pub fn uncached(n: usize) -> Self {
        Algebra { caching: false, ..Self::new(n) }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn stats(&self) -> &RuleStats {
        &self.stats
    }

    fn note(&mut self, r: Rule) {
        *self.stats.entry(r).or_default() += 1;
    }

    fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.rank() == self.n {
            Ok(())
        } else {
            Err(Error::RankMismatch(w.rank(), self.n))
        }
    }

    /// `x · y`.
    pub fn multiply(&mut self, x: &Element<R>, y: &Element<R>) -> Result<Element<R>> {
        for t in x.terms.keys().chain(y.terms.keys()) {
            self.check_rank(&t.mu)?;
        }
        let mut out = Element::zero();
        for (t, c) in &x.terms {
            let prod = self.apply_word(&t.word(), y.clone());
            out.add_scaled(&prod, c);
        }
        Ok(out)
    }

    /// `g₁ · g₂ ⋯ g_k`; the last generator acts first.
    pub fn product(&mut self, word: &[Generator]) -> Result<Element<R>> {
        let Some(last) = word.last() else {
            return Err(Error::NotComposable("empty word".into()));
        };
        for g in word {
            self.check_rank(&g.source())?;
        }
        for pair in word.windows(2) {
            if pair[0].source() != pair[1].target() {
                return Err(Error::NotComposable(format!("{} after {}", pair[0], pair[1])));
            }
        }
        let start = Element::idempotent(last.source());
        let order: Vec<Generator> = word.iter().rev().copied().collect();
        Ok(self.apply_word(&order, start))
    }

    /// Applies generators in the given order, each multiplying on the left.
    pub fn apply_word(&mut self, word: &[Generator], mut x: Element<R>) -> Element<R> {
        for g in word {
            x = self.apply(g, &x);
        }
        x
    }

    /// `g · x`.
    pub fn apply(&mut self, g: &Generator, x: &Element<R>) -> Element<R> {
        let mut out = Element::zero();
        for (t, c) in &x.terms {
            let prod = self.act(g, t);
            out.add_scaled(&prod, c);
        }
        out
    }

    /// `g · D^μ_λ D^λ_ν` in normal form.
    pub fn act(&mut self, g: &Generator, t: &Triple) -> Element<R> {
        if let Generator::Idem(w) = g {
            return if *w == t.mu { Element::basis(*t) } else { Element::zero() };
        }
        if g.source() != t.mu {
            return Element::zero();
        }
        let key = (*g, *t);
        if let Some(e) = self.memo.get(&key) {
            return e.clone();
        }
        if !self.active.insert(key) {
            panic!("rewriting cycle at {} acting on {}", g, t);
        }
        let out = match *g {
            Generator::Lower { cup, .. } if t.lambda == t.mu => self.lower_on_valley(&cup, t),
            Generator::Lower { cup, .. } => self.lower_at_peak(&cup, t),
            Generator::Raise { mu, cup } => self.raise(&mu, &cup, t),
            Generator::Idem(_) => unreachable!(),
        };
        self.active.remove(&key);
        if self.caching {
            self.memo.insert(key, out.clone());
        }
        out
    }

    fn word_on(&mut self, word: &[Generator], t: Triple) -> Element<R> {
        self.apply_word(word, Element::basis(t))
    }

    /// Lowering `t` below a pure lowering chain `ν ↓ λ`.
    fn lower_on_valley(&mut self, t: &Cup, tr: &Triple) -> Element<R> {
        let (lam, nu) = (tr.lambda, tr.nu);
        let end = flip_unchecked(&lam, t);
        let chain = canonical_chain(&nu, &lam).expect("basis triple is oriented");
        let Some(&f) = chain.last() else {
            self.note(Rule::Normal);
            return Element::basis(Triple { lambda: end, mu: end, nu: lam });
        };
        let c = flip_unchecked(&lam, &f);
        let prefix = Triple::idempotent(c);
        let prefix = Triple { nu, ..prefix };
        let first = Generator::Lower { mu: c, cup: f };
        let second = Generator::Lower { mu: lam, cup: *t };
        match single_rule(&first, &second) {
            Rule::Adjacency => {
                self.note(Rule::Adjacency);
                let Some(u) = generated_cup(&f, t, &c) else {
                    return Element::zero();
                };
                let mid = flip_unchecked(&c, &u);
                let back = generator_between(&mid, &end).expect("adjacency relation lands one flip away");
                let coeff = sign::<R>(u.breadth() as isize - t.breadth() as isize);
                self.word_on(&[Generator::Lower { mu: c, cup: u }, back], prefix).scaled(&coeff)
            }
            rule => {
                let mut full = chain.clone();
                full.push(*t);
                if canonical_chain(&nu, &end).is_some_and(|ch| ch == full) {
                    self.note(Rule::Normal);
                    return Element::basis(Triple { lambda: end, mu: end, nu });
                }
                if rule != Rule::Commuting {
                    panic!("no rule applies to {} then {}", first, second);
                }
                self.note(Rule::Commuting);
                let swapped = [Generator::Lower { mu: c, cup: *t }, Generator::Lower { mu: flip_unchecked(&c, t), cup: f }];
                self.word_on(&swapped, prefix)
            }
        }
    }

    /// Lowering at the top of a nonempty raising chain: a peak.
    fn lower_at_peak(&mut self, p: &Cup, tr: &Triple) -> Element<R> {
        let mu = tr.mu;
        let q = canonical_chain(&mu, &tr.lambda).expect("basis triple is oriented")[0];
        let m = flip_unchecked(&mu, &q);
        let rest = Triple { mu: m, ..*tr };
        let first = Generator::Raise { mu, cup: q };
        let second = Generator::Lower { mu, cup: *p };
        let target = flip_unchecked(&mu, p);
        let rule = single_rule(&first, &second);
        self.note(rule);
        match rule {
            Rule::SelfDual => {
                let mut out = Element::zero();
                for (x, c) in self_dual_terms(&mu, p) {
                    let word = [Generator::Lower { mu: m, cup: x }, Generator::Raise { mu: m, cup: x }];
                    let e = self.word_on(&word, rest);
                    out.add_scaled(&e, &R::from_int(c));
                }
                out
            }
            Rule::Commuting => {
                let word = [Generator::Lower { mu: m, cup: *p }, Generator::Raise { mu: target, cup: q }];
                self.word_on(&word, rest)
            }
            Rule::NonCommuting | Rule::DoublyNonCommuting => {
                let doubly = rule == Rule::DoublyNonCommuting;
                if covers(p, &q) || doubly_covers(p, &q) {
                    let x = pick_adjacent(&mu, &q, doubly);
                    let mid = flip_unchecked(&m, &x);
                    let back = generator_between(&mid, &target).expect("relation lands one flip away");
                    self.word_on(&[Generator::Lower { mu: m, cup: x }, back], rest)
                } else {
                    let x = pick_adjacent(&mu, p, doubly);
                    let mid = flip_unchecked(&target, &x);
                    let a = generator_between(&m, &mid).expect("relation lands one flip away");
                    let b = generator_between(&mid, &target).expect("relation lands one flip away");
                    self.word_on(&[a, b], rest)
                }
            }
            r => panic!("unexpected rule {:?} at a peak", r),
        }
    }

    /// Raising to `μ'` from the top `μ = μ' − p` of `t`.
    fn raise(&mut self, top: &Weight, p: &Cup, tr: &Triple) -> Element<R> {
        let (lam, mu, nu) = (tr.lambda, tr.mu, tr.nu);
        if lam == mu {
            self.note(Rule::Normal);
            return Element::basis(Triple { lambda: lam, mu: *top, nu });
        }
        let below = canonical_chain(&mu, &lam).expect("basis triple is oriented");
        let mut full = vec![*p];
        full.extend(below.iter().copied());
        let first = Generator::Raise { mu, cup: below[0] };
        let second = Generator::Raise { mu: *top, cup: *p };
        let rule = single_rule(&first, &second);
        if canonical_chain(top, &lam).is_some_and(|ch| ch == full) {
            self.note(Rule::Normal);
            return Element::basis(Triple { lambda: lam, mu: *top, nu });
        }
        self.note(rule);
        // Normalize the dual lowering word from the new top, then reattach the lower half.
        let mut down = vec![Generator::Lower { mu: *top, cup: *p }];
        down.extend(lowering_chain(&mu, &lam));
        let y = self.word_on(&down, Triple::idempotent(*top));
        let mut out = Element::zero();
        for (s, c) in &y.terms {
            debug_assert!(s.mu == lam && s.nu == *top);
            let a = s.lambda;
            if a == lam {
                out.add_term(Triple { lambda: lam, mu: *top, nu }, c.clone());
                continue;
            }
            let z = self.word_on(&lowering_chain(&lam, &a), Triple { lambda: lam, mu: lam, nu });
            let z = self.apply_word(&raising_chain(top, &a), z);
            out.add_scaled(&z, c);
        }
        out
    }
}

/// The adjacent cup of `(μ−q)‾` used when `q` is (doubly) covered: the left one, or the outer of a nested pair.
fn pick_adjacent(mu: &Weight, q: &Cup, doubly: bool) -> Cup {
    let mut a = adjacent_cups(mu, q);
    a.sort();
    match (a.as_slice(), doubly) {
        ([x, _], false) => *x,
        ([x, y], true) if covers(x, y) => *x,
        ([x, y], true) if covers(y, x) => *y,
        _ => panic!("{} in {} lacks the expected adjacent pair", q, mu),
    }
}

/// Composable pairs of degree-1 generators of rank `n`, first applied first.
pub fn generator_pairs(n: usize) -> Vec<(Generator, Generator)> {
    let gens: Vec<Generator> = generators(n).into_iter().filter(|g| g.degree() == 1).collect();
    let mut by_source: BTreeMap<Weight, Vec<Generator>> = BTreeMap::new();
    for g in &gens {
        by_source.entry(g.source()).or_default().push(*g);
    }
    let mut out = Vec::new();
    for a in &gens {
        for b in by_source.get(&a.target()).into_iter().flatten() {
            out.push((*a, *b));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GaussInt;

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn rank_two_basis() {
        assert_eq!(basis(2).len(), 5);
        assert_eq!(basis(1).len(), 1);
    }

    #[test]
    fn rank_two_peak_vanishes() {
        let mut alg = Algebra::<GaussInt>::new(2);
        let p = Cup::decorated(1, 2);
        let raise = Generator::raise(w("uu"), p).unwrap();
        let lower = Generator::lower(w("uu"), p).unwrap();
        assert!(alg.product(&[lower, raise]).unwrap().is_zero());
        assert_eq!(parse_word("R(uu,1-2); L(uu,1-2)").unwrap(), vec![raise, lower]);
        assert_eq!("I(uu)".parse::<Generator>().unwrap(), Generator::Idem(w("uu")));
        assert!("L(uu,1-3)".parse::<Generator>().is_err());
        let valley = alg.product(&[raise, lower]).unwrap();
        assert_eq!(valley, Element::basis(Triple { lambda: w("dd"), mu: w("uu"), nu: w("uu") }));
    }
}
