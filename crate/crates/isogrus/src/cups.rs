//! Cup diagrams, strand tracing, inter-cup relations, Dyck paths and cup flipping.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tiles::{Tile, TilePartition};
use crate::weight::{Arrow, Weight};

/// A cup joining vertices `l < r` (1-based); half-integer coordinates are `l - 1/2`, `r - 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cup {
    pub l: usize,
    pub r: usize,
    pub dec: bool,
}

impl Cup {
    pub fn new(l: usize, r: usize, dec: bool) -> Cup {
        assert!(l < r, "cup endpoints out of order");
        Cup { l, r, dec }
    }

    pub fn undecorated(l: usize, r: usize) -> Cup {
        Cup::new(l, r, false)
    }

    pub fn decorated(l: usize, r: usize) -> Cup {
        Cup::new(l, r, true)
    }

    pub fn breadth(&self) -> usize {
        if self.dec {
            (self.l + self.r - 1) / 2
        } else {
            (self.r - self.l).div_ceil(2)
        }
    }

    pub fn endpoints(&self) -> [usize; 2] {
        [self.l, self.r]
    }

    pub fn touches(&self, v: usize) -> bool {
        self.l == v || self.r == v
    }
}

impl fmt::Display for Cup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dec {
            write!(f, "dec({},{})", self.l, self.r)
        } else {
            write!(f, "und({},{})", self.l, self.r)
        }
    }
}

pub fn breadth(p: &Cup) -> usize {
    p.breadth()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ray {
    pub v: usize,
    pub dec: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CupDiagram {
    pub n: usize,
    pub cups: Vec<Cup>,
    pub rays: Vec<Ray>,
}

impl CupDiagram {
    fn normalized(n: usize, mut cups: Vec<Cup>, mut rays: Vec<Ray>) -> CupDiagram {
        cups.sort();
        rays.sort();
        CupDiagram { n, cups, rays }
    }

    pub fn contains(&self, p: &Cup) -> bool {
        self.cups.binary_search(p).is_ok()
    }

    /// The cup with the given endpoints, whatever its decoration.
    pub fn cup_at(&self, l: usize, r: usize) -> Option<Cup> {
        self.cups.iter().copied().find(|c| c.l == l && c.r == r)
    }

    /// Nesting depth of every cup: 1 for innermost.
    pub fn levels(&self) -> BTreeMap<Cup, usize> {
        let mut out = BTreeMap::new();
        let mut by_width = self.cups.clone();
        by_width.sort_by_key(|c| c.r - c.l);
        for c in &by_width {
            let inner = by_width
                .iter()
                .filter(|d| c.l < d.l && d.r < c.r)
                .map(|d| out[d])
                .max()
                .unwrap_or(0);
            out.insert(*c, inner + 1);
        }
        out
    }
}

/// The weight algorithm: join ∨∧ neighbours, then ∧∧ pairs with decorated cups, then rays.
pub fn cup_diagram(w: &Weight) -> CupDiagram {
    let n = w.rank();
    let mut stack = Vec::new();
    let mut cups = Vec::new();
    let mut ups = Vec::new();
    for i in 1..=n {
        match w.at(i) {
            Arrow::Down => stack.push(i),
            Arrow::Up => match stack.pop() {
                Some(j) => cups.push(Cup::undecorated(j, i)),
                None => ups.push(i),
            },
        }
    }
    let mut rays = Vec::new();
    for pair in ups.chunks(2) {
        match pair {
            [a, b] => cups.push(Cup::decorated(*a, *b)),
            [a] => rays.push(Ray { v: *a, dec: true }),
            _ => unreachable!(),
        }
    }
    rays.extend(stack.into_iter().map(|v| Ray { v, dec: false }));
    CupDiagram::normalized(n, cups, rays)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LocalShape {
    Cup,
    Cap,
    CupCap,
    Extra,
}

/// Result of tracing the strands of the tiled diagram `[μ]`.
#[derive(Debug, Clone)]
pub struct Traced {
    pub diagram: CupDiagram,
    /// For each cup, the tiles its strand meets together with the local shape there.
    pub strands: BTreeMap<Cup, Vec<(Tile, LocalShape)>>,
}

struct Strands {
    parent: Vec<usize>,
    dec: Vec<u32>,
    marks: Vec<Vec<(Tile, bool)>>,
}

impl Strands {
    fn fresh(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.dec.push(0);
        self.marks.push(Vec::new());
        self.parent.len() - 1
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
}

/// Stacks one Temperley–Lieb generator per tile and follows the strands.
pub fn trace_tiled_diagram(t: &TilePartition) -> Traced {
    let n = t.n;
    let mut s = Strands { parent: Vec::new(), dec: Vec::new(), marks: Vec::new() };
    let bottom: Vec<usize> = (0..=n).map(|_| s.fresh()).collect();
    let mut end = bottom.clone();
    for tile in t.tiles() {
        let a = tile.position();
        let dot = u32::from(tile.content() == 0);
        let (x, y) = (s.find(end[a]), s.find(end[a + 1]));
        assert!(x != y, "closed loop at tile {}", tile);
        s.parent[y] = x;
        let moved = std::mem::take(&mut s.marks[y]);
        s.marks[x].extend(moved);
        s.marks[x].push((tile, false));
        s.dec[x] += s.dec[y] + dot;
        let north = s.fresh();
        s.dec[north] += dot;
        s.marks[north].push((tile, true));
        end[a] = north;
        end[a + 1] = north;
    }
    let mut tops: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &e) in end.iter().enumerate().skip(1).take(n) {
        let root = s.find(e);
        tops.entry(root).or_default().push(v);
    }
    let mut cups = Vec::new();
    let mut rays = Vec::new();
    let mut strands = BTreeMap::new();
    for (root, vs) in tops {
        let dec = s.dec[root] % 2 == 1;
        match vs.as_slice() {
            [v] => rays.push(Ray { v: *v, dec }),
            [l, r] => {
                let cup = Cup::new(*l, *r, dec);
                let mut seen: BTreeMap<Tile, (bool, bool)> = BTreeMap::new();
                for &(tile, north) in &s.marks[root] {
                    let e = seen.entry(tile).or_default();
                    if north {
                        e.0 = true;
                    } else {
                        e.1 = true;
                    }
                }
                let shapes = seen
                    .into_iter()
                    .map(|(tile, ns)| {
                        let shape = match ns {
                            (true, true) => LocalShape::CupCap,
                            (true, false) => LocalShape::Cup,
                            _ => LocalShape::Cap,
                        };
                        (tile, shape)
                    })
                    .collect();
                strands.insert(cup, shapes);
                cups.push(cup);
            }
            _ => unreachable!("a strand has at most two northern ends"),
        }
    }
    Traced { diagram: CupDiagram::normalized(n, cups, rays), strands }
}

/// `q ≺ p`: p covers q.
pub fn covers(p: &Cup, q: &Cup) -> bool {
    p.l < q.l && q.r < p.r
}

/// `q ≺≺ p`: p is decorated and q lies entirely to its left.
pub fn doubly_covers(p: &Cup, q: &Cup) -> bool {
    p.dec && q.r < p.l
}

fn covers_either(p: &Cup, q: &Cup) -> bool {
    covers(p, q) || doubly_covers(p, q)
}

/// Whether two cups of `d` commute.
pub fn commute(p: &Cup, q: &Cup, d: &CupDiagram) -> bool {
    if p == q {
        return false;
    }
    for (x, y) in [(p, q), (q, p)] {
        if covers_either(y, x) {
            return d.cups.iter().filter(|r| *r != x && *r != y).any(|r| {
                (covers(y, r) && covers(r, x))
                    || (doubly_covers(y, r) && covers(r, x))
                    || (doubly_covers(y, r) && doubly_covers(r, x))
            });
        }
    }
    true
}

/// Whether `p` is covered or doubly covered by a cup it does not commute with.
pub fn non_commuting_cover(p: &Cup, d: &CupDiagram) -> Option<Cup> {
    d.cups.iter().copied().find(|q| q != p && covers_either(q, p) && !commute(p, q, d))
}

/// `λ = μ − p`: reflect both endpoints of the anticlockwise cup `p` of `μ̄`.
pub fn flip_cup(mu: &Weight, p: &Cup) -> Result<Weight> {
    if !cup_diagram(mu).contains(p) {
        return Err(Error::NotFlippable(p.to_string()));
    }
    Ok(mu.toggled(p.l, p.r))
}

/// Flip of a cup already known to lie in `μ̄`.
pub(crate) fn flip_unchecked(mu: &Weight, p: &Cup) -> Weight {
    mu.toggled(p.l, p.r)
}

/// Whether `t` (a cup of `μ − p`) shares exactly one vertex with `p`.
pub fn adjacent(p: &Cup, t: &Cup) -> bool {
    let shared = p.endpoints().iter().filter(|v| t.touches(**v)).count();
    shared == 1
}

/// Cups of `(μ − p)‾` adjacent to `p`.
pub fn adjacent_cups(mu: &Weight, p: &Cup) -> Vec<Cup> {
    let lam = flip_unchecked(mu, p);
    cup_diagram(&lam).cups.into_iter().filter(|t| adjacent(p, t)).collect()
}

/// The cup `⟨p ∪ t⟩_μ`; absent when no candidate exists or `t` is the inner cup of a nested adjacent pair.
pub fn generated_cup(p: &Cup, t: &Cup, mu: &Weight) -> Option<Cup> {
    let adj = adjacent_cups(mu, p);
    if adj.iter().any(|o| o != t && covers(o, t)) {
        return None;
    }
    cup_diagram(mu).cups.into_iter().find(|u| u != p && (u.l == t.l || u.r == t.r))
}

/// Tiles deleted from `[μ]` when `p` is flipped, each labelled by how the strand of `p` meets it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DyckPath {
    pub cup: Cup,
    pub tiles: Vec<(Tile, LocalShape)>,
}

impl DyckPath {
    /// Contents with 0 and 1 identified, as both sit at the left wall.
    fn wall_contents(&self) -> Vec<usize> {
        self.tiles.iter().map(|(t, _)| t.content().max(1)).collect()
    }

    pub fn first(&self) -> usize {
        let cs = self.wall_contents();
        if self.cup.dec {
            let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
            for c in &cs {
                *counts.entry(*c).or_default() += 1;
            }
            counts.iter().filter(|(_, &m)| m >= 2).map(|(c, _)| *c).max().unwrap_or(1)
        } else {
            cs.into_iter().min().unwrap_or(0)
        }
    }

    pub fn last(&self) -> usize {
        self.wall_contents().into_iter().max().unwrap_or(0)
    }

    pub fn count(&self, shape: LocalShape) -> usize {
        self.tiles.iter().filter(|(_, s)| *s == shape).count()
    }

    /// Shapes (excluding extra tiles) met at tiles of content `k`.
    pub fn shapes_at_content(&self, k: usize) -> BTreeSet<LocalShape> {
        self.tiles
            .iter()
            .filter(|(t, s)| t.content() == k && *s != LocalShape::Extra)
            .map(|(_, s)| *s)
            .collect()
    }

    pub fn tile_set(&self) -> BTreeSet<Tile> {
        self.tiles.iter().map(|(t, _)| *t).collect()
    }
}

/// Dyck path of `p ∈ μ̄`; local shapes come from strand tracing, matched by content and height.
pub fn dyck_path(p: &Cup, mu: &Weight) -> Result<DyckPath> {
    let lam = flip_cup(mu, p)?;
    let big = TilePartition::from_weight(mu).tile_set();
    let small = TilePartition::from_weight(&lam).tile_set();
    let traced = trace_tiled_diagram(&TilePartition::from_weight(mu));
    let strand = traced.strands.get(p).cloned().unwrap_or_default();
    let mut by_content: BTreeMap<usize, Vec<Tile>> = BTreeMap::new();
    for t in big.difference(&small) {
        by_content.entry(t.content()).or_default().push(*t);
    }
    let mut traced_by_content: BTreeMap<usize, Vec<(Tile, LocalShape)>> = BTreeMap::new();
    for (t, s) in strand {
        traced_by_content.entry(t.content()).or_default().push((t, s));
    }
    let mut tiles = Vec::new();
    for (k, mut path_tiles) in by_content {
        path_tiles.sort_by_key(|t| t.height());
        let mut met = traced_by_content.remove(&k).unwrap_or_default();
        met.sort_by_key(|(t, _)| t.height());
        let mut labels = Vec::new();
        for (_, s) in met {
            if s == LocalShape::CupCap {
                labels.push(LocalShape::Extra);
            }
            labels.push(s);
        }
        if labels.len() != path_tiles.len() {
            panic!("strand of {} does not match the deleted tiles at content {}", p, k);
        }
        tiles.extend(path_tiles.into_iter().zip(labels));
    }
    assert!(traced_by_content.is_empty(), "strand of {} meets tiles outside the deleted set", p);
    tiles.sort();
    Ok(DyckPath { cup: *p, tiles })
}
