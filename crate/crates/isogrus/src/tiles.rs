//! Tile-partitions, contents and the bijection with weights.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weight::Weight;

/// A tile `[r, c]`, 1-based, with `c <= r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tile {
    pub r: usize,
    pub c: usize,
}

impl Tile {
    pub fn new(r: usize, c: usize) -> Tile {
        Tile { r, c }
    }

    /// Label of the Coxeter generator `s_i` attached to the tile.
    pub fn content(&self) -> usize {
        if self.r == self.c {
            if self.r % 2 == 1 {
                0
            } else {
                1
            }
        } else {
            self.r - self.c + 1
        }
    }

    /// Height in the Russian picture; tiles are stacked in increasing height.
    pub fn height(&self) -> usize {
        self.r + self.c
    }

    /// Left vertex of the Temperley–Lieb generator carried by the tile.
    pub fn position(&self) -> usize {
        match self.content() {
            0 | 1 => 1,
            k => k,
        }
    }
}

impl fmt::Display for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.r, self.c)
    }
}

/// A tile-partition of rank `n`, stored by row lengths.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TilePartition {
    pub n: usize,
    pub rows: Vec<usize>,
}

impl TilePartition {
    pub fn new(n: usize, rows: Vec<usize>) -> Result<TilePartition> {
        let t = TilePartition { n, rows };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        let tiles = self.tile_set();
        for t in &tiles {
            if t.c == 0 || t.c > t.r {
                return Err(Error::InvalidPartition(format!("tile {} outside the staircase", t)));
            }
            if t.c < t.r && t.r > 1 && !tiles.contains(&Tile::new(t.r - 1, t.c)) {
                return Err(Error::InvalidPartition(format!("tile {} is unsupported from below", t)));
            }
            if t.c >= 2 && !tiles.contains(&Tile::new(t.r, t.c - 1)) {
                return Err(Error::InvalidPartition(format!("tile {} is unsupported from the side", t)));
            }
        }
        if self.rows.contains(&0) {
            return Err(Error::InvalidPartition("zero-length row".into()));
        }
        let cols = self.column_lengths();
        if cols.iter().any(|&l| l + 1 > self.n) {
            return Err(Error::InvalidPartition(format!("partition does not fit in rank {}", self.n)));
        }
        if TilePartition::from_weight(&self.to_weight()) != *self {
            return Err(Error::InvalidPartition(format!("{} is not the partition of a weight", self)));
        }
        Ok(())
    }

    /// The partition with exactly these tiles, if there is one.
    pub fn from_tiles(n: usize, tiles: &BTreeSet<Tile>) -> Result<TilePartition> {
        let rows_n = tiles.iter().map(|t| t.r).max().unwrap_or(0);
        let rows: Vec<usize> = (1..=rows_n).map(|r| tiles.iter().filter(|t| t.r == r).count()).collect();
        let t = TilePartition::new(n, rows)?;
        if t.tile_set() != *tiles {
            return Err(Error::InvalidPartition("rows with gaps".into()));
        }
        Ok(t)
    }

    /// Tiles that may be added, and tiles that may be removed, leaving a tile-partition.
    pub fn addable_removable(&self) -> (BTreeSet<Tile>, BTreeSet<Tile>) {
        let set = self.tile_set();
        let mut candidates: BTreeSet<Tile> = set.iter().flat_map(|t| [Tile::new(t.r + 1, t.c), Tile::new(t.r, t.c + 1)]).collect();
        candidates.insert(Tile::new(1, 1));
        let valid = |s: &BTreeSet<Tile>| TilePartition::from_tiles(self.n, s).is_ok();
        let add = candidates
            .into_iter()
            .filter(|t| !set.contains(t))
            .filter(|t| {
                let mut s = set.clone();
                s.insert(*t);
                valid(&s)
            })
            .collect();
        let rem = set
            .iter()
            .copied()
            .filter(|t| {
                let mut s = set.clone();
                s.remove(t);
                valid(&s)
            })
            .collect();
        (add, rem)
    }

    /// Bruhat order: containment of tile sets.
    pub fn bruhat_leq(&self, other: &TilePartition) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::RankMismatch(self.n, other.n));
        }
        Ok(self.tile_set().is_subset(&other.tile_set()))
    }

    pub fn len(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn tile_set(&self) -> BTreeSet<Tile> {
        self.tiles().into_iter().collect()
    }

    /// Tiles in the standard stacking order: increasing height, then left to right.
    pub fn tiles(&self) -> Vec<Tile> {
        let mut out: Vec<Tile> = self
            .rows
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| (1..=a).map(move |c| Tile::new(i + 1, c)))
            .collect();
        out.sort_by_key(|t| (t.height(), t.r as isize - t.c as isize));
        out
    }

    /// Column `c` starts at row `c`; its length.
    pub fn column_lengths(&self) -> Vec<usize> {
        let mut cols = Vec::new();
        for c in 1.. {
            let l = self.rows.iter().enumerate().filter(|&(i, &a)| i + 1 >= c && a >= c).count();
            if l == 0 {
                break;
            }
            cols.push(l);
        }
        cols
    }

    /// Reduced word read off in stacking order.
    pub fn reduced_word(&self) -> Vec<usize> {
        self.tiles().iter().map(|t| t.content()).collect()
    }

    /// Contents of tiles that may be removed leaving a tile-partition.
    pub fn removable_contents(&self) -> BTreeSet<usize> {
        let set = self.tile_set();
        set.iter()
            .filter(|t| !set.contains(&Tile::new(t.r + 1, t.c)) && !set.contains(&Tile::new(t.r, t.c + 1)))
            .map(|t| t.content())
            .collect()
    }

    pub fn from_weight(w: &Weight) -> TilePartition {
        let n = w.rank();
        let mut cols: Vec<usize> = (2..=n).filter(|&p| w.is_up(p)).map(|p| p - 1).collect();
        cols.sort_unstable_by(|a, b| b.cmp(a));
        let mut rows = Vec::new();
        for r in 1.. {
            let a = cols.iter().enumerate().filter(|&(i, &l)| i < r && r < i + 1 + l).count();
            if a == 0 {
                break;
            }
            rows.push(a);
        }
        TilePartition { n, rows }
    }

    pub fn to_weight(&self) -> Weight {
        let mut up = 0u64;
        for l in self.column_lengths() {
            up |= 1 << l;
        }
        if up.count_ones() % 2 == 1 {
            up |= 1;
        }
        Weight::from_mask(self.n, up)
    }
}

impl fmt::Display for TilePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rows.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(w: &str) -> Vec<usize> {
        TilePartition::from_weight(&w.parse().unwrap()).rows
    }

    #[test]
    fn small_bijection() {
        assert_eq!(part("uu"), vec![1]);
        assert_eq!(part("duud"), vec![1, 2]);
        assert_eq!(part("dduu"), vec![1, 2, 2]);
        assert_eq!(part("uuuu"), vec![1, 2, 3]);
        assert_eq!(part("dddd"), Vec::<usize>::new());
    }

    #[test]
    fn contents() {
        assert_eq!(Tile::new(1, 1).content(), 0);
        assert_eq!(Tile::new(2, 2).content(), 1);
        assert_eq!(Tile::new(3, 3).content(), 0);
        assert_eq!(Tile::new(3, 1).content(), 3);
    }

    #[test]
    fn rejects_unsupported() {
        assert!(TilePartition::new(4, vec![2]).is_err());
        assert!(TilePartition::new(4, vec![1, 2, 3]).is_ok());
        assert!(TilePartition::new(3, vec![1, 2, 3]).is_err());
    }

    #[test]
    fn addable_and_removable() {
        let empty = TilePartition::new(3, vec![]).unwrap();
        assert_eq!(empty.addable_removable(), (BTreeSet::from([Tile::new(1, 1)]), BTreeSet::new()));
        let one = TilePartition::new(3, vec![1]).unwrap();
        assert_eq!(one.addable_removable(), (BTreeSet::from([Tile::new(2, 1)]), BTreeSet::from([Tile::new(1, 1)])));
    }

    #[test]
    fn bruhat() {
        let a = TilePartition::new(3, vec![1]).unwrap();
        let b = TilePartition::new(3, vec![1, 2]).unwrap();
        assert!(a.bruhat_leq(&b).unwrap());
        assert!(!b.bruhat_leq(&a).unwrap());
        assert!(a.bruhat_leq(&TilePartition::new(4, vec![1]).unwrap()).is_err());
    }
}
