//! Weights: sequences of ∧/∨ with an even number of ∧.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_RANK: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Arrow {
    Up,
    Down,
}

impl Arrow {
    pub fn flipped(self) -> Arrow {
        match self {
            Arrow::Up => Arrow::Down,
            Arrow::Down => Arrow::Up,
        }
    }

    pub fn ascii(self) -> char {
        match self {
            Arrow::Up => 'u',
            Arrow::Down => 'd',
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Arrow::Up => '∧',
            Arrow::Down => '∨',
        }
    }

    fn parse(c: char) -> Option<Arrow> {
        match c {
            'u' | 'U' | '^' | '∧' => Some(Arrow::Up),
            'd' | 'D' | 'v' | 'V' | '∨' => Some(Arrow::Down),
            _ => None,
        }
    }
}

/// A weight of rank `n`; vertex `i` (1-based) is ∧ iff bit `i-1` of `up` is set.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Weight {
    n: u8,
    up: u64,
}

impl Weight {
    /// The weight with every vertex ∨ (the empty tile-partition).
    pub fn empty(n: usize) -> Weight {
        assert!(n <= MAX_RANK);
        Weight { n: n as u8, up: 0 }
    }

    pub fn from_arrows(arrows: &[Arrow]) -> Result<Weight> {
        if arrows.len() > MAX_RANK {
            return Err(Error::InvalidWeight(format!("rank {} exceeds {}", arrows.len(), MAX_RANK)));
        }
        let mut up = 0u64;
        for (i, a) in arrows.iter().enumerate() {
            if *a == Arrow::Up {
                up |= 1 << i;
            }
        }
        if up.count_ones() % 2 == 1 {
            return Err(Error::InvalidWeight(format!("odd number of ∧ in {}", render(arrows.len(), up))));
        }
        Ok(Weight { n: arrows.len() as u8, up })
    }

    pub(crate) fn from_mask(n: usize, up: u64) -> Weight {
        debug_assert!(up.count_ones().is_multiple_of(2));
        Weight { n: n as u8, up }
    }

    pub fn rank(&self) -> usize {
        self.n as usize
    }

    /// Arrow at vertex `i`, 1-based.
    pub fn at(&self, i: usize) -> Arrow {
        assert!(1 <= i && i <= self.rank(), "vertex {} out of range", i);
        if self.up >> (i - 1) & 1 == 1 {
            Arrow::Up
        } else {
            Arrow::Down
        }
    }

    pub fn is_up(&self, i: usize) -> bool {
        self.at(i) == Arrow::Up
    }

    pub fn arrows(&self) -> Vec<Arrow> {
        (1..=self.rank()).map(|i| self.at(i)).collect()
    }

    pub fn up_count(&self) -> usize {
        self.up.count_ones() as usize
    }

    /// Reflects the arrows at two vertices; used by cup flipping.
    pub(crate) fn toggled(&self, i: usize, j: usize) -> Weight {
        Weight { n: self.n, up: self.up ^ (1 << (i - 1)) ^ (1 << (j - 1)) }
    }

    /// `u`/`d` string; `-` for the empty weight.
    pub fn to_ascii(&self) -> String {
        if self.n == 0 {
            return "-".into();
        }
        render(self.rank(), self.up)
    }

    pub fn to_symbols(&self) -> String {
        self.arrows().iter().map(|a| a.symbol()).collect()
    }
}

fn render(n: usize, up: u64) -> String {
    (0..n).map(|i| if up >> i & 1 == 1 { 'u' } else { 'd' }).collect()
}

/// Lexicographic on arrows with ∨ < ∧, shorter ranks first.
impl Ord for Weight {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            let diff = self.up ^ other.up;
            if diff == 0 {
                Ordering::Equal
            } else if self.up >> diff.trailing_zeros() & 1 == 1 {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        })
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ascii())
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Weight({})", self.to_ascii())
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Weight> {
        let s = s.trim();
        if s == "-" {
            return Ok(Weight::empty(0));
        }
        let arrows = s
            .chars()
            .map(|c| Arrow::parse(c).ok_or_else(|| Error::InvalidWeight(format!("bad arrow {:?} in {:?}", c, s))))
            .collect::<Result<Vec<_>>>()?;
        Weight::from_arrows(&arrows)
    }
}

/// All weights of rank `n` in increasing order; there are 2^(n-1) of them for n ≥ 1.
pub fn enumerate_weights(n: usize) -> Vec<Weight> {
    assert!(n <= 30, "enumeration beyond rank 30 is not supported");
    if n == 0 {
        return vec![Weight::empty(0)];
    }
    let mut out: Vec<Weight> = (0u64..1 << n)
        .filter(|m| m.count_ones() % 2 == 0)
        .map(|m| Weight::from_mask(n, m))
        .collect();
    out.sort();
    out
}

#[derive(Serialize, Deserialize)]
struct WeightRepr {
    n: usize,
    arrows: String,
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WeightRepr { n: self.rank(), arrows: self.to_ascii() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Weight, D::Error> {
        let r = WeightRepr::deserialize(d)?;
        let w: Weight = if r.arrows.is_empty() { Ok(Weight::empty(0)) } else { r.arrows.parse() }
            .map_err(serde::de::Error::custom)?;
        if w.rank() != r.n {
            return Err(serde::de::Error::custom(format!("rank {} does not match arrows {}", r.n, r.arrows)));
        }
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let w: Weight = "∧∧∨∨".parse().unwrap();
        assert_eq!(w.to_ascii(), "uudd");
        assert_eq!(w.to_symbols(), "∧∧∨∨");
        assert!("udd".parse::<Weight>().is_err());
        assert!("uxd".parse::<Weight>().is_err());
    }

    #[test]
    fn order_is_lexicographic() {
        let ws: Vec<String> = enumerate_weights(4).iter().map(|w| w.to_ascii()).collect();
        let mut sorted = ws.clone();
        sorted.sort();
        assert_eq!(ws, sorted);
    }
}
