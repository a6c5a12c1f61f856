use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Integer partition: weakly decreasing positive parts.
///
/// The derived `Ord` is lexicographic on the parts, which refines dominance
/// within a fixed weight. [`Partition::total_cmp`] adds the grading.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

/// Outcome of comparing two partitions of equal weight in dominance order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dominance {
    Less,
    Equal,
    Greater,
    Incomparable,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn single(a: u32) -> Self {
        Partition::from_unsorted(vec![a])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn multiplicity(&self, a: u32) -> u32 {
        self.0.iter().filter(|&&p| p == a).count() as u32
    }

    /// Distinct part values, largest first.
    pub fn distinct_parts(&self) -> impl Iterator<Item = u32> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(i, p)| *i == 0 || self.0[i - 1] != **p)
            .map(|(_, &p)| p)
    }

    /// Removes one copy of `a`, returning its former multiplicity.
    pub fn remove_one(&self, a: u32) -> Option<(u32, Partition)> {
        let pos = self.0.iter().position(|&p| p == a)?;
        let mult = self.multiplicity(a);
        let mut parts = self.0.clone();
        parts.remove(pos);
        Some((mult, Partition(parts)))
    }

    /// Adds a part; zero is ignored.
    pub fn insert(&self, c: u32) -> Partition {
        if c == 0 {
            return self.clone();
        }
        let mut parts = self.0.clone();
        let pos = parts.iter().position(|&p| p < c).unwrap_or(parts.len());
        parts.insert(pos, c);
        Partition(parts)
    }

    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Partition::from_unsorted(parts)
    }

    /// Graded order: weight first, then lexicographic.
    pub fn total_cmp(&self, other: &Partition) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.cmp(other))
    }

    /// Dominance comparison; fails on unequal weights.
    pub fn dominance(&self, other: &Partition) -> Result<Dominance> {
        dominance_compare(self, other)
    }

    /// `self ⊴ other` (false when weights differ).
    pub fn dominated_by(&self, other: &Partition) -> bool {
        matches!(
            dominance_compare(self, other),
            Ok(Dominance::Less | Dominance::Equal)
        )
    }
}

pub fn dominance_compare(a: &Partition, b: &Partition) -> Result<Dominance> {
    if a.weight() != b.weight() {
        return Err(Error::WeightMismatch {
            left: a.weight(),
            right: b.weight(),
        });
    }
    let n = a.len().max(b.len());
    let (mut sa, mut sb) = (0u32, 0u32);
    let (mut le, mut ge) = (true, true);
    for i in 0..n {
        sa += a.0.get(i).copied().unwrap_or(0);
        sb += b.0.get(i).copied().unwrap_or(0);
        le &= sa <= sb;
        ge &= sa >= sb;
    }
    Ok(match (le, ge) {
        (true, true) => Dominance::Equal,
        (true, false) => Dominance::Less,
        (false, true) => Dominance::Greater,
        (false, false) => Dominance::Incomparable,
    })
}

/// All partitions of `n`, lexicographically largest first.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=max.min(n)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions of weight `<= d`, in decreasing total order.
pub fn partitions_up_to(d: u32) -> Vec<Partition> {
    (0..=d).rev().flat_map(partitions_of).collect()
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" || s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidPartition(format!("`{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn dominance_examples() {
        assert_eq!(dominance_compare(&p("1,1,1"), &p("3")).unwrap(), Dominance::Less);
        assert_eq!(dominance_compare(&p("2,2"), &p("3,1")).unwrap(), Dominance::Less);
        assert_eq!(
            dominance_compare(&p("3,1,1,1"), &p("2,2,2")).unwrap(),
            Dominance::Incomparable
        );
        assert!(matches!(
            dominance_compare(&p("2"), &p("1")),
            Err(Error::WeightMismatch { .. })
        ));
    }

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (0..=8).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(partitions_of(3), vec![p("3"), p("2,1"), p("1,1,1")]);
    }

    #[test]
    fn dominance_is_a_partial_order() {
        for n in 0..=8 {
            let ps = partitions_of(n);
            for a in &ps {
                for b in &ps {
                    let ab = dominance_compare(a, b).unwrap();
                    let ba = dominance_compare(b, a).unwrap();
                    let flipped = match ab {
                        Dominance::Less => Dominance::Greater,
                        Dominance::Greater => Dominance::Less,
                        x => x,
                    };
                    assert_eq!(ba, flipped);
                    assert_eq!(ab == Dominance::Equal, a == b);
                    // lex order extends dominance
                    if ab == Dominance::Less {
                        assert!(a < b);
                    }
                    for c in &ps {
                        if a.dominated_by(b) && b.dominated_by(c) {
                            assert!(a.dominated_by(c));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn serialization() {
        assert_eq!(p("2,1").to_string(), "2,1");
        assert_eq!(Partition::empty().to_string(), "-");
        assert_eq!(p("-"), Partition::empty());
        assert!("1,2".parse::<Partition>().is_err());
        assert!("0".parse::<Partition>().is_err());
        assert_eq!(p("3,1").insert(2), p("3,2,1"));
        assert_eq!(p("3,2,2").remove_one(2), Some((2, p("3,2"))));
    }
}
