//! Partitions, the fundamental poset of pairs `(v, k)` with `0 <= v < k`,
//! and its order ideals.
//!
//! An order ideal is stored as the antichain of its maximal points. Nothing
//! else is cached: the boundary of an ideal at any row `k` is recomputed from
//! the generators as `min_g max(g.v, k - g.k + g.v)`. This keeps ideals free of
//! any partition context, which matters because the counting code mixes
//! ideals taken over several different partitions.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// A partition in multiplicity form: distinct parts, strictly decreasing,
/// each with a positive multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    pairs: Vec<(u32, u32)>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { pairs: Vec::new() }
    }

    /// Builds from `(part, multiplicity)` pairs, which must already have
    /// strictly decreasing positive parts and positive multiplicities.
    pub fn from_pairs(pairs: Vec<(u32, u32)>) -> Result<Self> {
        for w in pairs.windows(2) {
            if w[0].0 <= w[1].0 {
                return Err(Error::Parse(format!("parts not strictly decreasing: {pairs:?}")));
            }
        }
        if pairs.iter().any(|&(k, m)| k == 0 || m == 0) {
            return Err(Error::Parse(format!("zero part or multiplicity: {pairs:?}")));
        }
        Ok(Partition { pairs })
    }

    /// Builds from a list of parts in any order; zero parts are dropped.
    pub fn from_parts(parts: &[u32]) -> Self {
        let mut sorted: Vec<u32> = parts.iter().copied().filter(|&p| p > 0).collect();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for p in sorted {
            match pairs.last_mut() {
                Some((k, m)) if *k == p => *m += 1,
                _ => pairs.push((p, 1)),
            }
        }
        Partition { pairs }
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    /// Distinct parts, largest first.
    pub fn rows(&self) -> Vec<u32> {
        self.pairs.iter().map(|&(k, _)| k).collect()
    }

    pub fn multiplicity(&self, k: u32) -> u32 {
        self.pairs
            .iter()
            .find(|&&(p, _)| p == k)
            .map_or(0, |&(_, m)| m)
    }

    pub fn has_row(&self, k: u32) -> bool {
        self.multiplicity(k) > 0
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `|λ|`.
    pub fn weight(&self) -> u64 {
        self.pairs.iter().map(|&(k, m)| u64::from(k) * u64::from(m)).sum()
    }

    /// Largest part, 0 for the empty partition.
    pub fn largest(&self) -> u32 {
        self.pairs.first().map_or(0, |&(k, _)| k)
    }

    /// All parts with repetition, largest first.
    pub fn expanded(&self) -> Vec<u32> {
        self.pairs
            .iter()
            .flat_map(|&(k, m)| std::iter::repeat_n(k, m as usize))
            .collect()
    }

    /// Replaces each multiplicity by `min(m_i, cap)`.
    pub fn cap_multiplicities(&self, cap: u32) -> Partition {
        assert!(cap >= 1);
        Partition {
            pairs: self.pairs.iter().map(|&(k, m)| (k, m.min(cap))).collect(),
        }
    }

    /// Removes one copy of each listed part. Parts that are absent are ignored.
    pub fn remove_one_each(&self, parts: &[u32]) -> Partition {
        let mut all = self.expanded();
        for p in parts {
            if let Some(pos) = all.iter().position(|x| x == p) {
                all.remove(pos);
            }
        }
        Partition::from_parts(&all)
    }

    /// Canonical text form, e.g. `5,4^2,2,1`; empty for the empty partition.
    pub fn key(&self) -> String {
        self.pairs
            .iter()
            .map(|&(k, m)| if m == 1 { k.to_string() } else { format!("{k}^{m}") })
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Same as [`Partition::cap_multiplicities`].
pub fn cap_multiplicities(lambda: &Partition, cap: u32) -> Partition {
    lambda.cap_multiplicities(cap)
}

/// Prints as `(5, 4, 4, 2, 1)`, the style used in published tables.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.expanded().iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Parses `5,4,4,2,1` or `5,4^2,2,1`; the empty string (or `()`/`∅`) is the
/// empty partition.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if s.is_empty() || s == "∅" {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            let (k, m) = match tok.split_once('^') {
                Some((k, m)) => (k, m),
                None => (tok, "1"),
            };
            let k: u32 = k
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad part {tok:?} in {s:?}")))?;
            let m: u32 = m
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad multiplicity {tok:?} in {s:?}")))?;
            if k == 0 || m == 0 {
                return Err(Error::Parse(format!("zero part or multiplicity in {s:?}")));
            }
            parts.extend(std::iter::repeat_n(k, m as usize));
        }
        Ok(Partition::from_parts(&parts))
    }
}

/// All partitions of `n`, in reverse lexicographic order of part lists.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition::from_parts(cur));
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// A point `(v, k)` of the fundamental poset: an element of valuation `v` in
/// a cyclic module of length `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub v: u32,
    pub k: u32,
}

impl Point {
    pub fn new(v: u32, k: u32) -> Self {
        assert!(v < k, "point ({v},{k}) needs v < k");
        Point { v, k }
    }
}

/// Descending `k`, then ascending `v`.
impl Ord for Point {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other.k.cmp(&self.k).then(self.v.cmp(&other.v))
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.v, self.k)
    }
}

/// `a <= b` in the fundamental poset: `a` is a homomorphic image of `b`.
pub fn point_leq(a: Point, b: Point) -> bool {
    a.v >= b.v && a.k - a.v <= b.k - b.v
}

/// An order ideal of the fundamental poset, kept as its antichain of
/// maximal points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct OrderIdeal {
    max_points: Vec<Point>,
}

impl OrderIdeal {
    pub fn empty() -> Self {
        OrderIdeal::default()
    }

    /// The ideal generated by `gens`, canonicalized.
    pub fn from_generators(gens: &[Point]) -> Self {
        let mut max: Vec<Point> = gens
            .iter()
            .copied()
            .filter(|&g| !gens.iter().any(|&h| h != g && point_leq(g, h)))
            .collect();
        max.sort_unstable();
        max.dedup();
        OrderIdeal { max_points: max }
    }

    /// The ideal whose level on row `rows[i]` is `levels[i]`; a level equal
    /// to the row length means the row is empty.
    pub fn from_levels(rows: &[u32], levels: &[u32]) -> Self {
        let gens: Vec<Point> = rows
            .iter()
            .zip(levels)
            .filter(|(k, b)| b < k)
            .map(|(&k, &b)| Point::new(b, k))
            .collect();
        Self::from_generators(&gens)
    }

    pub fn max_points(&self) -> &[Point] {
        &self.max_points
    }

    pub fn is_empty(&self) -> bool {
        self.max_points.is_empty()
    }

    /// `∂_k I`: least valuation of a point of `I` on row `k`, `None` if the
    /// row misses `I`.
    pub fn boundary(&self, k: u32) -> Option<u32> {
        self.max_points
            .iter()
            .map(|g| g.v.max((k + g.v).saturating_sub(g.k)))
            .min()
            .filter(|&b| b < k)
    }

    /// Boundary with the empty row read as `k`: the valuation every
    /// coordinate on row `k` must reach.
    pub fn level(&self, k: u32) -> u32 {
        self.boundary(k).unwrap_or(k)
    }

    pub fn contains(&self, p: Point) -> bool {
        self.boundary(p.k).is_some_and(|b| p.v >= b)
    }

    pub fn is_subset(&self, other: &OrderIdeal) -> bool {
        self.max_points.iter().all(|&p| other.contains(p))
    }

    pub fn union(&self, other: &OrderIdeal) -> OrderIdeal {
        let mut gens = self.max_points.clone();
        gens.extend_from_slice(&other.max_points);
        Self::from_generators(&gens)
    }

    /// Meet of two ideals relative to a row set: on each row the larger of
    /// the two levels is kept.
    pub fn intersect(&self, other: &OrderIdeal, rows: Option<&[u32]>) -> Result<OrderIdeal> {
        let rows = rows.ok_or(Error::MissingContext)?;
        let levels: Vec<u32> = rows
            .iter()
            .map(|&k| self.level(k).max(other.level(k)))
            .collect();
        Ok(Self::from_levels(rows, &levels))
    }

    /// True when every maximal point lies on a row of `lambda`.
    pub fn in_context(&self, lambda: &Partition) -> bool {
        self.max_points.iter().all(|p| lambda.has_row(p.k))
    }

    /// `[I]_λ`: points of `I` on the rows of `lambda`, with multiplicity.
    pub fn weighted_size(&self, lambda: &Partition) -> u64 {
        lambda
            .pairs()
            .iter()
            .map(|&(k, m)| u64::from(m) * u64::from(k - self.level(k)))
            .sum()
    }

    /// The largest ideal of `J(P)_λ`, generated by the top of each row.
    pub fn full(lambda: &Partition) -> OrderIdeal {
        let gens: Vec<Point> = lambda.rows().into_iter().map(|k| Point::new(0, k)).collect();
        Self::from_generators(&gens)
    }
}

/// Same as [`OrderIdeal::from_generators`].
pub fn ideal_from_generators(gens: &[Point]) -> OrderIdeal {
    OrderIdeal::from_generators(gens)
}

/// Same as [`OrderIdeal::weighted_size`].
pub fn weighted_size(lambda: &Partition, ideal: &OrderIdeal) -> u64 {
    ideal.weighted_size(lambda)
}

/// Prints the maximal points as `1:4,0:1`; the empty ideal prints as `∅`.
impl fmt::Display for OrderIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.max_points.is_empty() {
            return f.write_str("∅");
        }
        let pts: Vec<String> = self.max_points.iter().map(Point::to_string).collect();
        f.write_str(&pts.join(","))
    }
}

/// Parses `v:k` lists such as `1:4,0:1`; empty text (or `∅`) is the empty
/// ideal. The points are treated as generators.
impl FromStr for OrderIdeal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "∅" {
            return Ok(OrderIdeal::empty());
        }
        let mut gens = Vec::new();
        for tok in s.split(',') {
            let (v, k) = tok
                .trim()
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected v:k, got {tok:?}")))?;
            let v: u32 = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad valuation in {tok:?}")))?;
            let k: u32 = k
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad row in {tok:?}")))?;
            if v >= k {
                return Err(Error::Parse(format!("point {tok:?} needs v < k")));
            }
            gens.push(Point::new(v, k));
        }
        Ok(OrderIdeal::from_generators(&gens))
    }
}

// JSON uses the same text forms: `"5,4^2,2,1"` and `"1:4,0:1"`.
impl serde::Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.key())
    }
}

impl<'de> serde::Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl serde::Serialize for OrderIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for OrderIdeal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Every ideal of `J(P)_λ`, including the empty one.
///
/// Levels are assigned row by row, largest part first. For consecutive rows
/// `u > w` an assignment is consistent iff `b_w <= b_u` and
/// `k_w - b_w <= k_u - b_u`, with an empty row read as `b = k`. Output order
/// is lexicographically descending in the level vector, so `∅` comes first.
pub fn enumerate_ideals(lambda: &Partition) -> Vec<OrderIdeal> {
    enumerate_levels(&lambda.rows())
        .into_iter()
        .map(|lv| OrderIdeal::from_levels(&lambda.rows(), &lv))
        .collect()
}

fn enumerate_levels(rows: &[u32]) -> Vec<Vec<u32>> {
    fn rec(rows: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let i = cur.len();
        if i == rows.len() {
            out.push(cur.clone());
            return;
        }
        let k = rows[i];
        let (lo, hi) = match i.checked_sub(1) {
            None => (0, k),
            Some(j) => {
                let (ku, bu) = (rows[j], cur[j]);
                (k.saturating_sub(ku - bu), bu.min(k))
            }
        };
        for b in (lo..=hi).rev() {
            cur.push(b);
            rec(rows, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(rows, &mut Vec::new(), &mut out);
    out
}

/// The distributive lattice `J(P)_λ` with its Möbius function.
///
/// Containment between members reduces to comparing level vectors on the
/// rows of `λ`. The Möbius table is filled once, on first use, by the
/// generic recursion `μ(A,A) = 1`, `μ(A,B) = -Σ_{A ⊆ C ⊊ B} μ(A,C)`.
/// (In a distributive lattice μ(A,B) is ±1 on Boolean intervals and 0
/// otherwise, which would allow a closed form; the recursion is kept.)
#[derive(Debug)]
pub struct IdealLattice {
    partition: Partition,
    rows: Vec<u32>,
    ideals: Vec<OrderIdeal>,
    levels: Vec<Vec<u32>>,
    index: HashMap<OrderIdeal, usize>,
    mobius: OnceLock<Vec<Vec<i64>>>,
}

impl IdealLattice {
    pub fn new(lambda: &Partition) -> Self {
        let rows = lambda.rows();
        let levels = enumerate_levels(&rows);
        let ideals: Vec<OrderIdeal> = levels
            .iter()
            .map(|lv| OrderIdeal::from_levels(&rows, lv))
            .collect();
        let index = ideals.iter().cloned().enumerate().map(|(i, id)| (id, i)).collect();
        IdealLattice {
            partition: lambda.clone(),
            rows,
            ideals,
            levels,
            index,
            mobius: OnceLock::new(),
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn ideals(&self) -> &[OrderIdeal] {
        &self.ideals
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    /// Level vector of the `i`-th ideal on the lattice rows.
    pub fn levels(&self, i: usize) -> &[u32] {
        &self.levels[i]
    }

    /// Position of an ideal, or `None` if it is not in this lattice.
    pub fn index_of(&self, ideal: &OrderIdeal) -> Option<usize> {
        self.index.get(ideal).copied()
    }

    fn require(&self, ideal: &OrderIdeal) -> Result<usize> {
        self.index_of(ideal).ok_or_else(|| Error::ContextMismatch {
            ideal: ideal.to_string(),
            context: self.partition.to_string(),
        })
    }

    /// `ideals[a] ⊆ ideals[b]`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.levels[a].iter().zip(&self.levels[b]).all(|(x, y)| x >= y)
    }

    /// Indices of all members contained in `ideals[b]`.
    pub fn lower_set(&self, b: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&a| self.leq(a, b))
    }

    fn mobius_table(&self) -> &Vec<Vec<i64>> {
        self.mobius.get_or_init(|| {
            let n = self.len();
            // Sort by size so every proper subset precedes its supersets.
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&i| self.ideals[i].weighted_size(&self.partition));
            let mut mu = vec![vec![0i64; n]; n];
            for &a in &order {
                mu[a][a] = 1;
                for &b in &order {
                    if b == a || !self.leq(a, b) {
                        continue;
                    }
                    let s: i64 = order
                        .iter()
                        .filter(|&&c| c != b && self.leq(a, c) && self.leq(c, b))
                        .map(|&c| mu[a][c])
                        .sum();
                    mu[a][b] = -s;
                }
            }
            mu
        })
    }

    /// μ(A, B) by index.
    pub fn mobius_idx(&self, a: usize, b: usize) -> i64 {
        self.mobius_table()[a][b]
    }

    /// μ(A, B) for members `A ⊆ B` of the lattice.
    pub fn mobius(&self, a: &OrderIdeal, b: &OrderIdeal) -> Result<i64> {
        let (ia, ib) = (self.require(a)?, self.require(b)?);
        if !self.leq(ia, ib) {
            return Err(Error::NotComparable {
                lower: a.to_string(),
                upper: b.to_string(),
            });
        }
        Ok(self.mobius_idx(ia, ib))
    }
}

/// Möbius function of the interval `[a, b]` in `J(P)_λ`.
pub fn mobius(lambda: &Partition, a: &OrderIdeal, b: &OrderIdeal) -> Result<i64> {
    IdealLattice::new(lambda).mobius(a, b)
}
