//! Brute-force ground truth over `Z/p^k`.
//!
//! Modules are built explicitly, automorphisms act as permutation tables on
//! the element list, and orbits are found either by closing under a small
//! generating set (quick mode) or by applying every automorphism (full mode).
//! [`verify`] compares the outcome with the polynomial formulas at `q = p`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::orbit::{orbit_census, orbit_size, CanonicalSplit};
use crate::poly::QPoly;
use crate::poset::{IdealLattice, OrderIdeal, Partition, Point};
use crate::refined::RefinedContext;
use crate::store::ResultStore;

pub const ELEMENT_BUDGET: u64 = 1 << 12;
pub const PAIR_BUDGET: u64 = 1 << 20;
pub const ENDO_BUDGET: u64 = 1 << 24;

/// Largest `e ≤ k` with `p^e | x`.
pub fn valuation(x: u64, k: u32, p: u64) -> u32 {
    if x == 0 {
        return k;
    }
    let mut e = 0;
    let mut x = x;
    while x.is_multiple_of(p) && e < k {
        x /= p;
        e += 1;
    }
    e
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// `⊕ Z/p^{k_i}` with elements encoded in mixed radix, coordinate 0 lowest.
#[derive(Clone, Debug)]
pub struct ExplicitModule {
    pub p: u64,
    pub exponents: Vec<u32>,
    moduli: Vec<u64>,
    size: usize,
}

impl ExplicitModule {
    pub fn new(lambda: &Partition, p: u64) -> Result<Self> {
        Self::with_budget(lambda, p, ELEMENT_BUDGET)
    }

    pub fn with_budget(lambda: &Partition, p: u64, budget: u64) -> Result<Self> {
        Self::from_exponents(lambda.expanded(), p, budget)
    }

    fn from_exponents(exponents: Vec<u32>, p: u64, budget: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Parse(format!("{p} is not a prime")));
        }
        let total: u32 = exponents.iter().sum();
        let size = p
            .checked_pow(total)
            .filter(|&s| s <= budget)
            .ok_or_else(|| Error::BudgetExceeded(format!("{p}^{total} elements exceeds {budget}")))?;
        let moduli = exponents.iter().map(|&k| p.pow(k)).collect();
        Ok(ExplicitModule {
            p,
            exponents,
            moduli,
            size: size as usize,
        })
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    pub fn encode(&self, coords: &[u64]) -> usize {
        let mut idx = 0u64;
        for (x, m) in coords.iter().zip(&self.moduli).rev() {
            idx = idx * m + x % m;
        }
        idx as usize
    }

    pub fn decode(&self, mut idx: usize) -> Vec<u64> {
        self.moduli
            .iter()
            .map(|&m| {
                let x = idx as u64 % m;
                idx /= m as usize;
                x
            })
            .collect()
    }

    pub fn ideal_of(&self, coords: &[u64]) -> OrderIdeal {
        ideal_of(self, coords)
    }

    /// Applies the endomorphism with multiplier matrix `mult` (row = target).
    fn apply(&self, mult: &[Vec<u64>], x: &[u64]) -> Vec<u64> {
        mult.iter()
            .zip(&self.moduli)
            .map(|(row, &m)| row.iter().zip(x).fold(0, |acc, (c, xi)| (acc + c * xi) % m))
            .collect()
    }

    fn perm_of(&self, mult: &[Vec<u64>]) -> Vec<u32> {
        (0..self.size)
            .map(|i| self.encode(&self.apply(mult, &self.decode(i))) as u32)
            .collect()
    }

    /// Smallest multiplier of a homomorphism `Z/p^{k_s} → Z/p^{k_r}`.
    fn hom_step(&self, r: usize, s: usize) -> u64 {
        self.p.pow(self.exponents[r].saturating_sub(self.exponents[s]))
    }

    fn identity(&self) -> Vec<Vec<u64>> {
        let n = self.rank();
        (0..n).map(|r| (0..n).map(|s| u64::from(r == s)).collect()).collect()
    }
}

/// The ideal generated by `(v(x_i), k_i)` over nonzero coordinates.
pub fn ideal_of(m: &ExplicitModule, coords: &[u64]) -> OrderIdeal {
    let gens: Vec<Point> = coords
        .iter()
        .zip(&m.exponents)
        .filter(|(x, _)| **x != 0)
        .map(|(&x, &k)| Point::new(valuation(x, k, m.p), k))
        .collect();
    OrderIdeal::from_generators(&gens)
}

/// An endomorphism from the generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    /// `x_coord *= unit`.
    Scale { coord: usize, unit: u64 },
    /// `x_target += factor * x_source`.
    Transvection { target: usize, source: usize, factor: u64 },
}

fn multiplicative_order(g: u64, m: u64) -> u64 {
    let mut x = g % m;
    let mut ord = 1;
    while x != 1 {
        x = x * g % m;
        ord += 1;
    }
    ord
}

/// Generators of the unit group mod `p^k`, identities dropped.
fn unit_generators(p: u64, k: u32) -> Vec<u64> {
    let m = p.pow(k);
    if p == 2 {
        return [m - 1, 5 % m].into_iter().filter(|&u| u != 1 % m && u != 0).collect();
    }
    let phi = m / p * (p - 1);
    let g = (2..m)
        .find(|&g| g % p != 0 && multiplicative_order(g, m) == phi)
        .expect("unit group mod an odd prime power is cyclic");
    vec![g]
}

/// Unit scalings per coordinate and transvections per ordered pair.
pub fn aut_generators(m: &ExplicitModule) -> Vec<Generator> {
    let mut out = Vec::new();
    for (coord, &k) in m.exponents.iter().enumerate() {
        for unit in unit_generators(m.p, k) {
            out.push(Generator::Scale { coord, unit });
        }
    }
    for target in 0..m.rank() {
        for source in 0..m.rank() {
            if target != source {
                out.push(Generator::Transvection {
                    target,
                    source,
                    factor: m.hom_step(target, source),
                });
            }
        }
    }
    out
}

fn generator_matrix(m: &ExplicitModule, g: &Generator) -> Vec<Vec<u64>> {
    let mut mat = m.identity();
    match *g {
        Generator::Scale { coord, unit } => mat[coord][coord] = unit,
        Generator::Transvection { target, source, factor } => mat[target][source] = factor,
    }
    mat
}

/// Rank over `F_p` of a square matrix.
fn rank_mod_p(mut a: Vec<Vec<u64>>, p: u64) -> usize {
    let n = a.len();
    a.iter_mut().flatten().for_each(|x| *x %= p);
    let inv = |x: u64| (1..p).find(|y| x * y % p == 1).unwrap();
    let mut rank = 0;
    for col in 0..n {
        let Some(piv) = (rank..n).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let s = inv(a[rank][col]);
        a[rank].iter_mut().for_each(|x| *x = *x * s % p);
        let pivot = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            let f = row[col];
            if r != rank && f != 0 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Every automorphism, as a multiplier matrix. An endomorphism is invertible
/// exactly when it is injective on the socle `M[p]`.
pub fn all_automorphisms(m: &ExplicitModule) -> Result<Vec<Vec<Vec<u64>>>> {
    let n = m.rank();
    let k = &m.exponents;
    let ranges: Vec<u64> = (0..n * n)
        .map(|i| m.p.pow(k[i / n].min(k[i % n])))
        .collect();
    let total = ranges
        .iter()
        .try_fold(1u64, |acc, &r| acc.checked_mul(r).filter(|&t| t <= ENDO_BUDGET))
        .ok_or_else(|| Error::BudgetExceeded(format!("more than {ENDO_BUDGET} endomorphisms")))?;
    let mut out = Vec::new();
    let mut digits = vec![0u64; n * n];
    for _ in 0..total {
        let mult: Vec<Vec<u64>> = (0..n)
            .map(|r| (0..n).map(|s| digits[r * n + s] * m.hom_step(r, s)).collect())
            .collect();
        let socle: Vec<Vec<u64>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|s| {
                        let img = mult[r][s] * m.p.pow(k[s] - 1) % m.moduli[r];
                        img / m.p.pow(k[r] - 1)
                    })
                    .collect()
            })
            .collect();
        if rank_mod_p(socle, m.p) == n {
            out.push(mult);
        }
        for (d, &r) in digits.iter_mut().zip(&ranges) {
            *d += 1;
            if *d < r {
                break;
            }
            *d = 0;
        }
    }
    Ok(out)
}

/// `|Aut(⊕ Z/p^{e_i})|` by the closed formula for finite abelian p-groups.
pub fn aut_order_formula(exponents: &[u32], p: u64) -> u128 {
    let mut e: Vec<u32> = exponents.to_vec();
    e.sort_unstable();
    let n = e.len();
    let p = u128::from(p);
    let mut order = 1u128;
    for k in 0..n {
        let d = (0..n).rev().find(|&l| e[l] == e[k]).unwrap() + 1;
        let c = (0..n).find(|&l| e[l] == e[k]).unwrap() + 1;
        order *= p.pow(d as u32) - p.pow(k as u32);
        order *= p.pow(e[k]).pow((n - d) as u32);
        order *= p.pow(e[k] - 1).pow((n - c + 1) as u32);
    }
    order
}

/// Orbit partition of a point set, labels numbered by first appearance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbits {
    pub label: Vec<u32>,
    pub sizes: Vec<u64>,
    pub reps: Vec<usize>,
}

impl Orbits {
    fn from_labels(mut raw: impl FnMut(usize) -> usize, n: usize) -> Self {
        let mut map: HashMap<usize, u32> = HashMap::new();
        let mut label = Vec::with_capacity(n);
        let mut sizes = Vec::new();
        let mut reps = Vec::new();
        for x in 0..n {
            let id = *map.entry(raw(x)).or_insert_with(|| {
                sizes.push(0);
                reps.push(x);
                (sizes.len() - 1) as u32
            });
            sizes[id as usize] += 1;
            label.push(id);
        }
        Orbits { label, sizes, reps }
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }
}

struct UnionFind(Vec<u32>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] as usize != x {
            let up = self.0[self.0[x] as usize];
            self.0[x] = up;
            x = up as usize;
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b) as u32;
        }
    }
}

/// Connected components under the generator action.
fn closure(n: usize, perms: &[Vec<u32>], act: impl Fn(&[u32], usize) -> usize) -> Orbits {
    let mut uf = UnionFind((0..n as u32).collect());
    for g in perms {
        for x in 0..n {
            uf.union(x, act(g, x));
        }
    }
    Orbits::from_labels(|x| uf.find(x), n)
}

/// Orbits by applying a whole group (which must contain the identity).
fn sweep(n: usize, group: &[Vec<u32>], act: impl Fn(&[u32], usize) -> usize) -> Orbits {
    const NONE: u32 = u32::MAX;
    let mut owner = vec![NONE; n];
    for x in 0..n {
        if owner[x] == NONE {
            for g in group {
                let y = act(g, x);
                owner[y] = x as u32;
            }
        }
    }
    Orbits::from_labels(|x| owner[x] as usize, n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Quick,
    FullEndos,
}

/// Element and pair orbits of one module.
pub struct OrbitData {
    pub module: ExplicitModule,
    pub elements: Orbits,
    pub pairs: Orbits,
    /// Group order, known only when every automorphism was listed.
    pub group_order: Option<u64>,
}

pub fn orbits(lambda: &Partition, p: u64, mode: Mode) -> Result<OrbitData> {
    let module = ExplicitModule::new(lambda, p)?;
    let n = module.len();
    let pair_space = (n as u64) * (n as u64);
    if pair_space > PAIR_BUDGET {
        return Err(Error::BudgetExceeded(format!("{pair_space} pairs exceeds {PAIR_BUDGET}")));
    }
    let elem_act = |g: &[u32], x: usize| g[x] as usize;
    let pair_act = |g: &[u32], x: usize| g[x / n] as usize * n + g[x % n] as usize;
    match mode {
        Mode::Quick => {
            let perms: Vec<Vec<u32>> = aut_generators(&module)
                .iter()
                .map(|g| module.perm_of(&generator_matrix(&module, g)))
                .collect();
            Ok(OrbitData {
                elements: closure(n, &perms, elem_act),
                pairs: closure(n * n, &perms, pair_act),
                module,
                group_order: None,
            })
        }
        Mode::FullEndos => {
            let group: Vec<Vec<u32>> = all_automorphisms(&module)?
                .iter()
                .map(|a| module.perm_of(a))
                .collect();
            Ok(OrbitData {
                elements: sweep(n, &group, elem_act),
                pairs: sweep(n * n, &group, pair_act),
                group_order: Some(group.len() as u64),
                module,
            })
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    fn push(&mut self, name: &str, expected: Value, actual: Value) {
        let pass = expected == actual;
        self.checks.push(Check {
            name: name.to_string(),
            expected,
            actual,
            pass,
        });
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

fn at(poly: &QPoly, p: u64) -> Result<u64> {
    poly.eval_integer(p)
        .and_then(|v| u64::try_from(v).ok())
        .ok_or_else(|| Error::NonIntegerResult(format!("{poly} at q = {p}")))
}

/// Runs the orbit enumeration and compares every count with the formulas.
pub fn verify(lambda: &Partition, p: u64, mode: Mode, store: &ResultStore) -> Result<Report> {
    let data = orbits(lambda, p, mode)?;
    let mut report = Report::default();
    let m = &data.module;
    let n = m.len();
    let lattice = IdealLattice::new(lambda);
    let elem_ideal: Vec<usize> = (0..n)
        .map(|x| {
            let i = ideal_of(m, &m.decode(x));
            lattice.index_of(&i).expect("ideal of an element lies in the lattice")
        })
        .collect();

    // (a) element orbits correspond to ideals.
    report.push(
        "element orbit count",
        json!(lattice.len()),
        json!(data.elements.len()),
    );
    let mut orbit_ideal: Vec<Option<usize>> = vec![None; data.elements.len()];
    let mut constant = true;
    for x in 0..n {
        let slot = &mut orbit_ideal[data.elements.label[x] as usize];
        match slot {
            None => *slot = Some(elem_ideal[x]),
            Some(i) => constant &= *i == elem_ideal[x],
        }
    }
    let mut hit: Vec<usize> = orbit_ideal.iter().flatten().copied().collect();
    hit.sort_unstable();
    hit.dedup();
    report.push(
        "element orbits carry distinct ideals",
        json!(true),
        json!(constant && hit.len() == data.elements.len()),
    );

    // (b) element orbit sizes.
    let mut expected = BTreeMap::new();
    for i in lattice.ideals() {
        expected.insert(i.to_string(), at(&orbit_size(lambda, i)?, p)?);
    }
    let actual: BTreeMap<String, u64> = orbit_ideal
        .iter()
        .zip(&data.elements.sizes)
        .map(|(i, &s)| (lattice.ideals()[i.unwrap()].to_string(), s))
        .collect();
    report.push("element orbit sizes", json!(expected), json!(actual));

    if let Some(order) = data.group_order {
        report.push(
            "automorphism group order",
            json!(aut_order_formula(&m.exponents, p) as u64),
            json!(order),
        );
    }
    let order = aut_order_formula(&m.exponents, p);
    let lagrange = data
        .elements
        .sizes
        .iter()
        .chain(&data.pairs.sizes)
        .all(|&s| order.is_multiple_of(u128::from(s)));
    report.push("orbit sizes divide the group order", json!(true), json!(lagrange));

    // (c) pair orbit count.
    let n_lam = crate::orbit::n_lambda(lambda, store)?;
    report.push("pair orbit count", json!(at(&n_lam, p)?), json!(data.pairs.len()));

    // Pair orbits, keyed by the ideals of both members.
    let mut refine_ok = true;
    let mut pair_ideals: Vec<Option<(usize, usize)>> = vec![None; data.pairs.len()];
    for x in 0..n * n {
        let key = (elem_ideal[x / n], elem_ideal[x % n]);
        let slot = &mut pair_ideals[data.pairs.label[x] as usize];
        match slot {
            None => *slot = Some(key),
            Some(k) => refine_ok &= *k == key,
        }
    }
    report.push("pair orbits refine ideal classes", json!(true), json!(refine_ok));

    // (d) pair orbit sizes per I vs census; (e) per (I, L) vs refined census.
    let mut seen_d: BTreeMap<(usize, u64), u64> = BTreeMap::new();
    let mut seen_e: BTreeMap<(usize, usize, u64), u64> = BTreeMap::new();
    for (key, &size) in pair_ideals.iter().zip(&data.pairs.sizes) {
        let (i, l) = key.unwrap();
        *seen_d.entry((i, size)).or_default() += 1;
        *seen_e.entry((i, l, size)).or_default() += 1;
    }
    let mut want_d: BTreeMap<(usize, u64), u64> = BTreeMap::new();
    let mut want_e: BTreeMap<(usize, usize, u64), u64> = BTreeMap::new();
    for (ii, i) in lattice.ideals().iter().enumerate() {
        let first = at(&orbit_size(lambda, i)?, p)?;
        for (alpha, count) in &orbit_census(lambda, i)?.rows {
            let c = at(count, p)?;
            if c > 0 {
                *want_d.entry((ii, first * at(alpha, p)?)).or_default() += c;
            }
        }
        let ctx = RefinedContext::new(&lattice, i)?;
        for li in 0..lattice.len() {
            for (alpha, count) in &ctx.census(li)?.rows {
                let c = at(count, p)?;
                if c > 0 {
                    *want_e.entry((ii, li, first * at(alpha, p)?)).or_default() += c;
                }
            }
        }
    }
    let name = |i: usize| lattice.ideals()[i].to_string();
    let render_d = |m: &BTreeMap<(usize, u64), u64>| -> Value {
        m.iter().map(|(&(i, s), &c)| json!([name(i), s, c])).collect()
    };
    let render_e = |m: &BTreeMap<(usize, usize, u64), u64>| -> Value {
        m.iter().map(|(&(i, l, s), &c)| json!([name(i), name(l), s, c])).collect()
    };
    report.push("pair orbit sizes by I", render_d(&want_d), render_d(&seen_d));
    report.push("pair orbit sizes by (I, L)", render_e(&want_e), render_e(&seen_e));

    let totals = |m: &BTreeMap<(usize, usize, u64), u64>| -> Value {
        let mut t: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for (&(i, l, _), &c) in m {
            *t.entry((i, l)).or_default() += c;
        }
        t.iter().map(|(&(i, l), &c)| json!([name(i), name(l), c])).collect()
    };
    report.push("refined totals by (I, L)", totals(&want_e), totals(&seen_e));

    if mode == Mode::FullEndos {
        let quick = orbits(lambda, p, Mode::Quick)?;
        let same = quick.elements == data.elements && quick.pairs == data.pairs;
        report.push("generator closure matches all automorphisms", json!(true), json!(same));
    }
    Ok(report)
}

/// `#{m' ∈ M'_L : I(m̄') ⊆ J}` by enumeration, reading the ideal of the
/// image through homomorphisms `M' → Z/p^k` that kill `m(I)`: the boundary
/// of `I(x)` in row `k` is the least valuation of `f(x)` over such `f`.
pub fn s_count_brute(split: &CanonicalSplit, l: &OrderIdeal, j: &OrderIdeal, p: u64) -> Result<u64> {
    let pts = &split.prime_parts;
    let module = ExplicitModule::from_exponents(pts.iter().map(|q| q.k).collect(), p, ELEMENT_BUDGET)?;
    let generator: Vec<u64> = pts.iter().map(|q| p.pow(q.v)).collect();
    let rows = split.quotient.rows();
    // Homomorphisms M' → Z/p^k vanishing on m(I), for each quotient row k.
    let homs: Vec<(u32, Vec<Vec<u64>>)> = rows
        .iter()
        .map(|&k| {
            let modk = p.pow(k);
            let steps: Vec<u64> = pts.iter().map(|q| p.pow(k.saturating_sub(q.k))).collect();
            let counts: Vec<u64> = pts.iter().map(|q| p.pow(k.min(q.k))).collect();
            let mut fs = Vec::new();
            let mut digits = vec![0u64; pts.len()];
            let total: u64 = counts.iter().product();
            for _ in 0..total {
                let f: Vec<u64> = digits.iter().zip(&steps).map(|(d, s)| d * s).collect();
                let on_gen = f.iter().zip(&generator).fold(0, |a, (c, x)| (a + c * x) % modk);
                if on_gen == 0 {
                    fs.push(f);
                }
                for (d, &c) in digits.iter_mut().zip(&counts) {
                    *d += 1;
                    if *d < c {
                        break;
                    }
                    *d = 0;
                }
            }
            (k, fs)
        })
        .collect();
    let mut count = 0;
    'elements: for idx in 0..module.len() {
        let x = module.decode(idx);
        for (xi, q) in x.iter().zip(pts) {
            if valuation(*xi, q.k, p) < l.level(q.k) {
                continue 'elements;
            }
        }
        for (k, fs) in &homs {
            let modk = p.pow(*k);
            let least = fs
                .iter()
                .map(|f| valuation(f.iter().zip(&x).fold(0, |a, (c, xi)| (a + c * xi) % modk), *k, p))
                .min()
                .unwrap_or(*k);
            if least < j.level(*k) {
                continue 'elements;
            }
        }
        count += 1;
    }
    Ok(count)
}

fn mat_mul(a: &[u64], b: &[u64], n: usize, p: u64) -> Vec<u64> {
    let mut c = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            c[i * n + j] = (0..n).map(|t| a[i * n + t] * b[t * n + j]).sum::<u64>() % p;
        }
    }
    c
}

fn mat_vec(a: &[u64], x: &[u64], n: usize, p: u64) -> Vec<u64> {
    (0..n)
        .map(|i| (0..n).map(|t| a[i * n + t] * x[t]).sum::<u64>() % p)
        .collect()
}

fn digits(mut idx: u64, p: u64, len: usize) -> Vec<u64> {
    (0..len)
        .map(|_| {
            let d = idx % p;
            idx /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, x| acc * p + x)
}

/// `GL_n(F_p)` as pairs `(g, g^{-1})`, row-major.
fn general_linear(n: usize, p: u64) -> Vec<(Vec<u64>, Vec<u64>)> {
    let all = p.pow((n * n) as u32);
    let mats: Vec<Vec<u64>> = (0..all).map(|i| digits(i, p, n * n)).collect();
    let identity: Vec<u64> = (0..n * n).map(|i| u64::from(i / n == i % n)).collect();
    let invertible: Vec<&Vec<u64>> = mats
        .iter()
        .filter(|m| rank_mod_p(m.chunks(n).map(<[u64]>::to_vec).collect(), p) == n)
        .collect();
    let index: HashMap<&Vec<u64>, usize> = invertible.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    invertible
        .iter()
        .map(|g| {
            let inv = invertible
                .iter()
                .find(|h| mat_mul(g, h, n, p) == identity)
                .expect("invertible matrix has an inverse");
            debug_assert!(index.contains_key(inv));
            ((*g).clone(), (*inv).clone())
        })
        .collect()
}

/// Number of triples `(A, x, y)` over `F_p` up to simultaneous change of basis.
pub fn quiver_orbits_brute(n: usize, p: u64) -> Result<u64> {
    let space = p
        .checked_pow((n * n + 2 * n) as u32)
        .filter(|&s| s <= PAIR_BUDGET)
        .ok_or_else(|| Error::BudgetExceeded(format!("triples of size {n} over F_{p}")))?;
    if !is_prime(p) {
        return Err(Error::Parse(format!("{p} is not a prime")));
    }
    let group = general_linear(n, p);
    let perms: Vec<Vec<u32>> = group
        .iter()
        .map(|(g, gi)| {
            (0..space)
                .map(|t| {
                    let d = digits(t, p, n * n + 2 * n);
                    let a = mat_mul(&mat_mul(g, &d[..n * n], n, p), gi, n, p);
                    let x = mat_vec(g, &d[n * n..n * n + n], n, p);
                    let y = mat_vec(g, &d[n * n + n..], n, p);
                    undigits(&[a, x, y].concat(), p) as u32
                })
                .collect()
        })
        .collect();
    Ok(sweep(space as usize, &perms, |g, x| g[x] as usize).len() as u64)
}

/// Number of similarity classes of `n × n` matrices over `F_p`.
pub fn similarity_classes_brute(n: usize, p: u64) -> Result<u64> {
    let space = p
        .checked_pow((n * n) as u32)
        .filter(|&s| s <= PAIR_BUDGET)
        .ok_or_else(|| Error::BudgetExceeded(format!("matrices of size {n} over F_{p}")))?;
    if !is_prime(p) {
        return Err(Error::Parse(format!("{p} is not a prime")));
    }
    let perms: Vec<Vec<u32>> = general_linear(n, p)
        .iter()
        .map(|(g, gi)| {
            (0..space)
                .map(|t| {
                    let a = digits(t, p, n * n);
                    undigits(&mat_mul(&mat_mul(g, &a, n, p), gi, n, p), p) as u32
                })
                .collect()
        })
        .collect();
    Ok(sweep(space as usize, &perms, |g, x| g[x] as usize).len() as u64)
}
