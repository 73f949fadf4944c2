//! Orbits of pairs inside `M*_I × M*_L`.
//!
//! For a fixed `I` the cells `X_{I,J,K}` are cut down to the elements lying
//! in `M*_L`. Membership in the submodule `M_L` is the easy condition, so the
//! code counts `Y_{I,J,K,L} = X_{I,J,K} ∩ M_L` and recovers `M*_L` by Möbius
//! inversion over `J(P)_λ`. Counting `Y` needs the number of `m' ∈ M'_L`
//! whose image in `M'/R m(I)` has a given ideal; that is again a Möbius
//! inversion, this time over `J(P)_{λ'/I}`, of the counts `s_count` computed
//! by a dynamic program over coordinate valuations.

use crate::error::{Error, Result};
use crate::orbit::{orbit_size, Census, CanonicalSplit, SplitCells};
use crate::poly::QPoly;
use crate::poset::{IdealLattice, OrderIdeal, Partition};

/// Counts of elements of `R/P^k`, split by exact valuation. Index `k` holds
/// the zero element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationProfile {
    pub k: u32,
    pub per_valuation: Vec<QPoly>,
}

impl ValuationProfile {
    fn zero(k: u32) -> Self {
        ValuationProfile {
            k,
            per_valuation: vec![QPoly::zero(); k as usize + 1],
        }
    }

    pub fn total(&self) -> QPoly {
        self.per_valuation.iter().cloned().sum()
    }
}

/// Number of `w`-valued elements of the submodule `P^level` of `R/P^k`, per `w`.
fn submodule_profile(k: u32, level: u32) -> ValuationProfile {
    let mut prof = ValuationProfile::zero(k);
    for w in level..k {
        let free = (k - w) as usize;
        prof.per_valuation[w as usize] = &QPoly::q_pow(free) - &QPoly::q_pow(free - 1);
    }
    prof.per_valuation[k as usize] = QPoly::one();
    prof
}

/// Counts `x ∈ R/P^k` with `v(x) >= a` and `v(x - y) >= b`, split by `v(x)`,
/// where `y` has valuation `vy` (`None` for `y = 0`).
///
/// If `v(y) >= b` the conditions say `x ∈ P^max(a,b)`. Otherwise every
/// solution is `y` plus an element of `P^b`, so it has valuation `v(y)`;
/// there are `q^(k-b)` of them when `v(y) >= a`, none otherwise.
pub fn coset_count(k: u32, a: u32, b: u32, vy: Option<u32>) -> ValuationProfile {
    let (a, b) = (a.min(k), b.min(k));
    let vy = vy.map_or(k, |v| v.min(k));
    if vy >= b {
        return submodule_profile(k, a.max(b));
    }
    let mut prof = ValuationProfile::zero(k);
    if vy >= a {
        prof.per_valuation[vy as usize] = QPoly::q_pow((k - b) as usize);
    }
    prof
}

fn check_split_members(split: &CanonicalSplit, l: &OrderIdeal, j: &OrderIdeal) -> Result<()> {
    if !l.in_context(&split.source) {
        return Err(Error::ContextMismatch {
            ideal: l.to_string(),
            context: split.source.to_string(),
        });
    }
    if !j.in_context(&split.quotient) {
        return Err(Error::ContextMismatch {
            ideal: j.to_string(),
            context: split.quotient.to_string(),
        });
    }
    Ok(())
}

/// `#{m' ∈ M'_L : m̄' ∈ (M_{λ'/I})_J}`.
///
/// In coordinates `m' = (m'_1, …, m'_s)` the image in the quotient is
/// `(m'_1 - π^(v_1 - v_2) m'_2, …, m'_{s-1} - π^(v_{s-1} - v_s) m'_s, m'_s)`,
/// reduced modulo the quotient lengths. The program fixes `m'_s` first and
/// works upward; the state is the exact valuation of the coordinate just
/// chosen, which is all the next coset condition depends on.
pub fn s_count(split: &CanonicalSplit, l: &OrderIdeal, j: &OrderIdeal) -> Result<QPoly> {
    check_split_members(split, l, j)?;
    Ok(s_count_unchecked(split, l, j))
}

fn s_count_unchecked(split: &CanonicalSplit, l: &OrderIdeal, j: &OrderIdeal) -> QPoly {
    let pts = &split.prime_parts;
    let Some(last) = pts.len().checked_sub(1) else {
        return QPoly::one();
    };
    let bounds = |i: usize| {
        let mu = split.quotient_coords[i];
        let b = if mu == 0 { 0 } else { j.level(mu) };
        (l.level(pts[i].k), b)
    };
    let (a, b) = bounds(last);
    let mut state = coset_count(pts[last].k, a, b, None).per_valuation;
    for i in (0..last).rev() {
        let (k, prev) = (pts[i].k, pts[i + 1]);
        let shift = pts[i].v - prev.v;
        let (a, b) = bounds(i);
        let mut next = vec![QPoly::zero(); k as usize + 1];
        for (w, count) in state.iter().enumerate() {
            if count.is_zero() {
                continue;
            }
            let w = w as u32;
            let vy = (w < prev.k).then_some(w + shift);
            let prof = coset_count(k, a, b, vy);
            for (w2, c) in prof.per_valuation.iter().enumerate() {
                if !c.is_zero() {
                    next[w2] += &(count * c);
                }
            }
        }
        state = next;
    }
    state.into_iter().sum()
}

/// `#{m' ∈ M'_L : I(m̄') = J}` by Möbius inversion of [`s_count`].
pub fn exact_fiber_count(split: &CanonicalSplit, l: &OrderIdeal, j: &OrderIdeal) -> Result<QPoly> {
    check_split_members(split, l, j)?;
    let lat = IdealLattice::new(&split.quotient);
    let jb = lat.index_of(j).expect("checked membership");
    Ok(fiber_from_lattice(split, &lat, l, jb))
}

fn fiber_from_lattice(split: &CanonicalSplit, lat: &IdealLattice, l: &OrderIdeal, jb: usize) -> QPoly {
    let mut total = QPoly::zero();
    for ja in lat.lower_set(jb) {
        let mu = lat.mobius_idx(ja, jb);
        if mu != 0 {
            let s = s_count_unchecked(split, l, &lat.ideals()[ja]);
            total += &s.scale(&num_rational::BigRational::from_integer(mu.into()));
        }
    }
    total
}

/// `|Y_{I,J,K,L}|`: elements of the cell `X_{I,J,K}` lying in `M_L`.
pub fn y_count(
    lambda: &Partition,
    i: &OrderIdeal,
    j: &OrderIdeal,
    k: &OrderIdeal,
    l: &OrderIdeal,
) -> Result<QPoly> {
    let split = crate::orbit::canonical_split(lambda, i)?;
    if !k.in_context(&split.lambda_dprime) {
        return Err(Error::ContextMismatch {
            ideal: k.to_string(),
            context: split.lambda_dprime.to_string(),
        });
    }
    if !k.is_subset(l) {
        check_split_members(&split, l, j)?;
        return Ok(QPoly::zero());
    }
    Ok(&exact_fiber_count(&split, l, j)? * &orbit_size(&split.lambda_dprime, k)?)
}

/// Everything needed to split the stabilizer census of one `I` by the orbit
/// `M*_L` of the second member.
pub struct RefinedContext<'a> {
    lattice: &'a IdealLattice,
    cells: SplitCells,
    /// `y[l][c]`: `|Y_{I,J,K,L}|` for lattice member `l` and cell `c`.
    y: Vec<Vec<QPoly>>,
}

impl<'a> RefinedContext<'a> {
    pub fn new(lattice: &'a IdealLattice, i: &OrderIdeal) -> Result<Self> {
        let lambda = lattice.partition();
        let cells = SplitCells::new(lambda, i)?;
        let split = &cells.split;
        let qlat = IdealLattice::new(&split.quotient);
        let mut y = Vec::with_capacity(lattice.len());
        for l in lattice.ideals() {
            let s: Vec<QPoly> = qlat
                .ideals()
                .iter()
                .map(|j| s_count_unchecked(split, l, j))
                .collect();
            let fiber: Vec<QPoly> = (0..qlat.len())
                .map(|jb| {
                    qlat.lower_set(jb)
                        .filter_map(|ja| {
                            let mu = qlat.mobius_idx(ja, jb);
                            (mu != 0).then(|| s[ja].scale(&num_rational::BigRational::from_integer(mu.into())))
                        })
                        .sum()
                })
                .collect();
            let row = cells
                .cells
                .iter()
                .map(|c| {
                    if !c.k.is_subset(l) {
                        return Ok(QPoly::zero());
                    }
                    let jb = qlat.index_of(&c.j).expect("cell J comes from the quotient lattice");
                    Ok(&fiber[jb] * &orbit_size(&split.lambda_dprime, &c.k)?)
                })
                .collect::<Result<Vec<_>>>()?;
            y.push(row);
        }
        Ok(RefinedContext { lattice, cells, y })
    }

    pub fn cells(&self) -> &SplitCells {
        &self.cells
    }

    /// `|X_{I,J,K} ∩ M*_L|` for every cell, by inversion over `L' ⊆ L`.
    pub fn x_in(&self, l: usize) -> Vec<QPoly> {
        let mut out = vec![QPoly::zero(); self.cells.cells.len()];
        for lp in self.lattice.lower_set(l) {
            let mu = self.lattice.mobius_idx(lp, l);
            if mu == 0 {
                continue;
            }
            let mu = num_rational::BigRational::from_integer(mu.into());
            for (o, y) in out.iter_mut().zip(&self.y[lp]) {
                *o += &y.scale(&mu);
            }
        }
        out
    }

    /// Orbits of pairs in `M*_I × M*_L` grouped by stabilizer-orbit size.
    pub fn census(&self, l: usize) -> Result<Census> {
        let xs = self.x_in(l);
        Census::from_contributions(
            self.cells
                .cells
                .iter()
                .zip(xs)
                .map(|(c, x)| (c.alpha.clone(), x)),
        )
    }
}

/// Orbits of pairs in `M*_I × M*_L`, keyed by the size of the stabilizer
/// orbit of the second member.
pub fn refined_census(lambda: &Partition, i: &OrderIdeal, l: &OrderIdeal) -> Result<Census> {
    let lattice = IdealLattice::new(lambda);
    let li = lattice.index_of(l).ok_or_else(|| Error::ContextMismatch {
        ideal: l.to_string(),
        context: lambda.to_string(),
    })?;
    RefinedContext::new(&lattice, i)?.census(li)
}

/// Number of orbits of pairs in `M*_I × M*_L` for every `(I, L)`.
#[derive(Clone, Debug)]
pub struct RefinedMatrix {
    pub partition: Partition,
    pub ideals: Vec<OrderIdeal>,
    /// `totals[i][l]`, indexed like `ideals`.
    pub totals: Vec<Vec<QPoly>>,
}

impl RefinedMatrix {
    pub fn row_sum(&self, i: usize) -> QPoly {
        self.totals[i].iter().cloned().sum()
    }

    pub fn col_sum(&self, l: usize) -> QPoly {
        self.totals.iter().map(|r| r[l].clone()).sum()
    }

    pub fn grand_total(&self) -> QPoly {
        (0..self.ideals.len()).map(|i| self.row_sum(i)).sum()
    }
}

pub fn refined_matrix(lambda: &Partition) -> Result<RefinedMatrix> {
    use rayon::prelude::*;
    let lattice = IdealLattice::new(lambda);
    let totals = lattice
        .ideals()
        .par_iter()
        .map(|i| {
            let ctx = RefinedContext::new(&lattice, i)?;
            (0..lattice.len())
                .map(|l| Ok(ctx.census(l)?.total()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RefinedMatrix {
        partition: lambda.clone(),
        ideals: lattice.ideals().to_vec(),
        totals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::{canonical_split, per_ideal_total, x_count};
    use crate::poset::{enumerate_ideals, partitions_of};
    use crate::store::ResultStore;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }
    fn ideal(s: &str) -> OrderIdeal {
        s.parse().unwrap()
    }
    fn p(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }
    fn e() -> OrderIdeal {
        OrderIdeal::empty()
    }

    #[test]
    fn coset_profiles() {
        let prof = coset_count(3, 1, 2, Some(1));
        assert_eq!(prof.per_valuation, vec![QPoly::zero(), QPoly::q(), QPoly::zero(), QPoly::zero()]);
        let prof = coset_count(2, 0, 1, None);
        assert_eq!(prof.per_valuation, vec![QPoly::zero(), p(&[-1, 1]), QPoly::one()]);
        assert_eq!(prof.total(), QPoly::q());
        assert_eq!(coset_count(3, 1, 2, Some(0)).total(), QPoly::zero());
    }

    #[test]
    fn coset_totals_symbolic() {
        for k in 1..=5u32 {
            for a in 0..=k {
                for b in 0..=k {
                    for vy in (0..k).map(Some).chain([None]) {
                        let total = coset_count(k, a, b, vy).total();
                        let v = vy.unwrap_or(k);
                        let expect = if v >= b {
                            QPoly::q_pow((k - a.max(b)) as usize)
                        } else if v >= a {
                            QPoly::q_pow((k - b) as usize)
                        } else {
                            QPoly::zero()
                        };
                        assert_eq!(total, expect, "k={k} a={a} b={b} vy={vy:?}");
                    }
                }
            }
        }
    }

    /// Brute force over `Z/p^k`: the valuation split of the solution set.
    #[test]
    fn coset_profiles_match_enumeration() {
        for pr in [2u64, 3] {
            for k in 1..=3u32 {
                let n = pr.pow(k);
                let val = |x: u64| if x == 0 { k } else { (0..k).find(|&e| !x.is_multiple_of(pr.pow(e + 1))).unwrap() };
                for y in 0..n {
                    for a in 0..=k {
                        for b in 0..=k {
                            let mut got = vec![0u64; k as usize + 1];
                            for x in 0..n {
                                if val(x) >= a && val((x + n - y) % n) >= b {
                                    got[val(x) as usize] += 1;
                                }
                            }
                            let vy = (y != 0).then(|| val(y));
                            let prof = coset_count(k, a, b, vy);
                            let want: Vec<u64> = prof
                                .per_valuation
                                .iter()
                                .map(|c| c.eval_integer(pr).unwrap().try_into().unwrap())
                                .collect();
                            assert_eq!(got, want, "p={pr} k={k} y={y} a={a} b={b}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn s_count_examples() {
        let split = canonical_split(&part("3,1"), &ideal("1:3,0:1")).unwrap();
        let l = ideal("1:3,0:1");
        assert_eq!(s_count(&split, &l, &e()).unwrap(), QPoly::q_pow(2));
        assert_eq!(s_count(&split, &l, &ideal("0:2")).unwrap(), QPoly::q_pow(3));
        assert_eq!(s_count(&split, &e(), &e()).unwrap(), QPoly::one());
    }

    #[test]
    fn fiber_examples() {
        let lam = part("2");
        let split = canonical_split(&lam, &ideal("1:2")).unwrap();
        let full = OrderIdeal::full(&lam);
        assert_eq!(exact_fiber_count(&split, &full, &ideal("0:1")).unwrap(), p(&[0, -1, 1]));
        assert_eq!(exact_fiber_count(&split, &full, &e()).unwrap(), QPoly::q());
        assert_eq!(exact_fiber_count(&split, &e(), &e()).unwrap(), QPoly::one());
        for n in 1..=6 {
            for lam in partitions_of(n) {
                let full = OrderIdeal::full(&lam);
                for i in enumerate_ideals(&lam) {
                    let split = canonical_split(&lam, &i).unwrap();
                    assert_eq!(
                        exact_fiber_count(&split, &full, &e()).unwrap(),
                        QPoly::q_pow(split.fiber_exponent() as usize)
                    );
                }
            }
        }
    }

    #[test]
    fn y_examples() {
        let lam = part("2,1");
        let i = ideal("0:2");
        assert_eq!(y_count(&lam, &i, &e(), &ideal("0:1"), &ideal("1:2")).unwrap(), QPoly::zero());
        let full = OrderIdeal::full(&lam);
        for k in enumerate_ideals(&part("1")) {
            assert_eq!(y_count(&lam, &i, &e(), &k, &full).unwrap(), x_count(&lam, &i, &e(), &k).unwrap());
        }
        assert_eq!(y_count(&part("1"), &ideal("0:1"), &e(), &e(), &e()).unwrap(), QPoly::one());
    }

    #[test]
    fn refined_matrix_line() {
        let m = refined_matrix(&part("1")).unwrap();
        assert_eq!(m.totals, vec![vec![QPoly::one(), QPoly::one()], vec![QPoly::one(), p(&[-1, 1])]]);
        assert_eq!(m.grand_total(), p(&[2, 1]));
        let m = refined_matrix(&part("2,1")).unwrap();
        assert_eq!(m.grand_total(), p(&[5, 5, 1]));
        let m = refined_matrix(&Partition::empty()).unwrap();
        assert_eq!(m.totals, vec![vec![QPoly::one()]]);
    }

    #[test]
    fn refined_sums_match_unrefined() {
        let store = ResultStore::in_memory();
        for n in 0..=6 {
            for lam in partitions_of(n) {
                let lattice = IdealLattice::new(&lam);
                let mut grand = QPoly::zero();
                for i in lattice.ideals() {
                    let ctx = RefinedContext::new(&lattice, i).unwrap();
                    let mut per_cell = vec![QPoly::zero(); ctx.cells().cells.len()];
                    let mut row = QPoly::zero();
                    for l in 0..lattice.len() {
                        for (acc, x) in per_cell.iter_mut().zip(ctx.x_in(l)) {
                            *acc += &x;
                        }
                        let census = ctx.census(l).unwrap();
                        for (_, cnt) in &census.rows {
                            assert!(cnt.is_integral(), "{lam} {i}");
                        }
                        row += &census.total();
                    }
                    for (c, acc) in ctx.cells().cells.iter().zip(&per_cell) {
                        assert_eq!(acc, &c.x, "{lam} I={i} J={} K={}", c.j, c.k);
                    }
                    assert_eq!(row, per_ideal_total(&lam, i).unwrap());
                    grand += &row;
                }
                assert_eq!(grand, crate::orbit::n_lambda(&lam, &store).unwrap(), "{lam}");
            }
        }
    }
}
