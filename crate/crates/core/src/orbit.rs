//! Orbit and submodule sizes, the canonical splitting `M = M' ⊕ M''`
//! attached to an orbit `M*_I`, and the count of orbits of pairs.
//!
//! The orbits of pairs whose first member lies in `M*_I` correspond to the
//! orbits of the stabilizer `G_I` of the canonical element `m(I)`. Each
//! element `m = (m', m'')` carries two invariants, `J = I(m̄')` in the
//! quotient `M'/R m(I)` and `K = I(m'')`; the size `α_{I,J,K}` of its
//! stabilizer orbit depends only on them. Grouping the cells `X_{I,J,K}` by
//! `α` and dividing gives the number of stabilizer orbits of each size.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::QPoly;
use crate::poset::{enumerate_ideals, OrderIdeal, Partition, Point};
use crate::store::ResultStore;

fn out_of_context(lambda: &Partition, ideal: &OrderIdeal) -> Error {
    Error::IdealOutOfContext {
        ideal: ideal.to_string(),
        partition: lambda.to_string(),
    }
}

fn mismatch(ideal: &OrderIdeal, context: &Partition) -> Error {
    Error::ContextMismatch {
        ideal: ideal.to_string(),
        context: context.to_string(),
    }
}

/// `|M*_I|` for `M = M_λ`: monic of degree `[I]_λ`.
pub fn orbit_size(lambda: &Partition, ideal: &OrderIdeal) -> Result<QPoly> {
    if !ideal.in_context(lambda) {
        return Err(out_of_context(lambda, ideal));
    }
    let mults: Vec<u32> = ideal
        .max_points()
        .iter()
        .map(|p| lambda.multiplicity(p.k))
        .collect();
    QPoly::laurent_product(ideal.weighted_size(lambda), &mults)
}

/// `|M_I| = q^[I]_λ`; `I` may come from any context.
pub fn submodule_size(lambda: &Partition, ideal: &OrderIdeal) -> QPoly {
    QPoly::q_pow(ideal.weighted_size(lambda) as usize)
}

/// The splitting of `M_λ` attached to an ideal `I`.
///
/// `prime_parts` are the maximal points `(v_j, k_j)` of `I`, largest row
/// first. `M'` has one cyclic summand of length `k_j` for each of them and
/// `M''` holds the remaining summands. `quotient_coords` are the cyclic
/// lengths of `M'/R m(I)` in coordinate order,
/// `(v_1 + k_2 - v_2, …, v_{s-1} + k_s - v_s, v_s)`; a zero length is a
/// coordinate that vanishes in the quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalSplit {
    pub source: Partition,
    pub ideal: OrderIdeal,
    pub prime_parts: Vec<Point>,
    pub lambda_prime: Partition,
    pub lambda_dprime: Partition,
    pub quotient: Partition,
    pub quotient_coords: Vec<u32>,
}

impl CanonicalSplit {
    /// `k_1 - v_1`, so that `|R m(I)| = q^(k_1 - v_1)`; 0 for the empty ideal.
    pub fn fiber_exponent(&self) -> u32 {
        self.prime_parts.first().map_or(0, |p| p.k - p.v)
    }
}

pub fn canonical_split(lambda: &Partition, ideal: &OrderIdeal) -> Result<CanonicalSplit> {
    if !ideal.in_context(lambda) {
        return Err(out_of_context(lambda, ideal));
    }
    // The antichain is already sorted by descending row.
    let prime_parts = ideal.max_points().to_vec();
    let ks: Vec<u32> = prime_parts.iter().map(|p| p.k).collect();
    let quotient_coords: Vec<u32> = prime_parts
        .iter()
        .enumerate()
        .map(|(j, p)| match prime_parts.get(j + 1) {
            Some(next) => p.v + next.k - next.v,
            None => p.v,
        })
        .collect();
    Ok(CanonicalSplit {
        source: lambda.clone(),
        ideal: ideal.clone(),
        lambda_prime: Partition::from_parts(&ks),
        lambda_dprime: lambda.remove_one_each(&ks),
        quotient: Partition::from_parts(&quotient_coords),
        quotient_coords,
        prime_parts,
    })
}

/// Maximal points of `a` that are not points of `b`.
fn max_minus(a: &OrderIdeal, b: &OrderIdeal) -> Vec<Point> {
    a.max_points().iter().copied().filter(|&p| !b.contains(p)).collect()
}

fn ideals_between(lambda: &Partition, upper: &OrderIdeal, required: &[Point]) -> Vec<OrderIdeal> {
    enumerate_ideals(lambda)
        .into_iter()
        .filter(|k| k.is_subset(upper) && required.iter().all(|p| k.max_points().contains(p)))
        .collect()
}

/// Orbits `K` making up `M*_I + M*_J`. Only valid when the residue field has
/// at least three elements: over a field of two elements the sum of a
/// nonzero orbit with itself misses the nonzero elements.
pub fn sum_orbit_orbit(lambda: &Partition, i: &OrderIdeal, j: &OrderIdeal) -> Result<Vec<OrderIdeal>> {
    for x in [i, j] {
        if !x.in_context(lambda) {
            return Err(out_of_context(lambda, x));
        }
    }
    let mut required = max_minus(i, j);
    required.extend(max_minus(j, i));
    Ok(ideals_between(lambda, &i.union(j), &required))
}

/// Orbits `K` making up `M*_I + M_J`, valid for every residue field.
pub fn sum_orbit_submodule(lambda: &Partition, i: &OrderIdeal, j: &OrderIdeal) -> Result<Vec<OrderIdeal>> {
    for x in [i, j] {
        if !x.in_context(lambda) {
            return Err(out_of_context(lambda, x));
        }
    }
    Ok(ideals_between(lambda, &i.union(j), &max_minus(i, j)))
}

fn check_cell(split: &CanonicalSplit, j: &OrderIdeal, k: &OrderIdeal) -> Result<()> {
    if !j.in_context(&split.quotient) {
        return Err(mismatch(j, &split.quotient));
    }
    if !k.in_context(&split.lambda_dprime) {
        return Err(mismatch(k, &split.lambda_dprime));
    }
    Ok(())
}

/// `α_{I,J,K}`: size of the stabilizer orbit of any `m` with invariants
/// `(J, K)`, summed over the orbits `K'` of `M''*_K + M''_J`.
pub fn alpha(lambda: &Partition, i: &OrderIdeal, j: &OrderIdeal, k: &OrderIdeal) -> Result<QPoly> {
    let split = canonical_split(lambda, i)?;
    check_cell(&split, j, k)?;
    let jk = j.union(k);
    let dprime = &split.lambda_dprime;
    let required = max_minus(k, j);
    let mut sum = QPoly::zero();
    for kp in ideals_between(dprime, &jk, &required) {
        sum += &orbit_size(dprime, &kp)?;
    }
    Ok(&submodule_size(&split.lambda_prime, &jk) * &sum)
}

/// `|M''*_K + M''_J|` row by row: each row of `λ''` must reach the level of
/// `K ∪ J`, and a row whose top point is in `max K − J` must attain it.
fn orbit_plus_submodule_size(dprime: &Partition, k: &OrderIdeal, j: &OrderIdeal) -> QPoly {
    let required = max_minus(k, j);
    dprime
        .pairs()
        .iter()
        .map(|&(row, m)| {
            let c = k.level(row).min(j.level(row));
            let free = (m * (row - c)) as usize;
            if required.iter().any(|p| p.k == row) {
                &QPoly::q_pow(free) - &QPoly::q_pow(free - m as usize)
            } else {
                QPoly::q_pow(free)
            }
        })
        .product()
}

/// `α_{I,J,K}` computed row by row instead of by summing over `K'`.
pub fn alpha_rowwise(split: &CanonicalSplit, j: &OrderIdeal, k: &OrderIdeal) -> QPoly {
    let jk = j.union(k);
    &submodule_size(&split.lambda_prime, &jk) * &orbit_plus_submodule_size(&split.lambda_dprime, k, j)
}

/// `|X_{I,J,K}| = q^(k_1 - v_1) |M_{λ'/I}*_J| |M''*_K|`.
pub fn x_count(lambda: &Partition, i: &OrderIdeal, j: &OrderIdeal, k: &OrderIdeal) -> Result<QPoly> {
    let split = canonical_split(lambda, i)?;
    check_cell(&split, j, k)?;
    Ok(QPoly::q_pow(split.fiber_exponent() as usize)
        * orbit_size(&split.quotient, j)?
        * orbit_size(&split.lambda_dprime, k)?)
}

/// A cell `(J, K)` of the decomposition of `M` for a fixed `I`.
#[derive(Clone, Debug)]
pub struct Cell {
    pub j: OrderIdeal,
    pub k: OrderIdeal,
    pub alpha: QPoly,
    pub x: QPoly,
}

/// Split data plus every cell `(J, K)` with its `α` and `|X|`.
#[derive(Clone, Debug)]
pub struct SplitCells {
    pub split: CanonicalSplit,
    pub cells: Vec<Cell>,
}

impl SplitCells {
    pub fn new(lambda: &Partition, i: &OrderIdeal) -> Result<Self> {
        let split = canonical_split(lambda, i)?;
        let fiber = QPoly::q_pow(split.fiber_exponent() as usize);
        let js: Vec<(OrderIdeal, QPoly)> = enumerate_ideals(&split.quotient)
            .into_iter()
            .map(|j| {
                let o = orbit_size(&split.quotient, &j)?;
                Ok((j, &fiber * &o))
            })
            .collect::<Result<_>>()?;
        let ks: Vec<(OrderIdeal, QPoly)> = enumerate_ideals(&split.lambda_dprime)
            .into_iter()
            .map(|k| {
                let o = orbit_size(&split.lambda_dprime, &k)?;
                Ok((k, o))
            })
            .collect::<Result<_>>()?;
        let mut cells = Vec::with_capacity(js.len() * ks.len());
        for (j, xj) in &js {
            for (k, xk) in &ks {
                cells.push(Cell {
                    alpha: alpha_rowwise(&split, j, k),
                    x: xj * xk,
                    j: j.clone(),
                    k: k.clone(),
                });
            }
        }
        Ok(SplitCells { split, cells })
    }
}

/// Orbit sizes paired with how many orbits have that size.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Census {
    pub rows: Vec<(QPoly, QPoly)>,
}

impl Census {
    /// Groups `(α, x)` contributions by `α` and divides each group sum by `α`.
    pub fn from_contributions<I>(items: I) -> Result<Census>
    where
        I: IntoIterator<Item = (QPoly, QPoly)>,
    {
        let mut groups: HashMap<QPoly, QPoly> = HashMap::new();
        let mut order: Vec<QPoly> = Vec::new();
        for (a, x) in items {
            match groups.get_mut(&a) {
                Some(s) => *s += &x,
                None => {
                    order.push(a.clone());
                    groups.insert(a, x);
                }
            }
        }
        let mut rows = Vec::with_capacity(order.len());
        for a in order {
            let n = groups[&a].exact_div(&a)?;
            if !n.is_zero() {
                rows.push((a, n));
            }
        }
        rows.sort_by(|x, y| graded_cmp(&x.0, &y.0));
        Ok(Census { rows })
    }

    /// Total number of orbits.
    pub fn total(&self) -> QPoly {
        self.rows.iter().map(|(_, n)| n.clone()).sum()
    }

    /// `Σ α N_α`, the number of elements covered.
    pub fn mass(&self) -> QPoly {
        self.rows.iter().map(|(a, n)| a * n).sum()
    }

    pub fn count_of(&self, cardinality: &QPoly) -> Option<&QPoly> {
        self.rows.iter().find(|(a, _)| a == cardinality).map(|(_, n)| n)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Orders polynomials by degree, then by coefficients from the top down.
pub fn graded_cmp(a: &QPoly, b: &QPoly) -> std::cmp::Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        let n = a.coeffs().len();
        (0..n).rev().map(|i| a.coeff(i).cmp(&b.coeff(i))).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
    })
}

/// Number of stabilizer orbits of each size for the orbit `M*_I`.
pub fn orbit_census(lambda: &Partition, i: &OrderIdeal) -> Result<Census> {
    let cells = SplitCells::new(lambda, i)?;
    let census = Census::from_contributions(cells.cells.into_iter().map(|c| (c.alpha, c.x)))?;
    let mass = census.mass();
    let expected = QPoly::q_pow(lambda.weight() as usize);
    if mass != expected {
        return Err(Error::MassMismatch {
            what: format!("census of {lambda} at {i}"),
            got: mass.to_string(),
            expected: expected.to_string(),
        });
    }
    Ok(census)
}

/// Number of orbits of pairs whose first member lies in `M*_I`.
pub fn per_ideal_total(lambda: &Partition, i: &OrderIdeal) -> Result<QPoly> {
    Ok(orbit_census(lambda, i)?.total())
}

/// `n_λ` summed over every orbit `M*_I`, without capping multiplicities.
pub fn n_lambda_direct(lambda: &Partition) -> Result<QPoly> {
    let ideals = enumerate_ideals(lambda);
    let totals: Vec<QPoly> = ideals
        .par_iter()
        .map(|i| per_ideal_total(lambda, i))
        .collect::<Result<_>>()?;
    let n: QPoly = totals.into_iter().sum();
    check_degree(lambda, &n)?;
    Ok(n)
}

fn check_degree(lambda: &Partition, n: &QPoly) -> Result<()> {
    let expected = lambda.largest() as usize;
    if n.is_monic() && n.degree() == Some(expected) && n.is_integral() {
        Ok(())
    } else {
        Err(Error::DegreeMismatch {
            partition: lambda.to_string(),
            poly: n.to_string(),
            expected,
        })
    }
}

/// Number of orbits of pairs in `M_λ`. Multiplicities are capped at 2
/// first, which leaves the count unchanged; results are memoized in `store`.
pub fn n_lambda(lambda: &Partition, store: &ResultStore) -> Result<QPoly> {
    let capped = lambda.cap_multiplicities(2);
    if let Some(n) = store.get(&capped) {
        return Ok(n);
    }
    let n = n_lambda_direct(&capped)?;
    store.insert(&capped, n.clone());
    Ok(n)
}
