//! Representations of the quiver with one loop at vertex 1 and two arrows
//! from vertex 2 into vertex 1, dimension vector `(n, 1)`.
//!
//! Isomorphism classes are triples `(A, x, y)` up to simultaneous change of
//! basis. Grouping by the similarity class of `A` and then by its type gives
//! `R_{n,1}(q) = Σ_τ c_τ(q) n_τ(q)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::orbit::n_lambda;
use crate::poly::QPoly;
use crate::poset::{partitions_of, Partition};
use crate::store::ResultStore;

/// A type of similarity class: a multiset of `(partition, degree)` blocks.
/// Stored sorted by degree then partition, with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatrixType {
    entries: Vec<((u32, Partition), u32)>,
}

impl MatrixType {
    /// Builds a type from blocks `(partition, degree)` in any order.
    pub fn new(blocks: impl IntoIterator<Item = (Partition, u32)>) -> Self {
        let mut keyed: Vec<(u32, Partition)> = blocks.into_iter().map(|(p, d)| (d, p)).collect();
        keyed.sort();
        let mut entries: Vec<((u32, Partition), u32)> = Vec::new();
        for b in keyed {
            match entries.last_mut() {
                Some((last, a)) if *last == b => *a += 1,
                _ => entries.push((b, 1)),
            }
        }
        MatrixType { entries }
    }

    /// `(partition, degree, multiplicity)` triples in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (&Partition, u32, u32)> {
        self.entries.iter().map(|((d, p), a)| (p, *d, *a))
    }

    pub fn weight(&self) -> u64 {
        self.entries()
            .map(|(p, d, a)| u64::from(a) * u64::from(d) * p.weight())
            .sum()
    }

    /// Number of blocks of degree `d`, counted with multiplicity.
    pub fn degree_count(&self, d: u32) -> u32 {
        self.entries().filter(|e| e.1 == d).map(|e| e.2).sum()
    }
}

impl fmt::Display for MatrixType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (p, d, a)) in self.entries().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            let parts: Vec<String> = p.expanded().iter().map(u32::to_string).collect();
            write!(f, "(({}),{d})", parts.join(","))?;
            if a > 1 {
                write!(f, "^{a}")?;
            }
        }
        f.write_str("}")
    }
}

/// All types of weight `n`.
pub fn enumerate_types(n: u32) -> Vec<MatrixType> {
    // Candidate blocks, in canonical order.
    let mut blocks: Vec<(u32, Partition)> = Vec::new();
    for d in 1..=n {
        for w in 1..=n / d {
            for p in partitions_of(w) {
                blocks.push((d, p));
            }
        }
    }
    blocks.sort();

    fn go(
        blocks: &[(u32, Partition)],
        start: usize,
        left: u64,
        cur: &mut Vec<(Partition, u32)>,
        out: &mut Vec<MatrixType>,
    ) {
        if left == 0 {
            out.push(MatrixType::new(cur.iter().cloned()));
            return;
        }
        for (i, (d, p)) in blocks.iter().enumerate().skip(start) {
            let w = u64::from(*d) * p.weight();
            if w <= left {
                cur.push((p.clone(), *d));
                go(blocks, i, left - w, cur, out);
                cur.pop();
            }
        }
    }

    let mut out = Vec::new();
    if n > 0 {
        go(&blocks, 0, u64::from(n), &mut Vec::new(), &mut out);
    }
    out.sort();
    out
}

/// Classical Möbius function.
fn mobius_int(mut n: u32) -> i64 {
    let mut sign = 1;
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            n /= f;
            if n.is_multiple_of(f) {
                return 0;
            }
            sign = -sign;
        }
        f += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Number of monic irreducible polynomials of degree `d` over a field of size `q`.
pub fn phi_d(d: u32) -> QPoly {
    assert!(d >= 1, "degree must be positive");
    let sum: QPoly = (1..=d)
        .filter(|e| d.is_multiple_of(*e))
        .map(|e| QPoly::q_pow(e as usize).scale(&BigRational::from_integer(mobius_int(d / e).into())))
        .sum();
    sum.scale(&BigRational::new(BigInt::one(), BigInt::from(d)))
}

fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Number of similarity classes of type `τ`.
pub fn c_tau(tau: &MatrixType) -> QPoly {
    let mut degrees: Vec<u32> = tau.entries().map(|e| e.1).collect();
    degrees.dedup();
    let num: QPoly = degrees
        .iter()
        .map(|&d| phi_d(d).falling_factorial(tau.degree_count(d)))
        .product();
    let den: BigInt = tau.entries().map(|e| factorial(e.2)).product();
    let c = num.scale(&BigRational::new(BigInt::one(), den));
    debug_assert!(
        [2u64, 3].iter().all(|&q0| c.eval_integer(q0).is_some()),
        "c_tau({tau}) is not integer-valued"
    );
    c
}

/// Number of orbits of pairs for a matrix of type `τ`.
pub fn n_tau(tau: &MatrixType, store: &ResultStore) -> Result<QPoly> {
    let mut acc = QPoly::one();
    for (p, d, a) in tau.entries() {
        let n = n_lambda(p, store)?.compose_power(d as usize);
        acc = &acc * &n.pow(a);
    }
    Ok(acc)
}

/// `c_τ · n_τ` for every type of weight `n`, in `enumerate_types` order.
pub fn type_breakdown(n: u32, store: &ResultStore) -> Result<Vec<(MatrixType, QPoly, QPoly)>> {
    enumerate_types(n)
        .into_par_iter()
        .map(|t| {
            let c = c_tau(&t);
            let nt = n_tau(&t, store)?;
            Ok((t, c, nt))
        })
        .collect()
}

/// `R_{n,1}(q)`. Fails if the sum is not an integer polynomial with
/// non-negative coefficients.
pub fn r_n1(n: u32, store: &ResultStore) -> Result<QPoly> {
    let total: QPoly = type_breakdown(n, store)?
        .iter()
        .map(|(_, c, nt)| c * nt)
        .sum();
    if !total.is_integral() {
        return Err(Error::NonIntegerResult(format!("R_{{{n},1}} = {total}")));
    }
    if !total.has_nonnegative_coeffs() {
        return Err(Error::NonIntegerResult(format!(
            "R_{{{n},1}} = {total} has a negative coefficient"
        )));
    }
    Ok(total)
}

type Series = Vec<QPoly>;

fn series_mul(a: &Series, b: &Series, len: usize) -> Series {
    let mut out = vec![QPoly::zero(); len];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] += &(x * y);
            }
        }
    }
    out
}

/// Coefficients of `x^0 … x^{n_max}` in `Π_d (Σ_λ n_λ(q^d) x^{d|λ|})^{Φ_d(q)}`.
pub fn genfunc_series(n_max: u32, store: &ResultStore) -> Result<Vec<QPoly>> {
    let len = n_max as usize + 1;
    let mut acc = vec![QPoly::zero(); len];
    acc[0] = QPoly::one();
    for d in 1..=n_max {
        // G = Σ_{λ≠∅} n_λ(q^d) x^{d|λ|}, so the factor is (1 + G)^Φ_d.
        let mut g = vec![QPoly::zero(); len];
        for w in 1..=n_max / d {
            for p in partitions_of(w) {
                g[(d * w) as usize] += &n_lambda(&p, store)?.compose_power(d as usize);
            }
        }
        let phi = phi_d(d);
        let mut factor = vec![QPoly::zero(); len];
        let mut g_pow = vec![QPoly::zero(); len];
        g_pow[0] = QPoly::one();
        for j in 0..=n_max / d {
            let binom = phi
                .falling_factorial(j)
                .scale(&BigRational::new(BigInt::one(), factorial(j)));
            for (f, t) in factor.iter_mut().zip(&g_pow) {
                *f += &(&binom * t);
            }
            g_pow = series_mul(&g_pow, &g, len);
        }
        acc = series_mul(&acc, &factor, len);
    }
    Ok(acc)
}

/// Compares the generating function with `r_n1` for `n ≤ n_max`.
pub fn genfunc_check(n_max: u32, store: &ResultStore) -> Result<bool> {
    let series = genfunc_series(n_max, store)?;
    if series[0] != QPoly::one() {
        return Ok(false);
    }
    for n in 1..=n_max {
        if series[n as usize] != r_n1(n, store)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True when every coefficient is a non-negative integer.
pub fn is_nonnegative_integral(p: &QPoly) -> bool {
    p.coeffs().iter().all(|c| c.is_integer() && !c.is_negative())
}
