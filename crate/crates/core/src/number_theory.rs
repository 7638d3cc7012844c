//! Classical number theory: square-free parts, the per-prime residue kernel,
//! the density of perfect squares, continued-fraction convergents of √N and
//! the square triangular numbers.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumberTheoryError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is a perfect square; √{0} has no infinite continued fraction")]
    SquareRadicand(u64),
}

/// `n = squarefree_part · square_root²` with `squarefree_part` square-free.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquarefreeDecomposition {
    pub n: u64,
    pub squarefree_part: u64,
    pub square_root: u64,
}

/// Splits `n ≥ 1` into its square-free part and the root of its square part.
///
/// `n = 0` is treated as `1·0²`.
pub fn squarefree_decompose(n: u64) -> SquarefreeDecomposition {
    if n == 0 {
        return SquarefreeDecomposition {
            n,
            squarefree_part: 1,
            square_root: 0,
        };
    }
    let mut rest = n;
    let mut free = 1u64;
    let mut root = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        if e % 2 == 1 {
            free *= p;
        }
        for _ in 0..e / 2 {
            root *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    free *= rest;
    SquarefreeDecomposition {
        n,
        squarefree_part: free,
        square_root: root,
    }
}

/// `√n` is irrational iff the square-free part of `n` exceeds one.
pub fn sqrt_is_irrational(n: u64) -> bool {
    squarefree_decompose(n).squarefree_part > 1
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Table of `r² mod p` for `1 ≤ r ≤ p − 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueTable {
    pub p: u64,
    pub residues: Vec<(u64, u64)>,
    /// No `r²` in the table is a multiple of `p`.
    pub all_nonzero: bool,
}

/// Materializes the check that no `r²` with `1 ≤ r < p` is divisible by `p`.
pub fn prime_case_check(p: u64) -> Result<ResidueTable, NumberTheoryError> {
    if !is_prime(p) {
        return Err(NumberTheoryError::NotPrime(p));
    }
    let residues: Vec<(u64, u64)> = (1..p)
        .map(|r| (r, ((r as u128 * r as u128) % p as u128) as u64))
        .collect();
    let all_nonzero = residues.iter().all(|&(_, sq)| sq != 0);
    Ok(ResidueTable {
        p,
        residues,
        all_nonzero,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareDensity {
    pub x: u64,
    /// Number of perfect squares in `1..=x`.
    pub count: u64,
    /// `100·count/x`: the percentage of `n ≤ x` whose square root is rational.
    pub percent_rational: Rational,
}

/// Counts perfect squares up to `x`.
///
/// The percentage returned is the share of *rational* square roots, which
/// behaves like `100·x^(-1/2)`; the irrational share is its complement.
pub fn square_density(x: u64) -> SquareDensity {
    let count = x.sqrt();
    let percent_rational = if x == 0 {
        Rational::from_integer(0.into())
    } else {
        Rational::new(BigInt::from(100u64) * count, BigInt::from(x))
    };
    SquareDensity {
        x,
        count,
        percent_rational,
    }
}

/// The `index`-th convergent `p/q` of √N, counting from 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Convergent {
    pub index: usize,
    pub p: BigInt,
    pub q: BigInt,
    pub radicand: u64,
}

impl Convergent {
    /// `p² − N·q²`.
    pub fn defect(&self) -> BigInt {
        &self.p * &self.p - BigInt::from(self.radicand) * &self.q * &self.q
    }
}

/// First `k` convergents of √N from the periodic continued-fraction recurrence.
pub fn convergents(radicand: u64, k: usize) -> Result<Vec<Convergent>, NumberTheoryError> {
    let a0 = radicand.sqrt();
    if a0 * a0 == radicand {
        return Err(NumberTheoryError::SquareRadicand(radicand));
    }
    let mut out = Vec::with_capacity(k);
    // (m, d, a) stay below 2√N for the whole expansion
    let (mut m, mut d, mut a) = (0u64, 1u64, a0);
    let (mut p_prev, mut p) = (BigInt::from(0), BigInt::one());
    let (mut q_prev, mut q) = (BigInt::one(), BigInt::from(0));
    for index in 1..=k {
        let p_next = BigInt::from(a) * &p + &p_prev;
        let q_next = BigInt::from(a) * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        out.push(Convergent {
            index,
            p: p.clone(),
            q: q.clone(),
            radicand,
        });
        m = d * a - m;
        d = (radicand - m * m) / d;
        a = (a0 + m) / d;
    }
    Ok(out)
}

/// `T_n = n(n+1)/2`.
pub fn triangular(n: u64) -> u64 {
    n * (n + 1) / 2
}

/// All `n ≤ limit` with `T_n` a perfect square, in increasing order.
///
/// Uses `n_{k+1} = 6·n_k − n_{k−1} + 2`, the solutions of
/// `(2n+1)² − 8m² = 1`, starting from 0 and 1.
pub fn square_triangular(limit: u64) -> Vec<u64> {
    let mut out = vec![0u64];
    let (mut prev, mut cur) = (0u128, 1u128);
    while cur <= limit as u128 {
        out.push(cur as u64);
        let next = 6 * cur + 2 - prev;
        prev = cur;
        cur = next;
    }
    out
}
