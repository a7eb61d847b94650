//! Seeded, reproducible Erdos-Renyi graphs and random flag complexes.
//!
//! Every unordered pair gets its own counter-based 64-bit uniform draw keyed
//! on `(seed, pair index)`, so identical parameters reproduce identical
//! graphs on any platform and under any parallelism. The draw is compared
//! against `floor(p * 2^64)` with `p` held as an exact rational, which also
//! yields the monotone coupling: under one seed, the graph at `p` is a
//! subgraph of the graph at `p' >= p`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::graph::Graph;
use crate::complex::{clique_complex, SimplicialComplex};
use crate::{Error, Rational, Result};

#[derive(Clone, Debug)]
pub struct FlagModelParams {
    pub n: u32,
    pub p: Rational,
    pub seed: u64,
    /// Dimension cap for clique expansion; 2 suffices for every torsion
    /// check in this crate.
    pub max_dim: usize,
}

impl FlagModelParams {
    pub fn new(n: u32, p: Rational, seed: u64, max_dim: usize) -> Result<Self> {
        if p.is_negative() || p > Rational::one() {
            return Err(Error::invalid(format!("p = {p} outside [0, 1]")));
        }
        if max_dim < 2 {
            return Err(Error::invalid("max_dim must be at least 2"));
        }
        Ok(FlagModelParams { n, p, seed, max_dim })
    }
}

/// Parses an exact probability: a decimal like `0.375` or a ratio `3/8`.
pub fn parse_probability(s: &str) -> Result<Rational> {
    let bad = |_| Error::invalid(format!("cannot parse probability {s:?}"));
    if s.trim_start().starts_with('-') {
        return Err(Error::invalid(format!("probability {s} is negative")));
    }
    let value = if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(bad)?;
        let den: BigInt = den.trim().parse().map_err(bad)?;
        if den.is_zero() {
            return Err(Error::invalid("zero denominator"));
        }
        Rational::new(num, den)
    } else if let Some((int, frac)) = s.split_once('.') {
        let int = if int.is_empty() { BigInt::zero() } else { int.parse().map_err(bad)? };
        if !frac.chars().all(|c| c.is_ascii_digit()) || frac.is_empty() {
            return Err(Error::invalid(format!("cannot parse probability {s:?}")));
        }
        let digits: BigInt = frac.parse().map_err(bad)?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        Rational::new(int * &scale + digits, scale)
    } else {
        Rational::from_integer(s.trim().parse().map_err(bad)?)
    };
    if value.is_negative() || value > Rational::one() {
        return Err(Error::invalid(format!("probability {s} outside [0, 1]")));
    }
    Ok(value)
}

/// SplitMix64 mixer, the deterministic primitive behind all sampling.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// One uniform 64-bit word for a keyed counter.
pub fn keyed_uniform(seed: u64, counter: u64) -> u64 {
    splitmix64(splitmix64(seed).wrapping_add(splitmix64(counter.wrapping_mul(0xA24BAED4963EE407))))
}

/// `floor(p * 2^64)` clamped to the inclusive top for `p = 1`.
fn threshold(p: &Rational) -> u128 {
    let scaled = (p * Rational::from_integer(BigInt::one() << 64)).floor();
    scaled.to_integer().to_u128().expect("p in [0,1] scales into u128")
}

fn pair_index(u: u32, v: u32) -> u64 {
    debug_assert!(u < v);
    (v as u64) * (v as u64 - 1) / 2 + u as u64
}

/// Each of the `C(n,2)` pairs is included independently with probability `p`.
pub fn sample_graph(params: &FlagModelParams) -> Graph {
    let thr = threshold(&params.p);
    let mut edges = Vec::new();
    for v in 1..params.n {
        for u in 0..v {
            let draw = keyed_uniform(params.seed, pair_index(u, v));
            if (draw as u128) < thr {
                edges.push((u, v));
            }
        }
    }
    Graph::new(params.n, edges).expect("sampled pairs are valid edges")
}

/// The clique complex of the sampled graph, capped at `max_dim`.
pub fn sample_flag_complex(params: &FlagModelParams) -> SimplicialComplex {
    clique_complex(&sample_graph(params), Some(params.max_dim))
}
