//! Shared corpora and brute-force oracles for the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use frobkit::{Ideal, Monomial, Poly, Ring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const VARS: [&str; 3] = ["x", "y", "z"];

/// A random ideal inside the origin, with its characteristic.
pub struct Sample {
    pub p: u64,
    pub ring: Arc<Ring>,
    pub ideal: Ideal,
}

impl Sample {
    pub fn describe(&self) -> String {
        format!("{} over F_{}", self.ideal, self.p)
    }
}

pub fn random_poly(rng: &mut impl Rng, ring: &Arc<Ring>, max_terms: usize, max_degree: u32) -> Poly {
    let n = ring.nvars();
    let p = ring.characteristic();
    loop {
        let mut terms = Vec::new();
        for _ in 0..rng.gen_range(1..=max_terms) {
            let mut exps = vec![0u32; n];
            let degree = rng.gen_range(1..=max_degree);
            for _ in 0..degree {
                exps[rng.gen_range(0..n)] += 1;
            }
            terms.push((Monomial::from_exponents(&exps), rng.gen_range(1..p)));
        }
        let f = Poly::from_terms(ring, terms);
        if !f.is_zero() {
            return f;
        }
    }
}

/// `count` ideals in two or three variables over `F_2`, `F_3`, `F_5`,
/// with one to three generators of degree at most three.
pub fn random_corpus(seed: u64, count: usize) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let primes = [2u64, 3, 5];
    (0..count)
        .map(|i| {
            let p = primes[i % primes.len()];
            let n = rng.gen_range(2..=3);
            let ring = Ring::new(p, &VARS[..n]).unwrap();
            let ngens = rng.gen_range(1..=3);
            let gens = (0..ngens).map(|_| random_poly(&mut rng, &ring, 2, 3)).collect();
            let ideal = Ideal::new(&ring, gens).unwrap();
            Sample { p, ring, ideal }
        })
        .collect()
}

/// Random principal ideals `(f)` with `f` in the origin.
pub fn random_principal(seed: u64, count: usize) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let primes = [2u64, 3, 5];
    (0..count)
        .map(|i| {
            let p = primes[i % primes.len()];
            let ring = Ring::new(p, &VARS[..2]).unwrap();
            let f = random_poly(&mut rng, &ring, 3, 3);
            let ideal = Ideal::new(&ring, vec![f]).unwrap();
            Sample { p, ring, ideal }
        })
        .collect()
}

/// Dense bivariate polynomials mod `p`, kept independent of the library.
pub type Dense = HashMap<(u32, u32), u64>;

pub fn dense_mul(a: &Dense, b: &Dense, p: u64) -> Dense {
    let mut out: Dense = HashMap::new();
    for (&(i, j), &c) in a {
        for (&(k, l), &d) in b {
            let e = out.entry((i + k, j + l)).or_insert(0);
            *e = (*e + c * d) % p;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// `max { r : f^r ⊄ (x^q, y^q) }` by expanding `f^r` densely.
pub fn brute_nu_principal(f: &Dense, p: u64, q: u32) -> u64 {
    let mut acc: Dense = HashMap::from([((0, 0), 1)]);
    let mut r = 0;
    loop {
        acc = dense_mul(&acc, f, p);
        if acc.keys().all(|&(i, j)| i >= q || j >= q) {
            return r;
        }
        r += 1;
    }
}

/// A monomial ideal in `x, y` described by its staircase inside the box
/// `[0, b]^2`: `h[i]` is the least `j` with `x^i y^j` in the ideal, or
/// `b + 1` when there is none.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Staircase(pub Vec<u32>);

impl Staircase {
    pub fn from_gens(gens: &[(u32, u32)], b: u32) -> Staircase {
        Staircase(
            (0..=b)
                .map(|i| {
                    gens.iter()
                        .filter(|&&(a, _)| a <= i)
                        .map(|&(_, c)| c)
                        .min()
                        .map_or(b + 1, |c| c.min(b + 1))
                })
                .collect(),
        )
    }

    pub fn gens(&self) -> Vec<(u32, u32)> {
        let b = self.0.len() as u32 - 1;
        (0..=b)
            .filter(|&i| self.0[i as usize] <= b)
            .map(|i| (i, self.0[i as usize]))
            .collect()
    }
}

/// Every staircase in the box `[0, b]^2`.
pub fn all_staircases(b: u32) -> Vec<Staircase> {
    fn rec(i: u32, b: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Staircase>) {
        if i > b {
            out.push(Staircase(cur.clone()));
            return;
        }
        for h in 0..=cap {
            cur.push(h);
            rec(i + 1, b, h, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, b, b + 1, &mut Vec::new(), &mut out);
    out
}

/// The smallest monomial ideal `J` with `I ⊆ J^[q]`, found by checking every
/// candidate in the box `[0, b]^2`. Returns `None` when no unique minimum
/// exists among the valid candidates.
///
/// With generator exponents at most `b`, a valid `J` always contains a
/// valid candidate generated inside the box, so the box minimum is the
/// global minimum.
pub fn brute_root(gens: &[(u32, u32)], q: u32, candidates: &[Staircase]) -> Option<Staircase> {
    let covered = |s: &Staircase| {
        let jq: Vec<(u32, u32)> = s.gens().iter().map(|&(i, j)| (q * i, q * j)).collect();
        gens.iter()
            .all(|&(a, c)| jq.iter().any(|&(i, j)| i <= a && j <= c))
    };
    let valid: Vec<&Staircase> = candidates.iter().filter(|s| covered(s)).collect();
    // J ⊆ J' iff the staircase of J lies pointwise above that of J'
    let top = (0..candidates[0].0.len())
        .map(|i| valid.iter().map(|s| s.0[i]).max().unwrap_or(0))
        .collect::<Vec<_>>();
    let top = Staircase(top);
    valid.iter().any(|s| **s == top).then_some(top)
}

/// Exponent pairs of the generators of a monomial ideal.
pub fn monomial_gens(ideal: &Ideal) -> Vec<(u32, u32)> {
    ideal
        .gens()
        .iter()
        .map(|g| {
            assert!(g.is_monomial(), "{g} is not a monomial");
            let e = g.terms()[0].0.exponents();
            (e[0], e[1])
        })
        .collect()
}
