//! Buchberger's algorithm with the normal selection strategy, the
//! coprime-leading-monomial criterion and the chain criterion.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Poly, Ring};

/// Limits that turn runaway computations into [`Error::Resource`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest intermediate Gröbner basis.
    pub max_basis: usize,
    /// Largest total degree of a new basis element.
    pub max_degree: u64,
    /// Largest generator list materialised for powers of ideals.
    pub max_generators: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_basis: 5000,
            max_degree: 64,
            max_generators: 200_000,
        }
    }
}

impl Budget {
    pub const ENV_MAX_BASIS: &'static str = "FROBKIT_MAX_BASIS";
    pub const ENV_MAX_DEGREE: &'static str = "FROBKIT_MAX_DEGREE";
    pub const ENV_MAX_GENERATORS: &'static str = "FROBKIT_MAX_GENERATORS";

    /// Defaults, overridden by the `FROBKIT_MAX_*` environment variables.
    pub fn from_env() -> Result<Budget> {
        let mut b = Budget::default();
        let read = |key: &str| -> Result<Option<u64>> {
            match std::env::var(key) {
                Ok(v) => v
                    .trim()
                    .parse::<u64>()
                    .ok()
                    .filter(|&n| n > 0)
                    .map(Some)
                    .ok_or_else(|| Error::Config(format!("{key} must be a positive integer"))),
                Err(_) => Ok(None),
            }
        };
        if let Some(v) = read(Self::ENV_MAX_BASIS)? {
            b.max_basis = v as usize;
        }
        if let Some(v) = read(Self::ENV_MAX_DEGREE)? {
            b.max_degree = v;
        }
        if let Some(v) = read(Self::ENV_MAX_GENERATORS)? {
            b.max_generators = v as usize;
        }
        Ok(b)
    }
}

type Terms = Vec<(Monomial, u32)>;

/// A reduced Gröbner basis: monic, interreduced, sorted by descending
/// leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    order: MonomialOrder,
    // each element sorted descending under `order`
    elems: Vec<Terms>,
}

impl GroebnerBasis {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// The basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.elems.len() == 1 && self.elems[0].len() == 1 && self.elems[0][0].0.is_one()
    }

    pub fn polys(&self) -> Vec<Poly> {
        self.elems
            .iter()
            .map(|t| Poly::from_terms(&self.ring, t.clone()))
            .collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elems.iter().map(|t| t[0].0.clone()).collect()
    }

    /// Remainder of full multivariate division by the basis.
    pub fn normal_form(&self, f: &Poly) -> Poly {
        let terms = to_order(f, self.order);
        let r = reduce(&terms, &self.elems, self.order, self.ring.field());
        Poly::from_terms(&self.ring, r)
    }

    pub fn contains(&self, f: &Poly) -> bool {
        let terms = to_order(f, self.order);
        reduce(&terms, &self.elems, self.order, self.ring.field()).is_empty()
    }
}

fn to_order(f: &Poly, order: MonomialOrder) -> Terms {
    let mut t = f.terms().to_vec();
    if order != MonomialOrder::Grevlex {
        t.sort_unstable_by(|a, b| order.cmp(&b.0, &a.0));
    }
    t
}

/// `a - c * m * b` for order-sorted term lists.
fn sub_scaled(
    a: &[(Monomial, u32)],
    b: &[(Monomial, u32)],
    c: u32,
    m: &Monomial,
    order: MonomialOrder,
    field: PrimeField,
) -> Terms {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let neg_c = field.neg(c);
    let (mut i, mut j) = (0, 0);
    let next_b = |j: usize| (b[j].0.mul(m), field.mul(b[j].1, neg_c));
    let mut pending = if b.is_empty() { None } else { Some(next_b(0)) };
    while i < a.len() {
        let Some((mb, cb)) = pending.as_ref() else { break };
        match order.cmp(&a[i].0, mb) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((mb.clone(), *cb));
                j += 1;
                pending = (j < b.len()).then(|| next_b(j));
            }
            Ordering::Equal => {
                let s = field.add(a[i].1, *cb);
                if s != 0 {
                    out.push((a[i].0.clone(), s));
                }
                i += 1;
                j += 1;
                pending = (j < b.len()).then(|| next_b(j));
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    if let Some(t) = pending {
        out.push(t);
        j += 1;
        while j < b.len() {
            out.push(next_b(j));
            j += 1;
        }
    }
    out
}

/// Full reduction of `f` by monic, order-sorted `basis`.
fn reduce(f: &[(Monomial, u32)], basis: &[Terms], order: MonomialOrder, field: PrimeField) -> Terms {
    let mut rest: Terms = f.to_vec();
    let mut remainder = Vec::new();
    let mut start = 0;
    while start < rest.len() {
        let (lm, lc) = (&rest[start].0, rest[start].1);
        let divisor = basis.iter().find(|g| g[0].0.divides(lm));
        match divisor {
            Some(g) => {
                let m = g[0].0.quotient(lm).expect("divisibility checked");
                // g is monic
                rest = sub_scaled(&rest[start..], g, lc, &m, order, field);
                start = 0;
            }
            None => {
                remainder.push(rest[start].clone());
                start += 1;
            }
        }
    }
    remainder
}

fn make_monic(t: &mut Terms, field: PrimeField) {
    if let Some(&(_, lc)) = t.first() {
        if lc != 1 {
            let inv = field.inv(lc);
            for term in t.iter_mut() {
                term.1 = field.mul(term.1, inv);
            }
        }
    }
}

/// The S-polynomial of two order-sorted monic term lists.
fn s_poly(f: &[(Monomial, u32)], g: &[(Monomial, u32)], order: MonomialOrder, field: PrimeField) -> Terms {
    let lcm = f[0].0.lcm(&g[0].0);
    let mf = f[0].0.quotient(&lcm).expect("lcm");
    let mg = g[0].0.quotient(&lcm).expect("lcm");
    let f_scaled: Terms = f.iter().map(|(m, c)| (m.mul(&mf), *c)).collect();
    sub_scaled(&f_scaled, g, 1, &mg, order, field)
}

/// S-polynomial of two polynomials under `order` (monic normalisation
/// applied first).
pub fn s_polynomial(f: &Poly, g: &Poly, order: MonomialOrder) -> Poly {
    let field = f.ring().field();
    let mut a = to_order(f, order);
    let mut b = to_order(g, order);
    make_monic(&mut a, field);
    make_monic(&mut b, field);
    if a.is_empty() || b.is_empty() {
        return f.ring().zero();
    }
    Poly::from_terms(f.ring(), s_poly(&a, &b, order, field))
}

#[derive(Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    degree: u64,
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner(
    ring: &Arc<Ring>,
    gens: &[Poly],
    order: MonomialOrder,
    budget: &Budget,
) -> Result<GroebnerBasis> {
    let field = ring.field();
    let mut basis: Vec<Terms> = Vec::new();
    let mut pending: Vec<Pair> = Vec::new();
    let mut pending_set: HashSet<(usize, usize)> = HashSet::new();

    let unit = |ring: &Arc<Ring>| GroebnerBasis {
        ring: Arc::clone(ring),
        order,
        elems: vec![vec![(Monomial::one(ring.nvars()), 1)]],
    };

    let add = |mut t: Terms,
                   basis: &mut Vec<Terms>,
                   pending: &mut Vec<Pair>,
                   pending_set: &mut HashSet<(usize, usize)>|
     -> Result<bool> {
        make_monic(&mut t, field);
        if t[0].0.is_one() {
            return Ok(true);
        }
        let degree = t.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        if degree > budget.max_degree {
            return Err(Error::Resource {
                what: "Gröbner basis element degree",
                limit: budget.max_degree as usize,
            });
        }
        if basis.len() + 1 > budget.max_basis {
            return Err(Error::Resource {
                what: "Gröbner basis size",
                limit: budget.max_basis,
            });
        }
        let j = basis.len();
        for (i, g) in basis.iter().enumerate() {
            let lcm = g[0].0.lcm(&t[0].0);
            let degree = lcm.degree();
            pending.push(Pair { i, j, lcm, degree });
            pending_set.insert((i, j));
        }
        basis.push(t);
        Ok(false)
    };

    // seed with the generators, reduced against what is already there
    let mut seeds: Vec<Terms> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| to_order(g, order))
        .collect();
    seeds.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    for s in seeds {
        let r = reduce(&s, &basis, order, field);
        if r.is_empty() {
            continue;
        }
        if add(r, &mut basis, &mut pending, &mut pending_set)? {
            return Ok(unit(ring));
        }
    }

    while !pending.is_empty() {
        // normal strategy: smallest lcm first, ties by index for determinism
        let best = (0..pending.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pending[a], &pending[b]);
                pa.degree
                    .cmp(&pb.degree)
                    .then_with(|| order.cmp(&pa.lcm, &pb.lcm))
                    .then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
            })
            .expect("nonempty");
        let pair = pending.swap_remove(best);
        pending_set.remove(&(pair.i, pair.j));

        let (fi, fj) = (&basis[pair.i], &basis[pair.j]);
        if fi[0].0.is_coprime(&fj[0].0) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && basis[k][0].0.divides(&pair.lcm)
                && !pending_set.contains(&(pair.i.min(k), pair.i.max(k)))
                && !pending_set.contains(&(pair.j.min(k), pair.j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_poly(fi, fj, order, field);
        let r = reduce(&s, &basis, order, field);
        if r.is_empty() {
            continue;
        }
        if add(r, &mut basis, &mut pending, &mut pending_set)? {
            return Ok(unit(ring));
        }
    }

    Ok(GroebnerBasis {
        ring: Arc::clone(ring),
        order,
        elems: interreduce(basis, order, field),
    })
}

fn interreduce(mut basis: Vec<Terms>, order: MonomialOrder, field: PrimeField) -> Vec<Terms> {
    basis.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    // minimal basis: drop elements whose leading monomial is divisible by
    // another surviving leading monomial
    let mut minimal: Vec<Terms> = Vec::new();
    for t in basis {
        if !minimal.iter().any(|g| g[0].0.divides(&t[0].0)) {
            minimal.retain(|g| !t[0].0.divides(&g[0].0));
            minimal.push(t);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Terms> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let lead = minimal[i][0].clone();
        let tail = reduce(&minimal[i][1..], &others, order, field);
        let mut t = Vec::with_capacity(tail.len() + 1);
        t.push(lead);
        t.extend(tail);
        make_monic(&mut t, field);
        reduced.push(t);
    }
    reduced.sort_by(|a, b| order.cmp(&b[0].0, &a[0].0));
    reduced
}
