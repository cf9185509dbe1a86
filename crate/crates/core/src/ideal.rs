//! Ideals of a polynomial ring: membership, containment, intersection,
//! colon, dimension and height.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{groebner, Budget, GroebnerBasis};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Poly, Ring};
use crate::span::SpanBasis;

const TAG: &str = "__tag";

/// An ideal given by generators. The grevlex Gröbner basis is computed at
/// most once and shared by later queries.
pub struct Ideal {
    ring: Arc<Ring>,
    gens: Vec<Poly>,
    budget: Budget,
    gb: OnceLock<GroebnerBasis>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        Ideal {
            ring: Arc::clone(&self.ring),
            gens: self.gens.clone(),
            budget: self.budget,
            gb,
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({self})")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        if self.gens.is_empty() {
            f.write_str("0")?;
        }
        f.write_str(")")
    }
}

pub(crate) fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Ideal {
    /// Zero generators are dropped; all others must live in `ring`.
    pub fn new(ring: &Arc<Ring>, gens: Vec<Poly>) -> Result<Ideal> {
        if gens.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(Error::AmbientMismatch);
        }
        Ok(Self::from_parts(ring, gens.into_iter().filter(|g| !g.is_zero()).collect(), Budget::default()))
    }

    fn from_parts(ring: &Arc<Ring>, gens: Vec<Poly>, budget: Budget) -> Ideal {
        Ideal {
            ring: Arc::clone(ring),
            gens,
            budget,
            gb: OnceLock::new(),
        }
    }

    fn derived(&self, gens: Vec<Poly>) -> Ideal {
        Self::from_parts(&self.ring, gens.into_iter().filter(|g| !g.is_zero()).collect(), self.budget)
    }

    /// Parses comma-separated generators.
    pub fn parse(ring: &Arc<Ring>, text: &str) -> Result<Ideal> {
        let gens = text
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| ring.parse(s))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }

    pub fn unit(ring: &Arc<Ring>) -> Ideal {
        Self::from_parts(ring, vec![ring.one()], Budget::default())
    }

    pub fn zero(ring: &Arc<Ring>) -> Ideal {
        Self::from_parts(ring, Vec::new(), Budget::default())
    }

    /// The ideal generated by the variables with the given indices.
    pub fn variables(ring: &Arc<Ring>, vars: &[usize]) -> Ideal {
        Self::from_parts(ring, vars.iter().map(|&i| ring.var(i)).collect(), Budget::default())
    }

    /// Same ideal, with the limits used by every later computation on it
    /// and on ideals derived from it.
    pub fn with_budget(mut self, budget: Budget) -> Ideal {
        self.budget = budget;
        self
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    fn check_ring(&self, other: &Ideal) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    /// Reduced grevlex Gröbner basis, cached.
    pub fn groebner(&self) -> Result<&GroebnerBasis> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let gb = groebner(&self.ring, &self.gens, MonomialOrder::Grevlex, &self.budget)?;
        Ok(self.gb.get_or_init(|| gb))
    }

    /// Reduced Gröbner basis for an arbitrary order (not cached).
    pub fn groebner_in(&self, order: MonomialOrder) -> Result<GroebnerBasis> {
        if order == MonomialOrder::Grevlex {
            return self.groebner().cloned();
        }
        groebner(&self.ring, &self.gens, order, &self.budget)
    }

    /// The ideal generated by its reduced grevlex basis.
    pub fn reduced(&self) -> Result<Ideal> {
        let gb = self.groebner()?;
        let out = self.derived(gb.polys());
        let _ = out.gb.set(gb.clone());
        Ok(out)
    }

    pub fn is_unit(&self) -> Result<bool> {
        if self.gens.iter().any(|g| g.is_unit()) {
            return Ok(true);
        }
        Ok(self.groebner()?.is_unit())
    }

    pub fn member(&self, f: &Poly) -> Result<bool> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::AmbientMismatch);
        }
        if f.is_zero() {
            return Ok(true);
        }
        if self.gens.contains(f) {
            return Ok(true);
        }
        Ok(self.groebner()?.contains(f))
    }

    /// Is `other ⊆ self`?
    pub fn contains(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        for g in &other.gens {
            if !self.member(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals (mutual containment).
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains(other)? && other.contains(self)?)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(self.derived(gens))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let count = self.gens.len().saturating_mul(other.gens.len());
        if count > self.budget.max_generators {
            return Err(Error::Resource {
                what: "generators of an ideal product",
                limit: self.budget.max_generators,
            });
        }
        let span: SpanBasis = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a * b))
            .collect::<Vec<_>>()
            .iter()
            .collect();
        Ok(self.derived(span.into_rows()))
    }

    /// Ordinary power `I^n`, generated by all products of `n` generators
    /// (with linearly dependent products removed).
    pub fn power(&self, n: u64) -> Result<Ideal> {
        if n == 0 {
            return Ok(Ideal::unit(&self.ring).with_budget(self.budget));
        }
        if self.gens.is_empty() {
            return Ok(self.clone());
        }
        let count = multiset_count(self.gens.len(), n);
        if count > self.budget.max_generators as u128 {
            return Err(Error::Resource {
                what: "generators of an ideal power",
                limit: self.budget.max_generators,
            });
        }
        // build level by level: I^k = span{ g * w : w in I^(k-1), g in gens }
        // restricted to nondecreasing index sequences
        let mut level: Vec<(usize, Poly)> = self
            .gens
            .iter()
            .enumerate()
            .map(|(i, g)| (i, g.clone()))
            .collect();
        for _ in 1..n {
            let mut next = Vec::new();
            for (last, w) in &level {
                for (i, g) in self.gens.iter().enumerate().skip(*last) {
                    next.push((i, w * g));
                }
            }
            level = next;
        }
        let span: SpanBasis = level.iter().map(|(_, p)| p).collect();
        Ok(self.derived(span.into_rows()))
    }

    /// `I ∩ J` by eliminating a tag variable `t` from `t·I + (1 - t)·J`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring).with_budget(self.budget));
        }
        if self.is_unit()? {
            return Ok(other.clone());
        }
        if other.is_unit()? {
            return Ok(self.clone());
        }
        let tagged = self.ring.prepended(TAG)?;
        let n = self.ring.nvars();
        let map: Vec<usize> = (1..=n).collect();
        let t = tagged.var(0);
        let one_minus_t = &tagged.one() - &t;
        let mut gens = Vec::with_capacity(self.gens.len() + other.gens.len());
        for g in &self.gens {
            gens.push(&t * &g.embed(&tagged, &map)?);
        }
        for g in &other.gens {
            gens.push(&one_minus_t * &g.embed(&tagged, &map)?);
        }
        let gb = groebner(&tagged, &gens, MonomialOrder::Elimination { split: 1 }, &self.budget)?;
        let mut out = Vec::new();
        for p in gb.polys() {
            if p.terms().iter().all(|(m, _)| m.exponents()[0] == 0) {
                let terms = p
                    .terms()
                    .iter()
                    .map(|(m, c)| (Monomial::from_exponents(&m.exponents()[1..]), *c))
                    .collect();
                out.push(Poly::from_terms(&self.ring, terms));
            }
        }
        Ok(self.derived(out))
    }

    /// `(I : f)`, as `(I ∩ (f)) / f`.
    pub fn colon_poly(&self, f: &Poly) -> Result<Ideal> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::AmbientMismatch);
        }
        if f.is_zero() || self.member(f)? {
            return Ok(Ideal::unit(&self.ring).with_budget(self.budget));
        }
        let principal = self.derived(vec![f.clone()]);
        let meet = self.intersect(&principal)?;
        let mut gens = Vec::with_capacity(meet.gens.len());
        for g in &meet.gens {
            let q = g
                .exact_div(f)
                .ok_or_else(|| Error::Invalid("intersection with (f) not divisible by f".into()))?;
            gens.push(q);
        }
        Ok(self.derived(gens))
    }

    /// `(I : J) = ⋂_j (I : f_j)` over the generators `f_j` of `J`.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut acc: Option<Ideal> = None;
        for f in &other.gens {
            let c = self.colon_poly(f)?;
            acc = Some(match acc {
                None => c,
                Some(a) => a.intersect(&c)?.reduced()?,
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(&self.ring).with_budget(self.budget)))
    }

    /// Krull dimension of `R/I`: the largest set of variables containing the
    /// support of no leading monomial. The unit ideal has dimension −1.
    pub fn dimension(&self) -> Result<i64> {
        let n = self.ring.nvars();
        if self.is_zero() {
            return Ok(n as i64);
        }
        let gb = self.groebner()?;
        if gb.is_unit() {
            return Ok(-1);
        }
        if n > 24 {
            return Err(Error::Resource {
                what: "variables for the independent-set search",
                limit: 24,
            });
        }
        let supports: Vec<u32> = gb
            .leading_monomials()
            .iter()
            .map(|m| {
                m.exponents()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .fold(0u32, |acc, (i, _)| acc | (1 << i))
            })
            .collect();
        let mut best = 0;
        for set in 0u32..(1u32 << n) {
            let size = set.count_ones();
            if size > best && supports.iter().all(|&s| s & !set != 0) {
                best = size;
            }
        }
        Ok(best as i64)
    }

    /// `n − dim(R/I)`. This is the height only for equidimensional ideals,
    /// which is assumed and not checked.
    pub fn height(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let d = self.dimension()?;
        if d < 0 {
            return Err(Error::ImproperIdeal);
        }
        Ok(self.ring.nvars() - d as usize)
    }

    /// The extension of `I` to `target`, variable `i` going to `var_map[i]`.
    pub fn embed(&self, target: &Arc<Ring>, var_map: &[usize]) -> Result<Ideal> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.embed(target, var_map))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_parts(target, gens, self.budget))
    }

    /// Is every generator in `(x_i^q : i in vars)`?
    pub fn in_bracket_max(&self, q: u64, vars: &[usize]) -> bool {
        self.gens.iter().all(|g| g.in_bracket_max(q, vars))
    }

    /// Is the ideal inside the maximal ideal generated by `vars`?
    pub fn in_variable_ideal(&self, vars: &[usize]) -> bool {
        self.gens.iter().all(|g| g.in_variable_ideal(vars))
    }

    /// Same ideal with linearly dependent generators removed.
    pub fn span_reduced(&self) -> Ideal {
        let span: SpanBasis = self.gens.iter().collect();
        self.derived(span.into_rows())
    }
}

/// A maximal ideal generated by a set of variables, such as the origin
/// `(x_1, ..., x_n)`. Thresholds are computed locally at one of these.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalIdeal {
    ring: Arc<Ring>,
    vars: Vec<usize>,
}

impl MaximalIdeal {
    /// The ideal of all variables.
    pub fn origin(ring: &Arc<Ring>) -> Result<MaximalIdeal> {
        Self::from_vars(ring, (0..ring.nvars()).collect())
    }

    pub fn from_vars(ring: &Arc<Ring>, mut vars: Vec<usize>) -> Result<MaximalIdeal> {
        if vars.is_empty() {
            return Err(Error::EmptyRing);
        }
        vars.sort_unstable();
        vars.dedup();
        if vars.last().is_some_and(|&v| v >= ring.nvars()) {
            return Err(Error::Invalid("variable index out of range".into()));
        }
        Ok(MaximalIdeal {
            ring: Arc::clone(ring),
            vars,
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn ideal(&self) -> Ideal {
        Ideal::variables(&self.ring, &self.vars)
    }

    /// Does `I ⊆ m` hold?
    pub fn contains(&self, ideal: &Ideal) -> bool {
        ideal.in_variable_ideal(&self.vars)
    }
}

impl fmt::Display for MaximalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.vars.iter().map(|&i| self.ring.var_names()[i].as_str()).collect();
        write!(f, "({})", names.join(", "))
    }
}

/// Number of multisets of size `n` from `r` items, saturating.
pub(crate) fn multiset_count(r: usize, n: u64) -> u128 {
    // C(n + r - 1, r - 1)
    let k = r.saturating_sub(1) as u128;
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc.saturating_mul(n as u128 + i) / i;
    }
    acc
}

/// All exponent vectors of length `r` with entries summing to `n`, in
/// lexicographically decreasing order.
pub(crate) fn compositions(r: usize, n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; r];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for a in (0..=left).rev() {
            cur[i] = a;
            rec(i + 1, left - a, cur, out);
        }
    }
    if r > 0 {
        rec(0, n, &mut cur, &mut out);
    } else if n == 0 {
        out.push(Vec::new());
    }
    out
}
