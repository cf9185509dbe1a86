//! Sparse multivariate polynomials over a prime field.
//!
//! Terms are kept sorted in descending grevlex order with no zero
//! coefficients, so structural equality is polynomial equality and the
//! printed form is canonical.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::ideal_io;
use crate::monomial::{Monomial, MonomialOrder};

/// A polynomial ring `F_p[x_1, ..., x_n]` with named variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    field: PrimeField,
    vars: Vec<String>,
}

impl Ring {
    pub fn new<S: AsRef<str>>(p: u64, vars: &[S]) -> Result<Arc<Ring>> {
        let field = PrimeField::new(p)?;
        Self::with_field(field, vars.iter().map(|v| v.as_ref().to_string()).collect())
    }

    pub fn with_field(field: PrimeField, vars: Vec<String>) -> Result<Arc<Ring>> {
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() || vars[..i].contains(v) {
                return Err(Error::Invalid(format!("duplicate or empty variable name `{v}`")));
            }
        }
        Ok(Arc::new(Ring { field, vars }))
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// A new ring with `names` appended after the existing variables.
    pub fn extended<S: AsRef<str>>(&self, names: &[S]) -> Result<Arc<Ring>> {
        let mut vars = self.vars.clone();
        vars.extend(names.iter().map(|n| n.as_ref().to_string()));
        Ring::with_field(self.field, vars)
    }

    /// A new ring with `name` inserted as the first variable.
    pub fn prepended(&self, name: &str) -> Result<Arc<Ring>> {
        let mut vars = vec![name.to_string()];
        vars.extend(self.vars.iter().cloned());
        Ring::with_field(self.field, vars)
    }

    pub fn zero(self: &Arc<Self>) -> Poly {
        Poly {
            ring: Arc::clone(self),
            terms: Vec::new(),
        }
    }

    pub fn one(self: &Arc<Self>) -> Poly {
        self.constant(1)
    }

    pub fn constant(self: &Arc<Self>, c: i128) -> Poly {
        let c = self.field.from_i128(c);
        let terms = if c == 0 {
            Vec::new()
        } else {
            vec![(Monomial::one(self.nvars()), c)]
        };
        Poly {
            ring: Arc::clone(self),
            terms,
        }
    }

    pub fn var(self: &Arc<Self>, index: usize) -> Poly {
        Poly {
            ring: Arc::clone(self),
            terms: vec![(Monomial::var(self.nvars(), index), 1)],
        }
    }

    pub fn monomial(self: &Arc<Self>, m: Monomial, c: i128) -> Poly {
        Poly::from_terms(self, vec![(m, self.field.from_i128(c))])
    }

    /// Parses a polynomial in the shared text syntax, reducing integer
    /// coefficients modulo `p`.
    pub fn parse(self: &Arc<Self>, text: &str) -> Result<Poly> {
        let int_poly = ideal_io::parse_polynomial(text, &self.vars)?;
        Ok(int_poly.reduce(self))
    }
}

/// A polynomial over a [`Ring`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, u32)>,
}

fn grevlex_desc(a: &(Monomial, u32), b: &(Monomial, u32)) -> Ordering {
    MonomialOrder::Grevlex.cmp(&b.0, &a.0)
}

impl Poly {
    /// Builds a polynomial from arbitrary terms: coefficients are summed per
    /// monomial and zeros dropped.
    pub fn from_terms(ring: &Arc<Ring>, terms: Vec<(Monomial, u32)>) -> Poly {
        let field = ring.field();
        let mut acc: HashMap<Monomial, u32> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            let e = acc.entry(m).or_insert(0);
            *e = field.add(*e, c % field.characteristic());
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &Arc<Ring>, acc: HashMap<Monomial, u32>) -> Poly {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_unstable_by(grevlex_desc);
        Poly {
            ring: Arc::clone(ring),
            terms,
        }
    }

    /// Terms already sorted descending in grevlex with nonzero coefficients.
    pub(crate) fn from_sorted_terms(ring: &Arc<Ring>, terms: Vec<(Monomial, u32)>) -> Poly {
        debug_assert!(terms.windows(2).all(|w| grevlex_desc(&w[0], &w[1]) == Ordering::Less));
        debug_assert!(terms.iter().all(|(_, c)| *c != 0));
        Poly {
            ring: Arc::clone(ring),
            terms,
        }
    }

    #[inline]
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.first().map_or(0, |(m, _)| m.degree())
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms
            .binary_search_by(|probe| MonomialOrder::Grevlex.cmp(m, &probe.0))
            .map_or(0, |i| self.terms[i].1)
    }

    /// Largest term under `order`.
    pub fn leading_term(&self, order: MonomialOrder) -> Option<&(Monomial, u32)> {
        match order {
            MonomialOrder::Grevlex => self.terms.first(),
            _ => self.terms.iter().max_by(|a, b| order.cmp(&a.0, &b.0)),
        }
    }

    fn same_ring(&self, other: &Poly) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.same_ring(other)?;
        Ok(self.merge(other, 1))
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.same_ring(other)?;
        let minus_one = self.ring.characteristic() - 1;
        Ok(self.merge(other, minus_one))
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.same_ring(other)?;
        Ok(self.mul_filtered(other, |_| true))
    }

    /// `self + scale * other` by merging the sorted term lists.
    pub(crate) fn merge(&self, other: &Poly, scale: u32) -> Poly {
        let field = self.ring.field();
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match MonomialOrder::Grevlex.cmp(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), *ca));
                    i += 1;
                }
                Ordering::Less => {
                    let c = field.mul(*cb, scale);
                    if c != 0 {
                        out.push((mb.clone(), c));
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let c = field.add(*ca, field.mul(*cb, scale));
                    if c != 0 {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        for (m, c) in &other.terms[j..] {
            let c = field.mul(*c, scale);
            if c != 0 {
                out.push((m.clone(), c));
            }
        }
        Poly::from_sorted_terms(&self.ring, out)
    }

    fn mul_filtered(&self, other: &Poly, keep: impl Fn(&Monomial) -> bool) -> Poly {
        let field = self.ring.field();
        let mut acc: HashMap<Monomial, u32> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                if !keep(&m) {
                    continue;
                }
                let e = acc.entry(m).or_insert(0);
                *e = field.add(*e, field.mul(*ca, *cb));
            }
        }
        Poly::from_map(&self.ring, acc)
    }

    /// Product computed modulo the bracket ideal `(x_i^q : i in vars)`:
    /// terms landing in the bracket ideal are dropped.
    pub fn mul_truncated(&self, other: &Poly, q: u64, vars: &[usize]) -> Poly {
        self.mul_filtered(other, |m| !m.in_bracket_max(q, vars))
    }

    /// Drops every term lying in `(x_i^q : i in vars)`.
    pub fn truncate(&self, q: u64, vars: &[usize]) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| !m.in_bracket_max(q, vars))
            .cloned()
            .collect();
        Poly::from_sorted_terms(&self.ring, terms)
    }

    pub fn scale(&self, c: u32) -> Poly {
        let field = self.ring.field();
        let c = c % field.characteristic();
        if c == 0 {
            return self.ring.zero();
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), field.mul(*a, c))).collect();
        Poly::from_sorted_terms(&self.ring, terms)
    }

    /// Multiplies by the term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: u32) -> Poly {
        let field = self.ring.field();
        if c.is_multiple_of(field.characteristic()) {
            return self.ring.zero();
        }
        // multiplication by a monomial preserves grevlex order
        let terms = self
            .terms
            .iter()
            .map(|(a, ca)| (a.mul(m), field.mul(*ca, c)))
            .collect();
        Poly::from_sorted_terms(&self.ring, terms)
    }

    /// Scales so that the grevlex-leading coefficient is one.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(self.ring.field().inv(*c)),
        }
    }

    pub fn pow(&self, mut k: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `f^(p^e)`, computed termwise: in characteristic `p` the Frobenius map
    /// is additive and fixes `F_p`.
    pub fn frobenius_pow(&self, e: u32) -> Result<Poly> {
        let p = self.ring.characteristic() as u64;
        let q = p
            .checked_pow(e)
            .ok_or_else(|| Error::Overflow(format!("{p}^{e}")))?;
        let mut terms = Vec::with_capacity(self.len());
        for (m, c) in &self.terms {
            terms.push((m.checked_pow(q)?, *c));
        }
        // raising every exponent to the same power preserves grevlex order
        Ok(Poly::from_sorted_terms(&self.ring, terms))
    }

    /// Is `self` in `(x_i^q : i in vars)`? Exact since that ideal is monomial.
    pub fn in_bracket_max(&self, q: u64, vars: &[usize]) -> bool {
        self.terms.iter().all(|(m, _)| m.in_bracket_max(q, vars))
    }

    /// Is every term divisible by some variable in `vars`? (membership in
    /// the maximal ideal generated by those variables)
    pub fn in_variable_ideal(&self, vars: &[usize]) -> bool {
        self.terms
            .iter()
            .all(|(m, _)| vars.iter().any(|&i| m.exponents()[i] > 0))
    }

    /// Rewrites the polynomial into `target`, sending variable `i` to
    /// variable `var_map[i]`.
    pub fn embed(&self, target: &Arc<Ring>, var_map: &[usize]) -> Result<Poly> {
        if target.field() != self.ring.field() || var_map.len() != self.ring.nvars() {
            return Err(Error::AmbientMismatch);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut out = Monomial::one(target.nvars());
                for (i, &e) in m.exponents().iter().enumerate() {
                    out.exponents_mut()[var_map[i]] += e;
                }
                (out, *c)
            })
            .collect();
        Ok(Poly::from_terms(target, terms))
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        let (lm, lc) = divisor.terms.first()?;
        let field = self.ring.field();
        let lc_inv = field.inv(*lc);
        let mut rest = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rest.terms.first() {
            let mq = lm.quotient(m)?;
            let cq = field.mul(*c, lc_inv);
            rest = rest.merge(&divisor.mul_term(&mq, cq), field.characteristic() - 1);
            quotient.push((mq, cq));
        }
        Some(Poly::from_terms(&self.ring, quotient))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write_term(f, &self.ring.vars, m.exponents(), *c as i128)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self} in F_{})", self.ring.characteristic())
    }
}

/// Writes `c*x^a*y^b` with the coefficient omitted when it is one.
pub(crate) fn write_term(
    f: &mut impl fmt::Write,
    vars: &[String],
    exps: &[u32],
    c: i128,
) -> fmt::Result {
    let is_const = exps.iter().all(|&e| e == 0);
    if is_const {
        return write!(f, "{c}");
    }
    let mut first = true;
    if c != 1 {
        write!(f, "{c}")?;
        first = false;
    }
    for (name, &e) in vars.iter().zip(exps) {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_char('*')?;
        }
        first = false;
        f.write_str(name)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

macro_rules! binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            /// Panics if the operands live in different rings; use the
            /// `try_*` methods to get an error instead.
            fn $method(self, rhs: &Poly) -> Poly {
                self.$inner(rhs).expect("polynomials from different rings")
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(self.ring.characteristic() - 1)
    }
}
