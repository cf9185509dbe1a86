//! Row-echelon spans of polynomials over `F_p`.
//!
//! Used wherever an ideal only matters through the `F_p`-span of a
//! generating set: Frobenius roots are linear in the generator, and
//! containment in a monomial ideal is a question about a truncated span.

use std::collections::HashMap;

use crate::monomial::Monomial;
use crate::poly::Poly;

/// Linearly independent monic polynomials with pairwise distinct leading
/// monomials.
#[derive(Debug, Clone, Default)]
pub struct SpanBasis {
    rows: Vec<Poly>,
    leads: HashMap<Monomial, usize>,
}

impl SpanBasis {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `v` to the span; returns `false` when it was already in it.
    pub fn insert(&mut self, v: &Poly) -> bool {
        let mut v = v.clone();
        while let Some((lm, lc)) = v.terms().first() {
            match self.leads.get(lm) {
                Some(&idx) => {
                    let c = v.ring().field().neg(*lc);
                    v = v.merge(&self.rows[idx], c);
                }
                None => {
                    self.leads.insert(lm.clone(), self.rows.len());
                    self.rows.push(v.monic());
                    return true;
                }
            }
        }
        false
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Poly] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Poly> {
        self.rows
    }

    /// Does the span contain a nonzero constant?
    pub fn contains_unit(&self) -> bool {
        self.rows.iter().any(|r| r.is_unit())
    }
}

impl<'a> FromIterator<&'a Poly> for SpanBasis {
    fn from_iter<I: IntoIterator<Item = &'a Poly>>(iter: I) -> Self {
        let mut s = SpanBasis::new();
        for p in iter {
            s.insert(p);
        }
        s
    }
}
