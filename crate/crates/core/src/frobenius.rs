//! Bracket powers, Frobenius roots and the generalized Frobenius powers
//! `I^[k]`, `I^[k/q]` and `I^[t]`.

use std::collections::HashMap;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::ideal::{Ideal, MaximalIdeal};
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::span::SpanBasis;

/// Largest `q = p^e` accepted anywhere.
pub const MAX_Q: u64 = 1 << 20;

/// `p^e`, refusing anything above [`MAX_Q`].
pub fn frobenius_q(p: u64, e: u32) -> Result<u64> {
    p.checked_pow(e)
        .filter(|&q| q <= MAX_Q)
        .ok_or_else(|| Error::Overflow(format!("{p}^{e} exceeds {MAX_Q}")))
}

/// Base-`p` digits of `k`, least significant first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusDigits {
    k: u64,
    p: u64,
    digits: Vec<u32>,
}

impl FrobeniusDigits {
    pub fn new(k: u64, p: u64) -> FrobeniusDigits {
        assert!(p >= 2, "base must be at least 2");
        let mut digits = Vec::new();
        let mut rest = k;
        while rest > 0 {
            digits.push((rest % p) as u32);
            rest /= p;
        }
        FrobeniusDigits { k, p, digits }
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `k_0, k_1, ...`; empty for `k = 0`.
    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    /// Digit `i`, zero past the end.
    pub fn digit(&self, i: usize) -> u32 {
        self.digits.get(i).copied().unwrap_or(0)
    }

    pub fn reconstruct(&self) -> u64 {
        self.digits
            .iter()
            .rev()
            .fold(0u64, |acc, &d| acc * self.p + d as u64)
    }
}

/// `I^[p^e]`, generated by the `p^e`-th powers of the generators.
pub fn bracket_power(ideal: &Ideal, e: u32) -> Result<Ideal> {
    let gens = ideal
        .gens()
        .iter()
        .map(|g| g.frobenius_pow(e))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(ideal.ring(), gens).map(|i| i.with_budget(*ideal.budget()))
}

/// Adds the `q`-th root pieces of `f` to `out`: writing
/// `f = Σ_μ μ · g_μ^q` over monomials `μ` with exponents below `q`, the
/// `g_μ` are inserted.
fn push_root_pieces(f: &Poly, q: u64, out: &mut SpanBasis) {
    let ring = f.ring();
    let mut groups: HashMap<Monomial, Vec<(Monomial, u32)>> = HashMap::new();
    let mut order: Vec<Monomial> = Vec::new();
    for (m, c) in f.terms() {
        let mut mu = m.clone();
        let mut quo = m.clone();
        for (slot, r) in quo.exponents_mut().iter_mut().zip(mu.exponents_mut()) {
            *r = (*slot as u64 % q) as u32;
            *slot = (*slot as u64 / q) as u32;
        }
        let entry = groups.entry(mu.clone()).or_insert_with(|| {
            order.push(mu);
            Vec::new()
        });
        entry.push((quo, *c));
    }
    for mu in order {
        let terms = groups.remove(&mu).unwrap_or_default();
        out.insert(&Poly::from_terms(ring, terms));
    }
}

/// `I^[1/p^e]`: the smallest ideal `J` with `I ⊆ J^[p^e]`.
pub fn frobenius_root(ideal: &Ideal, e: u32) -> Result<Ideal> {
    let q = frobenius_q(ideal.ring().characteristic() as u64, e)?;
    let mut span = SpanBasis::new();
    for g in ideal.gens() {
        push_root_pieces(g, q, &mut span);
    }
    Ideal::new(ideal.ring(), span.into_rows()).map(|i| i.with_budget(*ideal.budget()))
}

/// `(I^d)^[p^i]` for the digit `d` at position `i`.
fn digit_piece(ideal: &Ideal, d: u32, i: u32) -> Result<Ideal> {
    bracket_power(&ideal.power(d as u64)?, i)
}

/// The generalized Frobenius power `I^[k] = I^{k_0} (I^{k_1})^[p] ...`.
pub fn generalized_power(ideal: &Ideal, k: u64) -> Result<Ideal> {
    let p = ideal.ring().characteristic() as u64;
    let digits = FrobeniusDigits::new(k, p);
    let mut acc = Ideal::unit(ideal.ring()).with_budget(*ideal.budget());
    for (i, &d) in digits.digits().iter().enumerate() {
        if d == 0 {
            continue;
        }
        let piece = digit_piece(ideal, d, i as u32)?;
        acc = acc.product(&piece)?;
    }
    Ok(acc)
}

/// `root_p(X · P)` with both sides given by generators.
fn root_of_product(x: &[Poly], pieces: &[Poly], p: u64) -> SpanBasis {
    let mut out = SpanBasis::new();
    for a in x {
        for b in pieces {
            push_root_pieces(&(a * b), p, &mut out);
        }
    }
    out
}

/// The rational power `I^[k/p^e] = (I^[k])^[1/p^e]`, computed one digit at
/// a time through `root_p(A · B^[p]) = root_p(A) · B`, so `I^[k]` itself is
/// never expanded.
pub fn rational_power(ideal: &Ideal, k: u64, e: u32) -> Result<Ideal> {
    let p = ideal.ring().characteristic() as u64;
    frobenius_q(p, e)?;
    let digits = FrobeniusDigits::new(k, p);
    let ring = ideal.ring();
    let mut x: Vec<Poly> = vec![ring.one()];
    for j in 0..e as usize {
        let piece = ideal.power(digits.digit(j) as u64)?;
        x = root_of_product(&x, piece.gens(), p).into_rows();
        if x.is_empty() {
            return Ok(Ideal::zero(ring).with_budget(*ideal.budget()));
        }
    }
    let x = Ideal::new(ring, x)?.with_budget(*ideal.budget());
    let high = generalized_power(ideal, k / p.pow(e))?;
    x.product(&high)
}

/// `I^[k/p^e]` straight from the definition: the root of the expanded
/// generalized power.
pub fn rational_power_direct(ideal: &Ideal, k: u64, e: u32) -> Result<Ideal> {
    frobenius_root(&generalized_power(ideal, k)?, e)
}

/// Parameters for [`real_power`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RealPowerRequest {
    pub t: Rational64,
    /// Largest level tried.
    pub k_max: u32,
    /// How many consecutive levels must agree.
    pub s: u32,
}

impl RealPowerRequest {
    pub fn new(t: Rational64) -> RealPowerRequest {
        RealPowerRequest { t, k_max: 8, s: 2 }
    }
}

/// Outcome of [`real_power`].
#[derive(Debug, Clone)]
pub struct RealPower {
    pub ideal: Ideal,
    /// First level of the agreeing run (or the last level tried).
    pub level: u32,
    pub certified: bool,
}

/// `⌈t q⌉` for a nonnegative rational `t`.
pub fn ceil_times(t: Rational64, q: u64) -> Result<u64> {
    let v = (t * Rational64::from_integer(q as i64)).ceil().to_integer();
    u64::try_from(v).map_err(|_| Error::Invalid("negative exponent".into()))
}

/// `⌊t q⌋` for a nonnegative rational `t`.
pub fn floor_times(t: Rational64, q: u64) -> Result<u64> {
    let v = (t * Rational64::from_integer(q as i64)).floor().to_integer();
    u64::try_from(v).map_err(|_| Error::Invalid("negative exponent".into()))
}

/// `I^[t]` as the stable value of `I^[⌈t p^k⌉ / p^k]`, `k = 1..k_max`. The
/// answer is certified when `s` consecutive levels agree.
pub fn real_power(ideal: &Ideal, req: &RealPowerRequest) -> Result<RealPower> {
    if req.t < Rational64::from_integer(0) || req.s == 0 || req.k_max == 0 {
        return Err(Error::Invalid("real power needs t >= 0, s >= 1 and k_max >= 1".into()));
    }
    let p = ideal.ring().characteristic() as u64;
    let mut run_start = 1;
    let mut run_len = 0;
    let mut prev: Option<Ideal> = None;
    for k in 1..=req.k_max {
        let q = frobenius_q(p, k)?;
        let cur = rational_power(ideal, ceil_times(req.t, q)?, k)?.reduced()?;
        match &prev {
            Some(pv) if pv.equals(&cur)? => run_len += 1,
            _ => {
                run_start = k;
                run_len = 1;
            }
        }
        if run_len >= req.s {
            return Ok(RealPower {
                ideal: cur,
                level: run_start,
                certified: true,
            });
        }
        prev = Some(cur);
    }
    Ok(RealPower {
        ideal: prev.expect("k_max >= 1"),
        level: req.k_max,
        certified: false,
    })
}

/// Walks the digit chain for `k` below `q = p^e`, keeping only what
/// matters modulo `m^[q]`. Returns the `F_p`-span representing
/// `root_q(I^[k])` modulo `m`: nonempty iff `I^[k] ⊄ m^[q]`.
struct Chain<'a> {
    p: u64,
    e: u32,
    vars: &'a [usize],
    // spans of I^d for d < p
    powers: Vec<Vec<Poly>>,
}

impl<'a> Chain<'a> {
    fn new(ideal: &Ideal, e: u32, m: &'a MaximalIdeal) -> Result<Chain<'a>> {
        let p = ideal.ring().characteristic() as u64;
        let mut powers = Vec::with_capacity(p as usize);
        for d in 0..p {
            powers.push(ideal.power(d)?.gens().to_vec());
        }
        Ok(Chain {
            p,
            e,
            vars: m.vars(),
            powers,
        })
    }

    /// One step: `root_p(X · I^d)` with `X` living modulo `m^[p^left]`.
    fn step(&self, x: &[Poly], d: u32, left: u32) -> Vec<Poly> {
        let modulus = self.p.pow(left);
        let mut out = SpanBasis::new();
        for a in x {
            for b in &self.powers[d as usize] {
                let prod = a.mul_truncated(b, modulus, self.vars);
                if !prod.is_zero() {
                    push_root_pieces(&prod, self.p, &mut out);
                }
            }
        }
        out.into_rows()
    }

    fn escapes(&self, k: u64) -> bool {
        let digits = FrobeniusDigits::new(k, self.p);
        let ring = self.powers[0][0].ring();
        let mut x = vec![ring.one()];
        for j in 0..self.e {
            x = self.step(&x, digit_of(&digits, j), self.e - j);
            if x.is_empty() {
                return false;
            }
        }
        true
    }

    fn profile(&self) -> Vec<bool> {
        let q = self.p.pow(self.e) as usize;
        let mut out = vec![false; q];
        let ring = self.powers[0][0].ring();
        self.walk(&[ring.one()], 0, 0, &mut out);
        out
    }

    fn walk(&self, x: &[Poly], j: u32, prefix: u64, out: &mut [bool]) {
        if j == self.e {
            out[prefix as usize] = true;
            return;
        }
        let place = self.p.pow(j);
        for d in 0..self.p as u32 {
            let next = self.step(x, d, self.e - j);
            if !next.is_empty() {
                self.walk(&next, j + 1, prefix + d as u64 * place, out);
            }
        }
    }
}

fn digit_of(digits: &FrobeniusDigits, j: u32) -> u32 {
    digits.digit(j as usize)
}

/// `[I^[k] ⊄ m^[q]]` for `k = 0..q-1`.
pub fn bracket_profile(ideal: &Ideal, e: u32, m: &MaximalIdeal) -> Result<Vec<bool>> {
    let p = ideal.ring().characteristic() as u64;
    frobenius_q(p, e)?;
    if ideal.is_zero() {
        let mut v = vec![false; p.pow(e) as usize];
        v[0] = true;
        return Ok(v);
    }
    Ok(Chain::new(ideal, e, m)?.profile())
}

/// Is the profile a run of `true` followed by a run of `false`?
pub fn is_monotone(profile: &[bool]) -> bool {
    profile.windows(2).all(|w| w[0] || !w[1])
}

/// Result of [`nu_bracket`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NuBracket {
    pub nu: u64,
    /// `I ⊄ m`: the value is the cap `q - 1` and carries no information.
    pub capped: bool,
    /// The predicate `k ↦ [I^[k] ⊄ m^[q]]` was seen to be monotone on the
    /// levels examined.
    pub monotone: bool,
}

/// `max { k < q : I^[k] ⊄ m^[q] }` by a full downward scan over `k`.
pub fn nu_bracket(ideal: &Ideal, e: u32, m: &MaximalIdeal) -> Result<NuBracket> {
    let p = ideal.ring().characteristic() as u64;
    let q = frobenius_q(p, e)?;
    if !m.contains(ideal) {
        return Ok(NuBracket {
            nu: q - 1,
            capped: true,
            monotone: false,
        });
    }
    let profile = bracket_profile(ideal, e, m)?;
    let nu = (0..q).rev().find(|&k| profile[k as usize]).unwrap_or(0);
    Ok(NuBracket {
        nu,
        capped: false,
        monotone: is_monotone(&profile),
    })
}

/// Binary-search variant of [`nu_bracket`]. The search only runs when the
/// level-one profile of the instance is monotone; otherwise this falls back
/// to the full scan.
pub fn nu_bracket_fast(ideal: &Ideal, e: u32, m: &MaximalIdeal) -> Result<NuBracket> {
    let p = ideal.ring().characteristic() as u64;
    let q = frobenius_q(p, e)?;
    if !m.contains(ideal) || e <= 1 {
        return nu_bracket(ideal, e, m);
    }
    if !is_monotone(&bracket_profile(ideal, 1, m)?) {
        return nu_bracket(ideal, e, m);
    }
    let chain = Chain::new(ideal, e, m)?;
    // invariant: escapes(lo), !escapes(hi)
    let (mut lo, mut hi) = (0u64, q);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if chain.escapes(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(NuBracket {
        nu: lo,
        capped: false,
        monotone: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;
    use std::sync::Arc;

    fn ring(p: u64) -> Arc<Ring> {
        Ring::new(p, &["x", "y"]).unwrap()
    }

    fn ideal(r: &Arc<Ring>, text: &str) -> Ideal {
        Ideal::parse(r, text).unwrap()
    }

    fn same(a: &Ideal, b: &Ideal) -> bool {
        a.equals(b).unwrap()
    }

    #[test]
    fn digits_roundtrip() {
        let d = FrobeniusDigits::new(23, 3);
        assert_eq!(d.digits(), [2, 1, 2]);
        assert_eq!(d.reconstruct(), 23);
        assert!(FrobeniusDigits::new(0, 5).digits().is_empty());
    }

    #[test]
    fn brackets() {
        let r = ring(2);
        assert!(same(&bracket_power(&ideal(&r, "x, y"), 1).unwrap(), &ideal(&r, "x^2, y^2")));
        let r3 = ring(3);
        let b = bracket_power(&ideal(&r3, "x + y"), 1).unwrap();
        assert_eq!(b.gens()[0].to_string(), "x^3 + y^3");
        assert!(bracket_power(&Ideal::unit(&r3), 2).unwrap().is_unit().unwrap());
    }

    #[test]
    fn roots() {
        let r = ring(2);
        assert!(same(&frobenius_root(&ideal(&r, "x^3*y^5"), 1).unwrap(), &ideal(&r, "x*y^2")));
        assert!(same(&frobenius_root(&ideal(&r, "x^2 + y^2"), 1).unwrap(), &ideal(&r, "x + y")));
        assert!(frobenius_root(&ideal(&r, "x"), 1).unwrap().is_unit().unwrap());
    }

    #[test]
    fn generalized_and_rational() {
        let r = ring(2);
        let m = ideal(&r, "x, y");
        let g = generalized_power(&m, 3).unwrap();
        assert!(same(&g, &ideal(&r, "x^3, x^2*y, x*y^2, y^3")));
        assert!(same(&generalized_power(&m, 4).unwrap(), &bracket_power(&m, 2).unwrap()));
        assert!(generalized_power(&m, 0).unwrap().is_unit().unwrap());

        assert!(same(&rational_power(&ideal(&r, "x"), 2, 1).unwrap(), &ideal(&r, "x")));
        assert!(same(&rational_power(&m, 3, 1).unwrap(), &m));
        assert!(rational_power(&ideal(&r, "x"), 1, 1).unwrap().is_unit().unwrap());
    }

    #[test]
    fn real_powers() {
        let r = ring(2);
        let x = ideal(&r, "x");
        let one = real_power(&x, &RealPowerRequest::new(Rational64::from_integer(1))).unwrap();
        assert!(one.certified && same(&one.ideal, &x));
        let half = real_power(&x, &RealPowerRequest::new(Rational64::new(1, 2))).unwrap();
        assert!(half.certified && half.ideal.is_unit().unwrap());
        let unit = real_power(&Ideal::unit(&r), &RealPowerRequest::new(Rational64::new(3, 7))).unwrap();
        assert!(unit.ideal.is_unit().unwrap());
    }

    #[test]
    fn nu_bracket_examples() {
        for (p, e) in [(2, 1), (2, 3), (3, 2), (5, 1)] {
            let r = ring(p);
            let m = MaximalIdeal::origin(&r).unwrap();
            let q = p.pow(e);
            let nb = nu_bracket(&ideal(&r, "x"), e, &m).unwrap();
            assert_eq!(nb.nu, q - 1);
            assert!(!nb.capped);
        }
        let r = ring(2);
        let m = MaximalIdeal::origin(&r).unwrap();
        assert_eq!(nu_bracket(&ideal(&r, "x, y"), 1, &m).unwrap().nu, 1);
        assert!(nu_bracket(&Ideal::unit(&r), 2, &m).unwrap().capped);
    }

    #[test]
    fn fast_matches_scan() {
        let r = ring(3);
        let m = MaximalIdeal::origin(&r).unwrap();
        for text in ["x, y", "x^2 + y^3", "x^2, x*y^2, y^4", "x*y"] {
            let i = ideal(&r, text);
            for e in 1..=2 {
                assert_eq!(nu_bracket(&i, e, &m).unwrap().nu, nu_bracket_fast(&i, e, &m).unwrap().nu);
            }
        }
    }
}
