//! ν-invariants and the threshold estimates built from them: F-pure
//! thresholds, least critical exponents and test ideals.

use std::collections::HashMap;
use std::fmt;
use std::io;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::frobenius::{ceil_times, floor_times, frobenius_q, nu_bracket, nu_bracket_fast};
use crate::ideal::{compositions, Ideal, MaximalIdeal};
use crate::poly::Poly;
use crate::span::SpanBasis;

/// The span of `I^r` modulo `m^[q]`, one `r` at a time.
struct PowerWalk<'a> {
    gens: &'a [Poly],
    q: u64,
    vars: &'a [usize],
    current: Vec<Poly>,
}

impl<'a> PowerWalk<'a> {
    fn new(ideal: &'a Ideal, q: u64, m: &'a MaximalIdeal) -> Self {
        let one = ideal.ring().one().truncate(q, m.vars());
        PowerWalk {
            gens: ideal.gens(),
            q,
            vars: m.vars(),
            current: vec![one].into_iter().filter(|p| !p.is_zero()).collect(),
        }
    }

    /// Advances from `I^r` to `I^(r+1)`; returns whether it escapes `m^[q]`.
    fn advance(&mut self) -> bool {
        let mut next = SpanBasis::new();
        for w in &self.current {
            for g in self.gens {
                let prod = w.mul_truncated(g, self.q, self.vars);
                if !prod.is_zero() {
                    next.insert(&prod);
                }
            }
        }
        self.current = next.into_rows();
        !self.current.is_empty()
    }
}

/// `ν(q) = max { r : I^r ⊄ m^[q] }`.
///
/// Products are expanded exactly over `F_p` and compared termwise against
/// the monomial ideal `m^[q]`; only the span of `I^r` modulo `m^[q]` is
/// carried from one `r` to the next.
pub fn nu_power(ideal: &Ideal, e: u32, m: &MaximalIdeal) -> Result<u64> {
    let q = frobenius_q(ideal.ring().characteristic() as u64, e)?;
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if !m.contains(ideal) {
        return Err(Error::NotInMaximalIdeal);
    }
    let mut walk = PowerWalk::new(ideal, q, m);
    let mut r = 0;
    while walk.advance() {
        r += 1;
    }
    Ok(r)
}

/// Does `I^n` escape `m^[q]`? Stops as soon as the answer is known.
fn power_escapes(ideal: &Ideal, n: u64, q: u64, m: &MaximalIdeal) -> bool {
    let mut walk = PowerWalk::new(ideal, q, m);
    if walk.current.is_empty() {
        return false;
    }
    for _ in 0..n {
        if !walk.advance() {
            return false;
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ThresholdKind {
    Fpt,
    Lce,
}

impl fmt::Display for ThresholdKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ThresholdKind::Fpt => "fpt",
            ThresholdKind::Lce => "lce",
        })
    }
}

/// One level of a threshold estimate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdRow {
    pub e: u32,
    pub q: u64,
    pub nu: u64,
    pub lower: Rational64,
    pub upper: Rational64,
    pub certified: bool,
}

/// Levelwise bounds for a threshold at one maximal ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdTable {
    pub ideal_id: String,
    pub kind: ThresholdKind,
    pub p: u64,
    pub locus: String,
    pub rows: Vec<ThresholdRow>,
}

pub const THRESHOLD_CSV_HEADER: [&str; 9] =
    ["ideal_id", "kind", "p", "e", "q", "nu", "lower", "upper", "certified"];

impl ThresholdTable {
    /// Writes `ideal_id,kind,p,e,q,nu,lower,upper,certified` rows, with a
    /// header line when `header` is set. Bounds are exact fractions.
    pub fn write_csv<W: io::Write>(&self, out: W, header: bool) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io_err = |e: csv::Error| Error::Io(e.to_string());
        if header {
            w.write_record(THRESHOLD_CSV_HEADER).map_err(io_err)?;
        }
        for row in &self.rows {
            w.write_record([
                self.ideal_id.clone(),
                self.kind.to_string(),
                self.p.to_string(),
                row.e.to_string(),
                row.q.to_string(),
                row.nu.to_string(),
                row.lower.to_string(),
                row.upper.to_string(),
                row.certified.to_string(),
            ])
            .map_err(io_err)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf, true)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }

    pub fn last(&self) -> Option<&ThresholdRow> {
        self.rows.last()
    }
}

fn ratio(a: u64, q: u64) -> Rational64 {
    Rational64::new(a as i64, q as i64)
}

/// Levels `1..=e_max` of `ν(q)/q ≤ fpt ≤ (ν(q) + r)/q`, `r` the number of
/// generators. Both bounds are proven: `ν(pq) ≥ p·ν(q)` and
/// `ν(pq) + r ≤ p·(ν(q) + r)`, so lower bounds rise and upper bounds fall
/// toward the threshold.
pub fn fpt_estimate(ideal: &Ideal, m: &MaximalIdeal, e_max: u32, ideal_id: &str) -> Result<ThresholdTable> {
    let p = ideal.ring().characteristic() as u64;
    let r = ideal.gens().len() as u64;
    let mut rows = Vec::new();
    for e in 1..=e_max {
        let q = frobenius_q(p, e)?;
        let nu = nu_power(ideal, e, m)?;
        rows.push(ThresholdRow {
            e,
            q,
            nu,
            lower: ratio(nu, q),
            upper: ratio(nu + r, q),
            certified: true,
        });
    }
    Ok(ThresholdTable {
        ideal_id: ideal_id.to_string(),
        kind: ThresholdKind::Fpt,
        p,
        locus: m.to_string(),
        rows,
    })
}

/// Levels `1..=e_max` of `ν/q` and `(ν + 1)/q` with `ν` from
/// [`nu_bracket`]. A row is certified only when `k ↦ [I^[k] ⊄ m^[q]]` was
/// monotone on that level.
pub fn lce_estimate(
    ideal: &Ideal,
    m: &MaximalIdeal,
    e_max: u32,
    ideal_id: &str,
    fast: bool,
) -> Result<ThresholdTable> {
    if !m.contains(ideal) {
        return Err(Error::NotInMaximalIdeal);
    }
    let p = ideal.ring().characteristic() as u64;
    let mut rows = Vec::new();
    for e in 1..=e_max {
        let q = frobenius_q(p, e)?;
        let nb = if fast {
            nu_bracket_fast(ideal, e, m)?
        } else {
            nu_bracket(ideal, e, m)?
        };
        rows.push(ThresholdRow {
            e,
            q,
            nu: nb.nu,
            lower: ratio(nb.nu, q),
            upper: ratio(nb.nu + 1, q),
            certified: nb.monotone,
        });
    }
    Ok(ThresholdTable {
        ideal_id: ideal_id.to_string(),
        kind: ThresholdKind::Lce,
        p,
        locus: m.to_string(),
        rows,
    })
}

/// A value together with whether its stabilization was confirmed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Certified<T> {
    pub value: T,
    pub certified: bool,
}

#[derive(Debug, Clone)]
pub struct TestIdealResult {
    pub t: Rational64,
    pub ideal: Ideal,
    pub stabilized_at_e: u32,
    pub certified: bool,
}

/// `root_q(I^N)`. Each product `f^a` of generators has root
/// `f^⌊a/q⌋ · root_q(f^(a mod q))`, so `root_q(I^N)` is the sum over
/// residue vectors `c` of `root_q(f^c) · I^((N - |c|)/q)`.
fn root_of_ordinary_power(ideal: &Ideal, n: u64, e: u32) -> Result<Ideal> {
    let ring = ideal.ring();
    let p = ring.characteristic() as u64;
    let q = frobenius_q(p, e)?;
    let gens = ideal.gens();
    let r = gens.len();
    if r == 0 {
        return Ok(ideal.clone());
    }
    let mut by_high: HashMap<u64, SpanBasis> = HashMap::new();
    let max_low = n.min((q - 1) * r as u64);
    // residue vectors with entries below q and total ≡ n (mod q)
    let mut total = n % q;
    while total <= max_low {
        for c in compositions(r, total as u32) {
            if c.iter().any(|&a| a as u64 >= q) {
                continue;
            }
            let mut prod = ring.one();
            for (g, &a) in gens.iter().zip(&c) {
                if a > 0 {
                    prod = &prod * &g.pow(a as u64);
                }
            }
            let root = crate::frobenius::frobenius_root(&Ideal::new(ring, vec![prod])?, e)?;
            let span = by_high.entry((n - total) / q).or_default();
            for g in root.gens() {
                span.insert(g);
            }
        }
        total += q;
    }
    let mut highs: Vec<u64> = by_high.keys().copied().collect();
    highs.sort_unstable();
    let mut out = Ideal::zero(ring).with_budget(*ideal.budget());
    for h in highs {
        let low = Ideal::new(ring, by_high.remove(&h).expect("key").into_rows())?;
        out = out.sum(&low.product(&ideal.power(h)?)?)?;
    }
    Ok(out.span_reduced())
}

/// The `e`-th approximation `((I^n)^⌈tq⌉)^[1/q] = (I^(n⌈tq⌉))^[1/q]` of
/// `τ((I^n)^t)`.
fn power_test_ideal_level(ideal: &Ideal, n: u64, t: Rational64, e: u32) -> Result<Ideal> {
    let q = frobenius_q(ideal.ring().characteristic() as u64, e)?;
    let exp = ceil_times(t, q)?
        .checked_mul(n)
        .ok_or_else(|| Error::Overflow("test ideal exponent".into()))?;
    root_of_ordinary_power(ideal, exp, e)?.reduced()
}

/// The `e`-th approximation `(I^⌈tq⌉)^[1/q]` of `τ(I^t)`.
pub fn test_ideal_level(ideal: &Ideal, t: Rational64, e: u32) -> Result<Ideal> {
    power_test_ideal_level(ideal, 1, t, e)
}

/// `τ(I^t)`: the first level `e` with `A_e = A_(e+1)`, where
/// `A_e = (I^⌈tq⌉)^[1/q]`. Levels up to `e_max + 1` are computed; without
/// agreement the last level is returned uncertified.
pub fn test_ideal(ideal: &Ideal, t: Rational64, e_max: u32) -> Result<TestIdealResult> {
    test_ideal_of_power(ideal, 1, t, e_max)
}

/// `τ((I^n)^t)`, rooting products of the generators of `I` directly
/// instead of expanding `I^n` first.
pub fn test_ideal_of_power(ideal: &Ideal, n: u64, t: Rational64, e_max: u32) -> Result<TestIdealResult> {
    if t < Rational64::from_integer(0) || e_max == 0 || n == 0 {
        return Err(Error::Invalid("test ideal needs t >= 0, n >= 1 and e_max >= 1".into()));
    }
    let mut prev = power_test_ideal_level(ideal, n, t, 1)?;
    for e in 1..=e_max {
        let next = power_test_ideal_level(ideal, n, t, e + 1)?;
        if prev.equals(&next)? {
            return Ok(TestIdealResult {
                t,
                ideal: prev,
                stabilized_at_e: e,
                certified: true,
            });
        }
        prev = next;
    }
    Ok(TestIdealResult {
        t,
        ideal: prev,
        stabilized_at_e: e_max + 1,
        certified: false,
    })
}

/// F-purity of `(R, I^t)` at level `e`: some element of `I^⌊t(q-1)⌋`
/// lies outside `m^[q]`. With `strong`, the exponent is `⌈tq⌉` instead.
pub fn is_f_pure_level(ideal: &Ideal, t: Rational64, e: u32, m: &MaximalIdeal, strong: bool) -> Result<bool> {
    let q = frobenius_q(ideal.ring().characteristic() as u64, e)?;
    if !m.contains(ideal) {
        return Err(Error::NotInMaximalIdeal);
    }
    let n = if strong {
        ceil_times(t, q)?
    } else {
        floor_times(t, q - 1)?
    };
    Ok(power_escapes(ideal, n, q, m))
}

/// Is `τ(I^t)` the unit ideal?
pub fn is_strongly_f_regular(ideal: &Ideal, t: Rational64, e_max: u32) -> Result<Certified<bool>> {
    let tau = test_ideal(ideal, t, e_max)?;
    Ok(Certified {
        value: tau.ideal.is_unit()?,
        certified: tau.certified,
    })
}

/// `ν_(I^n)(q) = ⌊ν_I(q) / n⌋`, the levelwise form of `fpt(I) = n·fpt(I^n)`.
pub fn check_fpt_scaling(ideal: &Ideal, n: u64, e: u32, m: &MaximalIdeal) -> Result<bool> {
    if n == 0 {
        return Err(Error::Invalid("scaling exponent must be positive".into()));
    }
    let base = nu_power(ideal, e, m)?;
    let scaled = nu_power(&ideal.power(n)?, e, m)?;
    Ok(scaled == base / n)
}

/// `τ(I^mexp) ⊆ I`, for `mexp` at least the number of generators.
pub fn skoda_check(ideal: &Ideal, mexp: u64, e_max: u32) -> Result<Certified<bool>> {
    if (mexp as usize) < ideal.gens().len() {
        return Err(Error::Invalid(format!(
            "exponent {mexp} is below the generator count {}",
            ideal.gens().len()
        )));
    }
    let tau = test_ideal_of_power(ideal, mexp, Rational64::from_integer(1), e_max)?;
    Ok(Certified {
        value: ideal.contains(&tau.ideal)?,
        certified: tau.certified,
    })
}
