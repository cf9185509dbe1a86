//! Generic linkage: adjoin indeterminates `u_ij`, form the generic
//! combinations `g_i = Σ_j u_ij f_j`, the ideal `L = (g_1, ..., g_c)` and the
//! link `J = (L : I)`, then compare thresholds of `I`, `L` and `J`.

use std::fmt::Write as _;
use std::io;
use std::sync::Arc;

use num_rational::Rational64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::frobenius::{frobenius_q, nu_bracket, nu_bracket_fast, NuBracket};
use crate::groebner::Budget;
use crate::ideal::{Ideal, MaximalIdeal};
use crate::ideal_io::{bad_prime_bound, reduce_mod_p, IntegerIdealSpec};
use crate::poly::{Poly, Ring};
use crate::thresholds::nu_power;

/// `R`, `S = R[u_11, ..., u_cr]` and the ideals `I·S`, `L`, `J`.
#[derive(Debug, Clone)]
pub struct LinkageData {
    pub base_ring: Arc<Ring>,
    pub ring: Arc<Ring>,
    /// `I` in `R`.
    pub ideal: Ideal,
    /// `I·S`.
    pub ideal_ext: Ideal,
    /// `g_1, ..., g_c`.
    pub generic: Vec<Poly>,
    pub link_ideal: Ideal,
    pub linked: Ideal,
    pub height: usize,
    pub generators: usize,
}

/// Names of the fresh variables, row by row. Indices are concatenated
/// (`u12`) unless one of them needs two digits (`u1_12`).
pub fn generic_variable_names(c: usize, r: usize) -> Vec<String> {
    let wide = c >= 10 || r >= 10;
    let mut out = Vec::with_capacity(c * r);
    for i in 1..=c {
        for j in 1..=r {
            out.push(if wide { format!("u{i}_{j}") } else { format!("u{i}{j}") });
        }
    }
    out
}

/// Builds the generic linkage of `I` in height `c = ht(I)`.
pub fn build_generic_linkage(ideal: &Ideal) -> Result<LinkageData> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let ideal = ideal.span_reduced();
    let c = ideal.height()?;
    let r = ideal.gens().len();
    if c > r {
        return Err(Error::DegenerateHeight { height: c, generators: r });
    }
    let base = ideal.ring();
    let names = generic_variable_names(c, r);
    if let Some(clash) = names.iter().find(|n| base.var_index(n).is_some()) {
        return Err(Error::Invalid(format!("variable `{clash}` already exists in the base ring")));
    }
    let ring = base.extended(&names)?;
    let n = base.nvars();
    let map: Vec<usize> = (0..n).collect();
    let ideal_ext = ideal.embed(&ring, &map)?;
    let mut generic = Vec::with_capacity(c);
    for i in 0..c {
        let mut g = ring.zero();
        for (j, f) in ideal_ext.gens().iter().enumerate() {
            g = &g + &(&ring.var(n + i * r + j) * f);
        }
        generic.push(g);
    }
    let link_ideal = Ideal::new(&ring, generic.clone())?.with_budget(*ideal.budget());
    let linked = link_ideal.colon(&ideal_ext)?.reduced()?;
    Ok(LinkageData {
        base_ring: Arc::clone(base),
        ring,
        ideal: ideal.clone(),
        ideal_ext,
        generic,
        link_ideal,
        linked,
        height: c,
        generators: r,
    })
}

/// The outcome of [`LinkageData::verify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructureCheck {
    pub link_in_ideal: bool,
    pub link_in_linked: bool,
    pub product_in_link: bool,
    pub link_height: usize,
    pub height_ok: bool,
}

impl StructureCheck {
    pub fn all_ok(&self) -> bool {
        self.link_in_ideal && self.link_in_linked && self.product_in_link && self.height_ok
    }
}

impl LinkageData {
    /// `L ⊆ I·S`, `L ⊆ J`, `I·J ⊆ L` and `ht(L) = c`.
    pub fn verify(&self) -> Result<StructureCheck> {
        let link_height = self.link_ideal.height()?;
        Ok(StructureCheck {
            link_in_ideal: self.ideal_ext.contains(&self.link_ideal)?,
            link_in_linked: self.linked.contains(&self.link_ideal)?,
            product_in_link: self.link_ideal.contains(&self.ideal_ext.product(&self.linked)?)?,
            link_height,
            height_ok: link_height == self.height,
        })
    }

    pub fn origin(&self) -> Result<MaximalIdeal> {
        MaximalIdeal::origin(&self.ring)
    }
}

/// The maximal ideal of all variables of `ring`.
pub fn origin_maximal_ideal(ring: &Arc<Ring>) -> Result<Ideal> {
    Ok(MaximalIdeal::origin(ring)?.ideal())
}

/// `ν` for the bracket powers of `(I·S)^c`, `L^c` and `J^c` at the origin of
/// `S`, level `e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelwiseLce {
    pub ideal: NuBracket,
    pub link: NuBracket,
    pub linked: NuBracket,
}

pub fn compare_lce_levelwise(ld: &LinkageData, e: u32, fast: bool) -> Result<LevelwiseLce> {
    let m = ld.origin()?;
    let c = ld.height as u64;
    let nu = |i: &Ideal| -> Result<NuBracket> {
        let pw = i.power(c)?;
        if fast {
            nu_bracket_fast(&pw, e, &m)
        } else {
            nu_bracket(&pw, e, &m)
        }
    };
    Ok(LevelwiseLce {
        ideal: nu(&ld.ideal_ext)?,
        link: nu(&ld.link_ideal)?,
        linked: nu(&ld.linked)?,
    })
}

/// One `(p, e)` cell of a sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonRow {
    pub p: u64,
    pub e: u32,
    pub q: u64,
    pub nu_fpt_i: u64,
    pub nu_fpt_l: u64,
    pub nu_fpt_j: u64,
    pub nu_lce_ic: u64,
    pub nu_lce_lc: u64,
    pub nu_lce_jc: u64,
    /// Proven bounds `ν/q ≤ fpt ≤ (ν + gens)/q` for `I`, `L`, `J`.
    pub fpt_i: (Rational64, Rational64),
    pub fpt_l: (Rational64, Rational64),
    pub fpt_j: (Rational64, Rational64),
    /// `max(0, lower_fpt(I) − upper_fpt(J))`.
    pub gap: Rational64,
    pub chain_ok: bool,
    pub lce_eq: bool,
}

/// A cell that could not be computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailedCell {
    pub p: u64,
    pub e: u32,
    pub message: String,
}

/// Per-prime linkage facts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSummary {
    pub p: u64,
    pub structure: StructureCheck,
    pub linked_generators: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonReport {
    pub label: String,
    pub variables: Vec<String>,
    pub generators: Vec<String>,
    pub height: usize,
    pub extended_vars: usize,
    pub bad_prime_bound: u64,
    pub e_max: u32,
    pub primes: Vec<PrimeSummary>,
    pub rows: Vec<ComparisonRow>,
    pub failures: Vec<FailedCell>,
}

pub const COMPARISON_CSV_HEADER: [&str; 12] = [
    "p", "e", "q", "nu_fpt_I", "nu_fpt_L", "nu_fpt_J", "nu_lce_Ic", "nu_lce_Lc", "nu_lce_Jc", "gap",
    "chain_ok", "lce_eq",
];

impl ComparisonReport {
    pub fn chain_ok(&self) -> bool {
        self.rows.iter().all(|r| r.chain_ok)
    }

    pub fn lce_levelwise_equal(&self) -> bool {
        self.rows.iter().all(|r| r.lce_eq)
    }

    pub fn structure_ok(&self) -> bool {
        self.primes.iter().all(|p| p.structure.all_ok())
    }

    /// Everything computed and every checked inequality held.
    pub fn success(&self) -> bool {
        self.failures.is_empty() && self.chain_ok() && self.structure_ok()
    }

    pub fn write_csv<W: io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io_err = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(COMPARISON_CSV_HEADER).map_err(io_err)?;
        let mut lines: Vec<(u64, u32, Vec<String>)> = self
            .rows
            .iter()
            .map(|r| {
                let rec = vec![
                    r.p.to_string(),
                    r.e.to_string(),
                    r.q.to_string(),
                    r.nu_fpt_i.to_string(),
                    r.nu_fpt_l.to_string(),
                    r.nu_fpt_j.to_string(),
                    r.nu_lce_ic.to_string(),
                    r.nu_lce_lc.to_string(),
                    r.nu_lce_jc.to_string(),
                    r.gap.to_string(),
                    r.chain_ok.to_string(),
                    r.lce_eq.to_string(),
                ];
                (r.p, r.e, rec)
            })
            .collect();
        for f in &self.failures {
            let q = frobenius_q(f.p, f.e).map(|q| q.to_string()).unwrap_or_default();
            let mut rec = vec![f.p.to_string(), f.e.to_string(), q];
            rec.extend(std::iter::repeat_n("error".to_string(), 7));
            rec.extend(["false".to_string(), "false".to_string()]);
            lines.push((f.p, f.e, rec));
        }
        lines.sort_by_key(|(p, e, _)| (*p, *e));
        for (_, _, rec) in lines {
            w.write_record(&rec).map_err(io_err)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# Generic linkage comparison: {}\n", self.label);
        let _ = writeln!(s, "- ring: {}", self.variables.join(", "));
        let _ = writeln!(s, "- generators ({}): {}", self.generators.len(), self.generators.join(", "));
        let _ = writeln!(s, "- height c: {} (equidimensionality assumed, not checked)", self.height);
        let _ = writeln!(s, "- variables of S: {}", self.extended_vars);
        let _ = writeln!(s, "- bad-prime bound: {}", self.bad_prime_bound);
        let _ = writeln!(s, "- levels: e = 1..{}", self.e_max);
        let _ = writeln!(s, "- locus: the origin of each ring\n");
        for ps in &self.primes {
            let st = &ps.structure;
            let _ = writeln!(
                s,
                "- p = {}: L ⊆ I·S {}, L ⊆ J {}, I·J ⊆ L {}, ht(L) = {}, generators of J: {}",
                ps.p,
                mark(st.link_in_ideal),
                mark(st.link_in_linked),
                mark(st.product_in_link),
                st.link_height,
                ps.linked_generators
            );
        }
        s.push('\n');
        let _ = writeln!(s, "| {} |", COMPARISON_CSV_HEADER.join(" | "));
        let _ = writeln!(s, "|{}", "---|".repeat(COMPARISON_CSV_HEADER.len()));
        for r in &self.rows {
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |",
                r.p,
                r.e,
                r.q,
                r.nu_fpt_i,
                r.nu_fpt_l,
                r.nu_fpt_j,
                r.nu_lce_ic,
                r.nu_lce_lc,
                r.nu_lce_jc,
                r.gap,
                r.chain_ok,
                r.lce_eq
            );
        }
        for f in &self.failures {
            let _ = writeln!(s, "| {} | {} | error: {} |||||||||", f.p, f.e, f.message);
        }
        s.push_str("\n## Reading the table\n\n");
        s.push_str(
            "- `lower_fpt(L) <= upper_fpt(I)` follows from `L ⊆ I·S` and must hold on every row. \
             A failure here is a bug.\n",
        );
        s.push_str(
            "- `gap` is `max(0, lower_fpt(I) - upper_fpt(J))`. It is an observed slack at a finite \
             level, not a proven constant.\n",
        );
        s.push_str(
            "- `lce_eq` compares ν for the bracket powers of `(I·S)^c` and `L^c` at one level. \
             Agreement is empirical evidence for equal least critical exponents, not a proof; \
             the columns `nu_lce_Lc <= nu_lce_Ic` and `nu_lce_Lc <= nu_lce_Jc` are forced by containment.\n",
        );
        s.push_str(
            "- All values are local at the origin over F_p. Heights are computed as n - dim and \
             are only heights for equidimensional inputs.\n",
        );
        s
    }
}

fn mark(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "FAILS"
    }
}

/// Options for [`run_comparison`].
#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub primes: Vec<u64>,
    pub e_max: u32,
    pub jobs: usize,
    pub fast: bool,
    pub budget: Budget,
}

impl SweepOptions {
    pub fn new(primes: Vec<u64>, e_max: u32) -> SweepOptions {
        SweepOptions {
            primes,
            e_max,
            jobs: 1,
            fast: false,
            budget: Budget::default(),
        }
    }
}

fn compute_cell(ld: &LinkageData, p: u64, e: u32, fast: bool) -> Result<ComparisonRow> {
    let q = frobenius_q(p, e)?;
    let m_r = MaximalIdeal::origin(&ld.base_ring)?;
    let m_s = ld.origin()?;
    let nu_i = nu_power(&ld.ideal, e, &m_r)?;
    let nu_l = nu_power(&ld.link_ideal, e, &m_s)?;
    let nu_j = nu_power(&ld.linked, e, &m_s)?;
    let lce = compare_lce_levelwise(ld, e, fast)?;
    let bounds = |nu: u64, gens: usize| {
        (
            Rational64::new(nu as i64, q as i64),
            Rational64::new((nu + gens as u64) as i64, q as i64),
        )
    };
    let fpt_i = bounds(nu_i, ld.ideal.gens().len());
    let fpt_l = bounds(nu_l, ld.link_ideal.gens().len());
    let fpt_j = bounds(nu_j, ld.linked.gens().len());
    let zero = Rational64::from_integer(0);
    let gap = (fpt_i.0 - fpt_j.1).max(zero);
    let chain_ok = fpt_l.0 <= fpt_i.1 && fpt_i.0 <= fpt_j.1 + gap;
    Ok(ComparisonRow {
        p,
        e,
        q,
        nu_fpt_i: nu_i,
        nu_fpt_l: nu_l,
        nu_fpt_j: nu_j,
        nu_lce_ic: lce.ideal.nu,
        nu_lce_lc: lce.link.nu,
        nu_lce_jc: lce.linked.nu,
        fpt_i,
        fpt_l,
        fpt_j,
        gap,
        chain_ok,
        lce_eq: lce.ideal.nu == lce.link.nu,
    })
}

/// Reduces `spec` modulo each prime, builds the generic linkage and
/// tabulates the thresholds of `I`, `L` and `J` for `e = 1..e_max`.
///
/// Bad or composite primes and an empty prime list are refused before any
/// work starts. Cells that exceed a budget are reported as failures; the
/// output does not depend on `jobs`.
pub fn run_comparison(spec: &IntegerIdealSpec, opts: &SweepOptions) -> Result<ComparisonReport> {
    if opts.primes.is_empty() {
        return Err(Error::Config("no primes given".into()));
    }
    if opts.e_max == 0 {
        return Err(Error::Config("e_max must be at least 1".into()));
    }
    let bound = bad_prime_bound(spec).0;
    let mut primes = opts.primes.clone();
    primes.sort_unstable();
    primes.dedup();
    for &p in &primes {
        if !crate::field::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p <= bound {
            return Err(Error::BadPrime { prime: p, bound });
        }
        for e in 1..=opts.e_max {
            frobenius_q(p, e)?;
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;

    let linkages: Vec<Result<(LinkageData, StructureCheck)>> = pool.install(|| {
        primes
            .par_iter()
            .map(|&p| {
                let ideal = reduce_mod_p(spec, p)?.with_budget(opts.budget);
                let ld = build_generic_linkage(&ideal)?;
                let st = ld.verify()?;
                Ok((ld, st))
            })
            .collect()
    });

    let mut summaries = Vec::new();
    let mut failures = Vec::new();
    let mut cells: Vec<(&LinkageData, u64, u32)> = Vec::new();
    let mut height = 0;
    let mut extended_vars = 0;
    for (&p, res) in primes.iter().zip(&linkages) {
        match res {
            Ok((ld, st)) => {
                height = ld.height;
                extended_vars = ld.ring.nvars();
                summaries.push(PrimeSummary {
                    p,
                    structure: *st,
                    linked_generators: ld.linked.gens().len(),
                });
                for e in 1..=opts.e_max {
                    cells.push((ld, p, e));
                }
            }
            Err(err) => {
                for e in 1..=opts.e_max {
                    failures.push(FailedCell {
                        p,
                        e,
                        message: err.to_string(),
                    });
                }
            }
        }
    }
    let results: Vec<Result<ComparisonRow>> = pool.install(|| {
        cells
            .par_iter()
            .map(|(ld, p, e)| compute_cell(ld, *p, *e, opts.fast))
            .collect()
    });
    let mut rows = Vec::new();
    for ((_, p, e), res) in cells.iter().zip(results) {
        match res {
            Ok(row) => rows.push(row),
            Err(err) => failures.push(FailedCell {
                p: *p,
                e: *e,
                message: err.to_string(),
            }),
        }
    }
    rows.sort_by_key(|r| (r.p, r.e));
    failures.sort_by_key(|f| (f.p, f.e));
    Ok(ComparisonReport {
        label: spec.label.clone().unwrap_or_else(|| "ideal".to_string()),
        variables: spec.variables.clone(),
        generators: (0..spec.generators.len()).map(|i| spec.generator_text(i)).collect(),
        height,
        extended_vars,
        bad_prime_bound: bound,
        e_max: opts.e_max,
        primes: summaries,
        rows,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal_io::parse_ideal_file;

    fn linkage(text: &str) -> LinkageData {
        let r = Ring::new(32003, &["x", "y"]).unwrap();
        build_generic_linkage(&Ideal::parse(&r, text).unwrap()).unwrap()
    }

    #[test]
    fn principal_link() {
        let ld = linkage("x");
        assert_eq!(ld.ring.var_names(), ["x", "y", "u11"]);
        assert_eq!(ld.generic[0].to_string(), "x*u11");
        let u = Ideal::parse(&ld.ring, "u11").unwrap();
        assert!(ld.linked.equals(&u).unwrap());
        assert!(ld.verify().unwrap().all_ok());
    }

    #[test]
    fn maximal_ideal_link() {
        let ld = linkage("x, y");
        assert_eq!(ld.height, 2);
        let det = ld.ring.parse("u11*u22 - u12*u21").unwrap();
        assert!(ld.linked.member(&det).unwrap());
        assert!(ld.verify().unwrap().all_ok());
    }

    #[test]
    fn names_and_errors() {
        assert_eq!(generic_variable_names(1, 2), ["u11", "u12"]);
        assert_eq!(generic_variable_names(1, 10)[9], "u1_10");
        let r = Ring::new(5, &["x"]).unwrap();
        assert_eq!(build_generic_linkage(&Ideal::unit(&r)).unwrap_err(), Error::ImproperIdeal);
        let empty = Ring::new(5, &[] as &[&str]).unwrap();
        assert_eq!(origin_maximal_ideal(&empty).unwrap_err(), Error::EmptyRing);
    }

    #[test]
    fn sweep_refuses_bad_primes() {
        let spec = parse_ideal_file("ring: x\ngens: 2*x").unwrap();
        let err = run_comparison(&spec, &SweepOptions::new(vec![2], 1)).unwrap_err();
        assert_eq!(err, Error::BadPrime { prime: 2, bound: 2 });
        let err = run_comparison(&spec, &SweepOptions::new(vec![], 1)).unwrap_err();
        assert!(matches!(err, Error::Config(_)));
    }

    #[test]
    fn principal_sweep() {
        let spec = parse_ideal_file("ring: x, y\ngens: x").unwrap();
        let report = run_comparison(&spec, &SweepOptions::new(vec![2, 3, 5], 1)).unwrap();
        assert!(report.success());
        assert!(report.lce_levelwise_equal());
        assert_eq!(report.rows.len(), 3);
    }
}
