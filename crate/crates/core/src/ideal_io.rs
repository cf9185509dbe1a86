//! Ideal specification files with integer coefficients, and reduction
//! modulo a prime.
//!
//! File grammar (UTF-8, `#` starts a comment):
//!
//! ```text
//! label: cusp          # optional
//! height: 1            # optional
//! ring: x, y
//! gens: x^2 + y^3      # one generator per line, or comma separated
//! ```
//!
//! Polynomials are `±c*x1^a1*...*xn^an` terms joined by `+`/`-`; the `*`
//! between a coefficient and a variable may be omitted.

use std::fmt::{self, Write as _};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{write_term, Poly, Ring};

/// A polynomial with exact integer coefficients, terms in descending grevlex
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    terms: Vec<(Monomial, i128)>,
}

impl IntPoly {
    fn from_terms(mut raw: Vec<(Monomial, i128)>) -> Result<IntPoly> {
        raw.sort_by(|a, b| MonomialOrder::Grevlex.cmp(&b.0, &a.0));
        let mut terms: Vec<(Monomial, i128)> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            match terms.last_mut() {
                Some((last, acc)) if *last == m => {
                    *acc = acc
                        .checked_add(c)
                        .ok_or_else(|| Error::Overflow("coefficient sum".into()))?;
                }
                _ => terms.push((m, c)),
            }
        }
        terms.retain(|(_, c)| *c != 0);
        Ok(IntPoly { terms })
    }

    pub fn terms(&self) -> &[(Monomial, i128)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient-wise reduction into `ring` (which fixes `p`).
    pub fn reduce(&self, ring: &Arc<Ring>) -> Poly {
        let field = ring.field();
        Poly::from_terms(
            ring,
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), field.from_i128(*c)))
                .collect(),
        )
    }

    fn write(&self, f: &mut impl fmt::Write, vars: &[String]) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_char('0');
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let magnitude = c.unsigned_abs() as i128;
            match (i, *c < 0) {
                (0, true) => f.write_char('-')?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write_term(f, vars, m.exponents(), magnitude)?;
        }
        Ok(())
    }
}

/// A parsed ideal file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerIdealSpec {
    pub variables: Vec<String>,
    pub generators: Vec<IntPoly>,
    pub label: Option<String>,
    pub expected_height: Option<usize>,
}

impl IntegerIdealSpec {
    /// Canonical text form; parses back to the same spec.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(label) = &self.label {
            let _ = writeln!(out, "label: {label}");
        }
        if let Some(h) = self.expected_height {
            let _ = writeln!(out, "height: {h}");
        }
        let _ = writeln!(out, "ring: {}", self.variables.join(", "));
        out.push_str("gens:\n");
        for g in &self.generators {
            let _ = g.write(&mut out, &self.variables);
            out.push('\n');
        }
        out
    }

    pub fn generator_text(&self, index: usize) -> String {
        let mut s = String::new();
        let _ = self.generators[index].write(&mut s, &self.variables);
        s
    }
}

/// Parses an ideal file.
pub fn parse_ideal_file(text: &str) -> Result<IntegerIdealSpec> {
    let mut variables: Option<Vec<String>> = None;
    let mut label = None;
    let mut expected_height = None;
    // (line number, column offset, text) pieces of generator text
    let mut gen_chunks: Vec<(usize, usize, String)> = Vec::new();
    let mut in_gens = false;

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        if let Some((key, value)) = header(line) {
            let value_col = line.len() - value.len() + 1;
            in_gens = false;
            match key {
                "ring" => {
                    let vars = parse_var_list(value, line_no, value_col)?;
                    variables = Some(vars);
                }
                "label" => label = Some(value.trim().to_string()),
                "height" => {
                    let h = value.trim().parse::<usize>().map_err(|_| Error::Parse {
                        line: line_no,
                        column: value_col,
                        message: "height must be a non-negative integer".into(),
                    })?;
                    expected_height = Some(h);
                }
                "gens" => {
                    in_gens = true;
                    gen_chunks.push((line_no, value_col - 1, value.to_string()));
                }
                _ => unreachable!(),
            }
            continue;
        }
        if !in_gens {
            return Err(Error::Parse {
                line: line_no,
                column: 1,
                message: "expected `ring:`, `gens:`, `label:` or `height:`".into(),
            });
        }
        gen_chunks.push((line_no, 0, line.to_string()));
    }

    let variables = variables.ok_or(Error::Parse {
        line: 1,
        column: 1,
        message: "missing `ring:` line".into(),
    })?;
    if gen_chunks.is_empty() {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            column: 1,
            message: "missing `gens:` line".into(),
        });
    }

    let mut generators = Vec::new();
    for (line_no, offset, chunk) in gen_chunks {
        let mut col = offset;
        for piece in chunk.split(',') {
            let start = col;
            col += piece.chars().count() + 1;
            if piece.trim().is_empty() {
                continue;
            }
            let poly = parse_polynomial(piece, &variables).map_err(|e| shift(e, line_no, start))?;
            if poly.is_zero() {
                return Err(Error::ZeroGenerator {
                    index: generators.len(),
                });
            }
            generators.push(poly);
        }
    }
    if generators.is_empty() {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "no generators".into(),
        });
    }
    Ok(IntegerIdealSpec {
        variables,
        generators,
        label,
        expected_height,
    })
}

fn header(line: &str) -> Option<(&str, &str)> {
    let (key, value) = line.split_once(':')?;
    let key = key.trim();
    matches!(key, "ring" | "gens" | "label" | "height").then_some((key, value))
}

fn parse_var_list(value: &str, line: usize, col: usize) -> Result<Vec<String>> {
    let mut vars: Vec<String> = Vec::new();
    for name in value.split(',') {
        let name = name.trim();
        let valid = name
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(Error::Parse {
                line,
                column: col,
                message: format!("invalid variable name `{name}`"),
            });
        }
        if vars.iter().any(|v| v == name) {
            return Err(Error::Parse {
                line,
                column: col,
                message: format!("duplicate variable `{name}`"),
            });
        }
        vars.push(name.to_string());
    }
    Ok(vars)
}

fn shift(err: Error, line: usize, col_offset: usize) -> Error {
    match err {
        Error::Parse { column, message, .. } => Error::Parse {
            line,
            column: column + col_offset,
            message,
        },
        Error::UnknownVariable { name, column, .. } => Error::UnknownVariable {
            name,
            line,
            column: column + col_offset,
        },
        other => other,
    }
}

/// Parses one polynomial with integer coefficients over `vars`.
pub fn parse_polynomial(text: &str, vars: &[String]) -> Result<IntPoly> {
    let mut parser = Parser {
        chars: text.chars().collect(),
        pos: 0,
        vars,
    };
    parser.polynomial()
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: 1,
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn polynomial(&mut self) -> Result<IntPoly> {
        let mut terms = Vec::new();
        self.skip_ws();
        let mut sign = 1i128;
        if let Some(c @ ('+' | '-')) = self.peek() {
            sign = if c == '-' { -1 } else { 1 };
            self.pos += 1;
        }
        loop {
            self.skip_ws();
            let (m, c) = self.term()?;
            terms.push((m, sign * c));
            self.skip_ws();
            match self.peek() {
                None => break,
                Some('+') => sign = 1,
                Some('-') => sign = -1,
                Some(other) => return Err(self.err(format!("unexpected `{other}`"))),
            }
            self.pos += 1;
        }
        IntPoly::from_terms(terms)
    }

    fn term(&mut self) -> Result<(Monomial, i128)> {
        let mut exps = Monomial::one(self.vars.len());
        let mut coeff: i128 = 1;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let n = self.integer()?;
                    coeff = coeff
                        .checked_mul(n)
                        .ok_or_else(|| self.err("coefficient out of range"))?;
                }
                Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                    let start = self.pos;
                    let name = self.identifier();
                    let idx = self.vars.iter().position(|v| *v == name).ok_or(
                        Error::UnknownVariable {
                            name: name.clone(),
                            line: 1,
                            column: start + 1,
                        },
                    )?;
                    self.skip_ws();
                    let mut e = 1u32;
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        self.skip_ws();
                        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                            return Err(self.err("expected exponent after `^`"));
                        }
                        let n = self.integer()?;
                        e = u32::try_from(n).map_err(|_| self.err("exponent out of range"))?;
                    }
                    let slot = &mut exps.exponents_mut()[idx];
                    *slot = slot
                        .checked_add(e)
                        .ok_or_else(|| self.err("exponent out of range"))?;
                }
                Some(c) => return Err(self.err(format!("expected a coefficient or variable, found `{c}`"))),
                None => return Err(self.err("unexpected end of input")),
            }
            self.skip_ws();
            match self.peek() {
                Some('*') => self.pos += 1,
                // implicit product: `6x`
                Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
                _ => break,
            }
        }
        Ok((exps, coeff))
    }

    fn integer(&mut self) -> Result<i128> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse::<i128>().map_err(|_| Error::Parse {
            line: 1,
            column: start + 1,
            message: "integer out of range".into(),
        })
    }

    fn identifier(&mut self) -> String {
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }
}

/// Largest prime factor over all coefficients of the generators; primes
/// above it never kill a generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BadPrimeBound(pub u64);

pub fn bad_prime_bound(spec: &IntegerIdealSpec) -> BadPrimeBound {
    BadPrimeBound(bad_primes(spec).last().copied().unwrap_or(1))
}

/// All primes dividing some coefficient, ascending.
pub fn bad_primes(spec: &IntegerIdealSpec) -> Vec<u64> {
    let mut primes = std::collections::BTreeSet::new();
    for g in &spec.generators {
        for (_, c) in g.terms() {
            let n = c.unsigned_abs();
            if n > 1 {
                primes.extend(num_prime::nt_funcs::factorize128(n).into_keys());
            }
        }
    }
    // factors above u64 cannot be used as a characteristic anyway
    primes.into_iter().map(|p| u64::try_from(p).unwrap_or(u64::MAX)).collect()
}

/// Reduces every generator modulo `p`. A generator that vanishes is an
/// error, never silently dropped.
pub fn reduce_mod_p(spec: &IntegerIdealSpec, p: u64) -> Result<Ideal> {
    let ring = Ring::new(p, &spec.variables)?;
    let mut gens = Vec::with_capacity(spec.generators.len());
    for (index, g) in spec.generators.iter().enumerate() {
        let reduced = g.reduce(&ring);
        if reduced.is_zero() {
            return Err(Error::VanishingGenerator { index, prime: p });
        }
        gens.push(reduced);
    }
    Ideal::new(&ring, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_cusp() {
        let spec = parse_ideal_file("ring: x, y\ngens: x^2 + y^3").unwrap();
        assert_eq!(spec.variables, ["x", "y"]);
        assert_eq!(spec.generators.len(), 1);
        assert_eq!(spec.generator_text(0), "y^3 + x^2");
    }

    #[test]
    fn content_and_bad_primes() {
        let spec = parse_ideal_file("ring: x\ngens: 6*x").unwrap();
        assert_eq!(bad_primes(&spec), [2, 3]);
        let spec = parse_ideal_file("ring: x\ngens: 6x").unwrap();
        assert_eq!(spec.generator_text(0), "6*x");
    }

    #[test]
    fn zero_generator_rejected() {
        assert_eq!(
            parse_ideal_file("ring: x\ngens: x - x"),
            Err(Error::ZeroGenerator { index: 0 })
        );
    }

    #[test]
    fn bad_prime_bound_examples() {
        let b = |t: &str| bad_prime_bound(&parse_ideal_file(t).unwrap()).0;
        assert_eq!(b("ring: x, y\ngens: x^2 + y^3"), 1);
        assert_eq!(b("ring: x, y\ngens: 6x, 35y"), 7);
        assert_eq!(b("ring: x, y\ngens: x + 2y"), 2);
        assert_eq!(b("ring: x\ngens: -x"), 1);
    }

    #[test]
    fn reduction_examples() {
        let spec = parse_ideal_file("ring: x, y\ngens: x^2 + y^3").unwrap();
        let i = reduce_mod_p(&spec, 5).unwrap();
        assert_eq!(i.gens()[0].to_string(), "y^3 + x^2");

        let spec = parse_ideal_file("ring: x\ngens: 6*x").unwrap();
        assert_eq!(
            reduce_mod_p(&spec, 3).unwrap_err(),
            Error::VanishingGenerator { index: 0, prime: 3 }
        );

        let spec = parse_ideal_file("ring: x, y\ngens: 7x + 3y").unwrap();
        let i = reduce_mod_p(&spec, 7).unwrap();
        assert_eq!(i.gens()[0].to_string(), "3*y");

        assert_eq!(reduce_mod_p(&spec, 9).unwrap_err(), Error::NotPrime(9));
    }

    #[test]
    fn multiline_and_comments() {
        let text = "# the maximal ideal squared\nlabel: m2\nheight: 2\nring: x, y\ngens:\n  x^2, x*y  # two here\n  y^2\n";
        let spec = parse_ideal_file(text).unwrap();
        assert_eq!(spec.generators.len(), 3);
        assert_eq!(spec.label.as_deref(), Some("m2"));
        assert_eq!(spec.expected_height, Some(2));
        assert_eq!(parse_ideal_file(&spec.to_text()).unwrap(), spec);
    }

    #[test]
    fn error_positions() {
        match parse_ideal_file("ring: x, y\ngens: x + z") {
            Err(Error::UnknownVariable { name, line, column }) => {
                assert_eq!((name.as_str(), line, column), ("z", 2, 11));
            }
            other => panic!("unexpected {other:?}"),
        }
        match parse_ideal_file("ring: x\ngens: x +* 2") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_ideal_file("gens: x"), Err(Error::Parse { .. })));
        assert!(matches!(parse_ideal_file("ring: x, x\ngens: x"), Err(Error::Parse { .. })));
    }

    #[test]
    fn negative_leading_and_implicit_products() {
        let vars = vec!["x".to_string(), "y".to_string()];
        let p = parse_polynomial("-x*y + 3x^2 - 1", &vars).unwrap();
        let mut s = String::new();
        p.write(&mut s, &vars).unwrap();
        assert_eq!(s, "3*x^2 - x*y - 1");
    }
}
