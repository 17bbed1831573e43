//! Sparse exact Laurent polynomials in the variables `x`, `s`, `q`.
//!
//! # Representation
//!
//! A polynomial is a finite map from exponent triples to nonzero
//! arbitrary-precision integer coefficients. The map is kept canonical at
//! all times — inserting a coefficient of zero removes the key — so
//! structural equality *is* polynomial equality and "identity holds" is
//! exactly "difference is the empty map".
//!
//! Exponents: `x` stays nonnegative throughout the library (nothing here
//! ever divides by `x`), while `s` and `q` range over all of ℤ — the
//! negative-index families live in `s^-n` and base-`1/q` evaluations negate
//! q-exponents.
//!
//! # Term order
//!
//! Iteration (and therefore rendering) uses a fixed deterministic order:
//! `x`-exponent descending, then `s`-exponent ascending, then `q`-exponent
//! ascending. Division internally uses a separate well-founded order; see
//! [`LaurentPoly::exact_div`].
//!
//! # Key operations
//!
//! * ring arithmetic (`+`, `-`, `*`, negation, scalar multiples, powers),
//! * [`LaurentPoly::substitute`] — homomorphic substitution with
//!   single-term targets such as `s -> qs`, `s -> s/q^n`, `q -> 1/q`,
//! * [`LaurentPoly::exact_div`] — exact division with a remainder check,
//! * canonical text rendering, e.g. `x^3 + (q^2+q)*s*x`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent triple of a single term `x^x * s^s * q^q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub x: i64,
    pub s: i64,
    pub q: i64,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, s: 0, q: 0 };

    pub fn new(x: i64, s: i64, q: i64) -> Self {
        Monomial { x, s, q }
    }

    pub fn is_constant(&self) -> bool {
        *self == Monomial::ONE
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.x + other.x, self.s + other.s, self.q + other.q)
    }

    fn pow(&self, e: i64) -> Monomial {
        Monomial::new(self.x * e, self.s * e, self.q * e)
    }
}

/// Deterministic term order used for iteration and rendering:
/// `x` descending, then `s` ascending, then `q` ascending.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .x
            .cmp(&self.x)
            .then_with(|| self.s.cmp(&other.s))
            .then_with(|| self.q.cmp(&other.q))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A single-term substitution value `coeff * x^a s^b q^e`.
///
/// Substitution targets are deliberately restricted to monomials: every
/// substitution the identity checks need has this shape, and the
/// restriction keeps [`LaurentPoly::substitute`] a total ring homomorphism
/// except for the one genuinely partial case — raising a non-unit to a
/// negative power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstTarget {
    pub coeff: BigInt,
    pub mono: Monomial,
}

impl SubstTarget {
    pub fn constant(c: i64) -> Self {
        SubstTarget {
            coeff: BigInt::from(c),
            mono: Monomial::ONE,
        }
    }

    pub fn monomial(c: i64, x: i64, s: i64, q: i64) -> Self {
        SubstTarget {
            coeff: BigInt::from(c),
            mono: Monomial::new(x, s, q),
        }
    }

    /// `(coeff * mono)^e`. Negative `e` requires `coeff` to be ±1.
    fn pow(&self, e: i64) -> Result<(BigInt, Monomial)> {
        if e == 0 {
            return Ok((BigInt::one(), Monomial::ONE));
        }
        let coeff = if e > 0 {
            let mut acc = BigInt::one();
            for _ in 0..e {
                acc *= &self.coeff;
            }
            acc
        } else if self.coeff.is_one() {
            BigInt::one()
        } else if self.coeff.magnitude().is_one() && self.coeff.is_negative() {
            if e % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            }
        } else {
            return Err(Error::NonInvertibleTarget);
        };
        Ok((coeff, self.mono.pow(e)))
    }
}

/// Replacement values for any subset of the three variables; a variable
/// without a target is left untouched.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubstMap {
    pub x: Option<SubstTarget>,
    pub s: Option<SubstTarget>,
    pub q: Option<SubstTarget>,
}

impl SubstMap {
    pub fn new() -> Self {
        SubstMap::default()
    }

    pub fn x_to(mut self, t: SubstTarget) -> Self {
        self.x = Some(t);
        self
    }

    pub fn s_to(mut self, t: SubstTarget) -> Self {
        self.s = Some(t);
        self
    }

    pub fn q_to(mut self, t: SubstTarget) -> Self {
        self.q = Some(t);
        self
    }

    /// `s -> s * q^k` (so `k = 1` is `s -> qs`, `k = -n` is `s -> s/q^n`).
    pub fn s_times_q_pow(k: i64) -> Self {
        SubstMap::new().s_to(SubstTarget::monomial(1, 0, 1, k))
    }

    /// `q -> 1/q`: negates every q-exponent.
    pub fn q_inv() -> Self {
        SubstMap::new().q_to(SubstTarget::monomial(1, 0, 0, -1))
    }

    /// `q -> 1`: the classical specialization.
    pub fn q_one() -> Self {
        SubstMap::new().q_to(SubstTarget::constant(1))
    }
}

/// Sparse Laurent polynomial over ℤ in `x`, `s`, `q`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        LaurentPoly::term(c, 0, 0, 0)
    }

    pub fn x() -> Self {
        LaurentPoly::term(1, 1, 0, 0)
    }

    pub fn s() -> Self {
        LaurentPoly::term(1, 0, 1, 0)
    }

    pub fn q() -> Self {
        LaurentPoly::term(1, 0, 0, 1)
    }

    pub fn x_pow(e: i64) -> Self {
        LaurentPoly::term(1, e, 0, 0)
    }

    pub fn s_pow(e: i64) -> Self {
        LaurentPoly::term(1, 0, e, 0)
    }

    pub fn q_pow(e: i64) -> Self {
        LaurentPoly::term(1, 0, 0, e)
    }

    /// The single term `c * x^ex s^es q^eq` (zero polynomial when `c = 0`).
    pub fn term(c: i64, ex: i64, es: i64, eq: i64) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(Monomial::new(ex, es, eq), BigInt::from(c));
        p
    }

    pub fn term_big(c: BigInt, mono: Monomial) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(mono, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in the deterministic rendering order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// Coefficient of a monomial (zero when absent).
    pub fn coeff(&self, mono: &Monomial) -> BigInt {
        self.terms.get(mono).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Canonical insertion: accumulates and drops zeros.
    pub fn add_term(&mut self, mono: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> LaurentPoly {
        self.scale(&BigInt::from(c))
    }

    /// Multiply by a single term `c * mono` (an exact, cheap shift).
    pub fn mul_term(&self, c: &BigInt, mono: &Monomial) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.mul(mono), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Per-variable minimum exponents over all terms (`None` for zero).
    pub fn min_exponents(&self) -> Option<Monomial> {
        let mut it = self.terms.keys();
        let first = *it.next()?;
        Some(it.fold(first, |acc, m| {
            Monomial::new(acc.x.min(m.x), acc.s.min(m.s), acc.q.min(m.q))
        }))
    }

    pub fn max_x_exponent(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.x).max()
    }

    pub fn min_q_exponent(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.q).min()
    }

    /// True when the polynomial involves only the variable `q`.
    pub fn is_pure_q(&self) -> bool {
        self.terms.keys().all(|m| m.x == 0 && m.s == 0)
    }

    /// Homomorphic substitution of single-term targets.
    ///
    /// Errors with [`Error::NonInvertibleTarget`] if a variable with a
    /// negative exponent is mapped to a target whose coefficient is not ±1.
    pub fn substitute(&self, map: &SubstMap) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut mono = Monomial::ONE;
            for (target, e, var) in [
                (&map.x, m.x, 0usize),
                (&map.s, m.s, 1),
                (&map.q, m.q, 2),
            ] {
                match target {
                    None => match var {
                        0 => mono.x += e,
                        1 => mono.s += e,
                        _ => mono.q += e,
                    },
                    Some(t) => {
                        let (tc, tm) = t.pow(e)?;
                        coeff *= tc;
                        mono = mono.mul(&tm);
                    }
                }
            }
            out.add_term(mono, coeff);
        }
        Ok(out)
    }

    /// Exact division: returns `c` with `divisor * c == self`, or
    /// [`Error::NonExactDivision`] if no such Laurent polynomial exists.
    ///
    /// Both operands are first shifted so every exponent is nonnegative
    /// (valuations are additive, so the quotient's offset is the difference
    /// of the operands' offsets); the shifted problem is ordinary
    /// multivariate division under ascending lexicographic order on
    /// `(x, s, q)`, which is a well-order on the shifted exponents, so the
    /// leading-term elimination below terminates. Leading monomials and
    /// leading coefficients are multiplicative over ℤ[x,s,q], so any
    /// failure of term-wise or coefficient-wise divisibility proves the
    /// division inexact rather than merely ill-ordered.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        assert!(
            !divisor.is_zero(),
            "exact_div: division by the zero polynomial"
        );
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let a_min = self.min_exponents().expect("nonzero");
        let b_min = divisor.min_exponents().expect("nonzero");

        // Lexicographic key (derived Ord on tuples is lex ascending).
        type Lex = (i64, i64, i64);
        let shift = |m: &Monomial, base: &Monomial| -> Lex {
            (m.x - base.x, m.s - base.s, m.q - base.q)
        };

        let mut rem: BTreeMap<Lex, BigInt> = self
            .terms
            .iter()
            .map(|(m, c)| (shift(m, &a_min), c.clone()))
            .collect();
        let div: Vec<(Lex, BigInt)> = divisor
            .terms
            .iter()
            .map(|(m, c)| (shift(m, &b_min), c.clone()))
            .collect();
        let (div_lead, div_lc) = div
            .iter()
            .max_by_key(|(k, _)| *k)
            .map(|(k, c)| (*k, c.clone()))
            .expect("nonzero divisor");

        let mut quot: BTreeMap<Lex, BigInt> = BTreeMap::new();
        while let Some((&lead, _)) = rem.last_key_value() {
            let lc = rem.get(&lead).expect("present").clone();
            let t = (
                lead.0 - div_lead.0,
                lead.1 - div_lead.1,
                lead.2 - div_lead.2,
            );
            if t.0 < 0 || t.1 < 0 || t.2 < 0 || !(&lc % &div_lc).is_zero() {
                return Err(Error::NonExactDivision);
            }
            let tc = &lc / &div_lc;
            for (dk, dc) in &div {
                let key = (dk.0 + t.0, dk.1 + t.1, dk.2 + t.2);
                let delta = dc * &tc;
                let entry = rem.entry(key).or_insert_with(BigInt::zero);
                *entry -= delta;
                if entry.is_zero() {
                    rem.remove(&key);
                }
            }
            quot.insert(t, tc);
        }

        let offset = Monomial::new(a_min.x - b_min.x, a_min.s - b_min.s, a_min.q - b_min.q);
        let mut out = LaurentPoly::zero();
        for (k, c) in quot {
            out.add_term(
                Monomial::new(k.0 + offset.x, k.1 + offset.s, k.2 + offset.q),
                c,
            );
        }
        Ok(out)
    }

    /// Canonical rendering truncated to `max_terms` top-level terms; the
    /// remainder is summarised. Used for counterexample reports.
    pub fn render_truncated(&self, max_terms: usize) -> String {
        self.render_limit(max_terms)
    }

    fn render_limit(&self, max_terms: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        // Each rendered term: (is_negative, body).
        let mut rendered: Vec<(bool, String)> = Vec::new();
        let terms: Vec<(&Monomial, &BigInt)> = self.terms.iter().collect();
        let mut i = 0;
        while i < terms.len() {
            let (m, _) = terms[i];
            if m.x == 0 && m.s == 0 {
                // Pure-q terms stay top-level, in map order.
                let (m, c) = terms[i];
                rendered.push((c.is_negative(), power_product(&c.abs(), m)));
                i += 1;
            } else {
                let mut j = i;
                while j < terms.len() && terms[j].0.x == m.x && terms[j].0.s == m.s {
                    j += 1;
                }
                let group = &terms[i..j];
                if group.len() == 1 {
                    let (m, c) = group[0];
                    rendered.push((c.is_negative(), power_product(&c.abs(), m)));
                } else {
                    // Multi-term q-coefficient: parenthesised, q descending,
                    // overall sign taken from the leading (highest-q) term.
                    let lead_negative = group.last().expect("nonempty").1.is_negative();
                    let mut inner = String::new();
                    for (k, (gm, gc)) in group.iter().rev().enumerate() {
                        let c = if lead_negative {
                            -(*gc).clone()
                        } else {
                            (*gc).clone()
                        };
                        if k == 0 {
                            // Leading coefficient is positive by construction.
                        } else if c.is_negative() {
                            inner.push('-');
                        } else {
                            inner.push('+');
                        }
                        inner.push_str(&coeff_q_power(&c.abs(), gm.q));
                    }
                    let mut body = format!("({inner})");
                    let tail = power_product(&BigInt::one(), &Monomial::new(m.x, m.s, 0));
                    if tail != "1" {
                        body.push('*');
                        body.push_str(&tail);
                    }
                    rendered.push((lead_negative, body));
                }
                i = j;
            }
        }

        let shown = rendered.len().min(max_terms);
        let mut out = String::new();
        for (k, (neg, body)) in rendered.iter().take(shown).enumerate() {
            if k == 0 {
                if *neg {
                    out.push('-');
                }
            } else if *neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(body);
        }
        if rendered.len() > shown {
            out.push_str(&format!(" + ... ({} more terms)", rendered.len() - shown));
        }
        out
    }
}

/// `coeff * q^e` with the conventions used inside parenthesised groups:
/// the coefficient is omitted when it is 1 and a power is present.
fn coeff_q_power(c: &BigInt, e: i64) -> String {
    if e == 0 {
        return c.to_string();
    }
    let q = var_power("q", e);
    if c.is_one() {
        q
    } else {
        format!("{c}*{q}")
    }
}

/// `|c| * q^eq * s^es * x^ex` as a `*`-joined product, omitting unit
/// factors; the empty product renders as `1`.
fn power_product(c: &BigInt, m: &Monomial) -> String {
    let mut parts: Vec<String> = Vec::new();
    if !c.is_one() {
        parts.push(c.to_string());
    }
    if m.q != 0 {
        parts.push(var_power("q", m.q));
    }
    if m.s != 0 {
        parts.push(var_power("s", m.s));
    }
    if m.x != 0 {
        parts.push(var_power("x", m.x));
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn var_power(name: &str, e: i64) -> String {
    if e == 1 {
        name.to_string()
    } else {
        format!("{name}^{e}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_limit(usize::MAX))
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (am, ac) in &self.terms {
            for (bm, bc) in &rhs.terms {
                out.add_term(am.mul(bm), ac * bc);
            }
        }
        out
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
        impl $trait<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
