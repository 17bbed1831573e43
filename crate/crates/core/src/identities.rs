//! Registry and runner for the library's machine-checked identities.
//!
//! Every check reduces both sides of an identity to canonical form —
//! [`LaurentPoly`] for polynomial identities, [`QSeries`] to a stated
//! order for series identities — and compares. A check never derives one
//! side from the other; wherever a family member appears on both sides it
//! is constructed through routes that share no algebra (explicit sum vs
//! recurrence vs enumeration vs operator image).
//!
//! The registry is closed: each identity id (`eq3.1`, `cor5.6`,
//! `classical.q1`, ...) maps to exactly one parameterized check with a
//! declared default grid, and unknown ids are rejected up front. Grids can
//! be tightened or widened per run through [`GridOpts`]; a handful of
//! enumeration-backed checks carry hard caps that the options cannot
//! exceed.
//!
//! Reports are deterministic apart from their timings, and the runner is
//! falsifiable by construction: a deliberately perturbed input produces a
//! `fail` report carrying the rendered nonzero difference.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use crate::bailey::{
    bailey_pair, bailey_relation_diff, corollary_diff, lucas_star_at, master_formula_diff,
    pentagonal_diff, vandermonde_finite_diff, vandermonde_limit_diff, BaileyPairId,
};
use crate::fiblucas::{
    circular_sum, classical_fib, classical_lucas, family_by_operator, fib, fib_by_recurrence,
    lucas, morse_sum, special_value, FamilyKind, FibRecurrence, SpecialValueSpec, MORSE_BOUND,
};
use crate::poly::{LaurentPoly, Monomial, SubstMap, SubstTarget};
use crate::qfun::{binomial, choose2, q_binomial, q_catalan, q_derivative, q_int, rogers_szego};

/// Named integer parameters of one check instance, in display order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params(pub Vec<(&'static str, i64)>);

impl Params {
    pub fn new() -> Self {
        Params(Vec::new())
    }

    pub fn with(mut self, name: &'static str, value: i64) -> Self {
        self.0.push((name, value));
        self
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, value)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{name}={value}")?;
        }
        Ok(())
    }
}

/// Outcome of one check instance.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub id: String,
    pub params: Params,
    pub pass: bool,
    /// Rendered `LHS - RHS` when the check failed.
    pub counterexample: Option<String>,
    pub elapsed: Duration,
}

/// Per-run overrides for the registry's default parameter grids.
#[derive(Clone, Debug, Default)]
pub struct GridOpts {
    /// Replaces the upper end of the primary index grid (hard caps on
    /// enumeration-backed checks still apply). For the shift identity
    /// whose grid is an `m`-range, this bounds `|m|`.
    pub max_n: Option<i64>,
    /// Replaces the list of shift values `m` where one applies.
    pub m_values: Option<Vec<i64>>,
    /// Replaces the series truncation order where one applies.
    pub order: Option<usize>,
}

/// One registry entry: a stable id, a one-line description, the default
/// grid in human-readable form, whether the check evaluates at `x = 1`,
/// and the runner.
pub struct IdentityInfo {
    pub id: &'static str,
    pub summary: &'static str,
    pub grid: &'static str,
    pub x_at_one: bool,
    pub run: fn(&GridOpts) -> Vec<IdentityReport>,
}

impl IdentityInfo {
    pub fn run(&self, opts: &GridOpts) -> Vec<IdentityReport> {
        (self.run)(opts)
    }
}

/// The closed list of registered identities, in fixed report order.
pub fn registry() -> &'static [IdentityInfo] {
    REGISTRY
}

/// Look up a registry entry by id.
pub fn find(id: &str) -> Option<&'static IdentityInfo> {
    REGISTRY.iter().find(|info| info.id == id)
}

fn end(opts: &GridOpts, default: i64, cap: Option<i64>) -> i64 {
    let e = opts.max_n.unwrap_or(default);
    match cap {
        Some(c) => e.min(c),
        None => e,
    }
}

fn m_list(opts: &GridOpts, default: &[i64]) -> Vec<i64> {
    opts.m_values.clone().unwrap_or_else(|| default.to_vec())
}

fn series_order(opts: &GridOpts, default: usize) -> usize {
    opts.order.unwrap_or(default)
}

fn poly_report(
    id: &str,
    params: Params,
    t0: Instant,
    lhs: &LaurentPoly,
    rhs: &LaurentPoly,
) -> IdentityReport {
    let diff = lhs - rhs;
    IdentityReport {
        id: id.to_string(),
        params,
        pass: diff.is_zero(),
        counterexample: if diff.is_zero() {
            None
        } else {
            Some(diff.render_truncated(20))
        },
        elapsed: t0.elapsed(),
    }
}

fn outcome_report(
    id: &str,
    params: Params,
    t0: Instant,
    diff: Option<String>,
) -> IdentityReport {
    IdentityReport {
        id: id.to_string(),
        params,
        pass: diff.is_none(),
        counterexample: diff,
        elapsed: t0.elapsed(),
    }
}

fn one() -> BigInt {
    BigInt::from(1)
}

/// `x -> 1`.
fn at_x_one() -> SubstMap {
    SubstMap::new().x_to(SubstTarget::constant(1))
}

/// `s -> -s`.
fn s_negated() -> SubstMap {
    SubstMap::new().s_to(SubstTarget::monomial(-1, 0, 1, 0))
}

fn fib_at_one(n: i64) -> LaurentPoly {
    fib(n).substitute(&at_x_one()).expect("unit substitution")
}

fn lucas_at_one(n: i64) -> LaurentPoly {
    lucas(n, false)
        .substitute(&at_x_one())
        .expect("unit substitution")
}

/// `(-1)^k` as a BigInt sign.
fn alt_sign(k: i64) -> BigInt {
    if k.rem_euclid(2) == 0 {
        one()
    } else {
        -one()
    }
}

// ---------------------------------------------------------------------------
// eq1.*: product expansion and the Rogers-Szego recurrence.

fn run_eq1_8(opts: &GridOpts) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    for n in 0..=end(opts, 20, None) {
        let t0 = Instant::now();
        let mut product = LaurentPoly::one();
        for j in 0..n {
            let mut factor = LaurentPoly::x();
            factor.add_term(Monomial::new(0, 1, j), one());
            product = &product * &factor;
        }
        let mut sum = LaurentPoly::zero();
        for k in 0..=n {
            sum += &q_binomial(n, k).mul_term(&one(), &Monomial::new(n - k, k, choose2(k)));
        }
        out.push(poly_report(
            "eq1.8",
            Params::new().with("n", n),
            t0,
            &product,
            &sum,
        ));
    }
    out
}

fn run_eq1_10(opts: &GridOpts) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    for n in 2..=end(opts, 20, None) {
        let t0 = Instant::now();
        let lhs = rogers_szego(n);
        let x_plus_s = &LaurentPoly::x() + &LaurentPoly::s();
        let mut weight = LaurentPoly::term(1, 1, 1, n - 1);
        weight.add_term(Monomial::new(1, 1, 0), -one());
        let rhs = &(&x_plus_s * &rogers_szego(n - 1)) + &(&weight * &rogers_szego(n - 2));
        out.push(poly_report(
            "eq1.10",
            Params::new().with("n", n),
            t0,
            &lhs,
            &rhs,
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// eq2.* plus `circular` and `dlucas`: family constructions and recurrences.

fn run_fib_recurrence(id: &'static str, rule: FibRecurrence, opts: &GridOpts) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    for n in 0..=end(opts, 30, None) {
        let t0 = Instant::now();
        let lhs = fib_by_recurrence(n, rule);
        let rhs = fib(n);
        out.push(poly_report(id, Params::new().with("n", n), t0, &lhs, &rhs));
    }
    out
}

fn run_eq2_2(opts: &GridOpts) -> Vec<IdentityReport> {
    run_fib_recurrence("eq2.2", FibRecurrence::UpscaleS, opts)
}

fn run_eq2_3(opts: &GridOpts) -> Vec<IdentityReport> {
    run_fib_recurrence("eq2.3", FibRecurrence::DownscaleS, opts)
}

fn run_eq2_4(opts: &GridOpts) -> Vec<IdentityReport> {
    run_fib_recurrence("eq2.4", FibRecurrence::FourTerm, opts)
}

fn run_eq2_5(opts: &GridOpts) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    for n in 2..=end(opts, 20, None) {
        let t0 = Instant::now();
        let lhs = &(&fib(n) - &(&LaurentPoly::x() * &fib(n - 1)))
            - &fib(n - 2).mul_term(&one(), &Monomial::new(0, 1, 0));
        let mut rhs = LaurentPoly::zero();
        for k in 1..=n / 2 {
            let mut weight = LaurentPoly::term_big(
                alt_sign(k),
                Monomial::new(0, k, (k - 1) * (n - k)),
            );
            weight = &weight
                - &LaurentPoly::term_big(alt_sign(k), Monomial::new(0, k, (k - 1) * (n - k) + n - 2 * k));
            rhs += &(&weight * &fib(n - 2 * k));
        }
        out.push(poly_report("eq2.5", Params::new().with("n", n), t0, &lhs, &rhs));
    }
    out
}

fn run_eq2_7(opts: &GridOpts) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    for n in 1..=end(opts, 14, Some(MORSE_BOUND)) {
        let t0 = Instant::now();
        let lhs = morse_sum(n).expect("within enumeration bound");
        let rhs = fib(n);
        out.push(poly_report("eq2.7", Params::new().with("n", n), t0, &lhs, &rhs));
    }
    out
}

fn run_eq2_8(opts: &GridOpts) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    for n in 0..=end(opts, 30, None) {
        let t0 = Instant::now();
        let lhs = family_by_operator(FamilyKind::Fib, n);
        let rhs = fib(n);
        out.push(poly_report("eq2.8", Params::new().with("n", n), t0, &lhs, &rhs));
    }
    out
}

fn run_eq2_9(opts: &GridOpts) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    for n in 2..=end(opts, 20, None) {
        let t0 = Instant::now();
        let lhs = fib(n);
        let rhs = three_term_with_derivative(&fib(n - 1), &fib(n - 2));
        out.push(poly_report("eq2.9", Params::new().with("n", n), t0, &lhs, &rhs));
    }
    out
}

/// `x·p + (q-1)·s·Dp + s·r` — the corrected three-term step shared by the
/// Fibonacci and Lucas families.
fn three_term_with_derivative(p: &LaurentPoly, r: &LaurentPoly) -> LaurentPoly {
    let mut qm1s = LaurentPoly::term(1, 0, 1, 1);
    qm1s.add_term(Monomial::new(0, 1, 0), -one());
    let mut rhs = &LaurentPoly::x() * p;
    rhs += &(&qm1s * &q_derivative(p));
    rhs += &r.mul_term(&one(), &Monomial::new(0, 1, 0));
    rhs
}

fn run_eq2_10(opts: &GridOpts) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    for n in 0..=end(opts, 25, None) {
        let t0 = Instant::now();
        let lhs = family_by_operator(FamilyKind::Lucas, n);
        let rhs = lucas(n, false);
        out.push(poly_report("eq2.10", Params::new().with("n", n), t0, &lhs, &rhs));
    }
    out
}

fn run_eq2_12(opts: &GridOpts) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    for n in -10..=end(opts, 25, None) {
        let t0 = Instant::now();
        let lhs = lucas(n, false);
        let rhs = &fib(n + 1) + &fib(n - 1).mul_term(&one(), &Monomial::new(0, 1, 0));
        out.push(poly_report("eq2.12", Params::new().with("n", n), t0, &lhs, &rhs));
    }
    out
}

fn run_eq2_13(opts: &GridOpts) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    for n in 1..=end(opts, 25, None) {
        let t0 = Instant::now();
        let lhs = lucas(n, false);
        // Independent route: the coefficient of s^k x^(n-2k) computed as
        // ([n]·[n-k, k]) / [n-k] by literal exact division.
        let mut rhs = LaurentPoly::zero();
        let mut division_failure = None;
        for k in 0..=n / 2 {
            let numerator = &q_int(n) * &q_binomial(n - k, k);
            match numerator.exact_div(&q_int(n - k)) {
                Ok(coeff) => {
                    rhs += &coeff.mul_term(&one(), &Monomial::new(n - 2 * k, k, choose2(k)));
                }
                Err(_) => {
                    division_failure =
                        Some(format!("[{n}]·[{}, {k}] is not divisible by [{}]", n - k, n - k));
                    break;
                }
            }
        }
        let params = Params::new().with("n", n);
        match division_failure {
            Some(msg) => out.push(outcome_report("eq2.13", params, t0, Some(msg))),
            None => out.push(poly_report("eq2.13", params, t0, &lhs, &rhs)),
        }
    }
    out
}

fn run_eq2_14(opts: &GridOpts) -> Vec<IdentityReport> {
    let up = SubstMap::s_times_q_pow(1);
    let mut out = Vec::new();
    for n in -10..=end(opts, 25, None) {
        let t0 = Instant::now();
        let lhs = lucas(n, false).substitute(&up).expect("unit substitution");
        let rhs = &fib(n + 1) + &fib(n - 1).mul_term(&one(), &Monomial::new(0, 1, n));
        out.push(poly_report("eq2.14", Params::new().with("n", n), t0, &lhs, &rhs));
    }
    out
}

fn run_eq2_15(opts: &GridOpts) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    for n in 2..=end(opts, 25, None) {
        let t0 = Instant::now();
        let lhs = lucas(n, false);
        let rhs = three_term_with_derivative(&lucas(n - 1, false), &lucas(n - 2, false));
        out.push(poly_report("eq2.15", Params::new().with("n", n), t0, &lhs, &rhs));
    }
    out
}

fn run_eq2_16(opts: &GridOpts) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    for n in 3..=end(opts, 25, None) {
        let t0 = Instant::now();
        let lhs = &(&lucas(n, true) - &(&LaurentPoly::x() * &lucas(n - 1, true)))
            - &lucas(n - 2, true).mul_term(&one(), &Monomial::new(0, 1, 0));
        let mut sum = LaurentPoly::zero();
        for k in 1..=n / 2 {
            sum += &lucas(n - 2 * k, true).mul_term(
                &alt_sign(k),
                &Monomial::new(0, k, (k - 1) * (n - k - 1)),
            );
        }
        let mut front = LaurentPoly::one();
        front.add_term(Monomial::new(0, 0, n - 1), -one());
        let rhs = &front * &sum;
        out.push(poly_report("eq2.16", Params::new().with("n", n), t0, &lhs, &rhs));
    }
    out
}

fn run_eq2_17(opts: &GridOpts) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    for n in 4..=end(opts, 25, None) {
        let t0 = Instant::now();
        // Cleared of the [n-3] denominators: multiply both sides through.
        let lhs = &q_int(n - 3) * &lucas(n, false);
        let mut rhs = &q_int(n - 3) * &(&LaurentPoly::x() * &lucas(n - 1, false));
        let mut one_plus_q = LaurentPoly::one();
        one_plus_q.add_term(Monomial::new(0, 0, 1), one());
        rhs = &rhs
            - &(&one_plus_q * &lucas(n - 2, false)).mul_term(&one(), &Monomial::new(0, 1, n - 3));
        rhs += &(&q_int(n - 1) * &lucas(n - 3, false))
            .mul_term(&one(), &Monomial::new(1, 1, n - 3));
        rhs += &(&q_int(n - 1) * &lucas(n - 4, false))
            .mul_term(&one(), &Monomial::new(0, 2, n - 3));
        out.push(poly_report("eq2.17", Params::new().with("n", n), t0, &lhs, &rhs));
    }
    out
}

fn run_circular(opts: &GridOpts) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    for n in 1..=end(opts, MORSE_BOUND, Some(MORSE_BOUND)) {
        let t0 = Instant::now();
        let lhs = circular_sum(n).expect("within enumeration bound");
        let rhs = lucas(n, false);
        out.push(poly_report("circular", Params::new().with("n", n), t0, &lhs, &rhs));
    }
    out
}

fn run_dlucas(opts: &GridOpts) -> Vec<IdentityReport> {
    let down = SubstMap::s_times_q_pow(-1);
    let mut out = Vec::new();
    for n in 1..=end(opts, 25, None) {
        let t0 = Instant::now();
        let lhs = q_derivative(&lucas(n, false));
        let rhs = &q_int(n) * &fib(n).substitute(&down).expect("unit substitution");
        out.push(poly_report("dlucas", Params::new().with("n", n), t0, &lhs, &rhs));
    }
    out
}

// ---------------------------------------------------------------------------
// eq3.*: basis inversions, negative-index coherence, the Hermite
// expansion, and the Catalan sums.

fn run_eq3_1(opts: &GridOpts) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    for n in 0..=end(opts, 25, None) {
        let t0 = Instant::now();
        let mut lhs = LaurentPoly::zero();
        for k in 0..=n / 2 {
            lhs += &(&q_binomial(n, k) * &lucas(n - 2 * k, true))
                .mul_term(&alt_sign(k), &Monomial::new(0, k, 0));
        }
        let rhs = LaurentPoly::x_pow(n);
        out.push(poly_report("eq3.1", Params::new().with("n", n), t0, &lhs, &rhs));
    }
    out
}

fn run_eq3_2(opts: &GridOpts) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    for n in 0..=end(opts, 25, None) {
        let t0 = Instant::now();
        let mut lhs = LaurentPoly::zero();
        for k in 0..=(n + 1) / 2 {
            let weight = &q_binomial(n, k) - &q_binomial(n, k - 1);
            lhs += &(&weight * &fib(n + 1 - 2 * k)).mul_term(&alt_sign(k), &Monomial::new(0, k, 0));
        }
        let rhs = LaurentPoly::x_pow(n);
        out.push(poly_report("eq3.2", Params::new().with("n", n), t0, &lhs, &rhs));
    }
    out
}

/// `F_(k-1), F_(k-2), ...` obtained by running the s-upscaling recurrence
/// backwards from `F_1 = 1, F_0 = 0`: the recurrence solved for its lowest
/// term gives `F_(k-1)(x, s) = (F_(k+1)(x, s/q) - x F_k(x, s)) / s`.
/// Returns `F_0, F_(-1), ..., F_(-depth)`.
fn backward_fibs(depth: i64) -> Vec<LaurentPoly> {
    let down = SubstMap::s_times_q_pow(-1);
    let mut hi = LaurentPoly::one(); // F_(k+1), starting at F_1
    let mut lo = LaurentPoly::zero(); // F_k, starting at F_0
    let mut out = vec![lo.clone()];
    for _ in 0..depth {
        let stepped = &hi.substitute(&down).expect("unit substitution")
            - &(&LaurentPoly::x() * &lo);
        let next = stepped.mul_term(&one(), &Monomial::new(0, -1, 0));
        out.push(next.clone());
        hi = lo;
        lo = next;
    }
    out
}

fn run_eq3_8(opts: &GridOpts) -> Vec<IdentityReport> {
    let depth = end(opts, 10, None);
    let fibs = backward_fibs(depth + 1);
    let mut out = Vec::new();
    for n in 1..=depth {
        let t0 = Instant::now();
        // L_(-n) assembled from backward-recurrence Fibonacci values via
        // the decomposition L_m = F_(m+1) + s F_(m-1).
        let lhs = &fibs[(n - 1) as usize]
            + &fibs[(n + 1) as usize].mul_term(&one(), &Monomial::new(0, 1, 0));
        let rhs = lucas(-n, false);
        out.push(poly_report("eq3.8", Params::new().with("n", -n), t0, &lhs, &rhs));
    }
    out
}

fn run_eq3_9(opts: &GridOpts) -> Vec<IdentityReport> {
    let depth = end(opts, 10, None);
    let fibs = backward_fibs(depth);
    let mut out = Vec::new();
    for n in 1..=depth {
        let t0 = Instant::now();
        let lhs = fibs[n as usize].clone();
        let rhs = fib(-n);
        out.push(poly_report("eq3.9", Params::new().with("n", -n), t0, &lhs, &rhs));
    }
    out
}

fn run_eq3_11(opts: &GridOpts) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    // (q-1)s, the rescaled second Hermite argument.
    let mut qm1s = LaurentPoly::term(1, 0, 1, 1);
    qm1s.add_term(Monomial::new(0, 1, 0), -one());
    let flip = s_negated();
    let n_end = end(opts, 16, None);
    let mut h = LaurentPoly::one();
    for n in 0..=n_end {
        let t0 = Instant::now();
        let lhs = h.clone();
        let mut failure = None;

        let mut lucas_side = LaurentPoly::zero();
        for k in 0..=n / 2 {
            let value = lucas(n - 2 * k, true).substitute(&flip).expect("unit");
            lucas_side += &value.mul_term(&binomial(n, k), &Monomial::new(0, k, 0));
        }
        let diff = &lhs - &lucas_side;
        if !diff.is_zero() {
            failure = Some(format!("Lucas-star expansion: {}", diff.render_truncated(20)));
        }

        if failure.is_none() {
            let mut fib_side = LaurentPoly::zero();
            for k in 0..=(n + 1) / 2 {
                let weight = binomial(n, k) - binomial(n, k - 1);
                let value = fib(n + 1 - 2 * k).substitute(&flip).expect("unit");
                fib_side += &value.mul_term(&weight, &Monomial::new(0, k, 0));
            }
            let diff = &lhs - &fib_side;
            if !diff.is_zero() {
                failure = Some(format!("Fibonacci expansion: {}", diff.render_truncated(20)));
            }
        }

        out.push(outcome_report("eq3.11", Params::new().with("n", n), t0, failure));
        // Advance the operator iterate (x - (q-1) s D)^n applied to 1.
        h = &(&LaurentPoly::x() * &h) - &(&qm1s * &q_derivative(&h));
    }
    out
}

fn run_eq3_12(opts: &GridOpts) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    for n in 0..=end(opts, 15, None) {
        let t0 = Instant::now();
        let mut lhs = LaurentPoly::zero();
        for k in 0..=n {
            lhs += &(&q_binomial(2 * n - k, k) * &q_catalan(n - k))
                .mul_term(&alt_sign(k), &Monomial::new(0, 0, choose2(k)));
        }
        let rhs = if n == 0 {
            LaurentPoly::one()
        } else {
            LaurentPoly::zero()
        };
        out.push(poly_report("eq3.12", Params::new().with("n", n), t0, &lhs, &rhs));
    }
    out
}

fn run_eq3_13(opts: &GridOpts) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    for n in 1..=end(opts, 15, None) {
        let t0 = Instant::now();
        let mut lhs = LaurentPoly::zero();
        for k in 0..=n {
            let mut weight =
                q_binomial(2 * n - k, k).mul_term(&one(), &Monomial::new(0, 0, k));
            weight += &q_binomial(2 * n - k - 1, k - 1);
            lhs += &(&weight * &q_binomial(2 * n - 2 * k, n - k))
                .mul_term(&alt_sign(k), &Monomial::new(0, 0, choose2(k)));
        }
        out.push(poly_report(
            "eq3.13",
            Params::new().with("n", n),
            t0,
            &lhs,
            &LaurentPoly::zero(),
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// eq4.*: Rogers-Szego expansions and shift identities at x = 1. The
// second variable `y` of the two-variable identities lives in the
// s-exponent slot.

fn run_eq4_3(opts: &GridOpts) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    for n in 0..=end(opts, 20, None) {
        let t0 = Instant::now();
        let mut lhs = LaurentPoly::zero();
        for i in 0..n {
            lhs.add_term(Monomial::new(i, n - 1 - i, 0), one());
        }
        let mut rhs = LaurentPoly::zero();
        for k in 0..=(n - 1).div_euclid(2) {
            // (-xy)^k = (-1)^k x^k y^k with y in the s-slot.
            rhs += &(&q_binomial(n - k - 1, k) * &rogers_szego(n - 1 - 2 * k))
                .mul_term(&alt_sign(k), &Monomial::new(k, k, choose2(k + 1)));
        }
        out.push(poly_report("eq4.3", Params::new().with("n", n), t0, &lhs, &rhs));
    }
    out
}

fn run_eq4_4(opts: &GridOpts) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    for n in 1..=end(opts, 20, None) {
        let t0 = Instant::now();
        let mut lhs = LaurentPoly::x_pow(n);
        lhs.add_term(Monomial::new(0, n, 0), one());
        let mut rhs = LaurentPoly::zero();
        for k in 0..=n / 2 {
            let mut weight =
                q_binomial(n - k, k).mul_term(&one(), &Monomial::new(0, 0, k));
            weight += &q_binomial(n - k - 1, k - 1);
            rhs += &(&weight * &rogers_szego(n - 2 * k))
                .mul_term(&alt_sign(k), &Monomial::new(k, k, choose2(k)));
        }
        out.push(poly_report("eq4.4", Params::new().with("n", n), t0, &lhs, &rhs));
    }
    out
}

fn run_eq4_5(opts: &GridOpts) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    let n_end = end(opts, 20, None);
    for n in 0..=n_end {
        for k in 0..=n {
            let t0 = Instant::now();
            let mut lhs = LaurentPoly::zero();
            for j in 0..=k {
                lhs += &(&q_binomial(k, j) * &q_binomial(n - j, k))
                    .mul_term(&alt_sign(j), &Monomial::new(0, 0, choose2(j + 1)));
            }
            out.push(poly_report(
                "eq4.5",
                Params::new().with("n", n).with("k", k),
                t0,
                &lhs,
                &LaurentPoly::one(),
            ));
        }
    }
    out
}

fn run_eq4_7(opts: &GridOpts) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    let n_end = end(opts, 12, None);
    let ms = m_list(opts, &[-6, -5, -4, -3, -2, -1, 0, 1, 2, 3, 4, 5, 6]);
    for n in 0..=n_end {
        for &m in &ms {
            let t0 = Instant::now();
            let mut lhs = LaurentPoly::zero();
            for k in 0..=n {
                lhs += &(&q_binomial(n, k) * &fib_at_one(2 * n + m - k))
                    .mul_term(&alt_sign(k), &Monomial::new(0, 0, choose2(k)));
            }
            let shifted = fib(m)
                .substitute(
                    &SubstMap::new()
                        .x_to(SubstTarget::constant(1))
                        .s_to(SubstTarget::monomial(1, 0, 1, -n)),
                )
                .expect("unit substitution");
            let rhs = shifted.mul_term(&one(), &Monomial::new(0, n, choose2(n) + m * n));
            out.push(poly_report(
                "eq4.7",
                Params::new().with("n", n).with("m", m),
                t0,
                &lhs,
                &rhs,
            ));
        }
    }
    out
}

fn run_eq4_8(opts: &GridOpts) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    for n in 0..=end(opts, 15, None) {
        let t0 = Instant::now();
        let mut lhs = LaurentPoly::zero();
        for k in 0..=n {
            lhs += &(&q_binomial(n, k) * &fib_at_one(2 * n - k))
                .mul_term(&alt_sign(k), &Monomial::new(0, 0, choose2(k)));
        }
        out.push(poly_report(
            "eq4.8",
            Params::new().with("n", n),
            t0,
            &lhs,
            &LaurentPoly::zero(),
        ));
    }
    out
}

fn run_eq4_9(opts: &GridOpts) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    let bound = end(opts, 15, None);
    let default: Vec<i64> = (-bound..=bound).collect();
    let ms = m_list(opts, &default);
    for m in ms {
        let t0 = Instant::now();
        let lhs = &fib_at_one(m + 2) - &fib_at_one(m + 1);
        let shifted = fib(m)
            .substitute(
                &SubstMap::new()
                    .x_to(SubstTarget::constant(1))
                    .s_to(SubstTarget::monomial(1, 0, 1, -1)),
            )
            .expect("unit substitution");
        let rhs = shifted.mul_term(&one(), &Monomial::new(0, 1, m));
        out.push(poly_report("eq4.9", Params::new().with("m", m), t0, &lhs, &rhs));
    }
    out
}

fn run_eq4_13(opts: &GridOpts) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    for n in 1..=end(opts, 15, None) {
        let t0 = Instant::now();
        let mut lhs = LaurentPoly::zero();
        for k in 0..=n {
            let mut weight =
                q_binomial(n, k).mul_term(&one(), &Monomial::new(0, 0, n - 1));
            weight += &q_binomial(n - 1, k);
            lhs += &(&weight * &lucas_at_one(2 * n - 1 - k))
                .mul_term(&alt_sign(k), &Monomial::new(0, 0, choose2(k)));
        }
        out.push(poly_report(
            "eq4.13",
            Params::new().with("n", n),
            t0,
            &lhs,
            &LaurentPoly::zero(),
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// eq5.* and cor5.*: symbolic expansions, Bailey pairs, master formulas,
// value tables, and the sum-product identities.

fn run_eq5_2(opts: &GridOpts) -> Vec<IdentityReport> {
    let flip = s_negated();
    let mut out = Vec::new();
    for n in 0..=end(opts, 12, None) {
        let t0 = Instant::now();
        let mut lhs = LaurentPoly::zero();
        for k in 0..=n {
            let value = lucas(2 * k, true).substitute(&flip).expect("unit");
            lhs += &(&q_binomial(2 * n, n - k) * &value)
                .mul_term(&one(), &Monomial::new(0, n - k, 0));
        }
        let rhs = LaurentPoly::x_pow(2 * n);
        out.push(poly_report("eq5.2", Params::new().with("n", n), t0, &lhs, &rhs));
    }
    out
}

fn run_eq5_3(opts: &GridOpts) -> Vec<IdentityReport> {
    let flip = s_negated();
    let mut out = Vec::new();
    for n in 0..=end(opts, 12, None) {
        let t0 = Instant::now();
        let mut lhs = LaurentPoly::zero();
        for k in 0..=n {
            let value = lucas(2 * k + 1, true).substitute(&flip).expect("unit");
            lhs += &(&q_binomial(2 * n + 1, n - k) * &value)
                .mul_term(&one(), &Monomial::new(0, n - k, 0));
        }
        let rhs = LaurentPoly::x_pow(2 * n + 1);
        out.push(poly_report("eq5.3", Params::new().with("n", n), t0, &lhs, &rhs));
    }
    out
}

fn run_bailey(id: &'static str, pair_id: BaileyPairId, opts: &GridOpts) -> Vec<IdentityReport> {
    let n_end = end(opts, 10, None);
    let order = series_order(opts, 60);
    let mut out = Vec::new();
    for s_inverted in [false, true] {
        let pair = bailey_pair(pair_id, s_inverted);
        for n in 0..=n_end {
            let t0 = Instant::now();
            let diff = bailey_relation_diff(&pair, n, order);
            out.push(outcome_report(
                id,
                Params::new()
                    .with("n", n)
                    .with("s_inv", i64::from(s_inverted))
                    .with("order", order as i64),
                t0,
                diff,
            ));
        }
    }
    out
}

fn run_eq5_4(opts: &GridOpts) -> Vec<IdentityReport> {
    run_bailey("eq5.4", BaileyPairId::EvenBase, opts)
}

fn run_eq5_5(opts: &GridOpts) -> Vec<IdentityReport> {
    run_bailey("eq5.5", BaileyPairId::OddBase, opts)
}

fn run_eq5_6(opts: &GridOpts) -> Vec<IdentityReport> {
    run_bailey("eq5.6", BaileyPairId::EvenInverted, opts)
}

fn run_eq5_7(opts: &GridOpts) -> Vec<IdentityReport> {
    run_bailey("eq5.7", BaileyPairId::OddInverted, opts)
}

fn run_eq5_9(opts: &GridOpts) -> Vec<IdentityReport> {
    let n_end = end(opts, 10, None);
    let order = series_order(opts, 60);
    let mut out = Vec::new();
    for n in 0..=n_end {
        for i in 0..=(n / 2).min(3) {
            for k in 0..=n.min(3) {
                let t0 = Instant::now();
                let diff = vandermonde_finite_diff(n, i, k);
                out.push(outcome_report(
                    "eq5.9",
                    Params::new().with("n", n).with("i", i).with("k", k),
                    t0,
                    diff,
                ));
            }
        }
    }
    for i in 0..=3 {
        for k in 0..=3 {
            let t0 = Instant::now();
            let diff = vandermonde_limit_diff(i, k, order);
            out.push(outcome_report(
                "eq5.9",
                Params::new()
                    .with("i", i)
                    .with("k", k)
                    .with("order", order as i64),
                t0,
                diff,
            ));
        }
    }
    out
}

fn run_master(
    id: &'static str,
    spec: SpecialValueSpec,
    opts: &GridOpts,
) -> Vec<IdentityReport> {
    let order = series_order(opts, 100);
    let mut out = Vec::new();
    for m in m_list(opts, &[0, 1]) {
        let t0 = Instant::now();
        let diff = master_formula_diff(spec, m, order);
        out.push(outcome_report(
            id,
            Params::new().with("m", m).with("order", order as i64),
            t0,
            diff,
        ));
    }
    out
}

fn run_eq5_11(opts: &GridOpts) -> Vec<IdentityReport> {
    run_master("eq5.11", SpecialValueSpec::NegOne, opts)
}

fn run_eq5_12(opts: &GridOpts) -> Vec<IdentityReport> {
    run_master("eq5.12", SpecialValueSpec::NegInvQ, opts)
}

fn run_eq5_13(opts: &GridOpts) -> Vec<IdentityReport> {
    run_master("eq5.13", SpecialValueSpec::NegOneInvBase, opts)
}

fn run_eq5_14(opts: &GridOpts) -> Vec<IdentityReport> {
    run_master("eq5.14", SpecialValueSpec::NegQInvBase, opts)
}

fn run_table(
    id: &'static str,
    kind: FamilyKind,
    spec: SpecialValueSpec,
    opts: &GridOpts,
) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    for n in 0..=end(opts, 12, None) {
        let t0 = Instant::now();
        let lhs = special_value(kind, n, spec).expect("tabulated combination");
        let symbolic = match kind {
            FamilyKind::Fib => fib(n),
            FamilyKind::Lucas => lucas(n, false),
            FamilyKind::LucasStar => lucas(n, true),
        };
        let rhs = symbolic.substitute(&spec.subst_map()).expect("unit");
        out.push(poly_report(id, Params::new().with("n", n), t0, &lhs, &rhs));
    }
    out
}

fn run_eq5_15(opts: &GridOpts) -> Vec<IdentityReport> {
    run_table("eq5.15", FamilyKind::Fib, SpecialValueSpec::NegInvQ, opts)
}

fn run_eq5_16(opts: &GridOpts) -> Vec<IdentityReport> {
    run_table("eq5.16", FamilyKind::Lucas, SpecialValueSpec::NegOne, opts)
}

fn run_eq5_21(opts: &GridOpts) -> Vec<IdentityReport> {
    run_table("eq5.21", FamilyKind::Lucas, SpecialValueSpec::NegInvQ, opts)
}

/// `(-1)^sign_from * (q^a + q^b)` (with `b = a` meaning the single power).
fn q_power_pair(negative: bool, a: i64, b: Option<i64>) -> LaurentPoly {
    let mut p = LaurentPoly::q_pow(a);
    if let Some(b) = b {
        p += &LaurentPoly::q_pow(b);
    }
    if negative {
        -p
    } else {
        p
    }
}

/// Mod-6 closed form of the even-index Lucas-star values at `s = -1`.
fn even_star_neg_one(n: i64) -> LaurentPoly {
    debug_assert!(n >= 2 && n % 2 == 0);
    match n % 6 {
        4 => {
            let m = (n + 2) / 6;
            q_power_pair(true, 6 * m * m - 5 * m + 1, None)
        }
        0 => {
            let m = n / 6;
            q_power_pair(false, 6 * m * m - m, Some(6 * m * m + m))
        }
        _ => {
            let m = (n - 2) / 6;
            q_power_pair(true, 6 * m * m + 5 * m + 1, None)
        }
    }
}

/// Mod-6 closed form of the odd-index Lucas-star values at `s = -1`. The
/// middle branch uses the exponent `6m^2 + 7m + 2`; the variant with the
/// `7m` term garbled fails direct evaluation at index 15 (see the
/// acceptance suite, which demonstrates the discrepancy).
fn odd_star_neg_one(n: i64) -> LaurentPoly {
    debug_assert!(n >= 1 && n % 2 == 1);
    match n % 6 {
        5 => {
            let m = (n + 1) / 6;
            q_power_pair(false, 6 * m * m - m, None)
        }
        3 => {
            let m = (n - 3) / 6;
            q_power_pair(true, 6 * m * m + 5 * m + 1, Some(6 * m * m + 7 * m + 2))
        }
        _ => {
            let m = (n - 1) / 6;
            q_power_pair(false, 6 * m * m + m, None)
        }
    }
}

/// Mod-6 closed form of the even-index Lucas-star values at `s = -1/q`.
fn even_star_neg_inv_q(n: i64) -> LaurentPoly {
    debug_assert!(n >= 2 && n % 2 == 0);
    match n % 6 {
        4 => {
            let m = (n + 2) / 6;
            q_power_pair(true, 6 * m * m - 5 * m + 1, None)
        }
        0 => {
            let m = n / 6;
            q_power_pair(false, 6 * m * m - m, Some(6 * m * m - 5 * m))
        }
        _ => {
            let m = (n - 2) / 6;
            q_power_pair(true, 6 * m * m - m - 1, None)
        }
    }
}

/// Mod-6 closed form of the odd-index Lucas-star values at `s = -1/q`.
fn odd_star_neg_inv_q(n: i64) -> LaurentPoly {
    debug_assert!(n >= 1 && n % 2 == 1);
    match n % 6 {
        5 => {
            let m = (n + 1) / 6;
            q_power_pair(false, 6 * m * m - 7 * m + 1, None)
        }
        3 => {
            let m = (n - 3) / 6;
            q_power_pair(true, 6 * m * m + 5 * m + 1, Some(6 * m * m + m - 1))
        }
        _ => {
            let m = (n - 1) / 6;
            q_power_pair(false, 6 * m * m + m, None)
        }
    }
}

fn run_mod6_table(
    id: &'static str,
    start: i64,
    default_end: i64,
    closed: fn(i64) -> LaurentPoly,
    spec: SpecialValueSpec,
    opts: &GridOpts,
) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    let mut n = start;
    let stop = end(opts, default_end, None);
    while n <= stop {
        let t0 = Instant::now();
        let lhs = closed(n);
        let rhs = lucas_star_at(n, spec);
        out.push(poly_report(id, Params::new().with("n", n), t0, &lhs, &rhs));
        n += 2;
    }
    out
}

fn run_eq5_17(opts: &GridOpts) -> Vec<IdentityReport> {
    run_mod6_table("eq5.17", 2, 26, even_star_neg_one, SpecialValueSpec::NegOne, opts)
}

fn run_eq5_18(opts: &GridOpts) -> Vec<IdentityReport> {
    run_mod6_table("eq5.18", 1, 25, odd_star_neg_one, SpecialValueSpec::NegOne, opts)
}

fn run_eq5_22(opts: &GridOpts) -> Vec<IdentityReport> {
    run_mod6_table(
        "eq5.22",
        2,
        26,
        even_star_neg_inv_q,
        SpecialValueSpec::NegInvQ,
        opts,
    )
}

fn run_eq5_23(opts: &GridOpts) -> Vec<IdentityReport> {
    run_mod6_table(
        "eq5.23",
        1,
        25,
        odd_star_neg_inv_q,
        SpecialValueSpec::NegInvQ,
        opts,
    )
}

fn run_pentagonal(id: &'static str, odd: bool, opts: &GridOpts) -> Vec<IdentityReport> {
    let order = series_order(opts, 100);
    let t0 = Instant::now();
    let diff = pentagonal_diff(odd, order);
    vec![outcome_report(
        id,
        Params::new().with("order", order as i64),
        t0,
        diff,
    )]
}

fn run_eq5_19(opts: &GridOpts) -> Vec<IdentityReport> {
    run_pentagonal("eq5.19", false, opts)
}

fn run_eq5_20(opts: &GridOpts) -> Vec<IdentityReport> {
    run_pentagonal("eq5.20", true, opts)
}

fn run_eq5_31(opts: &GridOpts) -> Vec<IdentityReport> {
    let i_end = end(opts, 10, None);
    let base_square = SubstMap::new()
        .x_to(SubstTarget::constant(1))
        .s_to(SubstTarget::constant(-1))
        .q_to(SubstTarget::monomial(1, 0, 0, 2));
    let mut out = Vec::new();
    for m in m_list(opts, &[0, 1]) {
        for i in 0..=i_end {
            let t0 = Instant::now();
            let lhs = lucas_star_at(2 * i + m, SpecialValueSpec::NegQInvBase).mul_term(
                &one(),
                &Monomial::new(0, 0, 2 * i * i - i + 2 * m * i),
            );
            let rhs = lucas(2 * i + m, true)
                .substitute(&base_square)
                .expect("unit substitution");
            out.push(poly_report(
                "eq5.31",
                Params::new().with("i", i).with("m", m),
                t0,
                &lhs,
                &rhs,
            ));
        }
    }
    out
}

fn run_corollary(id: &'static str, index: usize, opts: &GridOpts) -> Vec<IdentityReport> {
    let order = series_order(opts, 100);
    let t0 = Instant::now();
    let diff = corollary_diff(index, order);
    vec![outcome_report(
        id,
        Params::new().with("order", order as i64),
        t0,
        diff,
    )]
}

fn run_cor5_1(opts: &GridOpts) -> Vec<IdentityReport> {
    run_corollary("cor5.1", 1, opts)
}
fn run_cor5_2(opts: &GridOpts) -> Vec<IdentityReport> {
    run_corollary("cor5.2", 2, opts)
}
fn run_cor5_3(opts: &GridOpts) -> Vec<IdentityReport> {
    run_corollary("cor5.3", 3, opts)
}
fn run_cor5_4(opts: &GridOpts) -> Vec<IdentityReport> {
    run_corollary("cor5.4", 4, opts)
}
fn run_cor5_5(opts: &GridOpts) -> Vec<IdentityReport> {
    run_corollary("cor5.5", 5, opts)
}
fn run_cor5_6(opts: &GridOpts) -> Vec<IdentityReport> {
    run_corollary("cor5.6", 6, opts)
}
fn run_cor5_7(opts: &GridOpts) -> Vec<IdentityReport> {
    run_corollary("cor5.7", 7, opts)
}
fn run_cor5_8(opts: &GridOpts) -> Vec<IdentityReport> {
    run_corollary("cor5.8", 8, opts)
}

// ---------------------------------------------------------------------------
// Classical (q = 1) regression.

/// Record the first failing leg of a multi-part check.
fn check_leg(failure: &mut Option<String>, label: &str, lhs: &LaurentPoly, rhs: &LaurentPoly) {
    if failure.is_some() {
        return;
    }
    let diff = lhs - rhs;
    if !diff.is_zero() {
        *failure = Some(format!("{label}: {}", diff.render_truncated(20)));
    }
}

fn run_classical_q1(opts: &GridOpts) -> Vec<IdentityReport> {
    let s = LaurentPoly::s();
    let x = LaurentPoly::x();
    let ms = m_list(opts, &[-4, -3, -2, -1, 0, 1, 2, 3, 4]);
    let mut out = Vec::new();
    for n in 0..=end(opts, 20, None) {
        let t0 = Instant::now();
        let mut failure: Option<String> = None;

        if n >= 2 {
            let rhs = &(&x * &classical_fib(n - 1)) + &(&s * &classical_fib(n - 2));
            check_leg(
                &mut failure,
                "Fibonacci three-term recurrence",
                &classical_fib(n),
                &rhs,
            );
            let rhs = &(&x * &classical_lucas(n - 1, false)) + &(&s * &classical_lucas(n - 2, false));
            check_leg(
                &mut failure,
                "Lucas three-term recurrence",
                &classical_lucas(n, false),
                &rhs,
            );
        }

        let rhs = &classical_fib(n + 1) + &(&s * &classical_fib(n - 1));
        check_leg(
            &mut failure,
            "Lucas-Fibonacci decomposition",
            &classical_lucas(n, false),
            &rhs,
        );

        let mut inversion = LaurentPoly::zero();
        for k in 0..=n / 2 {
            let weight = binomial(n, k) * alt_sign(k);
            inversion += &classical_lucas(n - 2 * k, true)
                .mul_term(&weight, &Monomial::new(0, k, 0));
        }
        check_leg(
            &mut failure,
            "Lucas-star inversion of x^n",
            &inversion,
            &LaurentPoly::x_pow(n),
        );

        let mut inversion = LaurentPoly::zero();
        for k in 0..=(n + 1) / 2 {
            let weight = (binomial(n, k) - binomial(n, k - 1)) * alt_sign(k);
            inversion += &classical_fib(n + 1 - 2 * k)
                .mul_term(&weight, &Monomial::new(0, k, 0));
        }
        check_leg(
            &mut failure,
            "Fibonacci inversion of x^n",
            &inversion,
            &LaurentPoly::x_pow(n),
        );

        let q_one = SubstMap::q_one();
        check_leg(
            &mut failure,
            "q = 1 specialization (Fibonacci)",
            &fib(n).substitute(&q_one).expect("unit"),
            &classical_fib(n),
        );
        check_leg(
            &mut failure,
            "q = 1 specialization (Lucas)",
            &lucas(n, false).substitute(&q_one).expect("unit"),
            &classical_lucas(n, false),
        );

        let at_one = at_x_one();
        for &m in &ms {
            if failure.is_some() {
                break;
            }
            let mut shifted = LaurentPoly::zero();
            for k in 0..=n {
                let weight = binomial(n, k) * alt_sign(k);
                shifted += &classical_fib(2 * n + m - k)
                    .substitute(&at_one)
                    .expect("unit")
                    .mul_term(&weight, &Monomial::ONE);
            }
            let rhs = classical_fib(m)
                .substitute(&at_one)
                .expect("unit")
                .mul_term(&one(), &Monomial::new(0, n, 0));
            check_leg(
                &mut failure,
                &format!("shift identity at x = 1, m = {m}"),
                &shifted,
                &rhs,
            );
        }

        out.push(outcome_report(
            "classical.q1",
            Params::new().with("n", n),
            t0,
            failure,
        ));
    }
    out
}

static REGISTRY: &[IdentityInfo] = &[
    IdentityInfo {
        id: "eq1.8",
        summary: "Rising product (x+s)...(x+q^(n-1)s) equals its q-binomial expansion",
        grid: "n in 0..=20",
        x_at_one: false,
        run: run_eq1_8,
    },
    IdentityInfo {
        id: "eq1.10",
        summary: "Rogers-Szego three-term recurrence",
        grid: "n in 2..=20",
        x_at_one: false,
        run: run_eq1_10,
    },
    IdentityInfo {
        id: "eq2.2",
        summary: "Fibonacci recurrence with s-upscaling reproduces the explicit form",
        grid: "n in 0..=30",
        x_at_one: false,
        run: run_eq2_2,
    },
    IdentityInfo {
        id: "eq2.3",
        summary: "Fibonacci recurrence with s-downscaling reproduces the explicit form",
        grid: "n in 0..=30",
        x_at_one: false,
        run: run_eq2_3,
    },
    IdentityInfo {
        id: "eq2.4",
        summary: "Substitution-free four-term Fibonacci recurrence reproduces the explicit form",
        grid: "n in 0..=30",
        x_at_one: false,
        run: run_eq2_4,
    },
    IdentityInfo {
        id: "eq2.5",
        summary: "Correction series for the naive three-term Fibonacci recurrence",
        grid: "n in 2..=20",
        x_at_one: false,
        run: run_eq2_5,
    },
    IdentityInfo {
        id: "eq2.7",
        summary: "Morse-code word enumeration reproduces the Fibonacci polynomials",
        grid: "n in 1..=14 (hard cap 16)",
        x_at_one: false,
        run: run_eq2_7,
    },
    IdentityInfo {
        id: "eq2.8",
        summary: "Umbral operator image of classical Fibonacci reproduces the q-family",
        grid: "n in 0..=30",
        x_at_one: false,
        run: run_eq2_8,
    },
    IdentityInfo {
        id: "eq2.9",
        summary: "Three-term Fibonacci recurrence with q-derivative correction",
        grid: "n in 2..=20",
        x_at_one: false,
        run: run_eq2_9,
    },
    IdentityInfo {
        id: "eq2.10",
        summary: "Umbral operator image of classical Lucas reproduces the q-family",
        grid: "n in 0..=25",
        x_at_one: false,
        run: run_eq2_10,
    },
    IdentityInfo {
        id: "eq2.12",
        summary: "Lucas decomposes as F_(n+1) + s F_(n-1) over all integer indices",
        grid: "n in -10..=25",
        x_at_one: false,
        run: run_eq2_12,
    },
    IdentityInfo {
        id: "eq2.13",
        summary: "Division-free Lucas coefficients match the exact-division route",
        grid: "n in 1..=25",
        x_at_one: false,
        run: run_eq2_13,
    },
    IdentityInfo {
        id: "eq2.14",
        summary: "Lucas at upscaled s decomposes with weight q^n, all integer indices",
        grid: "n in -10..=25",
        x_at_one: false,
        run: run_eq2_14,
    },
    IdentityInfo {
        id: "eq2.15",
        summary: "Three-term Lucas recurrence with q-derivative correction",
        grid: "n in 2..=25",
        x_at_one: false,
        run: run_eq2_15,
    },
    IdentityInfo {
        id: "eq2.16",
        summary: "Correction series for the naive three-term Lucas-star recurrence",
        grid: "n in 3..=25",
        x_at_one: false,
        run: run_eq2_16,
    },
    IdentityInfo {
        id: "eq2.17",
        summary: "Five-term Lucas recurrence, cleared of its [n-3] denominators",
        grid: "n in 4..=25",
        x_at_one: false,
        run: run_eq2_17,
    },
    IdentityInfo {
        id: "circular",
        summary: "Circular-covering enumeration reproduces the Lucas polynomials",
        grid: "n in 1..=16 (hard cap 16)",
        x_at_one: false,
        run: run_circular,
    },
    IdentityInfo {
        id: "dlucas",
        summary: "q-derivative of Lucas equals [n] times Fibonacci at s/q",
        grid: "n in 1..=25",
        x_at_one: false,
        run: run_dlucas,
    },
    IdentityInfo {
        id: "eq3.1",
        summary: "Inversion expressing x^n in the Lucas-star basis",
        grid: "n in 0..=25",
        x_at_one: false,
        run: run_eq3_1,
    },
    IdentityInfo {
        id: "eq3.2",
        summary: "Inversion expressing x^n in the Fibonacci basis",
        grid: "n in 0..=25",
        x_at_one: false,
        run: run_eq3_2,
    },
    IdentityInfo {
        id: "eq3.8",
        summary: "Backward recurrence agrees with the negative-index Lucas extension",
        grid: "n in -10..=-1",
        x_at_one: false,
        run: run_eq3_8,
    },
    IdentityInfo {
        id: "eq3.9",
        summary: "Backward recurrence agrees with the negative-index Fibonacci extension",
        grid: "n in -10..=-1",
        x_at_one: false,
        run: run_eq3_9,
    },
    IdentityInfo {
        id: "eq3.11",
        summary: "q-Hermite at rescaled s expands in both families with integer binomials",
        grid: "n in 0..=16",
        x_at_one: false,
        run: run_eq3_11,
    },
    IdentityInfo {
        id: "eq3.12",
        summary: "Alternating q-binomial convolution of q-Catalan numbers telescopes",
        grid: "n in 0..=15",
        x_at_one: false,
        run: run_eq3_12,
    },
    IdentityInfo {
        id: "eq3.13",
        summary: "Alternating Lucas-weighted central q-binomial sum vanishes",
        grid: "n in 1..=15",
        x_at_one: false,
        run: run_eq3_13,
    },
    IdentityInfo {
        id: "eq4.3",
        summary: "Geometric sum in two variables expands over Rogers-Szego polynomials",
        grid: "n in 0..=20",
        x_at_one: false,
        run: run_eq4_3,
    },
    IdentityInfo {
        id: "eq4.4",
        summary: "Power sum x^n + y^n expands over Rogers-Szego polynomials",
        grid: "n in 1..=20",
        x_at_one: false,
        run: run_eq4_4,
    },
    IdentityInfo {
        id: "eq4.5",
        summary: "Alternating double q-binomial sum collapses to 1",
        grid: "all 0 <= k <= n <= 20",
        x_at_one: false,
        run: run_eq4_5,
    },
    IdentityInfo {
        id: "eq4.7",
        summary: "Shifted alternating q-binomial Fibonacci sum",
        grid: "n in 0..=12, m in -6..=6",
        x_at_one: true,
        run: run_eq4_7,
    },
    IdentityInfo {
        id: "eq4.8",
        summary: "Unshifted alternating q-binomial Fibonacci sum vanishes",
        grid: "n in 0..=15",
        x_at_one: true,
        run: run_eq4_8,
    },
    IdentityInfo {
        id: "eq4.9",
        summary: "Fibonacci forward difference equals a weighted lower-index value",
        grid: "m in -15..=15",
        x_at_one: true,
        run: run_eq4_9,
    },
    IdentityInfo {
        id: "eq4.13",
        summary: "Alternating q-binomial Lucas sum vanishes",
        grid: "n in 1..=15",
        x_at_one: true,
        run: run_eq4_13,
    },
    IdentityInfo {
        id: "eq5.2",
        summary: "x^(2n) expands over even-index Lucas-star values, symbolically",
        grid: "n in 0..=12",
        x_at_one: false,
        run: run_eq5_2,
    },
    IdentityInfo {
        id: "eq5.3",
        summary: "x^(2n+1) expands over odd-index Lucas-star values, symbolically",
        grid: "n in 0..=12",
        x_at_one: false,
        run: run_eq5_3,
    },
    IdentityInfo {
        id: "eq5.4",
        summary: "Bailey pair from even-index Lucas-star values, base q",
        grid: "n in 0..=10, s in {1, 1/q}, order 60",
        x_at_one: true,
        run: run_eq5_4,
    },
    IdentityInfo {
        id: "eq5.5",
        summary: "Bailey pair from odd-index Lucas-star values, base q",
        grid: "n in 0..=10, s in {1, 1/q}, order 60",
        x_at_one: true,
        run: run_eq5_5,
    },
    IdentityInfo {
        id: "eq5.6",
        summary: "Bailey pair from even-index Lucas-star values, inverted base",
        grid: "n in 0..=10, s in {1, 1/q}, order 60",
        x_at_one: true,
        run: run_eq5_6,
    },
    IdentityInfo {
        id: "eq5.7",
        summary: "Bailey pair from odd-index Lucas-star values, inverted base",
        grid: "n in 0..=10, s in {1, 1/q}, order 60",
        x_at_one: true,
        run: run_eq5_7,
    },
    IdentityInfo {
        id: "eq5.9",
        summary: "q-Vandermonde convolution, finite and limiting forms",
        grid: "finite: n in 0..=10, i,k in 0..=3; limit: i,k in 0..=3, order 60",
        x_at_one: false,
        run: run_eq5_9,
    },
    IdentityInfo {
        id: "eq5.11",
        summary: "Master sum-product formula from values at s = -1",
        grid: "m in {0,1}, order 100",
        x_at_one: true,
        run: run_eq5_11,
    },
    IdentityInfo {
        id: "eq5.12",
        summary: "Master sum-product formula from values at s = -1/q",
        grid: "m in {0,1}, order 100",
        x_at_one: true,
        run: run_eq5_12,
    },
    IdentityInfo {
        id: "eq5.13",
        summary: "Master sum-product formula from values at s = -1, inverted base",
        grid: "m in {0,1}, order 100",
        x_at_one: true,
        run: run_eq5_13,
    },
    IdentityInfo {
        id: "eq5.14",
        summary: "Master sum-product formula from values at s = -q, inverted base",
        grid: "m in {0,1}, order 100",
        x_at_one: true,
        run: run_eq5_14,
    },
    IdentityInfo {
        id: "eq5.15",
        summary: "Closed form of Fibonacci values at (1, -1/q) vs direct evaluation",
        grid: "n in 0..=12",
        x_at_one: true,
        run: run_eq5_15,
    },
    IdentityInfo {
        id: "eq5.16",
        summary: "Closed form of Lucas values at (1, -1) vs direct evaluation",
        grid: "n in 0..=12",
        x_at_one: true,
        run: run_eq5_16,
    },
    IdentityInfo {
        id: "eq5.17",
        summary: "Mod-6 closed form of even Lucas-star values at s = -1",
        grid: "even n in 2..=26",
        x_at_one: true,
        run: run_eq5_17,
    },
    IdentityInfo {
        id: "eq5.18",
        summary: "Mod-6 closed form of odd Lucas-star values at s = -1 (middle exponent 6m^2+7m+2)",
        grid: "odd n in 1..=25",
        x_at_one: true,
        run: run_eq5_18,
    },
    IdentityInfo {
        id: "eq5.19",
        summary: "Even-index Lucas-star partial sums reproduce the Euler product",
        grid: "order 100",
        x_at_one: true,
        run: run_eq5_19,
    },
    IdentityInfo {
        id: "eq5.20",
        summary: "Odd-index Lucas-star partial sums reproduce the Euler product",
        grid: "order 100",
        x_at_one: true,
        run: run_eq5_20,
    },
    IdentityInfo {
        id: "eq5.21",
        summary: "Closed form of Lucas values at (1, -1/q) vs direct evaluation",
        grid: "n in 0..=12",
        x_at_one: true,
        run: run_eq5_21,
    },
    IdentityInfo {
        id: "eq5.22",
        summary: "Mod-6 closed form of even Lucas-star values at s = -1/q",
        grid: "even n in 2..=26",
        x_at_one: true,
        run: run_eq5_22,
    },
    IdentityInfo {
        id: "eq5.23",
        summary: "Mod-6 closed form of odd Lucas-star values at s = -1/q",
        grid: "odd n in 1..=25",
        x_at_one: true,
        run: run_eq5_23,
    },
    IdentityInfo {
        id: "eq5.31",
        summary: "Weighted base-inverted Lucas-star values equal base-q^2 values",
        grid: "i in 0..=10, m in {0,1}",
        x_at_one: true,
        run: run_eq5_31,
    },
    IdentityInfo {
        id: "cor5.1",
        summary: "Sum-product identity: exponents n^2 over (q;q)_(2n)",
        grid: "order 100",
        x_at_one: false,
        run: run_cor5_1,
    },
    IdentityInfo {
        id: "cor5.2",
        summary: "Sum-product identity: exponents n^2+n over (q;q)_(2n+1)",
        grid: "order 100",
        x_at_one: false,
        run: run_cor5_2,
    },
    IdentityInfo {
        id: "cor5.3",
        summary: "Sum-product identity: exponents n^2+n over (q;q)_(2n)",
        grid: "order 100",
        x_at_one: false,
        run: run_cor5_3,
    },
    IdentityInfo {
        id: "cor5.4",
        summary: "Sum-product identity: exponents n^2+2n over (q;q)_(2n+1)",
        grid: "order 100",
        x_at_one: false,
        run: run_cor5_4,
    },
    IdentityInfo {
        id: "cor5.5",
        summary: "Sum-product identity: exponents 2n^2 over (q;q)_(2n)",
        grid: "order 100",
        x_at_one: false,
        run: run_cor5_5,
    },
    IdentityInfo {
        id: "cor5.6",
        summary: "Sum-product identity: exponents 2n^2+n, plus distinct-parts product",
        grid: "order 100",
        x_at_one: false,
        run: run_cor5_6,
    },
    IdentityInfo {
        id: "cor5.7",
        summary: "Sum-product identity: exponents 2n^2-n, plus distinct-parts product",
        grid: "order 100",
        x_at_one: false,
        run: run_cor5_7,
    },
    IdentityInfo {
        id: "cor5.8",
        summary: "Sum-product identity: exponents 2n^2+2n over (q;q)_(2n+1)",
        grid: "order 100",
        x_at_one: false,
        run: run_cor5_8,
    },
    IdentityInfo {
        id: "classical.q1",
        summary: "Classical q = 1 regression: recurrences, inversions, shift identity",
        grid: "n in 0..=20, shift m in -4..=4 (at x = 1)",
        x_at_one: false,
        run: run_classical_q1,
    },
];

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> GridOpts {
        GridOpts {
            max_n: Some(6),
            m_values: None,
            order: Some(30),
        }
    }

    #[test]
    fn registry_is_closed_and_deduplicated() {
        assert!(find("eq3.1").is_some());
        assert!(find("no.such.id").is_none());
        let mut ids: Vec<&str> = registry().iter().map(|i| i.id).collect();
        let total = ids.len();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), total, "duplicate identity ids");
        assert_eq!(total, 62);
    }

    #[test]
    fn every_identity_passes_on_a_small_grid() {
        let opts = small();
        for info in registry() {
            let reports = info.run(&opts);
            assert!(!reports.is_empty(), "{} produced no reports", info.id);
            for r in &reports {
                assert!(
                    r.pass,
                    "{} [{}] failed: {}",
                    r.id,
                    r.params,
                    r.counterexample.as_deref().unwrap_or("")
                );
                assert_eq!(r.id, info.id);
            }
        }
    }

    #[test]
    fn theorem_grid_has_one_report_per_index() {
        let opts = GridOpts {
            max_n: Some(10),
            ..GridOpts::default()
        };
        let reports = find("eq3.1").unwrap().run(&opts);
        assert_eq!(reports.len(), 11);
        assert!(reports.iter().all(|r| r.pass));
    }

    #[test]
    fn params_render_in_insertion_order() {
        let p = Params::new().with("n", 3).with("m", -1);
        assert_eq!(p.to_string(), "n=3 m=-1");
        assert_eq!(Params::new().to_string(), "");
    }

    #[test]
    fn morse_grid_respects_hard_cap() {
        let opts = GridOpts {
            max_n: Some(50),
            ..GridOpts::default()
        };
        let reports = find("eq2.7").unwrap().run(&opts);
        assert_eq!(reports.last().unwrap().params.0, vec![("n", 16)]);
        assert!(reports.iter().all(|r| r.pass));
    }

    #[test]
    fn shift_identity_accepts_m_overrides() {
        let opts = GridOpts {
            max_n: Some(3),
            m_values: Some(vec![-2, 5]),
            order: None,
        };
        let reports = find("eq4.7").unwrap().run(&opts);
        assert_eq!(reports.len(), 8); // 4 n-values x 2 m-values
        assert!(reports.iter().all(|r| r.pass));
    }

    #[test]
    fn forward_difference_artifact_is_confined_to_x_one() {
        // At symbolic x the forward-difference identity fails for m = 1 —
        // the registry deliberately evaluates it at x = 1. Pin the
        // artifact: the symbolic difference is x^2 - x, nonzero.
        let lhs = &fib(3) - &fib(2);
        let rhs = fib(1)
            .substitute(&SubstMap::s_times_q_pow(-1))
            .unwrap()
            .mul_term(&one(), &Monomial::new(0, 1, 1));
        let diff = &lhs - &rhs;
        let mut expected = LaurentPoly::x_pow(2);
        expected.add_term(Monomial::new(1, 0, 0), -one());
        assert_eq!(diff, expected);
    }

    #[test]
    fn reports_are_deterministic() {
        let opts = small();
        let a = find("eq2.13").unwrap().run(&opts);
        let b = find("eq2.13").unwrap().run(&opts);
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.pass, y.pass);
            assert_eq!(x.params, y.params);
            assert_eq!(x.counterexample, y.counterexample);
        }
    }
}
