//! q-combinatorial primitives: q-integers, q-binomial coefficients,
//! Pochhammer products, the q-derivative, Rogers-Szegő polynomials, the
//! umbral operator map, q-Hermite polynomials, and q-Catalan numbers.
//!
//! Everything here is exact. The q-binomial table and the umbral operator
//! powers are memoized behind module-level locks; concurrent callers
//! observe results identical to sequential evaluation.

use std::sync::{LazyLock, Mutex};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::poly::{LaurentPoly, Monomial};

/// The binomial coefficient `C(n, 2) = n(n-1)/2`, extended to all integers
/// as the polynomial `n(n-1)/2` (the form q-exponents take in the explicit
/// family formulas).
pub fn choose2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// Classical binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// The q-integer `[n] = 1 + q + ... + q^(n-1)`; `[0] = 0`.
pub fn q_int(n: i64) -> LaurentPoly {
    assert!(n >= 0, "q_int: negative argument {n}");
    let mut p = LaurentPoly::zero();
    for j in 0..n {
        p.add_term(Monomial::new(0, 0, j), BigInt::from(1));
    }
    p
}

/// Triangular cache of q-binomial coefficients, filled row by row with the
/// Pascal recurrence `[n,k] = q^k [n-1,k] + [n-1,k-1]`.
///
/// Row `n` holds the `n + 1` in-range entries; out-of-range requests are
/// answered with zero without being stored. Every cached entry satisfies
/// the symmetry `[n,k] = [n,n-k]` (the reversed recurrence produces the
/// same table; the property tests pin this down).
#[derive(Debug, Default)]
pub struct QBinomialTable {
    rows: Vec<Vec<LaurentPoly>>,
}

impl QBinomialTable {
    pub fn new() -> Self {
        QBinomialTable {
            rows: vec![vec![LaurentPoly::one()]],
        }
    }

    pub fn get(&mut self, n: i64, k: i64) -> LaurentPoly {
        if n < 0 || k < 0 || k > n {
            return LaurentPoly::zero();
        }
        let n = n as usize;
        let k = k as usize;
        while self.rows.len() <= n {
            let prev = self.rows.last().expect("table starts with row 0");
            let m = self.rows.len();
            let mut row = Vec::with_capacity(m + 1);
            for k in 0..=m {
                let mut entry = if k < prev.len() {
                    prev[k].mul_term(&BigInt::from(1), &Monomial::new(0, 0, k as i64))
                } else {
                    LaurentPoly::zero()
                };
                if k >= 1 {
                    entry += &prev[k - 1];
                }
                row.push(entry);
            }
            self.rows.push(row);
        }
        self.rows[n][k].clone()
    }
}

static Q_BINOMIALS: LazyLock<Mutex<QBinomialTable>> =
    LazyLock::new(|| Mutex::new(QBinomialTable::new()));

/// The q-binomial coefficient `[n, k]` as a polynomial in `q`; zero outside
/// `0 <= k <= n`. Backed by a process-wide memoized [`QBinomialTable`].
pub fn q_binomial(n: i64, k: i64) -> LaurentPoly {
    Q_BINOMIALS.lock().expect("table lock").get(n, k)
}

/// The finite Pochhammer product `(q;q)_n = (1-q)(1-q^2)...(1-q^n)`.
pub fn q_pochhammer(n: i64) -> LaurentPoly {
    assert!(n >= 0, "q_pochhammer: negative argument {n}");
    let mut p = LaurentPoly::one();
    for j in 1..=n {
        let mut factor = LaurentPoly::one();
        factor.add_term(Monomial::new(0, 0, j), BigInt::from(-1));
        p = &p * &factor;
    }
    p
}

/// The product `p_n(x,s) = (x+s)(x+qs)...(x+q^(n-1)s)`.
///
/// Also evaluates the equivalent expansion
/// `sum_k q^C(k,2) [n,k] x^(n-k) s^k` and asserts the two forms agree, so
/// every caller gets the cross-check for free.
pub fn p_poly(n: i64) -> LaurentPoly {
    assert!(n >= 0, "p_poly: negative argument {n}");
    let mut product = LaurentPoly::one();
    for j in 0..n {
        let mut factor = LaurentPoly::x();
        factor.add_term(Monomial::new(0, 1, j), BigInt::from(1));
        product = &product * &factor;
    }
    let mut sum = LaurentPoly::zero();
    for k in 0..=n {
        sum += &q_binomial(n, k).mul_term(&BigInt::from(1), &Monomial::new(n - k, k, choose2(k)));
    }
    assert_eq!(product, sum, "p_poly({n}): product and sum forms disagree");
    product
}

/// The Rogers-Szegő polynomial `r_n(x,s) = sum_k [n,k] x^k s^(n-k)`
/// (symmetric in its two variables thanks to `[n,k] = [n,n-k]`).
pub fn rogers_szego(n: i64) -> LaurentPoly {
    assert!(n >= 0, "rogers_szego: negative argument {n}");
    let mut sum = LaurentPoly::zero();
    for k in 0..=n {
        sum += &q_binomial(n, k).mul_term(&BigInt::from(1), &Monomial::new(k, n - k, 0));
    }
    sum
}

/// The q-derivative `D`: linear, with `D(x^n) = [n] x^(n-1)` and
/// coefficients in `s` and `q` passing through as scalars. Equivalently
/// `Df(x) = (f(x) - f(qx)) / ((1-q) x)`.
pub fn q_derivative(p: &LaurentPoly) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (m, c) in p.terms() {
        if m.x == 0 {
            continue;
        }
        out += &q_int(m.x).mul_term(c, &Monomial::new(m.x - 1, m.s, m.q));
    }
    out
}

/// `A(h) = x·h + (q-1)·s·D(h)` — one application of the umbral operator.
fn umbral_step(h: &LaurentPoly) -> LaurentPoly {
    // (q-1)s = qs - s.
    let mut qm1s = LaurentPoly::term(1, 0, 1, 1);
    qm1s.add_term(Monomial::new(0, 1, 0), BigInt::from(-1));
    &(&LaurentPoly::x() * h) + &(&qm1s * &q_derivative(h))
}

static UMBRAL_POWERS: LazyLock<Mutex<Vec<LaurentPoly>>> =
    LazyLock::new(|| Mutex::new(vec![LaurentPoly::one()]));

/// `A^k(1)`, memoized process-wide (the family constructions reuse the
/// same powers over and over).
fn umbral_power(k: usize) -> LaurentPoly {
    let mut cache = UMBRAL_POWERS.lock().expect("cache lock");
    while cache.len() <= k {
        let next = umbral_step(cache.last().expect("cache starts with A^0"));
        cache.push(next);
    }
    cache[k].clone()
}

/// The linear map `x^k s^j q^e -> s^j q^e A^k(1)` with
/// `A(h) = x·h + (q-1)·s·D(h)`.
///
/// Coefficients in `s` and `q` are treated as scalars; only the x-powers
/// are pushed through the operator. Applied to the classical Fibonacci and
/// Lucas polynomials this produces their q-analogues.
pub fn umbral_apply(p: &LaurentPoly) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (m, c) in p.terms() {
        debug_assert!(m.x >= 0);
        out += &umbral_power(m.x as usize).mul_term(c, &Monomial::new(0, m.s, m.q));
    }
    out
}

/// The q-Hermite polynomial `H_n(x,s|q) = (x - sD)^n 1`, computed by
/// iterating `h -> x·h - s·D(h)`.
pub fn q_hermite(n: i64) -> LaurentPoly {
    assert!(n >= 0, "q_hermite: negative argument {n}");
    let mut h = LaurentPoly::one();
    let s = LaurentPoly::s();
    for _ in 0..n {
        h = &(&LaurentPoly::x() * &h) - &(&s * &q_derivative(&h));
    }
    h
}

/// The q-Catalan number `C_n(q) = [2n, n] / [n+1]`, via exact division
/// (which doubles as a divisibility proof for each evaluated index).
pub fn q_catalan(n: i64) -> LaurentPoly {
    assert!(n >= 0, "q_catalan: negative argument {n}");
    q_binomial(2 * n, n)
        .exact_div(&q_int(n + 1))
        .expect("[2n,n] is divisible by [n+1]")
}
