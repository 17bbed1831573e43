//! The q-Fibonacci and q-Lucas polynomial families.
//!
//! Each family can be constructed several independent ways — explicit
//! double-indexed sums, three different recurrences, the umbral operator
//! applied to the classical polynomials, and exhaustive enumeration of
//! weighted Morse-code words — and the identity registry checks that all
//! routes agree. This module also extends both families to negative
//! indices (Laurent in `s`) and evaluates the closed-form special values
//! at `x = 1`, `s ∈ {-1, -1/q, -q}` in base `q` or `1/q`.
//!
//! Index conventions: `F_0 = 0`, `F_1 = 1`, `F_2 = x`; `L_0 = 2` while the
//! starred variant has `L*_0 = 1`, the two agreeing at every other index.

use std::sync::{LazyLock, Mutex};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::{LaurentPoly, Monomial, SubstMap, SubstTarget};
use crate::qfun::{binomial, choose2, q_binomial, umbral_apply};

/// Which polynomial family an operation refers to.
///
/// `LucasStar` differs from `Lucas` only at index 0 (value 1 instead of 2);
/// the starred normalization is the one whose special values tile the
/// series identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Fib,
    Lucas,
    LucasStar,
}

/// The three defining recurrences for the q-Fibonacci family, named by how
/// they treat the `s` argument of earlier terms:
///
/// * `UpscaleS`:  `F_n(x,s) = x F_{n-1}(x,qs) + qs F_{n-2}(x,qs)`
/// * `DownscaleS`: `F_n(x,s) = x F_{n-1}(x,s) + q^(n-2) s F_{n-2}(x,s/q)`
/// * `FourTerm`:  `F_n = x F_{n-1} + q^(n-2) s x F_{n-3} + q^(n-2) s^2 F_{n-4}`
///   (no substitutions at all, at the price of a longer history).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FibRecurrence {
    UpscaleS,
    DownscaleS,
    FourTerm,
}

static FIB_MEMO: LazyLock<Mutex<Vec<LaurentPoly>>> =
    LazyLock::new(|| Mutex::new(vec![LaurentPoly::zero(), LaurentPoly::one()]));

fn fib_explicit(n: i64) -> LaurentPoly {
    debug_assert!(n >= 0);
    let mut sum = LaurentPoly::zero();
    for k in 0..=(n - 1).div_euclid(2) {
        sum += &q_binomial(n - 1 - k, k).mul_term(
            &BigInt::from(1),
            &Monomial::new(n - 1 - 2 * k, k, choose2(k + 1)),
        );
    }
    sum
}

/// The q-Fibonacci polynomial `F_n` for any integer index.
///
/// Nonnegative indices use the explicit expansion
/// `F_n = sum_k q^C(k+1,2) [n-1-k, k] s^k x^(n-1-2k)` (memoized);
/// negative indices use the reflection `F_(-n) = (-1)^(n-1) F_n s^(-n)`,
/// which is what running any of the recurrences backwards produces.
pub fn fib(n: i64) -> LaurentPoly {
    if n < 0 {
        let m = -n;
        let reflected = fib(m).mul_term(&BigInt::from(1), &Monomial::new(0, -m, 0));
        return if m % 2 == 0 { -reflected } else { reflected };
    }
    let mut memo = FIB_MEMO.lock().expect("family memo lock");
    while memo.len() as i64 <= n {
        let next = fib_explicit(memo.len() as i64);
        memo.push(next);
    }
    memo[n as usize].clone()
}

/// `F_n` computed solely by the selected recurrence from `F_0 = 0`,
/// `F_1 = 1` (the four-term rule additionally seeds `F_2`, `F_3` via
/// `UpscaleS`). Deliberately not memoized and entirely independent of
/// [`fib`], so agreement between the two is meaningful.
pub fn fib_by_recurrence(n: i64, rule: FibRecurrence) -> LaurentPoly {
    assert!(n >= 0, "fib_by_recurrence: negative index {n}");
    let x = LaurentPoly::x();
    let mut values = vec![LaurentPoly::zero(), LaurentPoly::one()];
    match rule {
        FibRecurrence::UpscaleS => {
            let up = SubstMap::s_times_q_pow(1);
            for k in 2..=n {
                let a = values[(k - 1) as usize].substitute(&up).expect("unit target");
                let b = values[(k - 2) as usize].substitute(&up).expect("unit target");
                let next = &(&x * &a) + &b.mul_term(&BigInt::from(1), &Monomial::new(0, 1, 1));
                values.push(next);
            }
        }
        FibRecurrence::DownscaleS => {
            let down = SubstMap::s_times_q_pow(-1);
            for k in 2..=n {
                let b = values[(k - 2) as usize]
                    .substitute(&down)
                    .expect("unit target");
                let next = &(&x * &values[(k - 1) as usize])
                    + &b.mul_term(&BigInt::from(1), &Monomial::new(0, 1, k - 2));
                values.push(next);
            }
        }
        FibRecurrence::FourTerm => {
            for k in 2..=3.min(n) {
                let next = fib_by_recurrence(k, FibRecurrence::UpscaleS);
                values.push(next);
            }
            for k in 4..=n {
                let mut next = &x * &values[(k - 1) as usize];
                next += &values[(k - 3) as usize]
                    .mul_term(&BigInt::from(1), &Monomial::new(1, 1, k - 2));
                next += &values[(k - 4) as usize]
                    .mul_term(&BigInt::from(1), &Monomial::new(0, 2, k - 2));
                values.push(next);
            }
        }
    }
    values[n as usize].clone()
}

static LUCAS_MEMO: LazyLock<Mutex<Vec<LaurentPoly>>> =
    LazyLock::new(|| Mutex::new(vec![LaurentPoly::constant(2), LaurentPoly::x()]));

fn lucas_explicit(n: i64) -> LaurentPoly {
    debug_assert!(n >= 1);
    // The coefficient of s^k x^(n-2k) is q^C(k,2) ([n]/[n-k]) [n-k, k],
    // computed division-free as q^C(k,2) (q^k [n-k,k] + [n-k-1, k-1]).
    let mut sum = LaurentPoly::zero();
    for k in 0..=n.div_euclid(2) {
        let mut factor =
            q_binomial(n - k, k).mul_term(&BigInt::from(1), &Monomial::new(0, 0, k));
        factor += &q_binomial(n - k - 1, k - 1);
        sum += &factor.mul_term(&BigInt::from(1), &Monomial::new(n - 2 * k, k, choose2(k)));
    }
    sum
}

/// The q-Lucas polynomial `L_n` (or its starred variant) for any integer
/// index. `lucas(0, false) = 2`, `lucas(0, true) = 1`; the flag is
/// irrelevant at every other index. Negative indices use the reflection
/// `L_(-n) = (-1)^n L_n s^(-n)`.
pub fn lucas(n: i64, star: bool) -> LaurentPoly {
    if n == 0 {
        return LaurentPoly::constant(if star { 1 } else { 2 });
    }
    if n < 0 {
        let m = -n;
        let reflected = lucas(m, star).mul_term(&BigInt::from(1), &Monomial::new(0, -m, 0));
        return if m % 2 == 0 { reflected } else { -reflected };
    }
    let mut memo = LUCAS_MEMO.lock().expect("family memo lock");
    while memo.len() as i64 <= n {
        let next = lucas_explicit(memo.len() as i64);
        memo.push(next);
    }
    memo[n as usize].clone()
}

/// Classical Fibonacci polynomial (the `q = 1` family):
/// `F_n = sum_k C(n-1-k, k) s^k x^(n-1-2k)`, extended to negative indices
/// by the same reflection rule as [`fib`].
pub fn classical_fib(n: i64) -> LaurentPoly {
    if n < 0 {
        let m = -n;
        let reflected = classical_fib(m).mul_term(&BigInt::from(1), &Monomial::new(0, -m, 0));
        return if m % 2 == 0 { -reflected } else { reflected };
    }
    let mut sum = LaurentPoly::zero();
    for k in 0..=(n - 1).div_euclid(2) {
        sum += &LaurentPoly::term_big(
            binomial(n - 1 - k, k),
            Monomial::new(n - 1 - 2 * k, k, 0),
        );
    }
    sum
}

/// Classical Lucas polynomial: `L_n = sum_k (n/(n-k)) C(n-k, k) s^k
/// x^(n-2k)` with the weight computed division-free as
/// `C(n-k,k) + C(n-k-1,k-1)`; the starred variant has value 1 at index 0.
pub fn classical_lucas(n: i64, star: bool) -> LaurentPoly {
    if n == 0 {
        return LaurentPoly::constant(if star { 1 } else { 2 });
    }
    if n < 0 {
        let m = -n;
        let reflected =
            classical_lucas(m, star).mul_term(&BigInt::from(1), &Monomial::new(0, -m, 0));
        return if m % 2 == 0 { reflected } else { -reflected };
    }
    let mut sum = LaurentPoly::zero();
    for k in 0..=n.div_euclid(2) {
        let c = binomial(n - k, k) + binomial(n - k - 1, k - 1);
        sum += &LaurentPoly::term_big(c, Monomial::new(n - 2 * k, k, 0));
    }
    sum
}

/// The q-family obtained by pushing the classical polynomial through the
/// umbral operator map `x^k ↦ A^k(1)`. Equals [`fib`]/[`lucas`] — that
/// equality is one of the registry's cross-construction checks.
pub fn family_by_operator(kind: FamilyKind, n: i64) -> LaurentPoly {
    assert!(n >= 0, "family_by_operator: negative index {n}");
    let classical = match kind {
        FamilyKind::Fib => classical_fib(n),
        FamilyKind::Lucas => classical_lucas(n, false),
        FamilyKind::LucasStar => classical_lucas(n, true),
    };
    umbral_apply(&classical)
}

/// Largest index admitted by the word enumerators. The word count grows
/// like the Fibonacci numbers; 16 keeps enumeration instant while being
/// far past the point where agreement could be coincidence.
pub const MORSE_BOUND: i64 = 16;

/// A word over the two-letter alphabet `{a, b}` where `a` has length 1 and
/// `b` has length 2 (the Morse-code model: dots and dashes).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseWord {
    letters: Vec<MorseLetter>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MorseLetter {
    A,
    B,
}

impl MorseWord {
    pub fn new(letters: Vec<MorseLetter>) -> Self {
        MorseWord { letters }
    }

    /// Parse from a string of `a`s and `b`s (test convenience).
    pub fn parse(word: &str) -> Self {
        MorseWord {
            letters: word
                .chars()
                .map(|c| match c {
                    'a' => MorseLetter::A,
                    'b' => MorseLetter::B,
                    other => panic!("MorseWord::parse: invalid letter {other:?}"),
                })
                .collect(),
        }
    }

    /// The weighted length: `a` counts 1, `b` counts 2.
    pub fn weighted_length(&self) -> i64 {
        self.letters
            .iter()
            .map(|l| match l {
                MorseLetter::A => 1,
                MorseLetter::B => 2,
            })
            .sum()
    }

    /// The weight `q^(i_1 + ... + i_k) s^k x^(m-k)` where the word has `m`
    /// letters and its `b`s sit at the 1-based positions `i_1 < ... < i_k`.
    pub fn weight(&self) -> LaurentPoly {
        let mut q_exp = 0i64;
        let mut b_count = 0i64;
        let mut a_count = 0i64;
        for (i, l) in self.letters.iter().enumerate() {
            match l {
                MorseLetter::A => a_count += 1,
                MorseLetter::B => {
                    b_count += 1;
                    q_exp += i as i64 + 1;
                }
            }
        }
        LaurentPoly::term(1, a_count, b_count, q_exp)
    }
}

/// All words of the given weighted length (empty for negative lengths,
/// just the empty word for length 0).
pub fn morse_words(weighted_length: i64) -> Vec<MorseWord> {
    if weighted_length < 0 {
        return Vec::new();
    }
    if weighted_length == 0 {
        return vec![MorseWord::new(Vec::new())];
    }
    let mut out = Vec::new();
    for mut w in morse_words(weighted_length - 1) {
        w.letters.insert(0, MorseLetter::A);
        out.push(w);
    }
    for mut w in morse_words(weighted_length - 2) {
        w.letters.insert(0, MorseLetter::B);
        out.push(w);
    }
    out
}

fn check_morse_bound(n: i64) -> Result<()> {
    if !(0..=MORSE_BOUND).contains(&n) {
        return Err(Error::BoundExceeded {
            n,
            bound: MORSE_BOUND,
        });
    }
    Ok(())
}

/// Total weight of all words of weighted length `n - 1`; equals `fib(n)`
/// by pure enumeration, with no algebra shared with the other
/// constructions.
pub fn morse_sum(n: i64) -> Result<LaurentPoly> {
    check_morse_bound(n)?;
    let mut sum = LaurentPoly::zero();
    for w in morse_words(n - 1) {
        sum += &w.weight();
    }
    Ok(sum)
}

/// Total weight of the circular coverings of circumference `n`: the linear
/// words of length `n` (coverings cut open at the anchor point) plus `s`
/// times the words of length `n - 2` (coverings where a domino straddles
/// the anchor). Equals `lucas(n, false)` for `n >= 1`.
pub fn circular_sum(n: i64) -> Result<LaurentPoly> {
    assert!(n >= 1, "circular_sum: index must be positive, got {n}");
    check_morse_bound(n)?;
    let mut sum = LaurentPoly::zero();
    for w in morse_words(n) {
        sum += &w.weight();
    }
    for w in morse_words(n - 2) {
        sum += &w.weight().mul_term(&BigInt::from(1), &Monomial::new(0, 1, 0));
    }
    Ok(sum)
}

/// The evaluation points at which the families collapse to signed
/// q-powers: always `x = 1`, with `s` and the base as named.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialValueSpec {
    /// `s = -1`, base `q`.
    NegOne,
    /// `s = -1/q`, base `q`.
    NegInvQ,
    /// `s = -1`, base `1/q`.
    NegOneInvBase,
    /// `s = -q`, base `1/q`.
    NegQInvBase,
}

impl SpecialValueSpec {
    /// The substitution realizing this evaluation on a symbolic family
    /// polynomial (all three variables replaced simultaneously).
    pub fn subst_map(&self) -> SubstMap {
        let base = SubstMap::new().x_to(SubstTarget::constant(1));
        match self {
            SpecialValueSpec::NegOne => base.s_to(SubstTarget::constant(-1)),
            SpecialValueSpec::NegInvQ => base.s_to(SubstTarget::monomial(-1, 0, 0, -1)),
            SpecialValueSpec::NegOneInvBase => base
                .s_to(SubstTarget::constant(-1))
                .q_to(SubstTarget::monomial(1, 0, 0, -1)),
            SpecialValueSpec::NegQInvBase => base
                .s_to(SubstTarget::monomial(-1, 0, 0, 1))
                .q_to(SubstTarget::monomial(1, 0, 0, -1)),
        }
    }
}

/// `(-1)^m q^e` as a polynomial.
fn signed_q_power(m: i64, e: i64) -> LaurentPoly {
    LaurentPoly::term(if m.rem_euclid(2) == 0 { 1 } else { -1 }, 0, 0, e)
}

/// Closed form of `F_n(1, -1/q, q)`: zero at indices divisible by 3,
/// a single signed q-power otherwise.
fn fib_at_neg_inv_q(n: i64) -> LaurentPoly {
    debug_assert!(n >= 0);
    match n % 3 {
        0 => LaurentPoly::zero(),
        1 => {
            let m = n / 3;
            signed_q_power(m, m * (3 * m - 1) / 2)
        }
        _ => {
            let m = n / 3;
            signed_q_power(m, m * (3 * m + 1) / 2)
        }
    }
}

/// Closed form of `L_n(1, -1, q)` for `n >= 1`: one or (at indices
/// divisible by 3) two signed q-powers.
fn lucas_at_neg_one(n: i64) -> LaurentPoly {
    debug_assert!(n >= 1);
    match n % 3 {
        0 => {
            let m = n / 3;
            &signed_q_power(m, m * (3 * m - 1) / 2) + &signed_q_power(m, m * (3 * m + 1) / 2)
        }
        1 => {
            let m = n / 3;
            signed_q_power(m, m * (3 * m + 1) / 2)
        }
        _ => {
            let m = (n + 1) / 3;
            signed_q_power(m, m * (3 * m - 1) / 2)
        }
    }
}

/// Closed form of `L_n(1, -1/q, q)` for `n >= 1`.
fn lucas_at_neg_inv_q(n: i64) -> LaurentPoly {
    debug_assert!(n >= 1);
    match n % 3 {
        0 => {
            let m = n / 3;
            &signed_q_power(m, m * (3 * m - 1) / 2) + &signed_q_power(m, m * (3 * m - 5) / 2)
        }
        1 => {
            let m = n / 3;
            signed_q_power(m, m * (3 * m + 1) / 2)
        }
        _ => {
            let m = (n + 1) / 3;
            signed_q_power(m, (m - 2) * (3 * m - 1) / 2)
        }
    }
}

/// Closed-form special value of a family member at one of the tabulated
/// evaluation points, without constructing the symbolic polynomial.
///
/// The tables cover `F_n(1, -1/q, q)` and the Lucas families at all four
/// specs (the inverse-base values are the base-`q` closed forms with every
/// q-exponent negated, because evaluating first and inverting `q` after
/// commutes with these substitutions). Combinations without a tabulated
/// closed form return [`Error::UnsupportedSpec`]. Direct substitution into
/// the symbolic polynomial is the arbiter; the identity registry checks
/// every tabulated value against it.
pub fn special_value(kind: FamilyKind, n: i64, spec: SpecialValueSpec) -> Result<LaurentPoly> {
    assert!(n >= 0, "special_value: negative index {n}");
    match kind {
        FamilyKind::Fib => match spec {
            SpecialValueSpec::NegInvQ => Ok(fib_at_neg_inv_q(n)),
            _ => Err(Error::UnsupportedSpec),
        },
        FamilyKind::Lucas | FamilyKind::LucasStar => {
            if n == 0 {
                return Ok(LaurentPoly::constant(if kind == FamilyKind::LucasStar {
                    1
                } else {
                    2
                }));
            }
            let base = match spec {
                SpecialValueSpec::NegOne | SpecialValueSpec::NegOneInvBase => lucas_at_neg_one(n),
                SpecialValueSpec::NegInvQ | SpecialValueSpec::NegQInvBase => {
                    lucas_at_neg_inv_q(n)
                }
            };
            match spec {
                SpecialValueSpec::NegOne | SpecialValueSpec::NegInvQ => Ok(base),
                _ => Ok(base
                    .substitute(&SubstMap::q_inv())
                    .expect("q inversion never fails")),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64, i64, i64)]) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for &(c, x, s, q) in terms {
            out.add_term(Monomial::new(x, s, q), BigInt::from(c));
        }
        out
    }

    #[test]
    fn fib_first_values() {
        assert!(fib(0).is_zero());
        assert_eq!(fib(1), LaurentPoly::one());
        assert_eq!(fib(2), LaurentPoly::x());
        assert_eq!(fib(3), p(&[(1, 2, 0, 0), (1, 0, 1, 1)]));
        assert_eq!(fib(4).to_string(), "x^3 + (q^2+q)*s*x");
        // F_5 = x^4 + q(1+q+q^2) s x^2 + q^3 s^2
        assert_eq!(
            fib(5),
            p(&[
                (1, 4, 0, 0),
                (1, 2, 1, 1),
                (1, 2, 1, 2),
                (1, 2, 1, 3),
                (1, 0, 2, 3)
            ])
        );
    }

    #[test]
    fn fib_negative_indices() {
        assert_eq!(fib(-1), p(&[(1, 0, -1, 0)]));
        assert_eq!(fib(-2), p(&[(-1, 1, -2, 0)]));
        assert_eq!(fib(-2).to_string(), "-s^-2*x");
        // Reflection rule at a larger index.
        let direct = fib(-5);
        let expected = fib(5).mul_term(&BigInt::from(1), &Monomial::new(0, -5, 0));
        assert_eq!(direct, expected);
    }

    #[test]
    fn recurrences_agree_with_explicit_form() {
        for n in 0..=12 {
            let reference = fib(n);
            for rule in [
                FibRecurrence::UpscaleS,
                FibRecurrence::DownscaleS,
                FibRecurrence::FourTerm,
            ] {
                assert_eq!(fib_by_recurrence(n, rule), reference, "n={n} {rule:?}");
            }
        }
    }

    #[test]
    fn lucas_first_values() {
        assert_eq!(lucas(0, false), LaurentPoly::constant(2));
        assert_eq!(lucas(0, true), LaurentPoly::one());
        assert_eq!(lucas(1, false), LaurentPoly::x());
        assert_eq!(lucas(2, false), p(&[(1, 2, 0, 0), (1, 0, 1, 0), (1, 0, 1, 1)]));
        assert_eq!(
            lucas(4, false).to_string(),
            "x^4 + (q^3+q^2+q+1)*s*x^2 + (q^3+q)*s^2"
        );
        assert_eq!(lucas(3, true), lucas(3, false));
    }

    #[test]
    fn lucas_negative_indices() {
        assert_eq!(lucas(-1, false), p(&[(-1, 1, -1, 0)]));
        assert_eq!(lucas(-1, false).to_string(), "-s^-1*x");
        let direct = lucas(-4, false);
        let expected = lucas(4, false).mul_term(&BigInt::from(1), &Monomial::new(0, -4, 0));
        assert_eq!(direct, expected);
    }

    #[test]
    fn lucas_decomposes_into_fibs() {
        // L_n = F_(n+1) + s F_(n-1), including negative indices.
        for n in -6..=12 {
            let rhs = &fib(n + 1) + &fib(n - 1).mul_term(&BigInt::from(1), &Monomial::new(0, 1, 0));
            assert_eq!(lucas(n, false), rhs, "n={n}");
        }
    }

    #[test]
    fn operator_route_matches() {
        assert_eq!(family_by_operator(FamilyKind::Fib, 1), LaurentPoly::one());
        assert_eq!(family_by_operator(FamilyKind::Fib, 4), fib(4));
        assert_eq!(
            family_by_operator(FamilyKind::Lucas, 2),
            p(&[(1, 2, 0, 0), (1, 0, 1, 0), (1, 0, 1, 1)])
        );
        for n in 0..=10 {
            assert_eq!(family_by_operator(FamilyKind::Fib, n), fib(n), "n={n}");
            assert_eq!(
                family_by_operator(FamilyKind::Lucas, n),
                lucas(n, false),
                "n={n}"
            );
            assert_eq!(
                family_by_operator(FamilyKind::LucasStar, n),
                lucas(n, true),
                "n={n}"
            );
        }
    }

    #[test]
    fn classical_families_are_the_q_one_specialization() {
        for n in -6..=12 {
            assert_eq!(
                fib(n).substitute(&SubstMap::q_one()).unwrap(),
                classical_fib(n),
                "n={n}"
            );
            assert_eq!(
                lucas(n, false).substitute(&SubstMap::q_one()).unwrap(),
                classical_lucas(n, false),
                "n={n}"
            );
        }
    }

    #[test]
    fn morse_weights() {
        assert_eq!(MorseWord::parse("").weight(), LaurentPoly::one());
        assert_eq!(MorseWord::parse("aaa").weight(), LaurentPoly::x_pow(3));
        assert_eq!(MorseWord::parse("ab").weight(), p(&[(1, 1, 1, 2)]));
        assert_eq!(MorseWord::parse("ba").weight(), p(&[(1, 1, 1, 1)]));
        assert_eq!(MorseWord::parse("bb").weight(), p(&[(1, 0, 2, 3)]));
        assert_eq!(MorseWord::parse("ab").weighted_length(), 3);
    }

    #[test]
    fn morse_enumeration_counts_words() {
        // Word counts follow the classical Fibonacci numbers.
        let (mut a, mut b) = (1i64, 1i64); // counts at lengths 0 and 1
        assert_eq!(morse_words(0).len() as i64, a);
        assert_eq!(morse_words(1).len() as i64, b);
        for len in 2..=15 {
            (a, b) = (b, a + b);
            assert_eq!(morse_words(len).len() as i64, b, "len={len}");
        }
        assert_eq!(morse_words(15).len(), 987);
    }

    #[test]
    fn morse_sum_matches_fib() {
        assert_eq!(morse_sum(1).unwrap(), LaurentPoly::one());
        assert_eq!(
            morse_sum(4).unwrap(),
            p(&[(1, 3, 0, 0), (1, 1, 1, 2), (1, 1, 1, 1)])
        );
        for n in 0..=10 {
            assert_eq!(morse_sum(n).unwrap(), fib(n), "n={n}");
        }
        assert_eq!(
            morse_sum(17),
            Err(Error::BoundExceeded { n: 17, bound: 16 })
        );
    }

    #[test]
    fn circular_sum_matches_lucas() {
        assert_eq!(
            circular_sum(2).unwrap(),
            p(&[(1, 2, 0, 0), (1, 0, 1, 1), (1, 0, 1, 0)])
        );
        assert_eq!(circular_sum(4).unwrap(), lucas(4, false));
        for n in 1..=9 {
            assert_eq!(circular_sum(n).unwrap(), lucas(n, false), "n={n}");
        }
        assert_eq!(
            circular_sum(17),
            Err(Error::BoundExceeded { n: 17, bound: 16 })
        );
    }

    #[test]
    fn special_value_examples() {
        assert!(special_value(FamilyKind::Fib, 3, SpecialValueSpec::NegInvQ)
            .unwrap()
            .is_zero());
        assert_eq!(
            special_value(FamilyKind::LucasStar, 6, SpecialValueSpec::NegOne).unwrap(),
            p(&[(1, 0, 0, 5), (1, 0, 0, 7)])
        );
        assert_eq!(
            special_value(FamilyKind::LucasStar, 3, SpecialValueSpec::NegOne).unwrap(),
            p(&[(-1, 0, 0, 1), (-1, 0, 0, 2)])
        );
        assert_eq!(
            special_value(FamilyKind::Fib, 0, SpecialValueSpec::NegOne),
            Err(Error::UnsupportedSpec)
        );
    }

    #[test]
    fn special_values_agree_with_direct_substitution() {
        for n in 0..=10 {
            for (kind, poly) in [
                (FamilyKind::Fib, fib(n)),
                (FamilyKind::Lucas, lucas(n, false)),
                (FamilyKind::LucasStar, lucas(n, true)),
            ] {
                for spec in [
                    SpecialValueSpec::NegOne,
                    SpecialValueSpec::NegInvQ,
                    SpecialValueSpec::NegOneInvBase,
                    SpecialValueSpec::NegQInvBase,
                ] {
                    match special_value(kind, n, spec) {
                        Ok(table) => {
                            let direct = poly.substitute(&spec.subst_map()).unwrap();
                            assert_eq!(table, direct, "{kind:?} n={n} {spec:?}");
                        }
                        Err(Error::UnsupportedSpec) => {}
                        Err(other) => panic!("unexpected error {other:?}"),
                    }
                }
            }
        }
    }

    #[test]
    fn degree_bounds() {
        for n in 1..=12 {
            assert_eq!(fib(n).max_x_exponent(), Some(n - 1), "fib n={n}");
            assert_eq!(lucas(n, false).max_x_exponent(), Some(n), "lucas n={n}");
        }
    }
}
