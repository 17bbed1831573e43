//! Truncated formal power series in `q` with exact integer coefficients.
//!
//! A [`QSeries`] holds the coefficients of `q^0 .. q^order` and represents
//! an element of ℤ[[q]] modulo `q^(order+1)`. Series enter the picture
//! where identities between infinite products and infinite sums are checked
//! to a fixed order: both sides are expanded exactly up to `q^N` and
//! compared coefficient by coefficient.
//!
//! Arithmetic is exact; truncation is the only approximation, and every
//! operation preserves the truncation order. Inversion requires a unit
//! constant term (±1), which covers all the products this library inverts —
//! Pochhammer-type products have constant term 1.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::LaurentPoly;

/// Power series in `q` truncated at a fixed order.
///
/// `coeffs[j]` is the coefficient of `q^j`; the order is `coeffs.len() - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<BigInt>,
}

impl QSeries {
    pub fn zero(order: usize) -> Self {
        QSeries {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = QSeries::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, j: usize) -> &BigInt {
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Reinterpret a pure-`q` polynomial as a series.
    ///
    /// Panics if the polynomial involves `x` or `s` (that is a programming
    /// error, not a data condition); returns [`Error::NegativeExponent`]
    /// when a genuine Laurent term `q^-k` is present, since such a value has
    /// no power-series expansion. Exponents above `order` are truncated
    /// away, which is the intended semantics of working modulo `q^(order+1)`.
    pub fn from_poly(p: &LaurentPoly, order: usize) -> Result<QSeries> {
        assert!(
            p.is_pure_q(),
            "from_poly: polynomial involves x or s: {p}"
        );
        let mut s = QSeries::zero(order);
        for (m, c) in p.terms() {
            if m.q < 0 {
                return Err(Error::NegativeExponent { exponent: m.q });
            }
            let j = m.q as usize;
            if j <= order {
                s.coeffs[j] += c;
            }
        }
        Ok(s)
    }

    pub fn add(&self, rhs: &QSeries) -> QSeries {
        assert_eq!(self.order(), rhs.order(), "order mismatch");
        QSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &QSeries) -> QSeries {
        assert_eq!(self.order(), rhs.order(), "order mismatch");
        QSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &QSeries) -> QSeries {
        assert_eq!(self.order(), rhs.order(), "order mismatch");
        let n = self.order();
        let mut out = QSeries::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n + 1 - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    /// Multiply in place by the binomial `1 + sign * q^j` (`sign` = ±1).
    ///
    /// This is the building block for Pochhammer-type products: each factor
    /// costs one shifted add rather than a full series multiplication.
    pub fn mul_binomial(&mut self, sign: i64, j: usize) {
        debug_assert!(sign == 1 || sign == -1);
        if j == 0 {
            // (1 ± 1): scale by 2 or annihilate.
            for c in &mut self.coeffs {
                if sign == 1 {
                    *c += c.clone();
                } else {
                    *c = BigInt::zero();
                }
            }
            return;
        }
        let n = self.order();
        for i in (0..=n.saturating_sub(j)).rev() {
            let delta = &self.coeffs[i] * sign;
            self.coeffs[i + j] += delta;
        }
    }

    /// Multiplicative inverse modulo `q^(order+1)`.
    ///
    /// Returns [`Error::NonUnitConstantTerm`] unless the constant term is
    /// ±1 — over ℤ those are the only series units whose inverses stay
    /// integral.
    pub fn inverse(&self) -> Result<QSeries> {
        let a0 = &self.coeffs[0];
        if !a0.magnitude().is_one() {
            return Err(Error::NonUnitConstantTerm);
        }
        let n = self.order();
        let mut inv = QSeries::zero(n);
        inv.coeffs[0] = a0.clone(); // (±1)^-1 = ±1
        for m in 1..=n {
            // sum_{k=1..m} a_k * b_{m-k} must cancel against a_0 * b_m.
            let mut acc = BigInt::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &inv.coeffs[m - k];
                }
            }
            inv.coeffs[m] = -acc * a0; // dividing by a_0 = multiplying by ±1
        }
        Ok(inv)
    }

    /// The first order at which the two series differ, if any.
    pub fn first_difference(&self, rhs: &QSeries) -> Option<usize> {
        assert_eq!(self.order(), rhs.order(), "order mismatch");
        self.coeffs
            .iter()
            .zip(&rhs.coeffs)
            .position(|(a, b)| a != b)
    }

    /// Rendering truncated to the first `max_terms` nonzero terms.
    pub fn render_truncated(&self, max_terms: usize) -> String {
        let nonzero: Vec<(usize, &BigInt)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        if nonzero.is_empty() {
            return format!("0 + O(q^{})", self.order() + 1);
        }
        let shown = nonzero.len().min(max_terms);
        let mut out = String::new();
        for (k, (j, c)) in nonzero.iter().take(shown).enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mag = c.abs();
            let body = match (j, mag.is_one()) {
                (0, _) => mag.to_string(),
                (_, true) if *j == 1 => "q".to_string(),
                (_, true) => format!("q^{j}"),
                (_, false) if *j == 1 => format!("{mag}*q"),
                (_, false) => format!("{mag}*q^{j}"),
            };
            out.push_str(&body);
        }
        if nonzero.len() > shown {
            out.push_str(&format!(" + ... ({} more terms)", nonzero.len() - shown));
        }
        out.push_str(&format!(" + O(q^{})", self.order() + 1));
        out
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_truncated(usize::MAX))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(coeffs: &[i64]) -> QSeries {
        QSeries {
            coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    #[test]
    fn geometric_series_inverts_one_minus_q() {
        // 1/(1-q) = 1 + q + q^2 + q^3 + q^4
        let mut p = QSeries::one(4);
        p.mul_binomial(-1, 1);
        assert_eq!(p.inverse().unwrap(), series(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn pochhammer_inverse_counts_bounded_partitions() {
        // 1/((1-q)(1-q^2)(1-q^3)) = 1 + q + 2q^2 + 3q^3 + ...
        let mut p = QSeries::one(3);
        for j in 1..=3 {
            p.mul_binomial(-1, j);
        }
        assert_eq!(p.inverse().unwrap(), series(&[1, 1, 2, 3]));
    }

    #[test]
    fn inverse_roundtrips() {
        let mut p = QSeries::one(12);
        for j in 1..=12 {
            p.mul_binomial(-1, j);
        }
        let inv = p.inverse().unwrap();
        assert_eq!(p.mul(&inv), QSeries::one(12));
    }

    #[test]
    fn inverse_of_negative_unit_constant() {
        // -1 + q has constant term -1; (-1 + q)^-1 = -(1 + q + q^2 + ...).
        let p = series(&[-1, 1, 0, 0]);
        let inv = p.inverse().unwrap();
        assert_eq!(p.mul(&inv), QSeries::one(3));
        assert_eq!(inv, series(&[-1, -1, -1, -1]));
    }

    #[test]
    fn inverse_requires_unit() {
        let p = series(&[2, 1]);
        assert_eq!(p.inverse(), Err(Error::NonUnitConstantTerm));
        let p = series(&[0, 1]);
        assert_eq!(p.inverse(), Err(Error::NonUnitConstantTerm));
    }

    #[test]
    fn from_poly_truncates_high_terms() {
        let mut p = LaurentPoly::one();
        p.add_term(crate::poly::Monomial::new(0, 0, 3), BigInt::from(5));
        p.add_term(crate::poly::Monomial::new(0, 0, 99), BigInt::from(7));
        let s = QSeries::from_poly(&p, 10).unwrap();
        assert_eq!(s, series(&[1, 0, 0, 5, 0, 0, 0, 0, 0, 0, 0]));
    }

    #[test]
    fn from_poly_rejects_laurent_terms() {
        let p = LaurentPoly::q_pow(-2);
        assert_eq!(
            QSeries::from_poly(&p, 5),
            Err(Error::NegativeExponent { exponent: -2 })
        );
    }

    #[test]
    fn multiplication_truncates_consistently() {
        // (1+q)(1-q) = 1 - q^2 at every order >= 2.
        let mut a = QSeries::one(5);
        a.mul_binomial(1, 1);
        let mut b = QSeries::one(5);
        b.mul_binomial(-1, 1);
        assert_eq!(a.mul(&b), series(&[1, 0, -1, 0, 0, 0]));
    }

    #[test]
    fn display_shapes() {
        assert_eq!(series(&[1, -1, 0, 2]).to_string(), "1 - q + 2*q^3 + O(q^4)");
        assert_eq!(QSeries::zero(3).to_string(), "0 + O(q^4)");
        assert_eq!(
            series(&[0, 1, 1, 1, 1]).render_truncated(2),
            "q + q^2 + ... (2 more terms) + O(q^5)"
        );
    }

    #[test]
    fn first_difference_reports_lowest_order() {
        let a = series(&[1, 2, 3]);
        let b = series(&[1, 2, 4]);
        assert_eq!(a.first_difference(&b), Some(2));
        assert_eq!(a.first_difference(&a), None);
    }
}
