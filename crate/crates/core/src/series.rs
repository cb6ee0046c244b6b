//! Univariate power series in t over Q with explicit precision tracking.
//!
//! A series is either `Exact` (a polynomial: all unstored coefficients are
//! zero) or truncated at T (coefficients of t^j are known for j < T and
//! unknown beyond). Precision propagates through arithmetic the way
//! valuations demand; in particular multiplying by a series of positive
//! order gains precision, which is what makes curve pullbacks of high-order
//! terms affordable.

use crate::rational::{is_zero, Q};
use num_traits::{One, Zero};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Prec {
    Exact,
    /// Coefficients known strictly below this degree.
    Trunc(u32),
}

impl Prec {
    fn min(self, other: Prec) -> Prec {
        match (self, other) {
            (Prec::Exact, p) | (p, Prec::Exact) => p,
            (Prec::Trunc(a), Prec::Trunc(b)) => Prec::Trunc(a.min(b)),
        }
    }

    fn shift(self, k: u32) -> Prec {
        match self {
            Prec::Exact => Prec::Exact,
            Prec::Trunc(t) => Prec::Trunc(t.saturating_add(k)),
        }
    }
}

/// Result of asking for the order (valuation) of a series.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SeriesOrd {
    /// First nonzero coefficient sits at this degree.
    Finite(u32),
    /// All known coefficients vanish; the true order is at least this
    /// (truncated information).
    AtLeast(u32),
    /// The exact zero series.
    Zero,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PowerSeries {
    /// Dense low-degree coefficients; for `Trunc(T)` at most T entries.
    coeffs: Vec<Q>,
    prec: Prec,
}

impl PowerSeries {
    pub fn zero() -> Self {
        PowerSeries {
            coeffs: Vec::new(),
            prec: Prec::Exact,
        }
    }

    pub fn constant(c: Q) -> Self {
        PowerSeries {
            coeffs: vec![c],
            prec: Prec::Exact,
        }
        .normalized()
    }

    pub fn monomial(c: Q, k: u32) -> Self {
        if is_zero(&c) {
            return PowerSeries::zero();
        }
        let mut coeffs = vec![Q::zero(); k as usize];
        coeffs.push(c);
        PowerSeries {
            coeffs,
            prec: Prec::Exact,
        }
    }

    pub fn from_coeffs(coeffs: Vec<Q>, prec: Prec) -> Self {
        PowerSeries { coeffs, prec }.normalized()
    }

    fn normalized(mut self) -> Self {
        if let Prec::Trunc(t) = self.prec {
            self.coeffs.truncate(t as usize);
        }
        if self.prec == Prec::Exact {
            while self.coeffs.last().map(is_zero).unwrap_or(false) {
                self.coeffs.pop();
            }
        }
        self
    }

    pub fn prec(&self) -> Prec {
        self.prec
    }

    /// The stored (known) coefficients, lowest degree first.
    pub fn known_coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_exact_zero(&self) -> bool {
        self.prec == Prec::Exact && self.coeffs.iter().all(is_zero)
    }

    /// Coefficient of t^j if it is within the known range.
    pub fn coeff(&self, j: u32) -> Option<Q> {
        match self.prec {
            Prec::Trunc(t) if j >= t => None,
            _ => Some(
                self.coeffs
                    .get(j as usize)
                    .cloned()
                    .unwrap_or_else(Q::zero),
            ),
        }
    }

    pub fn ord(&self) -> SeriesOrd {
        for (j, c) in self.coeffs.iter().enumerate() {
            if !is_zero(c) {
                return SeriesOrd::Finite(j as u32);
            }
        }
        match self.prec {
            Prec::Exact => SeriesOrd::Zero,
            Prec::Trunc(t) => SeriesOrd::AtLeast(t),
        }
    }

    /// Lower bound on the order (the order itself, or the truncation degree
    /// when all known coefficients vanish; u32::MAX for exact zero).
    fn ord_floor(&self) -> u32 {
        match self.ord() {
            SeriesOrd::Finite(k) => k,
            SeriesOrd::AtLeast(t) => t,
            SeriesOrd::Zero => u32::MAX,
        }
    }

    pub fn add(&self, other: &PowerSeries) -> PowerSeries {
        let prec = self.prec.min(other.prec);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for j in 0..n {
            let a = self.coeffs.get(j).cloned().unwrap_or_else(Q::zero);
            let b = other.coeffs.get(j).cloned().unwrap_or_else(Q::zero);
            coeffs.push(a + b);
        }
        PowerSeries { coeffs, prec }.normalized()
    }

    pub fn neg(&self) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            prec: self.prec,
        }
    }

    pub fn sub(&self, other: &PowerSeries) -> PowerSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Q) -> PowerSeries {
        if is_zero(c) {
            // Scaling by zero erases even unknown coefficients.
            return PowerSeries::zero();
        }
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            prec: self.prec,
        }
        .normalized()
    }

    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        if self.is_exact_zero() || other.is_exact_zero() {
            return PowerSeries::zero();
        }
        let prec = match (self.prec, other.prec) {
            (Prec::Exact, Prec::Exact) => Prec::Exact,
            _ => {
                let pa = self.prec.shift(0);
                let pb = other.prec.shift(0);
                let a_bound = match pa {
                    Prec::Exact => Prec::Exact,
                    Prec::Trunc(t) => Prec::Trunc(t.saturating_add(other.ord_floor())),
                };
                let b_bound = match pb {
                    Prec::Exact => Prec::Exact,
                    Prec::Trunc(t) => Prec::Trunc(t.saturating_add(self.ord_floor())),
                };
                a_bound.min(b_bound)
            }
        };
        let out_len = match prec {
            // Neither factor is exact zero, so both are nonempty here.
            Prec::Exact => self.coeffs.len() + other.coeffs.len() - 1,
            Prec::Trunc(t) => (t as usize).min(self.coeffs.len() + other.coeffs.len()),
        };
        let mut coeffs = vec![Q::zero(); out_len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= out_len {
                    break;
                }
                coeffs[i + j] += a * b;
            }
        }
        PowerSeries { coeffs, prec }.normalized()
    }

    /// Divide by t^k; requires the first k coefficients to be known zeros.
    pub fn shift_down(&self, k: u32) -> PowerSeries {
        if self.is_exact_zero() {
            return PowerSeries::zero();
        }
        for j in 0..(k as usize).min(self.coeffs.len()) {
            assert!(is_zero(&self.coeffs[j]), "shift_down below the order");
        }
        if let Prec::Trunc(t) = self.prec {
            assert!(t >= k, "shift_down past known precision");
        }
        let coeffs = self
            .coeffs
            .iter()
            .skip(k as usize)
            .cloned()
            .collect();
        let prec = match self.prec {
            Prec::Exact => Prec::Exact,
            Prec::Trunc(t) => Prec::Trunc(t - k),
        };
        PowerSeries { coeffs, prec }.normalized()
    }

    /// Multiply by t^k.
    pub fn shift_up(&self, k: u32) -> PowerSeries {
        if self.is_exact_zero() {
            return PowerSeries::zero();
        }
        let mut coeffs = vec![Q::zero(); k as usize];
        coeffs.extend(self.coeffs.iter().cloned());
        PowerSeries {
            coeffs,
            prec: self.prec.shift(k),
        }
        .normalized()
    }

    pub fn pow(&self, e: u32) -> PowerSeries {
        let mut result = PowerSeries::constant(Q::one());
        let mut base = self.clone();
        let mut e = e;
        loop {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e == 0 {
                return result;
            }
            base = base.mul(&base);
        }
    }

    /// Inverse of a unit (nonzero constant term required) to precision
    /// `out_prec`; for a truncated input the result precision is capped by
    /// the input's.
    pub fn inverse_unit(&self, out_prec: u32) -> Option<PowerSeries> {
        let a0 = self.coeff(0)?;
        if is_zero(&a0) {
            return None;
        }
        let t = match self.prec {
            Prec::Exact => out_prec,
            Prec::Trunc(t) => t.min(out_prec),
        };
        let inv0 = Q::one() / &a0;
        let mut out = vec![Q::zero(); t as usize];
        if t > 0 {
            out[0] = inv0.clone();
        }
        for n in 1..t as usize {
            let mut s = Q::zero();
            for k in 1..=n {
                if let Some(ak) = self.coeffs.get(k) {
                    if !is_zero(ak) {
                        s += ak * &out[n - k];
                    }
                }
            }
            out[n] = -(&inv0) * s;
        }
        Some(PowerSeries::from_coeffs(out, Prec::Trunc(t)))
    }

    /// Truncate to (at most) the given precision.
    pub fn truncate(&self, t: u32) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.clone(),
            prec: self.prec.min(Prec::Trunc(t)),
        }
        .normalized()
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if is_zero(c) {
                continue;
            }
            let neg = c < &Q::zero();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let m = crate::rational::render(&mag);
            match j {
                0 => write!(f, "{m}")?,
                1 if mag.is_one() => write!(f, "t")?,
                1 => write!(f, "{m}*t")?,
                _ if mag.is_one() => write!(f, "t^{j}")?,
                _ => write!(f, "{m}*t^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        if let Prec::Trunc(t) = self.prec {
            write!(f, " + O(t^{t})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn t() -> PowerSeries {
        PowerSeries::monomial(Q::one(), 1)
    }

    #[test]
    fn geometric_series_inverse() {
        // 1/(1 - t) = 1 + t + t^2 + ...
        let s = PowerSeries::constant(Q::one()).sub(&t());
        let inv = s.inverse_unit(6).unwrap();
        for j in 0..6 {
            assert_eq!(inv.coeff(j), Some(Q::one()));
        }
        assert_eq!(inv.coeff(6), None);
        // (1 - t) * inverse == 1 to available precision.
        let prod = s.mul(&inv);
        assert_eq!(prod.coeff(0), Some(Q::one()));
        for j in 1..6 {
            assert_eq!(prod.coeff(j), Some(Q::zero()));
        }
    }

    #[test]
    fn precision_gains_through_valuation() {
        // (t^3 + unknown at 5) * (t^2 exact): precision becomes 5 + 2.
        let a = PowerSeries::from_coeffs(
            vec![Q::zero(), Q::zero(), Q::zero(), Q::one(), Q::zero()],
            Prec::Trunc(5),
        );
        let b = PowerSeries::monomial(Q::one(), 2);
        let prod = a.mul(&b);
        assert_eq!(prod.prec(), Prec::Trunc(7));
        assert_eq!(prod.ord(), SeriesOrd::Finite(5));
    }

    #[test]
    fn truncated_zero_has_unknown_order() {
        let s = PowerSeries::from_coeffs(vec![Q::zero(), Q::zero()], Prec::Trunc(4));
        assert_eq!(s.ord(), SeriesOrd::AtLeast(4));
        assert!(PowerSeries::zero().ord() == SeriesOrd::Zero);
        assert_eq!(t().ord(), SeriesOrd::Finite(1));
    }

    #[test]
    fn exact_zero_absorbs_in_products() {
        let unknown = PowerSeries::from_coeffs(vec![Q::zero()], Prec::Trunc(1));
        let prod = unknown.mul(&PowerSeries::zero());
        assert!(prod.is_exact_zero());
    }

    #[test]
    fn arithmetic_and_display() {
        let s = t().pow(2).sub(&t().pow(3).scale(&qi(1)));
        assert_eq!(s.to_string(), "t^2 - t^3");
        let tr = s.truncate(3);
        assert_eq!(tr.to_string(), "t^2 + O(t^3)");
        assert_eq!(s.scale(&q(1, 2)).coeff(2), Some(q(1, 2)));
    }

    #[test]
    fn add_respects_weakest_precision() {
        let a = PowerSeries::monomial(Q::one(), 1).truncate(3);
        let b = PowerSeries::monomial(Q::one(), 5);
        let sum = a.add(&b);
        assert_eq!(sum.prec(), Prec::Trunc(3));
        // The t^5 contribution is beyond precision and discarded.
        assert_eq!(sum.coeff(2), Some(Q::zero()));
        assert_eq!(sum.coeff(4), None);
    }
}
