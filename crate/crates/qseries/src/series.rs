//! Truncated Laurent series with exact integer coefficients.
//!
//! A [`Series`] densely stores the coefficients of `q^base .. q^(order-1)`.
//! Everything below `base` is exactly zero and everything at `order` or
//! above is unknown.  Every operation computes how far its result remains
//! exact, so any coefficient that can be read really is the coefficient of
//! the underlying formal series — there is no floating point and no
//! silently wrong tail.
//!
//! Leading zeros are trimmed eagerly: for a nonzero series `base` is the
//! valuation (the lowest exponent with a nonzero coefficient), which keeps
//! the provable windows of products and inverses as wide as possible.

use std::fmt;
use std::sync::LazyLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

static ZERO: LazyLock<BigInt> = LazyLock::new(BigInt::zero);

/// Exact truncated Laurent series: coefficients of `q^base` through
/// `q^(order-1)`, with `order = base + coeffs.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    base: i64,
    coeffs: Vec<BigInt>,
}

/// Ceiling of `a / b` for positive `b`, exact for negative `a` too.
pub(crate) fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    (a + b - 1).div_euclid(b)
}

impl Series {
    /// Builds a series from a base exponent and a dense coefficient vector.
    /// The truncation order is `base + coeffs.len()`.  Leading zeros are
    /// absorbed into `base`.
    pub fn new(base: i64, mut coeffs: Vec<BigInt>) -> Series {
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            coeffs.drain(..lead);
        }
        Series { base: base + lead as i64, coeffs }
    }

    /// Convenience constructor from machine integers.
    pub fn from_ints(base: i64, ints: &[i64]) -> Series {
        Series::new(base, ints.iter().map(|&v| BigInt::from(v)).collect())
    }

    /// The zero series, known exactly below `order`.
    pub fn zero(order: i64) -> Series {
        Series { base: order, coeffs: Vec::new() }
    }

    /// The constant 1, known exactly below `order` (which must be positive
    /// for the constant term to be visible at all).
    pub fn one(order: i64) -> Series {
        if order <= 0 {
            return Series::zero(order);
        }
        let mut coeffs = vec![BigInt::zero(); order as usize];
        coeffs[0] = BigInt::one();
        Series { base: 0, coeffs }
    }

    /// A single term `c * q^exponent`, known exactly below `order`.
    pub fn monomial(coeff: BigInt, exponent: i64, order: i64) -> Result<Series> {
        if exponent >= order {
            return Err(Error::InvalidOrder { exponent, order });
        }
        let mut coeffs = vec![BigInt::zero(); (order - exponent) as usize];
        coeffs[0] = coeff;
        Ok(Series::new(exponent, coeffs))
    }

    /// Lowest exponent whose coefficient is stored (the valuation, when the
    /// series is nonzero).
    pub fn base(&self) -> i64 {
        self.base
    }

    /// Exponents below this are exact; at or above it, unknown.
    pub fn order(&self) -> i64 {
        self.base + self.coeffs.len() as i64
    }

    /// The stored coefficients of `q^base .. q^(order-1)`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// True when every known coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The lowest nonzero term, if any is known.
    pub fn first_nonzero(&self) -> Option<(i64, &BigInt)> {
        self.coeffs.first().map(|c| (self.base, c))
    }

    /// Coefficient of `q^exponent`; zero below `base`, an error at or past
    /// the truncation order where nothing is known.
    pub fn coeff(&self, exponent: i64) -> Result<BigInt> {
        if exponent >= self.order() {
            return Err(Error::UnknownCoefficient { exponent, order: self.order() });
        }
        Ok(self.at(exponent).clone())
    }

    /// Borrowed coefficient for an exponent known to lie below `order`.
    fn at(&self, exponent: i64) -> &BigInt {
        debug_assert!(exponent < self.order());
        if exponent < self.base {
            &ZERO
        } else {
            &self.coeffs[(exponent - self.base) as usize]
        }
    }

    /// Multiplies every coefficient by a constant.
    pub fn scale(&self, c: &BigInt) -> Series {
        if c.is_zero() {
            return Series::zero(self.order());
        }
        Series::new(self.base, self.coeffs.iter().map(|v| v * c).collect())
    }

    /// `scale` with a machine-integer constant.
    pub fn scale_i64(&self, c: i64) -> Series {
        self.scale(&BigInt::from(c))
    }

    /// Multiplies by `q^k`: shifts every exponent (and the order) by `k`.
    pub fn shift(&self, k: i64) -> Series {
        Series { base: self.base + k, coeffs: self.coeffs.clone() }
    }

    /// Forgets coefficients at or above `new_order`.  Truncating to an
    /// order at or past the current one is a no-op: knowledge can be
    /// discarded but never invented.
    pub fn truncate(&self, new_order: i64) -> Series {
        if new_order >= self.order() {
            return self.clone();
        }
        if new_order <= self.base {
            return Series::zero(new_order);
        }
        Series {
            base: self.base,
            coeffs: self.coeffs[..(new_order - self.base) as usize].to_vec(),
        }
    }

    /// Reciprocal series.  Requires the lowest known coefficient to be
    /// `+1` or `-1` so all quotient coefficients stay integral.  A series
    /// with base `b` and order `N` yields base `-b` and order `N - 2b`.
    pub fn inverse(&self) -> Result<Series> {
        let Some(lead) = self.coeffs.first() else {
            return Err(Error::NotInvertible("series has no known nonzero term"));
        };
        if !lead.magnitude().is_one() {
            return Err(Error::NotInvertible("lowest coefficient is not +1 or -1"));
        }
        let len = self.coeffs.len();
        let positive = lead.is_one();
        let mut inv: Vec<BigInt> = Vec::with_capacity(len);
        inv.push(lead.clone());
        for n in 1..len {
            let mut s = BigInt::zero();
            for k in 1..=n {
                let a = &self.coeffs[k];
                if !a.is_zero() {
                    s += a * &inv[n - k];
                }
            }
            inv.push(if positive { -s } else { s });
        }
        Ok(Series::new(-self.base, inv))
    }

    /// Extracts the arithmetic progression `modulus * n + residue`:
    /// coefficient `n` of the result is the coefficient of
    /// `q^(modulus*n + residue)` here.  The result is exact below
    /// `ceil((order - residue) / modulus)`.
    pub fn dissect(&self, modulus: i64, residue: i64) -> Result<Series> {
        if modulus < 1 || residue < 0 || residue >= modulus {
            return Err(Error::InvalidResidue { modulus, residue });
        }
        let n_lo = ceil_div(self.base - residue, modulus);
        let n_hi = ceil_div(self.order() - residue, modulus);
        if n_hi <= n_lo {
            return Ok(Series::zero(n_hi));
        }
        let mut out = Vec::with_capacity((n_hi - n_lo) as usize);
        for n in n_lo..n_hi {
            out.push(self.at(modulus * n + residue).clone());
        }
        Ok(Series::new(n_lo, out))
    }

    /// Inverse of dissection: reassembles one series per residue class
    /// into the series whose class-`r` progression is `parts[r]`.
    pub fn interleave(parts: &[Series], modulus: usize) -> Result<Series> {
        if modulus == 0 || parts.len() != modulus {
            return Err(Error::ArityMismatch { expected: modulus, got: parts.len() });
        }
        let m = modulus as i64;
        let mut base = i64::MAX;
        let mut order = i64::MAX;
        for (r, p) in parts.iter().enumerate() {
            base = base.min(m * p.base + r as i64);
            order = order.min(m * p.order() + r as i64);
        }
        if order <= base {
            return Ok(Series::zero(order));
        }
        let mut out = vec![BigInt::zero(); (order - base) as usize];
        for (r, p) in parts.iter().enumerate() {
            for (i, c) in p.coeffs.iter().enumerate() {
                let e = m * (p.base + i as i64) + r as i64;
                if e >= base && e < order {
                    out[(e - base) as usize] = c.clone();
                }
            }
        }
        Ok(Series::new(base, out))
    }

    /// Keeps only the terms whose exponent is `residue (mod modulus)`,
    /// zeroing the rest; exponents are not renumbered.
    pub fn residue_component(&self, modulus: i64, residue: i64) -> Result<Series> {
        if modulus < 1 || residue < 0 || residue >= modulus {
            return Err(Error::InvalidResidue { modulus, residue });
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let e = self.base + i as i64;
                if (e - residue).rem_euclid(modulus) == 0 { c.clone() } else { BigInt::zero() }
            })
            .collect();
        Ok(Series::new(self.base, coeffs))
    }

    /// First exponent below `below` (and below both truncation orders)
    /// where the two series disagree, with both coefficients.
    pub fn first_mismatch(&self, other: &Series, below: i64) -> Option<(i64, BigInt, BigInt)> {
        let lo = self.base.min(other.base);
        let hi = below.min(self.order()).min(other.order());
        for e in lo..hi {
            let a = self.at(e);
            let b = other.at(e);
            if a != b {
                return Some((e, a.clone(), b.clone()));
            }
        }
        None
    }

    /// True when the coefficients agree for every exponent below `below`
    /// that both series know.
    pub fn equal_up_to(&self, other: &Series, below: i64) -> bool {
        self.first_mismatch(other, below).is_none()
    }

    /// True when the series agree on the whole intersection of their known
    /// windows.
    pub fn agrees_with(&self, other: &Series) -> bool {
        self.equal_up_to(other, i64::MAX)
    }

    fn add_impl(&self, other: &Series, negate_other: bool) -> Series {
        let base = self.base.min(other.base);
        let order = self.order().min(other.order());
        if order <= base {
            return Series::zero(order);
        }
        let mut out = vec![BigInt::zero(); (order - base) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = self.base + i as i64;
            if e >= order {
                break;
            }
            out[(e - base) as usize] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let e = other.base + i as i64;
            if e >= order {
                break;
            }
            if negate_other {
                out[(e - base) as usize] -= c;
            } else {
                out[(e - base) as usize] += c;
            }
        }
        Series::new(base, out)
    }

    fn mul_impl(&self, other: &Series) -> Series {
        let order = (self.order() + other.base).min(other.order() + self.base);
        let base = self.base + other.base;
        if order <= base || self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Series::zero(order);
        }
        let len = (order - base) as usize;
        let mut acc = vec![BigInt::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(len - i).enumerate() {
                if !b.is_zero() {
                    acc[i + j] += a * b;
                }
            }
        }
        Series::new(base, acc)
    }
}

impl std::ops::Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        self.add_impl(rhs, false)
    }
}

impl std::ops::Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        self.add_impl(rhs, true)
    }
}

impl std::ops::Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        self.mul_impl(rhs)
    }
}

impl std::ops::Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series {
            base: self.base,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut shown = 0usize;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if shown == 12 {
                write!(f, " + ...")?;
                break;
            }
            let e = self.base + i as i64;
            let mag = c.magnitude();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (mag.is_one(), e) {
                (true, 0) => write!(f, "1")?,
                (false, 0) => write!(f, "{mag}")?,
                (true, 1) => write!(f, "q")?,
                (false, 1) => write!(f, "{mag}q")?,
                (true, _) => write!(f, "q^{e}")?,
                (false, _) => write!(f, "{mag}q^{e}")?,
            }
            shown += 1;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(base: i64, ints: &[i64]) -> Series {
        Series::from_ints(base, ints)
    }

    /// Brute-force partition count by enumerating partitions of n with
    /// parts bounded by `max`, used as an oracle for 1/(q;q)_inf.
    fn partitions(n: u64) -> u64 {
        fn rec(n: u64, max: u64) -> u64 {
            if n == 0 {
                return 1;
            }
            (1..=max.min(n)).map(|part| rec(n - part, part)).sum()
        }
        rec(n, n)
    }

    #[test]
    fn construction_trims_leading_zeros() {
        let a = s(0, &[0, 0, 5, 0]);
        assert_eq!(a.base(), 2);
        assert_eq!(a.order(), 4);
        assert_eq!(a.coeffs(), &[BigInt::from(5), BigInt::zero()]);

        let z = s(3, &[0, 0]);
        assert!(z.is_zero());
        assert_eq!(z.order(), 5);
        assert_eq!(z.base(), 5);
    }

    #[test]
    fn monomial_and_coeff() {
        let m = Series::monomial(BigInt::from(-3), 2, 5).unwrap();
        assert_eq!(m.coeff(2).unwrap(), BigInt::from(-3));
        assert_eq!(m.coeff(0).unwrap(), BigInt::zero());
        assert_eq!(m.coeff(-7).unwrap(), BigInt::zero());
        assert_eq!(
            m.coeff(5),
            Err(Error::UnknownCoefficient { exponent: 5, order: 5 })
        );

        let laurent = Series::monomial(BigInt::one(), -1, 5).unwrap();
        assert_eq!(laurent.base(), -1);
        assert_eq!(laurent.coeff(-1).unwrap(), BigInt::one());

        assert_eq!(
            Series::monomial(BigInt::one(), 7, 5),
            Err(Error::InvalidOrder { exponent: 7, order: 5 })
        );
    }

    #[test]
    fn addition_tracks_the_shorter_window() {
        let a = s(0, &[1, 1, 1, 1]); // order 4
        let b = s(0, &[1, -1]); // order 2
        let sum = &a + &b;
        assert_eq!(sum, s(0, &[2, 0]));
        assert_eq!(sum.order(), 2);

        let cancel = &a - &a;
        assert!(cancel.is_zero());
        assert_eq!(cancel.order(), 4);
    }

    #[test]
    fn laurent_addition_aligns_bases() {
        let a = s(-2, &[1, 0, 3]); // q^-2 + 3
        let b = s(0, &[4, 1]); // 4 + q
        let sum = &a + &b;
        assert_eq!(sum, s(-2, &[1, 0, 7]));
        assert_eq!(sum.order(), 1);
    }

    #[test]
    fn multiplication_telescopes() {
        let a = s(0, &[1, -1]); // 1 - q, order 2
        let b = s(0, &[1, 1, 1, 1, 1]); // order 5
        let prod = &a * &b;
        // (1-q)(1+q+...+q^4) = 1 - q^5, but q^5 is already out of window:
        // order = min(2 + 0, 5 + 0) = ... window from the short factor.
        assert_eq!(prod.order(), 2);
        assert_eq!(prod, s(0, &[1, 0]));
    }

    #[test]
    fn multiplication_binomial_square() {
        let a = s(0, &[1, 1, 0, 0]);
        let sq = &a * &a;
        assert_eq!(sq, s(0, &[1, 2, 1, 0]));
    }

    #[test]
    fn multiplication_by_laurent_monomial_shifts() {
        let a = s(0, &[1, 2, 3]);
        let m = Series::monomial(BigInt::one(), -2, 10).unwrap();
        let prod = &a * &m;
        assert_eq!(prod, s(-2, &[1, 2, 3]));
        assert_eq!(prod.order(), 1);
        assert_eq!(prod, a.shift(-2));
    }

    #[test]
    fn window_of_product_is_min_rule() {
        // S known to 6 with base 1, T known to 4 with base 0.
        let a = s(1, &[1, 1, 1, 1, 1]);
        let b = s(0, &[1, 0, 0, 2]);
        let prod = &a * &b;
        assert_eq!(prod.order(), (6 + 0).min(4 + 1));
        assert_eq!(prod.base(), 1);
    }

    #[test]
    fn inverse_of_geometric() {
        let a = s(0, &[1, -1, 0, 0, 0, 0]); // 1 - q to order 6
        let inv = a.inverse().unwrap();
        assert_eq!(inv, s(0, &[1, 1, 1, 1, 1, 1]));
        let prod = &a * &inv;
        assert_eq!(prod, Series::one(6));
    }

    #[test]
    fn inverse_with_negative_unit_lead() {
        let a = s(0, &[-1, 1, 0, 0]); // -(1 - q)
        let inv = a.inverse().unwrap();
        assert_eq!(inv, s(0, &[-1, -1, -1, -1]));
        assert_eq!(&a * &inv, Series::one(4));
    }

    #[test]
    fn inverse_of_laurent_series() {
        let a = s(-2, &[1, -1, 0, 0, 0]); // q^-2 - q^-1, order 3
        let inv = a.inverse().unwrap();
        assert_eq!(inv.base(), 2);
        assert_eq!(inv.order(), 3 - 2 * (-2));
        let prod = &a * &inv;
        assert_eq!(prod, Series::one(prod.order()));
        assert_eq!(prod.order(), 5);
    }

    #[test]
    fn inverse_counts_partitions() {
        // (q;q)_inf to order 12, then invert: coefficients are p(n).
        // The expected values come from the explicit recursive enumeration
        // below, not from any table.
        let euler = s(
            0,
            &[1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0], // pentagonal signs
        );
        let inv = euler.inverse().unwrap();
        for n in 0..12u64 {
            assert_eq!(
                inv.coeff(n as i64).unwrap(),
                BigInt::from(partitions(n)),
                "p({n})"
            );
        }
    }

    #[test]
    fn inverse_rejects_non_units() {
        assert_eq!(
            s(0, &[2, 1]).inverse(),
            Err(Error::NotInvertible("lowest coefficient is not +1 or -1"))
        );
        assert_eq!(
            Series::zero(5).inverse(),
            Err(Error::NotInvertible("series has no known nonzero term"))
        );
    }

    #[test]
    fn dissect_single_monomial() {
        let m = Series::monomial(BigInt::one(), 3, 10).unwrap();
        let part = m.dissect(5, 3).unwrap();
        // ceil((10-3)/5) = 2 coefficients survive: n=0 -> q^3, n=1 -> q^8.
        assert_eq!(part, s(0, &[1, 0]));
        assert_eq!(part.order(), 2);
        let other = m.dissect(5, 2).unwrap();
        assert!(other.is_zero());
        assert_eq!(other.order(), 2);
    }

    #[test]
    fn dissect_uniform_series() {
        let ones = s(0, &[1; 10]);
        let part = ones.dissect(2, 0).unwrap();
        assert_eq!(part, s(0, &[1; 5]));
        let part = ones.dissect(3, 1).unwrap();
        assert_eq!(part, s(0, &[1; 3]));
        assert_eq!(part.order(), 3); // ceil((10-1)/3)
    }

    #[test]
    fn dissect_laurent_base() {
        let a = s(-3, &[1, 2, 3, 4, 5, 6]); // exponents -3..2
        let part = a.dissect(2, 1).unwrap();
        // exponents -3, -1, 1 -> coefficients 1, 3, 5 at n = -2, -1, 0.
        assert_eq!(part, s(-2, &[1, 3, 5]));
    }

    #[test]
    fn dissect_validates_residue() {
        let a = s(0, &[1]);
        assert_eq!(
            a.dissect(5, 5),
            Err(Error::InvalidResidue { modulus: 5, residue: 5 })
        );
        assert_eq!(
            a.dissect(0, 0),
            Err(Error::InvalidResidue { modulus: 0, residue: 0 })
        );
        assert_eq!(
            a.dissect(3, -1),
            Err(Error::InvalidResidue { modulus: 3, residue: -1 })
        );
    }

    #[test]
    fn interleave_then_dissect_round_trips() {
        let a = s(0, &[1, 2, 3, 4, 5, 6, 7]);
        let parts: Vec<Series> = (0..3).map(|r| a.dissect(3, r).unwrap()).collect();
        let back = Series::interleave(&parts, 3).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn interleave_of_monomial_parts() {
        let one = Series::one(1);
        let zero = Series::zero(1);
        let woven = Series::interleave(&[one, zero], 2).unwrap();
        // residue 0 holds 1 (order 1 -> exponents < 2), residue 1 zero to 3.
        assert_eq!(woven, s(0, &[1, 0]));
    }

    #[test]
    fn interleave_arity_is_checked() {
        let parts = vec![Series::one(3); 2];
        assert_eq!(
            Series::interleave(&parts, 3),
            Err(Error::ArityMismatch { expected: 3, got: 2 })
        );
        assert_eq!(
            Series::interleave(&[], 0),
            Err(Error::ArityMismatch { expected: 0, got: 0 })
        );
    }

    #[test]
    fn residue_component_keeps_exponents() {
        let a = s(0, &[1, 2, 3, 4, 5]);
        let c = a.residue_component(2, 1).unwrap();
        assert_eq!(c, s(0, &[0, 2, 0, 4, 0]));
        assert_eq!(c.order(), 5);
        // Laurent exponents classify by euclidean remainder: -3 = 1 mod 2.
        let b = s(-3, &[7, 0, 9]);
        assert_eq!(b.residue_component(2, 1).unwrap(), s(-3, &[7, 0, 9]));
        assert!(b.residue_component(2, 0).unwrap().is_zero());
    }

    #[test]
    fn shift_scale_truncate() {
        let a = s(0, &[1, 2, 3]);
        assert_eq!(a.shift(4), s(4, &[1, 2, 3]));
        assert_eq!(a.shift(-1).order(), 2);
        assert_eq!(a.scale_i64(-2), s(0, &[-2, -4, -6]));
        assert_eq!(a.scale(&BigInt::zero()), Series::zero(3));
        assert_eq!(a.truncate(2), s(0, &[1, 2]));
        assert_eq!(a.truncate(99), a);
        assert_eq!(a.truncate(0), Series::zero(0));
        assert_eq!(a.truncate(-5), Series::zero(-5));
    }

    #[test]
    fn equality_semantics() {
        let long = s(0, &[1, 1, 0, 0]);
        let short = s(0, &[1, 1]);
        // Same known content, different windows: distinct series values...
        assert_ne!(long, short);
        // ...but they agree wherever both are known.
        assert!(long.agrees_with(&short));
        assert!(long.equal_up_to(&short, 100));

        let differs = s(0, &[1, 2, 0, 0]);
        assert!(!long.agrees_with(&differs));
        assert!(long.equal_up_to(&differs, 1));
        assert_eq!(
            long.first_mismatch(&differs, 100),
            Some((1, BigInt::from(1), BigInt::from(2)))
        );
    }

    #[test]
    fn display_is_readable() {
        let a = s(-1, &[1, -2, 0, 3]);
        assert_eq!(a.to_string(), "q^-1 - 2 + 3q^2 + O(q^3)");
        assert_eq!(Series::zero(4).to_string(), "0 + O(q^4)");
        assert_eq!(Series::one(3).to_string(), "1 + O(q^3)");
    }

    #[test]
    fn first_nonzero_reports_valuation() {
        assert_eq!(Series::zero(5).first_nonzero(), None);
        let a = s(0, &[0, 0, 7, 1]);
        let (e, c) = a.first_nonzero().unwrap();
        assert_eq!((e, c.clone()), (2, BigInt::from(7)));
    }
}
