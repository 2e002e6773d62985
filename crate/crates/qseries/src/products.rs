//! Expansion of infinite q-products.
//!
//! The building block is the Pochhammer factor `(s*q^offset; q^modulus)`,
//! the product of `(1 - s*q^(offset + k*modulus))` over all `k >= 0`, with
//! `s` either `+1` or `-1`.  A [`ProductExpr`] is a finite multiset of such
//! factors raised to integer (possibly negative) multiplicities, and
//! [`expand`] turns one into an exact [`Series`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::series::Series;

/// Sign carried by a monomial: `+q^e` or `-q^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `+1` or `-1`.
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// Sign of a product of two signed quantities.
    pub fn times(self, other: Sign) -> Sign {
        if self == other { Sign::Plus } else { Sign::Minus }
    }
}

/// One factor `(sign*q^offset; q^modulus)^multiplicity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Factor {
    pub sign: Sign,
    pub offset: i64,
    pub modulus: i64,
    pub multiplicity: i32,
}

/// A finite product of Pochhammer factors; the empty product is 1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ProductExpr {
    factors: Vec<Factor>,
}

fn sort_key(f: &Factor) -> (bool, i64, u32, i64, u8) {
    let sign_rank = match f.sign {
        Sign::Plus => 0,
        Sign::Minus => 1,
    };
    (
        f.multiplicity < 0,
        f.modulus,
        f.multiplicity.unsigned_abs(),
        f.offset,
        sign_rank,
    )
}

impl ProductExpr {
    pub fn new(factors: Vec<Factor>) -> ProductExpr {
        ProductExpr { factors }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// True for the empty product.
    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Canonical form: factors with the same monomial and modulus are
    /// merged (multiplicities added), multiplicity zero is dropped, and
    /// the rest are sorted — numerator factors first, then by modulus,
    /// multiplicity, offset and sign.
    pub fn normalize(&self) -> ProductExpr {
        let mut merged: BTreeMap<(i64, i64, Sign), i64> = BTreeMap::new();
        for f in &self.factors {
            *merged.entry((f.modulus, f.offset, f.sign)).or_insert(0) += i64::from(f.multiplicity);
        }
        let mut factors: Vec<Factor> = merged
            .into_iter()
            .filter(|&(_, m)| m != 0)
            .map(|((modulus, offset, sign), m)| Factor {
                sign,
                offset,
                modulus,
                multiplicity: m.try_into().expect("multiplicity overflow"),
            })
            .collect();
        factors.sort_by_key(sort_key);
        ProductExpr { factors }
    }
}

impl std::fmt::Display for ProductExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&crate::dsl::format(self))
    }
}

/// Expands `(sign*q^offset; q^modulus)` to the given truncation order by
/// multiplying in each binomial `(1 - sign*q^j)` with an in-place update,
/// cheapest factor first.  `O(order^2 / modulus)` coefficient operations.
pub fn pochhammer(sign: Sign, offset: i64, modulus: i64, order: i64) -> Series {
    assert!(modulus >= 1, "pochhammer modulus must be >= 1");
    assert!(offset >= 0, "pochhammer offset must be >= 0");
    assert!(order >= 1, "pochhammer order must be >= 1");
    let len = order as usize;
    let mut c = vec![BigInt::zero(); len];
    c[0] = BigInt::from(1);
    let mut j = offset;
    while j < order {
        if j == 0 {
            match sign {
                // (1 - q^0) kills the whole product.
                Sign::Plus => return Series::zero(order),
                // (1 + q^0) doubles it.
                Sign::Minus => {
                    for v in c.iter_mut() {
                        *v *= 2;
                    }
                }
            }
        } else {
            let ju = j as usize;
            for i in (ju..len).rev() {
                let (lo, hi) = c.split_at_mut(i);
                let prev = &lo[i - ju];
                if !prev.is_zero() {
                    match sign {
                        Sign::Plus => hi[0] -= prev,
                        Sign::Minus => hi[0] += prev,
                    }
                }
            }
        }
        j += modulus;
    }
    Series::new(0, c)
}

/// The factor `(q^k; q^k)`, ubiquitous enough to deserve a name.
pub fn eta_like(k: i64, order: i64) -> Series {
    assert!(k >= 1, "eta-like factor needs k >= 1");
    pochhammer(Sign::Plus, k, k, order)
}

/// Integer power by repeated squaring.  `exponent == 0` gives 1 known to
/// the order of the input.
pub fn pow(series: &Series, exponent: u32) -> Series {
    if exponent == 0 {
        return Series::one(series.order());
    }
    let mut result: Option<Series> = None;
    let mut sq = series.clone();
    let mut e = exponent;
    loop {
        if e & 1 == 1 {
            result = Some(match result {
                Some(r) => &r * &sq,
                None => sq.clone(),
            });
        }
        e >>= 1;
        if e == 0 {
            break;
        }
        sq = &sq * &sq;
    }
    result.expect("exponent was nonzero")
}

fn validate(f: &Factor) -> Result<()> {
    if f.modulus < 1 {
        return Err(Error::InvalidFactor(format!(
            "modulus {} must be >= 1",
            f.modulus
        )));
    }
    if f.offset < 0 {
        return Err(Error::InvalidFactor(format!(
            "offset {} must be >= 0",
            f.offset
        )));
    }
    Ok(())
}

/// Expands a product expression to the given order.  Negative
/// multiplicities are gathered into one denominator and inverted once;
/// the inversion fails if the denominator's lowest coefficient is not a
/// unit (for example when a `(q^0; ...)` factor makes it vanish).
pub fn expand(expr: &ProductExpr, order: i64) -> Result<Series> {
    assert!(order >= 1, "expansion order must be >= 1");
    let mut num = Series::one(order);
    let mut den: Option<Series> = None;
    for f in expr.normalize().factors() {
        validate(f)?;
        let p = pochhammer(f.sign, f.offset, f.modulus, order);
        let powed = pow(&p, f.multiplicity.unsigned_abs());
        if f.multiplicity > 0 {
            num = &num * &powed;
        } else {
            den = Some(match den {
                Some(d) => &d * &powed,
                None => powed,
            });
        }
    }
    match den {
        Some(d) => Ok(&num * &d.inverse()?),
        None => Ok(num),
    }
}
