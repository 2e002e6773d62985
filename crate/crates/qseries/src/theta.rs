//! Theta series with monomial arguments and bivariate quadratic-form sums.
//!
//! `theta_series` sums `a^(k(k+1)/2) * b^(k(k-1)/2)` over all integers `k`
//! for arguments `a = ±q^x`, `b = ±q^y` with `x + y >= 1` (otherwise the
//! exponents have no lower bound and the sum diverges as a series).
//! `triple_product` computes the same series as the product
//! `(-a; ab)(-b; ab)(ab; ab)`, which gives an independent route to every
//! theta value.  `quad_form_series` evaluates double sums
//! `sum eps^(m+n) q^(shift + A m^2 + B m + C n^2 + D n)`, and
//! [`component_cancellation`] uses them to certify, component by
//! component, why two particular mixed-sign products have a vanishing
//! arithmetic progression of coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::products::{expand, Factor, ProductExpr, Sign};
use crate::report::{FirstFailure, VerificationReport};
use crate::series::Series;

/// A monomial `±q^exponent`; the exponent may be negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedMonomial {
    pub sign: Sign,
    pub exponent: i64,
}

impl SignedMonomial {
    pub fn q(exponent: i64) -> Self {
        SignedMonomial { sign: Sign::Plus, exponent }
    }

    pub fn neg_q(exponent: i64) -> Self {
        SignedMonomial { sign: Sign::Minus, exponent }
    }

    /// The constant 1 (as `+q^0`).
    pub fn one() -> Self {
        SignedMonomial::q(0)
    }

    /// `-self`.
    pub fn negated(self) -> Self {
        SignedMonomial { sign: self.sign.flip(), exponent: self.exponent }
    }

    /// `1/self`; the sign is its own reciprocal.
    pub fn inverse(self) -> Self {
        SignedMonomial { sign: self.sign, exponent: -self.exponent }
    }

    pub fn times(self, other: Self) -> Self {
        SignedMonomial {
            sign: self.sign.times(other.sign),
            exponent: self.exponent + other.exponent,
        }
    }

    pub fn pow(self, k: u32) -> Self {
        let sign = if self.sign == Sign::Minus && k % 2 == 1 { Sign::Minus } else { Sign::Plus };
        SignedMonomial { sign, exponent: self.exponent * i64::from(k) }
    }
}

impl fmt::Display for SignedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == Sign::Minus {
            write!(f, "-")?;
        }
        match self.exponent {
            0 => write!(f, "1"),
            1 => write!(f, "q"),
            e => write!(f, "q^{e}"),
        }
    }
}

/// Argument pair of a theta series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThetaParams {
    pub a: SignedMonomial,
    pub b: SignedMonomial,
}

impl ThetaParams {
    pub fn new(a: SignedMonomial, b: SignedMonomial) -> Self {
        ThetaParams { a, b }
    }

    /// Sum of the argument exponents; must be >= 1 for convergence.
    pub fn exponent_sum(&self) -> i64 {
        self.a.exponent + self.b.exponent
    }
}

impl fmt::Display for ThetaParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f({}, {})", self.a, self.b)
    }
}

/// `k(k+1)/2` is odd exactly when `k = 1, 2 (mod 4)`;
/// `k(k-1)/2` is odd exactly when `k = 2, 3 (mod 4)`.
fn term_sign(a: Sign, b: Sign, k: i64) -> bool {
    let r = k.rem_euclid(4);
    let t1_odd = r == 1 || r == 2;
    let t2_odd = r == 2 || r == 3;
    (a == Sign::Minus && t1_odd) ^ (b == Sign::Minus && t2_odd)
}

fn check_convergent(p: &ThetaParams) -> Result<i64> {
    let sum = p.exponent_sum();
    if sum <= 0 {
        return Err(Error::DivergentTheta { instance: p.to_string(), sum });
    }
    Ok(sum)
}

/// Sums the bilateral series `sum_k a^(k(k+1)/2) b^(k(k-1)/2)` directly.
/// With `a = sa*q^x`, `b = sb*q^y` the `k`-th term is a signed power of
/// `q` with exponent `x*k(k+1)/2 + y*k(k-1)/2`, a quadratic in `k`, so
/// only finitely many `k` land below the truncation order.
pub fn theta_series(p: &ThetaParams, order: i64) -> Result<Series> {
    check_convergent(p)?;
    let (x, y) = (p.a.exponent, p.b.exponent);
    let exp_at = |k: i64| x * (k * (k + 1) / 2) + y * (k * (k - 1) / 2);
    // Walk outward until the exponent is past the window and growing away
    // from it (the quadratic may dip before it climbs).
    let mut k_hi = 1i64;
    while exp_at(k_hi) < order || exp_at(k_hi + 1) <= exp_at(k_hi) {
        k_hi += 1;
    }
    let mut k_lo = -1i64;
    while exp_at(k_lo) < order || exp_at(k_lo - 1) <= exp_at(k_lo) {
        k_lo -= 1;
    }
    let mut base = order;
    for k in k_lo..=k_hi {
        base = base.min(exp_at(k));
    }
    if base >= order {
        return Ok(Series::zero(order));
    }
    let mut coeffs = vec![BigInt::zero(); (order - base) as usize];
    for k in k_lo..=k_hi {
        let e = exp_at(k);
        if e >= order {
            continue;
        }
        let slot = &mut coeffs[(e - base) as usize];
        if term_sign(p.a.sign, p.b.sign, k) {
            *slot -= 1;
        } else {
            *slot += 1;
        }
    }
    Ok(Series::new(base, coeffs))
}

/// `1 - coef*q^e` with `coef = ±1`, known below `order`; handles negative
/// and zero exponents.
fn binomial_series(coef: i64, e: i64, order: i64) -> Series {
    let base = e.min(0);
    let mut v = vec![BigInt::zero(); (order - base) as usize];
    v[(0 - base) as usize] += 1;
    v[(e - base) as usize] -= coef;
    Series::new(base, v)
}

/// Evaluates the same theta series as a triple product
/// `(-a; ab)(-b; ab)(ab; ab)`: an independent computation path that shares
/// no code with the bilateral sum.  Negative argument exponents put
/// finitely many `q^(-j)` binomials in the product; each costs `j` orders
/// of window, so the product is computed with that much padding and then
/// truncated back.
pub fn triple_product(p: &ThetaParams, order: i64) -> Result<Series> {
    let m = check_convergent(p)?;
    let (x, y) = (p.a.exponent, p.b.exponent);
    let (sa, sb) = (p.a.sign.value(), p.b.sign.value());
    let mut pad = 0;
    for start in [x, y] {
        let mut e = start;
        while e < 0 {
            pad += -e;
            e += m;
        }
    }
    let work = order + pad;
    // (coef, exponent) descriptors for binomials (1 - coef*q^exponent).
    // The base of each group is ab = s*q^m with s = sign(a)sign(b), so
    // when s is negative the k-th factor's coefficient alternates.
    let s = sa * sb;
    let mut bins: Vec<(i64, i64)> = Vec::new();
    for (start, arg_sign) in [(x, sa), (y, sb)] {
        let mut e = start;
        let mut coef = -arg_sign;
        while e < work {
            bins.push((coef, e));
            e += m;
            coef *= s;
        }
    }
    let mut e = m;
    let mut coef = s;
    while e < work {
        bins.push((coef, e));
        e += m;
        coef *= s;
    }
    let mut prod = Series::one(work);
    for (coef, e) in bins {
        if prod.is_zero() {
            break;
        }
        let b_order = prod.order() + e.abs() + prod.base().abs() + 1;
        prod = &binomial_series(coef, e, b_order) * &prod;
    }
    debug_assert!(prod.order() >= order);
    Ok(prod.truncate(order))
}

/// The four two-variable theta identities whose residuals the engine can
/// evaluate; each should be identically zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaIdentity {
    /// `2 f(a, ab^2) f(b, a^2 b) - f(1, ab) f(a, b) = 0`
    /// (the halving identity, cleared of its 1/2).
    HalfProduct,
    /// `f(a, b) f(-a, -b) - f(-ab, -ab) f(-a^2, -b^2) = 0`.
    SignFlip,
    /// `f(a, b) - f(a^3 b, a b^3) - a * f(b/a, a^5 b^3) = 0`
    /// (split by index parity).
    ParitySplit,
    /// `f(a,b)^2 - f(a^2,b^2) f(ab,ab) - a * f(b/a, a^3 b) f(1, a^2 b^2) = 0`.
    SquareSplit,
}

impl ThetaIdentity {
    pub const ALL: [ThetaIdentity; 4] = [
        ThetaIdentity::HalfProduct,
        ThetaIdentity::SignFlip,
        ThetaIdentity::ParitySplit,
        ThetaIdentity::SquareSplit,
    ];
}

/// Left-minus-right of one [`ThetaIdentity`] instantiated at `a`, `b`.
/// The result should be the zero series on its whole window.
pub fn theta_identity_residual(
    identity: ThetaIdentity,
    a: SignedMonomial,
    b: SignedMonomial,
    order: i64,
) -> Result<Series> {
    let th = |pa: SignedMonomial, pb: SignedMonomial| theta_series(&ThetaParams::new(pa, pb), order);
    // Multiply by the monomial `m`: shift by its exponent, flip on Minus.
    let times_monomial = |s: &Series, m: SignedMonomial| s.shift(m.exponent).scale_i64(m.sign.value());
    match identity {
        ThetaIdentity::HalfProduct => {
            let lhs = (&th(a, a.times(b.pow(2)))? * &th(b, a.pow(2).times(b))?).scale_i64(2);
            let rhs = &th(SignedMonomial::one(), a.times(b))? * &th(a, b)?;
            Ok(&lhs - &rhs)
        }
        ThetaIdentity::SignFlip => {
            let lhs = &th(a, b)? * &th(a.negated(), b.negated())?;
            let ab = a.times(b);
            let rhs = &th(ab.negated(), ab.negated())? * &th(a.pow(2).negated(), b.pow(2).negated())?;
            Ok(&lhs - &rhs)
        }
        ThetaIdentity::ParitySplit => {
            let whole = th(a, b)?;
            let even = th(a.pow(3).times(b), a.times(b.pow(3)))?;
            let odd = th(b.times(a.inverse()), a.pow(5).times(b.pow(3)))?;
            Ok(&(&whole - &even) - &times_monomial(&odd, a))
        }
        ThetaIdentity::SquareSplit => {
            let fab = th(a, b)?;
            let lhs = &fab * &fab;
            let ab = a.times(b);
            let r1 = &th(a.pow(2), b.pow(2))? * &th(ab, ab)?;
            let r2 = &th(b.times(a.inverse()), a.pow(3).times(b))?
                * &th(SignedMonomial::one(), a.pow(2).times(b.pow(2)))?;
            Ok(&(&lhs - &r1) - &times_monomial(&r2, a))
        }
    }
}

/// `sum over m, n in Z of eps^(m+n) q^(shift + mm*m^2 + ml*m + nn*n^2 + nl*n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadFormSum {
    pub eps: Sign,
    pub m_quad: i64,
    pub m_lin: i64,
    pub n_quad: i64,
    pub n_lin: i64,
    pub shift: i64,
}

impl QuadFormSum {
    pub fn new(eps: Sign, m_quad: i64, m_lin: i64, n_quad: i64, n_lin: i64, shift: i64) -> Self {
        QuadFormSum { eps, m_quad, m_lin, n_quad, n_lin, shift }
    }
}

/// Minimum of `quad*v^2 + lin*v` over the integers.
fn integer_min(quad: i64, lin: i64) -> i64 {
    let fl = (-lin).div_euclid(2 * quad);
    let at = |v: i64| quad * v * v + lin * v;
    at(fl).min(at(fl + 1))
}

/// Range of `v` for which `quad*v^2 + lin*v + off` can stay below `order`.
fn lattice_range(quad: i64, lin: i64, off: i64, order: i64) -> (i64, i64) {
    let at = |v: i64| quad * v * v + lin * v;
    let mut hi = 1i64;
    while at(hi) + off < order || at(hi + 1) <= at(hi) {
        hi += 1;
    }
    let mut lo = -1i64;
    while at(lo) + off < order || at(lo - 1) <= at(lo) {
        lo -= 1;
    }
    (lo, hi)
}

/// Expands a quadratic-form double sum exactly below `order` by walking
/// the finitely many lattice points whose exponent is in the window.
pub fn quad_form_series(form: &QuadFormSum, order: i64) -> Series {
    assert!(form.m_quad >= 1 && form.n_quad >= 1, "quadratic coefficients must be positive");
    assert!(form.shift >= 0, "shift must be nonnegative");
    let n_min = integer_min(form.n_quad, form.n_lin);
    let m_min = integer_min(form.m_quad, form.m_lin);
    let (m_lo, m_hi) = lattice_range(form.m_quad, form.m_lin, form.shift + n_min, order);
    let (n_lo, n_hi) = lattice_range(form.n_quad, form.n_lin, form.shift + m_min, order);
    let exp_at = |m: i64, n: i64| {
        form.shift + form.m_quad * m * m + form.m_lin * m + form.n_quad * n * n + form.n_lin * n
    };
    let mut base = order;
    for m in m_lo..=m_hi {
        for n in n_lo..=n_hi {
            base = base.min(exp_at(m, n));
        }
    }
    if base >= order {
        return Series::zero(order);
    }
    let mut coeffs = vec![BigInt::zero(); (order - base) as usize];
    for m in m_lo..=m_hi {
        for n in n_lo..=n_hi {
            let e = exp_at(m, n);
            if e >= order {
                continue;
            }
            let negative = form.eps == Sign::Minus && (m + n).rem_euclid(2) == 1;
            let slot = &mut coeffs[(e - base) as usize];
            if negative {
                *slot -= 1;
            } else {
                *slot += 1;
            }
        }
    }
    Series::new(base, coeffs)
}

/// Which of the two mixed-sign quintic products to analyze: the family
/// whose coefficients vanish on `5n+3`, or the one vanishing on `5n+4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CancellationFamily {
    VanishThreeModFive,
    VanishFourModFive,
}

/// Reading of the `-+`/`+-` signs in a mixed-sign product: `Upper` takes
/// the top sign everywhere, `Lower` the bottom.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignChoice {
    Upper,
    Lower,
}

struct FamilySpec {
    /// Vanishing residue mod 5.
    residue: i64,
    /// (sign, offset, modulus, multiplicity) of the defining product, upper reading.
    definition: &'static [(Sign, i64, i64, i32)],
    /// Offsets whose signs flip between the two readings.
    flip_offsets: &'static [(i64, i64)],
    /// Three-way split of the definition (upper reading).
    split: [&'static [(Sign, i64, i64, i32)]; 3],
    /// Which factors of each split part flip with the reading.
    split_flips: [&'static [(i64, i64)]; 3],
    /// (m_lin, n_lin, shift) of the eight double sums, all with
    /// quadratic coefficient 20.
    sums: [(i64, i64, i64); 8],
    /// (m_lin, n_lin, shift) of the matching single-residue components,
    /// all with quadratic coefficient 100.
    components: [(i64, i64, i64); 8],
}

use Sign::{Minus as M, Plus as P};

static VANISH_3: FamilySpec = FamilySpec {
    residue: 3,
    definition: &[(M, 1, 5, 1), (M, 4, 5, 1), (P, 4, 10, 3), (P, 6, 10, 3)],
    flip_offsets: &[(1, 5), (4, 5), (4, 10), (6, 10)],
    split: [
        &[(M, 1, 10, 1), (P, 4, 10, 1), (P, 6, 10, 1), (M, 9, 10, 1)],
        &[(P, 8, 20, 1), (P, 12, 20, 1)],
        &[(P, 4, 10, 1), (P, 6, 10, 1)],
    ],
    split_flips: [&[(1, 10), (4, 10), (6, 10), (9, 10)], &[], &[(4, 10), (6, 10)]],
    sums: [
        (2, 1, 0),
        (18, 1, 4),
        (2, 9, 1),
        (18, 9, 5),
        (2, 11, 4),
        (18, 11, 8),
        (2, 21, 8),
        (18, 21, 12),
    ],
    components: [
        (125, 40, 43),
        (75, 60, 23),
        (75, 60, 23),
        (125, 40, 43),
        (25, 60, 13),
        (25, 40, 8),
        (25, 40, 8),
        (25, 60, 13),
    ],
};

static VANISH_4: FamilySpec = FamilySpec {
    residue: 4,
    definition: &[(M, 2, 5, 1), (M, 3, 5, 1), (P, 2, 10, 3), (P, 8, 10, 3)],
    flip_offsets: &[(2, 5), (3, 5), (2, 10), (8, 10)],
    split: [
        &[(P, 2, 10, 1), (M, 3, 10, 1), (M, 7, 10, 1), (P, 8, 10, 1)],
        &[(P, 4, 20, 1), (P, 16, 20, 1)],
        &[(P, 2, 10, 1), (P, 8, 10, 1)],
    ],
    split_flips: [&[(2, 10), (3, 10), (7, 10), (8, 10)], &[], &[(2, 10), (8, 10)]],
    sums: [
        (6, 7, 0),
        (14, 7, 2),
        (6, 17, 3),
        (14, 17, 5),
        (6, 3, 2),
        (14, 3, 4),
        (6, 13, 4),
        (14, 13, 6),
    ],
    components: [
        (20, 75, 14),
        (80, 75, 29),
        (80, 75, 29),
        (20, 75, 14),
        (80, 25, 19),
        (20, 25, 4),
        (20, 25, 4),
        (80, 25, 19),
    ],
};

fn build_product(
    factors: &[(Sign, i64, i64, i32)],
    flips: &[(i64, i64)],
    choice: SignChoice,
) -> ProductExpr {
    let factors = factors
        .iter()
        .map(|&(sign, offset, modulus, multiplicity)| {
            let sign = if choice == SignChoice::Lower && flips.contains(&(offset, modulus)) {
                sign.flip()
            } else {
                sign
            };
            Factor { sign, offset, modulus, multiplicity }
        })
        .collect();
    ProductExpr::new(factors)
}

struct CancellationChecker {
    checked: u64,
    failure: Option<FirstFailure>,
}

impl CancellationChecker {
    fn compare(&mut self, left: &Series, right: &Series) {
        if self.failure.is_some() {
            return;
        }
        let window = left.order().min(right.order());
        let lo = left.base().min(right.base());
        if let Some((index, l, r)) = left.first_mismatch(right, i64::MAX) {
            self.checked += (index - lo).unsigned_abs();
            self.failure = Some(FirstFailure { index, left: l.to_string(), right: r.to_string() });
        } else {
            self.checked += (window - lo).max(0).unsigned_abs();
        }
    }
}

/// Certifies one vanishing progression through its full cancellation
/// mechanism: the three-way product split, the eight quadratic-form sums
/// with their single-residue components, the four pairwise component
/// cancellations, the reassembled right-hand side, and finally the
/// progression itself.
pub fn component_cancellation(
    family: CancellationFamily,
    choice: SignChoice,
    order: i64,
) -> VerificationReport {
    let spec = match family {
        CancellationFamily::VanishThreeModFive => &VANISH_3,
        CancellationFamily::VanishFourModFive => &VANISH_4,
    };
    let definition = build_product(spec.definition, spec.flip_offsets, choice);
    let claim = format!(
        "[{} : 5n+{}] = 0 via quadratic-form component cancellation",
        crate::dsl::format(&definition),
        spec.residue
    );
    let case_id = format!(
        "cancellation/vanish-5n{}-{}",
        spec.residue,
        match choice {
            SignChoice::Upper => "upper",
            SignChoice::Lower => "lower",
        }
    );

    let defn = expand(&definition, order).expect("definition expands");
    let mut check = CancellationChecker { checked: 0, failure: None };

    // 1. The definition factors into the three-way split.
    let split_product = spec
        .split
        .iter()
        .zip(spec.split_flips.iter())
        .map(|(part, flips)| expand(&build_product(part, flips, choice), order).expect("split part expands"))
        .reduce(|acc, s| &acc * &s)
        .expect("three parts");
    check.compare(&split_product, &defn);

    // 2. Each double sum restricted to the residue equals its closed-form
    //    component.
    let sums: Vec<Series> = spec
        .sums
        .iter()
        .map(|&(ml, nl, shift)| quad_form_series(&QuadFormSum::new(P, 20, ml, 20, nl, shift), order))
        .collect();
    let comps: Vec<Series> = spec
        .components
        .iter()
        .map(|&(ml, nl, shift)| quad_form_series(&QuadFormSum::new(P, 100, ml, 100, nl, shift), order))
        .collect();
    for (sum, comp) in sums.iter().zip(comps.iter()) {
        let restricted = sum.residue_component(5, spec.residue).expect("residue in range");
        check.compare(&restricted, comp);
    }

    // 3. The components cancel in pairs: (1,4), (2,3), (5,8), (6,7).
    for &(i, j) in &[(0usize, 3usize), (1, 2), (4, 7), (5, 6)] {
        let left = sums[i].residue_component(5, spec.residue).expect("residue in range");
        let right = sums[j].residue_component(5, spec.residue).expect("residue in range");
        check.compare(&left, &right);
    }

    // 4. The reassembled right-hand side reproduces the definition.
    let prefactor = expand(
        &ProductExpr::new(vec![
            Factor { sign: P, offset: 5, modulus: 5, multiplicity: 1 },
            Factor { sign: P, offset: 10, modulus: 10, multiplicity: -4 },
        ]),
        order,
    )
    .expect("prefactor expands");
    let modulus_forty = |a: i64, b: i64| {
        ProductExpr::new(vec![
            Factor { sign: M, offset: a, modulus: 40, multiplicity: 1 },
            Factor { sign: M, offset: b, modulus: 40, multiplicity: 1 },
            Factor { sign: P, offset: 40, modulus: 40, multiplicity: 1 },
        ])
    };
    let g1 = expand(&modulus_forty(15, 25), order).expect("g1 expands");
    let g2 = expand(&modulus_forty(5, 35), order).expect("g2 expands");
    let (combo1, combo2, second_sign) = match choice {
        SignChoice::Upper => (
            &(&(&sums[0] - &sums[1]) + &sums[2]) - &sums[3],
            &(&(&sums[4] - &sums[5]) + &sums[6]) - &sums[7],
            -1,
        ),
        SignChoice::Lower => (
            &(&(&sums[0] + &sums[1]) - &sums[2]) - &sums[3],
            &(&(&sums[4] + &sums[5]) - &sums[6]) - &sums[7],
            1,
        ),
    };
    let assembled = &prefactor * &(&(&g1 * &combo1) + &(&g2 * &combo2).scale_i64(second_sign));
    check.compare(&assembled, &defn);

    // 5. The progression itself vanishes.  Count every index the window
    //    covers, starting from n = 0 (the definition has base 0).
    let progression = defn.dissect(5, spec.residue).expect("residue in range");
    let n_lo = crate::series::ceil_div(defn.base() - spec.residue, 5);
    if check.failure.is_none() {
        if let Some((index, value)) = progression.first_nonzero() {
            check.checked += (index - n_lo).unsigned_abs();
            check.failure = Some(FirstFailure {
                index,
                left: value.to_string(),
                right: "0".to_string(),
            });
        } else {
            check.checked += (progression.order() - n_lo).max(0).unsigned_abs();
        }
    }

    match check.failure {
        Some(f) => VerificationReport::fail(case_id, claim, order, check.checked, f),
        None => VerificationReport::pass(case_id, claim, order, check.checked),
    }
}
