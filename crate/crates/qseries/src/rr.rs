//! The Rogers–Ramanujan quotient `R(q)` and two imported identities that
//! tie products of `R(q)` and `R(q^2)` to eta-like quotients.
//!
//! `R(q) = (q,q^4;q^5) / (q^2,q^3;q^5)`, the product side of the
//! Rogers–Ramanujan continued fraction.  The two identities enter the
//! verification chains as axioms; [`bb_residual_1`] and [`bb_residual_2`]
//! expose their left-minus-right sides so the harness can confirm they
//! vanish on every window it uses.  A nonzero residual would invalidate
//! the downstream equality checks, so tests treat it as fatal.

use crate::products::{eta_like, pochhammer, pow, Sign};
use crate::series::Series;

/// `R(q)` expanded below `order`: numerator product times the inverted
/// denominator product.
pub fn rq(order: i64) -> Series {
    let num = &pochhammer(Sign::Plus, 1, 5, order) * &pochhammer(Sign::Plus, 4, 5, order);
    let den = &pochhammer(Sign::Plus, 2, 5, order) * &pochhammer(Sign::Plus, 3, 5, order);
    &num * &den.inverse().expect("denominator has constant term 1")
}

/// `R(q^2)`, expanded from the modulus-10 products directly (offsets
/// doubled) rather than by interleaving `rq`; the interleaving equality is
/// a test, not the computation path.
pub fn rq2(order: i64) -> Series {
    let num = &pochhammer(Sign::Plus, 2, 10, order) * &pochhammer(Sign::Plus, 8, 10, order);
    let den = &pochhammer(Sign::Plus, 4, 10, order) * &pochhammer(Sign::Plus, 6, 10, order);
    &num * &den.inverse().expect("denominator has constant term 1")
}

/// `R(q)` and `R(q^2)` at a shared truncation order.
#[derive(Debug, Clone)]
pub struct RRContext {
    pub order: i64,
    pub r1: Series,
    pub r2: Series,
}

impl RRContext {
    pub fn new(order: i64) -> Self {
        RRContext { order, r1: rq(order), r2: rq2(order) }
    }
}

/// Residual of the first imported identity:
/// `1/(R(q) R^2(q^2)) - q^2 R(q) R^2(q^2)
///  - (q^2;q^2)(q^5;q^5)^5 / ((q;q)(q^10;q^10)^5)`.
/// Identically zero.
pub fn bb_residual_1(order: i64) -> Series {
    let ctx = RRContext::new(order);
    let p = &ctx.r1 * &(&ctx.r2 * &ctx.r2);
    let lhs = &p.inverse().expect("constant term 1") - &p.shift(2);
    let num = &eta_like(2, order) * &pow(&eta_like(5, order), 5);
    let den = &eta_like(1, order) * &pow(&eta_like(10, order), 5);
    let rhs = &num * &den.inverse().expect("constant term 1");
    &lhs - &rhs
}

/// Residual of the second imported identity:
/// `R(q^2)/R^2(q) - R^2(q)/R(q^2)
///  - 4q (q^10;q^10)^5 (q;q) / ((q^5;q^5)^5 (q^2;q^2))`.
/// Identically zero.  (Some statements of this identity omit the fifth
/// power on `(q^5;q^5)`; with exponent 1 the difference of the two sides
/// is `16q^6 + O(q^7)`, and the exponent 5 is forced by the identity's own
/// consequences — see `quintic_chain_with_cubed_first_group` below — and
/// by symmetry with the first identity.)
pub fn bb_residual_2(order: i64) -> Series {
    let ctx = RRContext::new(order);
    let r1_sq = &ctx.r1 * &ctx.r1;
    let lhs = &(&ctx.r2 * &r1_sq.inverse().expect("constant term 1"))
        - &(&r1_sq * &ctx.r2.inverse().expect("constant term 1"));
    let num = &pow(&eta_like(10, order), 5) * &eta_like(1, order);
    let den = &pow(&eta_like(5, order), 5) * &eta_like(2, order);
    let rhs = (&num * &den.inverse().expect("constant term 1")).shift(1).scale_i64(4);
    &lhs - &rhs.truncate(order)
}
