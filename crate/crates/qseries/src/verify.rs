//! Executable checks for vanishing-coefficient and coefficient-equality
//! statements: a small [`Claim`] language over product expansions, a uniform
//! [`check`] routine producing [`VerificationReport`]s, a fixed catalog of
//! suites for the mixed-sign quintic products, and parameterized runners for
//! the classical vanishing families (Andrews–Bressoud, Alladi–Gordon,
//! McLaughlin, Richmond–Szekeres).
//!
//! Every case is a pure computation; [`run_suite`] can execute cases in
//! parallel and always returns reports sorted by case id, so output is
//! bit-identical across runs and thread counts.

use crate::dsl;
use crate::error::{Error, Result};
use crate::products::{expand, Factor, ProductExpr, Sign};
use crate::report::{FirstFailure, VerificationReport};
use crate::series::Series;
use crate::theta::{component_cancellation, CancellationFamily, SignChoice};
use rayon::prelude::*;
use std::fmt;

/// An arithmetic progression of coefficients of a product expansion: the
/// subsequence `c[modulus*n + residue]` of `expr`, indexed by `n >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Progression {
    pub expr: ProductExpr,
    pub modulus: i64,
    pub residue: i64,
}

impl Progression {
    pub fn new(expr: ProductExpr, modulus: i64, residue: i64) -> Progression {
        Progression { expr, modulus, residue }
    }

    /// Expands the product at `order` and extracts the progression.
    fn extract(&self, order: i64) -> Result<Series> {
        expand(&self.expr, order)?.dissect(self.modulus, self.residue)
    }

    fn label(&self) -> String {
        format!("[{} : {}]", dsl::format(&self.expr), index_term(self.modulus, self.residue))
    }

    /// Label with the residue displaced by `shift` whole steps, rendering
    /// the effective index of a shifted comparison (e.g. `5n-1`).
    fn shifted_label(&self, shift: i64) -> String {
        format!(
            "[{} : {}]",
            dsl::format(&self.expr),
            index_term(self.modulus, self.residue + self.modulus * shift)
        )
    }
}

/// Renders `modulus*n + residue` the way it is written under a summation
/// sign: `5n`, `5n+2`, or `5n-1`.
fn index_term(modulus: i64, residue: i64) -> String {
    match residue {
        0 => format!("{modulus}n"),
        r if r > 0 => format!("{modulus}n+{r}"),
        r => format!("{modulus}n{r}"),
    }
}

/// A machine-checkable statement about coefficient progressions.
///
/// Index conventions: `EqualsProgression` asserts `left[n] = right[n + shift]`
/// and skips indices where `n + shift < 0` (the statement is silent there).
/// `EqualsSeries` compares whole generating functions, so a missing right
/// term contributes zero instead of being skipped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Claim {
    /// Every coefficient of `expr` on each listed residue class vanishes.
    Vanishes { expr: ProductExpr, modulus: i64, residues: Vec<i64> },
    /// `left[n] = right[n + shift]` wherever both sides are known.
    EqualsProgression { left: Progression, right: Progression, shift: i64 },
    /// The generating function of `left[n] - right[n + shift]` equals
    /// `scale` times the expansion of `rhs`.
    EqualsSeries {
        left: Progression,
        right: Progression,
        shift: i64,
        scale: i64,
        rhs: ProductExpr,
    },
    /// `left[n] - right[n]` is strictly positive at every known index.
    PositiveDifference { left: Progression, right: Progression },
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::Vanishes { expr, modulus, residues } => {
                let terms: Vec<String> =
                    residues.iter().map(|&r| index_term(*modulus, r)).collect();
                write!(f, "[{} : {}] = 0", dsl::format(expr), terms.join(", "))
            }
            Claim::EqualsProgression { left, right, shift } => {
                write!(f, "{} = {}", left.label(), right.shifted_label(*shift))
            }
            Claim::EqualsSeries { left, right, shift, scale, rhs } => {
                let rhs_text = if *scale == 1 {
                    dsl::format(rhs)
                } else {
                    format!("{scale} * {}", dsl::format(rhs))
                };
                write!(f, "{} - {} = {}", left.label(), right.shifted_label(*shift), rhs_text)
            }
            Claim::PositiveDifference { left, right } => {
                write!(f, "{} > {}", left.label(), right.label())
            }
        }
    }
}

fn finish(
    case_id: &str,
    claim: String,
    order: i64,
    checked: u64,
    failure: Option<FirstFailure>,
) -> VerificationReport {
    match failure {
        Some(f) => VerificationReport::fail(case_id, claim, order, checked, f),
        None if checked == 0 => VerificationReport::vacuous(case_id, claim, order),
        None => VerificationReport::pass(case_id, claim, order, checked),
    }
}

/// Expands the claim's products at `order` and compares coefficients
/// exactly.  A window too small for even one comparison yields a `vacuous`
/// report rather than a silent pass.
///
/// `first_failure.index` is the exponent in the original expansion for
/// `Vanishes` claims and the progression index `n` for the other kinds.
pub fn check(case_id: &str, claim: &Claim, order: i64) -> Result<VerificationReport> {
    let text = claim.to_string();
    match claim {
        Claim::Vanishes { expr, modulus, residues } => {
            let series = expand(expr, order)?;
            let mut checked: u64 = 0;
            let mut failure = None;
            for &residue in residues {
                let progression = series.dissect(*modulus, residue)?;
                match progression.first_nonzero() {
                    Some((n, value)) => {
                        checked += n.max(0).unsigned_abs();
                        failure = Some(FirstFailure {
                            index: modulus * n + residue,
                            left: value.to_string(),
                            right: "0".to_string(),
                        });
                        break;
                    }
                    None => checked += progression.order().max(0).unsigned_abs(),
                }
            }
            Ok(finish(case_id, text, order, checked, failure))
        }
        Claim::EqualsProgression { left, right, shift } => {
            let l = left.extract(order)?;
            let r = right.extract(order)?;
            let start = (-shift).max(0);
            let stop = l.order().min(r.order() - shift);
            let mut checked: u64 = 0;
            let mut failure = None;
            for n in start..stop {
                let lv = l.coeff(n)?;
                let rv = r.coeff(n + shift)?;
                if lv != rv {
                    failure = Some(FirstFailure {
                        index: n,
                        left: lv.to_string(),
                        right: rv.to_string(),
                    });
                    break;
                }
                checked += 1;
            }
            Ok(finish(case_id, text, order, checked, failure))
        }
        Claim::EqualsSeries { left, right, shift, scale, rhs } => {
            let l = left.extract(order)?;
            // Shifting by -shift realigns right[n + shift] to index n; terms
            // that would need a negative index land below the base and read
            // as zero, exactly like the missing terms of the shifted sum.
            let r = right.extract(order)?.shift(-shift);
            let window = l.order().min(r.order());
            if window <= 0 {
                return Ok(VerificationReport::vacuous(case_id, text, order));
            }
            let difference = &l - &r;
            let rhs_series = expand(rhs, window)?.scale_i64(*scale);
            match difference.first_mismatch(&rhs_series, window) {
                Some((n, lv, rv)) => Ok(finish(
                    case_id,
                    text,
                    order,
                    n.max(0).unsigned_abs(),
                    Some(FirstFailure { index: n, left: lv.to_string(), right: rv.to_string() }),
                )),
                None => Ok(finish(case_id, text, order, window.unsigned_abs(), None)),
            }
        }
        Claim::PositiveDifference { left, right } => {
            let l = left.extract(order)?;
            let r = right.extract(order)?;
            let window = l.order().min(r.order());
            let mut checked: u64 = 0;
            let mut failure = None;
            for n in 0..window {
                let lv = l.coeff(n)?;
                let rv = r.coeff(n)?;
                if lv <= rv {
                    failure = Some(FirstFailure {
                        index: n,
                        left: lv.to_string(),
                        right: rv.to_string(),
                    });
                    break;
                }
                checked += 1;
            }
            Ok(finish(case_id, text, order, checked, failure))
        }
    }
}

// ---------------------------------------------------------------------------
// Fixed catalog
// ---------------------------------------------------------------------------

// The sixteen quintic-by-decadic products of the fixed catalog, keyed by the
// short letter handles used in the case ids.  `a`-`d` are the mixed-sign
// originals, `e`/`f` carry an ambiguity sign read either all-upper or
// all-lower, and the rest vary the sign placement.
const A_SRC: &str = "(-q,-q^4;q^5)(q,q^9;q^10)^3";
const B_SRC: &str = "(-q^2,-q^3;q^5)(q^3,q^7;q^10)^3";
const C_SRC: &str = "(-q,-q^4;q^5)^3(q^3,q^7;q^10)";
const D_SRC: &str = "(-q^2,-q^3;q^5)^3(q,q^9;q^10)";
const E_UPPER_SRC: &str = "(-q,-q^4;q^5)(q^4,q^6;q^10)^3";
const E_LOWER_SRC: &str = "(q,q^4;q^5)(-q^4,-q^6;q^10)^3";
const F_UPPER_SRC: &str = "(-q^2,-q^3;q^5)(q^2,q^8;q^10)^3";
const F_LOWER_SRC: &str = "(q^2,q^3;q^5)(-q^2,-q^8;q^10)^3";
const G_SRC: &str = "(q,q^4;q^5)(-q,-q^9;q^10)^3";
const H_SRC: &str = "(q^2,q^3;q^5)(-q^3,-q^7;q^10)^3";
const K_SRC: &str = "(q,q^4;q^5)(q,q^9;q^10)^3";
const L_SRC: &str = "(q^2,q^3;q^5)(q^3,q^7;q^10)^3";
const S_SRC: &str = "(q,q^4;q^5)^3(-q^3,-q^7;q^10)";
const T_SRC: &str = "(q^2,q^3;q^5)^3(-q,-q^9;q^10)";
const U_SRC: &str = "(q,q^4;q^5)^3(q^3,q^7;q^10)";
const V_SRC: &str = "(q^2,q^3;q^5)^3(q,q^9;q^10)";

/// Fourth-power eta-quotient appearing as the closed form of the two
/// series-difference claims, in both orientations.
const ETA_RATIO_DOWN: &str = "(q;q)^4/(q^2;q^2)^4";
const ETA_RATIO_UP: &str = "(q^2;q^2)^4/(q;q)^4";

// The four octic/dodecic quotients with one vanishing progression each.
const ALPHA_SRC: &str = "(q^3,q^5;q^8)/(q,q^7;q^8)";
const BETA_SRC: &str = "(q,q^7;q^8)/(q^3,q^5;q^8)";
const GAMMA_SRC: &str = "(q^5,q^7;q^12)/(q,q^11;q^12)";
const DELTA_SRC: &str = "(q,q^11;q^12)/(q^5,q^7;q^12)";

/// Parses one of the module's built-in expression strings.
fn built_in(src: &str) -> ProductExpr {
    dsl::parse(src).expect("built-in expression parses")
}

/// One runnable case: a stable id plus what to check.
struct Case {
    id: String,
    kind: CaseKind,
}

enum CaseKind {
    Claim(Claim),
    /// Routed through the staged quadratic-form cancellation checker, which
    /// certifies the mechanism behind the vanishing, not just the zeros.
    Cancellation(CancellationFamily, SignChoice),
}

impl Case {
    fn claim(id: &str, claim: Claim) -> Case {
        Case { id: id.to_string(), kind: CaseKind::Claim(claim) }
    }
}

fn run_case(case: &Case, order: i64) -> Result<VerificationReport> {
    match &case.kind {
        CaseKind::Claim(claim) => check(&case.id, claim, order),
        CaseKind::Cancellation(family, choice) => {
            Ok(component_cancellation(*family, *choice, order))
        }
    }
}

fn vanish_case(id: &str, src: &str, modulus: i64, residues: &[i64]) -> Case {
    Case::claim(
        id,
        Claim::Vanishes { expr: built_in(src), modulus, residues: residues.to_vec() },
    )
}

fn hirschhorn_cases() -> Vec<Case> {
    vec![
        vanish_case("hirschhorn/a", A_SRC, 5, &[2, 4]),
        vanish_case("hirschhorn/b", B_SRC, 5, &[1, 4]),
    ]
}

fn tang_cases() -> Vec<Case> {
    vec![
        vanish_case("tang/c", C_SRC, 5, &[3, 4]),
        vanish_case("tang/d", D_SRC, 5, &[3, 4]),
    ]
}

/// The five statements tying the `b` progressions back to `a`: four plain
/// equalities plus the eta-quotient difference on the `5n` class.
fn ab_relation_cases() -> Vec<Case> {
    let a = |r| Progression::new(built_in(A_SRC), 5, r);
    let b = |r| Progression::new(built_in(B_SRC), 5, r);
    vec![
        Case::claim(
            "ab-relations/5n-difference",
            Claim::EqualsSeries {
                left: b(0),
                right: a(3),
                shift: -1,
                scale: 1,
                rhs: built_in(ETA_RATIO_DOWN),
            },
        ),
        Case::claim(
            "ab-relations/5n+1",
            Claim::EqualsProgression { left: b(1), right: a(4), shift: -1 },
        ),
        Case::claim(
            "ab-relations/5n+2",
            Claim::EqualsProgression { left: b(2), right: a(0), shift: 0 },
        ),
        Case::claim(
            "ab-relations/5n+3",
            Claim::EqualsProgression { left: b(3), right: a(1), shift: 0 },
        ),
        Case::claim(
            "ab-relations/5n+4",
            Claim::EqualsProgression { left: b(4), right: a(2), shift: 0 },
        ),
    ]
}

/// The six statements comparing the `c` and `d` progressions: four
/// equalities, the scaled eta-quotient difference on `5n+1`, and the strict
/// positivity of that same difference.
fn cd_relation_cases() -> Vec<Case> {
    let c = |r| Progression::new(built_in(C_SRC), 5, r);
    let d = |r| Progression::new(built_in(D_SRC), 5, r);
    let mut cases: Vec<Case> = [0, 2, 3, 4]
        .iter()
        .map(|&r| {
            Case::claim(
                &format!("cd-relations/5n+{r}"),
                Claim::EqualsProgression { left: c(r), right: d(r), shift: 0 },
            )
        })
        .collect();
    cases.push(Case::claim(
        "cd-relations/5n+1-difference",
        Claim::EqualsSeries {
            left: c(1),
            right: d(1),
            shift: 0,
            scale: 4,
            rhs: built_in(ETA_RATIO_UP),
        },
    ));
    cases.push(Case::claim(
        "cd-relations/5n+1-positivity",
        Claim::PositiveDifference { left: c(1), right: d(1) },
    ));
    cases
}

fn ef_vanishing_cases() -> Vec<Case> {
    vec![
        vanish_case("ef-vanishing/e-upper", E_UPPER_SRC, 5, &[3]),
        vanish_case("ef-vanishing/e-lower", E_LOWER_SRC, 5, &[3]),
        vanish_case("ef-vanishing/f-upper", F_UPPER_SRC, 5, &[4]),
        vanish_case("ef-vanishing/f-lower", F_LOWER_SRC, 5, &[4]),
    ]
}

fn gh_vanishing_cases() -> Vec<Case> {
    vec![
        vanish_case("gh-vanishing/g", G_SRC, 5, &[2]),
        vanish_case("gh-vanishing/h", H_SRC, 5, &[1]),
    ]
}

fn kl_vanishing_cases() -> Vec<Case> {
    vec![
        vanish_case("kl-vanishing/k", K_SRC, 5, &[4]),
        vanish_case("kl-vanishing/l", L_SRC, 5, &[4]),
    ]
}

fn st_vanishing_cases() -> Vec<Case> {
    vec![
        vanish_case("st-vanishing/s", S_SRC, 5, &[3]),
        vanish_case("st-vanishing/t", T_SRC, 5, &[4]),
    ]
}

fn uv_vanishing_cases() -> Vec<Case> {
    vec![
        vanish_case("uv-vanishing/u", U_SRC, 5, &[4]),
        vanish_case("uv-vanishing/v", V_SRC, 5, &[3]),
    ]
}

/// The four staged cancellation certificates; ids are produced inside the
/// checker and repeated here so suite listings stay in sync.
fn cancellation_cases() -> Vec<Case> {
    use CancellationFamily::{VanishFourModFive, VanishThreeModFive};
    use SignChoice::{Lower, Upper};
    vec![
        Case {
            id: "cancellation/vanish-5n3-upper".to_string(),
            kind: CaseKind::Cancellation(VanishThreeModFive, Upper),
        },
        Case {
            id: "cancellation/vanish-5n3-lower".to_string(),
            kind: CaseKind::Cancellation(VanishThreeModFive, Lower),
        },
        Case {
            id: "cancellation/vanish-5n4-upper".to_string(),
            kind: CaseKind::Cancellation(VanishFourModFive, Upper),
        },
        Case {
            id: "cancellation/vanish-5n4-lower".to_string(),
            kind: CaseKind::Cancellation(VanishFourModFive, Lower),
        },
    ]
}

fn richmond_szekeres_cases() -> Vec<Case> {
    vec![
        vanish_case("richmond-szekeres/alpha", ALPHA_SRC, 4, &[3]),
        vanish_case("richmond-szekeres/beta", BETA_SRC, 4, &[2]),
        vanish_case("richmond-szekeres/gamma", GAMMA_SRC, 6, &[5]),
        vanish_case("richmond-szekeres/delta", DELTA_SRC, 6, &[3]),
    ]
}

/// The four octic/dodecic quotient cases, each a single vanishing class.
pub fn richmond_szekeres_suite(order: i64) -> Result<Vec<VerificationReport>> {
    run_cases(&richmond_szekeres_cases(), order, false)
}

// ---------------------------------------------------------------------------
// Parameterized families
// ---------------------------------------------------------------------------

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn invalid(reason: String) -> Error {
    Error::InvalidCase(reason)
}

fn plus(offset: i64, modulus: i64, multiplicity: i32) -> Factor {
    Factor { sign: Sign::Plus, offset, modulus, multiplicity }
}

fn signed(sign: Sign, offset: i64, modulus: i64, multiplicity: i32) -> Factor {
    Factor { sign, offset, modulus, multiplicity }
}

/// Two-parameter family: `(q^r,q^{2k-r};q^{2k}) / (q^{k-r},q^{k+r};q^{2k})`
/// vanishes on the class of `r(k-r+1)/2` mod `k`.
///
/// The progression's first asserted index `r(k-r+1)/2` can exceed `k`; the
/// whole residue class vanishes, so the claim checks the class from its
/// least member.
fn andrews_bressoud_claim(k: i64, r: i64) -> Result<(String, Claim)> {
    if !(1 <= r && r < k) {
        return Err(invalid(format!("require 1 <= r < k, got r={r}, k={k}")));
    }
    if gcd(r, k) != 1 {
        return Err(invalid(format!("r={r} and k={k} are not coprime")));
    }
    if (r + k) % 2 == 0 {
        return Err(invalid(format!("r={r} and k={k} must have opposite parity")));
    }
    let m2 = 2 * k;
    let expr = ProductExpr::new(vec![
        plus(r, m2, 1),
        plus(m2 - r, m2, 1),
        plus(k - r, m2, -1),
        plus(k + r, m2, -1),
    ]);
    let start = r * (k - r + 1) / 2;
    let claim = Claim::Vanishes { expr, modulus: k, residues: vec![start % k] };
    Ok((format!("andrews-bressoud/k{k}-r{r}"), claim))
}

/// Checks one valid `(k, r)` pair of the two-parameter family at `order`.
pub fn andrews_bressoud_case(k: i64, r: i64, order: i64) -> Result<VerificationReport> {
    let (id, claim) = andrews_bressoud_claim(k, r)?;
    check(&id, &claim, order)
}

/// Three-parameter family: from `(m, k, s)` derive `r* = (k-1)s`,
/// `r = r* mod mk` and `r' = ceil(r*/mk) mod k`; then
/// `(q^r,q^{mk-r};q^{mk}) / (q^s,q^{mk-s};q^{mk})` vanishes on the class of
/// `r r'` mod `k`.  The companion flips the denominator monomial signs and
/// needs odd `k`.
fn alladi_gordon_claim(m: i64, k: i64, s: i64, companion: bool) -> Result<(String, Claim)> {
    if !(1 < m && m < k) {
        return Err(invalid(format!("require 1 < m < k, got m={m}, k={k}")));
    }
    if !(1 <= s && s < m * k) {
        return Err(invalid(format!("require 1 <= s < m*k, got s={s}, m*k={}", m * k)));
    }
    if gcd(s, k * m) != 1 {
        return Err(invalid(format!("s={s} and k*m={} are not coprime", k * m)));
    }
    if companion && k % 2 == 0 {
        return Err(invalid(format!("companion form requires odd k, got k={k}")));
    }
    let mk = m * k;
    let r_star = (k - 1) * s;
    let r = r_star % mk;
    if r == 0 {
        return Err(invalid(format!("derived exponent r vanished: r*={r_star} is divisible by m*k={mk}")));
    }
    let r_prime = crate::series::ceil_div(r_star, mk) % k;
    if r_prime == 0 {
        return Err(invalid(format!("derived multiplier r' vanished mod k for r*={r_star}")));
    }
    let sign = if companion { Sign::Minus } else { Sign::Plus };
    let expr = ProductExpr::new(vec![
        plus(r, mk, 1),
        plus(mk - r, mk, 1),
        signed(sign, s, mk, -1),
        signed(sign, mk - s, mk, -1),
    ]);
    let claim = Claim::Vanishes { expr, modulus: k, residues: vec![(r * r_prime) % k] };
    let suffix = if companion { "-companion" } else { "" };
    Ok((format!("alladi-gordon/m{m}-k{k}-s{s}{suffix}"), claim))
}

/// Checks one valid `(m, k, s)` tuple of the three-parameter family.
pub fn alladi_gordon_case(m: i64, k: i64, s: i64, order: i64) -> Result<VerificationReport> {
    let (id, claim) = alladi_gordon_claim(m, k, s, false)?;
    check(&id, &claim, order)
}

/// Same family with the minus-sign denominator; requires odd `k`.
pub fn alladi_gordon_companion(m: i64, k: i64, s: i64, order: i64) -> Result<VerificationReport> {
    let (id, claim) = alladi_gordon_claim(m, k, s, true)?;
    check(&id, &claim, order)
}

/// Four-parameter family: with `r = sm + t`, the quotient
/// `(q^{r-tk},q^{mk-(r-tk)};q^{mk}) / (q^r,q^{mk-r};q^{mk})` vanishes at
/// indices `kn - rs`, i.e. on the class of `-rs` mod `k` from its least
/// nonnegative member.  Tuples with `r - tk < 1` have no valid numerator
/// exponent and are rejected as invalid rather than reinterpreted.
fn mclaughlin_claim(k: i64, m: i64, s: i64, t: i64, companion: bool) -> Result<(String, Claim)> {
    if k <= 1 || m <= 1 {
        return Err(invalid(format!("require k > 1 and m > 1, got k={k}, m={m}")));
    }
    if !(0 <= s && s < k) {
        return Err(invalid(format!("require 0 <= s < k, got s={s}, k={k}")));
    }
    if !(1 <= t && t < m) {
        return Err(invalid(format!("require 1 <= t < m, got t={t}, m={m}")));
    }
    let r = s * m + t;
    if gcd(r, k) != 1 {
        return Err(invalid(format!("r = s*m + t = {r} and k={k} are not coprime")));
    }
    let head = r - t * k;
    if head < 1 {
        return Err(invalid(format!("numerator exponent r - t*k = {head} must be at least 1")));
    }
    if companion && k % 2 == 0 {
        return Err(invalid(format!("companion form requires odd k, got k={k}")));
    }
    let mk = m * k;
    let sign = if companion { Sign::Minus } else { Sign::Plus };
    let expr = ProductExpr::new(vec![
        plus(head, mk, 1),
        plus(mk - head, mk, 1),
        signed(sign, r, mk, -1),
        signed(sign, mk - r, mk, -1),
    ]);
    let claim = Claim::Vanishes { expr, modulus: k, residues: vec![(-r * s).rem_euclid(k)] };
    let suffix = if companion { "-companion" } else { "" };
    Ok((format!("mclaughlin/k{k}-m{m}-s{s}-t{t}{suffix}"), claim))
}

/// Checks one valid `(k, m, s, t)` tuple of the four-parameter family.
pub fn mclaughlin_case(k: i64, m: i64, s: i64, t: i64, order: i64) -> Result<VerificationReport> {
    let (id, claim) = mclaughlin_claim(k, m, s, t, false)?;
    check(&id, &claim, order)
}

/// Same family with the minus-sign denominator; requires odd `k`.
pub fn mclaughlin_companion(
    k: i64,
    m: i64,
    s: i64,
    t: i64,
    order: i64,
) -> Result<VerificationReport> {
    let (id, claim) = mclaughlin_claim(k, m, s, t, true)?;
    check(&id, &claim, order)
}

// Grid enumerators walk fixed parameter boxes and keep only tuples the
// family accepts, so invalid combinations never pollute suite statistics.

fn andrews_bressoud_grid_cases() -> Vec<Case> {
    let mut cases = Vec::new();
    for k in 2..=10 {
        for r in 1..k {
            if let Ok((id, claim)) = andrews_bressoud_claim(k, r) {
                cases.push(Case::claim(&id, claim));
            }
        }
    }
    cases
}

fn alladi_gordon_grid_cases() -> Vec<Case> {
    let mut cases = Vec::new();
    for k in 3..=7i64 {
        for m in 2..k {
            for s in 1..m * k {
                if let Ok((id, claim)) = alladi_gordon_claim(m, k, s, false) {
                    cases.push(Case::claim(&id, claim));
                }
                if let Ok((id, claim)) = alladi_gordon_claim(m, k, s, true) {
                    cases.push(Case::claim(&id, claim));
                }
            }
        }
    }
    cases
}

fn mclaughlin_grid_cases() -> Vec<Case> {
    let mut cases = Vec::new();
    for k in 2..=6i64 {
        for m in 2..=6i64 {
            for s in 0..k {
                for t in 1..m {
                    if let Ok((id, claim)) = mclaughlin_claim(k, m, s, t, false) {
                        cases.push(Case::claim(&id, claim));
                    }
                    if let Ok((id, claim)) = mclaughlin_claim(k, m, s, t, true) {
                        cases.push(Case::claim(&id, claim));
                    }
                }
            }
        }
    }
    cases
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

/// Names accepted by [`run_suite`]; `catalog` bundles the ten fixed suites
/// and `all` adds the parameterized families on top.
pub const SUITE_NAMES: [&str; 16] = [
    "hirschhorn",
    "tang",
    "ab-relations",
    "cd-relations",
    "ef-vanishing",
    "gh-vanishing",
    "kl-vanishing",
    "st-vanishing",
    "uv-vanishing",
    "cancellation",
    "richmond-szekeres",
    "andrews-bressoud",
    "alladi-gordon",
    "mclaughlin",
    "catalog",
    "all",
];

fn catalog_cases() -> Vec<Case> {
    let mut cases = Vec::new();
    cases.extend(hirschhorn_cases());
    cases.extend(tang_cases());
    cases.extend(ab_relation_cases());
    cases.extend(cd_relation_cases());
    cases.extend(ef_vanishing_cases());
    cases.extend(gh_vanishing_cases());
    cases.extend(kl_vanishing_cases());
    cases.extend(st_vanishing_cases());
    cases.extend(uv_vanishing_cases());
    cases.extend(cancellation_cases());
    cases
}

/// Runs the full fixed catalog: the four vanishing pairs, the `a`/`b` and
/// `c`/`d` relation blocks, the sign-variant and sign-placement vanishing
/// claims, and the staged cancellation certificates.
pub fn catalog_suite(order: i64) -> Result<Vec<VerificationReport>> {
    run_cases(&catalog_cases(), order, false)
}

fn suite_cases(name: &str) -> Result<Vec<Case>> {
    Ok(match name {
        "hirschhorn" => hirschhorn_cases(),
        "tang" => tang_cases(),
        "ab-relations" => ab_relation_cases(),
        "cd-relations" => cd_relation_cases(),
        "ef-vanishing" => ef_vanishing_cases(),
        "gh-vanishing" => gh_vanishing_cases(),
        "kl-vanishing" => kl_vanishing_cases(),
        "st-vanishing" => st_vanishing_cases(),
        "uv-vanishing" => uv_vanishing_cases(),
        "cancellation" => cancellation_cases(),
        "richmond-szekeres" => richmond_szekeres_cases(),
        "andrews-bressoud" => andrews_bressoud_grid_cases(),
        "alladi-gordon" => alladi_gordon_grid_cases(),
        "mclaughlin" => mclaughlin_grid_cases(),
        "catalog" => catalog_cases(),
        "all" => {
            let mut cases = catalog_cases();
            cases.extend(richmond_szekeres_cases());
            cases.extend(andrews_bressoud_grid_cases());
            cases.extend(alladi_gordon_grid_cases());
            cases.extend(mclaughlin_grid_cases());
            cases
        }
        other => {
            return Err(Error::UnknownSuite {
                name: other.to_string(),
                available: SUITE_NAMES.join(", "),
            })
        }
    })
}

fn run_cases(cases: &[Case], order: i64, parallel: bool) -> Result<Vec<VerificationReport>> {
    let mut reports: Vec<VerificationReport> = if parallel {
        cases.par_iter().map(|c| run_case(c, order)).collect::<Result<_>>()?
    } else {
        cases.iter().map(|c| run_case(c, order)).collect::<Result<_>>()?
    };
    reports.sort_by(|x, y| x.case_id.cmp(&y.case_id));
    Ok(reports)
}

/// Runs every case of the named suite at `order`, optionally across
/// threads.  Reports come back sorted by case id either way.
pub fn run_suite(name: &str, order: i64, parallel: bool) -> Result<Vec<VerificationReport>> {
    run_cases(&suite_cases(name)?, order, parallel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::CheckStatus;

    fn progression(src: &str, modulus: i64, residue: i64) -> Progression {
        Progression::new(built_in(src), modulus, residue)
    }

    // Lowest terms of the four letter products, multiplied out by hand from
    // the factors that matter below the cutoff:
    //   a: (1+q)(1+q^4)(1-q)^3            = 1 - 2q + 2q^3 - q^4 + q^4(1 - 2q)
    //   b: (1+q^2)(1+q^3)(1-q^3)^3        = 1 + q^2 - 2q^3 - 2q^5
    //   c: (1+q)^3(1+q^4)^3(1+q^6)^3(1-q^3)(1-q^7)
    //   d: (1+q^2)^3(1+q^3)^3(1+q^7)^3(1-q)(1-q^9)
    const A_HAND: [i64; 6] = [1, -2, 0, 2, 0, -2];
    const B_HAND: [i64; 6] = [1, 0, 1, -2, 0, -2];
    const C_HAND: [i64; 8] = [1, 3, 3, 0, 0, 6, 11, 8];
    const D_HAND: [i64; 8] = [1, -1, 3, 0, 0, 6, -5, 8];

    #[test]
    fn letter_products_match_hand_expansion() {
        let a = expand(&built_in(A_SRC), 6).unwrap();
        assert_eq!(a, Series::from_ints(0, &A_HAND));
        let b = expand(&built_in(B_SRC), 6).unwrap();
        assert_eq!(b, Series::from_ints(0, &B_HAND));
        let c = expand(&built_in(C_SRC), 8).unwrap();
        assert_eq!(c, Series::from_ints(0, &C_HAND));
        let d = expand(&built_in(D_SRC), 8).unwrap();
        assert_eq!(d, Series::from_ints(0, &D_HAND));
    }

    #[test]
    fn vanishing_claim_passes_with_exact_window_count() {
        let claim = Claim::Vanishes { expr: built_in(A_SRC), modulus: 5, residues: vec![2] };
        let report = check("t/a", &claim, 500).unwrap();
        assert_eq!(report.status, CheckStatus::Pass);
        // ceil((500 - 2) / 5) = 100 progression indices fit below the order.
        assert_eq!(report.checked_count, 100);
        assert_eq!(report.claim, format!("[{A_SRC} : 5n+2] = 0"));
    }

    #[test]
    fn two_residue_claim_counts_both_windows() {
        let claim = Claim::Vanishes { expr: built_in(A_SRC), modulus: 5, residues: vec![2, 4] };
        let report = check("t/a2", &claim, 500).unwrap();
        assert_eq!(report.status, CheckStatus::Pass);
        assert_eq!(report.checked_count, 200);
    }

    #[test]
    fn perturbed_residue_fails_within_first_indices() {
        // The hand expansion has a_3 = 2, so the class of 3 is not a
        // vanishing class and the checker must say so early.
        let claim = Claim::Vanishes { expr: built_in(A_SRC), modulus: 5, residues: vec![3] };
        let report = check("t/a3", &claim, 100).unwrap();
        assert_eq!(report.status, CheckStatus::Fail);
        let failure = report.first_failure.unwrap();
        assert_eq!(failure.index, 3);
        assert_eq!(failure.left, "2");
        assert_eq!(failure.right, "0");
        assert!(failure.index <= 20);
    }

    #[test]
    fn window_below_first_index_is_vacuous() {
        let claim = Claim::Vanishes { expr: built_in(A_SRC), modulus: 5, residues: vec![4] };
        let report = check("t/vac", &claim, 4).unwrap();
        assert_eq!(report.status, CheckStatus::Vacuous);
        assert_eq!(report.checked_count, 0);
        assert!(report.ok());
    }

    #[test]
    fn equality_claims_match_hand_values_and_pass() {
        // b_2 = a_0 = 1 and b_3 = a_1 = -2 from the hand expansions.
        assert_eq!(B_HAND[2], A_HAND[0]);
        assert_eq!(B_HAND[3], A_HAND[1]);
        for case in ab_relation_cases() {
            let report = run_case(&case, 300).unwrap();
            assert_eq!(report.status, CheckStatus::Pass, "{}", report.case_id);
            assert!(report.checked_count >= 58, "{}", report.case_id);
        }
    }

    #[test]
    fn negative_shift_skips_unasserted_indices() {
        // (q;q) = 1 - q - q^2 + q^5 + ..., compared against itself shifted
        // one step: at n=1 the claim reads -1 = 1 and must fail there, while
        // n=0 (right index -1) is outside the claim.
        let claim = Claim::EqualsProgression {
            left: progression("(q;q)", 1, 0),
            right: progression("(q;q)", 1, 0),
            shift: -1,
        };
        let report = check("t/shift", &claim, 50).unwrap();
        assert_eq!(report.status, CheckStatus::Fail);
        let failure = report.first_failure.unwrap();
        assert_eq!(failure.index, 1);
        assert_eq!(failure.left, "-1");
        assert_eq!(failure.right, "1");
    }

    #[test]
    fn series_difference_matches_eta_quotient() {
        // By hand: b_0 - 0 = 1 and b_5 - a_3 = -2 - 2 = -4, the first two
        // coefficients of (q;q)^4/(q^2;q^2)^4.
        let rhs = expand(&built_in(ETA_RATIO_DOWN), 2).unwrap();
        assert_eq!(rhs, Series::from_ints(0, &[1, -4]));
        let claim = Claim::EqualsSeries {
            left: progression(B_SRC, 5, 0),
            right: progression(A_SRC, 5, 3),
            shift: -1,
            scale: 1,
            rhs: built_in(ETA_RATIO_DOWN),
        };
        let report = check("t/5n-diff", &claim, 300).unwrap();
        assert_eq!(report.status, CheckStatus::Pass);
        assert_eq!(report.checked_count, 60);
    }

    #[test]
    fn scaled_difference_and_positivity_match_hand_values() {
        // c_1 - d_1 = 3 - (-1) = 4 and c_6 - d_6 = 11 - (-5) = 16, i.e.
        // 4 * (1 + 4q + ...) = 4 * (q^2;q^2)^4/(q;q)^4.
        assert_eq!(C_HAND[1] - D_HAND[1], 4);
        assert_eq!(C_HAND[6] - D_HAND[6], 16);
        for case in cd_relation_cases() {
            let report = run_case(&case, 300).unwrap();
            assert_eq!(report.status, CheckStatus::Pass, "{}", report.case_id);
        }
    }

    #[test]
    fn wrong_scale_is_detected_at_the_constant_term() {
        let claim = Claim::EqualsSeries {
            left: progression(C_SRC, 5, 1),
            right: progression(D_SRC, 5, 1),
            shift: 0,
            scale: 5,
            rhs: built_in(ETA_RATIO_UP),
        };
        let report = check("t/scale", &claim, 100).unwrap();
        assert_eq!(report.status, CheckStatus::Fail);
        let failure = report.first_failure.unwrap();
        assert_eq!(failure.index, 0);
        assert_eq!(failure.left, "4");
        assert_eq!(failure.right, "5");
    }

    #[test]
    fn swapped_positivity_fails_at_the_first_index() {
        let claim = Claim::PositiveDifference {
            left: progression(D_SRC, 5, 1),
            right: progression(C_SRC, 5, 1),
        };
        let report = check("t/pos", &claim, 100).unwrap();
        assert_eq!(report.status, CheckStatus::Fail);
        let failure = report.first_failure.unwrap();
        assert_eq!(failure.index, 0);
        assert_eq!(failure.left, "-1");
        assert_eq!(failure.right, "3");
    }

    #[test]
    fn fixed_catalog_passes_at_modest_order() {
        let reports = catalog_suite(150).unwrap();
        assert_eq!(reports.len(), 31);
        for report in &reports {
            assert_eq!(report.status, CheckStatus::Pass, "{}", report.case_id);
        }
    }

    #[test]
    fn cancellation_case_ids_stay_in_sync_with_the_checker() {
        for case in cancellation_cases() {
            let report = run_case(&case, 100).unwrap();
            assert_eq!(report.case_id, case.id);
            assert_eq!(report.status, CheckStatus::Pass, "{}", report.case_id);
        }
    }

    #[test]
    fn richmond_szekeres_quartet_passes() {
        let reports = richmond_szekeres_suite(300).unwrap();
        let ids: Vec<&str> = reports.iter().map(|r| r.case_id.as_str()).collect();
        assert_eq!(
            ids,
            [
                "richmond-szekeres/alpha",
                "richmond-szekeres/beta",
                "richmond-szekeres/delta",
                "richmond-szekeres/gamma",
            ]
        );
        assert!(reports.iter().all(|r| r.status == CheckStatus::Pass));
    }

    #[test]
    fn two_parameter_family_accepts_and_rejects_correctly() {
        let report = andrews_bressoud_case(4, 1, 300).unwrap();
        assert_eq!(report.status, CheckStatus::Pass);
        assert!(report.claim.contains("4n+2"));
        let report = andrews_bressoud_case(6, 1, 300).unwrap();
        assert_eq!(report.status, CheckStatus::Pass);
        assert!(matches!(andrews_bressoud_case(4, 2, 300), Err(Error::InvalidCase(_))));
        assert!(matches!(andrews_bressoud_case(3, 1, 300), Err(Error::InvalidCase(_))));
        assert!(matches!(andrews_bressoud_case(4, 5, 300), Err(Error::InvalidCase(_))));
    }

    #[test]
    fn two_parameter_grid_has_every_coprime_opposite_parity_pair() {
        let cases = andrews_bressoud_grid_cases();
        assert_eq!(cases.len(), 22);
    }

    #[test]
    fn three_parameter_family_derives_the_documented_class() {
        // (m,k,s) = (2,3,1): r* = 2, r = 2, r' = ceil(2/6) = 1, class 3n+2.
        let report = alladi_gordon_case(2, 3, 1, 300).unwrap();
        assert_eq!(report.status, CheckStatus::Pass);
        assert!(report.claim.contains("3n+2"), "{}", report.claim);
        let report = alladi_gordon_companion(2, 5, 1, 300).unwrap();
        assert_eq!(report.status, CheckStatus::Pass);
        assert!(matches!(alladi_gordon_case(3, 2, 1, 300), Err(Error::InvalidCase(_))));
        assert!(matches!(alladi_gordon_companion(2, 4, 1, 300), Err(Error::InvalidCase(_))));
        assert!(matches!(alladi_gordon_case(2, 3, 3, 300), Err(Error::InvalidCase(_))));
    }

    #[test]
    fn four_parameter_family_derives_the_documented_class() {
        // (k,m,s,t) = (3,4,1,1): r = 5, head = 2, class of -5 mod 3 = 3n+1.
        let report = mclaughlin_case(3, 4, 1, 1, 300).unwrap();
        assert_eq!(report.status, CheckStatus::Pass);
        assert!(report.claim.contains("3n+1"), "{}", report.claim);
        let report = mclaughlin_companion(3, 4, 1, 1, 300).unwrap();
        assert_eq!(report.status, CheckStatus::Pass);
        assert!(matches!(mclaughlin_case(2, 3, 1, 1, 300), Err(Error::InvalidCase(_))));
        // s = 0 makes r - tk = t(1 - k) < 1, the rejected numerator shape.
        assert!(matches!(mclaughlin_case(3, 2, 0, 1, 300), Err(Error::InvalidCase(_))));
        assert!(matches!(mclaughlin_case(3, 2, 3, 1, 300), Err(Error::InvalidCase(_))));
    }

    #[test]
    fn grid_sizes_are_pinned() {
        // 122 main + 88 odd-k companion tuples with k <= 7; 95 + 49 tuples
        // with k, m <= 6 that clear the r - tk >= 1 and coprimality gates.
        assert_eq!(alladi_gordon_grid_cases().len(), 210);
        assert_eq!(mclaughlin_grid_cases().len(), 144);
    }

    #[test]
    fn all_suite_ids_are_unique_and_builders_resolve() {
        let mut ids = std::collections::HashSet::new();
        for name in SUITE_NAMES {
            let cases = suite_cases(name).unwrap();
            assert!(!cases.is_empty(), "{name}");
            if name == "all" {
                for case in &cases {
                    assert!(ids.insert(case.id.clone()), "duplicate id {}", case.id);
                }
            }
        }
        assert_eq!(ids.len(), suite_cases("all").unwrap().len());
    }

    #[test]
    fn unknown_suite_lists_the_available_names() {
        match run_suite("nosuch", 100, false) {
            Err(Error::UnknownSuite { name, available }) => {
                assert_eq!(name, "nosuch");
                assert!(available.contains("hirschhorn"));
                assert!(available.contains("all"));
            }
            other => panic!("expected UnknownSuite, got {other:?}"),
        }
    }

    #[test]
    fn parallel_and_sequential_runs_are_bit_identical() {
        let sequential = run_suite("tang", 200, false).unwrap();
        let parallel = run_suite("tang", 200, true).unwrap();
        assert_eq!(sequential, parallel);
        let jsons: Vec<String> = sequential.iter().map(|r| r.to_json()).collect();
        let again: Vec<String> =
            run_suite("tang", 200, false).unwrap().iter().map(|r| r.to_json()).collect();
        assert_eq!(jsons, again);
    }

    #[test]
    fn reports_round_trip_through_json() {
        for report in run_suite("hirschhorn", 120, false).unwrap() {
            let back = VerificationReport::from_json(&report.to_json()).unwrap();
            assert_eq!(back, report);
        }
    }
}
