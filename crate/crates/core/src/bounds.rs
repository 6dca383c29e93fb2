//! Sound enclosures of geometric intersection numbers under twisting.
//!
//! For a positive multi-twist `T_a = Π T_{a_i}^{m_i}` and curves `x`, `b`,
//!
//! ```text
//! | (T_a^n(x), b) - |n| Σ m_i (x,a_i)(a_i,b) | <= (x, b)
//! ```
//!
//! This is the improved constant `|n|`; the older form with `|n| - 2` is
//! weaker and is not used. Intervals are clamped at zero, and `n = 0` is the
//! identity, so its interval is exact.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::rational::{int, to_exact_string, uint, Rational};
use crate::system::CurveSystem;
use crate::word::{Letter, TwistWord};

/// Closed interval `[lo, hi]` with `0 <= lo <= hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalBound {
    lo: Rational,
    hi: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundsError {
    #[error("intersection data must be nonnegative")]
    Negative,
    #[error("twist powers must be >= 1")]
    NonPositivePower,
    #[error("interval bounds out of order or negative")]
    BadInterval,
    #[error("seed has {got} entries but the system has {expected} curves")]
    SeedLength { expected: usize, got: usize },
    #[error("word uses family {0}, which the system does not have")]
    UnknownFamily(usize),
    #[error("family index {0} out of range")]
    FamilyIndex(usize),
    #[error("lambda must be positive")]
    NonPositiveLambda,
    #[error("the curve has zero norm, so it lies outside the ping-pong space")]
    ZeroNorm,
    #[error("parameter error: {0}")]
    Parameters(#[from] ParamError),
}

impl IntervalBound {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self, BoundsError> {
        if lo.is_negative() || lo > hi {
            return Err(BoundsError::BadInterval);
        }
        Ok(Self { lo, hi })
    }

    pub fn exact_value(v: Rational) -> Result<Self, BoundsError> {
        Self::new(v.clone(), v)
    }

    pub fn from_u64(v: u64) -> Self {
        Self {
            lo: uint(v),
            hi: uint(v),
        }
    }

    fn clamped(lo: Rational, hi: Rational) -> Self {
        let zero = Rational::zero();
        let lo = if lo < zero { zero } else { lo };
        Self { lo, hi }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// True when `self ⊆ other`.
    pub fn within(&self, other: &IntervalBound) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    fn add(&self, o: &IntervalBound) -> IntervalBound {
        IntervalBound {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }
}

impl fmt::Display for IntervalBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact() {
            write!(f, "{}", to_exact_string(&self.lo))
        } else {
            write!(
                f,
                "[{}, {}]",
                to_exact_string(&self.lo),
                to_exact_string(&self.hi)
            )
        }
    }
}

/// Bound on `(T_a^{±n}(x), b)` for a single twist.
pub fn twist_bound(n: u64, xa: i64, xb: i64, ab: i64) -> Result<IntervalBound, BoundsError> {
    if xa < 0 || xb < 0 || ab < 0 {
        return Err(BoundsError::Negative);
    }
    multitwist_bound(n as i64, &[(1, xa, ab)], xb)
}

/// Bound on `(T_a^n(x), b)` for `T_a = Π T_{a_i}^{m_i}`; `terms` lists
/// `(m_i, (x,a_i), (a_i,b))`.
pub fn multitwist_bound(
    n: i64,
    terms: &[(i64, i64, i64)],
    xb: i64,
) -> Result<IntervalBound, BoundsError> {
    if xb < 0 {
        return Err(BoundsError::Negative);
    }
    let mut s = Rational::zero();
    for &(m, xa, ab) in terms {
        if m < 1 {
            return Err(BoundsError::NonPositivePower);
        }
        if xa < 0 || ab < 0 {
            return Err(BoundsError::Negative);
        }
        s += int(m) * int(xa) * int(ab);
    }
    let xb = IntervalBound::from_u64(xb as u64);
    let s = IntervalBound {
        lo: s.clone(),
        hi: s,
    };
    Ok(multitwist_interval(n.unsigned_abs(), &s, &xb))
}

/// Interval form: `s` encloses `Σ m_i (x,a_i)(a_i,b)` and `xb` encloses `(x,b)`.
fn multitwist_interval(n: u64, s: &IntervalBound, xb: &IntervalBound) -> IntervalBound {
    if n == 0 {
        return xb.clone();
    }
    let n = uint(n);
    IntervalBound::clamped(&n * &s.lo - &xb.hi, &n * &s.hi + &xb.hi)
}

/// Enclosures of `(x, c)` for every curve `c` of a system, indexed globally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairState {
    pub bounds: Vec<IntervalBound>,
}

impl PairState {
    pub fn exact(values: &[u64]) -> Self {
        Self {
            bounds: values.iter().map(|&v| IntervalBound::from_u64(v)).collect(),
        }
    }

    /// Enclosure of `(x, F) = Σ_{c ∈ F} (x, c)`.
    pub fn family_sum(&self, sys: &CurveSystem, f: usize) -> IntervalBound {
        sys.family_curves(f)
            .map(|c| self.bounds[c].clone())
            .fold(IntervalBound::from_u64(0), |acc, b| acc.add(&b))
    }

    /// Enclosure of `‖x‖ = Σ_c (x, c)` over the given families.
    pub fn norm(&self, sys: &CurveSystem, families: &[usize]) -> IntervalBound {
        families
            .iter()
            .map(|&f| self.family_sum(sys, f))
            .fold(IntervalBound::from_u64(0), |acc, b| acc.add(&b))
    }

    pub fn within(&self, other: &PairState) -> bool {
        self.bounds.len() == other.bounds.len()
            && self
                .bounds
                .iter()
                .zip(&other.bounds)
                .all(|(a, b)| a.within(b))
    }
}

/// Applies one syllable `T_F^e` to the enclosed curve.
pub fn apply_letter(
    sys: &CurveSystem,
    state: &PairState,
    letter: Letter,
) -> Result<PairState, BoundsError> {
    if letter.family >= sys.num_families() {
        return Err(BoundsError::UnknownFamily(letter.family));
    }
    let twisted = sys.family_curves(letter.family);
    let n = letter.exp.unsigned_abs();
    let mut out = Vec::with_capacity(state.bounds.len());
    for c in 0..sys.num_curves() {
        if twisted.contains(&c) {
            // a twist fixes every curve disjoint from its family, its own
            // curves included
            out.push(state.bounds[c].clone());
            continue;
        }
        let mut s = IntervalBound::from_u64(0);
        for ai in twisted.clone() {
            let k = uint(sys.power(ai) * sys.geom(ai, c));
            s = s.add(&IntervalBound {
                lo: &k * &state.bounds[ai].lo,
                hi: &k * &state.bounds[ai].hi,
            });
        }
        if s.hi.is_zero() {
            // x misses every twisted curve, or c does: either way
            // (T(x), c) = (x, c)
            out.push(state.bounds[c].clone());
            continue;
        }
        out.push(multitwist_interval(n, &s, &state.bounds[c]));
    }
    Ok(PairState { bounds: out })
}

/// Propagates `seed` through `w`.
///
/// Syllables are applied in composition order, rightmost first, so the
/// result holds the seed followed by the state after each applied syllable:
/// entry `k` encloses the image of `x` under the last `k` syllables of `w`.
/// The final entry is the image under all of `w`.
pub fn propagate(
    sys: &CurveSystem,
    w: &TwistWord,
    seed: &PairState,
) -> Result<Vec<PairState>, BoundsError> {
    if seed.bounds.len() != sys.num_curves() {
        return Err(BoundsError::SeedLength {
            expected: sys.num_curves(),
            got: seed.bounds.len(),
        });
    }
    let mut states = Vec::with_capacity(w.len() + 1);
    states.push(seed.clone());
    for l in w.letters().iter().rev() {
        let next = apply_letter(sys, states.last().expect("nonempty"), *l)?;
        states.push(next);
    }
    Ok(states)
}

/// Membership in `N_{a,λ} = {(x,a) < λ(x,b)}`, `N_{b,λ⁻¹} = {λ(x,b) < (x,a)}`
/// or the equality locus `Y_λ = {(x,a) = λ(x,b)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoFamilyMembership {
    InNa,
    InNb,
    InY,
    Undetermined,
}

/// Decides two-family membership. `Y` is only reported for exact data;
/// anything straddling a boundary is `Undetermined`.
pub fn nset_membership_two(
    sys: &CurveSystem,
    state: &PairState,
    a: usize,
    b: usize,
    lambda: &Rational,
) -> Result<TwoFamilyMembership, BoundsError> {
    if a >= sys.num_families() {
        return Err(BoundsError::FamilyIndex(a));
    }
    if b >= sys.num_families() {
        return Err(BoundsError::FamilyIndex(b));
    }
    if !lambda.is_positive() {
        return Err(BoundsError::NonPositiveLambda);
    }
    if state.bounds.len() != sys.num_curves() {
        return Err(BoundsError::SeedLength {
            expected: sys.num_curves(),
            got: state.bounds.len(),
        });
    }
    if state.norm(sys, &[a, b]).hi.is_zero() {
        return Err(BoundsError::ZeroNorm);
    }
    let xa = state.family_sum(sys, a);
    let xb = state.family_sum(sys, b);
    let lb_lo = lambda * &xb.lo;
    let lb_hi = lambda * &xb.hi;
    Ok(if xa.hi < lb_lo {
        TwoFamilyMembership::InNa
    } else if lb_hi < xa.lo {
        TwoFamilyMembership::InNb
    } else if xa.exact() && xb.exact() && xa.lo == lb_lo {
        TwoFamilyMembership::InY
    } else {
        TwoFamilyMembership::Undetermined
    })
}

/// Parameters `λ_{ijk} > 1` and `μ_{ij} > 0` with `μ_{ji} = μ_{ij}⁻¹`.
/// Unset entries default to `λ = 2`, `μ = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NuParams {
    lambda: BTreeMap<(usize, usize, usize), Rational>,
    mu: BTreeMap<(usize, usize), Rational>,
    default_lambda: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParamError {
    #[error("lambda_{{{0},{1},{2}}} = {3} must exceed 1")]
    LambdaTooSmall(usize, usize, usize, alloc::string::String),
    #[error("mu_{{{0},{1}}} = {2} must be positive")]
    MuNotPositive(usize, usize, alloc::string::String),
    #[error("mu_{{{1},{0}}} must equal 1/mu_{{{0},{1}}}")]
    MuNotReciprocal(usize, usize),
    #[error("indices ({0},{1},{2}) must be distinct")]
    IndexCollision(usize, usize, usize),
}

impl NuParams {
    /// `μ ≡ 1`, `λ ≡ 2`.
    pub fn standard() -> Self {
        Self::default()
    }

    /// Uniform `λ` for every unset triple.
    pub fn with_uniform_lambda(mut self, l: Rational) -> Self {
        self.default_lambda = Some(l);
        self
    }

    pub fn with_lambda(mut self, i: usize, j: usize, k: usize, l: Rational) -> Self {
        self.lambda.insert((i, j, k), l);
        self
    }

    /// Sets `μ_{ij}` and the reciprocal `μ_{ji}`.
    pub fn with_mu(mut self, i: usize, j: usize, m: Rational) -> Self {
        if !m.is_zero() {
            self.mu.insert((j, i), m.recip());
        }
        self.mu.insert((i, j), m);
        self
    }

    /// Sets `μ_{ij}` alone; [`validate`](Self::validate) checks reciprocity.
    pub fn with_mu_raw(mut self, i: usize, j: usize, m: Rational) -> Self {
        self.mu.insert((i, j), m);
        self
    }

    pub fn lambda(&self, i: usize, j: usize, k: usize) -> Rational {
        self.lambda
            .get(&(i, j, k))
            .cloned()
            .or_else(|| self.default_lambda.clone())
            .unwrap_or_else(|| int(2))
    }

    pub fn mu(&self, i: usize, j: usize) -> Rational {
        match (self.mu.get(&(i, j)), self.mu.get(&(j, i))) {
            (Some(m), _) => m.clone(),
            (None, Some(m)) if !m.is_zero() => m.recip(),
            _ => int(1),
        }
    }

    pub fn is_standard(&self) -> bool {
        let one = int(1);
        let two = int(2);
        self.lambda.values().all(|l| *l == two)
            && self.default_lambda.as_ref().is_none_or(|l| *l == two)
            && self.mu.values().all(|m| *m == one)
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        let one = int(1);
        if let Some(l) = &self.default_lambda {
            if *l <= one {
                return Err(ParamError::LambdaTooSmall(0, 0, 0, to_exact_string(l)));
            }
        }
        for (&(i, j, k), l) in &self.lambda {
            if i == j || j == k || i == k {
                return Err(ParamError::IndexCollision(i, j, k));
            }
            if *l <= one {
                return Err(ParamError::LambdaTooSmall(i, j, k, to_exact_string(l)));
            }
        }
        for (&(i, j), m) in &self.mu {
            if !m.is_positive() {
                return Err(ParamError::MuNotPositive(i, j, to_exact_string(m)));
            }
            if let Some(r) = self.mu.get(&(j, i)) {
                if m * r != one {
                    return Err(ParamError::MuNotReciprocal(i, j));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NFamilyMembership {
    InNai,
    NotInNai,
    Undetermined,
}

/// Membership in
/// `N_{a_i} = {x : (x,a_i) < μ_ij (x,a_j), (x,a_k)(a_i,a_j) < λ_ijk (a_i,a_k)(x,a_j) ∀ j ≠ k ≠ i}`
/// for a system of single-curve families. The ratio condition is used in
/// cross-multiplied form.
pub fn nset_membership_n(
    sys: &CurveSystem,
    state: &PairState,
    i: usize,
    params: &NuParams,
) -> Result<NFamilyMembership, BoundsError> {
    params.validate()?;
    let n = sys.num_families();
    if i >= n {
        return Err(BoundsError::FamilyIndex(i));
    }
    if state.bounds.len() != sys.num_curves() {
        return Err(BoundsError::SeedLength {
            expected: sys.num_curves(),
            got: state.bounds.len(),
        });
    }
    // curve of family f
    let c = |f: usize| sys.family_curves(f).start;
    let x = |f: usize| &state.bounds[c(f)];
    let mut undetermined = false;
    // lhs < rhs certainly, certainly not, or unclear
    let mut check = |lhs: (Rational, Rational), rhs: (Rational, Rational)| -> bool {
        if lhs.1 < rhs.0 {
            true
        } else if lhs.0 >= rhs.1 {
            false
        } else {
            undetermined = true;
            true
        }
    };
    for j in (0..n).filter(|&j| j != i) {
        let mu = params.mu(i, j);
        let ok = check(
            (x(i).lo.clone(), x(i).hi.clone()),
            (&mu * &x(j).lo, &mu * &x(j).hi),
        );
        if !ok {
            return Ok(NFamilyMembership::NotInNai);
        }
        for k in (0..n).filter(|&k| k != i && k != j) {
            let iij = uint(sys.geom(c(i), c(j)));
            let iik = uint(sys.geom(c(i), c(k)));
            let coef = params.lambda(i, j, k) * iik;
            let ok = check(
                (&iij * &x(k).lo, &iij * &x(k).hi),
                (&coef * &x(j).lo, &coef * &x(j).hi),
            );
            if !ok {
                return Ok(NFamilyMembership::NotInNai);
            }
        }
    }
    Ok(if undetermined {
        NFamilyMembership::Undetermined
    } else {
        NFamilyMembership::InNai
    })
}
