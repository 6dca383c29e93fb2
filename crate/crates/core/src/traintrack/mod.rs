//! Words acting on a measured train-track chart.
//!
//! A chart assigns each generator a nonnegative integer matrix describing its
//! action on branch weights. A word acts by the product of those matrices,
//! and the dominant eigenpair is computed exactly in a real quadratic field.
//! A certificate needs a primitive matrix whose Perron root is irrational: a
//! rational eigenvector would come from a closed carried leaf, and a
//! puncture-to-puncture leaf would force a rational relation among the
//! weights.

pub mod matrix;
pub mod poly;
pub mod quadratic;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use matrix::{IntMatrix, MatrixError};
pub use poly::{char_poly, factor, Factor, FactorKind, Factorization, IntPoly};
pub use quadratic::{QuadraticError, QuadraticNumber};

use crate::rational::Rational;
use crate::word::TwistWord;

/// Attached to every chart-level certificate.
pub const CHART_CAVEAT: &str = "chart-level: the transverse measure has irrational ratios, \
so the carried lamination has no closed leaf and no leaf joining two punctures";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TrainTrackError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Quadratic(#[from] QuadraticError),
    #[error("branch_count must be positive")]
    NoBranches,
    #[error("generator {name}: size {got}, expected {expected}")]
    GeneratorSize {
        name: String,
        got: usize,
        expected: usize,
    },
    #[error("generator {name}: negative entry at ({row},{col})")]
    NegativeEntry {
        name: String,
        row: usize,
        col: usize,
    },
    #[error("generator {name} claims full carrying but det = {det}")]
    DetNotUnit { name: String, det: BigInt },
    #[error("duplicate generator {0}")]
    DuplicateGenerator(String),
    #[error("word uses generator index {0}, chart has {1}")]
    UnknownGenerator(usize, usize),
    #[error("generator {0} is not invertible over the integers")]
    NotInvertible(String),
    #[error("matrix has a negative entry at ({0},{1})")]
    Negative(usize, usize),
    #[error("vector has length {got}, expected {expected}")]
    VectorLength { got: usize, expected: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartGenerator {
    pub name: String,
    pub matrix: IntMatrix,
    /// The track is carried onto itself, so the matrix must be unimodular.
    pub full_carrying: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    branch_count: usize,
    generators: Vec<ChartGenerator>,
    provenance: String,
}

impl Chart {
    pub fn new(
        branch_count: usize,
        generators: Vec<ChartGenerator>,
        provenance: impl Into<String>,
    ) -> Result<Self, TrainTrackError> {
        if branch_count == 0 {
            return Err(TrainTrackError::NoBranches);
        }
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(TrainTrackError::DuplicateGenerator(g.name.clone()));
            }
            if g.matrix.size() != branch_count {
                return Err(TrainTrackError::GeneratorSize {
                    name: g.name.clone(),
                    got: g.matrix.size(),
                    expected: branch_count,
                });
            }
            if let Some((row, col)) = g.matrix.first_negative() {
                return Err(TrainTrackError::NegativeEntry {
                    name: g.name.clone(),
                    row,
                    col,
                });
            }
            if g.full_carrying {
                let det = g.matrix.det();
                if det.abs() != BigInt::one() {
                    return Err(TrainTrackError::DetNotUnit {
                        name: g.name.clone(),
                        det,
                    });
                }
            }
        }
        Ok(Chart {
            branch_count,
            generators,
            provenance: provenance.into(),
        })
    }

    pub fn branch_count(&self) -> usize {
        self.branch_count
    }

    pub fn generators(&self) -> &[ChartGenerator] {
        &self.generators
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn names(&self) -> Vec<&str> {
        self.generators.iter().map(|g| g.name.as_str()).collect()
    }
}

/// Matrix of the mapping class `w`: letter `i` of the word refers to
/// generator `i` of the chart, and matrices multiply in written order, so
/// the rightmost letter acts first on a column of weights. Negative
/// exponents use the integer inverse.
pub fn compose(chart: &Chart, w: &TwistWord) -> Result<IntMatrix, TrainTrackError> {
    let mut acc = IntMatrix::identity(chart.branch_count);
    for l in w.letters() {
        let g = chart
            .generators
            .get(l.family)
            .ok_or(TrainTrackError::UnknownGenerator(
                l.family,
                chart.generators.len(),
            ))?;
        let base = if l.exp < 0 {
            g.matrix
                .inverse_unimodular()
                .ok_or_else(|| TrainTrackError::NotInvertible(g.name.clone()))?
        } else {
            g.matrix.clone()
        };
        let step = base.pow(l.exp.unsigned_abs() as u32);
        acc = acc.checked_mul(&step)?;
    }
    Ok(acc)
}

fn qmat_vec(m: &IntMatrix, v: &[QuadraticNumber]) -> Result<Vec<QuadraticNumber>, QuadraticError> {
    let n = m.size();
    (0..n)
        .map(|i| {
            (0..n).try_fold(QuadraticNumber::int(0), |acc, j| {
                QuadraticNumber::from_int_big(m.get(i, j).clone())
                    .checked_mul(&v[j])
                    .and_then(|t| acc.checked_add(&t))
            })
        })
        .collect()
}

fn check_field(nums: &[&QuadraticNumber]) -> Result<(), QuadraticError> {
    nums.iter()
        .try_fold(QuadraticNumber::int(0), |acc, x| {
            acc.common_d(x)
                .map(|d| QuadraticNumber::new(Rational::zero(), Rational::one(), d).expect("d > 0"))
        })
        .map(|_| ())
}

/// `M v = λ v` with every entry of `v` strictly positive.
pub fn verify_eigenpair(
    m: &IntMatrix,
    lambda: &QuadraticNumber,
    v: &[QuadraticNumber],
) -> Result<bool, TrainTrackError> {
    if v.len() != m.size() {
        return Err(TrainTrackError::VectorLength {
            got: v.len(),
            expected: m.size(),
        });
    }
    let mut all: Vec<&QuadraticNumber> = v.iter().collect();
    all.push(lambda);
    check_field(&all)?;
    if !v.iter().all(QuadraticNumber::is_positive) {
        return Ok(false);
    }
    let mv = qmat_vec(m, v)?;
    for (x, y) in mv.iter().zip(v) {
        if *x != lambda.checked_mul(y)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Null space basis of `M - λI` by Gauss–Jordan over `Q(√d)`.
fn eigenspace(m: &IntMatrix, lambda: &QuadraticNumber) -> Vec<Vec<QuadraticNumber>> {
    let n = m.size();
    let mut a: Vec<Vec<QuadraticNumber>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let e = QuadraticNumber::from_int_big(m.get(i, j).clone());
                    if i == j {
                        e.checked_sub(lambda).expect("one field")
                    } else {
                        e
                    }
                })
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = QuadraticNumber::int(1)
            .checked_div(&a[row][col])
            .expect("nonzero");
        for x in a[row].iter_mut() {
            *x = x.checked_mul(&inv).expect("one field");
        }
        for r in 0..n {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for k in 0..n {
                    let t = f.checked_mul(&a[row][k]).expect("one field");
                    a[r][k] = a[r][k].checked_sub(&t).expect("one field");
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = alloc::vec![QuadraticNumber::int(0); n];
            v[free] = QuadraticNumber::int(1);
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = a[r][free].neg();
            }
            v
        })
        .collect()
}

/// Scales by a positive rational so all coordinates are integral in `a` and
/// `b` with no common factor.
fn normalize(v: &[QuadraticNumber]) -> Vec<QuadraticNumber> {
    let mut den = BigInt::one();
    for x in v {
        den = den.lcm(x.a().denom()).lcm(x.b().denom());
    }
    let scaled: Vec<QuadraticNumber> = v
        .iter()
        .map(|x| x.scale(&Rational::from_integer(den.clone())))
        .collect();
    let mut g = BigInt::zero();
    for x in &scaled {
        g = g.gcd(&x.a().to_integer()).gcd(&x.b().to_integer());
    }
    if g.is_zero() {
        return scaled;
    }
    let inv = Rational::new(BigInt::one(), g);
    scaled.iter().map(|x| x.scale(&inv)).collect()
}

fn positive_in_span(basis: &[Vec<QuadraticNumber>]) -> Option<Vec<QuadraticNumber>> {
    let n = basis.first()?.len();
    let sum: Vec<QuadraticNumber> = (0..n)
        .map(|i| {
            basis
                .iter()
                .try_fold(QuadraticNumber::int(0), |acc, b| acc.checked_add(&b[i]))
                .expect("one field")
        })
        .collect();
    basis
        .iter()
        .chain(core::iter::once(&sum))
        .flat_map(|v| [v.clone(), v.iter().map(QuadraticNumber::neg).collect()])
        .find(|v: &Vec<QuadraticNumber>| v.iter().all(QuadraticNumber::is_positive))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaCertificate {
    pub lambda: QuadraticNumber,
    pub eigenvector: Vec<QuadraticNumber>,
    /// Smallest `k` with `M^k > 0`.
    pub primitivity_power: u32,
    pub char_poly: Factorization,
    pub caveat: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PaFailure {
    NotPrimitive {
        checked_up_to: u32,
    },
    /// No rational or real quadratic eigenvalue has a positive eigenvector;
    /// the Perron root lies in `residual`.
    OutOfScope {
        residual: Option<IntPoly>,
    },
    RationalDominant(QuadraticNumber),
    DominantAtMostOne(QuadraticNumber),
}

impl core::fmt::Display for PaFailure {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            PaFailure::NotPrimitive { checked_up_to } => {
                write!(
                    f,
                    "not primitive: no positive power M^k with k <= {checked_up_to}"
                )
            }
            PaFailure::OutOfScope { residual: Some(p) } => write!(
                f,
                "dominant eigenvalue outside quadratic fields: factor {p}"
            ),
            PaFailure::OutOfScope { residual: None } => {
                f.write_str("no positive eigenvector found")
            }
            PaFailure::RationalDominant(l) => write!(f, "dominant eigenvalue {l} is rational"),
            PaFailure::DominantAtMostOne(l) => write!(f, "dominant eigenvalue {l} is <= 1"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PaOutcome {
    CertifiedPAOnChart(PaCertificate),
    NotCertified {
        reason: PaFailure,
        char_poly: Factorization,
    },
}

impl PaOutcome {
    pub fn is_certified(&self) -> bool {
        matches!(self, PaOutcome::CertifiedPAOnChart(_))
    }

    pub fn char_poly(&self) -> &Factorization {
        match self {
            PaOutcome::CertifiedPAOnChart(c) => &c.char_poly,
            PaOutcome::NotCertified { char_poly, .. } => char_poly,
        }
    }
}

/// Pseudo-Anosov-on-chart analysis of a nonnegative integer matrix.
///
/// For a nonnegative matrix, an eigenvalue with a strictly positive
/// eigenvector is the spectral radius, so trying each real root from the
/// rational/quadratic factors in turn finds the Perron pair without ordering
/// roots across different fields.
pub fn pa_certificate(m: &IntMatrix) -> Result<PaOutcome, TrainTrackError> {
    if let Some((r, c)) = m.first_negative() {
        return Err(TrainTrackError::Negative(r, c));
    }
    let fac = factor(&char_poly(m));
    let fail = |reason| {
        Ok(PaOutcome::NotCertified {
            reason,
            char_poly: fac.clone(),
        })
    };
    let mut perron = None;
    for lambda in fac.real_roots() {
        if lambda.signum() == core::cmp::Ordering::Less {
            continue;
        }
        if let Some(v) = positive_in_span(&eigenspace(m, &lambda)) {
            perron = Some((lambda, normalize(&v)));
            break;
        }
    }
    let Some((lambda, v)) = perron else {
        return fail(PaFailure::OutOfScope {
            residual: fac.residual().cloned(),
        });
    };
    if lambda.is_rational() {
        return fail(PaFailure::RationalDominant(lambda));
    }
    let n = m.size() as u32;
    let Some(k) = m.primitivity_exponent(n * n) else {
        return fail(PaFailure::NotPrimitive {
            checked_up_to: n * n,
        });
    };
    if !lambda.checked_sub(&QuadraticNumber::int(1))?.is_positive() {
        return fail(PaFailure::DominantAtMostOne(lambda));
    }
    debug_assert!(verify_eigenpair(m, &lambda, &v) == Ok(true));
    Ok(PaOutcome::CertifiedPAOnChart(PaCertificate {
        lambda,
        eigenvector: v,
        primitivity_power: k,
        char_poly: fac,
        caveat: CHART_CAVEAT,
    }))
}

/// Human-readable vector, e.g. `(2+√10, 2+√10, 2)`.
pub fn vector_string(v: &[QuadraticNumber]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x}")).collect();
    format!("({})", parts.join(", "))
}
