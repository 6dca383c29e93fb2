//! Freeness and relative pseudo-Anosov certificates from ping-pong.
//!
//! Every check here is an exact inequality between integers or rationals
//! built from the intersection data. The theorems behind them are sufficient
//! conditions; outside the complete single-curve tables the honest answer is
//! often `Unknown`.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::bounds::{NuParams, ParamError};
use crate::certificate::{Basis, Certificate, Regime, Verdict};
use crate::classify::{classify_two_group, ClassifyError};
use crate::rational::{ceil, int, uint, Rational};
use crate::system::CurveSystem;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PingPongError {
    #[error("expected exactly two families, found {0}")]
    TwoFamilies(usize),
    #[error("need at least three families, found {0}")]
    TooFewFamilies(usize),
    #[error("(a,b) = 0: the two multi-twists commute")]
    Disjoint,
    #[error("each family must be a single curve")]
    NotSingleCurves,
    #[error("curves {0} and {1} are disjoint; every pair must intersect")]
    DisjointPair(usize, usize),
    #[error("expected {expected} powers, got {got}")]
    PowerCount { expected: usize, got: usize },
    #[error("powers must be >= 1")]
    ZeroPower,
    #[error("indices must be distinct family indices")]
    BadIndex,
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

/// True iff the intersection graph on all curves is connected.
pub fn support_connected(sys: &CurveSystem) -> bool {
    let all: Vec<usize> = (0..sys.num_curves()).collect();
    sys.components(&all).len() <= 1
}

/// `m_i (a_i, b)` for every curve of family `a`, against family `b`.
fn weighted(sys: &CurveSystem, a: usize, b: usize) -> Vec<u64> {
    sys.family_curves(a)
        .map(|c| sys.power(c) * sys.curve_family_intersection(c, b))
        .collect()
}

struct TwoData {
    ab: u64,
    wa: Vec<u64>,
    wb: Vec<u64>,
    single: Option<(u64, u64)>,
}

fn two_data(sys: &CurveSystem) -> Result<TwoData, PingPongError> {
    if sys.num_families() != 2 {
        return Err(PingPongError::TwoFamilies(sys.num_families()));
    }
    let ab = sys.family_intersection(0, 1);
    if ab == 0 {
        return Err(PingPongError::Disjoint);
    }
    let single = sys
        .all_single_curves()
        .then(|| (sys.power(0), sys.power(1)));
    Ok(TwoData {
        ab,
        wa: weighted(sys, 0, 1),
        wb: weighted(sys, 1, 0),
        single,
    })
}

fn min(v: &[u64]) -> u64 {
    v.iter().copied().min().unwrap_or(0)
}

fn two_params(cert: Certificate, d: &TwoData) -> Certificate {
    cert.with_param("ab", uint(d.ab))
        .with_param("min_m_i(a_i,b)", uint(min(&d.wa)))
        .with_param("min_n_j(a,b_j)", uint(min(&d.wb)))
}

/// Certifies `⟨T_A, T_B⟩ ≅ F_2` for two positive multi-twists.
pub fn certify_free_two(sys: &CurveSystem) -> Result<Certificate, PingPongError> {
    let d = two_data(sys)?;
    if d.wa.iter().all(|&v| v >= 2) && d.wb.iter().all(|&v| v >= 2) {
        let c = Certificate::certified(Verdict::CertifiedFree, Basis::Thm3_2)
            .with_param("lambda", int(1));
        return Ok(two_params(c, &d));
    }
    let connected = support_connected(sys);
    let exception = |x: &[u64], y: &[u64]| x.contains(&1) && y.iter().any(|&v| v <= 3);
    if connected && !exception(&d.wa, &d.wb) && !exception(&d.wb, &d.wa) {
        let c = Certificate::certified(Verdict::CertifiedFree, Basis::Thm3_4)
            .with_param("lambda", int(2));
        return Ok(two_params(c, &d));
    }
    if let Some((m, n)) = d.single {
        let t = classify_two_group(d.ab, sys.alg_abs(0, 1), m, n)?;
        let cert = if t.free {
            Certificate::certified(Verdict::CertifiedFree, t.free_basis)
        } else {
            let mut c = Certificate::certified(Verdict::CertifiedNotFree, t.free_basis);
            if let Some(w) = t.free_witness {
                c = c.with_witness(w);
            }
            c
        };
        return Ok(two_params(cert, &d));
    }
    let mut c = Certificate::unknown();
    if !connected {
        c = c.with_note(
            "support is disconnected: analyse the restriction to each component separately",
        );
    }
    Ok(two_params(c, &d))
}

/// Which of the four sufficient regimes holds for the given minima.
fn relpa_regime(ma: u64, nb: u64) -> Option<Regime> {
    if ma >= 2 && nb >= 3 {
        Some(Regime::I)
    } else if ma >= 3 && nb >= 2 {
        Some(Regime::II)
    } else if ma >= 1 && nb >= 5 {
        Some(Regime::III)
    } else if ma >= 5 && nb >= 1 {
        Some(Regime::IV)
    } else {
        None
    }
}

/// Certifies that `⟨T_A, T_B⟩` is pure and relatively pseudo-Anosov.
pub fn certify_relpa_two(sys: &CurveSystem) -> Result<Certificate, PingPongError> {
    let d = two_data(sys)?;
    if let Some(r) = relpa_regime(min(&d.wa), min(&d.wb)) {
        let c = Certificate::certified(Verdict::CertifiedRelPA, Basis::Thm3_7(r));
        return Ok(two_params(c, &d));
    }
    if let Some((m, n)) = d.single {
        let alg = sys.alg_abs(0, 1);
        let t = classify_two_group(d.ab, alg, m, n)?;
        let cert = if t.relpa {
            Certificate::certified(Verdict::CertifiedRelPA, t.relpa_basis)
        } else {
            let c = Certificate::certified(Verdict::CertifiedNotRelPA, t.relpa_basis);
            match t.relpa_witness {
                Some(w) => c.with_witness(w),
                None => c.with_note(
                    "alg_abs missing: witness is lantern if alg_abs = 0, tbta_squared if 2",
                ),
            }
        };
        return Ok(two_params(cert, &d));
    }
    Ok(two_params(Certificate::unknown(), &d))
}

/// One evaluated expression; `k`/`l` are the auxiliary indices it ranges
/// over (if any).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NuTerm {
    pub k: Option<usize>,
    pub l: Option<usize>,
    pub value: Rational,
}

/// All expressions bounding `ν_ij`, their maximum and `ν = ⌈max⌉`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NuBoundEntry {
    pub i: usize,
    pub j: usize,
    pub families: [Vec<NuTerm>; 5],
    pub max: Rational,
    pub nu: BigInt,
}

impl NuBoundEntry {
    pub fn values(&self, family: usize) -> Vec<Rational> {
        self.families[family]
            .iter()
            .map(|t| t.value.clone())
            .collect()
    }
}

fn check_n_system(sys: &CurveSystem) -> Result<(), PingPongError> {
    let n = sys.num_families();
    if n < 3 {
        return Err(PingPongError::TooFewFamilies(n));
    }
    if !sys.all_single_curves() {
        return Err(PingPongError::NotSingleCurves);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if sys.geom(i, j) == 0 {
                return Err(PingPongError::DisjointPair(i, j));
            }
        }
    }
    Ok(())
}

/// Evaluates the five expression families bounding the exponent `ν` for
/// which `T_{a_i}^{±ν}(N_{a_j}) ⊂ N_{a_i}`:
///
/// ```text
/// 1.  2 / (μ_ij I_ij)
/// 2.  1/(μ_ik I_ik) + λ_jik I_jk / (I_ij I_ik)                        k ∉ {i,j}
/// 3.  λ_jil/(λ_ikl - 1) · I_jl/(I_il I_ji)
///       + λ_ikl λ_jik/(λ_ikl - 1) · I_jk/(I_ji I_ik)                  k ≠ l, both ∉ {i,j}
/// 4.  1/((λ_ikj - 1) μ_ij I_ij) + λ_ikj λ_jik/(λ_ikj - 1) · I_jk/(I_ji I_ik)   k ∉ {i,j}
/// 5.  λ_ijl/((λ_ijl - 1) μ_ij I_ij) + λ_jil/(λ_ijl - 1) · I_jl/(I_ji I_il)     l ∉ {i,j}
/// ```
///
/// with `I_xy = (a_x, a_y)`. Family 3 is empty when there are only three
/// curves.
pub fn nu_bound(
    sys: &CurveSystem,
    i: usize,
    j: usize,
    params: &NuParams,
) -> Result<NuBoundEntry, PingPongError> {
    check_n_system(sys)?;
    params.validate()?;
    let n = sys.num_families();
    if i == j || i >= n || j >= n {
        return Err(PingPongError::BadIndex);
    }
    let one = int(1);
    let two = int(2);
    let ii = |x: usize, y: usize| uint(sys.geom(x, y));
    let lam = |x, y, z| params.lambda(x, y, z);
    let mu = |x, y| params.mu(x, y);
    let others: Vec<usize> = (0..n).filter(|&k| k != i && k != j).collect();

    let mut fams: [Vec<NuTerm>; 5] = Default::default();
    fams[0].push(NuTerm {
        k: None,
        l: None,
        value: &two / (mu(i, j) * ii(i, j)),
    });
    for &k in &others {
        fams[1].push(NuTerm {
            k: Some(k),
            l: None,
            value: &one / (mu(i, k) * ii(i, k)) + lam(j, i, k) * ii(j, k) / (ii(i, j) * ii(i, k)),
        });
        let l_ikj = lam(i, k, j);
        fams[3].push(NuTerm {
            k: Some(k),
            l: None,
            value: &one / ((&l_ikj - &one) * mu(i, j) * ii(i, j))
                + &l_ikj * lam(j, i, k) / (&l_ikj - &one) * ii(j, k) / (ii(j, i) * ii(i, k)),
        });
        let l_ijk = lam(i, j, k);
        fams[4].push(NuTerm {
            k: None,
            l: Some(k),
            value: &l_ijk / ((&l_ijk - &one) * mu(i, j) * ii(i, j))
                + lam(j, i, k) / (&l_ijk - &one) * ii(j, k) / (ii(j, i) * ii(i, k)),
        });
        for &l in &others {
            if l == k {
                continue;
            }
            let l_ikl = lam(i, k, l);
            fams[2].push(NuTerm {
                k: Some(k),
                l: Some(l),
                value: lam(j, i, l) / (&l_ikl - &one) * ii(j, l) / (ii(i, l) * ii(j, i))
                    + &l_ikl * lam(j, i, k) / (&l_ikl - &one) * ii(j, k) / (ii(j, i) * ii(i, k)),
            });
        }
    }
    let max = fams
        .iter()
        .flatten()
        .map(|t| t.value.clone())
        .max()
        .expect("family 1 is never empty");
    let nu = ceil(&max);
    Ok(NuBoundEntry {
        i,
        j,
        families: fams,
        max,
        nu,
    })
}

/// `nu_bound` for every ordered pair, in lexicographic order.
pub fn nu_report(sys: &CurveSystem, params: &NuParams) -> Result<Vec<NuBoundEntry>, PingPongError> {
    check_n_system(sys)?;
    let n = sys.num_families();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(nu_bound(sys, i, j, params)?);
            }
        }
    }
    Ok(out)
}

/// Certifies `⟨T_{a_1}^{p_1}, …, T_{a_n}^{p_n}⟩ ≅ F_n` for `n >= 3` single
/// curves that pairwise intersect.
///
/// The powers are `powers` if given, otherwise the system's own powers. With
/// all powers 1 the ratio condition `6 (a_i,a_k) <= (a_i,a_j)(a_j,a_k)` over
/// all ordered triples is checked. Otherwise each `p_i` must reach
/// `max_j ν_ij` computed with `μ ≡ 1`, `λ ≡ 2`.
pub fn certify_free_n(
    sys: &CurveSystem,
    powers: Option<&[u64]>,
) -> Result<Certificate, PingPongError> {
    check_n_system(sys)?;
    let n = sys.num_families();
    let powers: Vec<u64> = match powers {
        Some(p) if p.len() != n => {
            return Err(PingPongError::PowerCount {
                expected: n,
                got: p.len(),
            })
        }
        Some(p) => p.to_vec(),
        None => (0..n).map(|f| sys.power(f)).collect(),
    };
    if powers.contains(&0) {
        return Err(PingPongError::ZeroPower);
    }
    let params = NuParams::standard();
    let report = nu_report(sys, &params)?;
    let nu_max = report.iter().map(|e| e.max.clone()).max().expect("n >= 3");
    let nu_all = ceil(&nu_max);

    let pairs: Vec<u64> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .map(|(i, j)| sys.geom(i, j))
        .collect();
    let big_m = *pairs.iter().max().expect("n >= 3");
    let small_m = *pairs.iter().min().expect("n >= 3");
    let mut max_ratio = Rational::from_integer(0.into());
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == j || j == k || i == k {
                    continue;
                }
                let r = uint(sys.geom(i, k)) / (uint(sys.geom(i, j)) * uint(sys.geom(j, k)));
                if r > max_ratio {
                    max_ratio = r;
                }
            }
        }
    }
    let with_common = |c: Certificate| {
        c.with_param("M", uint(big_m))
            .with_param("m", uint(small_m))
            .with_param("max_ratio", max_ratio.clone())
            .with_param("lambda", int(2))
            .with_param("mu", int(1))
            .with_param("nu_max", nu_max.clone())
            .with_param("nu", Rational::from_integer(nu_all.clone()))
    };

    if powers.iter().all(|&p| p == 1) {
        if max_ratio <= Rational::new(1.into(), 6.into()) {
            return Ok(with_common(Certificate::certified(
                Verdict::CertifiedFree,
                Basis::Thm7_2,
            )));
        }
        return Ok(with_common(Certificate::unknown()).with_note(format!(
            "max (a_i,a_k)/((a_i,a_j)(a_j,a_k)) = {} exceeds 1/6",
            crate::rational::to_exact_string(&max_ratio)
        )));
    }

    let mut ok = true;
    let mut cert_params = Vec::new();
    for i in 0..n {
        let need = report
            .iter()
            .filter(|e| e.i == i)
            .map(|e| e.nu.clone())
            .max()
            .expect("n >= 3");
        if BigInt::from(powers[i]) < need {
            ok = false;
        }
        cert_params.push((format!("nu_{}", i + 1), need));
    }
    let mut c = if ok {
        Certificate::certified(Verdict::CertifiedFree, Basis::Lem7_1PingPong)
    } else {
        Certificate::unknown().with_note("some power is below the required nu_ij")
    };
    for (k, v) in cert_params {
        c = c.with_param(&k, Rational::from_integer(v));
    }
    Ok(with_common(c))
}
