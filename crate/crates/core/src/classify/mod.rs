//! Complete answers for two twist powers and word-level classification.
//!
//! For `⟨T_a^m, T_b^n⟩`:
//!
//! - free iff `(a,b) >= 2`, or `(a,b) = 1` and `{m,n}` is not one of
//!   `{1}, {1,2}, {1,3}`;
//! - relatively pseudo-Anosov iff `(a,b) >= 3`, or `(a,b) = 2` and
//!   `(m,n) != (1,1)`, or `(a,b) = 1` and `{m,n}` avoids
//!   `{1}, {1,2}, {1,3}, {1,4}, {2}`.

mod catalog;
mod ratio;

pub use catalog::{
    check_conjugation_symmetry, lantern_like_query, relation, relation_catalog, relation_context,
    LanternLikeAnswer,
};
pub use ratio::{ratio_propagation_check, RatioCheck};

use alloc::format;
use alloc::string::String;

use num_bigint::BigInt;

use crate::certificate::{Basis, Regime, RelationInstance, RelationName, Witness};
use crate::sl2z::{self, MatrixClass};
use crate::system::CurveSystem;
use crate::word::{cyclic_reduce, TwistWord};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("intersection number must be >= 1")]
    Disjoint,
    #[error("twist powers must be >= 1")]
    ZeroPower,
    #[error("alg_abs = {0} is impossible for (a,b) = 2; expected 0 or 2")]
    InvalidAlg(u64),
    #[error("expected exactly two families, found {0}")]
    FamilyCount(usize),
    #[error("each family must be a single curve")]
    NotSingleCurves,
    #[error("the word reduces to the identity")]
    EmptyWord,
    #[error("word uses family {0}, which the system does not have")]
    UnknownFamily(usize),
    #[error("relation `{0}` is not tbta_squared")]
    NotTbta(RelationName),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// Verdicts for `⟨T_a^m, T_b^n⟩`, each with its basis and, when negative,
/// the witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoGroupClass {
    pub free: bool,
    pub free_basis: Basis,
    pub free_witness: Option<Witness>,
    pub relpa: bool,
    pub relpa_basis: Basis,
    pub relpa_witness: Option<Witness>,
}

fn unordered(m: u64, n: u64) -> (u64, u64) {
    (m.min(n), m.max(n))
}

/// Chain witness for a non-free pair with `(a,b) = 1`. The relation is
/// stated with the power on `B`; it is swapped when the power sits on `A`.
fn chain_witness(m: u64, n: u64) -> Option<RelationInstance> {
    let rel = match unordered(m, n) {
        (1, 1) => relation(RelationName::Chain6),
        (1, 2) => relation(RelationName::Pow2Chain),
        (1, 3) => relation(RelationName::Pow3Chain),
        _ => return None,
    };
    Some(if m > n { rel.swap() } else { rel })
}

fn reducible_witness(m: u64, n: u64) -> Witness {
    let word = TwistWord::from_pairs(&[(0, 1), (1, 1)]);
    let trace = sl2z::eval_word(&word, m, n)
        .expect("powers checked")
        .trace();
    Witness::ReducibleWord { word, trace, m, n }
}

/// The complete classification of `⟨T_a^m, T_b^n⟩` from `(a,b)`, the
/// absolute algebraic intersection and the powers.
///
/// For `(a,b) = 2, m = n = 1` the witness depends on `alg`; when it is
/// missing the verdict is still returned, without a witness.
pub fn classify_two_group(
    ab: u64,
    alg: Option<u64>,
    m: u64,
    n: u64,
) -> Result<TwoGroupClass, ClassifyError> {
    if ab == 0 {
        return Err(ClassifyError::Disjoint);
    }
    if m == 0 || n == 0 {
        return Err(ClassifyError::ZeroPower);
    }
    if ab == 2 {
        if let Some(v) = alg {
            if v != 0 && v != 2 {
                return Err(ClassifyError::InvalidAlg(v));
            }
        }
    }
    let pair = unordered(m, n);
    let free = ab >= 2 || !matches!(pair, (1, 1) | (1, 2) | (1, 3));
    let free_witness = if free {
        None
    } else {
        chain_witness(m, n).map(Witness::Relation)
    };

    let relpa = match ab {
        1 => !matches!(pair, (1, 1) | (1, 2) | (1, 3) | (1, 4) | (2, 2)),
        2 => pair != (1, 1),
        _ => true,
    };
    let relpa_witness = if relpa {
        None
    } else if ab == 2 {
        match alg {
            Some(0) => Some(Witness::Relation(relation(RelationName::Lantern))),
            Some(2) => Some(Witness::Relation(relation(RelationName::TbtaSquared))),
            _ => None,
        }
    } else if let Some(rel) = chain_witness(m, n) {
        // the chain products are boundary twists, so they act trivially on
        // the filled torus
        Some(Witness::Relation(rel))
    } else {
        Some(reducible_witness(m, n))
    };

    let relpa_basis = if ab >= 3 {
        Basis::Thm3_7(Regime::I)
    } else {
        Basis::Thm3_9
    };
    Ok(TwoGroupClass {
        free,
        free_basis: Basis::Thm3_5,
        free_witness,
        relpa,
        relpa_basis,
        relpa_witness,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordKind {
    GeneratorPower,
    RelPA,
    MultiTwist,
    ReducibleNotRelPA,
    Unknown,
}

impl WordKind {
    pub fn as_str(self) -> &'static str {
        match self {
            WordKind::GeneratorPower => "GeneratorPower",
            WordKind::RelPA => "RelPA",
            WordKind::MultiTwist => "MultiTwist",
            WordKind::ReducibleNotRelPA => "ReducibleNotRelPA",
            WordKind::Unknown => "Unknown",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordVerdict {
    pub kind: WordKind,
    pub basis: Option<Basis>,
    /// Catalog relation: always present for `MultiTwist`, and attached as
    /// supporting detail for odd powers of `BA` at algebraic intersection 2.
    pub relation: Option<RelationInstance>,
    /// Torus-model trace when that model decided the verdict.
    pub trace: Option<BigInt>,
    pub core: TwistWord,
    pub conjugator: TwistWord,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordOutcome {
    Determined(WordVerdict),
    /// `(a,b) = 2` without algebraic data: one verdict per possible case.
    ByAlgebraicCase {
        alg_zero: WordVerdict,
        alg_two: WordVerdict,
    },
}

impl WordOutcome {
    pub fn determined(&self) -> Option<&WordVerdict> {
        match self {
            WordOutcome::Determined(v) => Some(v),
            _ => None,
        }
    }
}

/// Exponent pattern of an alternating core with all effective exponents
/// `±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Pattern {
    /// Cyclically `(BA)^n`.
    PowerBA(i64),
    /// Cyclically `(BA^{-1})^n`.
    PowerBAinv(i64),
    Mixed,
}

fn unit_pattern(core: &[(usize, i64)]) -> Pattern {
    let exp_of = |f: usize| -> Option<i64> {
        let mut it = core.iter().filter(|l| l.0 == f).map(|l| l.1);
        let first = it.next()?;
        it.all(|e| e == first).then_some(first)
    };
    match (exp_of(0), exp_of(1)) {
        (Some(alpha), Some(beta)) => {
            let k = (core.len() / 2) as i64;
            if alpha == beta {
                Pattern::PowerBA(alpha * k)
            } else {
                Pattern::PowerBAinv(beta * k)
            }
        }
        _ => Pattern::Mixed,
    }
}

/// Checks the two-single-curve preconditions and returns `((a,b), m, n)`.
fn two_single(sys: &CurveSystem) -> Result<(u64, u64, u64), ClassifyError> {
    if sys.num_families() != 2 {
        return Err(ClassifyError::FamilyCount(sys.num_families()));
    }
    if !sys.all_single_curves() {
        return Err(ClassifyError::NotSingleCurves);
    }
    Ok((sys.geom(0, 1), sys.power(0), sys.power(1)))
}

/// Classifies a word in `T_A = T_a^m` and `T_B = T_b^n` after cyclic
/// reduction.
pub fn classify_word(sys: &CurveSystem, w: &TwistWord) -> Result<WordOutcome, ClassifyError> {
    let (ab, m, n) = two_single(sys)?;
    if let Some(l) = w.letters().iter().find(|l| l.family > 1) {
        return Err(ClassifyError::UnknownFamily(l.family));
    }
    let (core, conjugator) = cyclic_reduce(w);
    if core.is_empty() {
        return Err(ClassifyError::EmptyWord);
    }
    let verdict = |kind, basis: Option<Basis>, detail: String| WordVerdict {
        kind,
        basis,
        relation: None,
        trace: None,
        core: core.clone(),
        conjugator: conjugator.clone(),
        detail,
    };
    if core.len() == 1 {
        return Ok(WordOutcome::Determined(verdict(
            WordKind::GeneratorPower,
            None,
            "conjugate to a power of one generator".into(),
        )));
    }
    match ab {
        0 => Err(ClassifyError::Disjoint),
        1 => {
            let mat = sl2z::eval_word(&core, m, n)
                .map_err(|e| ClassifyError::Precondition(format!("{e}")))?;
            let trace = mat.trace();
            let class = sl2z::classify_matrix(&mat);
            let mut v = match class {
                MatrixClass::Anosov => verdict(
                    WordKind::RelPA,
                    Some(Basis::Sl2zTrace),
                    "|trace| > 2: Anosov on the filled torus".into(),
                ),
                MatrixClass::Reducible { central: true } if mat.is_identity() => {
                    let mut v = verdict(
                        WordKind::MultiTwist,
                        Some(Basis::Sl2zTrace),
                        "identity matrix: a power of the boundary twist".into(),
                    );
                    v.relation = Some(relation(RelationName::Chain6));
                    v
                }
                MatrixClass::Reducible { central } => verdict(
                    WordKind::ReducibleNotRelPA,
                    Some(Basis::Sl2zTrace),
                    if central {
                        "matrix -I: the elliptic involution up to boundary twists".into()
                    } else {
                        "|trace| = 2: reducible".into()
                    },
                ),
                MatrixClass::Periodic => verdict(
                    WordKind::ReducibleNotRelPA,
                    Some(Basis::Sl2zTrace),
                    "|trace| < 2: periodic".into(),
                ),
            };
            v.trace = Some(trace);
            Ok(WordOutcome::Determined(v))
        }
        2 => {
            let eff: alloc::vec::Vec<(usize, i64)> = core
                .letters()
                .iter()
                .map(|l| (l.family, l.exp * if l.family == 0 { m } else { n } as i64))
                .collect();
            if eff.iter().any(|l| l.1.abs() > 1) {
                return Ok(WordOutcome::Determined(verdict(
                    WordKind::RelPA,
                    Some(Basis::Thm3_10),
                    "some exponent has absolute value > 1".into(),
                )));
            }
            let by_alg = |alg: u64| -> WordVerdict {
                match unit_pattern(&eff) {
                    Pattern::Mixed => verdict(
                        WordKind::RelPA,
                        Some(Basis::Thm3_10),
                        "not cyclically a power of BA or BA^-1".into(),
                    ),
                    Pattern::PowerBAinv(k) => verdict(
                        WordKind::RelPA,
                        Some(if alg == 0 {
                            Basis::Prop4_1
                        } else {
                            Basis::Prop5_2
                        }),
                        format!("cyclically (BA^-1)^{k}"),
                    ),
                    Pattern::PowerBA(k) if alg == 0 => {
                        let mut v = verdict(
                            WordKind::MultiTwist,
                            Some(Basis::Prop4_1),
                            format!("cyclically (BA)^{k}; AB is a multi-twist"),
                        );
                        v.relation = Some(relation(RelationName::Lantern));
                        v
                    }
                    Pattern::PowerBA(k) if k % 2 == 0 => {
                        let mut v = verdict(
                            WordKind::MultiTwist,
                            Some(Basis::Prop5_1),
                            format!("cyclically (BA)^{k}, an even power"),
                        );
                        v.relation = Some(relation(RelationName::TbtaSquared));
                        v
                    }
                    Pattern::PowerBA(k) => {
                        let mut v = verdict(
                            WordKind::ReducibleNotRelPA,
                            Some(Basis::Cor5_3),
                            format!("cyclically (BA)^{k}, an odd power: not pure; its square is a multi-twist"),
                        );
                        v.relation = Some(relation(RelationName::TbtaSquared));
                        v
                    }
                }
            };
            match sys.alg_abs(0, 1) {
                Some(0) => Ok(WordOutcome::Determined(by_alg(0))),
                Some(2) => Ok(WordOutcome::Determined(by_alg(2))),
                Some(v) => Err(ClassifyError::InvalidAlg(v)),
                None => {
                    let (z, t) = (by_alg(0), by_alg(2));
                    if z.kind == t.kind && z.basis == t.basis {
                        Ok(WordOutcome::Determined(z))
                    } else {
                        Ok(WordOutcome::ByAlgebraicCase {
                            alg_zero: z,
                            alg_two: t,
                        })
                    }
                }
            }
        }
        _ => Ok(WordOutcome::Determined(verdict(
            WordKind::RelPA,
            Some(Basis::Thm3_7(Regime::I)),
            "(a,b) >= 3".into(),
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::two_curves;
    use proptest::prelude::*;

    fn w(p: &[(usize, i64)]) -> TwistWord {
        TwistWord::from_pairs(p)
    }

    fn kind(sys: &CurveSystem, word: &TwistWord) -> WordKind {
        classify_word(sys, word).unwrap().determined().unwrap().kind
    }

    #[test]
    fn two_group_examples() {
        let c = classify_two_group(1, None, 1, 2).unwrap();
        assert!(!c.free);
        assert_eq!(c.free_witness.unwrap().statement(), "(AB^2)^4=(AB)^6");
        let c = classify_two_group(1, None, 3, 1).unwrap();
        assert_eq!(c.free_witness.unwrap().statement(), "(BA^3)^3=(BA)^6");

        let c = classify_two_group(2, Some(0), 1, 1).unwrap();
        assert!(c.free && !c.relpa);
        assert_eq!(
            c.relpa_witness.unwrap().relation().unwrap().name,
            RelationName::Lantern
        );
        let c = classify_two_group(2, Some(2), 1, 1).unwrap();
        assert_eq!(
            c.relpa_witness.unwrap().relation().unwrap().name,
            RelationName::TbtaSquared
        );

        let c = classify_two_group(1, None, 2, 2).unwrap();
        assert!(c.free && !c.relpa);
        match c.relpa_witness.unwrap() {
            Witness::ReducibleWord { trace, .. } => assert_eq!(trace, BigInt::from(-2)),
            other => panic!("{other:?}"),
        }
        for (m, n) in [(1, 4), (4, 1)] {
            let c = classify_two_group(1, None, m, n).unwrap();
            assert!(c.free && !c.relpa);
        }
        for m in 1..6 {
            for n in 1..6 {
                let c = classify_two_group(3, None, m, n).unwrap();
                assert!(c.free && c.relpa);
            }
        }
        assert_eq!(
            classify_two_group(2, Some(1), 1, 1),
            Err(ClassifyError::InvalidAlg(1))
        );
        assert_eq!(
            classify_two_group(0, None, 1, 1),
            Err(ClassifyError::Disjoint)
        );
    }

    #[test]
    fn word_examples() {
        let lantern = two_curves(2, Some(0), 1, 1).unwrap();
        let tbta = two_curves(2, Some(2), 1, 1).unwrap();

        let v = classify_word(&lantern, &w(&[(0, 1), (1, 1)])).unwrap();
        let v = v.determined().unwrap();
        assert_eq!(v.kind, WordKind::MultiTwist);
        assert_eq!(v.relation.as_ref().unwrap().name, RelationName::Lantern);

        let ba2 = w(&[(1, 1), (0, 1)]).pow(2);
        let v = classify_word(&tbta, &ba2).unwrap();
        let v = v.determined().unwrap();
        assert_eq!(v.kind, WordKind::MultiTwist);
        assert_eq!(v.relation.as_ref().unwrap().name, RelationName::TbtaSquared);

        assert_eq!(
            kind(&tbta, &w(&[(1, 1), (0, 1)])),
            WordKind::ReducibleNotRelPA
        );
        for sys in [&lantern, &tbta] {
            assert_eq!(kind(sys, &w(&[(1, 1), (0, -1)])), WordKind::RelPA);
            assert_eq!(kind(sys, &w(&[(1, 1), (0, 2)])), WordKind::RelPA);
            assert_eq!(kind(sys, &w(&[(0, 5)])), WordKind::GeneratorPower);
        }
        let v = classify_word(&tbta, &w(&[(1, 1), (0, -1)])).unwrap();
        assert_eq!(v.determined().unwrap().basis, Some(Basis::Prop5_2));
    }

    #[test]
    fn missing_alg_splits_by_case() {
        let sys = two_curves(2, None, 1, 1).unwrap();
        match classify_word(&sys, &w(&[(1, 1), (0, 1)])).unwrap() {
            WordOutcome::ByAlgebraicCase { alg_zero, alg_two } => {
                assert_eq!(alg_zero.kind, WordKind::MultiTwist);
                assert_eq!(alg_two.kind, WordKind::ReducibleNotRelPA);
            }
            other => panic!("{other:?}"),
        }
        // Thm3.10 branch does not depend on the case
        assert!(classify_word(&sys, &w(&[(1, 1), (0, 2)]))
            .unwrap()
            .determined()
            .is_some());
    }

    #[test]
    fn powers_of_ba() {
        let lantern = two_curves(2, Some(0), 1, 1).unwrap();
        let tbta = two_curves(2, Some(2), 1, 1).unwrap();
        let ba = w(&[(1, 1), (0, 1)]);
        for k in 1..6u32 {
            assert_eq!(kind(&tbta, &ba.pow(2 * k)), WordKind::MultiTwist);
            assert_eq!(kind(&tbta, &ba.pow(2 * k - 1)), WordKind::ReducibleNotRelPA);
            assert_eq!(kind(&lantern, &ba.pow(k)), WordKind::MultiTwist);
            assert_eq!(kind(&tbta, &ba.pow(2 * k).inverse()), WordKind::MultiTwist);
            // conjugates classify the same way
            let g = w(&[(0, 3), (1, -1)]);
            assert_eq!(
                kind(&tbta, &ba.pow(2 * k).conjugate_by(&g)),
                WordKind::MultiTwist
            );
        }
    }

    #[test]
    fn torus_words() {
        let sys = two_curves(1, None, 1, 1).unwrap();
        assert_eq!(
            kind(&sys, &w(&[(0, 1), (1, 1)]).pow(6)),
            WordKind::MultiTwist
        );
        assert_eq!(kind(&sys, &w(&[(0, 1), (1, -1)])), WordKind::RelPA);
        assert_eq!(
            kind(&sys, &w(&[(0, 1), (1, 1)])),
            WordKind::ReducibleNotRelPA
        );
        assert_eq!(
            kind(&sys, &w(&[(0, 2), (1, 2)])),
            WordKind::ReducibleNotRelPA
        );
        assert!(classify_word(&sys, &w(&[(0, 1), (0, -1)])).is_err());
    }

    fn sl2z_kind(word: &TwistWord) -> WordKind {
        let (core, _) = cyclic_reduce(word);
        if core.len() == 1 {
            return WordKind::GeneratorPower;
        }
        let mat = sl2z::eval_word(&core, 1, 1).unwrap();
        let tr = mat.trace();
        let two = BigInt::from(2);
        if tr > two || tr < -two.clone() {
            WordKind::RelPA
        } else if mat.is_identity() {
            WordKind::MultiTwist
        } else {
            WordKind::ReducibleNotRelPA
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn torus_agreement(v in proptest::collection::vec((0usize..2, -3i64..=3), 1..9)) {
            let sys = two_curves(1, None, 1, 1).unwrap();
            let word = TwistWord::from_pairs(&v);
            prop_assume!(!cyclic_reduce(&word).0.is_empty());
            prop_assert_eq!(kind(&sys, &word), sl2z_kind(&word));
        }

        #[test]
        fn free_for_ab_at_least_two(ab in 2u64..8, m in 1u64..9, n in 1u64..9) {
            let alg = if ab == 2 { Some(0) } else { None };
            prop_assert!(classify_two_group(ab, alg, m, n).unwrap().free);
        }
    }
}
