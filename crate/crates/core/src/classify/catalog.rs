//! The relation catalog and lantern-like queries.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::certificate::{Basis, RelationInstance, RelationName};
use crate::word::TwistWord;

use super::ClassifyError;

const A: usize = 0;
const B: usize = 1;

fn ab() -> TwistWord {
    TwistWord::from_pairs(&[(A, 1), (B, 1)])
}

/// The catalog entry for `name`.
pub fn relation(name: RelationName) -> RelationInstance {
    match name {
        RelationName::Chain6 => RelationInstance::new(name, ab().pow(6), &[("delta", 1)]),
        RelationName::Braid => RelationInstance::new(
            name,
            TwistWord::from_pairs(&[(A, 1), (B, 1), (A, 1)]),
            &[("b", 1), ("a", 1), ("b", 1)],
        ),
        // (AB)^6 = T_delta, so both chain relations end in the boundary twist
        RelationName::Pow2Chain => RelationInstance::new(
            name,
            TwistWord::from_pairs(&[(A, 1), (B, 2)]).pow(4),
            &[("delta", 1)],
        ),
        RelationName::Pow3Chain => RelationInstance::new(
            name,
            TwistWord::from_pairs(&[(A, 1), (B, 3)]).pow(3),
            &[("delta", 1)],
        ),
        RelationName::Lantern => RelationInstance::new(
            name,
            ab(),
            &[("d1", 1), ("d2", 1), ("d3", 1), ("d4", 1), ("c", -1)],
        ),
        RelationName::TbtaSquared => RelationInstance::new(
            name,
            TwistWord::from_pairs(&[(B, 1), (A, 1)]).pow(2),
            &[("d1", 1), ("d2", 1), ("gamma", -4), ("gamma'", -4)],
        ),
        // A is the multi-twist T_{a1} T_{a2}
        RelationName::Torus => {
            RelationInstance::new(name, ab().pow(4), &[("delta1", 1), ("delta2", 1)])
        }
    }
}

/// All seven catalog relations in fixed order.
pub fn relation_catalog() -> Vec<RelationInstance> {
    RelationName::ALL.into_iter().map(relation).collect()
}

/// Intersection data under which a catalog relation holds.
pub fn relation_context(name: RelationName) -> &'static str {
    match name {
        RelationName::Chain6
        | RelationName::Braid
        | RelationName::Pow2Chain
        | RelationName::Pow3Chain => "(a,b)=1",
        RelationName::Lantern => "(a,b)=2, alg 0",
        RelationName::TbtaSquared => "(a,b)=2, alg 2",
        RelationName::Torus => "(a1,b)=(a2,b)=1, A={a1,a2}",
    }
}

/// Answer to "which lantern-like relations can `T_a`, `T_b` satisfy?".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanternLikeAnswer {
    pub relations: Vec<RelationInstance>,
    pub basis: Basis,
    pub reason: Option<String>,
}

/// Lantern-like relations (a word in two Dehn twists equal to a multi-twist
/// with at least three components) available for the given intersection
/// data. With `alg` missing at `ab = 2`, both candidates are returned.
pub fn lantern_like_query(ab: u64, alg: Option<u64>) -> LanternLikeAnswer {
    let none = |basis, reason: &str| LanternLikeAnswer {
        relations: Vec::new(),
        basis,
        reason: Some(reason.into()),
    };
    match (ab, alg) {
        (0, _) => none(Basis::Thm6_3, "disjoint curves: the twists commute"),
        (1, _) => none(
            Basis::Thm6_3,
            "RHS multi-twist has < 3 components (once-holed torus)",
        ),
        (2, Some(0)) => LanternLikeAnswer {
            relations: vec![relation(RelationName::Lantern)],
            basis: Basis::Thm6_1,
            reason: None,
        },
        (2, Some(2)) => LanternLikeAnswer {
            relations: vec![relation(RelationName::TbtaSquared)],
            basis: Basis::Thm6_1,
            reason: None,
        },
        (2, None) => LanternLikeAnswer {
            relations: vec![
                relation(RelationName::Lantern),
                relation(RelationName::TbtaSquared),
            ],
            basis: Basis::Thm6_1,
            reason: Some("alg_abs missing: lantern if 0, tbta_squared if 2".into()),
        },
        (2, Some(_)) => none(Basis::Thm6_1, "alg_abs must be 0 or 2 when (a,b)=2"),
        _ => none(
            Basis::Thm3_7(crate::certificate::Regime::I),
            "(a,b) >= 3: every word not conjugate to a generator power is relatively pseudo-Anosov",
        ),
    }
}

/// For `tbta_squared`: `T_bT_a` swaps `gamma` and `gamma'` and fixes the
/// boundary curves, so conjugating the relation by it must leave the
/// right-hand side unchanged. Returns whether the exponents are symmetric.
///
/// Symmetry pins `exp(gamma) = exp(gamma')` but not the common value, so a
/// symmetric entry with the wrong magnitude also passes.
pub fn check_conjugation_symmetry(rel: &RelationInstance) -> Result<bool, ClassifyError> {
    if rel.name != RelationName::TbtaSquared {
        return Err(ClassifyError::NotTbta(rel.name));
    }
    let swap = |c: &str| -> String {
        match c {
            "gamma" => "gamma'".into(),
            "gamma'" => "gamma".into(),
            c => c.into(),
        }
    };
    let mut before: Vec<(String, i64)> = rel.rhs.clone();
    let mut after: Vec<(String, i64)> = rel.rhs.iter().map(|(c, e)| (swap(c), *e)).collect();
    before.sort();
    after.sort();
    Ok(before == after)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_shape() {
        let cat = relation_catalog();
        assert_eq!(cat.len(), 7);
        let lantern = &cat[4];
        assert_eq!(lantern.name, RelationName::Lantern);
        assert_eq!(
            lantern
                .rhs
                .iter()
                .filter(|(c, _)| c.starts_with('d'))
                .count(),
            4
        );
        assert!(lantern.rhs.contains(&("c".into(), -1)));
        let tbta = &cat[5];
        let exps: Vec<i64> = tbta.rhs.iter().map(|(_, e)| *e).collect();
        assert_eq!(exps, vec![1, 1, -4, -4]);
    }

    #[test]
    fn lantern_like() {
        assert_eq!(
            lantern_like_query(2, Some(0)).relations[0].name,
            RelationName::Lantern
        );
        assert_eq!(
            lantern_like_query(2, Some(2)).relations[0].name,
            RelationName::TbtaSquared
        );
        assert!(lantern_like_query(1, None).relations.is_empty());
        assert!(lantern_like_query(3, Some(1)).relations.is_empty());
        assert_eq!(lantern_like_query(2, None).relations.len(), 2);
    }

    #[test]
    fn symmetry() {
        let tbta = relation(RelationName::TbtaSquared);
        assert_eq!(check_conjugation_symmetry(&tbta), Ok(true));
        let mut bad = tbta.clone();
        bad.rhs[3].1 = -3;
        assert_eq!(check_conjugation_symmetry(&bad), Ok(false));
        let mut weak = tbta.clone();
        weak.rhs[2].1 = -2;
        weak.rhs[3].1 = -2;
        assert_eq!(check_conjugation_symmetry(&weak), Ok(true));
        assert!(check_conjugation_symmetry(&relation(RelationName::Lantern)).is_err());
    }
}
