//! Independent re-derivation of the `(a,b) = 2` word verdict by following
//! intersection ratios.
//!
//! Every curve `x` with `‖x‖ > 0` lies in exactly one of
//! `N_a = {(x,a) < (x,b)}`, `N_b = {(x,b) < (x,a)}` and
//! `Y = {(x,a) = (x,b)}`. With `(a,b) = 2` and unit exponents, `T_a^{±1}`
//! maps `N_b` into `N_a` and `T_b^{±1}` maps `N_a` into `N_b`, each time
//! strictly increasing `‖x‖`, so orbits through `N_a ∪ N_b` never close up.
//! For `x ∈ Y` with `(x,a) = (x,b) = p`, one step gives an image in `Y` or in
//! the ping-pong sets; the only way to stay is equality at the lower bound.
//! When the applied letters contain a window `X^α Y^δ X^{-α}`, that window is
//! the twist `T_{X^α(Y)}^δ`, with `(X^α(Y), Y) = 4`, and it pushes `(·, Y)`
//! into `[3p, 5p]` while `(·, X) = p`. That is a forced escape.

use alloc::string::String;
use alloc::vec::Vec;

use crate::bounds::{apply_letter, twist_bound, PairState};
use crate::rational::int;
use crate::system::CurveSystem;
use crate::word::{Letter, TwistWord};

use super::ClassifyError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RatioCheck {
    /// Every start state leads to unbounded norm growth. `escape_step` is
    /// the number of letters applied from a `Y` start before the forced
    /// escape, and `window` the three applied letters (in application order).
    Verified {
        escape_step: usize,
        window: [Letter; 3],
    },
    Inconclusive {
        reason: String,
    },
}

/// Runs the ratio argument on a cyclically reduced word with unit effective
/// exponents in a system of two single curves with `(a,b) = 2`.
pub fn ratio_propagation_check(
    sys: &CurveSystem,
    w: &TwistWord,
) -> Result<RatioCheck, ClassifyError> {
    let (ab, m, n) = super::two_single(sys)?;
    if ab != 2 {
        return Err(ClassifyError::Precondition("(a,b) must be 2".into()));
    }
    if w.is_empty() || !w.is_cyclically_reduced() {
        return Err(ClassifyError::Precondition(
            "word must be nonempty and cyclically reduced".into(),
        ));
    }
    let power = |f: usize| if f == 0 { m } else { n } as i64;
    let eff: Vec<Letter> = w
        .letters()
        .iter()
        .map(|l| Letter::new(l.family, l.exp * power(l.family)))
        .collect();
    if let Some(l) = eff.iter().find(|l| l.family > 1) {
        return Err(ClassifyError::UnknownFamily(l.family));
    }
    if eff.iter().any(|l| l.exp.abs() != 1) {
        return Err(ClassifyError::Precondition(
            "all effective exponents must be +1 or -1".into(),
        ));
    }
    if eff.len() < 2 {
        return Ok(RatioCheck::Inconclusive {
            reason: "power of a single generator".into(),
        });
    }

    // ping-pong hypotheses at λ = 1: |e| m (a,b) >= 2 and |e| n (a,b) >= 2
    if !(ab * m >= 2 && ab * n >= 2) {
        return Ok(RatioCheck::Inconclusive {
            reason: "ping-pong hypothesis fails".into(),
        });
    }

    // (X^α(Y), Y) = 4, computed from the twist bound with x = Y
    let twisted_pair = twist_bound(1, ab as i64, 0, ab as i64).expect("nonnegative");
    debug_assert!(twisted_pair.exact());

    // unit twists on a unit-interval model: p = 1 throughout
    let unit = CurveSystem::new_unchecked(
        sys.families()
            .iter()
            .map(|f| crate::system::CurveFamily::single(&f.name, &f.curves[0], 1))
            .collect(),
        sys.geom_matrix().to_vec(),
        None,
    );
    let applied: Vec<Letter> = eff.iter().rev().copied().collect();
    let len = applied.len();
    let mut state = PairState::exact(&[1, 1]);
    for step in 0..(2 * len) {
        let l = applied[step % len];
        let next = apply_letter(&unit, &state, l).expect("two families");
        let moved = 1 - l.family;
        // the twisted curve's coordinate is unchanged; the other one lies in
        // [p, 3p] and staying in Y requires its lower end
        debug_assert_eq!(next.bounds[l.family], state.bounds[l.family]);
        if *next.bounds[moved].lo() != int(1) {
            return Err(ClassifyError::Precondition(
                "unexpected lower bound on the Y path".into(),
            ));
        }
        state = PairState::exact(&[1, 1]);
        if step >= 2 {
            let window = [applied[(step - 2) % len], applied[(step - 1) % len], l];
            if window[0].family == window[2].family && window[0].exp == -window[2].exp {
                // x' = T_{X^α(Y)}^δ applied to a Y point of weight p = 1:
                // (x', Y) ∈ twist_bound(1, (x, X^α(Y)) = 1, (x, Y) = 1, 4)
                let k = twisted_pair.lo().to_integer();
                let k = i64::try_from(k).expect("small");
                let y_side = twist_bound(1, 1, 1, k).expect("nonnegative");
                if *y_side.lo() > int(1) {
                    return Ok(RatioCheck::Verified {
                        escape_step: step + 1,
                        window,
                    });
                }
            }
        }
    }
    Ok(RatioCheck::Inconclusive {
        reason: "constant exponent pattern: no escape window (power of BA or BA^-1)".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify_word, WordKind};
    use crate::system::two_curves;
    use proptest::prelude::*;

    fn w(p: &[(usize, i64)]) -> TwistWord {
        TwistWord::from_pairs(p)
    }

    #[test]
    fn examples() {
        let sys = two_curves(2, Some(0), 1, 1).unwrap();
        // B A B A^-1
        let r = ratio_propagation_check(&sys, &w(&[(1, 1), (0, 1), (1, 1), (0, -1)])).unwrap();
        assert!(matches!(r, RatioCheck::Verified { .. }), "{r:?}");
        let r = ratio_propagation_check(&sys, &w(&[(1, 1), (0, 1)]).pow(2)).unwrap();
        assert!(matches!(r, RatioCheck::Inconclusive { .. }));
        let r = ratio_propagation_check(&sys, &w(&[(1, 1), (0, -1), (1, 1), (0, 1)])).unwrap();
        assert!(matches!(r, RatioCheck::Verified { .. }));
        assert!(ratio_propagation_check(&sys, &w(&[(1, 2), (0, 1)])).is_err());
        assert!(ratio_propagation_check(&sys, &w(&[(0, 1), (1, 1), (0, 1)])).is_err());
        let wrong = two_curves(3, None, 1, 1).unwrap();
        assert!(ratio_propagation_check(&wrong, &w(&[(1, 1), (0, 1)])).is_err());
    }

    proptest! {
        #[test]
        fn agrees_with_classifier(signs in proptest::collection::vec(proptest::bool::ANY, 2..5), alg in prop_oneof![Just(0u64), Just(2u64)]) {
            let sys = two_curves(2, Some(alg), 1, 1).unwrap();
            let letters: Vec<(usize, i64)> = signs
                .iter()
                .enumerate()
                .flat_map(|(i, &s)| {
                    let e = if s { 1 } else { -1 };
                    [(1usize, if i % 2 == 0 { 1 } else { e }), (0usize, e)]
                })
                .collect();
            let word = TwistWord::from_pairs(&letters);
            if let RatioCheck::Verified { .. } = ratio_propagation_check(&sys, &word).unwrap() {
                let v = classify_word(&sys, &word).unwrap();
                prop_assert_eq!(v.determined().unwrap().kind, WordKind::RelPA);
            }
        }
    }
}
