//! The one-holed torus model: twists about the two standard curves act on
//! homology by
//!
//! ```text
//! t = [[1, 1], [0, 1]]    s = [[1, 0], [-1, 1]]    q = [[0, 1], [-1, 0]]
//! ```
//!
//! Generator `A` (family 0) maps to `t^m` and `B` (family 1) to `s^n`. Words
//! are multiplied in written order, so `B A` is `s·t`, which acts on a column
//! vector by applying `t` first, as the composition `T_b ∘ T_a` should.
//!
//! Capping the boundary of the one-holed torus gives a surjection onto
//! `SL(2, Z)` whose kernel is generated by the boundary twist, which is
//! central. A nonempty reduced word in `t^{±m}, s^{±n}` that evaluates to the
//! identity therefore lifts to a central element of the twist group, so the
//! group cannot be free of rank two. Only identity words are ever used as
//! non-freeness witnesses.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::certificate::{RelationInstance, RelationName};
use crate::word::{Letter, TwistWord};

/// 2×2 integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Mat2 {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    pub fn identity() -> Self {
        Self::new(1, 0, 0, 1)
    }

    pub fn t() -> Self {
        Self::new(1, 1, 0, 1)
    }

    pub fn s() -> Self {
        Self::new(1, 0, -1, 1)
    }

    pub fn q() -> Self {
        Self::new(0, 1, -1, 0)
    }

    /// `t^k` for any integer `k`.
    pub fn t_pow(k: i64) -> Self {
        Self::new(1, k, 0, 1)
    }

    /// `s^k` for any integer `k`.
    pub fn s_pow(k: i64) -> Self {
        Self::new(1, 0, -k, 1)
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn neg(&self) -> Self {
        Self {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            d: -&self.d,
        }
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse_sl2(&self) -> Self {
        Self {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::identity();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Image of a column vector.
    pub fn apply(&self, v: (&BigInt, &BigInt)) -> (BigInt, BigInt) {
        (&self.a * v.0 + &self.b * v.1, &self.c * v.0 + &self.d * v.1)
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;
    fn mul(self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum Sl2zError {
    #[error("word uses family {0}; the torus model only has A (0) and B (1)")]
    UnknownFamily(usize),
    #[error("twist powers must be >= 1")]
    ZeroPower,
    #[error("search length {0} exceeds the supported maximum {MAX_SEARCH_LEN}")]
    SearchTooLong(u32),
    #[error("integer overflow during search; lower max_len or the powers")]
    Overflow,
    #[error("relation `{0}` does not live on the one-holed torus")]
    NotATorusRelation(RelationName),
}

/// Evaluates `w` with `A ↦ t^m`, `B ↦ s^n`.
pub fn eval_word(w: &TwistWord, m: u64, n: u64) -> Result<Mat2, Sl2zError> {
    if m == 0 || n == 0 {
        return Err(Sl2zError::ZeroPower);
    }
    let mut acc = Mat2::identity();
    for l in w.letters() {
        let g = letter_matrix(*l, m, n)?;
        acc = &acc * &g;
    }
    Ok(acc)
}

fn letter_matrix(l: Letter, m: u64, n: u64) -> Result<Mat2, Sl2zError> {
    let k = |p: u64| BigInt::from(p) * BigInt::from(l.exp);
    match l.family {
        0 => Ok(Mat2 {
            a: BigInt::one(),
            b: k(m),
            c: BigInt::zero(),
            d: BigInt::one(),
        }),
        1 => Ok(Mat2 {
            a: BigInt::one(),
            b: BigInt::zero(),
            c: -k(n),
            d: BigInt::one(),
        }),
        f => Err(Sl2zError::UnknownFamily(f)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixClass {
    Periodic,
    /// `|trace| = 2`. `central` marks `±I`.
    Reducible {
        central: bool,
    },
    Anosov,
}

impl MatrixClass {
    pub fn as_str(self) -> &'static str {
        match self {
            MatrixClass::Periodic => "Periodic",
            MatrixClass::Reducible { .. } => "Reducible",
            MatrixClass::Anosov => "Anosov",
        }
    }
}

/// Trace trichotomy. The boundary case `|tr| = 2` is reducible, not Anosov.
pub fn classify_matrix(m: &Mat2) -> MatrixClass {
    let tr = m.trace().abs();
    let two = BigInt::from(2);
    if tr > two {
        MatrixClass::Anosov
    } else if tr == two {
        MatrixClass::Reducible {
            central: m.is_identity() || m.neg().is_identity(),
        }
    } else {
        MatrixClass::Periodic
    }
}

/// `|ps - qr|`: intersection number of the torus curves of slopes `(p, q)`
/// and `(r, s)`.
pub fn torus_intersection(p: &BigInt, q: &BigInt, r: &BigInt, s: &BigInt) -> BigInt {
    (p * s - q * r).abs()
}

/// Upper limit on `max_len` for [`find_relation`].
pub const MAX_SEARCH_LEN: u32 = 24;

// single-letter alphabet in canonical order: A < A^-1 < B < B^-1
const LETTERS: [(usize, i64); 4] = [(0, 1), (0, -1), (1, 1), (1, -1)];

fn inverse_code(c: u8) -> u8 {
    c ^ 1
}

type Small = [i128; 4];

fn small_mul(x: &Small, y: &Small) -> Option<Small> {
    let e = |p: i128, q: i128, r: i128, s: i128| p.checked_mul(q)?.checked_add(r.checked_mul(s)?);
    Some([
        e(x[0], y[0], x[1], y[2])?,
        e(x[0], y[1], x[1], y[3])?,
        e(x[2], y[0], x[3], y[2])?,
        e(x[2], y[1], x[3], y[3])?,
    ])
}

fn small_gen(code: u8, m: u64, n: u64) -> Small {
    let (fam, e) = LETTERS[code as usize];
    if fam == 0 {
        [1, e as i128 * m as i128, 0, 1]
    } else {
        [1, 0, -(e as i128) * n as i128, 1]
    }
}

/// All reduced words of exactly `len` letters, in lexicographic order, with
/// their matrices.
fn enumerate(len: usize, m: u64, n: u64) -> Result<Vec<(Vec<u8>, Small)>, Sl2zError> {
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(len);
    let id: Small = [1, 0, 0, 1];
    fn go(
        len: usize,
        m: u64,
        n: u64,
        word: &mut Vec<u8>,
        mat: Small,
        out: &mut Vec<(Vec<u8>, Small)>,
    ) -> Result<(), Sl2zError> {
        if word.len() == len {
            out.push((word.clone(), mat));
            return Ok(());
        }
        for c in 0..4u8 {
            if let Some(&last) = word.last() {
                if c == inverse_code(last) {
                    continue;
                }
            }
            let next = small_mul(&mat, &small_gen(c, m, n)).ok_or(Sl2zError::Overflow)?;
            word.push(c);
            go(len, m, n, word, next, out)?;
            word.pop();
        }
        Ok(())
    }
    go(len, m, n, &mut word, id, &mut out)?;
    Ok(out)
}

fn small_inverse(x: &Small) -> Small {
    [x[3], -x[1], -x[2], x[0]]
}

fn to_word(codes: &[u8]) -> TwistWord {
    TwistWord::new(codes.iter().map(|&c| {
        let (f, e) = LETTERS[c as usize];
        Letter::new(f, e)
    }))
}

/// Lexicographically least reduced word of exactly `len` letters that
/// evaluates to the identity, found by meet in the middle.
pub fn find_identity_word_of_length(
    m: u64,
    n: u64,
    len: u32,
) -> Result<Option<TwistWord>, Sl2zError> {
    if m == 0 || n == 0 {
        return Err(Sl2zError::ZeroPower);
    }
    if len > MAX_SEARCH_LEN {
        return Err(Sl2zError::SearchTooLong(len));
    }
    if len == 0 {
        return Ok(None);
    }
    let len = len as usize;
    let pre_len = len.div_ceil(2);
    let suf_len = len - pre_len;
    let prefixes = enumerate(pre_len, m, n)?;
    // suffix matrix -> suffixes in lexicographic order
    let mut table: BTreeMap<Small, Vec<Vec<u8>>> = BTreeMap::new();
    for (w, mat) in enumerate(suf_len, m, n)? {
        table.entry(mat).or_default().push(w);
    }
    for (p, pm) in &prefixes {
        let Some(suffixes) = table.get(&small_inverse(pm)) else {
            continue;
        };
        let last = *p.last().expect("prefix is nonempty");
        let hit = suffixes
            .iter()
            .find(|s| s.first().is_none_or(|&f| f != inverse_code(last)));
        if let Some(s) = hit {
            let mut codes = p.clone();
            codes.extend_from_slice(s);
            let word = to_word(&codes);
            // independent re-check with arbitrary precision
            assert!(eval_word(&word, m, n)?.is_identity());
            return Ok(Some(word));
        }
    }
    Ok(None)
}

/// Shortest, then lexicographically least, nonempty reduced word over
/// `A^{±1}, B^{±1}` (letters counted singly, ordered `A < A^-1 < B < B^-1`)
/// that evaluates to the identity with `A ↦ t^m`, `B ↦ s^n`.
pub fn find_relation(m: u64, n: u64, max_len: u32) -> Result<Option<TwistWord>, Sl2zError> {
    if max_len > MAX_SEARCH_LEN {
        return Err(Sl2zError::SearchTooLong(max_len));
    }
    for len in 1..=max_len {
        if let Some(w) = find_identity_word_of_length(m, n, len)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Powers `(m, n)` used to place a catalog relation in the torus model.
fn torus_powers(rel: &RelationInstance) -> Option<(u64, u64)> {
    match rel.name {
        RelationName::Chain6
        | RelationName::Braid
        | RelationName::Pow2Chain
        | RelationName::Pow3Chain => Some((1, 1)),
        // A = T_{a1} T_{a2}; capping makes a1 and a2 isotopic, so A ↦ t^2
        RelationName::Torus => Some((2, 1)),
        RelationName::Lantern | RelationName::TbtaSquared => None,
    }
}

/// Checks a catalog relation in `SL(2, Z)`: both sides must give the same
/// matrix. Boundary twists on the right-hand side map to the identity, except
/// for `braid`, whose right-hand side lists generator letters.
pub fn check_relation(rel: &RelationInstance) -> Result<(Mat2, Mat2, bool), Sl2zError> {
    let (m, n) = torus_powers(rel).ok_or(Sl2zError::NotATorusRelation(rel.name))?;
    let lhs = eval_word(&rel.lhs_in_system(), m, n)?;
    let rhs = match rel.name {
        RelationName::Braid => {
            let letters: Vec<Letter> = rel
                .rhs
                .iter()
                .map(|(c, e)| Letter::new(if c == "a" { 0 } else { 1 }, *e))
                .collect();
            let letters = if rel.swapped {
                letters
                    .into_iter()
                    .map(|l| Letter::new(1 - l.family, l.exp))
                    .collect()
            } else {
                letters
            };
            eval_word(&TwistWord::new(letters), m, n)?
        }
        RelationName::Pow2Chain | RelationName::Pow3Chain => {
            // right-hand side is (AB)^6 = T_delta
            eval_word(&TwistWord::from_pairs(&[(0, 1), (1, 1)]).pow(6), m, n)?
        }
        _ => Mat2::identity(),
    };
    let ok = lhs == rhs;
    Ok((lhs, rhs, ok))
}

/// Powers of `w` up to `k` that evaluate to the identity, if any.
pub fn identity_power(w: &TwistWord, m: u64, n: u64, k: u32) -> Result<Option<u32>, Sl2zError> {
    let g = eval_word(w, m, n)?;
    let mut acc = Mat2::identity();
    for i in 1..=k {
        acc = &acc * &g;
        if acc.is_identity() {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(p: &[(usize, i64)]) -> TwistWord {
        TwistWord::from_pairs(p)
    }

    #[test]
    fn generators() {
        let t = eval_word(&w(&[(0, 1)]), 1, 1).unwrap();
        assert_eq!(t, Mat2::t());
        assert_eq!(
            classify_matrix(&t),
            MatrixClass::Reducible { central: false }
        );
        let ts = eval_word(&w(&[(0, 1), (1, 1)]), 1, 1).unwrap();
        assert_eq!(ts, Mat2::new(0, 1, -1, 1));
        assert_eq!(classify_matrix(&ts), MatrixClass::Periodic);
    }

    #[test]
    fn braid_and_exceptional_relations() {
        let aba = eval_word(&w(&[(0, 1), (1, 1), (0, 1)]), 1, 1).unwrap();
        let bab = eval_word(&w(&[(1, 1), (0, 1), (1, 1)]), 1, 1).unwrap();
        assert_eq!(aba, Mat2::q());
        assert_eq!(bab, Mat2::q());
        assert!(eval_word(&w(&[(0, 1), (1, 1)]).pow(6), 1, 1)
            .unwrap()
            .is_identity());
        assert!(eval_word(&w(&[(0, 1), (1, 2)]).pow(4), 1, 1)
            .unwrap()
            .is_identity());
        assert!(eval_word(&w(&[(0, 1), (1, 3)]).pow(3), 1, 1)
            .unwrap()
            .is_identity());
        // same relations with the powers moved into the model
        assert!(eval_word(&w(&[(0, 1), (1, 1)]).pow(4), 1, 2)
            .unwrap()
            .is_identity());
    }

    #[test]
    fn trace_minus_two_words() {
        for (word, m, n) in [
            (w(&[(0, 2), (1, 2)]), 1, 1),
            (w(&[(0, 1), (1, 4)]), 1, 1),
            (w(&[(0, 4), (1, 1)]), 1, 1),
            (w(&[(0, 1), (1, 1)]), 2, 2),
        ] {
            let mat = eval_word(&word, m, n).unwrap();
            assert_eq!(mat.trace(), BigInt::from(-2));
            assert_eq!(
                classify_matrix(&mat),
                MatrixClass::Reducible { central: false }
            );
        }
    }

    #[test]
    fn torus_intersection_examples() {
        let i = |p: i64, q: i64, r: i64, s: i64| {
            torus_intersection(&p.into(), &q.into(), &r.into(), &s.into())
        };
        assert_eq!(i(1, 0, 0, 1), BigInt::from(1));
        assert_eq!(i(1, 0, 1, 0), BigInt::from(0));
        assert_eq!(i(2, 1, 1, 1), BigInt::from(1));
    }

    #[test]
    fn shortest_relations() {
        // the braid relation A B A = B A B is the shortest identity word
        let r = find_relation(1, 1, 12).unwrap().unwrap();
        assert_eq!(r, w(&[(0, 1), (1, 1), (0, 1), (1, -1), (0, -1), (1, -1)]));
        let r = find_relation(1, 2, 12).unwrap().unwrap();
        assert_eq!(r.letter_length(), 8);
        let r = find_relation(1, 3, 12).unwrap().unwrap();
        assert_eq!(r, w(&[(0, 1), (1, 1)]).pow(3));
        assert!(find_relation(2, 2, 10).unwrap().is_none());
    }

    #[test]
    fn exact_length_relations() {
        for (m, n, len) in [(1, 1, 12), (1, 2, 8), (1, 3, 8)] {
            let r = find_identity_word_of_length(m, n, len).unwrap().unwrap();
            assert_eq!(r.letter_length(), len as u64);
        }
        // t and s are conjugate, so identity words have exponent sum 0 mod 12
        assert!(find_identity_word_of_length(1, 1, 7).unwrap().is_none());
    }

    #[test]
    fn catalog_torus_relations_hold() {
        let chain = RelationInstance::new(
            RelationName::Chain6,
            w(&[(0, 1), (1, 1)]).pow(6),
            &[("delta", 1)],
        );
        assert!(check_relation(&chain).unwrap().2);
        let torus = RelationInstance::new(
            RelationName::Torus,
            w(&[(0, 1), (1, 1)]).pow(4),
            &[("delta1", 1), ("delta2", 1)],
        );
        assert!(check_relation(&torus).unwrap().2);
    }

    fn arb_word(max: usize) -> impl Strategy<Value = TwistWord> {
        proptest::collection::vec((0usize..2, -3i64..=3), 0..max)
            .prop_map(|v| TwistWord::from_pairs(&v))
    }

    proptest! {
        #[test]
        fn eval_is_homomorphism(u in arb_word(8), v in arb_word(8), m in 1u64..4, n in 1u64..4) {
            let lhs = eval_word(&u.concat(&v), m, n).unwrap();
            let rhs = &eval_word(&u, m, n).unwrap() * &eval_word(&v, m, n).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(eval_word(&u, m, n).unwrap().det(), BigInt::one());
        }

        #[test]
        fn trace_class_conjugation_invariant(g in arb_word(6), u in arb_word(8)) {
            let a = eval_word(&u, 1, 1).unwrap();
            let b = eval_word(&u.conjugate_by(&g), 1, 1).unwrap();
            prop_assert_eq!(a.trace(), b.trace());
            prop_assert_eq!(classify_matrix(&a), classify_matrix(&b));
        }

        #[test]
        fn inverse_matches(u in arb_word(8)) {
            let a = eval_word(&u, 2, 1).unwrap();
            let b = eval_word(&u.inverse(), 2, 1).unwrap();
            prop_assert_eq!(a.inverse_sl2(), b);
        }
    }

    #[test]
    fn twist_bound_oracle_exhaustive() {
        // with a = (1,0): |(t^{±n} x, b) - n (x,a)(a,b)| <= (x,b)
        for p in -5i64..=5 {
            for q in -5i64..=5 {
                for r in -5i64..=5 {
                    for s in -5i64..=5 {
                        let x = (BigInt::from(p), BigInt::from(q));
                        let (bi_r, bi_s) = (BigInt::from(r), BigInt::from(s));
                        let xa = torus_intersection(&x.0, &x.1, &BigInt::one(), &BigInt::zero());
                        let ab = torus_intersection(&BigInt::one(), &BigInt::zero(), &bi_r, &bi_s);
                        let xb = torus_intersection(&x.0, &x.1, &bi_r, &bi_s);
                        for nn in 0i64..=4 {
                            for sign in [1i64, -1] {
                                let img = Mat2::t_pow(sign * nn).apply((&x.0, &x.1));
                                let v = torus_intersection(&img.0, &img.1, &bi_r, &bi_s);
                                let centre = BigInt::from(nn) * &xa * &ab;
                                assert!((v - centre).abs() <= xb);
                            }
                        }
                    }
                }
            }
        }
    }
}
