//! Integer polynomials, characteristic polynomials and factoring into
//! linear and quadratic pieces.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::IntMatrix;
use super::quadratic::{squarefree_split, QuadraticNumber};
use crate::rational::Rational;

/// Coefficients in ascending degree, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    /// `x - r`.
    pub fn linear(r: &BigInt) -> Self {
        IntPoly::new(vec![-r, BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_quadratic(&self, x: &QuadraticNumber) -> QuadraticNumber {
        self.coeffs
            .iter()
            .rev()
            .fold(QuadraticNumber::int(0), |acc, c| {
                acc.checked_mul(x)
                    .and_then(|v| v.checked_add(&QuadraticNumber::from_int_big(c.clone())))
                    .expect("single field")
            })
    }

    /// `p(M)` by Horner.
    pub fn eval_matrix(&self, m: &IntMatrix) -> IntMatrix {
        let n = m.size();
        let mut acc = IntMatrix::zero(n);
        for c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(m).expect("same size");
            let mut rows = acc.rows();
            for (i, r) in rows.iter_mut().enumerate() {
                r[i] += c;
            }
            acc = IntMatrix::from_big_rows(rows).expect("square");
        }
        acc
    }

    /// Quotient and remainder by a monic divisor.
    pub fn divrem_monic(&self, div: &IntPoly) -> (IntPoly, IntPoly) {
        debug_assert!(div.coeffs.last().is_some_and(|c| c.is_one()));
        let dd = div.degree();
        if self.coeffs.len() <= dd {
            return (IntPoly::new(Vec::new()), self.clone());
        }
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = r[i + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in div.coeffs.iter().enumerate() {
                r[i + j] -= &c * dc;
            }
            q[i] = c;
        }
        (IntPoly::new(q), IntPoly::new(r))
    }

    fn divides(&self, div: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.divrem_monic(div);
        r.coeffs.is_empty().then_some(q)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push(if neg { '-' } else { '+' });
            }
            let m = c.abs();
            if i == 0 || !m.is_one() {
                s += &alloc::format!("{m}");
            }
            match i {
                0 => {}
                1 => s.push('x'),
                _ => s += &alloc::format!("x^{i}"),
            }
        }
        f.write_str(&s)
    }
}

/// Characteristic polynomial `det(xI - M)` by Faddeev–LeVerrier. Every
/// division is exact over the integers.
pub fn char_poly(m: &IntMatrix) -> IntPoly {
    let n = m.size();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut mk = IntMatrix::zero(n);
    for k in 1..=n {
        // M_k = M·M_{k-1} + c_{n-k+1} I
        let mut rows = m.checked_mul(&mk).expect("same size").rows();
        for (i, r) in rows.iter_mut().enumerate() {
            r[i] += &c[n - k + 1];
        }
        mk = IntMatrix::from_big_rows(rows).expect("square");
        let t = m.checked_mul(&mk).expect("same size").trace();
        c[n - k] = -(t / BigInt::from(k));
    }
    IntPoly::new(c)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorKind {
    Linear {
        root: BigInt,
    },
    Quadratic,
    /// No rational root and no integer quadratic factor was found.
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub poly: IntPoly,
    pub multiplicity: u32,
    pub kind: FactorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<Factor>,
}

impl Factorization {
    pub fn expand(&self) -> IntPoly {
        let mut acc = IntPoly::from_i64(&[1]);
        for f in &self.factors {
            for _ in 0..f.multiplicity {
                acc = mul(&acc, &f.poly);
            }
        }
        acc
    }

    /// All real roots that live in a quadratic field, each once.
    pub fn real_roots(&self) -> Vec<QuadraticNumber> {
        let mut out = Vec::new();
        for f in &self.factors {
            match &f.kind {
                FactorKind::Linear { root } => {
                    out.push(QuadraticNumber::from_int_big(root.clone()));
                }
                FactorKind::Quadratic => {
                    let p = f.poly.coeff(1);
                    let q = f.poly.coeff(0);
                    let disc = &p * &p - BigInt::from(4) * q;
                    if !disc.is_positive() {
                        continue;
                    }
                    let half = Rational::new(BigInt::one(), BigInt::from(2));
                    let a = Rational::from_integer(-p) * &half;
                    let (s, d) = squarefree_split(&disc);
                    let b = Rational::from_integer(s) * &half;
                    for sign in [1, -1] {
                        let bb = &b * Rational::from_integer(sign.into());
                        out.push(QuadraticNumber::new(a.clone(), bb, d.clone()).expect("d > 0"));
                    }
                }
                FactorKind::Other => {}
            }
        }
        out
    }

    pub fn residual(&self) -> Option<&IntPoly> {
        self.factors
            .iter()
            .find(|f| f.kind == FactorKind::Other)
            .map(|f| &f.poly)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let bare = self.factors.len() == 1 && self.factors[0].multiplicity == 1;
        for fac in &self.factors {
            let monomial = fac.poly.coeffs.iter().filter(|c| !c.is_zero()).count() == 1;
            if bare || monomial {
                write!(f, "{}", fac.poly)?;
            } else {
                write!(f, "({})", fac.poly)?;
            }
            if fac.multiplicity > 1 {
                write!(f, "^{}", fac.multiplicity)?;
            }
        }
        Ok(())
    }
}

fn mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.coeffs.is_empty() || b.coeffs.is_empty() {
        return IntPoly::new(Vec::new());
    }
    let mut c = vec![BigInt::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        for (j, y) in b.coeffs.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    IntPoly::new(c)
}

/// Largest value searched by trial division or quadratic-factor search.
const SEARCH_LIMIT: u64 = 1 << 20;

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if i > SEARCH_LIMIT {
            return None;
        }
        if n % i == 0 {
            small.push(BigInt::from(i));
            if i * i != n {
                large.push(BigInt::from(n / i));
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// Factors a monic integer polynomial into rational linear factors, integer
/// quadratic factors, and at most one leftover factor.
pub fn factor(p: &IntPoly) -> Factorization {
    let mut rest = p.clone();
    let mut factors = Vec::new();
    let push_root = |rest: &mut IntPoly, r: BigInt, factors: &mut Vec<Factor>| {
        let lin = IntPoly::linear(&r);
        let mut k = 0;
        while let Some(q) = rest.divides(&lin) {
            *rest = q;
            k += 1;
        }
        if k > 0 {
            factors.push(Factor {
                poly: lin,
                multiplicity: k,
                kind: FactorKind::Linear { root: r },
            });
        }
    };
    // monic: rational roots are integers dividing the constant term
    push_root(&mut rest, BigInt::zero(), &mut factors);
    if rest.degree() > 0 {
        if let Some(ds) = divisors(&rest.coeff(0)) {
            let mut cands: Vec<BigInt> = ds.iter().flat_map(|d| [-d.clone(), d.clone()]).collect();
            cands.sort();
            for r in cands {
                if rest.degree() == 0 {
                    break;
                }
                if rest.eval(&r).is_zero() {
                    push_root(&mut rest, r, &mut factors);
                }
            }
        }
    }
    if rest.degree() >= 4 {
        quadratic_split(&mut rest, &mut factors);
    }
    match rest.degree() {
        0 => {}
        2 => factors.push(Factor {
            poly: rest,
            multiplicity: 1,
            kind: FactorKind::Quadratic,
        }),
        _ => factors.push(Factor {
            poly: rest,
            multiplicity: 1,
            kind: FactorKind::Other,
        }),
    }
    Factorization { factors }
}

/// Peels monic integer quadratic factors `x² + px + q` off `rest`. Roots are
/// bounded by the Cauchy bound `B`, so `|p| <= 2B` and `q | rest(0)`.
fn quadratic_split(rest: &mut IntPoly, factors: &mut Vec<Factor>) {
    loop {
        if rest.degree() < 4 {
            return;
        }
        let bound = rest
            .coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
            + BigInt::one();
        let Some(b) = bound.to_u64().filter(|&b| b <= SEARCH_LIMIT) else {
            return;
        };
        let Some(qs) = divisors(&rest.coeff(0)) else {
            return;
        };
        let mut found = None;
        'search: for q in qs.iter().flat_map(|d| [d.clone(), -d.clone()]) {
            for p in -(2 * b as i64)..=(2 * b as i64) {
                let cand = IntPoly::new(vec![q.clone(), BigInt::from(p), BigInt::one()]);
                if rest.divides(&cand).is_some() {
                    found = Some(cand);
                    break 'search;
                }
            }
        }
        let Some(cand) = found else { return };
        let mut k = 0;
        while let Some(q) = rest.divides(&cand) {
            *rest = q;
            k += 1;
        }
        factors.push(Factor {
            poly: cand,
            multiplicity: k,
            kind: FactorKind::Quadratic,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn examples() {
        let f = m(&[&[2, 3, 3], &[1, 4, 3], &[1, 1, 1]]);
        let cp = char_poly(&f);
        assert_eq!(cp, IntPoly::from_i64(&[1, 5, -7, 1]));
        let fac = factor(&cp);
        assert_eq!(fac.to_string(), "(x-1)(x^2-6x-1)");
        assert_eq!(fac.expand(), cp);
        let id = factor(&char_poly(&IntMatrix::identity(3)));
        assert_eq!(id.to_string(), "(x-1)^3");
        let t = factor(&char_poly(&m(&[&[2, 1], &[1, 1]])));
        assert_eq!(t.to_string(), "x^2-3x+1");
        let z = factor(&char_poly(&m(&[&[0, 1], &[0, 0]])));
        assert_eq!(z.to_string(), "x^2");
    }

    #[test]
    fn roots_of_fixture() {
        let f = m(&[&[2, 3, 3], &[1, 4, 3], &[1, 1, 1]]);
        let roots = factor(&char_poly(&f)).real_roots();
        let strs: Vec<String> = roots.iter().map(|r| alloc::format!("{r}")).collect();
        assert_eq!(strs, ["1", "3+√10", "3-√10"]);
        let prod = roots[1].checked_mul(&roots[2]).unwrap();
        assert_eq!(prod, QuadraticNumber::int(-1));
    }

    #[test]
    fn quartic_split_and_cubic_residual() {
        // (x^2-3x+1)(x^2-6x-1)
        let p = mul(
            &IntPoly::from_i64(&[1, -3, 1]),
            &IntPoly::from_i64(&[-1, -6, 1]),
        );
        let f = factor(&p);
        assert_eq!(f.factors.len(), 2);
        assert!(f.factors.iter().all(|x| x.kind == FactorKind::Quadratic));
        assert_eq!(f.expand(), p);
        // x^3 - x - 1 has no rational root
        let c = factor(&IntPoly::from_i64(&[-1, -1, 0, 1]));
        assert_eq!(c.factors[0].kind, FactorKind::Other);
        assert!(c.residual().is_some());
    }

    proptest! {
        #[test]
        fn cayley_hamilton(n in 1usize..5, seed in proptest::collection::vec(-5i64..6, 16)) {
            let rows: Vec<Vec<i64>> = (0..n).map(|i| seed[i * n..i * n + n].to_vec()).collect();
            let mat = IntMatrix::from_rows(&rows).unwrap();
            let cp = char_poly(&mat);
            prop_assert_eq!(cp.eval_matrix(&mat), IntMatrix::zero(n));
            prop_assert_eq!(cp.degree(), n);
            prop_assert_eq!(-cp.coeff(n - 1), mat.trace());
            let sign = if n % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(cp.coeff(0) * sign, mat.det());
            prop_assert_eq!(factor(&cp).expand(), cp);
        }

        #[test]
        fn real_roots_are_roots(n in 1usize..5, seed in proptest::collection::vec(0i64..4, 16)) {
            let rows: Vec<Vec<i64>> = (0..n).map(|i| seed[i * n..i * n + n].to_vec()).collect();
            let cp = char_poly(&IntMatrix::from_rows(&rows).unwrap());
            for r in factor(&cp).real_roots() {
                prop_assert!(cp.eval_quadratic(&r).is_zero());
            }
        }
    }
}
