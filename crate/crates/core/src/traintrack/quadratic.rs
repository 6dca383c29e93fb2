//! Exact arithmetic in real quadratic fields `Q(√d)`.

use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{to_exact_string, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuadraticError {
    #[error("radicand must be positive, got {0}")]
    BadRadicand(BigInt),
    #[error("mixed fields: sqrt({0}) and sqrt({1})")]
    MixedField(BigInt, BigInt),
    #[error("division by zero")]
    DivisionByZero,
}

/// `a + b·√d` with `d` squarefree. Rationals are stored with `b = 0, d = 1`,
/// so derived equality is value equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    a: Rational,
    b: Rational,
    d: BigInt,
}

/// Writes `n = s²·d` with `d` squarefree and returns `(s, d)`.
pub fn squarefree_split(n: &BigInt) -> (BigInt, BigInt) {
    let mut rest = n.clone();
    let mut s = BigInt::one();
    let mut d = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        for _ in 0..e / 2 {
            s *= &p;
        }
        if e % 2 == 1 {
            d *= &p;
        }
        p += 1;
    }
    (s, d * rest)
}

impl QuadraticNumber {
    /// `a + b·√d` for any `d >= 1`; square factors of `d` are absorbed into `b`.
    pub fn new(a: Rational, b: Rational, d: BigInt) -> Result<Self, QuadraticError> {
        if !d.is_positive() {
            return Err(QuadraticError::BadRadicand(d));
        }
        let (s, d) = squarefree_split(&d);
        Ok(Self::canon(a, b * Rational::from_integer(s), d))
    }

    fn canon(a: Rational, b: Rational, d: BigInt) -> Self {
        if d.is_one() {
            QuadraticNumber {
                a: a + b,
                b: Rational::zero(),
                d,
            }
        } else if b.is_zero() {
            QuadraticNumber {
                a,
                b,
                d: BigInt::one(),
            }
        } else {
            QuadraticNumber { a, b, d }
        }
    }

    pub fn rational(q: Rational) -> Self {
        QuadraticNumber {
            a: q,
            b: Rational::zero(),
            d: BigInt::one(),
        }
    }

    pub fn int(v: i64) -> Self {
        Self::rational(Rational::from_integer(v.into()))
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign: compare `a²` with `b²d` when `a` and `b` disagree.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        match (sa, sb) {
            (x, Ordering::Equal) => x,
            (Ordering::Equal, y) => y,
            (x, y) if x == y => x,
            (x, y) => {
                let a2 = &self.a * &self.a;
                let b2d = &self.b * &self.b * Rational::from_integer(self.d.clone());
                match a2.cmp(&b2d) {
                    Ordering::Greater => x,
                    Ordering::Less => y,
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    /// Field `d` shared by `self` and `o`; rationals fit any field.
    pub fn common_d(&self, o: &Self) -> Result<BigInt, QuadraticError> {
        match (self.is_rational(), o.is_rational()) {
            (true, _) => Ok(o.d.clone()),
            (_, true) => Ok(self.d.clone()),
            _ if self.d == o.d => Ok(self.d.clone()),
            _ => Err(QuadraticError::MixedField(self.d.clone(), o.d.clone())),
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, QuadraticError> {
        let d = self.common_d(o)?;
        Ok(Self::canon(&self.a + &o.a, &self.b + &o.b, d))
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self, QuadraticError> {
        self.checked_add(&o.neg())
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, QuadraticError> {
        let d = self.common_d(o)?;
        let dq = Rational::from_integer(d.clone());
        Ok(Self::canon(
            &self.a * &o.a + &self.b * &o.b * dq,
            &self.a * &o.b + &self.b * &o.a,
            d,
        ))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, QuadraticError> {
        let n = o.norm();
        if n.is_zero() {
            return Err(QuadraticError::DivisionByZero);
        }
        let q = self.checked_mul(&o.conjugate())?;
        Ok(Self::canon(q.a / &n, q.b / &n, q.d))
    }

    pub fn neg(&self) -> Self {
        QuadraticNumber {
            a: -&self.a,
            b: -&self.b,
            d: self.d.clone(),
        }
    }

    pub fn conjugate(&self) -> Self {
        QuadraticNumber {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d.clone(),
        }
    }

    /// `a² - b²d`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(self.d.clone())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::int(1);
        for _ in 0..k {
            acc = acc.checked_mul(self).expect("same field");
        }
        acc
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::canon(&self.a * q, &self.b * q, self.d.clone())
    }

    pub fn from_int_big(v: BigInt) -> Self {
        Self::rational(Rational::from_integer(v))
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return f.write_str(&to_exact_string(&self.a));
        }
        let den = self.a.denom().lcm(self.b.denom());
        let a = (&self.a * Rational::from_integer(den.clone())).to_integer();
        let b = (&self.b * Rational::from_integer(den.clone())).to_integer();
        let mut s = alloc::string::String::new();
        if !a.is_zero() {
            s += &alloc::format!("{a}");
            s += if b.is_negative() { "-" } else { "+" };
        } else if b.is_negative() {
            s += "-";
        }
        let bm = b.abs();
        if !bm.is_one() {
            s += &alloc::format!("{bm}");
        }
        s += &alloc::format!("√{}", self.d);
        if den.is_one() {
            f.write_str(&s)
        } else if a.is_zero() && !b.is_negative() {
            write!(f, "{s}/{den}")
        } else {
            write!(f, "({s})/{den}")
        }
    }
}
