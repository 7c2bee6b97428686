//! The coefficient ring `Q_{2m} = Z[al]/(al^2)` and the integer constants
//! `d_i` and `gamma_l` that shape the formal group law.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An element `a + b*al` of `Q_{2m}`, where `al^2 = 0` and `deg al = -2m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Q2mScalar {
    a: BigInt,
    b: BigInt,
    m: u32,
}

impl Q2mScalar {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, m: u32) -> Self {
        Self {
            a: a.into(),
            b: b.into(),
            m,
        }
    }

    pub fn from_int(a: impl Into<BigInt>, m: u32) -> Self {
        Self::new(a, 0, m)
    }

    pub fn zero(m: u32) -> Self {
        Self::new(0, 0, m)
    }

    pub fn one(m: u32) -> Self {
        Self::new(1, 0, m)
    }

    /// The nilpotent generator `al`.
    pub fn alpha(m: u32) -> Self {
        Self::new(0, 1, m)
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.m == other.m {
            Ok(())
        } else {
            Err(Error::MixedParameter {
                left: self.m,
                right: other.m,
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::new(&self.a + &other.a, &self.b + &other.b, self.m))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::new(&self.a - &other.a, &self.b - &other.b, self.m))
    }

    /// `(a1 + b1 al)(a2 + b2 al) = a1 a2 + (a1 b2 + a2 b1) al`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let b = if self.b.is_zero() {
            &self.a * &other.b
        } else if other.b.is_zero() {
            &self.b * &other.a
        } else {
            &self.a * &other.b + &self.b * &other.a
        };
        Self::new(&self.a * &other.a, b, self.m)
    }

    pub(crate) fn add_assign_unchecked(&mut self, other: &Self) {
        self.a += &other.a;
        self.b += &other.b;
    }

    /// Inverse of a unit; the units are exactly the elements with `a = +-1`.
    pub fn inverse(&self) -> Result<Self> {
        if self.a.abs().is_one() {
            // (a + b al)^{-1} = a - b al when a^2 = 1
            Ok(Self::new(self.a.clone(), -&self.b, self.m))
        } else {
            Err(Error::NonUnitConstant(self.to_string()))
        }
    }

    /// Keeps only the `al^0` part.
    pub fn alpha_free(&self) -> Self {
        Self::new(self.a.clone(), 0, self.m)
    }
}

impl fmt::Display for Q2mScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let al = |b: &BigInt| {
            if b.abs().is_one() {
                "al".to_string()
            } else {
                format!("{}*al", b.abs())
            }
        };
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => {
                let sign = if self.b.is_negative() { "-" } else { "" };
                write!(f, "{sign}{}", al(&self.b))
            }
            (false, false) => {
                let sign = if self.b.is_negative() { "-" } else { "+" };
                write!(f, "{}{sign}{}", self.a, al(&self.b))
            }
        }
    }
}

macro_rules! forward_scalar_op {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&Q2mScalar> for &Q2mScalar {
            type Output = Q2mScalar;
            fn $method(self, rhs: &Q2mScalar) -> Q2mScalar {
                self.$try(rhs).expect("Q2mScalar arithmetic")
            }
        }
        impl $tr<Q2mScalar> for Q2mScalar {
            type Output = Q2mScalar;
            fn $method(self, rhs: Q2mScalar) -> Q2mScalar {
                (&self).$try(&rhs).expect("Q2mScalar arithmetic")
            }
        }
    };
}

forward_scalar_op!(Add, add, try_add);
forward_scalar_op!(Sub, sub, try_sub);
forward_scalar_op!(Mul, mul, try_mul);

impl AddAssign<&Q2mScalar> for Q2mScalar {
    fn add_assign(&mut self, rhs: &Q2mScalar) {
        self.check(rhs).expect("Q2mScalar arithmetic");
        self.add_assign_unchecked(rhs);
    }
}

impl Neg for &Q2mScalar {
    type Output = Q2mScalar;
    fn neg(self) -> Q2mScalar {
        Q2mScalar::new(-&self.a, -&self.b, self.m)
    }
}

impl Neg for Q2mScalar {
    type Output = Q2mScalar;
    fn neg(self) -> Q2mScalar {
        -&self
    }
}

/// Returns `p` when `i + 1 = p^e` for a prime `p`, and `1` otherwise.
pub fn nontriviality_index(i: u64) -> u64 {
    assert!(i >= 1, "nontriviality_index is defined for i >= 1");
    let mut n = i + 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            return if n == 1 { p } else { 1 };
        }
        p += 1;
    }
    // n itself is prime
    n
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc *= n - j;
        acc /= j + 1;
    }
    acc
}

/// `d_{2m}` together with `gamma_0 .. gamma_{2m-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaTable {
    m: u32,
    d: BigInt,
    gamma: Vec<BigInt>,
}

impl GammaTable {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    /// `gamma_l` for `0 <= l <= 2m-1`; zero outside that range.
    pub fn gamma(&self, l: i64) -> BigInt {
        usize::try_from(l)
            .ok()
            .and_then(|l| self.gamma.get(l).cloned())
            .unwrap_or_default()
    }

    pub fn values(&self) -> &[BigInt] {
        &self.gamma
    }

    /// `sum_l (-1)^l gamma_l`, which vanishes.
    pub fn alternating_sum(&self) -> BigInt {
        self.gamma
            .iter()
            .enumerate()
            .map(|(l, g)| if l % 2 == 0 { g.clone() } else { -g })
            .sum()
    }

    pub fn is_palindromic(&self) -> bool {
        let n = self.gamma.len();
        (1..n).all(|l| self.gamma[l] == self.gamma[n - l])
    }
}

fn exact_div(index: usize, dividend: BigInt, divisor: &BigInt) -> Result<BigInt> {
    let (q, r) = dividend.div_rem(divisor);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::Divisibility {
            index,
            dividend: dividend.to_string(),
            divisor: divisor.to_string(),
        })
    }
}

/// Builds `gamma_l = (C(2m,l) - (-1)^l) / d_{2m}` and `gamma_0 = (2m+1)/d_{2m}`,
/// checking every division and the vanishing alternating sum.
pub fn gamma_table(m: u32) -> Result<GammaTable> {
    if m == 0 {
        return Err(Error::ZeroParameter);
    }
    let n = 2 * u64::from(m);
    let d = BigInt::from(nontriviality_index(n));
    let mut gamma = Vec::with_capacity(n as usize);
    gamma.push(exact_div(0, BigInt::from(n + 1), &d)?);
    for l in 1..n {
        let sign = if l % 2 == 0 { 1 } else { -1 };
        gamma.push(exact_div(l as usize, binomial(n, l) - sign, &d)?);
    }
    let table = GammaTable { m, d, gamma };
    let alt = table.alternating_sum();
    if !alt.is_zero() {
        return Err(Error::Divisibility {
            index: 0,
            dividend: format!("alternating sum {alt}"),
            divisor: table.d.to_string(),
        });
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn nontriviality_examples() {
        assert_eq!(nontriviality_index(2), 3);
        assert_eq!(nontriviality_index(5), 1);
        assert_eq!(nontriviality_index(8), 3);
        assert_eq!(nontriviality_index(1), 2);
        assert_eq!(nontriviality_index(6), 7);
    }

    #[test]
    fn nontriviality_matches_factorization() {
        fn factor(mut n: u64) -> Vec<u64> {
            let mut out = Vec::new();
            let mut p = 2;
            while n > 1 {
                if n % p == 0 {
                    out.push(p);
                    n /= p;
                } else {
                    p += 1;
                }
            }
            out
        }
        for i in 1..=10_000u64 {
            let f = factor(i + 1);
            let expected = if f.iter().all(|&p| p == f[0]) { f[0] } else { 1 };
            assert_eq!(nontriviality_index(i), expected, "i={i}");
        }
    }

    #[test]
    fn gamma_examples() {
        let g1 = gamma_table(1).unwrap();
        assert_eq!(g1.d(), &BigInt::from(3));
        assert_eq!(g1.values(), ints(&[1, 1]).as_slice());
        let g2 = gamma_table(2).unwrap();
        assert_eq!(g2.d(), &BigInt::from(5));
        assert_eq!(g2.values(), ints(&[1, 1, 1, 1]).as_slice());
        // C(6,l) -/+ 1 over 7: 7/7, 14/7, 21/7, 14/7, 7/7
        let g3 = gamma_table(3).unwrap();
        assert_eq!(g3.d(), &BigInt::from(7));
        assert_eq!(g3.values(), ints(&[1, 1, 2, 3, 2, 1]).as_slice());
        // d_8 = 3 since 9 = 3^2
        let g4 = gamma_table(4).unwrap();
        assert_eq!(g4.values(), ints(&[3, 3, 9, 19, 23, 19, 9, 3]).as_slice());
    }

    #[test]
    fn gamma_invariants_up_to_eight() {
        for m in 1..=8 {
            let g = gamma_table(m).unwrap();
            assert!(g.is_palindromic(), "m={m}");
            assert!(g.alternating_sum().is_zero(), "m={m}");
            assert_eq!(g.values().len(), 2 * m as usize);
        }
    }

    #[test]
    fn gamma_rejects_zero() {
        assert_eq!(gamma_table(0), Err(Error::ZeroParameter));
    }

    #[test]
    fn scalar_examples() {
        let m = 1;
        let x = Q2mScalar::new(1, 2, m) * Q2mScalar::new(3, 1, m);
        assert_eq!(x, Q2mScalar::new(3, 7, m));
        let y = Q2mScalar::new(0, 5, m) * Q2mScalar::new(0, 7, m);
        assert!(y.is_zero());
        let z = Q2mScalar::new(-4, 9, m);
        assert_eq!(Q2mScalar::one(m) * z.clone(), z);
    }

    #[test]
    fn mixed_parameter_is_an_error() {
        let a = Q2mScalar::one(1);
        let b = Q2mScalar::one(2);
        assert_eq!(
            a.try_mul(&b),
            Err(Error::MixedParameter { left: 1, right: 2 })
        );
        assert!(a.try_add(&b).is_err());
    }

    #[test]
    fn unit_inverse() {
        let u = Q2mScalar::new(-1, 3, 2);
        assert!(u.try_mul(&u.inverse().unwrap()).unwrap().is_one());
        assert!(Q2mScalar::new(2, 0, 2).inverse().is_err());
    }
}
