//! Exact arithmetic in `Q[chi]/I<K>`, `I<K> = (1 + chi + ... + chi^(2^K - 1))`.
//!
//! Elements are kept in canonical form: the unique lift of degree
//! `< 2^K - 1`, stored as integer numerators over a common denominator.
//! Equality of elements is coefficientwise equality of that lift.

mod cyclic;
mod linear;
mod projection;
mod scaled;
mod special;
mod text;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

pub(crate) use cyclic::Cyclic;
pub use linear::LinearMembership;
pub use projection::{crt_reconstruct, LevelProjection};
pub(crate) use scaled::Scaled;
pub use special::{
    element_f, element_f_k, element_f_prime, evaluate_at_f_squared, evaluate_with_one_minus_chi,
    FactorMode,
};

/// Largest supported level; `N = 2^K` coefficients must stay addressable.
pub const MAX_LEVEL: u32 = 20;

pub(crate) fn check_level(level: u32) -> Result<usize> {
    if level == 0 {
        return Err(Error::ZeroLevel);
    }
    if level > MAX_LEVEL {
        return Err(Error::LevelTooLarge(level));
    }
    Ok(1usize << level)
}

pub(crate) fn check_odd(k: u64) -> Result<()> {
    if k.is_multiple_of(2) {
        Err(Error::EvenK(k))
    } else {
        Ok(())
    }
}

/// Eigenvalue of the conjugation `chi -> chi^(N-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// The sign `(-1)^d`.
    pub fn of_parity(d: u32) -> Sign {
        if d.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
}

/// An element of `Q[chi]/I<K>` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    level: u32,
    data: Scaled,
}

impl RingElement {
    /// Canonical reduction of an arbitrary-length rational coefficient list.
    pub fn new(level: u32, raw: &[BigRational]) -> Result<Self> {
        let (numer, denom) = Scaled::from_rationals(raw);
        Self::from_scaled_poly(level, &numer, denom)
    }

    pub fn from_integers(level: u32, raw: &[i64]) -> Result<Self> {
        let numer: Vec<BigInt> = raw.iter().map(|&c| BigInt::from(c)).collect();
        Self::from_scaled_poly(level, &numer, BigInt::one())
    }

    pub fn from_int_polynomial(level: u32, p: &IntPolynomial) -> Result<Self> {
        Self::from_scaled_poly(level, p.coeffs(), BigInt::one())
    }

    /// The class of `numer / denom` for an integer polynomial of any degree.
    pub(crate) fn from_scaled_poly(level: u32, numer: &[BigInt], denom: BigInt) -> Result<Self> {
        let n = check_level(level)?;
        // chi^N = 1 modulo the norm element, then chi^(N-1) = -(1 + ... + chi^(N-2)).
        let mut folded = vec![BigInt::zero(); n];
        for (i, c) in numer.iter().enumerate() {
            folded[i % n] += c;
        }
        let last = folded.pop().unwrap();
        for c in folded.iter_mut() {
            *c -= &last;
        }
        Ok(RingElement { level, data: Scaled::new(folded, denom) })
    }

    pub(crate) fn from_data(level: u32, data: Scaled) -> Self {
        debug_assert_eq!(data.numer.len(), (1usize << level) - 1);
        RingElement { level, data }
    }

    pub(crate) fn from_cyclic(level: u32, c: Cyclic) -> Self {
        Self::from_data(level, c.into_scaled())
    }

    pub(crate) fn to_cyclic(&self) -> Cyclic {
        Cyclic::from_scaled(self.n(), &self.data)
    }

    pub fn zero(level: u32) -> Result<Self> {
        let n = check_level(level)?;
        Ok(RingElement { level, data: Scaled::zero(n - 1) })
    }

    pub fn one(level: u32) -> Result<Self> {
        Self::from_integers(level, &[1])
    }

    pub fn constant(level: u32, c: BigRational) -> Result<Self> {
        Self::new(level, &[c])
    }

    /// `chi^j`.
    pub fn chi_pow(level: u32, j: usize) -> Result<Self> {
        let mut raw = vec![BigInt::zero(); j + 1];
        raw[j] = BigInt::one();
        Self::from_scaled_poly(level, &raw, BigInt::one())
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// `N = 2^K`.
    pub fn n(&self) -> usize {
        1usize << self.level
    }

    /// Canonical coefficients of `chi^0 .. chi^(N-2)`.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.data.to_rationals()
    }

    pub fn coeff(&self, j: usize) -> BigRational {
        self.data.coeff(j)
    }

    /// Numerators over the common [`denominator`](Self::denominator).
    pub fn numerators(&self) -> &[BigInt] {
        &self.data.numer
    }

    pub fn denominator(&self) -> &BigInt {
        &self.data.denom
    }

    pub(crate) fn data(&self) -> &Scaled {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.data.is_integral()
    }

    /// Exact membership in `4 * Z[chi]/I<K>`: every canonical coefficient is
    /// an integer divisible by 4.
    pub fn is_in_4z(&self) -> bool {
        self.data.is_in_4z()
    }

    /// The canonical lift as an integer polynomial, when integral.
    pub fn to_int_polynomial(&self) -> Result<IntPolynomial> {
        if !self.is_integral() {
            return Err(Error::NotIntegral);
        }
        Ok(IntPolynomial::new(self.data.numer.clone()))
    }

    fn same_level(&self, other: &Self) -> Result<()> {
        if self.level != other.level {
            Err(Error::LevelMismatch(self.level, other.level))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_level(other)?;
        Ok(Self::from_data(self.level, self.data.combine(&other.data, false)))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_level(other)?;
        Ok(Self::from_data(self.level, self.data.combine(&other.data, true)))
    }

    /// Product via cyclic convolution of the lifts (`chi^N = 1` modulo the
    /// norm element), then canonical reduction.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_level(other)?;
        let n = self.n();
        let mut acc = vec![BigInt::zero(); n];
        for (i, a) in self.data.numer.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.data.numer.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                acc[(i + j) % n] += a * b;
            }
        }
        let denom = &self.data.denom * &other.data.denom;
        Self::from_scaled_poly(self.level, &acc, denom)
    }

    pub fn arith(&self, other: &Self, op: RingOp) -> Result<Self> {
        match op {
            RingOp::Add => self.checked_add(other),
            RingOp::Sub => self.checked_sub(other),
            RingOp::Mul => self.checked_mul(other),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_data(self.level, self.data.scale(c))
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        self.scale(&BigRational::from_integer(c.clone()))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.level).expect("valid level");
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse through the extended Euclidean algorithm of
    /// the lift against `1 + chi + ... + chi^(N-1)` over `Q`.
    pub fn invert(&self) -> Result<Self> {
        let n = self.n();
        let norm: Vec<BigRational> = vec![BigRational::one(); n];
        let lift = trim(self.coeffs());
        if lift.is_empty() {
            return Err(Error::NotInvertible(self.level));
        }
        let (mut r0, mut r1) = (norm, lift);
        let (mut s0, mut s1) = (Vec::<BigRational>::new(), vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = rat_div_rem(&r0, &r1);
            let s2 = rat_sub(&s0, &rat_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 = gcd(norm, lift) and r0 = s0 * lift modulo the norm element.
        if r0.len() != 1 {
            return Err(Error::NotInvertible(self.level));
        }
        let c = r0[0].clone();
        let inv: Vec<BigRational> = s0.iter().map(|s| s / &c).collect();
        Self::new(self.level, &inv)
    }

    /// Multiplies by `(1 - chi)^e`.
    pub fn mul_one_minus_chi_pow(&self, e: u32) -> Self {
        let mut c = self.to_cyclic();
        for _ in 0..e {
            c.mul_one_minus_chi();
        }
        Self::from_cyclic(self.level, c)
    }

    /// Divides by `(1 - chi)^e`, a unit of `Q[chi]/I<K>`.
    pub fn div_one_minus_chi_pow(&self, e: u32) -> Self {
        let mut c = self.to_cyclic();
        for _ in 0..e {
            c.div_one_minus_chi();
        }
        Self::from_cyclic(self.level, c)
    }

    /// The substitution `chi -> chi^(N-1)`.
    pub fn conjugate(&self) -> Self {
        let n = self.n();
        let mut v = vec![BigInt::zero(); n];
        for (i, c) in self.data.numer.iter().enumerate() {
            v[(n - i) % n] = c.clone();
        }
        Self::from_scaled_poly(self.level, &v, self.data.denom.clone())
            .expect("level already validated")
    }

    /// Membership in the `+1` or `-1` eigenspace of conjugation. For the
    /// plus sign and integral elements the evaluation at `chi = -1` must in
    /// addition be even.
    pub fn in_eigenspace(&self, sign: Sign) -> bool {
        let conj = self.conjugate();
        match sign {
            Sign::Minus => conj == -self,
            Sign::Plus => {
                if conj != *self {
                    return false;
                }
                if !self.is_integral() {
                    return true;
                }
                let at_minus_one: BigInt = self
                    .data
                    .numer
                    .iter()
                    .enumerate()
                    .map(|(i, c)| if i % 2 == 0 { c.clone() } else { -c })
                    .sum();
                (at_minus_one & BigInt::one()).is_zero()
            }
        }
    }

    /// The natural map `Q[chi]/I<K> -> Q[chi]/I<target>` for `target <= K`.
    pub fn reduce_to_level(&self, target: u32) -> Result<Self> {
        check_level(target)?;
        if target > self.level {
            return Err(Error::InvalidArgument(format!(
                "cannot reduce level {} to larger level {target}",
                self.level
            )));
        }
        Self::from_scaled_poly(target, &self.data.numer, self.data.denom.clone())
    }
}

impl Add for &RingElement {
    type Output = RingElement;
    /// Panics on a level mismatch; use [`RingElement::checked_add`] otherwise.
    fn add(self, rhs: &RingElement) -> RingElement {
        self.checked_add(rhs).expect("ring level mismatch")
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self.checked_sub(rhs).expect("ring level mismatch")
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.checked_mul(rhs).expect("ring level mismatch")
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement::from_data(self.level, self.data.neg())
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        -&self
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::write_element(f, self)
    }
}

// Dense rational polynomial helpers for the extended Euclidean algorithm.

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn rat_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
            .collect(),
    )
}

fn rat_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn rat_div_rem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = b.len() - 1;
    let lead = &b[db];
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (Vec::new(), trim(rem));
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for i in (0..quot.len()).rev() {
        let top = &rem[i + db];
        if top.is_zero() {
            continue;
        }
        let q = top / lead;
        for (j, d) in b.iter().enumerate() {
            rem[i + j] -= &q * d;
        }
        quot[i] = q;
    }
    rem.truncate(db);
    (trim(quot), trim(rem))
}

impl Sub for RingElement {
    type Output = RingElement;
    fn sub(self, rhs: RingElement) -> RingElement {
        &self - &rhs
    }
}

impl Add for RingElement {
    type Output = RingElement;
    fn add(self, rhs: RingElement) -> RingElement {
        &self + &rhs
    }
}

impl Mul for RingElement {
    type Output = RingElement;
    fn mul(self, rhs: RingElement) -> RingElement {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(e: &RingElement) -> Vec<i64> {
        e.to_int_polynomial()
            .map(|p| {
                let mut v: Vec<i64> = p.coeffs().iter().map(|c| c.try_into().unwrap()).collect();
                v.resize(e.n() - 1, 0);
                v
            })
            .unwrap()
    }

    #[test]
    fn canonical_reduction_examples() {
        assert_eq!(ints(&RingElement::from_integers(1, &[0, 1]).unwrap()), vec![-1]);
        assert_eq!(
            ints(&RingElement::from_integers(2, &[0, 0, 0, 1]).unwrap()),
            vec![-1, -1, -1]
        );
        assert!(RingElement::from_integers(2, &[1, 1, 1, 1]).unwrap().is_zero());
    }

    #[test]
    fn rejects_level_zero() {
        assert_eq!(RingElement::from_integers(0, &[1]), Err(Error::ZeroLevel));
    }

    #[test]
    fn level_mismatch_is_an_error() {
        let a = RingElement::one(2).unwrap();
        let b = RingElement::one(3).unwrap();
        assert_eq!(a.checked_mul(&b), Err(Error::LevelMismatch(2, 3)));
    }

    #[test]
    fn invert_one_minus_chi() {
        // (1 - chi)^(-1) = -(1/N)(1 + 2 chi + ... + N chi^(N-1)) at K = 3.
        let a = RingElement::from_integers(3, &[1, -1]).unwrap();
        let inv = a.invert().unwrap();
        let raw: Vec<BigRational> = (1..=8)
            .map(|i| BigRational::new(BigInt::from(-i), BigInt::from(8)))
            .collect();
        assert_eq!(inv, RingElement::new(3, &raw).unwrap());
        assert_eq!(&a * &inv, RingElement::one(3).unwrap());
    }

    #[test]
    fn invert_geometric_sum() {
        // (1 + chi + chi^2)^(-1) = 1 + chi^3 + ... + chi^(3(r-1)) with 3r = 1 mod 8.
        let a = RingElement::from_integers(3, &[1, 1, 1]).unwrap();
        let r = 3; // 3 * 3 = 9 = 1 mod 8
        let mut raw = vec![0i64; 3 * (r - 1) + 1];
        for j in 0..r {
            raw[3 * j] = 1;
        }
        assert_eq!(a.invert().unwrap(), RingElement::from_integers(3, &raw).unwrap());
        assert_eq!(RingElement::one(4).unwrap().invert().unwrap(), RingElement::one(4).unwrap());
    }

    #[test]
    fn non_invertible_is_reported() {
        // 1 + chi^2 is a factor of the norm element at K = 3.
        let a = RingElement::from_integers(3, &[1, 0, 1]).unwrap();
        assert_eq!(a.invert(), Err(Error::NotInvertible(3)));
        assert!(RingElement::zero(2).unwrap().invert().is_err());
    }

    #[test]
    fn division_by_one_minus_chi_matches_inverse() {
        for level in 1..=5 {
            let g = RingElement::from_integers(level, &[3, -1, 4, 1, -5, 9]).unwrap();
            let inv = RingElement::from_integers(level, &[1, -1]).unwrap().invert().unwrap();
            assert_eq!(g.div_one_minus_chi_pow(1), &g * &inv);
            assert_eq!(g.div_one_minus_chi_pow(3).mul_one_minus_chi_pow(3), g);
        }
    }

    #[test]
    fn eigenspaces() {
        let level = 4;
        let z = RingElement::from_integers(level, &[0, 1]).unwrap()
            - RingElement::chi_pow(level, 15).unwrap();
        assert!(z.in_eigenspace(Sign::Minus));
        assert!(!z.in_eigenspace(Sign::Plus));
        let two = RingElement::from_integers(level, &[2]).unwrap();
        assert!(two.in_eigenspace(Sign::Plus));
        assert!(!RingElement::one(level).unwrap().in_eigenspace(Sign::Plus));
    }

    #[test]
    fn reduce_to_smaller_level() {
        let g = RingElement::from_integers(3, &[1, 2, 3, 4, 5, 6, 7]).unwrap();
        let h = RingElement::from_integers(2, &[1, 2, 3, 4, 5, 6, 7]).unwrap();
        assert_eq!(g.reduce_to_level(2).unwrap(), h);
        assert!(g.reduce_to_level(4).is_err());
    }
}
