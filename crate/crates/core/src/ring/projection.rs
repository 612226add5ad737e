use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scaled::Scaled;
use super::{check_level, RingElement};
use crate::error::{Error, Result};

/// An element of `Q[chi]/(1 + chi^(2^l))`, stored as the unique lift of
/// degree `< 2^l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LevelProjection {
    level: u32,
    data: Scaled,
}

impl LevelProjection {
    /// Reduces an arbitrary rational coefficient list modulo `1 + chi^(2^l)`.
    pub fn new(level: u32, raw: &[BigRational]) -> Result<Self> {
        let (numer, denom) = Scaled::from_rationals(raw);
        Self::from_scaled_poly(level, &numer, denom)
    }

    pub fn from_integers(level: u32, raw: &[i64]) -> Result<Self> {
        let numer: Vec<BigInt> = raw.iter().map(|&c| BigInt::from(c)).collect();
        Self::from_scaled_poly(level, &numer, BigInt::one())
    }

    pub(crate) fn from_scaled_poly(level: u32, numer: &[BigInt], denom: BigInt) -> Result<Self> {
        if level > super::MAX_LEVEL {
            return Err(Error::LevelTooLarge(level));
        }
        let m = 1usize << level;
        let mut folded = vec![BigInt::zero(); m];
        for (i, c) in numer.iter().enumerate() {
            // chi^m = -1
            if (i / m).is_multiple_of(2) {
                folded[i % m] += c;
            } else {
                folded[i % m] -= c;
            }
        }
        Ok(LevelProjection { level, data: Scaled::new(folded, denom) })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Coefficients of `chi^0 .. chi^(2^l - 1)`.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.data.to_rationals()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.data.numer
    }

    pub fn denominator(&self) -> &BigInt {
        &self.data.denom
    }

    pub fn is_zero(&self) -> bool {
        self.data.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.data.is_integral()
    }

    pub fn is_in_4z(&self) -> bool {
        self.data.is_in_4z()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        LevelProjection { level: self.level, data: self.data.scale(c) }
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
        Ok(LevelProjection { level: self.level, data: self.data.combine(&other.data, false) })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_level(other)?;
        Ok(LevelProjection { level: self.level, data: self.data.combine(&other.data, true) })
    }

    /// Negacyclic convolution.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_level(other)?;
        let m = self.data.numer.len();
        let mut acc = vec![BigInt::zero(); m];
        for (i, a) in self.data.numer.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.data.numer.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let p = a * b;
                if i + j < m {
                    acc[i + j] += p;
                } else {
                    acc[i + j - m] -= p;
                }
            }
        }
        Ok(LevelProjection {
            level: self.level,
            data: Scaled::new(acc, &self.data.denom * &other.data.denom),
        })
    }
}

impl Add for &LevelProjection {
    type Output = LevelProjection;
    fn add(self, rhs: &LevelProjection) -> LevelProjection {
        self.checked_add(rhs).expect("projection level mismatch")
    }
}

impl Sub for &LevelProjection {
    type Output = LevelProjection;
    fn sub(self, rhs: &LevelProjection) -> LevelProjection {
        self.checked_sub(rhs).expect("projection level mismatch")
    }
}

impl Mul for &LevelProjection {
    type Output = LevelProjection;
    fn mul(self, rhs: &LevelProjection) -> LevelProjection {
        self.checked_mul(rhs).expect("projection level mismatch")
    }
}

impl Neg for &LevelProjection {
    type Output = LevelProjection;
    fn neg(self) -> LevelProjection {
        LevelProjection { level: self.level, data: self.data.neg() }
    }
}

impl fmt::Display for LevelProjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l={}; ", self.level)?;
        super::text::write_coeffs(f, &self.data)
    }
}

impl RingElement {
    /// `pr_l`: reduction of the canonical lift modulo `1 + chi^(2^l)`,
    /// defined for `0 <= l <= K - 1`.
    pub fn project(&self, l: u32) -> Result<LevelProjection> {
        if l >= self.level() {
            return Err(Error::ProjectionOutOfRange { l, level: self.level() });
        }
        LevelProjection::from_scaled_poly(l, self.numerators(), self.denominator().clone())
    }

    /// All projections `pr_0 .. pr_(K-1)`.
    pub fn projections(&self) -> Vec<LevelProjection> {
        (0..self.level()).map(|l| self.project(l).expect("l < K")).collect()
    }
}

/// Rebuilds `g` from `pr_0(g) .. pr_(K-1)(g)` through
/// `g = sum_l 2^(l-K) g_l (1 - chi) prod_(r != l) (1 + chi^(2^r))`.
pub fn crt_reconstruct(parts: &[LevelProjection]) -> Result<RingElement> {
    let level = parts.len() as u32;
    let n = check_level(level)?;
    for (l, p) in parts.iter().enumerate() {
        if p.level() != l as u32 {
            return Err(Error::LevelMismatch(l as u32, p.level()));
        }
    }
    let mut total = RingElement::zero(level)?;
    for (l, part) in parts.iter().enumerate() {
        if part.is_zero() {
            continue;
        }
        // (1 - chi) * prod_(r != l) (1 + chi^(2^r)), as a dense 0/±1 polynomial.
        let mut factor = vec![BigInt::one(), -BigInt::one()];
        for r in 0..level as usize {
            if r == l {
                continue;
            }
            let shift = 1usize << r;
            let mut next = vec![BigInt::zero(); factor.len() + shift];
            for (i, c) in factor.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                next[i] += c;
                next[i + shift] += c;
            }
            factor = next;
        }
        let mut prod = vec![BigInt::zero(); n];
        for (i, a) in part.numerators().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in factor.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let idx = (i + j) % n;
                prod[idx] += a * b;
            }
        }
        let denom = part.denominator() << (level as usize - l);
        let term = RingElement::from_scaled_poly(level, &prod, denom)?;
        total = &total + &term;
    }
    Ok(total)
}
