//! The valuations `w_l` on `Q[chi]/I<K>` and the membership criteria built
//! on them.
//!
//! `w_l(g)` is read off `pr_l(g)`: after clearing denominators with
//! `w = 2^a1 * u` (`u` odd) the integer representative `z` is expanded as
//! `sum_m z_m (1 - chi)^m`; then `w_l(g) = a2 - a1 + b / 2^l` where `a2` is
//! the 2-adic content of the `z_m` and `b` the first index where `z_m / 2^a2`
//! is odd.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::ring::{LevelProjection, RingElement};

/// A value `a + b/2^l` with `0 <= b < 2^l`, or infinity.
///
/// Finite values compare and test equal as rationals, so `1 + 0/2^0` equals
/// `1 + 0/2^3`.
#[derive(Clone, Copy, Debug)]
pub enum Valuation {
    Finite { a: i64, b: u64, level: u32 },
    Infinity,
}

impl Valuation {
    pub fn finite(a: i64, b: u64, level: u32) -> Result<Self> {
        if level > 62 || b >= (1u64 << level) {
            return Err(Error::InvalidArgument(format!("invalid valuation {a}+{b}/2^{level}")));
        }
        Ok(Valuation::Finite { a, b, level })
    }

    /// The integer `a` at level 0.
    pub fn integer(a: i64) -> Self {
        Valuation::Finite { a, b: 0, level: 0 }
    }

    /// `2 + K - l - 2^(-l) = (1 + K - l) + (2^l - 1)/2^l`.
    pub fn bound(level: u32, l: u32) -> Self {
        Valuation::Finite { a: 1 + level as i64 - l as i64, b: (1u64 << l) - 1, level: l }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinity)
    }

    /// `a * 2^target + b * 2^(target - level)`.
    fn scaled(a: i64, b: u64, level: u32, target: u32) -> i128 {
        ((a as i128) << target) + ((b as i128) << (target - level))
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        match *self {
            Valuation::Infinity => None,
            Valuation::Finite { a, b, level } => Some(BigRational::new(
                BigInt::from(Self::scaled(a, b, level, level)),
                BigInt::one() << level as usize,
            )),
        }
    }
}

impl PartialEq for Valuation {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Valuation {}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (*self, *other) {
            (Valuation::Infinity, Valuation::Infinity) => Ordering::Equal,
            (Valuation::Infinity, _) => Ordering::Greater,
            (_, Valuation::Infinity) => Ordering::Less,
            (
                Valuation::Finite { a: a1, b: b1, level: l1 },
                Valuation::Finite { a: a2, b: b2, level: l2 },
            ) => {
                let top = l1.max(l2);
                Self::scaled(a1, b1, l1, top).cmp(&Self::scaled(a2, b2, l2, top))
            }
        }
    }
}

impl std::ops::Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (
                Valuation::Finite { a: a1, b: b1, level: l1 },
                Valuation::Finite { a: a2, b: b2, level: l2 },
            ) => {
                let top = l1.max(l2);
                let total = Self::scaled(a1, b1, l1, top) + Self::scaled(a2, b2, l2, top);
                let unit = 1i128 << top;
                Valuation::Finite {
                    a: total.div_euclid(unit) as i64,
                    b: total.rem_euclid(unit) as u64,
                    level: top,
                }
            }
            _ => Valuation::Infinity,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Infinity => write!(f, "inf"),
            Valuation::Finite { a, b, level } => write!(f, "{a}+{b}/2^{level}"),
        }
    }
}

impl FromStr for Valuation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "inf" {
            return Ok(Valuation::Infinity);
        }
        let bad = || Error::Parse(format!("invalid valuation '{s}'"));
        // The integer part may itself carry a sign, so split at the last '+'.
        let (a, rest) = s.rsplit_once('+').ok_or_else(bad)?;
        let (b, l) = rest.split_once("/2^").ok_or_else(bad)?;
        Valuation::finite(
            a.parse().map_err(|_| bad())?,
            b.parse().map_err(|_| bad())?,
            l.parse().map_err(|_| bad())?,
        )
    }
}

/// Witnesses for `pr_l(g) = (2^a/u) ((1 - chi)^b v1 + 2 v2)` with `u` and
/// `v1(1)` odd.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub level: u32,
    pub a: i64,
    pub b: u64,
    pub u: BigInt,
    pub v1: IntPolynomial,
    pub v2: IntPolynomial,
}

impl NormalForm {
    pub fn value(&self) -> Valuation {
        Valuation::Finite { a: self.a, b: self.b, level: self.level }
    }

    /// Evaluates the right-hand side in `Q[chi]/(1 + chi^(2^l))`.
    pub fn reassemble(&self) -> Result<LevelProjection> {
        let inner = &(&IntPolynomial::one_minus_x_pow(self.b as u32) * &self.v1) + &self.v2.shl(1);
        let scale = if self.a >= 0 {
            BigRational::new(BigInt::one() << self.a as usize, self.u.clone())
        } else {
            BigRational::new(BigInt::one(), &self.u << (-self.a) as usize)
        };
        let coeffs: Vec<BigRational> = inner
            .coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()) * &scale)
            .collect();
        LevelProjection::new(self.level, &coeffs)
    }
}

/// How the common denominator `w` of a projection is chosen before
/// expanding.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClearDenominators {
    /// Least common multiple of the coefficient denominators.
    Lcm,
    /// Product of the coefficient denominators.
    Product,
}

fn two_adic(n: &BigInt) -> u64 {
    n.trailing_zeros().expect("non-zero")
}

/// Coefficients `z_m` of `z = sum_m z_m (1 - chi)^m`, by repeated synthetic
/// division by `1 - chi`.
pub fn one_minus_chi_expansion(z: &[BigInt]) -> Vec<BigInt> {
    let mut cur = z.to_vec();
    let mut out = Vec::with_capacity(z.len());
    while !cur.is_empty() {
        // cur = (x - 1) B + cur(1) = cur(1) + (1 - x)(-B)
        let d = cur.len() - 1;
        let mut quot = vec![BigInt::zero(); d];
        let mut carry = BigInt::zero();
        for i in (1..=d).rev() {
            carry += &cur[i];
            quot[i - 1] = -carry.clone();
        }
        carry += &cur[0];
        out.push(carry);
        cur = quot;
    }
    out
}

/// The normal form of a non-zero projection.
pub fn normal_form(p: &LevelProjection) -> Result<NormalForm> {
    normal_form_with(p, ClearDenominators::Lcm)
}

pub fn normal_form_with(p: &LevelProjection, strategy: ClearDenominators) -> Result<NormalForm> {
    if p.is_zero() {
        return Err(Error::ZeroProjection);
    }
    let w = match strategy {
        ClearDenominators::Lcm => p.denominator().clone(),
        ClearDenominators::Product => p.coeffs().iter().map(|c| c.denom().clone()).product(),
    };
    let a1 = two_adic(&w);
    let u = &w >> a1 as usize;
    let z: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| {
            let v = c * BigRational::from_integer(w.clone());
            debug_assert!(v.is_integer());
            v.to_integer()
        })
        .collect();
    let zm = one_minus_chi_expansion(&z);
    let a2 = zm.iter().filter(|c| !c.is_zero()).map(two_adic).min().expect("z != 0");
    let b = zm
        .iter()
        .position(|c| !c.is_zero() && two_adic(c) == a2)
        .expect("content attained");
    let unit = BigInt::one() << a2 as usize;
    let half = BigInt::one() << (a2 + 1) as usize;
    // v1 and v2 are polynomials in 1 - chi; rewrite them in chi.
    let one_minus = IntPolynomial::from_i64(&[1, -1]);
    let v1 = IntPolynomial::new(zm[b..].iter().map(|c| c / &unit).collect()).compose(&one_minus);
    let v2 = IntPolynomial::new(zm[..b].iter().map(|c| c / &half).collect()).compose(&one_minus);
    Ok(NormalForm {
        level: p.level(),
        a: a2 as i64 - a1 as i64,
        b: b as u64,
        u,
        v1,
        v2,
    })
}

/// `w_l` of a projection, through the 2-adic content in the `chi` basis
/// and a GF(2) transform for `b`.
///
/// Modulo 2, `(1 - chi)^m = sum_(i subset of m) chi^i`, so the residues of
/// `z_m / 2^a2` are the superset sums of the residues of `z_i / 2^a2`.
pub fn valuation_of(p: &LevelProjection) -> Valuation {
    if p.is_zero() {
        return Valuation::Infinity;
    }
    let a1 = two_adic(p.denominator());
    let z = p.numerators();
    let a2 = z.iter().filter(|c| !c.is_zero()).map(two_adic).min().expect("non-zero");
    let mut bits: Vec<u8> = z.iter().map(|c| u8::from(c.bit(a2))).collect();
    let len = bits.len();
    let mut step = 1;
    while step < len {
        for i in 0..len {
            if i & step == 0 {
                bits[i] ^= bits[i | step];
            }
        }
        step <<= 1;
    }
    let b = bits.iter().position(|&x| x == 1).expect("odd coefficient exists");
    Valuation::Finite { a: a2 as i64 - a1 as i64, b: b as u64, level: p.level() }
}

/// `w_l(g)` for `0 <= l <= K - 1`.
pub fn w_l(g: &RingElement, l: u32) -> Result<Valuation> {
    Ok(valuation_of(&g.project(l)?))
}

/// `w_l(g)` through [`normal_form`]; independent of [`w_l`].
pub fn w_l_normal_form(g: &RingElement, l: u32) -> Result<Valuation> {
    let p = g.project(l)?;
    if p.is_zero() {
        return Ok(Valuation::Infinity);
    }
    Ok(normal_form(&p)?.value())
}

/// All `w_0(g) .. w_(K-1)(g)`.
pub fn w_all(g: &RingElement) -> Vec<Valuation> {
    g.projections().iter().map(valuation_of).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SufficientVerdict {
    ProvesMembership,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NecessaryVerdict {
    ProvesNonMembership,
    Inconclusive,
}

fn projections_in_4z(g: &RingElement) -> bool {
    g.projections().iter().all(LevelProjection::is_in_4z)
}

/// Sufficient criterion: every projection lies in `4 Z[chi]` and
/// `w_l(g) >= 2 + K - l - 2^(-l)` at every level.
pub fn criterion_sufficient(g: &RingElement) -> SufficientVerdict {
    if !projections_in_4z(g) {
        return SufficientVerdict::Inconclusive;
    }
    let level = g.level();
    let holds = w_all(g)
        .iter()
        .enumerate()
        .all(|(l, w)| *w >= Valuation::bound(level, l as u32));
    if holds {
        SufficientVerdict::ProvesMembership
    } else {
        SufficientVerdict::Inconclusive
    }
}

fn necessary_pattern(level: u32, wg: &[Valuation], wh: &[Valuation], l_star: u32) -> bool {
    (0..level).all(|l| {
        let sum = wg[l as usize] + wh[l as usize];
        let bound = Valuation::bound(level, l);
        if l == l_star {
            sum < bound
        } else {
            sum >= bound
        }
    })
}

/// Necessary criterion with an integral witness `h`: every projection of
/// `g` lies in `4 Z[chi]`, `w_l(g) + w_l(h)` reaches the bound at every
/// `l != l_star` and falls short at `l_star`.
pub fn criterion_necessary(g: &RingElement, h: &RingElement, l_star: u32) -> Result<NecessaryVerdict> {
    if g.level() != h.level() {
        return Err(Error::LevelMismatch(g.level(), h.level()));
    }
    if !h.is_integral() {
        return Err(Error::NotIntegral);
    }
    if l_star >= g.level() {
        return Err(Error::ProjectionOutOfRange { l: l_star, level: g.level() });
    }
    if !projections_in_4z(g) {
        return Ok(NecessaryVerdict::Inconclusive);
    }
    if necessary_pattern(g.level(), &w_all(g), &w_all(h), l_star) {
        Ok(NecessaryVerdict::ProvesNonMembership)
    } else {
        Ok(NecessaryVerdict::Inconclusive)
    }
}

/// Searches the catalogue `h = (1 - chi)^j`, `0 <= j <= 2^K`, and every
/// `l_star` for a witness of non-membership. Returns the first `(j, l_star)`
/// found. `None` does not imply membership.
pub fn criterion_necessary_auto(g: &RingElement) -> Option<(u64, u32)> {
    if !projections_in_4z(g) {
        return None;
    }
    let level = g.level();
    let wg = w_all(g);
    // w_l((1 - chi)^j) computed from the projections of the powers.
    let mut powers: Vec<LevelProjection> = (0..level)
        .map(|l| LevelProjection::from_integers(l, &[1]).expect("valid level"))
        .collect();
    let factors: Vec<LevelProjection> = (0..level)
        .map(|l| LevelProjection::from_integers(l, &[1, -1]).expect("valid level"))
        .collect();
    for j in 0..=(1u64 << level) {
        let wh: Vec<Valuation> = powers.iter().map(valuation_of).collect();
        for l_star in 0..level {
            if necessary_pattern(level, &wg, &wh, l_star) {
                return Some((j, l_star));
            }
        }
        for (p, f) in powers.iter_mut().zip(&factors) {
            *p = &*p * f;
        }
    }
    None
}

/// `x_0 = -chi`, `x_m = chi^(2^(m-1)) + 2 x_(m-1) (1 + chi^(2^(m-1)) + x_(m-1))`,
/// satisfying `(1 - chi)^(2^m) = 2 x_m + 1 + chi^(2^m)`.
pub fn x_polynomial(m: u32) -> IntPolynomial {
    let mut x = IntPolynomial::from_i64(&[0, -1]);
    for i in 1..=m {
        let shift = IntPolynomial::monomial(1usize << (i - 1), BigInt::one());
        let inner = &(&IntPolynomial::one() + &shift) + &x;
        x = &shift + &(&x * &inner).shl(1);
    }
    x
}

/// Least `c <= limit` with `g (1 - chi)^c` in `4 Z[chi]/I<K>`.
pub fn min_one_minus_chi_exponent(g: &RingElement, limit: u32) -> Option<u32> {
    let mut cur = g.clone();
    for c in 0..=limit {
        if cur.is_in_4z() {
            return Some(c);
        }
        cur = cur.mul_one_minus_chi_pow(1);
    }
    None
}

/// `v_2` of a non-zero rational.
pub fn two_adic_rational(q: &BigRational) -> Option<i64> {
    if q.is_zero() {
        return None;
    }
    let num = q.numer().abs();
    let den = q.denom().abs();
    Some(two_adic(&num) as i64 - two_adic(&den) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{element_f, element_f_prime};
    use num_integer::Integer;

    fn v(a: i64, b: u64, level: u32) -> Valuation {
        Valuation::finite(a, b, level).unwrap()
    }

    #[test]
    fn ordering_and_addition() {
        assert_eq!(v(1, 0, 0), v(1, 0, 3));
        assert!(v(0, 3, 2) < v(1, 0, 0));
        assert!(v(5, 0, 0) < Valuation::Infinity);
        assert_eq!(v(0, 3, 2) + v(0, 1, 1), v(1, 1, 2));
        assert_eq!(v(-1, 1, 1) + v(0, 1, 1), v(0, 0, 1));
        assert!((v(0, 1, 1) + Valuation::Infinity).is_infinite());
        assert_eq!(Valuation::bound(3, 0), v(4, 0, 0));
        assert_eq!(Valuation::bound(3, 2), v(2, 3, 2));
    }

    #[test]
    fn text_form() {
        assert_eq!(v(2, 3, 2).to_string(), "2+3/2^2");
        assert_eq!("-1+1/2^1".parse::<Valuation>().unwrap(), v(-1, 1, 1));
        assert!("inf".parse::<Valuation>().unwrap().is_infinite());
        assert!("1+4/2^2".parse::<Valuation>().is_err());
    }

    #[test]
    fn expansion_round_trip() {
        let z: Vec<BigInt> = [3, -1, 4, 1].iter().map(|&c| BigInt::from(c)).collect();
        let zm = one_minus_chi_expansion(&z);
        let mut back = IntPolynomial::zero();
        for (m, c) in zm.iter().enumerate() {
            back = &back + &IntPolynomial::one_minus_x_pow(m as u32).scale(c);
        }
        assert_eq!(back, IntPolynomial::new(z));
    }

    #[test]
    fn examples_small() {
        for level in 2..=5 {
            let f = element_f(level).unwrap();
            let one = RingElement::one(level).unwrap();
            for l in 0..level {
                let fm1 = &f - &one;
                let expected = v(0, (1 << l) - 1, l);
                assert_eq!(w_l(&fm1, l).unwrap(), expected);
                assert_eq!(w_l_normal_form(&fm1, l).unwrap(), expected);
                assert_eq!(w_l(&element_f_prime(level, 3).unwrap(), l).unwrap(), v(0, 0, 0));
            }
        }
    }

    #[test]
    fn normal_form_witnesses() {
        let level = 4;
        let f = element_f(level).unwrap();
        let g = &(&f * &f) - &RingElement::from_integers(level, &[3, 0, 1]).unwrap();
        for l in 0..level {
            let p = g.project(l).unwrap();
            let a = normal_form_with(&p, ClearDenominators::Lcm).unwrap();
            let b = normal_form_with(&p, ClearDenominators::Product).unwrap();
            assert_eq!((a.a, a.b), (b.a, b.b));
            assert_eq!(a.reassemble().unwrap(), p);
            assert!(a.u.is_odd());
            assert!(a.v1.eval(&BigInt::one()).is_odd());
        }
    }

    #[test]
    fn x_identity() {
        for k in 0..=5u32 {
            let lhs = IntPolynomial::one_minus_x_pow(1 << k);
            let rhs = &(&x_polynomial(k).shl(1) + &IntPolynomial::one())
                + &IntPolynomial::monomial(1 << k, BigInt::one());
            assert_eq!(lhs, rhs);
        }
    }
}
