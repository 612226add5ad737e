//! The elements `f`, `f_k`, `f'_k` and the evaluations
//! `8 f'_k f^m q(f^2)` and `8 f'_k (f^2 - 1) q(f^2)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::cyclic::Cyclic;
use super::{check_level, check_odd, RingElement};
use crate::error::Result;
use crate::poly::IntPolynomial;

/// `1 + chi^k` divided by `1 - chi^k`.
fn quotient_by_one_minus_chi_pow(level: u32, numer: &[i64], k: u64) -> Result<RingElement> {
    let n = check_level(level)?;
    let poly: Vec<BigInt> = numer.iter().map(|&c| BigInt::from(c)).collect();
    let mut c = Cyclic::from_poly(n, &poly, BigInt::one());
    c.div_one_minus_chi_pow(k);
    Ok(RingElement::from_cyclic(level, c))
}

/// `f = (1 + chi)/(1 - chi)`.
pub fn element_f(level: u32) -> Result<RingElement> {
    quotient_by_one_minus_chi_pow(level, &[1, 1], 1)
}

/// `f_k = (1 + chi^k)/(1 - chi^k)` for odd `k`.
pub fn element_f_k(level: u32, k: u64) -> Result<RingElement> {
    check_odd(k)?;
    let mut numer = vec![0i64; k as usize + 1];
    numer[0] = 1;
    numer[k as usize] += 1;
    quotient_by_one_minus_chi_pow(level, &numer, k)
}

/// `f'_k = (1 - chi + ... + chi^(k-1)) / (1 + chi + ... + chi^(k-1))`, the
/// integral element with `f_k = f * f'_k`.
pub fn element_f_prime(level: u32, k: u64) -> Result<RingElement> {
    check_odd(k)?;
    // Division by 1 + ... + chi^(k-1) is multiplication by 1 - chi followed
    // by division by 1 - chi^k.
    let alt = alternating_sum(k);
    let numer = &alt * &IntPolynomial::from_i64(&[1, -1]);
    let n = check_level(level)?;
    let mut c = Cyclic::from_poly(n, numer.coeffs(), BigInt::one());
    c.div_one_minus_chi_pow(k);
    Ok(RingElement::from_cyclic(level, c))
}

/// `1 - x + x^2 - ... + x^(k-1)`.
fn alternating_sum(k: u64) -> IntPolynomial {
    IntPolynomial::new(
        (0..k)
            .map(|j| if j % 2 == 0 { BigInt::one() } else { -BigInt::one() })
            .collect(),
    )
}

/// Which extra factor multiplies `8 f'_k q(f^2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactorMode {
    /// `f^m`.
    FPower(u32),
    /// `f^2 - 1`.
    FSquaredMinusOne,
}

/// `8 f'_k F q(f^2)` with `F` given by `mode`.
pub fn evaluate_at_f_squared(
    q: &IntPolynomial,
    level: u32,
    k: u64,
    mode: FactorMode,
) -> Result<RingElement> {
    evaluate_with_one_minus_chi(q, level, k, mode, 0)
}

/// `8 f'_k F q(f^2) (1 - chi)^power`.
///
/// With `D = deg q` and `S = sum_j q_j (1 + chi)^(2j) (1 - chi)^(2(D-j))` the
/// value is an integer polynomial divided by a power of `1 - chi` and by
/// `1 + chi + ... + chi^(k-1)`, so only `O(D)` divisions of cost `O(N)` are
/// needed.
pub fn evaluate_with_one_minus_chi(
    q: &IntPolynomial,
    level: u32,
    k: u64,
    mode: FactorMode,
    power: u32,
) -> Result<RingElement> {
    check_odd(k)?;
    let n = check_level(level)?;
    let Some(deg) = q.degree() else {
        return RingElement::zero(level);
    };
    let one_plus = IntPolynomial::from_i64(&[1, 1]);
    let one_minus = IntPolynomial::from_i64(&[1, -1]);
    let plus_sq = one_plus.pow(2);
    let minus_sq = one_minus.pow(2);

    let mut s = IntPolynomial::zero();
    let mut plus_pow = IntPolynomial::one();
    for (j, c) in q.coeffs().iter().enumerate() {
        if !c.is_zero() {
            let term = &plus_pow * &minus_sq.pow((deg - j) as u32);
            s = &s + &term.scale(c);
        }
        plus_pow = &plus_pow * &plus_sq;
    }

    let (factor, extra) = match mode {
        FactorMode::FPower(m) => (one_plus.pow(m), m as i64),
        // f^2 - 1 = 4 chi / (1 - chi)^2
        FactorMode::FSquaredMinusOne => (IntPolynomial::monomial(1, BigInt::from(4)), 2),
    };
    let mut numer = &(&alternating_sum(k) * &factor) * &s;
    numer = numer.scale(&BigInt::from(8));

    // One factor 1 - chi is used to turn the division by 1 + ... + chi^(k-1)
    // into a division by 1 - chi^k.
    let divisions = 2 * deg as i64 + extra - power as i64 - 1;
    if divisions < 0 {
        numer = &numer * &one_minus.pow((-divisions) as u32);
    }
    let mut c = Cyclic::from_poly(n, numer.coeffs(), BigInt::one());
    c.div_one_minus_chi_pow(k);
    for _ in 0..divisions.max(0) {
        c.div_one_minus_chi();
    }
    Ok(RingElement::from_cyclic(level, c))
}
