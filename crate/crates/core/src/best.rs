//! The polynomial families `p_k`, `q_n`, `r^-_n`, `r^+_n` and the lattices
//! `A_K^k(d)` and `B_K(d)` of integer polynomials of degree `< c`,
//! `c = floor((d - 1)/2)`.

use std::collections::BTreeMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{hermite_from_basis, kernel_of_congruences, HermiteBasis};
use crate::poly::IntPolynomial;
use crate::ring::{evaluate_at_f_squared, FactorMode, LinearMembership, RingElement, Sign};

/// Default enumeration budget, `2^20` coefficient vectors.
pub const DEFAULT_BUDGET: u64 = 1 << 20;

/// `p_1 = x + 1`, `p_(k+1)(x) = p_k((x + 1)^2 / 4x) (4x)^(2^(k-1))`.
///
/// The substitution is carried out on the homogenised form
/// `sum_j c_j (x + 1)^(2j) (4x)^(D - j)`, `D = deg p_k`, which is exactly
/// the rational function times `(4x)^D`.
pub fn p_k(k: u32) -> Result<IntPolynomial> {
    if k == 0 {
        return Err(Error::InvalidArgument("p_k is defined for k >= 1".into()));
    }
    let mut p = IntPolynomial::from_i64(&[1, 1]);
    let sq = IntPolynomial::from_i64(&[1, 2, 1]);
    let four_x = IntPolynomial::monomial(1, BigInt::from(4));
    for step in 1..k {
        let deg = 1usize << (step - 1);
        debug_assert_eq!(p.degree(), Some(deg));
        let mut next = IntPolynomial::zero();
        let mut sq_pow = IntPolynomial::one();
        for (j, c) in p.coeffs().iter().enumerate() {
            let term = &sq_pow * &four_x.pow((deg - j) as u32);
            next = &next + &term.scale(c);
            sq_pow = &sq_pow * &sq;
        }
        p = next;
    }
    Ok(p)
}

/// `n + 1 = 2^a + b` with `0 <= b < 2^a`.
pub fn split_n(n: usize) -> (u32, usize) {
    let a = (n + 1).ilog2();
    (a, n + 1 - (1usize << a))
}

/// `q_n = p_1 ... p_a(n) (x - 1)^b(n)`.
pub fn q_n(n: usize) -> IntPolynomial {
    let (a, b) = split_n(n);
    let mut q = IntPolynomial::from_i64(&[-1, 1]).pow(b as u32);
    for r in 1..=a {
        q = &q * &p_k(r).expect("r >= 1");
    }
    q
}

/// `r^-_n` together with the bits `a_l` selected by the search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMinusRecord {
    pub n: usize,
    pub polynomial: IntPolynomial,
    /// `a_l` for `0 <= l < floor(n/2)`.
    pub chosen_bits: BTreeMap<usize, u8>,
}

static R_MINUS: Mutex<BTreeMap<usize, RMinusRecord>> = Mutex::new(BTreeMap::new());

/// The candidate `q_n + sum_l a_l 2^(2(n-l)-1) r^-_l`, with `a_l` bit `l` of
/// `mask`.
pub fn r_minus_candidate(n: usize, mask: u64) -> Result<IntPolynomial> {
    let half = n / 2;
    let mut cand = q_n(n);
    for l in 0..half {
        if mask >> l & 1 == 1 {
            let r = r_minus(l)?.polynomial;
            cand = &cand + &r.shl((2 * (n - l) - 1) as u32);
        }
    }
    Ok(cand)
}

/// Every mask in `[0, 2^floor(n/2))`, ascending, whose candidate satisfies
/// `8 f'_k f^m cand(f^2)` in `4 Z[chi]/I<2n+2>`.
pub fn r_minus_search(n: usize, k: u64, m: u32) -> Result<Vec<u64>> {
    let level = 2 * n as u32 + 2;
    let mut hits = Vec::new();
    for mask in 0..(1u64 << (n / 2)) {
        let cand = r_minus_candidate(n, mask)?;
        if evaluate_at_f_squared(&cand, level, k, FactorMode::FPower(m))?.is_in_4z() {
            hits.push(mask);
        }
    }
    Ok(hits)
}

/// `r^-_n`, found by exhaustive search with `(k, m) = (1, 1)` and then
/// re-checked for `k in {1, 3}`, `m in {1, 2}`. Memoised.
pub fn r_minus(n: usize) -> Result<RMinusRecord> {
    if let Some(rec) = R_MINUS.lock().expect("r-minus table poisoned").get(&n) {
        return Ok(rec.clone());
    }
    let hits = r_minus_search(n, 1, 1)?;
    if hits.len() != 1 {
        return Err(Error::RMinusNotUnique { n, k: 1, m: 1, count: hits.len() });
    }
    let mask = hits[0];
    let polynomial = r_minus_candidate(n, mask)?;
    let level = 2 * n as u32 + 2;
    for (k, m) in [(1u64, 2u32), (3, 1), (3, 2)] {
        if !evaluate_at_f_squared(&polynomial, level, k, FactorMode::FPower(m))?.is_in_4z() {
            return Err(Error::Inconsistency(format!(
                "r^-_{n} fails the I<{level}> membership for (k, m) = ({k}, {m})"
            )));
        }
    }
    let chosen_bits = (0..n / 2).map(|l| (l, (mask >> l & 1) as u8)).collect();
    let rec = RMinusRecord { n, polynomial, chosen_bits };
    R_MINUS
        .lock()
        .expect("r-minus table poisoned")
        .entry(n)
        .or_insert_with(|| rec.clone());
    Ok(rec)
}

/// `beta(q) = (x q(x) - q(1)) / (x - 1)`.
pub fn beta(q: &IntPolynomial) -> Result<IntPolynomial> {
    let num = &(q * &IntPolynomial::x()) - &IntPolynomial::constant(q.eval(&BigInt::one()));
    num.div_exact(&IntPolynomial::from_i64(&[-1, 1]))
}

/// `beta^(-1)(q) = ((x - 1) q(x) + q(0)) / x`.
pub fn beta_inv(q: &IntPolynomial) -> Result<IntPolynomial> {
    let num = &(&IntPolynomial::from_i64(&[-1, 1]) * q) + &IntPolynomial::constant(q.coeff(0));
    num.div_exact(&IntPolynomial::x())
}

/// `r^+_n = beta(r^-_n)`.
pub fn r_plus(n: usize) -> Result<IntPolynomial> {
    beta(&r_minus(n)?.polynomial)
}

/// `r^-_n` or `r^+_n`.
pub fn r_signed(n: usize, sign: Sign) -> Result<IntPolynomial> {
    match sign {
        Sign::Minus => Ok(r_minus(n)?.polynomial),
        Sign::Plus => r_plus(n),
    }
}

/// `c = floor((d - 1)/2)`, the number of coefficients of `Z[x](d)`.
pub fn coefficient_count(d: u32) -> usize {
    (d.saturating_sub(1) / 2) as usize
}

fn mode_for(d: u32, m: Option<u32>) -> Result<FactorMode> {
    if d < 3 {
        return Err(Error::DimensionTooSmall { d, min: 3 });
    }
    if d % 2 == 1 {
        let m = m.unwrap_or(1);
        if !(1..=2).contains(&m) {
            return Err(Error::InvalidArgument(format!("m must be 1 or 2, got {m}")));
        }
        Ok(FactorMode::FPower(m))
    } else {
        match m {
            None => Ok(FactorMode::FSquaredMinusOne),
            Some(_) => Err(Error::InvalidArgument("m applies to odd d only".into())),
        }
    }
}

/// Whether `q` lies in `A_K^k(d)` (or `A_K^(k,m)(d)` for odd `d`).
pub fn membership_a(q: &IntPolynomial, level: u32, k: u64, d: u32, m: Option<u32>) -> Result<bool> {
    let mode = mode_for(d, m)?;
    let c = coefficient_count(d);
    if let Some(deg) = q.degree() {
        if deg + 1 > c {
            return Err(Error::DegreeOverflow { degree: deg, bound: c - 1 });
        }
    }
    Ok(evaluate_at_f_squared(q, level, k, mode)?.is_in_4z())
}

/// A lattice `2^K Z[x](d) <= L <= Z[x](d)` with a triangular basis: entry
/// `n` has degree `n` and leading coefficient `2^scaling_exponents[n]` up to
/// an odd factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeDescriptor {
    pub level: u32,
    pub ambient_rank: usize,
    pub basis: Vec<IntPolynomial>,
    pub scaling_exponents: Vec<u32>,
    /// `log2` of the index in `Z[x](d)` (equivalently of `(Z_(2^K))^c`).
    pub index_exponent: u32,
}

fn poly_to_vector(p: &IntPolynomial, len: usize, modulus: &BigInt) -> Vec<i128> {
    (0..len)
        .map(|j| {
            let c = num_integer::Integer::mod_floor(&p.coeff(j), modulus);
            c.to_i128().expect("reduced coefficient fits")
        })
        .collect()
}

impl LatticeDescriptor {
    /// Canonical Hermite basis of the lattice plus `2^K Z^c`.
    pub fn hermite(&self) -> HermiteBasis {
        let modulus = BigInt::one() << self.level as usize;
        let gens: Vec<Vec<i128>> = self
            .basis
            .iter()
            .map(|p| poly_to_vector(p, self.ambient_rank, &modulus))
            .collect();
        HermiteBasis::from_generators(self.ambient_rank, self.level, &gens)
    }

    pub fn contains(&self, q: &IntPolynomial) -> bool {
        let modulus = BigInt::one() << self.level as usize;
        q.degree().is_none_or(|deg| deg < self.ambient_rank)
            && self.hermite().contains(&poly_to_vector(q, self.ambient_rank, &modulus))
    }

    fn from_hermite(h: &HermiteBasis) -> Self {
        let basis: Vec<IntPolynomial> = h
            .rows()
            .iter()
            .map(|r| IntPolynomial::new(r.iter().map(|&c| BigInt::from(c)).collect()))
            .collect();
        LatticeDescriptor {
            level: h.exponent(),
            ambient_rank: h.rank(),
            scaling_exponents: h.diagonal().iter().map(|d| d.trailing_zeros()).collect(),
            basis,
            index_exponent: h.index_exponent(),
        }
    }
}

/// `B_K(d)`: spanned by `2^max(K-2n-2, 0) r^-_n` (odd `d`) or `r^+_n` (even
/// `d`), `0 <= n < c`.
pub fn b_basis(level: u32, d: u32) -> Result<LatticeDescriptor> {
    if d < 5 {
        return Err(Error::DimensionTooSmall { d, min: 5 });
    }
    if level == 0 {
        return Err(Error::ZeroLevel);
    }
    let c = coefficient_count(d);
    let sign = Sign::of_parity(d);
    let mut basis = Vec::with_capacity(c);
    let mut exps = Vec::with_capacity(c);
    for n in 0..c {
        let e = (level as i64 - 2 * n as i64 - 2).max(0) as u32;
        basis.push(r_signed(n, sign)?.shl(e));
        exps.push(e);
    }
    let index_exponent = exps.iter().sum();
    Ok(LatticeDescriptor {
        level,
        ambient_rank: c,
        basis,
        scaling_exponents: exps,
        index_exponent,
    })
}

fn a_columns(level: u32, k: u64, d: u32, m: Option<u32>) -> Result<Vec<RingElement>> {
    let mode = mode_for(d, m)?;
    (0..coefficient_count(d))
        .map(|j| evaluate_at_f_squared(&IntPolynomial::monomial(j, BigInt::one()), level, k, mode))
        .collect()
}

fn check_scaled_monomials(level: u32, k: u64, d: u32, m: Option<u32>) -> Result<()> {
    for j in 0..coefficient_count(d) {
        let q = IntPolynomial::monomial(j, BigInt::one() << level as usize);
        if !membership_a(&q, level, k, d, m)? {
            return Err(Error::Inconsistency(format!(
                "2^{level} x^{j} is not in A_{level}^{k}({d})"
            )));
        }
    }
    Ok(())
}

/// `A_K^k(d)` by exhaustive enumeration of `(Z_(2^K))^c`.
pub fn brute_force_a(level: u32, k: u64, d: u32, budget: u64) -> Result<LatticeDescriptor> {
    brute_force_a_with(level, k, d, None, budget)
}

pub fn brute_force_a_with(
    level: u32,
    k: u64,
    d: u32,
    m: Option<u32>,
    budget: u64,
) -> Result<LatticeDescriptor> {
    let c = coefficient_count(d);
    let bits = level as u64 * c as u64;
    let needed: u128 = if bits >= 128 { u128::MAX } else { 1u128 << bits };
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    check_scaled_monomials(level, k, d, m)?;
    let lin = LinearMembership::new(&a_columns(level, k, d, m)?);
    let mut h = HermiteBasis::new(c, level);
    let mut count: u128 = 0;
    lin.for_each_member(1u64 << level, |digits| {
        count += 1;
        let v: Vec<i128> = digits.iter().map(|&x| x as i128).collect();
        if !h.contains(&v) {
            h.insert(&v);
        }
    });
    h.canonicalize();
    if count != 1u128 << h.order_exponent() {
        return Err(Error::Inconsistency(format!(
            "enumerated {count} members but the Hermite basis has order 2^{}",
            h.order_exponent()
        )));
    }
    Ok(LatticeDescriptor::from_hermite(&h))
}

/// `A_K^k(d)` as the solution lattice of the linear congruences expressing
/// membership, without enumeration.
pub fn congruence_a(level: u32, k: u64, d: u32, m: Option<u32>) -> Result<LatticeDescriptor> {
    check_scaled_monomials(level, k, d, m)?;
    let cols = a_columns(level, k, d, m)?;
    let lin = LinearMembership::new(&cols);
    let c = cols.len();
    let denom = lin.modulus() / 4;
    let coords = (1usize << level) - 1;
    let rows: Vec<Vec<BigInt>> = (0..coords)
        .map(|i| {
            cols.iter()
                .map(|col| col.numerators()[i].clone() * (&denom / col.denominator()))
                .collect()
        })
        .collect();
    let basis = kernel_of_congruences(&rows, c, lin.modulus());
    Ok(LatticeDescriptor::from_hermite(&hermite_from_basis(&basis, level)))
}

/// Membership witness for one basis element of `B_K(d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisWitness {
    pub degree: usize,
    pub scaling_exponent: u32,
    pub in_a: bool,
}

/// Outcome of comparing `A_K^k(d)` with `B_K(d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AEqualsBReport {
    pub level: u32,
    pub k: u64,
    pub d: u32,
    pub b_in_a: bool,
    pub index_exponent_a: u32,
    pub index_exponent_b: u32,
    pub hermite_equal: bool,
    pub witnesses: Vec<BasisWitness>,
    pub passed: bool,
}

pub fn verify_a_equals_b(level: u32, k: u64, d: u32, budget: u64) -> Result<AEqualsBReport> {
    let b = b_basis(level, d)?;
    let a = brute_force_a(level, k, d, budget)?;
    let witnesses = b
        .basis
        .iter()
        .enumerate()
        .map(|(n, q)| {
            Ok(BasisWitness {
                degree: n,
                scaling_exponent: b.scaling_exponents[n],
                in_a: membership_a(q, level, k, d, None)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let b_in_a = witnesses.iter().all(|w| w.in_a);
    let hermite_equal = a.hermite() == b.hermite();
    let passed = b_in_a && a.index_exponent == b.index_exponent && hermite_equal;
    Ok(AEqualsBReport {
        level,
        k,
        d,
        b_in_a,
        index_exponent_a: a.index_exponent,
        index_exponent_b: b.index_exponent,
        hermite_equal,
        witnesses,
        passed,
    })
}

/// Whether every polynomial of degree `<= n` in `A_(2n+3)^1(2n+3)` is a
/// combination `sum_l a_l 2^max(2(n-l)+1, 0) r^-_l`, i.e. whether that
/// lattice equals the span of those scaled `r^-_l` (plus `2^(2n+3) Z[x]`).
pub fn shape_holds(n: usize) -> Result<bool> {
    let level = 2 * n as u32 + 3;
    let d = 2 * n as u32 + 3;
    let a = congruence_a(level, 1, d, None)?;
    let gens: Vec<IntPolynomial> = (0..=n)
        .map(|l| Ok(r_minus(l)?.polynomial.shl((2 * (n - l) + 1) as u32)))
        .collect::<Result<_>>()?;
    let shape = LatticeDescriptor {
        level,
        ambient_rank: n + 1,
        scaling_exponents: Vec::new(),
        index_exponent: 0,
        basis: gens,
    };
    Ok(a.hermite() == shape.hermite())
}

/// Serialisable coefficient list, lowest degree first.
fn coeffs_i64(p: &IntPolynomial) -> Result<Vec<i64>> {
    p.coeffs()
        .iter()
        .map(|c| {
            c.to_i64()
                .ok_or_else(|| Error::InvalidArgument(format!("coefficient {c} exceeds 64 bits")))
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct PolyEntry {
    pub index: usize,
    pub coeffs: Vec<i64>,
    pub text: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RMinusEntry {
    pub n: usize,
    pub coeffs: Vec<i64>,
    pub text: String,
    pub chosen_bits: BTreeMap<usize, u8>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScalingEntry {
    pub level: u32,
    /// `max(K - 2n - 2, 0)` for `n = 0 .. max_n`.
    pub exponents: Vec<u32>,
}

/// The `p`, `q`, `r` tables and `B` scalings up to `max_n`.
#[derive(Clone, Debug, Serialize)]
pub struct TablesDocument {
    pub schema_version: u32,
    pub max_n: usize,
    pub p: Vec<PolyEntry>,
    pub q: Vec<PolyEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_minus: Option<Vec<RMinusEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_plus: Option<Vec<PolyEntry>>,
    pub b_scalings: Vec<ScalingEntry>,
}

pub const TABLES_SCHEMA_VERSION: u32 = 1;

fn entry(index: usize, p: &IntPolynomial) -> Result<PolyEntry> {
    Ok(PolyEntry { index, coeffs: coeffs_i64(p)?, text: p.to_string() })
}

/// Builds the tables; `sign` restricts the `r` tables to one family.
pub fn tables_document(max_n: usize, sign: Option<Sign>) -> Result<TablesDocument> {
    let (a_max, _) = split_n(max_n);
    let p = (1..=a_max.max(1))
        .map(|k| entry(k as usize, &p_k(k)?))
        .collect::<Result<Vec<_>>>()?;
    let q = (0..=max_n).map(|n| entry(n, &q_n(n))).collect::<Result<Vec<_>>>()?;
    let want_minus = sign != Some(Sign::Plus);
    let want_plus = sign != Some(Sign::Minus);
    let r_minus_entries = if want_minus {
        Some(
            (0..=max_n)
                .map(|n| {
                    let rec = r_minus(n)?;
                    Ok(RMinusEntry {
                        n,
                        coeffs: coeffs_i64(&rec.polynomial)?,
                        text: rec.polynomial.to_string(),
                        chosen_bits: rec.chosen_bits,
                    })
                })
                .collect::<Result<Vec<_>>>()?,
        )
    } else {
        None
    };
    let r_plus_entries = if want_plus {
        Some((0..=max_n).map(|n| entry(n, &r_plus(n)?)).collect::<Result<Vec<_>>>()?)
    } else {
        None
    };
    let top = 2 * max_n as u32 + 2;
    let b_scalings = (1..=top)
        .map(|level| ScalingEntry {
            level,
            exponents: (0..=max_n)
                .map(|n| (level as i64 - 2 * n as i64 - 2).max(0) as u32)
                .collect(),
        })
        .collect();
    Ok(TablesDocument {
        schema_version: TABLES_SCHEMA_VERSION,
        max_n,
        p,
        q,
        r_minus: r_minus_entries,
        r_plus: r_plus_entries,
        b_scalings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Zero;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn eval_q(p: &IntPolynomial, x: &BigRational) -> BigRational {
        p.coeffs()
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    #[test]
    fn p_k_matches_rational_substitution() {
        // p_(k+1)(x0) = p_k((x0 + 1)^2 / 4x0) (4 x0)^(2^(k-1)) at rational points.
        for k in 1..=4u32 {
            let pk = p_k(k).unwrap();
            let next = p_k(k + 1).unwrap();
            assert_eq!(next.degree(), Some(1 << k));
            for (a, b) in [(1i64, 1i64), (2, 3), (-5, 7), (3, -2)] {
                let x0 = BigRational::new(BigInt::from(a), BigInt::from(b));
                let y = (&x0 + BigRational::one()).pow(2) / (BigRational::from_integer(4.into()) * &x0);
                let scale = (BigRational::from_integer(4.into()) * &x0).pow(1 << (k - 1));
                assert_eq!(eval_q(&next, &x0), eval_q(&pk, &y) * scale);
            }
        }
        assert_eq!(p_k(2).unwrap(), poly(&[1, 6, 1]));
        assert_eq!(p_k(3).unwrap(), poly(&[1, 28, 70, 28, 1]));
    }

    #[test]
    fn split_and_q() {
        assert_eq!(split_n(0), (0, 0));
        assert_eq!(split_n(4), (2, 1));
        assert_eq!(split_n(6), (2, 3));
        assert_eq!(q_n(0), poly(&[1]));
        assert_eq!(q_n(2), poly(&[-1, 0, 1]));
        assert_eq!(q_n(3), &poly(&[1, 1]) * &poly(&[1, 6, 1]));
        for n in 0..10 {
            assert!(q_n(n).is_monic());
            assert_eq!(q_n(n).degree(), Some(n));
        }
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta(&poly(&[1])).unwrap(), poly(&[1]));
        assert_eq!(beta(&poly(&[1, 1])).unwrap(), poly(&[2, 1]));
        let q = poly(&[3, -1, 4, 1, -5]);
        assert_eq!(beta_inv(&beta(&q).unwrap()).unwrap(), q);
    }

    #[test]
    fn small_r_minus() {
        assert_eq!(r_minus(0).unwrap().polynomial, q_n(0));
        assert_eq!(r_minus(1).unwrap().polynomial, q_n(1));
        let r2 = r_minus(2).unwrap();
        assert_eq!(r2.polynomial, poly(&[7, 0, 1]));
        assert_eq!(r2.chosen_bits, BTreeMap::from([(0, 1)]));
        assert_eq!(r_plus(1).unwrap(), poly(&[2, 1]));
    }

    #[test]
    fn b_basis_exponents() {
        assert_eq!(b_basis(4, 7).unwrap().scaling_exponents, vec![2, 0, 0]);
        assert_eq!(b_basis(6, 9).unwrap().scaling_exponents, vec![4, 2, 0, 0]);
        assert_eq!(b_basis(1, 7).unwrap().index_exponent, 0);
        assert!(matches!(b_basis(3, 4), Err(Error::DimensionTooSmall { .. })));
    }

    #[test]
    fn membership_degree_bound() {
        let q = poly(&[0, 0, 0, 1]);
        assert!(matches!(membership_a(&q, 3, 1, 7, None), Err(Error::DegreeOverflow { .. })));
        assert!(matches!(membership_a(&q, 3, 2, 9, None), Err(Error::EvenK(2))));
    }

    #[test]
    fn small_oracles_agree() {
        for (level, k, d) in [(1u32, 1u64, 7u32), (3, 1, 7), (4, 3, 6), (3, 5, 8)] {
            let brute = brute_force_a(level, k, d, DEFAULT_BUDGET).unwrap();
            let lin = congruence_a(level, k, d, None).unwrap();
            let b = b_basis(level, d).unwrap();
            assert_eq!(brute.hermite(), b.hermite(), "K={level} k={k} d={d}");
            assert_eq!(lin.hermite(), b.hermite(), "K={level} k={k} d={d}");
        }
        assert_eq!(brute_force_a(3, 1, 7, DEFAULT_BUDGET).unwrap().index_exponent, 1);
    }

    #[test]
    fn r_minus_membership_edges() {
        for n in 0..=3usize {
            let r = r_minus(n).unwrap().polynomial;
            let d = 2 * n as u32 + 3;
            let level = 2 * n as u32 + 2;
            assert!(membership_a(&r, level, 1, d, None).unwrap());
            assert!(!membership_a(&r, level + 1, 1, d, None).unwrap());
        }
    }

    #[test]
    fn a_equals_b_reports() {
        let r = verify_a_equals_b(1, 1, 7, DEFAULT_BUDGET).unwrap();
        assert!(r.passed && r.index_exponent_a == 0);
        let r = verify_a_equals_b(4, 1, 7, DEFAULT_BUDGET).unwrap();
        assert!(r.passed && r.index_exponent_a == 2);
        assert!(r.witnesses.iter().all(|w| w.in_a));
        let k1 = verify_a_equals_b(4, 1, 9, DEFAULT_BUDGET).unwrap();
        let k5 = verify_a_equals_b(4, 5, 9, DEFAULT_BUDGET).unwrap();
        assert!(k1.passed && k5.passed);
        assert_eq!(k1.index_exponent_a, k5.index_exponent_a);
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            brute_force_a(5, 1, 11, DEFAULT_BUDGET),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
