//! Normal invariants, the `[rho~]` formulas and the structure-set data
//! `Sigma-bar + T-bar` for fake lens spaces of dimension `2d - 1` with
//! fundamental group of order `N = 2^K`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::best::{b_basis, coefficient_count, tables_document, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::lattice::{smith_diagonal, HermiteBasis};
use crate::poly::IntPolynomial;
use crate::ring::{check_level, element_f, element_f_prime, RingElement};

/// The normal invariants `t_(4i)` in `Z_N` and `t_(4i-2)` in `Z_2`,
/// `i = 1 .. c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalInvariantVector {
    d: u32,
    level: u32,
    t4: Vec<u64>,
    t2: Vec<u8>,
}

impl NormalInvariantVector {
    /// Residues are reduced into `[0, 2^K)` and `[0, 2)`.
    pub fn new(d: u32, level: u32, t4: &[i64], t2: &[i64]) -> Result<Self> {
        if d < 3 {
            return Err(Error::DimensionTooSmall { d, min: 3 });
        }
        let n = check_level(level)? as i64;
        let c = coefficient_count(d);
        if t4.len() != c || t2.len() != c {
            return Err(Error::InvalidArgument(format!(
                "expected {c} entries in t4 and t2, got {} and {}",
                t4.len(),
                t2.len()
            )));
        }
        Ok(NormalInvariantVector {
            d,
            level,
            t4: t4.iter().map(|&t| t.rem_euclid(n) as u64).collect(),
            t2: t2.iter().map(|&t| t.rem_euclid(2) as u8).collect(),
        })
    }

    pub fn zero(d: u32, level: u32) -> Result<Self> {
        let c = coefficient_count(d);
        Self::new(d, level, &vec![0; c], &vec![0; c])
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// `c = floor((d - 1)/2)`.
    pub fn c(&self) -> usize {
        self.t4.len()
    }

    pub fn t4(&self) -> &[u64] {
        &self.t4
    }

    pub fn t2(&self) -> &[u8] {
        &self.t2
    }
}

/// The summands of `[rho~]` per unit `t_(4i)`, `i = 1 .. c`:
/// `8 f'_k f^(d-2i-2) (f^2 - 1)` for `i < e`, and for `d = 2e + 1` the last
/// one is `8 f'_k f`.
pub fn rho_terms(d: u32, level: u32, k: u64) -> Result<Vec<RingElement>> {
    if d < 3 {
        return Err(Error::DimensionTooSmall { d, min: 3 });
    }
    let f = element_f(level)?;
    let eight_fp = element_f_prime(level, k)?.scale_int(&BigInt::from(8));
    let f_sq_minus_one = &(&f * &f) - &RingElement::one(level)?;
    let c = coefficient_count(d);
    let odd = d % 2 == 1;
    Ok((1..=c)
        .map(|i| {
            if odd && i == c {
                &eight_fp * &f
            } else {
                &(&eight_fp * &f.pow(d - 2 * i as u32 - 2)) * &f_sq_minus_one
            }
        })
        .collect())
}

/// `[rho~](t)`; reads `t4` only.
pub fn rho_bracket(t: &NormalInvariantVector, k: u64) -> Result<RingElement> {
    let terms = rho_terms(t.d, t.level, k)?;
    Ok(combine(t.level, &terms, &t.t4))
}

fn combine(level: u32, terms: &[RingElement], t4: &[u64]) -> RingElement {
    terms
        .iter()
        .zip(t4)
        .filter(|(_, &t)| t != 0)
        .fold(RingElement::zero(level).expect("valid level"), |acc, (g, &t)| {
            &acc + &g.scale_int(&BigInt::from(t))
        })
}

/// The polynomial `q_t` with `[rho~](t) = 8 f'_k F q_t(f^2)`, `F = f^2 - 1`
/// for even `d` and `F = f` for odd `d`.
pub fn t_to_polynomial(t: &NormalInvariantVector) -> IntPolynomial {
    let c = t.c();
    let t4: Vec<i64> = t.t4.iter().map(|&x| x as i64).collect();
    let mut coeffs = vec![0i64; c];
    if t.d.is_multiple_of(2) {
        for i in 0..c {
            coeffs[c - i - 1] = t4[i];
        }
    } else {
        for i in 1..c {
            coeffs[c - i - 1] = t4[i] - t4[i - 1];
        }
        if c > 0 {
            coeffs[c - 1] += t4[0];
        }
    }
    IntPolynomial::from_i64(&coeffs)
}

/// One cyclic summand of the structure set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionEntry {
    pub label: String,
    pub order: u64,
}

/// `T-bar`: `c` summands `Z_2` labelled `r_(4i-2)`, then
/// `Z_(2^min(K, 2i))` labelled `r_(4i)`.
pub fn t_bar(d: u32, level: u32) -> Result<Vec<TorsionEntry>> {
    if d < 5 {
        return Err(Error::DimensionTooSmall { d, min: 5 });
    }
    check_level(level)?;
    let c = coefficient_count(d) as u32;
    let twos = (1..=c).map(|i| TorsionEntry { label: format!("r_{}", 4 * i - 2), order: 2 });
    let tops = (1..=c).map(|i| TorsionEntry {
        label: format!("r_{}", 4 * i),
        order: 1u64 << level.min(2 * i),
    });
    Ok(twos.chain(tops).collect())
}

/// `rank Sigma-bar`: `N/2 - 1` for odd `d`, `N/2` for even `d`.
pub fn free_rank(d: u32, level: u32) -> Result<u64> {
    let n = check_level(level)? as u64;
    Ok(if d % 2 == 1 { n / 2 - 1 } else { n / 2 })
}

/// The kernel of `t4 -> [rho~](t)` modulo `4 Z[chi]`, found by enumerating
/// `(Z_(2^K))^c`.
#[derive(Clone, Debug)]
pub struct KernelReport {
    pub d: u32,
    pub level: u32,
    pub k: u64,
    pub member_count: u64,
    /// The kernel lifted to `Z^c` (it contains `2^K Z^c`).
    pub lattice: HermiteBasis,
    /// Orders of the cyclic factors of the kernel, ascending, without 1s.
    pub elementary_divisors: Vec<u64>,
}

pub fn kernel_oracle(d: u32, level: u32, k: u64, budget: u64) -> Result<KernelReport> {
    let c = coefficient_count(d);
    let bits = level as u64 * c as u64;
    let needed: u128 = if bits >= 128 { u128::MAX } else { 1u128 << bits };
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let terms = rho_terms(d, level, k)?;
    let modulus = 1u64 << level;
    let mut members: Vec<Vec<u64>> = Vec::new();
    let mut t4 = vec![0u64; c];
    loop {
        if combine(level, &terms, &t4).is_in_4z() {
            members.push(t4.clone());
        }
        let mut pos = c;
        loop {
            if pos == 0 {
                return finish_kernel(d, level, k, c, members);
            }
            pos -= 1;
            t4[pos] += 1;
            if t4[pos] == modulus {
                t4[pos] = 0;
            } else {
                break;
            }
        }
    }
}

fn finish_kernel(d: u32, level: u32, k: u64, c: usize, members: Vec<Vec<u64>>) -> Result<KernelReport> {
    let gens: Vec<Vec<i128>> = members
        .iter()
        .map(|m| m.iter().map(|&x| x as i128).collect())
        .collect();
    let lattice = HermiteBasis::from_generators(c, level, &gens);
    let rows: Vec<Vec<BigInt>> = lattice
        .rows()
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let modulus = BigInt::from(1u64 << level);
    let mut elementary_divisors: Vec<u64> = smith_diagonal(&rows)
        .iter()
        .map(|s| (&modulus / s).to_u64().expect("divisor of 2^K"))
        .filter(|&o| o > 1)
        .collect();
    elementary_divisors.sort_unstable();

    // A subset closed under addition with the right element orders.
    let member_count = members.len() as u64;
    let exps: Vec<u32> = elementary_divisors.iter().map(|o| o.trailing_zeros()).collect();
    for j in 0..=level {
        let expected: u32 = exps.iter().map(|&e| e.min(j)).sum();
        let killed = members
            .iter()
            .filter(|m| m.iter().all(|&x| (x << j) % (1u64 << level) == 0))
            .count() as u64;
        if killed != 1u64 << expected {
            return Err(Error::Inconsistency(format!(
                "kernel has {killed} elements killed by 2^{j}, Smith form predicts 2^{expected}"
            )));
        }
    }
    if member_count != 1u64 << lattice.order_exponent() {
        return Err(Error::Inconsistency(format!(
            "kernel enumeration found {member_count} elements but they generate a group of order 2^{}",
            lattice.order_exponent()
        )));
    }
    Ok(KernelReport { d, level, k, member_count, lattice, elementary_divisors })
}

/// Coordinates of `t` in `T-bar`: `r_(4i-2) = t_(4i-2)` and `r_(4i)` the
/// coefficient of `2^max(K-2i, 0) r^-+_(i-1)` in `q_t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RCoordinates {
    pub r2: Vec<u8>,
    pub r4: Vec<u64>,
}

pub fn r_coordinates(t: &NormalInvariantVector, k: u64) -> Result<RCoordinates> {
    if !rho_bracket(t, k)?.is_in_4z() {
        return Err(Error::NotInKernel);
    }
    let b = b_basis(t.level, t.d)?;
    let mut rest = t_to_polynomial(t);
    let c = t.c();
    let mut r4 = vec![0u64; c];
    for n in (0..c).rev() {
        let lead = rest.coeff(n);
        let scale = BigInt::from(1u64) << b.scaling_exponents[n] as usize;
        let (a, rem) = lead.div_mod_floor(&scale);
        if rem != BigInt::from(0) {
            return Err(Error::Inconsistency(format!(
                "coefficient of x^{n} is not divisible by the basis scaling"
            )));
        }
        rest = &rest - &b.basis[n].scale(&a);
        let order = BigInt::from(1u64) << (t.level - b.scaling_exponents[n]) as usize;
        r4[n] = a.mod_floor(&order).to_u64().expect("bounded by 2^K");
    }
    debug_assert!(rest.is_zero());
    Ok(RCoordinates { r2: t.t2.clone(), r4 })
}

/// `sum_n r4[n] 2^max(K-2n-2, 0) r^-+_n`.
pub fn reassemble(coords: &RCoordinates, d: u32, level: u32) -> Result<IntPolynomial> {
    let b = b_basis(level, d)?;
    Ok(coords
        .r4
        .iter()
        .zip(&b.basis)
        .fold(IntPolynomial::zero(), |acc, (&a, p)| &acc + &p.scale(&BigInt::from(a))))
}

/// `S^s(L^(2d-1))` as `Z^free_rank + T-bar`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureSetDescriptor {
    pub d: u32,
    #[serde(rename = "K")]
    pub level: u32,
    #[serde(rename = "N")]
    pub n: u64,
    pub free_rank: u64,
    /// `None` for `d` in `{3, 4}`.
    pub torsion: Option<Vec<TorsionEntry>>,
    /// SHA-256 of the JSON tables document for `max_n = c - 1`.
    pub basis_provenance: Option<String>,
}

/// The tables document as emitted by `fakelens tables --format json`.
pub fn tables_json(max_n: usize) -> Result<String> {
    let doc = tables_document(max_n, None)?;
    let mut s = serde_json::to_string_pretty(&doc).expect("serialisable");
    s.push('\n');
    Ok(s)
}

pub fn structure_set(d: u32, level: u32) -> Result<StructureSetDescriptor> {
    if d < 3 {
        return Err(Error::DimensionTooSmall { d, min: 3 });
    }
    let n = check_level(level)? as u64;
    let free_rank = free_rank(d, level)?;
    let (torsion, basis_provenance) = if d >= 5 {
        let json = tables_json(coefficient_count(d) - 1)?;
        let hash = format!("{:x}", Sha256::digest(json.as_bytes()));
        (Some(t_bar(d, level)?), Some(hash))
    } else {
        (None, None)
    };
    Ok(StructureSetDescriptor { d, level, n, free_rank, torsion, basis_provenance })
}

/// Kernel oracle at the default budget.
pub fn kernel_oracle_default(d: u32, level: u32, k: u64) -> Result<KernelReport> {
    kernel_oracle(d, level, k, DEFAULT_BUDGET)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::best::membership_a;

    fn orders(v: &[TorsionEntry]) -> Vec<u64> {
        v.iter().map(|e| e.order).collect()
    }

    #[test]
    fn rho_of_zero_and_last_summand() {
        let t = NormalInvariantVector::zero(7, 3).unwrap();
        assert!(rho_bracket(&t, 1).unwrap().is_zero());
        let t = NormalInvariantVector::new(7, 2, &[0, 0, 1], &[1, 0, 1]).unwrap();
        let eight_f = element_f(2).unwrap().scale_int(&BigInt::from(8));
        assert_eq!(rho_bracket(&t, 1).unwrap(), eight_f);
        assert!(matches!(rho_bracket(&t, 4), Err(Error::EvenK(4))));
    }

    #[test]
    fn t2_is_ignored() {
        let a = NormalInvariantVector::new(9, 3, &[1, 2, 3, 4], &[0, 0, 0, 0]).unwrap();
        let b = NormalInvariantVector::new(9, 3, &[1, 2, 3, 4], &[1, 1, 0, 1]).unwrap();
        assert_eq!(rho_bracket(&a, 3).unwrap(), rho_bracket(&b, 3).unwrap());
    }

    #[test]
    fn polynomial_identification() {
        let t = NormalInvariantVector::new(8, 3, &[1, 0, 0], &[0, 0, 0]).unwrap();
        assert_eq!(t_to_polynomial(&t), IntPolynomial::from_i64(&[0, 0, 1]));
        let t = NormalInvariantVector::new(4, 3, &[5], &[0]).unwrap();
        assert_eq!(t_to_polynomial(&t), IntPolynomial::from_i64(&[5]));
        let t = NormalInvariantVector::new(5, 3, &[1, 1], &[0, 0]).unwrap();
        assert_eq!(t_to_polynomial(&t), IntPolynomial::from_i64(&[0, 1]));
    }

    #[test]
    fn rho_route_matches_membership_route() {
        for (d, level, k) in [(5u32, 2u32, 1u64), (6, 3, 3), (7, 2, 5), (8, 2, 1)] {
            let c = coefficient_count(d);
            for code in 0..(1u64 << (level as usize * c)) {
                let t4: Vec<i64> = (0..c)
                    .map(|i| ((code >> (i as u32 * level)) & ((1 << level) - 1)) as i64)
                    .collect();
                let t = NormalInvariantVector::new(d, level, &t4, &vec![0; c]).unwrap();
                let q = t_to_polynomial(&t);
                assert_eq!(
                    rho_bracket(&t, k).unwrap().is_in_4z(),
                    membership_a(&q, level, k, d, None).unwrap(),
                    "d={d} K={level} k={k} t4={t4:?}"
                );
            }
        }
    }

    #[test]
    fn torsion_formula() {
        assert_eq!(orders(&t_bar(5, 3).unwrap()), vec![2, 2, 4, 8]);
        assert_eq!(orders(&t_bar(7, 1).unwrap()), vec![2; 6]);
        assert_eq!(orders(&t_bar(6, 4).unwrap()), vec![2, 2, 4, 16]);
        let labels: Vec<String> = t_bar(7, 3).unwrap().into_iter().map(|e| e.label).collect();
        assert_eq!(labels, ["r_2", "r_6", "r_10", "r_4", "r_8", "r_12"]);
        assert!(t_bar(4, 3).is_err());
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_oracle_default(5, 2, 1).unwrap().elementary_divisors, vec![4, 4]);
        assert_eq!(kernel_oracle_default(7, 3, 3).unwrap().elementary_divisors, vec![4, 8, 8]);
        assert_eq!(kernel_oracle_default(9, 1, 1).unwrap().elementary_divisors, vec![2; 4]);
    }

    #[test]
    fn descriptors() {
        let s = structure_set(5, 3).unwrap();
        assert_eq!(s.free_rank, 3);
        assert_eq!(orders(s.torsion.as_ref().unwrap()), vec![2, 2, 4, 8]);
        let s = structure_set(6, 2).unwrap();
        assert_eq!(s.free_rank, 2);
        assert_eq!(orders(s.torsion.as_ref().unwrap()), vec![2, 2, 4, 4]);
        let s = structure_set(5, 1).unwrap();
        assert_eq!((s.free_rank, orders(s.torsion.as_ref().unwrap())), (0, vec![2; 4]));
        let s = structure_set(4, 3).unwrap();
        assert_eq!((s.free_rank, s.torsion), (4, None));
        assert!(structure_set(2, 3).is_err());
    }

    #[test]
    fn coordinates_round_trip() {
        let (d, level, k) = (7u32, 3u32, 1u64);
        let report = kernel_oracle_default(d, level, k).unwrap();
        let mut seen = 0;
        for code in 0..512i64 {
            let t4 = [code & 7, (code >> 3) & 7, code >> 6];
            let t = NormalInvariantVector::new(d, level, &t4, &[1, 0, 1]).unwrap();
            let member = report.lattice.contains(&t4.iter().map(|&x| x as i128).collect::<Vec<_>>());
            match r_coordinates(&t, k) {
                Ok(coords) => {
                    assert!(member);
                    seen += 1;
                    assert_eq!(coords.r2, vec![1, 0, 1]);
                    let back = reassemble(&coords, d, level).unwrap();
                    let diff = &back - &t_to_polynomial(&t);
                    assert!(membership_a(&diff, level, k, d, None).unwrap());
                    assert!(diff.coeffs().iter().all(|x| x % 8 == BigInt::from(0)));
                }
                Err(Error::NotInKernel) => assert!(!member),
                Err(e) => panic!("{e}"),
            }
        }
        assert_eq!(seen as u64, report.member_count);
        let zero = NormalInvariantVector::zero(d, level).unwrap();
        assert_eq!(r_coordinates(&zero, k).unwrap().r4, vec![0, 0, 0]);
    }
}
