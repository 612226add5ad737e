//! Self-checks behind `fakelens verify`: worked examples, identities,
//! oracle comparisons and seeded randomised properties.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::best::{
    b_basis, beta, beta_inv, brute_force_a, coefficient_count, p_k, q_n, r_minus, r_minus_search,
    shape_holds, split_n, DEFAULT_BUDGET,
};
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::ring::{
    crt_reconstruct, element_f, element_f_prime, evaluate_with_one_minus_chi, FactorMode,
    RingElement, Sign,
};
use crate::structure::{
    free_rank, kernel_oracle, rho_bracket, structure_set, t_to_polynomial, NormalInvariantVector,
};
use crate::valuation::{
    criterion_necessary_auto, criterion_sufficient, w_l, w_l_normal_form, x_polynomial,
    SufficientVerdict, Valuation,
};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    WlRules,
    PIdentities,
    QLadder,
    RUniqueness,
    AEqB,
    Kernel,
    All,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::WlRules,
        Suite::PIdentities,
        Suite::QLadder,
        Suite::RUniqueness,
        Suite::AEqB,
        Suite::Kernel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::WlRules => "wl-rules",
            Suite::PIdentities => "p-identities",
            Suite::QLadder => "q-ladder",
            Suite::RUniqueness => "r-uniqueness",
            Suite::AEqB => "a-eq-b",
            Suite::Kernel => "kernel",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub budget: u64,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { budget: DEFAULT_BUDGET, seed: DEFAULT_SEED }
    }
}

/// A family of checks: how many ran and the first few failures.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
    pub first_failures: Vec<String>,
}

impl Check {
    fn new(name: &str) -> Self {
        Check { name: name.to_string(), cases: 0, failures: 0, first_failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failures.len() < 5 {
                self.first_failures.push(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
    /// Informational findings that do not affect the verdict.
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

pub fn run(suite: Suite, cfg: &VerifyConfig) -> Result<Vec<SuiteReport>> {
    match suite {
        Suite::All => Suite::ALL.iter().map(|&s| run_one(s, cfg)).collect(),
        s => Ok(vec![run_one(s, cfg)?]),
    }
}

fn run_one(suite: Suite, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let (checks, notes) = match suite {
        Suite::WlRules => (wl_rules(cfg.seed)?, Vec::new()),
        Suite::PIdentities => (p_identities()?, Vec::new()),
        Suite::QLadder => (q_ladder()?, Vec::new()),
        Suite::RUniqueness => (r_uniqueness()?, Vec::new()),
        Suite::AEqB => a_eq_b(cfg.budget)?,
        Suite::Kernel => (kernel(cfg.budget)?, Vec::new()),
        Suite::All => unreachable!("expanded by run"),
    };
    Ok(SuiteReport { suite, checks, notes })
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn value_is(v: Valuation, want: Option<BigRational>) -> bool {
    v.to_rational() == want
}

/// The worked examples for `w_l`.
pub fn wl_examples() -> Result<Check> {
    let mut c = Check::new("w_l worked examples");
    for level in 1..=6u32 {
        let one = RingElement::one(level)?;
        let f = element_f(level)?;
        let f2 = &f * &f;
        for l in 0..level {
            let p = 1i64 << l;
            for a in -2i64..=4 {
                let two_a = if a >= 0 {
                    RingElement::constant(level, rat(1 << a, 1))?
                } else {
                    RingElement::constant(level, rat(1, 1 << -a))?
                };
                c.record(value_is(w_l(&two_a, l)?, Some(rat(a, 1))), || {
                    format!("w_{l}(2^{a}) at K={level}")
                });
            }
            let wf = if l == 0 { None } else { Some(rat(0, 1)) };
            c.record(value_is(w_l(&f, l)?, wf), || format!("w_{l}(f) at K={level}"));
            for g in [&f + &one, &f - &one] {
                c.record(value_is(w_l(&g, l)?, Some(rat(p - 1, p))), || {
                    format!("w_{l}(f +- 1) at K={level}")
                });
            }
            c.record(value_is(w_l(&(&f2 - &one), l)?, Some(rat(2 * p - 2, p))), || {
                format!("w_{l}(f^2 - 1) at K={level}")
            });
            let want = match l {
                0 => Some(rat(0, 1)),
                1 => None,
                _ => Some(rat(1, 1)),
            };
            c.record(value_is(w_l(&(&f2 + &one), l)?, want), || {
                format!("w_{l}(f^2 + 1) at K={level}")
            });
            for k in [1u64, 3, 5, 7] {
                let fp = element_f_prime(level, k)?;
                c.record(value_is(w_l(&fp, l)?, Some(rat(0, 1))), || {
                    format!("w_{l}(f'_{k}) at K={level}")
                });
            }
        }
    }
    Ok(c)
}

fn random_integral(rng: &mut ChaCha8Rng, level: u32, spread: i64) -> Result<RingElement> {
    let n = 1usize << level;
    let raw: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(-spread..=spread)).collect();
    RingElement::from_integers(level, &raw)
}

/// Random elements spanning a range of valuations: `2^a h (1 - chi)^j f^m`.
fn random_element(rng: &mut ChaCha8Rng, level: u32) -> Result<RingElement> {
    let h = random_integral(rng, level, 3)?;
    let a: i64 = rng.gen_range(-1..=level as i64 + 3);
    let j = rng.gen_range(0..=(1u32 << level));
    let m = rng.gen_range(0..=2u32);
    let two_a = if a >= 0 { rat(1 << a, 1) } else { rat(1, 1 << -a) };
    let g = h.scale(&two_a).mul_one_minus_chi_pow(j);
    Ok(&g * &element_f(level)?.pow(m))
}

/// The product, minimum and strict-minimum rules for `w_l`, and agreement
/// of the two `w_l` routes.
pub fn wl_rules_random(seed: u64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut product = Check::new("w_l(g h) = w_l(g) + w_l(h)");
    let mut minimum = Check::new("w_l(g + h) >= min");
    let mut strict = Check::new("w_l(g + h) = min when w_l(g) != w_l(h)");
    let mut routes = Check::new("w_l via GF(2) transform = w_l via normal form");
    for level in 1..=5u32 {
        for _ in 0..500 {
            let g = random_element(&mut rng, level)?;
            let h = random_element(&mut rng, level)?;
            let gh = &g * &h;
            let sum = &g + &h;
            for l in 0..level {
                let (wg, wh) = (w_l(&g, l)?, w_l(&h, l)?);
                let ws = w_l(&sum, l)?;
                product.record(w_l(&gh, l)? == wg + wh, || format!("K={level} l={l} g={g} h={h}"));
                minimum.record(ws >= wg.min(wh), || format!("K={level} l={l} g={g} h={h}"));
                if wg != wh {
                    strict.record(ws == wg.min(wh), || format!("K={level} l={l} g={g} h={h}"));
                }
                routes.record(w_l_normal_form(&g, l)? == wg, || format!("K={level} l={l} g={g}"));
            }
        }
    }
    Ok(vec![product, minimum, strict, routes])
}

pub fn crt_round_trip(seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0c27);
    let mut c = Check::new("CRT reconstruction of all projections");
    for level in 1..=5u32 {
        for _ in 0..100 {
            let g = random_element(&mut rng, level)?;
            let back = crt_reconstruct(&g.projections())?;
            c.record(back == g, || format!("K={level} g={g}"));
        }
    }
    Ok(c)
}

pub fn criterion_soundness(seed: u64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x50d);
    let mut suff = Check::new("sufficient criterion never wrong");
    let mut nec = Check::new("necessary criterion never wrong");
    let mut decided = 0u64;
    for level in 1..=5u32 {
        for _ in 0..500 {
            let g = random_element(&mut rng, level)?;
            let member = g.is_in_4z();
            if criterion_sufficient(&g) == SufficientVerdict::ProvesMembership {
                decided += 1;
                suff.record(member, || format!("K={level} g={g}"));
            }
            if criterion_necessary_auto(&g).is_some() {
                decided += 1;
                nec.record(!member, || format!("K={level} g={g}"));
            }
        }
    }
    let mut coverage = Check::new("criteria decide some random elements");
    coverage.record(suff.cases > 0 && nec.cases > 0, || format!("decided {decided}"));
    Ok(vec![suff, nec, coverage])
}

pub fn f_injective_on_minus(seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xf);
    let mut c = Check::new("f z = 0 implies z = 0 on the minus eigenspace");
    for level in 1..=5u32 {
        let f = element_f(level)?;
        for _ in 0..100 {
            let h = random_integral(&mut rng, level, 5)?;
            let z = &h - &h.conjugate();
            let ok = z.in_eigenspace(Sign::Minus) && ((&f * &z).is_zero() == z.is_zero());
            c.record(ok, || format!("K={level} z={z}"));
        }
    }
    Ok(c)
}

pub fn beta_round_trip(seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xb);
    let mut c = Check::new("beta^(-1) beta = beta beta^(-1) = id");
    for _ in 0..200 {
        let deg = rng.gen_range(0..8usize);
        let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-50..=50)).collect();
        let q = IntPolynomial::from_i64(&coeffs);
        let ok = beta_inv(&beta(&q)?)? == q && beta(&beta_inv(&q)?)? == q;
        c.record(ok, || format!("q={q}"));
    }
    Ok(c)
}

pub fn x_identity() -> Check {
    let mut c = Check::new("(1 - chi)^(2^k) = 2 x_k + 1 + chi^(2^k)");
    for k in 0..=5u32 {
        let lhs = IntPolynomial::from_i64(&[1, -1]).pow(1 << k);
        let rhs = &x_polynomial(k).shl(1)
            + &(&IntPolynomial::one() + &IntPolynomial::monomial(1 << k, BigInt::one()));
        c.record(lhs == rhs, || format!("k={k}"));
    }
    c
}

fn wl_rules(seed: u64) -> Result<Vec<Check>> {
    let mut out = vec![wl_examples()?];
    out.extend(wl_rules_random(seed)?);
    out.push(crt_round_trip(seed)?);
    out.extend(criterion_soundness(seed)?);
    out.push(f_injective_on_minus(seed)?);
    out.push(beta_round_trip(seed)?);
    out.push(x_identity());
    Ok(out)
}

/// `q(f^2)` by Horner's rule in the ring.
pub fn at_f_squared(q: &IntPolynomial, level: u32) -> Result<RingElement> {
    let f = element_f(level)?;
    let f2 = &f * &f;
    let mut acc = RingElement::zero(level)?;
    for c in q.coeffs().iter().rev() {
        acc = &(&acc * &f2) + &RingElement::one(level)?.scale_int(c);
    }
    Ok(acc)
}

fn p_identities() -> Result<Vec<Check>> {
    let mut ident = Check::new("p_k(f^2) (1 - chi)^(2^k) = 2^(2^k - 1) (1 + chi^(2^k))");
    let mut vals = Check::new("w_l(p_k(f^2)) = inf at l = k, 2^k - 1 above");
    for k in 1..=4u32 {
        let pk = p_k(k)?;
        for level in (k + 1)..=6 {
            let v = at_f_squared(&pk, level)?;
            let lhs = v.mul_one_minus_chi_pow(1 << k);
            let rhs = (&RingElement::one(level)? + &RingElement::chi_pow(level, 1 << k)?)
                .scale_int(&(BigInt::one() << ((1usize << k) - 1)));
            ident.record(lhs == rhs, || format!("k={k} K={level}"));
            for l in k..level {
                let want = if l == k { None } else { Some(rat((1 << k) - 1, 1)) };
                vals.record(value_is(w_l(&v, l)?, want), || format!("k={k} K={level} l={l}"));
            }
        }
    }
    Ok(vec![ident, vals])
}

fn in_4z(q: &IntPolynomial, level: u32, k: u64, m: u32, power: u32) -> Result<bool> {
    Ok(evaluate_with_one_minus_chi(q, level, k, FactorMode::FPower(m), power)?.is_in_4z())
}

fn q_ladder() -> Result<Vec<Check>> {
    let mut member = Check::new("q_n membership ladder at I<2n+1>, I<2n+2>, I<2n+3>");
    let mut powers = Check::new("q_n times powers of (1 - chi)");
    let mut vals = Check::new("w_l(8 f'_k f^m q_n(f^2))");
    for n in 0..=5usize {
        let q = q_n(n);
        let (a, b) = split_n(n);
        let n32 = n as u32;
        for k in [1u64, 3] {
            for m in [1u32, 2] {
                let tag = || format!("n={n} k={k} m={m}");
                member.record(in_4z(&q, 2 * n32 + 1, k, m, 0)?, tag);
                member.record(in_4z(&q, 2 * n32 + 2, k, m, 0)? == (b == 0), tag);
                member.record(!in_4z(&q, 2 * n32 + 3, k, m, 0)?, tag);
                if b > 0 {
                    powers.record(in_4z(&q, 2 * n32 + 2, k, m, 2 * b as u32 - 1)?, tag);
                }
                for s in 1..=2u32 {
                    let e = 2 * n32 + 1 + (1 << a) * ((1 << s) - 2);
                    powers.record(in_4z(&q, 2 * n32 + 2 + s, k, m, e)?, || {
                        format!("n={n} k={k} m={m} s={s}")
                    });
                }
                powers.record(!in_4z(&q, 2 * n32 + 3, k, m, 2 * n32)?, tag);

                let level = 2 * n32 + 3;
                let g = evaluate_with_one_minus_chi(&q, level, k, FactorMode::FPower(m), 0)?;
                for l in 0..level {
                    let want = if l <= a {
                        None
                    } else {
                        let den = 1i64 << (l - 1);
                        Some(rat((2 * n as i64 + 3 - a as i64) * den - b as i64, den))
                    };
                    vals.record(value_is(w_l(&g, l)?, want), || format!("n={n} k={k} m={m} l={l}"));
                }
            }
        }
    }
    Ok(vec![member, powers, vals])
}

fn r_uniqueness() -> Result<Vec<Check>> {
    let mut table = Check::new("r^-_n for n <= 4");
    let expected = [
        q_n(0),
        q_n(1),
        &q_n(2) + &q_n(0).shl(3),
        q_n(3),
        &q_n(4) + &q_n(0).shl(7),
    ];
    for (n, want) in expected.iter().enumerate() {
        let got = r_minus(n)?.polynomial;
        table.record(&got == want, || format!("n={n}: {got} != {want}"));
    }
    let mut unique = Check::new("unique r^-_n candidate for every (k, m)");
    for n in 0..=6usize {
        let rec = r_minus(n)?;
        let mask: u64 = rec.chosen_bits.iter().map(|(&l, &a)| (a as u64) << l).sum();
        for k in [1u64, 3] {
            for m in [1u32, 2] {
                let hits = r_minus_search(n, k, m)?;
                unique.record(hits == [mask], || format!("n={n} k={k} m={m}: {hits:?}"));
            }
        }
    }
    Ok(vec![table, unique])
}

/// The `(K, k, d)` grid checked by the `a-eq-b` suite.
pub fn a_eq_b_grid() -> Vec<(u32, u64, u32)> {
    let mut out = Vec::new();
    for level in 1..=4u32 {
        for k in [1u64, 3, 5] {
            for d in 5..=9u32 {
                let bits = level as u64 * coefficient_count(d) as u64;
                if bits <= DEFAULT_BUDGET.trailing_zeros() as u64 {
                    out.push((level, k, d));
                }
            }
        }
    }
    out
}

fn a_eq_b(budget: u64) -> Result<(Vec<Check>, Vec<String>)> {
    let mut c = Check::new("A_K^k(d) = B_K(d) by enumeration");
    for (level, k, d) in a_eq_b_grid() {
        let a = brute_force_a(level, k, d, budget)?;
        let b = b_basis(level, d)?;
        let ok = a.index_exponent == b.index_exponent
            && b.basis.iter().all(|q| a.contains(q))
            && a.basis.iter().all(|q| b.contains(q));
        c.record(ok, || format!("K={level} k={k} d={d}"));
    }
    let notes = (0..=3usize)
        .map(|n| {
            Ok(match shape_holds(n)? {
                true => format!("shape of degree-{n} polynomials at I<{}>: holds", 2 * n + 3),
                false => format!("shape of degree-{n} polynomials at I<{}>: FAILS", 2 * n + 3),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((vec![c], notes))
}

fn kernel(budget: u64) -> Result<Vec<Check>> {
    let mut divisors = Check::new("kernel elementary divisors = 2^min(K, 2i)");
    let mut routes = Check::new("rho kernel = A membership pointwise");
    let mut k_indep = Check::new("kernel independent of k");
    for d in 3..=9u32 {
        let c = coefficient_count(d) as u32;
        for level in 1..=3u32 {
            let mut want: Vec<u64> = (1..=c).map(|i| 1u64 << level.min(2 * i)).collect();
            want.sort_unstable();
            let mut lattices = Vec::new();
            for k in [1u64, 3] {
                let rep = kernel_oracle(d, level, k, budget)?;
                divisors.record(rep.elementary_divisors == want, || {
                    format!("d={d} K={level} k={k}: {:?}", rep.elementary_divisors)
                });
                route_agreement(&mut routes, d, level, k)?;
                lattices.push(rep.lattice);
            }
            k_indep.record(lattices[0] == lattices[1], || format!("d={d} K={level}"));
        }
    }
    let mut descriptors = Check::new("structure-set descriptors");
    for d in 5..=9u32 {
        let c = coefficient_count(d) as u32;
        for level in 1..=6u32 {
            let s = structure_set(d, level)?;
            let n = 1u64 << level;
            let rank = if d % 2 == 1 { n / 2 - 1 } else { n / 2 };
            let torsion = s.torsion.clone().unwrap_or_default();
            let orders: Vec<u64> = torsion.iter().map(|e| e.order).collect();
            let mut want = vec![2u64; c as usize];
            want.extend((1..=c).map(|i| 1u64 << level.min(2 * i)));
            let mut ok = s.free_rank == rank && free_rank(d, level)? == rank && orders == want;
            if level <= 3 {
                let mut tops = orders[c as usize..].to_vec();
                tops.sort_unstable();
                for k in [1u64, 3] {
                    ok &= kernel_oracle(d, level, k, budget)?.elementary_divisors == tops;
                }
            }
            descriptors.record(ok, || format!("d={d} K={level}: {s:?}"));
        }
    }
    Ok(vec![divisors, routes, k_indep, descriptors])
}

fn route_agreement(check: &mut Check, d: u32, level: u32, k: u64) -> Result<()> {
    let c = coefficient_count(d);
    let modulus = 1i64 << level;
    let total = (modulus as u64).pow(c as u32);
    for code in 0..total {
        let t4: Vec<i64> = (0..c)
            .map(|i| ((code >> (i as u32 * level)) as i64) & (modulus - 1))
            .collect();
        let t = NormalInvariantVector::new(d, level, &t4, &vec![0; c])?;
        let by_rho = rho_bracket(&t, k)?.is_in_4z();
        let by_a = crate::best::membership_a(&t_to_polynomial(&t), level, k, d, None)?;
        check.record(by_rho == by_a, || format!("d={d} K={level} k={k} t4={t4:?}"));
    }
    Ok(())
}
