//! The augmentation-zero embedding of `Q[chi]/I<K>` into the group ring
//! `Q[Z_N]`.
//!
//! Since `chi^N - 1 = (chi - 1) * (1 + chi + ... + chi^(N-1))` with coprime
//! factors over `Q`, the map `c -> c * (1 - Phi/N)` identifies the quotient
//! ring with the ideal of group-ring elements whose coefficients sum to 0.
//! On that ideal multiplication by `1 - chi^k` (k odd) is a bijection and its
//! inverse is a prefix sum along the orbit of `k`, which makes repeated
//! division by `1 - chi` linear in `N`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::scaled::Scaled;

/// `numer / denom`, length `N`, coefficient sum zero.
#[derive(Clone, Debug)]
pub(crate) struct Cyclic {
    numer: Vec<BigInt>,
    denom: BigInt,
}

impl Cyclic {
    /// Embeds the class of the integer polynomial `poly / denom` (any
    /// degree) into the augmentation-zero ideal.
    pub(crate) fn from_poly(n: usize, poly: &[BigInt], denom: BigInt) -> Self {
        let mut folded = vec![BigInt::zero(); n];
        for (i, c) in poly.iter().enumerate() {
            folded[i % n] += c;
        }
        Self::embed(folded, denom)
    }

    /// `v` is a length-`N` representative; subtracts the mean.
    fn embed(v: Vec<BigInt>, denom: BigInt) -> Self {
        let n = BigInt::from(v.len());
        let sum: BigInt = v.iter().sum();
        let numer = v.into_iter().map(|c| c * &n - &sum).collect();
        let mut out = Cyclic { numer, denom: denom * n };
        out.reduce();
        out
    }

    pub(crate) fn from_scaled(n: usize, s: &Scaled) -> Self {
        Self::from_poly(n, &s.numer, s.denom.clone())
    }

    /// Reduction modulo `1 + chi + ... + chi^(N-1)` back to the canonical
    /// lift of degree `< N - 1`.
    pub(crate) fn into_scaled(mut self) -> Scaled {
        self.reduce();
        let last = self.numer.last().cloned().unwrap_or_default();
        let len = self.numer.len() - 1;
        let numer = self.numer.into_iter().take(len).map(|c| c - &last).collect();
        Scaled::new(numer, self.denom)
    }

    fn reduce(&mut self) {
        if self.denom.is_one() {
            return;
        }
        let mut g = self.denom.clone();
        for c in &self.numer {
            if g.is_one() {
                return;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            for c in self.numer.iter_mut() {
                *c = &*c / &g;
            }
            self.denom = &self.denom / &g;
        }
    }

    /// Multiplies by `1 - chi`.
    pub(crate) fn mul_one_minus_chi(&mut self) {
        let n = self.numer.len();
        let last = self.numer[n - 1].clone();
        for i in (1..n).rev() {
            let prev = self.numer[i - 1].clone();
            self.numer[i] -= prev;
        }
        self.numer[0] -= last;
        self.reduce();
    }

    /// Divides by `1 - chi^k` for odd `k`: the unique augmentation-zero `y`
    /// with `y_i - y_(i-k) = x_i`.
    pub(crate) fn div_one_minus_chi_pow(&mut self, k: u64) {
        let n = self.numer.len();
        let step = (k % n as u64) as usize;
        let mut prefix = vec![BigInt::zero(); n];
        let mut pos = 0usize;
        for _ in 1..n {
            let next = (pos + step) % n;
            prefix[next] = &prefix[pos] + &self.numer[next];
            pos = next;
        }
        let total: BigInt = prefix.iter().sum();
        let nn = BigInt::from(n);
        for (slot, p) in self.numer.iter_mut().zip(prefix) {
            *slot = p * &nn - &total;
        }
        self.denom = &self.denom * nn;
    }

    pub(crate) fn div_one_minus_chi(&mut self) {
        self.div_one_minus_chi_pow(1);
    }
}
