use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A vector of rationals stored as integer numerators over one positive
/// common denominator, reduced so that the gcd of the denominator and all
/// numerators is 1. Equal vectors have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Scaled {
    pub(crate) numer: Vec<BigInt>,
    pub(crate) denom: BigInt,
}

impl Scaled {
    pub(crate) fn new(mut numer: Vec<BigInt>, mut denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        if denom.is_negative() {
            denom = -denom;
            for c in numer.iter_mut() {
                *c = -&*c;
            }
        }
        if numer.iter().all(Zero::is_zero) {
            return Scaled { numer, denom: BigInt::one() };
        }
        if !denom.is_one() {
            let mut g = denom.clone();
            for c in &numer {
                if g.is_one() {
                    break;
                }
                if !c.is_zero() {
                    g = g.gcd(c);
                }
            }
            if !g.is_one() {
                for c in numer.iter_mut() {
                    *c = &*c / &g;
                }
                denom /= &g;
            }
        }
        Scaled { numer, denom }
    }

    pub(crate) fn zero(len: usize) -> Self {
        Scaled { numer: vec![BigInt::zero(); len], denom: BigInt::one() }
    }

    pub(crate) fn from_rationals(coeffs: &[BigRational]) -> (Vec<BigInt>, BigInt) {
        let denom = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let numer = coeffs
            .iter()
            .map(|c| c.numer() * (&denom / c.denom()))
            .collect();
        (numer, denom)
    }

    pub(crate) fn to_rationals(&self) -> Vec<BigRational> {
        self.numer
            .iter()
            .map(|c| BigRational::new(c.clone(), self.denom.clone()))
            .collect()
    }

    pub(crate) fn coeff(&self, j: usize) -> BigRational {
        BigRational::new(self.numer[j].clone(), self.denom.clone())
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.numer.iter().all(Zero::is_zero)
    }

    pub(crate) fn is_integral(&self) -> bool {
        self.denom.is_one()
    }

    /// Integral and every coefficient divisible by 4.
    pub(crate) fn is_in_4z(&self) -> bool {
        self.is_integral() && self.numer.iter().all(|c| (c & BigInt::from(3)).is_zero())
    }

    /// Elementwise `self + sign * other`.
    pub(crate) fn combine(&self, other: &Scaled, subtract: bool) -> Scaled {
        let denom = self.denom.lcm(&other.denom);
        let fa = &denom / &self.denom;
        let fb = &denom / &other.denom;
        let numer = self
            .numer
            .iter()
            .zip(&other.numer)
            .map(|(a, b)| {
                if subtract {
                    a * &fa - b * &fb
                } else {
                    a * &fa + b * &fb
                }
            })
            .collect();
        Scaled::new(numer, denom)
    }

    pub(crate) fn scale(&self, c: &BigRational) -> Scaled {
        let numer = self.numer.iter().map(|a| a * c.numer()).collect();
        Scaled::new(numer, &self.denom * c.denom())
    }

    pub(crate) fn neg(&self) -> Scaled {
        Scaled {
            numer: self.numer.iter().map(|a| -a).collect(),
            denom: self.denom.clone(),
        }
    }
}
