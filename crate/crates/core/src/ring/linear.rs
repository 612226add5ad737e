use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::RingElement;

/// Membership test in `4 Z[chi]/I<K>` for `sum_j a_j * columns[j]` with
/// integer `a_j`.
///
/// All columns are brought to a common denominator `D`; the combination is
/// in `4 Z[chi]` iff every numerator coordinate vanishes modulo `4 D`.
#[derive(Clone, Debug)]
pub struct LinearMembership {
    modulus: BigInt,
    /// `columns[j][i]` reduced modulo `4 D`.
    columns: Vec<Vec<BigInt>>,
    small: Option<SmallColumns>,
}

#[derive(Clone, Debug)]
struct SmallColumns {
    modulus: u64,
    columns: Vec<Vec<u64>>,
}

impl LinearMembership {
    pub fn new(columns: &[RingElement]) -> Self {
        let denom = columns
            .iter()
            .fold(BigInt::from(1), |acc, c| acc.lcm(c.denominator()));
        let modulus = &denom * 4;
        let reduced: Vec<Vec<BigInt>> = columns
            .iter()
            .map(|c| {
                let f = &denom / c.denominator();
                c.numerators().iter().map(|v| (v * &f).mod_floor(&modulus)).collect()
            })
            .collect();
        let small = modulus.to_u64().map(|m| SmallColumns {
            modulus: m,
            columns: reduced
                .iter()
                .map(|col| col.iter().map(|v| v.to_u64().unwrap()).collect())
                .collect(),
        });
        LinearMembership { modulus, columns: reduced, small }
    }

    pub fn rank(&self) -> usize {
        self.columns.len()
    }

    /// `4 D`.
    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn contains(&self, coeffs: &[BigInt]) -> bool {
        assert_eq!(coeffs.len(), self.columns.len());
        let Some(first) = self.columns.first() else {
            return true;
        };
        (0..first.len()).all(|i| {
            let s: BigInt = coeffs
                .iter()
                .zip(&self.columns)
                .filter(|(a, _)| !a.is_zero())
                .map(|(a, col)| a * &col[i])
                .sum();
            s.mod_floor(&self.modulus).is_zero()
        })
    }

    /// Calls `visit` with every `a in [0, bound)^rank` whose combination is a
    /// member, in lexicographic order with the last coordinate fastest.
    pub fn for_each_member(&self, bound: u64, mut visit: impl FnMut(&[u64])) {
        let rank = self.columns.len();
        let mut digits = vec![0u64; rank];
        if rank == 0 {
            visit(&digits);
            return;
        }
        if let Some(small) = &self.small {
            let m = small.modulus as u128;
            let len = small.columns[0].len();
            let mut acc = vec![0u128; len];
            // Wrapping a digit from bound - 1 back to 0 subtracts (bound - 1) * column.
            let wrap: Vec<Vec<u128>> = small
                .columns
                .iter()
                .map(|col| col.iter().map(|&v| (m - (v as u128 * (bound as u128 - 1)) % m) % m).collect())
                .collect();
            loop {
                if acc.iter().all(|&v| v == 0) {
                    visit(&digits);
                }
                let mut pos = rank;
                loop {
                    if pos == 0 {
                        return;
                    }
                    pos -= 1;
                    digits[pos] += 1;
                    if digits[pos] == bound {
                        digits[pos] = 0;
                        for (a, w) in acc.iter_mut().zip(&wrap[pos]) {
                            *a = (*a + w) % m;
                        }
                    } else {
                        for (a, &v) in acc.iter_mut().zip(&small.columns[pos]) {
                            *a = (*a + v as u128) % m;
                        }
                        break;
                    }
                }
            }
        } else {
            loop {
                let coeffs: Vec<BigInt> = digits.iter().map(|&d| BigInt::from(d)).collect();
                if self.contains(&coeffs) {
                    visit(&digits);
                }
                let mut pos = rank;
                loop {
                    if pos == 0 {
                        return;
                    }
                    pos -= 1;
                    digits[pos] += 1;
                    if digits[pos] == bound {
                        digits[pos] = 0;
                    } else {
                        break;
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_matches_pointwise_test() {
        let a = RingElement::from_integers(2, &[1, 2, 3]).unwrap();
        let half = RingElement::new(
            2,
            &[num_rational::BigRational::new(BigInt::from(1), BigInt::from(2))],
        )
        .unwrap();
        let lin = LinearMembership::new(&[a, half]);
        let mut seen = Vec::new();
        lin.for_each_member(16, |d| seen.push(d.to_vec()));
        let mut expected = Vec::new();
        for x in 0..16u64 {
            for y in 0..16u64 {
                if lin.contains(&[BigInt::from(x), BigInt::from(y)]) {
                    expected.push(vec![x, y]);
                }
            }
        }
        assert_eq!(seen, expected);
        // x (1 + 2chi + 3chi^2) + y/2 in 4Z: x = 0 mod 4 and y = 0 mod 8.
        assert_eq!(seen.len(), 4 * 2);
    }
}
