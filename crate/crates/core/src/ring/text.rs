//! `K=<int>; c0,c1,...` text form of ring elements.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::scaled::Scaled;
use super::RingElement;
use crate::error::{Error, Result};

pub(super) fn write_coeffs(f: &mut fmt::Formatter<'_>, data: &Scaled) -> fmt::Result {
    for (i, c) in data.to_rationals().iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        if c.denom().is_one() {
            write!(f, "{}", c.numer())?;
        } else {
            write!(f, "{}/{}", c.numer(), c.denom())?;
        }
    }
    Ok(())
}

pub(super) fn write_element(f: &mut fmt::Formatter<'_>, e: &RingElement) -> fmt::Result {
    write!(f, "K={}; ", e.level())?;
    write_coeffs(f, e.data())
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("invalid rational '{s}'"));
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(s.parse::<BigInt>().map_err(|_| bad())?)),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.sign() != num_bigint::Sign::Plus {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
    }
}

impl FromStr for RingElement {
    type Err = Error;

    /// Strict parse: the coefficient count must be exactly `2^K - 1`.
    fn from_str(s: &str) -> Result<Self> {
        let (head, body) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse("expected 'K=<int>; coefficients'".into()))?;
        let level: u32 = head
            .trim()
            .strip_prefix("K=")
            .and_then(|k| k.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("invalid level header '{}'", head.trim())))?;
        super::check_level(level)?;
        let coeffs = body
            .split(',')
            .map(|c| parse_rational(c.trim()))
            .collect::<Result<Vec<_>>>()?;
        let expected = (1usize << level) - 1;
        if coeffs.len() != expected {
            return Err(Error::Parse(format!(
                "expected {expected} coefficients for K={level}, got {}",
                coeffs.len()
            )));
        }
        RingElement::new(level, &coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let raw: Vec<BigRational> = (1..=8)
            .map(|i| BigRational::new(BigInt::from(-i), BigInt::from(8)))
            .collect();
        let e = RingElement::new(3, &raw).unwrap();
        let text = e.to_string();
        assert_eq!(text, "K=3; 7/8,3/4,5/8,1/2,3/8,1/4,1/8");
        assert_eq!(text.parse::<RingElement>().unwrap(), e);
    }

    #[test]
    fn strict_length() {
        assert!("K=2; 1,2".parse::<RingElement>().is_err());
        assert!("K=2; 1,2,3,4".parse::<RingElement>().is_err());
        assert!("K=2; 1,2,x".parse::<RingElement>().is_err());
        assert!("K=0; 1".parse::<RingElement>().is_err());
        assert_eq!("K=1; -3".parse::<RingElement>().unwrap().to_string(), "K=1; -3");
    }
}
