//! Unit complex numbers e^{i pi r} with rational r taken mod 2.

use std::fmt;
use std::ops::Mul;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use super::rat::{ri, Rat};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Phase {
    r: Rat,
}

impl Phase {
    pub fn new(r: Rat) -> Self {
        let two = ri(2);
        let q = (&r / &two).floor();
        let mut v = r - q * two;
        if v.is_negative() {
            v += ri(2);
        }
        Phase { r: v }
    }

    pub fn one() -> Self {
        Phase { r: Rat::zero() }
    }

    pub fn exponent(&self) -> &Rat {
        &self.r
    }

    pub fn inverse(&self) -> Self {
        Phase::new(-self.r.clone())
    }

    /// +1 or -1 when the phase is real.
    pub fn sign(&self) -> Option<i64> {
        if self.r.is_zero() {
            Some(1)
        } else if self.r == ri(1) {
            Some(-1)
        } else {
            None
        }
    }

    pub fn pow(&self, e: i64) -> Self {
        Phase::new(&self.r * ri(e))
    }

    /// Order of the phase in the unit circle group.
    pub fn order(&self) -> u64 {
        let d = self.r.denom().clone();
        let n = self.r.numer().clone();
        // e^{i pi n/d} has order 2d/gcd(n, 2d)
        let two_d = d * 2;
        let g = n.gcd(&two_d);
        (two_d / g).try_into().unwrap_or(u64::MAX)
    }
}

impl Mul for &Phase {
    type Output = Phase;
    fn mul(self, o: &Phase) -> Phase {
        Phase::new(&self.r + &o.r)
    }
}

impl Mul for Phase {
    type Output = Phase;
    fn mul(self, o: Phase) -> Phase {
        &self * &o
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign() {
            Some(1) => f.write_str("1"),
            Some(_) => f.write_str("-1"),
            None => write!(f, "e^(i*pi*{})", self.r),
        }
    }
}

impl Serialize for Phase {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.r.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;

    #[test]
    fn normalization() {
        assert_eq!(Phase::new(rat(49, 16)).exponent(), &rat(17, 16));
        assert_eq!(Phase::new(rat(-1, 2)).exponent(), &rat(3, 2));
        assert_eq!(Phase::new(ri(4)), Phase::one());
    }

    #[test]
    fn products_and_orders() {
        let a = Phase::new(rat(1, 16));
        assert_eq!(&a * &Phase::new(ri(1)), Phase::new(rat(17, 16)));
        assert_eq!(Phase::new(ri(1)).order(), 2);
        assert_eq!(a.order(), 32);
        assert_eq!(Phase::new(ri(1)).pow(2), Phase::one());
        assert_eq!(Phase::new(ri(3)).sign(), Some(-1));
    }
}
