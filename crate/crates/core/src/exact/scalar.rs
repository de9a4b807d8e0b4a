//! Scalars of the form c0 + c1*lam with lam^2 = s, or rational functions of a
//! free lam when no modulus is fixed.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::rat::{rat_sqrt, Rat};
use super::upoly::UPoly;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadModulus {
    pub s: Rat,
}

/// Invariants: a scalar that does not involve lam never carries a modulus;
/// with a modulus the numerator has degree <= 1 and the denominator is 1;
/// without one, numerator and denominator are coprime and the denominator is monic.
#[derive(Clone, Debug)]
pub struct Scalar {
    num: UPoly,
    den: UPoly,
    modulus: Option<Arc<QuadModulus>>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: UPoly::zero(), den: UPoly::one(), modulus: None }
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    pub fn from_rat(r: Rat) -> Self {
        Scalar { num: UPoly::constant(r), den: UPoly::one(), modulus: None }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_rat(super::rat::ri(n))
    }

    /// lam with lam^2 = s. When s is a rational square the root is substituted.
    pub fn lam(s: &Rat) -> Self {
        if let Some(r) = rat_sqrt(s) {
            return Self::from_rat(r);
        }
        Scalar { num: UPoly::x(), den: UPoly::one(), modulus: Some(Arc::new(QuadModulus { s: s.clone() })) }
    }

    /// lam as a free indeterminate.
    pub fn lam_formal() -> Self {
        Scalar { num: UPoly::x(), den: UPoly::one(), modulus: None }
    }

    /// Builds c0 + c1*lam in the given modulus (or formally when `s` is None).
    pub fn quad(c0: Rat, c1: Rat, s: Option<&Rat>) -> Self {
        let l = match s {
            Some(s) => Self::lam(s),
            None => Self::lam_formal(),
        };
        Self::from_rat(c0) + l * Self::from_rat(c1)
    }

    /// Formal rational function num(lam)/den(lam).
    pub fn formal(num: UPoly, den: UPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self::normalize(num, den, None)
    }

    pub fn modulus(&self) -> Option<&Rat> {
        self.modulus.as_ref().map(|m| &m.s)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value does not involve lam.
    pub fn is_rational(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn to_rat(&self) -> Option<Rat> {
        if self.is_rational() {
            Some(self.num.coeff(0) / self.den.coeff(0))
        } else {
            None
        }
    }

    pub fn numer(&self) -> &UPoly {
        &self.num
    }

    pub fn denom(&self) -> &UPoly {
        &self.den
    }

    /// (c0, c1) for a value c0 + c1*lam with trivial denominator.
    pub fn linear_parts(&self) -> Option<(Rat, Rat)> {
        if self.den.is_one() && self.num.degree().unwrap_or(0) <= 1 {
            Some((self.num.coeff(0), self.num.coeff(1)))
        } else {
            None
        }
    }

    /// For a formal scalar that is an even function of lam, returns it as
    /// (numerator, denominator) polynomials in s = lam^2.
    pub fn even_in_s(&self) -> Option<(UPoly, UPoly)> {
        if self.modulus.is_some() {
            return None;
        }
        let (n, d) = (&self.num, &self.den);
        if let (Some(n2), Some(d2)) = (n.even_part_in_square(), d.even_part_in_square()) {
            return Some((n2, d2));
        }
        // An even function may still come as odd/odd after cancellation.
        let x = UPoly::x();
        let (n2, d2) = ((&x * n).even_part_in_square()?, (&x * d).even_part_in_square()?);
        Some((n2, d2))
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::normalize(self.den.clone(), self.num.clone(), self.modulus.clone()))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    fn merge(a: &Scalar, b: &Scalar) -> Option<Arc<QuadModulus>> {
        match (&a.modulus, &b.modulus) {
            (None, None) => None,
            (Some(m), None) => {
                assert!(b.is_rational(), "cannot mix a formal lam with lam^2 = {}", m.s);
                Some(m.clone())
            }
            (None, Some(m)) => {
                assert!(a.is_rational(), "cannot mix a formal lam with lam^2 = {}", m.s);
                Some(m.clone())
            }
            (Some(m1), Some(m2)) => {
                assert!(m1.s == m2.s, "incompatible moduli lam^2 = {} and lam^2 = {}", m1.s, m2.s);
                Some(m1.clone())
            }
        }
    }

    /// Checks whether two scalars can be combined.
    pub fn compatible(a: &Scalar, b: &Scalar) -> bool {
        match (&a.modulus, &b.modulus) {
            (None, None) => true,
            (Some(_), None) => b.is_rational(),
            (None, Some(_)) => a.is_rational(),
            (Some(m1), Some(m2)) => m1.s == m2.s,
        }
    }

    fn reduce_mod(p: &UPoly, s: &Rat) -> UPoly {
        let mut c0 = Rat::zero();
        let mut c1 = Rat::zero();
        let mut pw = Rat::one();
        for (i, a) in p.coeffs().iter().enumerate() {
            if i > 1 && i % 2 == 0 {
                pw = pw * s;
            }
            if i % 2 == 0 {
                c0 += a * &pw;
            } else {
                c1 += a * &pw;
            }
        }
        UPoly::from_coeffs(vec![c0, c1])
    }

    fn normalize(num: UPoly, den: UPoly, m: Option<Arc<QuadModulus>>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        match m {
            Some(m) => {
                let mut n = Self::reduce_mod(&num, &m.s);
                let d = Self::reduce_mod(&den, &m.s);
                let (d0, d1) = (d.coeff(0), d.coeff(1));
                let norm = if d1.is_zero() {
                    d0
                } else {
                    n = Self::reduce_mod(&(&n * &UPoly::from_coeffs(vec![d0.clone(), -d1.clone()])), &m.s);
                    &d0 * &d0 - &m.s * &d1 * &d1
                };
                assert!(!norm.is_zero(), "division by zero in Q(sqrt({}))", m.s);
                let n = n.scale(&(Rat::one() / norm));
                let modulus = if n.is_constant() { None } else { Some(m) };
                Scalar { num: n, den: UPoly::one(), modulus }
            }
            None => {
                if den.is_constant() {
                    let inv = Rat::one() / den.coeff(0);
                    return Scalar { num: num.scale(&inv), den: UPoly::one(), modulus: None };
                }
                let g = UPoly::gcd(&num, &den);
                let (mut n, mut d) = (num, den);
                if !g.is_one() {
                    n = n.divrem(&g).0;
                    d = d.divrem(&g).0;
                }
                let l = d.lead();
                let inv = Rat::one() / l;
                Scalar { num: n.scale(&inv), den: d.scale(&inv), modulus: None }
            }
        }
    }

    fn add_impl(a: &Scalar, b: &Scalar, negate: bool) -> Scalar {
        let m = Self::merge(a, b);
        let bn = if negate { -&b.num } else { b.num.clone() };
        if a.den.is_one() && b.den.is_one() {
            let n = &a.num + &bn;
            let modulus = if n.is_constant() { None } else { m };
            return Scalar { num: n, den: UPoly::one(), modulus };
        }
        let n = &(&a.num * &b.den) + &(&bn * &a.den);
        let d = &a.den * &b.den;
        Self::normalize(n, d, m)
    }

    fn mul_impl(a: &Scalar, b: &Scalar) -> Scalar {
        if a.is_zero() || b.is_zero() {
            return Scalar::zero();
        }
        let m = Self::merge(a, b);
        if a.is_rational() && a.den.is_one() {
            let c = a.num.coeff(0);
            return Scalar { num: b.num.scale(&c), den: b.den.clone(), modulus: b.modulus.clone() };
        }
        if b.is_rational() && b.den.is_one() {
            let c = b.num.coeff(0);
            return Scalar { num: a.num.scale(&c), den: a.den.clone(), modulus: a.modulus.clone() };
        }
        Self::normalize(&a.num * &b.num, &a.den * &b.den, m)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, o: &Scalar) -> bool {
        if !Scalar::compatible(self, o) {
            return false;
        }
        self.num == o.num && self.den == o.den
    }
}

impl Eq for Scalar {}

impl From<Rat> for Scalar {
    fn from(r: Rat) -> Self {
        Scalar::from_rat(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_i64(n)
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $body:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $f(self, o: &Scalar) -> Scalar {
                $body(self, o)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, o: Scalar) -> Scalar {
                $body(&self, &o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, o: &Scalar) -> Scalar {
                $body(&self, o)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $f(self, o: Scalar) -> Scalar {
                $body(self, &o)
            }
        }
    };
}

binop!(Add, add, |a, b| Scalar::add_impl(a, b, false));
binop!(Sub, sub, |a, b| Scalar::add_impl(a, b, true));
binop!(Mul, mul, Scalar::mul_impl);
binop!(Div, div, |a: &Scalar, b: &Scalar| Scalar::mul_impl(a, &b.inv().expect("division by zero scalar")));

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: -&self.num, den: self.den.clone(), modulus: self.modulus.clone() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = Scalar::add_impl(self, o, false);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = Scalar::add_impl(self, o, true);
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = Scalar::mul_impl(self, o);
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            f.write_str(&self.num.render("lam"))
        } else {
            write!(f, "({})/({})", self.num.render("lam"), self.den.render("lam"))
        }
    }
}

impl Scalar {
    /// Text used when the scalar multiplies something: wraps sums in parentheses.
    pub fn as_factor(&self) -> String {
        let s = self.to_string();
        if self.den.is_one() && self.num.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1 {
            s
        } else {
            format!("({s})")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::{rat, ri};

    #[test]
    fn quadratic_arithmetic() {
        let s = rat(1, 2);
        let l = Scalar::lam(&s);
        assert_eq!((&l * &l).to_rat(), Some(rat(1, 2)));
        let a = Scalar::quad(ri(1), ri(1), Some(&s));
        let inv = a.inv().unwrap();
        assert!((&a * &inv).is_one());
        // (1 + lam)^{-1} = (1 - lam)/(1 - 1/2)
        assert_eq!(inv, Scalar::quad(ri(2), ri(-2), Some(&s)));
        assert!(l.modulus().is_some());
        assert!((&l * &l).modulus().is_none());
    }

    #[test]
    fn square_moduli_collapse() {
        let l = Scalar::lam(&rat(9, 4));
        assert_eq!(l.to_rat(), Some(rat(3, 2)));
    }

    #[test]
    fn formal_rational_functions() {
        let l = Scalar::lam_formal();
        let one = Scalar::one();
        let a = (&l * &l - &one) / (&l - &one);
        assert_eq!(a, &l + &one);
        let e = Scalar::one() / (&l * &l * Scalar::from_i64(2) - &one);
        let (n, d) = e.even_in_s().unwrap();
        assert_eq!(n, UPoly::constant(rat(1, 2)));
        assert_eq!(d, UPoly::from_coeffs(vec![rat(-1, 2), ri(1)]));
        assert!(l.even_in_s().is_none());
    }

    #[test]
    #[should_panic]
    fn incompatible_moduli_panic() {
        let _ = Scalar::lam(&ri(2)) + Scalar::lam(&ri(3));
    }

    #[test]
    fn display() {
        let s = ri(2);
        assert_eq!(Scalar::quad(rat(1, 2), rat(-3, 4), Some(&s)).to_string(), "-3/4*lam + 1/2");
        assert_eq!(Scalar::from_rat(rat(-5, 3)).to_string(), "-5/3");
    }
}
