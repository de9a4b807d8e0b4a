//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rat::{divisors, lcm_denoms, ri, Rat};

/// Coefficients are stored low degree first with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UPoly {
    c: Vec<Rat>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(r: Rat) -> Self {
        Self::from_coeffs(vec![r])
    }

    /// The monomial X.
    pub fn x() -> Self {
        Self::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    pub fn from_coeffs(mut c: Vec<Rat>) -> Self {
        while c.last().is_some_and(|r| r.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.c.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rat {
        self.c.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        UPoly { c: self.c.iter().map(|a| a * r).collect() }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.c.iter().rev().fold(Rat::zero(), |acc, a| acc * x + a)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        self.scale(&(Rat::one() / l))
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(self.c.iter().enumerate().skip(1).map(|(i, a)| a * ri(i as i64)).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.c.clone();
        let n = r.len();
        if n <= dd {
            return (Self::zero(), self.clone());
        }
        let inv = Rat::one() / d.lead();
        let mut q = vec![Rat::zero(); n - dd];
        for i in (0..n - dd).rev() {
            let c = &r[i + dd] * &inv;
            if !c.is_zero() {
                for (j, dj) in d.c.iter().enumerate() {
                    r[i + j] -= &c * dj;
                }
            }
            q[i] = c;
        }
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Substitutes X -> X^2.
    pub fn even_lift(&self) -> UPoly {
        let mut c = vec![Rat::zero(); self.c.len() * 2];
        for (i, a) in self.c.iter().enumerate() {
            c[2 * i] = a.clone();
        }
        Self::from_coeffs(c)
    }

    /// Inverse of `even_lift` when only even powers occur.
    pub fn even_part_in_square(&self) -> Option<UPoly> {
        if self.c.iter().enumerate().any(|(i, a)| i % 2 == 1 && !a.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(self.c.iter().step_by(2).cloned().collect()))
    }

    /// Integer coefficient primitive form, positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let l = lcm_denoms(self.c.iter());
        let ints: Vec<BigInt> = self.c.iter().map(|a| (a * Rat::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, a| num_integer::Integer::gcd(&g, a));
        let sign = if self.lead().is_negative() { -BigInt::one() } else { BigInt::one() };
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|a| a / &g * &sign).collect()
    }

    /// All rational roots, ascending, by the rational root theorem.
    pub fn rational_roots(&self) -> Vec<Rat> {
        assert!(!self.is_zero(), "rational_roots of the zero polynomial");
        let mut roots = Vec::new();
        let mut p = self.clone();
        if p.coeff(0).is_zero() {
            roots.push(Rat::zero());
            while p.coeff(0).is_zero() && !p.is_zero() {
                p = UPoly::from_coeffs(p.c[1..].to_vec());
            }
        }
        if p.degree().unwrap_or(0) == 0 {
            return roots;
        }
        let ints = p.primitive_integer();
        let a0 = ints.first().unwrap().clone();
        let an = ints.last().unwrap().clone();
        let dp = divisors(&a0);
        let dq = divisors(&an);
        let mut cands: Vec<Rat> = Vec::new();
        for num in &dp {
            for den in &dq {
                let r = Rat::new(num.clone(), den.clone());
                cands.push(r.clone());
                cands.push(-r);
            }
        }
        cands.sort();
        cands.dedup();
        for c in cands {
            if p.eval(&c).is_zero() {
                roots.push(c);
            }
        }
        roots.sort();
        roots
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::from_coeffs((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::from_coeffs((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly { c: self.c.iter().map(|a| -a).collect() }
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![Rat::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly::from_coeffs(c)
    }
}

impl UPoly {
    /// Renders with the given variable name, highest degree first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            let mag = a.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                s.push_str(&mag.to_string());
            } else if mag.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{mag}*{mono}"));
            }
        }
        s
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("X"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;

    fn p(c: &[i64]) -> UPoly {
        UPoly::from_coeffs(c.iter().map(|&a| ri(a)).collect())
    }

    #[test]
    fn division_and_gcd() {
        let a = &p(&[-1, 0, 1]) * &p(&[2, 1]);
        let (q, r) = a.divrem(&p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(q, &p(&[1, 1]) * &p(&[2, 1]));
        assert_eq!(UPoly::gcd(&a, &p(&[1, 1])), p(&[1, 1]));
        assert_eq!(UPoly::gcd(&p(&[1, 1]), &p(&[2, 1])), p(&[1]));
    }

    #[test]
    fn roots() {
        assert_eq!(p(&[1, -3, 2]).rational_roots(), vec![rat(1, 2), ri(1)]);
        assert!(p(&[1, 0, 1]).rational_roots().is_empty());
        let q = UPoly::from_coeffs(vec![rat(30625, 2304), rat(-89, 12), ri(1)]);
        assert!(q.rational_roots().is_empty());
        assert_eq!(p(&[0, 0, -1, 1]).rational_roots(), vec![ri(0), ri(1)]);
    }

    #[test]
    fn even_lift_roundtrip() {
        let a = p(&[3, 0, 5]);
        assert_eq!(a.even_lift(), p(&[3, 0, 0, 0, 5]));
        assert_eq!(a.even_lift().even_part_in_square().unwrap(), a);
        assert!(p(&[0, 1]).even_part_in_square().is_none());
    }

    #[test]
    fn rendering() {
        assert_eq!(p(&[1, -3, 2]).render("t"), "2*t^2 - 3*t + 1");
        assert_eq!(UPoly::zero().render("t"), "0");
    }
}
