//! Arithmetic in Q[w]/(w^2 - alpha w + beta), used to evaluate polynomials at
//! the pair of conjugate roots of a quadratic without leaving the rationals.

use std::ops::{Add, Mul};

use num_traits::Zero;

use super::multipoly::{MultiPoly, Var};
use super::rat::Rat;
use crate::error::ExactError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadExtPoint {
    pub alpha: Rat,
    pub beta: Rat,
}

/// Which root of the quadratic is bound to the first designated variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootOrder {
    /// first = w, second = alpha - w
    Forward,
    /// first = alpha - w, second = w
    Swapped,
}

/// a + b*w
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadElt {
    pub a: Rat,
    pub b: Rat,
}

impl QuadExtPoint {
    pub fn new(alpha: Rat, beta: Rat) -> Self {
        QuadExtPoint { alpha, beta }
    }

    /// Discriminant alpha^2 - 4 beta; the roots are irrational iff it is not a rational square.
    pub fn discriminant(&self) -> Rat {
        &self.alpha * &self.alpha - Rat::from_integer(4.into()) * &self.beta
    }

    pub fn constant(&self, c: Rat) -> QuadElt {
        QuadElt { a: c, b: Rat::zero() }
    }

    pub fn w(&self) -> QuadElt {
        QuadElt { a: Rat::zero(), b: num_traits::One::one() }
    }

    pub fn add(&self, x: &QuadElt, y: &QuadElt) -> QuadElt {
        QuadElt { a: &x.a + &y.a, b: &x.b + &y.b }
    }

    pub fn mul(&self, x: &QuadElt, y: &QuadElt) -> QuadElt {
        // w^2 = alpha w - beta
        let bd = &x.b * &y.b;
        QuadElt { a: &x.a * &y.a - &bd * &self.beta, b: &x.a * &y.b + &x.b * &y.a + &bd * &self.alpha }
    }

    fn pow(&self, x: &QuadElt, e: u32) -> QuadElt {
        (0..e).fold(self.constant(num_traits::One::one()), |acc, _| self.mul(&acc, x))
    }

    /// Evaluates `p` with `first`, `second` bound to the two roots and the
    /// remaining variables to rationals. Returns (a, b) with value a + b*w.
    pub fn eval(
        &self,
        p: &MultiPoly,
        first: Var,
        second: Var,
        order: RootOrder,
        rest: &[(Var, Rat)],
    ) -> Result<(Rat, Rat), ExactError> {
        if first == second || rest.iter().any(|(v, _)| *v == first || *v == second) {
            return Err(ExactError::Arity("each variable must be bound exactly once".into()));
        }
        let w = self.w();
        let other = QuadElt { a: self.alpha.clone(), b: -<Rat as num_traits::One>::one() };
        let (v1, v2) = match order {
            RootOrder::Forward => (w, other),
            RootOrder::Swapped => (other, w),
        };
        let q = p.eval_partial(rest);
        let mut acc = self.constant(Rat::zero());
        for (m, c) in q.terms() {
            for v in Var::ALL {
                if v != first && v != second && m.0[v as usize] > 0 {
                    return Err(ExactError::Unassigned(v.name().into()));
                }
            }
            let t = self.mul(&self.pow(&v1, m.0[first as usize]), &self.pow(&v2, m.0[second as usize]));
            acc = self.add(&acc, &self.mul(&t, &self.constant(c.clone())));
        }
        Ok((acc.a, acc.b))
    }

    /// True iff `p` vanishes at neither ordering of the roots.
    pub fn nonvanishing_both(&self, p: &MultiPoly, first: Var, second: Var, rest: &[(Var, Rat)]) -> Result<bool, ExactError> {
        for o in [RootOrder::Forward, RootOrder::Swapped] {
            let (a, b) = self.eval(p, first, second, o, rest)?;
            if a.is_zero() && b.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl Add for QuadElt {
    type Output = QuadElt;
    fn add(self, o: QuadElt) -> QuadElt {
        QuadElt { a: self.a + o.a, b: self.b + o.b }
    }
}

impl Mul<&Rat> for QuadElt {
    type Output = QuadElt;
    fn mul(self, c: &Rat) -> QuadElt {
        QuadElt { a: self.a * c, b: self.b * c }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::multipoly::poly;
    use crate::exact::rat::{rat, ri};

    fn pt() -> QuadExtPoint {
        QuadExtPoint::new(rat(89, 12), rat(30625, 2304))
    }

    #[test]
    fn symmetric_functions() {
        let p = pt();
        let (a, b) = p.eval(&poly("t + u"), Var::T, Var::U, RootOrder::Forward, &[]).unwrap();
        assert_eq!((a, b), (rat(89, 12), ri(0)));
        let (a, b) = p.eval(&poly("t u"), Var::T, Var::U, RootOrder::Swapped, &[]).unwrap();
        assert_eq!((a, b), (rat(30625, 2304), ri(0)));
        // w satisfies its own quadratic
        let (a, b) = p.eval(&poly("t^2 - 89/12 t + 30625/2304"), Var::T, Var::U, RootOrder::Forward, &[]).unwrap();
        assert!(a.is_zero() && b.is_zero());
    }

    #[test]
    fn arity_errors() {
        let p = pt();
        assert!(p.eval(&poly("t"), Var::T, Var::T, RootOrder::Forward, &[]).is_err());
        assert!(p.eval(&poly("t"), Var::T, Var::U, RootOrder::Forward, &[(Var::T, ri(1))]).is_err());
        assert!(matches!(p.eval(&poly("s t"), Var::T, Var::U, RootOrder::Forward, &[]), Err(ExactError::Unassigned(_))));
    }

    #[test]
    fn discriminant_is_not_a_square() {
        assert!(crate::exact::rat::rat_sqrt(&pt().discriminant()).is_none());
    }
}
