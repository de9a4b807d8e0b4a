//! Sparse multivariate polynomials over Q in the fixed variables x, y, z, s, t, u.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::rat::{lcm_denoms, parse_rat, ri, Rat};
use super::scalar::Scalar;
use super::upoly::UPoly;
use crate::error::{ExactError, ParseError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X = 0,
    Y = 1,
    Z = 2,
    S = 3,
    T = 4,
    U = 5,
}

impl Var {
    pub const ALL: [Var; 6] = [Var::X, Var::Y, Var::Z, Var::S, Var::T, Var::U];

    pub fn name(self) -> &'static str {
        ["x", "y", "z", "s", "t", "u"][self as usize]
    }

    pub fn from_name(n: &str) -> Option<Var> {
        Var::ALL.iter().copied().find(|v| v.name() == n)
    }
}

/// Exponent vector; ordered graded-lexicographically with x > y > z > s > t > u.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(pub [u32; 6]);

impl Mono {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn of(v: Var, e: u32) -> Mono {
        let mut m = [0; 6];
        m[v as usize] = e;
        Mono(m)
    }

    fn mul(&self, o: &Mono) -> Mono {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0.iter()) {
            *a += b;
        }
        Mono(m)
    }

    fn div(&self, o: &Mono) -> Option<Mono> {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0.iter()) {
            *a = a.checked_sub(*b)?;
        }
        Some(Mono(m))
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Mono) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Mono) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Mono, Rat>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::term(c, Mono::default())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(ri(n))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Rat::one(), Mono::of(v, 1))
    }

    pub fn term(c: Rat, m: Mono) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Mono, Rat)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn from_upoly(p: &UPoly, v: Var) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(i, c)| (Mono::of(v, i as u32), c.clone())))
    }

    fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_term(&self) -> Rat {
        self.terms.get(&Mono::default()).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.0[v as usize]).max().unwrap_or(0)
    }

    pub fn variables(&self) -> Vec<Var> {
        Var::ALL.iter().copied().filter(|v| self.degree_in(*v) > 0).collect()
    }

    pub fn leading(&self) -> Option<(&Mono, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Simultaneous substitution of variables by polynomials.
    pub fn substitute(&self, subs: &[(Var, MultiPoly)]) -> Self {
        let mut map: [Option<&MultiPoly>; 6] = [None; 6];
        for (v, p) in subs {
            map[*v as usize] = Some(p);
        }
        let mut cache: Vec<Vec<MultiPoly>> = vec![Vec::new(); 6];
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut keep = [0u32; 6];
            let mut prod = Self::one();
            for i in 0..6 {
                let e = m.0[i] as usize;
                match map[i] {
                    Some(p) if e > 0 => {
                        while cache[i].len() <= e {
                            let next = match cache[i].last() {
                                None => Self::one(),
                                Some(last) => last * p,
                            };
                            cache[i].push(next);
                        }
                        prod = &prod * &cache[i][e];
                    }
                    _ => keep[i] = e as u32,
                }
            }
            out = &out + &(&prod * &Self::term(c.clone(), Mono(keep)));
        }
        out
    }

    /// Substitutes rational values for some variables.
    pub fn eval_partial(&self, vals: &[(Var, Rat)]) -> Self {
        let subs: Vec<(Var, MultiPoly)> = vals.iter().map(|(v, r)| (*v, Self::constant(r.clone()))).collect();
        self.substitute(&subs)
    }

    pub fn eval_rat(&self, vals: &[(Var, Rat)]) -> Result<Rat, ExactError> {
        let p = self.eval_partial(vals);
        if let Some(v) = p.variables().first() {
            return Err(ExactError::Unassigned(v.name().into()));
        }
        Ok(p.constant_term())
    }

    /// Exact evaluation at scalar values; all scalars must share a modulus.
    pub fn eval_scalar(&self, vals: &[(Var, Scalar)]) -> Result<Scalar, ExactError> {
        for (i, (_, a)) in vals.iter().enumerate() {
            for (_, b) in &vals[i + 1..] {
                if !Scalar::compatible(a, b) {
                    return Err(ExactError::IncompatibleModuli);
                }
            }
        }
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = Scalar::from_rat(c.clone());
            for v in Var::ALL {
                let e = m.0[v as usize];
                if e == 0 {
                    continue;
                }
                let val = vals
                    .iter()
                    .find(|(w, _)| *w == v)
                    .map(|(_, s)| s)
                    .ok_or_else(|| ExactError::Unassigned(v.name().into()))?;
                t = &t * &val.pow(e);
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Renames variables simultaneously, e.g. swapping x and y.
    pub fn rename(&self, pairs: &[(Var, Var)]) -> Self {
        let subs: Vec<(Var, MultiPoly)> = pairs.iter().map(|(a, b)| (*a, Self::var(*b))).collect();
        self.substitute(&subs)
    }

    /// Coefficients with respect to `v`, index = power of `v`.
    pub fn coeffs_in(&self, v: Var) -> Vec<MultiPoly> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![Self::zero(); d + 1];
        for (m, c) in &self.terms {
            let mut k = *m;
            let e = k.0[v as usize] as usize;
            k.0[v as usize] = 0;
            out[e].add_term(k, c.clone());
        }
        out
    }

    pub fn to_upoly(&self, v: Var) -> Option<UPoly> {
        if self.variables().iter().any(|w| *w != v) {
            return None;
        }
        let d = self.degree_in(v) as usize;
        let mut c = vec![Rat::zero(); d + 1];
        for (m, a) in &self.terms {
            c[m.0[v as usize] as usize] = a.clone();
        }
        Some(UPoly::from_coeffs(c))
    }

    /// Exact quotient `self / d`, or None when `d` does not divide.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        let (ld, cd) = d.leading().map(|(m, c)| (*m, c.clone()))?;
        let mut r = self.clone();
        let mut q = Self::zero();
        while let Some((lr, cr)) = r.leading().map(|(m, c)| (*m, c.clone())) {
            let m = lr.div(&ld)?;
            let t = Self::term(cr / &cd, m);
            r = &r - &(&t * d);
            q = &q + &t;
        }
        Some(q)
    }

    /// Returns c with self = c * other, if such a rational c exists.
    pub fn proportional(&self, other: &MultiPoly) -> Option<Rat> {
        if self.is_zero() || other.is_zero() {
            return if self.is_zero() && other.is_zero() { Some(Rat::one()) } else { None };
        }
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let (m0, c0) = self.leading()?;
        let c = c0 / other.terms.get(m0)?;
        if &other.scale(&c) == self {
            Some(c)
        } else {
            None
        }
    }

    /// Integer coefficients with gcd 1 and positive leading coefficient.
    pub fn primitive(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = lcm_denoms(self.terms.values());
        let p = self.scale(&Rat::from_integer(l));
        let g = p.terms.values().fold(num_bigint::BigInt::zero(), |g, c| num_integer::Integer::gcd(&g, c.numer()));
        let mut c = Rat::from_integer(g).recip();
        if p.leading().unwrap().1.is_negative() {
            c = -c;
        }
        p.scale(&c)
    }

    /// Sylvester resultant eliminating `v`, computed by fraction-free elimination.
    pub fn resultant(a: &MultiPoly, b: &MultiPoly, v: Var) -> Result<MultiPoly, ExactError> {
        let m = a.degree_in(v) as usize;
        let n = b.degree_in(v) as usize;
        if a.is_zero() || b.is_zero() || m == 0 || n == 0 {
            return Err(ExactError::DegreeZero(v.name().into()));
        }
        let ca = a.coeffs_in(v);
        let cb = b.coeffs_in(v);
        let size = m + n;
        let mut mat = vec![vec![Self::zero(); size]; size];
        for i in 0..n {
            for k in 0..=m {
                mat[i][i + k] = ca[m - k].clone();
            }
        }
        for j in 0..m {
            for k in 0..=n {
                mat[n + j][j + k] = cb[n - k].clone();
            }
        }
        Ok(bareiss_det(mat))
    }
}

/// Determinant of a square polynomial matrix by Bareiss elimination.
pub fn bareiss_det(mut m: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one();
    }
    let mut sign = Rat::one();
    let mut prev = MultiPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return MultiPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss step must divide exactly");
            }
            m[i][k] = MultiPoly::zero();
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].scale(&sign)
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, -c.clone());
        }
        r
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        let mut r = MultiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, o: MultiPoly) -> MultiPoly {
                (&self).$f(&o)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, o: &MultiPoly) -> MultiPoly {
                (&self).$f(o)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $f(self, o: MultiPoly) -> MultiPoly {
                self.$f(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

fn mono_text(m: &Mono) -> String {
    let mut parts = Vec::new();
    for v in Var::ALL {
        match m.0[v as usize] {
            0 => {}
            1 => parts.push(v.name().to_string()),
            e => parts.push(format!("{}^{}", v.name(), e)),
        }
    }
    parts.join(" ")
}

impl fmt::Display for MultiPoly {
    /// Terms in descending graded-lex order, as `c * x^a y^b`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mag = c.abs();
            let mt = mono_text(m);
            if mt.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&mt)?;
            } else {
                write!(f, "{mag} * {mt}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

// ---- parsing ----

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Var(Var),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, ParseError> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Num(cs[st..i].iter().collect()));
        } else if c.is_ascii_alphabetic() {
            // variables are single letters, so "xy" reads as x*y
            let name = c.to_string();
            i += 1;
            let v = Var::from_name(&name).ok_or_else(|| ParseError::new(format!("unknown variable {name:?}")))?;
            out.push(Tok::Var(v));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else if c == '\u{2212}' {
            out.push(Tok::Op('-'));
            i += 1;
        } else {
            return Err(ParseError::new(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                if !d.is_constant() || d.is_zero() {
                    return Err(ParseError::new("division only by nonzero constants"));
                }
                acc = acc.scale(&d.constant_term().recip());
            } else if matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::Op('('))) {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly, ParseError> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<MultiPoly, ParseError> {
        let base = self.primary()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.parse().map_err(|_| ParseError::new("bad exponent"))?;
                    Ok(base.pow(e))
                }
                _ => Err(ParseError::new("exponent must be a nonnegative integer")),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<MultiPoly, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(MultiPoly::constant(parse_rat(&n)?))
            }
            Some(Tok::Var(v)) => {
                self.pos += 1;
                Ok(MultiPoly::var(v))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(ParseError::new("missing ')'"));
                }
                Ok(e)
            }
            other => Err(ParseError::new(format!("unexpected token {other:?}"))),
        }
    }
}

impl FromStr for MultiPoly {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut p = Parser { toks: tokenize(s)?, pos: 0 };
        let e = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(ParseError::new(format!("trailing input in {s:?}")));
        }
        Ok(e)
    }
}

/// Shorthand used throughout the crate for literal polynomials.
pub fn poly(s: &str) -> MultiPoly {
    s.parse().unwrap_or_else(|e| panic!("bad polynomial literal {s:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;

    #[test]
    fn parse_print_roundtrip() {
        let p = poly("z - 4x^2 + x + 9/4 (x - y)(6x^2 - 18 x y + 12 y^2 - 21 x - 23 y + 11)");
        let q: MultiPoly = p.to_string().parse().unwrap();
        assert_eq!(p, q);
        assert_eq!(poly("3/2*x^2*y - 4 + z").to_string(), "3/2 * x^2 y + z - 4");
        assert_eq!(poly("-(x)").to_string(), "-x");
        assert!("x + ".parse::<MultiPoly>().is_err());
        assert!("w".parse::<MultiPoly>().is_err());
    }

    #[test]
    fn grlex_order() {
        let p = poly("y^3 + x^2 + x y + z");
        let order: Vec<String> = p.terms().rev().map(|(m, _)| mono_text(m)).collect();
        assert_eq!(order, vec!["y^3", "x^2", "x y", "z"]);
    }

    #[test]
    fn evaluation() {
        let f = poly("z - 4x^2 + x + 9/4 (x - y)(6x^2 - 18 x y - 12 y^2 - 21 x - 23 y + 11)");
        let v = f.eval_rat(&[(Var::X, ri(1)), (Var::Y, ri(1)), (Var::Z, ri(-6))]).unwrap();
        assert_eq!(v, ri(-9));
        let g = poly("(y - 4x^2 + x)(x - 1)(x - 1/16)(x - 9/16)");
        assert!(g.eval_rat(&[(Var::X, rat(1, 16)), (Var::Y, rat(3, 128))]).unwrap().is_zero());
        assert!(matches!(poly("x + y").eval_rat(&[(Var::X, ri(1))]), Err(ExactError::Unassigned(_))));
        let s = ri(2);
        let lam = Scalar::lam(&s);
        assert_eq!(poly("x^2 - 2").eval_scalar(&[(Var::X, lam.clone())]).unwrap(), Scalar::zero());
        let other = Scalar::lam(&ri(3));
        assert!(matches!(poly("x + y").eval_scalar(&[(Var::X, lam), (Var::Y, other)]), Err(ExactError::IncompatibleModuli)));
    }

    #[test]
    fn resultants() {
        let r = MultiPoly::resultant(&poly("x - s"), &poly("x - t"), Var::X).unwrap();
        assert_eq!(r, poly("s - t"));
        let r0 = MultiPoly::resultant(&poly("x^2 - 1"), &poly("x - 1"), Var::X).unwrap();
        assert!(r0.is_zero());
        assert!(MultiPoly::resultant(&poly("s"), &poly("x"), Var::X).is_err());
        // Res(x^2 + s x + t, 2x + s) = -(s^2 - 4t) up to the usual sign convention
        let d = MultiPoly::resultant(&poly("x^2 + s x + t"), &poly("2x + s"), Var::X).unwrap();
        assert!(d.proportional(&poly("s^2 - 4t")).is_some());
    }

    #[test]
    fn exact_division() {
        let a = poly("(8u - 1)(8u - 9)(t + u^2)");
        let q = a.div_exact(&poly("(8u-1)(8u-9)")).unwrap();
        assert_eq!(q, poly("t + u^2"));
        assert!(poly("x^2 + 1").div_exact(&poly("x + 1")).is_none());
    }

    #[test]
    fn substitution_and_coeffs() {
        let f = poly("x^2 y + z");
        let g = f.substitute(&[(Var::X, poly("s/2")), (Var::Z, poly("s^2 - s/2"))]);
        assert_eq!(g, poly("s^2 y/4 + s^2 - s/2"));
        assert_eq!(poly("x y + y").rename(&[(Var::X, Var::Y), (Var::Y, Var::X)]), poly("x y + x"));
        let c = poly("t^2 u + 3u + t").coeffs_in(Var::U);
        assert_eq!(c, vec![poly("t"), poly("t^2 + 3")]);
        assert_eq!(poly("6x + 4").primitive(), poly("3x + 2"));
        assert_eq!(poly("2x^2 - 3x + 1").to_upoly(Var::X).unwrap().rational_roots(), vec![rat(1, 2), ri(1)]);
    }
}
