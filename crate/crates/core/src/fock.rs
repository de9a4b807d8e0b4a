//! Fock spaces of the rank-one Heisenberg algebra.
//!
//! Mode depths are stored doubled so that integer (untwisted) and
//! half-odd-integer (twisted) modes share one integer representation.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed};

use crate::error::{Error, ParseError, Result};
use crate::exact::rat::{factorial, parse_rat, rat, ri, Rat};
use crate::exact::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sector {
    /// M(1, lam); the momentum is lam itself (zero for the vacuum module).
    Untwisted(Scalar),
    Twisted,
}

impl Sector {
    pub fn vacuum() -> Self {
        Sector::Untwisted(Scalar::zero())
    }

    /// M(1, lam) with lam^2 = s.
    pub fn lambda(s: &Rat) -> Self {
        Sector::Untwisted(Scalar::lam(s))
    }

    /// M(1, lam) with lam a free parameter.
    pub fn formal() -> Self {
        Sector::Untwisted(Scalar::lam_formal())
    }

    pub fn is_twisted(&self) -> bool {
        matches!(self, Sector::Twisted)
    }

    pub fn momentum(&self) -> Option<&Scalar> {
        match self {
            Sector::Untwisted(l) => Some(l),
            Sector::Twisted => None,
        }
    }

    pub fn is_vacuum(&self) -> bool {
        matches!(self, Sector::Untwisted(l) if l.is_zero())
    }

    /// Conformal weight of the sector vacuum.
    pub fn offset(&self) -> Scalar {
        match self {
            Sector::Untwisted(l) => l * l * Scalar::from_rat(rat(1, 2)),
            Sector::Twisted => Scalar::from_rat(rat(1, 16)),
        }
    }

    /// Parity of doubled mode depths.
    pub fn parity(&self) -> u32 {
        if self.is_twisted() {
            1
        } else {
            0
        }
    }

    pub fn allows_part(&self, d2: u32) -> bool {
        d2 > 0 && d2 % 2 == self.parity()
    }
}

/// A multiset of mode depths, stored doubled and sorted descending.
/// Ordered by weight, then with lexicographically larger part lists first.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn from_doubled(mut d2: Vec<u32>) -> Self {
        d2.sort_unstable_by(|a, b| b.cmp(a));
        Partition(d2)
    }

    /// Integer depths, e.g. `[3, 1]` for h(-3)h(-1).
    pub fn ints(parts: &[u32]) -> Self {
        Self::from_doubled(parts.iter().map(|p| 2 * p).collect())
    }

    pub fn from_depths(depths: &[Rat]) -> Result<Self> {
        let mut v = Vec::with_capacity(depths.len());
        for d in depths {
            let d2 = d * ri(2);
            if !d2.is_integer() || !d.is_positive() {
                return Err(Error::SectorRule(d.to_string()));
            }
            v.push(u32::try_from(d2.to_integer()).map_err(|_| Error::SectorRule(d.to_string()))?);
        }
        Ok(Self::from_doubled(v))
    }

    pub fn doubled(&self) -> &[u32] {
        &self.0
    }

    pub fn depths(&self) -> Vec<Rat> {
        self.0.iter().map(|&d| rat(d as i64, 2)).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight2(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weight(&self) -> Rat {
        rat(self.weight2() as i64, 2)
    }

    pub fn mult(&self, d2: u32) -> u32 {
        self.0.iter().filter(|&&p| p == d2).count() as u32
    }

    pub fn with_part(&self, d2: u32) -> Partition {
        let mut v = self.0.clone();
        let pos = v.iter().position(|&p| p < d2).unwrap_or(v.len());
        v.insert(pos, d2);
        Partition(v)
    }

    pub fn without_part(&self, d2: u32) -> Option<Partition> {
        let pos = self.0.iter().position(|&p| p == d2)?;
        let mut v = self.0.clone();
        v.remove(pos);
        Some(Partition(v))
    }

    pub fn merge(&self, o: &Partition) -> Partition {
        let mut v = Vec::with_capacity(self.0.len() + o.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < o.0.len() {
            if j == o.0.len() || (i < self.0.len() && self.0[i] >= o.0[j]) {
                v.push(self.0[i]);
                i += 1;
            } else {
                v.push(o.0[j]);
                j += 1;
            }
        }
        Partition(v)
    }

    /// (doubled depth, multiplicity), largest depth first.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    pub fn from_multiplicities(m: &[(u32, u32)]) -> Partition {
        Self::from_doubled(m.iter().flat_map(|&(p, k)| std::iter::repeat(p).take(k as usize)).collect())
    }
}

impl Ord for Partition {
    fn cmp(&self, o: &Partition) -> Ordering {
        self.weight2().cmp(&o.weight2()).then_with(|| o.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, o: &Partition) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Partitions of a doubled weight into parts of the given parity, descending-lex.
pub fn partitions2(total2: u32, parity: u32) -> Vec<Partition> {
    fn rec(rem: u32, max: u32, parity: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        let mut p = max.min(rem);
        if p % 2 != parity {
            p = p.saturating_sub(1);
        }
        while p > 0 {
            cur.push(p);
            rec(rem - p, p, parity, cur, out);
            cur.pop();
            if p < 2 {
                break;
            }
            p -= 2;
        }
    }
    let mut out = Vec::new();
    rec(total2, total2, parity, &mut Vec::new(), &mut out);
    out
}

/// Basis of the degree-d subspace of a sector, in canonical order.
pub fn basis_at_degree(sector: &Sector, d: &Rat) -> Vec<Partition> {
    let d2 = d * ri(2);
    if d.is_negative() || !d2.is_integer() {
        return Vec::new();
    }
    let d2: u32 = d2.to_integer().try_into().unwrap_or(0);
    if !sector.is_twisted() && d2 % 2 == 1 {
        return Vec::new();
    }
    partitions2(d2, sector.parity())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockVector {
    sector: Sector,
    terms: BTreeMap<Partition, Scalar>,
}

impl FockVector {
    pub fn zero(sector: Sector) -> Self {
        FockVector { sector, terms: BTreeMap::new() }
    }

    /// The sector vacuum: |0>, e^lam or 1theta.
    pub fn vacuum(sector: Sector) -> Self {
        Self::basis(sector, Partition::empty())
    }

    pub fn basis(sector: Sector, p: Partition) -> Self {
        debug_assert!(p.0.iter().all(|&d| sector.allows_part(d)));
        let mut terms = BTreeMap::new();
        terms.insert(p, Scalar::one());
        FockVector { sector, terms }
    }

    /// h(-n_1)...h(-n_k) on the vacuum, integer depths.
    pub fn monomial(sector: Sector, parts: &[u32]) -> Self {
        Self::basis(sector, Partition::ints(parts))
    }

    /// Twisted or untwisted monomial from doubled depths.
    pub fn monomial2(sector: Sector, parts2: &[u32]) -> Self {
        Self::basis(sector, Partition::from_doubled(parts2.to_vec()))
    }

    pub fn from_terms(sector: Sector, it: impl IntoIterator<Item = (Partition, Scalar)>) -> Self {
        let mut v = Self::zero(sector);
        for (p, c) in it {
            v.add_term(p, &c);
        }
        v
    }

    pub fn sector(&self) -> &Sector {
        &self.sector
    }

    /// Same terms reinterpreted in another sector with the same depth rule.
    pub fn with_sector(mut self, sector: Sector) -> Self {
        assert_eq!(self.sector.is_twisted(), sector.is_twisted());
        self.sector = sector;
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, p: &Partition) -> Scalar {
        self.terms.get(p).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, p: Partition, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&p) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&p);
                }
            }
            None => {
                self.terms.insert(p, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, o: &FockVector, c: &Scalar) {
        assert_eq!(self.sector, o.sector, "adding vectors from different sectors");
        if c.is_zero() {
            return;
        }
        for (p, a) in &o.terms {
            self.add_term(p.clone(), &(a * c));
        }
    }

    pub fn add(&self, o: &FockVector) -> FockVector {
        let mut r = self.clone();
        r.add_scaled(o, &Scalar::one());
        r
    }

    pub fn sub(&self, o: &FockVector) -> FockVector {
        let mut r = self.clone();
        r.add_scaled(o, &-Scalar::one());
        r
    }

    pub fn scale(&self, c: &Scalar) -> FockVector {
        if c.is_zero() {
            return Self::zero(self.sector.clone());
        }
        FockVector { sector: self.sector.clone(), terms: self.terms.iter().map(|(p, a)| (p.clone(), a * c)).collect() }
    }

    pub fn scale_rat(&self, c: &Rat) -> FockVector {
        self.scale(&Scalar::from_rat(c.clone()))
    }

    pub fn neg(&self) -> FockVector {
        self.scale(&-Scalar::one())
    }

    /// Doubled degree of a homogeneous vector (None for zero or mixed degrees).
    pub fn degree2(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|p| p.weight2());
        let d = it.next()?;
        if it.all(|e| e == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn degree(&self) -> Option<Rat> {
        self.degree2().map(|d| rat(d as i64, 2))
    }

    pub fn max_degree2(&self) -> u32 {
        self.terms.keys().map(|p| p.weight2()).max().unwrap_or(0)
    }

    /// Homogeneous components keyed by doubled degree.
    pub fn components(&self) -> BTreeMap<u32, FockVector> {
        let mut out: BTreeMap<u32, FockVector> = BTreeMap::new();
        for (p, c) in &self.terms {
            out.entry(p.weight2()).or_insert_with(|| Self::zero(self.sector.clone())).add_term(p.clone(), c);
        }
        out
    }

    /// h(n) with n given doubled; no legality checks.
    pub(crate) fn h2(&self, n2: i64) -> FockVector {
        let mut out = Self::zero(self.sector.clone());
        match n2.cmp(&0) {
            Ordering::Less => {
                let d = (-n2) as u32;
                for (p, c) in &self.terms {
                    out.add_term(p.with_part(d), c);
                }
            }
            Ordering::Equal => {
                if let Sector::Untwisted(l) = &self.sector {
                    return self.scale(l);
                }
            }
            Ordering::Greater => {
                let d = n2 as u32;
                for (p, c) in &self.terms {
                    let m = p.mult(d);
                    if m > 0 {
                        let f = Scalar::from_rat(rat(d as i64 * m as i64, 2));
                        out.add_term(p.without_part(d).unwrap(), &(c * &f));
                    }
                }
            }
        }
        out
    }

    /// h(n) for a sector-legal rational n.
    pub fn apply_mode(&self, n: &Rat) -> Result<FockVector> {
        let n2 = n * ri(2);
        if !n2.is_integer() {
            return Err(Error::SectorRule(n.to_string()));
        }
        let n2: i64 = n2.to_integer().try_into().map_err(|_| Error::SectorRule(n.to_string()))?;
        if self.sector.is_twisted() {
            if n2 == 0 {
                return Err(Error::ZeroModeTwisted);
            }
            if n2.rem_euclid(2) != 1 {
                return Err(Error::SectorRule(n.to_string()));
            }
        } else if n2 % 2 != 0 {
            return Err(Error::SectorRule(n.to_string()));
        }
        Ok(self.h2(n2))
    }

    /// The involution h(-n) -> -h(-n).
    pub fn theta(&self) -> Result<FockVector> {
        if !self.sector.is_twisted() && !self.sector.is_vacuum() {
            return Err(Error::ThetaOnLambda);
        }
        Ok(FockVector {
            sector: self.sector.clone(),
            terms: self.terms.iter().map(|(p, c)| (p.clone(), if p.len() % 2 == 1 { -c } else { c.clone() })).collect(),
        })
    }

    /// Symmetric form with (h(-m)^p ... | h(-m)^p ...) = prod m^p p!.
    pub fn contravariant_form(&self, o: &FockVector) -> Result<Scalar> {
        if self.sector != o.sector {
            return Err(Error::SectorMismatch);
        }
        let mut acc = Scalar::zero();
        for (p, a) in &self.terms {
            if let Some(b) = o.terms.get(p) {
                acc += &(&(a * b) * &Scalar::from_rat(norm_sq(p)));
            }
        }
        Ok(acc)
    }
}

/// (p | p) for a basis monomial.
pub fn norm_sq(p: &Partition) -> Rat {
    p.multiplicities().iter().fold(Rat::one(), |acc, &(d, k)| {
        acc * rat(d as i64, 2).pow(k as i32) * Rat::from_integer(factorial(k))
    })
}

fn depth_text(d2: u32) -> String {
    if d2 % 2 == 0 {
        format!("{}", d2 / 2)
    } else {
        format!("{}/2", d2)
    }
}

fn terminal(sector: &Sector) -> &'static str {
    match sector {
        Sector::Twisted => "1theta",
        s if s.is_vacuum() => "|0>",
        _ => "e^lam",
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let term = terminal(&self.sector);
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let neg = c.to_rat().is_some_and(|r| r.is_negative());
            let mag = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if !mag.is_one() {
                write!(f, "{} ", mag.as_factor())?;
            }
            for &d in &p.0 {
                write!(f, "h(-{})", depth_text(d))?;
            }
            f.write_str(term)?;
        }
        Ok(())
    }
}

// ---- state grammar ----

struct Cursor<'a> {
    s: &'a [u8],
    i: usize,
}

impl<'a> Cursor<'a> {
    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn starts(&mut self, t: &str) -> bool {
        self.ws();
        self.s[self.i..].starts_with(t.as_bytes())
    }

    fn eat(&mut self, t: &str) -> bool {
        if self.starts(t) {
            self.i += t.len();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Option<Rat> {
        self.ws();
        let st = self.i;
        while self.i < self.s.len() && (self.s[self.i].is_ascii_digit() || self.s[self.i] == b'/') {
            self.i += 1;
        }
        if st == self.i {
            return None;
        }
        parse_rat(std::str::from_utf8(&self.s[st..self.i]).ok()?).ok()
    }

    fn err<T>(&self, what: &str) -> std::result::Result<T, ParseError> {
        Err(ParseError::new(format!("{what} at byte {}", self.i)))
    }
}

/// Scalar expression in rationals and lam: + - * / ^ and parentheses.
fn scalar_expr(c: &mut Cursor, lam: &Scalar) -> std::result::Result<Scalar, ParseError> {
    let mut acc = scalar_term(c, lam)?;
    loop {
        if c.eat("+") {
            acc = &acc + &scalar_term(c, lam)?;
        } else if c.starts("-") {
            c.eat("-");
            acc = &acc - &scalar_term(c, lam)?;
        } else {
            return Ok(acc);
        }
    }
}

fn scalar_term(c: &mut Cursor, lam: &Scalar) -> std::result::Result<Scalar, ParseError> {
    let mut acc = scalar_atom(c, lam)?;
    loop {
        if c.eat("*") {
            acc = &acc * &scalar_atom(c, lam)?;
        } else if (matches!(c.peek(), Some(b'0'..=b'9') | Some(b'(')) || c.starts("lam")) && !c.starts("1theta") {
            acc = &acc * &scalar_atom(c, lam)?;
        } else {
            return Ok(acc);
        }
    }
}

fn scalar_atom(c: &mut Cursor, lam: &Scalar) -> std::result::Result<Scalar, ParseError> {
    if c.eat("-") {
        return Ok(-scalar_atom(c, lam)?);
    }
    let base = if c.eat("(") {
        let e = scalar_expr(c, lam)?;
        if !c.eat(")") {
            return c.err("expected ')'");
        }
        e
    } else if c.eat("lam") {
        lam.clone()
    } else if let Some(r) = c.number() {
        Scalar::from_rat(r)
    } else {
        return c.err("expected a scalar");
    };
    if c.eat("^") {
        match c.number().and_then(|r| crate::exact::rat::to_i64(&r)) {
            Some(e) if e >= 0 => Ok(base.pow(e as u32)),
            _ => c.err("bad exponent"),
        }
    } else {
        Ok(base)
    }
}

impl FockVector {
    /// Parses the state grammar, e.g. `3/2 h(-2)h(-2)|0> - lam h(-1)e^lam`.
    /// `s` fixes lam^2; without it lam is a free parameter.
    pub fn parse(text: &str, s: Option<&Rat>) -> std::result::Result<FockVector, ParseError> {
        let lam = match s {
            Some(s) => Scalar::lam(s),
            None => Scalar::lam_formal(),
        };
        let mut c = Cursor { s: text.as_bytes(), i: 0 };
        let mut out: Option<FockVector> = None;
        let mut first = true;
        loop {
            c.ws();
            if c.i == c.s.len() {
                break;
            }
            let mut sign = Scalar::one();
            if c.eat("+") {
            } else if c.eat("-") {
                sign = -sign;
            } else if !first {
                return c.err("expected '+' or '-'");
            }
            first = false;
            let coeff = if c.starts("h(") || c.starts("|0>") || c.starts("e^lam") || c.starts("1theta") {
                Scalar::one()
            } else {
                let v = scalar_term(&mut c, &lam)?;
                c.eat("*");
                v
            };
            let mut parts: Vec<Rat> = Vec::new();
            while c.eat("h(") {
                if !c.eat("-") {
                    return c.err("only creation modes h(-k) may appear in a state");
                }
                let Some(k) = c.number() else { return c.err("expected a depth") };
                if !c.eat(")") {
                    return c.err("expected ')'");
                }
                let mut rep = 1;
                if c.eat("^") {
                    rep = c.number().and_then(|r| crate::exact::rat::to_i64(&r)).unwrap_or(0);
                    if rep < 1 {
                        return c.err("bad power");
                    }
                }
                for _ in 0..rep {
                    parts.push(k.clone());
                }
            }
            let sector = if c.eat("|0>") {
                Sector::vacuum()
            } else if c.eat("e^lam") {
                Sector::Untwisted(lam.clone())
            } else if c.eat("1theta") {
                Sector::Twisted
            } else {
                return c.err("expected |0>, e^lam or 1theta");
            };
            let p = Partition::from_depths(&parts).map_err(|e| ParseError::new(e.to_string()))?;
            if !p.0.iter().all(|&d| sector.allows_part(d)) {
                return Err(ParseError::new(format!("depths {parts:?} not allowed in this sector")));
            }
            let v = out.get_or_insert_with(|| FockVector::zero(sector.clone()));
            if v.sector != sector {
                return Err(ParseError::new("terms from different sectors"));
            }
            v.add_term(p, &(&sign * &coeff));
        }
        out.ok_or_else(|| ParseError::new("empty state"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tw(parts2: &[u32]) -> FockVector {
        FockVector::monomial2(Sector::Twisted, parts2)
    }

    #[test]
    fn modes_and_commutators() {
        let v = FockVector::vacuum(Sector::vacuum());
        let h1 = v.apply_mode(&ri(-1)).unwrap();
        assert_eq!(h1, FockVector::monomial(Sector::vacuum(), &[1]));
        assert_eq!(h1.apply_mode(&ri(1)).unwrap(), v);
        let t = tw(&[1]);
        assert_eq!(t.apply_mode(&rat(1, 2)).unwrap(), tw(&[]).scale_rat(&rat(1, 2)));
        assert!(matches!(t.apply_mode(&ri(0)), Err(Error::ZeroModeTwisted)));
        assert!(t.apply_mode(&ri(1)).is_err());
        assert!(h1.apply_mode(&rat(1, 2)).is_err());
        let e = FockVector::vacuum(Sector::lambda(&ri(2)));
        assert_eq!(e.apply_mode(&ri(0)).unwrap(), e.scale(&Scalar::lam(&ri(2))));
    }

    #[test]
    fn theta_signs() {
        let v = FockVector::monomial(Sector::vacuum(), &[3, 1]);
        assert_eq!(v.theta().unwrap(), v);
        assert_eq!(tw(&[1]).theta().unwrap(), tw(&[1]).neg());
        assert!(FockVector::vacuum(Sector::lambda(&ri(2))).theta().is_err());
    }

    #[test]
    fn bases() {
        let b = basis_at_degree(&Sector::Twisted, &rat(3, 2));
        assert_eq!(b, vec![Partition::from_doubled(vec![3]), Partition::from_doubled(vec![1, 1, 1])]);
        assert_eq!(basis_at_degree(&Sector::vacuum(), &ri(0)), vec![Partition::empty()]);
        assert_eq!(basis_at_degree(&Sector::vacuum(), &ri(4)).len(), 5);
        assert!(basis_at_degree(&Sector::vacuum(), &rat(1, 2)).is_empty());
        let b4 = basis_at_degree(&Sector::vacuum(), &ri(4));
        let mut sorted = b4.clone();
        sorted.sort();
        assert_eq!(b4, sorted);
    }

    #[test]
    fn form_values() {
        let one = tw(&[]);
        assert_eq!(one.contravariant_form(&one).unwrap(), Scalar::one());
        assert_eq!(tw(&[1]).contravariant_form(&tw(&[1])).unwrap(), Scalar::from_rat(rat(1, 2)));
        assert!(tw(&[3]).contravariant_form(&tw(&[1, 1, 1])).unwrap().is_zero());
        // (1/2)^3 * 3!
        assert_eq!(tw(&[1, 1, 1]).contravariant_form(&tw(&[1, 1, 1])).unwrap(), Scalar::from_rat(rat(3, 4)));
        assert!(one.contravariant_form(&FockVector::vacuum(Sector::vacuum())).is_err());
    }

    #[test]
    fn parse_and_print() {
        let v = FockVector::parse("3/2 h(-2)h(-2)|0> - h(-3)h(-1)|0>", None).unwrap();
        assert_eq!(v.to_string(), "-h(-3)h(-1)|0> + 3/2 h(-2)h(-2)|0>");
        let w = FockVector::parse("lam h(-1/2) 1theta", Some(&ri(2))).unwrap();
        assert_eq!(w.to_string(), "lam h(-1/2)1theta");
        assert_eq!(FockVector::parse("lam 1theta", Some(&ri(3))).unwrap().to_string(), "lam 1theta");
        let e = FockVector::parse("(1/2 - 2 lam) h(-1)^2 e^lam + e^lam", Some(&rat(1, 2))).unwrap();
        assert_eq!(FockVector::parse(&e.to_string(), Some(&rat(1, 2))).unwrap(), e);
        assert!(FockVector::parse("h(-1/2)|0>", None).is_err());
        assert!(FockVector::parse("h(1)|0>", None).is_err());
        assert!(FockVector::parse("h(-1)|0> + 1theta", None).is_err());
    }
}
