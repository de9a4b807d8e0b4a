//! Truncated q-series with rational exponents, Virasoro characters at c = 1
//! and graded dimensions of the orbifold modules.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::rat::{rat, rat_sqrt, ri, Rat};
use crate::fock::{partitions2, Sector};
use crate::labels::ModuleLabel;

/// q^offset * sum_e c_e q^e, with every coefficient for e <= cutoff known exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    offset: Rat,
    coeffs: BTreeMap<Rat, Rat>,
    cutoff: Rat,
}

/// First exponent (absolute) at which two series disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub exponent: String,
    pub left: String,
    pub right: String,
}

impl QSeries {
    pub fn zero(offset: Rat, cutoff: Rat) -> Self {
        QSeries { offset, coeffs: BTreeMap::new(), cutoff }
    }

    pub fn from_terms(offset: Rat, cutoff: Rat, terms: impl IntoIterator<Item = (Rat, Rat)>) -> Self {
        let mut s = Self::zero(offset, cutoff);
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    /// 1 + O(q^(cutoff + ...)).
    pub fn one(cutoff: Rat) -> Self {
        Self::from_terms(Rat::zero(), cutoff, [(Rat::zero(), Rat::one())])
    }

    fn add_term(&mut self, e: Rat, c: Rat) {
        if e > self.cutoff || c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e.clone()).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn offset(&self) -> &Rat {
        &self.offset
    }

    pub fn cutoff(&self) -> &Rat {
        &self.cutoff
    }

    /// Coefficient of q^(offset + e).
    pub fn coeff(&self, e: &Rat) -> Rat {
        self.coeffs.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    /// Coefficient of q^e.
    pub fn coeff_abs(&self, e: &Rat) -> Rat {
        self.coeff(&(e - &self.offset))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rat, &Rat)> {
        self.coeffs.iter()
    }

    /// Largest absolute exponent up to which the series is exact.
    pub fn horizon(&self) -> Rat {
        &self.offset + &self.cutoff
    }

    fn valuation(&self) -> Option<Rat> {
        self.coeffs.keys().next().cloned()
    }

    /// Multiplies by q^r.
    pub fn shift(&self, r: &Rat) -> Self {
        QSeries { offset: &self.offset + r, ..self.clone() }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Self::zero(self.offset.clone(), self.cutoff.clone());
        for (e, a) in &self.coeffs {
            out.add_term(e.clone(), a * c);
        }
        out
    }

    /// Re-expresses the series relative to a smaller offset.
    fn rebase(&self, offset: &Rat) -> Self {
        let d = &self.offset - offset;
        QSeries {
            offset: offset.clone(),
            coeffs: self.coeffs.iter().map(|(e, c)| (e + &d, c.clone())).collect(),
            cutoff: &self.cutoff + &d,
        }
    }

    pub fn add(&self, o: &QSeries) -> Self {
        let base = std::cmp::min(&self.offset, &o.offset).clone();
        let (a, b) = (self.rebase(&base), o.rebase(&base));
        let mut out = Self::zero(base, std::cmp::min(a.cutoff.clone(), b.cutoff.clone()));
        for (e, c) in a.coeffs.into_iter().chain(b.coeffs) {
            out.add_term(e, c);
        }
        out
    }

    pub fn sub(&self, o: &QSeries) -> Self {
        self.add(&o.scale(&-Rat::one()))
    }

    pub fn mul(&self, o: &QSeries) -> Self {
        // known up to min(c1 + v2, c2 + v1)
        let cutoff = match (self.valuation(), o.valuation()) {
            (Some(v1), Some(v2)) => std::cmp::min(&self.cutoff + &v2, &o.cutoff + &v1),
            (Some(v1), None) => &o.cutoff + &v1,
            (None, Some(v2)) => &self.cutoff + &v2,
            (None, None) => std::cmp::min(self.cutoff.clone(), o.cutoff.clone()),
        };
        let mut out = Self::zero(&self.offset + &o.offset, cutoff);
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &o.coeffs {
                let e = e1 + e2;
                if e <= out.cutoff {
                    out.add_term(e, c1 * c2);
                }
            }
        }
        out
    }

    /// 1/(1 - q^e) for e > 0, as a geometric series.
    pub fn geometric(e: &Rat, cutoff: Rat) -> Self {
        assert!(e.is_positive());
        let mut out = Self::zero(Rat::zero(), cutoff);
        let mut k = Rat::zero();
        while k <= out.cutoff {
            out.add_term(k.clone(), Rat::one());
            k += e;
        }
        out
    }

    /// 1 - q^e.
    pub fn binomial(e: &Rat, cutoff: Rat) -> Self {
        Self::from_terms(Rat::zero(), cutoff, [(Rat::zero(), Rat::one()), (e.clone(), -Rat::one())])
    }

    /// Compares coefficients at every absolute exponent up to the smaller horizon.
    pub fn compare(&self, o: &QSeries) -> std::result::Result<(), Mismatch> {
        let horizon = std::cmp::min(self.horizon(), o.horizon());
        let mut exps: Vec<Rat> = self.coeffs.keys().map(|e| e + &self.offset).chain(o.coeffs.keys().map(|e| e + &o.offset)).collect();
        exps.sort();
        exps.dedup();
        for e in exps.into_iter().filter(|e| *e <= horizon) {
            let (a, b) = (self.coeff_abs(&e), o.coeff_abs(&e));
            if a != b {
                return Err(Mismatch { exponent: e.to_string(), left: a.to_string(), right: b.to_string() });
            }
        }
        Ok(())
    }

    /// Grid step: the largest 1/d with every exponent a multiple of it.
    pub fn step(&self) -> Rat {
        let d = self.coeffs.keys().fold(num_bigint::BigInt::one(), |d, e| d.lcm(e.denom()));
        Rat::new(1.into(), d)
    }

    /// Coefficients on the grid from 0 to the cutoff.
    pub fn dense(&self) -> Vec<Rat> {
        let step = self.step();
        let mut out = Vec::new();
        let mut e = Rat::zero();
        while e <= self.cutoff {
            out.push(self.coeff(&e));
            e += &step;
        }
        out
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^{{{}}}·(", self.offset)?;
        let mut first = true;
        for (e, c) in &self.coeffs {
            let (neg, mag) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match (e.is_zero(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "q^{{{e}}}")?,
                (false, false) => write!(f, "{mag} q^{{{e}}}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{{>{}}}))", self.cutoff)
    }
}

impl Serialize for QSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("QSeries", 4)?;
        st.serialize_field("offset", &self.offset.to_string())?;
        st.serialize_field("step", &self.step().to_string())?;
        st.serialize_field("cutoff", &self.cutoff.to_string())?;
        st.serialize_field("coeffs", &self.dense().iter().map(|c| c.to_string()).collect::<Vec<_>>())?;
        st.end()
    }
}

/// 1/eta = q^(-1/24) sum p(n) q^n.
pub fn eta_inverse(cutoff: &Rat) -> QSeries {
    let mut acc = QSeries::one(cutoff.clone());
    let mut k = ri(1);
    while k <= *cutoff {
        acc = acc.mul(&QSeries::geometric(&k, cutoff.clone()));
        k += ri(1);
    }
    acc.shift(&rat(-1, 24))
}

/// Some n >= 0 with h = n^2/4.
fn quarter_square_root(h: &Rat) -> Option<Rat> {
    rat_sqrt(&(h * ri(4))).filter(|n| n.is_integer())
}

/// Character of the irreducible c = 1 Virasoro module of lowest weight h, to
/// relative order `cutoff`.
pub fn char_virasoro_c1(h: &Rat, cutoff: &Rat) -> QSeries {
    let eta = eta_inverse(cutoff);
    match quarter_square_root(h) {
        Some(n) => {
            let gap = (&n + ri(2)) * (&n + ri(2)) / ri(4) - h;
            eta.mul(&QSeries::binomial(&gap, cutoff.clone())).shift(h)
        }
        None => eta.shift(h),
    }
}

fn sector_dimensions(sector: &Sector, parity: Option<usize>, offset: Rat, cutoff: &Rat) -> QSeries {
    let step2 = if sector.is_twisted() { 1 } else { 2 };
    let top2 = (cutoff * ri(2)).floor().to_integer();
    let top2: u32 = top2.try_into().unwrap_or(0);
    let mut out = QSeries::zero(offset - rat(1, 24), cutoff.clone());
    let mut d2 = 0;
    while d2 <= top2 {
        let n = partitions2(d2, sector.parity()).into_iter().filter(|p| parity.is_none_or(|k| p.len() % 2 == k)).count();
        out.add_term(rat(d2 as i64, 2), ri(n as i64));
        d2 += step2;
    }
    out
}

/// q^(a - 1/24) sum dim M_(a+d) q^d, counted by partitions of d with the parity of the module.
pub fn graded_dimension(module: &ModuleLabel, cutoff: &Rat) -> Result<QSeries> {
    if module.is_formal() {
        return Err(Error::UnsupportedParameter("graded dimension needs a concrete lam^2".into()));
    }
    let sec = module.sector();
    let offset = sec.offset().to_rat().expect("rational sector offset");
    Ok(sector_dimensions(&sec, module.length_parity(), offset, cutoff))
}

/// Graded dimension of the whole twisted module M(1)(theta).
pub fn twisted_graded_dimension(cutoff: &Rat) -> QSeries {
    sector_dimensions(&Sector::Twisted, None, rat(1, 16), cutoff)
}

/// prod_k q^(1/16 - 1/24) / (1 - q^(k - 1/2)).
pub fn twisted_product_form(cutoff: &Rat) -> QSeries {
    let mut acc = QSeries::one(cutoff.clone());
    let mut e = rat(1, 2);
    while e <= *cutoff {
        acc = acc.mul(&QSeries::geometric(&e, cutoff.clone()));
        e += ri(1);
    }
    acc.shift(&(rat(1, 16) - rat(1, 24)))
}

/// (1/eta) sum_p q^((2p+1)^2/16).
pub fn twisted_sum_form(cutoff: &Rat) -> QSeries {
    let base = rat(1, 16);
    let mut sum = QSeries::zero(Rat::zero(), cutoff.clone());
    for p in 0.. {
        let e = ri((2 * p + 1) * (2 * p + 1)) / ri(16) - &base;
        if e > *cutoff {
            break;
        }
        sum.add_term(e, Rat::one());
    }
    eta_inverse(cutoff).mul(&sum).shift(&base)
}

/// Both sides of prod (1 - q^k)/(1 - q^(k - 1/2)) = sum_p q^(p(p+1)/4).
pub fn jacobi_sides(cutoff: &Rat) -> (QSeries, QSeries) {
    let mut lhs = QSeries::one(cutoff.clone());
    let mut k = ri(1);
    while &k - rat(1, 2) <= *cutoff {
        lhs = lhs.mul(&QSeries::geometric(&(&k - rat(1, 2)), cutoff.clone()));
        if k <= *cutoff {
            lhs = lhs.mul(&QSeries::binomial(&k, cutoff.clone()));
        }
        k += ri(1);
    }
    let mut rhs = QSeries::zero(Rat::zero(), cutoff.clone());
    for p in 0i64.. {
        let e = rat(p * (p + 1), 4);
        if e > *cutoff {
            break;
        }
        rhs.add_term(e, Rat::one());
    }
    (lhs, rhs)
}

pub fn jacobi_triple_check(cutoff: &Rat) -> bool {
    let (l, r) = jacobi_sides(cutoff);
    l.compare(&r).is_ok()
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionCheck {
    pub holds: bool,
    pub mismatch: Option<Mismatch>,
}

/// sum of multiplicity * ch L(1, h) against the graded dimension, up to the module's cutoff.
pub fn verify_decomposition(module: &ModuleLabel, parts: &[(Rat, u64)], cutoff: &Rat) -> Result<DecompositionCheck> {
    let lhs = graded_dimension(module, cutoff)?;
    Ok(against(&lhs, parts))
}

fn against(lhs: &QSeries, parts: &[(Rat, u64)]) -> DecompositionCheck {
    let horizon = lhs.horizon();
    let mut rhs = QSeries::zero(lhs.offset().clone(), lhs.cutoff().clone());
    for (h, m) in parts {
        let rel = &horizon - (h - rat(1, 24));
        if rel.is_negative() {
            continue;
        }
        rhs = rhs.add(&char_virasoro_c1(h, &rel).scale(&ri(*m as i64)));
    }
    let mismatch = lhs.compare(&rhs).err();
    DecompositionCheck { holds: mismatch.is_none(), mismatch }
}

/// The whole twisted module against {(2p+1)^2/16}.
pub fn verify_twisted_decomposition(cutoff: &Rat) -> DecompositionCheck {
    let parts: Vec<(Rat, u64)> = lowest_weights(|p| Some(ri((2 * p + 1) * (2 * p + 1)) / ri(16)), cutoff);
    against(&twisted_graded_dimension(cutoff), &parts)
}

fn lowest_weights(f: impl Fn(i64) -> Option<Rat>, cutoff: &Rat) -> Vec<(Rat, u64)> {
    let bound = cutoff + ri(1) + ri(1);
    let mut out = Vec::new();
    for p in 0i64..10_000 {
        match f(p) {
            Some(h) if h <= bound => out.push((h, 1)),
            Some(_) => break,
            None => {}
        }
    }
    out
}

/// The Virasoro lowest weights of the standard decomposition of each module,
/// listed up to h <= relative cutoff + 2 above the module's own weight.
pub fn standard_decomposition(module: &ModuleLabel, cutoff: &Rat) -> Result<Vec<(Rat, u64)>> {
    let sq = |n: i64| ri(n * n);
    let top = module.sector().offset().to_rat().ok_or_else(|| Error::UnsupportedParameter("formal lam^2".into()))?;
    let bound = &top + cutoff;
    Ok(match module {
        ModuleLabel::MPlus => lowest_weights(|p| Some(ri(4) * sq(p)), &bound),
        ModuleLabel::MMinus => lowest_weights(|p| Some(sq(2 * p + 1)), &bound),
        ModuleLabel::ThetaPlus => {
            let mut v = lowest_weights(|p| Some(sq(8 * p + 1) / ri(16)), &bound);
            v.extend(lowest_weights(|p| Some(sq(8 * p + 7) / ri(16)), &bound));
            v
        }
        ModuleLabel::ThetaMinus => {
            let mut v = lowest_weights(|p| Some(sq(8 * p + 3) / ri(16)), &bound);
            v.extend(lowest_weights(|p| Some(sq(8 * p + 5) / ri(16)), &bound));
            v
        }
        ModuleLabel::MLambda(Some(s)) => {
            let h = s / ri(2);
            match quarter_square_root(&h) {
                Some(n) => lowest_weights(|p| Some((&n + ri(2 * p)) * (&n + ri(2 * p)) / ri(4)), &bound),
                None => vec![(h, 1)],
            }
        }
        ModuleLabel::MLambda(None) => unreachable!(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::basis_at_degree;

    #[test]
    fn partition_numbers() {
        let e = eta_inverse(&ri(10));
        assert_eq!(e.offset(), &rat(-1, 24));
        assert_eq!(e.coeff(&ri(0)), ri(1));
        assert_eq!(e.coeff(&ri(4)), ri(5));
        // oracle: count partitions directly
        for n in 0..=10 {
            assert_eq!(e.coeff(&ri(n)), ri(basis_at_degree(&Sector::vacuum(), &ri(n)).len() as i64));
        }
        assert_eq!(e.coeff(&ri(10)), ri(42));
    }

    #[test]
    fn virasoro_cases() {
        let c = char_virasoro_c1(&rat(1, 16), &ri(3));
        assert_eq!(c.offset(), &(rat(1, 16) - rat(1, 24)));
        assert_eq!(c.dense(), vec![ri(1), ri(1), ri(2), ri(3)]);
        // h = 1 = 2^2/4: (q - q^4)/eta
        let c = char_virasoro_c1(&ri(1), &ri(4));
        assert_eq!(c.dense(), vec![ri(1), ri(1), ri(2), ri(2), ri(4)]);
        let c = char_virasoro_c1(&ri(0), &ri(3));
        assert_eq!(c.dense(), vec![ri(1), ri(0), ri(1), ri(1)]);
    }

    #[test]
    fn graded_dimensions() {
        let t = twisted_graded_dimension(&rat(3, 2));
        assert_eq!(t.dense(), vec![ri(1), ri(1), ri(1), ri(2)]);
        let p = graded_dimension(&ModuleLabel::MPlus, &ri(4)).unwrap();
        assert_eq!(p.coeff(&ri(4)), ri(3));
        let l = graded_dimension(&ModuleLabel::lambda(rat(1, 3)), &ri(2)).unwrap();
        assert_eq!(l.coeff(&ri(0)), ri(1));
        assert_eq!(l.offset(), &(rat(1, 6) - rat(1, 24)));
    }

    #[test]
    fn jacobi_low_order() {
        let (_, r) = jacobi_sides(&ri(3));
        assert_eq!(r.dense(), vec![ri(1), ri(1), ri(0), ri(1), ri(0), ri(0), ri(1)]);
        let (l, _) = jacobi_sides(&ri(3));
        assert_eq!(l.coeff(&ri(0)), ri(1));
        assert!(jacobi_triple_check(&ri(20)));
    }

    #[test]
    fn wrong_parity_is_rejected() {
        let parts: Vec<(Rat, u64)> = (0..6).map(|p| (ri((2 * p + 1) * (2 * p + 1)), 1)).collect();
        let r = verify_decomposition(&ModuleLabel::MPlus, &parts, &ri(20)).unwrap();
        assert!(!r.holds);
        assert_eq!(r.mismatch.unwrap().exponent, rat(-1, 24).to_string());
    }

    #[test]
    fn display_and_json() {
        let s = QSeries::from_terms(rat(-1, 24), ri(1), [(ri(0), ri(1)), (rat(1, 2), ri(-2))]);
        assert_eq!(s.to_string(), "q^{-1/24}·(1 - 2 q^{1/2} + O(q^{>1}))");
        let j = serde_json::to_value(&s).unwrap();
        assert_eq!(j["coeffs"], serde_json::json!(["1", "-2", "0"]));
    }
}
