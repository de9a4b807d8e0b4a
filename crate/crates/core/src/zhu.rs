//! Zhu's products, O(M) membership, the phi map and contractions
//! v'_L (x) [w] (x) v_N as polynomials in x = a_L, y = a_N, z = b_L or b_N.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::linalg::solve;
use crate::exact::rat::{binomial, rat, ri, Rat};
use crate::exact::{MultiPoly, Phase, Scalar, UPoly, Var};
use crate::fock::{FockVector, Partition, Sector};
use crate::labels::ModuleLabel;
use crate::vertexops::{j_vector, mode};
use crate::virasoro::{apply_word, express_in_descendants, l_op, omega};

fn wt(a: &FockVector) -> Result<i64> {
    if !a.sector().is_vacuum() {
        return Err(Error::SectorMismatch);
    }
    let d2 = a.degree2().ok_or(Error::NonHomogeneous)?;
    if d2 % 2 != 0 {
        return Err(Error::NonHomogeneous);
    }
    Ok(d2 as i64 / 2)
}

fn residue_sum(a: &FockVector, u: &FockVector, top: i64, shift: i64) -> Result<FockVector> {
    let mut out = FockVector::zero(u.sector().clone());
    if a.is_zero() {
        return Ok(out);
    }
    for i in 0..=top.max(-1) {
        let c = Rat::from_integer(binomial(top as u64, i as u64));
        out.add_scaled(&mode(a, i - shift, u), &Scalar::from_rat(c));
    }
    Ok(out)
}

/// a*u = sum_i C(wt a, i) a_{i-1} u.
pub fn star_left(a: &FockVector, u: &FockVector) -> Result<FockVector> {
    let w = wt(a)?;
    residue_sum(a, u, w, 1)
}

/// a o u = sum_i C(wt a, i) a_{i-2} u.
pub fn circ(a: &FockVector, u: &FockVector) -> Result<FockVector> {
    let w = wt(a)?;
    residue_sum(a, u, w, 2)
}

/// u*a = sum_{i < wt a} C(wt a - 1, i) a_{i-1} u.
pub fn star_right(u: &FockVector, a: &FockVector) -> Result<FockVector> {
    let w = wt(a)?;
    if w == 0 {
        return Ok(u.scale(&a.coeff(&Partition::empty())));
    }
    residue_sum(a, u, w - 1, 1)
}

/// Res_z (1+z)^{wt a + m} / z^{2+n} Y(a,z)u, which lies in O(M) for n >= m >= 0.
pub fn higher_residue(a: &FockVector, m: u32, n: u32, u: &FockVector) -> Result<FockVector> {
    let w = wt(a)?;
    residue_sum(a, u, w + m as i64, 2 + n as i64)
}

/// L(-n)v - (-1)^{n-1}(w*v - n v*w - wt(v) v), an element of O(M) for homogeneous v.
pub fn rewrite_residue(n: u32, v: &FockVector, weight: &Scalar) -> Result<FockVector> {
    let w = omega();
    let sign = if n % 2 == 1 { Scalar::one() } else { -Scalar::one() };
    let inner = star_left(&w, v)?.sub(&star_right(v, &w)?.scale_rat(&ri(n as i64))).sub(&v.scale(weight));
    Ok(l_op(-(n as i64), v).sub(&inner.scale(&sign)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircTerm {
    pub a: FockVector,
    pub u: FockVector,
    pub coef: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Member(Vec<CircTerm>),
    Inconclusive,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }
}

fn module_degrees(module: &ModuleLabel, upto: &Rat) -> Vec<Rat> {
    let step = if module.is_twisted() { rat(1, 2) } else { ri(1) };
    let mut d = rat(module.top_degree2() as i64, 2);
    let mut out = Vec::new();
    while &d <= upto {
        out.push(d.clone());
        d += &step;
    }
    out
}

/// Tests v in O(M) using circ-generators a o u with wt(a) + deg(u) + 1 <= w.
/// A failed solve only means the bound was too small.
pub fn o_membership(v: &FockVector, module: &ModuleLabel, w: u32) -> Result<Membership> {
    if v.is_zero() {
        return Ok(Membership::Member(Vec::new()));
    }
    let sector = module.sector();
    if v.sector() != &sector {
        return Err(Error::SectorMismatch);
    }
    if v.max_degree2() > 2 * w {
        return Ok(Membership::Inconclusive);
    }
    let vplus = ModuleLabel::MPlus;
    let mut gens: Vec<(FockVector, FockVector, FockVector)> = Vec::new();
    for wa in 1..w {
        for pa in vplus.basis_at_degree(&ri(wa as i64)) {
            let a = FockVector::basis(Sector::vacuum(), pa);
            for du in module_degrees(module, &ri((w - wa - 1) as i64)) {
                for pu in module.basis_at_degree(&du) {
                    let u = FockVector::basis(sector.clone(), pu);
                    let img = circ(&a, &u)?;
                    if !img.is_zero() {
                        gens.push((a.clone(), u, img));
                    }
                }
            }
        }
    }
    let mut rows: Vec<Partition> = gens.iter().flat_map(|g| g.2.terms().map(|(p, _)| p.clone())).collect();
    rows.extend(v.terms().map(|(p, _)| p.clone()));
    rows.sort();
    rows.dedup();
    let a: Vec<Vec<Scalar>> = rows.iter().map(|p| gens.iter().map(|g| g.2.coeff(p)).collect()).collect();
    let b: Vec<Scalar> = rows.iter().map(|p| v.coeff(p)).collect();
    match solve(&a, &b) {
        None => Ok(Membership::Inconclusive),
        Some(x) => Ok(Membership::Member(
            gens.into_iter()
                .zip(x)
                .filter(|(_, c)| !c.is_zero())
                .map(|((a, u, _), coef)| CircTerm { a, u, coef })
                .collect(),
        )),
    }
}

/// F = prod_i (-1)^{m_i-1}(x - m_i y - sum_{j>i} m_j - base).
pub fn descendant_to_poly(ms: &[u32], base: &MultiPoly) -> MultiPoly {
    let x = MultiPoly::var(Var::X);
    let y = MultiPoly::var(Var::Y);
    let mut out = MultiPoly::one();
    let mut tail: i64 = 0;
    for &m in ms.iter().rev() {
        let f = &(&x - &y.scale(&ri(m as i64))) - &(base + &MultiPoly::int(tail));
        let f = if m % 2 == 0 { -f } else { f };
        out = &f * &out;
        tail += m as i64;
    }
    out
}

/// phi(v) = e^{L(1)} e^{pi i L(0)} v, with the phase kept apart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiImage {
    pub vector: FockVector,
    pub phase: Phase,
}

impl fmt::Display for PhiImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * ({})", self.phase, self.vector)
    }
}

/// Conformal weight of a degree component, as a rational number.
fn component_weight(sector: &Sector, d2: u32) -> Result<Rat> {
    let off = sector.offset();
    let off = off.to_rat().ok_or_else(|| Error::UnsupportedParameter("phi needs a rational conformal weight".into()))?;
    Ok(off + rat(d2 as i64, 2))
}

pub fn phi(v: &FockVector) -> Result<PhiImage> {
    let comps = v.components();
    let Some((&top, _)) = comps.iter().next_back() else {
        return Ok(PhiImage { vector: v.clone(), phase: Phase::one() });
    };
    let w0 = component_weight(v.sector(), top)?;
    let mut out = FockVector::zero(v.sector().clone());
    for (d2, comp) in &comps {
        let w = component_weight(v.sector(), *d2)?;
        let rel = Phase::new(&w - &w0);
        let sign = rel.sign().ok_or_else(|| Error::PhaseClasses(format!("weights {w} and {w0}")))?;
        // e^{L(1)} as a terminating sum
        let mut term = comp.scale_rat(&ri(sign));
        let mut k = 1i64;
        while !term.is_zero() {
            out.add_scaled(&term, &Scalar::one());
            term = l_op(1, &term).scale_rat(&rat(1, k));
            k += 1;
        }
    }
    Ok(PhiImage { vector: out, phase: Phase::new(w0) })
}

/// v'_L (x) [sum coeffs_g g] (x) v_N, all coefficients over one common denominator in s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionElement {
    pub coeffs: BTreeMap<usize, MultiPoly>,
    pub denominator: MultiPoly,
}

impl ContractionElement {
    pub fn zero() -> Self {
        ContractionElement { coeffs: BTreeMap::new(), denominator: MultiPoly::one() }
    }

    pub fn single(g: usize, p: MultiPoly) -> Self {
        let mut c = Self::zero();
        c.add_poly(g, &p);
        c
    }

    pub fn get(&self, g: usize) -> MultiPoly {
        self.coeffs.get(&g).cloned().unwrap_or_else(MultiPoly::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_poly(&mut self, g: usize, p: &MultiPoly) {
        let e = self.coeffs.entry(g).or_insert_with(MultiPoly::zero);
        *e = &*e + p;
        if e.is_zero() {
            self.coeffs.remove(&g);
        }
    }

    /// Brings both to a common denominator and adds.
    pub fn add(&self, o: &ContractionElement) -> ContractionElement {
        let (d, fa, fb) = common_denominator(&self.denominator, &o.denominator);
        let mut out = ContractionElement { coeffs: BTreeMap::new(), denominator: d };
        for (g, p) in &self.coeffs {
            out.add_poly(*g, &(p * &fa));
        }
        for (g, p) in &o.coeffs {
            out.add_poly(*g, &(p * &fb));
        }
        out
    }

    pub fn scale(&self, p: &MultiPoly) -> ContractionElement {
        let mut out = ContractionElement { coeffs: BTreeMap::new(), denominator: self.denominator.clone() };
        for (g, q) in &self.coeffs {
            out.add_poly(*g, &(q * p));
        }
        out
    }

    /// Coefficients with the denominator cleared.
    pub fn numerators(&self) -> &BTreeMap<usize, MultiPoly> {
        &self.coeffs
    }

    /// Coefficient of generator g as a polynomial when the denominator is constant.
    pub fn poly(&self, g: usize) -> Option<MultiPoly> {
        if !self.denominator.is_constant() {
            return None;
        }
        let c = self.denominator.constant_term();
        Some(self.get(g).scale(&(Rat::one() / c)))
    }
}

fn common_denominator(a: &MultiPoly, b: &MultiPoly) -> (MultiPoly, MultiPoly, MultiPoly) {
    if a == b {
        return (a.clone(), MultiPoly::one(), MultiPoly::one());
    }
    if a.is_constant() && b.is_constant() {
        let (ca, cb) = (a.constant_term(), b.constant_term());
        return (MultiPoly::one(), MultiPoly::constant(Rat::one() / ca), MultiPoly::constant(Rat::one() / cb));
    }
    // denominators are univariate in s; use the lcm
    let (ua, ub) = (a.to_upoly(Var::S).expect("denominator in s"), b.to_upoly(Var::S).expect("denominator in s"));
    let g = UPoly::gcd(&ua, &ub);
    let fa = ub.divrem(&g).0;
    let fb = ua.divrem(&g).0;
    let d = &ua * &fa;
    (MultiPoly::from_upoly(&d, Var::S), MultiPoly::from_upoly(&fa, Var::S), MultiPoly::from_upoly(&fb, Var::S))
}

impl fmt::Display for ContractionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (g, p)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str("  ;  ")?;
            }
            write!(f, "g{g}: {}", self.poly_text(p))?;
        }
        Ok(())
    }
}

impl ContractionElement {
    fn poly_text(&self, p: &MultiPoly) -> String {
        if self.denominator == MultiPoly::one() {
            p.to_string()
        } else {
            format!("({p}) / ({})", self.denominator)
        }
    }
}

impl Serialize for ContractionElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for (g, p) in &self.coeffs {
            let mut m = serde_json::Map::new();
            m.insert("generator".into(), format!("g{g}").into());
            m.insert("poly".into(), self.poly_text(p).into());
            seq.serialize_element(&m)?;
        }
        seq.end()
    }
}

/// Splits a scalar into (numerator poly in s, denominator UPoly in s).
fn scalar_as_poly(c: &Scalar) -> Result<(MultiPoly, UPoly)> {
    if let Some(r) = c.to_rat() {
        return Ok((MultiPoly::constant(r), UPoly::one()));
    }
    if c.modulus().is_some() {
        return Err(Error::UnsupportedParameter(format!("coefficient {c} is not rational")));
    }
    let (n, d) = c.even_in_s().ok_or_else(|| Error::UnsupportedParameter(format!("coefficient {c} is odd in lam")))?;
    Ok((MultiPoly::from_upoly(&n, Var::S), d))
}

/// Conformal weight of a homogeneous generator as a polynomial (in s for a formal sector).
pub fn weight_poly(g: &FockVector) -> Result<MultiPoly> {
    let d2 = g.degree2().ok_or(Error::NonHomogeneous)?;
    let (n, d) = scalar_as_poly(&g.sector().offset())?;
    if !d.is_constant() {
        return Err(Error::UnsupportedParameter("weight with a denominator".into()));
    }
    Ok(&n.scale(&(Rat::one() / d.coeff(0))) + &MultiPoly::constant(rat(d2 as i64, 2)))
}

/// Contraction of a plain element of M via its descendant coordinates.
pub fn contraction_eval(element: &FockVector, generators: &[FockVector]) -> Result<ContractionElement> {
    let coords = express_in_descendants(element, generators)?;
    let bases: Vec<MultiPoly> = generators.iter().map(weight_poly).collect::<Result<_>>()?;
    let mut out = ContractionElement::zero();
    for (w, c) in &coords.coords {
        let (n, d) = scalar_as_poly(c)?;
        let f = descendant_to_poly(&w.ms, &bases[w.generator]);
        let piece = ContractionElement {
            coeffs: BTreeMap::from([(w.generator, &n * &f)]),
            denominator: MultiPoly::from_upoly(&d, Var::S),
        };
        out = out.add(&piece);
    }
    Ok(out)
}

/// A factor of a product in A(V) acting on a module element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Action {
    /// Contributes z (b of the outer module) when outermost.
    J,
    /// Contributes x or y when outermost.
    Omega,
    State(FockVector),
}

/// A rational multiple of a1 * a2 * ... * ak.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionTerm {
    pub coef: Rat,
    pub factors: Vec<Action>,
}

/// The element J - 4 w*w - 17 w + 9 h(-3)h(-1)1 of O(M(1)+).
pub fn weight_four_relation() -> Vec<ActionTerm> {
    vec![
        ActionTerm { coef: ri(1), factors: vec![Action::J] },
        ActionTerm { coef: ri(-4), factors: vec![Action::Omega, Action::Omega] },
        ActionTerm { coef: ri(-17), factors: vec![Action::Omega] },
        ActionTerm { coef: ri(9), factors: vec![Action::State(h31())] },
    ]
}

/// The vector h(-3)h(-1)1.
pub fn h31() -> FockVector {
    FockVector::monomial(Sector::vacuum(), &[3, 1])
}

/// The plain vector of an action expression, i.e. X*1 in M(1)+.
pub fn action_vector(terms: &[ActionTerm]) -> Result<FockVector> {
    let mut out = FockVector::zero(Sector::vacuum());
    for t in terms {
        let mut v = FockVector::vacuum(Sector::vacuum());
        for f in t.factors.iter().rev() {
            v = star_left(&action_state(f), &v)?;
        }
        out.add_scaled(&v, &Scalar::from_rat(t.coef.clone()));
    }
    Ok(out)
}

fn action_state(a: &Action) -> FockVector {
    match a {
        Action::J => j_vector(),
        Action::Omega => omega(),
        Action::State(v) => v.clone(),
    }
}

/// Contraction of X*g: outer J and omega factors become z and x, the rest is applied.
pub fn contraction_left(terms: &[ActionTerm], g: &FockVector, generators: &[FockVector]) -> Result<ContractionElement> {
    contraction_side(terms, g, generators, true)
}

/// Contraction of g*X with outer factors becoming z (here b_N) and y.
pub fn contraction_right(terms: &[ActionTerm], g: &FockVector, generators: &[FockVector]) -> Result<ContractionElement> {
    contraction_side(terms, g, generators, false)
}

fn contraction_side(terms: &[ActionTerm], g: &FockVector, generators: &[FockVector], left: bool) -> Result<ContractionElement> {
    let mut out = ContractionElement::zero();
    let outer_var = if left { Var::X } else { Var::Y };
    for t in terms {
        let mut scal = MultiPoly::constant(t.coef.clone());
        let mut rest: Vec<&Action> = Vec::new();
        let mut peeling = true;
        // the factor adjacent to the contraction slot is the first on the left, the last on the right
        let ordered: Vec<&Action> = if left { t.factors.iter().collect() } else { t.factors.iter().rev().collect() };
        for f in ordered {
            match (peeling, f) {
                (true, Action::J) => scal = &scal * &MultiPoly::var(Var::Z),
                (true, Action::Omega) => scal = &scal * &MultiPoly::var(outer_var),
                _ => {
                    peeling = false;
                    rest.push(f);
                }
            }
        }
        let mut v = g.clone();
        for f in rest.iter().rev() {
            let a = action_state(f);
            v = if left { star_left(&a, &v)? } else { star_right(&v, &a)? };
        }
        let piece = if rest.is_empty() {
            let gi = generators.iter().position(|h| h == g).ok_or_else(|| Error::NotInSpan("g is not a generator".into()))?;
            ContractionElement::single(gi, MultiPoly::one())
        } else {
            contraction_eval(&v, generators)?
        };
        out = out.add(&piece.scale(&scal));
    }
    Ok(out)
}

/// Contraction of a vanishing descendant combination on g, e.g. a singular vector image.
pub fn contraction_of_words(combo: &[(Rat, Vec<u32>)], gi: usize, generators: &[FockVector]) -> Result<ContractionElement> {
    let base = weight_poly(&generators[gi])?;
    let mut p = MultiPoly::zero();
    for (c, ms) in combo {
        p = &p + &descendant_to_poly(ms, &base).scale(c);
    }
    let _ = apply_word;
    Ok(ContractionElement::single(gi, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly;
    use crate::virasoro::singular_vector;

    fn v_minus() -> FockVector {
        ModuleLabel::MMinus.top_vector()
    }

    #[test]
    fn trivial_products() {
        let u = FockVector::monomial(Sector::vacuum(), &[2, 1]);
        let one = FockVector::vacuum(Sector::vacuum());
        assert_eq!(star_left(&one, &u).unwrap(), u);
        assert!(circ(&one, &u).unwrap().is_zero());
        assert_eq!(star_right(&u, &one).unwrap(), u);
        let m = FockVector::monomial(Sector::vacuum(), &[1, 1]).add(&one);
        assert!(matches!(star_left(&m, &u), Err(Error::NonHomogeneous)));
    }

    #[test]
    fn omega_products_on_e_lambda() {
        let v = ModuleLabel::lambda(rat(1, 3)).top_vector();
        let w = omega();
        let expect = l_op(-2, &v).add(&l_op(-1, &v).scale_rat(&ri(2))).add(&l_op(0, &v));
        assert_eq!(star_left(&w, &v).unwrap(), expect);
        let expect = l_op(-3, &v).add(&l_op(-2, &v).scale_rat(&ri(2))).add(&l_op(-1, &v));
        assert_eq!(circ(&w, &v).unwrap(), expect);
    }

    #[test]
    fn h31_star_descendants() {
        let v = v_minus();
        let c = express_in_descendants(&star_left(&h31(), &v).unwrap(), &[v]).unwrap();
        let got: Vec<(Vec<u32>, Rat)> = c.coords.iter().map(|(w, c)| (w.ms.clone(), c.to_rat().unwrap())).collect();
        let want = vec![
            (vec![], ri(3)),
            (vec![1], ri(12)),
            (vec![1, 1], ri(12)),
            (vec![2, 1], ri(16)),
            (vec![3], ri(-8)),
            (vec![2, 1, 1], rat(3, 2)),
            (vec![3, 1], rat(1, 4)),
            (vec![4], rat(-1, 2)),
        ];
        let mut got = got;
        let mut want = want;
        got.sort();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn f_polynomial_examples() {
        assert_eq!(descendant_to_poly(&[], &MultiPoly::int(1)), MultiPoly::one());
        assert_eq!(descendant_to_poly(&[2], &MultiPoly::int(1)), poly("-(x - 2y - 1)"));
        assert_eq!(descendant_to_poly(&[3, 1], &MultiPoly::int(0)), poly("(x - 3y - 1)(x - y)"));
    }

    #[test]
    fn step_two_polynomials() {
        let v = v_minus();
        let gens = [v.clone()];
        let f = contraction_left(&weight_four_relation(), &v, &gens).unwrap().poly(0).unwrap();
        let printed = poly("z - 4x^2 + x + 9/4 (x - y)(6x^2 - 18xy - 12y^2 - 21x - 23y + 11)");
        let fixed = poly("z - 4x^2 + x - 9/4 (x - y)(6x^2 - 18xy + 12y^2 - 21x - 23y + 11)");
        assert_ne!(f, printed);
        assert_eq!(f, fixed);
        let sv = singular_vector(&ri(1)).unwrap();
        let g = contraction_of_words(&sv, 0, &gens).unwrap().poly(0).unwrap();
        assert!(g.proportional(&poly("(x - y)(x^2 - 2xy + y^2 - 2x - 2y + 1)/2")).is_some());
    }

    #[test]
    fn mirror_matches_phi_route() {
        let v = v_minus();
        let gens = [v.clone()];
        let l = contraction_left(&weight_four_relation(), &v, &gens).unwrap().poly(0).unwrap();
        let r = contraction_right(&weight_four_relation(), &v, &gens).unwrap().poly(0).unwrap();
        let g = poly("(x - y)(x^2 - 2xy + y^2 - 2x - 2y + 1)/2");
        // the two routes differ by a multiple of the singular-vector relation
        let swapped = l.rename(&[(Var::X, Var::Y), (Var::Y, Var::X)]);
        assert_eq!(&r - &swapped, g.scale(&ri(-81)));
    }

    #[test]
    fn phi_examples() {
        let v = v_minus();
        let p = phi(&v).unwrap();
        assert_eq!(p.phase, Phase::new(ri(1)));
        assert_eq!(p.vector, v);
        let t = ModuleLabel::ThetaMinus.top_vector();
        assert_eq!(phi(&t).unwrap().phase, Phase::new(rat(9, 16)));
    }

    #[test]
    fn rewrite_residues_are_members() {
        let v = v_minus();
        for n in 1..=3 {
            let r = rewrite_residue(n, &v, &Scalar::one()).unwrap();
            assert!(o_membership(&r, &ModuleLabel::MMinus, 5).unwrap().is_member(), "n = {n}");
        }
    }
}
