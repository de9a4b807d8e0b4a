//! Fusion rules N_{MN}^L for the irreducible M(1)+-modules.
//!
//! The contraction L_0^* . A(M) . N_0 is spanned by v'_L (x) [g] (x) v_N for g
//! in a bimodule generating set B of A(M). Every relation we can write down in
//! O(M) becomes a linear row in the unknowns c_g. Rows may also mention extra
//! lowest-weight vectors E of M; those unknowns are eliminated by rank, giving
//! dim <= |B| - (rank R - rank R_E).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::linalg::{kernel, rank};
use crate::exact::rat::{rat, rat_sqrt, ri, Rat};
use crate::exact::{MultiPoly, Scalar, Var};
use crate::fock::{basis_at_degree, FockVector, Partition, Sector};
use crate::labels::ModuleLabel;
use crate::vertexops::{j_vector, mode_rat, twisted_coeff, untwisted_coeff};
use crate::virasoro::{apply_word, express_in_descendants, lowest_weight_space, omega, words_at_level};
pub mod printed;
pub mod step3;

use crate::zhu::{
    contraction_eval, contraction_left, contraction_of_words, contraction_right, higher_residue, weight_four_relation,
    star_left, star_right, Action, ActionTerm, ContractionElement,
};

/// Bimodule generators of A(M): the top vector, plus a second lowest-weight
/// vector for M(1, lam) with lam^2 = 1/2 and for Mtheta-.
pub fn generator_set(m: &ModuleLabel) -> Vec<FockVector> {
    let sec = m.sector();
    let top = m.top_vector();
    match m {
        ModuleLabel::MLambda(Some(s)) if *s == rat(1, 2) => {
            // sqrt2 h(-2)v - 2 h(-1)^2 v with sqrt2 = 2 lam
            let lam = Scalar::lam(s);
            let u = FockVector::monomial(sec.clone(), &[2])
                .scale(&(lam * Scalar::from_i64(2)))
                .sub(&FockVector::monomial(sec, &[1, 1]).scale_rat(&ri(2)));
            vec![top, u]
        }
        ModuleLabel::ThetaMinus => {
            let u = FockVector::monomial2(sec.clone(), &[3])
                .scale_rat(&rat(-1, 2))
                .add(&FockVector::monomial2(sec, &[1, 1, 1]));
            vec![top, u]
        }
        _ => vec![top],
    }
}

/// J_n g for n = 1..3 lies in the Virasoro span of the generators, for every generator g.
pub fn verify_generator_hypothesis(m: &ModuleLabel) -> Result<bool> {
    let gens = generator_set(m);
    let j = j_vector();
    for g in &gens {
        for n in 1..=3 {
            let v = mode_rat(&j, &ri(n), g)?;
            match express_in_descendants(&v, &gens) {
                Ok(c) if c.evaluate() == v => {}
                Ok(_) | Err(Error::NotInSpan(_)) => return Ok(false),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(true)
}

fn project(v: &FockVector, m: &ModuleLabel) -> FockVector {
    FockVector::from_terms(v.sector().clone(), v.terms().filter(|(p, _)| m.contains(p)).map(|(p, c)| (p.clone(), c.clone())))
}

/// Splits v into pieces whose lam-parity matches the number of parts, so that
/// descendant coordinates of products with M(1)+ states stay rational.
fn lambda_consistent(v: &FockVector) -> Vec<FockVector> {
    let Some(mom) = v.sector().momentum() else { return vec![v.clone()] };
    let Some(s) = mom.modulus().cloned() else { return vec![v.clone()] };
    if mom.is_zero() {
        return vec![v.clone()];
    }
    let lam = Scalar::lam(&s);
    let (mut even, mut odd) = (FockVector::zero(v.sector().clone()), FockVector::zero(v.sector().clone()));
    for (p, c) in v.terms() {
        let (c0, c1) = c.linear_parts().expect("reduced scalar");
        let (c0, c1) = (Scalar::from_rat(c0), Scalar::from_rat(c1) * &lam);
        let (keep, other) = if p.len() % 2 == 0 { (c0, c1) } else { (c1, c0) };
        even.add_term(p.clone(), &keep);
        // the mismatched part times lam is consistent again
        odd.add_term(p.clone(), &(other * &lam));
    }
    [even, odd].into_iter().filter(|w| !w.is_zero()).collect()
}

fn span_rank(vs: &[FockVector]) -> usize {
    let mut keys: Vec<Partition> = vs.iter().flat_map(|v| v.terms().map(|(p, _)| p.clone())).collect();
    keys.sort();
    keys.dedup();
    let a: Vec<Vec<Scalar>> = keys.iter().map(|k| vs.iter().map(|v| v.coeff(k)).collect()).collect();
    rank(&a)
}

/// B followed by further lowest-weight vectors of M up to doubled degree `max_d2`,
/// so that every vector of M up to that degree is a Virasoro descendant.
fn extend_generators(m: &ModuleLabel, base: &[FockVector], max_d2: u32) -> Vec<FockVector> {
    let sec = m.sector();
    let mut gens = base.to_vec();
    let mut d2 = m.top_degree2();
    while d2 <= max_d2 {
        let mut current: Vec<FockVector> = Vec::new();
        for g in &gens {
            let gd = g.degree2().unwrap_or(0);
            if gd <= d2 && (d2 - gd) % 2 == 0 {
                current.extend(words_at_level((d2 - gd) / 2).iter().map(|ms| apply_word(ms, g)));
            }
        }
        let mut r = span_rank(&current);
        for w in lowest_weight_space(&sec, d2) {
            for cand in lambda_consistent(&project(&w, m)) {
                current.push(cand.clone());
                let r2 = span_rank(&current);
                if r2 > r {
                    r = r2;
                    gens.push(cand);
                } else {
                    current.pop();
                }
            }
        }
        d2 += 2;
    }
    gens
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// z stands for b_L
    Left,
    /// z stands for b_N
    Right,
    /// no z
    Inner,
}

#[derive(Clone, Debug)]
pub struct Relation {
    pub label: String,
    pub side: Side,
    pub element: ContractionElement,
}

/// All relation rows for one module M, as polynomials in x = a_L, y = a_N, z.
#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    pub module: ModuleLabel,
    /// B first, then the auxiliary lowest-weight vectors E.
    pub generators: Vec<FockVector>,
    pub primary: usize,
    pub relations: Vec<Relation>,
}

/// Which residues of which weight-4 states enter the circ rows.
const RESIDUE_STATES: [&[u32]; 3] = [&[3, 1], &[2, 2], &[1, 1, 1, 1]];
const RESIDUE_PAIRS: [(u32, u32); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];
const KERNEL_LEVEL: u32 = 6;

enum RowSource {
    Action { name: &'static str, left: bool },
    /// R4 = J - 4 w*w - 17 w + 9 h(-3)h(-1)1, zero in the Zhu algebra
    WeightFour { left: bool },
    Residue { state: usize, m: u32, n: u32 },
}

fn state_name(parts: &[u32]) -> String {
    let inner: Vec<String> = parts.iter().map(|p| format!("h(-{p})")).collect();
    format!("{}1", inner.join(""))
}

pub fn build_constraint_system(m: &ModuleLabel) -> Result<ConstraintSystem> {
    let base = generator_set(m);
    let top_d2 = base.iter().filter_map(|g| g.degree2()).max().unwrap_or(0);
    // circ residues of weight-4 states raise the degree by at most 4 + 1 + 2
    let max_d2 = top_d2 + 14;
    let gens = if m.is_formal() { base.clone() } else { extend_generators(m, &base, max_d2) };
    let primary = base.len();

    let mut sources = Vec::new();
    for name in ["omega", "J"] {
        for left in [true, false] {
            sources.push(RowSource::Action { name, left });
        }
    }
    for left in [true, false] {
        sources.push(RowSource::WeightFour { left });
    }
    for state in 0..RESIDUE_STATES.len() {
        for &(mm, nn) in &RESIDUE_PAIRS {
            sources.push(RowSource::Residue { state, m: mm, n: nn });
        }
    }

    let jobs: Vec<(usize, &RowSource)> = (0..primary).flat_map(|gi| sources.iter().map(move |s| (gi, s))).collect();
    let rows: Vec<Result<Option<Relation>>> = jobs
        .par_iter()
        .map(|(gi, src)| {
            let g = &gens[*gi];
            let out = match src {
                RowSource::Action { name, left } => {
                    let (act, a) = if *name == "J" { (Action::J, j_vector()) } else { (Action::Omega, omega()) };
                    let term = [ActionTerm { coef: ri(1), factors: vec![act] }];
                    let (outer, inner) = if *left {
                        (contraction_left(&term, g, &gens)?, star_left(&a, g)?)
                    } else {
                        (contraction_right(&term, g, &gens)?, star_right(g, &a)?)
                    };
                    let inner = contraction_eval(&inner, &gens)?;
                    let el = outer.add(&inner.scale(&MultiPoly::int(-1)));
                    let side = if *left { Side::Left } else { Side::Right };
                    let label = if *left { format!("{name}*g{gi}") } else { format!("g{gi}*{name}") };
                    Relation { label, side, element: el }
                }
                RowSource::WeightFour { left } => {
                    let terms = weight_four_relation();
                    if *left {
                        Relation { label: format!("R4*g{gi}"), side: Side::Left, element: contraction_left(&terms, g, &gens)? }
                    } else {
                        Relation { label: format!("g{gi}*R4"), side: Side::Right, element: contraction_right(&terms, g, &gens)? }
                    }
                }
                RowSource::Residue { state, m: mm, n: nn } => {
                    let parts = RESIDUE_STATES[*state];
                    let a = FockVector::monomial(Sector::vacuum(), parts);
                    let v = higher_residue(&a, *mm, *nn, g)?;
                    let label = format!("res[{}; {mm},{nn}] g{gi}", state_name(parts));
                    Relation { label, side: Side::Inner, element: contraction_eval(&v, &gens)? }
                }
            };
            Ok(if out.element.is_zero() { None } else { Some(out) })
        })
        .collect();
    let mut relations = Vec::new();
    for r in rows {
        match r {
            Ok(Some(rel)) => relations.push(rel),
            Ok(None) => {}
            // rows whose vectors leave the span of the known generators are skipped
            Err(Error::NotInSpan(_)) => {}
            Err(e) => return Err(e),
        }
    }
    for (gi, g) in gens.iter().enumerate() {
        relations.extend(kernel_rows(gi, g, &gens, KERNEL_LEVEL)?);
    }
    Ok(ConstraintSystem { module: m.clone(), generators: gens, primary, relations })
}

/// Vanishing word combinations on g (singular-vector images) up to a level.
fn kernel_rows(gi: usize, g: &FockVector, gens: &[FockVector], max_level: u32) -> Result<Vec<Relation>> {
    let mut out = Vec::new();
    let gd = g.degree2().ok_or(Error::NonHomogeneous)?;
    for level in 1..=max_level {
        let words = words_at_level(level);
        let imgs: Vec<FockVector> = words.iter().map(|ms| apply_word(ms, g)).collect();
        let rows = basis_at_degree(g.sector(), &rat((gd + 2 * level) as i64, 2));
        let a: Vec<Vec<Scalar>> = rows.iter().map(|p| imgs.iter().map(|v| v.coeff(p)).collect()).collect();
        for k in kernel(&a, words.len()) {
            // skip combinations that are L(-n) applied to a lower kernel element
            let combo: Vec<(Rat, Vec<u32>)> = k
                .iter()
                .zip(&words)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, w)| c.to_rat().map(|r| (r, w.clone())).ok_or_else(|| Error::UnsupportedParameter(format!("irrational kernel coefficient {c}"))))
                .collect::<Result<_>>()?;
            let el = contraction_of_words(&combo, gi, gens)?;
            if !el.is_zero() {
                out.push(Relation { label: format!("sing[level {level}] g{gi}"), side: Side::Inner, element: el });
            }
        }
    }
    Ok(out)
}

static SYSTEMS: OnceLock<Mutex<HashMap<ModuleLabel, Arc<ConstraintSystem>>>> = OnceLock::new();

/// Cached constraint system of M.
pub fn constraint_system(m: &ModuleLabel) -> Result<Arc<ConstraintSystem>> {
    let cache = SYSTEMS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(s) = cache.lock().unwrap().get(m) {
        return Ok(s.clone());
    }
    let sys = Arc::new(build_constraint_system(m)?);
    cache.lock().unwrap().insert(m.clone(), sys.clone());
    Ok(sys)
}

/// (a_L, a_N, b_L, b_N) for concrete labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalPoint {
    pub a_l: Rat,
    pub a_n: Rat,
    pub b_l: Rat,
    pub b_n: Rat,
}

fn label_ab(m: &ModuleLabel) -> Result<(Rat, Rat)> {
    if m.is_formal() {
        return Err(Error::UnsupportedParameter(format!("{m} has a free parameter")));
    }
    let a = m.top_weight().to_rat().expect("rational top weight");
    let b = m.top_j().to_rat().expect("rational top eigenvalue");
    Ok((a, b))
}

impl EvalPoint {
    pub fn of(n: &ModuleLabel, l: &ModuleLabel) -> Result<Self> {
        let (a_n, b_n) = label_ab(n)?;
        let (a_l, b_l) = label_ab(l)?;
        Ok(EvalPoint { a_l, a_n, b_l, b_n })
    }

    fn assignment(&self, side: Side) -> Vec<(Var, Rat)> {
        let mut v = vec![(Var::X, self.a_l.clone()), (Var::Y, self.a_n.clone())];
        match side {
            Side::Left => v.push((Var::Z, self.b_l.clone())),
            Side::Right => v.push((Var::Z, self.b_n.clone())),
            Side::Inner => {}
        }
        v
    }
}

impl Relation {
    /// Row of coefficients on the generators at a point.
    pub fn evaluate(&self, width: usize, pt: &EvalPoint) -> Result<Vec<Rat>> {
        let vals = pt.assignment(self.side);
        let den = self.element.denominator.eval_rat(&vals)?;
        if den.is_zero() {
            return Err(Error::UnsupportedParameter(format!("relation {} has a pole here", self.label)));
        }
        let mut row = vec![Rat::zero(); width];
        for (g, p) in self.element.numerators() {
            row[*g] = p.eval_rat(&vals)? / &den;
        }
        Ok(row)
    }

    /// Coefficient polynomial of one generator with the denominator folded in.
    pub fn poly_text(&self, g: usize) -> String {
        let p = self.element.get(g);
        if self.element.denominator == MultiPoly::one() {
            p.to_string()
        } else {
            format!("({p}) / ({})", self.element.denominator)
        }
    }
}

/// One relation evaluated at a point.
#[derive(Clone, Debug, Serialize)]
pub struct EvaluatedRow {
    pub label: String,
    pub side: Side,
    pub polys: Vec<String>,
    pub values: Vec<String>,
}

/// The relation rows of M at the point given by N and L.
pub fn constraints(m: &ModuleLabel, n: &ModuleLabel, l: &ModuleLabel) -> Result<Vec<EvaluatedRow>> {
    let sys = constraint_system(m)?;
    let pt = EvalPoint::of(n, l)?;
    let width = sys.generators.len();
    sys.relations
        .iter()
        .map(|r| {
            let vals = r.evaluate(width, &pt)?;
            Ok(EvaluatedRow {
                label: r.label.clone(),
                side: r.side,
                polys: (0..width).map(|g| r.poly_text(g)).collect(),
                values: vals.iter().map(|v| v.to_string()).collect(),
            })
        })
        .collect()
}

/// Upper bound on dim L_0^* . A(M) . N_0 together with the rows that realize it.
#[derive(Clone, Debug)]
pub struct Bound {
    pub bound: usize,
    pub rank: usize,
    pub rank_extra: usize,
    pub witnesses: Vec<usize>,
}

pub fn contraction_bound(sys: &ConstraintSystem, pt: &EvalPoint) -> Result<Bound> {
    let width = sys.generators.len();
    let mut rows = Vec::new();
    for r in &sys.relations {
        match r.evaluate(width, pt) {
            Ok(v) => rows.push(v),
            Err(Error::UnsupportedParameter(_)) => rows.push(vec![Rat::zero(); width]),
            Err(e) => return Err(e),
        }
    }
    let full = rank(&rows);
    let extra: Vec<Vec<Rat>> = rows.iter().map(|r| r[sys.primary..].to_vec()).collect();
    let rank_extra = if width > sys.primary { rank(&extra) } else { 0 };
    // a greedy set of rows reaching the full rank, for the certificate
    let mut picked: Vec<usize> = Vec::new();
    let mut acc: Vec<Vec<Rat>> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        if r.iter().all(|c| c.is_zero()) {
            continue;
        }
        acc.push(r.clone());
        if rank(&acc) > picked.len() {
            picked.push(i);
            if picked.len() == full {
                break;
            }
        } else {
            acc.pop();
        }
    }
    let bound = sys.primary - (full - rank_extra);
    Ok(Bound { bound, rank: full, rank_extra, witnesses: picked })
}

/// The intertwining operators that certify nonzero fusion rules.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "tag")]
pub enum WitnessId {
    /// I_{lam mu} (or composed with M(1,mu) ~ M(1,-mu)) into M(1, lam +- mu).
    Untwisted { lambda_sq: String, mu_sq: String, nu_sq: String, sign: i8 },
    /// Restriction of the vertex operator of M(1) or of its twisted module.
    VacuumAction { module: String },
    /// p_beta . I_lam^theta . iota_alpha
    TwistedProjection { alpha: String, beta: String },
}

fn theta_sign(m: &ModuleLabel) -> &'static str {
    if matches!(m, ModuleLabel::ThetaPlus) {
        "+"
    } else {
        "-"
    }
}

/// Sign options e with nu^2 = (lam + e mu)^2, requiring s t to be a rational square.
fn lattice_signs(s: &Rat, t: &Rat, u: &Rat) -> Vec<i8> {
    let Some(r) = rat_sqrt(&(s * t)) else { return Vec::new() };
    let two = ri(2);
    let mut out = Vec::new();
    if *u == s + t + &two * &r {
        out.push(1);
    }
    if *u == s + t - &two * &r {
        out.push(-1);
    }
    out
}

/// The registered witness for exactly this ordering, if any.
pub fn witness_for(m: &ModuleLabel, n: &ModuleLabel, l: &ModuleLabel) -> Option<WitnessId> {
    use ModuleLabel::*;
    let vac = |m: &ModuleLabel| Some(WitnessId::VacuumAction { module: m.to_string() });
    match (m, n, l) {
        (MPlus, _, _) if n == l => vac(m),
        (MMinus, MPlus, MMinus) | (MMinus, MMinus, MPlus) => vac(m),
        (MMinus, ThetaPlus, ThetaMinus) | (MMinus, ThetaMinus, ThetaPlus) => vac(m),
        (MMinus, MLambda(Some(t)), MLambda(Some(u))) if t == u => vac(m),
        (MLambda(Some(s)), MLambda(Some(t)), MLambda(Some(u))) => lattice_signs(s, t, u).first().map(|&sign| WitnessId::Untwisted {
            lambda_sq: s.to_string(),
            mu_sq: t.to_string(),
            nu_sq: u.to_string(),
            sign,
        }),
        (MLambda(Some(_)), ThetaPlus | ThetaMinus, ThetaPlus | ThetaMinus) => {
            Some(WitnessId::TwistedProjection { alpha: theta_sign(n).into(), beta: theta_sign(l).into() })
        }
        _ => None,
    }
}

/// Recomputes a nonzero coefficient of the witness intertwiner on v_M (x) v_N.
pub fn witness_leading(w: &WitnessId, m: &ModuleLabel, n: &ModuleLabel, l: &ModuleLabel) -> Result<FockVector> {
    let fail = || Error::Verification(format!("witness {w:?} has no nonzero leading coefficient"));
    match w {
        WitnessId::Untwisted { sign, .. } => {
            let (s, t) = (m.s().unwrap(), n.s().unwrap());
            let r = rat_sqrt(&(t / s)).ok_or_else(fail)?;
            let lam = Scalar::lam(s);
            let mu = &lam * &Scalar::from_rat(r * ri(*sign as i64));
            let a = FockVector::vacuum(Sector::Untwisted(lam));
            let b = FockVector::vacuum(Sector::Untwisted(mu));
            let c = untwisted_coeff(&a, &Rat::zero(), &b)?;
            let nu = c.sector().momentum().cloned().ok_or_else(fail)?;
            if c.is_zero() || (&nu * &nu).to_rat().as_ref() != l.s() {
                return Err(fail());
            }
            Ok(c)
        }
        WitnessId::VacuumAction { .. } => {
            let vn = n.top_vector();
            let a = if matches!(m, ModuleLabel::MPlus) {
                FockVector::vacuum(Sector::vacuum())
            } else {
                FockVector::monomial(Sector::vacuum(), &[1])
            };
            for k in -4..=4 {
                let c = project(&mode_rat(&a, &rat(k, 2), &vn).unwrap_or_else(|_| FockVector::zero(vn.sector().clone())), l);
                if !c.is_zero() {
                    return Ok(c);
                }
            }
            Err(fail())
        }
        WitnessId::TwistedProjection { .. } => {
            let a = m.top_vector();
            let vn = n.top_vector();
            for k in -2..=4 {
                let c = project(&twisted_coeff(&a, &rat(k, 2), &vn)?, l);
                if !c.is_zero() {
                    return Ok(c);
                }
            }
            Err(fail())
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind")]
pub enum Reason {
    /// The relations force the contraction to vanish.
    Zero { module: String, point: BTreeMap<String, String>, rank: usize, rank_extra: usize, relations: Vec<ViolatedRow> },
    /// A registered intertwiner exists and the contraction has dimension at most `bound`.
    One { witness: WitnessId, leading: String, bound: usize, rank_argument: Option<String> },
}

#[derive(Clone, Debug, Serialize)]
pub struct ViolatedRow {
    pub label: String,
    pub polys: Vec<String>,
    pub values: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FusionCertificate {
    pub m: ModuleLabel,
    pub n: ModuleLabel,
    pub l: ModuleLabel,
    pub verdict: u8,
    pub reason: Reason,
    /// Positions of (m, n, l) used for the deciding triple.
    pub permutation: [usize; 3],
}

const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];

fn point_map(pt: &EvalPoint) -> BTreeMap<String, String> {
    BTreeMap::from([
        ("a_L".to_string(), pt.a_l.to_string()),
        ("a_N".to_string(), pt.a_n.to_string()),
        ("b_L".to_string(), pt.b_l.to_string()),
        ("b_N".to_string(), pt.b_n.to_string()),
    ])
}

/// Decides N_{MN}^L, trying the orderings related by the fusion-rule symmetries.
pub fn decide(m: &ModuleLabel, n: &ModuleLabel, l: &ModuleLabel) -> Result<FusionCertificate> {
    if [m, n, l].iter().any(|x| x.is_formal()) {
        return Err(Error::UnsupportedParameter("decide needs concrete lam^2 values".into()));
    }
    let t = [m, n, l];
    let mut bounds = Vec::new();
    for p in PERMS {
        let (a, b, c) = (t[p[0]], t[p[1]], t[p[2]]);
        let sys = constraint_system(a)?;
        let pt = EvalPoint::of(b, c)?;
        bounds.push((p, sys.clone(), pt.clone(), contraction_bound(&sys, &pt)?));
    }
    let witness = PERMS.iter().find_map(|p| witness_for(t[p[0]], t[p[1]], t[p[2]]).map(|w| (*p, w)));
    let zero = bounds.iter().find(|(_, _, _, b)| b.bound == 0);

    match (witness, zero) {
        (Some((p, w)), Some((zp, ..))) => Err(Error::Verification(format!(
            "({m}, {n}, {l}): witness {w:?} under permutation {p:?} contradicts vanishing under {zp:?}"
        ))),
        (None, Some((p, sys, pt, b))) => {
            let relations = b
                .witnesses
                .iter()
                .map(|&i| {
                    let r = &sys.relations[i];
                    let vals = r.evaluate(sys.generators.len(), pt).unwrap_or_default();
                    ViolatedRow {
                        label: r.label.clone(),
                        polys: (0..sys.generators.len()).map(|g| r.poly_text(g)).collect(),
                        values: vals.iter().map(|v| v.to_string()).collect(),
                    }
                })
                .collect();
            Ok(FusionCertificate {
                m: m.clone(),
                n: n.clone(),
                l: l.clone(),
                verdict: 0,
                reason: Reason::Zero { module: sys.module.to_string(), point: point_map(pt), rank: b.rank, rank_extra: b.rank_extra, relations },
                permutation: *p,
            })
        }
        (Some((p, w)), None) => {
            let lead = witness_leading(&w, t[p[0]], t[p[1]], t[p[2]])?;
            let (bp, _, _, best) = bounds.iter().min_by_key(|(_, _, _, b)| b.bound).unwrap();
            if best.bound > 1 {
                return Err(Error::Inconclusive(format!("({m}, {n}, {l}): contraction bound {} exceeds 1", best.bound)));
            }
            let rank_argument = (bounds.iter().find(|(q, ..)| q == bp).map(|(_, s, ..)| s.primary).unwrap_or(1) > 1)
                .then(|| format!("rank {} against {} auxiliary columns under permutation {bp:?}", best.rank, best.rank_extra));
            Ok(FusionCertificate {
                m: m.clone(),
                n: n.clone(),
                l: l.clone(),
                verdict: 1,
                reason: Reason::One { witness: w, leading: lead.to_string(), bound: best.bound, rank_argument },
                permutation: p,
            })
        }
        (None, None) => Err(Error::Inconclusive(format!(
            "({m}, {n}, {l}): no witness and the relations leave dimension {}",
            bounds.iter().map(|b| b.3.bound).min().unwrap_or(0)
        ))),
    }
}

/// The labels of a table: the four fixed modules, the given M(1, lam) and
/// every rational (lam +- mu)^2 they force.
pub fn table_labels(lambda_squares: &[Rat]) -> Vec<ModuleLabel> {
    let mut ss: Vec<Rat> = lambda_squares.iter().filter(|s| s.is_positive()).cloned().collect();
    let given = ss.clone();
    for s in &given {
        for t in &given {
            if let Some(r) = rat_sqrt(&(s * t)) {
                for u in [s + t + ri(2) * &r, s + t - ri(2) * &r] {
                    if u.is_positive() {
                        ss.push(u);
                    }
                }
            }
        }
    }
    ss.sort();
    ss.dedup();
    let mut out = vec![ModuleLabel::MPlus, ModuleLabel::MMinus, ModuleLabel::ThetaPlus, ModuleLabel::ThetaMinus];
    out.extend(ss.into_iter().map(ModuleLabel::lambda));
    out
}

fn lattice_triple(s: &Rat, t: &Rat, u: &Rat) -> bool {
    rat_sqrt(&(s * t)).is_some_and(|r| *u == s + t + ri(2) * &r || *u == s + t - ri(2) * &r)
}

/// N(m, n; l) as predicted for ordered arguments.
fn predicted_ordered(m: &ModuleLabel, n: &ModuleLabel, l: &ModuleLabel) -> u8 {
    use ModuleLabel::*;
    let twisted = |x: &ModuleLabel| x.is_twisted();
    let hit = match (m, n, l) {
        (MPlus, _, _) => n == l,
        (MMinus, MPlus, MMinus) | (MMinus, MMinus, MPlus) | (MMinus, ThetaPlus, ThetaMinus) | (MMinus, ThetaMinus, ThetaPlus) => true,
        (MMinus, MLambda(Some(a)), MLambda(Some(b))) => a == b,
        (MLambda(Some(s)), MPlus | MMinus, MLambda(Some(u))) => s == u,
        (MLambda(Some(s)), MLambda(Some(t)), MLambda(Some(u))) => lattice_triple(s, t, u),
        (MLambda(Some(_)), _, _) => twisted(n) && twisted(l),
        (ThetaPlus, MPlus, ThetaPlus) | (ThetaPlus, MMinus, ThetaMinus) => true,
        (ThetaMinus, MPlus, ThetaMinus) | (ThetaMinus, MMinus, ThetaPlus) => true,
        (ThetaPlus | ThetaMinus, MLambda(Some(_)), _) => twisted(l),
        _ => false,
    };
    hit as u8
}

/// The predicted fusion rule, read symmetrically: the largest value over the
/// six orderings of the three modules.
pub fn expected_fusion_rule(m: &ModuleLabel, n: &ModuleLabel, l: &ModuleLabel) -> u8 {
    [(m, n, l), (m, l, n), (n, m, l), (n, l, m), (l, m, n), (l, n, m)]
        .into_iter()
        .map(|(a, b, c)| predicted_ordered(a, b, c))
        .max()
        .unwrap_or(0)
}

#[derive(Clone, Debug, Serialize)]
pub struct FusionTable {
    pub labels: Vec<ModuleLabel>,
    pub entries: Vec<FusionCertificate>,
}

impl FusionTable {
    pub fn verdict(&self, m: &ModuleLabel, n: &ModuleLabel, l: &ModuleLabel) -> Option<u8> {
        self.entries.iter().find(|c| &c.m == m && &c.n == n && &c.l == l).map(|c| c.verdict)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("m,n,l,verdict,witness_or_module\n");
        for c in &self.entries {
            let why = match &c.reason {
                Reason::Zero { module, .. } => format!("relations of {module}"),
                Reason::One { witness, .. } => match witness {
                    WitnessId::Untwisted { .. } => "Untwisted".into(),
                    WitnessId::VacuumAction { .. } => "VacuumAction".into(),
                    WitnessId::TwistedProjection { .. } => "TwistedProjection".into(),
                },
            };
            s.push_str(&format!("{},{},{},{},{}\n", c.m, c.n, c.l, c.verdict, why));
        }
        s
    }
}

/// Decides every triple over the table labels, in parallel.
pub fn full_table(lambda_squares: &[Rat]) -> Result<FusionTable> {
    if lambda_squares.is_empty() {
        return Err(Error::UnsupportedParameter("full_table needs at least one lam^2".into()));
    }
    full_table_over(table_labels(lambda_squares))
}

pub fn full_table_over(labels: Vec<ModuleLabel>) -> Result<FusionTable> {
    labels.par_iter().map(constraint_system).collect::<Result<Vec<_>>>()?;
    let k = labels.len();
    let triples: Vec<(usize, usize, usize)> = (0..k).flat_map(|i| (0..k).flat_map(move |j| (0..k).map(move |l| (i, j, l)))).collect();
    let entries = triples.par_iter().map(|&(i, j, k)| decide(&labels[i], &labels[j], &labels[k])).collect::<Result<Vec<_>>>()?;
    Ok(FusionTable { labels, entries })
}

impl fmt::Display for FusionCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N({}, {}; {}) = {}", self.m, self.n, self.l, self.verdict)?;
        match &self.reason {
            Reason::Zero { module, rank, rank_extra, relations, .. } => {
                write!(f, "  [relations of {module}: rank {rank}, auxiliary rank {rank_extra}")?;
                if let Some(r) = relations.first() {
                    write!(f, "; e.g. {} = {:?}", r.label, r.values)?;
                }
                write!(f, "]")
            }
            Reason::One { witness, bound, .. } => write!(f, "  [witness {witness:?}, bound {bound}]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_sets() {
        assert_eq!(generator_set(&ModuleLabel::MMinus), vec![FockVector::monomial(Sector::vacuum(), &[1])]);
        let g = generator_set(&ModuleLabel::lambda(rat(1, 2)));
        assert_eq!(g.len(), 2);
        assert!(crate::virasoro::is_lowest_weight(&g[1], 4));
        let g = generator_set(&ModuleLabel::ThetaMinus);
        assert!(crate::virasoro::is_lowest_weight(&g[1], 4));
        assert_eq!(crate::virasoro::weight(&g[1]), Some(Scalar::from_rat(rat(25, 16))));
    }

    #[test]
    fn generator_hypothesis() {
        for m in [ModuleLabel::ThetaPlus, ModuleLabel::lambda(rat(1, 2)), ModuleLabel::MPlus, ModuleLabel::ThetaMinus, ModuleLabel::lambda(ri(3))] {
            assert!(verify_generator_hypothesis(&m).unwrap(), "{m}");
        }
    }

    #[test]
    fn forced_labels() {
        let l = table_labels(&[rat(1, 2), ri(2)]);
        for s in [rat(1, 2), ri(2), rat(9, 2), ri(8)] {
            assert!(l.contains(&ModuleLabel::lambda(s)));
        }
    }
}
