//! Verification suites: each check recomputes a quantity and compares it with
//! a closed form or with a second, independent computation.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::characters::{
    char_virasoro_c1, graded_dimension, jacobi_sides, standard_decomposition, twisted_graded_dimension, twisted_product_form,
    twisted_sum_form, verify_decomposition, verify_twisted_decomposition, QSeries,
};
use crate::error::{Error, Result};
use crate::exact::rat::{gbinom, rat, ri, Rat};
use crate::exact::{poly, Scalar, Var};
use crate::fock::{basis_at_degree, FockVector, Sector};
use crate::fusion::printed::compare_printed;
use crate::fusion::step3::{verify_step3_generic, CheckStatus};
use crate::fusion::{decide, expected_fusion_rule, full_table, generator_set};
use crate::labels::ModuleLabel;
use crate::vertexops::{cmn, j_vector, top_eigenvalue, twisted_coeff};
use crate::virasoro::{
    apply_word, express_in_descendants, is_lowest_weight, l_op, omega, singular_vector, singular_vector_image, weight,
};
use crate::zhu::{action_vector, circ, h31, o_membership, phi, weight_four_relation, rewrite_residue, star_left, star_right, Membership};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A printed value disagrees with the recomputed one, and an independent
    /// consistency condition sides with the recomputed value.
    Discrepancy,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), status: if ok { Status::Pass } else { Status::Fail }, detail: detail.into() }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "ok",
            Status::Fail => "FAIL",
            Status::Discrepancy => "DIFFERS",
        };
        write!(f, "[{tag}] {}", self.name)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Characters,
    Zhu,
    Virasoro,
    Twisted,
    Fusion,
    Step3,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Characters, Suite::Zhu, Suite::Virasoro, Suite::Twisted, Suite::Fusion, Suite::Step3];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Characters => "characters",
            Suite::Zhu => "zhu",
            Suite::Virasoro => "virasoro",
            Suite::Twisted => "twisted",
            Suite::Fusion => "fusion",
            Suite::Step3 => "step3",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::UnsupportedParameter(format!("unknown suite {s}")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed())
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub char_cutoff: Rat,
    pub membership_cutoff: u32,
    pub lambda_squares: Vec<Rat>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { char_cutoff: ri(20), membership_cutoff: 6, lambda_squares: default_lambda_squares() }
    }
}

pub fn default_lambda_squares() -> Vec<Rat> {
    vec![rat(1, 3), rat(1, 2), ri(2), rat(9, 2), ri(8), ri(5)]
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::Characters => character_checks(&opts.char_cutoff)?,
        Suite::Zhu => {
            let mut c = zhu_ideal_checks()?;
            c.push(relation_membership_check(opts.membership_cutoff)?);
            c.extend(rewrite_checks()?);
            c.extend(phi_checks()?);
            c
        }
        Suite::Virasoro => {
            let mut c = virasoro_relation_checks();
            c.extend(lowest_weight_checks()?);
            c.extend(singular_vector_checks());
            c.extend(round_trip_checks()?);
            c
        }
        Suite::Twisted => {
            let mut c = table41_checks()?;
            c.extend(heisenberg_checks());
            c.extend(theta_checks());
            c.extend(contravariance_checks());
            c.extend(twisted_leading_checks()?);
            c.push(cmn_check(8));
            c.extend(homomorphism_checks()?);
            c
        }
        Suite::Fusion => fusion_checks(&opts.lambda_squares)?,
        Suite::Step3 => {
            let mut c = printed_checks()?;
            c.extend(step3_checks()?);
            c
        }
    };
    Ok(SuiteReport { suite, checks })
}

// ---------------------------------------------------------------- table

#[derive(Clone, Debug)]
pub struct TopLevel {
    pub module: ModuleLabel,
    pub weight: Scalar,
    pub j: Scalar,
}

pub fn table_modules() -> Vec<ModuleLabel> {
    vec![ModuleLabel::MPlus, ModuleLabel::MMinus, ModuleLabel::MLambda(None), ModuleLabel::ThetaPlus, ModuleLabel::ThetaMinus]
}

/// o(omega) and o(J) on the top level of each module, by mode extraction.
pub fn table41() -> Result<Vec<TopLevel>> {
    let (w, j) = (omega(), j_vector());
    table_modules()
        .into_iter()
        .map(|m| Ok(TopLevel { weight: top_eigenvalue(&w, &m)?, j: top_eigenvalue(&j, &m)?, module: m }))
        .collect()
}

pub fn table41_checks() -> Result<Vec<Check>> {
    Ok(table41()?
        .into_iter()
        .map(|r| {
            let (a, b) = (r.module.top_weight(), r.module.top_j());
            let ok = r.weight == a && r.j == b;
            Check::new(format!("top level of {}", r.module), ok, format!("o(w) = {}, o(J) = {} (closed form {a}, {b})", r.weight, r.j))
        })
        .collect())
}

pub const IDEAL_GENERATORS: [&str; 2] = ["(y - 4x^2 + x)(70y + 908x^2 - 515x + 27)", "(y - 4x^2 + x)(x - 1)(x - 1/16)(x - 9/16)"];

/// Both ideal generators vanish at the computed (o(w), o(J)) of every top level.
pub fn zhu_ideal_checks() -> Result<Vec<Check>> {
    let rows = table41()?;
    let mut out = Vec::new();
    for (i, g) in IDEAL_GENERATORS.iter().enumerate() {
        let p = poly(g);
        for r in &rows {
            let v = p.eval_scalar(&[(Var::X, r.weight.clone()), (Var::Y, r.j.clone())])?;
            out.push(Check::new(format!("ideal generator {} at {}", i + 1, r.module), v.is_zero(), format!("value {v}")));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------- zhu

/// J - 4 w*w - 17 w + 9 h(-3)h(-1)1 in O(M(1)+), certified by an explicit
/// combination of circ products.
pub fn relation_membership_check(w: u32) -> Result<Check> {
    let v = action_vector(&weight_four_relation())?;
    match o_membership(&v, &ModuleLabel::MPlus, w)? {
        Membership::Member(terms) => {
            let mut sum = FockVector::zero(Sector::vacuum());
            for t in &terms {
                sum.add_scaled(&circ(&t.a, &t.u)?, &t.coef);
            }
            let ok = sum == v;
            Ok(Check::new("J - 4w*w - 17w + 9h(-3)h(-1)1 lies in O(M(1)+)", ok, format!("{} circ terms at W = {w}", terms.len())))
        }
        Membership::Inconclusive => Err(Error::Inconclusive(format!("no certificate at W = {w}; retry with a larger --cutoff"))),
    }
}

fn signed_top_vectors() -> Vec<(ModuleLabel, FockVector)> {
    [ModuleLabel::MPlus, ModuleLabel::MMinus].into_iter().map(|m| (m.clone(), m.top_vector())).collect()
}


/// L(-n)v minus its star-expression is in O(M) for n <= 4 and L(-n)v of degree <= 4.
pub fn rewrite_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for m in [ModuleLabel::MPlus, ModuleLabel::MMinus] {
        for d in 0..=2u32 {
            for p in m.basis_at_degree(&ri(d as i64)) {
                let v = FockVector::basis(Sector::vacuum(), p);
                for n in 1..=4u32 {
                    if d + n > 4 {
                        continue;
                    }
                    let r = rewrite_residue(n, &v, &Scalar::from_i64(d as i64))?;
                    let ok = o_membership(&r, &m, d + n + 1)?.is_member();
                    out.push(Check::new(format!("rewrite of L(-{n}) on {v} in {m}"), ok, ""));
                }
            }
        }
    }
    Ok(out)
}

/// phi(a*u) = phi(u)*phi(a) and phi(a o u) = -phi(a) o phi(u) modulo O(M).
pub fn phi_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (m, v) in signed_top_vectors() {
        let us = [(0u32, v.clone()), (1, l_op(-1, &v)), (2, l_op(-2, &v))];
        for (aname, a) in [("w", omega()), ("J", j_vector())] {
            let pa = phi(&a)?;
            for (k, u) in &us {
                let wt_top = u.max_degree2() / 2 + a.max_degree2() / 2;
                if wt_top > 6 {
                    continue;
                }
                let pu = phi(u)?;
                let uname = if *k == 0 { "v".to_string() } else { format!("L(-{k})v") };
                for circ_case in [false, true] {
                    let (lhs, rhs, extra) = if circ_case {
                        (phi(&circ(&a, u)?)?, circ(&pa.vector, &pu.vector)?, -1)
                    } else {
                        (phi(&star_left(&a, u)?)?, star_right(&pu.vector, &pa.vector)?, 1)
                    };
                    let rel = &(&pa.phase * &pu.phase) * &lhs.phase.inverse();
                    let Some(sign) = rel.sign() else {
                        out.push(Check::new(format!("phi on {aname}, {uname} in {m}"), false, format!("phase {rel} is not real")));
                        continue;
                    };
                    let diff = lhs.vector.sub(&rhs.scale_rat(&ri(sign * extra)));
                    let op = if circ_case { "o" } else { "*" };
                    let name = format!("phi({aname} {op} {uname}) in {m}");
                    if diff.is_zero() {
                        out.push(Check::new(name, true, "equal as vectors"));
                        continue;
                    }
                    let w = diff.max_degree2() / 2 + 1;
                    let ok = o_membership(&diff, &m, w)?.is_member();
                    out.push(Check::new(name, ok, format!("difference lies in O(M), W = {w}")));
                }
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------- virasoro

fn sample_sectors() -> Vec<Sector> {
    vec![Sector::vacuum(), Sector::lambda(&rat(2, 3)), Sector::Twisted]
}

fn basis_upto(sector: &Sector, max_deg: u32) -> Vec<FockVector> {
    let step = if sector.is_twisted() { 1 } else { 2 };
    (0..=2 * max_deg)
        .step_by(step)
        .flat_map(|d2| basis_at_degree(sector, &rat(d2 as i64, 2)))
        .map(|p| FockVector::basis(sector.clone(), p))
        .collect()
}

/// [L(m), L(n)] = (m - n)L(m + n) + (m^3 - m)/12 on basis vectors to degree 6.
pub fn virasoro_relation_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for sec in sample_sectors() {
        let mut bad = None;
        let basis = basis_upto(&sec, 6);
        'outer: for v in &basis {
            for m in -4i64..=4 {
                for n in -4i64..=4 {
                    let lhs = l_op(m, &l_op(n, v)).sub(&l_op(n, &l_op(m, v)));
                    let mut rhs = l_op(m + n, v).scale_rat(&ri(m - n));
                    if m + n == 0 {
                        rhs = rhs.add(&v.scale_rat(&rat(m * m * m - m, 12)));
                    }
                    if lhs != rhs {
                        bad = Some(format!("m = {m}, n = {n}, v = {v}"));
                        break 'outer;
                    }
                }
            }
        }
        let detail = bad.clone().unwrap_or_else(|| format!("{} basis vectors, |m|, |n| <= 4", basis.len()));
        out.push(Check::new(format!("Virasoro relations on {}", sector_name(&sec)), bad.is_none(), detail));
    }
    out
}

fn sector_name(s: &Sector) -> String {
    match s {
        Sector::Twisted => "the twisted sector".into(),
        Sector::Untwisted(l) if l.is_zero() => "M(1)".into(),
        Sector::Untwisted(l) => format!("M(1, lam) with lam^2 = {}", l.modulus().map(|m| m.to_string()).unwrap_or_default()),
    }
}

fn known_lowest_weight_vectors() -> Result<Vec<(String, FockVector, Rat)>> {
    Ok(vec![
        ("2 lam h(-2)e^lam - 2 h(-1)^2 e^lam at lam^2 = 1/2".into(), FockVector::parse("2 lam h(-2) e^lam - 2 h(-1)^2 e^lam", Some(&rat(1, 2)))?, rat(9, 4)),
        ("-1/2 h(-3/2)1 + h(-1/2)^3 1".into(), FockVector::parse("-1/2 h(-3/2) 1theta + h(-1/2)^3 1theta", None)?, rat(25, 16)),
        (
            "weight 49/16 twisted vector".into(),
            FockVector::parse("9 h(-5/2)h(-1/2) 1theta - 5 h(-3/2)^2 1theta - 10 h(-3/2)h(-1/2)^3 1theta + 4 h(-1/2)^6 1theta", None)?,
            rat(49, 16),
        ),
    ])
}

/// Top vectors and the auxiliary lowest-weight vectors are annihilated by L(n), n > 0.
pub fn lowest_weight_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for m in table_modules().into_iter().filter(|m| !m.is_formal()).chain([ModuleLabel::lambda(rat(1, 3))]) {
        let v = m.top_vector();
        let ok = is_lowest_weight(&v, 4) && weight(&v) == Some(m.top_weight());
        out.push(Check::new(format!("top vector of {m} is lowest weight"), ok, format!("weight {}", m.top_weight())));
    }
    for (name, v, h) in known_lowest_weight_vectors()? {
        let ok = l_op(1, &v).is_zero() && l_op(2, &v).is_zero() && weight(&v) == Some(Scalar::from_rat(h.clone()));
        out.push(Check::new(format!("{name} is lowest weight"), ok, format!("weight {h}")));
    }
    Ok(out)
}

/// Verma singular vectors at h = 1, 1/4, 9/4 die on the relevant top vectors.
pub fn singular_vector_checks() -> Vec<Check> {
    let cases = [
        (ri(1), ModuleLabel::MMinus),
        (rat(1, 4), ModuleLabel::lambda(rat(1, 2))),
        (rat(9, 4), ModuleLabel::lambda(rat(9, 2))),
    ];
    let mut out = Vec::new();
    for (h, m) in cases {
        let combo = singular_vector(&h).expect("tabulated weight");
        let img = singular_vector_image(&combo, &m.top_vector());
        let mut detail = format!("{} applied to the top vector", words_text(&combo));
        if h == rat(1, 4) {
            // the opposite relative sign does not vanish
            let flipped: Vec<(Rat, Vec<u32>)> = combo.iter().map(|(c, w)| (if w.len() == 1 { -c.clone() } else { c.clone() }, w.clone())).collect();
            let other = singular_vector_image(&flipped, &m.top_vector());
            detail.push_str(&format!("; with the opposite sign on L(-2) the image is {other}"));
        }
        out.push(Check::new(format!("singular vector of weight {h} vanishes in {m}"), img.is_zero(), detail));
    }
    out
}

fn words_text(combo: &[(Rat, Vec<u32>)]) -> String {
    let mut out = String::new();
    for (i, (c, ms)) in combo.iter().enumerate() {
        let mut word = String::new();
        let mut k = 0;
        while k < ms.len() {
            let run = ms[k..].iter().take_while(|&&m| m == ms[k]).count();
            word.push_str(&format!("L(-{})", ms[k]));
            if run > 1 {
                word.push_str(&format!("^{run}"));
            }
            k += run;
        }
        let mag = c.abs();
        let sep = match (i, c < &Rat::zero()) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        };
        let coef = if mag == ri(1) { String::new() } else { format!("{mag} ") };
        out.push_str(&format!("{sep}{coef}{word}"));
    }
    out
}

/// Descendant coordinates evaluate back to the input.
pub fn round_trip_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let vm = ModuleLabel::MMinus.top_vector();
    let gt = generator_set(&ModuleLabel::ThetaMinus);
    let samples = [
        ("h(-3)h(-1)1 * v in M-", star_left(&h31(), &vm)?, ModuleLabel::MMinus),
        ("J * v in M-", star_left(&j_vector(), &vm)?, ModuleLabel::MMinus),
        ("L(-3)L(-1)^2 v in M-", apply_word(&[3, 1, 1], &vm), ModuleLabel::MMinus),
        ("L(-2)L(-1)u + L(-4)v in Mtheta-", apply_word(&[2, 1], &gt[1]).add(&apply_word(&[4], &gt[0])), ModuleLabel::ThetaMinus),
    ];
    for (name, v, m) in samples {
        let gens = generator_set(&m);
        let c = express_in_descendants(&v, &gens)?;
        out.push(Check::new(format!("descendant round trip of {name}"), c.evaluate() == v, format!("{} words", c.coords.len())));
    }
    Ok(out)
}

// ---------------------------------------------------------------- twisted / structural

/// [h(m), h(n)] = m delta_{m+n,0} on basis vectors to degree 6, |m|, |n| <= 4.
pub fn heisenberg_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for sec in sample_sectors() {
        let modes: Vec<Rat> = if sec.is_twisted() {
            (-4..4).map(|k| rat(2 * k + 1, 2)).collect()
        } else {
            (-4..=4).map(ri).collect()
        };
        let basis = basis_upto(&sec, 6);
        let mut bad = None;
        'outer: for v in &basis {
            for m in &modes {
                for n in &modes {
                    let mn = |a: &Rat, b: &Rat| v.apply_mode(b).and_then(|w| w.apply_mode(a));
                    let (Ok(x), Ok(y)) = (mn(m, n), mn(n, m)) else {
                        bad = Some(format!("mode error at m = {m}, n = {n}"));
                        break 'outer;
                    };
                    let expect = if (m + n).is_zero() { v.scale_rat(m) } else { FockVector::zero(sec.clone()) };
                    if x.sub(&y) != expect {
                        bad = Some(format!("m = {m}, n = {n}, v = {v}"));
                        break 'outer;
                    }
                }
            }
        }
        let detail = bad.clone().unwrap_or_else(|| format!("{} basis vectors", basis.len()));
        out.push(Check::new(format!("Heisenberg relations on {}", sector_name(&sec)), bad.is_none(), detail));
    }
    out
}

pub fn theta_checks() -> Vec<Check> {
    [Sector::vacuum(), Sector::Twisted]
        .into_iter()
        .map(|sec| {
            let basis = basis_upto(&sec, 6);
            let ok = basis.iter().all(|v| v.theta().and_then(|t| t.theta()).as_ref() == Ok(v));
            Check::new(format!("theta^2 = id on {}", sector_name(&sec)), ok, format!("{} basis vectors", basis.len()))
        })
        .collect()
}

/// (L(n)u | v) = (u | L(-n)v) and a positive diagonal Gram matrix, twisted degrees <= 4.
pub fn contravariance_checks() -> Vec<Check> {
    let basis = basis_upto(&Sector::Twisted, 4);
    let mut adj_ok = true;
    let mut pos_ok = true;
    for u in &basis {
        for v in &basis {
            for n in -3i64..=3 {
                let l = l_op(n, u).contravariant_form(v);
                let r = u.contravariant_form(&l_op(-n, v));
                if l.is_err() || l != r {
                    adj_ok = false;
                }
            }
            let g = u.contravariant_form(v).unwrap_or_else(|_| Scalar::zero());
            let positive = g.to_rat().is_some_and(|x| if u == v { x > Rat::zero() } else { x.is_zero() });
            pos_ok &= positive;
        }
    }
    vec![
        Check::new("contravariance of L(n) on the twisted sector", adj_ok, format!("{} basis vectors, |n| <= 3", basis.len())),
        Check::new("twisted Gram matrix is positive diagonal", pos_ok, "degrees <= 4"),
    ]
}

/// First two coefficients of the twisted intertwiner of e^lam on 1theta.
/// The second is cross-checked through h(1/2), which lowers it to lam times the first.
pub fn twisted_leading_checks() -> Result<Vec<Check>> {
    let s = ri(3);
    let a = FockVector::vacuum(Sector::lambda(&s));
    let one = FockVector::vacuum(Sector::Twisted);
    let lam = Scalar::lam(&s);
    let c0 = twisted_coeff(&a, &ri(0), &one)?;
    let c1 = twisted_coeff(&a, &rat(1, 2), &one)?;
    let closed = FockVector::monomial2(Sector::Twisted, &[1]).scale(&(lam.clone() * Scalar::from_i64(2)));
    let lowered = c1.apply_mode(&rat(1, 2))?;
    Ok(vec![
        Check::new("leading twisted coefficient of e^lam is 1theta", c0 == one, format!("{c0}")),
        Check::new(
            "second twisted coefficient of e^lam is 2 lam h(-1/2)1theta",
            c1 == closed && lowered == c0.scale(&lam),
            format!("{c1} at lam^2 = 3 (a coefficient of lam alone would fail the h(1/2) test)"),
        ),
    ])
}

/// -log(((1+x)^(1/2) + (1+y)^(1/2))/2) as a truncated bivariate series.
pub fn cmn_taylor(deg: usize) -> Vec<Vec<Rat>> {
    let zero = || vec![vec![Rat::zero(); deg + 1]; deg + 1];
    let mul = |a: &Vec<Vec<Rat>>, b: &Vec<Vec<Rat>>| {
        let mut c = zero();
        for i in 0..=deg {
            for j in 0..=deg - i {
                for k in 0..=deg - i - j {
                    for l in 0..=deg - i - j - k {
                        c[i + k][j + l] += &a[i][j] * &b[k][l];
                    }
                }
            }
        }
        c
    };
    let mut sr = zero();
    for k in 1..=deg {
        let b = gbinom(&rat(1, 2), k as u32) / ri(2);
        sr[k][0] = b.clone();
        sr[0][k] = b;
    }
    let mut out = zero();
    let mut pw = sr.clone();
    for k in 1..=deg {
        let c = rat(if k % 2 == 0 { 1 } else { -1 }, k as i64);
        for i in 0..=deg {
            for j in 0..=deg - i {
                out[i][j] += &c * &pw[i][j];
            }
        }
        pw = mul(&pw, &sr);
    }
    out
}

pub fn cmn_check(deg: u32) -> Check {
    let t = cmn(deg);
    let o = cmn_taylor(deg as usize);
    let mut bad = None;
    for m in 0..=deg {
        for n in 0..=deg - m {
            if t.get(m, n) != o[m as usize][n as usize] {
                bad.get_or_insert(format!("c_{m}{n} = {} but the series gives {}", t.get(m, n), o[m as usize][n as usize]));
            }
        }
    }
    Check::new("c_mn against the Taylor series", bad.is_none(), bad.unwrap_or_else(|| format!("total degree <= {deg}")))
}

fn o_top(v: &FockVector, m: &ModuleLabel) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    for comp in v.components().values() {
        acc = acc + top_eigenvalue(comp, m)?;
    }
    Ok(acc)
}

/// o(a*b) = o(a)o(b) on the top levels, a, b in {w, J}.
pub fn homomorphism_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let states = [("w", omega()), ("J", j_vector())];
    for m in table_modules() {
        let mut ok = true;
        for (_, a) in &states {
            for (_, b) in &states {
                let ab = star_left(a, b)?;
                ok &= o_top(&ab, &m)? == top_eigenvalue(a, &m)? * top_eigenvalue(b, &m)?;
            }
        }
        out.push(Check::new(format!("o(a*b) = o(a)o(b) on the top level of {m}"), ok, "a, b in {w, J}"));
    }
    Ok(out)
}

// ---------------------------------------------------------------- characters

pub fn character_checks(cutoff: &Rat) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let cmp = |a: &QSeries, b: &QSeries| match a.compare(b) {
        Ok(()) => (true, String::new()),
        Err(m) => (false, format!("first mismatch at q^{}: {} vs {}", m.exponent, m.left, m.right)),
    };
    let g = twisted_graded_dimension(cutoff);
    let (ok, d) = cmp(&g, &twisted_product_form(cutoff));
    out.push(Check::new("twisted graded dimension = product form", ok, d));
    let (ok, d) = cmp(&twisted_product_form(cutoff), &twisted_sum_form(cutoff));
    out.push(Check::new("product form = (1/eta) sum q^((2p+1)^2/16)", ok, d));
    let (l, r) = jacobi_sides(cutoff);
    let (ok, d) = cmp(&l, &r);
    out.push(Check::new("prod (1-q^k)/(1-q^(k-1/2)) = sum q^(p(p+1)/4)", ok, d));
    let modules = [
        ModuleLabel::lambda(rat(1, 3)),
        ModuleLabel::lambda(ri(2)),
        ModuleLabel::MPlus,
        ModuleLabel::MMinus,
        ModuleLabel::ThetaPlus,
        ModuleLabel::ThetaMinus,
    ];
    for m in &modules {
        let parts = standard_decomposition(m, cutoff)?;
        let r = verify_decomposition(m, &parts, cutoff)?;
        let hs: Vec<String> = parts.iter().take(4).map(|(h, _)| h.to_string()).collect();
        let d = match &r.mismatch {
            None => format!("lowest weights {}, ...", hs.join(", ")),
            Some(mm) => format!("first mismatch at q^{}: {} vs {}", mm.exponent, mm.left, mm.right),
        };
        out.push(Check::new(format!("Virasoro decomposition of {m}"), r.holds, d));
    }
    let r = verify_twisted_decomposition(cutoff);
    out.push(Check::new("Virasoro decomposition of M(1)(theta)", r.holds, ""));
    let ten = ri(10.min(cutoff.to_integer().try_into().unwrap_or(10)));
    let series: Vec<QSeries> = modules.iter().filter(|m| **m != ModuleLabel::lambda(ri(2))).map(|m| graded_dimension(m, &ten)).collect::<Result<_>>()?;
    let mut distinct = true;
    for i in 0..series.len() {
        for j in i + 1..series.len() {
            distinct &= series[i].compare(&series[j]).is_err();
        }
    }
    out.push(Check::new("characters of M+, M-, Mtheta+, Mtheta-, M(s=1/3) are distinct", distinct, format!("to q-order {ten}")));
    let vir = char_virasoro_c1(&ri(1), &ri(3));
    out.push(Check::new("ch L(1, 1) = (q - q^4)/eta", vir.coeff(&ri(3)) == ri(2), format!("{vir}")));
    Ok(out)
}

// ---------------------------------------------------------------- fusion

pub fn fusion_checks(lambda_squares: &[Rat]) -> Result<Vec<Check>> {
    let table = full_table(lambda_squares)?;
    let mut mismatches = Vec::new();
    for c in &table.entries {
        let want = expected_fusion_rule(&c.m, &c.n, &c.l);
        if c.verdict != want {
            mismatches.push(format!("N({}, {}; {}) = {} but {want} predicted", c.m, c.n, c.l, c.verdict));
        }
    }
    let mut asym = Vec::new();
    for c in &table.entries {
        let a = table.verdict(&c.n, &c.m, &c.l);
        let b = table.verdict(&c.m, &c.l, &c.n);
        if a != Some(c.verdict) || b != Some(c.verdict) {
            asym.push(format!("N({}, {}; {})", c.m, c.n, c.l));
        }
    }
    let k = table.labels.len();
    Ok(vec![
        Check::new(
            "fusion rules match the predicted table",
            mismatches.is_empty(),
            mismatches.first().cloned().unwrap_or_else(|| format!("{} labels, {} entries", k, table.entries.len())),
        ),
        Check::new("N(M, N; L) = N(N, M; L) = N(M, L; N)", asym.is_empty(), asym.first().cloned().unwrap_or_default()),
    ])
}

/// One fusion rule with its certificate, for callers that only need one entry.
pub fn fusion_entry(m: &ModuleLabel, n: &ModuleLabel, l: &ModuleLabel) -> Result<Check> {
    let c = decide(m, n, l)?;
    let want = expected_fusion_rule(m, n, l);
    Ok(Check::new(format!("N({m}, {n}; {l})"), c.verdict == want, format!("{c}")))
}

// ---------------------------------------------------------------- step3

pub fn printed_checks() -> Result<Vec<Check>> {
    Ok(compare_printed()?
        .into_iter()
        .map(|c| {
            let status = match c.status {
                CheckStatus::Holds => Status::Pass,
                CheckStatus::Differs => Status::Discrepancy,
                CheckStatus::Fails => Status::Fail,
            };
            let scalar = c.scalar.as_ref().map(|s| format!("scalar {s}; ")).unwrap_or_default();
            Check { name: c.name, status, detail: format!("{scalar}{}", c.detail) }
        })
        .collect())
}

pub fn step3_checks() -> Result<Vec<Check>> {
    Ok(verify_step3_generic()?
        .checks
        .into_iter()
        .map(|c| {
            let status = match c.status {
                CheckStatus::Holds => Status::Pass,
                CheckStatus::Differs => Status::Discrepancy,
                CheckStatus::Fails => Status::Fail,
            };
            Check { name: c.name, status, detail: c.detail }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn expected_rules() {
        use ModuleLabel::*;
        let l = |s: i64| ModuleLabel::lambda(ri(s));
        assert_eq!(expected_fusion_rule(&ThetaPlus, &ThetaPlus, &ThetaPlus), 0);
        assert_eq!(expected_fusion_rule(&ThetaPlus, &ThetaPlus, &l(2)), 1);
        assert_eq!(expected_fusion_rule(&l(2), &l(2), &l(8)), 1);
        assert_eq!(expected_fusion_rule(&l(2), &l(2), &l(2)), 0);
        assert_eq!(expected_fusion_rule(&MMinus, &MMinus, &MPlus), 1);
        assert_eq!(expected_fusion_rule(&MMinus, &MMinus, &MMinus), 0);
    }

    #[test]
    fn cheap_suites() {
        assert!(cmn_check(6).passed());
        assert!(singular_vector_checks().iter().all(Check::passed));
        assert!(theta_checks().iter().all(Check::passed));
    }
}
