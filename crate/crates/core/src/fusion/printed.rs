//! Recomputed constraint polynomials next to the closed forms they are usually
//! quoted in. Each comparison allows one overall nonzero scalar and reports it.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use super::step3::CheckStatus;
use super::{constraint_system, ConstraintSystem, EvalPoint};
use crate::error::{Error, Result};
use crate::exact::{poly, rat, MultiPoly, Rat, Scalar, Var};
use crate::fock::FockVector;
use crate::labels::ModuleLabel;
use crate::virasoro::singular_vector;
use crate::zhu::contraction_of_words;

#[derive(Clone, Debug, Serialize)]
pub struct PrintedComparison {
    pub name: String,
    pub status: CheckStatus,
    /// computed = scalar * printed, when they agree
    pub scalar: Option<String>,
    pub computed: String,
    pub printed: String,
    pub detail: String,
}

impl fmt::Display for PrintedComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            CheckStatus::Holds => "ok",
            CheckStatus::Differs => "differs",
            CheckStatus::Fails => "FAIL",
        };
        write!(f, "[{tag}] {}", self.name)?;
        if let Some(c) = &self.scalar {
            write!(f, " (scalar {c})")?;
        }
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

/// a = c b for a scalar c.
fn vector_ratio(a: &FockVector, b: &FockVector) -> Option<Scalar> {
    let (p, cb) = b.terms().next()?;
    let c = a.coeff(p) * cb.inv()?;
    (b.scale(&c) == *a && !c.is_zero()).then_some(c)
}

/// Index of the generator proportional to `u`, with u = factor * generator.
fn locate(sys: &ConstraintSystem, u: &FockVector) -> Result<(usize, Scalar)> {
    sys.generators
        .iter()
        .enumerate()
        .find_map(|(i, g)| vector_ratio(u, g).map(|c| (i, c)))
        .ok_or_else(|| Error::Verification(format!("{u} is not among the generators of {}", sys.module)))
}

fn row<'a>(sys: &'a ConstraintSystem, label: &str) -> Result<&'a super::Relation> {
    sys.relations.iter().find(|r| r.label == label).ok_or_else(|| Error::Verification(format!("no relation {label}")))
}

fn coeff(sys: &ConstraintSystem, label: &str, g: usize) -> Result<MultiPoly> {
    row(sys, label)?.element.poly(g).ok_or_else(|| Error::Verification(format!("{label} has a nonconstant denominator")))
}

fn rat_of(c: &Scalar) -> Result<Rat> {
    c.to_rat().ok_or_else(|| Error::Verification(format!("irrational normalization {c}")))
}

/// Compares several polynomials that share one overall scalar.
fn compare_joint(name: &str, pairs: &[(MultiPoly, MultiPoly)], note_if_differs: &str) -> PrintedComparison {
    let computed = pairs.iter().map(|(c, _)| c.to_string()).collect::<Vec<_>>().join(" | ");
    let printed = pairs.iter().map(|(_, p)| p.to_string()).collect::<Vec<_>>().join(" | ");
    let ratios: Vec<Option<Rat>> = pairs.iter().map(|(c, p)| c.proportional(p).filter(|r| !r.is_zero())).collect();
    let common = ratios.first().cloned().flatten().filter(|r0| ratios.iter().all(|r| r.as_ref() == Some(r0)));
    let (status, detail) = match &common {
        Some(_) => (CheckStatus::Holds, String::new()),
        None => {
            let bad: Vec<String> = pairs
                .iter()
                .zip(&ratios)
                .enumerate()
                .filter(|(_, (_, r))| r.is_none())
                .map(|(i, ((c, p), _))| format!("item {i}: computed - printed = {}", c - p))
                .collect();
            (CheckStatus::Differs, format!("{}; {note_if_differs}", bad.join("; ")))
        }
    };
    PrintedComparison { name: name.into(), status, scalar: common.map(|c| c.to_string()), computed, printed, detail }
}

fn singular_row(sys: &ConstraintSystem, h: Rat) -> Result<MultiPoly> {
    let combo = singular_vector(&h).ok_or_else(|| Error::Verification(format!("no singular vector for h = {h}")))?;
    let el = contraction_of_words(&combo, 0, &sys.generators)?;
    el.poly(0).ok_or_else(|| Error::Verification("singular row has a denominator".into()))
}

pub const M_MINUS_F: &str = "z - 4x^2 + x + 9/4 (x-y)(6x^2-18xy-12y^2-21x-23y+11)";
pub const M_MINUS_G: &str = "(x-y)(x^2-2xy+y^2-2x-2y+1)/2";
pub const S_TWO_F1: &str = "3/2 + 21/8 (x-y)";
pub const S_TWO_F2: &str = "z + 95/8 x - 99/8 y - 173/8 x^2 - 9/4 xy + 207/8 y^2 + 47/4 x^3 - 27 x^2 y + 135/4 xy^2 - 27/2 y^3";
pub const S_NINE_HALVES_F: &str = "(81-72(x+y)+16(x-y)^2)(1-8(x+y)+16(x-y)^2)";
pub const S_HALF_F1: &str = "27/128 + 13/16 x - 19/16 y + 11/16 (x-y)^2";
pub const S_HALF_F2: &str = "z - 3/2 + 12(x+y) - 24(x-y)^2";
pub const S_HALF_G: &str = "-1/16 + (x+y)/2 - (x-y)^2";
pub const THETA_PLUS_F: &str = "1/2 + 8/7 (x-y)";
pub const THETA_PLUS_G: &str = "5z - 135/1792 - 1/56 x + 73/28 y - 82/7 x^2 + 212/7 xy - 180/7 y^2 + 32/7 (x-y)^2 (5x+12y) - 256/7 (x-y)^4";

/// All comparisons, in the order the steps appear.
pub fn compare_printed() -> Result<Vec<PrintedComparison>> {
    let mut out = Vec::new();

    // M-: one generator, R4 row and the weight-1 singular vector
    let sys = constraint_system(&ModuleLabel::MMinus)?;
    let f = coeff(&sys, "R4*g0", 0)?;
    let at = |p: &MultiPoly| p.eval_rat(&[(Var::X, rat(1, 1)), (Var::Y, Rat::zero()), (Var::Z, rat(-6, 1))]).unwrap_or_default();
    out.push(compare_joint(
        "M-: f of the R4 row",
        &[(f.clone(), poly(M_MINUS_F))],
        &format!(
            "two signs inside the cubic factor differ; at (a_L, a_N, b_L) = (1, 0, -6), where the vacuum action forces a zero, the computed f gives {} and the printed f gives {}",
            at(&f),
            at(&poly(M_MINUS_F))
        ),
    ));
    out.push(compare_joint("M-: g of the weight-1 singular vector", &[(singular_row(&sys, rat(1, 1))?, poly(M_MINUS_G))], ""));

    // M(1, lam), lam^2 = 2: f1 on the weight-4 lowest-weight vector, f2 on v_M
    let s2 = ModuleLabel::lambda(rat(2, 1));
    let sys = constraint_system(&s2)?;
    let u = FockVector::parse("lam h(-3) e^lam - 3 h(-2)h(-1) e^lam + lam h(-1)^3 e^lam", Some(&rat(2, 1)))?;
    let (iu, c) = locate(&sys, &u)?;
    let f1 = coeff(&sys, "R4*g0", iu)?.scale(&rat_of(&c)?.recip());
    let f2 = coeff(&sys, "R4*g0", 0)?;
    let pt = [(Var::X, rat(1, 16)), (Var::Y, rat(1, 16)), (Var::Z, rat(3, 128))];
    out.push(compare_joint(
        "M(s=2): f1, f2 of the R4 row",
        &[(f1, poly(S_TWO_F1)), (f2.clone(), poly(S_TWO_F2))],
        &format!(
            "the x^3 coefficient differs; at (1/16, 1/16, 3/128), where the nonzero fusion (M(s=2), Mtheta+, Mtheta+) forces f2 = 0, the computed f2 gives {} and the printed f2 gives {}",
            f2.eval_rat(&pt)?,
            poly(S_TWO_F2).eval_rat(&pt)?
        ),
    ));

    // lam^2 = 9/2: the weight-9/4 singular vector
    let sys = constraint_system(&ModuleLabel::lambda(rat(9, 2)))?;
    out.push(compare_joint("M(s=9/2): f of the weight-9/4 singular vector", &[(singular_row(&sys, rat(9, 4))?, poly(S_NINE_HALVES_F))], ""));

    // lam^2 = 1/2: two generators
    let sys = constraint_system(&ModuleLabel::lambda(rat(1, 2)))?;
    let u = FockVector::parse("2 lam h(-2) e^lam - 2 h(-1)^2 e^lam", Some(&rat(1, 2)))?;
    let (iu, c) = locate(&sys, &u)?;
    let f1 = coeff(&sys, "R4*g0", iu)?.scale(&rat_of(&c)?.recip());
    let f2 = coeff(&sys, "R4*g0", 0)?;
    // (x, y) = (1/16, 9/16): the fusion (M(s=1/2), Mtheta-, Mtheta+) is nonzero, so the two rows are dependent
    let det = |f1: &MultiPoly, f2: &MultiPoly| -> Result<Rat> {
        let (x, y, bl, bn) = (rat(1, 16), rat(9, 16), rat(3, 128), rat(-45, 128));
        let e1 = |a: &Rat, b: &Rat| f1.eval_rat(&[(Var::X, a.clone()), (Var::Y, b.clone())]);
        let e2 = |a: &Rat, b: &Rat, z: &Rat| f2.eval_rat(&[(Var::X, a.clone()), (Var::Y, b.clone()), (Var::Z, z.clone())]);
        Ok(e1(&x, &y)? * e2(&y, &x, &bn)? - e2(&x, &y, &bl)? * e1(&y, &x)?)
    };
    let note = format!(
        "the (x-y)^2 coefficient of f1 differs; the rows at (a_L, a_N) = (1/16, 9/16) must be dependent since (M(s=1/2), Mtheta-, Mtheta+) fuses, and their determinant is {} computed versus {} printed",
        det(&f1, &f2)?,
        det(&poly(S_HALF_F1), &poly(S_HALF_F2))?
    );
    out.push(compare_joint("M(s=1/2): f1, f2 of the R4 row", &[(f1, poly(S_HALF_F1)), (f2, poly(S_HALF_F2))], &note));
    out.push(compare_joint("M(s=1/2): g of the weight-1/4 singular vector", &[(singular_row(&sys, rat(1, 4))?, poly(S_HALF_G))], ""));

    // Mtheta+: f on the weight-49/16 vector, g on v_M
    let sys = constraint_system(&ModuleLabel::ThetaPlus)?;
    let u = FockVector::parse(
        "9 h(-5/2)h(-1/2) 1theta - 5 h(-3/2)^2 1theta - 10 h(-3/2)h(-1/2)^3 1theta + 4 h(-1/2)^6 1theta",
        None,
    )?;
    let (iu, c) = locate(&sys, &u)?;
    let f = coeff(&sys, "R4*g0", iu)?.scale(&rat_of(&c)?.recip());
    let g = coeff(&sys, "R4*g0", 0)?;
    out.push(compare_joint("Mtheta+: f, g of the R4 row", &[(f, poly(THETA_PLUS_F)), (g, poly(THETA_PLUS_G))], ""));

    // Mtheta- at N = L = Mtheta-: the two numbers on [u] and [v_M], then the mirrored pair
    let sys = constraint_system(&ModuleLabel::ThetaMinus)?;
    let u = FockVector::parse("-1/2 h(-3/2) 1theta + h(-1/2)^3 1theta", None)?;
    let (iu, c) = locate(&sys, &u)?;
    let pt = EvalPoint::of(&ModuleLabel::ThetaMinus, &ModuleLabel::ThetaMinus)?;
    let cu = rat_of(&c)?;
    for (label, want) in [("R4*g0", [rat(75, 224), rat(-135, 256)]), ("g0*R4", [rat(-75, 224), rat(-135, 256)])] {
        let r = row(&sys, label)?.evaluate(sys.generators.len(), &pt)?;
        let got = [&r[iu] / &cu, r[0].clone()];
        let ratio = (!want[1].is_zero()).then(|| &got[1] / &want[1]);
        let ok = ratio.as_ref().is_some_and(|k| !k.is_zero() && &want[0] * k == got[0]);
        let name = if label.starts_with('(') { "Mtheta-: [u], [v_M] coefficients at N = L = Mtheta-" } else { "Mtheta-: mirrored coefficients" };
        out.push(PrintedComparison {
            name: name.into(),
            status: if ok { CheckStatus::Holds } else { CheckStatus::Differs },
            scalar: if ok { ratio.map(|k| k.to_string()) } else { None },
            computed: format!("{}, {}", got[0], got[1]),
            printed: format!("{}, {}", want[0], want[1]),
            detail: String::new(),
        });
    }
    Ok(out)
}
