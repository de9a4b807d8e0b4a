//! Labels of the irreducible orbifold modules and their realizations inside Fock spaces.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::ParseError;
use crate::exact::rat::{parse_rat, rat, Rat};
use crate::exact::Scalar;
use crate::fock::{basis_at_degree, FockVector, Partition, Sector};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModuleLabel {
    MPlus,
    MMinus,
    /// M(1, lam) keyed by s = lam^2 > 0; None is a free parameter.
    MLambda(Option<Rat>),
    ThetaPlus,
    ThetaMinus,
}

impl ModuleLabel {
    pub fn lambda(s: Rat) -> Self {
        assert!(s.is_positive(), "M(1, lam) needs lam^2 > 0");
        ModuleLabel::MLambda(Some(s))
    }

    pub fn s(&self) -> Option<&Rat> {
        match self {
            ModuleLabel::MLambda(Some(s)) => Some(s),
            _ => None,
        }
    }

    pub fn is_formal(&self) -> bool {
        matches!(self, ModuleLabel::MLambda(None))
    }

    pub fn is_twisted(&self) -> bool {
        matches!(self, ModuleLabel::ThetaPlus | ModuleLabel::ThetaMinus)
    }

    pub fn sector(&self) -> Sector {
        match self {
            ModuleLabel::MPlus | ModuleLabel::MMinus => Sector::vacuum(),
            ModuleLabel::MLambda(Some(s)) => Sector::lambda(s),
            ModuleLabel::MLambda(None) => Sector::formal(),
            ModuleLabel::ThetaPlus | ModuleLabel::ThetaMinus => Sector::Twisted,
        }
    }

    /// Required parity of the number of parts, if the module is a theta-eigenspace.
    pub fn length_parity(&self) -> Option<usize> {
        match self {
            ModuleLabel::MPlus | ModuleLabel::ThetaPlus => Some(0),
            ModuleLabel::MMinus | ModuleLabel::ThetaMinus => Some(1),
            ModuleLabel::MLambda(_) => None,
        }
    }

    pub fn contains(&self, p: &Partition) -> bool {
        self.length_parity().is_none_or(|k| p.len() % 2 == k)
    }

    pub fn basis_at_degree(&self, d: &Rat) -> Vec<Partition> {
        basis_at_degree(&self.sector(), d).into_iter().filter(|p| self.contains(p)).collect()
    }

    /// Degree of the top level relative to the sector vacuum.
    pub fn top_degree2(&self) -> u32 {
        match self {
            ModuleLabel::MMinus => 2,
            ModuleLabel::ThetaMinus => 1,
            _ => 0,
        }
    }

    /// The lowest-weight vector spanning the top level.
    pub fn top_vector(&self) -> FockVector {
        let sec = self.sector();
        match self {
            ModuleLabel::MMinus => FockVector::monomial(sec, &[1]),
            ModuleLabel::ThetaMinus => FockVector::monomial2(sec, &[1]),
            _ => FockVector::vacuum(sec),
        }
    }

    /// Conformal weight a_M of the top level.
    pub fn top_weight(&self) -> Scalar {
        self.sector().offset() + Scalar::from_rat(rat(self.top_degree2() as i64, 2))
    }

    /// Eigenvalue b_M of o(J) on the top level, by closed form.
    pub fn top_j(&self) -> Scalar {
        match self {
            ModuleLabel::MPlus => Scalar::zero(),
            ModuleLabel::MMinus => Scalar::from_i64(-6),
            ModuleLabel::ThetaPlus => Scalar::from_rat(rat(3, 128)),
            ModuleLabel::ThetaMinus => Scalar::from_rat(rat(-45, 128)),
            ModuleLabel::MLambda(_) => {
                let s = self.sector().momentum().unwrap().pow(2);
                &s * &s - s * Scalar::from_rat(rat(1, 2))
            }
        }
    }

    /// Whether the module is fixed by theta-twisting of parity (M+, M-, Mtheta+-).
    pub fn is_lambda(&self) -> bool {
        matches!(self, ModuleLabel::MLambda(_))
    }
}

impl fmt::Display for ModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleLabel::MPlus => f.write_str("M+"),
            ModuleLabel::MMinus => f.write_str("M-"),
            ModuleLabel::MLambda(Some(s)) => write!(f, "M(s={s})"),
            ModuleLabel::MLambda(None) => f.write_str("M(s)"),
            ModuleLabel::ThetaPlus => f.write_str("Mtheta+"),
            ModuleLabel::ThetaMinus => f.write_str("Mtheta-"),
        }
    }
}

impl FromStr for ModuleLabel {
    type Err = ParseError;
    fn from_str(t: &str) -> Result<Self, ParseError> {
        let t = t.trim();
        match t {
            "M+" => return Ok(ModuleLabel::MPlus),
            "M-" => return Ok(ModuleLabel::MMinus),
            "Mtheta+" => return Ok(ModuleLabel::ThetaPlus),
            "Mtheta-" => return Ok(ModuleLabel::ThetaMinus),
            "M(s)" => return Ok(ModuleLabel::MLambda(None)),
            _ => {}
        }
        let inner = t
            .strip_prefix("M(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| ParseError::new(format!("unknown module label {t:?}")))?;
        let v = inner.trim().strip_prefix("s=").unwrap_or(inner);
        let s = parse_rat(v)?;
        if s.is_zero() || s.is_negative() {
            return Err(ParseError::new("M(s=...) needs s > 0; use M+ or M- for lam = 0"));
        }
        Ok(ModuleLabel::MLambda(Some(s)))
    }
}

impl Serialize for ModuleLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::ri;

    #[test]
    fn label_roundtrip() {
        for t in ["M+", "M-", "M(s=1/2)", "Mtheta+", "Mtheta-", "M(s)"] {
            assert_eq!(t.parse::<ModuleLabel>().unwrap().to_string(), t);
        }
        assert_eq!("M(2)".parse::<ModuleLabel>().unwrap(), ModuleLabel::lambda(ri(2)));
        assert!("M(s=0)".parse::<ModuleLabel>().is_err());
        assert!("N".parse::<ModuleLabel>().is_err());
    }

    #[test]
    fn graded_pieces() {
        assert_eq!(ModuleLabel::MPlus.basis_at_degree(&ri(4)).len(), 3);
        assert_eq!(ModuleLabel::MMinus.basis_at_degree(&ri(4)).len(), 2);
        assert_eq!(ModuleLabel::ThetaMinus.top_weight(), Scalar::from_rat(rat(9, 16)));
        assert_eq!(ModuleLabel::lambda(ri(2)).top_weight(), Scalar::one());
    }
}
