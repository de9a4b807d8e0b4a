//! Virasoro operators from the Sugawara construction, descendant words and
//! coordinates of Fock vectors in terms of descendants of lowest-weight vectors.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::linalg::{kernel, solve};
use crate::exact::rat::{rat, ri, Rat};
use crate::exact::Scalar;
use crate::fock::{basis_at_degree, partitions2, FockVector, Partition, Sector};

/// L(n) = 1/2 sum_{a+b=n} :h(a)h(b):, plus 1/16 at n = 0 on the twisted sector.
pub fn l_op(n: i64, v: &FockVector) -> FockVector {
    let mut out = FockVector::zero(v.sector().clone());
    if v.is_zero() {
        return out;
    }
    let n2 = 2 * n;
    let d2 = v.max_degree2() as i64;
    let parity = v.sector().parity() as i64;
    let mut a2 = n2 - d2;
    if (a2 - parity).rem_euclid(2) != 0 {
        a2 -= 1;
    }
    let half = Scalar::from_rat(rat(1, 2));
    let one = Scalar::one();
    while 2 * a2 <= n2 {
        let b2 = n2 - a2;
        let t = v.h2(b2).h2(a2);
        out.add_scaled(&t, if a2 == b2 { &half } else { &one });
        a2 += 2;
    }
    if n == 0 && v.sector().is_twisted() {
        out.add_scaled(v, &Scalar::from_rat(rat(1, 16)));
    }
    out
}

/// L(-m_1)...L(-m_k) applied to a generator, with m_1 >= ... >= m_k.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DescendantWord {
    pub ms: Vec<u32>,
    pub generator: usize,
}

impl DescendantWord {
    pub fn new(mut ms: Vec<u32>, generator: usize) -> Self {
        ms.sort_unstable_by(|a, b| b.cmp(a));
        DescendantWord { ms, generator }
    }

    pub fn level(&self) -> u32 {
        self.ms.iter().sum()
    }
}

impl Ord for DescendantWord {
    fn cmp(&self, o: &Self) -> Ordering {
        self.generator
            .cmp(&o.generator)
            .then_with(|| self.level().cmp(&o.level()))
            .then_with(|| o.ms.cmp(&self.ms))
    }
}

impl PartialOrd for DescendantWord {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for DescendantWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut i = 0;
        while i < self.ms.len() {
            let m = self.ms[i];
            let k = self.ms[i..].iter().take_while(|&&x| x == m).count();
            if k == 1 {
                write!(f, "L(-{m})")?;
            } else {
                write!(f, "L(-{m})^{k}")?;
            }
            i += k;
        }
        if self.ms.is_empty() {
            f.write_str("1")?;
        }
        write!(f, " @ g{}", self.generator)
    }
}

/// Integer partitions of `level` in descending-lex order.
pub fn words_at_level(level: u32) -> Vec<Vec<u32>> {
    partitions2(2 * level, 0).into_iter().map(|p| p.doubled().iter().map(|d| d / 2).collect()).collect()
}

/// All normal-ordered words of level <= `level` over each generator.
pub fn descendant_basis(num_generators: usize, level: u32) -> Vec<DescendantWord> {
    let mut out = Vec::new();
    for g in 0..num_generators {
        for l in 0..=level {
            for ms in words_at_level(l) {
                out.push(DescendantWord { ms, generator: g });
            }
        }
    }
    out
}

pub fn apply_word(ms: &[u32], g: &FockVector) -> FockVector {
    ms.iter().rev().fold(g.clone(), |v, &m| l_op(-(m as i64), &v))
}

/// Applies a linear combination of words to a generator.
pub fn singular_vector_image(combo: &[(Rat, Vec<u32>)], g: &FockVector) -> FockVector {
    let mut out = FockVector::zero(g.sector().clone());
    for (c, ms) in combo {
        out.add_scaled(&apply_word(ms, g), &Scalar::from_rat(c.clone()));
    }
    out
}

/// Explicit Verma singular vectors for c = 1 at the weights used by the
/// fusion engine, as sums of words applied to the highest-weight vector.
pub fn singular_vector(h: &Rat) -> Option<Vec<(Rat, Vec<u32>)>> {
    let r = |n: i64| ri(n);
    if h.is_zero() {
        Some(vec![(r(1), vec![1])])
    } else if *h == rat(1, 4) {
        Some(vec![(r(1), vec![1, 1]), (r(-1), vec![2])])
    } else if *h == ri(1) {
        Some(vec![(r(2), vec![3]), (r(-4), vec![2, 1]), (r(1), vec![1, 1, 1])])
    } else if *h == rat(9, 4) {
        Some(vec![
            (r(18), vec![4]),
            (r(-14), vec![3, 1]),
            (r(-9), vec![2, 2]),
            (r(10), vec![2, 1, 1]),
            (r(-1), vec![1, 1, 1, 1]),
        ])
    } else {
        None
    }
}

/// Weight of a homogeneous vector: degree plus sector offset.
pub fn weight(v: &FockVector) -> Option<Scalar> {
    let d = v.degree()?;
    Some(v.sector().offset() + Scalar::from_rat(d))
}

/// L(n) v = wt(v) delta_{n,0} v for 0 <= n <= `bound`.
pub fn is_lowest_weight(v: &FockVector, bound: i64) -> bool {
    let Some(w) = weight(v) else { return false };
    if l_op(0, v) != v.scale(&w) {
        return false;
    }
    (1..=bound).all(|n| l_op(n, v).is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescendantCoords {
    pub coords: BTreeMap<DescendantWord, Scalar>,
    pub generators: Vec<FockVector>,
}

impl DescendantCoords {
    pub fn evaluate(&self) -> FockVector {
        let sector = self.generators[0].sector().clone();
        let mut out = FockVector::zero(sector);
        for (w, c) in &self.coords {
            out.add_scaled(&apply_word(&w.ms, &self.generators[w.generator]), c);
        }
        out
    }
}

impl fmt::Display for DescendantCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{} * {}", c.as_factor(), w)?;
        }
        Ok(())
    }
}

/// Coordinates of `v` on descendants of the generators. One exact linear
/// system per degree; free columns are set to zero so the support lies on the
/// earliest independent words.
pub fn express_in_descendants(v: &FockVector, generators: &[FockVector]) -> Result<DescendantCoords> {
    let mut gdeg = Vec::with_capacity(generators.len());
    for g in generators {
        if g.sector() != v.sector() {
            return Err(Error::SectorMismatch);
        }
        if !is_lowest_weight(g, 4) {
            return Err(Error::NotInSpan(format!("generator {g} is not lowest weight")));
        }
        gdeg.push(g.degree2().ok_or(Error::NonHomogeneous)?);
    }
    let mut coords = BTreeMap::new();
    for (d2, comp) in v.components() {
        let mut cols: Vec<(DescendantWord, FockVector)> = Vec::new();
        for (gi, g) in generators.iter().enumerate() {
            let Some(lev2) = d2.checked_sub(gdeg[gi]) else { continue };
            if lev2 % 2 != 0 {
                continue;
            }
            for ms in words_at_level(lev2 / 2) {
                let img = apply_word(&ms, g);
                cols.push((DescendantWord { ms, generator: gi }, img));
            }
        }
        let rows: Vec<Partition> = basis_at_degree(v.sector(), &rat(d2 as i64, 2));
        let a: Vec<Vec<Scalar>> = rows.iter().map(|p| cols.iter().map(|(_, img)| img.coeff(p)).collect()).collect();
        let b: Vec<Scalar> = rows.iter().map(|p| comp.coeff(p)).collect();
        let x = solve(&a, &b).ok_or_else(|| Error::NotInSpan(format!("degree {}", rat(d2 as i64, 2))))?;
        for ((w, _), c) in cols.into_iter().zip(x) {
            if !c.is_zero() {
                coords.insert(w, c);
            }
        }
    }
    Ok(DescendantCoords { coords, generators: generators.to_vec() })
}

/// Number of independent descendant words at a degree (rank of the images).
pub fn descendant_rank(sector: &Sector, d2: u32, generators: &[FockVector]) -> usize {
    let rows = basis_at_degree(sector, &rat(d2 as i64, 2));
    let mut imgs = Vec::new();
    for g in generators {
        let gd = g.degree2().unwrap_or(0);
        if d2 >= gd && (d2 - gd) % 2 == 0 {
            for ms in words_at_level((d2 - gd) / 2) {
                imgs.push(apply_word(&ms, g));
            }
        }
    }
    let a: Vec<Vec<Scalar>> = rows.iter().map(|p| imgs.iter().map(|v| v.coeff(p)).collect()).collect();
    crate::exact::linalg::rank(&a)
}

/// Basis of the lowest-weight vectors of a sector at a degree (kernel of L(1), L(2)).
pub fn lowest_weight_space(sector: &Sector, d2: u32) -> Vec<FockVector> {
    let basis = basis_at_degree(sector, &rat(d2 as i64, 2));
    if basis.is_empty() {
        return Vec::new();
    }
    let imgs: Vec<(FockVector, FockVector)> = basis
        .iter()
        .map(|p| {
            let v = FockVector::basis(sector.clone(), p.clone());
            (l_op(1, &v), l_op(2, &v))
        })
        .collect();
    let mut row_keys: Vec<(usize, Partition)> = Vec::new();
    for (i, get) in [0usize, 1].iter().enumerate() {
        let mut keys: Vec<Partition> = imgs.iter().flat_map(|im| if *get == 0 { im.0.terms() } else { im.1.terms() }.map(|(p, _)| p.clone())).collect();
        keys.sort();
        keys.dedup();
        row_keys.extend(keys.into_iter().map(|k| (i, k)));
    }
    let a: Vec<Vec<Scalar>> = row_keys
        .iter()
        .map(|(i, k)| imgs.iter().map(|im| if *i == 0 { im.0.coeff(k) } else { im.1.coeff(k) }).collect())
        .collect();
    let ker = if a.is_empty() {
        (0..basis.len()).map(|j| (0..basis.len()).map(|i| if i == j { Scalar::one() } else { Scalar::zero() }).collect()).collect()
    } else {
        kernel(&a, basis.len())
    };
    ker.into_iter()
        .map(|coeffs: Vec<Scalar>| FockVector::from_terms(sector.clone(), basis.iter().cloned().zip(coeffs)))
        .collect()
}

/// Sugawara value of L(-2)|0>, i.e. the conformal vector.
pub fn omega() -> FockVector {
    FockVector::monomial(Sector::vacuum(), &[1, 1]).scale_rat(&rat(1, 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vac() -> FockVector {
        FockVector::vacuum(Sector::vacuum())
    }

    #[test]
    fn l0_on_vacua() {
        let s = rat(1, 2);
        let e = FockVector::vacuum(Sector::lambda(&s));
        assert_eq!(l_op(0, &e), e.scale_rat(&rat(1, 4)));
        let t = FockVector::vacuum(Sector::Twisted);
        assert_eq!(l_op(0, &t), t.scale_rat(&rat(1, 16)));
        assert_eq!(l_op(-2, &vac()), omega());
        assert!(l_op(-1, &vac()).is_zero());
    }

    #[test]
    fn l_minus_one_on_e_lambda() {
        let f = FockVector::vacuum(Sector::formal());
        let l = Scalar::lam_formal();
        assert_eq!(l_op(-1, &f), FockVector::monomial(Sector::formal(), &[1]).scale(&l));
    }

    #[test]
    fn basis_counts() {
        assert_eq!(descendant_basis(1, 0).len(), 1);
        assert_eq!(descendant_basis(1, 2).len(), 4);
        assert_eq!(descendant_basis(1, 4).len(), 12);
        assert_eq!(descendant_basis(2, 2).len(), 8);
        assert_eq!(words_at_level(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn word_text() {
        assert_eq!(DescendantWord::new(vec![1, 3, 1], 0).to_string(), "L(-3)L(-1)^2 @ g0");
        assert_eq!(DescendantWord::new(vec![], 1).to_string(), "1 @ g1");
    }

    #[test]
    fn h31_in_vacuum_and_j() {
        let j = FockVector::monomial(Sector::vacuum(), &[1, 1, 1, 1])
            .sub(&FockVector::monomial(Sector::vacuum(), &[3, 1]).scale_rat(&ri(2)))
            .add(&FockVector::monomial(Sector::vacuum(), &[2, 2]).scale_rat(&rat(3, 2)));
        let v = FockVector::monomial(Sector::vacuum(), &[3, 1]);
        let c = express_in_descendants(&v, &[vac(), j.clone()]).unwrap();
        let want: BTreeMap<DescendantWord, Scalar> = [
            (DescendantWord::new(vec![], 1), Scalar::from_rat(rat(-1, 9))),
            (DescendantWord::new(vec![4], 0), Scalar::from_rat(rat(1, 3))),
            (DescendantWord::new(vec![2, 2], 0), Scalar::from_rat(rat(4, 9))),
        ]
        .into_iter()
        .collect();
        assert_eq!(c.coords, want);
        assert_eq!(c.evaluate(), v);
    }

    #[test]
    fn omega_and_not_in_span() {
        let c = express_in_descendants(&omega(), &[vac()]).unwrap();
        assert_eq!(c.coords.len(), 1);
        assert_eq!(c.coords[&DescendantWord::new(vec![2], 0)], Scalar::one());
        let j4 = FockVector::monomial(Sector::vacuum(), &[1, 1, 1, 1]);
        assert!(matches!(express_in_descendants(&j4, &[vac()]), Err(Error::NotInSpan(_))));
        // h(-1) e^lam = lam^{-1} L(-1) e^lam
        let e = FockVector::vacuum(Sector::formal());
        let c = express_in_descendants(&FockVector::monomial(Sector::formal(), &[1]), &[e]).unwrap();
        assert_eq!(c.coords[&DescendantWord::new(vec![1], 0)], Scalar::lam_formal().inv().unwrap());
    }

    #[test]
    fn singular_images() {
        let v = FockVector::monomial(Sector::vacuum(), &[1]);
        assert!(singular_vector_image(&singular_vector(&ri(1)).unwrap(), &v).is_zero());
        let e = FockVector::vacuum(Sector::lambda(&rat(1, 2)));
        assert!(singular_vector_image(&singular_vector(&rat(1, 4)).unwrap(), &e).is_zero());
        let plus = vec![(ri(1), vec![1, 1]), (ri(1), vec![2])];
        assert!(!singular_vector_image(&plus, &e).is_zero());
        let e9 = FockVector::vacuum(Sector::lambda(&rat(9, 2)));
        assert!(singular_vector_image(&singular_vector(&rat(9, 4)).unwrap(), &e9).is_zero());
    }

    #[test]
    fn lowest_weight_spaces() {
        // weight 25/16 in the twisted sector: degree 3/2
        let u = lowest_weight_space(&Sector::Twisted, 3);
        assert_eq!(u.len(), 1);
        let v = FockVector::monomial2(Sector::Twisted, &[3])
            .scale_rat(&rat(-1, 2))
            .add(&FockVector::monomial2(Sector::Twisted, &[1, 1, 1]));
        assert!(is_lowest_weight(&v, 4));
        assert_eq!(lowest_weight_space(&Sector::vacuum(), 8).len(), 1);
        assert!(lowest_weight_space(&Sector::vacuum(), 4).is_empty());
    }
}
