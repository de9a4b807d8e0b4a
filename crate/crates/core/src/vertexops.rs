//! Vertex operator modes: free-field products on untwisted Fock spaces, the
//! twisted construction via e^{Delta_z}, and zero modes.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::rat::{binomial, factorial, gbinom, rat, ri, Rat};
use crate::exact::Scalar;
use crate::fock::{partitions2, FockVector, Partition, Sector};
use crate::labels::ModuleLabel;

/// Coefficients of -log(((1+x)^{1/2} + (1+y)^{1/2})/2) = sum c_mn x^m y^n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmnTable {
    cutoff: u32,
    c: BTreeMap<(u32, u32), Rat>,
}

impl CmnTable {
    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn get(&self, m: u32, n: u32) -> Rat {
        assert!(m + n <= self.cutoff, "c_{m}{n} beyond the table cutoff {}", self.cutoff);
        self.c.get(&(m, n)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.c.iter()
    }
}

/// c_mn = C(-1/2, m) C(-1/2, n) / (2(m+n)) and c_00 = 0.
pub fn cmn(cutoff: u32) -> CmnTable {
    let mh = rat(-1, 2);
    let mut c = BTreeMap::new();
    for m in 0..=cutoff {
        for n in 0..=cutoff - m {
            if m + n == 0 {
                continue;
            }
            let v = gbinom(&mh, m) * gbinom(&mh, n) / ri(2 * (m + n) as i64);
            c.insert((m, n), v);
        }
    }
    CmnTable { cutoff, c }
}

/// The state J = h(-1)^4 1 - 2h(-3)h(-1) 1 + (3/2)h(-2)^2 1.
pub fn j_vector() -> FockVector {
    let s = Sector::vacuum();
    FockVector::monomial(s.clone(), &[1, 1, 1, 1])
        .sub(&FockVector::monomial(s.clone(), &[3, 1]).scale_rat(&ri(2)))
        .add(&FockVector::monomial(s, &[2, 2]).scale_rat(&rat(3, 2)))
}

/// E^+ applied to a vector: (h(-n) - lam)^p per part, grouped by doubled depth removed.
fn e_plus(v: &FockVector, lam: &Scalar) -> BTreeMap<u32, FockVector> {
    let mut out: BTreeMap<u32, FockVector> = BTreeMap::new();
    let neg = -lam;
    for (p, c) in v.terms() {
        let mults = p.multiplicities();
        let mut ks = vec![0u32; mults.len()];
        'odometer: loop {
            let mut coef = c.clone();
            let mut depth = 0u32;
            let mut removed = 0u32;
            let mut rest = Vec::with_capacity(mults.len());
            for (&(d, m), &k) in mults.iter().zip(&ks) {
                if k > 0 {
                    coef = coef * Scalar::from_rat(Rat::from_integer(binomial(m as u64, k as u64)));
                    depth += d * k;
                    removed += k;
                }
                rest.push((d, m - k));
            }
            if removed > 0 {
                coef = coef * neg.pow(removed);
            }
            out.entry(depth)
                .or_insert_with(|| FockVector::zero(v.sector().clone()))
                .add_term(Partition::from_multiplicities(&rest), &coef);
            for i in 0..ks.len() {
                if ks[i] < mults[i].1 {
                    ks[i] += 1;
                    continue 'odometer;
                }
                ks[i] = 0;
            }
            break;
        }
    }
    out.retain(|_, w| !w.is_zero());
    out
}

/// Terms of E^- at doubled depth n2: lam^k prod (1/n)^{k_n}/k_n! with creation parts.
fn e_minus(n2: u32, parity: u32, lam: &Scalar) -> Vec<(Scalar, Partition)> {
    partitions2(n2, parity)
        .into_iter()
        .map(|p| {
            let mut c = Rat::one();
            for (d, k) in p.multiplicities() {
                c *= rat(2, d as i64).pow(k as i32) / Rat::from_integer(factorial(k));
            }
            (lam.pow(p.len() as u32) * Scalar::from_rat(c), p)
        })
        .collect()
}

fn add_parts(v: &FockVector, extra: &Partition, coef: &Scalar, out: &mut FockVector) {
    for (p, c) in v.terms() {
        out.add_term(p.merge(extra), &(c * coef));
    }
}

struct FieldCtx<'a> {
    factors: Vec<u32>,
    lam: &'a Scalar,
    parity: u32,
    dout2: i64,
    du2: i64,
    j2: i64,
}

/// Coefficient of z^{base + j} of :prod d^{(n_i-1)}h(z) E^-(z)E^+(z): applied to a
/// homogeneous basis vector `u`; `factors` are the integer depths n_i.
fn field_on_basis(ctx: &FieldCtx, u: &FockVector, out: &mut FockVector) {
    fn rec(ctx: &FieldCtx, i: usize, cur: FockVector, cre: &mut Vec<u32>, cre_sum: i64, zpow2: i64, coef: Rat, out: &mut FockVector) {
        if i == ctx.factors.len() {
            let r2 = ctx.j2 - zpow2;
            let cre_p = Partition::from_doubled(cre.clone());
            let cs = Scalar::from_rat(coef);
            if ctx.lam.is_zero() {
                if r2 == 0 {
                    add_parts(&cur, &cre_p, &cs, out);
                }
                return;
            }
            for (m2, w) in e_plus(&cur, ctx.lam) {
                let n2 = r2 + m2 as i64;
                if n2 < 0 || n2 + cre_sum > ctx.dout2 {
                    continue;
                }
                if ctx.parity == 0 && n2 % 2 != 0 {
                    continue;
                }
                for (ce, pn) in e_minus(n2 as u32, ctx.parity, ctx.lam) {
                    add_parts(&w, &cre_p.merge(&pn), &(&ce * &cs), out);
                }
            }
            return;
        }
        let n = ctx.factors[i] as i64;
        let mut m2 = -ctx.dout2 + cre_sum;
        if (m2 - ctx.parity as i64).rem_euclid(2) != 0 {
            m2 += 1;
        }
        while m2 <= ctx.du2 {
            // C(-m-1, n-1) with m = m2/2
            let b = gbinom(&rat(-m2 - 2, 2), (n - 1) as u32);
            if !b.is_zero() {
                let z = zpow2 - m2 - 2 * n;
                let c = &coef * &b;
                if m2 >= 0 {
                    let next = cur.h2(m2);
                    if !next.is_zero() {
                        rec(ctx, i + 1, next, cre, cre_sum, z, c, out);
                    }
                } else {
                    cre.push((-m2) as u32);
                    rec(ctx, i + 1, cur.clone(), cre, cre_sum - m2, z, c, out);
                    cre.pop();
                }
            }
            m2 += 2;
        }
    }
    rec(ctx, 0, u.clone(), &mut Vec::new(), 0, 0, Rat::one(), out);
}

/// Coefficient of z^{base + j} (j doubled) of the free-field operator of `a` on `u`.
/// Untwisted target: base = lam*mu. Twisted target: the bare W without prefactor.
fn field_coeff(a: &FockVector, u: &FockVector, j2: i64, out_sector: Sector) -> FockVector {
    let lam = a.sector().momentum().expect("states live in untwisted sectors").clone();
    let parity = u.sector().parity();
    let mut out = FockVector::zero(out_sector.clone());
    for (pa, ca) in a.terms() {
        let factors: Vec<u32> = pa.doubled().iter().map(|d| d / 2).collect();
        for (pu, cu) in u.terms() {
            let du2 = pu.weight2() as i64;
            let dout2 = pa.weight2() as i64 + du2 + j2;
            if dout2 < 0 {
                continue;
            }
            let ctx = FieldCtx { factors: factors.clone(), lam: &lam, parity, dout2, du2, j2 };
            let ub = FockVector::basis(u.sector().clone(), pu.clone()).scale(&(ca * cu));
            let mut part = FockVector::zero(u.sector().clone());
            field_on_basis(&ctx, &ub, &mut part);
            for (p, c) in part.terms() {
                out.add_term(p.clone(), c);
            }
        }
    }
    out
}

fn integer2(r: &Rat, what: &str) -> Result<i64> {
    let d = r * ri(2);
    if !d.is_integer() {
        return Err(Error::IllIndexedMode(format!("{what} = {r}")));
    }
    d.to_integer().try_into().map_err(|_| Error::IllIndexedMode(r.to_string()))
}

/// Coefficient of z^{lam*mu + j} of Y(a, z)u for a in M(1, lam), u in M(1, mu).
pub fn untwisted_coeff(a: &FockVector, j: &Rat, u: &FockVector) -> Result<FockVector> {
    let (Some(l), Some(m)) = (a.sector().momentum(), u.sector().momentum()) else {
        return Err(Error::SectorMismatch);
    };
    if !j.is_integer() {
        return Err(Error::IllIndexedMode(format!("offset {j}")));
    }
    if !Scalar::compatible(l, m) {
        return Err(Error::Exact(crate::error::ExactError::IncompatibleModuli));
    }
    let out = Sector::Untwisted(l + m);
    Ok(field_coeff(a, u, integer2(j, "offset")?, out))
}

/// The mode a_n (coefficient of z^{-n-1}); requires n + 1 + lam*mu to be an integer.
pub fn untwisted_mode(a: &FockVector, n: &Scalar, u: &FockVector) -> Result<FockVector> {
    let (Some(l), Some(m)) = (a.sector().momentum(), u.sector().momentum()) else {
        return Err(Error::SectorMismatch);
    };
    let j = -(n + &Scalar::one()) - l * m;
    let j = j.to_rat().filter(|r| r.is_integer()).ok_or_else(|| Error::IllIndexedMode(format!("n = {n}")))?;
    untwisted_coeff(a, &j, u)
}

/// e^{Delta_z} a = sum_p z^{-p} a_p, keyed by p. h(0) acts on a by its momentum.
pub fn exp_delta(a: &FockVector, table: &CmnTable) -> Result<BTreeMap<u32, FockVector>> {
    let dmax = a.max_degree2() / 2;
    if table.cutoff() < dmax + 1 {
        return Err(Error::CutoffExceeded(format!("c_mn table cutoff {} below degree {}", table.cutoff(), dmax + 1)));
    }
    let delta = |v: &FockVector| -> BTreeMap<u32, FockVector> {
        let mut out: BTreeMap<u32, FockVector> = BTreeMap::new();
        let d = v.max_degree2() / 2;
        for m in 0..=d {
            for n in 0..=d - m {
                if m + n == 0 {
                    continue;
                }
                let c = table.get(m, n);
                if c.is_zero() {
                    continue;
                }
                let w = v.h2(2 * n as i64).h2(2 * m as i64);
                if !w.is_zero() {
                    out.entry(m + n).or_insert_with(|| FockVector::zero(v.sector().clone())).add_scaled(&w, &Scalar::from_rat(c));
                }
            }
        }
        out
    };
    let mut total: BTreeMap<u32, FockVector> = BTreeMap::new();
    total.insert(0, a.clone());
    let mut cur = total.clone();
    let mut k = 1i64;
    loop {
        let mut next: BTreeMap<u32, FockVector> = BTreeMap::new();
        for (p, w) in &cur {
            for (q, x) in delta(w) {
                next.entry(p + q).or_insert_with(|| FockVector::zero(a.sector().clone())).add_scaled(&x, &Scalar::from_rat(rat(1, k)));
            }
        }
        next.retain(|_, w| !w.is_zero());
        if next.is_empty() {
            break;
        }
        for (p, w) in &next {
            total.entry(*p).or_insert_with(|| FockVector::zero(a.sector().clone())).add_scaled(w, &Scalar::one());
        }
        cur = next;
        k += 1;
    }
    total.retain(|_, w| !w.is_zero());
    Ok(total)
}

/// Coefficient of z^{-lam^2/2 + j} of the twisted operator of a in M(1, lam) on
/// a twisted vector u, computed as W(e^{Delta_z} a, z).
pub fn twisted_coeff(a: &FockVector, j: &Rat, u: &FockVector) -> Result<FockVector> {
    if !u.sector().is_twisted() || a.sector().is_twisted() {
        return Err(Error::SectorMismatch);
    }
    let j2 = integer2(j, "offset")?;
    let table = cmn(a.max_degree2() / 2 + 1);
    let mut out = FockVector::zero(Sector::Twisted);
    for (p, ap) in exp_delta(a, &table)? {
        let part = field_coeff(&ap, u, j2 + 2 * p as i64, Sector::Twisted);
        out.add_scaled(&part, &Scalar::one());
    }
    Ok(out)
}

/// The mode a_n on the twisted sector, n + 1 - lam^2/2 in (1/2)Z.
pub fn twisted_mode(a: &FockVector, n: &Scalar, u: &FockVector) -> Result<FockVector> {
    let l = a.sector().momentum().ok_or(Error::SectorMismatch)?;
    let j = l * l * Scalar::from_rat(rat(1, 2)) - n - Scalar::one();
    let j = j.to_rat().ok_or_else(|| Error::IllIndexedMode(format!("n = {n}")))?;
    twisted_coeff(a, &j, u)
}

/// a_n u for a in M(1) acting on any module vector u.
pub fn mode(a: &FockVector, n: i64, u: &FockVector) -> FockVector {
    debug_assert!(a.sector().is_vacuum());
    let j = ri(-n - 1);
    if u.sector().is_twisted() {
        twisted_coeff(a, &j, u).expect("twisted mode")
    } else {
        let out = u.sector().clone();
        field_coeff(a, u, 2 * (-n - 1), out)
    }
}

/// a_n with a half-integer index, for theta-odd states on the twisted sector.
pub fn mode_rat(a: &FockVector, n: &Rat, u: &FockVector) -> Result<FockVector> {
    let j = -(n + Rat::one());
    if u.sector().is_twisted() {
        twisted_coeff(a, &j, u)
    } else {
        untwisted_coeff(a, &j, u)
    }
}

/// Matrix of an operator on a graded truncation, rows and columns indexed by `basis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorMatrix {
    pub basis: Vec<Partition>,
    pub entries: Vec<Vec<Scalar>>,
}

impl OperatorMatrix {
    /// The scalar if the matrix is a multiple of the identity.
    pub fn as_scalar(&self) -> Option<Scalar> {
        let c = self.entries.first()?.first()?.clone();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if (i == j && *e != c) || (i != j && !e.is_zero()) {
                    return None;
                }
            }
        }
        Some(c)
    }
}

impl fmt::Display for OperatorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// o(a) = a_{wt a - 1} on the degrees <= cutoff of a module.
pub fn zero_mode(a: &FockVector, module: &ModuleLabel, cutoff: &Rat) -> Result<OperatorMatrix> {
    let w2 = a.degree2().ok_or(Error::NonHomogeneous)?;
    if !a.sector().is_vacuum() {
        return Err(Error::SectorMismatch);
    }
    let wt = rat(w2 as i64, 2);
    let n = &wt - Rat::one();
    let sector = module.sector();
    let mut basis = Vec::new();
    let mut d = rat(module.top_degree2() as i64, 2);
    let step = if sector.is_twisted() { rat(1, 2) } else { ri(1) };
    while &d <= cutoff {
        basis.extend(module.basis_at_degree(&d));
        d += &step;
    }
    let mut cols = Vec::with_capacity(basis.len());
    for p in &basis {
        let u = FockVector::basis(sector.clone(), p.clone());
        cols.push(mode_rat(a, &n, &u)?);
    }
    let entries = basis.iter().map(|r| cols.iter().map(|c| c.coeff(r)).collect()).collect();
    Ok(OperatorMatrix { basis, entries })
}

/// Eigenvalue of o(a) on the one-dimensional top level of a module.
pub fn top_eigenvalue(a: &FockVector, module: &ModuleLabel) -> Result<Scalar> {
    let top = rat(module.top_degree2() as i64, 2);
    let m = zero_mode(a, module, &top)?;
    m.as_scalar().ok_or_else(|| Error::Verification("top level is not an eigenvector".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::virasoro::{l_op, omega};

    fn vac() -> FockVector {
        FockVector::vacuum(Sector::vacuum())
    }

    #[test]
    fn cmn_values() {
        let t = cmn(4);
        assert!(t.get(0, 0).is_zero());
        assert_eq!(t.get(1, 0), rat(-1, 4));
        assert_eq!(t.get(1, 1), rat(1, 16));
        assert_eq!(t.get(2, 1), t.get(1, 2));
    }

    #[test]
    fn identity_and_omega_modes() {
        let u = FockVector::monomial(Sector::vacuum(), &[2, 1]);
        assert_eq!(mode(&vac(), -1, &u), u);
        for n in -3..=3 {
            assert_eq!(mode(&omega(), n + 1, &u), l_op(n, &u));
        }
        let t = FockVector::monomial2(Sector::Twisted, &[3, 1]);
        for n in -3..=3 {
            assert_eq!(mode(&omega(), n + 1, &t), l_op(n, &t), "L({n}) twisted");
        }
    }

    #[test]
    fn e_lambda_on_e_mu() {
        let k = Scalar::lam(&ri(2));
        let a = FockVector::vacuum(Sector::Untwisted(k.clone()));
        let u = FockVector::vacuum(Sector::Untwisted(&k * &Scalar::from_i64(3)));
        let c = untwisted_coeff(&a, &ri(0), &u).unwrap();
        assert_eq!(c, FockVector::vacuum(Sector::Untwisted(&k * &Scalar::from_i64(4))));
    }

    #[test]
    fn table_values() {
        let j = j_vector();
        assert_eq!(top_eigenvalue(&j, &ModuleLabel::ThetaPlus).unwrap(), Scalar::from_rat(rat(3, 128)));
        assert_eq!(top_eigenvalue(&j, &ModuleLabel::ThetaMinus).unwrap(), Scalar::from_rat(rat(-45, 128)));
        assert_eq!(top_eigenvalue(&omega(), &ModuleLabel::ThetaMinus).unwrap(), Scalar::from_rat(rat(9, 16)));
        assert_eq!(top_eigenvalue(&j, &ModuleLabel::MMinus).unwrap(), Scalar::from_i64(-6));
        let m = ModuleLabel::lambda(rat(1, 3));
        assert_eq!(top_eigenvalue(&j, &m).unwrap(), m.top_j());
    }

    #[test]
    fn twisted_leading_terms() {
        let s = ri(3);
        let a = FockVector::vacuum(Sector::lambda(&s));
        let one = FockVector::vacuum(Sector::Twisted);
        assert_eq!(twisted_coeff(&a, &ri(0), &one).unwrap(), one);
        let h = FockVector::monomial2(Sector::Twisted, &[1]);
        let lam = Scalar::lam(&s);
        assert_eq!(twisted_coeff(&a, &rat(-1, 2), &h).unwrap(), one.scale(&-lam));
    }

    #[test]
    fn cmn_matches_series() {
        let t = cmn(8);
        let o = crate::verify::cmn_taylor(8);
        for m in 0..=8u32 {
            for n in 0..=8 - m {
                assert_eq!(t.get(m, n), o[m as usize][n as usize], "c_{m}{n}");
            }
        }
    }

    fn coeff_any(a: &FockVector, j: &Rat, u: &FockVector) -> FockVector {
        if u.sector().is_twisted() {
            twisted_coeff(a, j, u).unwrap()
        } else {
            untwisted_coeff(a, j, u).unwrap()
        }
    }

    /// [h(m), Y(a,z)] = sum_i C(m,i) z^{m-i} Y(h(i)a, z) on coefficients.
    fn commutator_holds(a: &FockVector, m: &Rat, j: &Rat, u: &FockVector) {
        let lhs = coeff_any(a, j, u).apply_mode(m).unwrap().sub(&coeff_any(a, j, &u.apply_mode(m).unwrap()));
        let mut rhs = FockVector::zero(lhs.sector().clone());
        for i in 0..=a.max_degree2() / 2 {
            let ha = if i == 0 {
                a.scale(a.sector().momentum().unwrap())
            } else {
                a.h2(2 * i as i64)
            };
            if ha.is_zero() {
                continue;
            }
            let c = coeff_any(&ha, &(j - m + ri(i as i64)), u);
            rhs.add_scaled(&c, &Scalar::from_rat(gbinom(m, i)));
        }
        assert_eq!(lhs, rhs, "a = {a}, m = {m}, j = {j}, u = {u}");
    }

    #[test]
    fn heisenberg_commutators() {
        let s = rat(2, 3);
        let e = FockVector::monomial(Sector::lambda(&s), &[2, 1]);
        let tw = FockVector::monomial2(Sector::Twisted, &[3, 1]);
        let mu = Scalar::lam(&s) * Scalar::from_i64(-2);
        let un = FockVector::monomial(Sector::Untwisted(mu), &[1]);
        for (m, j) in [(rat(1, 2), rat(1, 2)), (rat(3, 2), ri(1)), (rat(-1, 2), ri(2)), (rat(5, 2), rat(-3, 2))] {
            commutator_holds(&e, &m, &j, &tw);
            commutator_holds(&j_vector(), &m, &j, &tw);
        }
        for (m, j) in [(ri(1), ri(0)), (ri(2), ri(-3)), (ri(-1), ri(1))] {
            commutator_holds(&e, &m, &j, &un);
        }
    }

    #[test]
    fn translation_property() {
        let s = rat(1, 2);
        let a = FockVector::monomial(Sector::lambda(&s), &[1]);
        let la = l_op(-1, &a);
        let tw = FockVector::monomial2(Sector::Twisted, &[1]);
        let un = FockVector::monomial(Sector::lambda(&ri(2)), &[2]).with_sector(Sector::Untwisted(Scalar::lam(&s) * Scalar::from_i64(2)));
        for j in [rat(-3, 2), ri(0), rat(1, 2), ri(2)] {
            let base = -(a.sector().momentum().unwrap().pow(2)) * Scalar::from_rat(rat(1, 2));
            let lhs = twisted_coeff(&la, &j, &tw).unwrap();
            let rhs = twisted_coeff(&a, &(&j + ri(1)), &tw).unwrap().scale(&(base + Scalar::from_rat(&j + ri(1))));
            assert_eq!(lhs, rhs);
        }
        for j in [ri(-2), ri(0), ri(1)] {
            let base = a.sector().momentum().unwrap() * un.sector().momentum().unwrap();
            let lhs = untwisted_coeff(&la, &j, &un).unwrap();
            let rhs = untwisted_coeff(&a, &(&j + ri(1)), &un).unwrap().scale(&(base + Scalar::from_rat(&j + ri(1))));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn twisted_e_lambda_expansion() {
        let s = ri(3);
        let a = FockVector::vacuum(Sector::lambda(&s));
        let one = FockVector::vacuum(Sector::Twisted);
        let lam = Scalar::lam(&s);
        let c1 = twisted_coeff(&a, &rat(1, 2), &one).unwrap();
        assert_eq!(c1, FockVector::monomial2(Sector::Twisted, &[1]).scale(&(lam.clone() * Scalar::from_i64(2))));
        // h(1/2) lowers the z-exponent by 1/2 and multiplies by lam
        for j in [ri(1), rat(3, 2), ri(2)] {
            let hi = twisted_coeff(&a, &j, &one).unwrap().apply_mode(&rat(1, 2)).unwrap();
            let lo = twisted_coeff(&a, &(&j - rat(1, 2)), &one).unwrap().scale(&lam);
            assert_eq!(hi, lo);
        }
    }
}
