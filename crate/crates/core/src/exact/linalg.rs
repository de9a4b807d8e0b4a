//! Dense exact linear algebra over Q or Q(lam).

use std::fmt::Debug;

use num_traits::{One, Zero};

use super::rat::Rat;
use super::scalar::Scalar;

pub trait Field: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
}

impl Field for Rat {
    fn zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn one() -> Self {
        <Rat as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

impl Field for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

/// Reduced row echelon form in place; returns pivot columns.
/// Pivots land on the earliest linearly independent columns.
pub fn rref<F: Field>(m: &mut Vec<Vec<F>>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut piv = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = F::one().div(&m[r][c]);
        for j in c..cols {
            m[r][j] = m[r][j].mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    if !m[r][j].is_zero() {
                        let d = f.mul(&m[r][j]);
                        m[i][j] = m[i][j].sub(&d);
                    }
                }
            }
        }
        piv.push(c);
        r += 1;
    }
    piv
}

pub fn rank<F: Field>(m: &[Vec<F>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// Solves A x = b. Free variables are set to zero, so the solution is
/// supported on the earliest independent columns. None when inconsistent.
pub fn solve<F: Field>(a: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![F::zero(); cols];
    for (i, &c) in piv.iter().enumerate() {
        x[c] = aug[i][cols].clone();
    }
    Some(x)
}

/// Basis of the right kernel {x : A x = 0}.
pub fn kernel<F: Field>(a: &[Vec<F>], cols: usize) -> Vec<Vec<F>> {
    let mut m = a.to_vec();
    let piv = rref(&mut m);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !piv.contains(c)) {
        let mut v = vec![F::zero(); cols];
        v[free] = F::one();
        for (i, &p) in piv.iter().enumerate() {
            v[p] = F::zero().sub(&m[i][free]);
        }
        out.push(v);
    }
    out
}

pub fn mat_vec<F: Field>(a: &[Vec<F>], x: &[F]) -> Vec<F> {
    a.iter()
        .map(|row| row.iter().zip(x).fold(F::zero(), |acc, (p, q)| if p.is_zero() || q.is_zero() { acc } else { acc.add(&p.mul(q)) }))
        .collect()
}

/// Determinant by Gaussian elimination.
pub fn det<F: Field>(m: &[Vec<F>]) -> F {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = F::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return F::zero() };
        if p != c {
            a.swap(p, c);
            d = F::zero().sub(&d);
        }
        d = d.mul(&a[c][c]);
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let f = a[i][c].div(&a[c][c]);
                for j in c..n {
                    let t = f.mul(&a[c][j]);
                    a[i][j] = a[i][j].sub(&t);
                }
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::{rat, ri};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter().map(|r| r.iter().map(|&a| ri(a)).collect()).collect()
    }

    #[test]
    fn greedy_pivots() {
        // column 1 = 2 * column 0, so pivots are 0 and 2
        let mut a = m(&[&[1, 2, 0], &[1, 2, 1]]);
        assert_eq!(rref(&mut a), vec![0, 2]);
        let x = solve(&m(&[&[1, 2, 0], &[1, 2, 1]]), &[ri(3), ri(4)]).unwrap();
        assert_eq!(x, vec![ri(3), ri(0), ri(1)]);
        assert!(solve(&m(&[&[1, 1], &[1, 1]]), &[ri(0), ri(1)]).is_none());
    }

    #[test]
    fn kernels_and_dets() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&a, v).iter().all(|e| Field::is_zero(e)));
        }
        assert_eq!(det(&m(&[&[0, 1], &[1, 0]])), ri(-1));
        assert_eq!(det(&m(&[&[2, 1], &[4, 2]])), ri(0));
        assert_eq!(rank(&m(&[&[1, 0], &[0, 1], &[1, 1]])), 2);
        let s = Scalar::lam(&rat(1, 2));
        let a = vec![vec![s.clone(), Scalar::one()], vec![Scalar::one(), s.clone()]];
        // lam^2 - 1 = -1/2
        assert_eq!(det(&a), Scalar::from_rat(rat(-1, 2)));
    }
}
