//! Gaussian elimination over fields with a fixed, deterministic pivot rule:
//! leftmost pivot column, topmost nonzero row, pivots normalized to 1.

use super::{Matrix, Scalar};

pub struct Rref {
    /// Reduced row echelon form of the input.
    pub e: Matrix,
    /// Accumulated row transform with `u * input = e`.
    pub u: Matrix,
    /// (row, col) of each pivot, in order.
    pub pivots: Vec<(usize, usize)>,
}

pub fn rref(m: &Matrix) -> Rref {
    debug_assert!(m.ring().is_field());
    let ring = m.ring().clone();
    let mut e = m.clone();
    let mut u = Matrix::identity(ring.clone(), m.rows());
    let mut pivots = Vec::new();
    let mut pr = 0usize;
    for col in 0..m.cols() {
        if pr == m.rows() {
            break;
        }
        let Some(piv) = (pr..m.rows()).find(|&i| !e.get(i, col).is_zero()) else {
            continue;
        };
        swap_rows(&mut e, pr, piv);
        swap_rows(&mut u, pr, piv);
        let inv = ring.inv(e.get(pr, col)).expect("nonzero pivot");
        scale_row(&mut e, pr, &inv);
        scale_row(&mut u, pr, &inv);
        for i in 0..m.rows() {
            if i == pr || e.get(i, col).is_zero() {
                continue;
            }
            let f = e.get(i, col).clone();
            row_sub(&mut e, i, pr, &f);
            row_sub(&mut u, i, pr, &f);
        }
        pivots.push((pr, col));
        pr += 1;
    }
    Rref { e, u, pivots }
}

fn swap_rows(m: &mut Matrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols() {
        let x = m.get(a, j).clone();
        let y = m.get(b, j).clone();
        m.set(a, j, y);
        m.set(b, j, x);
    }
}

fn scale_row(m: &mut Matrix, i: usize, k: &Scalar) {
    let ring = m.ring().clone();
    for j in 0..m.cols() {
        let v = ring.mul(m.get(i, j), k);
        m.set(i, j, v);
    }
}

/// row a -= k * row b
fn row_sub(m: &mut Matrix, a: usize, b: usize, k: &Scalar) {
    let ring = m.ring().clone();
    for j in 0..m.cols() {
        let v = ring.sub(m.get(a, j), &ring.mul(k, m.get(b, j)));
        m.set(a, j, v);
    }
}

/// Canonical (RREF) basis of the left kernel.
pub fn kernel(m: &Matrix) -> Matrix {
    let r = rref(m);
    let raw = r.u.take_rows(r.pivots.len()..m.rows());
    // the rows are independent, so a second reduction only canonicalizes
    rref(&raw).e
}

/// Solves `X * a = rhs` row-wise; `None` if any row lies outside the row
/// space of `a`.
pub fn solve_left(a: &Matrix, rhs: &Matrix) -> Option<Matrix> {
    let ring = a.ring().clone();
    let r = rref(a);
    let mut out = Matrix::zeros(ring.clone(), rhs.rows(), a.rows());
    for i in 0..rhs.rows() {
        let mut resid = rhs.row(i);
        let mut x = Matrix::zeros(ring.clone(), 1, a.rows());
        for &(pr, pc) in &r.pivots {
            let f = resid.get(0, pc).clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..resid.cols() {
                let v = ring.sub(resid.get(0, j), &ring.mul(&f, r.e.get(pr, j)));
                resid.set(0, j, v);
            }
            for j in 0..a.rows() {
                let v = ring.add(x.get(0, j), &ring.mul(&f, r.u.get(pr, j)));
                x.set(0, j, v);
            }
        }
        if !resid.is_zero() {
            return None;
        }
        out.paste(i, 0, &x);
    }
    Some(out)
}

/// Determinant by forward elimination without pivot normalization.
pub fn det(m: &Matrix) -> Scalar {
    debug_assert!(m.ring().is_field());
    debug_assert_eq!(m.rows(), m.cols());
    let ring = m.ring().clone();
    let n = m.rows();
    let mut w = m.clone();
    let mut acc = ring.one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&i| !w.get(i, col).is_zero()) else {
            return ring.zero();
        };
        if piv != col {
            swap_rows(&mut w, col, piv);
            acc = ring.neg(&acc);
        }
        let d = w.get(col, col).clone();
        acc = ring.mul(&acc, &d);
        let inv = ring.inv(&d).expect("nonzero pivot");
        for i in col + 1..n {
            if w.get(i, col).is_zero() {
                continue;
            }
            let f = ring.mul(w.get(i, col), &inv);
            row_sub(&mut w, i, col, &f);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Ring;

    #[test]
    fn rref_transform_consistency() {
        let ring = Ring::prime_field(5).unwrap();
        let m = Matrix::from_rows_i64(ring, &[&[2, 4, 1], &[1, 2, 3], &[3, 6, 4]]);
        let r = rref(&m);
        assert_eq!(r.u.mul(&m).unwrap(), r.e);
        assert_eq!(r.pivots.len(), 2);
    }

    #[test]
    fn kernel_is_annihilating() {
        let ring = Ring::prime_field(3).unwrap();
        let m = Matrix::from_rows_i64(ring, &[&[1, 2], &[2, 1], &[0, 0]]);
        let k = kernel(&m);
        assert!(k.mul(&m).unwrap().is_zero());
        assert_eq!(k.rows() + m.rank(), m.rows());
    }
}
