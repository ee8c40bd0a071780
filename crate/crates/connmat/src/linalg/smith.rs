//! Smith normal form over the integers with tracked unimodular transforms,
//! plus the kernel/solve routines built on it.
//!
//! The classical pivot-and-reduce algorithm is used with minimal
//! absolute-value pivot selection to limit coefficient growth; instance
//! matrices here are tiny, so no modular techniques are needed.

use super::{Matrix, Ring, Scalar};
use crate::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

/// `u * m * v = s` with `u`, `v` unimodular, `s` diagonal and the diagonal
/// entries forming a divisibility chain.
pub struct SmithForm {
    pub u: Matrix,
    pub uinv: Matrix,
    pub s: Matrix,
    pub v: Matrix,
    pub vinv: Matrix,
    /// Nonzero diagonal entries `d_1 | d_2 | ...`, all positive.
    pub invariant_factors: Vec<BigUint>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

struct Calc {
    s: Matrix,
    u: Matrix,
    uinv: Matrix,
    v: Matrix,
    vinv: Matrix,
}

impl Calc {
    fn at(&self, i: usize, j: usize) -> &BigInt {
        self.s.get(i, j).as_int()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        swap_rows_of(&mut self.s, a, b);
        swap_rows_of(&mut self.u, a, b);
        swap_cols_of(&mut self.uinv, a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        swap_cols_of(&mut self.s, a, b);
        swap_cols_of(&mut self.v, a, b);
        swap_rows_of(&mut self.vinv, a, b);
    }

    /// row a += k * row b
    fn row_add(&mut self, a: usize, b: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        row_add_of(&mut self.s, a, b, k);
        row_add_of(&mut self.u, a, b, k);
        // uinv <- uinv * (I - k e_{ab}): col b -= k * col a
        col_add_of(&mut self.uinv, b, a, &-k);
    }

    /// col a += k * col b
    fn col_add(&mut self, a: usize, b: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        col_add_of(&mut self.s, a, b, k);
        col_add_of(&mut self.v, a, b, k);
        // vinv <- (I - k e_{ba}) * vinv: row b -= k * row a
        row_add_of(&mut self.vinv, b, a, &-k);
    }

    fn negate_row(&mut self, i: usize) {
        negate_row_of(&mut self.s, i);
        negate_row_of(&mut self.u, i);
        negate_col_of(&mut self.uinv, i);
    }
}

fn swap_rows_of(m: &mut Matrix, a: usize, b: usize) {
    for j in 0..m.cols() {
        let x = m.get(a, j).clone();
        let y = m.get(b, j).clone();
        m.set(a, j, y);
        m.set(b, j, x);
    }
}

fn swap_cols_of(m: &mut Matrix, a: usize, b: usize) {
    for i in 0..m.rows() {
        let x = m.get(i, a).clone();
        let y = m.get(i, b).clone();
        m.set(i, a, y);
        m.set(i, b, x);
    }
}

fn row_add_of(m: &mut Matrix, a: usize, b: usize, k: &BigInt) {
    for j in 0..m.cols() {
        let v = m.get(a, j).as_int() + k * m.get(b, j).as_int();
        m.set(a, j, Scalar::Int(v));
    }
}

fn col_add_of(m: &mut Matrix, a: usize, b: usize, k: &BigInt) {
    for i in 0..m.rows() {
        let v = m.get(i, a).as_int() + k * m.get(i, b).as_int();
        m.set(i, a, Scalar::Int(v));
    }
}

fn negate_row_of(m: &mut Matrix, i: usize) {
    for j in 0..m.cols() {
        let v = -m.get(i, j).as_int();
        m.set(i, j, Scalar::Int(v));
    }
}

fn negate_col_of(m: &mut Matrix, j: usize) {
    for i in 0..m.rows() {
        let v = -m.get(i, j).as_int();
        m.set(i, j, Scalar::Int(v));
    }
}

pub fn smith_normal_form(m: &Matrix) -> Result<SmithForm> {
    if *m.ring() != Ring::Integer {
        return Err(Error::NotIntegerRing(m.ring().name()));
    }
    let (rows, cols) = (m.rows(), m.cols());
    let mut c = Calc {
        s: m.clone(),
        u: Matrix::identity(Ring::Integer, rows),
        uinv: Matrix::identity(Ring::Integer, rows),
        v: Matrix::identity(Ring::Integer, cols),
        vinv: Matrix::identity(Ring::Integer, cols),
    };

    let mut t = 0usize;
    while t < rows.min(cols) {
        // pivot: minimal absolute value among nonzero entries of s[t.., t..]
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if c.at(i, j).is_zero() {
                    continue;
                }
                let better = match pivot {
                    None => true,
                    Some((pi, pj)) => c.at(i, j).abs() < c.at(pi, pj).abs(),
                };
                if better {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        c.swap_rows(t, pi);
        c.swap_cols(t, pj);

        'pivot: loop {
            // clear column t, Euclid-stepping remainders into the pivot slot
            loop {
                for i in t + 1..rows {
                    while !c.at(i, t).is_zero() {
                        let q = c.at(i, t) / c.at(t, t);
                        c.row_add(i, t, &-q);
                        if !c.at(i, t).is_zero() {
                            c.swap_rows(i, t);
                        }
                    }
                }
                for j in t + 1..cols {
                    while !c.at(t, j).is_zero() {
                        let q = c.at(t, j) / c.at(t, t);
                        c.col_add(j, t, &-q);
                        if !c.at(t, j).is_zero() {
                            c.swap_cols(j, t);
                        }
                    }
                }
                // column swaps can repopulate column t
                if (t + 1..rows).all(|i| c.at(i, t).is_zero()) {
                    break;
                }
            }
            // divisibility sweep: pivot must divide the remaining block
            let p = c.at(t, t).clone();
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(c.at(i, j) % &p).is_zero());
            match offender {
                Some((i, _)) => {
                    c.row_add(t, i, &BigInt::one());
                    continue 'pivot;
                }
                None => break 'pivot,
            }
        }
        if c.at(t, t).is_negative() {
            c.negate_row(t);
        }
        t += 1;
    }

    let mut invariant_factors = Vec::new();
    for k in 0..rows.min(cols) {
        let d = c.at(k, k);
        if d.is_zero() {
            break;
        }
        invariant_factors.push(d.to_biguint().expect("positive diagonal"));
    }
    Ok(SmithForm {
        u: c.u,
        uinv: c.uinv,
        s: c.s,
        v: c.v,
        vinv: c.vinv,
        invariant_factors,
    })
}

/// Basis of the left kernel lattice `{x : x m = 0}` of an integer matrix,
/// canonicalized to row-style Hermite normal form.
pub fn int_left_kernel(m: &Matrix) -> Matrix {
    let snf = smith_normal_form(m).expect("integer matrix");
    let raw = snf.u.take_rows(snf.rank()..m.rows());
    hnf_rows(&raw)
}

/// Row-style Hermite normal form of the lattice spanned by the rows:
/// positive pivots with strictly increasing pivot columns, entries above
/// each pivot reduced into `[0, pivot)`, zero rows dropped.
pub fn hnf_rows(m: &Matrix) -> Matrix {
    let mut w = m.clone();
    let rows = w.rows();
    let mut r = 0usize;
    for col in 0..w.cols() {
        if r == rows {
            break;
        }
        loop {
            let nz: Vec<usize> =
                (r..rows).filter(|&i| !w.get(i, col).as_int().is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            if nz.len() == 1 {
                let i0 = nz[0];
                swap_rows_of(&mut w, r, i0);
                if w.get(r, col).as_int().is_negative() {
                    negate_row_of(&mut w, r);
                }
                let p = w.get(r, col).as_int().clone();
                for i in 0..r {
                    let q = floor_div(w.get(i, col).as_int(), &p);
                    row_add_of(&mut w, i, r, &-q);
                }
                r += 1;
                break;
            }
            // reduce all entries in the column against the smallest
            let i0 = *nz
                .iter()
                .min_by_key(|&&i| w.get(i, col).as_int().abs())
                .expect("nonempty");
            for &i in &nz {
                if i == i0 {
                    continue;
                }
                let q = w.get(i, col).as_int() / w.get(i0, col).as_int();
                row_add_of(&mut w, i, i0, &-q);
            }
        }
    }
    w.take_rows(0..r)
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    a.div_floor(b)
}

/// Solves `X * a = rhs` over the integers (exact divisibility required).
pub fn int_solve_left(a: &Matrix, rhs: &Matrix) -> Option<Matrix> {
    let snf = smith_normal_form(a).expect("integer matrix");
    let r = snf.rank();
    let c = rhs.mul(&snf.v).expect("dims");
    // y s = c with y zero on the free tail, then x = y u
    let mut y = Matrix::zeros(Ring::Integer, rhs.rows(), a.rows());
    for i in 0..rhs.rows() {
        for j in 0..a.cols() {
            let cij = c.get(i, j).as_int();
            if j < r {
                let d = snf.s.get(j, j).as_int();
                let (q, rem) = num_integer::Integer::div_rem(cij, d);
                if !rem.is_zero() {
                    return None;
                }
                y.set(i, j, Scalar::Int(q));
            } else if !cij.is_zero() {
                return None;
            }
        }
    }
    Some(y.mul(&snf.u).expect("dims"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows_i64(Ring::Integer, rows)
    }

    fn factors(m: &Matrix) -> Vec<u64> {
        smith_normal_form(m)
            .unwrap()
            .invariant_factors
            .iter()
            .map(|d| u64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn snf_examples() {
        assert_eq!(factors(&int(&[&[2]])), vec![2]);
        assert_eq!(factors(&int(&[&[2, 4], &[6, 10]])), vec![2, 2]);
        assert_eq!(factors(&Matrix::zeros(Ring::Integer, 3, 2)), Vec::<u64>::new());
    }

    #[test]
    fn snf_transform_consistency() {
        let m = int(&[&[4, -2, 1], &[6, 0, -3]]);
        let snf = smith_normal_form(&m).unwrap();
        let lhs = snf.u.mul(&m).unwrap().mul(&snf.v).unwrap();
        assert_eq!(lhs, snf.s);
        let id_r = Matrix::identity(Ring::Integer, m.rows());
        let id_c = Matrix::identity(Ring::Integer, m.cols());
        assert_eq!(snf.u.mul(&snf.uinv).unwrap(), id_r);
        assert_eq!(snf.v.mul(&snf.vinv).unwrap(), id_c);
    }

    #[test]
    fn snf_divisibility_chain() {
        let m = int(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 10]]);
        let f = factors(&m);
        assert_eq!(f, vec![1, 2, 30]);
        for w in f.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
    }

    #[test]
    fn kernel_lattice() {
        // x (2, 4) = 0 over Z^1... use a rank-1 2x2 matrix instead
        let m = int(&[&[1, 2], &[2, 4]]);
        let k = int_left_kernel(&m);
        assert_eq!(k.rows(), 1);
        assert!(k.mul(&m).unwrap().is_zero());
        // rows (2,-1) and (4,-2): x1 = -2 x2, so the kernel is spanned by
        // (-2, 1), which HNF normalizes to (2, -1)
        let m = int(&[&[2, -1], &[4, -2]]);
        let k = int_left_kernel(&m);
        assert_eq!(k, int(&[&[2, -1]]));
    }

    #[test]
    fn hnf_is_canonical() {
        let a = int(&[&[2, 1], &[0, 3]]);
        let b = int(&[&[2, 4], &[2, 1]]);
        // same lattice: rows of b = {r1 + r2... } check via mutual containment first
        assert_eq!(hnf_rows(&a), hnf_rows(&b));
    }

    #[test]
    fn solve_examples() {
        let a = int(&[&[2, 4], &[6, 10]]);
        let x = int(&[&[1, 1]]);
        let b = x.mul(&a).unwrap();
        let got = int_solve_left(&a, &b).unwrap();
        assert_eq!(got.mul(&a).unwrap(), b);
    }
}
