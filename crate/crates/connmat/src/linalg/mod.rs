//! Exact matrix arithmetic over the supported coefficient rings.
//!
//! Everything here follows the row convention: a homomorphism acts on row
//! vectors from the right, so a map from a rank-`m` module to a rank-`n`
//! module is an `m x n` matrix and composition is plain matrix product in
//! application order.

mod echelon;
mod smith;

pub use smith::{smith_normal_form, SmithForm};

use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Largest admissible prime-field characteristic. Residues are kept in
/// `u64` and products go through `u128`, so anything below 2^31 is safe
/// with room to spare.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// Coefficient ring: a finite prime field, the rationals, or the integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    PrimeField(u64),
    Rational,
    Integer,
}

impl Ring {
    /// Builds GF(p), validating that `p` is prime and small enough.
    pub fn prime_field(p: u64) -> Result<Ring> {
        if p > MAX_PRIME {
            return Err(Error::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Ring::PrimeField(p))
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, Ring::Integer)
    }

    pub fn name(&self) -> String {
        match self {
            Ring::PrimeField(p) => format!("gf{p}"),
            Ring::Rational => "rational".to_string(),
            Ring::Integer => "integer".to_string(),
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Ring::PrimeField(_) => Scalar::Fp(0),
            Ring::Rational => Scalar::Rat(BigRational::zero()),
            Ring::Integer => Scalar::Int(BigInt::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Ring::PrimeField(_) => Scalar::Fp(1),
            Ring::Rational => Scalar::Rat(BigRational::one()),
            Ring::Integer => Scalar::Int(BigInt::one()),
        }
    }

    /// Canonical scalar from a signed integer (reduced mod p for fields).
    pub fn from_i64(&self, v: i64) -> Scalar {
        self.from_bigint(BigInt::from(v))
    }

    pub fn from_bigint(&self, v: BigInt) -> Scalar {
        match self {
            Ring::PrimeField(p) => {
                let m = BigInt::from(*p);
                let r = v.mod_floor(&m);
                Scalar::Fp(u64::try_from(r).expect("residue fits u64"))
            }
            Ring::Rational => Scalar::Rat(BigRational::from_integer(v)),
            Ring::Integer => Scalar::Int(v),
        }
    }

    pub fn from_residue(&self, v: u64) -> Scalar {
        match self {
            Ring::PrimeField(p) => Scalar::Fp(v % p),
            _ => self.from_bigint(BigInt::from(v)),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Ring::PrimeField(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x + y) % p),
            (Ring::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (Ring::Integer, Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x + y),
            _ => panic!("scalar/ring mismatch in add"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Ring::PrimeField(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            (Ring::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (Ring::Integer, Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x * y),
            _ => panic!("scalar/ring mismatch in mul"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Ring::PrimeField(p), Scalar::Fp(x)) => Scalar::Fp(if *x == 0 { 0 } else { p - x }),
            (Ring::Rational, Scalar::Rat(x)) => Scalar::Rat(-x),
            (Ring::Integer, Scalar::Int(x)) => Scalar::Int(-x),
            _ => panic!("scalar/ring mismatch in neg"),
        }
    }

    /// Multiplicative inverse; `None` for zero and for non-unit integers.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match (self, a) {
            (Ring::PrimeField(p), Scalar::Fp(x)) => {
                if *x == 0 {
                    None
                } else {
                    Some(Scalar::Fp(mod_inverse(*x, *p)))
                }
            }
            (Ring::Rational, Scalar::Rat(x)) => {
                if x.is_zero() {
                    None
                } else {
                    Some(Scalar::Rat(x.recip()))
                }
            }
            (Ring::Integer, Scalar::Int(x)) => {
                if x.abs() == BigInt::one() {
                    Some(Scalar::Int(x.clone()))
                } else {
                    None
                }
            }
            _ => panic!("scalar/ring mismatch in inv"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // extended Euclid on signed 128-bit, p prime and a != 0
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "inverse of non-unit");
    (t.rem_euclid(p as i128)) as u64
}

/// Exact scalar, always kept in canonical form for its ring: residues in
/// `[0, p)` for prime fields, reduced fractions for the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp(u64),
    Int(BigInt),
    Rat(BigRational),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp(x) => *x == 0,
            Scalar::Int(x) => x.is_zero(),
            Scalar::Rat(x) => x.is_zero(),
        }
    }

    pub fn as_int(&self) -> &BigInt {
        match self {
            Scalar::Int(x) => x,
            _ => panic!("expected integer scalar"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp(x) => write!(f, "{x}"),
            Scalar::Int(x) => write!(f, "{x}"),
            Scalar::Rat(x) => {
                if x.is_integer() {
                    write!(f, "{}", x.numer())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
        }
    }
}

/// Dense row-major matrix over one of the supported rings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Matrix {
        let entries = vec![ring.zero(); rows * cols];
        Matrix { ring, rows, cols, entries }
    }

    pub fn identity(ring: Ring, n: usize) -> Matrix {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            let one = m.ring.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn from_rows_i64(ring: Ring, rows: &[&[i64]]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Matrix::zeros(ring, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                let s = m.ring.from_i64(*v);
                m.set(i, j, s);
            }
        }
        m
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    fn check_same_ring(&self, other: &Matrix) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.name(), other.ring.name()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_ring(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "add {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a = self.ring.add(a, b);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Matrix {
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a = self.ring.neg(a);
        }
        out
    }

    pub fn scale(&self, k: &Scalar) -> Matrix {
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a = self.ring.mul(a, k);
        }
        out
    }

    /// Matrix product; with the row convention this is "apply self, then other".
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "mul {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.ring.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).clone();
                    let v = self.ring.add(&cur, &self.ring.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.ring.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Vertical stack: rows of `self` above rows of `other`.
    pub fn stack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_ring(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "stack {} cols with {} cols",
                self.cols, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.ring.clone(), self.rows + other.rows, self.cols);
        out.entries[..self.entries.len()].clone_from_slice(&self.entries);
        out.entries[self.entries.len()..].clone_from_slice(&other.entries);
        Ok(out)
    }

    pub fn row(&self, i: usize) -> Matrix {
        let mut out = Matrix::zeros(self.ring.clone(), 1, self.cols);
        for j in 0..self.cols {
            out.set(0, j, self.get(i, j).clone());
        }
        out
    }

    pub fn take_rows(&self, range: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zeros(self.ring.clone(), range.len(), self.cols);
        for (oi, i) in range.enumerate() {
            for j in 0..self.cols {
                out.set(oi, j, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn take_cols(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.ring.clone(), self.rows, cols.len());
        for i in 0..self.rows {
            for (oj, &j) in cols.iter().enumerate() {
                out.set(i, oj, self.get(i, j).clone());
            }
        }
        out
    }

    /// Writes `block` into `self` with its top-left corner at `(i0, j0)`.
    pub fn paste(&mut self, i0: usize, j0: usize, block: &Matrix) {
        assert!(i0 + block.rows <= self.rows && j0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(i0 + i, j0 + j, block.get(i, j).clone());
            }
        }
    }

    /// Promotes an integer matrix to the rationals (identity on fields).
    pub fn to_rational(&self) -> Matrix {
        match self.ring {
            Ring::Integer => {
                let mut out = Matrix::zeros(Ring::Rational, self.rows, self.cols);
                for i in 0..self.rows {
                    for j in 0..self.cols {
                        let v = BigRational::from_integer(self.get(i, j).as_int().clone());
                        out.set(i, j, Scalar::Rat(v));
                    }
                }
                out
            }
            _ => self.clone(),
        }
    }

    /// Entry-wise reduction of an integer matrix modulo a prime.
    pub fn mod_p(&self, p: u64) -> Result<Matrix> {
        if self.ring != Ring::Integer {
            return Err(Error::NotIntegerRing(self.ring.name()));
        }
        let ring = Ring::prime_field(p)?;
        let mut out = Matrix::zeros(ring.clone(), self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, ring.from_bigint(self.get(i, j).as_int().clone()));
            }
        }
        Ok(out)
    }

    /// Rank over the fraction field of the ring.
    pub fn rank(&self) -> usize {
        if self.ring.is_field() {
            echelon::rref(self).pivots.len()
        } else {
            echelon::rref(&self.to_rational()).pivots.len()
        }
    }

    /// Canonical basis of the left kernel `{x : x self = 0}`, one row per
    /// basis vector. Fields only; use Smith normal form over the integers.
    pub fn kernel_basis(&self) -> Result<Matrix> {
        if !self.ring.is_field() {
            return Err(Error::NotAField(self.ring.name()));
        }
        Ok(echelon::kernel(self))
    }

    /// Left kernel over any supported ring. Over the integers the rows form
    /// a basis of the kernel lattice in Hermite normal form.
    pub fn left_kernel_any(&self) -> Matrix {
        if self.ring.is_field() {
            echelon::kernel(self)
        } else {
            smith::int_left_kernel(self)
        }
    }

    /// Solves `X * self = rhs` row by row; `None` when some row has no
    /// solution over the ring (exact integer solvability over Z).
    pub fn solve_left(&self, rhs: &Matrix) -> Result<Option<Matrix>> {
        self.check_same_ring(rhs)?;
        if self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "solve {} cols vs rhs {} cols",
                self.cols, rhs.cols
            )));
        }
        if self.ring.is_field() {
            Ok(echelon::solve_left(self, rhs))
        } else {
            Ok(smith::int_solve_left(self, rhs))
        }
    }

    /// Determinant of a square matrix, computed exactly.
    pub fn determinant(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "determinant of {}x{}",
                self.rows, self.cols
            )));
        }
        let work = if self.ring.is_field() { self.clone() } else { self.to_rational() };
        let det = echelon::det(&work);
        Ok(match self.ring {
            Ring::Integer => {
                let Scalar::Rat(r) = det else { unreachable!() };
                debug_assert!(r.is_integer());
                Scalar::Int(r.to_integer())
            }
            _ => det,
        })
    }

    /// Inverse of a square matrix when it exists over the ring
    /// (over Z this requires determinant +-1).
    pub fn inverse(&self) -> Result<Option<Matrix>> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "inverse of {}x{}",
                self.rows, self.cols
            )));
        }
        self.solve_left(&Matrix::identity(self.ring.clone(), self.rows))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> Ring {
        Ring::prime_field(p).unwrap()
    }

    #[test]
    fn prime_validation() {
        assert!(Ring::prime_field(2).is_ok());
        assert!(Ring::prime_field(97).is_ok());
        assert!(matches!(Ring::prime_field(1), Err(Error::NotPrime(1))));
        assert!(matches!(Ring::prime_field(6), Err(Error::NotPrime(6))));
    }

    #[test]
    fn rank_examples() {
        let z = Matrix::zeros(gf(2), 2, 3);
        assert_eq!(z.rank(), 0);
        let id = Matrix::identity(Ring::Rational, 4);
        assert_eq!(id.rank(), 4);
        let m = Matrix::from_rows_i64(gf(2), &[&[1, 1], &[1, 1]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        let m = Matrix::from_rows_i64(gf(2), &[&[1, 1]]);
        assert_eq!(m.kernel_basis().unwrap().rows(), 0);

        let z = Matrix::zeros(gf(3), 2, 2);
        assert_eq!(z.kernel_basis().unwrap(), Matrix::identity(gf(3), 2));

        let m = Matrix::from_rows_i64(Ring::Rational, &[&[1], &[1]]);
        let k = m.kernel_basis().unwrap();
        assert_eq!(k, Matrix::from_rows_i64(Ring::Rational, &[&[1, -1]]));

        let m = Matrix::from_rows_i64(Ring::Integer, &[&[2]]);
        assert!(matches!(m.kernel_basis(), Err(Error::NotAField(_))));
    }

    #[test]
    fn arithmetic_identities() {
        let m = Matrix::from_rows_i64(gf(5), &[&[1, 2], &[3, 4], &[0, 2]]);
        let id = Matrix::identity(gf(5), 3);
        assert_eq!(id.mul(&m).unwrap(), m);
        assert!(m.add(&m.neg()).unwrap().is_zero());
    }

    #[test]
    fn solve_left_field() {
        let a = Matrix::from_rows_i64(gf(5), &[&[1, 2, 0], &[0, 1, 1]]);
        let x = Matrix::from_rows_i64(gf(5), &[&[2, 3]]);
        let b = x.mul(&a).unwrap();
        let got = a.solve_left(&b).unwrap().unwrap();
        assert_eq!(got.mul(&a).unwrap(), b);
        // unsolvable: target outside the row space
        let bad = Matrix::from_rows_i64(gf(5), &[&[0, 0, 1]]);
        let a2 = Matrix::from_rows_i64(gf(5), &[&[1, 0, 0]]);
        assert!(a2.solve_left(&bad).unwrap().is_none());
    }

    #[test]
    fn solve_left_integer() {
        let a = Matrix::from_rows_i64(Ring::Integer, &[&[2, 0], &[0, 3]]);
        let b = Matrix::from_rows_i64(Ring::Integer, &[&[4, 3]]);
        let x = a.solve_left(&b).unwrap().unwrap();
        assert_eq!(x, Matrix::from_rows_i64(Ring::Integer, &[&[2, 1]]));
        // 1 is not an integer multiple of 2
        let b2 = Matrix::from_rows_i64(Ring::Integer, &[&[1, 0]]);
        assert!(a.solve_left(&b2).unwrap().is_none());
    }

    #[test]
    fn inverse_over_rings() {
        let u = Matrix::from_rows_i64(Ring::Integer, &[&[1, 1], &[0, 1]]);
        let inv = u.inverse().unwrap().unwrap();
        assert_eq!(u.mul(&inv).unwrap(), Matrix::identity(Ring::Integer, 2));
        let not_unit = Matrix::from_rows_i64(Ring::Integer, &[&[2]]);
        assert!(not_unit.inverse().unwrap().is_none());
    }

    #[test]
    fn determinant_examples() {
        let m = Matrix::from_rows_i64(Ring::Integer, &[&[2, 4], &[6, 10]]);
        assert_eq!(m.determinant().unwrap(), Scalar::Int(BigInt::from(-4)));
        let m = Matrix::from_rows_i64(gf(7), &[&[1, 2], &[3, 4]]);
        // 1*4 - 2*3 = -2 = 5 mod 7
        assert_eq!(m.determinant().unwrap(), Scalar::Fp(5));
    }

    #[test]
    fn transpose_product_identity() {
        let a = Matrix::from_rows_i64(gf(3), &[&[1, 2], &[0, 1], &[2, 2]]);
        let b = Matrix::from_rows_i64(gf(3), &[&[2, 1, 0], &[1, 1, 2]]);
        let lhs = a.mul(&b).unwrap().transpose();
        let rhs = b.transpose().mul(&a.transpose()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
