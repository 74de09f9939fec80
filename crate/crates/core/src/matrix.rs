//! Dense exact linear algebra over a field, used with both `Rational`
//! and `Cyclotomic` entries. Sizes here are desk scale (n <= a few
//! hundred), so plain Gaussian elimination is ample.

use crate::cyclo::{Cyclotomic, Rational};
use num_traits::{One, Zero};

pub trait FieldElem: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
}

impl FieldElem for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as One>::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if <Rational as Zero>::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn is_zero(&self) -> bool {
        <Rational as Zero>::is_zero(self)
    }
}

impl FieldElem for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::zero()
    }
    fn one() -> Self {
        Cyclotomic::one()
    }
    fn add(&self, other: &Self) -> Self {
        Cyclotomic::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Cyclotomic::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Cyclotomic::mul(self, other)
    }
    fn neg(&self) -> Self {
        Cyclotomic::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        Cyclotomic::inverse(self).ok()
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
}

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>, // row major
}

impl<T: FieldElem> Matrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn diagonal(diag: &[T]) -> Self {
        let n = diag.len();
        let mut m = Self::zero(n, n);
        for (i, d) in diag.iter().enumerate() {
            *m.at_mut(i, i) = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut T {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |r, c| self.at(r, c).add(other.at(r, c)))
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |r, c| self.at(r, c).sub(other.at(r, c)))
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| self.at(r, c).mul(s))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Self::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue; // inputs here are often sparse
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let t = a.mul(b);
                    *out.at_mut(r, c) = out.at(r, c).add(&t);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = T::zero();
                for c in 0..self.cols {
                    if !self.at(r, c).is_zero() && !v[c].is_zero() {
                        acc = acc.add(&self.at(r, c).mul(&v[c]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn kronecker(&self, other: &Self) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |r, c| {
            let (r1, r2) = (r / other.rows, r % other.rows);
            let (c1, c2) = (c / other.cols, c % other.cols);
            self.at(r1, c1).mul(other.at(r2, c2))
        })
    }

    pub fn pow(&self, e: u64) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// In-place reduction to reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead = 0;
        for col in 0..self.cols {
            if lead >= self.rows {
                break;
            }
            let Some(sel) = (lead..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            if sel != lead {
                for c in 0..self.cols {
                    self.data.swap(lead * self.cols + c, sel * self.cols + c);
                }
            }
            let inv = self.at(lead, col).inv().expect("nonzero pivot");
            for c in col..self.cols {
                *self.at_mut(lead, c) = self.at(lead, c).mul(&inv);
            }
            for r in 0..self.rows {
                if r != lead && !self.at(r, col).is_zero() {
                    let f = self.at(r, col).clone();
                    for c in col..self.cols {
                        let t = f.mul(self.at(lead, c));
                        *self.at_mut(r, c) = self.at(r, c).sub(&t);
                    }
                }
            }
            pivots.push(col);
            lead += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    pub fn det(&self) -> T {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = T::one();
        for col in 0..n {
            let Some(sel) = (col..n).find(|&r| !m.at(r, col).is_zero()) else {
                return T::zero();
            };
            if sel != col {
                for c in 0..n {
                    m.data.swap(col * n + c, sel * n + c);
                }
                det = det.neg();
            }
            let pivot = m.at(col, col).clone();
            det = det.mul(&pivot);
            let inv = pivot.inv().expect("nonzero pivot");
            for r in col + 1..n {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let f = m.at(r, col).mul(&inv);
                for c in col..n {
                    let t = f.mul(m.at(col, c));
                    *m.at_mut(r, c) = m.at(r, c).sub(&t);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Self::zero(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                *aug.at_mut(r, c) = self.at(r, c).clone();
            }
            *aug.at_mut(r, n + r) = T::one();
        }
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(Self::from_fn(n, n, |r, c| aug.at(r, n + c).clone()))
    }

    /// Canonical basis of the right nullspace (from the RREF), one basis
    /// vector per free column, unit entry at its free column.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = Some(i);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut vec = vec![T::zero(); self.cols];
            vec[free] = T::one();
            for (&p, i) in pivots.iter().zip(0..) {
                vec[p] = m.at(i, free).neg();
            }
            basis.push(vec);
        }
        basis
    }

    pub fn map<U: FieldElem>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix::from_fn(self.rows, self.cols, |r, c| f(self.at(r, c)))
    }
}

impl Matrix<Cyclotomic> {
    /// True iff the matrix is a 0/1 permutation matrix.
    pub fn is_permutation(&self) -> Option<Vec<usize>> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut perm = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        for r in 0..n {
            let mut hit = None;
            for c in 0..n {
                let v = self.at(r, c);
                if v.is_zero() {
                    continue;
                }
                if !v.is_one() || hit.is_some() {
                    return None;
                }
                hit = Some(c);
            }
            let c = hit?;
            if seen[c] {
                return None;
            }
            seen[c] = true;
            perm[r] = c;
        }
        Some(perm)
    }
}

impl<T: FieldElem + std::fmt::Debug> std::fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::rat_int;

    fn qm(rows: Vec<Vec<i64>>) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(rat_int).collect())
                .collect(),
        )
    }

    #[test]
    fn det_and_inverse() {
        let m = qm(vec![vec![2, 1], vec![1, 1]]);
        assert_eq!(m.det(), rat_int(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));

        let s = qm(vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(s.det(), rat_int(0));
        assert!(s.inverse().is_none());
    }

    #[test]
    fn nullspace_structure() {
        // x + y + z = 0, y - z = 0  =>  1-dim nullspace spanned by (-2, 1, 1).
        let m = qm(vec![vec![1, 1, 1], vec![0, 1, -1]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        for r in 0..m.rows() {
            let mut acc = <Rational as num_traits::Zero>::zero();
            for c in 0..m.cols() {
                acc += m.at(r, c) * &v[c];
            }
            assert!(num_traits::Zero::is_zero(&acc));
        }
        // Free column is the last one, normalized to 1.
        assert_eq!(v[2], rat_int(1));
    }

    #[test]
    fn kronecker_dimensions_and_values() {
        let a = qm(vec![vec![1, 2], vec![3, 4]]);
        let b = qm(vec![vec![0, 1], vec![1, 0]]);
        let k = a.kronecker(&b);
        assert_eq!((k.rows(), k.cols()), (4, 4));
        assert_eq!(*k.at(0, 1), rat_int(1));
        assert_eq!(*k.at(0, 3), rat_int(2));
        assert_eq!(*k.at(3, 0), rat_int(3));
        assert_eq!(*k.at(2, 1), rat_int(3));
    }

    #[test]
    fn cyclotomic_matrix_inverse() {
        let z = Cyclotomic::zeta(5);
        let m = Matrix::from_rows(vec![
            vec![Cyclotomic::one(), z.clone()],
            vec![z.clone(), Cyclotomic::one()],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
    }

    #[test]
    fn permutation_detection() {
        let p = Matrix::from_rows(vec![
            vec![Cyclotomic::zero(), Cyclotomic::one()],
            vec![Cyclotomic::one(), Cyclotomic::zero()],
        ]);
        assert_eq!(p.is_permutation(), Some(vec![1, 0]));
        let np = Matrix::from_rows(vec![
            vec![Cyclotomic::from_integer(2), Cyclotomic::zero()],
            vec![Cyclotomic::zero(), Cyclotomic::one()],
        ]);
        assert_eq!(np.is_permutation(), None);
    }
}
