//! Exact vectors and matrices over Q(sqrt3), dimension 2 or 3.
//!
//! One parametric implementation serves both the planar (rank-2) lemmas and
//! the spatial code. Row-vector convention throughout: points are rows and
//! maps act on the right, `p * M`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::surd::{surd_int, Surd};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector<const N: usize>(pub [Surd; N]);

pub type Vec2 = Vector<2>;
pub type Vec3 = Vector<3>;

pub fn v3(x: Surd, y: Surd, z: Surd) -> Vec3 {
    Vector([x, y, z])
}

pub fn v2(x: Surd, y: Surd) -> Vec2 {
    Vector([x, y])
}

/// Integer-coordinate 3-vector.
pub fn v3i(x: i128, y: i128, z: i128) -> Vec3 {
    v3(surd_int(x), surd_int(y), surd_int(z))
}

pub fn v2i(x: i128, y: i128) -> Vec2 {
    v2(surd_int(x), surd_int(y))
}

impl<const N: usize> Vector<N> {
    pub const fn zero() -> Self {
        Vector([Surd::ZERO; N])
    }

    pub fn unit(i: usize) -> Self {
        let mut v = Self::zero();
        v.0[i] = Surd::ONE;
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Surd::is_zero)
    }

    pub fn dot(&self, o: &Self) -> Surd {
        let mut acc = Surd::ZERO;
        for i in 0..N {
            acc = acc + self.0[i] * o.0[i];
        }
        acc
    }

    pub fn norm2(&self) -> Surd {
        self.dot(self)
    }

    pub fn scale(&self, s: Surd) -> Self {
        Vector(self.0.map(|x| x * s))
    }

    pub fn to_f64(&self) -> [f64; N] {
        self.0.map(|x| x.to_f64())
    }
}

impl Vec3 {
    pub fn cross(&self, o: &Vec3) -> Vec3 {
        let a = &self.0;
        let b = &o.0;
        v3(
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        )
    }

    pub fn xy(&self) -> Vec2 {
        v2(self.0[0], self.0[1])
    }
}

impl Vec2 {
    pub fn with_z(&self, z: Surd) -> Vec3 {
        v3(self.0[0], self.0[1], z)
    }
}

impl<const N: usize> Add for Vector<N> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut r = self;
        for i in 0..N {
            r.0[i] = r.0[i] + o.0[i];
        }
        r
    }
}

impl<const N: usize> Sub for Vector<N> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let mut r = self;
        for i in 0..N {
            r.0[i] = r.0[i] - o.0[i];
        }
        r
    }
}

impl<const N: usize> Neg for Vector<N> {
    type Output = Self;
    fn neg(self) -> Self {
        Vector(self.0.map(|x| -x))
    }
}

impl<const N: usize> Index<usize> for Vector<N> {
    type Output = Surd;
    fn index(&self, i: usize) -> &Surd {
        &self.0[i]
    }
}

impl<const N: usize> IndexMut<usize> for Vector<N> {
    fn index_mut(&mut self, i: usize) -> &mut Surd {
        &mut self.0[i]
    }
}

impl<const N: usize> fmt::Debug for Vector<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Square matrix, `rows[i]` is the image layout for row-vector action:
/// `(p * M)[j] = sum_i p[i] * rows[i][j]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix<const N: usize> {
    pub rows: [Vector<N>; N],
}

pub type Mat2 = Matrix<2>;
pub type Mat3 = Matrix<3>;

impl<const N: usize> Matrix<N> {
    pub fn from_rows(rows: [Vector<N>; N]) -> Self {
        Matrix { rows }
    }

    pub fn identity() -> Self {
        let mut rows = [Vector::zero(); N];
        for (i, row) in rows.iter_mut().enumerate() {
            row.0[i] = Surd::ONE;
        }
        Matrix { rows }
    }

    pub fn diagonal(d: [Surd; N]) -> Self {
        let mut rows = [Vector::zero(); N];
        for (i, row) in rows.iter_mut().enumerate() {
            row.0[i] = d[i];
        }
        Matrix { rows }
    }

    pub fn scalar(s: Surd) -> Self {
        Self::diagonal([s; N])
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn transpose(&self) -> Self {
        let mut r = *self;
        for i in 0..N {
            for j in 0..N {
                r.rows[i].0[j] = self.rows[j].0[i];
            }
        }
        r
    }

    pub fn trace(&self) -> Surd {
        let mut acc = Surd::ZERO;
        for i in 0..N {
            acc = acc + self.rows[i].0[i];
        }
        acc
    }

    pub fn neg(&self) -> Self {
        Matrix {
            rows: self.rows.map(|r| -r),
        }
    }

    /// `M^T M = I`, checked exactly.
    pub fn is_orthogonal(&self) -> bool {
        (self.transpose() * *self).is_identity()
    }

    pub fn det(&self) -> Surd {
        match N {
            1 => self.rows[0].0[0],
            2 => self.rows[0].0[0] * self.rows[1].0[1] - self.rows[0].0[1] * self.rows[1].0[0],
            3 => {
                let m = |i: usize, j: usize| self.rows[i].0[j];
                m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
                    - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                    + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
            }
            _ => unreachable!("only dimensions 2 and 3 are used"),
        }
    }

    /// Exact inverse via the adjugate. Panics on singular input.
    pub fn inverse(&self) -> Self {
        let d = self.det();
        assert!(!d.is_zero(), "singular matrix");
        let m = |i: usize, j: usize| self.rows[i].0[j];
        match N {
            2 => {
                let mut r = Self::identity();
                r.rows[0].0[0] = m(1, 1) / d;
                r.rows[0].0[1] = -m(0, 1) / d;
                r.rows[1].0[0] = -m(1, 0) / d;
                r.rows[1].0[1] = m(0, 0) / d;
                r
            }
            3 => {
                let cof = |i: usize, j: usize| {
                    let (a, b) = match i {
                        0 => (1, 2),
                        1 => (0, 2),
                        _ => (0, 1),
                    };
                    let (c, e) = match j {
                        0 => (1, 2),
                        1 => (0, 2),
                        _ => (0, 1),
                    };
                    let minor = m(a, c) * m(b, e) - m(a, e) * m(b, c);
                    if (i + j) % 2 == 0 {
                        minor
                    } else {
                        -minor
                    }
                };
                let mut r = Self::identity();
                for i in 0..3 {
                    for j in 0..3 {
                        // adjugate: transposed cofactors
                        r.rows[i].0[j] = cof(j, i) / d;
                    }
                }
                r
            }
            _ => unreachable!(),
        }
    }
}

impl<const N: usize> Mul<Matrix<N>> for Vector<N> {
    type Output = Vector<N>;
    fn mul(self, m: Matrix<N>) -> Vector<N> {
        let mut r = Vector::zero();
        for i in 0..N {
            for j in 0..N {
                r.0[j] = r.0[j] + self.0[i] * m.rows[i].0[j];
            }
        }
        r
    }
}

impl<const N: usize> Mul for Matrix<N> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Matrix {
            rows: self.rows.map(|r| r * o),
        }
    }
}

impl<const N: usize> fmt::Debug for Matrix<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{r:?}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surd::{sq, sq3};

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_rows([v3i(1, 1, 0), v3i(1, -1, 0), v3i(0, -1, 1)]);
        assert_eq!(m * m.inverse(), Mat3::identity());
        let m2 = Matrix::from_rows([v2(sq(1, 2), sq3(1, 2)), v2(sq3(1, 2), sq(-1, 2))]);
        assert!(m2.is_orthogonal());
        assert_eq!(m2.inverse(), m2.transpose());
    }

    #[test]
    fn cross_product() {
        assert_eq!(v3i(1, 0, 0).cross(&v3i(0, 1, 0)), v3i(0, 0, 1));
    }

    #[test]
    fn det_of_fcc_basis() {
        let m = Matrix::from_rows([v3i(1, 1, 0), v3i(1, -1, 0), v3i(0, -1, 1)]);
        assert_eq!(m.det(), surd_int(-2));
    }
}
