//! Exact 4-dimensional linear algebra over rationals, plus the handful of
//! generic routines (determinants, Cramer's rule) also used over rational
//! functions.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};
use num_traits::{One, Signed, Zero};

use crate::rational::{int, Rational};

/// Division-capable scalar. Only what the solvers need.
pub trait Field: Clone + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// `None` when `other` is zero.
    fn div(&self, other: &Self) -> Option<Self>;
    fn neg(&self) -> Self;
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
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
    fn div(&self, other: &Self) -> Option<Self> {
        (!Zero::is_zero(other)).then(|| self / other)
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Determinant by Laplace expansion along the first row, division free.
pub fn det<F: Field>(m: &[Vec<F>]) -> F {
    let n = m.len();
    match n {
        0 => F::one(),
        1 => m[0][0].clone(),
        2 => m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0])),
        _ => {
            let mut acc = F::zero();
            for c in 0..n {
                if m[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<F>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = m[0][c].mul(&det(&minor));
                acc = if c % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

/// Solves `m x = b` by Cramer's rule. `None` when `det m` is zero.
pub fn solve_cramer<F: Field>(m: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let d = det(m);
    if d.is_zero() {
        return None;
    }
    let n = m.len();
    (0..n)
        .map(|c| {
            let replaced: Vec<Vec<F>> = m
                .iter()
                .zip(b)
                .map(|(row, bi)| {
                    let mut row = row.clone();
                    row[c] = bi.clone();
                    row
                })
                .collect();
            det(&replaced).div(&d)
        })
        .collect()
}

/// A point of R⁴ (column vector).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Vector(pub [Rational; 4]);

/// A linear functional on R⁴ (row vector).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Covector(pub [Rational; 4]);

macro_rules! four_coords {
    ($t:ident) => {
        impl $t {
            pub fn new(coords: [Rational; 4]) -> Self {
                $t(coords)
            }

            pub fn from_ints(c: [i64; 4]) -> Self {
                $t(c.map(int))
            }

            /// The `k`-th standard basis element.
            pub fn basis(k: usize) -> Self {
                let mut c = [0; 4];
                c[k] = 1;
                Self::from_ints(c)
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(Zero::is_zero)
            }

            pub fn scaled(&self, s: &Rational) -> Self {
                $t(self.0.clone().map(|x| x * s))
            }

            pub fn coords(&self) -> &[Rational; 4] {
                &self.0
            }
        }

        impl Index<usize> for $t {
            type Output = Rational;
            fn index(&self, k: usize) -> &Rational {
                &self.0[k]
            }
        }

        impl IndexMut<usize> for $t {
            fn index_mut(&mut self, k: usize) -> &mut Rational {
                &mut self.0[k]
            }
        }

        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "({}, {}, {}, {})", self.0[0], self.0[1], self.0[2], self.0[3])
            }
        }
    };
}

four_coords!(Vector);
four_coords!(Covector);

impl Covector {
    /// The pairing `self(v)`.
    pub fn apply(&self, v: &Vector) -> Rational {
        self.0.iter().zip(&v.0).map(|(a, b)| a * b).sum()
    }

    /// The functional `self ∘ m`.
    pub fn compose(&self, m: &Mat4) -> Covector {
        Covector(core::array::from_fn(|c| (0..4).map(|r| &self.0[r] * &m.0[r][c]).sum()))
    }
}

/// 4×4 rational matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat4(pub [[Rational; 4]; 4]);

impl Mat4 {
    pub fn identity() -> Self {
        Mat4(core::array::from_fn(|r| core::array::from_fn(|c| if r == c { int(1) } else { int(0) })))
    }

    pub fn from_ints(rows: [[i64; 4]; 4]) -> Self {
        Mat4(rows.map(|row| row.map(int)))
    }

    /// `Id − α ⊗ v`, the map `x ↦ x − α(x) v`.
    pub fn reflection(alpha: &Covector, v: &Vector) -> Self {
        Mat4(core::array::from_fn(|r| {
            core::array::from_fn(|c| {
                let id = if r == c { int(1) } else { int(0) };
                id - &v.0[r] * &alpha.0[c]
            })
        }))
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        Vector(core::array::from_fn(|r| (0..4).map(|c| &self.0[r][c] * &v.0[c]).sum()))
    }

    pub fn mul(&self, other: &Mat4) -> Mat4 {
        Mat4(core::array::from_fn(|r| {
            core::array::from_fn(|c| (0..4).map(|k| &self.0[r][k] * &other.0[k][c]).sum())
        }))
    }

    fn rows(&self) -> Vec<Vec<Rational>> {
        self.0.iter().map(|r| r.to_vec()).collect()
    }

    pub fn det(&self) -> Rational {
        det(&self.rows())
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat4::identity()
    }

    /// Inverse by Gauss–Jordan elimination; `None` if singular.
    pub fn inverse(&self) -> Option<Mat4> {
        let mut a = self.rows();
        let mut inv = Mat4::identity().rows();
        for c in 0..4 {
            let p = (c..4).find(|&r| !Zero::is_zero(&a[r][c]))?;
            a.swap(p, c);
            inv.swap(p, c);
            let pivot = a[c][c].clone();
            for k in 0..4 {
                a[c][k] = &a[c][k] / &pivot;
                inv[c][k] = &inv[c][k] / &pivot;
            }
            for r in 0..4 {
                if r != c && !Zero::is_zero(&a[r][c]) {
                    let factor = a[r][c].clone();
                    for k in 0..4 {
                        let (ack, ick) = (a[c][k].clone(), inv[c][k].clone());
                        a[r][k] -= &factor * ack;
                        inv[r][k] -= &factor * ick;
                    }
                }
            }
        }
        Some(Mat4(core::array::from_fn(|r| core::array::from_fn(|c| inv[r][c].clone()))))
    }

    pub fn pow(&self, k: u32) -> Mat4 {
        (0..k).fold(Mat4::identity(), |acc, _| acc.mul(self))
    }
}

/// Rank of a family of rational rows of equal length.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !Zero::is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(p, r);
        for i in r + 1..a.len() {
            if !Zero::is_zero(&a[i][c]) {
                let factor = &a[i][c] / &a[r][c];
                for k in c..cols {
                    let sub = &factor * &a[r][k];
                    a[i][k] -= sub;
                }
            }
        }
        r += 1;
    }
    r
}

/// Common kernel of three covectors: the vector of signed 3×3 minors, zero
/// when the covectors are dependent.
pub fn kernel_of_three(a: &Covector, b: &Covector, c: &Covector) -> Vector {
    let rows = [a, b, c];
    Vector(core::array::from_fn(|skip| {
        let minor: Vec<Vec<Rational>> =
            rows.iter().map(|r| (0..4).filter(|&k| k != skip).map(|k| r.0[k].clone()).collect()).collect();
        let d = det(&minor);
        if skip % 2 == 0 {
            d
        } else {
            -d
        }
    }))
}

/// Positive rescaling making the first nonzero coordinate ±1, so that two
/// vectors span the same ray iff their primitive forms are equal.
pub fn primitive_ray(v: &Vector) -> Vector {
    match v.0.iter().find(|x| !Zero::is_zero(*x)) {
        Some(lead) => {
            let s = <Rational as One>::one() / lead.abs();
            v.scaled(&s)
        }
        None => v.clone(),
    }
}
