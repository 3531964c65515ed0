//! Fixed-size complex matrices for one and two qubits, plus the small
//! Hermitian and real-symmetric eigensolvers the measures need.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

pub type C<T> = Complex<T>;

#[inline]
pub fn c<T: Real>(re: T, im: T) -> C<T> {
    Complex::new(re, im)
}

#[inline]
pub fn re<T: Real>(x: T) -> C<T> {
    Complex::new(x, T::zero())
}

#[inline]
pub fn czero<T: Real>() -> C<T> {
    Complex::new(T::zero(), T::zero())
}

/// Square complex matrix of dimension `N`, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat<T, const N: usize>(pub [[C<T>; N]; N]);

pub type Mat2<T> = Mat<T, 2>;
pub type Mat4<T> = Mat<T, 4>;

impl<T: Real, const N: usize> Mat<T, N> {
    pub fn zeros() -> Self {
        Mat([[czero(); N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.0[i][i] = re(T::one());
        }
        m
    }

    pub fn from_real(rows: [[T; N]; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = re(rows[i][j]);
            }
        }
        m
    }

    pub fn diag(d: [T; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.0[i][i] = re(d[i]);
        }
        m
    }

    /// Outer product `|u⟩⟨v|`.
    pub fn outer(u: &[C<T>; N], v: &[C<T>; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = u[i] * v[j].conj();
            }
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn scale(&self, k: T) -> Self {
        let mut m = *self;
        for row in m.0.iter_mut() {
            for z in row.iter_mut() {
                *z = *z * k;
            }
        }
        m
    }

    pub fn trace(&self) -> C<T> {
        (0..N).fold(czero(), |acc, i| acc + self.0[i][i])
    }

    /// `⟨u|M|v⟩`.
    pub fn sandwich(&self, u: &[C<T>; N], v: &[C<T>; N]) -> C<T> {
        let mut acc = czero();
        for i in 0..N {
            let mut row = czero();
            for j in 0..N {
                row = row + self.0[i][j] * v[j];
            }
            acc = acc + u[i].conj() * row;
        }
        acc
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for i in 0..N {
            for j in 0..N {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }

    /// Largest entrywise deviation from Hermiticity.
    pub fn hermiticity_error(&self) -> T {
        self.max_abs_diff(&self.adjoint())
    }

    /// Hermitian part `(M + M†)/2`.
    pub fn hermitian_part(&self) -> Self {
        (*self + self.adjoint()).scale(T::half())
    }
}

impl<T: Real, const N: usize> Index<(usize, usize)> for Mat<T, N> {
    type Output = C<T>;
    fn index(&self, (i, j): (usize, usize)) -> &C<T> {
        &self.0[i][j]
    }
}

impl<T: Real, const N: usize> IndexMut<(usize, usize)> for Mat<T, N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<T> {
        &mut self.0[i][j]
    }
}

impl<T: Real, const N: usize> Add for Mat<T, N> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.0[i][j] = self.0[i][j] + rhs.0[i][j];
            }
        }
        self
    }
}

impl<T: Real, const N: usize> Sub for Mat<T, N> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.0[i][j] = self.0[i][j] - rhs.0[i][j];
            }
        }
        self
    }
}

impl<T: Real, const N: usize> Mul for Mat<T, N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.0[i][k];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                for j in 0..N {
                    m.0[i][j] = m.0[i][j] + a * rhs.0[k][j];
                }
            }
        }
        m
    }
}

/// Tensor product `a ⊗ b` with `a` acting on the first (most significant) qubit.
pub fn kron<T: Real>(a: &Mat2<T>, b: &Mat2<T>) -> Mat4<T> {
    let mut m = Mat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m.0[2 * i + k][2 * j + l] = a.0[i][j] * b.0[k][l];
                }
            }
        }
    }
    m
}

/// Partial transpose over the first qubit.
pub fn partial_transpose_first<T: Real>(m: &Mat4<T>) -> Mat4<T> {
    let mut out = Mat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out.0[2 * j + k][2 * i + l] = m.0[2 * i + k][2 * j + l];
                }
            }
        }
    }
    out
}

/// Pauli basis `τ_0 = I, τ_1 = X, τ_2 = Y, τ_3 = Z`.
pub fn pauli<T: Real>(mu: usize) -> Mat2<T> {
    let o = T::zero();
    let l = T::one();
    match mu {
        0 => Mat2::identity(),
        1 => Mat([[re(o), re(l)], [re(l), re(o)]]),
        2 => Mat([[re(o), c(o, -l)], [c(o, l), re(o)]]),
        3 => Mat([[re(l), re(o)], [re(o), re(-l)]]),
        _ => panic!("pauli index {mu} out of range"),
    }
}

/// Local Pauli `τ_k ⊗ I` on the first qubit.
pub fn pauli_first<T: Real>(k: usize) -> Mat4<T> {
    kron(&pauli(k), &Mat2::identity())
}

/// Eigen-decomposition of a Hermitian matrix: eigenvalues in descending
/// order, `vectors[i]` the normalised eigenvector belonging to `values[i]`.
#[derive(Clone, Debug)]
pub struct HermitianEigen<T, const N: usize> {
    pub values: [T; N],
    pub vectors: [[C<T>; N]; N],
}

const MAX_SWEEPS: usize = 100;

/// Cyclic complex Jacobi diagonalisation.
///
/// Each rotation first removes the phase of the pivot `a_pq` and then applies
/// the real Givens rotation that annihilates it. Only the Hermitian part of
/// `m` is used.
pub fn jacobi_eigh<T: Real, const N: usize>(m: &Mat<T, N>) -> Result<HermitianEigen<T, N>> {
    let mut a = m.hermitian_part();
    let mut v = Mat::<T, N>::identity();

    let scale = (0..N)
        .flat_map(|i| (0..N).map(move |j| (i, j)))
        .fold(T::zero(), |acc, (i, j)| acc + a.0[i][j].norm_sqr())
        .sqrt();
    let floor = T::lit((N * N) as f64) * T::epsilon() * scale;
    let threshold = (floor * floor).max(T::min_positive_value());

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut off = T::zero();
        for p in 0..N {
            for q in (p + 1)..N {
                off = off + a.0[p][q].norm_sqr();
            }
        }
        if off <= threshold {
            converged = true;
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                let z = a.0[p][q];
                let r = z.norm();
                if r <= T::min_positive_value() {
                    continue;
                }
                let phase = z / r;
                let app = a.0[p][p].re;
                let aqq = a.0[q][q].re;
                let theta = T::half() * (T::two() * r).atan2(aqq - app);
                let (s, cs) = theta.sin_cos();
                // U = D R restricted to (p, q): D = diag(1, conj(phase)).
                let upp = re(cs);
                let upq = re(s);
                let uqp = phase.conj() * (-s);
                let uqq = phase.conj() * cs;

                // A <- A U (columns p, q)
                for k in 0..N {
                    let akp = a.0[k][p];
                    let akq = a.0[k][q];
                    a.0[k][p] = akp * upp + akq * uqp;
                    a.0[k][q] = akp * upq + akq * uqq;
                }
                // A <- U† A (rows p, q)
                for k in 0..N {
                    let apk = a.0[p][k];
                    let aqk = a.0[q][k];
                    a.0[p][k] = upp.conj() * apk + uqp.conj() * aqk;
                    a.0[q][k] = upq.conj() * apk + uqq.conj() * aqk;
                }
                a.0[p][q] = czero();
                a.0[q][p] = czero();
                a.0[p][p] = re(a.0[p][p].re);
                a.0[q][q] = re(a.0[q][q].re);
                for k in 0..N {
                    let vkp = v.0[k][p];
                    let vkq = v.0[k][q];
                    v.0[k][p] = vkp * upp + vkq * uqp;
                    v.0[k][q] = vkp * upq + vkq * uqq;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NotConverged { sweeps: MAX_SWEEPS });
    }

    let mut order: [usize; N] = [0; N];
    for (i, o) in order.iter_mut().enumerate() {
        *o = i;
    }
    order.sort_by(|&i, &j| {
        a.0[j][j]
            .re
            .partial_cmp(&a.0[i][i].re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(i.cmp(&j))
    });
    let mut values = [T::zero(); N];
    let mut vectors = [[czero(); N]; N];
    for (slot, &idx) in order.iter().enumerate() {
        values[slot] = a.0[idx][idx].re;
        for k in 0..N {
            vectors[slot][k] = v.0[k][idx];
        }
    }
    Ok(HermitianEigen { values, vectors })
}

/// Real symmetric 3×3 matrix; used for the W and M correlation matrices.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sym3<T>(pub [[T; 3]; 3]);

impl<T: Real> Sym3<T> {
    /// Eigenvalues in descending order (Jacobi on the real matrix).
    pub fn eigenvalues(&self) -> Result<[T; 3]> {
        let m = Mat::<T, 3>::from_real(self.0);
        Ok(jacobi_eigh(&m)?.values)
    }

    pub fn max_eigenvalue(&self) -> Result<T> {
        Ok(self.eigenvalues()?[0])
    }

    /// `nᵀ S n`.
    pub fn quadratic_form(&self, n: &[T; 3]) -> T {
        let mut acc = T::zero();
        for i in 0..3 {
            for j in 0..3 {
                acc = acc + n[i] * self.0[i][j] * n[j];
            }
        }
        acc
    }
}
