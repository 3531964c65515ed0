//! Brute-force reference implementations of every measure, computed from
//! the definitions on the full 4×4 density matrix.

use crate::error::{Error, Result};
use crate::linalg::{
    jacobi_eigh, partial_transpose_first, pauli, pauli_first, re, Mat2, Mat4, Sym3, C,
};
use crate::scalar::Real;
use crate::spin_state::DensityMatrix;

/// Eigen-decomposition of a two-qubit density matrix.
#[derive(Clone, Debug)]
pub struct Spectrum<T> {
    /// Descending.
    pub eigenvalues: [T; 4],
    /// `eigenvectors[i]` belongs to `eigenvalues[i]`.
    pub eigenvectors: [[C<T>; 4]; 4],
}

impl<T: Real> Spectrum<T> {
    pub fn reconstruct(&self) -> Mat4<T> {
        let mut m = Mat4::zeros();
        for k in 0..4 {
            m = m + Mat4::outer(&self.eigenvectors[k], &self.eigenvectors[k])
                .scale(self.eigenvalues[k]);
        }
        m
    }

    pub fn min(&self) -> T {
        self.eigenvalues[3]
    }
}

pub fn eigh4<T: Real>(rho: &DensityMatrix<T>) -> Result<Spectrum<T>> {
    eigh4_matrix(rho.matrix())
}

pub fn eigh4_matrix<T: Real>(m: &Mat4<T>) -> Result<Spectrum<T>> {
    let e = jacobi_eigh(m)?;
    Ok(Spectrum {
        eigenvalues: e.values,
        eigenvectors: e.vectors,
    })
}

fn clamp_eigen<T: Real>(g: T) -> Result<T> {
    if g >= T::zero() {
        Ok(g)
    } else if g >= -T::tol_psd() {
        Ok(T::zero())
    } else {
        Err(Error::InvalidParameters(format!(
            "eigenvalue {g} is below the PSD tolerance"
        )))
    }
}

/// Spectrum with eigenvalues in `[-tol_psd, 0)` set to zero. Eigenvalues at
/// rounding level relative to the largest are zeroed too, so that square
/// roots do not amplify them.
pub fn clamped_spectrum<T: Real>(m: &Mat4<T>) -> Result<Spectrum<T>> {
    let mut s = eigh4_matrix(m)?;
    let noise = T::lit(16.0) * T::epsilon() * s.eigenvalues[0].abs();
    for g in s.eigenvalues.iter_mut() {
        *g = if g.abs() <= noise {
            T::zero()
        } else {
            clamp_eigen(*g)?
        };
    }
    Ok(s)
}

/// Principal square root of a positive semidefinite matrix.
pub fn sqrt_psd<T: Real>(m: &Mat4<T>) -> Result<Mat4<T>> {
    let s = clamped_spectrum(m)?;
    let mut out = Mat4::zeros();
    for k in 0..4 {
        out = out
            + Mat4::outer(&s.eigenvectors[k], &s.eigenvectors[k]).scale(s.eigenvalues[k].sqrt());
    }
    Ok(out)
}

fn unit_interval<T: Real>(x: T) -> T {
    x.max(T::zero()).min(T::one())
}

/// `max{0, −2 μ_min}` of the partial transpose over Y.
pub fn negativity_generic<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    let pt = partial_transpose_first(rho.matrix());
    let s = eigh4_matrix(&pt)?;
    Ok(unit_interval(-T::two() * s.min()))
}

fn bloch_observable<T: Real>(n: &[T; 3]) -> Mat4<T> {
    let mut k = Mat2::zeros();
    for (i, &ni) in n.iter().enumerate() {
        k = k + pauli::<T>(i + 1).scale(ni);
    }
    crate::linalg::kron(&k, &Mat2::identity())
}

fn skew_from_sqrt<T: Real>(sq: &Mat4<T>, n: &[T; 3]) -> T {
    let k = bloch_observable(n);
    let comm = *sq * k - k * *sq;
    -(comm * comm).trace().re * T::half()
}

/// Wigner–Yanase skew information `−½ Tr [√ρ, K⊗I]²` with `K = n·τ`.
pub fn skew_information<T: Real>(rho: &DensityMatrix<T>, bloch: &[T; 3]) -> Result<T> {
    let norm = bloch.iter().fold(T::zero(), |a, &x| a + x * x).sqrt();
    if (norm - T::one()).abs() > T::tol_entry() {
        return Err(Error::Domain {
            what: "|bloch|",
            value: norm.to_f64().unwrap_or(f64::NAN),
            range: "{1}",
        });
    }
    let sq = sqrt_psd(rho.matrix())?;
    Ok(skew_from_sqrt(&sq, bloch).max(T::zero()))
}

/// `W_ij = Tr(√ρ (τ_i⊗I) √ρ (τ_j⊗I))`.
pub fn w_matrix<T: Real>(rho: &DensityMatrix<T>) -> Result<Sym3<T>> {
    let sq = sqrt_psd(rho.matrix())?;
    let s: [Mat4<T>; 3] = [pauli_first(1), pauli_first(2), pauli_first(3)];
    let half: [Mat4<T>; 3] = [sq * s[0], sq * s[1], sq * s[2]];
    let mut w = [[T::zero(); 3]; 3];
    for i in 0..3 {
        for j in i..3 {
            let v = (half[i] * half[j]).trace().re;
            w[i][j] = v;
            w[j][i] = v;
        }
    }
    Ok(Sym3(w))
}

/// `1 − λ_max(W)`.
pub fn lqu_spectral<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    Ok(unit_interval(T::one() - w_matrix(rho)?.max_eigenvalue()?))
}

const POLAR_STEPS: usize = 32;
const AZIMUTH_STEPS: usize = 64;
const MAX_REFINE_ROUNDS: usize = 200;

fn bloch<T: Real>(theta: T, phi: T) -> [T; 3] {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [st * cp, st * sp, ct]
}

fn golden_min<T: Real, F: Fn(T) -> T>(f: F, mut a: T, mut b: T, tol: T) -> (T, T) {
    let inv_phi = T::lit((5f64.sqrt() - 1.0) / 2.0);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while (b - a).abs() > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Minimum of the skew information over the Bloch sphere by a 32×64 grid
/// followed by alternating golden-section refinement of the two angles.
pub fn lqu_grid<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    let sq = sqrt_psd(rho.matrix())?;
    let obj = |t: T, p: T| skew_from_sqrt(&sq, &bloch(t, p));
    let pi = T::PI();
    let dt = pi / T::lit(POLAR_STEPS as f64);
    let dp = T::two() * pi / T::lit(AZIMUTH_STEPS as f64);

    let mut best = (T::zero(), T::zero(), T::infinity());
    for i in 0..POLAR_STEPS {
        let t = dt * (T::lit(i as f64) + T::half());
        for j in 0..AZIMUTH_STEPS {
            let p = dp * T::lit(j as f64);
            let v = obj(t, p);
            if v < best.2 {
                best = (t, p, v);
            }
        }
    }

    let (mut t, mut p, mut v) = best;
    let angle_tol = T::lit(1e-10).max(T::epsilon().sqrt());
    let obj_tol = T::lit(1e-8) * T::lit(1e-6);
    for _ in 0..MAX_REFINE_ROUNDS {
        let (t2, _) = golden_min(|x| obj(x, p), t - dt, t + dt, angle_tol);
        let (p2, v2) = golden_min(|y| obj(t2, y), p - dp, p + dp, angle_tol);
        let improved = v - v2;
        if v2 <= v {
            t = t2;
            p = p2;
            v = v2;
        }
        if improved <= obj_tol {
            break;
        }
    }
    Ok(unit_interval(v))
}

/// Maximum tolerated disagreement between the two LQU routes.
pub const LQU_PATH_TOLERANCE: f64 = 1e-6;

/// LQU from the definition; the grid minimisation and the W spectrum must
/// agree, and the spectral value is returned.
pub fn lqu_generic<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    let spectral = lqu_spectral(rho)?;
    let grid = lqu_grid(rho)?;
    let tol = T::lit(LQU_PATH_TOLERANCE).max(T::lit(1e3) * T::epsilon());
    if (grid - spectral).abs() > tol {
        return Err(Error::Consistency(format!(
            "LQU grid minimum {grid} and W-spectral value {spectral} disagree"
        )));
    }
    Ok(spectral)
}

/// `M_ij = Σ_{a,b} 2γ_aγ_b/(γ_a+γ_b) Re⟨ψ_a|τ_i⊗I|ψ_b⟩⟨ψ_b|τ_j⊗I|ψ_a⟩`,
/// skipping pairs with `γ_a + γ_b ≤ tol_pair`.
pub fn m_matrix<T: Real>(rho: &DensityMatrix<T>) -> Result<Sym3<T>> {
    let s = clamped_spectrum(rho.matrix())?;
    let ops: [Mat4<T>; 3] = [pauli_first(1), pauli_first(2), pauli_first(3)];
    let mut elems = [[[re(T::zero()); 4]; 4]; 3];
    for (k, op) in ops.iter().enumerate() {
        for a in 0..4 {
            for b in 0..4 {
                elems[k][a][b] = op.sandwich(&s.eigenvectors[a], &s.eigenvectors[b]);
            }
        }
    }
    let mut m = [[T::zero(); 3]; 3];
    for a in 0..4 {
        for b in 0..4 {
            let (ga, gb) = (s.eigenvalues[a], s.eigenvalues[b]);
            if ga + gb <= T::tol_pair() {
                continue;
            }
            let w = T::two() * ga * gb / (ga + gb);
            if w == T::zero() {
                continue;
            }
            for i in 0..3 {
                for j in i..3 {
                    m[i][j] = m[i][j] + w * (elems[i][a][b] * elems[j][b][a]).re;
                }
            }
        }
    }
    for i in 0..3 {
        for j in 0..i {
            m[i][j] = m[j][i];
        }
    }
    Ok(Sym3(m))
}

/// `1 − λ_max(M)`.
pub fn lqfi_generic<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    Ok(unit_interval(T::one() - m_matrix(rho)?.max_eigenvalue()?))
}

fn sqrt_trace<T: Real>(m: &Mat4<T>) -> Result<T> {
    let s = clamped_spectrum(m)?;
    Ok(s.eigenvalues.iter().fold(T::zero(), |a, &g| a + g.sqrt()))
}

/// `(Tr √(√ρ σ √ρ))²`.
pub fn fidelity_trace_norm<T: Real>(rho: &DensityMatrix<T>, sigma: &DensityMatrix<T>) -> Result<T> {
    let sq = sqrt_psd(rho.matrix())?;
    let inner = (sq * *sigma.matrix() * sq).hermitian_part();
    let t = sqrt_trace(&inner)?;
    Ok(unit_interval(t * t))
}

/// Uhlmann fidelity. A rank-1 `rho_in` uses `⟨ψ|ρ_out|ψ⟩`.
pub fn fidelity_uhlmann<T: Real>(
    rho_in: &DensityMatrix<T>,
    rho_out: &DensityMatrix<T>,
) -> Result<T> {
    let s = eigh4(rho_in)?;
    let rank_one = s.eigenvalues[1].abs() <= T::tol_psd() && s.eigenvalues[3].abs() <= T::tol_psd();
    if rank_one {
        let psi = &s.eigenvectors[0];
        let f = rho_out.matrix().sandwich(psi, psi).re;
        return Ok(unit_interval(f));
    }
    fidelity_trace_norm(rho_in, rho_out)
}
