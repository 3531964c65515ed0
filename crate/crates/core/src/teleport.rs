//! Teleportation of a two-qubit pure input through a mixed two-qubit
//! resource, modelled as a Pauli twirl weighted by Bell-measurement
//! probabilities.

use crate::error::{domain, Error, Result};
use crate::linalg::{c, kron, pauli, re, Mat4, C};
use crate::scalar::Real;
use crate::spin_state::{DensityMatrix, XState};

/// Input `cos(θ/2)|01⟩ + e^{iφ} sin(θ/2)|10⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InputState<T> {
    theta: T,
    phase: T,
}

impl<T: Real> InputState<T> {
    /// `theta ∈ [0, π]`, `phase ∈ [0, 2π]`.
    pub fn new(theta: T, phase: T) -> Result<Self> {
        let slack = T::tol_entry();
        let pi = T::PI();
        if !(theta >= -slack && theta <= pi + slack) {
            return Err(domain("theta", theta, "[0, π]"));
        }
        if !(phase >= -slack && phase <= T::two() * pi + slack) {
            return Err(domain("phase", phase, "[0, 2π]"));
        }
        Ok(Self { theta, phase })
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    pub fn phase(&self) -> T {
        self.phase
    }

    pub fn ket(&self) -> [C<T>; 4] {
        let (s, cs) = (T::half() * self.theta).sin_cos();
        let (sp, cp) = self.phase.sin_cos();
        [re(T::zero()), re(cs), c(cp * s, sp * s), re(T::zero())]
    }
}

/// How the input density matrix is laid out.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum InputLayout {
    /// Outer product of [`InputState::ket`].
    #[default]
    Ket,
    /// `sin²(θ/2)` at (2,2), `cos²(θ/2)` at (3,3), `½e^{iφ} sin θ` at (2,3):
    /// the projector onto `sin(θ/2)|01⟩ + e^{−iφ} cos(θ/2)|10⟩`.
    PrintedMatrix,
}

pub fn input_density<T: Real>(inp: &InputState<T>) -> DensityMatrix<T> {
    input_density_with(inp, InputLayout::Ket)
}

pub fn input_density_with<T: Real>(inp: &InputState<T>, layout: InputLayout) -> DensityMatrix<T> {
    match layout {
        InputLayout::Ket => DensityMatrix::pure(&inp.ket()),
        InputLayout::PrintedMatrix => {
            let (s, cs) = (T::half() * inp.theta).sin_cos();
            let (sp, cp) = inp.phase.sin_cos();
            let ket = [re(T::zero()), re(s), c(cp * cs, -sp * cs), re(T::zero())];
            DensityMatrix::pure(&ket)
        }
    }
}

/// Bell projectors `E₀…E₃` onto `χ⁻, ψ⁻, ψ⁺, χ⁺` with
/// `χ± = (|01⟩ ± |10⟩)/√2`, `ψ± = (|00⟩ ± |11⟩)/√2`.
#[derive(Clone, Debug, PartialEq)]
pub struct BellProjectors<T> {
    pub projectors: [Mat4<T>; 4],
}

pub fn bell_kets<T: Real>() -> [[C<T>; 4]; 4] {
    let h = T::half().sqrt();
    let o = re(T::zero());
    [
        [o, re(h), re(-h), o],
        [re(h), o, o, re(-h)],
        [re(h), o, o, re(h)],
        [o, re(h), re(h), o],
    ]
}

pub fn bell_projectors<T: Real>() -> BellProjectors<T> {
    let k = bell_kets::<T>();
    BellProjectors {
        projectors: [
            Mat4::outer(&k[0], &k[0]),
            Mat4::outer(&k[1], &k[1]),
            Mat4::outer(&k[2], &k[2]),
            Mat4::outer(&k[3], &k[3]),
        ],
    }
}

/// `p_ij = Tr[E_i ρ] Tr[E_j ρ]`.
pub fn teleport_probabilities<T: Real>(resource: &DensityMatrix<T>) -> [[T; 4]; 4] {
    let e = bell_projectors::<T>();
    let w: Vec<T> = e
        .projectors
        .iter()
        .map(|p| (*p * *resource.matrix()).trace().re)
        .collect();
    let mut p = [[T::zero(); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            p[i][j] = w[i] * w[j];
        }
    }
    p
}

/// `Σ_ij p_ij (τ_i⊗τ_j) ρ_in (τ_i⊗τ_j)`, validated.
pub fn teleport_generic<T: Real>(
    resource: &DensityMatrix<T>,
    inp: &InputState<T>,
) -> Result<DensityMatrix<T>> {
    teleport_generic_from(resource, &input_density(inp))
}

pub fn teleport_generic_from<T: Real>(
    resource: &DensityMatrix<T>,
    rho_in: &DensityMatrix<T>,
) -> Result<DensityMatrix<T>> {
    let p = teleport_probabilities(resource);
    let mut out = Mat4::zeros();
    for (i, row) in p.iter().enumerate() {
        for (j, &pij) in row.iter().enumerate() {
            if pij == T::zero() {
                continue;
            }
            let u = kron(&pauli::<T>(i), &pauli::<T>(j));
            out = out + (u * *rho_in.matrix() * u).scale(pij);
        }
    }
    let rho = DensityMatrix::from_matrix_unchecked(out);
    rho.validate()
        .map_err(|e| Error::Consistency(format!("teleported state invalid: {e}")))?;
    Ok(rho)
}

/// Closed-form teleported X state from the resource populations and
/// coherences; `ϱ̂₄₄ = ϱ̂₁₁`.
pub fn teleport_x_closed<T: Real>(resource: &XState<T>, inp: &InputState<T>) -> XState<T> {
    let a = resource.r11 + resource.r44;
    let b = resource.r22;
    let two = T::two();
    let (sh, ch) = (T::half() * inp.theta).sin_cos();
    let st = inp.theta.sin();
    let e_minus = C::from_polar(T::one(), -inp.phase);
    let e_plus = C::from_polar(T::one(), inp.phase);
    let r11 = two * b * a;
    XState {
        r11,
        r22: a * a * ch * ch + T::lit(4.0) * b * b * sh * sh,
        r33: a * a * sh * sh + T::lit(4.0) * b * b * ch * ch,
        r44: r11,
        c23: (resource.c23 * resource.c23 * e_minus + resource.c14 * resource.c14 * e_plus)
            * (two * st),
        c14: resource.c23 * resource.c14 * (T::lit(4.0) * st * inp.phase.cos()),
    }
}

/// `ϱ̂₂₂ sin²(θ/2) + ϱ̂₃₃ cos²(θ/2) + Re(ϱ̂₂₃ e^{−iφ})`.
pub fn fidelity_closed<T: Real>(out: &XState<T>, inp: &InputState<T>) -> T {
    let (sh, ch) = (T::half() * inp.theta).sin_cos();
    let e_minus = C::from_polar(T::one(), -inp.phase);
    out.r22 * sh * sh + out.r33 * ch * ch + (out.c23 * e_minus).re
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::fidelity_uhlmann;
    use crate::spin_state::{x_state, x_to_density, Species};
    use std::f64::consts::PI;

    fn inp(t: f64, p: f64) -> InputState<f64> {
        InputState::new(t, p).unwrap()
    }

    #[test]
    fn input_density_examples() {
        let d = input_density(&inp(0.0, 0.0));
        assert!(d.matrix().max_abs_diff(&Mat4::diag([0.0, 1.0, 0.0, 0.0])) < 1e-16);
        let d = input_density(&inp(PI, 0.0));
        assert!(d.matrix().max_abs_diff(&Mat4::diag([0.0, 0.0, 1.0, 0.0])) < 1e-15);
        let d = input_density(&inp(PI / 2.0, 0.0));
        let chi_plus = bell_projectors::<f64>().projectors[3];
        assert!(d.matrix().max_abs_diff(&chi_plus) < 1e-15);
        assert!(InputState::new(4.0, 0.0).is_err());
        assert!(InputState::new(1.0, -0.5).is_err());
    }

    #[test]
    fn printed_layout_matches_its_matrix() {
        let i = inp(0.9, 0.4);
        let m = *input_density_with(&i, InputLayout::PrintedMatrix).matrix();
        assert!((m[(1, 1)].re - (0.45f64).sin().powi(2)).abs() < 1e-15);
        assert!((m[(2, 2)].re - (0.45f64).cos().powi(2)).abs() < 1e-15);
        let want = C::from_polar(0.5 * 0.9f64.sin(), 0.4);
        assert!((m[(1, 2)] - want).norm() < 1e-15);
    }

    #[test]
    fn bell_projectors_resolve_identity() {
        let e = bell_projectors::<f64>().projectors;
        let sum = e.iter().fold(Mat4::zeros(), |a, p| a + *p);
        assert!(sum.max_abs_diff(&Mat4::identity()) < 1e-15);
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { e[i] } else { Mat4::zeros() };
                assert!((e[i] * e[j]).max_abs_diff(&want) < 1e-15);
            }
        }
    }

    #[test]
    fn probabilities_examples() {
        let p = teleport_probabilities(&x_to_density(&XState::<f64>::singlet()));
        // the singlet is χ⁻ = E₀
        assert!((p[0][0] - 1.0).abs() < 1e-15);
        let total: f64 = p.iter().flatten().sum();
        assert!((total - 1.0).abs() < 1e-15);
        let p = teleport_probabilities(&DensityMatrix::<f64>::maximally_mixed());
        assert!(p.iter().flatten().all(|&v| (v - 1.0 / 16.0).abs() < 1e-16));
        let phi_minus = Mat4::outer(&bell_kets::<f64>()[1], &bell_kets::<f64>()[1]);
        let p = teleport_probabilities(&DensityMatrix::from_matrix_unchecked(phi_minus));
        assert!((p[1][1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn probability_marginals_are_bell_weights() {
        let rho = x_to_density(&x_state(&Species::Lambda.params::<f64>(), PI / 2.0).unwrap());
        let p = teleport_probabilities(&rho);
        let e = bell_projectors::<f64>().projectors;
        for i in 0..4 {
            let w = (e[i] * *rho.matrix()).trace().re;
            let row: f64 = p[i].iter().sum();
            assert!((row - w).abs() < 1e-15);
        }
    }

    #[test]
    fn mixed_resource_depolarises_completely() {
        let mm = DensityMatrix::<f64>::maximally_mixed();
        for (t, ph) in [(0.0, 0.0), (1.2, 2.0), (PI, 5.0)] {
            let out = teleport_generic(&mm, &inp(t, ph)).unwrap();
            assert!(out.matrix().max_abs_diff(mm.matrix()) < 1e-15);
            let f = fidelity_uhlmann(&input_density(&inp(t, ph)), &out).unwrap();
            assert!((f - 0.25).abs() < 1e-12);
        }
    }

    #[test]
    fn closed_form_trace_identity() {
        let x = x_state(&Species::Lambda.params::<f64>(), PI / 2.0).unwrap();
        let out = teleport_x_closed(&x, &inp(PI / 2.0, 0.0));
        assert!((out.trace() - 1.0).abs() < 1e-12);
        let edge = XState::diagonal([0.6, 0.0, 0.0, 0.4]);
        assert_eq!(teleport_x_closed(&edge, &inp(1.0, 0.0)).r11, 0.0);
    }

    #[test]
    fn closed_fidelity_examples() {
        let i = inp(PI / 2.0, 0.0);
        let x = input_density(&i).to_x_state();
        assert!((fidelity_closed(&x, &i) - 1.0).abs() < 1e-15);
        let res = x_state(&Species::XiZero.params::<f64>(), 1.0).unwrap();
        let i0 = inp(0.0, 0.3);
        let out = teleport_x_closed(&res, &i0);
        assert_eq!(out.c23, re(0.0));
        assert!((fidelity_closed(&out, &i0) - out.r33).abs() < 1e-16);
    }

    #[test]
    fn closed_form_agrees_with_generic_at_right_angle() {
        for sp in Species::ALL {
            let x = x_state(&sp.params(), PI / 2.0).unwrap();
            let i = inp(PI / 2.0, 0.0);
            let closed = teleport_x_closed(&x, &i);
            let generic = teleport_generic(&x_to_density(&x), &i)
                .unwrap()
                .to_x_state();
            assert!(closed.max_abs_diff(&generic) < 1e-14, "{sp:?}");
        }
    }
}
