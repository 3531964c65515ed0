//! Spin density matrix of a hyperon-antihyperon pair produced in
//! `e⁺e⁻ → J/ψ → YȲ`, both in the full polarisation/correlation form and in
//! the seven-parameter X form.
//!
//! Basis order is `|00⟩, |01⟩, |10⟩, |11⟩` with the first slot the hyperon Y.

use crate::error::{domain, Error, Result};
use crate::linalg::{c, czero, jacobi_eigh, kron, pauli, re, Mat4, C};
use crate::scalar::Real;

/// The four hyperon species with measured `(α_ψ, ΔΦ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Species {
    Lambda,
    SigmaPlus,
    XiMinus,
    XiZero,
}

impl Species {
    pub const ALL: [Species; 4] = [
        Species::Lambda,
        Species::SigmaPlus,
        Species::XiMinus,
        Species::XiZero,
    ];

    /// Selector name used on the command line and in output files.
    pub fn name(self) -> &'static str {
        match self {
            Species::Lambda => "Lambda",
            Species::SigmaPlus => "SigmaPlus",
            Species::XiMinus => "XiMinus",
            Species::XiZero => "XiZero",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Species::Lambda => "Λ",
            Species::SigmaPlus => "Σ⁺",
            Species::XiMinus => "Ξ⁻",
            Species::XiZero => "Ξ⁰",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Species::ALL
            .into_iter()
            .find(|s| s.name().eq_ignore_ascii_case(name))
            .ok_or_else(|| {
                Error::Usage(format!(
                    "unknown pair '{name}'; valid names: Lambda, SigmaPlus, XiMinus, XiZero"
                ))
            })
    }

    /// Central values of `(α_ψ, ΔΦ [rad])` from the BESIII measurements.
    pub fn measured(self) -> (f64, f64) {
        match self {
            Species::Lambda => (0.475, 0.752),
            Species::SigmaPlus => (-0.508, -0.270),
            Species::XiMinus => (0.586, 1.213),
            Species::XiZero => (0.514, 1.168),
        }
    }

    pub fn params<T: Real>(self) -> HyperonParams<T> {
        let (a, d) = self.measured();
        HyperonParams::new(self.name(), T::lit(a), T::lit(d))
            .expect("tabulated parameters are in range")
    }
}

/// Decay parameters of one YȲ species.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperonParams<T> {
    name: String,
    alpha_psi: T,
    delta_phi: T,
    beta_psi: T,
    gamma_psi: T,
}

impl<T: Real> HyperonParams<T> {
    pub fn new(name: impl Into<String>, alpha_psi: T, delta_phi: T) -> Result<Self> {
        if delta_phi.is_nan() || delta_phi.abs() > T::PI() {
            return Err(domain("delta_phi", delta_phi, "[-π, π]"));
        }
        let (beta_psi, gamma_psi) = derive_aux(alpha_psi, delta_phi)?;
        Ok(Self {
            name: name.into(),
            alpha_psi,
            delta_phi,
            beta_psi,
            gamma_psi,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn alpha_psi(&self) -> T {
        self.alpha_psi
    }
    pub fn delta_phi(&self) -> T {
        self.delta_phi
    }
    pub fn beta_psi(&self) -> T {
        self.beta_psi
    }
    pub fn gamma_psi(&self) -> T {
        self.gamma_psi
    }
}

/// `(β_ψ, γ_ψ) = √(1−α²)·(sin ΔΦ, cos ΔΦ)`.
pub fn derive_aux<T: Real>(alpha_psi: T, delta_phi: T) -> Result<(T, T)> {
    if alpha_psi.is_nan() || alpha_psi.abs() > T::one() {
        return Err(domain("alpha_psi", alpha_psi, "[-1, 1]"));
    }
    let r = (T::one() - alpha_psi * alpha_psi).max(T::zero()).sqrt();
    let (s, cs) = delta_phi.sin_cos();
    Ok((r * s, r * cs))
}

fn check_scatter_angle<T: Real>(angle: T) -> Result<()> {
    let slack = T::tol_entry();
    if !(angle >= -slack && angle <= T::PI() + slack) {
        return Err(domain("scatter_angle", angle, "[0, π]"));
    }
    Ok(())
}

/// Real 4×4 polarisation/spin-correlation matrix `Θ_{μν̄}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaMatrix<T> {
    pub entries: [[T; 4]; 4],
    pub scatter_angle: T,
}

impl<T: Real> ThetaMatrix<T> {
    /// Θ with only the identity component: the maximally mixed state.
    pub fn identity_only(scatter_angle: T) -> Self {
        let mut entries = [[T::zero(); 4]; 4];
        entries[0][0] = T::one();
        Self {
            entries,
            scatter_angle,
        }
    }
}

/// Θ matrix at scattering angle `φ` for the given species.
pub fn theta_matrix<T: Real>(
    params: &HyperonParams<T>,
    scatter_angle: T,
) -> Result<ThetaMatrix<T>> {
    check_scatter_angle(scatter_angle)?;
    let a = params.alpha_psi;
    let (s, cs) = scatter_angle.sin_cos();
    let den = T::one() + a * cs * cs;
    let mut t = [[T::zero(); 4]; 4];
    t[0][0] = T::one();
    t[1][1] = s * s / den;
    t[2][2] = -a * s * s / den;
    t[3][3] = (a + cs * cs) / den;
    t[0][2] = params.beta_psi * s * cs / den;
    t[2][0] = t[0][2];
    t[1][3] = params.gamma_psi * s * cs / den;
    t[3][1] = t[1][3];
    Ok(ThetaMatrix {
        entries: t,
        scatter_angle,
    })
}

/// Hyperon polarisation `β_ψ sinφ cosφ / (1 + α_ψ cos²φ)`.
pub fn polarization<T: Real>(params: &HyperonParams<T>, scatter_angle: T) -> Result<T> {
    check_scatter_angle(scatter_angle)?;
    let (s, cs) = scatter_angle.sin_cos();
    Ok(params.beta_psi * s * cs / (T::one() + params.alpha_psi * cs * cs))
}

/// Two-qubit density matrix.
///
/// Constructors that promise a physical state validate it; [`x_to_density`]
/// and [`DensityMatrix::from_matrix_unchecked`] do not, since some published
/// X-form parameterisations are not positive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix<T> {
    m: Mat4<T>,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(m: Mat4<T>) -> Result<Self> {
        let rho = Self { m };
        rho.validate()?;
        Ok(rho)
    }

    pub fn from_matrix_unchecked(m: Mat4<T>) -> Self {
        Self { m }
    }

    pub fn maximally_mixed() -> Self {
        Self {
            m: Mat4::identity().scale(T::lit(0.25)),
        }
    }

    /// Projector onto a normalised ket.
    pub fn pure(ket: &[C<T>; 4]) -> Self {
        Self {
            m: Mat4::outer(ket, ket),
        }
    }

    pub fn matrix(&self) -> &Mat4<T> {
        &self.m
    }

    pub fn into_matrix(self) -> Mat4<T> {
        self.m
    }

    pub fn trace(&self) -> T {
        self.m.trace().re
    }

    pub fn min_eigenvalue(&self) -> Result<T> {
        Ok(jacobi_eigh(&self.m)?.values[3])
    }

    /// Hermitian within `tol_entry`, unit trace within `tol_entry`, smallest
    /// eigenvalue ≥ `-tol_psd`.
    pub fn validate(&self) -> Result<()> {
        self.validate_hermitian_trace()?;
        let min = self.min_eigenvalue()?;
        if min < -T::tol_psd() {
            return Err(Error::InvalidParameters(format!(
                "state is not positive semidefinite (min eigenvalue {min})"
            )));
        }
        Ok(())
    }

    pub fn validate_hermitian_trace(&self) -> Result<()> {
        let herm = self.m.hermiticity_error();
        if herm > T::tol_entry() {
            return Err(Error::InvalidParameters(format!(
                "matrix is not Hermitian (deviation {herm})"
            )));
        }
        let tr = self.m.trace();
        if (tr.re - T::one()).abs() > T::tol_entry() || tr.im.abs() > T::tol_entry() {
            return Err(Error::InvalidParameters(format!(
                "trace {tr} differs from 1"
            )));
        }
        Ok(())
    }

    /// Largest modulus among entries outside the X pattern.
    pub fn off_x_magnitude(&self) -> T {
        let mut worst = T::zero();
        for i in 0..4 {
            for j in 0..4 {
                if i != j && i + j != 3 {
                    worst = worst.max(self.m[(i, j)].norm());
                }
            }
        }
        worst
    }

    /// Reads the X-pattern entries; anything else is dropped.
    pub fn to_x_state(&self) -> XState<T> {
        XState {
            r11: self.m[(0, 0)].re,
            r22: self.m[(1, 1)].re,
            r33: self.m[(2, 2)].re,
            r44: self.m[(3, 3)].re,
            c14: self.m[(0, 3)],
            c23: self.m[(1, 2)],
        }
    }

    /// `(U_Y ⊗ U_Ȳ) ρ (U_Y ⊗ U_Ȳ)†`.
    pub fn conjugate_local(
        &self,
        u_y: &crate::linalg::Mat2<T>,
        u_ybar: &crate::linalg::Mat2<T>,
    ) -> Self {
        let u = kron(u_y, u_ybar);
        Self {
            m: u * self.m * u.adjoint(),
        }
    }
}

/// `ρ = ¼ Σ Θ_{μν̄} τ_μ ⊗ τ_ν̄`; fails if the result is not positive.
pub fn density_from_theta<T: Real>(theta: &ThetaMatrix<T>) -> Result<DensityMatrix<T>> {
    let mut m = Mat4::zeros();
    for mu in 0..4 {
        for nu in 0..4 {
            let w = theta.entries[mu][nu];
            if w != T::zero() {
                m = m + kron(&pauli(mu), &pauli(nu)).scale(w);
            }
        }
    }
    let rho = DensityMatrix::from_matrix_unchecked(m.scale(T::lit(0.25)));
    rho.validate()?;
    Ok(rho)
}

/// X-form state: populations on the diagonal, coherences on the anti-diagonal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct XState<T> {
    pub r11: T,
    pub r22: T,
    pub r33: T,
    pub r44: T,
    pub c14: C<T>,
    pub c23: C<T>,
}

impl<T: Real> XState<T> {
    pub fn maximally_mixed() -> Self {
        let q = T::lit(0.25);
        Self {
            r11: q,
            r22: q,
            r33: q,
            r44: q,
            c14: czero(),
            c23: czero(),
        }
    }

    /// Singlet `(|01⟩ − |10⟩)/√2`.
    pub fn singlet() -> Self {
        let h = T::half();
        Self {
            r11: T::zero(),
            r22: h,
            r33: h,
            r44: T::zero(),
            c14: czero(),
            c23: re(-h),
        }
    }

    /// `(|00⟩ + |11⟩)/√2`.
    pub fn phi_plus() -> Self {
        let h = T::half();
        Self {
            r11: h,
            r22: T::zero(),
            r33: T::zero(),
            r44: h,
            c14: re(h),
            c23: czero(),
        }
    }

    pub fn diagonal(d: [T; 4]) -> Self {
        Self {
            r11: d[0],
            r22: d[1],
            r33: d[2],
            r44: d[3],
            c14: czero(),
            c23: czero(),
        }
    }

    pub fn trace(&self) -> T {
        self.r11 + self.r22 + self.r33 + self.r44
    }

    /// Unit trace, nonnegative populations and the two 2×2 positivity
    /// conditions `r11·r44 ≥ |c14|²`, `r22·r33 ≥ |c23|²`.
    pub fn check(&self) -> Result<()> {
        let tol = T::tol_entry();
        if (self.trace() - T::one()).abs() > tol {
            return Err(Error::InvalidParameters(format!(
                "X state trace {} differs from 1",
                self.trace()
            )));
        }
        for (k, r) in [self.r11, self.r22, self.r33, self.r44]
            .into_iter()
            .enumerate()
        {
            if r < -tol {
                return Err(Error::InvalidParameters(format!(
                    "population r{0}{0} = {r} is negative",
                    k + 1
                )));
            }
        }
        if self.r11 * self.r44 < self.c14.norm_sqr() - tol {
            return Err(Error::InvalidParameters(format!(
                "outer block not positive: r11·r44 = {} < |c14|² = {}",
                self.r11 * self.r44,
                self.c14.norm_sqr()
            )));
        }
        if self.r22 * self.r33 < self.c23.norm_sqr() - tol {
            return Err(Error::InvalidParameters(format!(
                "inner block not positive: r22·r33 = {} < |c23|² = {}",
                self.r22 * self.r33,
                self.c23.norm_sqr()
            )));
        }
        Ok(())
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        [
            (self.r11 - other.r11).abs(),
            (self.r22 - other.r22).abs(),
            (self.r33 - other.r33).abs(),
            (self.r44 - other.r44).abs(),
            (self.c14 - other.c14).norm(),
            (self.c23 - other.c23).norm(),
        ]
        .into_iter()
        .fold(T::zero(), T::max)
    }
}

/// Which parameterisation of the X-form elements to use.
///
/// All three share `B₃ = −α sin²φ / D` with `D = 1 + α cos²φ` and differ in
/// `A` and in the square root inside `B₁,₂`:
///
/// | variant         | `A`                  | square-root argument               |
/// |-----------------|----------------------|------------------------------------|
/// | `Printed`       | `β sin²φ cosφ / D`   | `(1 + α cos²2φ)² − β² sin²2φ`      |
/// | `BlockEigen`    | `β sin²φ cosφ / D`   | `(1 + α cos 2φ)² − β² sin²2φ`      |
/// | `LocalUnitary`  | `β sinφ cosφ / D`    | `(1 + α cos 2φ)² − β² sin²2φ`      |
///
/// `BlockEigen` makes `B₁,₂` the exact eigenvalues of the transverse
/// correlation block and is the form whose angular maxima of LN, LQU and
/// LQFI match the published tables. `LocalUnitary` is the exact local-unitary
/// image of [`density_from_theta`]. `Printed` reproduces the published
/// `φ = π/2` golden matrix but is not positive semidefinite for `α_ψ > 0`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum XForm {
    Printed,
    #[default]
    BlockEigen,
    LocalUnitary,
}

impl XForm {
    pub const ALL: [XForm; 3] = [XForm::Printed, XForm::BlockEigen, XForm::LocalUnitary];

    pub fn name(self) -> &'static str {
        match self {
            XForm::Printed => "printed",
            XForm::BlockEigen => "block-eigen",
            XForm::LocalUnitary => "local-unitary",
        }
    }
}

/// The mixing amplitudes `(A, B₁, B₂, B₃)` of the symmetric X form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct XCoefficients<T> {
    pub a: T,
    pub b1: T,
    pub b2: T,
    pub b3: T,
}

pub fn x_coefficients<T: Real>(
    params: &HyperonParams<T>,
    scatter_angle: T,
    form: XForm,
) -> Result<XCoefficients<T>> {
    check_scatter_angle(scatter_angle)?;
    let alpha = params.alpha_psi;
    let beta = params.beta_psi;
    let (s, cs) = scatter_angle.sin_cos();
    let (s2, c2) = (T::two() * scatter_angle).sin_cos();
    let den = T::one() + alpha * cs * cs;

    let a = match form {
        XForm::Printed | XForm::BlockEigen => beta * s * s * cs / den,
        XForm::LocalUnitary => beta * s * cs / den,
    };
    let inner = match form {
        XForm::Printed => T::one() + alpha * c2 * c2,
        XForm::BlockEigen | XForm::LocalUnitary => T::one() + alpha * c2,
    };
    let mut disc = inner * inner - beta * beta * s2 * s2;
    if disc < T::zero() {
        if disc < -T::tol_entry() {
            return Err(Error::Domain {
                what: "B₁,₂ discriminant",
                value: disc.to_f64().unwrap_or(f64::NAN),
                range: "[0, ∞) (alpha_psi, delta_phi, scatter_angle give no real B₁,₂)",
            });
        }
        disc = T::zero();
    }
    let root = disc.sqrt();
    let b1 = (T::one() + alpha + root) / (T::two() * den);
    let b2 = (T::one() + alpha - root) / (T::two() * den);
    let b3 = -alpha * s * s / den;
    Ok(XCoefficients { a, b1, b2, b3 })
}

/// X-form state in the default [`XForm::BlockEigen`] parameterisation.
pub fn x_state<T: Real>(params: &HyperonParams<T>, scatter_angle: T) -> Result<XState<T>> {
    x_state_with(params, scatter_angle, XForm::default())
}

pub fn x_state_with<T: Real>(
    params: &HyperonParams<T>,
    scatter_angle: T,
    form: XForm,
) -> Result<XState<T>> {
    let k = x_coefficients(params, scatter_angle, form)?;
    Ok(x_state_from_coefficients(&k))
}

pub fn x_state_from_coefficients<T: Real>(k: &XCoefficients<T>) -> XState<T> {
    let q = T::lit(0.25);
    let one = T::one();
    let two = T::two();
    XState {
        r11: q * (one + two * k.a + k.b3),
        r22: q * (one - k.b3),
        r33: q * (one - k.b3),
        r44: q * (one - two * k.a + k.b3),
        c14: re(q * (k.b1 - k.b2)),
        c23: re(q * (k.b1 + k.b2)),
    }
}

/// Embeds an X state into a 4×4 matrix. No positivity check.
pub fn x_to_density<T: Real>(x: &XState<T>) -> DensityMatrix<T> {
    let mut m = Mat4::zeros();
    m[(0, 0)] = re(x.r11);
    m[(1, 1)] = re(x.r22);
    m[(2, 2)] = re(x.r33);
    m[(3, 3)] = re(x.r44);
    m[(0, 3)] = x.c14;
    m[(3, 0)] = x.c14.conj();
    m[(1, 2)] = x.c23;
    m[(2, 1)] = x.c23.conj();
    DensityMatrix::from_matrix_unchecked(m)
}

/// Single-qubit rotation `exp(−i angle σ_axis / 2)`.
pub fn rotation<T: Real>(axis: usize, angle: T) -> crate::linalg::Mat2<T> {
    let (s, cs) = (T::half() * angle).sin_cos();
    let mut u = crate::linalg::Mat2::identity().scale(cs);
    let p = pauli::<T>(axis);
    for i in 0..2 {
        for j in 0..2 {
            u[(i, j)] = u[(i, j)] + p[(i, j)] * c(T::zero(), -s);
        }
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn lambda() -> HyperonParams<f64> {
        Species::Lambda.params::<f64>()
    }

    #[test]
    fn derive_aux_examples() {
        assert_eq!(derive_aux(0.0, 0.0).unwrap(), (0.0, 1.0));
        let (b, g) = derive_aux(1.0, 0.6).unwrap();
        assert_eq!((b, g), (0.0, 0.0));
        let (b, g) = derive_aux(0.475, 0.752).unwrap();
        assert!((b * b + g * g - (1.0 - 0.475f64.powi(2))).abs() < 1e-12);
        assert!(matches!(derive_aux(1.2, 0.0), Err(Error::Domain { .. })));
        assert!(HyperonParams::new("bad", 0.1, 4.0).is_err());
    }

    #[test]
    fn builtin_species_values() {
        let p = Species::XiMinus.params::<f64>();
        assert_eq!((p.alpha_psi(), p.delta_phi()), (0.586, 1.213));
        assert_eq!(Species::from_name("sigmaplus").unwrap(), Species::SigmaPlus);
        assert!(matches!(Species::from_name("Omega"), Err(Error::Usage(_))));
    }

    #[test]
    fn theta_at_right_angle_and_forward() {
        for sp in Species::ALL {
            let p = sp.params::<f64>();
            let t = theta_matrix(&p, PI / 2.0).unwrap().entries;
            assert!(t[0][2].abs() < 1e-16 && t[1][3].abs() < 1e-16);
            assert!((t[1][1] - 1.0).abs() < 1e-15);
            assert!((t[2][2] + p.alpha_psi()).abs() < 1e-15);
            assert!((t[3][3] - p.alpha_psi()).abs() < 1e-15);
            let t0 = theta_matrix(&p, 0.0).unwrap().entries;
            assert_eq!(t0[1][1], 0.0);
            assert!((t0[3][3] - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn theta_only_allowed_slots() {
        let t = theta_matrix(&lambda(), 0.7).unwrap().entries;
        let allowed = [
            (0, 0),
            (1, 1),
            (2, 2),
            (3, 3),
            (0, 2),
            (2, 0),
            (1, 3),
            (3, 1),
        ];
        for i in 0..4 {
            for j in 0..4 {
                if !allowed.contains(&(i, j)) {
                    assert_eq!(t[i][j], 0.0);
                }
            }
        }
        assert_eq!(t[0][2], t[2][0]);
        assert_eq!(t[1][3], t[3][1]);
        assert!(theta_matrix(&lambda(), 3.5).is_err());
    }

    #[test]
    fn polarization_matches_theta_slot() {
        let p = lambda();
        assert_eq!(polarization(&p, 0.0).unwrap(), 0.0);
        assert!(polarization(&p, PI / 2.0).unwrap().abs() < 1e-16);
        let at45 = polarization(&p, PI / 4.0).unwrap();
        let expect = p.beta_psi() / (2.0 * (1.0 + p.alpha_psi() / 2.0));
        assert!((at45 - expect).abs() < 1e-15);
        for phi in [0.3, 1.1, 2.5] {
            let t = theta_matrix(&p, phi).unwrap();
            assert_eq!(polarization(&p, phi).unwrap(), t.entries[0][2]);
        }
    }

    #[test]
    fn identity_theta_gives_maximally_mixed() {
        let rho = density_from_theta(&ThetaMatrix::<f64>::identity_only(0.0)).unwrap();
        assert!(
            rho.matrix()
                .max_abs_diff(DensityMatrix::maximally_mixed().matrix())
                < 1e-16
        );
    }

    #[test]
    fn sigma_plus_right_angle_block_pattern() {
        // ¼(I + XX − α YY + α ZZ): diagonal (1±α)/4, anti-diagonal (1 ± α)/4.
        let p = Species::SigmaPlus.params::<f64>();
        let a = p.alpha_psi();
        let rho = density_from_theta(&theta_matrix(&p, PI / 2.0).unwrap()).unwrap();
        let m = rho.matrix();
        let q = 0.25;
        assert!((m[(0, 0)].re - q * (1.0 + a)).abs() < 1e-15);
        assert!((m[(1, 1)].re - q * (1.0 - a)).abs() < 1e-15);
        assert!((m[(0, 3)].re - q * (1.0 + a)).abs() < 1e-15);
        assert!((m[(1, 2)].re - q * (1.0 - a)).abs() < 1e-15);
        assert!(rho.off_x_magnitude() < 1e-16);
    }

    #[test]
    fn printed_form_reproduces_golden_matrix() {
        let x = x_state_with(&lambda(), PI / 2.0, XForm::Printed).unwrap();
        assert!((x.r11 - 0.13125).abs() < 1e-15);
        assert!((x.r44 - 0.13125).abs() < 1e-15);
        for v in [x.r22, x.r33, x.c14.re, x.c23.re] {
            assert!((v - 0.36875).abs() < 1e-15);
        }
        // and it is not a physical state
        assert!(x.check().is_err());
    }

    #[test]
    fn block_eigen_form_at_right_angle() {
        let a = 0.475;
        let x = x_state(&lambda(), PI / 2.0).unwrap();
        assert!((x.r11 - (1.0 - a) / 4.0).abs() < 1e-15);
        assert!((x.c14.re - (1.0 - a) / 4.0).abs() < 1e-15);
        assert!((x.c23.re - (1.0 + a) / 4.0).abs() < 1e-15);
        x.check().unwrap();
    }

    #[test]
    fn forward_angle_collapses_all_forms() {
        for form in XForm::ALL {
            for sp in Species::ALL {
                let p = sp.params::<f64>();
                let k = x_coefficients(&p, 0.0, form).unwrap();
                assert!((k.b1 - 1.0).abs() < 1e-15);
                assert!(k.b2.abs() < 1e-15 && k.b3.abs() < 1e-15 && k.a.abs() < 1e-15);
                let x = x_state_from_coefficients(&k);
                for v in [x.r11, x.r22, x.r33, x.r44, x.c14.re, x.c23.re] {
                    assert!((v - 0.25).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn xi_minus_independent_scalar_evaluation() {
        // Written out longhand from α = 0.586, ΔΦ = 1.213, φ = π/3.
        let alpha: f64 = 0.586;
        let beta = (1.0 - alpha * alpha).sqrt() * 1.213f64.sin();
        let phi = PI / 3.0;
        let cos2 = 0.25; // cos²(π/3)
        let sin2 = 0.75;
        let d = 1.0 + alpha * cos2;
        let a_coef = beta * sin2 * 0.5 / d;
        let root = ((1.0 - alpha / 2.0).powi(2) - beta * beta * 0.75).sqrt();
        let b1 = (1.0 + alpha + root) / (2.0 * d);
        let b2 = (1.0 + alpha - root) / (2.0 * d);
        let b3 = -alpha * sin2 / d;
        let x = x_state(&Species::XiMinus.params::<f64>(), phi).unwrap();
        assert!((x.r11 - 0.25 * (1.0 + 2.0 * a_coef + b3)).abs() < 1e-14);
        assert!((x.r44 - 0.25 * (1.0 - 2.0 * a_coef + b3)).abs() < 1e-14);
        assert!((x.r22 - 0.25 * (1.0 - b3)).abs() < 1e-14);
        assert!((x.c14.re - 0.25 * (b1 - b2)).abs() < 1e-14);
        assert!((x.c23.re - 0.25 * (b1 + b2)).abs() < 1e-14);
    }

    #[test]
    fn x_to_density_examples() {
        let mm = x_to_density(&XState::<f64>::maximally_mixed());
        assert!(
            mm.matrix()
                .max_abs_diff(DensityMatrix::maximally_mixed().matrix())
                < 1e-16
        );
        let s = x_to_density(&XState::<f64>::singlet());
        let sq = *s.matrix() * *s.matrix();
        assert!(sq.max_abs_diff(s.matrix()) < 1e-16);
        s.validate().unwrap();
    }

    #[test]
    fn local_unitary_form_is_theta_state_in_rotated_frame() {
        // Rotate by π/2 about x (y → z), then about z to diagonalise the transverse block.
        for sp in Species::ALL {
            let p = sp.params::<f64>();
            for phi in [0.2, 0.9, 1.7, 2.6] {
                let rho = density_from_theta(&theta_matrix(&p, phi).unwrap()).unwrap();
                let x = x_state_with(&p, phi, XForm::LocalUnitary).unwrap();
                let spec_x = crate::oracle::eigh4(&x_to_density(&x)).unwrap();
                let spec_t = crate::oracle::eigh4(&rho).unwrap();
                for k in 0..4 {
                    assert!((spec_x.eigenvalues[k] - spec_t.eigenvalues[k]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn rotation_is_unitary() {
        let u = rotation::<f64>(2, 0.83);
        assert!((u * u.adjoint()).max_abs_diff(&crate::linalg::Mat2::identity()) < 1e-15);
    }
}
