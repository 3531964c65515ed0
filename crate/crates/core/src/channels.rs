//! Single-qubit decoherence channels in Kraus form and their action on
//! two-qubit states.

use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};
use crate::linalg::{kron, re, Mat2, Mat4};
use crate::scalar::Real;
use crate::spin_state::{DensityMatrix, XState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum ChannelKind {
    #[default]
    Identity,
    AmplitudeDamping,
    PhaseFlip,
    PhaseDamping,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 4] = [
        ChannelKind::Identity,
        ChannelKind::AmplitudeDamping,
        ChannelKind::PhaseFlip,
        ChannelKind::PhaseDamping,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ChannelKind::Identity => "none",
            ChannelKind::AmplitudeDamping => "ad",
            ChannelKind::PhaseFlip => "pf",
            ChannelKind::PhaseDamping => "pd",
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ChannelKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "none" | "identity" => Ok(ChannelKind::Identity),
            "ad" => Ok(ChannelKind::AmplitudeDamping),
            "pf" => Ok(ChannelKind::PhaseFlip),
            "pd" => Ok(ChannelKind::PhaseDamping),
            _ => Err(Error::Usage(format!(
                "unknown channel '{s}'; valid: none, ad, pf, pd"
            ))),
        }
    }
}

/// Kraus representation of a single-qubit channel.
#[derive(Clone, Debug, PartialEq)]
pub struct QubitChannel<T> {
    pub kind: ChannelKind,
    pub s: T,
    pub kraus: Vec<Mat2<T>>,
}

impl<T: Real> QubitChannel<T> {
    pub fn identity() -> Self {
        Self {
            kind: ChannelKind::Identity,
            s: T::zero(),
            kraus: vec![Mat2::identity()],
        }
    }

    pub fn new(kind: ChannelKind, s: T) -> Result<Self> {
        match kind {
            ChannelKind::Identity => Ok(Self::identity()),
            ChannelKind::AmplitudeDamping => kraus_ad(s),
            ChannelKind::PhaseFlip => kraus_pf(s),
            ChannelKind::PhaseDamping => kraus_pd(s),
        }
    }

    /// Largest entry of `Σ K†K − I`.
    pub fn completeness_error(&self) -> T {
        let sum = self
            .kraus
            .iter()
            .fold(Mat2::zeros(), |acc, k| acc + k.adjoint() * *k);
        sum.max_abs_diff(&Mat2::identity())
    }

    pub fn apply_single(&self, m: &Mat2<T>) -> Mat2<T> {
        self.kraus
            .iter()
            .fold(Mat2::zeros(), |acc, k| acc + *k * *m * k.adjoint())
    }
}

fn check_s<T: Real>(s: T) -> Result<()> {
    if !(s >= T::zero() && s <= T::one()) {
        return Err(domain("s", s, "[0, 1]"));
    }
    Ok(())
}

fn diag2<T: Real>(a: T, b: T) -> Mat2<T> {
    Mat2::diag([a, b])
}

/// `K₁ = diag(1, √(1−s))`, `K₂ = √s |0⟩⟨1|`.
pub fn kraus_ad<T: Real>(s: T) -> Result<QubitChannel<T>> {
    check_s(s)?;
    let mut k2 = Mat2::zeros();
    k2[(0, 1)] = re(s.sqrt());
    Ok(QubitChannel {
        kind: ChannelKind::AmplitudeDamping,
        s,
        kraus: vec![diag2(T::one(), (T::one() - s).sqrt()), k2],
    })
}

/// `K₁ = √s I`, `K₂ = √(1−s) τ_z`.
pub fn kraus_pf<T: Real>(s: T) -> Result<QubitChannel<T>> {
    check_s(s)?;
    let a = s.sqrt();
    let b = (T::one() - s).sqrt();
    Ok(QubitChannel {
        kind: ChannelKind::PhaseFlip,
        s,
        kraus: vec![diag2(a, a), diag2(b, -b)],
    })
}

/// `K₁ = diag(1, √(1−s))`, `K₂ = diag(0, √s)`.
pub fn kraus_pd<T: Real>(s: T) -> Result<QubitChannel<T>> {
    check_s(s)?;
    Ok(QubitChannel {
        kind: ChannelKind::PhaseDamping,
        s,
        kraus: vec![
            diag2(T::one(), (T::one() - s).sqrt()),
            diag2(T::zero(), s.sqrt()),
        ],
    })
}

/// Kraus product operators `K_k ⊗ K_l`.
pub fn product_kraus<T: Real>(ch_y: &QubitChannel<T>, ch_ybar: &QubitChannel<T>) -> Vec<Mat4<T>> {
    let mut out = Vec::with_capacity(ch_y.kraus.len() * ch_ybar.kraus.len());
    for a in &ch_y.kraus {
        for b in &ch_ybar.kraus {
            out.push(kron(a, b));
        }
    }
    out
}

/// `Σ_{k,l} (K_k ⊗ K_l) ρ (K_k ⊗ K_l)†`.
pub fn apply_product_channel<T: Real>(
    ch_y: &QubitChannel<T>,
    ch_ybar: &QubitChannel<T>,
    rho: &DensityMatrix<T>,
) -> Result<DensityMatrix<T>> {
    let m = product_kraus(ch_y, ch_ybar)
        .iter()
        .fold(Mat4::zeros(), |acc, k| {
            acc + *k * *rho.matrix() * k.adjoint()
        });
    let out = DensityMatrix::from_matrix_unchecked(m);
    out.validate().map_err(|e| {
        Error::Consistency(format!(
            "{}/{} channel output failed validation: {e}",
            ch_y.kind, ch_ybar.kind
        ))
    })?;
    Ok(out)
}

/// Same channel with the same `s` on both qubits.
pub fn apply_symmetric<T: Real>(
    ch: &QubitChannel<T>,
    rho: &DensityMatrix<T>,
) -> Result<DensityMatrix<T>> {
    apply_product_channel(ch, ch, rho)
}

/// Amplitude damping on both qubits in closed form. Populations `r22`
/// and `r33` are damped separately, so unequal values are handled too.
pub fn ad_xstate<T: Real>(x: &XState<T>, s: T) -> Result<XState<T>> {
    check_s(s)?;
    let one = T::one();
    Ok(XState {
        r11: x.r11 + s * (x.r22 + x.r33 + s * x.r44),
        r22: (one - s) * (x.r22 + s * x.r44),
        r33: (one - s) * (x.r33 + s * x.r44),
        r44: (one - s) * (one - s) * x.r44,
        c14: x.c14 * (one - s),
        c23: x.c23 * (one - s),
    })
}

/// Phase flip on both qubits in closed form: coherences scale by `(1−2s)²`.
pub fn pf_xstate<T: Real>(x: &XState<T>, s: T) -> Result<XState<T>> {
    check_s(s)?;
    let f = (T::one() - T::two() * s).powi(2);
    Ok(XState {
        c14: x.c14 * f,
        c23: x.c23 * f,
        ..*x
    })
}

/// Phase damping on both qubits in closed form: coherences scale by `1−s`.
pub fn pd_xstate<T: Real>(x: &XState<T>, s: T) -> Result<XState<T>> {
    check_s(s)?;
    let f = T::one() - s;
    Ok(XState {
        c14: x.c14 * f,
        c23: x.c23 * f,
        ..*x
    })
}

/// Dispatches to the closed form for `kind`.
pub fn channel_xstate<T: Real>(kind: ChannelKind, x: &XState<T>, s: T) -> Result<XState<T>> {
    match kind {
        ChannelKind::Identity => Ok(*x),
        ChannelKind::AmplitudeDamping => ad_xstate(x, s),
        ChannelKind::PhaseFlip => pf_xstate(x, s),
        ChannelKind::PhaseDamping => pd_xstate(x, s),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;
    use crate::spin_state::{density_from_theta, theta_matrix, x_state, x_to_density, Species};
    use std::f64::consts::PI;

    fn generic(kind: ChannelKind, x: &XState<f64>, s: f64) -> XState<f64> {
        let ch = QubitChannel::new(kind, s).unwrap();
        apply_symmetric(&ch, &x_to_density(x)).unwrap().to_x_state()
    }

    #[test]
    fn ad_kraus_examples() {
        let k = kraus_ad(0.0f64).unwrap();
        assert_eq!(k.kraus[0], Mat2::identity());
        assert_eq!(k.kraus[1], Mat2::zeros());
        let k = kraus_ad(1.0f64).unwrap();
        assert_eq!(k.kraus[0], Mat2::diag([1.0, 0.0]));
        assert_eq!(k.kraus[1][(0, 1)], re(1.0));
        assert!(kraus_ad(0.25f64).unwrap().completeness_error() < 1e-15);
        assert!(kraus_ad(1.5f64).is_err());
    }

    #[test]
    fn pf_kraus_examples() {
        let k = kraus_pf(1.0f64).unwrap();
        assert_eq!(k.kraus[0], Mat2::identity());
        assert_eq!(k.kraus[1], Mat2::zeros());
        let k = kraus_pf(0.0f64).unwrap();
        assert_eq!(k.kraus[1], Mat2::diag([1.0, -1.0]));
        let m = crate::linalg::Mat([[re(0.6), c(0.2, -0.3)], [c(0.2, 0.3), re(0.4)]]);
        let out = kraus_pf(0.5f64).unwrap().apply_single(&m);
        assert!(out[(0, 1)].norm() < 1e-16 && out[(1, 0)].norm() < 1e-16);
        assert!((out[(0, 0)].re - 0.6).abs() < 1e-15);
    }

    #[test]
    fn pd_kraus_examples() {
        let k = kraus_pd(0.0f64).unwrap();
        let m = crate::linalg::Mat([[re(0.6), c(0.2, -0.3)], [c(0.2, 0.3), re(0.4)]]);
        assert!(k.apply_single(&m).max_abs_diff(&m) < 1e-16);
        let out = kraus_pd(1.0f64).unwrap().apply_single(&m);
        assert_eq!(out[(0, 1)], re(0.0));
        assert!((out[(1, 1)].re - 0.4).abs() < 1e-16);
        assert!(kraus_pd(0.3f64).unwrap().completeness_error() < 1e-15);
    }

    #[test]
    fn identity_and_full_damping() {
        let rho = density_from_theta(&theta_matrix(&Species::XiZero.params::<f64>(), 0.8).unwrap())
            .unwrap();
        let id = QubitChannel::identity();
        let out = apply_product_channel(&id, &id, &rho).unwrap();
        assert!(out.matrix().max_abs_diff(rho.matrix()) < 1e-16);
        let ad = kraus_ad(1.0).unwrap();
        let out = apply_symmetric(&ad, &rho).unwrap();
        assert!(out.matrix().max_abs_diff(&Mat4::diag([1.0, 0.0, 0.0, 0.0])) < 1e-15);
    }

    #[test]
    fn closed_forms_match_kraus() {
        let lam = x_state(&Species::Lambda.params::<f64>(), PI / 2.0).unwrap();
        for s in [0.3, 0.4] {
            let a = ad_xstate(&lam, s).unwrap();
            assert!(a.max_abs_diff(&generic(ChannelKind::AmplitudeDamping, &lam, s)) < 1e-15);
        }
        let lam3 = x_state(&Species::Lambda.params::<f64>(), PI / 3.0).unwrap();
        let p = pf_xstate(&lam3, 0.2).unwrap();
        assert!(p.max_abs_diff(&generic(ChannelKind::PhaseFlip, &lam3, 0.2)) < 1e-15);
        let xi = x_state(&Species::XiMinus.params::<f64>(), PI / 2.0).unwrap();
        let d = pd_xstate(&xi, 0.6).unwrap();
        assert!(d.max_abs_diff(&generic(ChannelKind::PhaseDamping, &xi, 0.6)) < 1e-15);
    }

    #[test]
    fn closed_form_endpoints() {
        let x = x_state(&Species::XiZero.params::<f64>(), 1.1).unwrap();
        assert_eq!(ad_xstate(&x, 0.0).unwrap(), x);
        let full = ad_xstate(&x, 1.0).unwrap();
        assert!((full.r11 - 1.0).abs() < 1e-15);
        assert_eq!((full.r22, full.r44), (0.0, 0.0));
        let half = pf_xstate(&x, 0.5).unwrap();
        assert_eq!((half.c14, half.c23), (re(0.0), re(0.0)));
        assert_eq!(pf_xstate(&x, 1.0).unwrap(), pf_xstate(&x, 0.0).unwrap());
        assert_eq!(pd_xstate(&x, 0.0).unwrap(), x);
        let dephased = pd_xstate(&x, 1.0).unwrap();
        assert_eq!((dephased.c14, dephased.c23), (re(0.0), re(0.0)));
    }

    #[test]
    fn channel_names_parse() {
        for k in ChannelKind::ALL {
            assert_eq!(k.name().parse::<ChannelKind>().unwrap(), k);
        }
        assert!("bitflip".parse::<ChannelKind>().is_err());
    }
}
