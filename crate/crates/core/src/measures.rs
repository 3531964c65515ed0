//! Closed-form negativity, local quantum uncertainty and local quantum
//! Fisher information of X states.
//!
//! Degenerate configurations where a closed form divides by zero are
//! evaluated through [`crate::oracle`] instead; the returned [`Evaluated`]
//! records when that happened.

use crate::error::{Error, Result};
use crate::oracle;
use crate::scalar::Real;
use crate::spin_state::{x_to_density, XState};

/// Negativity (`ln`, as `max{0, −2μ_min}`), LQU and LQFI of one state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorrelationTriple<T> {
    pub ln: T,
    pub lqu: T,
    pub lqfi: T,
}

impl<T: Real> CorrelationTriple<T> {
    /// Ranges and the ordering `lqu ≤ lqfi + 1e−9`.
    pub fn check(&self) -> Result<()> {
        for (name, v) in [("ln", self.ln), ("lqu", self.lqu), ("lqfi", self.lqfi)] {
            if !(v >= T::zero() && v <= T::one()) {
                return Err(Error::Consistency(format!("{name} = {v} outside [0, 1]")));
            }
        }
        if self.lqu > self.lqfi + T::lit(1e-9) {
            return Err(Error::Consistency(format!(
                "lqu {} exceeds lqfi {}",
                self.lqu, self.lqfi
            )));
        }
        Ok(())
    }
}

/// A closed-form value and whether the oracle had to stand in for it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluated<T> {
    pub value: T,
    pub oracle_fallback: bool,
}

fn clamp01<T: Real>(x: T) -> T {
    x.max(T::zero()).min(T::one())
}

fn nonneg<T: Real>(g: T) -> Result<T> {
    if g >= T::zero() {
        Ok(g)
    } else if g >= -T::tol_psd() {
        Ok(T::zero())
    } else {
        Err(Error::InvalidParameters(format!(
            "X state has eigenvalue {g}; it is not positive semidefinite"
        )))
    }
}

/// `(λ₊, λ₋)` of `[[a, z], [z*, b]]`.
fn pair<T: Real>(a: T, b: T, z_abs: T) -> (T, T) {
    let mid = T::half() * (a + b);
    let r = T::half() * ((a - b) * (a - b) + T::lit(4.0) * z_abs * z_abs).sqrt();
    (mid + r, mid - r)
}

/// Partial-transpose spectrum: the outer block pairs with `|c23|`, the
/// inner one with `|c14|`.
pub fn partial_transpose_spectrum<T: Real>(x: &XState<T>) -> [T; 4] {
    let (o1, o2) = pair(x.r11, x.r44, x.c23.norm());
    let (i1, i2) = pair(x.r22, x.r33, x.c14.norm());
    [o1, o2, i1, i2]
}

pub fn negativity_x<T: Real>(x: &XState<T>) -> T {
    let mu_min = partial_transpose_spectrum(x)
        .into_iter()
        .fold(T::infinity(), T::min);
    clamp01(-T::two() * mu_min)
}

/// State eigenvalues `γ₁…γ₄`, clamped at the PSD tolerance. Values at
/// rounding level relative to the largest are zeroed, as in
/// [`oracle::clamped_spectrum`].
pub fn x_spectrum<T: Real>(x: &XState<T>) -> Result<[T; 4]> {
    let (g1, g2) = pair(x.r11, x.r44, x.c14.norm());
    let (g3, g4) = pair(x.r22, x.r33, x.c23.norm());
    let noise = T::lit(16.0) * T::epsilon() * g1.max(g3).abs();
    let mut g = [g1, g2, g3, g4];
    for v in g.iter_mut() {
        *v = if v.abs() <= noise {
            T::zero()
        } else {
            nonneg(*v)?
        };
    }
    Ok(g)
}

/// Diagonal of the W matrix, `[W_xx, W_yy, W_zz]`; `None` when a
/// `√γ` pair sum is degenerate.
pub fn w_diagonal<T: Real>(x: &XState<T>) -> Result<Option<[T; 3]>> {
    let g = x_spectrum(x)?;
    let u = g[0].sqrt() + g[1].sqrt();
    let v = g[2].sqrt() + g[3].sqrt();
    if u < T::tol_degenerate() || v < T::tol_degenerate() {
        return Ok(None);
    }
    let four = T::lit(4.0);
    // Only the coherence term changes sign between W_xx and W_yy.
    let pop = (x.r22 - x.r33) * (x.r44 - x.r11);
    let coh = four * (x.c14 * x.c23).norm();
    let wxx = u * v + (pop + coh) / (u * v);
    let wyy = u * v + (pop - coh) / (u * v);
    let wzz = (u * u + v * v) / T::two()
        + ((x.r44 - x.r11).powi(2) - four * x.c14.norm_sqr()) / (T::two() * u * u)
        + ((x.r22 - x.r33).powi(2) - four * x.c23.norm_sqr()) / (T::two() * v * v);
    Ok(Some([wxx, wyy, wzz]))
}

/// `W_yy` with the whole fraction negated, kept for comparison. Agrees
/// with the corrected value whenever `r22 = r33`.
pub fn w_yy_alternate_sign<T: Real>(x: &XState<T>) -> Result<Option<T>> {
    let Some([wxx, _, _]) = w_diagonal(x)? else {
        return Ok(None);
    };
    let g = x_spectrum(x)?;
    let uv = (g[0].sqrt() + g[1].sqrt()) * (g[2].sqrt() + g[3].sqrt());
    Ok(Some(T::two() * uv - wxx))
}

/// `W_zz` with the opposite sign on its last term, kept for comparison.
pub fn w_zz_alternate_sign<T: Real>(x: &XState<T>) -> Result<Option<T>> {
    let Some([_, _, wzz]) = w_diagonal(x)? else {
        return Ok(None);
    };
    let g = x_spectrum(x)?;
    let v = g[2].sqrt() + g[3].sqrt();
    let last = ((x.r22 - x.r33).powi(2) - T::lit(4.0) * x.c23.norm_sqr()) / (T::two() * v * v);
    Ok(Some(wzz - T::two() * last))
}

pub fn lqu_x_detail<T: Real>(x: &XState<T>) -> Result<Evaluated<T>> {
    match w_diagonal(x)? {
        Some(w) => {
            let wmax = w.into_iter().fold(T::neg_infinity(), T::max);
            Ok(Evaluated {
                value: clamp01(T::one() - wmax),
                oracle_fallback: false,
            })
        }
        None => Ok(Evaluated {
            value: oracle::lqu_spectral(&x_to_density(x))?,
            oracle_fallback: true,
        }),
    }
}

/// `1 − max{W_xx, W_yy, W_zz}`.
pub fn lqu_x<T: Real>(x: &XState<T>) -> Result<T> {
    Ok(lqu_x_detail(x)?.value)
}

/// Diagonal of the M matrix, `[M_xx, M_yy, M_zz]`; `None` when the
/// reduced denominator is below `tol_pair`.
///
/// With unit trace, `M₃ = 16(γ₂+γ₄)(γ₁+γ₃)(γ₂+γ₃)(γ₁+γ₄)` and
/// `M₂ = (γ₂+γ₄)[γ₁γ₃ + (γ₁+γ₃)γ₂γ₄/(γ₂+γ₄)]`. The common factor is
/// cancelled before dividing, which keeps the ratio accurate where both
/// vanish (rank-two states near a right scattering angle).
pub fn m_diagonal<T: Real>(x: &XState<T>) -> Result<Option<[T; 3]>> {
    let [g1, g2, g3, g4] = x_spectrum(x)?;
    let den = (g1 + g3) * (g2 + g3) * (g1 + g4);
    if den < T::tol_pair() {
        return Ok(None);
    }
    let s24 = g2 + g4;
    let h = if s24 > T::zero() {
        g2 * g4 / s24
    } else {
        T::zero()
    };
    let ratio = T::lit(4.0) * (g1 * g3 + (g1 + g3) * h) / den;

    let base = x.r11 * x.r33 + x.r22 * x.r44 + g1 * g2 + g3 * g4;
    let coh = T::two() * (x.c14 * x.c23).norm();
    let t1 = x.r11 + x.r44;
    let t2 = x.r22 + x.r33;
    let block = |t: T, c: T| {
        if t <= T::tol_pair() {
            T::zero()
        } else {
            t - T::lit(4.0) * c / t
        }
    };
    let mzz = block(t1, x.c14.norm_sqr()) + block(t2, x.c23.norm_sqr());
    Ok(Some([(base + coh) * ratio, (base - coh) * ratio, mzz]))
}

/// `64·M₁·M₂/M₃` evaluated literally, kept to compare against the reduced
/// form in [`m_diagonal`].
pub fn m_xx_unreduced<T: Real>(x: &XState<T>) -> Result<T> {
    let g = x_spectrum(x)?;
    let d12 = g[0] - g[1];
    let d34 = g[2] - g[3];
    let m3 = (T::one() - d12 * d12 - d34 * d34).powi(2) - T::lit(4.0) * d12 * d12 * d34 * d34;
    let m1 = x.r11 * x.r33
        + x.r22 * x.r44
        + g[0] * g[1]
        + g[2] * g[3]
        + T::two() * (x.c14 * x.c23).norm();
    let m2 = (x.r11 + x.r44) * g[2] * g[3] + (x.r22 + x.r33) * g[0] * g[1];
    Ok(T::lit(64.0) * m1 * m2 / m3)
}

/// `M_zz` in the form `1 − (|c14|/(r11+r44) + |c23|/(r22+r33))`, kept for
/// comparison with the spectral value.
pub fn m_zz_alternate<T: Real>(x: &XState<T>) -> T {
    T::one() - (x.c14.norm() / (x.r11 + x.r44) + x.c23.norm() / (x.r22 + x.r33))
}

pub fn lqfi_x_detail<T: Real>(x: &XState<T>) -> Result<Evaluated<T>> {
    match m_diagonal(x)? {
        Some(m) => {
            let mmax = m.into_iter().fold(T::neg_infinity(), T::max);
            Ok(Evaluated {
                value: clamp01(T::one() - mmax),
                oracle_fallback: false,
            })
        }
        None => Ok(Evaluated {
            value: oracle::lqfi_generic(&x_to_density(x))?,
            oracle_fallback: true,
        }),
    }
}

/// `1 − max{M_xx, M_yy, M_zz}`.
pub fn lqfi_x<T: Real>(x: &XState<T>) -> Result<T> {
    Ok(lqfi_x_detail(x)?.value)
}

pub fn correlation_triple<T: Real>(x: &XState<T>) -> Result<CorrelationTriple<T>> {
    Ok(CorrelationTriple {
        ln: negativity_x(x),
        lqu: lqu_x(x)?,
        lqfi: lqfi_x(x)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::re;
    use crate::spin_state::{x_state, x_state_with, Species, XForm};
    use std::f64::consts::PI;

    #[test]
    fn negativity_examples() {
        let x = x_state(&Species::Lambda.params::<f64>(), PI / 2.0).unwrap();
        assert!((negativity_x(&x) - 0.475).abs() < 1e-12);
        for sp in Species::ALL {
            let x0 = x_state(&sp.params(), 0.0).unwrap();
            assert_eq!(negativity_x(&x0), 0.0);
        }
        assert!((negativity_x(&XState::<f64>::singlet()) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn printed_golden_spectrum() {
        let a = 0.475;
        let x = x_state_with(&Species::Lambda.params::<f64>(), PI / 2.0, XForm::Printed).unwrap();
        let mut got = partial_transpose_spectrum(&x);
        got.sort_by(|p, q| q.partial_cmp(p).unwrap());
        let mut want = [0.5, -a / 2.0, (1.0 + a) / 2.0, 0.0];
        want.sort_by(|p, q| q.partial_cmp(p).unwrap());
        for k in 0..4 {
            assert!((got[k] - want[k]).abs() < 1e-12);
        }
        assert!((negativity_x(&x) - a).abs() < 1e-12);
    }

    #[test]
    fn classical_and_bell_extremes() {
        let d = XState::<f64>::diagonal([0.1, 0.2, 0.3, 0.4]);
        assert!(lqu_x(&d).unwrap().abs() < 1e-12);
        assert!(lqfi_x(&d).unwrap().abs() < 1e-12);
        let b = XState::<f64>::singlet();
        let t = correlation_triple(&b).unwrap();
        assert!((t.ln - 1.0).abs() < 1e-12);
        assert!((t.lqu - 1.0).abs() < 1e-9);
        assert!((t.lqfi - 1.0).abs() < 1e-9);
        assert!(lqfi_x_detail(&b).unwrap().oracle_fallback);
        let mm = correlation_triple(&XState::<f64>::maximally_mixed()).unwrap();
        assert_eq!((mm.ln, mm.lqu, mm.lqfi), (0.0, 0.0, 0.0));
    }

    #[test]
    fn lambda_table_values() {
        let p = Species::Lambda.params::<f64>();
        let x = x_state(&p, 67.75f64.to_radians()).unwrap();
        assert!((lqu_x(&x).unwrap() - 0.1652).abs() < 1e-3);
        let x = x_state(&Species::XiMinus.params::<f64>(), 66.75f64.to_radians()).unwrap();
        assert!((lqfi_x(&x).unwrap() - 0.4417).abs() < 1e-3);
    }

    #[test]
    fn closed_forms_match_oracle_on_complex_coherences() {
        let x: XState<f64> = XState {
            r11: 0.3,
            r22: 0.25,
            r33: 0.15,
            r44: 0.3,
            c14: crate::linalg::c(0.1, 0.17),
            c23: crate::linalg::c(-0.12, 0.05),
        };
        x.check().unwrap();
        let rho = x_to_density(&x);
        assert!((negativity_x(&x) - oracle::negativity_generic(&rho).unwrap()).abs() < 1e-12);
        assert!((lqu_x(&x).unwrap() - oracle::lqu_spectral(&rho).unwrap()).abs() < 1e-12);
        assert!((lqfi_x(&x).unwrap() - oracle::lqfi_generic(&rho).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn degenerate_sqrt_sum_uses_oracle() {
        // One block is empty: u = 0.
        let x: XState<f64> = XState {
            r11: 0.0,
            r22: 0.5,
            r33: 0.5,
            r44: 0.0,
            c14: re(0.0),
            c23: re(0.3),
        };
        let e = lqu_x_detail(&x).unwrap();
        assert!(e.oracle_fallback);
        assert!((e.value - oracle::lqu_spectral(&x_to_density(&x)).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn non_psd_state_is_rejected() {
        let x = x_state_with(&Species::Lambda.params::<f64>(), PI / 2.0, XForm::Printed).unwrap();
        assert!(matches!(lqu_x(&x), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn w_signs_with_unequal_populations() {
        let x: XState<f64> = XState {
            r11: 0.49874531124260335,
            r22: 0.3610952328257343,
            r33: 0.006849362380104036,
            r44: 0.13331009355155818,
            c14: re(0.2343773551140023),
            c23: re(0.0),
        };
        let w = w_diagonal(&x).unwrap().unwrap();
        let o = oracle::w_matrix(&x_to_density(&x)).unwrap().0;
        for i in 0..3 {
            assert!(
                (w[i] - o[i][i]).abs() < 1e-12,
                "W[{i}] {} vs {}",
                w[i],
                o[i][i]
            );
        }
        let printed = w_yy_alternate_sign(&x).unwrap().unwrap();
        assert!((printed - o[1][1]).abs() > 0.1);
    }

    #[test]
    fn reduced_m_matches_unreduced_away_from_degeneracy() {
        for &phi in &[0.4, 1.0, 2.2] {
            let x = x_state(&Species::XiMinus.params::<f64>(), phi).unwrap();
            let m = m_diagonal(&x).unwrap().unwrap();
            let raw = m_xx_unreduced(&x).unwrap();
            assert!(
                (m[0] - raw).abs() < 1e-10 * raw.abs().max(1.0),
                "{} vs {raw}",
                m[0]
            );
        }
    }

    #[test]
    fn single_precision_lqfi_near_right_angle() {
        for &phi in &[1.5215f64, 1.55, PI / 2.0] {
            let x64 = x_state(&Species::SigmaPlus.params::<f64>(), phi).unwrap();
            let x32 = x_state(&Species::SigmaPlus.params::<f32>(), phi as f32).unwrap();
            let (a, b) = (lqfi_x(&x64).unwrap(), lqfi_x(&x32).unwrap() as f64);
            assert!((a - b).abs() < 1e-4, "φ = {phi}: {a} vs {b}");
        }
    }
}
