use std::f64::consts::{FRAC_PI_2, PI};

use hyperon_qi::channels::{apply_symmetric, channel_xstate, ChannelKind, QubitChannel};
use hyperon_qi::measures::{lqfi_x, lqu_x, negativity_x};
use hyperon_qi::oracle::{fidelity_uhlmann, lqfi_generic, lqu_spectral, negativity_generic};
use hyperon_qi::spin_state::{
    density_from_theta, rotation, theta_matrix, x_state, x_to_density, DensityMatrix, Species,
    XState,
};
use hyperon_qi::teleport::{input_density, teleport_generic, teleport_x_closed, InputState};
use num_complex::Complex;
use proptest::prelude::*;

fn species() -> impl Strategy<Value = Species> {
    prop::sample::select(Species::ALL.to_vec())
}

fn channel() -> impl Strategy<Value = ChannelKind> {
    prop::sample::select(ChannelKind::ALL.to_vec())
}

/// Random positive semidefinite X state with complex coherences.
fn x_states() -> impl Strategy<Value = XState<f64>> {
    (
        prop::array::uniform4(0.01f64..1.0),
        0.0f64..=1.0,
        0.0f64..=1.0,
        0.0..2.0 * PI,
        0.0..2.0 * PI,
    )
        .prop_map(|(w, t14, t23, p14, p23)| {
            let sum: f64 = w.iter().sum();
            let [r11, r22, r33, r44] = w.map(|v| v / sum);
            let c14 = Complex::from_polar(t14 * (r11 * r44).sqrt(), p14);
            let c23 = Complex::from_polar(t23 * (r22 * r33).sqrt(), p23);
            XState {
                r11,
                r22,
                r33,
                r44,
                c14,
                c23,
            }
        })
}

fn theta_state(sp: Species, phi: f64) -> DensityMatrix<f64> {
    density_from_theta(&theta_matrix(&sp.params(), phi).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn theta_states_are_valid(sp in species(), phi in 0.0..=PI) {
        let rho = theta_state(sp, phi);
        prop_assert!(rho.validate().is_ok());
        prop_assert!((rho.trace() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn x_states_from_species_are_valid(sp in species(), phi in 0.0..=PI) {
        let x = x_state(&sp.params::<f64>(), phi).unwrap();
        prop_assert!(x.check().is_ok());
        prop_assert!(x_to_density(&x).validate().is_ok());
    }

    #[test]
    fn closed_forms_agree_with_oracle(x in x_states()) {
        let rho = x_to_density(&x);
        prop_assert!((negativity_x(&x) - negativity_generic(&rho).unwrap()).abs() < 1e-10);
        prop_assert!((lqu_x(&x).unwrap() - lqu_spectral(&rho).unwrap()).abs() < 1e-8);
        prop_assert!((lqfi_x(&x).unwrap() - lqfi_generic(&rho).unwrap()).abs() < 1e-8);
    }

    #[test]
    fn lqu_bounded_by_lqfi(x in x_states()) {
        let lqu = lqu_x(&x).unwrap();
        let lqfi = lqfi_x(&x).unwrap();
        prop_assert!((0.0..=1.0).contains(&lqu));
        prop_assert!((0.0..=1.0).contains(&lqfi));
        prop_assert!(lqu <= lqfi + 1e-9);
    }

    #[test]
    fn channel_closed_forms_match_kraus(x in x_states(), kind in channel(), s in 0.0f64..=1.0) {
        let closed = x_to_density(&channel_xstate(kind, &x, s).unwrap());
        let kraus = apply_symmetric(&QubitChannel::new(kind, s).unwrap(), &x_to_density(&x)).unwrap();
        prop_assert!(closed.matrix().max_abs_diff(kraus.matrix()) < 1e-12);
        prop_assert!(kraus.validate().is_ok());
    }

    #[test]
    fn negativity_never_grows_under_channels(sp in species(), phi in 0.0..=PI, kind in channel(), s in 0.0f64..=1.0) {
        let rho = theta_state(sp, phi);
        let out = apply_symmetric(&QubitChannel::new(kind, s).unwrap(), &rho).unwrap();
        prop_assert!(negativity_generic(&out).unwrap() <= negativity_generic(&rho).unwrap() + 1e-12);
    }

    #[test]
    fn local_unitaries_preserve_measures(
        sp in species(),
        phi in 0.0..=PI,
        a in prop::array::uniform3(0.0..2.0 * PI),
        b in prop::array::uniform3(0.0..2.0 * PI),
    ) {
        let rho = theta_state(sp, phi);
        let u = rotation(2, a[0]) * rotation(1, a[1]) * rotation(2, a[2]);
        let v = rotation(2, b[0]) * rotation(1, b[1]) * rotation(2, b[2]);
        let rot = rho.conjugate_local(&u, &v);
        prop_assert!((negativity_generic(&rho).unwrap() - negativity_generic(&rot).unwrap()).abs() < 1e-9);
        prop_assert!((lqu_spectral(&rho).unwrap() - lqu_spectral(&rot).unwrap()).abs() < 1e-9);
        prop_assert!((lqfi_generic(&rho).unwrap() - lqfi_generic(&rot).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn teleported_states_are_valid(x in x_states(), theta in 0.0..=PI, phase in 0.0..=2.0 * PI) {
        let inp = InputState::new(theta, phase).unwrap();
        let out = teleport_generic(&x_to_density(&x), &inp).unwrap();
        let f = fidelity_uhlmann(&input_density(&inp), &out).unwrap();
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&f));
    }

    #[test]
    fn closed_teleport_matches_generic_at_right_angle(sp in species(), phi in 0.0..=PI, phase in 0.0..=2.0 * PI) {
        let x = x_state(&sp.params::<f64>(), phi).unwrap();
        let inp = InputState::new(FRAC_PI_2, phase).unwrap();
        let closed = x_to_density(&teleport_x_closed(&x, &inp));
        let generic = teleport_generic(&x_to_density(&x), &inp).unwrap();
        prop_assert!(closed.matrix().max_abs_diff(generic.matrix()) < 1e-12);
    }

    #[test]
    fn single_precision_tracks_double(sp in species(), phi in 0.0f64..=PI) {
        let x64 = x_state(&sp.params::<f64>(), phi).unwrap();
        let x32 = x_state(&sp.params::<f32>(), phi as f32).unwrap();
        prop_assert!((negativity_x(&x64) - negativity_x(&x32) as f64).abs() < 1e-5);
        prop_assert!((lqu_x(&x64).unwrap() - lqu_x(&x32).unwrap() as f64).abs() < 1e-4);
        prop_assert!((lqfi_x(&x64).unwrap() - lqfi_x(&x32).unwrap() as f64).abs() < 1e-4);
    }
}
