//! The acceptance and consistency suite behind the `verify` command.
//!
//! Each criterion either passes or fails on pinned tolerances. Findings are
//! informational: they record where the reference tables or printed
//! formulas disagree with what the code computes, and never affect the
//! exit status.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channels::{apply_symmetric, channel_xstate, pf_xstate, ChannelKind, QubitChannel};
use crate::error::Result;
use crate::linalg::{partial_transpose_first, Mat2};
use crate::measures::{
    correlation_triple, lqu_x, m_diagonal, m_zz_alternate, negativity_x,
    partial_transpose_spectrum, w_diagonal, w_zz_alternate_sign, CorrelationTriple,
};
use crate::oracle::{
    eigh4_matrix, fidelity_uhlmann, lqfi_generic, lqu_generic, lqu_grid, lqu_spectral,
    negativity_generic,
};
use crate::spin_state::{
    density_from_theta, rotation, theta_matrix, x_state_with, x_to_density, DensityMatrix, Species,
    XForm, XState,
};
use crate::sweep::{
    emit, find_maxima, linspace, run_sweep, Engine, Format, Measure, StateSource, SweepSpec,
};
use crate::teleport::{
    bell_kets, fidelity_closed, input_density, input_density_with, teleport_generic,
    teleport_x_closed, InputLayout, InputState,
};

/// Table value tolerances and angle tolerances (degrees).
pub const LN_VALUE_TOL: f64 = 1e-3;
pub const LN_ANGLE_TOL_DEG: f64 = 0.1;
pub const TABLE_VALUE_TOL: f64 = 0.005;
pub const TABLE_ANGLE_TOL_DEG: f64 = 0.5;
pub const GOLDEN_TOL: f64 = 1e-12;
pub const CHANNEL_TOL: f64 = 1e-12;
pub const CHANNEL_SAMPLES: usize = 1000;
pub const MONOTONE_SLACK: f64 = 1e-12;
pub const ORDER_SLACK: f64 = 1e-9;
pub const RANGE_SLACK: f64 = 1e-9;
pub const LOCAL_UNITARY_TOL: f64 = 1e-9;
pub const LOCAL_UNITARY_SAMPLES: usize = 100;
pub const REFLECTION_TOL: f64 = 1e-10;
pub const LQU_PATH_TOL: f64 = 1e-6;
pub const BELL_TOL: f64 = 1e-9;
pub const CLASSICAL_TOL: f64 = 1e-12;
pub const MIXED_FIDELITY_TOL: f64 = 1e-12;
pub const PERFECT_FIDELITY_TOL: f64 = 1e-10;
/// Seed for every pseudo-random sample drawn by the suite.
pub const SEED: u64 = 0x5eed_2024;

pub const CRITERIA: [(usize, &str); 10] = [
    (1, "negativity maxima from the theta-matrix state"),
    (2, "LQU maxima and angles"),
    (3, "LQFI maxima and angles"),
    (4, "golden X state at a right scattering angle"),
    (5, "channel closed forms against Kraus sums"),
    (6, "decoherence trends of the Lambda pair"),
    (7, "measure ordering, range, invariance and reflection"),
    (8, "oracle cross-validation and extreme states"),
    (9, "teleportation validity and reference resources"),
    (10, "sweep determinism"),
];

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub id: usize,
    pub title: &'static str,
    pub pass: bool,
    pub lines: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Finding {
    pub criterion: usize,
    pub text: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
    pub findings: Vec<Finding>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = writeln!(
                out,
                "C{} {} {}",
                c.id,
                if c.pass { "PASS" } else { "FAIL" },
                c.title
            );
            for l in &c.lines {
                let _ = writeln!(out, "    {l}");
            }
        }
        if !self.findings.is_empty() {
            out.push_str("\nFindings:\n");
            for f in &self.findings {
                let _ = writeln!(out, "  [C{}] {}", f.criterion, f.text);
            }
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        let _ = writeln!(out, "\n{passed}/{} criteria passed", self.checks.len());
        out
    }
}

struct Ctx {
    id: usize,
    pass: bool,
    lines: Vec<String>,
    findings: Vec<Finding>,
}

impl Ctx {
    fn expect(&mut self, ok: bool, text: impl Into<String>) {
        self.pass &= ok;
        self.lines.push(format!(
            "{} {}",
            if ok { "ok  " } else { "FAIL" },
            text.into()
        ));
    }

    fn note(&mut self, text: impl Into<String>) {
        self.findings.push(Finding {
            criterion: self.id,
            text: text.into(),
        });
    }
}

/// Runs one criterion (1 to 10).
pub fn run_criterion(id: usize) -> Report {
    let title = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .map(|c| c.1)
        .unwrap_or("unknown criterion");
    let mut cx = Ctx {
        id,
        pass: true,
        lines: Vec::new(),
        findings: Vec::new(),
    };
    let outcome = match id {
        1 => c1(&mut cx),
        2 => c2(&mut cx),
        3 => c3(&mut cx),
        4 => c4(&mut cx),
        5 => c5(&mut cx),
        6 => c6(&mut cx),
        7 => c7(&mut cx),
        8 => c8(&mut cx),
        9 => c9(&mut cx),
        10 => c10(&mut cx),
        _ => Err(crate::Error::Usage(format!("no criterion {id}"))),
    };
    if let Err(e) = outcome {
        cx.expect(false, format!("aborted: {e}"));
    }
    Report {
        checks: vec![Check {
            id,
            title,
            pass: cx.pass,
            lines: cx.lines,
        }],
        findings: cx.findings,
    }
}

/// Runs every criterion.
pub fn verify() -> Report {
    let mut report = Report::default();
    for (id, _) in CRITERIA {
        let r = run_criterion(id);
        report.checks.extend(r.checks);
        report.findings.extend(r.findings);
    }
    report
}

fn theta_state(sp: Species, phi: f64) -> Result<DensityMatrix<f64>> {
    density_from_theta(&theta_matrix(&sp.params(), phi)?)
}

fn x_block(sp: Species, phi: f64) -> Result<XState<f64>> {
    x_state_with(&sp.params(), phi, XForm::BlockEigen)
}

fn fmt_angles(a: &[f64]) -> String {
    let parts: Vec<String> = a.iter().map(|x| format!("{x:.2}°")).collect();
    if parts.is_empty() {
        "-".into()
    } else {
        parts.join("/")
    }
}

fn angles_match(found: &[f64], want: &[f64], tol: f64) -> bool {
    found.len() == want.len() && found.iter().zip(want).all(|(f, w)| (f - w).abs() <= tol)
}

fn spec_for(source: StateSource, engine: Engine) -> SweepSpec {
    SweepSpec {
        source,
        engine,
        parallel: false,
        ..Default::default()
    }
}

fn c1(cx: &mut Ctx) -> Result<()> {
    let table = [
        (Species::Lambda, 0.475),
        (Species::SigmaPlus, 0.508),
        (Species::XiMinus, 0.586),
        (Species::XiZero, 0.514),
    ];
    let theta = spec_for(StateSource::Theta, Engine::Oracle);
    let printed = spec_for(StateSource::Printed, Engine::Closed);
    for (sp, want) in table {
        let m = &find_maxima(&theta, sp, Measure::Ln)?[0];
        let ok = (m.value - want).abs() <= LN_VALUE_TOL
            && angles_match(&m.angles_deg, &[90.0], LN_ANGLE_TOL_DEG);
        cx.expect(
            ok,
            format!(
                "{sp:?} ln max {:.6} at {} (want {want} at 90°)",
                m.value,
                fmt_angles(&m.angles_deg)
            ),
        );
        let p = &find_maxima(&printed, sp, Measure::Ln)?[0];
        let verdict = if (p.value - want).abs() <= LN_VALUE_TOL {
            "matches"
        } else {
            "misses"
        };
        cx.note(format!(
            "{sp:?} ln via the printed X form: {:.6} at {} ({verdict} the table value {want})",
            p.value,
            fmt_angles(&p.angles_deg)
        ));
    }
    Ok(())
}

const LQU_TABLE: [(Species, f64, &[f64]); 4] = [
    (Species::Lambda, 0.165, &[71.94, 108.0]),
    (Species::SigmaPlus, 0.138, &[90.0]),
    (Species::XiMinus, 0.332, &[66.54, 113.45]),
    (Species::XiZero, 0.290, &[64.27, 115.72]),
];

const LQFI_TABLE: [(Species, Option<f64>, &[f64]); 4] = [
    (Species::Lambda, Some(0.241), &[71.94, 108.0]),
    (Species::SigmaPlus, None, &[90.0]),
    (Species::XiMinus, Some(0.441), &[66.54, 113.45]),
    (Species::XiZero, Some(0.381), &[64.27, 115.72]),
];

fn table_check(
    cx: &mut Ctx,
    measure: Measure,
    sp: Species,
    engine: Engine,
    want: f64,
    angles: &[f64],
) -> Result<()> {
    let m = &find_maxima(&spec_for(StateSource::BlockEigen, engine), sp, measure)?[0];
    let ok = (m.value - want).abs() <= TABLE_VALUE_TOL
        && angles_match(&m.angles_deg, angles, TABLE_ANGLE_TOL_DEG);
    cx.expect(
        ok,
        format!(
            "{sp:?} {measure} {engine}: {:.6} at {} (want {want} at {})",
            m.value,
            fmt_angles(&m.angles_deg),
            fmt_angles(angles)
        ),
    );
    Ok(())
}

fn theta_state_maxima(cx: &mut Ctx, measure: Measure) -> Result<()> {
    let spec = spec_for(StateSource::Theta, Engine::Oracle);
    for sp in Species::ALL {
        let m = &find_maxima(&spec, sp, measure)?[0];
        cx.note(format!(
            "{sp:?} {measure} of the full theta-matrix state: {:.6} at {}",
            m.value,
            fmt_angles(&m.angles_deg)
        ));
    }
    Ok(())
}

fn c2(cx: &mut Ctx) -> Result<()> {
    for engine in [Engine::Closed, Engine::Oracle] {
        for (sp, want, angles) in LQU_TABLE {
            if engine == Engine::Closed && sp.params::<f64>().alpha_psi() < 0.0 {
                continue;
            }
            table_check(cx, Measure::Lqu, sp, engine, want, angles)?;
        }
    }
    theta_state_maxima(cx, Measure::Lqu)
}

fn c3(cx: &mut Ctx) -> Result<()> {
    for engine in [Engine::Closed, Engine::Oracle] {
        for (sp, want, angles) in LQFI_TABLE {
            let Some(want) = want else { continue };
            if engine == Engine::Closed && sp.params::<f64>().alpha_psi() < 0.0 {
                continue;
            }
            table_check(cx, Measure::Lqfi, sp, engine, want, angles)?;
        }
    }
    let spec = spec_for(StateSource::BlockEigen, Engine::Oracle);
    let m = &find_maxima(&spec, Species::SigmaPlus, Measure::Lqfi)?[0];
    cx.expect(
        (0.0..=1.0).contains(&m.value),
        format!(
            "SigmaPlus lqfi oracle max {:.6} at {} lies in [0, 1]",
            m.value,
            fmt_angles(&m.angles_deg)
        ),
    );
    let hyp = 0.157;
    let verdict = if (m.value - hyp).abs() <= TABLE_VALUE_TOL {
        "supported"
    } else {
        "rejected"
    };
    cx.note(format!(
        "SigmaPlus lqfi table entry 1.57 is outside [0, 1]; computed maximum {:.6} at {}; \
         the misplaced-decimal reading {hyp} is {verdict} (|Δ| = {:.4})",
        m.value,
        fmt_angles(&m.angles_deg),
        (m.value - hyp).abs()
    ));
    theta_state_maxima(cx, Measure::Lqfi)
}

fn c4(cx: &mut Ctx) -> Result<()> {
    let p = Species::Lambda.params::<f64>();
    let a = p.alpha_psi();
    let x = x_state_with(&p, FRAC_PI_2, XForm::Printed)?;
    let lo = (1.0 - a) / 4.0;
    let hi = (1.0 + a) / 4.0;
    let entries = [
        (x.r11, lo),
        (x.r44, lo),
        (x.r22, hi),
        (x.r33, hi),
        (x.c14.re, hi),
        (x.c23.re, hi),
        (x.c14.im, 0.0),
        (x.c23.im, 0.0),
    ];
    let err = entries
        .iter()
        .map(|(g, w)| (g - w).abs())
        .fold(0.0, f64::max);
    cx.expect(
        err <= GOLDEN_TOL,
        format!("entries match ((1−α)/4, (1+α)/4) within {err:.1e}"),
    );

    let mut want = [0.5, -a / 2.0, (1.0 + a) / 2.0, 0.0];
    want.sort_by(f64::total_cmp);
    let mut closed = partial_transpose_spectrum(&x);
    closed.sort_by(f64::total_cmp);
    let generic = eigh4_matrix(&partial_transpose_first(x_to_density(&x).matrix()))?;
    let mut gen = generic.eigenvalues;
    gen.sort_by(f64::total_cmp);
    let e1 = closed
        .iter()
        .zip(&want)
        .map(|(g, w)| (g - w).abs())
        .fold(0.0, f64::max);
    let e2 = gen
        .iter()
        .zip(&want)
        .map(|(g, w)| (g - w).abs())
        .fold(0.0, f64::max);
    cx.expect(
        e1 <= GOLDEN_TOL,
        format!("closed partial-transpose spectrum within {e1:.1e}"),
    );
    cx.expect(
        e2 <= GOLDEN_TOL,
        format!("eigensolver partial-transpose spectrum within {e2:.1e}"),
    );
    let n1 = negativity_x(&x);
    let n2 = negativity_generic(&x_to_density(&x))?;
    cx.expect(
        (n1 - a).abs() <= GOLDEN_TOL && (n2 - a).abs() <= GOLDEN_TOL,
        format!("negativity {n1:.15} (closed), {n2:.15} (oracle) equals α = {a}"),
    );
    for sp in Species::ALL {
        let x = x_state_with(&sp.params::<f64>(), FRAC_PI_2, XForm::Printed)?;
        let min = eigh4_matrix(x_to_density(&x).matrix())?.min();
        if min < 0.0 {
            cx.note(format!(
                "printed X form for {sp:?} at 90° is not positive semidefinite (λ_min = {min:.6})"
            ));
        }
    }
    Ok(())
}

fn c5(cx: &mut Ctx) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for kind in [
        ChannelKind::AmplitudeDamping,
        ChannelKind::PhaseFlip,
        ChannelKind::PhaseDamping,
    ] {
        let (mut diff, mut comp) = (0.0f64, 0.0f64);
        for _ in 0..CHANNEL_SAMPLES {
            let sp = Species::ALL[rng.gen_range(0..4)];
            let phi = rng.gen_range(0.0..=PI);
            let s = rng.gen_range(0.0..=1.0);
            let x = x_block(sp, phi)?;
            let ch = QubitChannel::new(kind, s)?;
            comp = comp.max(ch.completeness_error());
            let closed = x_to_density(&channel_xstate(kind, &x, s)?);
            let kraus = apply_symmetric(&ch, &x_to_density(&x))?;
            diff = diff.max(closed.matrix().max_abs_diff(kraus.matrix()));
        }
        cx.expect(
            diff <= CHANNEL_TOL,
            format!("{kind}: closed vs Kraus max entry difference {diff:.1e}"),
        );
        cx.expect(
            comp <= CHANNEL_TOL,
            format!("{kind}: Kraus completeness error {comp:.1e}"),
        );
    }

    let (mut exact, mut kraus_diff) = (true, 0.0f64);
    for _ in 0..CHANNEL_SAMPLES {
        let sp = Species::ALL[rng.gen_range(0..4)];
        let phi = rng.gen_range(0.0..=PI);
        // 1 − s is exact for s ∈ [1/2, 1], so (s, 1 − s) is an exact mirror pair.
        let s: f64 = rng.gen_range(0.5..=1.0);
        let t = 1.0 - s;
        let x = x_block(sp, phi)?;
        exact &= pf_xstate(&x, s)? == pf_xstate(&x, t)?;
        let rho = x_to_density(&x);
        let a = apply_symmetric(&QubitChannel::new(ChannelKind::PhaseFlip, s)?, &rho)?;
        let b = apply_symmetric(&QubitChannel::new(ChannelKind::PhaseFlip, t)?, &rho)?;
        kraus_diff = kraus_diff.max(a.matrix().max_abs_diff(b.matrix()));
    }
    cx.expect(exact, "pf closed form at s and 1−s is bitwise identical");
    cx.expect(
        kraus_diff <= CHANNEL_TOL,
        format!("pf Kraus form at s and 1−s within {kraus_diff:.1e}"),
    );
    Ok(())
}

type Curve = Box<dyn Fn(ChannelKind, f64) -> Result<f64>>;

fn c6(cx: &mut Ctx) -> Result<()> {
    let sp = Species::Lambda;
    let grid: Vec<f64> = (0..=100).map(|i| i as f64 / 100.0).collect();
    let x = x_block(sp, FRAC_PI_2)?;
    let rho = theta_state(sp, FRAC_PI_2)?;
    let paths: [(&str, Curve); 2] = [
        (
            "closed",
            Box::new(move |k, s| Ok(negativity_x(&channel_xstate(k, &x, s)?))),
        ),
        (
            "oracle",
            Box::new(move |k, s| {
                negativity_generic(&apply_symmetric(&QubitChannel::new(k, s)?, &rho)?)
            }),
        ),
    ];
    for (name, f) in &paths {
        for kind in [ChannelKind::AmplitudeDamping, ChannelKind::PhaseDamping] {
            let v = grid
                .iter()
                .map(|&s| f(kind, s))
                .collect::<Result<Vec<_>>>()?;
            let worst = v
                .windows(2)
                .map(|w| w[1] - w[0])
                .fold(f64::NEG_INFINITY, f64::max);
            cx.expect(
                worst <= MONOTONE_SLACK,
                format!("{kind} {name}: non-increasing (largest step {worst:.1e})"),
            );
        }
        let v = grid
            .iter()
            .map(|&s| f(ChannelKind::PhaseFlip, s))
            .collect::<Result<Vec<_>>>()?;
        let asym = (0..=100)
            .map(|i| (v[i] - v[100 - i]).abs())
            .fold(0.0, f64::max);
        cx.expect(
            asym <= MONOTONE_SLACK,
            format!("pf {name}: symmetric about s = 1/2 within {asym:.1e}"),
        );
        let zero = |i: usize| v[i].abs() <= MONOTONE_SLACK;
        if !zero(50) {
            cx.expect(false, format!("pf {name}: no zero plateau at s = 1/2"));
            continue;
        }
        let (mut lo, mut hi) = (50, 50);
        while lo > 0 && zero(lo - 1) {
            lo -= 1;
        }
        while hi < 100 && zero(hi + 1) {
            hi += 1;
        }
        cx.expect(
            (lo..=hi).all(zero) && lo + hi == 100,
            format!(
                "pf {name}: zero on the plateau [{:.2}, {:.2}]",
                grid[lo], grid[hi]
            ),
        );
        if *name == "closed" {
            let edge = bisect(
                |s| f(ChannelKind::PhaseFlip, s).map(|v| v > 0.0),
                grid[lo - 1],
                grid[lo],
            )?;
            cx.note(format!(
                "pf plateau of the Lambda negativity at 90° is [{:.4}, {:.4}] (grid: [{:.2}, {:.2}]); the quoted region is [0.2, 0.8]",
                edge,
                1.0 - edge,
                grid[lo],
                grid[hi]
            ));
        }
    }
    Ok(())
}

/// Boundary where `pred` turns false, given `pred(a)` true and `pred(b)` false.
fn bisect<F: Fn(f64) -> Result<bool>>(pred: F, mut a: f64, mut b: f64) -> Result<f64> {
    for _ in 0..60 {
        let m = 0.5 * (a + b);
        if pred(m)? {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

fn oracle_triple(rho: &DensityMatrix<f64>) -> Result<CorrelationTriple<f64>> {
    Ok(CorrelationTriple {
        ln: negativity_generic(rho)?,
        lqu: lqu_spectral(rho)?,
        lqfi: lqfi_generic(rho)?,
    })
}

fn triple_err(a: &CorrelationTriple<f64>, b: &CorrelationTriple<f64>) -> f64 {
    (a.ln - b.ln)
        .abs()
        .max((a.lqu - b.lqu).abs())
        .max((a.lqfi - b.lqfi).abs())
}

fn random_unitary(rng: &mut ChaCha8Rng) -> Mat2<f64> {
    let a = rng.gen_range(0.0..2.0 * PI);
    let b = rng.gen_range(0.0..PI);
    let c = rng.gen_range(0.0..2.0 * PI);
    rotation(2, a) * rotation(1, b) * rotation(2, c)
}

fn c7(cx: &mut Ctx) -> Result<()> {
    let phis = linspace(0.0, PI, 181)?;
    let s_grid: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
    let n = phis.len();
    let (mut order_worst, mut range_worst) = (f64::NEG_INFINITY, 0.0f64);
    let (mut refl_theta, mut refl_x) = (0.0f64, 0.0f64);
    let mut refl_x_where = String::new();
    let mut points = 0usize;
    for kind in ChannelKind::ALL {
        for &s in &s_grid {
            let ch = QubitChannel::new(kind, s)?;
            for sp in Species::ALL {
                let mut closed = Vec::with_capacity(n);
                let mut oracle = Vec::with_capacity(n);
                for &phi in &phis {
                    let x = channel_xstate(kind, &x_block(sp, phi)?, s)?;
                    closed.push(correlation_triple(&x)?);
                    oracle.push(oracle_triple(&apply_symmetric(
                        &ch,
                        &theta_state(sp, phi)?,
                    )?)?);
                    points += 1;
                }
                for t in closed.iter().chain(&oracle) {
                    order_worst = order_worst.max(t.lqu - t.lqfi);
                    for v in [t.ln, t.lqu, t.lqfi] {
                        range_worst = range_worst.max(-v).max(v - 1.0);
                    }
                }
                for i in 0..n {
                    refl_theta = refl_theta.max(triple_err(&oracle[i], &oracle[n - 1 - i]));
                    let e = triple_err(&closed[i], &closed[n - 1 - i]);
                    if e > refl_x {
                        refl_x = e;
                        refl_x_where =
                            format!("{sp:?}, {kind}, s = {s}, φ = {:.0}°", phis[i].to_degrees());
                    }
                }
            }
        }
    }
    cx.expect(
        order_worst <= ORDER_SLACK,
        format!("lqu ≤ lqfi + {ORDER_SLACK:.0e} at all {points} points, both state paths (max lqu − lqfi = {order_worst:.1e})"),
    );
    cx.expect(
        range_worst <= RANGE_SLACK,
        format!("all measures within [0, 1] (largest excursion {range_worst:.1e})"),
    );
    cx.expect(
        refl_theta <= REFLECTION_TOL,
        format!("theta-matrix state: measures symmetric under φ → π − φ within {refl_theta:.1e}"),
    );
    cx.note(format!(
        "the block-eigenvector X form is not symmetric under φ → π − φ once channels act: max measure difference {refl_x:.3e} ({refl_x_where})"
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let mut worst = 0.0f64;
    for _ in 0..LOCAL_UNITARY_SAMPLES {
        let sp = Species::ALL[rng.gen_range(0..4)];
        let phi = rng.gen_range(0.0..=PI);
        let kind = ChannelKind::ALL[rng.gen_range(0..4)];
        let s = rng.gen_range(0.0..=1.0);
        let rho = apply_symmetric(&QubitChannel::new(kind, s)?, &theta_state(sp, phi)?)?;
        let (u, v) = (random_unitary(&mut rng), random_unitary(&mut rng));
        let rot = rho.conjugate_local(&u, &v);
        let a = CorrelationTriple {
            lqu: lqu_generic(&rho)?,
            ..oracle_triple(&rho)?
        };
        let b = CorrelationTriple {
            lqu: lqu_generic(&rot)?,
            ..oracle_triple(&rot)?
        };
        worst = worst.max(triple_err(&a, &b));
    }
    cx.expect(
        worst <= LOCAL_UNITARY_TOL,
        format!("oracle measures invariant under {LOCAL_UNITARY_SAMPLES} random product unitaries within {worst:.1e}"),
    );
    Ok(())
}

fn c8(cx: &mut Ctx) -> Result<()> {
    let mut worst = 0.0f64;
    for sp in Species::ALL {
        for k in 0..19 {
            let rho = theta_state(sp, (10.0 * k as f64).to_radians())?;
            worst = worst.max((lqu_grid(&rho)? - lqu_spectral(&rho)?).abs());
        }
    }
    cx.expect(
        worst <= LQU_PATH_TOL,
        format!("lqu Bloch-grid vs spectral on 76 states: max |Δ| = {worst:.1e}"),
    );

    let names = ["χ⁻", "ψ⁻", "ψ⁺", "χ⁺"];
    let bells_x: [XState<f64>; 4] = {
        let h = 0.5;
        let z = num_complex::Complex::new(0.0, 0.0);
        let r = |v: f64| num_complex::Complex::new(v, 0.0);
        [
            XState {
                r11: 0.0,
                r22: h,
                r33: h,
                r44: 0.0,
                c14: z,
                c23: r(-h),
            },
            XState {
                r11: h,
                r22: 0.0,
                r33: 0.0,
                r44: h,
                c14: r(-h),
                c23: z,
            },
            XState {
                r11: h,
                r22: 0.0,
                r33: 0.0,
                r44: h,
                c14: r(h),
                c23: z,
            },
            XState {
                r11: 0.0,
                r22: h,
                r33: h,
                r44: 0.0,
                c14: z,
                c23: r(h),
            },
        ]
    };
    let one = CorrelationTriple {
        ln: 1.0,
        lqu: 1.0,
        lqfi: 1.0,
    };
    for ((ket, x), name) in bell_kets::<f64>().iter().zip(&bells_x).zip(names) {
        let rho = DensityMatrix::pure(ket);
        let o = CorrelationTriple {
            lqu: lqu_generic(&rho)?,
            ..oracle_triple(&rho)?
        };
        let c = correlation_triple(x)?;
        let e = triple_err(&o, &one).max(triple_err(&c, &one));
        cx.expect(
            e <= BELL_TOL,
            format!("Bell {name}: (ln, lqu, lqfi) = (1, 1, 1) within {e:.1e}"),
        );
    }

    let zero = CorrelationTriple {
        ln: 0.0,
        lqu: 0.0,
        lqfi: 0.0,
    };
    let diagonals = [
        [0.25, 0.25, 0.25, 0.25],
        [1.0, 0.0, 0.0, 0.0],
        [0.5, 0.0, 0.0, 0.5],
        [0.1, 0.2, 0.3, 0.4],
        [0.0, 0.3, 0.7, 0.0],
    ];
    let mut e = 0.0f64;
    for d in diagonals {
        let x = XState::diagonal(d);
        let rho = x_to_density(&x);
        let o = CorrelationTriple {
            lqu: lqu_generic(&rho)?,
            ..oracle_triple(&rho)?
        };
        e = e
            .max(triple_err(&o, &zero))
            .max(triple_err(&correlation_triple(&x)?, &zero));
    }
    cx.expect(
        e <= CLASSICAL_TOL,
        format!("classical diagonal states give (0, 0, 0) within {e:.1e}"),
    );

    for sp in Species::ALL {
        let x = x_block(sp, 60f64.to_radians())?;
        let rho = x_to_density(&x);
        if let (Some(w), Some(wzz)) = (w_diagonal(&x)?, w_zz_alternate_sign(&x)?) {
            let alt = 1.0 - w[0].max(w[1]).max(wzz);
            cx.note(format!(
                "{sp:?} at 60°: W_zz with the printed sign gives lqu {alt:.6}, corrected sign {:.6}, oracle {:.6}",
                lqu_x(&x)?,
                lqu_spectral(&rho)?
            ));
        }
        if let Some(m) = m_diagonal(&x)? {
            let alt = 1.0 - m[0].max(m[1]).max(m_zz_alternate(&x));
            cx.note(format!(
                "{sp:?} at 60°: M_zz printed {:.6}, corrected {:.6}; lqfi with printed {alt:.6}, corrected {:.6}, oracle {:.6}",
                m_zz_alternate(&x),
                m[2],
                1.0 - m[0].max(m[1]).max(m[2]),
                lqfi_generic(&rho)?
            ));
        }
    }
    Ok(())
}

fn c9(cx: &mut Ctx) -> Result<()> {
    let thetas = linspace(0.0, PI, 10)?;
    let phases: Vec<f64> = (0..8).map(|j| j as f64 * PI / 4.0).collect();
    let inputs: Vec<InputState<f64>> = thetas
        .iter()
        .flat_map(|&t| phases.iter().map(move |&p| InputState::new(t, p)))
        .collect::<Result<_>>()?;

    let mut count = 0usize;
    let mut invalid = Vec::new();
    for sp in Species::ALL {
        for k in 0..19 {
            let res = theta_state(sp, (10.0 * k as f64).to_radians())?;
            for inp in &inputs {
                match teleport_generic(&res, inp) {
                    Ok(_) => count += 1,
                    Err(e) => invalid.push(format!("{sp:?} φ = {}°: {e}", 10 * k)),
                }
            }
        }
    }
    cx.expect(
        invalid.is_empty(),
        format!(
            "{count} of {} teleported states are valid density matrices",
            4 * 19 * inputs.len()
        ),
    );

    let mixed = DensityMatrix::maximally_mixed();
    let mut e = 0.0f64;
    for inp in &inputs {
        let f = fidelity_uhlmann(&input_density(inp), &teleport_generic(&mixed, inp)?)?;
        e = e.max((f - 0.25).abs());
    }
    cx.expect(
        e <= MIXED_FIDELITY_TOL,
        format!("I/4 resource gives fidelity 0.25 within {e:.1e}"),
    );

    let names = ["χ⁻", "ψ⁻", "ψ⁺", "χ⁺"];
    let mut perfect = Vec::new();
    for (ket, name) in bell_kets::<f64>().iter().zip(names) {
        let res = DensityMatrix::pure(ket);
        let mut fmin = f64::INFINITY;
        for inp in &inputs {
            fmin = fmin.min(fidelity_uhlmann(
                &input_density(inp),
                &teleport_generic(&res, inp)?,
            )?);
        }
        if fmin >= 1.0 - PERFECT_FIDELITY_TOL {
            perfect.push(name);
        }
        cx.lines.push(format!(
            "     Bell {name}: minimum fidelity over the input grid {fmin:.12}"
        ));
    }
    cx.expect(
        perfect.len() == 1,
        format!(
            "exactly one Bell resource is perfect on the whole input grid (found {}: {})",
            perfect.len(),
            perfect.join(", ")
        ),
    );

    let inp = InputState::new(FRAC_PI_2, 0.0)?;
    for sp in Species::ALL {
        let x = x_block(sp, FRAC_PI_2)?;
        let closed = fidelity_closed(&teleport_x_closed(&x, &inp), &inp);
        let rx = x_to_density(&x);
        let ket = fidelity_uhlmann(&input_density(&inp), &teleport_generic(&rx, &inp)?)?;
        let printed_in = input_density_with(&inp, InputLayout::PrintedMatrix);
        let printed = fidelity_uhlmann(
            &printed_in,
            &crate::teleport::teleport_generic_from(&rx, &printed_in)?,
        )?;
        let theta = fidelity_uhlmann(
            &input_density(&inp),
            &teleport_generic(&theta_state(sp, FRAC_PI_2)?, &inp)?,
        )?;
        let side = |f: f64| if f > 2.0 / 3.0 { "above" } else { "below" };
        cx.note(format!(
            "{sp:?} fidelity at φ = θ = π/2, phase 0: closed {closed:.6}, Uhlmann {ket:.6} (Δ = {:+.3e}), \
             Uhlmann with the printed input layout {printed:.6}, theta-matrix resource {theta:.6}; closed is {} 2/3, Uhlmann {}",
            closed - ket,
            side(closed),
            side(ket)
        ));
    }
    let inp = InputState::new(PI / 3.0, 0.7)?;
    let x = x_block(Species::XiMinus, 1.0)?;
    let closed = x_to_density(&teleport_x_closed(&x, &inp));
    let generic = teleport_generic(&x_to_density(&x), &inp)?;
    cx.note(format!(
        "closed-form teleported state vs generic map away from θ = π/2 (XiMinus, φ = 1, θ = π/3, phase 0.7): max entry difference {:.3e}",
        closed.matrix().max_abs_diff(generic.matrix())
    ));
    Ok(())
}

fn c10(cx: &mut Ctx) -> Result<()> {
    let spec = SweepSpec::default();
    let serial = SweepSpec {
        parallel: false,
        ..spec.clone()
    };
    let a = emit(&spec, &run_sweep(&spec)?, Format::Csv)?;
    let b = emit(&spec, &run_sweep(&spec)?, Format::Csv)?;
    let c = emit(&serial, &run_sweep(&serial)?, Format::Csv)?;
    cx.expect(
        a == b,
        format!("two parallel runs byte-identical ({} bytes)", a.len()),
    );
    cx.expect(a == c, "parallel and serial runs byte-identical");
    Ok(())
}
