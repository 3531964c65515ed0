//! Deterministic grid sweeps, angular maxima search and CSV/JSON emission.
//!
//! This layer works in `f64`. Angles in a [`SweepSpec`] are stored in the
//! spec's [`AngleUnit`] and converted to radians only when a point is
//! evaluated, so emitted coordinates are exactly the values supplied.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;

use crate::channels::{apply_symmetric, channel_xstate, ChannelKind, QubitChannel};
use crate::error::{Error, Result};
use crate::measures::{lqfi_x, lqu_x, negativity_x};
use crate::oracle::{fidelity_uhlmann, lqfi_generic, lqu_generic, negativity_generic};
use crate::spin_state::{
    density_from_theta, theta_matrix, x_state_with, x_to_density, DensityMatrix, HyperonParams,
    Species, XForm, XState,
};
use crate::teleport::{
    fidelity_closed, input_density_with, teleport_generic_from, teleport_x_closed, InputLayout,
    InputState,
};

/// Built-in decay parameters by selector name.
pub fn builtin_params(name: &str) -> Result<HyperonParams<f64>> {
    Ok(Species::from_name(name)?.params())
}

macro_rules! named_enum {
    ($ty:ident, $what:literal, { $($var:ident => $name:literal),+ $(,)? }) => {
        impl $ty {
            pub fn name(self) -> &'static str {
                match self { $($ty::$var => $name),+ }
            }
        }
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }
        impl FromStr for $ty {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s.to_ascii_lowercase().as_str() {
                    $($name => Ok($ty::$var),)+
                    _ => Err(Error::Usage(format!(
                        concat!("unknown ", $what, " '{}'; valid: {}"),
                        s,
                        [$($name),+].join(", ")
                    ))),
                }
            }
        }
    };
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Measure {
    Ln,
    Lqu,
    Lqfi,
    Fidelity,
}
named_enum!(Measure, "measure", { Ln => "ln", Lqu => "lqu", Lqfi => "lqfi", Fidelity => "fidelity" });

impl Measure {
    pub const ALL: [Measure; 4] = [Measure::Ln, Measure::Lqu, Measure::Lqfi, Measure::Fidelity];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Engine {
    Closed,
    Oracle,
    #[default]
    Both,
}
named_enum!(Engine, "engine", { Closed => "closed", Oracle => "oracle", Both => "both" });

/// Where the resource state comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum StateSource {
    #[default]
    BlockEigen,
    Printed,
    LocalUnitary,
    /// Full Θ-matrix state; oracle engine only.
    Theta,
}
named_enum!(StateSource, "state source", {
    BlockEigen => "block-eigen",
    Printed => "printed",
    LocalUnitary => "local-unitary",
    Theta => "theta",
});

impl StateSource {
    fn x_form(self) -> Option<XForm> {
        match self {
            StateSource::BlockEigen => Some(XForm::BlockEigen),
            StateSource::Printed => Some(XForm::Printed),
            StateSource::LocalUnitary => Some(XForm::LocalUnitary),
            StateSource::Theta => None,
        }
    }
}

/// Which state `ln`, `lqu` and `lqfi` are evaluated on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Target {
    #[default]
    Resource,
    Teleported,
}
named_enum!(Target, "target", { Resource => "resource", Teleported => "teleported" });

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum AngleUnit {
    #[default]
    Radians,
    Degrees,
}

impl AngleUnit {
    pub fn to_rad(self, v: f64) -> f64 {
        match self {
            AngleUnit::Radians => v,
            AngleUnit::Degrees => v.to_radians(),
        }
    }

    fn suffix(self) -> &'static str {
        match self {
            AngleUnit::Radians => "rad",
            AngleUnit::Degrees => "deg",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}
named_enum!(Format, "format", { Csv => "csv", Json => "json" });

/// Parses `v`, `a,b,c` or `start:stop:n` (inclusive, evenly spaced).
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let bad = |why: &str| Error::Usage(format!("invalid grid '{text}': {why}"));
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad("not a number"));
    let parts: Vec<&str> = text.split(':').collect();
    let grid = match parts.len() {
        1 => text.split(',').map(num).collect::<Result<Vec<_>>>()?,
        3 => {
            let (a, b) = (num(parts[0])?, num(parts[1])?);
            let n: usize = parts[2]
                .trim()
                .parse()
                .map_err(|_| bad("count must be a positive integer"))?;
            linspace(a, b, n)?
        }
        _ => return Err(bad("expected v, a,b,c or start:stop:n")),
    };
    if grid.is_empty() {
        return Err(bad("empty"));
    }
    Ok(grid)
}

pub fn linspace(start: f64, stop: f64, n: usize) -> Result<Vec<f64>> {
    match n {
        0 => Err(Error::Usage("grid count must be at least 1".into())),
        1 => Ok(vec![start]),
        _ => {
            let step = (stop - start) / (n - 1) as f64;
            Ok((0..n)
                .map(|i| {
                    if i == n - 1 {
                        stop
                    } else {
                        start + step * i as f64
                    }
                })
                .collect())
        }
    }
}

/// Everything that defines a sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub pairs: Vec<Species>,
    pub channel: ChannelKind,
    pub s_grid: Vec<f64>,
    pub scatter_grid: Vec<f64>,
    pub theta_grid: Vec<f64>,
    pub phase_grid: Vec<f64>,
    pub angle_unit: AngleUnit,
    pub measures: Vec<Measure>,
    pub engine: Engine,
    pub source: StateSource,
    pub target: Target,
    pub layout: InputLayout,
    pub parallel: bool,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            pairs: Species::ALL.to_vec(),
            channel: ChannelKind::Identity,
            s_grid: vec![0.0],
            scatter_grid: linspace(0.0, std::f64::consts::PI, 181).expect("n > 0"),
            theta_grid: vec![std::f64::consts::FRAC_PI_2],
            phase_grid: vec![0.0],
            angle_unit: AngleUnit::Radians,
            measures: vec![Measure::Ln, Measure::Lqu, Measure::Lqfi],
            engine: Engine::Both,
            source: StateSource::BlockEigen,
            target: Target::Resource,
            layout: InputLayout::Ket,
            parallel: true,
        }
    }
}

fn check_range(what: &str, values: &[f64], lo: f64, hi: f64, shown: &str) -> Result<()> {
    if values.is_empty() {
        return Err(Error::Usage(format!("{what} grid is empty")));
    }
    let slack = 1e-12;
    for &v in values {
        if !(v >= lo - slack && v <= hi + slack) {
            return Err(Error::Usage(format!("{what} value {v} is outside {shown}")));
        }
    }
    Ok(())
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.pairs.is_empty() {
            return Err(Error::Usage("no pair selected".into()));
        }
        if self.measures.is_empty() {
            return Err(Error::Usage("no measure selected".into()));
        }
        if self.source == StateSource::Theta && self.engine != Engine::Oracle {
            return Err(Error::Usage(
                "the theta state source has no closed form; use --engine oracle".into(),
            ));
        }
        let pi = std::f64::consts::PI;
        let u = self.angle_unit;
        let rad = |g: &[f64]| g.iter().map(|&v| u.to_rad(v)).collect::<Vec<_>>();
        let (pi_s, two_pi_s) = match u {
            AngleUnit::Radians => ("[0, π]", "[0, 2π]"),
            AngleUnit::Degrees => ("[0°, 180°]", "[0°, 360°]"),
        };
        check_range("s", &self.s_grid, 0.0, 1.0, "[0, 1]")?;
        check_range("scatter", &rad(&self.scatter_grid), 0.0, pi, pi_s)?;
        check_range("theta", &rad(&self.theta_grid), 0.0, pi, pi_s)?;
        check_range("phase", &rad(&self.phase_grid), 0.0, 2.0 * pi, two_pi_s)?;
        Ok(())
    }

    fn needs_input(&self) -> bool {
        self.target == Target::Teleported || self.measures.contains(&Measure::Fidelity)
    }

    /// Grid tuples in lexicographic order `(pair, s, scatter, theta, phase)`.
    fn points(&self) -> Vec<Point> {
        let mut out = Vec::new();
        for &pair in &self.pairs {
            for &s in &self.s_grid {
                for &scatter in &self.scatter_grid {
                    for &theta in &self.theta_grid {
                        for &phase in &self.phase_grid {
                            out.push(Point {
                                pair,
                                s,
                                scatter,
                                theta,
                                phase,
                            });
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Point {
    pair: Species,
    s: f64,
    scatter: f64,
    theta: f64,
    phase: f64,
}

/// One evaluated grid point.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRecord {
    pub pair: Species,
    pub channel: ChannelKind,
    pub s: f64,
    /// Angles in the spec's unit; the input angles are present only when
    /// the sweep teleports.
    pub scatter: f64,
    pub theta: Option<f64>,
    pub phase: Option<f64>,
    pub engine: Engine,
    pub values: Vec<(Measure, f64)>,
    /// `closed − oracle`; present iff the engine is `both`.
    pub deltas: Vec<(Measure, f64)>,
}

/// State and resource inputs for a single point.
struct Context<'a> {
    spec: &'a SweepSpec,
    params: HyperonParams<f64>,
    channel: QubitChannel<f64>,
    s: f64,
    scatter: f64,
    input: Option<InputState<f64>>,
}

impl Context<'_> {
    fn resource_closed(&self) -> Result<XState<f64>> {
        let form = self
            .spec
            .source
            .x_form()
            .ok_or_else(|| Error::Usage("the theta state source has no closed form".into()))?;
        let x = x_state_with(&self.params, self.scatter, form)?;
        channel_xstate(self.spec.channel, &x, self.s)
    }

    fn resource_oracle(&self) -> Result<DensityMatrix<f64>> {
        let rho = match self.spec.source.x_form() {
            Some(form) => x_to_density(&x_state_with(&self.params, self.scatter, form)?),
            None => density_from_theta(&theta_matrix(&self.params, self.scatter)?)?,
        };
        if self.spec.channel == ChannelKind::Identity {
            return Ok(rho);
        }
        rho.validate()?;
        apply_symmetric(&self.channel, &rho)
    }

    fn input(&self) -> Result<InputState<f64>> {
        self.input
            .ok_or_else(|| Error::Consistency("teleportation input missing".into()))
    }

    fn closed(&self, measures: &[Measure]) -> Result<Vec<f64>> {
        let res = self.resource_closed()?;
        let state = match self.spec.target {
            Target::Resource => res,
            Target::Teleported => teleport_x_closed(&res, &self.input()?),
        };
        measures
            .iter()
            .map(|m| match m {
                Measure::Ln => Ok(negativity_x(&state)),
                Measure::Lqu => lqu_x(&state),
                Measure::Lqfi => lqfi_x(&state),
                Measure::Fidelity => {
                    let inp = self.input()?;
                    Ok(fidelity_closed(&teleport_x_closed(&res, &inp), &inp))
                }
            })
            .collect()
    }

    fn oracle(&self, measures: &[Measure]) -> Result<Vec<f64>> {
        let res = self.resource_oracle()?;
        let teleported = if self.spec.needs_input() {
            let rho_in = input_density_with(&self.input()?, self.spec.layout);
            let out = teleport_generic_from(&res, &rho_in)?;
            Some((rho_in, out))
        } else {
            None
        };
        let state = match (self.spec.target, &teleported) {
            (Target::Teleported, Some((_, out))) => *out,
            _ => res,
        };
        measures
            .iter()
            .map(|m| match m {
                Measure::Ln => negativity_generic(&state),
                Measure::Lqu => lqu_generic(&state),
                Measure::Lqfi => lqfi_generic(&state),
                Measure::Fidelity => {
                    let (rho_in, out) = teleported
                        .as_ref()
                        .ok_or_else(|| Error::Consistency("teleported state missing".into()))?;
                    fidelity_uhlmann(rho_in, out)
                }
            })
            .collect()
    }
}

fn evaluate(spec: &SweepSpec, pt: &Point) -> Result<SweepRecord> {
    let u = spec.angle_unit;
    let input = if spec.needs_input() {
        Some(InputState::new(u.to_rad(pt.theta), u.to_rad(pt.phase))?)
    } else {
        None
    };
    let ctx = Context {
        spec,
        params: pt.pair.params(),
        channel: QubitChannel::new(spec.channel, pt.s)?,
        s: pt.s,
        scatter: u.to_rad(pt.scatter),
        input,
    };
    let (values, deltas) = match spec.engine {
        Engine::Closed => (ctx.closed(&spec.measures)?, Vec::new()),
        Engine::Oracle => (ctx.oracle(&spec.measures)?, Vec::new()),
        Engine::Both => {
            let o = ctx.oracle(&spec.measures)?;
            let c = ctx.closed(&spec.measures)?;
            let d: Vec<f64> = c.iter().zip(&o).map(|(c, o)| c - o).collect();
            (o, d)
        }
    };
    let tag = |v: Vec<f64>| spec.measures.iter().copied().zip(v).collect::<Vec<_>>();
    Ok(SweepRecord {
        pair: pt.pair,
        channel: spec.channel,
        s: pt.s,
        scatter: pt.scatter,
        theta: spec.needs_input().then_some(pt.theta),
        phase: spec.needs_input().then_some(pt.phase),
        engine: spec.engine,
        values: tag(values),
        deltas: tag(deltas),
    })
}

/// Evaluates every grid tuple; records come back in grid order whether or
/// not the evaluation runs in parallel.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRecord>> {
    spec.validate()?;
    let points = spec.points();
    let results: Vec<Result<SweepRecord>> = if spec.parallel {
        points.par_iter().map(|p| evaluate(spec, p)).collect()
    } else {
        points.iter().map(|p| evaluate(spec, p)).collect()
    };
    results.into_iter().collect()
}

/// A measure's angular maximum and every angle attaining it.
#[derive(Clone, Debug, PartialEq)]
pub struct Maxima {
    pub pair: Species,
    pub measure: Measure,
    pub engine: Engine,
    pub value: f64,
    pub angles_deg: Vec<f64>,
}

/// Scan step of the maxima search in degrees.
pub const MAXIMA_SCAN_STEP_DEG: f64 = 0.25;
/// Golden-section bracket tolerance in radians.
pub const MAXIMA_REFINE_TOL: f64 = 1e-4;
/// Maxima within this of the global maximum are all reported.
pub const MAXIMA_TIE_TOL: f64 = 1e-6;

fn golden_max<F: Fn(f64) -> Result<f64>>(f: &F, mut a: f64, mut b: f64) -> Result<(f64, f64)> {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while b - a > MAXIMA_REFINE_TOL {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2)?;
        }
    }
    Ok(if f1 >= f2 { (x1, f1) } else { (x2, f2) })
}

/// Local maxima of a sampled curve. A run of equal samples counts once, at
/// its midpoint.
fn local_maxima(values: &[f64]) -> Vec<usize> {
    let n = values.len();
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && values[j + 1] == values[i] {
            j += 1;
        }
        let left_ok = i == 0 || values[i - 1] < values[i];
        let right_ok = j == n - 1 || values[j + 1] < values[i];
        if left_ok && right_ok {
            out.push((i + j) / 2);
        }
        i = j + 1;
    }
    out
}

/// Maximises one measure over the scattering angle `φ ∈ [0°, 180°]`.
///
/// Uses `spec` for everything except `pairs`, `scatter_grid` and
/// `measures`; the first entry of the `s`, `theta` and `phase` grids is
/// used. With engine `both`, the closed and oracle curves are searched
/// separately.
pub fn find_maxima(spec: &SweepSpec, pair: Species, measure: Measure) -> Result<Vec<Maxima>> {
    let engines: Vec<Engine> = match spec.engine {
        Engine::Both => vec![Engine::Closed, Engine::Oracle],
        e => vec![e],
    };
    let mut single = spec.clone();
    single.pairs = vec![pair];
    single.measures = vec![measure];
    single.s_grid.truncate(1);
    single.theta_grid.truncate(1);
    single.phase_grid.truncate(1);
    single.angle_unit = AngleUnit::Radians;
    let theta0 = spec.angle_unit.to_rad(
        *spec
            .theta_grid
            .first()
            .unwrap_or(&std::f64::consts::FRAC_PI_2),
    );
    let phase0 = spec
        .angle_unit
        .to_rad(*spec.phase_grid.first().unwrap_or(&0.0));
    single.theta_grid = vec![theta0];
    single.phase_grid = vec![phase0];
    single.scatter_grid = vec![0.0];
    single.validate()?;

    let s0 = single.s_grid[0];
    engines
        .into_iter()
        .map(|engine| {
            let mut one = single.clone();
            one.engine = engine;
            let f = |phi: f64| -> Result<f64> {
                let phi = phi.clamp(0.0, std::f64::consts::PI);
                let pt = Point {
                    pair,
                    s: s0,
                    scatter: phi,
                    theta: theta0,
                    phase: phase0,
                };
                Ok(evaluate(&one, &pt)?.values[0].1)
            };
            maximise(&f, pair, measure, engine)
        })
        .collect()
}

fn maximise<F: Fn(f64) -> Result<f64>>(
    f: &F,
    pair: Species,
    measure: Measure,
    engine: Engine,
) -> Result<Maxima> {
    let steps = (180.0 / MAXIMA_SCAN_STEP_DEG).round() as usize;
    let grid: Vec<f64> = (0..=steps)
        .map(|i| (i as f64 * MAXIMA_SCAN_STEP_DEG).to_radians())
        .collect();
    let samples = grid.iter().map(|&g| f(g)).collect::<Result<Vec<f64>>>()?;
    let step = MAXIMA_SCAN_STEP_DEG.to_radians();

    let mut found: Vec<(f64, f64)> = Vec::new();
    for idx in local_maxima(&samples) {
        let lo = (grid[idx] - step).max(0.0);
        let hi = (grid[idx] + step).min(std::f64::consts::PI);
        let (x, v) = golden_max(f, lo, hi)?;
        let (x, v) = if v >= samples[idx] {
            (x, v)
        } else {
            (grid[idx], samples[idx])
        };
        found.push((x, v));
    }
    let best = found.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let mut angles: Vec<f64> = found
        .into_iter()
        .filter(|p| p.1 >= best - MAXIMA_TIE_TOL)
        .map(|p| p.0.to_degrees())
        .collect();
    angles.sort_by(|a, b| a.total_cmp(b));
    angles.dedup_by(|a, b| (*a - *b).abs() < 1e-3);
    Ok(Maxima {
        pair,
        measure,
        engine,
        value: best,
        angles_deg: angles,
    })
}

fn fmt_f64(v: f64) -> Result<String> {
    if !v.is_finite() {
        return Err(Error::Consistency(format!(
            "non-finite value {v} in output"
        )));
    }
    Ok(format!("{v:?}"))
}

enum Cell {
    Text(String),
    Num(f64),
}

fn record_rows(records: &[SweepRecord], unit: AngleUnit) -> (Vec<String>, Vec<Vec<Cell>>) {
    let sfx = unit.suffix();
    let (has_input, measures, with_delta) = match records.first() {
        Some(r) => (
            r.theta.is_some(),
            r.values.iter().map(|p| p.0).collect::<Vec<_>>(),
            !r.deltas.is_empty(),
        ),
        None => (false, Vec::new(), false),
    };
    let mut header: Vec<String> = vec![
        "pair".into(),
        "channel".into(),
        "s".into(),
        format!("scatter_{sfx}"),
    ];
    if has_input {
        header.push(format!("theta_{sfx}"));
        header.push(format!("phase_{sfx}"));
    }
    header.push("engine".into());
    header.extend(measures.iter().map(|m| m.name().to_string()));
    if with_delta {
        header.extend(measures.iter().map(|m| format!("{}_delta", m.name())));
    }
    let rows = records
        .iter()
        .map(|r| {
            let mut row = vec![
                Cell::Text(r.pair.name().into()),
                Cell::Text(r.channel.name().into()),
                Cell::Num(r.s),
                Cell::Num(r.scatter),
            ];
            if let (Some(t), Some(p)) = (r.theta, r.phase) {
                row.push(Cell::Num(t));
                row.push(Cell::Num(p));
            }
            row.push(Cell::Text(r.engine.name().into()));
            row.extend(r.values.iter().map(|p| Cell::Num(p.1)));
            row.extend(r.deltas.iter().map(|p| Cell::Num(p.1)));
            row
        })
        .collect();
    (header, rows)
}

/// Column names for a sweep's records (header only when there are none).
pub fn sweep_header(spec: &SweepSpec) -> Vec<String> {
    let sfx = spec.angle_unit.suffix();
    let mut h: Vec<String> = vec![
        "pair".into(),
        "channel".into(),
        "s".into(),
        format!("scatter_{sfx}"),
    ];
    if spec.needs_input() {
        h.push(format!("theta_{sfx}"));
        h.push(format!("phase_{sfx}"));
    }
    h.push("engine".into());
    h.extend(spec.measures.iter().map(|m| m.name().to_string()));
    if spec.engine == Engine::Both {
        h.extend(spec.measures.iter().map(|m| format!("{}_delta", m.name())));
    }
    h
}

fn render(header: &[String], rows: &[Vec<Cell>], format: Format) -> Result<String> {
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str(&header.join(","));
            out.push('\n');
            for row in rows {
                let cells = row
                    .iter()
                    .map(|c| match c {
                        Cell::Text(t) => Ok(t.clone()),
                        Cell::Num(v) => fmt_f64(*v),
                    })
                    .collect::<Result<Vec<_>>>()?;
                out.push_str(&cells.join(","));
                out.push('\n');
            }
        }
        Format::Json => {
            out.push('[');
            for (i, row) in rows.iter().enumerate() {
                out.push_str(if i == 0 { "\n  {" } else { ",\n  {" });
                for (k, (name, cell)) in header.iter().zip(row).enumerate() {
                    if k > 0 {
                        out.push_str(", ");
                    }
                    let key = serde_json::to_string(name)
                        .map_err(|e| Error::Consistency(e.to_string()))?;
                    let val = match cell {
                        Cell::Text(t) => serde_json::to_string(t)
                            .map_err(|e| Error::Consistency(e.to_string()))?,
                        Cell::Num(v) => fmt_f64(*v)?,
                    };
                    let _ = write!(out, "{key}: {val}");
                }
                out.push('}');
            }
            out.push_str(if rows.is_empty() { "]\n" } else { "\n]\n" });
        }
    }
    Ok(out)
}

/// Serialises sweep records. `spec` supplies the header when `records` is
/// empty.
pub fn emit(spec: &SweepSpec, records: &[SweepRecord], format: Format) -> Result<String> {
    let (header, rows) = if records.is_empty() {
        (sweep_header(spec), Vec::new())
    } else {
        record_rows(records, spec.angle_unit)
    };
    render(&header, &rows, format)
}

pub fn emit_maxima(maxima: &[Maxima], format: Format) -> Result<String> {
    let header: Vec<String> = ["pair", "measure", "engine", "value", "angles_deg"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let rows = maxima
        .iter()
        .map(|m| {
            let angles = m
                .angles_deg
                .iter()
                .map(|a| fmt_f64(*a))
                .collect::<Result<Vec<_>>>()?
                .join(";");
            Ok(vec![
                Cell::Text(m.pair.name().into()),
                Cell::Text(m.measure.name().into()),
                Cell::Text(m.engine.name().into()),
                Cell::Num(m.value),
                Cell::Text(angles),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    render(&header, &rows, format)
}

pub fn emit_params(format: Format) -> Result<String> {
    let header: Vec<String> = [
        "pair",
        "label",
        "alpha_psi",
        "delta_phi_rad",
        "beta_psi",
        "gamma_psi",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let rows = Species::ALL
        .iter()
        .map(|sp| {
            let p = sp.params::<f64>();
            vec![
                Cell::Text(sp.name().into()),
                Cell::Text(sp.label().into()),
                Cell::Num(p.alpha_psi()),
                Cell::Num(p.delta_phi()),
                Cell::Num(p.beta_psi()),
                Cell::Num(p.gamma_psi()),
            ]
        })
        .collect::<Vec<_>>();
    render(&header, &rows, format)
}
