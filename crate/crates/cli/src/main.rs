use std::io::Write;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use hyperon_qi::spin_state::Species;
use hyperon_qi::sweep::{
    emit, emit_maxima, emit_params, find_maxima, parse_grid, run_sweep, AngleUnit, Format,
    StateSource, SweepSpec, Target,
};
use hyperon_qi::teleport::InputLayout;
use hyperon_qi::{verify, Error};

/// Spin correlations, decoherence and teleportation fidelity of
/// hyperon-antihyperon pairs.
#[derive(Parser, Debug)]
#[command(name = "hyperon-qi", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate measures on a parameter grid.
    Sweep(GridArgs),
    /// Locate the scattering-angle maxima of each measure.
    Maxima(GridArgs),
    /// Teleport an input state through the pair and report fidelity.
    Teleport(GridArgs),
    /// Print the built-in decay parameters.
    Params(OutArgs),
    /// Run the acceptance and consistency suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct OutArgs {
    /// csv or json.
    #[arg(long, default_value = "csv")]
    format: String,
    /// Output file, or `stdout`.
    #[arg(long, default_value = "stdout")]
    out: String,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Output file, or `stdout`.
    #[arg(long, default_value = "stdout")]
    out: String,
}

#[derive(Args, Debug)]
struct GridArgs {
    /// Lambda, SigmaPlus, XiMinus, XiZero, a comma list of these, or all.
    #[arg(long, default_value = "all")]
    pair: String,
    /// none, ad, pf or pd.
    #[arg(long, default_value = "none")]
    channel: String,
    /// Channel strength: v, a,b,c or start:stop:n.
    #[arg(long, default_value = "0")]
    s: String,
    /// Scattering angle grid [default: 181 points over 0..π].
    #[arg(long)]
    scatter: Option<String>,
    /// Teleported input polar angle [default: π/2].
    #[arg(long)]
    theta: Option<String>,
    /// Teleported input phase [default: 0].
    #[arg(long)]
    phase: Option<String>,
    /// Comma list of ln, lqu, lqfi, fidelity.
    #[arg(long)]
    measures: Option<String>,
    /// closed, oracle or both.
    #[arg(long, default_value = "both")]
    engine: String,
    /// Resource state: block-eigen, printed, local-unitary or theta.
    #[arg(long, default_value = "block-eigen")]
    state: String,
    /// Evaluate ln, lqu and lqfi on the resource or the teleported state.
    #[arg(long, default_value = "resource")]
    target: String,
    /// Read and write angles in degrees.
    #[arg(long)]
    degrees: bool,
    /// Use the printed input-matrix layout for teleportation.
    #[arg(long = "eq42-compat")]
    eq42_compat: bool,
    /// Evaluate grid points on one thread.
    #[arg(long)]
    serial: bool,
    /// csv or json.
    #[arg(long, default_value = "csv")]
    format: String,
    /// Output file, or `stdout`.
    #[arg(long, default_value = "stdout")]
    out: String,
}

fn parse_list<T: FromStr<Err = Error>>(text: &str) -> Result<Vec<T>, Error> {
    text.split(',').map(|t| t.trim().parse()).collect()
}

fn parse_pairs(text: &str) -> Result<Vec<Species>, Error> {
    if text.eq_ignore_ascii_case("all") {
        return Ok(Species::ALL.to_vec());
    }
    text.split(',')
        .map(|t| Species::from_name(t.trim()))
        .collect()
}

impl GridArgs {
    fn spec(&self, teleport: bool) -> Result<SweepSpec, Error> {
        let unit = if self.degrees {
            AngleUnit::Degrees
        } else {
            AngleUnit::Radians
        };
        let full = match unit {
            AngleUnit::Radians => format!("0:{}:181", std::f64::consts::PI),
            AngleUnit::Degrees => "0:180:181".to_string(),
        };
        let right = match unit {
            AngleUnit::Radians => std::f64::consts::FRAC_PI_2.to_string(),
            AngleUnit::Degrees => "90".to_string(),
        };
        let default_measures = if teleport { "fidelity" } else { "ln,lqu,lqfi" };
        let target = if teleport {
            Target::Teleported
        } else {
            self.target.parse()?
        };
        Ok(SweepSpec {
            pairs: parse_pairs(&self.pair)?,
            channel: self.channel.parse()?,
            s_grid: parse_grid(&self.s)?,
            scatter_grid: parse_grid(self.scatter.as_deref().unwrap_or(&full))?,
            theta_grid: parse_grid(self.theta.as_deref().unwrap_or(&right))?,
            phase_grid: parse_grid(self.phase.as_deref().unwrap_or("0"))?,
            angle_unit: unit,
            measures: parse_list(self.measures.as_deref().unwrap_or(default_measures))?,
            engine: self.engine.parse()?,
            source: self.state.parse::<StateSource>()?,
            target,
            layout: if self.eq42_compat {
                InputLayout::PrintedMatrix
            } else {
                InputLayout::Ket
            },
            parallel: !self.serial,
        })
    }
}

fn write_out(stdout: &mut dyn Write, path: &str, text: &str) -> Result<(), Error> {
    let res = if path == "stdout" || path == "-" {
        stdout
            .write_all(text.as_bytes())
            .and_then(|_| stdout.flush())
    } else {
        std::fs::write(path, text)
    };
    res.map_err(|e| Error::Usage(format!("cannot write {path}: {e}")))
}

fn run(cli: Cli, stdout: &mut dyn Write) -> Result<bool, Error> {
    match cli.command {
        Command::Sweep(a) => {
            let spec = a.spec(false)?;
            let text = emit(&spec, &run_sweep(&spec)?, Format::from_str(&a.format)?)?;
            write_out(stdout, &a.out, &text)?;
        }
        Command::Teleport(a) => {
            let spec = a.spec(true)?;
            let text = emit(&spec, &run_sweep(&spec)?, Format::from_str(&a.format)?)?;
            write_out(stdout, &a.out, &text)?;
        }
        Command::Maxima(a) => {
            let spec = a.spec(false)?;
            let format = Format::from_str(&a.format)?;
            let mut all = Vec::new();
            for &pair in &spec.pairs {
                for &m in &spec.measures {
                    all.extend(find_maxima(&spec, pair, m)?);
                }
            }
            write_out(stdout, &a.out, &emit_maxima(&all, format)?)?;
        }
        Command::Params(a) => {
            write_out(stdout, &a.out, &emit_params(Format::from_str(&a.format)?)?)?
        }
        Command::Verify(a) => {
            let report = verify::verify();
            write_out(stdout, &a.out, &report.render())?;
            return Ok(report.all_pass());
        }
    }
    Ok(true)
}

/// Parses `args`, runs the command and returns the process exit code:
/// 0 on success, 1 for usage errors, 2 for internal-consistency failures.
fn execute<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().ansi().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
                1
            } else {
                let _ = write!(stdout, "{rendered}");
                0
            };
        }
    };
    match run(cli, stdout) {
        Ok(true) => 0,
        Ok(false) => 2,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            match e {
                Error::Consistency(_) | Error::NotConverged { .. } => 2,
                _ => 1,
            }
        }
    }
}

fn main() -> ExitCode {
    let code = execute(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    ExitCode::from(code)
}
