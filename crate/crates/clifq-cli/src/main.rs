//! Command-line front end for the clifq engine.
//!
//! Five subcommands: `simulate` runs a gate sequence on a ket, `schmidt`
//! factors a two-qubit state, `channel` analyzes a one-qubit channel,
//! `demo-nmr` evolves a transverse equilibrium state under a Zeeman
//! Hamiltonian, and `demo-boost` sweeps a polarization boost comparing two
//! closed forms. Reports are CSV sections with 15-significant-digit
//! numbers, written to stdout or to `--out`, and are deterministic for
//! identical inputs. Options may also come from a `--config` file of
//! `key = value` lines; explicit flags win over config entries.

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use clifq::multiqubit::{CorrelatedElement, DensityOperator, Ket, Spinor};
use clifq::{channels, gates, nmr, oracle, schmidt, spacetime};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::{fs, io};

type Result<T> = anyhow::Result<T>;

/// Products on the correlated basis cost 16^N coefficient multiplies, so
/// interactive use stops being interactive well before memory runs out.
const MAX_QUBITS: usize = 5;

#[derive(Parser)]
#[command(
    name = "clifq",
    version,
    about = "Geometric-algebra toolkit for multi-qubit states, gates, and channels"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a gate sequence on a ket and report the final state
    Simulate(SimulateArgs),
    /// Factor a two-qubit ket into local rotations, a phase, and a tangler
    Schmidt(SchmidtArgs),
    /// Analyze a one-qubit channel given as Kraus operators or a diagonal map
    Channel(ChannelArgs),
    /// Evolve a transverse equilibrium state under a Zeeman Hamiltonian
    #[command(name = "demo-nmr")]
    DemoNmr(NmrArgs),
    /// Sweep a polarization boost, comparing the rational and rapidity forms
    #[command(name = "demo-boost")]
    DemoBoost(BoostArgs),
}

#[derive(Args)]
struct Common {
    /// Input file (circuit, ket, or channel, depending on the command)
    #[arg(long = "in", value_name = "PATH")]
    input: Option<PathBuf>,
    /// Write the report here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// File of `key = value` lines supplying defaults for any long flag
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Number of qubits
    #[arg(long, value_name = "N")]
    qubits: Option<usize>,
    /// Seed recorded in the report header (every command is deterministic)
    #[arg(long, value_name = "S")]
    seed: Option<u64>,
    /// Tolerance for the report's verdict lines
    #[arg(long, value_name = "T")]
    tol: Option<f64>,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    common: Common,
    /// Initial basis state as a bitstring, qubit 1 leftmost
    #[arg(long, value_name = "BITS")]
    init: Option<String>,
    /// Initial state from a ket file instead of a basis state
    #[arg(long, value_name = "PATH")]
    ket: Option<PathBuf>,
}

#[derive(Args)]
struct SchmidtArgs {
    #[command(flatten)]
    common: Common,
    /// Analyze a basis state instead of reading a ket file
    #[arg(long, value_name = "BITS")]
    basis: Option<String>,
}

#[derive(Args)]
struct ChannelArgs {
    #[command(flatten)]
    common: Common,
    /// Analyze the diagonal unital map diag(lx,ly,lz) directly
    #[arg(long, value_name = "LX,LY,LZ", value_delimiter = ',', allow_negative_numbers = true)]
    diagonal: Option<Vec<f64>>,
    /// Built-in channel: phase-damping, depolarizing, or amplitude-damping
    #[arg(long, value_name = "NAME")]
    named: Option<String>,
    /// Probability parameter for --named channels
    #[arg(long, value_name = "P")]
    p: Option<f64>,
}

#[derive(Args)]
struct NmrArgs {
    #[command(flatten)]
    common: Common,
    /// Larmor frequencies, one per qubit, in radians per unit time
    #[arg(long, value_name = "W1,W2,...", value_delimiter = ',', allow_negative_numbers = true)]
    omega: Option<Vec<f64>>,
    /// Transverse polarization of the equilibrium state
    #[arg(long, value_name = "A")]
    alpha: Option<f64>,
    /// Detector gain multiplying the magnetization
    #[arg(long, value_name = "G")]
    gamma: Option<f64>,
    /// Total evolution time
    #[arg(long, value_name = "T")]
    duration: Option<f64>,
    /// Number of time samples
    #[arg(long, value_name = "S")]
    samples: Option<usize>,
}

#[derive(Args)]
struct BoostArgs {
    #[command(flatten)]
    common: Common,
    /// Polarization along the boost axis before the boost
    #[arg(long, value_name = "A", allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// Inverse temperature; with --epsilon sets alpha = tanh(-beta*epsilon/2)
    #[arg(long, value_name = "B", allow_negative_numbers = true)]
    beta: Option<f64>,
    /// Level splitting paired with --beta
    #[arg(long, value_name = "E", allow_negative_numbers = true)]
    epsilon: Option<f64>,
    /// Lower end of the rapidity sweep
    #[arg(long, value_name = "L", allow_negative_numbers = true)]
    lambda_min: Option<f64>,
    /// Upper end of the rapidity sweep
    #[arg(long, value_name = "L", allow_negative_numbers = true)]
    lambda_max: Option<f64>,
    /// Number of sweep points
    #[arg(long, value_name = "K")]
    steps: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Simulate(a) => cmd_simulate(a),
        Command::Schmidt(a) => cmd_schmidt(a),
        Command::Channel(a) => cmd_channel(a),
        Command::DemoNmr(a) => cmd_demo_nmr(a),
        Command::DemoBoost(a) => cmd_demo_boost(a),
    }
}

// ---------------------------------------------------------------------------
// Config file and option resolution

/// Values from a `key = value` config file. Keys are the long flag names
/// without the leading dashes; lines starting with `#` and blank lines are
/// skipped.
#[derive(Debug)]
struct Config {
    entries: BTreeMap<String, String>,
}

impl Config {
    fn empty() -> Self {
        Config {
            entries: BTreeMap::new(),
        }
    }

    fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                anyhow!("{}:{}: expected `key = value`", path.display(), i + 1)
            })?;
            entries.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(Config { entries })
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        match self.entries.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|e| anyhow!("config key `{key}`: cannot parse `{raw}`: {e}")),
        }
    }

    fn get_list(&self, key: &str) -> Result<Option<Vec<f64>>> {
        match self.entries.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .split(',')
                .map(|s| {
                    s.trim().parse().map_err(|e| {
                        anyhow!("config key `{key}`: cannot parse `{}`: {e}", s.trim())
                    })
                })
                .collect::<Result<Vec<f64>>>()
                .map(Some),
        }
    }
}

fn load_config(path: &Option<PathBuf>) -> Result<Config> {
    match path {
        Some(p) => Config::load(p),
        None => Ok(Config::empty()),
    }
}

/// Flag value if present, else the config entry, else `None`.
fn pick<T: FromStr>(flag: Option<T>, cfg: &Config, key: &str) -> Result<Option<T>>
where
    T::Err: std::fmt::Display,
{
    match flag {
        Some(v) => Ok(Some(v)),
        None => cfg.get(key),
    }
}

fn pick_or<T: FromStr>(flag: Option<T>, cfg: &Config, key: &str, default: T) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    Ok(pick(flag, cfg, key)?.unwrap_or(default))
}

fn pick_list(flag: Option<Vec<f64>>, cfg: &Config, key: &str) -> Result<Option<Vec<f64>>> {
    match flag {
        Some(v) => Ok(Some(v)),
        None => cfg.get_list(key),
    }
}

// ---------------------------------------------------------------------------
// Report formatting

/// One float, 15 significant digits, locale-independent. Negative zero is
/// folded into zero so goldens do not depend on how a zero was reached.
fn num(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.14e}")
}

/// CSV report broken into `# titled` sections, each with a header row.
struct Report(String);

impl Report {
    fn new(command: &str, seed: u64) -> Self {
        let mut r = Report(String::new());
        r.section("run", &["quantity", "value"]);
        r.kv("command", command);
        r.kv("seed", &seed.to_string());
        r
    }

    fn section(&mut self, title: &str, columns: &[&str]) {
        if !self.0.is_empty() {
            self.0.push('\n');
        }
        writeln!(self.0, "# {title}").unwrap();
        writeln!(self.0, "{}", columns.join(",")).unwrap();
    }

    fn row(&mut self, cells: &[&str]) {
        writeln!(self.0, "{}", cells.join(",")).unwrap();
    }

    fn kv(&mut self, key: &str, value: &str) {
        self.row(&[key, value]);
    }

    fn write_out(&self, out: &Option<PathBuf>) -> Result<()> {
        match out {
            Some(p) => fs::write(p, &self.0)
                .with_context(|| format!("writing report to {}", p.display())),
            None => {
                use io::Write as _;
                io::stdout()
                    .lock()
                    .write_all(self.0.as_bytes())
                    .context("writing report to stdout")
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Ket input

fn check_bits(bits: &str, what: &str) -> Result<()> {
    if bits.is_empty() || !bits.bytes().all(|b| b == b'0' || b == b'1') {
        bail!("{what}: `{bits}` is not a bitstring");
    }
    Ok(())
}

fn check_qubits(n: usize, declared: Option<usize>) -> Result<usize> {
    if let Some(d) = declared {
        if d != n {
            bail!("--qubits says {d} but the state has {n} qubits");
        }
    }
    if n == 0 {
        bail!("the state must have at least one qubit");
    }
    if n > MAX_QUBITS {
        bail!("{n} qubits requested; this tool stops at {MAX_QUBITS} (products cost 16^N)");
    }
    Ok(n)
}

fn basis_ket(bits: &str, declared: Option<usize>) -> Result<Ket> {
    check_bits(bits, "basis state")?;
    let n = check_qubits(bits.len(), declared)?;
    Ok(Ket::basis(n, usize::from_str_radix(bits, 2).unwrap()))
}

/// Ket file: one amplitude per line, `bitstring re [im]`, with `#` comment
/// lines. Unlisted bitstrings are zero; the ket is normalized after reading.
fn parse_ket_file(path: &Path, declared: Option<usize>) -> Result<Ket> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading ket {}", path.display()))?;
    let name = path.display();
    let mut n: Option<usize> = None;
    let mut amps: Vec<Complex64> = Vec::new();
    let mut seen: Vec<bool> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() < 2 || fields.len() > 3 {
            bail!("{name}:{}: expected `bitstring re [im]`", i + 1);
        }
        check_bits(fields[0], &format!("{name}:{}", i + 1))?;
        let here = fields[0].len();
        match n {
            None => {
                let k = check_qubits(here, declared)?;
                n = Some(k);
                amps = vec![Complex64::new(0.0, 0.0); 1 << k];
                seen = vec![false; 1 << k];
            }
            Some(k) if k != here => {
                bail!("{name}:{}: bitstring has {here} bits, expected {k}", i + 1)
            }
            _ => {}
        }
        let idx = usize::from_str_radix(fields[0], 2).unwrap();
        let re: f64 = fields[1]
            .parse()
            .map_err(|e| anyhow!("{name}:{}: bad real part: {e}", i + 1))?;
        let im: f64 = match fields.get(2) {
            Some(s) => s
                .parse()
                .map_err(|e| anyhow!("{name}:{}: bad imaginary part: {e}", i + 1))?,
            None => 0.0,
        };
        if seen[idx] {
            bail!("{name}:{}: duplicate amplitude for |{}>", i + 1, fields[0]);
        }
        seen[idx] = true;
        amps[idx] = Complex64::new(re, im);
    }
    let n = n.ok_or_else(|| anyhow!("{name}: no amplitudes found"))?;
    let ket = Ket::new(n, amps).map_err(|e| anyhow!("{name}: {e}"))?;
    ket.normalized().map_err(|e| anyhow!("{name}: {e}"))
}

fn bitstring(idx: usize, n: usize) -> String {
    format!("{idx:0n$b}")
}

fn ket_section(report: &mut Report, title: &str, ket: &Ket) {
    let shown = ket.phase_normalized();
    report.section(title, &["bitstring", "re", "im"]);
    let n = shown.n_qubits();
    for (idx, a) in shown.amps().iter().enumerate() {
        report.row(&[&bitstring(idx, n), &num(a.re), &num(a.im)]);
    }
}

// ---------------------------------------------------------------------------
// simulate

fn cmd_simulate(args: SimulateArgs) -> Result<()> {
    let cfg = load_config(&args.common.config)?;
    let input: Option<PathBuf> = pick(args.common.input, &cfg, "in")?;
    let out: Option<PathBuf> = pick(args.common.out, &cfg, "out")?;
    let qubits: Option<usize> = pick(args.common.qubits, &cfg, "qubits")?;
    let seed: u64 = pick_or(args.common.seed, &cfg, "seed", 0)?;
    let init: Option<String> = pick(args.init, &cfg, "init")?;
    let ket_path: Option<PathBuf> = pick(args.ket, &cfg, "ket")?;

    let ket = match (&ket_path, &init) {
        (Some(_), Some(_)) => bail!("--ket and --init are mutually exclusive"),
        (Some(p), None) => parse_ket_file(p, qubits)?,
        (None, Some(bits)) => basis_ket(bits, qubits)?,
        (None, None) => {
            let n = qubits.ok_or_else(|| {
                anyhow!("--qubits is required when neither --ket nor --init is given")
            })?;
            Ket::basis(check_qubits(n, None)?, 0)
        }
    };
    let n = ket.n_qubits();

    let ops = match &input {
        Some(p) => {
            let text = fs::read_to_string(p)
                .with_context(|| format!("reading circuit {}", p.display()))?;
            gates::parse_circuit(&text, n, &p.display().to_string())?
        }
        None => Vec::new(),
    };

    // Two independent routes to the final state: the spinor algebra and the
    // matrix representation of the whole sequence.
    let final_ket = gates::run_circuit(&ops, &ket)?;
    let u = gates::circuit_element(&ops, n)?;
    let matrix_amps = oracle::represent(&u).apply_vec(ket.amps());
    let residual = final_ket
        .amps()
        .iter()
        .zip(&matrix_amps)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0f64, f64::max);

    let density = DensityOperator::pure(&Spinor::from_ket(&final_ket)?)?;
    let expansion = density.product_operator_expand();

    let mut report = Report::new("simulate", seed);
    report.kv("qubits", &n.to_string());
    report.kv("gates", &ops.len().to_string());
    ket_section(&mut report, "final ket", &final_ket);
    report.section("density product-operator expansion", &["term", "coefficient"]);
    for (idx, coeff) in expansion.iter().enumerate() {
        report.row(&[&CorrelatedElement::term_label(n, idx), &num(*coeff)]);
    }
    report.section("checks", &["quantity", "value"]);
    report.kv("oracle_residual", &num(residual));
    report.kv("final_norm", &num(final_ket.norm()));
    report.write_out(&out)
}

// ---------------------------------------------------------------------------
// schmidt

fn cmd_schmidt(args: SchmidtArgs) -> Result<()> {
    let cfg = load_config(&args.common.config)?;
    let input: Option<PathBuf> = pick(args.common.input, &cfg, "in")?;
    let out: Option<PathBuf> = pick(args.common.out, &cfg, "out")?;
    let qubits: Option<usize> = pick(args.common.qubits, &cfg, "qubits")?;
    let seed: u64 = pick_or(args.common.seed, &cfg, "seed", 0)?;
    let tol: f64 = pick_or(args.common.tol, &cfg, "tol", 1e-8)?;
    let basis: Option<String> = pick(args.basis, &cfg, "basis")?;

    let ket = match (&input, &basis) {
        (Some(_), Some(_)) => bail!("--in and --basis are mutually exclusive"),
        (Some(p), None) => parse_ket_file(p, qubits)?,
        (None, Some(bits)) => basis_ket(bits, qubits)?,
        (None, None) => bail!("give a ket with --in FILE or --basis BITS"),
    };
    if ket.n_qubits() != 2 {
        bail!("schmidt analysis needs a two-qubit state, got {} qubits", ket.n_qubits());
    }

    let psi = Spinor::from_ket(&ket)?;
    let factors = schmidt::schmidt_decompose(&psi)?;
    let (tangle_invariant, _) = schmidt::tangle_invariant(&psi)?;
    let product = schmidt::is_product_state(&psi, tol)?;
    let reconstructed = schmidt::reconstruct(&factors)?;
    let residual = reconstructed.to_ket().density_distance(&ket);
    let (v1, v2) = factors.singular_values();

    let mut report = Report::new("schmidt", seed);
    ket_section(&mut report, "input ket", &ket);
    report.section("schmidt factors", &["quantity", "value"]);
    report.kv("polar1", &num(factors.polar1));
    report.kv("azimuth1", &num(factors.azimuth1));
    report.kv("polar2", &num(factors.polar2));
    report.kv("azimuth2", &num(factors.azimuth2));
    report.kv("tangle", &num(factors.tangle));
    report.kv("phase", &num(factors.phase));
    report.kv("v11", &num(v1));
    report.kv("v22", &num(v2));
    report.section("checks", &["quantity", "value"]);
    report.kv("tolerance", &num(tol));
    report.kv("product_state", if product { "true" } else { "false" });
    report.kv("tangle_invariant_route", &num(tangle_invariant));
    report.kv(
        "tangle_route_agreement",
        &num((factors.tangle - tangle_invariant).abs()),
    );
    report.kv("reconstruction_residual", &num(residual));
    report.write_out(&out)
}

// ---------------------------------------------------------------------------
// channel

fn diagonal_affine(l: &[f64; 3]) -> channels::AffineForm {
    let mut m = [[0.0; 3]; 3];
    for k in 0..3 {
        m[k][k] = l[k];
    }
    channels::AffineForm { m, t: [0.0; 3] }
}

fn tetrahedron_section(report: &mut Report, l: &[f64; 3], tol: f64) {
    let inside = channels::tetrahedron_check(l, tol);
    let bary = channels::tetrahedron_barycentric(l);
    report.section("tetrahedron", &["quantity", "value"]);
    report.kv("inside", if inside { "true" } else { "false" });
    for (i, b) in bary.iter().enumerate() {
        report.kv(&format!("b{i}"), &num(*b));
    }
}

fn cmd_channel(args: ChannelArgs) -> Result<()> {
    let cfg = load_config(&args.common.config)?;
    let input: Option<PathBuf> = pick(args.common.input, &cfg, "in")?;
    let out: Option<PathBuf> = pick(args.common.out, &cfg, "out")?;
    let qubits: Option<usize> = pick(args.common.qubits, &cfg, "qubits")?;
    let seed: u64 = pick_or(args.common.seed, &cfg, "seed", 0)?;
    let tol: f64 = pick_or(args.common.tol, &cfg, "tol", 1e-9)?;
    let diagonal = pick_list(args.diagonal, &cfg, "diagonal")?;
    let named: Option<String> = pick(args.named, &cfg, "named")?;
    let p: Option<f64> = pick(args.p, &cfg, "p")?;

    if let Some(q) = qubits {
        if q != 1 {
            bail!("channel analysis is single-qubit; --qubits {q} is not supported");
        }
    }

    let sources = [input.is_some(), diagonal.is_some(), named.is_some()];
    if sources.iter().filter(|&&s| s).count() != 1 {
        bail!("give exactly one channel source: --in FILE, --named NAME, or --diagonal LX,LY,LZ");
    }

    if let Some(l) = diagonal {
        if l.len() != 3 {
            bail!("--diagonal needs three values, got {}", l.len());
        }
        let l = [l[0], l[1], l[2]];
        let aff = diagonal_affine(&l);
        let choi_min = channels::affine_choi_min_eigenvalue(&aff)?;

        let mut report = Report::new("channel", seed);
        report.kv("source", "diagonal map");
        report.section("eigenvalues", &["quantity", "value"]);
        report.kv("lambda_x", &num(l[0]));
        report.kv("lambda_y", &num(l[1]));
        report.kv("lambda_z", &num(l[2]));
        tetrahedron_section(&mut report, &l, tol);
        report.section("complete positivity", &["quantity", "value"]);
        report.kv("choi_min_eigenvalue", &num(choi_min));
        report.kv("cp", if choi_min >= -tol { "true" } else { "false" });
        return report.write_out(&out);
    }

    let channel = if let Some(name) = &named {
        let p = p.ok_or_else(|| anyhow!("--named channels need --p"))?;
        match name.as_str() {
            "phase-damping" => channels::KrausChannel::phase_damping(p)?,
            "depolarizing" => channels::KrausChannel::depolarizing(p)?,
            "amplitude-damping" => channels::KrausChannel::amplitude_damping(p)?,
            other => bail!(
                "unknown channel `{other}`; pick phase-damping, depolarizing, or amplitude-damping"
            ),
        }
    } else {
        let path = input.as_ref().unwrap();
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading channel {}", path.display()))?;
        channels::parse_channel(&text, 1, &path.display().to_string())?
    };

    let normal_residual = channel.normal_residual();
    let unital_residual = channel.unital_residual();
    let normal = normal_residual <= tol;
    let unital = unital_residual <= tol;

    let mut report = Report::new("channel", seed);
    report.kv(
        "source",
        &named.unwrap_or_else(|| input.as_ref().unwrap().display().to_string()),
    );
    report.section("channel", &["quantity", "value"]);
    report.kv("kraus_operators", &channel.ops().len().to_string());
    report.kv("normal", if normal { "true" } else { "false" });
    report.kv("normal_residual", &num(normal_residual));
    report.kv(
        "normal_residual_quaternion",
        &num(channel.normal_residual_quaternion()?),
    );
    report.kv("unital", if unital { "true" } else { "false" });
    report.kv("unital_residual", &num(unital_residual));
    report.kv(
        "unital_residual_quaternion",
        &num(channel.unital_residual_quaternion()?),
    );

    // The affine picture needs trace preservation; the library draws that
    // line at 1e-9 regardless of the report tolerance.
    if normal_residual <= 1e-9 {
        let aff = channel.affine_form()?;
        report.section("affine map", &["axis", "x", "y", "z", "t"]);
        for (k, axis) in ["x", "y", "z"].iter().enumerate() {
            report.row(&[
                axis,
                &num(aff.m[k][0]),
                &num(aff.m[k][1]),
                &num(aff.m[k][2]),
                &num(aff.t[k]),
            ]);
        }
        let l = match channel.diagonal_eigenvalues() {
            Ok(l) => {
                report.section("eigenvalues", &["quantity", "value"]);
                report.kv("diagonalized", "false");
                report.kv("lambda_x", &num(l[0]));
                report.kv("lambda_y", &num(l[1]));
                report.kv("lambda_z", &num(l[2]));
                l
            }
            Err(_) => {
                let l = channels::signed_singular_triple(&aff.m);
                report.section("eigenvalues", &["quantity", "value"]);
                report.kv("diagonalized", "true");
                report.kv("lambda_1", &num(l[0]));
                report.kv("lambda_2", &num(l[1]));
                report.kv("lambda_3", &num(l[2]));
                l
            }
        };
        tetrahedron_section(&mut report, &l, tol);
    } else {
        report.section("affine map", &["quantity", "value"]);
        report.kv("unavailable", "channel is not normal");
    }

    let choi_min = channel.cp_residual_choi()?;
    report.section("complete positivity", &["quantity", "value"]);
    report.kv("choi_min_eigenvalue", &num(choi_min));
    report.kv("cp", if choi_min >= -tol { "true" } else { "false" });
    report.write_out(&out)
}

// ---------------------------------------------------------------------------
// demo-nmr

fn cmd_demo_nmr(args: NmrArgs) -> Result<()> {
    let cfg = load_config(&args.common.config)?;
    let out: Option<PathBuf> = pick(args.common.out, &cfg, "out")?;
    let qubits: Option<usize> = pick(args.common.qubits, &cfg, "qubits")?;
    let seed: u64 = pick_or(args.common.seed, &cfg, "seed", 0)?;
    let omega = pick_list(args.omega, &cfg, "omega")?
        .unwrap_or_else(|| vec![2.0 * PI, 4.0 * PI, 7.0 * PI]);
    let alpha: f64 = pick_or(args.alpha, &cfg, "alpha", 1.0)?;
    let gamma: f64 = pick_or(args.gamma, &cfg, "gamma", 1.0)?;
    let duration: f64 = pick_or(args.duration, &cfg, "duration", 2.0)?;
    let samples: usize = pick_or(args.samples, &cfg, "samples", 128)?;

    let n = check_qubits(omega.len(), qubits)?;
    if samples > 8192 {
        bail!("{samples} samples requested; the plain DFT stops at 8192");
    }

    let signal = nmr::sample_magnetization(&omega, alpha, gamma, duration, samples)?;
    let residual = signal
        .iter()
        .map(|&(t, mx)| (mx - nmr::magnetization_closed_form(&omega, alpha, gamma, t)).abs())
        .fold(0.0f64, f64::max);
    let values: Vec<f64> = signal.iter().map(|&(_, mx)| mx).collect();
    let mags = nmr::dft_magnitudes(&values);
    let peaks = nmr::spectral_peaks(&mags, n);

    let mut report = Report::new("demo-nmr", seed);
    report.kv("qubits", &n.to_string());
    report.kv("alpha", &num(alpha));
    report.kv("gamma", &num(gamma));
    report.section("transverse magnetization", &["t", "mx"]);
    for &(t, mx) in &signal {
        report.row(&[&num(t), &num(mx)]);
    }
    report.section("spectrum", &["bin", "magnitude"]);
    for (bin, mag) in mags.iter().enumerate() {
        report.row(&[&bin.to_string(), &num(*mag)]);
    }
    report.section("peaks", &["bin", "frequency"]);
    for &bin in &peaks {
        report.row(&[
            &bin.to_string(),
            &num(2.0 * PI * bin as f64 / duration),
        ]);
    }
    report.section("checks", &["quantity", "value"]);
    report.kv("closed_form_residual", &num(residual));
    report.write_out(&out)
}

// ---------------------------------------------------------------------------
// demo-boost

fn cmd_demo_boost(args: BoostArgs) -> Result<()> {
    let cfg = load_config(&args.common.config)?;
    let out: Option<PathBuf> = pick(args.common.out, &cfg, "out")?;
    let seed: u64 = pick_or(args.common.seed, &cfg, "seed", 0)?;
    let alpha_flag: Option<f64> = pick(args.alpha, &cfg, "alpha")?;
    let beta: Option<f64> = pick(args.beta, &cfg, "beta")?;
    let epsilon: Option<f64> = pick(args.epsilon, &cfg, "epsilon")?;
    let lambda_min: f64 = pick_or(args.lambda_min, &cfg, "lambda-min", -2.0)?;
    let lambda_max: f64 = pick_or(args.lambda_max, &cfg, "lambda-max", 2.0)?;
    let steps: usize = pick_or(args.steps, &cfg, "steps", 101)?;

    if alpha_flag.is_some() && (beta.is_some() || epsilon.is_some()) {
        bail!("--alpha and --beta/--epsilon are mutually exclusive");
    }
    if beta.is_some() != epsilon.is_some() {
        bail!("--beta and --epsilon must be given together");
    }
    let alpha = match (alpha_flag, beta, epsilon) {
        (Some(a), _, _) => a,
        (None, Some(b), Some(e)) => (-b * e / 2.0).tanh(),
        _ => 0.0,
    };
    if !(-1.0..=1.0).contains(&alpha) {
        bail!("polarization must satisfy |alpha| <= 1, got {alpha}");
    }
    if steps < 2 {
        bail!("--steps must be at least 2");
    }
    if lambda_max < lambda_min {
        bail!("--lambda-max is below --lambda-min");
    }

    // Boosting the equilibrium state with rapidity lambda sends the
    // polarization to tanh(atanh(alpha) - lambda); the sweep reports that
    // value from the velocity-addition form and from the rapidity form.
    let mut max_discrepancy = 0.0f64;
    let mut rows = Vec::with_capacity(steps);
    for i in 0..steps {
        let lambda = lambda_min + (lambda_max - lambda_min) * i as f64 / (steps - 1) as f64;
        let rational = spacetime::boost_polarization_rational(alpha, (-lambda).tanh());
        let rapidity_form = spacetime::boost_polarization_tanh(alpha, -lambda);
        max_discrepancy = max_discrepancy.max((rational - rapidity_form).abs());
        rows.push((lambda, rational, rapidity_form));
    }

    let mut report = Report::new("demo-boost", seed);
    report.kv("alpha", &num(alpha));
    report.section("polarization sweep", &["lambda", "rational", "rapidity_form"]);
    for (lambda, rational, rapidity_form) in rows {
        report.row(&[&num(lambda), &num(rational), &num(rapidity_form)]);
    }
    report.section("checks", &["quantity", "value"]);
    report.kv("max_discrepancy", &num(max_discrepancy));
    report.write_out(&out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_have_fifteen_significant_digits() {
        assert_eq!(num(0.25), "2.50000000000000e-1");
        assert_eq!(num(0.0), "0.00000000000000e0");
        assert_eq!(num(-1.0), "-1.00000000000000e0");
        assert_eq!(num(1.0 / 3.0), "3.33333333333333e-1");
    }

    #[test]
    fn config_lines_parse_and_flags_win() {
        let dir = std::env::temp_dir().join("clifq-config-test");
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.cfg");
        fs::write(&path, "# comment\nalpha = 0.5\nomega = 1.0, 2.5\nsteps=7\n").unwrap();
        let cfg = Config::load(&path).unwrap();
        assert_eq!(cfg.get::<f64>("alpha").unwrap(), Some(0.5));
        assert_eq!(cfg.get_list("omega").unwrap(), Some(vec![1.0, 2.5]));
        assert_eq!(cfg.get::<usize>("steps").unwrap(), Some(7));
        assert_eq!(cfg.get::<f64>("missing").unwrap(), None);
        assert_eq!(pick(Some(9.0), &cfg, "alpha").unwrap(), Some(9.0));
        assert_eq!(pick::<f64>(None, &cfg, "alpha").unwrap(), Some(0.5));
        assert!(cfg.get::<f64>("steps").is_ok());
        assert!(Config::load(&dir.join("absent.cfg")).is_err());
    }

    #[test]
    fn bad_config_lines_are_rejected(){
        let dir = std::env::temp_dir().join("clifq-config-test-bad");
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.cfg");
        fs::write(&path, "alpha 0.5\n").unwrap();
        let err = Config::load(&path).unwrap_err().to_string();
        assert!(err.contains("expected `key = value`"), "{err}");
        fs::write(&path, "alpha = what\n").unwrap();
        let cfg = Config::load(&path).unwrap();
        assert!(cfg.get::<f64>("alpha").is_err());
    }

    #[test]
    fn bitstrings_render_with_leading_zeros() {
        assert_eq!(bitstring(0, 3), "000");
        assert_eq!(bitstring(5, 3), "101");
    }

    #[test]
    fn command_line_parses() {
        let cli = Cli::try_parse_from([
            "clifq",
            "demo-boost",
            "--alpha",
            "0.5",
            "--steps",
            "11",
        ])
        .unwrap();
        match cli.command {
            Command::DemoBoost(a) => {
                assert_eq!(a.alpha, Some(0.5));
                assert_eq!(a.steps, Some(11));
            }
            _ => panic!("wrong command"),
        }
        assert!(Cli::try_parse_from(["clifq", "unknown"]).is_err());
    }
}
