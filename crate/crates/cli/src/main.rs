//! Command-line surface for the frame/DFT library: document generators and
//! analysis subcommands wired for reproducible batch runs.
//!
//! Exit codes: 0 on success, 1 when a mathematical check fails (a rejected
//! multiplication table, a non-G-matrix Gramian, a violated identity), 2 on
//! input errors.

#![allow(clippy::needless_range_loop)]

mod docs;
mod jsonout;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use std::path::PathBuf;

use vvframe_core::ambiguity::{
    ambiguity_a1, ambiguity_apd, ambiguity_scalar, ambiguity_stft_identity, AmbiguitySurface,
    VVAmbiguitySurface,
};
use vvframe_core::error::Error as CoreError;
use vvframe_core::matrix::ComplexMatrix;
use vvframe_core::mult::{
    cross_product_frame, enumerate_multiplications, extend_product, gmatrix_test,
    harmonic_equivalence, is_frame_multiplication, make_harmonic_frame, Side,
};
use vvframe_core::rng::Rng;
use vvframe_core::uncertainty::{classical_q, verify_up};
use vvframe_core::vvdft::{
    d_matrix, gelfand_spectrum, make_dft_frame, vv_convolve, vv_dft, vv_idft,
};
use vvframe_core::{FiniteAbelianGroup, SelectionMap, Tol, VVSignal};

use docs::{
    frame_doc, group_doc, read_frame, read_group, read_selection, read_signal, read_table,
    selection_doc, signal_doc, table_doc,
};
use jsonout::{fmt_f64, Val};

/// Error with the exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    message: String,
    code: i32,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: 2,
        }
    }

    /// Core errors raised while interpreting documents are input errors.
    pub fn from_core_input(e: CoreError) -> Self {
        CliError {
            message: e.to_string(),
            code: 2,
        }
    }

    /// Core errors raised by the mathematics: precondition and verdict
    /// failures exit 1, malformed arguments exit 2.
    pub fn from_core(e: CoreError) -> Self {
        let code = match e {
            CoreError::DimensionMismatch(_)
            | CoreError::InvalidArgument(_)
            | CoreError::NonInjectiveSelection
            | CoreError::EnumerationCapExceeded { .. }
            | CoreError::ComplexWeight
            | CoreError::NotHermitian(_) => 2,
            _ => 1,
        };
        CliError {
            message: e.to_string(),
            code,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "vvframe",
    version,
    about = "Finite frames, vector-valued DFTs, frame multiplication, and ambiguity surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write primary output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Relative tolerance for flag decisions.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Seed for randomized probes.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Emit surfaces and matrices as CSV rows instead of JSON.
    #[arg(long, global = true)]
    csv: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Generate frame, table, and group documents.
    Gen {
        #[command(subcommand)]
        kind: GenCommand,
    },
    /// Frame bounds and structural flags.
    Classify(FrameArg),
    /// The d x d frame operator.
    FrameOp(FrameArg),
    /// The N x N Gramian.
    Gramian(FrameArg),
    /// Canonical dual and canonical tight frames.
    Canonical(FrameArg),
    /// Naimark projection identities for a Parseval frame.
    Naimark(FrameArg),
    /// Unitary equivalence certificate for two tight frames.
    Equiv {
        /// Frame document mapped from.
        #[arg(long)]
        x: String,
        /// Frame document mapped onto.
        #[arg(long)]
        y: String,
    },
    /// Singular values and numerical rank of the transform block D_l.
    Dmatrix {
        #[arg(long = "N")]
        modulus: usize,
        #[arg(long)]
        l: usize,
    },
    /// Vector-valued DFT.
    Dft {
        #[command(subcommand)]
        direction: DftCommand,
    },
    /// Vector-valued cyclic convolution of two signals.
    Conv {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Multiplicative functionals of the convolution algebra.
    Gelfand(SelectionArgs),
    /// Frame multiplication tests.
    Mult {
        #[command(subcommand)]
        action: MultCommand,
    },
    /// G-matrix test of a frame's Gramian against a group.
    Gmatrix {
        #[arg(long)]
        frame: String,
        #[arg(long)]
        group: String,
    },
    /// Constructive equivalence of a group frame with a harmonic frame.
    HarmonicEquiv {
        #[arg(long)]
        frame: String,
        #[arg(long)]
        group: String,
    },
    /// Ambiguity surfaces.
    Amb {
        #[command(subcommand)]
        kind: AmbCommand,
    },
    /// Uncertainty principle checks.
    Up {
        #[command(subcommand)]
        kind: UpCommand,
    },
}

#[derive(Args)]
struct FrameArg {
    /// Frame document path.
    #[arg(long)]
    frame: String,
}

#[derive(Args)]
struct SelectionArgs {
    #[arg(long = "N")]
    modulus: Option<usize>,
    /// Selection values, comma separated.
    #[arg(long, value_delimiter = ',')]
    s: Vec<usize>,
    /// Selection document path (alternative to --N/--s).
    #[arg(long)]
    selection: Option<String>,
}

#[derive(Subcommand)]
enum GenCommand {
    /// DFT frame for a selection map.
    DftFrame {
        #[arg(long = "N")]
        modulus: usize,
        /// Optional dimension check against the selection length.
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        s: Vec<usize>,
    },
    /// Harmonic frame from character indices of a finite Abelian group.
    HarmonicFrame {
        /// Cyclic factor orders, comma separated.
        #[arg(long, value_delimiter = ',')]
        cyclic: Vec<usize>,
        /// Character indices, comma separated.
        #[arg(long, value_delimiter = ',')]
        k: Vec<usize>,
    },
    /// The 7-element cross-product frame and its index table.
    CrossFrame {
        /// Write the frame document here (in addition to stdout).
        #[arg(long)]
        frame_out: Option<PathBuf>,
        /// Write the table document here (in addition to stdout).
        #[arg(long)]
        table_out: Option<PathBuf>,
    },
    /// Operation table of a finite Abelian group.
    GroupTable {
        #[arg(long, value_delimiter = ',')]
        cyclic: Vec<usize>,
        /// Also write the group document here.
        #[arg(long)]
        group_out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum DftCommand {
    /// Forward transform.
    Fwd(DftArgs),
    /// Inverse transform (requires every s(q) coprime to N).
    Inv(DftArgs),
}

#[derive(Args)]
struct DftArgs {
    #[arg(long)]
    signal: String,
    #[arg(long, value_delimiter = ',')]
    s: Vec<usize>,
    /// Optional modulus check against the signal length.
    #[arg(long = "N")]
    modulus: Option<usize>,
    /// Selection document path (alternative to --N/--s).
    #[arg(long)]
    selection: Option<String>,
}

#[derive(Subcommand)]
enum MultCommand {
    /// Decide whether a table is a frame multiplication.
    Check {
        #[arg(long)]
        frame: String,
        #[arg(long)]
        table: String,
    },
    /// Enumerate all frame multiplications (exhaustive for small frames).
    Enumerate {
        #[arg(long)]
        frame: String,
        /// Optional file with a JSON array of optable documents to test.
        #[arg(long)]
        candidates: Option<String>,
    },
    /// Extend the frame product to two vectors (signal documents with N=1).
    Extend {
        #[arg(long)]
        frame: String,
        #[arg(long)]
        table: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
}

#[derive(Subcommand)]
enum AmbCommand {
    /// Classical scalar surface of a d=1 signal.
    Scalar {
        #[arg(long)]
        signal: String,
    },
    /// Scalar-valued surface over a frame with multiplication.
    A1 {
        #[arg(long)]
        signal: String,
        #[arg(long)]
        frame: String,
        #[arg(long)]
        table: String,
    },
    /// Vector-valued surface over a DFT frame.
    Apd {
        #[arg(long)]
        signal: String,
        #[arg(long, value_delimiter = ',')]
        s: Vec<usize>,
        #[arg(long = "N")]
        modulus: Option<usize>,
        /// Selection document path (alternative to --N/--s).
        #[arg(long)]
        selection: Option<String>,
    },
    /// Verify the STFT factorization of the vector-valued surface.
    StftCheck {
        #[arg(long)]
        signal: String,
        #[arg(long, value_delimiter = ',')]
        s: Vec<usize>,
        #[arg(long = "N")]
        modulus: Option<usize>,
        /// Selection document path (alternative to --N/--s).
        #[arg(long)]
        selection: Option<String>,
    },
}

#[derive(Subcommand)]
enum UpCommand {
    /// Evaluate the general uncertainty inequality.
    Verify {
        #[arg(long)]
        signal: String,
        /// Use the classical weight -2 sin(2 pi m s(n) / N).
        #[arg(long)]
        classical: bool,
        #[arg(long, value_delimiter = ',')]
        s: Vec<usize>,
        #[arg(long = "N")]
        modulus: Option<usize>,
        /// Selection document path (alternative to --N/--s).
        #[arg(long)]
        selection: Option<String>,
        /// Signal document with a custom real weight.
        #[arg(long)]
        q: Option<String>,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("vvframe: {}", err.message);
            std::process::exit(err.code);
        }
    }
}

struct Output {
    out: Option<PathBuf>,
}

impl Output {
    fn emit(&self, text: String) -> Result<(), CliError> {
        match &self.out {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| CliError::input(format!("cannot write {}: {}", path.display(), e))),
            None => {
                print!("{}", text);
                Ok(())
            }
        }
    }
}

fn matrix_val(m: &ComplexMatrix) -> Val {
    Val::Arr((0..m.rows()).map(|i| Val::complex_row(m.row(i))).collect())
}

fn matrix_doc(m: &ComplexMatrix) -> Val {
    Val::Obj(vec![
        ("kind".into(), Val::Str("matrix".into())),
        ("rows".into(), Val::usize(m.rows())),
        ("cols".into(), Val::usize(m.cols())),
        ("entries".into(), matrix_val(m)),
    ])
}

fn matrix_csv(m: &ComplexMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let z = m.get(i, j);
            out.push_str(&format!(
                "{},{},{},{}\n",
                i,
                j,
                fmt_f64(z.re),
                fmt_f64(z.im)
            ));
        }
    }
    out
}

fn surface_doc(s: &AmbiguitySurface) -> Val {
    Val::Obj(vec![
        ("kind".into(), Val::Str("surface".into())),
        ("N".into(), Val::usize(s.size())),
        (
            "values".into(),
            Val::Arr(
                (0..s.size())
                    .map(|m| Val::Arr((0..s.size()).map(|n| Val::complex(s.get(m, n))).collect()))
                    .collect(),
            ),
        ),
    ])
}

fn surface_csv(s: &AmbiguitySurface) -> String {
    let mut out = String::new();
    for m in 0..s.size() {
        for n in 0..s.size() {
            let z = s.get(m, n);
            out.push_str(&format!(
                "{},{},{},{}\n",
                m,
                n,
                fmt_f64(z.re),
                fmt_f64(z.im)
            ));
        }
    }
    out
}

fn vvsurface_doc(s: &VVAmbiguitySurface) -> Val {
    Val::Obj(vec![
        ("kind".into(), Val::Str("vvsurface".into())),
        ("N".into(), Val::usize(s.size())),
        ("d".into(), Val::usize(s.dim())),
        (
            "values".into(),
            Val::Arr(
                (0..s.size())
                    .map(|m| {
                        Val::Arr(
                            (0..s.size())
                                .map(|n| Val::complex_row(s.get(m, n)))
                                .collect(),
                        )
                    })
                    .collect(),
            ),
        ),
    ])
}

fn vvsurface_csv(s: &VVAmbiguitySurface) -> String {
    let mut out = String::new();
    for m in 0..s.size() {
        for n in 0..s.size() {
            for (p, z) in s.get(m, n).iter().enumerate() {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    m,
                    n,
                    p,
                    fmt_f64(z.re),
                    fmt_f64(z.im)
                ));
            }
        }
    }
    out
}

fn selection(modulus: usize, s: &[usize]) -> Result<SelectionMap, CliError> {
    SelectionMap::new(modulus, s.to_vec()).map_err(CliError::from_core_input)
}

/// A selection comes from either `--selection FILE` or `--N`/`--s` flags.
fn resolve_selection(
    s: &[usize],
    modulus: Option<usize>,
    file: &Option<String>,
) -> Result<SelectionMap, CliError> {
    if let Some(path) = file {
        if !s.is_empty() || modulus.is_some() {
            return Err(CliError::input("--selection excludes --s and --N"));
        }
        return read_selection(path);
    }
    let n = modulus.ok_or_else(|| CliError::input("need --N and --s, or --selection FILE"))?;
    if s.is_empty() {
        return Err(CliError::input("need --s values, or --selection FILE"));
    }
    selection(n, s)
}

fn selection_for_signal(
    u: &VVSignal,
    s: &[usize],
    modulus: Option<usize>,
    file: &Option<String>,
) -> Result<SelectionMap, CliError> {
    let sel = if file.is_some() {
        resolve_selection(s, modulus, file)?
    } else {
        let n = modulus.unwrap_or_else(|| u.len());
        selection(n, s)?
    };
    if sel.modulus() != u.len() {
        return Err(CliError::input(format!(
            "selection modulus {} does not match the signal length {}",
            sel.modulus(),
            u.len()
        )));
    }
    if sel.dim() != u.dim() {
        return Err(CliError::input(format!(
            "selection has {} components, signal dimension is {}",
            sel.dim(),
            u.dim()
        )));
    }
    Ok(sel)
}

fn read_vector(path: &str) -> Result<Vec<Complex64>, CliError> {
    let sig = read_signal(path)?;
    if sig.len() != 1 {
        return Err(CliError::input(format!(
            "{} must be a signal document with N = 1 (a single vector)",
            path
        )));
    }
    Ok(sig.row(0).to_vec())
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let tol = Tol::with_rel(cli.tol);
    let output = Output {
        out: cli.out.clone(),
    };
    match cli.command {
        Command::Gen { kind } => run_gen(kind, &output),
        Command::Classify(arg) => {
            let frame = read_frame(&arg.frame)?;
            let class = frame.classify(&tol);
            output.emit(
                Val::Obj(vec![
                    ("kind".into(), Val::Str("frame-class".into())),
                    ("spans".into(), Val::Bool(class.spans)),
                    ("lower".into(), Val::Num(class.lower)),
                    ("upper".into(), Val::Num(class.upper)),
                    ("tight".into(), Val::Bool(class.tight)),
                    ("parseval".into(), Val::Bool(class.parseval)),
                    ("equal_norm".into(), Val::Bool(class.equal_norm)),
                    ("funtf".into(), Val::Bool(class.funtf)),
                ])
                .render(),
            )?;
            Ok(0)
        }
        Command::FrameOp(arg) => {
            let frame = read_frame(&arg.frame)?;
            let s = frame.frame_operator();
            output.emit(if cli.csv {
                matrix_csv(&s)
            } else {
                matrix_doc(&s).render()
            })?;
            Ok(0)
        }
        Command::Gramian(arg) => {
            let frame = read_frame(&arg.frame)?;
            let g = frame.gramian();
            output.emit(if cli.csv {
                matrix_csv(&g)
            } else {
                matrix_doc(&g).render()
            })?;
            Ok(0)
        }
        Command::Canonical(arg) => {
            let frame = read_frame(&arg.frame)?;
            let (dual, tight) = frame.canonical(&tol).map_err(CliError::from_core)?;
            output.emit(
                Val::Obj(vec![
                    ("kind".into(), Val::Str("canonical".into())),
                    ("dual".into(), frame_doc(&dual)),
                    ("tight".into(), frame_doc(&tight)),
                ])
                .render(),
            )?;
            Ok(0)
        }
        Command::Naimark(arg) => {
            let frame = read_frame(&arg.frame)?;
            let report = frame.naimark_check(&tol).map_err(CliError::from_core)?;
            let within = report.max_deviation() <= tol.margin(1.0);
            output.emit(
                Val::Obj(vec![
                    ("kind".into(), Val::Str("naimark-report".into())),
                    ("idempotency_dev".into(), Val::Num(report.idempotency_dev)),
                    ("hermitian_dev".into(), Val::Num(report.hermitian_dev)),
                    ("column_dev".into(), Val::Num(report.column_dev)),
                    ("max_deviation".into(), Val::Num(report.max_deviation())),
                    ("within_tol".into(), Val::Bool(within)),
                ])
                .render(),
            )?;
            Ok(if within { 0 } else { 1 })
        }
        Command::Equiv { x, y } => {
            let fx = read_frame(&x)?;
            let fy = read_frame(&y)?;
            let cert = fx
                .unitary_equivalence(&fy, &tol)
                .map_err(CliError::from_core)?;
            match cert {
                Some(cert) => {
                    output.emit(
                        Val::Obj(vec![
                            ("kind".into(), Val::Str("equivalence".into())),
                            ("equivalent".into(), Val::Bool(true)),
                            ("c".into(), Val::Num(cert.scale)),
                            ("unitary".into(), matrix_val(&cert.unitary)),
                        ])
                        .render(),
                    )?;
                    Ok(0)
                }
                None => {
                    output.emit(
                        Val::Obj(vec![
                            ("kind".into(), Val::Str("equivalence".into())),
                            ("equivalent".into(), Val::Bool(false)),
                        ])
                        .render(),
                    )?;
                    Ok(1)
                }
            }
        }
        Command::Dmatrix { modulus, l } => {
            if modulus == 0 {
                return Err(CliError::input("--N must be positive"));
            }
            let m = d_matrix(modulus, l);
            if cli.csv {
                output.emit(matrix_csv(&m))?;
                return Ok(0);
            }
            let sv = m.singular_values();
            let rank = m.rank();
            output.emit(
                Val::Obj(vec![
                    ("kind".into(), Val::Str("dmatrix-report".into())),
                    ("N".into(), Val::usize(modulus)),
                    ("l".into(), Val::usize(l)),
                    (
                        "largest_singular_value".into(),
                        Val::Num(sv.first().copied().unwrap_or(0.0)),
                    ),
                    (
                        "smallest_singular_value".into(),
                        Val::Num(sv.last().copied().unwrap_or(0.0)),
                    ),
                    ("rank".into(), Val::usize(rank)),
                    ("invertible".into(), Val::Bool(rank == modulus)),
                ])
                .render(),
            )?;
            Ok(0)
        }
        Command::Dft { direction } => {
            let (args, forward) = match direction {
                DftCommand::Fwd(a) => (a, true),
                DftCommand::Inv(a) => (a, false),
            };
            let u = read_signal(&args.signal)?;
            let sel = selection_for_signal(&u, &args.s, args.modulus, &args.selection)?;
            let result = if forward {
                vv_dft(&u, &sel).map_err(CliError::from_core)?
            } else {
                vv_idft(&u, &sel).map_err(CliError::from_core)?
            };
            output.emit(signal_doc(&result).render())?;
            Ok(0)
        }
        Command::Conv { a, b } => {
            let ua = read_signal(&a)?;
            let ub = read_signal(&b)?;
            let w = vv_convolve(&ua, &ub).map_err(CliError::from_core)?;
            output.emit(signal_doc(&w).render())?;
            Ok(0)
        }
        Command::Gelfand(args) => {
            let sel = resolve_selection(&args.s, args.modulus, &args.selection)?;
            let spectrum = gelfand_spectrum(&sel).map_err(CliError::from_core)?;
            let mut rng = Rng::new(cli.seed);
            let probe = rng.signal(sel.modulus(), sel.dim());
            let hat = vv_dft(&probe, &sel).map_err(CliError::from_core)?;
            let mut worst: f64 = 0.0;
            for gamma in &spectrum {
                let dev = (gamma.apply(&probe).map_err(CliError::from_core)?
                    - hat.get(gamma.frequency(), gamma.component()))
                .norm();
                worst = worst.max(dev);
            }
            output.emit(
                Val::Obj(vec![
                    ("kind".into(), Val::Str("gelfand-report".into())),
                    ("selection".into(), selection_doc(&sel)),
                    ("count".into(), Val::usize(spectrum.len())),
                    ("max_deviation_vs_dft".into(), Val::Num(worst)),
                    (
                        "functionals".into(),
                        Val::Arr(
                            spectrum
                                .iter()
                                .map(|g| {
                                    Val::Obj(vec![
                                        ("p".into(), Val::usize(g.frequency())),
                                        ("q".into(), Val::usize(g.component())),
                                    ])
                                })
                                .collect(),
                        ),
                    ),
                ])
                .render(),
            )?;
            Ok(0)
        }
        Command::Mult { action } => run_mult(action, &tol, &output),
        Command::Gmatrix { frame, group } => {
            let f = read_frame(&frame)?;
            let g = read_group(&group)?;
            let witness = gmatrix_test(&f.gramian(), &g, &tol).map_err(CliError::from_core)?;
            match witness {
                Some(w) => {
                    output.emit(
                        Val::Obj(vec![
                            ("kind".into(), Val::Str("gmatrix-report".into())),
                            ("is_gmatrix".into(), Val::Bool(true)),
                            ("nu".into(), Val::complex_row(&w.nu)),
                        ])
                        .render(),
                    )?;
                    Ok(0)
                }
                None => {
                    output.emit(
                        Val::Obj(vec![
                            ("kind".into(), Val::Str("gmatrix-report".into())),
                            ("is_gmatrix".into(), Val::Bool(false)),
                        ])
                        .render(),
                    )?;
                    Ok(1)
                }
            }
        }
        Command::HarmonicEquiv { frame, group } => {
            let f = read_frame(&frame)?;
            let g = read_group(&group)?;
            let cert = harmonic_equivalence(&f, &g, &tol).map_err(CliError::from_core)?;
            // worst pointwise-law deviation, reported alongside the certificate
            let n = g.order();
            let mapped: Vec<Vec<Complex64>> = (0..n)
                .map(|idx| {
                    cert.unitary
                        .mul_vec(f.vector(idx))
                        .iter()
                        .map(|z| z * cert.scale)
                        .collect()
                })
                .collect();
            let mut law_dev: f64 = 0.0;
            for a in 0..n {
                for b in 0..n {
                    let ab = g.op(a, b);
                    for p in 0..f.dim() {
                        law_dev = law_dev.max((mapped[ab][p] - mapped[a][p] * mapped[b][p]).norm());
                    }
                }
            }
            output.emit(
                Val::Obj(vec![
                    ("kind".into(), Val::Str("harmonic-certificate".into())),
                    ("c".into(), Val::Num(cert.scale)),
                    ("unitary".into(), matrix_val(&cert.unitary)),
                    (
                        "characters".into(),
                        Val::Arr(
                            cert.characters
                                .iter()
                                .map(|row| Val::complex_row(row))
                                .collect(),
                        ),
                    ),
                    ("law_max_deviation".into(), Val::Num(law_dev)),
                ])
                .render(),
            )?;
            Ok(0)
        }
        Command::Amb { kind } => run_amb(kind, &tol, cli.csv, &output),
        Command::Up { kind } => {
            let UpCommand::Verify {
                signal,
                classical,
                s,
                modulus,
                selection: selection_file,
                q,
            } = kind;
            let u = read_signal(&signal)?;
            let weight = if classical {
                if q.is_some() {
                    return Err(CliError::input(
                        "--classical and --q are mutually exclusive",
                    ));
                }
                let sel = selection_for_signal(&u, &s, modulus, &selection_file)?;
                classical_q(&sel)
            } else {
                let path = q.ok_or_else(|| {
                    CliError::input("up verify needs either --classical --s ... or --q FILE")
                })?;
                read_signal(&path)?
            };
            let report = verify_up(&u, &weight, &tol).map_err(CliError::from_core)?;
            output.emit(
                Val::Obj(vec![
                    ("kind".into(), Val::Str("up-report".into())),
                    ("t_term".into(), Val::Num(report.t_term)),
                    ("s_term".into(), Val::Num(report.s_term)),
                    ("lhs".into(), Val::Num(report.lhs)),
                    ("rhs".into(), Val::Num(report.rhs)),
                    ("slack".into(), Val::Num(report.slack)),
                    ("holds".into(), Val::Bool(report.holds)),
                ])
                .render(),
            )?;
            Ok(if report.holds { 0 } else { 1 })
        }
    }
}

fn run_gen(kind: GenCommand, output: &Output) -> Result<i32, CliError> {
    match kind {
        GenCommand::DftFrame { modulus, d, s } => {
            if let Some(d) = d {
                if d != s.len() {
                    return Err(CliError::input(format!(
                        "--d {} contradicts the {} selection values",
                        d,
                        s.len()
                    )));
                }
            }
            let sel = selection(modulus, &s)?;
            output.emit(frame_doc(&make_dft_frame(&sel)).render())?;
            Ok(0)
        }
        GenCommand::HarmonicFrame { cyclic, k } => {
            let group = FiniteAbelianGroup::new(cyclic).map_err(CliError::from_core_input)?;
            let frame = make_harmonic_frame(&group, &k, None).map_err(CliError::from_core_input)?;
            output.emit(frame_doc(&frame).render())?;
            Ok(0)
        }
        GenCommand::CrossFrame {
            frame_out,
            table_out,
        } => {
            let (frame, table) = cross_product_frame();
            let fdoc = frame_doc(&frame);
            let tdoc = table_doc(&table);
            if let Some(path) = &frame_out {
                std::fs::write(path, fdoc.render()).map_err(|e| {
                    CliError::input(format!("cannot write {}: {}", path.display(), e))
                })?;
            }
            if let Some(path) = &table_out {
                std::fs::write(path, tdoc.render()).map_err(|e| {
                    CliError::input(format!("cannot write {}: {}", path.display(), e))
                })?;
            }
            output.emit(Val::Arr(vec![fdoc, tdoc]).render())?;
            Ok(0)
        }
        GenCommand::GroupTable { cyclic, group_out } => {
            let group = FiniteAbelianGroup::new(cyclic).map_err(CliError::from_core_input)?;
            if let Some(path) = &group_out {
                std::fs::write(path, group_doc(&group).render()).map_err(|e| {
                    CliError::input(format!("cannot write {}: {}", path.display(), e))
                })?;
            }
            output.emit(table_doc(&group.op_table()).render())?;
            Ok(0)
        }
    }
}

fn run_mult(action: MultCommand, tol: &Tol, output: &Output) -> Result<i32, CliError> {
    match action {
        MultCommand::Check { frame, table } => {
            let f = read_frame(&frame)?;
            let t = read_table(&table)?;
            let check = is_frame_multiplication(&f, &t, tol).map_err(CliError::from_core)?;
            let mut fields = vec![
                ("kind".to_string(), Val::Str("mult-check".into())),
                ("accepted".to_string(), Val::Bool(check.accepted)),
            ];
            if let Some(v) = check.violation {
                fields.push((
                    "violation".into(),
                    Val::Obj(vec![
                        ("index".into(), Val::usize(v.index)),
                        (
                            "side".into(),
                            Val::Str(match v.side {
                                Side::Left => "left".into(),
                                Side::Right => "right".into(),
                            }),
                        ),
                        ("residual".into(), Val::Num(v.residual)),
                    ]),
                ));
            }
            output.emit(Val::Obj(fields).render())?;
            Ok(if check.accepted { 0 } else { 1 })
        }
        MultCommand::Enumerate { frame, candidates } => {
            let f = read_frame(&frame)?;
            let cand_tables = match &candidates {
                None => None,
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| CliError::input(format!("cannot read {}: {}", path, e)))?;
                    let raw: Vec<serde_json::Value> = serde_json::from_str(&text)
                        .map_err(|e| CliError::input(format!("invalid candidate list: {}", e)))?;
                    let mut tables = Vec::with_capacity(raw.len());
                    for item in raw {
                        match docs::parse_document(&item.to_string())? {
                            docs::Document::OpTable { table, .. } => {
                                tables.push(
                                    vvframe_core::OpTable::from_rows(table)
                                        .map_err(CliError::from_core_input)?,
                                );
                            }
                            _ => {
                                return Err(CliError::input(
                                    "candidate list entries must be optable documents",
                                ))
                            }
                        }
                    }
                    Some(tables)
                }
            };
            let found = enumerate_multiplications(&f, cand_tables.as_deref(), tol)
                .map_err(CliError::from_core)?;
            output.emit(
                Val::Obj(vec![
                    ("kind".into(), Val::Str("mult-enumeration".into())),
                    ("count".into(), Val::usize(found.len())),
                    (
                        "tables".into(),
                        Val::Arr(found.iter().map(table_doc).collect()),
                    ),
                ])
                .render(),
            )?;
            Ok(0)
        }
        MultCommand::Extend { frame, table, x, y } => {
            let f = read_frame(&frame)?;
            let t = read_table(&table)?;
            let vx = read_vector(&x)?;
            let vy = read_vector(&y)?;
            let product = extend_product(&f, &t, &vx, &vy, tol).map_err(CliError::from_core)?;
            let signal = VVSignal::from_rows(vec![product]).map_err(CliError::from_core)?;
            output.emit(signal_doc(&signal).render())?;
            Ok(0)
        }
    }
}

fn run_amb(kind: AmbCommand, tol: &Tol, csv: bool, output: &Output) -> Result<i32, CliError> {
    match kind {
        AmbCommand::Scalar { signal } => {
            let u = read_signal(&signal)?;
            if u.dim() != 1 {
                return Err(CliError::input(format!(
                    "amb scalar needs a d=1 signal, got d={}",
                    u.dim()
                )));
            }
            let seq: Vec<Complex64> = (0..u.len()).map(|m| u.get(m, 0)).collect();
            let surface = ambiguity_scalar(&seq);
            output.emit(if csv {
                surface_csv(&surface)
            } else {
                surface_doc(&surface).render()
            })?;
            Ok(0)
        }
        AmbCommand::A1 {
            signal,
            frame,
            table,
        } => {
            let u = read_signal(&signal)?;
            let f = read_frame(&frame)?;
            let t = read_table(&table)?;
            let surface = ambiguity_a1(&u, &f, &t, tol).map_err(CliError::from_core)?;
            output.emit(if csv {
                surface_csv(&surface)
            } else {
                surface_doc(&surface).render()
            })?;
            Ok(0)
        }
        AmbCommand::Apd {
            signal,
            s,
            modulus,
            selection: selection_file,
        } => {
            let u = read_signal(&signal)?;
            let sel = selection_for_signal(&u, &s, modulus, &selection_file)?;
            let surface = ambiguity_apd(&u, &sel).map_err(CliError::from_core)?;
            output.emit(if csv {
                vvsurface_csv(&surface)
            } else {
                vvsurface_doc(&surface).render()
            })?;
            Ok(0)
        }
        AmbCommand::StftCheck {
            signal,
            s,
            modulus,
            selection: selection_file,
        } => {
            let u = read_signal(&signal)?;
            let sel = selection_for_signal(&u, &s, modulus, &selection_file)?;
            let report = ambiguity_stft_identity(&u, &sel).map_err(CliError::from_core)?;
            let within = report.max_deviation <= tol.rel;
            output.emit(
                Val::Obj(vec![
                    ("kind".into(), Val::Str("stft-check".into())),
                    ("max_deviation".into(), Val::Num(report.max_deviation)),
                    ("within_tol".into(), Val::Bool(within)),
                ])
                .render(),
            )?;
            Ok(if within { 0 } else { 1 })
        }
    }
}
