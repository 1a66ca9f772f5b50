//! `qdc` — inspect dense-coding alphabets, compute Holevo capacities, and
//! sweep the channel-capacity surfaces to CSV/JSON.

#![allow(clippy::needless_range_loop)]

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qdc_core::alphabets::{search_min_max_overlap, Alphabet};
use qdc_core::capacity::{
    holevo_quantity, noisy_capacity_uniform, optimize_prior, CapacityReport, PriorDistribution,
};
use qdc_core::channels::{apply_pauli_channel, PauliChannelParams};
use qdc_core::states::{DensityMatrix, SchmidtState};

#[derive(Parser)]
#[command(name = "qdc", version, about = "Dense-coding alphabets and channel capacities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the four letter states and their overlap matrix.
    Alphabet(AlphabetArgs),
    /// Compute a capacity report for one alphabet and channel.
    Capacity(CapacityArgs),
    /// Grid sweeps of the capacity surfaces.
    #[command(subcommand)]
    Sweep(SweepCommand),
    /// Re-derive the equally-distant construction by numerical search.
    Derive(DeriveArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Standard,
    #[value(name = "equally-distant")]
    EquallyDistant,
}

#[derive(Clone, Copy, ValueEnum)]
enum Channel {
    Ideal,
    Depolarizing,
    Xpauli,
    Pauli,
}

#[derive(Clone, Copy, ValueEnum)]
enum PriorMode {
    Uniform,
    Optimize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct AlphabetArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    alpha_sq: f64,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct CapacityArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    alpha_sq: f64,
    #[arg(long, value_enum, default_value = "ideal")]
    channel: Channel,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    px: Option<f64>,
    #[arg(long)]
    py: Option<f64>,
    #[arg(long)]
    pz: Option<f64>,
    #[arg(long, value_enum, default_value = "uniform")]
    prior: PriorMode,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum SweepCommand {
    /// Depolarizing-channel capacity over (q, alpha_sq).
    Fig1(Fig1Args),
    /// Capacity difference of the two alphabets over (px, alpha_sq).
    Fig2(Fig2Args),
}

#[derive(Args)]
struct Fig1Args {
    #[arg(long, default_value_t = 0.0)]
    q_min: f64,
    #[arg(long, default_value_t = 1.0 / 3.0)]
    q_max: f64,
    #[arg(long, default_value_t = 1.0 / 60.0)]
    q_step: f64,
    #[command(flatten)]
    alpha: AlphaRange,
    #[arg(long)]
    out: Option<String>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Check monotonicity and endpoint values of the computed surface.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct Fig2Args {
    #[arg(long, default_value_t = 0.0)]
    px_min: f64,
    #[arg(long, default_value_t = 1.0)]
    px_max: f64,
    #[arg(long, default_value_t = 0.02)]
    px_step: f64,
    #[command(flatten)]
    alpha: AlphaRange,
    #[arg(long)]
    out: Option<String>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Check the sign structure of the difference column.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct AlphaRange {
    #[arg(long, default_value_t = 0.0)]
    alpha_sq_min: f64,
    #[arg(long, default_value_t = 1.0)]
    alpha_sq_max: f64,
    #[arg(long, default_value_t = 0.02)]
    alpha_sq_step: f64,
}

#[derive(Args)]
struct DeriveArgs {
    #[arg(long)]
    delta_sq: f64,
    #[arg(long, default_value_t = 50)]
    restarts: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Alphabet(args) => cmd_alphabet(&args),
        Command::Capacity(args) => cmd_capacity(&args),
        Command::Sweep(SweepCommand::Fig1(args)) => cmd_sweep_fig1(&args),
        Command::Sweep(SweepCommand::Fig2(args)) => cmd_sweep_fig2(&args),
        Command::Derive(args) => cmd_derive(&args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("qdc: {message}");
            ExitCode::FAILURE
        }
    }
}

type CmdResult = Result<(), String>;

fn emit(out: &Option<String>, contents: &str) -> CmdResult {
    match out {
        Some(path) => {
            fs::write(path, contents).map_err(|e| format!("cannot write `{path}`: {e}"))
        }
        None => {
            let stdout = std::io::stdout();
            let mut handle = stdout.lock();
            handle
                .write_all(contents.as_bytes())
                .map_err(|e| format!("cannot write to stdout: {e}"))
        }
    }
}

/// Six-decimal float for CSV/text output; negative zero prints as zero.
fn fmt6(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

/// Six-decimal rounding for JSON payloads.
fn round6(v: f64) -> f64 {
    let r = (v * 1e6).round() / 1e6;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn build_alphabet(kind: Kind, alpha_sq: f64) -> Result<(SchmidtState, Alphabet), String> {
    let reference = SchmidtState::from_alpha_sq(alpha_sq).map_err(|e| e.to_string())?;
    let alphabet = match kind {
        Kind::Standard => Alphabet::standard(&reference),
        Kind::EquallyDistant => Alphabet::equally_distant(&reference),
    };
    Ok((reference, alphabet))
}

fn cmd_alphabet(args: &AlphabetArgs) -> CmdResult {
    let (_, alphabet) = build_alphabet(args.kind, args.alpha_sq)?;
    let qdc_core::alphabets::Letters::Pure(letters) = alphabet.letters() else {
        return Err("pure reference expected".to_string());
    };
    let mut text = String::new();
    for (k, letter) in letters.iter().enumerate() {
        let amps: Vec<String> = letter
            .amplitudes()
            .iter()
            .map(|z| format!("({}, {})", fmt6(z.re), fmt6(z.im)))
            .collect();
        text.push_str(&format!("letter {}: {}\n", k + 1, amps.join(" ")));
    }
    text.push_str("overlap matrix:\n");
    let overlap = alphabet.overlap_matrix().map_err(|e| e.to_string())?;
    for row in overlap.iter() {
        let cells: Vec<String> = row.iter().map(|&v| fmt6(v)).collect();
        text.push_str(&cells.join(" "));
        text.push('\n');
    }
    emit(&args.out, &text)
}

#[derive(Serialize)]
struct CapacityJson {
    chi: f64,
    prior: [f64; 4],
    avg_entropy: f64,
    letter_entropies: [f64; 4],
    letter_spectra: [[f64; 4]; 4],
}

impl CapacityJson {
    fn from_report(report: &CapacityReport) -> Self {
        let mut spectra = [[0.0f64; 4]; 4];
        for (row, spec) in spectra.iter_mut().zip(report.letter_spectra.iter()) {
            for (slot, &v) in row.iter_mut().zip(spec.values().iter()) {
                *slot = round6(v);
            }
        }
        Self {
            chi: round6(report.chi),
            prior: report.prior.weights().map(round6),
            avg_entropy: round6(report.avg_entropy),
            letter_entropies: report.letter_entropies.map(round6),
            letter_spectra: spectra,
        }
    }
}

fn channel_params(args: &CapacityArgs) -> Result<PauliChannelParams, String> {
    let need = |value: Option<f64>, name: &str| {
        value.ok_or_else(|| format!("missing --{name} for --channel"))
    };
    let params = match args.channel {
        Channel::Ideal => PauliChannelParams::noiseless(),
        Channel::Depolarizing => {
            PauliChannelParams::depolarizing(need(args.q, "q")?).map_err(|e| e.to_string())?
        }
        Channel::Xpauli => {
            PauliChannelParams::x_pauli(need(args.px, "px")?).map_err(|e| e.to_string())?
        }
        Channel::Pauli => PauliChannelParams::new(
            args.px.unwrap_or(0.0),
            args.py.unwrap_or(0.0),
            args.pz.unwrap_or(0.0),
        )
        .map_err(|e| e.to_string())?,
    };
    Ok(params)
}

fn cmd_capacity(args: &CapacityArgs) -> CmdResult {
    let (_, alphabet) = build_alphabet(args.kind, args.alpha_sq)?;
    let params = channel_params(args)?;
    let letters = alphabet.letter_densities();
    let outputs: Vec<DensityMatrix> = letters
        .iter()
        .map(|rho| apply_pauli_channel(&params, rho))
        .collect();
    let outputs: [DensityMatrix; 4] = outputs.try_into().expect("four letters");
    let report = match args.prior {
        PriorMode::Uniform => holevo_quantity(&outputs, &PriorDistribution::uniform()),
        PriorMode::Optimize => optimize_prior(&outputs),
    };
    let json = serde_json::to_string_pretty(&CapacityJson::from_report(&report))
        .map_err(|e| e.to_string())?;
    emit(&args.out, &format!("{json}\n"))
}

fn grid(min: f64, max: f64, step: f64, name: &str) -> Result<Vec<f64>, String> {
    if !step.is_finite() || step <= 0.0 {
        return Err(format!("--{name}-step must be positive"));
    }
    if !min.is_finite() || !max.is_finite() || min > max {
        return Err(format!("--{name}-min must not exceed --{name}-max"));
    }
    let mut values = Vec::new();
    let mut i = 0usize;
    loop {
        let v = min + i as f64 * step;
        if v > max + step * 1e-9 {
            break;
        }
        values.push(v.min(max));
        i += 1;
    }
    Ok(values)
}

#[derive(Serialize)]
struct Fig1Row {
    q: f64,
    alpha_sq: f64,
    capacity: f64,
}

fn cmd_sweep_fig1(args: &Fig1Args) -> CmdResult {
    let qs = grid(args.q_min, args.q_max, args.q_step, "q")?;
    let alphas = grid(
        args.alpha.alpha_sq_min,
        args.alpha.alpha_sq_max,
        args.alpha.alpha_sq_step,
        "alpha-sq",
    )?;
    let mut rows: Vec<Fig1Row> = Vec::with_capacity(qs.len() * alphas.len());
    for &q in &qs {
        let params = PauliChannelParams::depolarizing(q).map_err(|e| e.to_string())?;
        for &alpha_sq in &alphas {
            let reference = SchmidtState::from_alpha_sq(alpha_sq).map_err(|e| e.to_string())?;
            let alphabet = Alphabet::equally_distant(&reference);
            let capacity = noisy_capacity_uniform(&alphabet, &params).chi;
            rows.push(Fig1Row { q, alpha_sq, capacity });
        }
    }

    let text = match args.format {
        Format::Csv => {
            let mut text = String::from("q,alpha_sq,capacity\n");
            for r in &rows {
                text.push_str(&format!(
                    "{},{},{}\n",
                    fmt6(r.q),
                    fmt6(r.alpha_sq),
                    fmt6(r.capacity)
                ));
            }
            text
        }
        Format::Json => {
            let rounded: Vec<Fig1Row> = rows
                .iter()
                .map(|r| Fig1Row {
                    q: round6(r.q),
                    alpha_sq: round6(r.alpha_sq),
                    capacity: round6(r.capacity),
                })
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&rounded).map_err(|e| e.to_string())?)
        }
    };
    emit(&args.out, &text)?;

    if args.verify {
        verify_fig1(&qs, &alphas, &rows)?;
    }
    Ok(())
}

fn verify_fig1(qs: &[f64], alphas: &[f64], rows: &[Fig1Row]) -> CmdResult {
    let at = |qi: usize, aj: usize| rows[qi * alphas.len() + aj].capacity;
    for aj in 0..alphas.len() {
        for qi in 1..qs.len() {
            if at(qi, aj) > at(qi - 1, aj) + 1e-9 {
                return Err(format!(
                    "verify: capacity increases from {} to {} between q={} and q={} at alpha_sq={}",
                    fmt6(at(qi - 1, aj)),
                    fmt6(at(qi, aj)),
                    fmt6(qs[qi - 1]),
                    fmt6(qs[qi]),
                    fmt6(alphas[aj])
                ));
            }
        }
    }
    // Capacity is maximal at alpha_sq = 0.5 for each q (when on the grid).
    if let Some(half) = alphas.iter().position(|&a| (a - 0.5).abs() < 1e-12) {
        for qi in 0..qs.len() {
            for aj in 0..alphas.len() {
                if at(qi, aj) > at(qi, half) + 1e-9 {
                    return Err(format!(
                        "verify: capacity at alpha_sq={} exceeds the alpha_sq=0.5 value at q={}",
                        fmt6(alphas[aj]),
                        fmt6(qs[qi])
                    ));
                }
            }
        }
        if qs.first().is_some_and(|&q| q == 0.0) && (at(0, half) - 2.0).abs() > 1e-9 {
            return Err(format!(
                "verify: ideal Bell-limit capacity is {} instead of 2",
                fmt6(at(0, half))
            ));
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct Fig2Row {
    px: f64,
    alpha_sq: f64,
    c_standard: f64,
    c_equally_distant: f64,
    difference: f64,
}

fn cmd_sweep_fig2(args: &Fig2Args) -> CmdResult {
    let pxs = grid(args.px_min, args.px_max, args.px_step, "px")?;
    let alphas = grid(
        args.alpha.alpha_sq_min,
        args.alpha.alpha_sq_max,
        args.alpha.alpha_sq_step,
        "alpha-sq",
    )?;
    let mut rows: Vec<Fig2Row> = Vec::with_capacity(pxs.len() * alphas.len());
    for &px in &pxs {
        let params = PauliChannelParams::x_pauli(px).map_err(|e| e.to_string())?;
        for &alpha_sq in &alphas {
            let reference = SchmidtState::from_alpha_sq(alpha_sq).map_err(|e| e.to_string())?;
            let c_standard = noisy_capacity_uniform(&Alphabet::standard(&reference), &params).chi;
            let c_equally_distant =
                noisy_capacity_uniform(&Alphabet::equally_distant(&reference), &params).chi;
            rows.push(Fig2Row {
                px,
                alpha_sq,
                c_standard,
                c_equally_distant,
                difference: c_standard - c_equally_distant,
            });
        }
    }

    let text = match args.format {
        Format::Csv => {
            let mut text = String::from("px,alpha_sq,c_standard,c_equally_distant,difference\n");
            for r in &rows {
                text.push_str(&format!(
                    "{},{},{},{},{}\n",
                    fmt6(r.px),
                    fmt6(r.alpha_sq),
                    fmt6(r.c_standard),
                    fmt6(r.c_equally_distant),
                    fmt6(r.difference)
                ));
            }
            text
        }
        Format::Json => {
            let rounded: Vec<Fig2Row> = rows
                .iter()
                .map(|r| Fig2Row {
                    px: round6(r.px),
                    alpha_sq: round6(r.alpha_sq),
                    c_standard: round6(r.c_standard),
                    c_equally_distant: round6(r.c_equally_distant),
                    difference: round6(r.difference),
                })
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&rounded).map_err(|e| e.to_string())?)
        }
    };
    emit(&args.out, &text)?;

    if args.verify {
        for r in &rows {
            if r.difference > 1e-12 {
                return Err(format!(
                    "verify: positive difference {} at px={}, alpha_sq={}",
                    fmt6(r.difference),
                    fmt6(r.px),
                    fmt6(r.alpha_sq)
                ));
            }
            let on_symmetric_line =
                (r.alpha_sq - 0.5).abs() < 1e-12 || r.px == 0.0 || (r.px - 1.0).abs() < 1e-12;
            if on_symmetric_line && r.difference.abs() > 1e-12 {
                return Err(format!(
                    "verify: nonzero difference {} on a symmetric line (px={}, alpha_sq={})",
                    fmt6(r.difference),
                    fmt6(r.px),
                    fmt6(r.alpha_sq)
                ));
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct DeriveJson {
    delta_sq: f64,
    restarts: u32,
    seed: u64,
    achieved_overlap: f64,
    target_overlap: f64,
    cos_sq_theta: [f64; 3],
    angles: [DeriveAngles; 3],
}

#[derive(Serialize)]
struct DeriveAngles {
    psi: f64,
    theta: f64,
    phi: f64,
}

fn cmd_derive(args: &DeriveArgs) -> CmdResult {
    let outcome = search_min_max_overlap(args.delta_sq, args.restarts, args.seed)
        .map_err(|e| e.to_string())?;
    let angles = outcome
        .angles
        .map(|[psi, theta, phi]| DeriveAngles { psi: round6(psi), theta: round6(theta), phi: round6(phi) });
    let payload = DeriveJson {
        delta_sq: args.delta_sq,
        restarts: args.restarts,
        seed: args.seed,
        achieved_overlap: round6(outcome.achieved_overlap),
        target_overlap: round6(outcome.target_overlap),
        cos_sq_theta: outcome.cos_sq_theta.map(round6),
        angles,
    };
    let json = serde_json::to_string_pretty(&payload).map_err(|e| e.to_string())?;
    emit(&args.out, &format!("{json}\n"))
}
