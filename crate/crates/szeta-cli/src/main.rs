//! `szeta`: homology length spectra, stable norms, and zeta functions of
//! weighted graphs and flat tori.
//!
//! Exit codes: 0 success, 1 other failure, 2 parse error, 3 degenerate
//! stable ball, 4 evaluation too close to a pole, 5 outside the convergence
//! half-plane.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use szeta::ehrhart::{ehrhart_fit, format_quasipolynomial, hurwitz_for_graph};
use szeta::error::Error;
use szeta::graph::{parse_graph, WeightedGraph};
use szeta::num::{format_rational, parse_rational, q_to_f64};
use szeta::plot::{line_chart, staircase_chart};
use szeta::spectrum::{
    enumerate_spectrum, ordered_spectrum, write_spectrum_csv,
};
use szeta::stable::{format_ball, stable_ball};
use szeta::torus::{
    epstein_zeta_truncated, parse_lattice, theta_coefficients, torus_isoperimetric_check,
    torus_residue, witt_pair, write_theta_csv,
};
use szeta::zeta::{
    perron_count, residue_numeric, write_evaluation_csv, zeta_st_meromorphic, zeta_st_truncated,
};

#[derive(Parser)]
#[command(name = "szeta", version, about = "systolic and stable zeta functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct IoArgs {
    /// Input file (graph or lattice format).
    #[arg(long)]
    input: PathBuf,
    /// Output directory; files are written under it.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Marked and ordered length spectra of a weighted graph.
    Spectrum {
        #[command(flatten)]
        io: IoArgs,
        /// Enumeration radius (rational).
        #[arg(long, default_value = "10")]
        t: String,
    },
    /// Stable zeta function values (truncated or meromorphic).
    Zeta {
        #[command(flatten)]
        io: IoArgs,
        /// Evaluation point `RE` or `RE,IM`.
        #[arg(long)]
        z: String,
        /// Truncation radius for the direct sum (rational).
        #[arg(long, default_value = "200")]
        t: String,
        /// Evaluate the Hurwitz-zeta continuation (combinatorial graphs).
        #[arg(long)]
        meromorphic: bool,
    },
    /// Residue of the stable zeta function at z = b.
    Residue {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Perron inversion: recover |Theta_{<=x}| from the zeta function.
    Perron {
        #[command(flatten)]
        io: IoArgs,
        /// Length threshold x.
        #[arg(long)]
        x: f64,
        /// Real part of the integration line (must exceed the Betti number).
        #[arg(long, default_value_t = 3.0)]
        c: f64,
        /// Integration height T.
        #[arg(long, default_value_t = 200.0)]
        height: f64,
        /// Trapezoid step.
        #[arg(long, default_value_t = 0.05)]
        step: f64,
        /// Read x as e^t (threshold given in the exponent variable).
        #[arg(long)]
        exp_threshold: bool,
    },
    /// Ehrhart quasi-polynomial of the stable ball.
    Ehrhart {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Exact stable ball export (vertices and facets).
    Ball {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Flat-torus computations on a lattice file.
    Torus {
        #[command(flatten)]
        io: IoArgs,
        /// Vector enumeration / theta radius.
        #[arg(long, default_value = "3")]
        radius: String,
        /// Epstein zeta evaluation point `RE` or `RE,IM` (optional).
        #[arg(long)]
        z: Option<String>,
        /// Compare the theta series of the two classical 16-dimensional
        /// isospectral lattices instead of reading the input lattice.
        #[arg(long)]
        witt_check: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("szeta: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Parse(_)
        | Error::NonPositiveWeight
        | Error::BadVertexId(..)
        | Error::DisconnectedGraph => 2,
        Error::DegenerateBall => 3,
        Error::NearPole(_) | Error::PoleAtOne | Error::PoleAtNonPositiveInteger(_) => 4,
        Error::ConvergenceDomain(_) => 5,
        _ => 1,
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Spectrum { io, t } => cmd_spectrum(&io, &t),
        Command::Zeta { io, z, t, meromorphic } => cmd_zeta(&io, &z, &t, meromorphic),
        Command::Residue { io } => cmd_residue(&io),
        Command::Perron { io, x, c, height, step, exp_threshold } => {
            cmd_perron(&io, x, c, height, step, exp_threshold)
        }
        Command::Ehrhart { io } => cmd_ehrhart(&io),
        Command::Ball { io } => cmd_ball(&io),
        Command::Torus { io, radius, z, witt_check } => cmd_torus(&io, &radius, z.as_deref(), witt_check),
    }
}

/// FNV-1a of the input bytes; stamped into every output for reproducibility.
fn input_hash(bytes: &[u8]) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

fn read_input(path: &Path) -> Result<(String, String), Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let hash = input_hash(text.as_bytes());
    Ok((text, hash))
}

fn header(command: &str, hash: &str, params: &str) -> String {
    format!("# szeta {command}\n# input-hash {hash}\n# params {params}\n")
}

fn write_out(dir: &Path, name: &str, contents: &str) -> Result<(), Error> {
    std::fs::create_dir_all(dir)
        .map_err(|e| Error::Parse(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, contents)
        .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn load_graph(io: &IoArgs) -> Result<(WeightedGraph, String), Error> {
    let (text, hash) = read_input(&io.input)?;
    Ok((parse_graph(&text)?, hash))
}

fn parse_complex(s: &str) -> Result<Complex64, Error> {
    let bad = || Error::Parse(format!("invalid complex number `{s}` (expected RE or RE,IM)"));
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(
            re.trim().parse().map_err(|_| bad())?,
            im.trim().parse().map_err(|_| bad())?,
        )),
        None => Ok(Complex64::new(s.trim().parse().map_err(|_| bad())?, 0.0)),
    }
}

fn cmd_spectrum(io: &IoArgs, t: &str) -> Result<(), Error> {
    let (g, hash) = load_graph(io)?;
    let radius = parse_rational(t)?;
    let basis = g.homology_basis();
    let ball = stable_ball(&g, &basis)?;
    let ms = enumerate_spectrum(&g, &basis, &radius)?;
    let head = header("spectrum", &hash, &format!("t={}", format_rational(&radius)));

    let marked = format!("{head}{}", write_spectrum_csv(&ms, &ball));
    write_out(&io.out, "marked.csv", &marked)?;

    let ordered = ordered_spectrum(&ms);
    let mut ordered_csv = format!("{head}length,multiplicity\n");
    for (length, count) in &ordered.0 {
        ordered_csv.push_str(&format!("{},{}\n", format_rational(length), count));
    }
    write_out(&io.out, "ordered.csv", &ordered_csv)?;

    // counting staircase
    let mut cumulative = 0.0;
    let jumps: Vec<(f64, f64)> = ordered
        .0
        .iter()
        .map(|(length, count)| {
            cumulative += *count as f64;
            (q_to_f64(length), cumulative)
        })
        .collect();
    write_out(&io.out, "counting.svg", &staircase_chart("counting function", &jumps))
}

fn cmd_zeta(io: &IoArgs, z: &str, t: &str, meromorphic: bool) -> Result<(), Error> {
    let (g, hash) = load_graph(io)?;
    let z = parse_complex(z)?;
    let basis = g.homology_basis();
    let params = format!("z={},{} t={t} meromorphic={meromorphic}", z.re, z.im);
    let head = header("zeta", &hash, &params);

    if meromorphic {
        let (_, hd) = hurwitz_for_graph(&g, &basis)?;
        let value = zeta_st_meromorphic(&hd, z)?;
        let csv = format!("{head}{}", write_evaluation_csv(&[(z, value, 0.0)]));
        return write_out(&io.out, "zeta.csv", &csv);
    }

    let radius = parse_rational(t)?;
    let ball = stable_ball(&g, &basis)?;
    let tb = zeta_st_truncated(&ball, z, &radius)?;
    let csv = format!("{head}{}", write_evaluation_csv(&[(z, tb.value, tb.tail)]));
    write_out(&io.out, "zeta.csv", &csv)?;

    // partial sums against the truncation radius
    let t_f = q_to_f64(&radius);
    let mut series = Vec::new();
    let mut cut = 1.0f64;
    while cut <= t_f {
        let partial = zeta_st_truncated(&ball, z, &parse_rational(&format!("{}", cut as i64))?)?;
        series.push((cut, partial.value.re));
        cut *= 1.5;
    }
    series.push((t_f, tb.value.re));
    write_out(&io.out, "partial_sums.svg", &line_chart("partial sums vs t", &series))
}

fn cmd_residue(io: &IoArgs) -> Result<(), Error> {
    let (g, hash) = load_graph(io)?;
    let basis = g.homology_basis();
    let (ball, hd) = hurwitz_for_graph(&g, &basis)?;
    let b = basis.betti() as f64;
    let est = residue_numeric(|z| zeta_st_meromorphic(&hd, z), b)?;
    let head = header("residue", &hash, &format!("pole={b}"));
    let bv = b * q_to_f64(ball.volume());
    let csv = format!(
        "{head}residue,error_estimate,b_times_volume\n{:.12e},{:.3e},{:.12e}\n",
        est.value, est.error, bv
    );
    write_out(&io.out, "residue.csv", &csv)?;

    // (z - b) zeta(z) against z - b
    let series: Vec<(f64, f64)> = (3..=10)
        .map(|k| {
            let eps = (2.0f64).powi(-k);
            let v = zeta_st_meromorphic(&hd, Complex64::new(b + eps, 0.0))?;
            Ok((eps, eps * v.re))
        })
        .collect::<Result<_, Error>>()?;
    write_out(&io.out, "residue.svg", &line_chart("(z-b) zeta(z) vs z-b", &series))
}

fn cmd_perron(
    io: &IoArgs,
    x: f64,
    c: f64,
    height: f64,
    step: f64,
    exp_threshold: bool,
) -> Result<(), Error> {
    let (g, hash) = load_graph(io)?;
    let basis = g.homology_basis();
    let threshold = if exp_threshold { x.exp() } else { x };
    if c <= basis.betti() as f64 {
        return Err(Error::ConvergenceDomain(basis.betti() as f64));
    }
    // reject thresholds sitting exactly on the spectrum
    let bound = parse_rational(&format!("{}", threshold.ceil() as i64 + 1))?;
    let ms = enumerate_spectrum(&g, &basis, &bound)?;
    for length in ms.entries.values() {
        if (q_to_f64(length) - threshold).abs() < 1e-9 {
            return Err(Error::SpectrumPoint(threshold));
        }
    }
    let (_, hd) = hurwitz_for_graph(&g, &basis)?;
    let count = perron_count(|z| zeta_st_meromorphic(&hd, z), threshold, c, height, step)?;
    let exact = ms
        .entries
        .values()
        .filter(|l| q_to_f64(l) <= threshold)
        .count();
    let head = header(
        "perron",
        &hash,
        &format!("x={x} c={c} height={height} step={step} exp_threshold={exp_threshold}"),
    );
    let csv = format!("{head}x,count_estimate,count_rounded,count_exact\n{threshold},{count:.6},{},{exact}\n", count.round());
    write_out(&io.out, "perron.csv", &csv)
}

fn cmd_ehrhart(io: &IoArgs) -> Result<(), Error> {
    let (g, hash) = load_graph(io)?;
    let basis = g.homology_basis();
    let ball = stable_ball(&g, &basis)?;
    let qp = ehrhart_fit(&ball)?;
    let head = header("ehrhart", &hash, "");
    let report = format!("{head}{}", format_quasipolynomial(&qp));
    write_out(&io.out, "ehrhart.txt", &report)
}

fn cmd_ball(io: &IoArgs) -> Result<(), Error> {
    let (g, hash) = load_graph(io)?;
    let basis = g.homology_basis();
    let ball = stable_ball(&g, &basis)?;
    let head = header("ball", &hash, "");
    let text = format!("{head}{}", format_ball(&ball));
    write_out(&io.out, "ball.txt", &text)
}

fn cmd_torus(io: &IoArgs, radius: &str, z: Option<&str>, witt_check: bool) -> Result<(), Error> {
    if witt_check {
        let (a, b) = witt_pair();
        let ra = theta_coefficients(&a, 8)?;
        let rb = theta_coefficients(&b, 8)?;
        let agree = ra == rb;
        let head = header("torus", "builtin-witt-pair", "witt-check");
        let mut csv = format!("{head}isospectral_up_to,8,{agree}\n");
        for (idx, (x, y)) in ra.iter().zip(&rb).enumerate() {
            csv.push_str(&format!("r_{},{},{}\n", idx + 1, x, y));
        }
        return write_out(&io.out, "witt.csv", &csv);
    }

    let (text, hash) = read_input(&io.input)?;
    let lat = parse_lattice(&text)?;
    let r: f64 = parse_rational(radius).map(|q| q_to_f64(&q))?;

    if let Some(zs) = z {
        let z = parse_complex(zs)?;
        let v = epstein_zeta_truncated(&lat, z, r)?;
        let head = header("torus", &hash, &format!("z={},{} radius={radius}", z.re, z.im));
        let csv = format!("{head}{}", write_evaluation_csv(&[(z, v.value, v.tail)]));
        return write_out(&io.out, "epstein.csv", &csv);
    }

    let max_n = (r * r).floor() as i64;
    let counts = theta_coefficients(&lat, max_n.max(1))?;
    let head = header("torus", &hash, &format!("radius={radius}"));
    let mut csv = format!("{head}{}", write_theta_csv(&counts));
    csv.push_str(&format!("# residue_analytic {:.12e}\n", torus_residue(&lat)));
    if lat.dim() == 2 {
        let (lhs, rhs, holds) = torus_isoperimetric_check(&lat)?;
        csv.push_str(&format!("# isoperimetric {lhs:.12e},{rhs:.12e},{holds}\n"));
    }
    write_out(&io.out, "theta.csv", &csv)
}
