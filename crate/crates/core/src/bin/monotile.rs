// SPDX-License-Identifier: MIT OR Apache-2.0

//! `monotile`: generate, check and render dual monotile patches, and print
//! the words behind them.
//!
//! Exit status: 0 on success, 1 when a patch breaks the matching rules,
//! 2 on bad usage or input.

use clap::{Parser, Subcommand, ValueEnum};
use monotile::analysis::{check_properties_with, stats_with};
use monotile::assemble::assemble_tiles;
use monotile::bam::{build_metatile, fib_word, strip_word, MetatileKind, Strip};
use monotile::fibcube::{build_cube, project_slice, slice};
use monotile::lattice::Axis;
use monotile::patch::{validate_matching, ColoredPatch};
use monotile::render::{render_patch, Format};
use monotile::spectre::{
    char_poly, dominant_eigenvalue, format_poly, matrix_cubed_blocks, substitution_eigenvalue,
    substitution_matrix, to_dense, worm, WormKind, WormSystem,
};
use monotile::sturmian::{
    characteristic_prefix, conjugate_complement_check, slope_value, ContinuedFraction,
};
use monotile::word::Word;
use monotile::Error;
use serde_json::{json, Value};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "monotile", version, about = "Dual rhomb tilings of the Turtle/Hat/Spectre family")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "UPPER")]
enum Kind {
    T,
    P,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "UPPER")]
enum StripArg {
    A,
    B,
    J,
    /// Fibonacci word
    F,
}

#[derive(Clone, Copy, ValueEnum)]
enum SystemArg {
    Articulated,
    Wriggly,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "UPPER")]
enum WormArg {
    S,
    I,
    N,
    M,
}

#[derive(Clone, Copy, ValueEnum)]
enum AxisArg {
    X,
    Y,
    Z,
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderFormat {
    Svg,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum CubeFormat {
    Json,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Build a metatile patch
    Generate {
        #[arg(long, value_enum, ignore_case = true)]
        kind: Kind,
        #[arg(long)]
        level: u32,
        /// Output file; standard output if absent
        #[arg(long)]
        out: Option<PathBuf>,
        /// Leave the assembled dual tiles out of the file
        #[arg(long)]
        no_tiles: bool,
    },
    /// Check a patch against the matching rules
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: OutFormat,
    },
    /// Colour, tile and cluster counts of a patch, plus the property checks
    Stats {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: OutFormat,
    },
    /// Draw a patch as monotiles
    Render {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 60.0)]
        alpha: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "svg")]
        format: RenderFormat,
    },
    /// Strip and Fibonacci words
    Words {
        #[arg(long, value_enum, ignore_case = true)]
        strip: StripArg,
        #[arg(long)]
        level: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: OutFormat,
    },
    /// Spectre worm words
    Worm {
        #[arg(long, value_enum)]
        system: SystemArg,
        #[arg(long, value_enum, ignore_case = true)]
        kind: WormArg,
        #[arg(long)]
        level: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: OutFormat,
    },
    /// Standard sequence and slope of a continued fraction such as "0;3,(1,2,1,1)"
    Sturmian {
        #[arg(long)]
        cf: String,
        #[arg(long, default_value_t = 100)]
        length: usize,
        /// Also print the word of 1 - a and check that it is the complement
        #[arg(long)]
        complement: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: OutFormat,
    },
    /// Fibonacci cube slice, projected along one axis
    Cube {
        #[arg(long)]
        level: u32,
        #[arg(long)]
        cut: Option<usize>,
        #[arg(long, value_enum)]
        project: AxisArg,
        #[arg(long, value_enum, default_value = "json")]
        format: CubeFormat,
    },
    /// Spectre substitution matrix or its cube
    Matrix {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=3))]
        power: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: OutFormat,
    },
}

enum Failure {
    /// A validation report, printed to standard output.
    Invalid(String),
    /// A patch that fails validation where a valid one is required.
    Rejected(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidPatch(_) => Failure::Rejected(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Run = std::result::Result<String, Failure>;

fn read_patch(path: &Path) -> std::result::Result<ColoredPatch, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(ColoredPatch::from_json(&text)?)
}

fn emit(out: &Option<PathBuf>, text: String) -> Run {
    match out {
        Some(path) => {
            let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
            f.write_all(text.as_bytes())?;
            f.flush()?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn json_line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("json value");
    s.push('\n');
    s
}

fn word_json(w: &Word) -> Value {
    json!({
        "word": w.to_string(),
        "length": w.len(),
        "zeros": w.zeros(),
        "ones": w.ones(),
        "palindrome": w.is_palindrome(),
    })
}

fn word_text(label: &str, w: &Word) -> String {
    format!(
        "{label} = {w}\nlength {}, zeros {}, ones {}, palindrome {}\n",
        w.len(),
        w.zeros(),
        w.ones(),
        w.is_palindrome()
    )
}

fn generate(kind: Kind, level: u32, out: &Option<PathBuf>, no_tiles: bool) -> Run {
    let kind = match kind {
        Kind::T => MetatileKind::T,
        Kind::P => MetatileKind::P,
    };
    let mut p = build_metatile(kind, level)?;
    if !no_tiles {
        p.tiles = Some(assemble_tiles(&p)?.tiles);
    }
    emit(out, p.to_json())
}

fn verify(file: &Path, format: OutFormat) -> Run {
    let p = read_patch(file)?;
    let r = validate_matching(&p);
    let lines: Vec<String> = r.violations.iter().map(|v| v.to_string()).collect();
    let text = match format {
        OutFormat::Json => json_line(&json!({
            "valid": r.is_valid(),
            "edges_checked": r.edges_checked,
            "violations": lines,
        })),
        OutFormat::Text => {
            let mut s = format!("{} violations ({} edges checked)\n", lines.len(), r.edges_checked);
            for l in &lines {
                s.push_str(l);
                s.push('\n');
            }
            s
        }
    };
    if r.is_valid() {
        Ok(text)
    } else {
        Err(Failure::Invalid(text))
    }
}

fn stats(file: &Path, format: OutFormat) -> Run {
    let p = read_patch(file)?;
    let r = validate_matching(&p);
    if !r.is_valid() {
        return Err(Error::InvalidPatch(r.violations.len()).into());
    }
    let asm = assemble_tiles(&p)?;
    let st = stats_with(&p, &asm);
    let props = check_properties_with(&p, &asm);
    Ok(match format {
        OutFormat::Json => json_line(&json!({ "stats": st, "properties": props })),
        OutFormat::Text => {
            let mut s = format!(
                "cells: {} red, {} black, {} red&black\ntiles: {} regular, {} flipped\n",
                st.n_red, st.n_black, st.n_redblack, st.n_regular, st.n_flipped
            );
            let mut sizes = st.cluster_sizes.clone();
            sizes.dedup();
            s.push_str(&format!("cluster sizes: {sizes:?}\n"));
            for r in &props.results {
                s.push_str(&format!(
                    "property {} ({}): {} on {} interior instances, {} at the boundary\n",
                    r.property,
                    r.name,
                    if r.passed { "pass" } else { "FAIL" },
                    r.instances,
                    r.boundary_incomplete
                ));
            }
            s
        }
    })
}

fn render(input: &Path, alpha: f64, out: &Option<PathBuf>, format: RenderFormat) -> Run {
    let p = read_patch(input)?;
    let f = match format {
        RenderFormat::Svg => Format::Svg,
        RenderFormat::Json => Format::Json,
    };
    emit(out, render_patch(&p, alpha, f)?)
}

fn words(strip: StripArg, level: u32, format: OutFormat) -> Run {
    let (label, w) = match strip {
        StripArg::A => (format!("A_{level}"), strip_word(Strip::A, level)),
        StripArg::B => (format!("B_{level}"), strip_word(Strip::B, level)),
        StripArg::J => ("J".to_string(), strip_word(Strip::J, level)),
        StripArg::F => (format!("F_{level}"), fib_word(level)?),
    };
    if w.len() > 1 << 24 {
        return Err(Failure::Usage(format!("{label} has {} symbols; pick a lower --level", w.len())));
    }
    Ok(match format {
        OutFormat::Json => json_line(&json!({ "name": label, "word": word_json(&w) })),
        OutFormat::Text => word_text(&label, &w),
    })
}

fn worm_cmd(system: SystemArg, kind: WormArg, level: u32, format: OutFormat) -> Run {
    let system = match system {
        SystemArg::Articulated => WormSystem::Articulated,
        SystemArg::Wriggly => WormSystem::Wriggly,
    };
    let (kind, letter) = match kind {
        WormArg::S => (WormKind::S, 'S'),
        WormArg::I => (WormKind::I, 'I'),
        WormArg::N => (WormKind::N, 'N'),
        WormArg::M => (WormKind::M, 'M'),
    };
    let w = worm(system, kind, level)?;
    let label = format!("{letter}_{level}");
    Ok(match format {
        OutFormat::Json => json_line(&json!({
            "system": system.to_string(),
            "name": label,
            "word": word_json(&w),
        })),
        OutFormat::Text => format!("{system} {}", word_text(&label, &w)),
    })
}

fn sturmian(cf: &str, length: usize, complement: bool, format: OutFormat) -> Run {
    let cf: ContinuedFraction = cf.parse()?;
    let v = slope_value(&cf)?;
    let word = characteristic_prefix(&cf, length)?;
    let other = if complement {
        let c = cf.complement();
        let cv = slope_value(&c)?;
        let cw = characteristic_prefix(&c, length)?;
        let ok = conjugate_complement_check(&cf, &c, length)?;
        Some((c, cv, cw, ok))
    } else {
        None
    };
    let [qa, qb, qc] = v.exact.minimal_polynomial();
    Ok(match format {
        OutFormat::Json => {
            let mut o = json!({
                "cf": cf.to_string(),
                "slope": v.exact.to_string(),
                "approx": v.approx,
                "minimal_polynomial": [qa, qb, qc],
                "word": word.to_string(),
            });
            if let Some((c, cv, cw, ok)) = &other {
                o["complement"] = json!({
                    "cf": c.to_string(),
                    "slope": cv.exact.to_string(),
                    "approx": cv.approx,
                    "word": cw.to_string(),
                    "is_complement": ok,
                });
            }
            json_line(&o)
        }
        OutFormat::Text => {
            let mut s = format!(
                "[{cf}] = {} ~ {:.15}\nroot of {}\n{word}\n",
                v.exact,
                v.approx,
                format_poly(&[qa, qb, qc])
            );
            if let Some((c, cv, cw, ok)) = &other {
                s.push_str(&format!(
                    "[{c}] = {} ~ {:.15}\n{cw}\ncomplementary: {ok}\n",
                    cv.exact, cv.approx
                ));
            }
            s
        }
    })
}

fn cube(level: u32, cut: Option<usize>, project: AxisArg, format: CubeFormat) -> Run {
    let axis = match project {
        AxisArg::X => Axis::X,
        AxisArg::Y => Axis::Y,
        AxisArg::Z => Axis::Z,
    };
    if level > 6 {
        return Err(Error::Depth { requested: level, limit: 6 }.into());
    }
    let c = build_cube(level)?;
    let s = slice(&c, cut)?;
    let img = project_slice(&s, axis)?;
    Ok(match format {
        CubeFormat::Svg => img.to_svg(),
        CubeFormat::Json => {
            let squares: Vec<Value> = img
                .squares
                .iter()
                .map(|(&(u, v), cat)| json!({ "u": u, "v": v, "category": cat }))
                .collect();
            json_line(&json!({
                "level": level,
                "side": img.side,
                "axis": axis.letter().to_string(),
                "slice_cells": s.len(),
                "partition": img.partition(),
                "squares": squares,
            }))
        }
    })
}

fn matrix_text(m: &[Vec<i128>]) -> String {
    m.iter()
        .map(|r| r.iter().map(|x| format!("{x:>5}")).collect::<String>() + "\n")
        .collect()
}

fn matrix(power: u32, format: OutFormat) -> Run {
    if power == 2 {
        return Err(Failure::Usage("--power must be 1 or 3".into()));
    }
    let (m, poly, eig) = if power == 1 {
        let m = substitution_matrix();
        let p = char_poly(&m);
        (m, p, substitution_eigenvalue())
    } else {
        let b = matrix_cubed_blocks();
        let p = char_poly(&b.cube);
        (b.cube, p, dominant_eigenvalue(&to_dense(&matrix_cubed_blocks().acb)))
    };
    Ok(match format {
        OutFormat::Json => json_line(&json!({
            "power": power,
            "matrix": m,
            "characteristic_polynomial": poly,
            "dominant_eigenvalue": eig.value,
            "error_bound": eig.error_bound,
        })),
        OutFormat::Text => format!(
            "M^{power}\n{}characteristic polynomial: {}\ndominant eigenvalue: {:.12} (+- {:.1e})\n",
            matrix_text(&m),
            format_poly(&poly),
            eig.value,
            eig.error_bound
        ),
    })
}

fn run(cli: Cli) -> Run {
    match cli.command {
        Command::Generate { kind, level, out, no_tiles } => generate(kind, level, &out, no_tiles),
        Command::Verify { file, format } => verify(&file, format),
        Command::Stats { file, format } => stats(&file, format),
        Command::Render { input, alpha, out, format } => render(&input, alpha, &out, format),
        Command::Words { strip, level, format } => words(strip, level, format),
        Command::Worm { system, kind, level, format } => worm_cmd(system, kind, level, format),
        Command::Sturmian { cf, length, complement, format } => {
            sturmian(&cf, length, complement, format)
        }
        Command::Cube { level, cut, project, format } => cube(level, cut, project, format),
        Command::Matrix { power, format } => matrix(power, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    match run(cli) {
        Ok(text) => {
            let _ = stdout.lock().write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(Failure::Invalid(text)) => {
            let _ = stdout.lock().write_all(text.as_bytes());
            ExitCode::from(1)
        }
        Err(Failure::Rejected(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
