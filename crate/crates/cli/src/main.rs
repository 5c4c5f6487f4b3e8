//! `sqperm`: counting, series, codes, sampling and verification from the
//! command line.
//!
//! Exit codes: 0 on success, 1 for a well-formed negative answer (a word that
//! does not decode, a failed verification), 2 for usage and format errors.

mod render;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sqperm::codec::{decode, encode, DecodeMode, DecodeOutcome, FailureKind, MarkedWord};
use sqperm::oracle::{
    bijection_audit, brute_enumerate, colored_co_indecomposable_squares, enumerate_cell_permutominoes,
};
use sqperm::perm::{classify_records, colored_subclass_report, ColoredPermutation, Corner, Diagonal};
use sqperm::permutomino::{phi, phi_inverse, Permutomino};
use sqperm::sampler::{
    batch_json, exact_generic_count, exact_generic_polygon_count, sample_convex_polygon,
    sample_exterior_config, RngStream, SampleFamily,
};
use sqperm::series::{
    aux_series, base_series, count, narayana_series, refined_series_oracle, sq_refined_series,
    AuxSeries, BaseSeries, BivariateSeries, CountFamily,
};

#[derive(Parser)]
#[command(name = "sqperm", version, about = "Square permutations and convex permutominoes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Square,
    Triangular,
    Parallel,
    FullyIndec,
    MarkedWords,
    ConvexPermutomino,
    DirectedPermutomino,
    ParallelogramPermutomino,
}

impl From<FamilyArg> for CountFamily {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Square => CountFamily::Square,
            FamilyArg::Triangular => CountFamily::Triangular,
            FamilyArg::Parallel => CountFamily::Parallel,
            FamilyArg::FullyIndec => CountFamily::FullyIndec,
            FamilyArg::MarkedWords => CountFamily::MarkedWords,
            FamilyArg::ConvexPermutomino => CountFamily::ConvexPermutomino,
            FamilyArg::DirectedPermutomino => CountFamily::DirectedPermutomino,
            FamilyArg::ParallelogramPermutomino => CountFamily::ParallelogramPermutomino,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SampleArg {
    MarkedWords,
    Square,
    FullyIndec,
    ConvexPermutomino,
}

impl From<SampleArg> for SampleFamily {
    fn from(f: SampleArg) -> Self {
        match f {
            SampleArg::MarkedWords => SampleFamily::MarkedWords,
            SampleArg::Square => SampleFamily::Square,
            SampleArg::FullyIndec => SampleFamily::FullyIndec,
            SampleArg::ConvexPermutomino => SampleFamily::ConvexPermutomino,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesArg {
    Sq,
    W,
    M,
    Narayana,
    TNw,
    TSwTilde,
    Cp,
    FullyIndec,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Square,
    FullyIndec,
    Permutomino,
}

impl From<ModeArg> for DecodeMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Square => DecodeMode::Square,
            ModeArg::FullyIndec => DecodeMode::FullyIndec,
            ModeArg::Permutomino => DecodeMode::Permutomino,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Ascii,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Exact number of objects of a given size.
    Count {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Coefficients of a refined generating series.
    Series {
        #[arg(long, value_enum)]
        which: SeriesArg,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        json: bool,
    },
    /// Marked word of a (colored) square permutation.
    Encode {
        #[arg(long)]
        perm: String,
        #[arg(long)]
        json: bool,
    },
    /// Decode a marked word, given as text or as JSON.
    Decode {
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value = "square")]
        mode: ModeArg,
        #[arg(long)]
        json: bool,
    },
    /// Records and subclass membership of a permutation.
    Classify {
        #[arg(long)]
        perm: String,
        #[arg(long)]
        json: bool,
    },
    /// Uniform random objects.
    Sample {
        #[arg(long, value_enum)]
        family: SampleArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Uniform generic exterior-point configuration or convex polygon in a grid.
    SampleGrid {
        #[arg(long)]
        cols: usize,
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        points: usize,
        #[arg(long)]
        polygon: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Draw a permutation or a permutomino.
    Render {
        #[arg(long, conflicts_with = "permutomino", required_unless_present = "permutomino")]
        perm: Option<String>,
        #[arg(long)]
        permutomino: Option<String>,
        #[arg(long, value_enum, default_value = "ascii")]
        format: Format,
        /// Write to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the brute-force audits for every size up to `max_n`.
    Verify {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long)]
        json: bool,
    },
}

/// Usage or format error, reported with exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<(String, bool), UsageError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn line(s: impl std::fmt::Display) -> String {
    format!("{s}\n")
}

fn pretty(v: &Value) -> String {
    line(serde_json::to_string_pretty(v).expect("json values serialize"))
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::Count { family, n, json } => {
            let family = CountFamily::from(family);
            let c = count(family, n)?;
            Ok(if json {
                (pretty(&json!({"family": family, "n": n, "count": c.to_string()})), true)
            } else {
                (line(c), true)
            })
        }
        Command::Series { which, order, json } => {
            let s = series(which, order)?;
            Ok(if json { (pretty(&s.to_json()), true) } else { (s.to_string(), true) })
        }
        Command::Encode { perm, json } => {
            let cp: ColoredPermutation = perm.parse()?;
            let w = encode(&cp)?;
            Ok(if json {
                (pretty(&serde_json::to_value(&w)?), true)
            } else {
                (line(w), true)
            })
        }
        Command::Decode { word, mode, json } => decode_cmd(&word, mode.into(), json),
        Command::Classify { perm, json } => classify(&perm, json),
        Command::Sample {
            family,
            n,
            count,
            seed,
            json,
        } => {
            let batch = batch_json(family.into(), n, count, seed)?;
            Ok(if json {
                (pretty(&serde_json::to_value(&batch)?), true)
            } else {
                (batch.items.iter().map(line).collect(), true)
            })
        }
        Command::SampleGrid {
            cols,
            rows,
            points,
            polygon,
            seed,
            json,
        } => sample_grid(cols, rows, points, polygon, seed, json),
        Command::Render {
            perm,
            permutomino,
            format,
            out,
        } => {
            let picture = match (perm, permutomino) {
                (Some(p), _) => {
                    let cp: ColoredPermutation = p.parse()?;
                    match format {
                        Format::Ascii => render::perm_ascii(&cp),
                        Format::Svg => render::perm_svg(&cp),
                    }
                }
                (None, Some(t)) => {
                    let p: Permutomino = t
                        .parse()
                        .map_err(|errs: Vec<_>| UsageError(join_errors(&errs)))?;
                    match format {
                        Format::Ascii => render::permutomino_ascii(&p),
                        Format::Svg => render::permutomino_svg(&p),
                    }
                }
                (None, None) => return Err(UsageError("give --perm or --permutomino".into())),
            };
            match out {
                Some(path) => {
                    fs::write(&path, picture)?;
                    Ok((String::new(), true))
                }
                None => Ok((picture, true)),
            }
        }
        Command::Verify { max_n, json } => verify(max_n, json),
    }
}

fn join_errors<E: std::fmt::Display>(errs: &[E]) -> String {
    errs.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

fn series(which: SeriesArg, order: usize) -> Result<BivariateSeries, UsageError> {
    Ok(match which {
        SeriesArg::Sq => sq_refined_series(order)?,
        SeriesArg::W => base_series(BaseSeries::W, order)?,
        SeriesArg::M => base_series(BaseSeries::M, order)?,
        SeriesArg::Narayana => narayana_series(order),
        SeriesArg::TNw => aux_series(AuxSeries::TNw, order)?,
        SeriesArg::TSwTilde => aux_series(AuxSeries::TSwTilde, order)?,
        SeriesArg::Cp => refined_series_oracle(CountFamily::ConvexPermutomino, order)?,
        SeriesArg::FullyIndec => refined_series_oracle(CountFamily::FullyIndec, order)?,
    })
}

fn decode_cmd(word: &str, mode: DecodeMode, json: bool) -> CmdResult {
    let w: MarkedWord = if word.trim_start().starts_with('{') {
        serde_json::from_str(word)?
    } else {
        word.parse()?
    };
    match decode(&w, mode) {
        DecodeOutcome::Success(cp) => Ok(if json {
            (pretty(&json!({"result": "success", "permutation": cp.to_string()})), true)
        } else {
            (line(cp), true)
        }),
        DecodeOutcome::Failure(f) => {
            let kind = match f.kind {
                FailureKind::SouthWest => "south-west",
                FailureKind::NorthWest => "north-west",
            };
            let suffix_u: String = f.suffix_u.iter().map(|h| format!("{h:?}")).collect();
            let suffix_v: String = f.suffix_v.iter().map(|v| format!("{v:?}")).collect();
            Ok(if json {
                let report = json!({
                    "result": "failure",
                    "kind": kind,
                    "stop_index": f.stop_index,
                    "prefix": f.prefix.to_string(),
                    "pair": f.pair.to_string(),
                    "suffix_u": suffix_u,
                    "suffix_v": suffix_v,
                });
                (pretty(&report), false)
            } else {
                let text = format!(
                    "failure: {kind} at column {}\nprefix: {}\npair: {}\nsuffix u: {suffix_u}\nsuffix v: {suffix_v}\n",
                    f.stop_index, f.prefix, f.pair
                );
                (text, false)
            })
        }
        DecodeOutcome::InternalContradiction(msg) => {
            Ok((line(format!("internal contradiction: {msg}")), false))
        }
    }
}

fn classify(perm: &str, json: bool) -> CmdResult {
    let cp: ColoredPermutation = perm.parse()?;
    let r = colored_subclass_report(&cp);
    let masks = classify_records(cp.perm());
    let records: Vec<String> = masks
        .iter()
        .map(|m| {
            ["ul", "ur", "bl", "br"]
                .iter()
                .zip(Corner::ALL)
                .filter(|(_, c)| m.has(*c))
                .map(|(s, _)| *s)
                .collect::<Vec<_>>()
                .join("+")
        })
        .collect();
    let triangular: Vec<&str> = Corner::ALL
        .iter()
        .zip(["no-ul", "no-ur", "no-bl", "no-br"])
        .filter(|(c, _)| r.triangular_without(**c))
        .map(|(_, s)| s)
        .collect();
    let parallel: Vec<&str> = [(Diagonal::Main, "main"), (Diagonal::Anti, "anti")]
        .into_iter()
        .filter(|(d, _)| r.parallel_along(*d))
        .map(|(_, s)| s)
        .collect();
    let v = json!({
        "permutation": cp.to_string(),
        "square": r.square,
        "triangular": triangular,
        "parallel": parallel,
        "decomposable": r.decomposable,
        "co_decomposable": r.co_decomposable,
        "upper": r.upper_count,
        "left": r.left_count,
        "records": records,
    });
    if json {
        return Ok((pretty(&v), true));
    }
    let mut out = format!(
        "square: {}\ntriangular: {}\nparallel: {}\ndecomposable: {}\nco-decomposable: {}\nupper: {}\nleft: {}\n",
        r.square,
        triangular.join(","),
        parallel.join(","),
        r.decomposable,
        r.co_decomposable,
        r.upper_count,
        r.left_count
    );
    for (i, rec) in records.iter().enumerate() {
        out.push_str(&format!("({}, {}): {}\n", i + 1, cp.perm().value_at(i + 1), rec));
    }
    Ok((out, true))
}

fn sample_grid(cols: usize, rows: usize, n: usize, polygon: bool, seed: u64, json: bool) -> CmdResult {
    let mut rng = RngStream::new(seed);
    let (points, total) = if polygon {
        let g = sample_convex_polygon(cols, rows, n, &mut rng)?;
        (g.turnpoints, exact_generic_polygon_count(cols, rows, n)?)
    } else {
        let g = sample_exterior_config(cols, rows, n, &mut rng)?;
        (g.points, exact_generic_count(cols, rows, n)?)
    };
    if json {
        let key = if polygon { "turnpoints" } else { "points" };
        let v = json!({
            "cols": cols,
            "rows": rows,
            "n": n,
            "seed": seed,
            "population": total.to_string(),
            key: points,
        });
        return Ok((pretty(&v), true));
    }
    let text: Vec<String> = points.iter().map(|(x, y)| format!("{x},{y}")).collect();
    Ok((line(text.join(";")), true))
}

fn verify(max_n: usize, json: bool) -> CmdResult {
    if !(2..=10).contains(&max_n) {
        return Err(UsageError(format!("--max-n must be in 2..=10, got {max_n}")));
    }
    let mut ok = true;
    let mut text = String::new();
    let mut audits = Vec::new();
    for mode in DecodeMode::ALL {
        for n in 2..=max_n {
            let r = bijection_audit(mode, n)?;
            let clean = r.is_clean();
            ok &= clean;
            text.push_str(&format!(
                "audit {mode:?} n={n}: {} successes, {} failures: {}\n",
                r.success_count,
                r.total_failures(),
                if clean { "ok" } else { "VIOLATION" }
            ));
            audits.push(serde_json::to_value(&r)?);
        }
    }
    let mut counts = Vec::new();
    for family in CountFamily::ALL {
        let bound = if family.is_permutomino() { 5 } else { 9 };
        for n in family.min_size()..=max_n.min(bound) {
            let formula = count(family, n)?;
            let brute = brute_enumerate(family, n)?.len();
            let agree = formula == brute.into();
            ok &= agree;
            text.push_str(&format!(
                "count {family:?} n={n}: formula {formula}, brute {brute}: {}\n",
                if agree { "ok" } else { "VIOLATION" }
            ));
            counts.push(json!({"family": family, "n": n, "formula": formula.to_string(), "brute": brute}));
        }
    }
    let mut phi_checks = Vec::new();
    for n in 2..=max_n.min(5) {
        let cells = enumerate_cell_permutominoes(n)?;
        let images = colored_co_indecomposable_squares(n)?;
        let roundtrip = cells
            .iter()
            .all(|p| phi(p).ok().and_then(|cp| phi_inverse(&cp).ok()).as_ref() == Some(p));
        let agree = roundtrip && cells.len() == images.len();
        ok &= agree;
        text.push_str(&format!(
            "phi n={n}: {} permutominoes, {} colored permutations: {}\n",
            cells.len(),
            images.len(),
            if agree { "ok" } else { "VIOLATION" }
        ));
        phi_checks.push(json!({"n": n, "permutominoes": cells.len(), "colored": images.len(), "ok": agree}));
    }
    if json {
        let v = json!({"ok": ok, "audits": audits, "counts": counts, "phi": phi_checks});
        return Ok((pretty(&v), ok));
    }
    text.push_str(if ok { "all checks passed\n" } else { "violations found\n" });
    Ok((text, ok))
}
