//! Command-line front end for `frieze-core`.
//!
//! Results go to stdout. Failures go to stderr as one JSON object
//! `{"error": {"kind", "message"}}`. Exit codes: 0 success, 1 invalid input or
//! failed check, 2 unparseable arguments.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{IsTerminal, Read, Write};
use std::net::SocketAddr;
use std::path::Path;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use frieze_core::polygon::TriangulationData;
use frieze_core::{
    all_triangulations, decode_unchecked, delta_report, frieze_from_cc, frieze_from_quiddity, mutate_frieze,
    render_ascii, s_bruteforce, s_formula, shape_of, validate_frieze, Chord, Frieze, Label, Quiver, QuiverData,
    RenderOptions, StringShape, StringWalk, Triangulation,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

/// Walks longer than this are refused by `submod-oracle`.
pub const MAX_ORACLE_VERTICES: usize = 10_000;

#[derive(Debug, Parser)]
#[command(name = "frieze", version, about = "Conway-Coxeter friezes, submodule counts and frieze mutation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Human-readable text.
    Ascii,
    /// JSON.
    Data,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long, value_enum, default_value = "ascii")]
    pub format: Format,
    /// Extra periods of the frieze after the first.
    #[arg(long, default_value_t = 1)]
    pub repeat: usize,
    /// Highlight unit entries even when stdout is not a terminal.
    #[arg(long)]
    pub color: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Frieze of a triangulation.
    FriezeGen {
        /// Inline "N; i-j, ..." or a file holding that text or {"n", "diagonals"}.
        #[arg(long, required_unless_present = "random", conflicts_with = "random")]
        triangulation: Option<String>,
        /// Use a random triangulation of the N-gon instead.
        #[arg(long, value_name = "N")]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        render: RenderArgs,
    },
    /// Flip a diagonal and mutate the frieze entrywise.
    FriezeMutate {
        #[arg(long)]
        triangulation: String,
        #[arg(long, value_name = "i-j")]
        at: String,
        #[arg(long)]
        show_regions: bool,
        #[arg(long)]
        show_delta: bool,
        #[command(flatten)]
        render: RenderArgs,
    },
    /// Check the diamond rule, positivity and unit positions of a frieze file.
    FriezeCheck {
        /// Frieze encoding {"n", "entries"}; "-" reads stdin.
        #[arg(long)]
        frieze: String,
        #[arg(long, value_enum, default_value = "ascii")]
        format: Format,
    },
    /// Number of submodules of a string module given by its shape.
    SubmodCount {
        /// Leg lengths, e.g. 1,3,1.
        #[arg(long, allow_hyphen_values = true)]
        shape: String,
        #[arg(long, value_enum, default_value = "ascii")]
        format: Format,
    },
    /// Number of submodules of a string module by counting closed subsets.
    SubmodOracle {
        /// Walk such as "1<2>3>4>5<6".
        #[arg(long)]
        walk: String,
        #[arg(long, value_enum, default_value = "ascii")]
        format: Format,
    },
    /// Flip a diagonal of a triangulation.
    TriangFlip {
        #[arg(long)]
        triangulation: String,
        #[arg(long, value_name = "i-j")]
        at: String,
        #[arg(long, value_enum, default_value = "ascii")]
        format: Format,
    },
    /// Mutate a quiver read from {"vertices", "arrows"}.
    QuiverMutate {
        #[arg(long)]
        quiver: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[arg(long, value_enum, default_value = "ascii")]
        format: Format,
    },
    /// Check entrywise mutation against a fresh frieze for every flip.
    SweepVerify {
        #[arg(long, default_value_t = 5)]
        n_min: usize,
        #[arg(long, default_value_t = 9)]
        n_max: usize,
        /// Random triangulations checked after the exhaustive part.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        /// Largest polygon for the random part.
        #[arg(long, default_value_t = 20)]
        random_n_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "ascii")]
        format: Format,
    },
    /// Start the HTTP service.
    Serve {
        #[arg(long, env = "FRIEZE_PORT", default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: std::net::IpAddr,
        #[arg(long, default_value_t = frieze_api::DEFAULT_MAX_N)]
        max_n: usize,
    },
}

/// A failure reported on stderr with exit code 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    fn input(what: &str, e: impl std::fmt::Display) -> Self {
        CliError {
            kind: "input",
            message: format!("{what}: {e}"),
        }
    }

    fn io(path: &str, e: impl std::fmt::Display) -> Self {
        CliError {
            kind: "io",
            message: format!("{path}: {e}"),
        }
    }

    fn check(message: impl Into<String>) -> Self {
        CliError {
            kind: "check",
            message: message.into(),
        }
    }

    pub fn to_json(&self) -> String {
        json!({ "error": { "kind": self.kind, "message": self.message } }).to_string()
    }
}

type CliResult = Result<(), CliError>;

/// Runs one command, writing its result to `out`. On a failed check the
/// report is written before the error is returned.
pub fn run(cli: Cli, out: &mut dyn Write) -> CliResult {
    match cli.command {
        Command::FriezeGen { triangulation, random, seed, render } => {
            let t = match (triangulation, random) {
                (Some(arg), _) => load_triangulation(&arg)?,
                (None, Some(n)) => Triangulation::random(n, &mut ChaCha8Rng::seed_from_u64(seed))
                    .map_err(|e| CliError::input("random", e))?,
                (None, None) => unreachable!("clap requires one of the two"),
            };
            frieze_gen(&t, &render, out)
        }
        Command::FriezeMutate { triangulation, at, show_regions, show_delta, render } => {
            let t = load_triangulation(&triangulation)?;
            let a = parse_chord(&t, &at)?;
            frieze_mutate(&t, &a, show_regions, show_delta, &render, out)
        }
        Command::FriezeCheck { frieze, format } => frieze_check(&frieze, format, out),
        Command::SubmodCount { shape, format } => {
            let shape = StringShape::parse(&shape).map_err(|e| CliError::input("shape", e))?;
            let count = s_formula(&shape);
            match format {
                Format::Ascii => emit(out, format!("{count}\n")),
                Format::Data => {
                    emit_json(out, &json!({ "count": count.to_string(), "shape": shape.to_string() }))
                }
            }
        }
        Command::SubmodOracle { walk, format } => {
            let w = StringWalk::parse(&walk).map_err(|e| CliError::input("walk", e))?;
            if w.len() > MAX_ORACLE_VERTICES {
                return Err(CliError::input("walk", format!("more than {MAX_ORACLE_VERTICES} vertices")));
            }
            let count = s_bruteforce(&w);
            match format {
                Format::Ascii => emit(out, format!("{count}\n")),
                Format::Data => {
                    let shape = shape_of(&w).map(|s| s.to_string()).unwrap_or_else(|_| "zero".into());
                    emit_json(out, &json!({ "count": count.to_string(), "shape": shape }))
                }
            }
        }
        Command::TriangFlip { triangulation, at, format } => {
            let t = load_triangulation(&triangulation)?;
            let a = parse_chord(&t, &at)?;
            let (t2, a2) = t.flip(&a).map_err(|e| CliError::input("at", e))?;
            match format {
                Format::Ascii => emit(out, format!("{t2}\n")),
                Format::Data => emit_json(
                    out,
                    &json!({ "triangulation": t2.to_string(), "new_diagonal": a2.to_string() }),
                ),
            }
        }
        Command::QuiverMutate { quiver, at, format } => {
            let text = read_source(&quiver)?;
            let data: QuiverData<Label> = serde_json::from_str(&text).map_err(|e| CliError::input("quiver", e))?;
            let q = Quiver::from_data(data).map_err(|e| CliError::input("quiver", e))?;
            let mutated = q.mutate(&Label::parse(&at)).map_err(|e| CliError::input("at", e))?;
            match format {
                Format::Ascii => emit(out, quiver_text(&mutated)),
                Format::Data => emit_json(out, &serde_json::to_value(mutated.to_data()).expect("labels serialize")),
            }
        }
        Command::SweepVerify { n_min, n_max, samples, random_n_max, seed, format } => {
            sweep_verify(n_min, n_max, samples, random_n_max, seed, format, out)
        }
        Command::Serve { port, host, max_n } => {
            let addr = SocketAddr::new(host, port);
            let runtime = tokio::runtime::Runtime::new().map_err(|e| CliError::io("runtime", e))?;
            writeln!(out, "listening on http://{addr}").map_err(|e| CliError::io("stdout", e))?;
            out.flush().map_err(|e| CliError::io("stdout", e))?;
            runtime
                .block_on(frieze_api::serve(addr, frieze_api::Config { max_n }))
                .map_err(|e| CliError::io(&addr.to_string(), e))
        }
    }
}

fn emit(out: &mut dyn Write, text: impl AsRef<str>) -> CliResult {
    out.write_all(text.as_ref().as_bytes()).map_err(|e| CliError::io("stdout", e))
}

fn emit_json(out: &mut dyn Write, value: &Value) -> CliResult {
    emit(out, format!("{}\n", serde_json::to_string_pretty(value).expect("values serialize")))
}

/// Contents of the file `arg`, of stdin for "-", or `None` when `arg` names no
/// file.
fn read_file(arg: &str) -> Result<Option<String>, CliError> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::io("stdin", e))?;
        return Ok(Some(s));
    }
    if Path::new(arg).is_file() {
        return std::fs::read_to_string(arg).map(Some).map_err(|e| CliError::io(arg, e));
    }
    Ok(None)
}

fn read_source(arg: &str) -> Result<String, CliError> {
    read_file(arg)?.ok_or_else(|| CliError::io(arg, "no such file"))
}

/// Accepts inline text, a file of text, or a file of `{"n", "diagonals"}`.
pub fn load_triangulation(arg: &str) -> Result<Triangulation, CliError> {
    let text = read_file(arg)?.unwrap_or_else(|| arg.to_string());
    let text = text.trim();
    if text.starts_with('{') {
        let data: TriangulationData =
            serde_json::from_str(text).map_err(|e| CliError::input("triangulation", e))?;
        Triangulation::try_from(data).map_err(|e| CliError::input("triangulation", e))
    } else {
        Triangulation::parse(text).map_err(|e| CliError::input("triangulation", e))
    }
}

fn parse_chord(t: &Triangulation, s: &str) -> Result<Chord, CliError> {
    Chord::parse(t.n(), s).map_err(|e| CliError::input("at", e))
}

fn render_options(render: &RenderArgs) -> RenderOptions {
    let no_color = std::env::var_os("FRIEZE_NO_COLOR").is_some();
    RenderOptions {
        repeat: render.repeat,
        color: !no_color && (render.color || std::io::stdout().is_terminal()),
    }
}

/// The frieze encoding with the triangulation added; still readable by
/// `decode`, which ignores unknown keys.
fn frieze_data(f: &Frieze, t: &Triangulation) -> Value {
    let mut v = serde_json::to_value(f).expect("frieze serializes");
    v["triangulation"] = Value::from(t.to_string());
    v
}

fn frieze_gen(t: &Triangulation, render: &RenderArgs, out: &mut dyn Write) -> CliResult {
    let f = frieze_from_cc(t);
    match render.format {
        Format::Ascii => emit(out, render_ascii(&f, &render_options(render))),
        Format::Data => emit_json(out, &frieze_data(&f, t)),
    }
}

fn frieze_mutate(
    t: &Triangulation,
    a: &Chord,
    show_regions: bool,
    show_delta: bool,
    render: &RenderArgs,
    out: &mut dyn Write,
) -> CliResult {
    let before = frieze_from_cc(t);
    let report = delta_report(&before, t, a).map_err(|e| CliError::input("at", e))?;
    let (after, t2) = mutate_frieze(&before, t, a).map_err(|e| CliError::input("at", e))?;
    match render.format {
        Format::Ascii => {
            let mut text = format!("flip {} -> {}\n{t2}\n", report.at, report.flip);
            if show_delta {
                text.push_str(&table("delta", &report.delta));
            }
            if show_regions {
                text.push_str(&table("regions", &report.regions));
            }
            text.push_str(&render_ascii(&after, &render_options(render)));
            emit(out, text)
        }
        Format::Data => {
            let mut v = frieze_data(&after, &t2);
            v["flip"] = json!({ "at": report.at, "new_diagonal": report.flip });
            if show_delta {
                v["delta"] = json!(report.delta);
            }
            if show_regions {
                v["regions"] = json!(report.regions);
            }
            emit_json(out, &v)
        }
    }
}

/// Rows `i-j value` ordered by chord rather than by string.
fn table(title: &str, map: &BTreeMap<String, String>) -> String {
    let mut rows: Vec<(&String, &String)> = map.iter().collect();
    rows.sort_by_key(|(k, _)| {
        let mut it = k.split('-').map(|x| x.parse::<usize>().unwrap_or(usize::MAX));
        (it.next(), it.next())
    });
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut s = format!("{title}:\n");
    for (k, v) in rows {
        let _ = writeln!(s, "  {k:<width$}  {v}");
    }
    s
}

fn frieze_check(arg: &str, format: Format, out: &mut dyn Write) -> CliResult {
    let text = read_source(arg)?;
    let f = decode_unchecked(&text).map_err(|e| CliError::input("frieze", e))?;
    let report = validate_frieze(&f);
    match format {
        Format::Ascii => {
            let mut s = String::new();
            for d in &report.diamonds {
                let _ = writeln!(s, "diamond at ({}, {}) has determinant {}", d.i, d.j, d.determinant);
            }
            for c in &report.nonpositive {
                let _ = writeln!(s, "entry at {c} is not positive");
            }
            for c in &report.unit_mismatch {
                let _ = writeln!(s, "unit positions do not form a triangulation at {c}");
            }
            if report.is_valid() {
                let _ = writeln!(s, "ok: frieze of order {} satisfies the frieze rule", f.order());
            }
            emit(out, s)?;
        }
        Format::Data => {
            let diamonds: Vec<Value> = report
                .diamonds
                .iter()
                .map(|d| json!({ "i": d.i, "j": d.j, "determinant": d.determinant.to_string() }))
                .collect();
            let chords = |v: &[Chord]| v.iter().map(Chord::to_string).collect::<Vec<_>>();
            emit_json(
                out,
                &json!({
                    "valid": report.is_valid(),
                    "diamonds": diamonds,
                    "nonpositive": chords(&report.nonpositive),
                    "unit_mismatch": chords(&report.unit_mismatch),
                }),
            )?;
        }
    }
    if report.is_valid() {
        Ok(())
    } else {
        let k = report.diamonds.len() + report.nonpositive.len() + report.unit_mismatch.len();
        Err(CliError::check(format!("frieze check failed at {k} position(s)")))
    }
}

fn quiver_text(q: &Quiver<Label>) -> String {
    let mut s = String::from("vertices:");
    for v in q.vertices() {
        let _ = write!(s, " {v}");
    }
    s.push('\n');
    for (i, j, m) in q.arrows() {
        match m {
            1 => {
                let _ = writeln!(s, "{i} -> {j}");
            }
            _ => {
                let _ = writeln!(s, "{i} -> {j} x{m}");
            }
        }
    }
    s
}

/// Outcome of checking every flip of one triangulation.
#[derive(Debug, Default, Clone)]
struct Checked {
    flips: usize,
    failures: Vec<String>,
}

fn check_triangulation(t: &Triangulation) -> Checked {
    let mut result = Checked::default();
    let f = frieze_from_cc(t);
    let quiddity: Vec<u64> = t.quiddity().into_iter().map(|x| x as u64).collect();
    if frieze_from_quiddity(&quiddity).ok().as_ref() != Some(&f) {
        result.failures.push(format!("{t}: routes disagree"));
    }
    for a in t.diagonals() {
        result.flips += 1;
        let outcome = mutate_frieze(&f, t, a).and_then(|(g, t2)| {
            let (_, a2) = t.flip(a)?;
            let (back, _) = mutate_frieze(&g, &t2, &a2)?;
            Ok((g == frieze_from_cc(&t2), validate_frieze(&g).is_valid(), back == f))
        });
        match outcome {
            Ok((true, true, true)) => {}
            Ok((sound, valid, involutive)) => result
                .failures
                .push(format!("{t} at {a}: sound={sound} valid={valid} involutive={involutive}")),
            Err(e) => result.failures.push(format!("{t} at {a}: {e}")),
        }
    }
    result
}

fn check_all(ts: &[Triangulation]) -> Checked {
    ts.par_iter().map(check_triangulation).reduce(Checked::default, |mut x, y| {
        x.flips += y.flips;
        x.failures.extend(y.failures);
        x
    })
}

fn sweep_verify(
    n_min: usize,
    n_max: usize,
    samples: usize,
    random_n_max: usize,
    seed: u64,
    format: Format,
    out: &mut dyn Write,
) -> CliResult {
    if n_min < 4 || n_min > n_max {
        return Err(CliError::input("n-min", format!("need 4 <= n-min <= n-max, got {n_min} and {n_max}")));
    }
    let start = Instant::now();
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    let (mut total_t, mut total_flips) = (0usize, 0usize);
    for n in n_min..=n_max {
        let clock = Instant::now();
        let ts = all_triangulations(n);
        let checked = check_all(&ts);
        total_t += ts.len();
        total_flips += checked.flips;
        rows.push(json!({
            "n": n,
            "triangulations": ts.len(),
            "flips": checked.flips,
            "failures": checked.failures.len(),
            "seconds": clock.elapsed().as_secs_f64(),
        }));
        failures.extend(checked.failures);
    }
    let mut random = Value::Null;
    if samples > 0 {
        let lo = n_max.max(4);
        let hi = random_n_max.max(lo);
        let clock = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ts: Vec<Triangulation> = (0..samples)
            .map(|_| Triangulation::random(rng.gen_range(lo..=hi), &mut rng).expect("n >= 4"))
            .collect();
        let checked = check_all(&ts);
        random = json!({
            "n_range": [lo, hi],
            "seed": seed,
            "triangulations": samples,
            "flips": checked.flips,
            "failures": checked.failures.len(),
            "seconds": clock.elapsed().as_secs_f64(),
        });
        failures.extend(checked.failures);
    }
    let seconds = start.elapsed().as_secs_f64();
    match format {
        Format::Ascii => {
            let mut s = String::new();
            for r in &rows {
                let num = |k: &str| r[k].as_u64().unwrap_or(0);
                let _ = writeln!(
                    s,
                    "N={:<3} triangulations={:<6} flips={:<7} failures={}  {:.3}s",
                    num("n"),
                    num("triangulations"),
                    num("flips"),
                    num("failures"),
                    r["seconds"].as_f64().unwrap_or(0.0)
                );
            }
            let _ = writeln!(
                s,
                "exhaustive: {total_t} triangulations x all flips ({total_flips} flips) checked"
            );
            if !random.is_null() {
                let _ = writeln!(
                    s,
                    "random: {} triangulations, N in {}..={}, seed {}, {} flips, failures={}  {:.3}s",
                    random["triangulations"],
                    random["n_range"][0],
                    random["n_range"][1],
                    seed,
                    random["flips"],
                    random["failures"],
                    random["seconds"].as_f64().unwrap_or(0.0)
                );
            }
            for f in failures.iter().take(20) {
                let _ = writeln!(s, "FAIL {f}");
            }
            let _ = writeln!(s, "{} failure(s), {seconds:.3}s total", failures.len());
            emit(out, s)?;
        }
        Format::Data => emit_json(
            out,
            &json!({
                "exhaustive": rows,
                "triangulations": total_t,
                "flips": total_flips,
                "random": random,
                "failures": failures,
                "seconds": seconds,
            }),
        )?,
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::check(format!("{} check(s) failed", failures.len())))
    }
}

