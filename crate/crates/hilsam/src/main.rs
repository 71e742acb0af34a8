//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a theorem check reported FAILURE, 2 bad input
//! (unparseable file, bad flags), 3 a computation that could not finish
//! (no stabilization, window too small, ...).

use clap::{Args, Parser, Subcommand};
use hilsam::hilbert::{fit_coefficients, graded_series, hilbert_samuel_table};
use hilsam::ring::RingElement;
use hilsam::ringfile::{parse_field_flag, parse_ring_file, BuiltInstance};
use hilsam::sequences::{is_d_sequence, is_regular_sequence, superficial_sequence_search, SequenceReport};
use hilsam::theorems::{
    builtin_corpus, run_corpus, CorpusInstance, InstanceReport, RunParams, Verdict,
};
use hilsam::{Error, FieldSpec, Result};
use serde::Serialize;
use std::path::PathBuf;

const SEARCH_ATTEMPTS: usize = 64;

#[derive(Parser)]
#[command(name = "hilsam", version, about = "Hilbert-Samuel functions and Hilbert coefficients of parameter ideals, exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the reduced Groebner basis of the instance's lifted ideal J + Q.
    Gb(CommonArgs),
    /// Print the Hilbert-Samuel table H(Q, n) for n = 0..n_max.
    Hilbert(CommonArgs),
    /// Fit and print the Hilbert coefficients e_0..e_d and the postulation number.
    Coeffs(CommonArgs),
    /// Print the associated-graded h-vector, series numerator, and closed form.
    Series(CommonArgs),
    /// Run sequence checks on Q's generators: regular, d-sequence, superficial search.
    Dseq(CommonArgs),
    /// Run the theorem checks on the first instance of a ring file.
    Check(CommonArgs),
    /// Run the theorem checks over a corpus file, or over "builtin".
    Corpus(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Ring or corpus file; the corpus subcommand also accepts "builtin".
    input: String,

    /// Largest power n in the Hilbert-Samuel table.
    #[arg(long, default_value_t = 12)]
    nmax: u32,

    /// Truncation cap for colength stabilization.
    #[arg(long = "Ncap", default_value_t = 40)]
    ncap: u32,

    /// RNG seed; only the superficial-sequence search consumes randomness.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Emit a JSON report (schema-versioned) instead of text.
    #[arg(long)]
    json: bool,

    /// Write the report to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Override the coefficient field: `q` or `fp:P`.
    #[arg(long)]
    field: Option<String>,
}

impl CommonArgs {
    fn params(&self) -> RunParams {
        RunParams {
            n_max: self.nmax,
            n_cap: self.ncap,
        }
    }

    fn field_override(&self) -> Result<Option<FieldSpec>> {
        self.field.as_deref().map(parse_field_flag).transpose()
    }

    /// Parse the input file and build its first instance.
    fn load_instance(&self) -> Result<BuiltInstance> {
        let text = std::fs::read_to_string(&self.input)
            .map_err(|e| Error::invalid(format!("cannot read {}: {e}", self.input)))?;
        let stem = PathBuf::from(&self.input)
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "instance".to_string());
        let defs = parse_ring_file(&text, &stem)?;
        let def = defs
            .into_iter()
            .next()
            .ok_or_else(|| Error::invalid(format!("{}: no instances defined", self.input)))?;
        def.build(self.field_override()?)
    }

    fn load_corpus(&self) -> Result<Vec<CorpusInstance>> {
        if self.input == "builtin" {
            return builtin_corpus();
        }
        let text = std::fs::read_to_string(&self.input)
            .map_err(|e| Error::invalid(format!("cannot read {}: {e}", self.input)))?;
        let stem = PathBuf::from(&self.input)
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "instance".to_string());
        let override_field = self.field_override()?;
        parse_ring_file(&text, &stem)?
            .into_iter()
            .map(|def| CorpusInstance::from_built(def.build(override_field)?))
            .collect()
    }

    fn emit(&self, text: String) -> Result<()> {
        match &self.out {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| Error::invalid(format!("cannot write {}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn json_line<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| Error::invalid(format!("serialization failed: {e}")))
}

#[derive(Serialize)]
struct GbJson {
    schema: u32,
    name: String,
    gb: Vec<String>,
}

#[derive(Serialize)]
struct HilbertJson {
    schema: u32,
    name: String,
    d: i64,
    table: Vec<u64>,
}

#[derive(Serialize)]
struct CoeffsJson {
    schema: u32,
    name: String,
    d: u32,
    e: Vec<i64>,
    eta: i64,
}

#[derive(Serialize)]
struct SeriesJson {
    schema: u32,
    name: String,
    h: Vec<i64>,
    numerator: Vec<i64>,
    closed_form: Option<String>,
}

#[derive(Serialize)]
struct SearchJson {
    k: u32,
    attempts: usize,
    seed: u64,
    found: Option<Vec<String>>,
    exhausted: bool,
}

#[derive(Serialize)]
struct DseqJson {
    schema: u32,
    name: String,
    regular: SequenceReport,
    d_sequence: SequenceReport,
    search: SearchJson,
}

#[derive(Serialize)]
struct CheckJson {
    schema: u32,
    #[serde(flatten)]
    report: InstanceReport,
}

fn fmt_vec<T: std::fmt::Display>(xs: &[T]) -> String {
    let inner: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("[{}]", inner.join(", "))
}

fn q_elements(built: &BuiltInstance) -> Result<(String, Vec<RingElement>)> {
    let (name, q) = built.primary_ideal()?;
    let xs = q
        .gens()
        .iter()
        .map(|g| built.ring.element(g))
        .collect::<Result<Vec<_>>>()?;
    Ok((name.clone(), xs))
}

fn cmd_gb(args: &CommonArgs) -> Result<i32> {
    let built = args.load_instance()?;
    let lift = match built.primary_ideal() {
        Ok((_, q)) => q.lift().clone(),
        Err(_) => built.ring.defining_ideal().clone(),
    };
    let gb: Vec<String> = lift.groebner_basis().iter().map(|g| g.to_string()).collect();
    let text = if args.json {
        json_line(&GbJson {
            schema: 1,
            name: built.name.clone(),
            gb,
        })?
    } else {
        gb.join("\n") + "\n"
    };
    args.emit(text)?;
    Ok(0)
}

fn cmd_hilbert(args: &CommonArgs) -> Result<i32> {
    let built = args.load_instance()?;
    let (_, q) = built.primary_ideal()?;
    let table = hilbert_samuel_table(&built.ring, q, args.nmax, args.ncap)?;
    let text = if args.json {
        json_line(&HilbertJson {
            schema: 1,
            name: built.name.clone(),
            d: built.ring.dim(),
            table: table.values().to_vec(),
        })?
    } else {
        format!("H = {}\n", fmt_vec(table.values()))
    };
    args.emit(text)?;
    Ok(0)
}

fn cmd_coeffs(args: &CommonArgs) -> Result<i32> {
    let built = args.load_instance()?;
    let (_, q) = built.primary_ideal()?;
    let table = hilbert_samuel_table(&built.ring, q, args.nmax, args.ncap)?;
    let coeffs = fit_coefficients(&table)?;
    let text = if args.json {
        json_line(&CoeffsJson {
            schema: 1,
            name: built.name.clone(),
            d: coeffs.d(),
            e: coeffs.e.clone(),
            eta: coeffs.eta,
        })?
    } else {
        format!("e = {}, eta = {}\n", fmt_vec(&coeffs.e), coeffs.eta)
    };
    args.emit(text)?;
    Ok(0)
}

fn cmd_series(args: &CommonArgs) -> Result<i32> {
    let built = args.load_instance()?;
    let (_, q) = built.primary_ideal()?;
    let table = hilbert_samuel_table(&built.ring, q, args.nmax, args.ncap)?;
    let series = graded_series(&table);
    let text = if args.json {
        json_line(&SeriesJson {
            schema: 1,
            name: built.name.clone(),
            h: series.h.clone(),
            numerator: series.numerator.clone(),
            closed_form: series.closed_form.clone(),
        })?
    } else {
        format!(
            "h = {}\nnumerator = {}\nseries = {}\n",
            fmt_vec(&series.h),
            fmt_vec(&series.numerator),
            series.closed_form.as_deref().unwrap_or("none within window")
        )
    };
    args.emit(text)?;
    Ok(0)
}

fn fmt_sequence_line(report: &SequenceReport) -> String {
    match &report.failure {
        None => format!("{}: true", report.kind),
        Some(f) => format!(
            "{}: false (fails at i = {}: {})",
            report.kind, f.index, f.witness
        ),
    }
}

fn cmd_dseq(args: &CommonArgs) -> Result<i32> {
    let built = args.load_instance()?;
    let (q_name, q) = built.primary_ideal()?;
    let (_, xs) = q_elements(&built)?;
    let regular = is_regular_sequence(&built.ring, &xs)?;
    let d_sequence = is_d_sequence(&built.ring, &xs)?;
    let k = built.ring.dim().max(0) as u32;
    let search = match superficial_sequence_search(&built.ring, q, k, SEARCH_ATTEMPTS, args.seed) {
        Ok(found) => SearchJson {
            k,
            attempts: SEARCH_ATTEMPTS,
            seed: args.seed,
            found: Some(found.iter().map(|x| x.rep().to_string()).collect()),
            exhausted: false,
        },
        Err(Error::SearchExhausted { attempts }) => SearchJson {
            k,
            attempts,
            seed: args.seed,
            found: None,
            exhausted: true,
        },
        Err(e) => return Err(e),
    };
    let text = if args.json {
        json_line(&DseqJson {
            schema: 1,
            name: built.name.clone(),
            regular,
            d_sequence,
            search,
        })?
    } else {
        let search_line = match &search.found {
            Some(found) => format!(
                "superficial search (k = {k}, seed = {}): found {}",
                args.seed,
                fmt_vec(found)
            ),
            None => format!(
                "superficial search (k = {k}, seed = {}): exhausted after {} attempts",
                args.seed, search.attempts
            ),
        };
        format!(
            "generators of {q_name}: {}\n{}\n{}\n{search_line}\n",
            fmt_vec(&xs.iter().map(|x| x.rep().to_string()).collect::<Vec<_>>()),
            fmt_sequence_line(&regular),
            fmt_sequence_line(&d_sequence),
        )
    };
    args.emit(text)?;
    Ok(0)
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Verified => "verified",
        Verdict::Failed => "FAILED",
        Verdict::Skipped => "skipped",
        Verdict::Vacuous => "vacuous",
    }
}

fn instance_lines(report: &InstanceReport, out: &mut String) {
    out.push_str(&format!(
        "instance {}: {}, Q = {}\n",
        report.name, report.ring, report.ideal
    ));
    if let Some(err) = &report.error {
        out.push_str(&format!("  error: {err}\n"));
        return;
    }
    out.push_str(&format!(
        "  d = {}, e = {}, eta = {}, series = {}\n",
        report.d.unwrap_or(-1),
        fmt_vec(&report.e),
        report.eta.map(|e| e.to_string()).unwrap_or_default(),
        report.series.as_deref().unwrap_or("none within window"),
    ));
    if let Some(vv) = &report.vv_depth {
        out.push_str(&format!(
            "  vv depth bound k = {} (window n_max = {}, reduction reached: {})\n",
            vv.k, vv.n_max, vv.reduction_reached
        ));
    }
    for claim in &report.claims {
        let status = serde_json::to_value(claim.hypothesis)
            .ok()
            .and_then(|v| v.as_str().map(|s| s.to_string()))
            .unwrap_or_default();
        out.push_str(&format!(
            "  {:<8} {} [{}] {}\n",
            verdict_str(claim.verdict),
            claim.id,
            status,
            claim.detail
        ));
    }
}

fn cmd_check(args: &CommonArgs) -> Result<i32> {
    let built = args.load_instance()?;
    let instance = CorpusInstance::from_built(built)?;
    let report = run_corpus(vec![instance], &args.params());
    let inst = &report.instances[0];
    if let Some(err) = &inst.error {
        return Err(Error::invalid(err.clone()));
    }
    let text = if args.json {
        json_line(&CheckJson {
            schema: 1,
            report: inst.clone(),
        })?
    } else {
        let mut s = String::new();
        instance_lines(inst, &mut s);
        s.push_str(&format!(
            "summary: {} verified, {} failed, {} skipped, {} vacuous\n",
            report.verified, report.failed, report.skipped, report.vacuous
        ));
        s
    };
    args.emit(text)?;
    Ok(if report.failed > 0 { 1 } else { 0 })
}

fn cmd_corpus(args: &CommonArgs) -> Result<i32> {
    let corpus = args.load_corpus()?;
    let report = run_corpus(corpus, &args.params());
    let text = if args.json {
        json_line(&report)?
    } else {
        let mut s = String::new();
        for inst in &report.instances {
            instance_lines(inst, &mut s);
        }
        s.push_str(&format!(
            "corpus: {} instances, {} verified, {} failed, {} skipped, {} vacuous, {} errors\n",
            report.instances.len(),
            report.verified,
            report.failed,
            report.skipped,
            report.vacuous,
            report.errors
        ));
        s
    };
    args.emit(text)?;
    Ok(if report.ok() { 0 } else { 1 })
}

fn run(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Gb(args) => cmd_gb(args),
        Command::Hilbert(args) => cmd_hilbert(args),
        Command::Coeffs(args) => cmd_coeffs(args),
        Command::Series(args) => cmd_series(args),
        Command::Dseq(args) => cmd_dseq(args),
        Command::Check(args) => cmd_check(args),
        Command::Corpus(args) => cmd_corpus(args),
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
