use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use sparsefold::expt::{emit_report, random_sequences, run_sweep, ExperimentConfig, DEFAULT_SEED};
use sparsefold::fold::{fold, EnergyModel, FoldResult, Sequence};
use sparsefold::genusgf::{arc_filtered_gf, eta_specialize, matching_gf, structure_gf, DEFAULT_ETA, MAX_GENUS};
use sparsefold::irrgf::{
    eta_pair, expected_from_probabilities, genus_probabilities, growth_estimate, irreducible_arc_filtered,
    irreducible_gf, loop_probabilities, polymer_zeta_fit, LoopModelSeries, LoopWeights, WeightConvention,
    PAIR_PROBABILITY,
};
use sparsefold::oracle::tally_structures;
use sparsefold::series::{FloatSeries, ASYMPTOTIC_ORDER};
use sparsefold::{Error, Result};

#[derive(Parser)]
#[command(name = "sparsefold", version, about = "Candidate-set analysis for sparsified RNA folding")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients of structure generating functions as CSV.
    Gf(GfArgs),
    /// Irreducibility probabilities and expected candidate fractions.
    Theory(TheoryArgs),
    /// Brute-force counts, or a comparison against the generating functions.
    Oracle(OracleArgs),
    /// Fold one sequence.
    Fold(FoldArgs),
    /// Fold random sequences over a range of lengths.
    Sweep(SweepArgs),
    /// Growth estimates of a coefficient sequence.
    Asym(AsymArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Arc,
    Loop,
}

impl ModelArg {
    fn model(self) -> EnergyModel {
        match self {
            ModelArg::Arc => EnergyModel::arc_based(),
            ModelArg::Loop => EnergyModel::loop_based(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum WeightsArg {
    Equation,
    Scores,
}

impl From<WeightsArg> for WeightConvention {
    fn from(w: WeightsArg) -> Self {
        match w {
            WeightsArg::Equation => WeightConvention::Equation,
            WeightsArg::Scores => WeightConvention::Scores,
        }
    }
}

#[derive(Args)]
struct GfArgs {
    #[arg(long, default_value_t = 0)]
    genus: u32,
    #[arg(long, default_value_t = 20)]
    order: usize,
    /// Irreducible structures only.
    #[arg(long)]
    irreducible: bool,
    /// Split counts by arc number (columns n,arcs,count).
    #[arg(long, conflicts_with = "eta")]
    by_arcs: bool,
    /// Matchings by arc number instead of structures.
    #[arg(long, conflicts_with_all = ["irreducible", "by_arcs", "eta"])]
    matchings: bool,
    /// Weight every arc by this value (float output).
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct TheoryArgs {
    #[arg(long, default_value_t = 0)]
    genus: u32,
    #[arg(long, default_value_t = 300)]
    max_n: usize,
    #[arg(long, value_enum, default_value_t = ModelArg::Arc)]
    model: ModelArg,
    #[arg(long, default_value_t = DEFAULT_ETA)]
    eta: f64,
    #[arg(long, value_enum, default_value_t = WeightsArg::Equation)]
    weights: WeightsArg,
    /// Smallest m of the polymer-zeta fit window.
    #[arg(long)]
    fit_from: Option<usize>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    /// Compare brute-force counts with the generating functions.
    #[arg(long)]
    check_gf: bool,
    #[arg(long, default_value_t = 10)]
    max_n: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["sequence", "input", "random"])))]
struct FoldArgs {
    /// Sequence over ACGU.
    #[arg(conflicts_with_all = ["input", "random"])]
    sequence: Option<String>,
    /// Read the sequence from a file (whitespace ignored).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Fold a random sequence of this length.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ModelArg::Arc)]
    model: ModelArg,
    #[arg(long, overrides_with = "no_sparse")]
    sparse: bool,
    #[arg(long)]
    no_sparse: bool,
    /// Include the full DP tables in JSON output.
    #[arg(long)]
    dump_table: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct SweepArgs {
    /// JSON experiment configuration; flags given as well override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated sequence lengths.
    #[arg(long, value_delimiter = ',')]
    lengths: Option<Vec<usize>>,
    #[arg(long)]
    batch: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    model: Option<ModelArg>,
    #[arg(long)]
    genus: Option<u32>,
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long, value_enum)]
    weights: Option<WeightsArg>,
    #[arg(long)]
    output_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesArg {
    /// Genus-g structures.
    Structures,
    /// Irreducible genus-g structures.
    Irreducible,
    /// Genus-g matchings.
    Matchings,
    /// Weighted secondary structures of the loop model.
    Loop,
    /// Weighted arc-covered structures of the loop model.
    LoopIrreducible,
}

#[derive(Args)]
struct AsymArgs {
    #[arg(long, value_enum, default_value_t = SeriesArg::Structures)]
    series: SeriesArg,
    #[arg(long, default_value_t = 0)]
    genus: u32,
    #[arg(long, default_value_t = ASYMPTOTIC_ORDER)]
    order: usize,
    /// Arc weight for structure series.
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long, value_enum, default_value_t = WeightsArg::Equation)]
    weights: WeightsArg,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Gf(a) => cmd_gf(a),
        Command::Theory(a) => cmd_theory(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Fold(a) => cmd_fold(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Asym(a) => cmd_asym(a),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

/// CSV to a file (with a note on stdout) or to stdout.
fn deliver(csv: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => {
            fs::write(path, csv).map_err(|e| Error::Io {
                path: path.to_path_buf(),
                source: e,
            })?;
            println!("wrote {}", path.display());
        }
        None => print!("{csv}"),
    }
    Ok(())
}

fn cmd_gf(a: GfArgs) -> Result<ExitCode> {
    let mut csv = String::new();
    if a.matchings {
        let c = matching_gf(a.genus, a.order)?;
        csv.push_str("arcs,count\n");
        for (n, v) in c.coeffs().iter().enumerate() {
            let _ = writeln!(csv, "{n},{v}");
        }
    } else if let Some(eta) = a.eta {
        let s = if a.irreducible {
            eta_pair(a.genus, eta, a.order)?.1
        } else {
            eta_specialize(a.genus, eta, a.order)?.series
        };
        csv.push_str("n,weight\n");
        for (n, v) in s.coeffs().iter().enumerate() {
            let _ = writeln!(csv, "{n},{v}");
        }
    } else if a.by_arcs {
        let table = if a.irreducible {
            irreducible_arc_filtered(a.genus, a.order)?
        } else {
            arc_filtered_gf(a.genus, a.order)?
        };
        csv.push_str("n,arcs,count\n");
        for (n, row) in table.iter().enumerate() {
            for (l, v) in row.iter().enumerate() {
                let _ = writeln!(csv, "{n},{l},{v}");
            }
        }
    } else {
        let s = if a.irreducible {
            irreducible_gf(a.genus, a.order)?
        } else {
            structure_gf(a.genus, a.order)?
        };
        csv.push_str("n,count\n");
        for (n, v) in s.coeffs().iter().enumerate() {
            let _ = writeln!(csv, "{n},{v}");
        }
    }
    deliver(&csv, a.output.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_theory(a: TheoryArgs) -> Result<ExitCode> {
    let (probs, label) = match a.model {
        ModelArg::Arc => (
            genus_probabilities(a.genus, a.eta, a.max_n)?,
            format!("genus {} structures, eta = {}", a.genus, a.eta),
        ),
        ModelArg::Loop => {
            if a.genus != 0 {
                return Err(Error::UnsupportedModel(
                    "the loop model is defined for genus 0 only".into(),
                ));
            }
            let weights = LoopWeights::for_convention(a.weights.into());
            let series = LoopModelSeries::compute(weights, PAIR_PROBABILITY, a.max_n)?;
            (loop_probabilities(&series, a.max_n)?, format!("loop model, weights {weights:?}"))
        }
    };
    let mut csv = String::from("m,P,E_bar\n");
    for m in 1..=a.max_n {
        let e = expected_from_probabilities(a.genus, m, &probs)?;
        let _ = writeln!(csv, "{m},{},{}", probs[m - 1], e.normalized);
    }
    let mut summary = format!("# {label}\n");
    let e = expected_from_probabilities(a.genus, a.max_n, &probs)?;
    let _ = writeln!(
        summary,
        "# E({n}) = {:.4}, Omega({n}) = {}, E_bar({n}) = {:.5}",
        e.expected,
        e.omega,
        e.normalized,
        n = a.max_n
    );
    let from = a.fit_from.unwrap_or(a.max_n / 4).max(1);
    let tail: Vec<(f64, f64)> = (from..=a.max_n).map(|m| (m as f64, probs[m - 1])).collect();
    match polymer_zeta_fit(&tail) {
        Ok(fit) => {
            let _ = writeln!(
                summary,
                "# polymer-zeta fit on m in [{from}, {}]: b = {:.5}, c = {:.5}, residual = {:.3e}",
                a.max_n, fit.b, fit.c, fit.residual
            );
        }
        Err(e) => {
            let _ = writeln!(summary, "# polymer-zeta fit unavailable: {e}");
        }
    }
    match a.output {
        Some(path) => {
            deliver(&csv, Some(&path))?;
            print!("{}", summary.replace("# ", ""));
        }
        None => {
            print!("{csv}");
            eprint!("{summary}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle(a: OracleArgs) -> Result<ExitCode> {
    if a.check_gf {
        return check_gf(a.max_n);
    }
    let mut csv = String::from("n,genus,all,irreducible\n");
    for n in 0..=a.max_n {
        let tally = tally_structures(n)?;
        for g in 0..tally.all.len() {
            let _ = writeln!(csv, "{n},{g},{},{}", tally.total(g), tally.total_irreducible(g));
        }
    }
    deliver(&csv, a.output.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn check_gf(max_n: usize) -> Result<ExitCode> {
    let mut mismatches = Vec::new();
    let mut checked = 0usize;
    for g in 0..=MAX_GENUS {
        let top = if g == 2 { max_n.min(10) } else { max_n };
        let d = structure_gf(g, top)?;
        let dstar = irreducible_gf(g, top)?;
        let e = arc_filtered_gf(g, top)?;
        for n in 0..=top {
            let tally = tally_structures(n)?;
            let want = [tally.total(g as usize), tally.total_irreducible(g as usize)];
            let got = [d.coeffs()[n].to_integer(), dstar.coeffs()[n].to_integer()];
            for (what, w, gv) in [("d", &want[0], &got[0]), ("d*", &want[1], &got[1])] {
                checked += 1;
                if gv != &(*w).into() {
                    mismatches.push(format!("{what}_{g}({n}): gf {gv}, oracle {w}"));
                }
            }
            let by_arcs = tally.by_arcs(g as usize, false);
            for (l, w) in by_arcs.iter().enumerate() {
                checked += 1;
                if e[n][l] != (*w).into() {
                    mismatches.push(format!("e_{g}({n}, {l}): gf {}, oracle {w}", e[n][l]));
                }
            }
        }
    }
    if mismatches.is_empty() {
        println!("OK");
        eprintln!("{checked} counts agree");
        Ok(ExitCode::SUCCESS)
    } else {
        for m in &mismatches {
            println!("MISMATCH {m}");
        }
        Ok(ExitCode::from(1))
    }
}

fn fold_output(r: &FoldResult, seq: &Sequence, format: Format, dump: bool) -> Result<String> {
    let s = &r.candidate_stats;
    Ok(match format {
        Format::Text => format!(
            "{seq}\n{}\nscore {}\ncandidates {} of {} ({:.4})\nsplit visits {}\n",
            r.structure,
            r.score,
            s.total,
            s.omega,
            s.ratio,
            r.table.split_visits()
        ),
        Format::Csv => format!(
            "sequence,structure,score,candidates,omega,ratio,split_visits\n{seq},{},{},{},{},{},{}\n",
            r.structure,
            r.score,
            s.total,
            s.omega,
            s.ratio,
            r.table.split_visits()
        ),
        Format::Json => {
            let mut v = json!({
                "sequence": seq.to_string(),
                "structure": r.structure.to_string(),
                "score": r.score,
                "candidates": s.total,
                "omega": s.omega,
                "ratio": s.ratio,
                "by_length": s.by_length,
                "split_visits": r.table.split_visits(),
            });
            if dump {
                v["table"] = serde_json::to_value(&r.table)?;
            }
            serde_json::to_string_pretty(&v)? + "\n"
        }
    })
}

fn cmd_fold(a: FoldArgs) -> Result<ExitCode> {
    let seq: Sequence = match (&a.sequence, &a.input, a.random) {
        (Some(s), _, _) => s.parse()?,
        (None, Some(path), _) => {
            let text = fs::read_to_string(path).map_err(|e| Error::Io {
                path: path.clone(),
                source: e,
            })?;
            text.split_whitespace().collect::<String>().parse()?
        }
        (None, None, Some(n)) => random_sequences(n, 1, a.seed).remove(0),
        (None, None, None) => unreachable!("clap requires a sequence source"),
    };
    let sparse = !a.no_sparse;
    let r = fold(&seq, &a.model.model(), sparse);
    print!("{}", fold_output(&r, &seq, a.format, a.dump_table)?);
    Ok(ExitCode::SUCCESS)
}

fn cmd_sweep(a: SweepArgs) -> Result<ExitCode> {
    let mut config = match &a.config {
        Some(path) => ExperimentConfig::from_json_file(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(v) = a.lengths {
        config.lengths = v;
    }
    if let Some(v) = a.batch {
        config.batch = v;
    }
    if let Some(v) = a.seed {
        config.seed = v;
    }
    if let Some(v) = a.model {
        config.model = v.model();
    }
    if let Some(v) = a.genus {
        config.genus = v;
    }
    if let Some(v) = a.eta {
        config.eta = v;
    }
    if let Some(v) = a.weights {
        config.loop_weights = v.into();
    }
    if let Some(v) = a.output_dir {
        config.output_dir = v;
    }
    let result = run_sweep(&config)?;
    let files = emit_report(&result, &config.output_dir)?;
    println!("{:>6} {:>10} {:>9} {:>9} {:>12}", "n", "mean |Q|", "std", "|Q|/Omega", "theory");
    for r in &result.rows {
        println!(
            "{:>6} {:>10.2} {:>9.2} {:>9.4} {:>12.4}",
            r.n, r.mean_q, r.std_q, r.ratio_exp, r.ratio_theory
        );
    }
    for f in files {
        println!("wrote {}", f.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_asym(a: AsymArgs) -> Result<ExitCode> {
    let loop_series = || {
        LoopModelSeries::compute(LoopWeights::for_convention(a.weights.into()), PAIR_PROBABILITY, a.order)
    };
    let series: FloatSeries = match (a.series, a.eta) {
        (SeriesArg::Structures, None) => structure_gf(a.genus, a.order)?.to_f64(),
        (SeriesArg::Structures, Some(eta)) => eta_specialize(a.genus, eta, a.order)?.series,
        (SeriesArg::Irreducible, None) => irreducible_gf(a.genus, a.order)?.to_f64(),
        (SeriesArg::Irreducible, Some(eta)) => eta_pair(a.genus, eta, a.order)?.1,
        (SeriesArg::Matchings, _) => matching_gf(a.genus, a.order)?.to_f64(),
        (SeriesArg::Loop, _) => loop_series()?.f_full,
        (SeriesArg::LoopIrreducible, _) => loop_series()?.fstar,
    };
    let est = growth_estimate(&series)?;
    println!("gamma {}", est.gamma);
    println!("subexp {}", est.subexp);
    println!("constant {}", est.constant);
    Ok(ExitCode::SUCCESS)
}
