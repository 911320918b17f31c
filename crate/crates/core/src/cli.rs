//! The `trisp` command line.
//!
//! Exit codes: 0 on success (for `verify paper`, every verdict passed),
//! 1 when a verdict fails or an action is not free, 2 on any error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::action::{is_free_action, quotient_complex, Freeness, GroupAction};
use crate::cache::{cache_key, write_atomic, ComplexCache, CACHE_DIR_ENV};
use crate::complex::{order_complex, DeltaComplex};
use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::homology::{homology, parse_coefficient_list, Coefficients, HomologyDocument};
use crate::json::{to_json_string, ComplexDocument, PosetDocument};
use crate::poset::{build_reduced_partition_lattice, build_reduced_subset_lattice, FinitePoset};
use crate::verify::{run_paper_suite, SuiteOptions, SuiteReport};

#[derive(Debug, Parser)]
#[command(
    name = "trisp",
    version,
    about = "Order complexes of partition and subset lattices, free quotients, and their integral homology"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a reduced partition or subset lattice.
    Lattice(LatticeArgs),
    /// Build the order complex of a lattice.
    Complex(ComplexArgs),
    /// Build the quotient of an order complex by a free group action.
    Quotient(QuotientArgs),
    /// Compute homology of an order complex, a quotient, or a complex file.
    Homology(HomologyArgs),
    /// Run verification suites.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Check every claim for a prime p.
    Paper(PaperArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LatticeKind {
    /// Proper nontrivial set partitions of [n] under refinement.
    Partition,
    /// Nonempty proper subsets of [n] under inclusion.
    Subset,
}

impl LatticeKind {
    fn as_str(self) -> &'static str {
        match self {
            LatticeKind::Partition => "partition",
            LatticeKind::Subset => "subset",
        }
    }

    fn name(self, n: usize) -> String {
        match self {
            LatticeKind::Partition => format!("Pibar_{n}"),
            LatticeKind::Subset => format!("L_{n}"),
        }
    }

    fn build(self, n: usize) -> Result<FinitePoset> {
        match self {
            LatticeKind::Partition => build_reduced_partition_lattice(n),
            LatticeKind::Subset => build_reduced_subset_lattice(n),
        }
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Print JSON instead of text.
    #[arg(long)]
    pub json: bool,
    /// Also write the JSON document to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CacheArgs {
    /// Directory for cached complexes.
    #[arg(long, env = CACHE_DIR_ENV)]
    pub cache_dir: Option<PathBuf>,
    /// Refuse to build complexes with more simplices than this.
    #[arg(long)]
    pub max_simplices: Option<u128>,
}

#[derive(Debug, Args)]
pub struct TargetArgs {
    #[arg(value_enum)]
    pub kind: LatticeKind,
    /// Size of the ground set.
    #[arg(long = "n", visible_alias = "p")]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct LatticeArgs {
    #[command(flatten)]
    pub target: TargetArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ComplexArgs {
    #[command(flatten)]
    pub target: TargetArgs,
    #[command(flatten)]
    pub cache: CacheArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct QuotientArgs {
    #[command(flatten)]
    pub target: TargetArgs,
    /// Group generator in cycle notation; repeat for several. Defaults to
    /// the cycle (1 2 ... n).
    #[arg(long)]
    pub group: Vec<String>,
    #[command(flatten)]
    pub cache: CacheArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct HomologyArgs {
    #[arg(value_enum, required_unless_present = "input")]
    pub kind: Option<LatticeKind>,
    #[arg(long = "n", visible_alias = "p", required_unless_present = "input")]
    pub n: Option<usize>,
    /// Read a complex document instead of building one.
    #[arg(long, conflicts_with_all = ["kind", "n", "quotient", "group"])]
    pub input: Option<PathBuf>,
    /// Take the quotient by the cyclic group (or by `--group`).
    #[arg(long)]
    pub quotient: bool,
    #[arg(long)]
    pub group: Vec<String>,
    /// Comma-separated coefficient list, e.g. Z,Q,F2,F5.
    #[arg(long, default_value = "Z")]
    pub coeffs: String,
    #[command(flatten)]
    pub cache: CacheArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct PaperArgs {
    /// Prime p.
    #[arg(long)]
    pub p: usize,
    /// Group generator in cycle notation; repeat for several.
    #[arg(long)]
    pub group: Vec<String>,
    /// Fields for the Euler checks; defaults to Q,F2,Fp.
    #[arg(long)]
    pub coeffs: Option<String>,
    /// Restrict to one lattice.
    #[arg(long, value_enum)]
    pub only: Option<LatticeKind>,
    #[arg(long)]
    pub max_simplices: Option<u128>,
    #[arg(long)]
    pub time_budget_s: Option<f64>,
    /// Keep per-verdict timings in JSON output (otherwise zeroed).
    #[arg(long)]
    pub timings: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Parses `args`, runs the command, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    match run(cli, &mut stdout.lock()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

/// Runs a parsed command, writing the report to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Lattice(a) => cmd_lattice(a, out),
        Command::Complex(a) => cmd_complex(a, out),
        Command::Quotient(a) => cmd_quotient(a, out),
        Command::Homology(a) => cmd_homology(a, out),
        Command::Verify(VerifyCommand::Paper(a)) => cmd_paper(a, out),
    }
}

fn emit<T: Serialize>(output: &OutputArgs, doc: &T, text: &str, out: &mut dyn Write) -> Result<()> {
    let json = to_json_string(doc)?;
    if let Some(path) = &output.out {
        write_atomic(path, json.as_bytes())?;
    }
    if output.json {
        out.write_all(json.as_bytes())?;
    } else {
        out.write_all(text.as_bytes())?;
    }
    Ok(())
}

fn tuple<T: ToString>(xs: &[T]) -> String {
    format!(
        "({})",
        xs.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    )
}

fn cmd_lattice(a: LatticeArgs, out: &mut dyn Write) -> Result<i32> {
    let TargetArgs { kind, n } = a.target;
    let poset = kind.build(n)?;
    let mut by_rank = Vec::new();
    for &r in poset.rank().unwrap_or(&[]) {
        if by_rank.len() <= r {
            by_rank.resize(r + 1, 0usize);
        }
        by_rank[r] += 1;
    }
    let lowest = by_rank.iter().position(|&c| c > 0).unwrap_or(0);
    let text = format!(
        "{} ({}, n = {n}): {} elements\nrank sizes: {}\ncovers: {}\nmaximal chains: {}\nchains by length: {}\n",
        kind.name(n),
        kind.as_str(),
        poset.len(),
        tuple(&by_rank[lowest..]),
        poset.covers().len(),
        poset.count_maximal_chains(),
        tuple(&poset.chain_counts()),
    );
    emit(&a.output, &PosetDocument::from_poset(&poset), &text, out)?;
    Ok(0)
}

fn check_cap(poset: &FinitePoset, cap: Option<u128>, name: &str) -> Result<Vec<usize>> {
    let counts = poset.chain_counts();
    let total: u128 = counts.iter().sum();
    if let Some(cap) = cap {
        if total > cap {
            return Err(Error::ResourceCap(format!(
                "Delta({name}) has {total} simplices, above --max-simplices {cap}"
            )));
        }
    }
    Ok(counts.into_iter().map(|c| c as usize).collect())
}

/// Order complex of the target lattice, through the cache when one is set.
fn full_complex(kind: LatticeKind, poset: &FinitePoset, cache: &CacheArgs) -> Result<DeltaComplex> {
    let n = poset.ground();
    let expected = check_cap(poset, cache.max_simplices, &kind.name(n))?;
    match &cache.cache_dir {
        None => Ok(order_complex(poset)),
        Some(dir) => {
            let key = cache_key(&["order-complex", kind.as_str(), &n.to_string()]);
            let (c, _) = ComplexCache::new(dir).get_or_build(
                &key,
                |c| c.f_vector().0 == expected && c.has_labels(),
                || Ok(order_complex(poset)),
            )?;
            Ok(c)
        }
    }
}

fn parse_group(n: usize, generators: &[String]) -> Result<(PermutationGroup, String)> {
    if generators.is_empty() {
        Ok((PermutationGroup::cyclic(n), format!("C_{n}")))
    } else {
        let g = PermutationGroup::from_cycle_strings(n, generators)?;
        let name = format!(
            "<{}>",
            g.generators()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        );
        Ok((g, name))
    }
}

enum Quotient {
    Built(DeltaComplex),
    NotFree(String),
}

fn quotient_of(
    kind: LatticeKind,
    poset: &FinitePoset,
    group: PermutationGroup,
    cache: &CacheArgs,
) -> Result<Quotient> {
    let action = GroupAction::new(group, poset)?;
    if let Freeness::Fixed(w) = is_free_action(&action) {
        return Ok(Quotient::NotFree(w.to_string()));
    }
    let order = action.group().order();
    let full = full_complex(kind, poset, cache)?;
    let build = || quotient_complex(&full, &action);
    let c = match &cache.cache_dir {
        None => build()?,
        Some(dir) => {
            let mut gens: Vec<String> = action
                .group()
                .generators()
                .iter()
                .map(ToString::to_string)
                .collect();
            gens.sort();
            let n = poset.ground().to_string();
            let mut parts = vec!["quotient", kind.as_str(), n.as_str()];
            parts.extend(gens.iter().map(String::as_str));
            let expected: Vec<usize> = full.f_vector().0.iter().map(|f| f / order).collect();
            ComplexCache::new(dir)
                .get_or_build(&cache_key(&parts), |c| c.f_vector().0 == expected, build)?
                .0
        }
    };
    Ok(Quotient::Built(c))
}

fn complex_text(name: &str, c: &DeltaComplex) -> String {
    let dim = c.dim().map_or("empty".to_string(), |d| d.to_string());
    format!(
        "{name}: dim {dim}, f = {}, chi = {}\n",
        c.f_vector(),
        c.euler_characteristic()
    )
}

fn cmd_complex(a: ComplexArgs, out: &mut dyn Write) -> Result<i32> {
    let TargetArgs { kind, n } = a.target;
    let poset = kind.build(n)?;
    let c = full_complex(kind, &poset, &a.cache)?;
    let text = complex_text(&format!("Delta({})", kind.name(n)), &c);
    emit(&a.output, &ComplexDocument::from_complex(&c), &text, out)?;
    Ok(0)
}

fn cmd_quotient(a: QuotientArgs, out: &mut dyn Write) -> Result<i32> {
    let TargetArgs { kind, n } = a.target;
    let poset = kind.build(n)?;
    let (group, gname) = parse_group(n, &a.group)?;
    match quotient_of(kind, &poset, group, &a.cache)? {
        Quotient::NotFree(w) => {
            writeln!(out, "not free: {w}")?;
            Ok(1)
        }
        Quotient::Built(c) => {
            let text = complex_text(&format!("Delta({})/{gname}", kind.name(n)), &c);
            emit(&a.output, &ComplexDocument::from_complex(&c), &text, out)?;
            Ok(0)
        }
    }
}

fn cmd_homology(a: HomologyArgs, out: &mut dyn Write) -> Result<i32> {
    let coeffs = parse_coefficient_list(&a.coeffs)?;
    if coeffs.is_empty() {
        return Err(Error::invalid("--coeffs lists no coefficient ring"));
    }
    let (name, complex) = match (&a.input, a.kind, a.n) {
        (Some(path), _, _) => (path.display().to_string(), read_complex(path)?),
        (None, Some(kind), Some(n)) => {
            let poset = kind.build(n)?;
            if a.quotient || !a.group.is_empty() {
                let (group, gname) = parse_group(n, &a.group)?;
                match quotient_of(kind, &poset, group, &a.cache)? {
                    Quotient::NotFree(w) => {
                        writeln!(out, "not free: {w}")?;
                        return Ok(1);
                    }
                    Quotient::Built(c) => (format!("Delta({})/{gname}", kind.name(n)), c),
                }
            } else {
                (
                    format!("Delta({})", kind.name(n)),
                    full_complex(kind, &poset, &a.cache)?,
                )
            }
        }
        _ => return Err(Error::invalid("give a lattice kind with --n, or --input")),
    };
    let report = homology(&complex, &coeffs)?;
    let docs = coeffs
        .iter()
        .map(|&k| report.to_document(k))
        .collect::<Result<Vec<HomologyDocument>>>()?;
    let mut text = complex_text(&name, &complex);
    for &k in &coeffs {
        match k {
            Coefficients::Integers => {
                for g in report.integral.as_deref().unwrap_or(&[]) {
                    text.push_str(&format!("  H_{} = {}\n", g.dim, g));
                }
            }
            field => text.push_str(&format!(
                "  betti over {field}: {}\n",
                tuple(report.betti(field)?)
            )),
        }
    }
    emit(&a.output, &docs, &text, out)?;
    Ok(0)
}

fn read_complex(path: &Path) -> Result<DeltaComplex> {
    let bytes = std::fs::read(path)?;
    let doc: ComplexDocument = serde_json::from_slice(&bytes)?;
    doc.to_complex()
}

fn cmd_paper(a: PaperArgs, out: &mut dyn Write) -> Result<i32> {
    let mut opts = SuiteOptions::new(a.p);
    if !a.group.is_empty() {
        opts.group = Some(a.group.clone());
    }
    if let Some(c) = &a.coeffs {
        let fields: Vec<Coefficients> = parse_coefficient_list(c)?
            .into_iter()
            .filter(Coefficients::is_field)
            .collect();
        if fields.is_empty() {
            return Err(Error::invalid(
                "--coeffs must name at least one field for the Euler checks",
            ));
        }
        opts.fields = Some(fields);
    }
    match a.only {
        Some(LatticeKind::Partition) => opts.include_subset = false,
        Some(LatticeKind::Subset) => opts.include_partition = false,
        None => {}
    }
    opts.max_simplices = a.max_simplices;
    if let Some(s) = a.time_budget_s {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::invalid("--time-budget-s must be positive"));
        }
        opts.time_budget = Some(Duration::from_secs_f64(s));
    }
    let report = run_paper_suite(&opts)?;
    let text = paper_text(&report);
    let mut doc = report.clone();
    if !a.timings {
        doc.strip_timings();
    }
    emit(&a.output, &doc, &text, out)?;
    Ok(if report.passed() { 0 } else { 1 })
}

/// Human-readable suite report.
pub fn paper_text(report: &SuiteReport) -> String {
    let mut s = format!("claims for p = {}, group {}\n", report.p, report.group);
    for v in &report.verdicts {
        s.push_str(&format!("{v}\n"));
    }
    if !report.exploratory.is_empty() {
        s.push_str("\nexploratory homology (not asserted):\n");
        for e in &report.exploratory {
            s.push_str(&format!(
                "  {}  f = {}\n    {}\n",
                e.subject,
                tuple(&e.f_vector),
                e.homology
            ));
        }
    }
    if !report.notes.is_empty() {
        s.push_str("\nnotes:\n");
        for n in &report.notes {
            s.push_str(&format!("  {n}\n"));
        }
    }
    let passed = report.verdicts.iter().filter(|v| v.pass).count();
    s.push_str(&format!(
        "\n{}: {passed}/{} verdicts pass{}\n",
        if report.passed() { "PASS" } else { "FAIL" },
        report.verdicts.len(),
        if report.incomplete {
            ", report incomplete"
        } else {
            ""
        }
    ));
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (Result<i32>, String) {
        let cli =
            Cli::try_parse_from(std::iter::once("trisp").chain(args.iter().copied())).unwrap();
        let mut buf = Vec::new();
        let code = run(cli, &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn lattice_text_and_json() {
        let (code, text) = run_args(&["lattice", "partition", "--n", "5"]);
        assert_eq!(code.unwrap(), 0);
        assert!(text.contains("50 elements"));
        assert!(text.contains("rank sizes: (10, 25, 15)"));
        assert!(text.contains("maximal chains: 180"));
        let (_, json) = run_args(&["lattice", "subset", "--p", "5", "--json"]);
        let doc: PosetDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(doc.elements.len(), 30);
    }

    #[test]
    fn degenerate_partition_size_is_an_error() {
        assert!(run_args(&["lattice", "partition", "--n", "2"]).0.is_err());
    }

    #[test]
    fn quotient_reports_witness() {
        let (code, text) = run_args(&["quotient", "partition", "--n", "5", "--group", "(2 3 4 5)"]);
        assert_eq!(code.unwrap(), 1);
        assert_eq!(text, "not free: (2 3 4 5) fixes {1}|{2,3,4,5}\n");
    }

    #[test]
    fn homology_of_quotient() {
        let (code, text) = run_args(&[
            "homology",
            "partition",
            "--n",
            "5",
            "--quotient",
            "--coeffs",
            "Z,F5",
        ]);
        assert_eq!(code.unwrap(), 0);
        assert!(text.contains("H_1 = Z/5"), "{text}");
        assert!(text.contains("H_2 = Z^4"), "{text}");
        assert!(text.contains("betti over F5: (1, 1, 5)"), "{text}");
    }

    #[test]
    fn paper_rejects_composite() {
        let err = run_args(&["verify", "paper", "--p", "4"]).0.unwrap_err();
        assert!(err.to_string().contains("not prime"));
    }
}
