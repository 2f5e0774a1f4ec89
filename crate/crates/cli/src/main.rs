//! `intervals`: analyze permutations, convert between interval posets and
//! polygon dissections, count families exactly, and run the oracle suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parse error, 3 domain
//! violation, 4 method mismatch, 5 cap violation.

mod svg;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use interval_posets::bijection::{self, BijectionError};
use interval_posets::enumeration::{
    brute_count, catalan, count_blockwise_posets, count_interval_posets, dissection_count,
    small_schroeder, CountMethod, CountMode, CountTable, DissectionFamily, PosetFamily,
    BRUTE_PERM_CAP, BRUTE_PERM_DEFAULT_CAP,
};
use interval_posets::permutation::Permutation;
use interval_posets::verification::{run_suite, Suite};
use interval_posets::{Dissection, IntervalPoset};

#[derive(Parser)]
#[command(
    name = "intervals",
    version,
    about = "Interval posets of permutations and their polygon dissections"
)]
struct Cli {
    /// Worker threads for partitioned enumeration (default: all cores).
    /// Results are independent of this setting.
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the intervals and classification flags of a permutation
    Analyze {
        /// digit string (n <= 9) or comma/space-separated values
        perm: String,
        /// write the poset's Hasse diagram as DOT
        #[arg(long)]
        dot: Option<PathBuf>,
        /// write the poset as JSON
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Convert a poset JSON to a dissection JSON or back
    Convert {
        /// input file holding either {"n", "intervals"} or {"m", "diagonals"},
        /// or the same JSON inline
        input: String,
        /// which map to apply (psi is the separable-family pair)
        #[arg(long, value_enum, default_value_t = MapKind::Phi)]
        map: MapKind,
        /// optional sanity check on the conversion direction
        #[arg(long, value_enum)]
        direction: Option<Direction>,
        /// output file (stdout if omitted)
        #[arg(long)]
        output: Option<PathBuf>,
        /// render the dissection side as SVG
        #[arg(long)]
        svg: Option<PathBuf>,
        /// render the poset side as DOT
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Exact counts of a poset family over a size range, by several methods
    Enumerate {
        /// all | tree | blockwise | binary | binary_tree
        family: String,
        /// inclusive size range, e.g. 2..7
        range: String,
        /// comma-separated subset of formula,brute_perm,brute_dissection,
        /// structured_dissection (default: every method covering the range)
        #[arg(long)]
        methods: Option<String>,
        /// output file (stdout if omitted)
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// allow the permutation scan at n = 10
        #[arg(long)]
        big: bool,
    },
    /// Run the oracle suites, or validate a single poset file
    Verify {
        /// largest permutation size fed to the suites
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// comma-separated suite names (default: all)
        #[arg(long)]
        suites: Option<String>,
        /// validate one poset JSON instead of running suites
        #[arg(long)]
        poset: Option<PathBuf>,
    },
    /// Render a dissection JSON as a circular-layout SVG
    Render { input: PathBuf, output: PathBuf },
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum MapKind {
    Phi,
    Psi,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Direction {
    PosetToDissection,
    DissectionToPoset,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Csv,
    Json,
}

/// Outcome summary for the long-running subcommands, printed to stderr so
/// stdout stays byte-stable. A failed report always pairs with a nonzero
/// exit code.
struct RunReport {
    command: String,
    passed: bool,
    started: Instant,
}

impl RunReport {
    fn start(command: String) -> Self {
        RunReport {
            command,
            passed: true,
            started: Instant::now(),
        }
    }

    fn fail(&mut self) {
        self.passed = false;
    }

    fn emit(&self) {
        eprintln!(
            "{}: {} ({:.3}s)",
            self.command,
            if self.passed { "pass" } else { "FAIL" },
            self.started.elapsed().as_secs_f64()
        );
    }
}

enum Failure {
    Verification(String),
    Parse(String),
    Domain(String),
    Mismatch(String),
    Cap(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) | Failure::Io(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Domain(_) => 3,
            Failure::Mismatch(_) => 4,
            Failure::Cap(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Verification(m)
            | Failure::Parse(m)
            | Failure::Domain(m)
            | Failure::Mismatch(m)
            | Failure::Cap(m)
            | Failure::Io(m) => m,
        }
    }
}

fn main() -> ExitCode {
    // behave like a normal unix tool when the read end of a pipe goes away
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        // results are merge-order independent, so the pool size is free
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(workers.max(1))
            .build_global();
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Analyze { perm, dot, json } => cmd_analyze(&perm, dot, json),
        Command::Convert {
            input,
            map,
            direction,
            output,
            svg,
            dot,
        } => cmd_convert(&input, map, direction, output, svg, dot),
        Command::Enumerate {
            family,
            range,
            methods,
            output,
            format,
            big,
        } => cmd_enumerate(&family, &range, methods.as_deref(), output, format, big),
        Command::Verify {
            max_n,
            suites,
            poset,
        } => cmd_verify(max_n, suites.as_deref(), poset),
        Command::Render { input, output } => cmd_render(&input, &output),
    }
}

// -- analyze -----------------------------------------------------------------

fn cmd_analyze(perm: &str, dot: Option<PathBuf>, json: Option<PathBuf>) -> Result<(), Failure> {
    let p: Permutation = perm
        .parse()
        .map_err(|e| Failure::Parse(format!("cannot parse permutation: {e}")))?;
    let poset = IntervalPoset::of(&p);
    let shape = poset.classify();

    println!("permutation: {p}");
    println!("n: {}", p.n());
    let proper: Vec<String> = poset
        .intervals()
        .iter()
        .filter(|iv| !iv.is_trivial(p.n()))
        .map(|iv| iv.to_string())
        .collect();
    println!("proper intervals ({}): {}", proper.len(), proper.join(" "));
    println!("poset elements: {}", poset.len());
    println!("simple: {}", p.is_simple());
    println!("separable: {}", p.is_separable());
    println!("block-wise simple: {}", p.is_block_wise_simple());
    println!("poset tree: {}", shape.is_tree);
    println!("poset binary: {}", shape.is_binary);
    println!("poset dual claw: {}", shape.is_dual_claw);
    println!("poset argyle: {}", shape.is_argyle);

    if let Some(path) = dot {
        write_file(&path, &poset.to_dot())?;
    }
    if let Some(path) = json {
        write_file(&path, &(poset_json(&poset) + "\n"))?;
    }
    Ok(())
}

// -- convert -----------------------------------------------------------------

enum Loaded {
    Poset(IntervalPoset),
    Dissection(Dissection),
}

/// `input` is a path, or the JSON itself when it starts with `{`.
fn load_object_arg(input: &str) -> Result<Loaded, Failure> {
    if input.trim_start().starts_with('{') {
        parse_object(input.trim(), "inline JSON")
    } else {
        load_object(Path::new(input))
    }
}

fn load_object(path: &Path) -> Result<Loaded, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_object(&text, &path.display().to_string())
}

fn parse_object(text: &str, origin: &str) -> Result<Loaded, Failure> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| Failure::Parse(format!("bad JSON in {origin}: {e}")))?;
    if value.get("n").is_some() {
        let p: IntervalPoset = serde_json::from_value(value)
            .map_err(|e| Failure::Parse(format!("bad poset in {origin}: {e}")))?;
        Ok(Loaded::Poset(p))
    } else if value.get("m").is_some() {
        let d: Dissection = serde_json::from_value(value)
            .map_err(|e| Failure::Parse(format!("bad dissection in {origin}: {e}")))?;
        Ok(Loaded::Dissection(d))
    } else {
        Err(Failure::Parse(format!(
            "{origin} is neither a poset nor a dissection"
        )))
    }
}

fn domain_error(e: BijectionError) -> Failure {
    Failure::Domain(format!("{e:?}: {e}"))
}

fn cmd_convert(
    input: &str,
    map: MapKind,
    direction: Option<Direction>,
    output: Option<PathBuf>,
    svg: Option<PathBuf>,
    dot: Option<PathBuf>,
) -> Result<(), Failure> {
    let loaded = load_object_arg(input)?;
    if let Some(dir) = direction {
        let actual = matches!(
            (&loaded, dir),
            (Loaded::Poset(_), Direction::PosetToDissection)
                | (Loaded::Dissection(_), Direction::DissectionToPoset)
        );
        if !actual {
            return Err(Failure::Parse(
                "input does not match the requested direction".to_string(),
            ));
        }
    }

    let (poset_side, dissection_side, result_json) = match loaded {
        Loaded::Poset(p) => {
            let d = match map {
                MapKind::Phi => bijection::dissection_of(&p),
                MapKind::Psi => bijection::noncrossing_dissection_of(&p).map_err(domain_error)?,
            };
            let json = dissection_json(&d);
            (p, d, json)
        }
        Loaded::Dissection(d) => {
            let p = match map {
                MapKind::Phi => bijection::poset_of(&d).map_err(domain_error)?,
                MapKind::Psi => bijection::poset_of_noncrossing(&d).map_err(domain_error)?,
            };
            let json = poset_json(&p);
            (p, d, json)
        }
    };

    match output {
        Some(path) => write_file(&path, &(result_json + "\n"))?,
        None => println!("{result_json}"),
    }
    if let Some(path) = svg {
        write_file(&path, &svg::render(&dissection_side))?;
    }
    if let Some(path) = dot {
        write_file(&path, &poset_side.to_dot())?;
    }
    Ok(())
}

// -- enumerate ---------------------------------------------------------------

struct MethodPlan {
    method: CountMethod,
    min_n: usize,
    max_n: usize,
}

fn method_plan(family: PosetFamily, method: CountMethod, big: bool) -> Option<MethodPlan> {
    let perm_cap = if big { BRUTE_PERM_CAP } else { BRUTE_PERM_DEFAULT_CAP };
    let plan = |min_n, max_n| Some(MethodPlan { method, min_n, max_n });
    match (family, method) {
        (PosetFamily::All, CountMethod::Formula) => plan(2, usize::MAX),
        (PosetFamily::Blockwise, CountMethod::Formula) => plan(4, usize::MAX),
        (PosetFamily::Binary, CountMethod::Formula) => plan(1, usize::MAX),
        (PosetFamily::BinaryTree, CountMethod::Formula) => plan(1, usize::MAX),
        (PosetFamily::Tree, CountMethod::Formula) => None,
        (_, CountMethod::BrutePerm) => plan(1, perm_cap),
        (PosetFamily::BinaryTree, CountMethod::BruteDissection) => None,
        (_, CountMethod::BruteDissection) => plan(1, 7),
        (PosetFamily::All, CountMethod::StructuredDissection) => None,
        (PosetFamily::BinaryTree, CountMethod::StructuredDissection) => None,
        (_, CountMethod::StructuredDissection) => plan(1, 14),
    }
}

fn dissection_family(family: PosetFamily) -> Option<DissectionFamily> {
    match family {
        PosetFamily::All => Some(DissectionFamily::FramedQuadFree),
        PosetFamily::Tree => Some(DissectionFamily::NonCrossingQuadFree),
        PosetFamily::Blockwise => Some(DissectionFamily::NonCrossingTriangleFreeQuadFree),
        PosetFamily::Binary => Some(DissectionFamily::NonCrossing),
        PosetFamily::BinaryTree => None,
    }
}

fn formula_count(family: PosetFamily, n: usize) -> BigUint {
    match family {
        PosetFamily::All => count_interval_posets(n).expect("range checked"),
        PosetFamily::Blockwise => count_blockwise_posets(n).expect("range checked"),
        PosetFamily::Binary => small_schroeder(n - 1),
        PosetFamily::BinaryTree => catalan(n - 1),
        PosetFamily::Tree => unreachable!("tree has no closed formula here"),
    }
}

fn cmd_enumerate(
    family: &str,
    range: &str,
    methods: Option<&str>,
    output: Option<PathBuf>,
    format: Format,
    big: bool,
) -> Result<(), Failure> {
    let mut report = RunReport::start(format!("enumerate {family} {range}"));
    let family = PosetFamily::parse(family)
        .ok_or_else(|| Failure::Parse(format!("unknown family `{family}`")))?;
    let (lo, hi) = parse_range(range)?;

    let plans: Vec<MethodPlan> = match methods {
        Some(list) => {
            let mut plans = Vec::new();
            for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let method = CountMethod::parse(name)
                    .ok_or_else(|| Failure::Parse(format!("unknown method `{name}`")))?;
                let plan = method_plan(family, method, big).ok_or_else(|| {
                    Failure::Cap(format!("method {method} does not apply to family {family}"))
                })?;
                if lo < plan.min_n || hi > plan.max_n {
                    return Err(Failure::Cap(format!(
                        "method {method} covers {}..{} for family {family}, requested {lo}..{hi}",
                        plan.min_n,
                        if plan.max_n == usize::MAX {
                            "∞".to_string()
                        } else {
                            plan.max_n.to_string()
                        }
                    )));
                }
                plans.push(plan);
            }
            plans
        }
        None => CountMethod::ALL
            .into_iter()
            .filter_map(|m| method_plan(family, m, big))
            .filter(|p| p.min_n <= lo && hi <= p.max_n)
            .collect(),
    };
    if plans.is_empty() {
        return Err(Failure::Cap(format!(
            "no method covers {lo}..{hi} for family {family}"
        )));
    }

    let mut table = CountTable::new();
    for plan in &plans {
        for n in lo..=hi {
            let count = match plan.method {
                CountMethod::Formula => formula_count(family, n),
                CountMethod::BrutePerm => BigUint::from(
                    brute_count(family, CountMode::Posets, n)
                        .map_err(|e| Failure::Cap(e.to_string()))?,
                ),
                CountMethod::BruteDissection => {
                    let df = dissection_family(family).expect("plan filtered");
                    BigUint::from(
                        interval_posets::enumeration::brute_dissection_count(n + 1, df)
                            .map_err(|e| Failure::Cap(e.to_string()))?,
                    )
                }
                CountMethod::StructuredDissection => {
                    let df = dissection_family(family).expect("plan filtered");
                    BigUint::from(
                        dissection_count(n + 1, df).map_err(|e| Failure::Cap(e.to_string()))?,
                    )
                }
            };
            table.push(family, n, count, plan.method);
        }
    }

    let rendered = match format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json() + "\n",
    };
    match output {
        Some(path) => write_file(&path, &rendered)?,
        None => print!("{rendered}"),
    }

    let disagreements = table.disagreements();
    if !disagreements.is_empty() {
        report.fail();
    }
    report.emit();
    if !disagreements.is_empty() {
        let detail: Vec<String> = disagreements
            .iter()
            .map(|(f, n)| format!("{f} at n={n}"))
            .collect();
        return Err(Failure::Mismatch(format!(
            "methods disagree: {}",
            detail.join(", ")
        )));
    }
    Ok(())
}

fn parse_range(range: &str) -> Result<(usize, usize), Failure> {
    let parts: Vec<&str> = range.split("..").collect();
    let bad = || Failure::Parse(format!("bad range `{range}`, expected e.g. 2..7"));
    match parts.as_slice() {
        [single] => {
            let n: usize = single.parse().map_err(|_| bad())?;
            Ok((n, n))
        }
        [lo, hi] => {
            let lo: usize = lo.parse().map_err(|_| bad())?;
            let hi: usize = hi.parse().map_err(|_| bad())?;
            if lo == 0 || hi < lo {
                return Err(bad());
            }
            Ok((lo, hi))
        }
        _ => Err(bad()),
    }
}

// -- verify ------------------------------------------------------------------

fn cmd_verify(max_n: usize, suites: Option<&str>, poset: Option<PathBuf>) -> Result<(), Failure> {
    let mut report = RunReport::start(format!("verify max_n={max_n}"));
    if let Some(path) = poset {
        let loaded = load_object(&path)?;
        let Loaded::Poset(p) = loaded else {
            return Err(Failure::Parse(format!(
                "{} does not hold a poset",
                path.display()
            )));
        };
        return match p.validate() {
            Ok(()) => {
                println!("poset valid: n={} with {} intervals", p.n(), p.len());
                Ok(())
            }
            Err(reason) => {
                println!("poset INVALID: {reason:?}: {reason}");
                Err(Failure::Verification(format!("invalid poset: {reason:?}")))
            }
        };
    }

    let selected: Vec<Suite> = match suites {
        Some(list) => list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|name| {
                Suite::parse(name)
                    .ok_or_else(|| Failure::Parse(format!("unknown suite `{name}`")))
            })
            .collect::<Result<_, _>>()?,
        None => Suite::ALL.to_vec(),
    };

    for suite in selected {
        let outcome = run_suite(suite, max_n);
        if outcome.passed() {
            println!("suite {}: pass ({} checked)", suite.name(), outcome.checked);
        } else {
            report.fail();
            println!(
                "suite {}: FAIL ({} checked, {} failures)",
                suite.name(),
                outcome.checked,
                outcome.failures.len()
            );
            for failure in outcome.failures.iter().take(3) {
                println!("  counterexample: {failure}");
            }
        }
    }
    report.emit();
    if !report.passed {
        return Err(Failure::Verification("one or more suites failed".into()));
    }
    Ok(())
}

// -- render ------------------------------------------------------------------

fn cmd_render(input: &Path, output: &Path) -> Result<(), Failure> {
    let loaded = load_object(input)?;
    let Loaded::Dissection(d) = loaded else {
        return Err(Failure::Parse(format!(
            "{} does not hold a dissection",
            input.display()
        )));
    };
    write_file(output, &svg::render(&d))
}

// -- shared ------------------------------------------------------------------

fn poset_json(p: &IntervalPoset) -> String {
    serde_json::to_string(p).expect("poset serializes")
}

fn dissection_json(d: &Dissection) -> String {
    serde_json::to_string(d).expect("dissection serializes")
}

fn write_file(path: &Path, content: &str) -> Result<(), Failure> {
    std::fs::write(path, content)
        .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
}
