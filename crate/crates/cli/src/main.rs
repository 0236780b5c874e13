use std::fmt::Write as _;
use std::process::ExitCode;

use av321::classes::{
    enumerate_class, ik_counts, main_theorem_report, verify_partial_reduction, ClassSpec, CountProfile,
    EnumerationConfig, MainTheoremConfig,
};
use av321::lattice::{enumerate_k_good, enumerate_subdirect, lattice_of_21, pi_of, SubdirectProduct};
use av321::rigidity::{articulation_points, is_k_rigid, rank_decomposition, rigid_reduction};
use av321::series::{catalan_counts, k_rigid_counts, rigid_counts, rigid_ratio_profile};
use av321::staircase::{
    count_type_changes, embed_in_generic, generic_staircase, intertwined_decomposition, merge_bound,
    min_type_change_merge, parse_coloring, staircase_decomposition, staircase_or_merge, validate_dichotomy,
    Dichotomy,
};
use av321::{embeddings, verify, Error, Permutation};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

const SCHEMA_VERSION: u32 = 1;

/// Exit codes.
const PASS: u8 = 0;
const VERIFICATION_FAILED: u8 = 1;
const USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "av321", version, about = "Permutation patterns and growth rates inside Av(321)")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Reserved. Every algorithm is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Does PATTERN occur in HOST?
    Contains { pattern: Perm, host: Perm },
    /// Every embedding of PATTERN in HOST, as 0-based positions.
    Embeddings { pattern: Perm, host: Perm },
    /// Rank of each point (length of the longest decreasing run starting there).
    Rank { perm: Perm },
    /// Articulation points: points on no copy of 21.
    Articulations { perm: Perm },
    #[command(subcommand)]
    Rigid(RigidCmd),
    #[command(subcommand)]
    Staircase(StaircaseCmd),
    #[command(subcommand)]
    Merge(MergeCmd),
    #[command(subcommand)]
    Class(ClassCmd),
    #[command(subcommand)]
    Lattice(LatticeCmd),
    #[command(subcommand)]
    Series(SeriesCmd),
    /// Run the acceptance criteria and print a table.
    VerifyAll {
        /// Only these criteria (comma-separated ids).
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}

#[derive(Subcommand)]
enum RigidCmd {
    /// Is every point on a copy of the decreasing permutation of length k?
    Test {
        perm: Perm,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Rigid reduction of a member of Av(321).
    Reduce { perm: Perm },
}

#[derive(Subcommand)]
enum StaircaseCmd {
    /// Greedy staircase decomposition of a member of Av(321).
    Decompose { perm: Perm },
    /// The (k, b)-generic staircase.
    Generic {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        b: usize,
    },
    /// Either a copy of the (k, b)-generic staircase or a merge with few type changes.
    Dichotomy {
        perm: Perm,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        b: usize,
    },
    /// The pair of intertwined staircases.
    Intertwined { perm: Perm },
    /// Smallest generic staircase containing PERM, with an embedding.
    Embed { perm: Perm },
}

#[derive(Subcommand)]
enum MergeCmd {
    /// Type changes of an L/B colouring.
    CountChanges { perm: Perm, coloring: String },
    /// Colouring with fewest type changes whose parts avoid the given bases.
    Search {
        perm: Perm,
        /// Basis avoided by the L part.
        #[arg(long, value_parser = parse_basis, default_value = "")]
        basis: Basis,
        /// Basis avoided by the B part (default: same as --basis).
        #[arg(long, value_parser = parse_basis)]
        beta_basis: Option<Basis>,
        #[arg(long, default_value_t = 8)]
        bound: usize,
    },
}

#[derive(Args)]
struct ClassArgs {
    /// Extra basis elements, comma-separated.
    #[arg(long, value_parser = parse_basis, default_value = "")]
    basis: Basis,
    /// Work inside I_k = Av(k+1 ... 1). Without it the basis is taken as given.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 10)]
    n: usize,
}

impl ClassArgs {
    fn spec(&self) -> ClassSpec {
        match self.k {
            Some(k) => ClassSpec::in_ik(k, self.basis.0.clone()),
            None => ClassSpec::new(self.basis.0.clone()),
        }
    }
}

#[derive(Subcommand)]
enum ClassCmd {
    /// Counts of a class by length.
    Enumerate {
        #[command(flatten)]
        class: ClassArgs,
        /// Also list the members of length n.
        #[arg(long)]
        list: bool,
    },
    /// Counts with n-th roots and successive ratios.
    Growth {
        #[command(flatten)]
        class: ClassArgs,
    },
    /// Compare I_2 ∩ Av(X) with I_2 ∩ Av(red X) and split the difference into merges.
    MainTheorem {
        #[arg(long, value_parser = parse_basis)]
        basis: Basis,
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Decompose difference members up to this length.
        #[arg(long, default_value_t = 10)]
        merge_n: usize,
        #[arg(long, default_value_t = 16)]
        bound: usize,
    },
    /// Check the pivot chains between Av(α ⊕ 1 ⊕ 1 ⊕ β) and Av(α ⊕ 1 ⊕ β) inside I_k.
    PartialReduction {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        alpha: Perm,
        #[arg(long)]
        beta: Perm,
        #[arg(long, value_parser = parse_basis, default_value = "")]
        basis: Basis,
        #[arg(long, default_value_t = 9)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Lattice of embeddings of 21 into a 2-rigid member of Av(321).
    OfPerm { perm: Perm },
    /// Subdirect products of chains of the given lengths.
    Subdirect {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        /// Print only how many there are.
        #[arg(long)]
        count: bool,
    },
    /// The 2-rigid permutation of a subdirect product of two chains.
    PiOf {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        /// Pairs as `a,b;a,b;...`, 1-based.
        #[arg(long)]
        elements: String,
    },
    /// Number of k-good permutations of length l.
    KGood {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
}

#[derive(Subcommand)]
enum SeriesCmd {
    /// Catalan numbers c_0..c_n.
    Catalan {
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
    /// 2-rigid members of Av(321) by length, r_0..r_n.
    Rigid {
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
    /// r_n / c_n and its distance to 4/9.
    Ratio {
        #[arg(long, default_value_t = 20)]
        n: usize,
    },
    /// Brute-force counts of k-rigid members of I_k, 0..n.
    KRigid {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
}

#[derive(Clone, Debug)]
struct Perm(Permutation);

impl std::str::FromStr for Perm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        s.parse().map(Perm)
    }
}

#[derive(Clone, Debug)]
struct Basis(Vec<Permutation>);

fn parse_basis(s: &str) -> Result<Basis, Error> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map(Basis)
}

/// What a command produced: text, its JSON form, and whether any check failed.
struct Outcome {
    text: String,
    json: Value,
    failed: bool,
}

impl Outcome {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Outcome {
            text: text.into(),
            json,
            failed: false,
        }
    }

    fn check(text: impl Into<String>, json: Value, passed: bool) -> Self {
        Outcome {
            text: text.into(),
            json,
            failed: !passed,
        }
    }
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serialisable")
}

fn joined<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn blocks_text(name: &str, blocks: &[Vec<usize>]) -> String {
    let mut out = String::new();
    for (i, b) in blocks.iter().enumerate() {
        let _ = writeln!(out, "{name}{}:{}{}", i + 1, if b.is_empty() { "" } else { " " }, joined(b));
    }
    out
}

fn pairs(text: &str) -> Result<Vec<Vec<usize>>, Error> {
    text.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.trim_matches(|c| c == '(' || c == ')')
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidArgument(format!("bad coordinate `{x}` in `{t}`")))
                })
                .collect()
        })
        .collect()
}

fn run(command: Command) -> Result<Outcome, Error> {
    Ok(match command {
        Command::Contains { pattern, host } => {
            let found = av321::contains(&pattern.0, &host.0);
            Outcome::ok(found.to_string(), json!({ "contains": found }))
        }
        Command::Embeddings { pattern, host } => {
            let all = embeddings(&pattern.0, &host.0);
            let text: Vec<String> = all.iter().map(|e| joined(e.image())).collect();
            Outcome::ok(text.join("\n"), json!({ "count": all.len(), "embeddings": to_json(&all) }))
        }
        Command::Rank { perm } => {
            let ranks = rank_decomposition(&perm.0);
            Outcome::ok(
                joined(ranks.ranks()),
                json!({ "k": ranks.k(), "ranks": ranks.ranks() }),
            )
        }
        Command::Articulations { perm } => {
            let points = articulation_points(&perm.0);
            Outcome::ok(joined(&points), json!({ "articulation_points": points }))
        }
        Command::Rigid(RigidCmd::Test { perm, k }) => {
            let rigid = is_k_rigid(&perm.0, k)?;
            Outcome::ok(rigid.to_string(), json!({ "k": k, "rigid": rigid }))
        }
        Command::Rigid(RigidCmd::Reduce { perm }) => {
            let red = rigid_reduction(&perm.0)?;
            Outcome::ok(red.to_string(), json!({ "reduction": red.to_string() }))
        }
        Command::Staircase(cmd) => staircase(cmd)?,
        Command::Merge(cmd) => merge(cmd)?,
        Command::Class(cmd) => class(cmd)?,
        Command::Lattice(cmd) => lattice(cmd)?,
        Command::Series(cmd) => series(cmd)?,
        Command::VerifyAll { only } => {
            let results = if only.is_empty() {
                verify::run_all()
            } else {
                for &id in &only {
                    if !(1..=verify::CRITERIA.len()).contains(&id) {
                        return Err(Error::InvalidArgument(format!("no criterion {id}")));
                    }
                }
                only.iter().map(|&id| verify::run_criterion(id)).collect()
            };
            let passed = results.iter().all(|r| r.passed);
            let mut text: Vec<String> = results.iter().map(|r| r.line()).collect();
            let total: u128 = results.iter().map(|r| r.elapsed_ms).sum();
            text.push(format!(
                "{}/{} passed in {total} ms",
                results.iter().filter(|r| r.passed).count(),
                results.len()
            ));
            Outcome::check(text.join("\n"), json!({ "passed": passed, "criteria": to_json(&results) }), passed)
        }
    })
}

fn staircase(cmd: StaircaseCmd) -> Result<Outcome, Error> {
    Ok(match cmd {
        StaircaseCmd::Decompose { perm } => {
            let d = staircase_decomposition(&perm.0)?;
            Outcome::ok(blocks_text("α", &d.blocks).trim_end(), to_json(&d))
        }
        StaircaseCmd::Generic { k, b } => {
            if k == 0 || b == 0 {
                return Err(Error::InvalidArgument("k and b must be positive".into()));
            }
            let p = generic_staircase(k, b);
            Outcome::ok(p.to_string(), json!({ "k": k, "b": b, "perm": p.to_string() }))
        }
        StaircaseCmd::Dichotomy { perm, k, b } => {
            if k == 0 || b == 0 {
                return Err(Error::InvalidArgument("k and b must be positive".into()));
            }
            let answer = staircase_or_merge(&perm.0, k, b)?;
            let valid = validate_dichotomy(&perm.0, k, b, &answer).is_ok();
            let text = match &answer {
                Dichotomy::Staircase { witness, route } => format!(
                    "staircase ({k},{b}) {}\nembedding {}\nroute {route:?}",
                    generic_staircase(k, b),
                    joined(witness.embedding.image())
                ),
                Dichotomy::Merge(w) => format!("{}bound {}", w.to_text(&perm.0), merge_bound(k, b)),
            };
            Outcome::check(text, json!({ "valid": valid, "answer": to_json(&answer) }), valid)
        }
        StaircaseCmd::Intertwined { perm } => {
            let s = intertwined_decomposition(&perm.0)?;
            let text = blocks_text("λ", &s.lambda) + &blocks_text("μ", &s.mu);
            Outcome::ok(text.trim_end(), to_json(&s))
        }
        StaircaseCmd::Embed { perm } => {
            let (witness, generic) = embed_in_generic(&perm.0)?;
            Outcome::ok(
                format!(
                    "({},{}) {generic}\nembedding {}",
                    witness.k,
                    witness.b,
                    joined(witness.embedding.image())
                ),
                json!({ "generic": generic.to_string(), "witness": to_json(&witness) }),
            )
        }
    })
}

fn merge(cmd: MergeCmd) -> Result<Outcome, Error> {
    Ok(match cmd {
        MergeCmd::CountChanges { perm, coloring } => {
            let w = count_type_changes(&perm.0, &parse_coloring(&coloring)?)?;
            Outcome::ok(w.to_text(&perm.0).trim_end(), to_json(&w))
        }
        MergeCmd::Search {
            perm,
            basis,
            beta_basis,
            bound,
        } => {
            let beta = beta_basis.unwrap_or_else(|| basis.clone());
            match min_type_change_merge(&perm.0, &basis.0, &beta.0, bound)? {
                Some(w) => Outcome::ok(w.to_text(&perm.0).trim_end(), json!({ "found": true, "witness": to_json(&w) })),
                None => Outcome::check(
                    format!("no merge with at most {bound} type changes"),
                    json!({ "found": false }),
                    false,
                ),
            }
        }
    })
}

fn profile_json(spec: &ClassSpec, profile: &CountProfile) -> Value {
    json!({ "class": spec.to_string(), "basis": strings(spec.basis()), "profile": to_json(profile) })
}

fn class(cmd: ClassCmd) -> Result<Outcome, Error> {
    let config = EnumerationConfig::default();
    Ok(match cmd {
        ClassCmd::Enumerate { class, list } => {
            let spec = class.spec();
            let config = EnumerationConfig {
                retain_up_to: if list { class.n } else { 0 },
                ..config
            };
            let e = enumerate_class(&spec, class.n, &config)?;
            let mut text = joined(&e.profile.counts);
            let mut json = profile_json(&spec, &e.profile);
            if list {
                let members = strings(&e.members[class.n]);
                text.push('\n');
                text.push_str(&members.join("\n"));
                json["members"] = json!(members);
            }
            Outcome::ok(text.trim_end(), json)
        }
        ClassCmd::Growth { class } => {
            let spec = class.spec();
            // Plain I_k has a closed form; no need to enumerate.
            let profile = if let (true, Some(k)) = (class.basis.0.is_empty(), class.k) {
                let counts = ik_counts(k, class.n);
                let counts = counts[1..]
                    .iter()
                    .map(|c| u64::try_from(c).map_err(|_| Error::InvalidArgument("count overflows u64".into())))
                    .collect::<Result<_, _>>()?;
                CountProfile::from_counts(counts)
            } else {
                let config = EnumerationConfig {
                    retain_up_to: 0,
                    ..config
                };
                enumerate_class(&spec, class.n, &config)?.profile
            };
            Outcome::ok(
                format!("{spec}\n{}", profile.table()).trim_end(),
                profile_json(&spec, &profile),
            )
        }
        ClassCmd::MainTheorem {
            basis,
            n,
            merge_n,
            bound,
        } => {
            let r = main_theorem_report(
                &basis.0,
                n,
                &config,
                &MainTheoremConfig {
                    merge_max_length: merge_n,
                    bound,
                },
            )?;
            let mut text = String::new();
            let _ = writeln!(text, "X        {}", joined(&r.basis));
            let _ = writeln!(text, "red X    {}", joined(&r.reduced_basis));
            let _ = writeln!(text, "Av(X)    {}", joined(&r.larger.counts));
            let _ = writeln!(text, "Av(redX) {}", joined(&r.smaller.counts));
            let _ = writeln!(text, "diff     {}", joined(&r.difference_counts));
            let _ = writeln!(text, "merges   {} checked, max total {}, bound {}", r.merges_checked, r.max_total_observed, r.bound);
            let _ = write!(text, "{}", if r.passed() { "PASS" } else { "FAIL" });
            for f in &r.merge_failures {
                let _ = write!(text, "\nno merge: {f}");
            }
            let passed = r.passed();
            let mut json = to_json(&r);
            json["passed"] = json!(passed);
            Outcome::check(text, json, passed)
        }
        ClassCmd::PartialReduction { k, alpha, beta, basis, n } => {
            let r = verify_partial_reduction(k, &alpha.0, &beta.0, &basis.0, n, &config)?;
            let mut text = String::new();
            let _ = writeln!(text, "larger   {}", joined(&r.larger.counts));
            let _ = writeln!(text, "smaller  {}", joined(&r.smaller.counts));
            let _ = writeln!(text, "checked  {}, longest pivot chain {}", r.checked, r.largest_chain);
            let _ = write!(text, "{}", if r.passed() { "PASS" } else { "FAIL" });
            for f in &r.failures {
                let _ = write!(text, "\nbad pivots: {f}");
            }
            let passed = r.passed();
            let mut json = to_json(&r);
            json["passed"] = json!(passed);
            Outcome::check(text, json, passed)
        }
    })
}

fn lattice(cmd: LatticeCmd) -> Result<Outcome, Error> {
    Ok(match cmd {
        LatticeCmd::OfPerm { perm } => {
            let l = lattice_of_21(&perm.0)?;
            Outcome::ok(format!("{}{l}", l.grid()), json!({ "dims": l.dims, "elements": l.elements }))
        }
        LatticeCmd::Subdirect { dims, count } => {
            if dims.contains(&0) || dims.iter().product::<usize>() > 64 {
                return Err(Error::InvalidArgument("chains must be non-empty with at most 64 points in total".into()));
            }
            let all = enumerate_subdirect(&dims);
            if count {
                Outcome::ok(all.len().to_string(), json!({ "dims": dims, "count": all.len() }))
            } else {
                let text: Vec<String> = all.iter().map(|k| k.to_string()).collect();
                let elements: Vec<Value> = all.iter().map(|k| json!(k.elements)).collect();
                Outcome::ok(text.join("\n"), json!({ "dims": dims, "count": all.len(), "products": elements }))
            }
        }
        LatticeCmd::PiOf { dims, elements } => {
            let k = SubdirectProduct::new(dims, pairs(&elements)?);
            let p = pi_of(&k)?;
            Outcome::ok(p.to_string(), json!({ "perm": p.to_string() }))
        }
        LatticeCmd::KGood { k, l } => {
            let count = enumerate_k_good(k, l)?;
            Outcome::ok(count.to_string(), json!({ "k": k, "l": l, "count": count }))
        }
    })
}

fn series(cmd: SeriesCmd) -> Result<Outcome, Error> {
    Ok(match cmd {
        SeriesCmd::Catalan { n } => {
            let c = catalan_counts(n);
            Outcome::ok(joined(&c), json!({ "coefficients": strings(&c) }))
        }
        SeriesCmd::Rigid { n } => {
            let r = rigid_counts(n)?;
            Outcome::ok(joined(&r), json!({ "coefficients": strings(&r) }))
        }
        SeriesCmd::Ratio { n } => {
            let profile = rigid_ratio_profile(n)?;
            let text: Vec<String> = profile
                .iter()
                .map(|e| format!("{:>3}  {}  {}", e.n, e.ratio_decimal, e.distance_decimal))
                .collect();
            Outcome::ok(
                format!("  n  r_n/c_n       |r_n/c_n - 4/9|\n{}", text.join("\n")),
                json!({ "limit": "4/9", "entries": to_json(&profile) }),
            )
        }
        SeriesCmd::KRigid { k, n } => {
            let counts = k_rigid_counts(k, n)?;
            Outcome::ok(joined(&counts), json!({ "k": k, "coefficients": counts }))
        }
    })
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Contains { .. } => "contains",
        Command::Embeddings { .. } => "embeddings",
        Command::Rank { .. } => "rank",
        Command::Articulations { .. } => "articulations",
        Command::Rigid(RigidCmd::Test { .. }) => "rigid test",
        Command::Rigid(RigidCmd::Reduce { .. }) => "rigid reduce",
        Command::Staircase(StaircaseCmd::Decompose { .. }) => "staircase decompose",
        Command::Staircase(StaircaseCmd::Generic { .. }) => "staircase generic",
        Command::Staircase(StaircaseCmd::Dichotomy { .. }) => "staircase dichotomy",
        Command::Staircase(StaircaseCmd::Intertwined { .. }) => "staircase intertwined",
        Command::Staircase(StaircaseCmd::Embed { .. }) => "staircase embed",
        Command::Merge(MergeCmd::CountChanges { .. }) => "merge count-changes",
        Command::Merge(MergeCmd::Search { .. }) => "merge search",
        Command::Class(ClassCmd::Enumerate { .. }) => "class enumerate",
        Command::Class(ClassCmd::Growth { .. }) => "class growth",
        Command::Class(ClassCmd::MainTheorem { .. }) => "class main-theorem",
        Command::Class(ClassCmd::PartialReduction { .. }) => "class partial-reduction",
        Command::Lattice(LatticeCmd::OfPerm { .. }) => "lattice of-perm",
        Command::Lattice(LatticeCmd::Subdirect { .. }) => "lattice subdirect",
        Command::Lattice(LatticeCmd::PiOf { .. }) => "lattice pi-of",
        Command::Lattice(LatticeCmd::KGood { .. }) => "lattice k-good",
        Command::Series(SeriesCmd::Catalan { .. }) => "series catalan",
        Command::Series(SeriesCmd::Rigid { .. }) => "series rigid",
        Command::Series(SeriesCmd::Ratio { .. }) => "series ratio",
        Command::Series(SeriesCmd::KRigid { .. }) => "series k-rigid",
        Command::VerifyAll { .. } => "verify-all",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(USAGE);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .expect("thread pool is configured once");
    }
    let name = command_name(&cli.command);
    match run(cli.command) {
        Ok(out) => {
            match cli.format {
                Format::Text => println!("{}", out.text),
                Format::Json => {
                    let doc = json!({
                        "schema_version": SCHEMA_VERSION,
                        "command": name,
                        "passed": !out.failed,
                        "result": out.json,
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).expect("valid json"));
                }
            }
            ExitCode::from(if out.failed { VERIFICATION_FAILED } else { PASS })
        }
        Err(e) => {
            eprintln!("error: {e}");
            if cli.format == Format::Json {
                let doc = json!({ "schema_version": SCHEMA_VERSION, "command": name, "error": e.to_string() });
                println!("{}", serde_json::to_string_pretty(&doc).expect("valid json"));
            }
            // A broken guarantee of the theory counts as a failed verification.
            ExitCode::from(match e {
                Error::Internal(_) => VERIFICATION_FAILED,
                _ => USAGE,
            })
        }
    }
}
