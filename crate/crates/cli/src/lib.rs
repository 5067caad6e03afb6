//! The `kr` command-line tool.
//!
//! Exit codes: 0 success, 1 verification violation, 2 usage error,
//! 3 budget, overflow or other computational failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use serde::Serialize;

use kr_core::krmodules::{
    is_kr_tensor_factorizable, kernel_character, kr_character, kr_tensor_multiplicities,
    qsystem_difference, schur_difference, verify_main_theorem, KRTensor, PairMode,
};
use kr_core::liealg::{
    cartan_for, decompose, CartanData, CartanType, CharacterJson, ClassicalCharacter, Weight,
};
use kr_core::partitions::{cover_edges, partitions_of, poset_dot, poset_json, Partition};
use kr_core::qchar::{tsystem_verify, QCharCache, DEFAULT_TERM_BUDGET};
use kr_core::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_COMPUTE: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Debug, Parser)]
#[command(
    name = "kr",
    version,
    about = "Characters of Kirillov-Reshetikhin modules and their tensor products"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Directory for cached q-characters (defaults to $KR_CACHE_DIR).
    #[arg(long, global = true, env = "KR_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,

    /// Maximum number of monomials in a single q-character computation.
    #[arg(long, global = true, default_value_t = DEFAULT_TERM_BUDGET)]
    pub budget: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct NodeArgs {
    /// Algebra such as A3, B2 or G2.
    #[arg(long, value_parser = parse_algebra)]
    pub algebra: CartanType,

    /// Dynkin node, numbered from 1.
    #[arg(long)]
    pub node: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classical character of KR(m omega_i).
    Char {
        #[command(flatten)]
        at: NodeArgs,
        #[arg(long)]
        m: u32,
    },
    /// q-character of W^(i)_{m, q^shift}.
    Qchar {
        #[command(flatten)]
        at: NodeArgs,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        shift: i32,
    },
    /// Irreducible multiplicities of KR(lambda, i).
    Tensor {
        #[command(flatten)]
        at: NodeArgs,
        /// Levels as descending comma-separated integers, e.g. 3,2.
        #[arg(long, value_parser = parse_partition)]
        partition: Partition,
    },
    /// The reverse dominance order on partitions of m.
    Poset {
        #[arg(long)]
        m: u32,
        /// List cover relations instead of elements.
        #[arg(long)]
        covers: bool,
        /// Emit the Hasse diagram in DOT form.
        #[arg(long, conflicts_with = "covers")]
        dot: bool,
    },
    /// Verification suites.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Character of the kernel of KR(mu, i) -> KR(lambda, i).
    Kernel {
        #[command(flatten)]
        at: NodeArgs,
        #[arg(long, value_parser = parse_partition)]
        mu: Partition,
        #[arg(long, value_parser = parse_partition)]
        lambda: Partition,
    },
    /// Search for a KR tensor product with a given character.
    Factorize {
        #[command(flatten)]
        source: FactorizeSource,
    },
    /// Signed decomposition of V(mu1)V(mu2) - V(lambda1)V(lambda2).
    SchurDiff {
        #[arg(long, value_parser = parse_algebra)]
        algebra: CartanType,
        #[arg(long, value_parser = parse_weight)]
        mu1: Weight,
        #[arg(long, value_parser = parse_weight)]
        mu2: Weight,
        #[arg(long, value_parser = parse_weight)]
        lambda1: Weight,
        #[arg(long, value_parser = parse_weight)]
        lambda2: Weight,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = true)]
pub struct FactorizeSource {
    /// Character JSON file, as written by `kr char --format json`.
    #[arg(long, conflicts_with_all = ["algebra", "node", "mu", "lambda"])]
    pub input: Option<PathBuf>,
    /// Factorize the kernel of KR(mu, node) -> KR(lambda, node).
    #[arg(long, value_parser = parse_algebra, requires_all = ["node", "mu", "lambda"])]
    pub algebra: Option<CartanType>,
    #[arg(long)]
    pub node: Option<usize>,
    #[arg(long, value_parser = parse_partition)]
    pub mu: Option<Partition>,
    #[arg(long, value_parser = parse_partition)]
    pub lambda: Option<Partition>,
}

#[derive(Debug, Subcommand)]
pub enum Suite {
    /// char KR(m)^2 - char KR(m+1) char KR(m-1) is a genuine character.
    Qsystem {
        #[command(flatten)]
        at: NodeArgs,
        #[arg(long)]
        m: u32,
    },
    /// The T-system identity at level m.
    Tsystem {
        #[command(flatten)]
        at: NodeArgs,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        shift: i32,
    },
    /// Multiplicity inequalities along the partition order of P(m).
    Positivity {
        #[command(flatten)]
        at: NodeArgs,
        #[arg(long)]
        m: u32,
        /// Check every comparable pair instead of cover relations only.
        #[arg(long)]
        all_pairs: bool,
    },
}

fn parse_algebra(s: &str) -> Result<CartanType, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_weight(s: &str) -> Result<Weight, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Violation(_) | Error::QSystemViolation { .. } => EXIT_VIOLATION,
        Error::UnsupportedAlgebra(_)
        | Error::InvalidNode { .. }
        | Error::NotDominant(_)
        | Error::WeightRank { .. }
        | Error::AlgebraMismatch { .. }
        | Error::InvalidPartition(_)
        | Error::TotalMismatch { .. }
        | Error::Incomparable { .. }
        | Error::InvalidArgument(_) => EXIT_USAGE,
        _ => EXIT_COMPUTE,
    }
}

/// A rendered result together with whether it records a violation.
struct Output {
    json: String,
    tsv: String,
    text: String,
    violation: bool,
}

impl Output {
    fn new<T: Serialize>(value: &T, tsv: String, text: String) -> Result<Self, Error> {
        Ok(Output {
            json: serde_json::to_string(value)?,
            tsv,
            text,
            violation: false,
        })
    }

    fn violation(mut self, v: bool) -> Self {
        self.violation = v;
        self
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .try_init();
    if let Err(e) = QCharCache::init_global(cli.cache_dir.clone(), cli.budget) {
        // only reachable when run() is called twice in one process
        QCharCache::global().set_budget(cli.budget);
        log::debug!("{e}");
    }
    match execute(&cli.command) {
        Ok(out) => {
            let body = match cli.format {
                Format::Json => out.json,
                Format::Tsv => out.tsv,
                Format::Text => out.text,
            };
            print!("{body}");
            if !body.ends_with('\n') {
                println!();
            }
            if out.violation {
                EXIT_VIOLATION
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn algebra(ty: CartanType) -> Result<Arc<CartanData>, Error> {
    cartan_for(ty)
}

fn node_algebra(at: &NodeArgs) -> Result<Arc<CartanData>, Error> {
    let cd = algebra(at.algebra)?;
    cd.check_node(at.node)?;
    Ok(cd)
}

fn execute(cmd: &Command) -> Result<Output, Error> {
    match cmd {
        Command::Char { at, m } => char_cmd(at, *m),
        Command::Qchar { at, m, shift } => qchar_cmd(at, *m, *shift),
        Command::Tensor { at, partition } => tensor_cmd(at, partition),
        Command::Poset { m, covers, dot } => poset_cmd(*m, *covers, *dot),
        Command::Verify { suite } => match suite {
            Suite::Qsystem { at, m } => qsystem_cmd(at, *m),
            Suite::Tsystem { at, m, shift } => tsystem_cmd(at, *m, *shift),
            Suite::Positivity { at, m, all_pairs } => positivity_cmd(at, *m, *all_pairs),
        },
        Command::Kernel { at, mu, lambda } => kernel_cmd(at, mu, lambda),
        Command::Factorize { source } => factorize_cmd(source),
        Command::SchurDiff {
            algebra: ty,
            mu1,
            mu2,
            lambda1,
            lambda2,
        } => schur_cmd(*ty, (mu1, mu2), (lambda1, lambda2)),
    }
}

#[derive(Serialize)]
struct Component {
    tau: Weight,
    mult: i64,
}

fn components(c: &ClassicalCharacter) -> Result<Vec<Component>, Error> {
    Ok(decompose(c)?
        .components
        .into_iter()
        .map(|(tau, mult)| Component { tau, mult })
        .collect())
}

fn components_tsv(cs: &[Component]) -> String {
    let mut s = String::from("tau\tmult\n");
    for c in cs {
        let _ = writeln!(s, "{}\t{}", c.tau, c.mult);
    }
    s
}

fn components_text(cs: &[Component]) -> String {
    let mut s = String::new();
    for c in cs {
        let _ = writeln!(s, "V({})\t{}", c.tau, c.mult);
    }
    s
}

#[derive(Serialize)]
struct CharReport {
    algebra: CartanType,
    node: usize,
    m: u32,
    dimension: i64,
    components: Vec<Component>,
    character: CharacterJson,
}

fn char_cmd(at: &NodeArgs, m: u32) -> Result<Output, Error> {
    let cd = node_algebra(at)?;
    info!("computing KR({m} omega_{}) for {}", at.node, at.algebra);
    let c = kr_character(&cd, at.node, m)?;
    let report = CharReport {
        algebra: at.algebra,
        node: at.node,
        m,
        dimension: c.dimension()?,
        components: components(&c)?,
        character: c.to_json(),
    };
    let mut tsv = String::from("weight\tmult\n");
    for (w, k) in c.sorted_terms() {
        let _ = writeln!(tsv, "{w}\t{k}");
    }
    let text = format!(
        "dimension {}\n{}",
        report.dimension,
        components_text(&report.components)
    );
    Output::new(&report, tsv, text)
}

#[derive(Serialize)]
struct QCharEntry {
    monomial: String,
    exps: Vec<[i64; 3]>,
    mult: i64,
}

#[derive(Serialize)]
struct QCharReport {
    algebra: CartanType,
    node: usize,
    m: u32,
    shift: i32,
    dimension: i64,
    monomials: Vec<QCharEntry>,
}

fn qchar_cmd(at: &NodeArgs, m: u32, shift: i32) -> Result<Output, Error> {
    node_algebra(at)?;
    info!(
        "computing q-character of W({})_{m} for {}",
        at.node, at.algebra
    );
    let qc = QCharCache::global().kr_qcharacter(at.algebra, at.node, m, shift)?;
    let monomials: Vec<QCharEntry> = qc
        .sorted_terms()
        .into_iter()
        .map(|(mono, mult)| QCharEntry {
            monomial: mono.to_string(),
            exps: mono.to_triples(),
            mult,
        })
        .collect();
    let report = QCharReport {
        algebra: at.algebra,
        node: at.node,
        m,
        shift,
        dimension: qc.dimension()?,
        monomials,
    };
    let mut tsv = String::from("monomial\tmult\n");
    let mut text = String::new();
    for e in &report.monomials {
        let _ = writeln!(tsv, "{}\t{}", e.monomial, e.mult);
        let _ = writeln!(text, "{} {}", e.mult, e.monomial);
    }
    Output::new(&report, tsv, text)
}

#[derive(Serialize)]
struct TensorReport {
    algebra: CartanType,
    node: usize,
    partition: Partition,
    dimension: i64,
    components: Vec<Component>,
}

fn tensor_cmd(at: &NodeArgs, partition: &Partition) -> Result<Output, Error> {
    let cd = node_algebra(at)?;
    let t = KRTensor::new(cd, at.node, partition.clone())?;
    let v = kr_tensor_multiplicities(&t)?;
    let components: Vec<Component> =
        v.0.into_iter()
            .map(|(tau, mult)| Component { tau, mult })
            .collect();
    let report = TensorReport {
        algebra: at.algebra,
        node: at.node,
        partition: partition.clone(),
        dimension: t.dimension()?,
        components,
    };
    Output::new(
        &report,
        components_tsv(&report.components),
        components_text(&report.components),
    )
}

fn poset_cmd(m: u32, covers: bool, dot: bool) -> Result<Output, Error> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    let json = poset_json(m);
    let (tsv, text) = if dot {
        (poset_dot(m), poset_dot(m))
    } else if covers {
        let mut tsv = String::from("lower\tupper\n");
        let mut text = String::new();
        for (a, b) in cover_edges(m) {
            let _ = writeln!(tsv, "{a}\t{b}");
            let _ = writeln!(text, "{a} < {b}");
        }
        (tsv, text)
    } else {
        let mut tsv = String::from("partition\n");
        let mut text = String::new();
        for p in partitions_of(m, None) {
            let _ = writeln!(tsv, "{p}");
            let _ = writeln!(text, "{p}");
        }
        (tsv, text)
    };
    Output::new(&json, tsv, text)
}

#[derive(Serialize)]
struct QSystemReport {
    algebra: CartanType,
    node: usize,
    m: u32,
    holds: bool,
    components: Vec<Component>,
}

fn qsystem_cmd(at: &NodeArgs, m: u32) -> Result<Output, Error> {
    let cd = node_algebra(at)?;
    let s = qsystem_difference(&cd, at.node, m)?;
    let report = QSystemReport {
        algebra: at.algebra,
        node: at.node,
        m,
        holds: true,
        components: components(&s)?,
    };
    let text = format!("Q-system holds\n{}", components_text(&report.components));
    Output::new(&report, components_tsv(&report.components), text)
}

fn tsystem_cmd(at: &NodeArgs, m: u32, shift: i32) -> Result<Output, Error> {
    let cd = node_algebra(at)?;
    info!(
        "checking the T-system for {} node {} at level {m}",
        at.algebra, at.node
    );
    let r = tsystem_verify(&cd, at.node, m, shift)?;
    let factors: Vec<String> = r
        .s_term_factors
        .iter()
        .map(|f| format!("W({})_{{{},{}}}", f.node, f.level, f.shift))
        .collect();
    let tsv = format!(
        "algebra\tnode\tm\tshift\tholds\ts_monomials\ts_dimension\tmismatches\n{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
        r.algebra, r.node, r.m, r.shift, r.holds, r.s_term_monomials, r.s_term_dimension, r.mismatches
    );
    let text = format!(
        "T-system {}\nS highest monomial: {}\nS factors: {}\nS monomials: {}, dimension {}\n",
        if r.holds { "holds" } else { "FAILS" },
        r.s_term_highest,
        if factors.is_empty() {
            "(trivial)".to_string()
        } else {
            factors.join(" ")
        },
        r.s_term_monomials,
        r.s_term_dimension
    );
    Ok(Output::new(&r, tsv, text)?.violation(!r.holds))
}

fn positivity_cmd(at: &NodeArgs, m: u32, all_pairs: bool) -> Result<Output, Error> {
    let cd = node_algebra(at)?;
    let mode = if all_pairs {
        PairMode::AllPairs
    } else {
        PairMode::Covers
    };
    info!("checking {} node {} on P({m})", at.algebra, at.node);
    let r = verify_main_theorem(&cd, at.node, m, mode)?;
    let mut text = format!(
        "{} pairs checked, {} violations\n",
        r.pairs,
        r.violations.len()
    );
    for v in &r.violations {
        let _ = writeln!(
            text,
            "{} <= {}: V({}) has multiplicity {} > {}",
            v.lambda, v.mu, v.tau, v.lambda_mult, v.mu_mult
        );
    }
    let violated = !r.violations.is_empty();
    Ok(Output::new(&r, r.to_tsv(), text)?.violation(violated))
}

#[derive(Serialize)]
struct KernelReport {
    algebra: CartanType,
    node: usize,
    mu: Partition,
    lambda: Partition,
    dimension: i64,
    components: Vec<Component>,
}

fn kernel_cmd(at: &NodeArgs, mu: &Partition, lambda: &Partition) -> Result<Output, Error> {
    let cd = node_algebra(at)?;
    let k = kernel_character(&cd, at.node, mu, lambda)?;
    let report = KernelReport {
        algebra: at.algebra,
        node: at.node,
        mu: mu.clone(),
        lambda: lambda.clone(),
        dimension: k.dimension()?,
        components: components(&k)?,
    };
    let text = format!(
        "dimension {}\n{}",
        report.dimension,
        components_text(&report.components)
    );
    Output::new(&report, components_tsv(&report.components), text)
}

#[derive(Serialize)]
struct FactorReport {
    algebra: CartanType,
    factors: Option<Vec<FactorJson>>,
}

#[derive(Serialize)]
struct FactorJson {
    node: usize,
    level: u32,
}

fn factorize_cmd(src: &FactorizeSource) -> Result<Output, Error> {
    let (cd, c) = match (&src.input, src.algebra, src.node, &src.mu, &src.lambda) {
        (Some(path), ..) => {
            let text = std::fs::read_to_string(path)?;
            let json: serde_json::Value = serde_json::from_str(&text)?;
            // accept a bare character or the `char` report that embeds one
            let json = json.get("character").cloned().unwrap_or(json);
            let c = ClassicalCharacter::from_json(&serde_json::from_value::<CharacterJson>(json)?)?;
            (algebra(c.algebra())?, c)
        }
        (None, Some(ty), Some(node), Some(mu), Some(lambda)) => {
            let cd = algebra(ty)?;
            let c = kernel_character(&cd, node, mu, lambda)?;
            (cd, c)
        }
        _ => {
            return Err(Error::InvalidArgument(
                "give --input or all of --algebra, --node, --mu, --lambda".into(),
            ))
        }
    };
    let found = is_kr_tensor_factorizable(&cd, &c)?;
    let report = FactorReport {
        algebra: cd.cartan_type(),
        factors: found.as_ref().map(|f| {
            f.iter()
                .map(|&(node, level)| FactorJson { node, level })
                .collect()
        }),
    };
    let (tsv, text) = match &found {
        None => (
            "node\tlevel\n".to_string(),
            "not a tensor product of KR modules\n".to_string(),
        ),
        Some(f) => {
            let mut tsv = String::from("node\tlevel\n");
            let mut parts = Vec::new();
            for (node, level) in f {
                let _ = writeln!(tsv, "{node}\t{level}");
                parts.push(format!("KR({level} omega_{node})"));
            }
            (tsv, format!("{}\n", parts.join(" (x) ")))
        }
    };
    Output::new(&report, tsv, text)
}

#[derive(Serialize)]
struct SchurReport {
    algebra: CartanType,
    nonnegative: bool,
    components: Vec<Component>,
}

fn schur_cmd(
    ty: CartanType,
    mu: (&Weight, &Weight),
    lambda: (&Weight, &Weight),
) -> Result<Output, Error> {
    let cd = algebra(ty)?;
    for w in [mu.0, mu.1, lambda.0, lambda.1] {
        cd.check_weight(w)?;
        w.require_dominant()?;
    }
    let d = schur_difference(&cd, mu, lambda)?;
    let report = SchurReport {
        algebra: ty,
        nonnegative: d.is_genuine(),
        components: d
            .components
            .into_iter()
            .map(|(tau, mult)| Component { tau, mult })
            .collect(),
    };
    Output::new(
        &report,
        components_tsv(&report.components),
        components_text(&report.components),
    )
}
