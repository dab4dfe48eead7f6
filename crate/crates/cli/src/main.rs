use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// `print!` that exits quietly when stdout is a closed pipe.
macro_rules! out {
    ($($arg:tt)*) => {
        emit_stdout(format_args!($($arg)*))
    };
}

macro_rules! outln {
    () => {
        out!("\n")
    };
    ($($arg:tt)*) => {
        out!("{}\n", format_args!($($arg)*))
    };
}

fn emit_stdout(args: std::fmt::Arguments<'_>) {
    use std::io::Write;
    if let Err(e) = std::io::stdout().write_fmt(args) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("writing to stdout: {e}");
    }
}

use clap::{Parser, Subcommand, ValueEnum};

use smorph::corpus::{bundled_corpus, bundled_dir, load_dir, load_file, write_dir, CorpusError};
use smorph::format::{render, AlgebraDocument};
use smorph::suite::{blocks, check_ids, list, run_verify_suite, CheckResult, Status, SuiteConfig};
use smorph_core::engine::generated_congruence_traced;
use smorph_core::residuated::{
    check_axioms, check_state_operator, classify_trichotomy, filters, si_state_bl_report, AlgebraClass, FilterMode,
    ResiduatedView,
};
use smorph_core::state::{subdiagonal_embedding, verify_state_morphism, StateMorphismViolation};
use smorph_core::tnorm::{grid_labels, make_chain, ChainSpec, ComponentKind};
use smorph_core::{
    cep_extension, congruence_lattice, diagonal, enumerate_morphisms, monolith, Caps, Congruence, Error,
    FiniteAlgebra, MorphismMode, StateMorphismAlgebra,
};

#[derive(Parser)]
#[command(name = "smorph", version, about = "Finite-model workbench for state-morphism algebras")]
struct Cli {
    /// Largest universe whose congruence lattice is enumerated.
    #[arg(long, global = true, default_value_t = Caps::default().lattice)]
    cap_lattice: usize,
    /// Largest ambient algebra for the congruence-extension search.
    #[arg(long, global = true, default_value_t = Caps::default().search)]
    cap_search: usize,
    /// Print Mal'cev chains behind congruence claims.
    #[arg(long, global = true)]
    witnesses: bool,
    /// Worker threads for `verify` (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of the declared class, and the tau row if present.
    Check {
        file: PathBuf,
        /// Check this class instead of the declared one.
        #[arg(long)]
        class: Option<String>,
    },
    /// List the congruence lattice and its covering relation.
    Conlat {
        file: PathBuf,
        /// Ignore the tau row.
        #[arg(long)]
        base: bool,
    },
    /// Decide subdirect irreducibility and print the monolith.
    Si {
        file: PathBuf,
        #[arg(long)]
        base: bool,
    },
    /// Embed a subdirectly irreducible state-morphism algebra into a diagonal algebra.
    EmbedDiagonal {
        file: PathBuf,
        /// Where to write the target algebra file (default: stdout).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Classify a state-morphism BL-algebra into the three SI cases.
    ClassifyBl { file: PathBuf },
    /// List filters of a residuated algebra.
    Filters {
        file: PathBuf,
        #[arg(long)]
        maximal: bool,
        /// Only filters closed under the tau row.
        #[arg(long)]
        tau: bool,
    },
    /// Emit an algebra file for a finite t-norm chain.
    GenChain {
        /// lukasiewicz, goedel, product or sum.
        #[arg(long)]
        kind: String,
        /// Grid steps; the chain has steps + 1 elements. Ignored for sums.
        #[arg(long, default_value_t = 1)]
        steps: usize,
        /// Ordinal-sum components such as `L2,G1` (Łukasiewicz 2 steps, Gödel 1 step).
        #[arg(long)]
        components: Option<String>,
        #[arg(long)]
        name: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Enumerate idempotent endomorphisms.
    Endos {
        file: PathBuf,
        /// All endomorphisms, not only idempotent ones.
        #[arg(long)]
        all: bool,
    },
    /// Extend congruences of a subalgebra to the whole algebra.
    Cep {
        file: PathBuf,
        /// Generators of the subalgebra, e.g. `0,2`.
        #[arg(long)]
        sub: String,
        /// One congruence of the subalgebra as blocks, e.g. `0,1|2` (default: all).
        #[arg(long)]
        theta: Option<String>,
    },
    /// Run the verification suite over a corpus directory.
    Verify {
        /// Corpus directory (default: the bundled corpus).
        dir: Option<PathBuf>,
        /// Only run these checks (comma separated).
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<String>>,
        /// Write each failing instance with its witness here.
        #[arg(long)]
        counterexamples: Option<PathBuf>,
    },
    /// Write the bundled corpus files.
    #[command(hide = true)]
    BundleCorpus { dir: PathBuf },
}

/// Why a command stopped.
enum Failure {
    Input(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<CorpusError> for Failure {
    fn from(e: CorpusError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

struct Ctx {
    caps: Caps,
    witnesses: bool,
    jobs: usize,
    format: Format,
}

impl Ctx {
    fn emit(&self, results: &[CheckResult]) -> bool {
        for r in results {
            match self.format {
                Format::Machine => outln!("{r}"),
                Format::Text => {
                    let status = match r.status {
                        Status::Pass => "PASS",
                        Status::Fail => "FAIL",
                        Status::CapExceeded => "CAP",
                    };
                    outln!("{:<26} {:<24} {status}  {}", r.check, r.instance, r.detail.join(" "));
                }
            }
        }
        results.iter().all(|r| r.passed())
    }
}

fn result(check: &'static str, instance: &str, pass: bool, detail: Vec<String>) -> CheckResult {
    CheckResult {
        check,
        instance: instance.to_string(),
        status: if pass { Status::Pass } else { Status::Fail },
        detail,
    }
}

fn state_of(doc: &AlgebraDocument) -> Result<StateMorphismAlgebra, Failure> {
    match doc.state_morphism() {
        None => Err(Failure::Input(format!("{} has no tau row", doc.name))),
        Some(r) => Ok(r?),
    }
}

/// The algebra a structural command works on: the τ-expansion when a tau
/// row is present, unless `base` is set.
fn working_algebra(doc: &AlgebraDocument, base: bool) -> Result<(FiniteAlgebra, &'static str), Failure> {
    if base || doc.tau.is_none() {
        return Ok((doc.algebra.clone(), "base"));
    }
    Ok((state_of(doc)?.expansion().clone(), "expansion"))
}

fn check(ctx: &Ctx, doc: &AlgebraDocument, class: Option<String>) -> Outcome {
    let class = match class {
        Some(c) => Some(AlgebraClass::parse(&c).ok_or_else(|| Failure::Input(format!("unknown class `{c}`")))?),
        None => doc.declared(),
    };
    let mut out = Vec::new();
    if let Some(class) = class {
        let v = check_axioms(&doc.algebra, class)?;
        let mut d = vec![format!("class={class}")];
        if let Some(viol) = &v.violation {
            d.push(format!("axiom={}", viol.axiom));
            d.push(format!("args={}", list(&viol.witness)));
        }
        out.push(result("axioms", &doc.name, v.holds(), d));
    }
    if let Some(tau) = &doc.tau {
        let (ok, d) = match verify_state_morphism(&doc.algebra, tau)? {
            None => (true, vec![format!("tau={}", list(tau))]),
            Some(StateMorphismViolation::Homomorphism { symbol, args }) => (
                false,
                vec!["violation=homomorphism".into(), format!("symbol={symbol}"), format!("args={}", list(&args))],
            ),
            Some(StateMorphismViolation::Idempotence { element }) => {
                (false, vec!["violation=idempotence".into(), format!("element={element}")])
            }
        };
        out.push(result("state-morphism", &doc.name, ok, d));
        if let Ok(v) = ResiduatedView::new(&doc.algebra) {
            let r = check_state_operator(&v, tau)?;
            let mut d: Vec<String> = r
                .holds
                .iter()
                .enumerate()
                .map(|(i, h)| format!("axiom{}={h}", i + 1))
                .collect();
            if let Some((axiom, w)) = &r.violation {
                d.push(format!("first-failure={axiom}"));
                d.push(format!("args={}", list(w)));
            }
            // a state-morphism that fails here is reported by the line above
            out.push(result("state-operator", &doc.name, r.is_state_operator() || !ok, d));
        }
    }
    if out.is_empty() {
        return Err(Failure::Input(format!("{}: no class declared and no tau row; use --class", doc.name)));
    }
    Ok(ctx.emit(&out))
}

fn covers(lattice: &[Congruence]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, x) in lattice.iter().enumerate() {
        for (j, y) in lattice.iter().enumerate() {
            if i != j && x.le(y) {
                let between = lattice
                    .iter()
                    .enumerate()
                    .any(|(k, z)| k != i && k != j && x.le(z) && z.le(y));
                if !between {
                    out.push((i, j));
                }
            }
        }
    }
    out
}

fn conlat(ctx: &Ctx, doc: &AlgebraDocument, base: bool) -> Outcome {
    let (alg, which) = working_algebra(doc, base)?;
    let lattice = congruence_lattice(&alg, &ctx.caps)?;
    let cov = covers(&lattice);
    match ctx.format {
        Format::Machine => {
            for (i, c) in lattice.iter().enumerate() {
                outln!("congruence {i} {}", blocks(c));
            }
            for (i, j) in cov {
                outln!("cover {i} {j}");
            }
        }
        Format::Text => {
            outln!("{} ({which}): {} congruences", doc.name, lattice.len());
            for (i, c) in lattice.iter().enumerate() {
                let named: Vec<String> = c
                    .blocks()
                    .iter()
                    .map(|b| format!("{{{}}}", b.iter().map(|&x| doc.label(x)).collect::<Vec<_>>().join(",")))
                    .collect();
                outln!("{i:>4}  {}", named.join(""));
            }
            outln!("covers:");
            for (i, j) in cov {
                outln!("{i:>4} < {j}");
            }
        }
    }
    Ok(true)
}

fn si(ctx: &Ctx, doc: &AlgebraDocument, base: bool) -> Outcome {
    let (alg, which) = working_algebra(doc, base)?;
    let m = monolith(&alg)?;
    let mut d = vec![format!("algebra={which}")];
    match &m {
        Some(mono) => d.push(format!("monolith={}", blocks(mono))),
        None => d.push("monolith=none".into()),
    }
    let ok = m.is_some();
    ctx.emit(&[result("si", &doc.name, ok, d)]);
    if ctx.witnesses {
        if let Some(mono) = &m {
            // the monolith is Θ(c, d) for any of its pairs, and every Θ(a, b)
            // contains (c, d)
            let (c, dd) = mono.pairs()[0];
            let n = alg.size();
            for a in 0..n {
                for b in a + 1..n {
                    let traced = generated_congruence_traced(&alg, &[(a, b)])?;
                    let w = traced.witness(&alg, c, dd)?;
                    outln!("witness ({c},{dd}) from ({a},{b}): {} steps", w.steps.len());
                    for s in &w.steps {
                        outln!(
                            "  {} ~ {}  via {} with parameters [{}]",
                            s.endpoints.0,
                            s.endpoints.1,
                            s.term,
                            list(&s.parameters)
                        );
                    }
                }
            }
        }
    }
    Ok(ok)
}

fn embed_diagonal(ctx: &Ctx, doc: &AlgebraDocument, output: Option<PathBuf>) -> Outcome {
    let s = state_of(doc)?;
    let cert = subdiagonal_embedding(&s, &ctx.caps)?;
    let c = cert.checks;
    let d = vec![
        format!("target-size={}", cert.target.size()),
        format!("theta-star={}", blocks(&cert.theta_star)),
        format!("embedding={}", list(cert.embedding.map())),
        format!("injective={}", c.injective),
        format!("homomorphic={}", c.homomorphic),
        format!("tau-commuting={}", c.tau_commuting),
        format!("target-si={}", c.target_si),
    ];
    let ok = ctx.emit(&[result("subdiagonal-embedding", &doc.name, c.all(), d)]);
    let target = diagonal(&cert.target);
    let mut out = AlgebraDocument::new(format!("diagonal-of-{}", doc.name), target.base().clone())
        .with_tau(target.tau().to_vec())
        .with_note(format!("target of {}", doc.name));
    out.class = doc.class;
    let text = render(&out);
    match output {
        Some(path) => fs::write(path, text)?,
        None => out!("{text}"),
    }
    Ok(ok)
}

fn classify_bl(ctx: &Ctx, doc: &AlgebraDocument) -> Outcome {
    let s = state_of(doc)?;
    let r = classify_trichotomy(&s)?;
    let mut d = vec![format!("case={}", r.case)];
    d.extend(r.side_conditions.iter().map(|(n, ok)| format!("{n}={ok}")));
    if let Some(dec) = &r.decomposition {
        d.push(format!("boolean-element={}", dec.boolean_element));
        d.push(format!("a-size={}", dec.a.size()));
        d.push(format!("b-size={}", dec.b.size()));
        d.push(format!("h={}", list(dec.h.map())));
    }
    let mut lines = vec![result("trichotomy", &doc.name, r.side_conditions_hold(), d)];
    let v = ResiduatedView::new(&doc.algebra)?;
    let rep = si_state_bl_report(&v, s.tau())?;
    lines.push(result(
        "state-si-characterization",
        &doc.name,
        rep.agrees(),
        vec![
            format!("faithful={}", rep.faithful),
            format!("kernel={}", list(&rep.kernel)),
            format!("image={}", list(&rep.image)),
            format!("condition-image={}", rep.condition_image),
            format!("condition-kernel={}", rep.condition_kernel),
            format!("condition-disjunction={}", rep.condition_disjunction),
            format!("si={}", rep.is_si()),
        ],
    ));
    Ok(ctx.emit(&lines))
}

fn filters_cmd(ctx: &Ctx, doc: &AlgebraDocument, maximal: bool, tau: bool) -> Outcome {
    let v = ResiduatedView::new(&doc.algebra)?;
    let tau_row;
    let mode = if tau {
        tau_row = doc
            .tau
            .clone()
            .ok_or_else(|| Failure::Input(format!("{} has no tau row", doc.name)))?;
        FilterMode::Tau(&tau_row)
    } else if maximal {
        FilterMode::Maximal
    } else {
        FilterMode::All
    };
    let fs = filters(&v, mode);
    let fs: Vec<_> = if tau && maximal {
        let n = v.size();
        let proper: Vec<_> = fs.iter().filter(|f| f.len() < n).cloned().collect();
        proper
            .iter()
            .filter(|f| !proper.iter().any(|g| g.len() > f.len() && f.is_subset(g)))
            .cloned()
            .collect()
    } else {
        fs
    };
    for (i, f) in fs.iter().enumerate() {
        match ctx.format {
            Format::Machine => outln!("filter {i} {}", list(f.members())),
            Format::Text => {
                let names: Vec<String> = f.members().iter().map(|&x| doc.label(x)).collect();
                outln!("{i:>4}  {{{}}}", names.join(", "));
            }
        }
    }
    Ok(true)
}

fn parse_components(s: &str) -> Result<Vec<(ComponentKind, usize)>, Failure> {
    s.split(',')
        .map(|part| {
            let part = part.trim();
            let (kind, steps) = part.split_at(part.chars().next().map_or(0, char::len_utf8));
            let kind = match kind {
                "L" | "l" => ComponentKind::Lukasiewicz,
                "G" | "g" => ComponentKind::Goedel,
                _ => return Err(Failure::Input(format!("bad component `{part}`; use L<n> or G<n>"))),
            };
            let steps = steps
                .parse()
                .map_err(|_| Failure::Input(format!("bad component `{part}`; use L<n> or G<n>")))?;
            Ok((kind, steps))
        })
        .collect()
}

fn gen_chain(
    kind: &str,
    steps: usize,
    components: Option<String>,
    name: Option<String>,
    output: Option<PathBuf>,
) -> Outcome {
    let spec = match kind {
        "lukasiewicz" => ChainSpec::lukasiewicz(steps),
        "goedel" => ChainSpec::goedel(steps),
        "product" => ChainSpec::product(steps),
        "sum" => {
            let c = components.ok_or_else(|| Failure::Input("`sum` needs --components".into()))?;
            ChainSpec::ordinal_sum(parse_components(&c)?)
        }
        other => return Err(Failure::Input(format!("unknown chain kind `{other}`"))),
    };
    let alg = make_chain(&spec)?;
    let class = match kind {
        "lukasiewicz" => AlgebraClass::Mv,
        _ if spec.steps == 1 => AlgebraClass::Mv,
        _ => AlgebraClass::Bl,
    };
    let name = name.unwrap_or_else(|| format!("{kind}-{}", spec.steps));
    let doc = AlgebraDocument::new(name, alg)
        .with_names(grid_labels(spec.steps))
        .with_class(class);
    let text = render(&doc);
    match output {
        Some(path) => fs::write(path, text)?,
        None => out!("{text}"),
    }
    Ok(true)
}

fn endos(ctx: &Ctx, doc: &AlgebraDocument, all: bool) -> Outcome {
    let mode = if all {
        MorphismMode::Endomorphisms
    } else {
        MorphismMode::IdempotentEndomorphisms
    };
    let maps = enumerate_morphisms(&doc.algebra, &doc.algebra, mode)?;
    for m in &maps {
        match ctx.format {
            Format::Machine => outln!("endomorphism {}", list(m.map())),
            Format::Text => outln!("{}", m.map().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")),
        }
    }
    if ctx.format == Format::Text {
        outln!("{} maps", maps.len());
    }
    Ok(true)
}

fn parse_elements(s: &str, n: usize) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| match t.trim().parse::<usize>() {
            Ok(x) if x < n => Ok(x),
            _ => Err(Failure::Input(format!("bad element `{t}`"))),
        })
        .collect()
}

fn cep(ctx: &Ctx, doc: &AlgebraDocument, sub: &str, theta: Option<String>) -> Outcome {
    let alg = &doc.algebra;
    let gens = parse_elements(sub, alg.size())?;
    let set = alg.subuniverse_generated(&gens)?;
    let (subalg, incl) = alg.subalgebra(&set)?;
    let thetas = match theta {
        Some(t) => {
            let blocks_in: Vec<Vec<usize>> = t
                .split('|')
                .map(|b| parse_elements(b, subalg.size()))
                .collect::<Result<_, _>>()?;
            vec![Congruence::from_blocks(subalg.size(), &blocks_in)]
        }
        None => congruence_lattice(&subalg, &ctx.caps)?,
    };
    let mut lines = Vec::new();
    for th in &thetas {
        let phi = cep_extension(alg, &subalg, &incl, th, &ctx.caps)?;
        let mut d = vec![format!("subalgebra={}", list(&set)), format!("theta={}", blocks(th))];
        d.push(match &phi {
            Some(p) => format!("phi={}", blocks(p)),
            None => "phi=none".into(),
        });
        lines.push(result("cep", &doc.name, phi.is_some(), d));
    }
    Ok(ctx.emit(&lines))
}

fn verify(ctx: &Ctx, dir: Option<PathBuf>, only: Option<Vec<String>>, counterexamples: Option<PathBuf>) -> Result<i32, Failure> {
    let dir = dir.unwrap_or_else(bundled_dir);
    if let Some(ids) = &only {
        if let Some(bad) = ids.iter().find(|i| !check_ids().any(|c| c == i.as_str())) {
            return Err(Failure::Input(format!("unknown check `{bad}`")));
        }
    }
    let corpus = load_dir(&dir)?;
    if corpus.is_empty() {
        eprintln!("warning: 0 instances in {}", dir.display());
        return Ok(0);
    }
    let config = SuiteConfig {
        caps: ctx.caps,
        jobs: ctx.jobs,
        only,
    };
    let report = run_verify_suite(&corpus, &config);
    ctx.emit(&report.results);
    if let Some(out) = counterexamples {
        write_counterexamples(&out, &corpus, &report.results)?;
    }
    let failed = report.failures().count();
    if ctx.format == Format::Text {
        outln!(
            "{} instances, {} checks, {} failed",
            report.instances,
            report.results.len(),
            failed
        );
    }
    Ok(report.exit_code())
}

fn write_counterexamples(dir: &Path, corpus: &[smorph::corpus::Instance], results: &[CheckResult]) -> std::io::Result<()> {
    for r in results.iter().filter(|r| r.status == Status::Fail) {
        let Some(inst) = corpus.iter().find(|i| i.name == r.instance) else {
            continue;
        };
        fs::create_dir_all(dir)?;
        let doc = inst.doc.clone().with_note(format!("counterexample {}", r.detail.join(" "))).with_note(format!("failed check {}", r.check));
        let path = dir.join(format!("{}--{}.alg", r.check, r.instance));
        fs::write(&path, render(&doc))?;
        eprintln!("counterexample written to {}", path.display());
    }
    Ok(())
}

fn load(path: &Path) -> Result<AlgebraDocument, Failure> {
    Ok(load_file(path)?)
}

fn run(cli: Cli) -> Result<i32, Failure> {
    let ctx = Ctx {
        caps: Caps {
            lattice: cli.cap_lattice,
            search: cli.cap_search,
            ..Caps::default()
        },
        witnesses: cli.witnesses,
        jobs: cli.jobs,
        format: cli.format,
    };
    let ok = match cli.command {
        Command::Check { file, class } => check(&ctx, &load(&file)?, class)?,
        Command::Conlat { file, base } => conlat(&ctx, &load(&file)?, base)?,
        Command::Si { file, base } => si(&ctx, &load(&file)?, base)?,
        Command::EmbedDiagonal { file, output } => embed_diagonal(&ctx, &load(&file)?, output)?,
        Command::ClassifyBl { file } => classify_bl(&ctx, &load(&file)?)?,
        Command::Filters { file, maximal, tau } => filters_cmd(&ctx, &load(&file)?, maximal, tau)?,
        Command::GenChain {
            kind,
            steps,
            components,
            name,
            output,
        } => gen_chain(&kind, steps, components, name, output)?,
        Command::Endos { file, all } => endos(&ctx, &load(&file)?, all)?,
        Command::Cep { file, sub, theta } => cep(&ctx, &load(&file)?, &sub, theta)?,
        Command::Verify {
            dir,
            only,
            counterexamples,
        } => return verify(&ctx, dir, only, counterexamples),
        Command::BundleCorpus { dir } => {
            write_dir(&dir, &bundled_corpus())?;
            true
        }
    };
    Ok(if ok { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
