use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use modlie::corpus::{self, CorpusEntry};
use modlie::envelope::{build_envelope, verify_envelope, Envelope, EnvelopeMode};
use modlie::format::{emit_lie, emit_mod, parse_lie, parse_mod, LieFile};
use modlie::ideals::{abelian_socle, minimal_ideal_report, MinimalIdeals};
use modlie::induced::DEFAULT_MAX_MODULE_DIM;
use modlie::pipeline::{
    corpus_table, faithful_cr, faithful_cr_restricted, run_corpus, verify_certificate, BoundKind, Certificate,
    PipelineConfig, SemisimpleModule,
};
use modlie::restricted::{solve_restriction, RestrictedAlgebra};
use modlie::{LieAlgebra, Parallelism, Subspace};

#[derive(Parser)]
#[command(name = "modlie", version, about = "Faithful completely reducible modules for Lie algebras over F_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct RunOpts {
    /// Seed for every randomised step.
    #[arg(long, env = "MODLIE_SEED", default_value_t = 1)]
    seed: u64,
    /// Abort instead of building a module larger than this.
    #[arg(long, default_value_t = DEFAULT_MAX_MODULE_DIM)]
    max_module_dim: usize,
    /// Envelope construction used by the general pipeline.
    #[arg(long, value_enum, default_value_t = Mode::Paper)]
    mode: Mode,
    /// Run independent branches on one thread.
    #[arg(long)]
    sequential: bool,
}

impl RunOpts {
    fn config(self) -> PipelineConfig {
        PipelineConfig {
            seed: self.seed,
            envelope_mode: self.mode.into(),
            max_module_dim: self.max_module_dim,
            parallelism: if self.sequential { Parallelism::Sequential } else { Parallelism::Parallel },
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Paper,
    Compact,
}

impl From<Mode> for EnvelopeMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Paper => EnvelopeMode::Paper,
            Mode::Compact => EnvelopeMode::Compact,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Restricted,
    General,
}

#[derive(Subcommand)]
enum PmapCommand {
    /// Find a p-map and print the algebra with it.
    Solve { file: PathBuf },
    /// Check the p-map lines of a file against the restricted axioms.
    Verify { file: PathBuf },
}

#[derive(Subcommand)]
enum Command {
    /// Parse a `.lie` file and check the Jacobi identity (and the p-map, if given).
    Check { file: PathBuf },
    /// Print structural information about an algebra.
    Info {
        file: PathBuf,
        #[arg(long, env = "MODLIE_SEED", default_value_t = 1)]
        seed: u64,
    },
    /// Solve for or verify a p-map.
    Pmap {
        #[command(subcommand)]
        command: PmapCommand,
    },
    /// Build a p-envelope and print it as a `.lie` file.
    Envelope {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Paper)]
        mode: Mode,
        /// Basis of the abelian ideal, vectors separated by `;`, e.g. "0 1 0; 0 0 1".
        /// Defaults to the sum of the abelian minimal ideals.
        #[arg(long)]
        abelian_ideal: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Construct a faithful completely reducible module.
    Construct {
        kind: Construction,
        file: PathBuf,
        #[command(flatten)]
        opts: RunOpts,
        /// Where to write the `.mod` file (stdout if absent).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write the certificate (stderr if absent).
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Re-check a module file against an algebra file.
    VerifyModule {
        lie: PathBuf,
        module: PathBuf,
        #[arg(long, value_enum, default_value_t = Construction::General)]
        bound: Construction,
        #[arg(long, env = "MODLIE_SEED", default_value_t = 1)]
        seed: u64,
    },
    /// Run both constructions on the built-in corpus.
    Corpus {
        #[command(flatten)]
        opts: RunOpts,
        /// Write `.lie`, `.mod` and certificate files per entry.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

fn read_lie(path: &Path) -> Result<LieFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_lie(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_ideal(alg: &LieAlgebra, spec: &str) -> Result<Subspace> {
    let f = alg.field();
    let mut vectors = Vec::new();
    for part in spec.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let v: Vec<u32> = part
            .split_whitespace()
            .map(|t| t.parse::<i64>().map(|x| f.from_i64(x)))
            .collect::<std::result::Result<_, _>>()
            .with_context(|| format!("bad vector `{part}`"))?;
        if v.len() != alg.dim() {
            bail!("vector `{part}` has {} entries, expected {}", v.len(), alg.dim());
        }
        vectors.push(v);
    }
    Ok(alg.span(&vectors))
}

fn describe(s: &Subspace) -> String {
    if s.is_zero() {
        return "0".into();
    }
    let rows: Vec<String> =
        s.basis_vectors().iter().map(|v| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")).collect();
    format!("<{}>", rows.join("; "))
}

fn envelope_text(env: &Envelope) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# envelope mode={} dim={} bound={}", env.mode, env.dim(), env.bound());
    let _ = writeln!(s, "# abelian ideal {}", describe(&env.abelian_ideal));
    for i in 0..env.original_dim {
        let col: Vec<String> = env.embedding.col(i).iter().map(|c| c.to_string()).collect();
        let _ = writeln!(s, "# input e{} = {}", i + 1, col.join(" "));
    }
    for c in &env.chains {
        let syms: Vec<String> = c.symbols.iter().map(|i| (i + 1).to_string()).collect();
        let lambda: Vec<String> = c.lambda.iter().map(|l| l.to_string()).collect();
        let _ = writeln!(
            s,
            "# chain generator={} symbols=[{}] lambda=[{}]",
            c.generator + 1,
            syms.join(" "),
            lambda.join(" ")
        );
    }
    s.push_str(&emit_lie(env.host.algebra(), Some(env.host.pmap())));
    s
}

fn construct(kind: Construction, lf: &LieFile, cfg: &PipelineConfig) -> Result<(SemisimpleModule, Certificate)> {
    Ok(match kind {
        Construction::General => faithful_cr(&lf.algebra, cfg)?,
        Construction::Restricted => {
            let r = match lf.restricted() {
                Some(r) => r,
                None => {
                    let pm = solve_restriction(&lf.algebra)
                        .context("the file has no p-map and the algebra is not restrictable")?;
                    RestrictedAlgebra::new(lf.algebra.clone(), pm)?
                }
            };
            faithful_cr_restricted(&r, cfg)?
        }
    })
}

fn entry_lie(e: &CorpusEntry) -> String {
    emit_lie(&e.algebra, e.restricted.as_ref().map(|r| r.pmap()))
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Check { file } => {
            let lf = read_lie(&file)?;
            let r = if lf.pmap.is_some() { ", p-map verified" } else { "" };
            println!("ok: Lie algebra of dimension {} over F_{}{}", lf.algebra.dim(), lf.algebra.p(), r);
            Ok(true)
        }
        Command::Info { file, seed } => {
            let lf = read_lie(&file)?;
            let alg = &lf.algebra;
            println!("p: {}", alg.p());
            println!("dim: {}", alg.dim());
            println!("derived: {}", describe(&alg.derived()));
            println!("centre: {}", describe(&alg.centre()));
            println!("restrictable: {}", solve_restriction(alg).is_some());
            if alg.dim() > 0 {
                let rep = minimal_ideal_report(alg, seed)?;
                println!("socle: {}", describe(&rep.socle));
                println!("abelian-socle: {}", describe(&abelian_socle(alg, seed)?));
                match rep.witnesses {
                    MinimalIdeals::Unique(a) => println!("minimal-ideals: unique {}", describe(&a)),
                    MinimalIdeals::Two(a, b) => {
                        println!("minimal-ideals: at least two {} and {}", describe(&a), describe(&b))
                    }
                }
            }
            Ok(true)
        }
        Command::Pmap { command: PmapCommand::Solve { file } } => {
            let lf = read_lie(&file)?;
            match solve_restriction(&lf.algebra) {
                Some(pm) => {
                    RestrictedAlgebra::new(lf.algebra.clone(), pm.clone())?;
                    print!("{}", emit_lie(&lf.algebra, Some(&pm)));
                    Ok(true)
                }
                None => {
                    eprintln!("not restrictable: some ad(e_i)^p is not an inner derivation");
                    Ok(false)
                }
            }
        }
        Command::Pmap { command: PmapCommand::Verify { file } } => {
            let lf = read_lie(&file)?;
            if lf.pmap.is_none() {
                bail!("{} has no pmap lines", file.display());
            }
            println!("ok: p-map satisfies the restricted axioms");
            Ok(true)
        }
        Command::Envelope { file, mode, abelian_ideal, out } => {
            let lf = read_lie(&file)?;
            let alg = &lf.algebra;
            let a = match abelian_ideal {
                Some(spec) => parse_ideal(alg, &spec)?,
                None => abelian_socle(alg, 1)?,
            };
            let env = build_envelope(alg, &a, mode.into())?;
            let report = verify_envelope(&env, &[alg.full(), a.clone(), alg.derived(), alg.centre()]);
            write_or_print(out.as_deref(), &envelope_text(&env))?;
            for (name, ok) in &report.checks {
                eprintln!("check-{name}: {}", if *ok { "pass" } else { "fail" });
            }
            Ok(report.passed())
        }
        Command::Construct { kind, file, opts, out, cert } => {
            let lf = read_lie(&file)?;
            let (m, c) = construct(kind, &lf, &opts.config())?;
            write_or_print(out.as_deref(), &emit_mod(&m.module(), Some(&m.summand_dims())))?;
            match cert {
                Some(p) => fs::write(&p, c.to_text()).with_context(|| format!("writing {}", p.display()))?,
                None => eprint!("{}", c.to_text()),
            }
            if !c.passed() {
                eprintln!("failed checks: {}", c.failures().join(", "));
            }
            Ok(c.passed())
        }
        Command::VerifyModule { lie, module, bound, seed } => {
            let lf = read_lie(&lie)?;
            let text = fs::read_to_string(&module).with_context(|| format!("reading {}", module.display()))?;
            let mf = parse_mod(&text).with_context(|| format!("parsing {}", module.display()))?;
            if mf.module.algdim() != lf.algebra.dim() || mf.module.p() != lf.algebra.p() {
                bail!("module is for a different algebra (p or dimension differs)");
            }
            let dims = mf.summands.clone().unwrap_or_else(|| vec![mf.module.dim()]);
            let ss = SemisimpleModule::from_blocks(&mf.module, &dims)?;
            let kind = match bound {
                Construction::General => BoundKind::General,
                Construction::Restricted => BoundKind::Restricted,
            };
            let c = verify_certificate(&lf.algebra, &ss, kind, seed);
            print!("{}", c.to_text());
            if !c.passed() {
                eprintln!("failed checks: {}", c.failures().join(", "));
            }
            Ok(c.passed())
        }
        Command::Corpus { opts, out_dir } => {
            let entries = corpus::corpus();
            let runs = run_corpus(&entries, &opts.config());
            print!("{}", corpus_table(&runs));
            if let Some(dir) = out_dir {
                fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
                for (e, r) in entries.iter().zip(&runs) {
                    fs::write(dir.join(format!("{}.lie", e.name)), entry_lie(e))?;
                    if let Ok((m, c)) = &r.general {
                        fs::write(dir.join(format!("{}.general.mod", e.name)), emit_mod(&m.module(), Some(&m.summand_dims())))?;
                        fs::write(dir.join(format!("{}.general.cert", e.name)), c.to_text())?;
                    }
                    if let Some(Ok((m, c))) = &r.restricted {
                        fs::write(dir.join(format!("{}.restricted.mod", e.name)), emit_mod(&m.module(), Some(&m.summand_dims())))?;
                        fs::write(dir.join(format!("{}.restricted.cert", e.name)), c.to_text())?;
                    }
                }
            }
            Ok(runs.iter().all(|r| r.passed()))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
