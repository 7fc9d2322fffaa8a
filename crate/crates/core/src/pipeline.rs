//! The two constructions of faithful completely reducible modules, and the
//! certificates that accompany them.
//!
//! [`faithful_cr_restricted`] handles restricted algebras and stays within
//! `p^{n−1}`; [`faithful_cr`] handles arbitrary algebras through a
//! p-envelope and stays within `p^{n²−1}`. Both recurse on quotients by
//! minimal ideals. Every sub-computation draws its randomness from a seed
//! derived from the caller's seed and its position in the recursion, so a
//! run is reproducible regardless of how branches are scheduled.

use std::fmt;
use std::fmt::Write as _;

use crate::corpus::CorpusEntry;
use crate::envelope::{build_envelope, EnvelopeMode};
use crate::error::{ensure, Error, Result};
use crate::field::{is_zero, Fp};
use crate::format::input_hash;
use crate::ideals::{minimal_ideal_report, MinimalIdeals};
use crate::induced::{choose_character, induced_module, DEFAULT_MAX_MODULE_DIM};
use crate::lie::LieAlgebra;
use crate::matrix::FpMatrix;
use crate::meataxe::{chop, composition_factors, derive_seed, irreducible_submodule, ChopResult};
use crate::module::{scalar_line, LieModule};
use crate::parallel::{self, Parallelism};
use crate::restricted::{adjust_p_map_on_asoc, minimal_p_ideals, MinimalPIdeals, RestrictedAlgebra};
use crate::subspace::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PipelineConfig {
    pub seed: u64,
    pub envelope_mode: EnvelopeMode,
    pub max_module_dim: usize,
    pub parallelism: Parallelism,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            seed: 1,
            envelope_mode: EnvelopeMode::Paper,
            max_module_dim: DEFAULT_MAX_MODULE_DIM,
            parallelism: Parallelism::default(),
        }
    }
}

impl PipelineConfig {
    pub fn with_seed(seed: u64) -> Self {
        PipelineConfig { seed, ..Self::default() }
    }
}

/// A module presented as a direct sum of summands, each meant to be
/// irreducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemisimpleModule {
    field: Fp,
    algdim: usize,
    summands: Vec<LieModule>,
}

impl SemisimpleModule {
    pub fn new(field: Fp, algdim: usize, summands: Vec<LieModule>) -> Self {
        assert!(summands.iter().all(|s| s.algdim() == algdim));
        SemisimpleModule { field, algdim, summands }
    }

    pub fn empty(field: Fp, algdim: usize) -> Self {
        Self::new(field, algdim, Vec::new())
    }

    /// Splits a block-diagonal module into its diagonal blocks.
    pub fn from_blocks(module: &LieModule, dims: &[usize]) -> Result<Self> {
        if dims.iter().sum::<usize>() != module.dim() {
            return Err(Error::DimensionMismatch("block sizes do not add up to the module dimension".into()));
        }
        let mut summands = Vec::with_capacity(dims.len());
        let mut start = 0;
        for &d in dims {
            let action: Vec<FpMatrix> = module.action().iter().map(|a| a.block(start, start, d, d)).collect();
            summands.push(LieModule::new(module.field(), module.algdim(), d, action));
            start += d;
        }
        let out = Self::new(module.field(), module.algdim(), summands);
        if out.module() != *module {
            return Err(Error::DimensionMismatch("module is not block diagonal for the given sizes".into()));
        }
        Ok(out)
    }

    pub fn field(&self) -> Fp {
        self.field
    }
    pub fn algdim(&self) -> usize {
        self.algdim
    }
    pub fn summands(&self) -> &[LieModule] {
        &self.summands
    }
    pub fn summand_dims(&self) -> Vec<usize> {
        self.summands.iter().map(|s| s.dim()).collect()
    }
    pub fn dim(&self) -> usize {
        self.summands.iter().map(|s| s.dim()).sum()
    }

    /// The block-diagonal module.
    pub fn module(&self) -> LieModule {
        let parts: Vec<&LieModule> = self.summands.iter().collect();
        LieModule::direct_sum(self.field, self.algdim, &parts)
    }

    fn inflate(self, projection: &FpMatrix) -> Self {
        let n = projection.cols();
        let summands = self.summands.iter().map(|s| s.inflate(projection)).collect();
        Self::new(self.field, n, summands)
    }

    fn concat(mut self, other: Self) -> Self {
        self.summands.extend(other.summands);
        self
    }
}

/// Which dimension bound a certificate is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundKind {
    /// `p^{n−1}`.
    Restricted,
    /// `p^{n²−1}`.
    General,
}

impl BoundKind {
    pub fn bound(self, p: u32, n: usize) -> u128 {
        let e = match self {
            BoundKind::Restricted => n.saturating_sub(1),
            BoundKind::General => (n * n).saturating_sub(1),
        };
        pow_sat(p, e)
    }
    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Restricted => "restricted",
            BoundKind::General => "general",
        }
    }
}

/// `p^e`, saturating at `u128::MAX`.
pub fn pow_sat(p: u32, e: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc = acc.saturating_mul(p as u128);
    }
    acc
}

/// One step of the recursion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub depth: usize,
    pub branch: &'static str,
    pub n: usize,
    pub detail: String,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "depth={} branch={} n={}", self.depth, self.branch, self.n)?;
        if !self.detail.is_empty() {
            write!(f, " {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummandRecord {
    pub dim: usize,
    /// Irreducibility witness from a fresh chop, or the reason it failed.
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub kind: BoundKind,
    pub input_hash: String,
    pub p: u32,
    pub n: usize,
    pub seed: u64,
    pub module_dim: usize,
    pub bound: u128,
    pub kernel_dim: usize,
    pub summands: Vec<SummandRecord>,
    pub trace: Vec<TraceStep>,
    pub checks: Vec<(&'static str, bool)>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect()
    }

    pub fn top_branch(&self) -> Option<&'static str> {
        self.trace.first().map(|t| t.branch)
    }

    /// Stable `key: value` serialisation.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "kind: {}", self.kind.name());
        let _ = writeln!(s, "input-sha256: {}", self.input_hash);
        let _ = writeln!(s, "p: {}", self.p);
        let _ = writeln!(s, "n: {}", self.n);
        let _ = writeln!(s, "seed: {}", self.seed);
        let _ = writeln!(s, "module-dim: {}", self.module_dim);
        let _ = writeln!(s, "bound: {}", self.bound);
        let _ = writeln!(s, "kernel-dim: {}", self.kernel_dim);
        let _ = writeln!(s, "summand-count: {}", self.summands.len());
        for (i, r) in self.summands.iter().enumerate() {
            let _ = writeln!(s, "summand-{}: dim={} witness={}", i + 1, r.dim, r.witness);
        }
        let _ = writeln!(s, "trace-steps: {}", self.trace.len());
        for (i, t) in self.trace.iter().enumerate() {
            let _ = writeln!(s, "trace-{}: {}", i + 1, t);
        }
        for (name, ok) in &self.checks {
            let _ = writeln!(s, "check-{}: {}", name, if *ok { "pass" } else { "fail" });
        }
        let _ = writeln!(s, "result: {}", if self.passed() { "pass" } else { "fail" });
        s
    }
}

/// Independently re-checks faithfulness, irreducibility of every summand
/// (with chop seeds derived from `seed`) and the dimension bound.
pub fn verify_certificate(alg: &LieAlgebra, m: &SemisimpleModule, kind: BoundKind, seed: u64) -> Certificate {
    let n = alg.dim();
    let whole = m.module();
    let law = m.algdim() == n && whole.verify(alg);
    let kernel_dim = if m.algdim() == n { whole.kernel().dim() } else { n };
    let mut summands = Vec::with_capacity(m.summands().len());
    let mut all_irreducible = true;
    for (i, s) in m.summands().iter().enumerate() {
        let witness = if s.dim() == 0 {
            all_irreducible = false;
            "zero summand".to_string()
        } else {
            match chop(s, derive_seed(seed, i as u64)) {
                Ok(ChopResult::Irreducible(w)) => w.to_string(),
                Ok(ChopResult::ProperSubmodule(sub)) => {
                    all_irreducible = false;
                    format!("reducible: invariant subspace of dim {}", sub.dim())
                }
                Err(e) => {
                    all_irreducible = false;
                    format!("undecided: {e}")
                }
            }
        };
        summands.push(SummandRecord { dim: s.dim(), witness });
    }
    let bound = kind.bound(alg.p(), n);
    Certificate {
        kind,
        input_hash: input_hash(alg, None),
        p: alg.p(),
        n,
        seed,
        module_dim: m.dim(),
        bound,
        kernel_dim,
        summands,
        trace: Vec::new(),
        checks: vec![
            ("representation-law", law),
            ("faithful", kernel_dim == 0),
            ("irreducible-summands", all_irreducible),
            ("within-bound", (m.dim() as u128) <= bound),
        ],
    }
}

type Run = (SemisimpleModule, Vec<TraceStep>);

fn base_case(f: Fp, n: usize, depth: usize) -> Run {
    let m = if n == 0 { SemisimpleModule::empty(f, 0) } else { SemisimpleModule::new(f, 1, vec![scalar_line(f)]) };
    (m, vec![TraceStep { depth, branch: "base", n, detail: String::new() }])
}

fn check_size(cfg: &PipelineConfig, dim: usize) -> Result<()> {
    if dim > cfg.max_module_dim {
        return Err(Error::ModuleTooLarge { dim: dim as u128, max: cfg.max_module_dim });
    }
    Ok(())
}

/// The minimal ideal generated inside `a` by an irreducible submodule of the
/// adjoint action restricted to `a`.
fn minimal_ideal_inside(alg: &LieAlgebra, a: &Subspace, seed: u64) -> Result<Subspace> {
    let sub = alg.adjoint_module().sub_module(a)?;
    let (s, _) = irreducible_submodule(&sub, seed)?;
    let vectors: Vec<Vec<u32>> = s.basis_vectors().iter().map(|v| a.combination(v)).collect();
    Ok(alg.span(&vectors))
}

fn restricted_rec(r: &RestrictedAlgebra, cfg: &PipelineConfig, seed: u64, depth: usize) -> Result<Run> {
    let f = r.algebra().field();
    let p = f.p();
    let n = r.dim();
    if n <= 1 {
        return Ok(base_case(f, n, depth));
    }
    let (r, _asoc) = adjust_p_map_on_asoc(r, derive_seed(seed, 1))?;
    match minimal_p_ideals(&r, derive_seed(seed, 1))? {
        MinimalPIdeals::Two(a1, a2) => {
            let run = |a: &Subspace, i: u64| -> Result<Run> {
                let (q, proj) = r.quotient(a)?;
                let (m, t) = restricted_rec(&q, cfg, derive_seed(seed, 10 + i), depth + 1)?;
                Ok((m.inflate(&proj), t))
            };
            let (x, y) = parallel::join(cfg.parallelism, || run(&a1, 0), || run(&a2, 1));
            let ((m1, t1), (m2, t2)) = (x?, y?);
            let dims = (m1.dim(), m2.dim());
            let out = m1.concat(m2);
            let half = pow_sat(p, n - 2);
            ensure(out.dim() as u128 <= 2 * half && 2 * half <= pow_sat(p, n - 1), || {
                format!("direct sum of dimension {} breaks 2 p^(n-2) <= p^(n-1) at n = {n}", out.dim())
            })?;
            check_size(cfg, out.dim())?;
            let mut trace = vec![TraceStep {
                depth,
                branch: "two-minimal-p-ideals",
                n,
                detail: format!("ideal-dims={},{} dims={},{}", a1.dim(), a2.dim(), dims.0, dims.1),
            }];
            trace.extend(t1);
            trace.extend(t2);
            Ok((out, trace))
        }
        MinimalPIdeals::Unique(a) => {
            let alg = r.algebra();
            let b = minimal_ideal_inside(alg, &a, derive_seed(seed, 2))?;
            let on_b = alg.adjoint_module().sub_module(&b)?;
            if on_b.kernel().is_zero() {
                let detail = format!("ideal-dim={} module-dim={}", a.dim(), b.dim());
                let step = TraceStep { depth, branch: "faithful-minimal-ideal", n, detail };
                return Ok((SemisimpleModule::new(f, n, vec![on_b]), vec![step]));
            }
            ensure(b == a, || "kernel on B is nonzero but B is smaller than the minimal [p]-ideal".into())?;
            ensure(alg.is_abelian_subspace(&a), || "kernel on B is nonzero but B is not abelian".into())?;
            ensure(a.basis_vectors().iter().all(|v| is_zero(&r.p_power(v))), || {
                "p-map does not vanish on the minimal [p]-ideal".into()
            })?;
            let c = choose_character(&r, &a)?;
            let ind = induced_module(&r, &a, &c, cfg.max_module_dim)?;
            let factors = composition_factors(&ind.module, derive_seed(seed, 3))?;
            let dims: Vec<String> = factors.iter().map(|fa| fa.module.dim().to_string()).collect();
            let out = SemisimpleModule::new(f, n, factors.into_iter().map(|fa| fa.module).collect());
            ensure(out.module().is_faithful(), || "sum of composition factors of the induced module is not faithful".into())?;
            let detail = format!("ideal-dim={} induced-dim={} factors={}", a.dim(), ind.module.dim(), dims.join(","));
            Ok((out, vec![TraceStep { depth, branch: "induced", n, detail }]))
        }
    }
}

fn general_rec(alg: &LieAlgebra, cfg: &PipelineConfig, seed: u64, depth: usize) -> Result<Run> {
    let f = alg.field();
    let p = f.p();
    let n = alg.dim();
    if n <= 1 {
        return Ok(base_case(f, n, depth));
    }
    let report = minimal_ideal_report(alg, derive_seed(seed, 1))?;
    match report.witnesses {
        MinimalIdeals::Two(a1, a2) => {
            let run = |a: &Subspace, i: u64| -> Result<Run> {
                let (q, proj) = alg.quotient_algebra(a)?;
                let (m, t) = general_rec(&q, cfg, derive_seed(seed, 10 + i), depth + 1)?;
                Ok((m.inflate(&proj), t))
            };
            let (x, y) = parallel::join(cfg.parallelism, || run(&a1, 0), || run(&a2, 1));
            let ((m1, t1), (m2, t2)) = (x?, y?);
            let dims = (m1.dim(), m2.dim());
            let out = m1.concat(m2);
            let half = pow_sat(p, ((n - 1) * (n - 1)).saturating_sub(1));
            ensure(out.dim() as u128 <= 2 * half && 2 * half <= pow_sat(p, n * n - 1), || {
                format!("direct sum of dimension {} breaks 2 p^((n-1)^2-1) <= p^(n^2-1) at n = {n}", out.dim())
            })?;
            check_size(cfg, out.dim())?;
            let detail = format!("ideal-dims={},{} dims={},{}", a1.dim(), a2.dim(), dims.0, dims.1);
            let mut trace = vec![TraceStep { depth, branch: "two-minimal-ideals", n, detail }];
            trace.extend(t1);
            trace.extend(t2);
            Ok((out, trace))
        }
        MinimalIdeals::Unique(a) if !alg.is_abelian_subspace(&a) => {
            let m = alg.adjoint_module().sub_module(&a)?;
            ensure(m.is_faithful(), || "adjoint action on the non-abelian minimal ideal is not faithful".into())?;
            let detail = format!("ideal-dim={}", a.dim());
            let step = TraceStep { depth, branch: "non-abelian-unique-minimal-ideal", n, detail };
            Ok((SemisimpleModule::new(f, n, vec![m]), vec![step]))
        }
        MinimalIdeals::Unique(a) => {
            let env = build_envelope(alg, &a, cfg.envelope_mode)?;
            ensure(env.dim() <= n * n, || format!("envelope of dimension {} exceeds n^2", env.dim()))?;
            let (v, inner) = restricted_rec(&env.host, cfg, derive_seed(seed, 4), depth + 1)?;
            let a_host = env.abelian_ideal.basis_vectors();
            let v0 = v
                .summands()
                .iter()
                .find(|s| a_host.iter().any(|x| !s.act(x).is_zero()))
                .ok_or_else(|| Error::Construction("the ideal acts trivially on every summand".into()))?;
            let l_basis: Vec<Vec<u32>> = (0..n).map(|i| env.embedding.col(i)).collect();
            let restricted = v0.restrict(&l_basis);
            let (s, _) = irreducible_submodule(&restricted, derive_seed(seed, 5))?;
            let v1 = restricted.sub_module(&s)?;
            ensure(v1.is_faithful(), || "irreducible submodule of the restricted summand is not faithful".into())?;
            let detail = format!(
                "ideal-dim={} envelope-dim={} host-module-dim={} summand-dim={} module-dim={}",
                a.dim(),
                env.dim(),
                v.dim(),
                v0.dim(),
                v1.dim()
            );
            let mut trace = vec![TraceStep { depth, branch: "abelian-unique-minimal-ideal", n, detail }];
            trace.extend(inner);
            Ok((SemisimpleModule::new(f, n, vec![v1]), trace))
        }
    }
}

/// Faithful completely reducible module of dimension at most `p^{n−1}` for a
/// restricted algebra.
pub fn faithful_cr_restricted(r: &RestrictedAlgebra, cfg: &PipelineConfig) -> Result<(SemisimpleModule, Certificate)> {
    r.check_p_map()?;
    let (m, trace) = restricted_rec(r, cfg, cfg.seed, 0)?;
    let mut cert = verify_certificate(r.algebra(), &m, BoundKind::Restricted, derive_seed(cfg.seed, 0xCE27));
    cert.input_hash = input_hash(r.algebra(), Some(r.pmap()));
    cert.seed = cfg.seed;
    cert.trace = trace;
    Ok((m, cert))
}

/// Faithful completely reducible module of dimension at most `p^{n²−1}`.
pub fn faithful_cr(alg: &LieAlgebra, cfg: &PipelineConfig) -> Result<(SemisimpleModule, Certificate)> {
    alg.check_jacobi()?;
    let (m, trace) = general_rec(alg, cfg, cfg.seed, 0)?;
    let mut cert = verify_certificate(alg, &m, BoundKind::General, derive_seed(cfg.seed, 0xCE27));
    cert.seed = cfg.seed;
    cert.trace = trace;
    Ok((m, cert))
}

/// Outcome of running both constructions on one corpus entry.
#[derive(Clone, Debug)]
pub struct CorpusRun {
    pub name: String,
    pub n: usize,
    pub p: u32,
    pub general: Result<(SemisimpleModule, Certificate)>,
    pub restricted: Option<Result<(SemisimpleModule, Certificate)>>,
}

impl CorpusRun {
    pub fn passed(&self) -> bool {
        let ok = |r: &Result<(SemisimpleModule, Certificate)>| r.as_ref().map(|(_, c)| c.passed()).unwrap_or(false);
        ok(&self.general) && self.restricted.as_ref().map(ok).unwrap_or(true)
    }
}

/// Runs every entry with the configured seed.
pub fn run_corpus(entries: &[CorpusEntry], cfg: &PipelineConfig) -> Vec<CorpusRun> {
    parallel::map(cfg.parallelism, entries, |e| CorpusRun {
        name: e.name.clone(),
        n: e.algebra.dim(),
        p: e.algebra.p(),
        general: faithful_cr(&e.algebra, cfg),
        restricted: e.restricted.as_ref().map(|r| faithful_cr_restricted(r, cfg)),
    })
}

/// Fixed-width table of corpus results.
pub fn corpus_table(runs: &[CorpusRun]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<8} {:>2} {:>2} {:>11} {:>12} {:>14} {:>12}  {:<34} {}",
        "algebra", "n", "p", "general-dim", "general-bnd", "restricted-dim", "restr-bnd", "top-branch", "status"
    );
    for r in runs {
        let (gdim, branch) = match &r.general {
            Ok((m, c)) => (m.dim().to_string(), c.top_branch().unwrap_or("-").to_string()),
            Err(e) => ("error".to_string(), e.to_string()),
        };
        let rdim = match &r.restricted {
            None => "-".to_string(),
            Some(Ok((m, _))) => m.dim().to_string(),
            Some(Err(_)) => "error".to_string(),
        };
        let rb = if r.restricted.is_some() { BoundKind::Restricted.bound(r.p, r.n).to_string() } else { "-".into() };
        let _ = writeln!(
            s,
            "{:<8} {:>2} {:>2} {:>11} {:>12} {:>14} {:>12}  {:<34} {}",
            r.name,
            r.n,
            r.p,
            gdim,
            BoundKind::General.bound(r.p, r.n),
            rdim,
            rb,
            branch,
            if r.passed() { "pass" } else { "FAIL" }
        );
    }
    s
}
