//! Command-line surface: subcommands, reports and the algebra file format.
//!
//! Every report ends with a machine-readable block of `key: value` lines
//! between `---summary---` fences. Failures print one line
//! `error[kind]: message` on stderr. Exit codes: 0 success, 1 validation
//! or computation failure, 2 usage error or exceeded budget.

mod file;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::env::{
    iso_build, iso_build_with_cap, iso_verify, mu_from_chi, reduced_algebra, reduced_dim, EnvError,
};
use crate::index::{format_form, index_sampled, index_symbolic, kw1_predicted};
use crate::liealg::{
    family_build, is_restrictable, restricted_closure, FamilyMember, LieAlgebra, LieError,
};
use crate::repn::{chop, m_sweep, CharacterSet, ModuleAction, RepnError};

pub use file::{emit_algebra_file, parse_algebra_file, AlgebraFileError};

const DEFAULT_BUDGET: u128 = 4096;

#[derive(Parser, Debug)]
#[command(
    name = "modlie",
    version,
    about = "Exact computations with modular Lie algebras"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Load and validate an algebra file.
    Check { file: PathBuf },
    /// Build a member of the solvable family.
    Family {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = parse_which)]
        which: FamilyMember,
        /// Write the algebra file here.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Exact index, optionally with a sampled upper bound.
    Index {
        file: PathBuf,
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 1)]
        ext: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Restricted closure of ad(L) in gl(L).
    Closure { file: PathBuf },
    /// Whether ad(e)^p lies in ad(L) for every basis element.
    Restrictable { file: PathBuf },
    /// Verify the enveloping-algebra map U(L') -> U(L).
    IsoCheck {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Composition factors of the reduced enveloping algebra at a character.
    Chop {
        file: PathBuf,
        /// `name=value;...`, `ones` or `zeros`.
        #[arg(long)]
        character: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Full pipeline: indexes, restrictability, the enveloping-algebra map
    /// and the simple-dimension sweep.
    Kw1 {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random characters over the extension field.
        #[arg(long, default_value_t = 50)]
        random: usize,
        /// Absolute degree of the field for random characters.
        #[arg(long, default_value_t = 4)]
        ext: usize,
    },
}

fn parse_which(s: &str) -> Result<FamilyMember, String> {
    s.parse::<FamilyMember>()
        .map_err(|_| format!("expected one of A, A_D, L, Lprime; got {s:?}"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            kind: "usage",
            message: message.into(),
        }
    }

    fn compute(message: impl Into<String>) -> Failure {
        Failure {
            code: 1,
            kind: "compute",
            message: message.into(),
        }
    }
}

impl From<AlgebraFileError> for Failure {
    fn from(e: AlgebraFileError) -> Failure {
        let kind = match e {
            AlgebraFileError::Parse { .. } => "parse",
            AlgebraFileError::Validation(_) => "validation",
        };
        Failure {
            code: 1,
            kind,
            message: e.to_string(),
        }
    }
}

impl From<LieError> for Failure {
    fn from(e: LieError) -> Failure {
        match e {
            LieError::BadK(_) | LieError::Field(_) => Failure::usage(e.to_string()),
            _ => Failure {
                code: 1,
                kind: "validation",
                message: e.to_string(),
            },
        }
    }
}

impl From<EnvError> for Failure {
    fn from(e: EnvError) -> Failure {
        match e {
            EnvError::Lie(l) => l.into(),
            other => Failure::compute(other.to_string()),
        }
    }
}

impl From<RepnError> for Failure {
    fn from(e: RepnError) -> Failure {
        match e {
            RepnError::BudgetExceeded { dim, budget } => Failure {
                code: 2,
                kind: "budget",
                message: format!(
                    "BudgetExceeded: size {dim} is not below the budget {budget}; lower p or k, or pass a larger --budget"
                ),
            },
            RepnError::RetryExhausted(_) => Failure { code: 1, kind: "retry", message: e.to_string() },
            RepnError::Env(env) => env.into(),
            other => Failure::compute(other.to_string()),
        }
    }
}

/// Human section followed by the fenced summary.
struct Report {
    human: String,
    summary: Vec<(&'static str, String)>,
}

impl Report {
    fn new() -> Report {
        Report {
            human: String::new(),
            summary: Vec::new(),
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.human.push_str(s.as_ref());
        self.human.push('\n');
    }

    fn key(&mut self, k: &'static str, v: impl ToString) {
        self.summary.push((k, v.to_string()));
    }

    fn render(&self) -> String {
        let mut s = self.human.clone();
        s.push_str("---summary---\n");
        for (k, v) in &self.summary {
            writeln!(s, "{k}: {v}").unwrap();
        }
        s.push_str("---summary---\n");
        s
    }
}

/// Runs one invocation. `argv[0]` is the program name.
pub fn run_command<I, T>(argv: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return CommandOutput {
                    code: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                };
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            return fail(Failure::usage(first.trim_start_matches("error: ")));
        }
    };
    match dispatch(cli.cmd) {
        Ok(r) => CommandOutput {
            code: 0,
            stdout: r.render(),
            stderr: String::new(),
        },
        Err(f) => fail(f),
    }
}

fn fail(f: Failure) -> CommandOutput {
    let message = f.message.split_whitespace().collect::<Vec<_>>().join(" ");
    CommandOutput {
        code: f.code,
        stdout: String::new(),
        stderr: format!("error[{}]: {}\n", f.kind, message),
    }
}

fn dispatch(cmd: Cmd) -> Result<Report, Failure> {
    match cmd {
        Cmd::Check { file } => check(&file),
        Cmd::Family {
            p,
            m,
            k,
            which,
            emit,
        } => family(p, m, k, which, emit.as_deref()),
        Cmd::Index {
            file,
            sample,
            ext,
            seed,
        } => index(&file, sample, ext, seed),
        Cmd::Closure { file } => closure(&file),
        Cmd::Restrictable { file } => restrictable(&file),
        Cmd::IsoCheck { p, m, k, cap } => iso_check(p, m, k, cap),
        Cmd::Chop {
            file,
            character,
            seed,
            budget,
        } => chop_cmd(&file, &character, seed, budget),
        Cmd::Kw1 {
            p,
            m,
            k,
            budget,
            seed,
            random,
            ext,
        } => kw1(p, m, k, budget, seed, random, ext),
    }
}

fn load(path: &Path) -> Result<LieAlgebra, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        code: 2,
        kind: "io",
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    Ok(parse_algebra_file(&text)?)
}

fn describe(r: &mut Report, alg: &LieAlgebra) {
    r.line(format!("field: {}", alg.field()));
    r.line(format!("basis: {}", alg.names().join(", ")));
    for (i, j, coords) in alg.nonzero_brackets() {
        r.line(format!(
            "  [{}, {}] = {}",
            alg.name(i),
            alg.name(j),
            alg.format_element(&coords)
        ));
    }
}

fn check(path: &Path) -> Result<Report, Failure> {
    let alg = load(path)?;
    let mut r = Report::new();
    describe(&mut r, &alg);
    r.line("antisymmetry and Jacobi: ok");
    r.key("dim", alg.dim());
    r.key("field_order", alg.field().order());
    r.key("valid", true);
    Ok(r)
}

fn family(
    p: u64,
    m: usize,
    k: usize,
    which: FamilyMember,
    emit: Option<&Path>,
) -> Result<Report, Failure> {
    let alg = family_build(p, m, k, which)?;
    let mut r = Report::new();
    describe(&mut r, &alg);
    if let Some(path) = emit {
        std::fs::write(path, emit_algebra_file(&alg)).map_err(|e| Failure {
            code: 1,
            kind: "io",
            message: format!("cannot write {}: {e}", path.display()),
        })?;
        r.line(format!("written to {}", path.display()));
    }
    r.key("which", which);
    r.key("p", p);
    r.key("m", m);
    r.key("k", k);
    r.key("dim", alg.dim());
    Ok(r)
}

fn index(path: &Path, sample: Option<usize>, ext: usize, seed: u64) -> Result<Report, Failure> {
    let alg = load(path)?;
    let rep = index_symbolic(&alg);
    let mut r = Report::new();
    r.human.push_str(&rep.to_text(&alg));
    r.key("dim", rep.dim);
    r.key("ind", rep.index);
    r.key("kw1_exponent", rep.kw1_exponent);
    if let Some(trials) = sample {
        if trials == 0 {
            return Err(Failure::usage("--sample must be positive"));
        }
        let s = index_sampled(&alg, trials, ext, seed);
        let big = alg.over(&s.field).map_err(Failure::from)?;
        r.line(format!(
            "sampled over {}: {} trials, bound {}",
            s.field, trials, s.bound
        ));
        r.line(format!(
            "sampled witness: {}",
            format_form(&big, &s.witness_chi)
        ));
        r.key("sampled_bound", s.bound);
        r.key("seed", seed);
    }
    Ok(r)
}

fn closure(path: &Path) -> Result<Report, Failure> {
    let alg = load(path)?;
    let c = restricted_closure(&alg);
    let mut r = Report::new();
    r.line(format!("dim ad(L): {}", c.ad_dim()));
    r.line(format!(
        "dim closure: {} after {} rounds",
        c.dim(),
        c.rounds()
    ));
    let ok = c.verify();
    r.line(format!(
        "closed under brackets and p-th powers: {}",
        if ok { "yes" } else { "NO" }
    ));
    r.key("dim", alg.dim());
    r.key("ad_dim", c.ad_dim());
    r.key("closure_dim", c.dim());
    r.key("rounds", c.rounds());
    r.key("verified", ok);
    if !ok {
        return Err(Failure::compute("closure failed verification"));
    }
    Ok(r)
}

fn restrictable(path: &Path) -> Result<Report, Failure> {
    let alg = load(path)?;
    let res = is_restrictable(&alg);
    let mut r = Report::new();
    let witness = match &res.witness {
        Some((i, _)) => {
            r.line(format!(
                "ad({})^{} is not an inner derivation",
                alg.name(*i),
                alg.field().characteristic()
            ));
            alg.name(*i).to_string()
        }
        None => {
            r.line("ad(e)^p is inner for every basis element");
            "none".into()
        }
    };
    r.key("dim", alg.dim());
    r.key("restrictable", res.restrictable);
    r.key("witness", witness);
    Ok(r)
}

fn iso_check(p: u64, m: usize, k: usize, cap: Option<usize>) -> Result<Report, Failure> {
    let w = match cap {
        Some(c) => iso_build_with_cap(p, m, k, c)?,
        None => iso_build(p, m, k)?,
    };
    let rep = iso_verify(&w)?;
    let mut r = Report::new();
    for (i, img) in w.images().iter().enumerate() {
        r.line(format!("phi({}) = {}", w.source().name(i), img));
    }
    for l in &rep.log {
        r.line(l);
    }
    r.key("p", p);
    r.key("k", k);
    r.key("cap", w.cap());
    r.key("pairs_checked", rep.pairs_checked);
    r.key("bracket_failures", rep.bracket_failures.len());
    r.key("verdict", rep.verdict);
    if !rep.passed() {
        return Err(Failure {
            code: 1,
            kind: "validation",
            message: format!("iso check: {}", rep.verdict),
        });
    }
    Ok(r)
}

/// `ones`, `zeros`, or `name=value;...` with unnamed coordinates zero.
fn parse_character(alg: &LieAlgebra, spec: &str) -> Result<Vec<u32>, Failure> {
    let n = alg.dim();
    match spec.trim() {
        "ones" => return Ok(vec![1; n]),
        "zeros" | "0" => return Ok(vec![0; n]),
        _ => {}
    }
    let mut chi = vec![0; n];
    for part in spec.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, value) = part.split_once('=').ok_or_else(|| {
            Failure::usage(format!("--character: expected name=value, got {part:?}"))
        })?;
        let i = alg.index_of(name.trim()).ok_or_else(|| {
            Failure::usage(format!("--character: unknown basis name {:?}", name.trim()))
        })?;
        chi[i] = alg
            .field()
            .parse(value)
            .map_err(|e| Failure::usage(format!("--character: {e}")))?;
    }
    Ok(chi)
}

fn chop_cmd(path: &Path, spec: &str, seed: u64, budget: u128) -> Result<Report, Failure> {
    let alg = load(path)?;
    let chi = parse_character(&alg, spec)?;
    let n = reduced_dim(&alg);
    if n >= budget {
        return Err(RepnError::BudgetExceeded { dim: n, budget }.into());
    }
    let mu = mu_from_chi(&alg, &chi)?;
    let ra = reduced_algebra(&alg, &mu)?;
    let res = chop(&ModuleAction::regular(&ra), seed)?;
    let mut r = Report::new();
    r.line(format!("character: {}", format_form(&alg, &chi)));
    r.line(format!("reduced algebra dimension: {}", ra.dim()));
    r.line(format!(
        "{:>5} {:>5} {:>3} {:>7}  spin",
        "dim", "mult", "e", "abs_dim"
    ));
    for f in &res.factors {
        r.line(format!(
            "{:>5} {:>5} {:>3} {:>7}  {}/{}",
            f.dim, f.multiplicity, f.endo_degree, f.abs_dim, f.spin_passed, f.spin_tried
        ));
    }
    r.key("dim", alg.dim());
    r.key("reduced_dim", ra.dim());
    r.key("character", format_form(&alg, &chi));
    r.key("factors", res.summary());
    r.key("max_abs_simple_dim", res.max_abs_dim());
    r.key(
        "accounting",
        if res.accounting_ok() { "ok" } else { "FAILED" },
    );
    r.key("certified", res.all_certified());
    r.key("seed", seed);
    if !res.accounting_ok() || !res.all_certified() {
        return Err(Failure::compute(format!(
            "chop self-check failed: {}",
            res.summary()
        )));
    }
    Ok(r)
}

fn kw1(
    p: u64,
    m: usize,
    k: usize,
    budget: u128,
    seed: u64,
    random: usize,
    ext: usize,
) -> Result<Report, Failure> {
    let l = family_build(p, m, k, FamilyMember::L)?;
    let lp = family_build(p, m, k, FamilyMember::Lprime)?;
    let sets = [
        CharacterSet::AllOverBase,
        CharacterSet::Random {
            count: random,
            degree: ext.max(1),
        },
    ];
    let sweep = m_sweep(p, m, k, FamilyMember::L, &sets, seed, budget)?;
    let ind = index_symbolic(&l);
    let ind_prime = index_symbolic(&lp);
    let exponent = kw1_predicted(&l).map_err(|e| Failure::compute(e.to_string()))?;
    let restr = is_restrictable(&l);
    let restr_prime = is_restrictable(&lp);
    let iso = iso_verify(&iso_build(p, m, k)?)?;

    let ones = format_form(&l, &vec![1; l.dim()]);
    let base_order = l.field().order();
    let ones_row = sweep
        .rows
        .iter()
        .find(|row| row.field_order == base_order && row.chi == ones);
    let p2 = (p * p) as usize;

    let mut r = Report::new();
    r.line(format!("L  = {}", l.names().join(", ")));
    r.line(format!("L' = {}", lp.names().join(", ")));
    r.line(format!(
        "ind L = {}, ind L' = {}, dim = {}",
        ind.index,
        ind_prime.index,
        l.dim()
    ));
    r.line(format!(
        "L restrictable: {}{}",
        restr.restrictable,
        restr
            .witness
            .as_ref()
            .map_or(String::new(), |(i, _)| format!(
                " (ad({})^p not inner)",
                l.name(*i)
            ))
    ));
    r.line(format!("L' restrictable: {}", restr_prime.restrictable));
    r.line(format!(
        "U(L') -> U(L): {} ({} pairs)",
        iso.verdict, iso.pairs_checked
    ));
    r.line(format!("reduced algebra dimension: {}", sweep.reduced_dim));
    r.line("");
    r.human.push_str(&sweep.table());
    r.line("");
    let observed = sweep.max_abs_dim();
    r.line(format!(
        "KW1 predicts p^{} = {}; observed max absolute simple dimension {}",
        exponent,
        sweep.predicted(),
        observed
    ));

    r.key("p", p);
    r.key("m", m);
    r.key("k", k);
    r.key("dim", l.dim());
    r.key("ind", ind.index);
    r.key("ind_prime", ind_prime.index);
    r.key("kw1_exponent", exponent);
    r.key("kw1_predicted", sweep.predicted());
    r.key("restrictable", restr.restrictable);
    r.key("restrictable_prime", restr_prime.restrictable);
    r.key("iso", iso.verdict);
    r.key("reduced_dim", sweep.reduced_dim);
    r.key("characters", sweep.rows.len());
    r.key("max_abs_simple_dim", observed);
    r.key("divisible_by_p", sweep.divisible_by_p());
    r.key("divisible_by_p2", sweep.divisible_by_p2());
    match ones_row {
        Some(row) => {
            r.key("all_ones_factors", &row.factors);
            r.key(
                "all_ones_divisible_by_p2",
                row.abs_dims.iter().all(|d| d % p2 == 0),
            );
        }
        None => r.key("all_ones_factors", "not swept"),
    }
    r.key(
        "accounting",
        if sweep.all_accounted() {
            "ok"
        } else {
            "FAILED"
        },
    );
    r.key("certified", sweep.all_certified());
    r.key("verdict", sweep.verdict());
    r.key("seed", seed);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn character_specs() {
        let l = family_build(3, 1, 3, FamilyMember::L).unwrap();
        assert_eq!(parse_character(&l, "ones").unwrap(), vec![1; 5]);
        assert_eq!(
            parse_character(&l, "x2=2; D=1").unwrap(),
            vec![0, 2, 0, 0, 1]
        );
        assert!(parse_character(&l, "y=1").is_err());
        assert!(parse_character(&l, "x1").is_err());
    }
}
