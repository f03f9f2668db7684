use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use nijenhuis::error::Error;
use nijenhuis::exactring::{parse_polynomial, Polynomial, Scalar, VariableSpace};
use nijenhuis::extender::{
    bivector_fixture, cocycle_scalars_of, demo_names, first_term, format_triple, jacobiator_check, load_demo, parse_triples,
    pullback_check, run_demo, solve_waves, support_triples, uniform_cocycle, verify_extension_with, CheckResult, ExtensionProblem,
    ExtensionSpace, WaveOutcome, WaveSpec,
};
use nijenhuis::invariants::{hilbert_basis_zn, resonant_monomials, rewrite_in_generators, source_bivector, QuotientPresentation};
use nijenhuis::multivec::{parse_multivector, parse_multivector_inferred, Multivector};
use nijenhuis::schouten::jacobiator;

#[derive(Parser)]
#[command(name = "nijenhuis", version, about = "Exact Poisson-bracket computations on quotient embeddings")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Fit one global scale before comparing pulled-back brackets.
    #[arg(long, value_enum, default_value_t = Switch::On, global = true)]
    scale_normalize: Switch,
    /// Include wall-clock timings (reports are otherwise byte-stable).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a bivector is Poisson and, given a quotient, compatible with it.
    Verify {
        /// Bivector file, or `@name` for a shipped fixture.
        file: String,
        /// Quotient presentation fixture for the pullback check.
        #[arg(long)]
        quotient: Option<PathBuf>,
        /// Read the bivector on the Z_n extension space (n ≥ 2).
        #[arg(long)]
        zn: Option<usize>,
    },
    /// Print [π, π].
    Jacobiator {
        file: String,
        #[arg(long)]
        zn: Option<usize>,
    },
    /// Hilbert basis of V/Z_n and its ideal.
    Hilbert {
        n: usize,
        /// Factor an invariant monomial in z, zb, w, wb into generators.
        #[arg(long)]
        rewrite: Option<String>,
        /// List the ideal generators.
        #[arg(long)]
        ideal: bool,
        /// Show t- and H-degrees.
        #[arg(long)]
        degrees: bool,
    },
    /// Compare a bivector with the source bracket through the Hilbert map.
    Pullback {
        file: String,
        #[arg(long)]
        quotient: Option<PathBuf>,
        #[arg(long)]
        zn: Option<usize>,
    },
    /// Resonant monomials for a list of eigenvalues.
    Resonance {
        /// Comma-separated integer eigenvalues.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        eigenvalues: Vec<i64>,
        /// Index of the target coordinate.
        #[arg(long)]
        target: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
    },
    /// Solve for a quadratic extension of the Z_n quotient bracket.
    Extend {
        n: usize,
        /// Number of standard waves (1–3) or a comma list of support, algebra, mixed.
        #[arg(long)]
        waves: Option<String>,
        /// Solve a single wave over the triples in this file.
        #[arg(long)]
        triples_file: Option<PathBuf>,
        /// Write the solved (or, on failure, partial) bivector here.
        #[arg(long)]
        emit_solution: Option<PathBuf>,
        /// uniform (default), published (read off the shipped 78-variable
        /// bivector, n = 3), zero, or a file of `name = value` lines.
        #[arg(long, default_value = "uniform")]
        cocycle: String,
        /// `full` (default) or `zero` (every quadratic unknown fixed at 0).
        #[arg(long, default_value = "full")]
        template: String,
    },
    /// Run a shipped demo.
    Demo { name: String },
    /// List the shipped demos.
    ListDemos,
}

/// Failure of the command itself (bad input), as opposed to a failed check.
struct InputError(String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

impl From<std::io::Error> for InputError {
    fn from(e: std::io::Error) -> Self {
        InputError(e.to_string())
    }
}

#[derive(Serialize)]
struct Check {
    check: String,
    status: &'static str,
    detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<f64>,
}

impl Check {
    fn new(check: &str, passed: bool, detail: String, witness: Option<String>) -> Self {
        Check { check: check.into(), status: if passed { "pass" } else { "fail" }, detail, witness, timing_ms: None }
    }

    fn from_result(r: CheckResult) -> Self {
        Check::new(&r.check, r.passed, r.detail, r.witness)
    }

    fn passed(&self) -> bool {
        self.status == "pass"
    }
}

#[derive(Serialize)]
struct Report {
    command: String,
    status: &'static str,
    checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    output: Vec<String>,
}

struct Ctx {
    normalize: bool,
    timings: bool,
}

impl Ctx {
    fn timed(&self, t: Instant, mut c: Check) -> Check {
        if self.timings {
            c.timing_ms = Some((t.elapsed().as_secs_f64() * 1e6).round() / 1e3);
        }
        c
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let ctx = Ctx { normalize: cli.scale_normalize == Switch::On, timings: cli.timings };
    match run(&cli.command, &ctx, cli.format) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: &Command, ctx: &Ctx, format: Format) -> Result<bool, InputError> {
    let (name, checks, output, text) = match cmd {
        Command::Verify { file, quotient, zn } => {
            let (c, o) = cmd_verify(file, quotient.as_deref(), *zn, ctx, true)?;
            ("verify", c, o, None)
        }
        Command::Pullback { file, quotient, zn } => {
            let (c, o) = cmd_verify(file, quotient.as_deref(), *zn, ctx, false)?;
            ("pullback", c, o, None)
        }
        Command::Jacobiator { file, zn } => ("jacobiator", Vec::new(), cmd_jacobiator(file, *zn)?, None),
        Command::Hilbert { n, rewrite, ideal, degrees } => {
            let (c, o) = cmd_hilbert(*n, rewrite.as_deref(), *ideal, *degrees)?;
            ("hilbert", c, o, None)
        }
        Command::Resonance { eigenvalues, target, max_degree } => {
            ("resonance", Vec::new(), cmd_resonance(eigenvalues, *target, *max_degree)?, None)
        }
        Command::Extend { n, waves, triples_file, emit_solution, cocycle, template } => {
            let (c, o) =
                cmd_extend(*n, waves.as_deref(), triples_file.as_deref(), emit_solution.as_deref(), cocycle, template, ctx)?;
            ("extend", c, o, None)
        }
        Command::Demo { name } => {
            let t = Instant::now();
            let demo = load_demo(name)?;
            let report = run_demo(&demo, ctx.normalize)?;
            let checks = report
                .cases
                .iter()
                .flat_map(|c| c.checks.iter().map(move |k| (c.case.clone(), k.clone())))
                .map(|(case, k)| {
                    let mut c = Check::from_result(k);
                    c.check = format!("{case}/{}", c.check);
                    c
                })
                .collect::<Vec<_>>();
            let mut text = report.to_text();
            if ctx.timings {
                let _ = writeln!(text, "time: {:.3} s", t.elapsed().as_secs_f64());
            }
            ("demo", checks, Vec::new(), Some(text))
        }
        Command::ListDemos => {
            let out = demo_names()
                .into_iter()
                .map(|n| Ok(format!("{n:<16} {}", load_demo(n)?.title)))
                .collect::<Result<Vec<_>, InputError>>()?;
            ("list-demos", Vec::new(), out, None)
        }
    };
    let passed = checks.iter().all(Check::passed);
    let mut buf = String::new();
    match format {
        Format::Json => {
            let r = Report { command: name.into(), status: if passed { "pass" } else { "fail" }, checks, output };
            let _ = writeln!(buf, "{}", serde_json::to_string_pretty(&r).expect("serializable"));
        }
        Format::Text => match text {
            Some(t) => buf = t,
            None => {
                for l in &output {
                    let _ = writeln!(buf, "{l}");
                }
                for c in &checks {
                    let _ = write!(buf, "{}: {} — {}", c.check, if c.passed() { "PASS" } else { "FAIL" }, c.detail);
                    if let Some(ms) = c.timing_ms {
                        let _ = write!(buf, " [{ms} ms]");
                    }
                    buf.push('\n');
                    if let Some(w) = &c.witness {
                        let _ = writeln!(buf, "  witness: {w}");
                    }
                }
                if !checks.is_empty() {
                    let _ = writeln!(buf, "result: {}", if passed { "PASS" } else { "FAIL" });
                }
            }
        },
    }
    // a closed pipe (`| head`) is not an error of the command
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(buf.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            return Err(e.into());
        }
    }
    Ok(passed)
}

fn read_bivector_text(file: &str) -> Result<String, InputError> {
    match file.strip_prefix('@') {
        Some(name) => {
            let key = if name.ends_with(".mv") { name.to_string() } else { format!("{name}.mv") };
            bivector_fixture(&key).map(String::from).ok_or_else(|| InputError(format!("no shipped fixture `{name}`")))
        }
        None => std::fs::read_to_string(file).map_err(|e| InputError(format!("{file}: {e}"))),
    }
}

fn load_bivector(file: &str, space: Option<&Arc<VariableSpace>>) -> Result<Multivector, InputError> {
    let text = read_bivector_text(file)?;
    let pi = match space {
        Some(s) => parse_multivector(&text, s),
        None => parse_multivector_inferred(&text),
    }
    .map_err(|e| InputError(format!("{file}: {e}")))?;
    if pi.degree() != 2 && !pi.is_zero() {
        return Err(InputError(format!("{file}: expected a bivector, found degree {}", pi.degree())));
    }
    Ok(pi.with_degree(2))
}

fn cmd_verify(
    file: &str,
    quotient: Option<&Path>,
    zn: Option<usize>,
    ctx: &Ctx,
    with_jacobi: bool,
) -> Result<(Vec<Check>, Vec<String>), InputError> {
    let mut checks = Vec::new();
    if let Some(n) = zn {
        let ext = ExtensionSpace::new(n)?;
        let pi = load_bivector(file, Some(&ext.space))?;
        let t = Instant::now();
        let r = verify_extension_with(&ext, &pi, ctx.normalize)?;
        if with_jacobi {
            let witness = if r.jacobiator_zero { None } else { first_term(&jacobiator(&pi)?) };
            let detail = if r.jacobiator_zero {
                format!("zero ({} vars, {} terms)", ext.space.len(), pi.monomial_count())
            } else {
                format!("nonzero on {} wedge-triples", r.jacobiator_support.len())
            };
            checks.push(ctx.timed(t, Check::new("jacobiator", r.jacobiator_zero, detail, witness)));
            let cascade: Vec<String> = r.cascade.iter().map(|c| format!("k={}:{}", c.k, c.terms)).collect();
            checks.push(Check::new("cascade", r.consistent(), cascade.join(" "), None));
        }
        let detail = match &r.scale {
            Some(l) => format!("{} of {} pairs agree at scale {l}", r.pairs_checked - r.pullback_failures.len(), r.pairs_checked),
            None => "no global scale fits the (a2, a3) entry".into(),
        };
        let witness = r.pullback_failures.first().map(|(u, v)| format!("({u}, {v})"));
        checks.push(ctx.timed(t, Check::new("pullback", r.pullback_compatible, detail, witness)));
        return Ok((checks, Vec::new()));
    }
    let q = quotient.map(|p| std::fs::read_to_string(p).map_err(InputError::from)).transpose()?;
    let q = q.map(|t| QuotientPresentation::from_fixture(&t)).transpose()?;
    let pi = load_bivector(file, q.as_ref().map(|q| &q.target))?;
    if with_jacobi {
        let t = Instant::now();
        checks.push(ctx.timed(t, Check::from_result(jacobiator_check(&pi, true)?)));
    }
    match &q {
        Some(q) => {
            let t = Instant::now();
            let map: Vec<Option<Polynomial>> = q.hilbert_map.iter().cloned().map(Some).collect();
            let pb = pullback_check(&pi, &source_bivector(&q.source), &map, ctx.normalize, None)?;
            let detail = match &pb.scale {
                Some(l) => format!("{} of {} pairs agree at scale {l}", pb.pairs - pb.failures.len(), pb.pairs),
                None => "no global scale fits".into(),
            };
            let witness = pb.failures.first().map(|&(u, v)| format!("({}, {})", pi.space().name(u), pi.space().name(v)));
            checks.push(ctx.timed(t, Check::new("pullback", pb.passed(), detail, witness)));
        }
        None if !with_jacobi => return Err(InputError("pullback needs --quotient or --zn".into())),
        None => {}
    }
    Ok((checks, Vec::new()))
}

fn cmd_jacobiator(file: &str, zn: Option<usize>) -> Result<Vec<String>, InputError> {
    let space = zn.map(ExtensionSpace::new).transpose()?.map(|e| e.space);
    let pi = load_bivector(file, space.as_ref())?;
    let j = jacobiator(&pi)?;
    let mut out = vec![format!(
        "# [pi, pi]: {} terms on {} wedge-triples",
        j.monomial_count(),
        support_triples(&j).len()
    )];
    out.push(if j.is_zero() { "0".into() } else { j.to_listing().trim_end().to_string() });
    Ok(out)
}

fn cmd_hilbert(n: usize, rewrite: Option<&str>, ideal: bool, degrees: bool) -> Result<(Vec<Check>, Vec<String>), InputError> {
    let basis = hilbert_basis_zn(n)?;
    let q = QuotientPresentation::new(n)?;
    let mut out = vec![format!("# Hilbert basis of V/Z_{n}: {} generators", basis.len())];
    let deg = |name: &str| -> Result<String, InputError> {
        let t = q.target.grading("t")?[q.target.require(name)?];
        let h = q.target.grading("H")?[q.target.require(name)?];
        Ok(format!("  t={t:<3} H={h}"))
    };
    for (i, p) in basis.iter().enumerate() {
        let name = q.target.name(i);
        let d = if degrees { deg(name)? } else { String::new() };
        out.push(format!("{name:<4} = {p}{d}"));
    }
    if ideal {
        out.push(format!("# ideal: {} generators", q.ideal.len()));
        for g in &q.ideal {
            let d = match (degrees, g.degrees()) {
                (true, Some((t, h))) => format!("  t={t:<3} H={h}"),
                _ => String::new(),
            };
            out.push(format!("{:<8} = {}{d}", g.listing_symbol(), g.poly));
        }
    }
    let mut checks = Vec::new();
    if let Some(m) = rewrite {
        let src = &q.source;
        let p = match parse_compact_monomial(m, src) {
            Some(p) => p,
            None => parse_polynomial(m, src)?,
        };
        let (mono, c) = match p.terms().collect::<Vec<_>>().as_slice() {
            [(mono, c)] if c.is_one() => ((*mono).clone(), (*c).clone()),
            _ => return Err(InputError(format!("`{m}` is not a monomial"))),
        };
        let _ = c;
        let r = rewrite_in_generators(&mono, n, &q.target)?;
        let back = q.pullback(&r)?;
        out.push(format!("{m} = {r}"));
        checks.push(Check::new("expansion", back == p, format!("{r} expands to {back}"), None));
    }
    Ok((checks, out))
}

/// `z4w2`-style monomials: source names followed by optional exponents.
fn parse_compact_monomial(text: &str, space: &Arc<VariableSpace>) -> Option<Polynomial> {
    let mut names: Vec<&str> = space.names().iter().map(String::as_str).collect();
    names.sort_by_key(|n| std::cmp::Reverse(n.len()));
    let mut exps = vec![0u32; space.len()];
    let mut rest = text.trim();
    if rest.is_empty() {
        return None;
    }
    while !rest.is_empty() {
        let name = names.iter().find(|n| rest.starts_with(**n))?;
        rest = &rest[name.len()..];
        let digits = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        let e = if digits == 0 { 1 } else { rest[..digits].parse().ok()? };
        rest = &rest[digits..];
        exps[space.index_of(name)?] += e;
    }
    Some(Polynomial::monomial(space, nijenhuis::exactring::Monomial::from_exponents(exps), Scalar::one()))
}

fn cmd_resonance(eigs: &[i64], target: usize, max_degree: u32) -> Result<Vec<String>, InputError> {
    if target >= eigs.len() {
        return Err(InputError(format!("target {target} out of range for {} eigenvalues", eigs.len())));
    }
    let ms = resonant_monomials(eigs, target, max_degree);
    let mut out = vec![format!("# {} resonant monomials of degree 2..={max_degree} for coordinate {target}", ms.len())];
    for e in ms {
        let f: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| if k == 1 { format!("r{i}") } else { format!("r{i}^{k}") })
            .collect();
        out.push(f.join("*"));
    }
    Ok(out)
}

fn parse_waves(spec: &str) -> Result<Vec<WaveSpec>, InputError> {
    if let Ok(k) = spec.parse::<usize>() {
        if !(1..=3).contains(&k) {
            return Err(InputError(format!("--waves {k}: expected 1, 2 or 3")));
        }
        return Ok(WaveSpec::standard().into_iter().take(k).collect());
    }
    spec.split(',')
        .map(|w| match w.trim() {
            "support" => Ok(WaveSpec::BetaSupport),
            "algebra" => Ok(WaveSpec::Algebra),
            "mixed" => Ok(WaveSpec::Mixed),
            o => Err(InputError(format!("unknown wave `{o}`"))),
        })
        .collect()
}

fn cocycle_for(n: usize, ext: &ExtensionSpace, spec: &str) -> Result<BTreeMap<String, Scalar>, InputError> {
    match spec {
        "uniform" => Ok(uniform_cocycle(ext, &Scalar::one(), &Scalar::one(), &Scalar::one())),
        "zero" => Ok(BTreeMap::new()),
        "published" => {
            if n != 3 {
                return Err(InputError("the published cocycle exists for n = 3 only".into()));
            }
            let pi = parse_multivector(bivector_fixture("z3-pi78.mv").expect("shipped"), &ext.space)?;
            let lam = pi.component(&[2, 3]).coefficient(&nijenhuis::exactring::Monomial::var(ext.space.len(), 0));
            let pi = pi.scale(&lam.inv().ok_or_else(|| InputError("fixture has no (a2, a3) entry".into()))?);
            Ok(cocycle_scalars_of(ext, &pi)?)
        }
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{path}: {e}")))?;
            let mut m = BTreeMap::new();
            for line in text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty()) {
                let (k, v) = line.split_once('=').ok_or_else(|| InputError(format!("{path}: expected `name = value`")))?;
                let v = parse_polynomial(v.trim(), &ext.space)?;
                let c = v.constant_term();
                if v.terms().count() > usize::from(!c.is_zero()) {
                    return Err(InputError(format!("{path}: `{}` is not a number", v)));
                }
                m.insert(k.trim().to_string(), c);
            }
            Ok(m)
        }
    }
}

fn cmd_extend(
    n: usize,
    waves: Option<&str>,
    triples_file: Option<&Path>,
    emit: Option<&Path>,
    cocycle: &str,
    template: &str,
    ctx: &Ctx,
) -> Result<(Vec<Check>, Vec<String>), InputError> {
    let ext = ExtensionSpace::new(n)?;
    let scalars = cocycle_for(n, &ext, cocycle)?;
    let problem = match template {
        "full" => ExtensionProblem::new(n, &scalars)?,
        "zero" => ExtensionProblem::new(n, &scalars)?.without_template(),
        t => return Err(InputError(format!("unknown template `{t}`"))),
    };
    let specs = match (triples_file, waves) {
        (Some(f), _) => vec![WaveSpec::Triples(parse_triples(&std::fs::read_to_string(f)?, &ext.space)?)],
        (None, Some(w)) => parse_waves(w)?,
        (None, None) => WaveSpec::standard(),
    };
    let mut out = vec![format!(
        "# extension of V/Z_{n}: {} coordinates, {} template unknowns, cocycle `{cocycle}`",
        ext.space.len(),
        problem.template.unknowns().len()
    )];
    let t = Instant::now();
    let sol = solve_waves(&problem, &specs)?;
    let mut checks = Vec::new();
    for w in &sol.waves {
        let (ok, detail, witness) = match &w.outcome {
            WaveOutcome::Solved { solved } => {
                (true, format!("{} triples, {} equations, {solved} unknowns eliminated", w.triples.len(), w.system.len()), None)
            }
            WaveOutcome::Inconsistent { equations } => {
                let eqs: Vec<String> = equations.iter().map(|&i| format!("{} = 0", w.system.equations[i])).collect();
                (false, format!("{} triples, {} equations, inconsistent", w.triples.len(), w.system.len()), Some(eqs.join("; ")))
            }
        };
        checks.push(Check::new(&format!("wave {}", w.label), ok, detail, witness));
        if let WaveOutcome::Inconsistent { equations } = &w.outcome {
            for &i in equations {
                out.push(format!("# inconsistent equation {i} comes from triple ({})", format_triple(&ext.space, &w.origins[i])));
            }
        }
    }
    out.push(format!("# {} unknowns determined, {} free (set to 0)", sol.assignments.len(), sol.free.len()));
    let full = specs == WaveSpec::standard();
    if let Some(pi) = &sol.pi {
        if full {
            let r = verify_extension_with(&ext, pi, ctx.normalize)?;
            let witness = r.jacobiator_support.first().cloned();
            checks.push(ctx.timed(
                t,
                Check::new("verify", r.passed(), format!("jacobiator zero: {}, pullback: {}", r.jacobiator_zero, r.pullback_compatible), witness),
            ));
        }
    }
    if let Some(path) = emit {
        let (pi, tag) = match &sol.pi {
            Some(pi) => (pi, "solved"),
            None => (&sol.partial, "partial (stopped at an inconsistent wave)"),
        };
        let body = format!("# {tag} extension of V/Z_{n}, free unknowns at 0\n{}", pi.to_listing());
        std::fs::write(path, body)?;
        out.push(format!("# wrote {tag} bivector to {}", path.display()));
    }
    Ok((checks, out))
}
