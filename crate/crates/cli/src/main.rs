use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand};

use gaugelike::acceptance::{self, DEFAULT_SEED};
use gaugelike::cdga::render_scalars;
use gaugelike::fixture::{builtin_text, parse_fixture, Fixture, BUILTIN};
use gaugelike::gauge::{additive_from_g0, additive_to_g0, gauge_act, gauge_flow, gauge_to_additive, orbit_compare};
use gaugelike::graded::parse_scalar;
use gaugelike::random::{random_gs, random_mc, random_vector, seeded};
use gaugelike::{chevalley_eilenberg, gs_act, Error, GaugeElement, Ground, LInfinityAlgebra, NilpotencyBound, Scalar};

#[derive(Parser)]
#[command(name = "gaugelike", version, about = "Exact Sullivan-algebra homotopies and Maurer-Cartan actions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a fixture and report nilpotency.
    Check { fixture: String },
    /// Print the Chevalley-Eilenberg algebra and its Sullivan stages.
    Ce { fixture: String },
    /// Maurer-Cartan operations.
    Mc {
        #[command(subcommand)]
        command: McCommand,
    },
    /// Move an MC point by an element of g0 through the additive action.
    Act { fixture: String, mc: String, g0: String },
    /// Gauge flow, its endpoint, and the additive witness.
    Gauge { fixture: String, mc: String, g0: String },
    /// Compare gauge and additive orbits on random samples.
    Orbit {
        fixture: String,
        #[arg(long, default_value_t = 4)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Run the acceptance suite.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// List the built-in fixtures, or print one in canonical form.
    Fixtures { name: Option<String> },
}

#[derive(Subcommand)]
enum McCommand {
    /// Print the residual of a point of g_{-1}.
    Verify { fixture: String, vector: String },
}

/// A failed check, as opposed to bad input.
#[derive(Debug)]
struct VerificationFailed(String);

impl std::fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for VerificationFailed {}

fn fail(msg: impl Into<String>) -> anyhow::Error {
    VerificationFailed(msg.into()).into()
}

/// Built-in name or path to a fixture file.
fn load(source: &str) -> anyhow::Result<Fixture> {
    let text = match builtin_text(source) {
        Some(t) => t.to_string(),
        None if Path::new(source).exists() => {
            std::fs::read_to_string(source).with_context(|| format!("reading {source}"))?
        }
        None => bail!(
            "`{source}` is neither a file nor a built-in fixture ({})",
            BUILTIN.iter().map(|(n, _)| *n).collect::<Vec<_>>().join(", ")
        ),
    };
    Ok(parse_fixture(&text)?)
}

/// `(1, -1/2, 3)`; parentheses optional.
fn parse_vector(text: &str, expected: usize, what: &str) -> anyhow::Result<Vec<Scalar>> {
    let inner = text.trim();
    let inner = inner
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or(inner)
        .trim();
    let values: Vec<Scalar> = if inner.is_empty() {
        Vec::new()
    } else {
        inner
            .split(',')
            .map(|c| parse_scalar(c).map_err(|_| anyhow!("invalid rational `{}` in {what}", c.trim())))
            .collect::<anyhow::Result<_>>()?
    };
    if values.len() != expected {
        bail!("{what} needs {expected} coordinates, got {}", values.len());
    }
    Ok(values)
}

fn symbols(g: &LInfinityAlgebra, degree: i32) -> String {
    let s: Vec<&str> = g.slice(degree).iter().map(|&i| g.basis().symbol(i)).collect();
    format!("({})", s.join(","))
}

fn check(source: &str) -> anyhow::Result<String> {
    let f = load(source)?;
    let g = &f.algebra;
    let mut out = String::new();
    writeln!(out, "fixture: {}", f.name.as_deref().unwrap_or(source))?;
    writeln!(out, "dimension {}, max arity {}, dgla {}", g.dim(), g.max_arity(), g.is_dgla())?;
    write!(out, "{g}")?;
    writeln!(out, "jacobi (d^2 = 0): ok")?;
    let mut degrees: Vec<i32> = g.basis().entries().iter().map(|e| e.degree).collect();
    degrees.sort_unstable();
    degrees.dedup();
    let mut nilpotent = true;
    for d in degrees.iter().rev() {
        let bound = g.nilpotency_bound(*d)?;
        nilpotent &= bound != NilpotencyBound::Unbounded;
        writeln!(out, "nilpotency in degree {d}: {bound}")?;
    }
    let lcs = g.lower_central_series()?;
    let dims: Vec<String> = lcs.terms().iter().map(|t| t.dim().to_string()).collect();
    writeln!(out, "lower central series dims: {}", dims.join(" > "))?;
    if !nilpotent {
        print!("{out}");
        return Err(fail("not degree-wise nilpotent"));
    }
    Ok(out)
}

fn ce(source: &str) -> anyhow::Result<String> {
    let f = load(source)?;
    let ce = chevalley_eilenberg(&f.algebra)?;
    let a = ce.algebra();
    let mut out = String::new();
    write!(out, "{a}")?;
    let stages: Vec<String> = (0..a.num_generators())
        .map(|v| format!("{}:{}", a.symbol(v), ce.order().stage(v)))
        .collect();
    writeln!(out, "stages: {}", stages.join(" "))?;
    let greedy = ce.greedy_order()?;
    let greedy: Vec<String> = (0..a.num_generators())
        .map(|v| format!("{}:{}", a.symbol(v), greedy.stage(v)))
        .collect();
    writeln!(out, "greedy stages: {}", greedy.join(" "))?;
    Ok(out)
}

fn mc_verify(source: &str, vector: &str) -> anyhow::Result<String> {
    let f = load(source)?;
    let g = &f.algebra;
    let x = parse_vector(vector, g.slice(-1).len(), &format!("MC vector {}", symbols(g, -1)))?;
    let r = g.evaluate_mc(&x)?;
    let line = format!(
        "residual over {}: {}",
        symbols(g, -2),
        render_scalars(r.residual())
    );
    if r.is_certified() {
        Ok(format!("{line}\nMaurer-Cartan: yes\n"))
    } else {
        println!("{line}");
        Err(fail("not Maurer-Cartan"))
    }
}

fn act(source: &str, mc: &str, g0: &str) -> anyhow::Result<String> {
    let f = load(source)?;
    let ce = chevalley_eilenberg(&f.algebra)?;
    let g = ce.lie();
    let x = g.certify(&parse_vector(mc, g.slice(-1).len(), &format!("MC vector {}", symbols(g, -1)))?)?;
    let xi = GaugeElement(parse_vector(g0, g.slice(0).len(), &format!("g0 vector {}", symbols(g, 0)))?);
    let b = additive_from_g0(&ce, &xi)?;
    let moved = gs_act(&b, &ce.mc_to_morphism(&x)?, ce.order())?;
    let y = ce.morphism_to_mc(&moved)?;
    Ok(format!("{}\n", render_scalars(y.coefficients())))
}

fn gauge(source: &str, mc: &str, g0: &str) -> anyhow::Result<String> {
    let f = load(source)?;
    let ce = chevalley_eilenberg(&f.algebra)?;
    let g = ce.lie();
    let x = g.certify(&parse_vector(mc, g.slice(-1).len(), &format!("MC vector {}", symbols(g, -1)))?)?;
    let xi = GaugeElement(parse_vector(g0, g.slice(0).len(), &format!("g0 vector {}", symbols(g, 0)))?);
    let path = gauge_flow(g, &xi, &x)?;
    let y = gauge_act(g, &xi, &x)?;
    let b = gauge_to_additive(&ce, &xi, &x)?;
    let mut out = String::new();
    writeln!(out, "path:")?;
    for (&i, p) in g.slice(-1).iter().zip(&path.x) {
        writeln!(out, "  {}(t) = {}", g.basis().symbol(i), render_poly(p))?;
    }
    writeln!(out, "endpoint: {}", render_scalars(y.coefficients()))?;
    let gens: Vec<&str> = (0..ce.algebra().num_generators()).map(|v| ce.algebra().symbol(v)).collect();
    writeln!(out, "additive witness b on ({}): {}", gens.join(","), render_scalars(b.map()))?;
    writeln!(out, "as g0 element: {}", render_scalars(additive_to_g0(&ce, &b).coefficients()))?;
    writeln!(out, "witness verified: yes")?;
    Ok(out)
}

fn render_poly(p: &[Scalar]) -> String {
    let zero = Scalar::default();
    let mut out = String::new();
    for (k, c) in p.iter().enumerate().filter(|(_, c)| **c != zero) {
        let (sign, mag) = if *c < zero { ("-", -c) } else { ("+", c.clone()) };
        let one = mag == Scalar::from_integer(1.into());
        let monomial = match k {
            0 => mag.to_string(),
            _ => {
                let t = if k == 1 { "t".to_string() } else { format!("t^{k}") };
                if one { t } else { format!("{mag}*{t}") }
            }
        };
        if out.is_empty() {
            if sign == "-" {
                out.push('-');
            }
        } else {
            write!(out, " {sign} ").expect("string write");
        }
        out.push_str(&monomial);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn orbit(source: &str, samples: usize, seed: u64) -> anyhow::Result<String> {
    let f = load(source)?;
    let ce = chevalley_eilenberg(&f.algebra)?;
    let g = ce.lie();
    let mut rng = seeded(seed);
    let xs: Vec<_> = (0..samples).map(|_| random_mc(g, &mut rng)).collect();
    let gauge_samples: Vec<GaugeElement> = (0..samples)
        .map(|_| GaugeElement(random_vector(&mut rng, g.slice(0).len())))
        .collect();
    let additive: Vec<_> = (0..samples)
        .map(|_| random_gs(&mut rng, ce.algebra(), &Ground))
        .collect();
    let report = orbit_compare(&ce, &xs, &gauge_samples, &additive)?;
    let mut out = String::new();
    writeln!(out, "points in {}, g0 coordinates {}", symbols(g, -1), symbols(g, 0))?;
    for (i, x) in xs.iter().enumerate() {
        writeln!(out, "x{i} = {}", render_scalars(x.coefficients()))?;
        for w in report.gauge.iter().filter(|w| w.point == i) {
            writeln!(
                out,
                "  gauge {} -> {} (witness {})",
                render_scalars(gauge_samples[w.sample].coefficients()),
                render_scalars(&w.image),
                render_scalars(additive_to_g0(&ce, &w.witness).coefficients())
            )?;
        }
        for m in report.additive.iter().filter(|m| m.point == i) {
            writeln!(
                out,
                "  additive {} -> {}",
                render_scalars(additive_to_g0(&ce, &additive[m.sample]).coefficients()),
                render_scalars(&m.image)
            )?;
        }
    }
    writeln!(
        out,
        "{} gauge moves witnessed, {} additive moves",
        report.gauge.len(),
        report.additive.len()
    )?;
    Ok(out)
}

fn selftest(seed: u64) -> anyhow::Result<String> {
    let outcomes = acceptance::run_all(seed);
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    for o in &outcomes {
        println!("{o}");
    }
    if failed > 0 {
        return Err(fail(format!("{failed} of {} criteria failed", outcomes.len())));
    }
    Ok(format!("all {} criteria passed\n", outcomes.len()))
}

fn fixtures(name: Option<&str>) -> anyhow::Result<String> {
    match name {
        None => Ok(BUILTIN.iter().map(|(n, _)| format!("{n}\n")).collect()),
        Some(n) => {
            let text = builtin_text(n).ok_or_else(|| anyhow!("no built-in fixture `{n}`"))?;
            Ok(gaugelike::fixture::parse_fixture_unchecked(text)?.to_string())
        }
    }
}

/// 1 for failed verifications, 2 for bad input.
fn exit_code(e: &anyhow::Error) -> u8 {
    if e.is::<VerificationFailed>() {
        return 1;
    }
    match e.downcast_ref::<Error>() {
        Some(
            Error::Parse { .. }
            | Error::UnknownSymbol(_)
            | Error::InvalidSymbol(_)
            | Error::DuplicateSymbol(_)
            | Error::InvalidArgument(_)
            | Error::LengthMismatch { .. }
            | Error::DegreeMismatch { .. }
            | Error::ArityCap { .. }
            | Error::SymmetryViolation(_),
        ) => 2,
        Some(_) => 1,
        None => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check { fixture } => check(fixture),
        Command::Ce { fixture } => ce(fixture),
        Command::Mc {
            command: McCommand::Verify { fixture, vector },
        } => mc_verify(fixture, vector),
        Command::Act { fixture, mc, g0 } => act(fixture, mc, g0),
        Command::Gauge { fixture, mc, g0 } => gauge(fixture, mc, g0),
        Command::Orbit { fixture, samples, seed } => orbit(fixture, *samples, *seed),
        Command::Selftest { seed } => selftest(*seed),
        Command::Fixtures { name } => fixtures(name.as_deref()),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
