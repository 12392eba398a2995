//! Command-line front end. `run` parses arguments, executes one verb and
//! returns the report text with an exit code, so it is testable in-process.

use std::collections::{BTreeSet, HashMap};
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebras::{
    a_classical_relations, verify_braid, verify_invariants, verify_quantum_relations, AlgebraKind, Regime, Report,
};
use crate::error::{Error, Result};
use crate::fatgraph::{double, FatGraph, StandardKind};
use crate::foliation::{face_conditions_hold, tropical_flip, tropical_limit_check, FoliationShear};
use crate::geodesic::{holonomy_trace, numeric_trace, quantum_trace, PathWord};
use crate::moves::flip;
use crate::poisson::{bracket, wp_matrix};
use crate::ring::Var;

#[derive(Parser, Debug)]
#[command(name = "teich", version, about = "Shear coordinates, geodesic algebras and braid actions on bordered surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GraphSource {
    /// Graph file (`edge NAME V1 S1 V2 S2` and `pedge NAME V S` lines)
    #[arg(long, conflicts_with = "standard")]
    pub graph: Option<PathBuf>,
    /// Built-in graph: annulus, aN or dN
    #[arg(long)]
    pub standard: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate the geodesic function of a closed word
    Eval {
        #[command(flatten)]
        src: GraphSource,
        #[arg(long)]
        word: String,
        /// Coordinate values, `k=v,...`
        #[arg(long)]
        at: Option<String>,
        /// Print the Laurent polynomial instead of a value
        #[arg(long)]
        symbolic: bool,
        /// Print the quantum geodesic function
        #[arg(long)]
        quantum: bool,
    },
    /// Flip an edge and transport a word
    Flip {
        #[command(flatten)]
        src: GraphSource,
        #[arg(long)]
        edge: String,
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        at: Option<String>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Foliation-shear coordinates
    Tropical {
        #[command(subcommand)]
        cmd: TropicalCmd,
    },
    /// Run a verification suite
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
        #[arg(long, default_value_t = 0, global = true)]
        seed: u64,
        #[arg(long, default_value_t = 20, global = true)]
        samples: usize,
        #[arg(long, default_value_t = 1e-9, global = true)]
        tol: f64,
    },
    /// Genus and hole count of the doubled surface
    Double {
        #[command(flatten)]
        src: GraphSource,
    },
    /// Poisson bracket of two geodesic functions
    Bracket {
        #[command(flatten)]
        src: GraphSource,
        #[arg(long)]
        word: String,
        #[arg(long)]
        with: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum TropicalCmd {
    /// Tropical flip of a ζ-vector read from `edge=value` lines
    Flip {
        #[command(flatten)]
        src: GraphSource,
        #[arg(long)]
        edge: String,
        #[arg(long)]
        zeta: PathBuf,
    },
    /// Compare φ(λx)/λ with its tropical limit
    Limit {
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, value_delimiter = ',', default_value = "10,100,1000")]
        lambdas: Vec<f64>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum RegimeArg {
    Classical,
    Quantum,
}

impl From<RegimeArg> for Regime {
    fn from(r: RegimeArg) -> Regime {
        match r {
            RegimeArg::Classical => Regime::Classical,
            RegimeArg::Quantum => Regime::Quantum,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum AlgebraArg {
    An,
    Dn,
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// A_n relations
    An {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = RegimeArg::Quantum)]
        regime: RegimeArg,
    },
    /// D_n relations (quantum) or matrix invariants (classical)
    Dn {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = RegimeArg::Quantum)]
        regime: RegimeArg,
        /// Largest n for the quantum relation suite
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
    /// Braid-group relations
    Braid {
        #[arg(long, value_enum)]
        algebra: AlgebraArg,
        #[arg(long, value_enum, default_value_t = RegimeArg::Classical)]
        regime: RegimeArg,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

fn standard(name: &str) -> Result<FatGraph> {
    let lower = name.to_ascii_lowercase();
    if lower == "annulus" {
        return FatGraph::standard(StandardKind::AnnulusOneMarked, 0);
    }
    let bad = || Error::Argument(format!("unknown standard graph '{}'", name));
    let (kind, rest) = match lower.split_at(1) {
        ("a", r) => (StandardKind::A, r),
        ("d", r) => (StandardKind::D, r),
        _ => return Err(bad()),
    };
    FatGraph::standard(kind, rest.parse().map_err(|_| bad())?)
}

/// Loaded graph together with a label for diagnostics.
fn load(src: &GraphSource) -> std::result::Result<FatGraph, String> {
    match (&src.graph, &src.standard) {
        (Some(p), _) => {
            let text = fs::read_to_string(p).map_err(|e| format!("{}: {}", p.display(), e))?;
            FatGraph::parse(&text).map_err(|e| format!("{}: {}", p.display(), e))
        }
        (None, Some(s)) => standard(s).map_err(|e| e.to_string()),
        (None, None) => Err("one of --graph or --standard is required".into()),
    }
}

fn parse_at(g: &FatGraph, text: &str) -> Result<HashMap<Var, f64>> {
    let mut at = HashMap::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| Error::Argument(format!("expected k=v, got '{}'", part)))?;
        let e = g.var(k.trim()).ok_or_else(|| Error::Argument(format!("unknown edge '{}'", k.trim())))?;
        let x: f64 = v.trim().parse().map_err(|_| Error::Argument(format!("bad number '{}'", v.trim())))?;
        at.insert(e, x);
    }
    Ok(at)
}

fn check_assigned(g: &FatGraph, w: &PathWord, at: &HashMap<Var, f64>) -> Result<()> {
    let missing: BTreeSet<&str> = w.darts().iter().filter(|t| !at.contains_key(&t.edge)).map(|t| g.name(t.edge)).collect();
    if missing.is_empty() {
        Ok(())
    } else {
        Err(Error::Assignment(missing.into_iter().collect::<Vec<_>>().join(", ")))
    }
}

/// Shortest decimal form, with values within 1e−12 of an integer printed as
/// that integer.
pub fn format_num(x: f64) -> String {
    if (x - x.round()).abs() < 1e-12 * x.abs().max(1.0) {
        format!("{}", x.round() as i64)
    } else {
        format!("{}", x)
    }
}

fn check(name: &str, pass: bool, detail: &str) -> String {
    let mut s = format!("CHECK {} {}", name, if pass { "PASS" } else { "FAIL" });
    if !detail.is_empty() {
        s.push_str(&format!(" ({})", detail));
    }
    s.push('\n');
    s
}

fn render_report(seed: u64, r: &Report) -> Outcome {
    let mut text = format!("SEED {}\n{}", seed, r);
    let failed = r.lines.iter().filter(|l| !l.pass).count();
    text.push_str(&format!("SUMMARY {} checks, {} failed\n", r.lines.len(), failed));
    Outcome { text, code: if failed == 0 { 0 } else { 1 } }
}

fn execute(cmd: Command) -> std::result::Result<Outcome, (String, i32)> {
    let usage = |e: Error| (format!("error: {}", e), 2);
    let runtime = |e: Error| (format!("error: {}", e), 1);
    let graph = |src: &GraphSource| load(src).map_err(|e| (format!("error: {}", e), 2));
    let ok = |text: String| Ok(Outcome { text, code: 0 });
    match cmd {
        Command::Eval { src, word, at, symbolic, quantum } => {
            let g = graph(&src)?;
            let w = PathWord::parse(&g, &word).map_err(usage)?;
            let name = |v: Var| g.name(v).to_string();
            if symbolic {
                return ok(format!("{}\n", holonomy_trace(&w).render(&name)));
            }
            if quantum {
                let ctx = std::sync::Arc::new(wp_matrix(&g));
                return ok(format!("{}\n", quantum_trace(&w, &ctx).map_err(runtime)?.render()));
            }
            let at = parse_at(&g, at.as_deref().unwrap_or("")).map_err(usage)?;
            check_assigned(&g, &w, &at).map_err(usage)?;
            ok(format!("{}\n", format_num(numeric_trace(&w, &at).map_err(runtime)?)))
        }
        Command::Flip { src, edge, word, at, tol } => {
            let g = graph(&src)?;
            let fr = flip(&g, &edge).map_err(usage)?;
            let mut text = format!("# {} flip of {}\n{}", fr.kind, edge, fr.graph.to_text());
            for l in fr.rule.render(&g) {
                text.push_str(&format!("# {}\n", l));
            }
            let mut code = 0;
            if let Some(word) = word {
                let w = PathWord::parse(&g, &word).map_err(usage)?;
                let moved = fr.transport(&w).map_err(runtime)?;
                text.push_str(&format!("word {}\n", moved.to_text(&fr.graph)));
                if let Some(at) = at {
                    let at = parse_at(&g, &at).map_err(usage)?;
                    check_assigned(&g, &w, &at).map_err(usage)?;
                    let before = numeric_trace(&w, &at).map_err(runtime)?;
                    let after = numeric_trace(&moved, &fr.rule.apply(&at)).map_err(runtime)?;
                    let dev = (before - after).abs() / before.abs().max(1.0);
                    let pass = dev <= tol;
                    code = if pass { 0 } else { 1 };
                    text.push_str(&check(
                        "flip-trace-invariance",
                        pass,
                        &format!("before {} after {}", format_num(before), format_num(after)),
                    ));
                }
            }
            Ok(Outcome { text, code })
        }
        Command::Tropical { cmd: TropicalCmd::Flip { src, edge, zeta } } => {
            let g = graph(&src)?;
            let raw = fs::read_to_string(&zeta).map_err(|e| (format!("error: {}: {}", zeta.display(), e), 2))?;
            let zs = FoliationShear::parse(&g, &raw).map_err(|e| (format!("error: {}: {}", zeta.display(), e), 2))?;
            let e = g.var_or_err(&edge).map_err(usage)?;
            let (fr, out) = tropical_flip(&g, &zs, e).map_err(usage)?;
            let before = face_conditions_hold(&g, &zs);
            let after = face_conditions_hold(&fr.graph, &out);
            let mut text = out.render(&fr.graph);
            text.push_str(&check("face-conditions-input", before, ""));
            text.push_str(&check("face-conditions-output", after, ""));
            Ok(Outcome { text, code: if after == before { 0 } else { 1 } })
        }
        Command::Tropical { cmd: TropicalCmd::Limit { x, lambdas } } => {
            let mut text = String::new();
            let mut all = true;
            for r in tropical_limit_check(x, &lambdas) {
                let bound = 2f64.ln() / r.lambda;
                let pass = r.deviation <= bound;
                all &= pass;
                text.push_str(&format!("lambda={} scaled={} deviation={:e}\n", r.lambda, r.scaled, r.deviation));
                text.push_str(&check(&format!("tropical-limit-{}", r.lambda), pass, "deviation <= log 2 / lambda"));
            }
            Ok(Outcome { text, code: if all { 0 } else { 1 } })
        }
        Command::Verify { cmd, seed, samples, tol } => {
            let rep = match cmd {
                VerifyCmd::An { n, regime } => match regime {
                    RegimeArg::Quantum => verify_quantum_relations(AlgebraKind::A, n, 0),
                    RegimeArg::Classical => a_classical_relations(n),
                },
                VerifyCmd::Dn { n, regime, bound } => match regime {
                    RegimeArg::Quantum if n > bound => {
                        Err(Error::Argument(format!("n={} exceeds the bound {} (raise it with --bound)", n, bound)))
                    }
                    RegimeArg::Quantum => verify_quantum_relations(AlgebraKind::D, n, 4),
                    RegimeArg::Classical => verify_invariants(n),
                },
                VerifyCmd::Braid { algebra, regime, n } => {
                    let kind = match algebra {
                        AlgebraArg::An => AlgebraKind::A,
                        AlgebraArg::Dn => AlgebraKind::D,
                    };
                    verify_braid(kind, n, regime.into(), samples, seed, tol)
                }
            }
            .map_err(usage)?;
            Ok(render_report(seed, &rep))
        }
        Command::Double { src } => {
            let g = graph(&src)?;
            let sig = g.signature();
            let d = double(&sig);
            let mut text = format!("ĝ={} ŝ={}\n", d.genus, d.holes);
            if d.degenerate {
                text.push_str("# no windows: the double is two disjoint copies\n");
            } else {
                let dg = g.double_graph().map_err(runtime)?;
                let chi = dg.euler_characteristic();
                let holes = dg.trace_faces().len() as i64;
                let pass = chi == 2 - 2 * d.genus as i64 && holes == d.holes as i64;
                text.push_str(&check("double-euler-count", pass, &format!("glued graph chi={} faces={}", chi, holes)));
                if !pass {
                    return Ok(Outcome { text, code: 1 });
                }
            }
            ok(text)
        }
        Command::Bracket { src, word, with } => {
            let g = graph(&src)?;
            let a = PathWord::parse(&g, &word).map_err(usage)?;
            let b = PathWord::parse(&g, &with).map_err(usage)?;
            let pm = wp_matrix(&g);
            let r = bracket(&holonomy_trace(&a), &holonomy_trace(&b), &pm).map_err(runtime)?;
            ok(format!("{}\n", r.render(&|v| g.name(v).to_string())))
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            Outcome { text: e.render().to_string(), code }
        }
        Ok(cli) => match execute(cli.cmd) {
            Ok(o) => o,
            Err((text, code)) => Outcome { text: format!("{}\n", text), code },
        },
    }
}
