//! Command-line front end. [`run`] parses arguments, dispatches a verb and
//! returns the exit status with the text destined for stdout and stderr.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use crate::abelian::{AbelianGroup, Element};
use crate::error::{Error, Result};
use crate::fields::{
    dadarlat_count_check, lemma_tec_check, pimsner_pieces, sim_n_quotient, CohomologyProfile, FiniteNilRing,
};
use crate::kprofile::{catalog, parse_expr, validate, KProfile, SpaceExpr, Splitting};
use crate::twisted::{classify, SubgroupTable, TwistedGroup};
use crate::Int;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "moorek", version, about = "Mod-n K-theory of finite complexes and twisted group laws")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Debug)]
struct Common {
    /// Space expression, e.g. "M(3)", "prod(S(2),S(2))", "MxSM(3)"
    expr: String,
    /// Coefficient modulus n >= 2
    #[arg(short = 'n', long = "modulus")]
    n: Int,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
    /// JSON file with splitting stipulations for ambiguous extensions
    #[arg(long, value_name = "FILE")]
    splitting: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Print reduced and mod-n K-groups with reduction and Bockstein maps
    Kgroups(Common),
    /// Check exactness, product compatibilities and nilpotency
    Verify(Common),
    /// Print the multiplication table of the twisted group on K^1(X; Z_n)
    TwistedTable {
        #[command(flatten)]
        common: Common,
        /// Use the subgroup generated by ρ(1⊗u), ρ(g⊗u) and λ(g⊗1)
        #[arg(long)]
        subgroup: bool,
    },
    /// Classify the twisted group
    Identify {
        #[command(flatten)]
        common: Common,
        /// Use the subgroup generated by ρ(1⊗u), ρ(g⊗u) and λ(g⊗1)
        #[arg(long)]
        subgroup: bool,
    },
    /// Compare |K̃^0 ⊗ Z_n| with the order of even mod-n cohomology
    CountFields(Common),
    /// Kernel and cokernel pieces of multiplication by 1 - [E]
    Pimsner {
        #[command(flatten)]
        common: Common,
        /// Rank r of the bundle (default n + 1)
        #[arg(long)]
        rank: Option<Int>,
        /// Reduced class ẽ in K̃^0: a generator label or comma-separated coefficients
        #[arg(long = "e", value_name = "ELEMENT")]
        e_tilde: Option<String>,
    },
    /// Equivalence classes of ~_n on a finite nilpotent ring given as JSON
    Simn {
        /// Ring file {"factors": [...], "labels": [...], "mult": [[i, j, [c...]], ...]}
        ring: PathBuf,
        /// Modulus n >= 2; every additive order must be a power-product of primes dividing n
        #[arg(short = 'n', long = "modulus")]
        n: Int,
        /// Emit JSON instead of text
        #[arg(long)]
        json: bool,
    },
}

/// Exit status and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }
}

/// Runs one command line; `args[0]` is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli.verb) {
        Ok(out) => out,
        Err(e) => {
            let code = match e {
                Error::Construction { .. } => EXIT_CHECK_FAILED,
                _ => EXIT_INPUT,
            };
            let mut msg = format!("error: {e}\n");
            if let (Error::Parse { pos, .. }, Some(expr)) = (&e, expr_of(&cli.verb)) {
                msg.push_str(&format!("  {expr}\n  {}^\n", " ".repeat(expr[..(*pos).min(expr.len())].chars().count())));
            }
            Outcome { code, stdout: String::new(), stderr: msg }
        }
    }
}

fn expr_of(verb: &Verb) -> Option<&str> {
    match verb {
        Verb::Kgroups(c) | Verb::Verify(c) | Verb::CountFields(c) => Some(&c.expr),
        Verb::TwistedTable { common, .. } | Verb::Identify { common, .. } | Verb::Pimsner { common, .. } => {
            Some(&common.expr)
        }
        Verb::Simn { .. } => None,
    }
}

fn render<T: Serialize>(v: &T) -> String {
    let value: Value = serde_json::to_value(v).expect("report serializes");
    render_value(&value)
}

fn render_value(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value serializes");
    s.push('\n');
    s
}

fn read_file(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))
}

fn load(c: &Common) -> Result<(SpaceExpr, KProfile)> {
    let expr = parse_expr(&c.expr)?;
    let splitting = match &c.splitting {
        Some(path) => Some(
            serde_json::from_str::<Splitting>(&read_file(path)?)
                .map_err(|e| Error::input(format!("splitting file {}: {e}", path.display())))?,
        ),
        None => None,
    };
    let p = catalog(&expr, c.n, splitting.as_ref())?;
    Ok((expr, p))
}

fn twisted(p: &KProfile, subgroup: bool) -> Result<TwistedGroup> {
    if subgroup {
        TwistedGroup::heisenberg_slice(p)
    } else {
        TwistedGroup::build(p)
    }
}

fn table_text(g: &TwistedGroup, t: &SubgroupTable) -> String {
    let mut s = format!("twisted group of {} (n = {}), order {}\n", g.name(), g.modulus(), t.order());
    if let Some(a) = t.assumption() {
        s.push_str(&format!("{a}\n"));
    }
    s.push_str(&format!("carrier K^1(;Z_{}) = {}\n", g.modulus(), g.carrier().pretty()));
    s.push_str("elements (lexicographic in carrier coordinates):\n");
    for i in 0..t.order() {
        s.push_str(&format!("  {i:>4}: {}\n", t.show(i)));
    }
    s.push_str("table (row ∘ column):\n");
    let width = t.order().saturating_sub(1).to_string().len();
    for row in t.table() {
        let cells: Vec<String> = row.iter().map(|k| format!("{k:>width$}")).collect();
        s.push_str(&format!("  {}\n", cells.join(" ")));
    }
    s
}

fn table_json(t: &SubgroupTable) -> Value {
    let mut v = t.to_json();
    let map = v.as_object_mut().expect("object");
    map.insert("elements".into(), serde_json::to_value(t.elements()).expect("elements serialize"));
    map.insert("labels".into(), Value::from((0..t.order()).map(|i| t.show(i)).collect::<Vec<_>>()));
    map.insert("assumption".into(), t.assumption().map_or(Value::Null, Value::from));
    v
}

/// A generator label of `g`, or comma-separated coefficients.
fn parse_element(g: &AbelianGroup, text: &str) -> Result<Element> {
    if let Some(i) = g.label_index(text.trim()) {
        return Ok(g.gen(i));
    }
    let coeffs: Vec<Int> =
        text.split(',').map(|c| c.trim().parse::<Int>()).collect::<std::result::Result<_, _>>().map_err(|_| {
            Error::input(format!("'{text}' is neither a generator of {} nor a coefficient list", g.pretty()))
        })?;
    if coeffs.len() != g.ngens() {
        return Err(Error::input(format!("{} coefficients given for {}", coeffs.len(), g.pretty())));
    }
    g.reduce(&coeffs)
}

fn dispatch(verb: &Verb) -> Result<Outcome> {
    match verb {
        Verb::Kgroups(c) => {
            let (_, p) = load(c)?;
            Ok(Outcome::ok(if c.json { render(&p) } else { p.report() }))
        }
        Verb::Verify(c) => {
            let (_, p) = load(c)?;
            let report = validate(&p)?;
            let text = if c.json { render(&report) } else { report.text() };
            let code = if report.passed { EXIT_OK } else { EXIT_CHECK_FAILED };
            Ok(Outcome { code, stdout: text, stderr: String::new() })
        }
        Verb::TwistedTable { common, subgroup } => {
            let (_, p) = load(common)?;
            let g = twisted(&p, *subgroup)?;
            let t = g.full_table()?;
            Ok(Outcome::ok(if common.json { render_value(&table_json(&t)) } else { table_text(&g, &t) }))
        }
        Verb::Identify { common, subgroup } => {
            let (_, p) = load(common)?;
            let t = twisted(&p, *subgroup)?.full_table()?;
            let report = classify(&t);
            Ok(Outcome::ok(if common.json { render(&report) } else { format!("{}\n", report.summary()) }))
        }
        Verb::CountFields(c) => {
            let (expr, p) = load(c)?;
            let coh = CohomologyProfile::of_expr(&expr)?;
            let report = dadarlat_count_check(&p, &coh, c.n)?;
            let text = if c.json { render(&report) } else { format!("{}\n", report.text()) };
            let code = if report.passed() { EXIT_OK } else { EXIT_CHECK_FAILED };
            Ok(Outcome { code, stdout: text, stderr: String::new() })
        }
        Verb::Pimsner { common, rank, e_tilde } => {
            let (_, p) = load(common)?;
            let e = match e_tilde {
                Some(text) => parse_element(p.red(0), text)?,
                None => p.red(0).zero(),
            };
            let pieces = pimsner_pieces(&p, rank.unwrap_or(common.n + 1), &e)?;
            Ok(Outcome::ok(if common.json { render(&pieces) } else { format!("{}\n", pieces.text()) }))
        }
        Verb::Simn { ring, n, json } => {
            let value: Value = serde_json::from_str(&read_file(ring)?)
                .map_err(|e| Error::input(format!("ring file {}: {e}", ring.display())))?;
            let r = FiniteNilRing::from_json(&value)?;
            let report = lemma_tec_check(&r, *n)?;
            let code = if report.inequality { EXIT_OK } else { EXIT_CHECK_FAILED };
            let text = if *json {
                render(&report)
            } else {
                let classes = sim_n_quotient(&r, *n)?;
                let mut s = format!("R = {}, n = {n}: {} classes\n", r.additive().pretty(), classes.len());
                for c in &classes {
                    let members: Vec<String> = c.iter().map(|e| r.show(e)).collect();
                    s.push_str(&format!("  {{{}}}\n", members.join(", ")));
                }
                let rel = if report.inequality { ">=" } else { "<" };
                s.push_str(&format!("|R/~_n| = {} {rel} |R ⊗ Z_n| = {}\n", report.classes, report.tensor_order));
                s.push_str(
                    "note: a unit factor r^{-1} in the source formula is taken as absorbed into z, not interpreted\n",
                );
                s
            };
            Ok(Outcome { code, stdout: text, stderr: String::new() })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        run(std::iter::once("moorek").chain(args.iter().copied()))
    }

    #[test]
    fn kgroups_of_moore_space() {
        let out = go(&["kgroups", "M(3)", "-n", "3"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.contains("K̃^0        = Z_3"));
        assert!(out.stdout.contains("K̃^1        = 0"));
    }

    #[test]
    fn parse_errors_point_at_the_position() {
        let out = go(&["kgroups", "susp(M(3)", "-n", "3"]);
        assert_eq!(out.code, EXIT_INPUT);
        assert!(out.stderr.contains("position"));
        assert!(out.stderr.contains('^'));
    }

    #[test]
    fn identify_subgroup() {
        let out = go(&["identify", "MxSM(3)", "-n", "3", "--subgroup"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.starts_with("nonabelian, order 27, Heisenberg"));
    }

    #[test]
    fn element_parsing() {
        let g = AbelianGroup::new(vec![3, 0], vec!["a".into(), "t".into()]).unwrap();
        assert_eq!(parse_element(&g, "t").unwrap(), g.gen(1));
        assert_eq!(parse_element(&g, "4, -1").unwrap(), Element(vec![1, -1]));
        assert!(parse_element(&g, "1").is_err());
    }
}
