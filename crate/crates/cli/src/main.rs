//! `iquo`: command-line front end for semigroup tables in `.sgp` format.
//!
//! Exit status: 0 on success or a true verdict, 1 on a false verdict,
//! 2 on unreadable or invalid input.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use iquo::abundance::{abundance_profile, abundant_classification};
use iquo::audit::audit_quotient;
use iquo::builders::{
    b2, brandt, c2z, dedup_isomorphic, enumerate_semigroups_with_zero, example_fixture,
    group_with_zero, null2, s1, zero_direct_union, GroupTable,
};
use iquo::conditions::{profile, ConditionExpr};
use iquo::inverse::{inverse_profile, zero_direct_union_decompose};
use iquo::morphisms::{find_isomorphism, parse_pin_map, pins_to_partial, two_sided_suite};
use iquo::quotient::build_quotient;
use iquo::relations::{green, lambda_rho_tau, starred, BinaryRelation, Partition};
use iquo::semigroup::DEFAULT_MAX_WITNESSES;
use iquo::sgp::{parse_sgp_with, serialize_sgp, serialize_sgp_stream};
use iquo::{Error, FiniteSemigroup};

#[derive(Parser)]
#[command(
    name = "iquo",
    version,
    about = "Semigroups of left I-quotients for finite semigroups with zero"
)]
struct Cli {
    /// Most validation failures reported for a bad table.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_WITNESSES)]
    max_witnesses: usize,

    /// Output path (a file, or a directory for `decompose`).
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a file holds an associative table with absorbing zero.
    Validate { input: PathBuf },
    /// Print Green's relations, their starred versions, and λ, ρ, τ.
    Relations { input: PathBuf },
    /// Evaluate conditions A-E, their duals and STAR.
    Check {
        input: PathBuf,
        /// Verdict expression instead of A,B,C,D (e.g. "A,B,!D_dual").
        #[arg(long = "where")]
        expr: Option<String>,
    },
    /// Build the primitive inverse semigroup of left I-quotients.
    Quotient { input: PathBuf },
    /// Report inverse, primitive and Brandt structure.
    Analyze { input: PathBuf },
    /// Split a primitive inverse semigroup into Brandt components.
    Decompose { input: PathBuf },
    /// Search for an isomorphism between two tables.
    Iso {
        left: PathBuf,
        right: PathBuf,
        /// File of `a b` lines fixing images.
        #[arg(long)]
        pin: Option<PathBuf>,
    },
    /// Abundance, adequacy and ampleness with the classification triples.
    Abundance { input: PathBuf },
    /// Write a standard construction.
    Make {
        #[command(subcommand)]
        what: Make,
    },
    /// Stream every table of a given order with zero at 0.
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long = "where")]
        expr: Option<String>,
        /// Keep one table per isomorphism class.
        #[arg(long)]
        up_to_iso: bool,
    },
    /// Run the invariant suites on built-in fixtures.
    Selftest,
}

#[derive(Subcommand)]
enum Make {
    /// Brandt semigroup over a cyclic group.
    Brandt {
        #[arg(long, default_value_t = 1)]
        group: usize,
        #[arg(long)]
        index: usize,
    },
    /// Cyclic group with a zero adjoined.
    G0 {
        #[arg(long, default_value_t = 1)]
        group: usize,
    },
    /// One row of a Brandt semigroup, a left but not right I-order in it.
    Example {
        #[arg(long, default_value_t = 1)]
        group: usize,
        #[arg(long)]
        index: usize,
        #[arg(long, default_value_t = 1)]
        row: usize,
    },
    /// 0-direct union of the given tables.
    Union { inputs: Vec<PathBuf> },
}

enum Verdict {
    True,
    False,
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }
}

type CliResult = Result<Verdict, String>;

struct Ctx {
    max_witnesses: usize,
    output: Option<PathBuf>,
    out: String,
}

impl Ctx {
    fn read(&self, path: &Path) -> Result<FiniteSemigroup, String> {
        let text = read_text(path)?;
        parse_sgp_with(&text, self.max_witnesses).map_err(|e| format!("{}: {e}", path.display()))
    }

    /// Write `text` to the output file if one was given, else to stdout.
    fn emit(&mut self, text: &str) -> Result<(), String> {
        match &self.output {
            Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
            None => {
                self.out.push_str(text);
                Ok(())
            }
        }
    }
}

fn read_text(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_expr(text: &str) -> Result<ConditionExpr, String> {
    text.parse().map_err(|e| format!("--where: {e}"))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn partition_line(out: &mut String, name: &str, s: &FiniteSemigroup, p: &Partition) {
    out.push_str(name);
    for class in p.classes() {
        let names: Vec<String> = class.iter().map(|&a| s.name(a)).collect();
        let _ = write!(out, " {{{}}}", names.join(" "));
    }
    out.push('\n');
}

fn relation_line(out: &mut String, name: &str, s: &FiniteSemigroup, r: &BinaryRelation) {
    out.push_str(name);
    for (a, b) in r.pairs() {
        let _ = write!(out, " ({},{})", s.name(a), s.name(b));
    }
    out.push('\n');
}

fn validate(ctx: &mut Ctx, input: &Path) -> CliResult {
    let text = read_text(input)?;
    match parse_sgp_with(&text, ctx.max_witnesses) {
        Ok(s) => {
            let _ = writeln!(ctx.out, "VALID {}", s.len());
            Ok(Verdict::True)
        }
        Err(Error::Validation(report)) => {
            ctx.out.push_str("INVALID\n");
            ctx.out.push_str(&report.to_string());
            Ok(Verdict::False)
        }
        Err(e) => Err(format!("{}: {e}", input.display())),
    }
}

fn relations(ctx: &mut Ctx, input: &Path) -> CliResult {
    let s = ctx.read(input)?;
    let g = green(&s);
    let st = starred(&s);
    let lrt = lambda_rho_tau(&s);
    let out = &mut ctx.out;
    partition_line(out, "R", &s, &g.r);
    partition_line(out, "L", &s, &g.l);
    partition_line(out, "H", &s, &g.h);
    partition_line(out, "D", &s, &g.d);
    partition_line(out, "R*", &s, &st.r_star);
    partition_line(out, "L*", &s, &st.l_star);
    partition_line(out, "H*", &s, &st.h_star);
    relation_line(out, "lambda", &s, &lrt.lambda);
    relation_line(out, "rho", &s, &lrt.rho);
    relation_line(out, "tau", &s, &lrt.tau);
    Ok(Verdict::True)
}

fn summary_lines(out: &mut String, report: &iquo::conditions::ConditionReport) {
    let sum = &report.summary;
    for (name, v) in [
        ("left_quotient", sum.left_quotient),
        ("right_quotient", sum.right_quotient),
        ("two_sided_by_duals", sum.two_sided_by_duals),
        ("two_sided_by_r_star", sum.two_sided_by_r_star),
        ("two_sided_by_e", sum.two_sided_by_e),
        ("primitive_adequate", sum.primitive_adequate),
    ] {
        let _ = writeln!(out, "{name} {}", yes(v));
    }
}

fn check(ctx: &mut Ctx, input: &Path, expr: Option<&str>) -> CliResult {
    let expr = expr.map(parse_expr).transpose()?;
    let s = ctx.read(input)?;
    let report = profile(&s);
    ctx.out.push_str(&report.to_lines(&s));
    summary_lines(&mut ctx.out, &report);
    Ok(match expr {
        Some(e) => e.eval(&report),
        None => report.summary.left_quotient,
    }
    .into())
}

fn quotient(ctx: &mut Ctx, input: &Path) -> CliResult {
    let s = ctx.read(input)?;
    match build_quotient(&s) {
        Ok(q) => {
            let text = serialize_sgp(q.semigroup());
            ctx.emit(&text)?;
            if let Some(path) = &ctx.output {
                let mut map_path = path.clone().into_os_string();
                map_path.push(".map");
                fs::write(&map_path, q.mapping_text(&s))
                    .map_err(|e| format!("{}: {e}", PathBuf::from(&map_path).display()))?;
            }
            Ok(Verdict::True)
        }
        Err(Error::ConditionsNotSatisfied(report)) => {
            ctx.out.push_str(&report.to_lines(&s));
            Ok(Verdict::False)
        }
        Err(e) => Err(e.to_string()),
    }
}

fn analyze(ctx: &mut Ctx, input: &Path) -> CliResult {
    let s = ctx.read(input)?;
    let p = inverse_profile(&s);
    let out = &mut ctx.out;
    for (name, v) in [
        ("regular", p.regular),
        ("inverse", p.inverse),
        ("semilattice", p.semilattice),
        ("primitive", p.primitive),
        ("brandt", p.brandt),
    ] {
        let _ = writeln!(out, "{name} {}", yes(v));
    }
    let idem: Vec<String> = p.idempotents.iter().map(|&e| s.name(e)).collect();
    let _ = writeln!(out, "idempotents {}", idem.join(" "));
    if let Some(inv) = &p.inv_map {
        for a in s.elements() {
            let _ = writeln!(out, "inverse {} {}", s.name(a), s.name(inv[a]));
        }
    }
    for class in &p.d_components {
        let names: Vec<String> = class.iter().map(|&a| s.name(a)).collect();
        let _ = writeln!(out, "component {}", names.join(" "));
    }
    Ok(Verdict::True)
}

fn decompose(ctx: &mut Ctx, input: &Path) -> CliResult {
    let s = ctx.read(input)?;
    let comps = match zero_direct_union_decompose(&s) {
        Ok(c) => c,
        Err(Error::NotPrimitiveInverse) => {
            ctx.out.push_str("NOT-PRIMITIVE-INVERSE\n");
            return Ok(Verdict::False);
        }
        Err(e) => return Err(e.to_string()),
    };
    let inclusion = |c: &iquo::inverse::Component| -> String {
        c.inclusion
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    match &ctx.output {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
            let mut manifest = String::new();
            for (i, c) in comps.iter().enumerate() {
                let name = format!("component_{}.sgp", i + 1);
                let path = dir.join(&name);
                fs::write(&path, serialize_sgp(&c.semigroup))
                    .map_err(|e| format!("{}: {e}", path.display()))?;
                let _ = writeln!(manifest, "{name} {}", inclusion(c));
            }
            let path = dir.join("manifest.txt");
            fs::write(&path, manifest).map_err(|e| format!("{}: {e}", path.display()))?;
        }
        None => {
            for (i, c) in comps.iter().enumerate() {
                if i > 0 {
                    ctx.out.push('\n');
                }
                ctx.out.push_str(&serialize_sgp(&c.semigroup));
                let _ = writeln!(ctx.out, "# inclusion {}", inclusion(c));
            }
        }
    }
    Ok(Verdict::True)
}

fn iso(ctx: &mut Ctx, left: &Path, right: &Path, pin: Option<&Path>) -> CliResult {
    let a = ctx.read(left)?;
    let b = ctx.read(right)?;
    let pins = match pin {
        Some(path) => {
            let pairs =
                parse_pin_map(&read_text(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
            pins_to_partial(&pairs, a.len(), b.len())
                .map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => Vec::new(),
    };
    match find_isomorphism(&a, &b, &pins) {
        Some(m) => {
            ctx.out.push_str(&m.to_lines());
            Ok(Verdict::True)
        }
        None => {
            ctx.out.push_str("NOT-ISOMORPHIC\n");
            Ok(Verdict::False)
        }
    }
}

fn abundance(ctx: &mut Ctx, input: &Path) -> CliResult {
    let s = ctx.read(input)?;
    ctx.out.push_str(&abundance_profile(&s).to_lines(&s));
    let c = abundant_classification(&s);
    ctx.out.push_str(&c.to_lines());
    Ok((c.left.agrees() && c.two_sided.agrees()).into())
}

fn make(ctx: &mut Ctx, what: &Make) -> CliResult {
    let group = |m: usize| {
        if m == 0 {
            Err("--group must be at least 1".to_string())
        } else {
            Ok(GroupTable::cyclic(m))
        }
    };
    let s = match what {
        Make::Brandt { group: m, index } => {
            brandt(&group(*m)?, *index).map_err(|e| e.to_string())?
        }
        Make::G0 { group: m } => group_with_zero(&group(*m)?),
        Make::Example {
            group: m,
            index,
            row,
        } => {
            example_fixture(&group(*m)?, *index, *row)
                .map_err(|e| e.to_string())?
                .0
        }
        Make::Union { inputs } => {
            let parts = inputs
                .iter()
                .map(|p| ctx.read(p))
                .collect::<Result<Vec<_>, _>>()?;
            zero_direct_union(&parts)
        }
    };
    ctx.emit(&serialize_sgp(&s))?;
    Ok(Verdict::True)
}

fn enumerate(ctx: &mut Ctx, order: usize, expr: Option<&str>, up_to_iso: bool) -> CliResult {
    let expr = expr.map(parse_expr).transpose()?;
    let found = enumerate_semigroups_with_zero(order, |s| {
        expr.as_ref().is_none_or(|e| e.eval(&profile(s)))
    })
    .map_err(|e| e.to_string())?;
    let found = if up_to_iso {
        dedup_isomorphic(found)
    } else {
        found
    };
    ctx.emit(&serialize_sgp_stream(&found))?;
    Ok(Verdict::True)
}

fn selftest(ctx: &mut Ctx) -> CliResult {
    let fixtures: Vec<(&str, FiniteSemigroup)> = vec![
        ("trivial", FiniteSemigroup::trivial()),
        ("null2", null2()),
        ("c2z", c2z()),
        ("s1", s1()),
        ("b2", b2()),
        (
            "brandt_c2_2",
            brandt(&GroupTable::cyclic(2), 2).map_err(|e| e.to_string())?,
        ),
        (
            "example_c2_2_1",
            example_fixture(&GroupTable::cyclic(2), 2, 1)
                .map_err(|e| e.to_string())?
                .0,
        ),
        ("union_b2_c2z", zero_direct_union(&[b2(), c2z()])),
    ];
    let mut all = true;
    for (name, s) in &fixtures {
        let report = profile(s);
        let mut problems = Vec::new();
        if report.summary.left_quotient {
            match build_quotient(s) {
                Ok(q) => {
                    let audit = audit_quotient(s, &q);
                    problems.extend(audit.failures().map(|c| c.name.to_string()));
                }
                Err(e) => problems.push(e.to_string()),
            }
            match two_sided_suite(s) {
                Ok(r) if r.consistent() => {}
                Ok(_) => problems.push("two_sided".into()),
                Err(e) => problems.push(e.to_string()),
            }
        } else if build_quotient(s).is_ok() {
            problems.push("quotient built without conditions".into());
        }
        let sum = report.summary;
        if sum.two_sided_by_duals != sum.two_sided_by_r_star
            || sum.two_sided_by_duals != sum.two_sided_by_e
        {
            problems.push("two_sided_bundles".into());
        }
        let c = abundant_classification(s);
        if !c.left.agrees() || !c.two_sided.agrees() {
            problems.push("classification".into());
        }
        all &= problems.is_empty();
        if problems.is_empty() {
            let _ = writeln!(ctx.out, "{name} PASS");
        } else {
            let _ = writeln!(ctx.out, "{name} FAIL {}", problems.join(" "));
        }
    }
    Ok(all.into())
}

fn run(cli: &Cli, ctx: &mut Ctx) -> CliResult {
    match &cli.command {
        Command::Validate { input } => validate(ctx, input),
        Command::Relations { input } => relations(ctx, input),
        Command::Check { input, expr } => check(ctx, input, expr.as_deref()),
        Command::Quotient { input } => quotient(ctx, input),
        Command::Analyze { input } => analyze(ctx, input),
        Command::Decompose { input } => decompose(ctx, input),
        Command::Iso { left, right, pin } => iso(ctx, left, right, pin.as_deref()),
        Command::Abundance { input } => abundance(ctx, input),
        Command::Make { what } => make(ctx, what),
        Command::Enumerate {
            order,
            expr,
            up_to_iso,
        } => enumerate(ctx, *order, expr.as_deref(), *up_to_iso),
        Command::Selftest => selftest(ctx),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let mut ctx = Ctx {
        max_witnesses: cli.max_witnesses,
        output: cli.output.clone(),
        out: String::new(),
    };
    let result = run(&cli, &mut ctx);
    print!("{}", ctx.out);
    match result {
        Ok(Verdict::True) => ExitCode::SUCCESS,
        Ok(Verdict::False) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
