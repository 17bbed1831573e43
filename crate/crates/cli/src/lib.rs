//! Command-line front end: evaluate family members, run identity checks,
//! list the registry. All logic lives here behind writer and exit-code
//! seams so the integration tests can drive the exact code paths `main`
//! uses.

use std::io::{self, Write};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use qlucas_core::fiblucas::{fib, lucas};
use qlucas_core::identities::{find, registry, GridOpts, IdentityInfo, IdentityReport};
use qlucas_core::qfun::{q_catalan, q_hermite, rogers_szego};

#[derive(Parser, Debug)]
#[command(
    name = "qlucas",
    version,
    about = "Construct q-Fibonacci and q-Lucas polynomials and verify their identities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print one family member in canonical polynomial form
    Eval(EvalArgs),
    /// Run identity checks, one report line per grid point
    Verify(VerifyArgs),
    /// List the registered identities with their default grids
    List,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    /// Polynomial family to evaluate
    #[arg(long, value_enum)]
    pub family: Family,
    /// Index n (negative allowed for fib, lucas, lucas-star)
    #[arg(long, allow_negative_numbers = true)]
    pub n: i64,
    /// With --family lucas: the variant with constant term 1 at n = 0
    #[arg(long)]
    pub star: bool,
}

#[derive(Args, Debug)]
#[command(group = ArgGroup::new("selection").required(true).args(["all", "ids"]))]
pub struct VerifyArgs {
    /// Check every registered identity
    #[arg(long)]
    pub all: bool,
    /// Check one identity by id (repeatable)
    #[arg(long = "id", value_name = "ID")]
    pub ids: Vec<String>,
    /// Override the top of the primary index grid
    #[arg(long = "max-n", value_name = "N", allow_negative_numbers = true)]
    pub max_n: Option<i64>,
    /// Override the shift values m (repeatable)
    #[arg(long = "m", value_name = "M", allow_negative_numbers = true)]
    pub m_values: Vec<i64>,
    /// Override the series truncation order
    #[arg(long, value_name = "N")]
    pub order: Option<usize>,
    /// Report format
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Run identities on worker threads (report order is unchanged)
    #[arg(long)]
    pub parallel: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Fib,
    Lucas,
    LucasStar,
    Hermite,
    RogersSzego,
    Catalan,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

/// Identities whose shift parameter is a parity selector, not a free
/// integer: `--m` values outside {0, 1} are a usage error for these.
const PARITY_M_IDS: [&str; 5] = ["eq5.11", "eq5.12", "eq5.13", "eq5.14", "eq5.31"];

/// Dispatch a parsed command line. Returns the process exit code:
/// 0 all checks passed, 1 some check failed, 2 usage error.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    match cli.command {
        Command::Eval(args) => eval_command(&args, out, err),
        Command::Verify(args) => verify_command(&args, out, err),
        Command::List => list_command(out),
    }
}

fn eval_command(args: &EvalArgs, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    if args.star && args.family != Family::Lucas {
        writeln!(err, "error: --star only applies to --family lucas")?;
        return Ok(2);
    }
    if args.n < 0
        && matches!(
            args.family,
            Family::Hermite | Family::RogersSzego | Family::Catalan
        )
    {
        writeln!(err, "error: this family is only defined for n >= 0")?;
        return Ok(2);
    }
    let poly = match args.family {
        Family::Fib => fib(args.n),
        Family::Lucas => lucas(args.n, args.star),
        Family::LucasStar => lucas(args.n, true),
        Family::Hermite => q_hermite(args.n),
        Family::RogersSzego => rogers_szego(args.n),
        Family::Catalan => q_catalan(args.n),
    };
    writeln!(out, "{poly}")?;
    Ok(0)
}

fn verify_command(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    let infos = match select(args.all, &args.ids) {
        Ok(infos) => infos,
        Err(msg) => {
            writeln!(err, "error: {msg}")?;
            return Ok(2);
        }
    };
    let opts = GridOpts {
        max_n: args.max_n,
        m_values: if args.m_values.is_empty() {
            None
        } else {
            Some(args.m_values.clone())
        },
        order: args.order,
    };
    if let Err(msg) = validate_m_values(&infos, &opts) {
        writeln!(err, "error: {msg}")?;
        return Ok(2);
    }
    run_checks(&infos, &opts, args.format, args.parallel, out)
}

/// Resolve the requested ids against the registry, keeping registry
/// order. Every id is validated before any check runs.
pub fn select(all: bool, ids: &[String]) -> Result<Vec<&'static IdentityInfo>, String> {
    if all {
        return Ok(registry().iter().collect());
    }
    for id in ids {
        if find(id).is_none() {
            return Err(format!("unknown identity id '{id}' (see `qlucas list`)"));
        }
    }
    Ok(registry()
        .iter()
        .filter(|info| ids.iter().any(|id| id == info.id))
        .collect())
}

/// Reject `--m` values that a selected identity cannot take.
pub fn validate_m_values(infos: &[&IdentityInfo], opts: &GridOpts) -> Result<(), String> {
    if let Some(ms) = &opts.m_values {
        let parity_bound = infos.iter().any(|info| PARITY_M_IDS.contains(&info.id));
        if parity_bound {
            if let Some(bad) = ms.iter().find(|m| **m != 0 && **m != 1) {
                return Err(format!(
                    "--m {bad} is out of range: the master formulas and eq5.31 take m in {{0, 1}}"
                ));
            }
        }
    }
    Ok(())
}

/// Run the selected identities and emit one report per grid point, in
/// registry order regardless of `parallel`. Returns 0 if every report
/// passed, 1 otherwise.
pub fn run_checks(
    infos: &[&IdentityInfo],
    opts: &GridOpts,
    format: OutputFormat,
    parallel: bool,
    out: &mut dyn Write,
) -> io::Result<i32> {
    let batches: Vec<Vec<IdentityReport>> = if parallel {
        infos.par_iter().map(|info| info.run(opts)).collect()
    } else {
        infos.iter().map(|info| info.run(opts)).collect()
    };
    let mut all_pass = true;
    for report in batches.iter().flatten() {
        all_pass &= report.pass;
        match format {
            OutputFormat::Text => emit_text(report, out)?,
            OutputFormat::Json => emit_json(report, out)?,
        }
    }
    Ok(if all_pass { 0 } else { 1 })
}

fn emit_text(report: &IdentityReport, out: &mut dyn Write) -> io::Result<()> {
    let status = if report.pass { "PASS" } else { "FAIL" };
    write!(
        out,
        "{status} {:<13} {:<26} {:>6}ms",
        report.id,
        report.params.to_string(),
        report.elapsed.as_millis()
    )?;
    if let Some(counterexample) = &report.counterexample {
        write!(out, "  LHS-RHS = {counterexample}")?;
    }
    writeln!(out)
}

/// One JSON object per line with a fixed key order:
/// `{"id":...,"params":{...},"status":...,"counterexample":...,"elapsed_ms":...}`.
fn emit_json(report: &IdentityReport, out: &mut dyn Write) -> io::Result<()> {
    let mut line = String::from("{\"id\":");
    line.push_str(&serde_json::to_string(&report.id).expect("string serializes"));
    line.push_str(",\"params\":{");
    for (i, (name, value)) in report.params.0.iter().enumerate() {
        if i > 0 {
            line.push(',');
        }
        line.push_str(&format!("\"{name}\":{value}"));
    }
    line.push_str("},\"status\":");
    line.push_str(if report.pass { "\"pass\"" } else { "\"fail\"" });
    line.push_str(",\"counterexample\":");
    match &report.counterexample {
        None => line.push_str("null"),
        Some(c) => line.push_str(&serde_json::to_string(c).expect("string serializes")),
    }
    line.push_str(&format!(",\"elapsed_ms\":{}", report.elapsed.as_millis()));
    line.push('}');
    writeln!(out, "{line}")
}

fn list_command(out: &mut dyn Write) -> io::Result<i32> {
    for info in registry() {
        let marker = if info.x_at_one { "x=1" } else { "   " };
        writeln!(
            out,
            "{:<13} {marker}  {:<42} {}",
            info.id, info.grid, info.summary
        )?;
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn select_keeps_registry_order_and_rejects_unknown_ids() {
        let picked = select(false, &["eq2.7".into(), "eq1.8".into()]).unwrap();
        let ids: Vec<&str> = picked.iter().map(|i| i.id).collect();
        assert_eq!(ids, ["eq1.8", "eq2.7"]);
        assert!(select(false, &["eq1.8".into(), "bogus".into()]).is_err());
        assert_eq!(select(true, &[]).unwrap().len(), registry().len());
    }

    #[test]
    fn parity_m_validation() {
        let master = vec![find("eq5.11").unwrap()];
        let free = vec![find("eq4.7").unwrap()];
        let opts = |ms: Vec<i64>| GridOpts {
            m_values: Some(ms),
            ..GridOpts::default()
        };
        assert!(validate_m_values(&master, &opts(vec![0, 1])).is_ok());
        assert!(validate_m_values(&master, &opts(vec![2])).is_err());
        assert!(validate_m_values(&free, &opts(vec![-3, 5])).is_ok());
        assert!(validate_m_values(&master, &GridOpts::default()).is_ok());
    }

    #[test]
    fn json_lines_have_the_documented_shape() {
        let info = find("eq3.1").unwrap();
        let opts = GridOpts {
            max_n: Some(2),
            ..GridOpts::default()
        };
        let mut out = Vec::new();
        let code = run_checks(&[info], &opts, OutputFormat::Json, false, &mut out).unwrap();
        assert_eq!(code, 0);
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with("{\"id\":\"eq3.1\",\"params\":{\"n\":0},\"status\":\"pass\",\"counterexample\":null,\"elapsed_ms\":"));
        for line in lines {
            let value: serde_json::Value = serde_json::from_str(line).unwrap();
            let object = value.as_object().unwrap();
            // parsed keys come back sorted; the emitted byte order is
            // pinned by the starts_with assertion above
            let keys: Vec<&String> = object.keys().collect();
            assert_eq!(
                keys,
                ["counterexample", "elapsed_ms", "id", "params", "status"]
            );
        }
    }

    #[test]
    fn parallel_and_sequential_reports_agree() {
        let infos = select(false, &["eq1.8".into(), "eq2.12".into(), "eq3.2".into()]).unwrap();
        let opts = GridOpts {
            max_n: Some(6),
            ..GridOpts::default()
        };
        let strip_timing = |bytes: Vec<u8>| -> Vec<String> {
            String::from_utf8(bytes)
                .unwrap()
                .lines()
                .map(|l| l.rsplit_once("\"elapsed_ms\"").unwrap().0.to_string())
                .collect()
        };
        let mut seq = Vec::new();
        run_checks(&infos, &opts, OutputFormat::Json, false, &mut seq).unwrap();
        let mut par = Vec::new();
        run_checks(&infos, &opts, OutputFormat::Json, true, &mut par).unwrap();
        assert_eq!(strip_timing(seq), strip_timing(par));
    }
}
