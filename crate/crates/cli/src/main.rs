//! Command-line front end: solve, decompose, and count equations over
//! linearly ordered semilattices, reproduce the component-count table,
//! and run the verification suites.

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde_json::json;

use semichain::checks::{
    check_asymptotic_ratios, check_average_bounds, check_component_counts_match_formula,
    check_component_overlap_structure, check_components_cover_solutions, check_counting_identities,
    check_oracle_agreement, check_partition_enumeration_counts, check_point_extension_totality,
    check_reference_table, CheckReport,
};
use semichain::counting::{average_component_count, average_component_count_order2};
use semichain::{
    classify, decompose, parse_equation, reference_table, solve, Chain, EquationClass, Point,
};

#[derive(Parser)]
#[command(
    name = "semichain",
    version,
    about = "Equations over linearly ordered semilattices: solve, decompose, count"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    PaperTable,
    Oracle,
    Identities,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate both sides of an equation at a point
    Eval {
        /// Number of variables
        #[arg(long)]
        n: u32,
        /// Chain order
        #[arg(long)]
        l: u32,
        /// Equation text, e.g. "x1x2 = x1x3" or "x1 <= x2"
        #[arg(long)]
        eq: String,
        /// Point as comma-separated ranks, e.g. "2,1,1"
        #[arg(long)]
        point: String,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// List the solution set of an equation
    Solve {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        l: u32,
        #[arg(long)]
        eq: String,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Split a solution set into its irreducible components
    Decompose {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        l: u32,
        #[arg(long)]
        eq: String,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Count irreducible components from the equation class
    Count {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        l: u32,
        /// Equation text; alternative to --k1/--k2
        #[arg(long)]
        eq: Option<String>,
        /// Variables exclusive to the left side
        #[arg(long)]
        k1: Option<u32>,
        /// Variables exclusive to the right side
        #[arg(long)]
        k2: Option<u32>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Average component count over all equations in n variables
    Average {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        l: u32,
        /// Also evaluate the order-2 closed form and report agreement
        #[arg(long)]
        closed_form: bool,
        /// Decimal digits for rational rendering
        #[arg(long, default_value_t = 6)]
        precision: u32,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Print the component-count table for three variables over the
    /// two-element chain
    Table {
        /// Decimal digits for rational rendering
        #[arg(long, default_value_t = 6)]
        precision: u32,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Run the verification suites
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Cap on the variable count of the decomposition sweeps
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Cap on the chain order of the decomposition sweeps
        #[arg(long, default_value_t = 3)]
        max_l: u32,
    },
}

fn main() {
    // Die quietly when the consumer closes the pipe, e.g. `semichain table | head`.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run(Cli::parse()) {
        Ok(code) => std::process::exit(code),
        Err(message) => {
            eprintln!("error: {message}");
            std::process::exit(2);
        }
    }
}

fn run(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::Eval {
            n,
            l,
            eq,
            point,
            format,
        } => cmd_eval(n, l, &eq, &point, format),
        Command::Solve { n, l, eq, format } => cmd_solve(n, l, &eq, format),
        Command::Decompose { n, l, eq, format } => cmd_decompose(n, l, &eq, format),
        Command::Count {
            n,
            l,
            eq,
            k1,
            k2,
            format,
        } => cmd_count(n, l, eq.as_deref(), k1, k2, format),
        Command::Average {
            n,
            l,
            closed_form,
            precision,
            format,
        } => cmd_average(n, l, closed_form, precision, format),
        Command::Table { precision, format } => cmd_table(precision, format),
        Command::Verify {
            suite,
            max_n,
            max_l,
        } => cmd_verify(suite, max_n, max_l),
    }
}

fn fail<T: std::fmt::Display>(e: T) -> String {
    e.to_string()
}

fn parse_ranks(text: &str) -> Result<Vec<u32>, String> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<u32>()
                .map_err(|_| format!("point: expected comma-separated ranks, got {text:?}"))
        })
        .collect()
}

/// Rounds half away from zero to the given number of decimal digits.
fn decimal(value: &BigRational, precision: u32) -> String {
    let negative = value.is_negative();
    let magnitude = value.abs();
    let scale = BigInt::from(10u32).pow(precision);
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let rounded = (magnitude * BigRational::from(scale) + half)
        .floor()
        .to_integer();
    let sign = if negative { "-" } else { "" };
    if precision == 0 {
        return format!("{sign}{rounded}");
    }
    let width = precision as usize + 1;
    let digits = format!("{rounded:0>width$}");
    let (int_part, frac_part) = digits.split_at(digits.len() - precision as usize);
    format!("{sign}{int_part}.{frac_part}")
}

fn emit_json(command: &str, n: u32, l: u32, result: serde_json::Value) {
    let top = json!({ "command": command, "n": n, "l": l, "result": result });
    println!("{top}");
}

fn emit_csv(records: &[Vec<String>]) -> Result<(), String> {
    let mut writer = csv::WriterBuilder::new()
        .flexible(true)
        .from_writer(Vec::new());
    for record in records {
        writer.write_record(record).map_err(fail)?;
    }
    let bytes = writer.into_inner().map_err(fail)?;
    print!("{}", String::from_utf8(bytes).map_err(fail)?);
    Ok(())
}

fn cmd_eval(n: u32, l: u32, eq: &str, point: &str, format: Option<Format>) -> Result<i32, String> {
    let chain = Chain::new(l).map_err(fail)?;
    let equation = parse_equation(eq, n).map_err(fail)?;
    let p = Point::new(chain, parse_ranks(point)?).map_err(fail)?;
    if p.dim() != n as usize {
        return Err(format!("point has {} coordinates, expected {n}", p.dim()));
    }
    let lhs = p.eval(equation.lhs()).map_err(fail)?;
    let rhs = p.eval(equation.rhs()).map_err(fail)?;
    let solution = lhs == rhs;
    match format {
        None => {
            println!("lhs {} -> {lhs}", equation.lhs());
            println!("rhs {} -> {rhs}", equation.rhs());
            println!("solution: {solution}");
        }
        Some(Format::Json) => emit_json(
            "eval",
            n,
            l,
            json!({
                "point": p.to_string(),
                "lhs": lhs.to_string(),
                "rhs": rhs.to_string(),
                "solution": solution,
            }),
        ),
        Some(Format::Csv) => emit_csv(&[
            vec!["lhs".into(), "rhs".into(), "solution".into()],
            vec![lhs.to_string(), rhs.to_string(), solution.to_string()],
        ])?,
    }
    Ok(0)
}

fn cmd_solve(n: u32, l: u32, eq: &str, format: Option<Format>) -> Result<i32, String> {
    let chain = Chain::new(l).map_err(fail)?;
    let equation = parse_equation(eq, n).map_err(fail)?;
    let set = solve(&equation, chain, n as usize).map_err(fail)?;
    match format {
        None => {
            for point in set.iter() {
                println!("{point}");
            }
            println!("{} points", set.len());
        }
        Some(Format::Json) => emit_json("solve", n, l, serde_json::to_value(&set).map_err(fail)?),
        Some(Format::Csv) => {
            let mut records = vec![vec!["point".to_string()]];
            records.extend(set.iter().map(|p| vec![p.to_string()]));
            emit_csv(&records)?;
        }
    }
    Ok(0)
}

fn cmd_decompose(n: u32, l: u32, eq: &str, format: Option<Format>) -> Result<i32, String> {
    let chain = Chain::new(l).map_err(fail)?;
    let equation = parse_equation(eq, n).map_err(fail)?;
    let components = decompose(&equation, chain, n as usize).map_err(fail)?;
    let solution_points = solve(&equation, chain, n as usize).map_err(fail)?.len();
    match format {
        None => {
            for c in &components {
                println!(
                    "{} size {} canonical {}",
                    c.partition,
                    c.set.len(),
                    c.partition.canonical_point()
                );
            }
            println!("components: {}", components.len());
            println!("solution points: {solution_points}");
        }
        Some(Format::Json) => {
            let rows: Vec<serde_json::Value> = components
                .iter()
                .map(|c| {
                    Ok(json!({
                        "partition": serde_json::to_value(&c.partition).map_err(fail)?,
                        "size": c.set.len(),
                        "canonical_point": c.partition.canonical_point().to_string(),
                    }))
                })
                .collect::<Result<_, String>>()?;
            emit_json(
                "decompose",
                n,
                l,
                json!({
                    "components": rows,
                    "component_count": components.len(),
                    "solution_points": solution_points,
                }),
            );
        }
        Some(Format::Csv) => {
            let mut records = vec![vec![
                "partition".into(),
                "component_size".into(),
                "canonical_point".into(),
            ]];
            records.extend(components.iter().map(|c| {
                vec![
                    c.partition.to_string(),
                    c.set.len().to_string(),
                    c.partition.canonical_point().to_string(),
                ]
            }));
            emit_csv(&records)?;
        }
    }
    Ok(0)
}

fn cmd_count(
    n: u32,
    l: u32,
    eq: Option<&str>,
    k1: Option<u32>,
    k2: Option<u32>,
    format: Option<Format>,
) -> Result<i32, String> {
    let class = match (eq, k1, k2) {
        (Some(text), None, None) => {
            let equation = parse_equation(text, n).map_err(fail)?;
            classify(&equation, n).map_err(fail)?
        }
        (None, Some(k1), Some(k2)) => EquationClass::new(k1, k2, n).map_err(fail)?,
        _ => return Err("count: pass either --eq or both --k1 and --k2".to_string()),
    };
    let count = semichain::counting::irreducible_component_count(class, l).map_err(fail)?;
    match format {
        None => println!("{count}"),
        Some(Format::Json) => emit_json(
            "count",
            n,
            l,
            json!({ "k1": class.k1(), "k2": class.k2(), "count": count.to_string() }),
        ),
        Some(Format::Csv) => emit_csv(&[
            vec!["k1".into(), "k2".into(), "count".into()],
            vec![
                class.k1().to_string(),
                class.k2().to_string(),
                count.to_string(),
            ],
        ])?,
    }
    Ok(0)
}

fn cmd_average(
    n: u32,
    l: u32,
    closed_form: bool,
    precision: u32,
    format: Option<Format>,
) -> Result<i32, String> {
    let average = average_component_count(n, l).map_err(fail)?;
    let agrees = if closed_form {
        if l != 2 {
            return Err("--closed-form applies only to --l 2".to_string());
        }
        Some(average_component_count_order2(n).map_err(fail)? == average)
    } else {
        None
    };
    let rendered = decimal(&average, precision);
    match format {
        None => {
            println!("{average} = {rendered}");
            if let Some(agrees) = agrees {
                println!("matches the closed form: {agrees}");
            }
        }
        Some(Format::Json) => {
            let mut result = json!({
                "average": average.to_string(),
                "decimal": rendered,
            });
            if let Some(agrees) = agrees {
                result["closed_form_agrees"] = json!(agrees);
            }
            emit_json("average", n, l, result);
        }
        Some(Format::Csv) => {
            let mut header = vec!["average".to_string(), "decimal".to_string()];
            let mut row = vec![average.to_string(), rendered];
            if let Some(agrees) = agrees {
                header.push("closed_form_agrees".into());
                row.push(agrees.to_string());
            }
            emit_csv(&[header, row])?;
        }
    }
    Ok(0)
}

fn cmd_table(precision: u32, format: Option<Format>) -> Result<i32, String> {
    let table = reference_table().map_err(fail)?;
    let average_line = format!(
        "{}/{} = {}",
        table.component_sum(),
        table.equation_total(),
        decimal(&table.average(), precision)
    );
    let forms = |row: &semichain::TableRow| -> String {
        match row.mirror() {
            Some(mirror) => format!("{}, {}", row.primary(), mirror),
            None => row.primary().to_string(),
        }
    };
    match format {
        None => {
            let width = table
                .rows()
                .iter()
                .map(|r| forms(r).len())
                .max()
                .unwrap_or(0);
            for row in table.rows() {
                println!("{:<width$}  {}", forms(row), row.component_count());
            }
            println!("{average_line}");
        }
        Some(Format::Json) => {
            let rows: Vec<serde_json::Value> = table
                .rows()
                .iter()
                .map(|row| {
                    let mut equations = vec![row.primary().to_string()];
                    if let Some(mirror) = row.mirror() {
                        equations.push(mirror.to_string());
                    }
                    json!({ "equations": equations, "components": row.component_count() })
                })
                .collect();
            emit_json(
                "table",
                table.dim() as u32,
                table.chain().order(),
                json!({
                    "rows": rows,
                    "equation_total": table.equation_total(),
                    "component_sum": table.component_sum(),
                    "average": format!("{}/{}", table.component_sum(), table.equation_total()),
                    "decimal": decimal(&table.average(), precision),
                }),
            );
        }
        Some(Format::Csv) => {
            let mut records = vec![vec!["equations".to_string(), "components".to_string()]];
            records.extend(
                table
                    .rows()
                    .iter()
                    .map(|row| vec![forms(row), row.component_count().to_string()]),
            );
            records.push(vec!["average".to_string(), average_line]);
            emit_csv(&records)?;
        }
    }
    Ok(0)
}

fn cmd_verify(suite: Suite, max_n: usize, max_l: u32) -> Result<i32, String> {
    let mut reports: Vec<CheckReport> = Vec::new();
    let mut push = |report: Result<CheckReport, semichain::Error>| -> Result<(), String> {
        reports.push(report.map_err(fail)?);
        Ok(())
    };
    if matches!(suite, Suite::PaperTable | Suite::All) {
        push(check_reference_table())?;
    }
    if suite == Suite::All {
        push(check_component_counts_match_formula(max_n, max_l))?;
        push(check_components_cover_solutions(max_n, max_l))?;
        push(check_component_overlap_structure(max_n, max_l))?;
    }
    if matches!(suite, Suite::Oracle | Suite::All) {
        push(check_oracle_agreement())?;
    }
    if matches!(suite, Suite::Identities | Suite::All) {
        push(check_counting_identities())?;
        push(check_average_bounds(12))?;
        push(check_asymptotic_ratios())?;
        push(check_partition_enumeration_counts(10))?;
    }
    if suite == Suite::All {
        push(check_point_extension_totality(max_n, max_l))?;
    }

    let mut failed = 0usize;
    for report in &reports {
        println!("{}", report.line());
        for failure in &report.failures {
            println!("     - {failure}");
        }
        if !report.passed {
            failed += 1;
        }
    }
    let noun = if reports.len() == 1 {
        "check"
    } else {
        "checks"
    };
    if failed == 0 {
        println!("verify: ok ({} {noun})", reports.len());
        Ok(0)
    } else {
        println!("verify: {failed} of {} {noun} failed", reports.len());
        Ok(1)
    }
}
