//! Command-line surface: `table`, `verify`, `index` and `support`.

mod cache;
mod output;

pub use cache::{Cache, CACHE_ENV};
pub use output::Table;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::arith::{divisors, euler_phi, is_prime};
use crate::characters::enumerate_characters;
use crate::error::{Error, Result};
use crate::modsym::{self, index_gamma0, TrivialCompletion};
use crate::stevens::{self, OrderConfig};

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Mismatch = 1,
    InvalidInput = 2,
    ResourceCap = 3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "eisencusp", version, about = "Cuspidal subgroup orders of Eisenstein series on X0(N)")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// worker threads (default: all cores)
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// also write the run manifest, with a timestamp, to this file
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    /// cache directory (overrides the EISENCUSP_CACHE_DIR variable)
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// largest [SL2(Z) : Gamma_0(N)] the modular-symbols oracle may attempt
    #[arg(long, global = true, default_value_t = 2000)]
    pub max_index: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// closed-form orders C_{d,phi} and supports S_d over a range of levels
    Table {
        #[arg(long)]
        from: Option<u64>,
        #[arg(long)]
        to: Option<u64>,
        #[arg(long = "N")]
        level: Option<u64>,
    },
    /// compare closed-form orders with the modular-symbols oracle
    Verify {
        #[arg(long, value_delimiter = ',', required = true)]
        levels: Vec<u64>,
    },
    /// Eisenstein ideal index at N = p^2 against the closed-form order
    Index {
        #[arg(long = "p", value_delimiter = ',', required = true)]
        primes: Vec<u64>,
    },
    /// torsion support S_d for one pair (N, d)
    Support {
        #[arg(long = "N")]
        level: u64,
        #[arg(long)]
        d: u64,
    },
    /// delete cached oracle results
    ClearCache,
}

/// What a command produced, before formatting.
pub struct Outcome {
    pub exit: Exit,
    pub results: Value,
    pub table: Table,
    pub warnings: Vec<String>,
}

struct Context {
    cache: Option<Cache>,
    config: OrderConfig,
    max_index: u64,
}

fn valid_divisors(n: u64) -> Vec<u64> {
    divisors(n).into_iter().filter(|&d| d != 1 && n % (d * d) == 0).collect()
}

fn support_pair(n: u64, d: u64, ctx: &Context) -> Result<(Value, Vec<Vec<String>>, Vec<String>)> {
    let t = stevens::torsion_support(n, d, ctx.config)?;
    let mut per_phi = Vec::new();
    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    let support: Vec<String> = t.support.iter().map(|p| p.to_string()).collect();
    for (i, (phi, o)) in t.orders.iter().enumerate() {
        per_phi.push(json!({
            "phi": output::character(i, phi),
            "order": output::big(&o.order.order),
            "order_theorem": output::order(&o.theorem),
            "order_proposition": output::order(&o.proposition),
            "beta": output::cyclotomic(&o.beta_theorem),
        }));
        rows.push(vec![
            n.to_string(),
            d.to_string(),
            i.to_string(),
            phi.order().to_string(),
            o.order.order.to_string(),
            support.join(";"),
        ]);
        warnings.extend(o.warnings.iter().cloned());
    }
    let v = json!({
        "N": n.to_string(),
        "d": d.to_string(),
        "per_phi": per_phi,
        "support": output::primes(&t.support),
    });
    Ok((v, rows, warnings))
}

fn table_header() -> Vec<&'static str> {
    vec!["N", "d", "phi_index", "phi_order", "order", "support"]
}

fn cmd_table(from: Option<u64>, to: Option<u64>, level: Option<u64>, ctx: &Context) -> Result<Outcome> {
    let (a, b) = match (level, from, to) {
        (Some(n), None, None) => (n, n),
        (None, Some(a), Some(b)) => (a, b),
        _ => return Err(Error::InvalidInput("give either --N or both --from and --to".into())),
    };
    if a == 0 || a > b {
        return Err(Error::InvalidInput(format!("empty or invalid range {a}..{b}")));
    }
    let pairs: Vec<(u64, u64)> = (a..=b).flat_map(|n| valid_divisors(n).into_iter().map(move |d| (n, d))).collect();
    let done: Result<Vec<_>> = pairs.par_iter().map(|&(n, d)| support_pair(n, d, ctx)).collect();
    let mut table = Table::new(table_header());
    let mut results = Vec::new();
    let mut warnings = Vec::new();
    for (v, rows, w) in done? {
        results.push(v);
        table.rows.extend(rows);
        warnings.extend(w);
    }
    Ok(Outcome {
        exit: Exit::Ok,
        results: Value::Array(results),
        table,
        warnings,
    })
}

/// Oracle orders for every valid `(d, phi)` at level `N`, cached per level.
fn oracle_level(n: u64, ctx: &Context) -> Result<Value> {
    let descriptor = format!("oracle/N={n}/completion=infinity");
    if let Some(c) = &ctx.cache {
        if let Some(s) = c.get(&descriptor) {
            if let Ok(v) = serde_json::from_str::<Value>(&s) {
                return Ok(v);
            }
        }
    }
    if index_gamma0(n) > ctx.max_index {
        return Err(Error::ResourceCap(format!(
            "level {n} has index {} above the cap {}",
            index_gamma0(n),
            ctx.max_index
        )));
    }
    let group = modsym::cuspidal_group(n)?;
    let items: Vec<(u64, usize)> = valid_divisors(n)
        .into_iter()
        .flat_map(|d| (0..euler_phi(d) as usize).map(move |i| (d, i)))
        .collect();
    let entries: Result<Vec<Value>> = items
        .par_iter()
        .map(|&(d, i)| {
            let phi = &enumerate_characters(d)[i];
            let full = modsym::eigenpart_order_full(n, d, phi, TrivialCompletion::default())?;
            let pt = crate::idealnum::prime_to(&full, &modsym::excluded_primes(n));
            Ok(json!({
                "d": d.to_string(),
                "phi_index": i,
                "full": output::big(&full),
                "prime_to": output::big(&pt),
            }))
        })
        .collect();
    let v = json!({
        "N": n.to_string(),
        "invariants": group.invariants.iter().map(output::int).collect::<Vec<_>>(),
        "entries": entries?,
    });
    if let Some(c) = &ctx.cache {
        c.put(&descriptor, &serde_json::to_string(&v).expect("serialisable"))?;
    }
    Ok(v)
}

fn cmd_verify(levels: &[u64], ctx: &Context) -> Result<Outcome> {
    for &n in levels {
        if n == 0 || valid_divisors(n).is_empty() {
            return Err(Error::InvalidInput(format!("level {n} has no d != 1 with d^2 | N")));
        }
    }
    let mut table = Table::new(vec!["N", "d", "phi_index", "closed_form", "oracle", "status"]);
    let mut results = Vec::new();
    let mut warnings = Vec::new();
    let mut exit = Exit::Ok;
    for &n in levels {
        let oracle = oracle_level(n, ctx)?;
        for e in oracle["entries"].as_array().expect("entries") {
            let d: u64 = e["d"].as_str().and_then(|s| s.parse().ok()).expect("cached d");
            let i = e["phi_index"].as_u64().expect("cached index") as usize;
            let phi = &enumerate_characters(d)[i];
            let spec = stevens::make_spec(n, d, phi)?;
            let closed = stevens::cuspidal_order(&spec, ctx.config)?;
            warnings.extend(closed.warnings.iter().cloned());
            let closed_s = closed.order.order.to_string();
            let oracle_s = e["prime_to"].as_str().expect("cached order").to_string();
            let pass = closed_s == oracle_s;
            let mut item = Map::new();
            item.insert("N".into(), json!(n.to_string()));
            item.insert("d".into(), json!(d.to_string()));
            item.insert("phi".into(), output::character(i, phi));
            item.insert("closed_form".into(), json!(closed_s));
            item.insert("oracle".into(), json!(oracle_s));
            item.insert("oracle_full".into(), e["full"].clone());
            item.insert("status".into(), json!(if pass { "PASS" } else { "MISMATCH" }));
            if !pass {
                exit = Exit::Mismatch;
                item.insert("beta_theorem".into(), output::cyclotomic(&closed.beta_theorem));
                item.insert("beta_proposition".into(), output::cyclotomic(&closed.beta_proposition));
                item.insert("order_theorem".into(), output::order(&closed.theorem));
                item.insert("order_proposition".into(), output::order(&closed.proposition));
            }
            table.rows.push(vec![
                n.to_string(),
                d.to_string(),
                i.to_string(),
                closed_s,
                oracle_s,
                if pass { "PASS" } else { "MISMATCH" }.to_string(),
            ]);
            results.push(Value::Object(item));
        }
    }
    Ok(Outcome {
        exit,
        results: Value::Array(results),
        table,
        warnings,
    })
}

fn cmd_index(primes: &[u64], ctx: &Context) -> Result<Outcome> {
    for &p in primes {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if index_gamma0(p * p) > ctx.max_index {
            return Err(Error::ResourceCap(format!("p = {p} is above the index cap {}", ctx.max_index)));
        }
    }
    let items: Vec<(u64, usize)> = primes
        .iter()
        .flat_map(|&p| (0..(p - 1) as usize).map(move |i| (p, i)))
        .collect();
    let done: Result<Vec<_>> = items
        .par_iter()
        .map(|&(p, i)| {
            let phi = &enumerate_characters(p)[i];
            let idx = modsym::eisenstein_ideal_index(p, phi)?;
            let spec = stevens::make_spec(p * p, p, phi)?;
            let closed = stevens::cuspidal_order(&spec, ctx.config)?;
            Ok((p, i, idx, closed))
        })
        .collect();
    let mut table = Table::new(vec!["p", "phi_index", "ideal_index", "cuspidal_order", "equal"]);
    let mut results = Vec::new();
    let mut warnings = Vec::new();
    let mut exit = Exit::Ok;
    for (p, i, idx, closed) in done? {
        let equal = idx.order == closed.order.order;
        if !equal {
            exit = Exit::Mismatch;
        }
        warnings.extend(closed.warnings.iter().cloned());
        let phi = &enumerate_characters(p)[i];
        results.push(json!({
            "p": p.to_string(),
            "phi": output::character(i, phi),
            "ideal_index": output::big(&idx.order),
            "cuspidal_order": output::big(&closed.order.order),
            "equal": equal,
        }));
        table.rows.push(vec![
            p.to_string(),
            i.to_string(),
            idx.order.to_string(),
            closed.order.order.to_string(),
            equal.to_string(),
        ]);
    }
    Ok(Outcome {
        exit,
        results: Value::Array(results),
        table,
        warnings,
    })
}

fn cmd_support(n: u64, d: u64, ctx: &Context) -> Result<Outcome> {
    if n == 0 || d <= 1 || n % (d * d) != 0 {
        return Err(Error::InvalidInput(format!("(N, d) = ({n}, {d}) needs d != 1 and d^2 | N")));
    }
    let descriptor = format!("support/N={n}/d={d}/{:?}", ctx.config);
    let cached = ctx
        .cache
        .as_ref()
        .and_then(|c| c.get(&descriptor))
        .and_then(|s| serde_json::from_str::<Value>(&s).ok());
    let (value, rows, warnings) = match cached {
        Some(v) => {
            let rows = v["rows"]
                .as_array()
                .map(|rs| {
                    rs.iter()
                        .map(|r| {
                            r.as_array()
                                .map(|xs| xs.iter().map(|x| x.as_str().unwrap_or_default().to_string()).collect())
                                .unwrap_or_default()
                        })
                        .collect()
                })
                .unwrap_or_default();
            let warnings = v["warnings"]
                .as_array()
                .map(|ws| ws.iter().filter_map(|w| w.as_str().map(String::from)).collect())
                .unwrap_or_default();
            (v["result"].clone(), rows, warnings)
        }
        None => {
            let (v, rows, warnings) = support_pair(n, d, ctx)?;
            if let Some(c) = &ctx.cache {
                let stored = json!({ "result": v, "rows": rows, "warnings": warnings });
                c.put(&descriptor, &serde_json::to_string(&stored).expect("serialisable"))?;
            }
            (v, rows, warnings)
        }
    };
    let mut table = Table::new(table_header());
    table.rows = rows;
    Ok(Outcome {
        exit: Exit::Ok,
        results: value,
        table,
        warnings,
    })
}

fn exit_for(e: &Error) -> Exit {
    match e {
        Error::ResourceCap(_) => Exit::ResourceCap,
        Error::InvalidInput(_) | Error::InvalidSpec(_) | Error::PrimeDividesLevel(_) | Error::InadmissibleTwist(_) => {
            Exit::InvalidInput
        }
        _ => Exit::Mismatch,
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Table { .. } => "table",
        Command::Verify { .. } => "verify",
        Command::Index { .. } => "index",
        Command::Support { .. } => "support",
        Command::ClearCache => "clear-cache",
    }
}

fn parameters(cli: &Cli) -> Value {
    let cmd = match &cli.command {
        Command::Table { from, to, level } => json!({ "from": from, "to": to, "N": level }),
        Command::Verify { levels } => json!({ "levels": levels }),
        Command::Index { primes } => json!({ "p": primes }),
        Command::Support { level, d } => json!({ "N": level, "d": d }),
        Command::ClearCache => json!({}),
    };
    json!({ "command": cmd, "max_index": cli.max_index, "config": format!("{:?}", OrderConfig::default()) })
}

/// Runs a parsed command line, writing the report to `out`; returns the exit code.
pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cache = if cli.no_cache {
        None
    } else {
        Cache::locate(cli.cache_dir.as_deref())
    };
    let ctx = Context {
        cache,
        config: OrderConfig::default(),
        max_index: cli.max_index,
    };
    let run = || match &cli.command {
        Command::Table { from, to, level } => cmd_table(*from, *to, *level, &ctx),
        Command::Verify { levels } => cmd_verify(levels, &ctx),
        Command::Index { primes } => cmd_index(primes, &ctx),
        Command::Support { level, d } => cmd_support(*level, *d, &ctx),
        Command::ClearCache => {
            let n = ctx.cache.as_ref().map(|c| c.clear()).transpose()?.unwrap_or(0);
            Ok(Outcome {
                exit: Exit::Ok,
                results: json!({ "removed": n.to_string() }),
                table: Table::new(vec!["removed"]),
                warnings: Vec::new(),
            })
        }
    };
    let outcome = match cli.jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build() {
            Ok(pool) => pool.install(run),
            Err(e) => Err(Error::InvalidInput(e.to_string())),
        },
        None => run(),
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_for(&e) as i32;
        }
    };
    let mut manifest = json!({
        "command": command_name(&cli.command),
        "parameters": parameters(cli),
        "version": crate::VERSION,
        "results": outcome.results,
        "warnings": outcome.warnings,
    });
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&manifest).expect("serialisable") + "\n",
        Format::Csv => outcome.table.to_csv(),
    };
    if out.write_all(text.as_bytes()).is_err() {
        return Exit::InvalidInput as i32;
    }
    for w in &outcome.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    if let Some(path) = &cli.manifest {
        let secs = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        manifest["timestamp"] = json!(secs.to_string());
        let body = serde_json::to_string_pretty(&manifest).expect("serialisable");
        if let Err(e) = std::fs::write(path, body) {
            let _ = writeln!(err, "error: cannot write manifest: {e}");
            return Exit::InvalidInput as i32;
        }
    }
    outcome.exit as i32
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { Exit::InvalidInput as i32 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            code
        }
    }
}
