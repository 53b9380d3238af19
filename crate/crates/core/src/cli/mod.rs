//! Command-line front end.
//!
//! Exit codes: 0 success, 1 counterexample found by `verify`, 2 usage,
//! parse or computation error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::greene::{greene, nd_structure, prop1_reduce, Method, Prop1Part};
use crate::poset::{to_mask, Limits, Poset, MAX_ELEMENTS};
use crate::verify::{verify, Identity, Instance, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Size bound used unless `--unsafe-size` or `GREENE_MAX_ELEMS` lifts it.
pub const SAFE_MAX_ELEMS: usize = 10;

pub const MAX_ELEMS_ENV: &str = "GREENE_MAX_ELEMS";

#[derive(Debug, Parser)]
#[command(name = "greene", version, about = "Exact Greene sums of finite posets and related identities")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Largest poset accepted by exponential-time operations.
    #[arg(long, global = true)]
    max_elems: Option<usize>,
    /// Allow --max-elems above 10.
    #[arg(long, global = true)]
    unsafe_size: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    /// One `key=value` record per line.
    Kv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count or list the linear extensions of a poset.
    Ext {
        file: PathBuf,
        /// Print every extension, top element first.
        #[arg(long)]
        list: bool,
    },
    /// Compute the Greene sum of a poset.
    Greene {
        file: PathBuf,
        /// brute, product, recursive, or prop1-<part> with part one of
        /// 1, 2, 2m, 3, 3m, 4, 5, 5det.
        #[arg(long, default_value = "brute", value_parser = parse_method)]
        method: Method,
        /// Separating subset for the prop1 methods, as comma-separated
        /// element names. Defaults to the first one the part applies to.
        #[arg(long, value_delimiter = ',')]
        separator: Option<Vec<String>>,
    },
    /// Print the Möbius function.
    Mobius {
        file: PathBuf,
        /// Print only μ(a, b).
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        pair: Option<Vec<String>>,
    },
    /// Numerator, denominator and structure facts of the Greene sum.
    Nd { file: PathBuf },
    /// Run an identity over seeded random and catalog instances.
    Verify {
        identity: IdentityArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        /// Run one instance only: a trial index or catalog-N.
        #[arg(long)]
        only_trial: Option<Instance>,
    },
}

#[derive(Debug, Clone, Copy)]
struct IdentityArg(Identity);

impl std::str::FromStr for IdentityArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        s.parse().map(IdentityArg).map_err(|e: String| {
            let names: Vec<&str> = Identity::ALL.iter().map(|i| i.name()).collect();
            format!("{e}; expected one of {}", names.join(", "))
        })
    }
}

fn parse_method(s: &str) -> std::result::Result<Method, String> {
    match s {
        "brute" => return Ok(Method::Brute),
        "product" => return Ok(Method::Product),
        "recursive" => return Ok(Method::Recursive),
        _ => {}
    }
    s.strip_prefix("prop1-")
        .and_then(|part| Prop1Part::ALL.into_iter().find(|p| p.to_string() == part))
        .map(Method::Prop1)
        .ok_or_else(|| format!("unknown method `{s}`"))
}

fn resolve_limits(g: &GlobalArgs, env: Option<&str>) -> std::result::Result<Limits, String> {
    let from_env = match env {
        Some(v) => Some(v.trim().parse::<usize>().map_err(|_| format!("{MAX_ELEMS_ENV} must be an integer, got `{v}`"))?),
        None => None,
    };
    let max = g.max_elems.or(from_env).unwrap_or(SAFE_MAX_ELEMS);
    if max > SAFE_MAX_ELEMS && !g.unsafe_size && from_env.is_none() {
        return Err(format!("--max-elems {max} exceeds {SAFE_MAX_ELEMS}; pass --unsafe-size or set {MAX_ELEMS_ENV}"));
    }
    if max > MAX_ELEMENTS {
        return Err(format!("--max-elems {max} exceeds the hard bound {MAX_ELEMENTS}"));
    }
    Ok(Limits::new(max))
}

pub fn parse_poset_file(path: &Path) -> Result<Poset> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::PreconditionFailed(format!("cannot read {}: {e}", path.display())))?;
    Poset::parse(&text)
}

/// Runs the command line `args` (program name first), writing the report
/// to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env = std::env::var(MAX_ELEMS_ENV).ok();
    run_with_env(args, env.as_deref(), out, err)
}

pub fn run_with_env<I, T>(args: I, env_max_elems: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let limits = match resolve_limits(&cli.global, env_max_elems) {
        Ok(l) => l,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    match execute(&cli.command, cli.global.format, limits) {
        Ok((report, code)) => {
            let _ = out.write_all(report.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(cmd: &Command, format: Format, limits: Limits) -> Result<(String, i32)> {
    let mut s = String::new();
    match cmd {
        Command::Ext { file, list } => {
            let p = parse_poset_file(file)?;
            limits.check(p.len())?;
            let count = p.count_linear_extensions();
            let words = if *list { p.linear_extensions(&limits)? } else { Vec::new() };
            let show = |w: &Vec<usize>| w.iter().map(|&e| p.name(e)).collect::<Vec<_>>().join(" ");
            match format {
                Format::Text => {
                    for w in &words {
                        writeln!(s, "{}", show(w)).unwrap();
                    }
                    writeln!(s, "count: {count}").unwrap();
                }
                Format::Kv => {
                    for (i, w) in words.iter().enumerate() {
                        writeln!(s, "extension.{i}={}", show(w)).unwrap();
                    }
                    writeln!(s, "count={count}").unwrap();
                }
            }
        }
        Command::Greene { file, method, separator } => {
            let p = parse_poset_file(file)?;
            let r = match (method, separator) {
                (Method::Prop1(part), Some(names)) => {
                    let ids = names.iter().map(|n| p.find(n)).collect::<Result<Vec<_>>>()?;
                    let sep = p.separator_for(to_mask(&ids)).ok_or_else(|| {
                        Error::PreconditionFailed(format!("{{{}}} is not a separating subset", names.join(", ")))
                    })?;
                    prop1_reduce(&p, &sep, *part, &limits)?
                }
                (_, Some(_)) => return Err(Error::PreconditionFailed("--separator needs a prop1 method".into())),
                (m, None) => greene(&p, *m, &limits)?,
            };
            let names = p.namer();
            let value = r.value.display_with(&names);
            match format {
                Format::Text => {
                    writeln!(s, "{value}").unwrap();
                }
                Format::Kv => {
                    writeln!(s, "method={}", r.method).unwrap();
                    for (i, w) in r.witness.iter().enumerate() {
                        writeln!(s, "separator.{i}={w}").unwrap();
                    }
                    writeln!(s, "value={value}").unwrap();
                }
            }
        }
        Command::Mobius { file, pair } => {
            let p = parse_poset_file(file)?;
            if let Some(pair) = pair {
                let (a, b) = (p.find(&pair[0])?, p.find(&pair[1])?);
                let mu = p.mobius(a, b);
                match format {
                    Format::Text => writeln!(s, "{mu}").unwrap(),
                    Format::Kv => writeln!(s, "mu.{}.{}={mu}", p.name(a), p.name(b)).unwrap(),
                }
            } else {
                let m = p.mobius_matrix();
                match format {
                    Format::Text => {
                        let width = p.elements().map(|(_, n, _)| n.len()).max().unwrap_or(1).max(3);
                        write!(s, "{:width$}", "").unwrap();
                        for (_, n, _) in p.elements() {
                            write!(s, " {n:>width$}").unwrap();
                        }
                        writeln!(s).unwrap();
                        for a in p.ids() {
                            write!(s, "{:width$}", p.name(a)).unwrap();
                            for b in p.ids() {
                                write!(s, " {:>width$}", m[a][b]).unwrap();
                            }
                            writeln!(s).unwrap();
                        }
                    }
                    Format::Kv => {
                        for a in p.ids() {
                            for b in p.ids() {
                                if a == b || p.less(a, b) {
                                    writeln!(s, "mu.{}.{}={}", p.name(a), p.name(b), m[a][b]).unwrap();
                                }
                            }
                        }
                    }
                }
            }
        }
        Command::Nd { file } => {
            let p = parse_poset_file(file)?;
            let names = p.namer();
            let yes = |b: bool| if b { "yes" } else { "no" };
            if !p.is_connected() {
                limits.check(p.len())?;
                match format {
                    Format::Text => writeln!(s, "disconnected: G = 0").unwrap(),
                    Format::Kv => writeln!(s, "connected=no\nvalue=0").unwrap(),
                }
                return Ok((s, EXIT_OK));
            }
            let r = nd_structure(&p, &limits)?;
            let d: Vec<String> =
                p.covers().iter().map(|&(lo, hi)| format!("({} - {})", p.name(hi), p.name(lo))).collect();
            let d = if d.is_empty() { "1".to_string() } else { d.join("*") };
            let n = r.oriented_numerator.display_with(&names).to_string();
            let facts = [
                ("value", r.value.display_with(&names).to_string()),
                ("numerator", n),
                ("denominator", d),
                ("cycle_rank", r.cycle_rank.to_string()),
                ("tree", yes(r.is_tree).to_string()),
                ("denominator_is_cover_product", yes(r.denominator_is_cover_product).to_string()),
                ("degree_is_cycle_rank", yes(r.degree_is_cycle_rank).to_string()),
                ("unit_numerator_iff_tree", yes(r.unit_numerator_iff_tree).to_string()),
            ];
            match format {
                Format::Text => {
                    writeln!(s, "G = {}", facts[0].1).unwrap();
                    writeln!(s, "N = {}", facts[1].1).unwrap();
                    writeln!(s, "D = {}", facts[2].1).unwrap();
                    writeln!(s, "cycle rank: {}", facts[3].1).unwrap();
                    writeln!(s, "Hasse diagram is a tree: {}", facts[4].1).unwrap();
                    writeln!(s, "D is the product of cover differences: {}", facts[5].1).unwrap();
                    writeln!(s, "deg N = cycle rank: {}", facts[6].1).unwrap();
                    writeln!(s, "N = 1 exactly for trees: {}", facts[7].1).unwrap();
                }
                Format::Kv => {
                    writeln!(s, "connected=yes").unwrap();
                    for (k, v) in facts {
                        writeln!(s, "{k}={v}").unwrap();
                    }
                }
            }
        }
        Command::Verify { identity, seed, trials, only_trial } => {
            let cfg = VerifyConfig {
                seed: *seed,
                trials: *trials as usize,
                limits,
                only: *only_trial,
                ..VerifyConfig::default()
            };
            let report = verify(identity.0, &cfg);
            s = match format {
                Format::Text => report.render_text(),
                Format::Kv => report.render_kv(),
            };
            let code = if report.passed() { EXIT_OK } else { EXIT_COUNTEREXAMPLE };
            return Ok((s, code));
        }
    }
    Ok((s, EXIT_OK))
}
