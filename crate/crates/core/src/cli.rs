//! Command-line front end: argument parsing, caps, caching and exit codes.
//!
//! Exit codes: 0 success (or the relation holds), 1 the relation or a
//! stability inequality fails, 2 usage, 3 resource cap, 4 failed
//! cross-check.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::cache::Cache;
use crate::error::{Error, Result};
use crate::linalg::rank_cross_checked;
use crate::order::{hasse_diagram, is_le_capped, poset_nodes, OrderConfig};
use crate::partitions::Partition;
use crate::specht::{ssh_rank_capped, verify_stability_all, StabilityMode};
use crate::symfunc::{monomial_oracle_expand, plethysm_coefficient, plethysm_h, plethysm_schur, schur_from_monomials};
use crate::tabloids::{fh_map_matrix, Caps};

/// Stands in for the empty partition, written `--` on the command line.
const EMPTY: &str = "()";

/// Largest node size `poset` accepts without `--force`.
const POSET_GUARD: usize = 6;

#[derive(Parser, Debug)]
#[command(name = "plethysm", version, about = "Exact plethysm computations")]
struct Cli {
    /// Largest degree |ν|·|μ| of a symmetric function computation.
    #[arg(long, global = true, default_value_t = 24)]
    max_degree: usize,
    /// Node size for `poset` (default 4); tabloid size cap otherwise (default 12).
    #[arg(long, global = true)]
    max_size: Option<usize>,
    /// Neither read nor write the result cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Lift the dimension cap and the poset size guard.
    #[arg(long, global = true)]
    force: bool,
    /// Worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expand h_ν[h_μ]: `plethysm 2 / 3`.
    Plethysm {
        #[arg(required = true)]
        partitions: Vec<String>,
        /// Schur basis (the default).
        #[arg(long, conflicts_with = "power_sum")]
        schur: bool,
        #[arg(long)]
        power_sum: bool,
        /// Recompute through monomials and compare.
        #[arg(long)]
        oracle_check: bool,
    },
    /// Decide ν ⊴ μ: `relation 2 / 3`.
    Relation {
        #[arg(required = true)]
        partitions: Vec<String>,
    },
    /// Hasse diagram of ⊴ on partitions of size at most --max-size.
    Poset {
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        include_columns: bool,
    },
    /// Statistics of the map M^{ν[μ]} → M^{μ[ν]}: `fhmap 2 / 3`.
    Fhmap {
        #[arg(required = true)]
        partitions: Vec<String>,
        #[arg(long)]
        rank_only: bool,
        /// Also write the matrix as a coordinate list to this file.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Rank of the semistandard homomorphisms: `ssh-rank λ / ν / μ`.
    SshRank {
        #[arg(required = true)]
        partitions: Vec<String>,
        /// Compare with the plethysm coefficient.
        #[arg(long)]
        cross_check: bool,
    },
    /// Stability report over all λ: `stability ν / μ / μ̃ --mode h`.
    Stability {
        #[arg(required = true)]
        partitions: Vec<String>,
        #[arg(long, default_value = "h")]
        mode: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Dot,
}

/// Splits positional words on `/` into partitions.
fn parse_partitions(words: &[String], expected: usize) -> Result<Vec<Partition>> {
    let joined = words.join(" ");
    let groups: Vec<&str> = joined.split('/').map(str::trim).collect();
    if groups.len() != expected {
        return Err(Error::usage(format!(
            "expected {expected} partitions separated by '/', got {}",
            groups.len()
        )));
    }
    groups.into_iter().map(parse_partition).collect()
}

fn parse_partition(text: &str) -> Result<Partition> {
    if text == EMPTY {
        return Ok(Partition::empty());
    }
    if text.is_empty() {
        return Err(Error::usage("missing partition; write -- for the empty one"));
    }
    let parts = text
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| Error::usage(format!("{text:?} is not a comma-separated partition")))
        })
        .collect::<Result<Vec<_>>>()?;
    Partition::new(parts)
}

fn label(p: &Partition) -> String {
    if p.is_empty() {
        return EMPTY.to_string();
    }
    p.parts().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn pretty(value: &Value) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn check_degree(degree: usize, max_degree: usize) -> Result<()> {
    if degree > max_degree {
        return Err(Error::resource("degree", degree as u64, max_degree as u64));
    }
    Ok(())
}

impl Cli {
    fn caps(&self) -> Caps {
        let mut caps = Caps::default();
        if let Some(size) = self.max_size {
            caps.max_size = size;
        }
        if self.force {
            caps.max_dimension = u64::MAX;
        }
        caps
    }

    /// The cache key, or `None` for commands with side effects.
    fn cache_key(&self) -> Result<Option<String>> {
        let flags = format!(
            "max-degree={} max-size={:?} force={}",
            self.max_degree, self.max_size, self.force
        );
        let parts = |words: &[String], k| -> Result<String> {
            Ok(parse_partitions(words, k)?.iter().map(label).collect::<Vec<_>>().join("/"))
        };
        let key = match &self.command {
            Command::Plethysm {
                partitions,
                power_sum,
                oracle_check,
                ..
            } => format!("plethysm {} power-sum={power_sum} oracle={oracle_check}", parts(partitions, 2)?),
            Command::Relation { partitions } => format!("relation {}", parts(partitions, 2)?),
            Command::Poset { format, include_columns } => {
                format!("poset format={format:?} include-columns={include_columns}")
            }
            Command::Fhmap { dump: Some(_), .. } => return Ok(None),
            Command::Fhmap {
                partitions, rank_only, ..
            } => format!("fhmap {} rank-only={rank_only}", parts(partitions, 2)?),
            Command::SshRank { partitions, cross_check } => {
                format!("ssh-rank {} cross-check={cross_check}", parts(partitions, 3)?)
            }
            Command::Stability { partitions, mode } => format!("stability {} mode={mode}", parts(partitions, 3)?),
        };
        Ok(Some(format!("{key} {flags}")))
    }

    fn execute(&self) -> Result<(i32, String)> {
        match &self.command {
            Command::Plethysm {
                partitions,
                power_sum,
                oracle_check,
                ..
            } => {
                let ps = parse_partitions(partitions, 2)?;
                let (nu, mu) = (&ps[0], &ps[1]);
                let degree = nu.size() * mu.size();
                check_degree(degree, self.max_degree)?;
                let schur = plethysm_schur(nu, mu)?;
                if *oracle_check {
                    let table = monomial_oracle_expand(nu, mu, degree)?;
                    if schur_from_monomials(&table, degree)? != *schur {
                        return Err(Error::CrossCheck(format!(
                            "monomial oracle disagrees on h_{nu}[h_{mu}]"
                        )));
                    }
                }
                let out = if *power_sum { plethysm_h(nu, mu)?.to_json() } else { schur.to_json() };
                Ok((0, pretty(&out)?))
            }
            Command::Relation { partitions } => {
                let ps = parse_partitions(partitions, 2)?;
                let verdict = is_le_capped(&ps[0], &ps[1], self.max_degree)?;
                Ok((if verdict.holds { 0 } else { 1 }, pretty(&verdict.to_json())?))
            }
            Command::Poset { format, include_columns } => {
                let size = self.max_size.unwrap_or(4);
                if size > POSET_GUARD && !self.force {
                    return Err(Error::resource("poset node size", size as u64, POSET_GUARD as u64));
                }
                let config = OrderConfig {
                    max_degree: self.max_degree,
                    include_columns: *include_columns,
                };
                let diagram = hasse_diagram(&poset_nodes(size, *include_columns)?, &config)?;
                let text = match format {
                    Format::Json => pretty(&diagram.to_json())?,
                    Format::Dot => diagram.to_dot(),
                };
                Ok((0, text))
            }
            Command::Fhmap {
                partitions,
                rank_only,
                dump,
            } => {
                let ps = parse_partitions(partitions, 2)?;
                let map = fh_map_matrix(&ps[0], &ps[1], &self.caps())?;
                let rank = rank_cross_checked(&map.matrix)?;
                if let Some(path) = dump {
                    std::fs::write(path, map.matrix.to_coordinate_list())?;
                }
                let out = if *rank_only {
                    json!({ "rank": rank })
                } else {
                    json!({
                        "nu": ps[0].parts(),
                        "mu": ps[1].parts(),
                        "rows": map.matrix.rows(),
                        "cols": map.matrix.cols(),
                        "nnz": map.matrix.nnz(),
                        "rank": rank,
                        "injective": rank == map.matrix.cols(),
                    })
                };
                Ok((0, pretty(&out)?))
            }
            Command::SshRank { partitions, cross_check } => {
                let ps = parse_partitions(partitions, 3)?;
                let (lambda, nu, mu) = (&ps[0], &ps[1], &ps[2]);
                let rank = ssh_rank_capped(lambda, nu, mu, &self.caps())?;
                if *cross_check {
                    check_degree(lambda.size(), self.max_degree)?;
                    let a = plethysm_coefficient(nu, mu, lambda)?;
                    if a != BigInt::from(rank) {
                        return Err(Error::CrossCheck(format!(
                            "rank {rank} but the coefficient of s{lambda} in h_{nu}[h_{mu}] is {a}"
                        )));
                    }
                }
                Ok((0, format!("{rank}\n")))
            }
            Command::Stability { partitions, mode } => {
                let ps = parse_partitions(partitions, 3)?;
                let (nu, mu, mu_tilde) = (&ps[0], &ps[1], &ps[2]);
                let mode: StabilityMode = mode.parse()?;
                let extra = match mode {
                    StabilityMode::HStrip => mu_tilde.size(),
                    StabilityMode::TwoColumn => 2 * mu.len(),
                };
                check_degree(nu.size() * (mu.size() + extra), self.max_degree)?;
                let reports = verify_stability_all(nu, mu, mu_tilde, mode, &self.caps())?;
                let all_hold = reports.iter().all(|r| r.inequality_holds);
                let out = json!({
                    "nu": nu.parts(),
                    "mu": mu.parts(),
                    "mu_tilde": mu_tilde.parts(),
                    "mode": match mode {
                        StabilityMode::HStrip => "h",
                        StabilityMode::TwoColumn => "2col",
                    },
                    "all_hold": all_hold,
                    "reports": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
                });
                Ok((if all_hold { 0 } else { 1 }, pretty(&out)?))
            }
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Resource { .. } => 3,
        Error::CrossCheck(_) => 4,
        _ => 2,
    }
}

/// Runs one invocation, writing results to `out` and diagnostics to `err`;
/// returns the exit code.
pub fn run(args: impl IntoIterator<Item = String>, out: &mut impl Write, err: &mut impl Write) -> i32 {
    let args: Vec<String> = args
        .into_iter()
        .enumerate()
        .map(|(i, a)| if i > 0 && a == "--" { EMPTY.to_string() } else { a })
        .collect();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    if let Some(n) = cli.threads {
        // a pool already built by an earlier call in this process is kept
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let cache = if cli.no_cache { None } else { Cache::from_env() };
    let key = match cli.cache_key() {
        Ok(key) => key,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            return exit_code(&e);
        }
    };
    if let (Some(cache), Some(key)) = (&cache, &key) {
        if let Some(hit) = cache.get(key) {
            let _ = write!(out, "{}", hit.stdout);
            return hit.code;
        }
    }
    match cli.execute() {
        Ok((code, text)) => {
            if let (Some(cache), Some(key)) = (&cache, &key) {
                if let Err(e) = cache.put(key, code, &text) {
                    let _ = writeln!(err, "warning: could not write the cache in {}: {e}", cache.dir().display());
                }
            }
            let _ = write!(out, "{text}");
            code
        }
        Err(e) => {
            let _ = writeln!(err, "{e}");
            exit_code(&e)
        }
    }
}
