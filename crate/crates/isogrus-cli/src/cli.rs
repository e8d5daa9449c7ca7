//! Argument parsing and command dispatch.

use std::fmt::Write;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use isogrus::algebra::parse_word;
use isogrus::cells::checked_alperin_diagram;
use isogrus::contraction::{contractible_sites, phi_cup, phi_weight};
use isogrus::orient::{dp_layers, dp_set, kl_polynomial};
use isogrus::{cup_diagram, enumerate_weights, Algebra, GaussInt, Generator, TilePartition, Weight};

use crate::cache::Cache;
use crate::checks::{generators_by_source, random_word, run_suite, Bounds};
use crate::render::{render_alperin, render_cup_diagram, render_terms, term_records, RenderSpec, Target, TermRecord};

#[derive(Debug, Parser)]
#[command(name = "isogrus", version, about = "Exact computations in the Hecke category of type (D_n, A_{n-1})")]
pub struct Cli {
    /// Seed for randomized words and properties.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for selfcheck.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Target>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the weights of rank n.
    Enumerate {
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..=30))]
        n: u16,
    },
    /// Draw the cup diagram of a weight.
    Cupdiag {
        #[arg(long, value_parser = parse_weight)]
        lambda: Weight,
        /// Print the weight above the diagram.
        #[arg(long)]
        labels: bool,
    },
    /// The p-Kazhdan-Lusztig polynomial n_{lambda,mu}.
    Kl {
        #[arg(long, value_parser = parse_weight)]
        lambda: Weight,
        #[arg(long, value_parser = parse_weight)]
        mu: Weight,
    },
    /// The weights mu with mu-bar oriented by lambda.
    Dp {
        #[arg(long, value_parser = parse_weight)]
        lambda: Weight,
        #[arg(long)]
        by_degree: bool,
    },
    /// Normal form of a product of generators; the rightmost acts first.
    Multiply {
        #[arg(long)]
        n: usize,
        /// e.g. "R(uu,1-2);L(uu,1-2)".
        #[arg(long, conflicts_with = "random", required_unless_present = "random")]
        word: Option<String>,
        /// Use a random composable word of this length instead.
        #[arg(long)]
        random: Option<usize>,
    },
    /// Contraction sites of lambda, or its contraction at k.
    Contract {
        #[arg(long, value_parser = parse_weight)]
        lambda: Weight,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Strong Alperin diagram of the cell module of lambda.
    Alperin {
        #[arg(long, value_parser = parse_weight)]
        lambda: Weight,
    },
    /// Run the invariant suite up to rank n.
    Selfcheck {
        #[arg(long)]
        n: usize,
    },
}

fn parse_weight(s: &str) -> Result<Weight, String> {
    s.parse().map_err(|e: isogrus::Error| e.to_string())
}

/// Output and exit status of a command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { stdout, code: 0 }
    }
}

fn json<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("serializable");
    s.push('\n');
    s
}

/// Runs a parsed command. Errors are usage errors.
pub fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let fmt = cli.format;
    match &cli.command {
        Command::Enumerate { n } => {
            let ws = enumerate_weights(usize::from(*n));
            #[derive(Serialize)]
            struct Row {
                weight: String,
                partition: Vec<usize>,
            }
            let rows: Vec<Row> =
                ws.iter().map(|w| Row { weight: w.to_string(), partition: TilePartition::from_weight(w).rows }).collect();
            match fmt.unwrap_or(Target::Text) {
                Target::Json => Ok(Outcome::ok(json(&rows))),
                Target::Text | Target::Ascii => {
                    let mut out = String::new();
                    for w in &ws {
                        writeln!(out, "{} {} {}", w, w.to_symbols(), TilePartition::from_weight(w))?;
                    }
                    Ok(Outcome::ok(out))
                }
                t => anyhow::bail!("cannot render a weight list as {:?}", t),
            }
        }
        Command::Cupdiag { lambda, labels } => {
            let spec = RenderSpec { target: fmt.unwrap_or(Target::Ascii), labels: *labels };
            Ok(Outcome::ok(render_cup_diagram(&cup_diagram(lambda), lambda, spec)?))
        }
        Command::Kl { lambda, mu } => {
            anyhow::ensure!(lambda.rank() == mu.rank(), "weights of ranks {} and {}", lambda.rank(), mu.rank());
            let p = kl_polynomial(lambda, mu);
            match fmt.unwrap_or(Target::Text) {
                Target::Json => {
                    #[derive(Serialize)]
                    struct Kl {
                        lambda: String,
                        mu: String,
                        degree: Option<usize>,
                        polynomial: String,
                    }
                    let k = Kl { lambda: lambda.to_string(), mu: mu.to_string(), degree: p.degree, polynomial: p.to_string() };
                    Ok(Outcome::ok(json(&k)))
                }
                _ => Ok(Outcome::ok(format!("{}\n", p))),
            }
        }
        Command::Dp { lambda, by_degree } => {
            let dp: Vec<(String, usize)> = dp_set(lambda).into_iter().map(|(m, d)| (m.to_string(), d)).collect();
            let layers: Vec<Vec<String>> =
                dp_layers(lambda).into_values().map(|l| l.iter().map(|w| w.to_string()).collect()).collect();
            match (fmt.unwrap_or(Target::Text), by_degree) {
                (Target::Json, false) => Ok(Outcome::ok(json(&dp))),
                (Target::Json, true) => Ok(Outcome::ok(json(&layers))),
                (_, false) => Ok(Outcome::ok(dp.iter().map(|(m, d)| format!("{} {}\n", m, d)).collect())),
                (_, true) => Ok(Outcome::ok(
                    layers.iter().enumerate().map(|(k, l)| format!("degree {}: {}\n", k, l.join(" "))).collect(),
                )),
            }
        }
        Command::Multiply { n, word, random } => multiply(*n, word.as_deref(), *random, cli.seed, fmt),
        Command::Contract { lambda, k } => contract(lambda, *k, fmt),
        Command::Alperin { lambda } => {
            let mut alg = Algebra::<GaussInt>::new(lambda.rank());
            let g = checked_alperin_diagram(&mut alg, lambda).ok_or_else(|| anyhow::anyhow!("an edge is not realized by the action"))?;
            Ok(Outcome::ok(render_alperin(&g, RenderSpec::new(fmt.unwrap_or(Target::Text)))?))
        }
        Command::Selfcheck { n } => {
            let results = run_suite(&Bounds::up_to(*n, cli.seed), cli.jobs);
            let failed = results.iter().any(|(_, r)| r.is_err());
            let stdout = match fmt.unwrap_or(Target::Text) {
                Target::Json => {
                    #[derive(Serialize)]
                    struct Row<'a> {
                        name: &'a str,
                        passed: bool,
                        detail: &'a str,
                    }
                    let rows: Vec<Row> = results
                        .iter()
                        .map(|(name, r)| Row { name, passed: r.is_ok(), detail: r.as_ref().unwrap_or_else(|e| e) })
                        .collect();
                    json(&rows)
                }
                _ => results
                    .iter()
                    .map(|(name, r)| match r {
                        Ok(s) => format!("PASS {}: {}\n", name, s),
                        Err(e) => format!("FAIL {}: {}\n", name, e),
                    })
                    .collect(),
            };
            Ok(Outcome { stdout, code: i32::from(failed) })
        }
    }
}

#[derive(Serialize)]
struct Product<'a> {
    n: usize,
    word: &'a str,
    terms: &'a [TermRecord],
}

fn multiply(n: usize, word: Option<&str>, random: Option<usize>, seed: u64, fmt: Option<Target>) -> anyhow::Result<Outcome> {
    anyhow::ensure!(n <= 12, "rank {} is beyond the supported range", n);
    let gens: Vec<Generator> = match (word, random) {
        (Some(w), _) => parse_word(w)?,
        (None, Some(len)) => {
            anyhow::ensure!(n >= 2, "rank {} has no degree-1 generators", n);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            random_word(&mut rng, &generators_by_source(n), len)
        }
        (None, None) => anyhow::bail!("give --word or --random"),
    };
    anyhow::ensure!(!gens.is_empty(), "empty word");
    let canonical: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
    let canonical = canonical.join(";");
    let cache = Cache::from_env();
    let terms = match cache.as_ref().and_then(|c| c.load(n, &canonical)) {
        Some(t) => t,
        None => {
            let mut alg = Algebra::<GaussInt>::new(n);
            let t = term_records(&alg.product(&gens)?);
            if let Some(c) = &cache {
                c.store(n, &canonical, &t)?;
            }
            t
        }
    };
    let target = fmt.unwrap_or(Target::Text);
    let stdout = match target {
        Target::Json => json(&Product { n, word: &canonical, terms: &terms }),
        _ => format!("word: {}\n{}", canonical, render_terms(&terms, target)?),
    };
    Ok(Outcome::ok(stdout))
}

fn contract(lambda: &Weight, k: Option<usize>, fmt: Option<Target>) -> anyhow::Result<Outcome> {
    let sites: Vec<usize> = contractible_sites(lambda).into_iter().collect();
    let Some(k) = k else {
        return Ok(Outcome::ok(match fmt.unwrap_or(Target::Text) {
            Target::Json => json(&sites),
            _ => format!("sites: {}\n", sites.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" ")),
        }));
    };
    let v = phi_weight(lambda, k)?;
    let mut cups = Vec::new();
    for c in cup_diagram(lambda).cups {
        if let Ok(img) = phi_cup(lambda, &c, k) {
            cups.push((c.to_string(), img.to_string()));
        }
    }
    match fmt.unwrap_or(Target::Text) {
        Target::Json => {
            #[derive(Serialize)]
            struct Contracted {
                lambda: Weight,
                k: usize,
                weight: Weight,
                cups: Vec<(String, String)>,
            }
            Ok(Outcome::ok(json(&Contracted { lambda: *lambda, k, weight: v, cups })))
        }
        _ => {
            let mut out = format!("{}\n", v);
            for (a, b) in cups {
                writeln!(out, "{} -> {}", a, b)?;
            }
            Ok(Outcome::ok(out))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        let cli = Cli::try_parse_from(std::iter::once("isogrus").chain(args.iter().copied())).unwrap();
        run(&cli).unwrap()
    }

    #[test]
    fn enumerate_three() {
        assert_eq!(run_args(&["enumerate", "--n", "3"]).stdout.lines().count(), 4);
    }

    #[test]
    fn kl_rank_two() {
        assert_eq!(run_args(&["kl", "--lambda", "dd", "--mu", "uu"]).stdout, "q\n");
    }

    #[test]
    fn multiply_valley() {
        let out = run_args(&["multiply", "--n", "2", "--word", "R(uu,1-2);L(uu,1-2)"]).stdout;
        assert_eq!(out, "word: R(uu,1-2);L(uu,1-2)\n1 * D[uu <- dd <- uu]\n");
        let zero = run_args(&["multiply", "--n", "2", "--word", "L(uu,1-2);R(uu,1-2)"]).stdout;
        assert!(zero.ends_with("\n0\n"));
    }

    #[test]
    fn contract_sites() {
        assert_eq!(run_args(&["contract", "--lambda", "uu"]).stdout, "sites: 0\n");
        assert_eq!(run_args(&["contract", "--lambda", "uu", "--k", "0"]).stdout, "-\n");
    }
}
