use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use markov_multisets::algebra::mzip_kernel;
use markov_multisets::draws::{hypergeometric_kernel, multinomial_kernel};
use markov_multisets::laws::{run_laws, Corruption, GridSpec, Mutation, Ops, Target};
use markov_multisets::multiset::{arr_kernel, dd_kernel, flrn_kernel};
use markov_multisets::split::msplit;
use markov_multisets::text::{parse_dist, parse_urn_any, render_dist, DistJson};
use markov_multisets::{Dist, Error, FinSet, Kernel, Multiset};

#[derive(Parser)]
#[command(
    name = "mmset",
    version,
    about = "Exact urn distributions over fixed-size multisets"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// K draws with replacement from a distribution, as a multiset.
    Multinomial {
        /// Distribution, e.g. `h:1/2,t:1/2`.
        #[arg(long)]
        dist: String,
        #[arg(long)]
        k: usize,
    },
    /// Draws without replacement from an urn.
    Hypergeometric {
        /// Urn, e.g. `a:2,b:1` or `{"colors":["a","b"],"counts":[2,1]}`.
        #[arg(long)]
        urn: String,
        #[arg(long)]
        draws: usize,
    },
    /// Draw one ball and drop it.
    Dd {
        #[arg(long)]
        urn: String,
    },
    /// Frequentist learning: the urn's colour frequencies.
    Flrn {
        #[arg(long)]
        urn: String,
    },
    /// Uniformly random arrangement of the urn as a sequence.
    Arr {
        #[arg(long)]
        urn: String,
    },
    /// Multizip of two urns of the same size.
    Mzip {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Split an urn by colour into a left and a right part.
    Msplit {
        #[arg(long)]
        urn: String,
        /// Colours that go to the left part, comma separated.
        #[arg(long, value_delimiter = ',')]
        left: Vec<String>,
    },
    /// Check the law registry over a bounded grid.
    Laws {
        #[arg(long, default_value_t = 3)]
        max_set: usize,
        #[arg(long, default_value_t = 4)]
        max_k: usize,
        /// Run only this law; repeatable.
        #[arg(long = "law")]
        laws: Vec<String>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Same as `--format json`.
        #[arg(long)]
        json: bool,
        /// Salt for the generic kernels of the grid.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run against a draw-and-delete with off-by-one weights.
        #[arg(long, hide = true)]
        corrupt_dd: bool,
    },
}

fn print_dist(d: &Dist, format: Format) {
    match format {
        Format::Text => print!("{}", render_dist(d)),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&DistJson::from_dist(d)).expect("serializable")
        ),
    }
}

/// The row of `k` at the urn `m`.
fn at_urn(k: &Kernel, m: &Multiset) -> Dist {
    let i = k
        .dom()
        .index_of(&m.label())
        .expect("urn lies in the domain");
    k.row_dist(i)
}

fn nonempty(m: &Multiset, what: &str) -> Result<(), Error> {
    if m.size() == 0 {
        return Err(Error::Invalid(format!("{what} needs a nonempty urn")));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let format = cli.format;
    match cli.command {
        Command::Multinomial { dist, k } => {
            let d = parse_dist(&dist)?;
            let mn = multinomial_kernel(&Kernel::state(&d), k);
            print_dist(&mn.row_dist(0), format);
        }
        Command::Hypergeometric { urn, draws } => {
            let m = parse_urn_any(&urn)?;
            let hg = hypergeometric_kernel(m.base(), m.size(), draws)?;
            print_dist(&at_urn(&hg, &m), format);
        }
        Command::Dd { urn } => {
            let m = parse_urn_any(&urn)?;
            nonempty(&m, "dd")?;
            print_dist(&at_urn(&dd_kernel(m.base(), m.size() - 1), &m), format);
        }
        Command::Flrn { urn } => {
            let m = parse_urn_any(&urn)?;
            nonempty(&m, "flrn")?;
            print_dist(&at_urn(&flrn_kernel(m.base(), m.size())?, &m), format);
        }
        Command::Arr { urn } => {
            let m = parse_urn_any(&urn)?;
            print_dist(&at_urn(&arr_kernel(m.base(), m.size()), &m), format);
        }
        Command::Mzip { left, right } => {
            let (a, b) = (parse_urn_any(&left)?, parse_urn_any(&right)?);
            if a.size() != b.size() {
                return Err(Error::LengthMismatch {
                    expected: a.size(),
                    got: b.size(),
                });
            }
            let z = mzip_kernel(a.base(), b.base(), a.size());
            let (ma, mb) = z.dom().as_product().expect("product domain");
            let i = ma.index_of(&a.label()).expect("urn lies in the domain");
            let j = mb.index_of(&b.label()).expect("urn lies in the domain");
            print_dist(&z.row_dist(z.dom().pair_index(i, j)), format);
        }
        Command::Msplit { urn, left } => {
            let m = parse_urn_any(&urn)?;
            let colours: Vec<String> = m.base().labels().iter().map(|l| l.to_string()).collect();
            for c in &left {
                if !colours.contains(c) {
                    return Err(Error::UnknownLabel(c.clone()));
                }
            }
            let (xs, ys): (Vec<usize>, Vec<usize>) =
                (0..colours.len()).partition(|&i| left.contains(&colours[i]));
            let x = FinSet::atoms(xs.iter().map(|&i| &colours[i]))?;
            let y = FinSet::atoms(ys.iter().map(|&i| &colours[i]))?;
            let counts: Vec<u32> = xs.iter().chain(&ys).map(|&i| m.count(i)).collect();
            let tagged = Multiset::new(&FinSet::coproduct(&[x.clone(), y.clone()]), counts)?;
            print_dist(&at_urn(&msplit(&x, &y, m.size()), &tagged), format);
        }
        Command::Laws {
            max_set,
            max_k,
            laws,
            jobs,
            json,
            seed,
            corrupt_dd,
        } => {
            if max_set == 0 || max_k == 0 {
                return Err(Error::Invalid("bounds must be at least 1".into()));
            }
            let spec = GridSpec {
                seed,
                ..GridSpec::with_bounds(max_set, max_k)
            };
            let selection = (!laws.is_empty()).then_some(laws.as_slice());
            let ops = if corrupt_dd {
                Ops::mutated(Mutation {
                    target: Target::Dd,
                    corruption: Corruption::OffByOne,
                })
            } else {
                Ops::default()
            };
            let report = run_laws(&spec, selection, jobs, &ops)?;
            if json || format == Format::Json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("serializable")
                );
            } else {
                println!("{report}");
            }
            if !report.ok() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
