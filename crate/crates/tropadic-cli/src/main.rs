mod json;
mod plot;
mod workspace;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};
use std::cmp::Ordering;
use std::process::ExitCode;
use tropadic::text::{parse_gamma, parse_monoid, parse_poly, parse_term, parse_tuple};
use tropadic::{dimension, geometry, series, spectrum, transcendence};
use tropadic::{contains, Convergence, Distance, Error, ExtensionSpec, Result};
use workspace::Workspace;

/// Prime congruences on tropical toric monoid algebras and convergent power series.
///
/// Object arguments are file paths, workspace names, or inline text.
#[derive(Parser)]
#[command(name = "tropadic", version)]
struct Cli {
    /// Bind a name to an object file or text, as `name=source`.
    #[arg(long = "def", global = true)]
    defs: Vec<String>,
    /// JSON output; the only mode.
    #[arg(long, global = true, default_value_t = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Downward Gaussian elimination of the defining matrix.
    Normalize {
        #[arg(long)]
        p: String,
    },
    /// Order of two terms under a prime.
    Compare {
        #[arg(long)]
        p: String,
        #[arg(long)]
        m1: String,
        #[arg(long)]
        m2: String,
    },
    /// Membership of a prime in Cont.
    ContCheck {
        #[arg(long)]
        p: String,
    },
    /// Whether P′ ⊆ P.
    Contains {
        #[arg(long)]
        pprime: String,
        #[arg(long)]
        p: String,
    },
    /// The maximal prime above P.
    MaximalAbove {
        #[arg(long)]
        p: String,
    },
    /// The image of P in the tropical toric variety.
    Phi {
        #[arg(long)]
        p: String,
    },
    /// Property (*) for P′ against P.
    Crown {
        #[arg(long)]
        p: String,
        #[arg(long)]
        pprime: String,
    },
    /// Whether p2 is a specialization of p1.
    Specializes {
        #[arg(long)]
        p1: String,
        #[arg(long)]
        p2: String,
    },
    /// Membership of P in the basic open R(f|g).
    OpenMember {
        #[arg(long)]
        p: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Distance between two series at their common base.
    SeriesDist {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Product of two series.
    SeriesMul {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Value of a series under the extension of P′.
    SeriesEval {
        #[arg(long)]
        f: String,
        #[arg(long)]
        pprime: String,
    },
    /// Convergence of a stream at P.
    SeriesConverges {
        #[arg(long)]
        stream: String,
        #[arg(long)]
        p: String,
        #[arg(long, default_value_t = 32)]
        horizon: u64,
    },
    /// Dimension report for the convergent series semiring at P.
    Dim {
        #[arg(long)]
        p: String,
    },
    /// Height of P.
    Height {
        #[arg(long)]
        p: String,
    },
    /// A maximal chain of primes below P.
    Chain {
        #[arg(long)]
        p: String,
    },
    /// Transcendence degree and a basis of generators over Γ.
    Trdeg {
        #[arg(long)]
        gamma: String,
        /// A generator tuple such as `(1r2, 0)`; repeat for more.
        #[arg(long = "gen")]
        gens: Vec<String>,
    },
    /// Minimal generating set of a toric monoid.
    Hilbert {
        #[arg(long)]
        monoid: String,
    },
    /// The stratum of P and its restriction to the stratum's torus.
    Strata {
        #[arg(long)]
        p: String,
    },
    /// SVG of ω + σ̄ with sample primes marked by whether they extend.
    Plot {
        #[arg(long)]
        p: String,
        /// Sample prime; repeat for more.
        #[arg(long = "sample")]
        samples: Vec<String>,
        /// Number of random samples, seeded by TROPADIC_SEED.
        #[arg(long, default_value_t = 0)]
        random: usize,
        /// Write the SVG here instead of embedding it in the JSON.
        #[arg(long)]
        out: Option<String>,
    },
}

fn verdict(b: bool) -> Value {
    json!({ "verdict": b })
}

fn seed() -> u64 {
    std::env::var("TROPADIC_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(20_241_015)
}

fn run(cli: &Cli) -> Result<Value> {
    let ws = Workspace::new(&cli.defs)?;
    Ok(match &cli.cmd {
        Cmd::Normalize { p } => json!({ "prime": json::prime(&ws.prime(p)?.normalize()) }),
        Cmd::Compare { p, m1, m2 } => {
            let p = ws.prime(p)?;
            let (a, b) = (parse_term(m1, p.rank())?, parse_term(m2, p.rank())?);
            p.check_term(&a)?;
            p.check_term(&b)?;
            let o = match p.compare_terms(&a, &b) {
                Ordering::Less => "<",
                Ordering::Equal => "=",
                Ordering::Greater => ">",
            };
            json!({ "order": o })
        }
        Cmd::ContCheck { p } => verdict(ws.prime(p)?.in_cont()),
        Cmd::Contains { pprime, p } => {
            let c = contains(&ws.prime(pprime)?, &ws.prime(p)?)?;
            let mut v = verdict(c.holds);
            if let Some(w) = &c.witness {
                v["witness"] = json::containment_witness(w);
            }
            v
        }
        Cmd::MaximalAbove { p } => json!({ "prime": json::prime(&ws.prime(p)?.maximal_above()?) }),
        Cmd::Phi { p } => {
            let p = ws.prime(p)?;
            let t = spectrum::phi(&p)?;
            json!({ "face": json::face(&p, &t.face), "values": t.values.iter().map(json::ext).collect::<Vec<_>>() })
        }
        Cmd::Crown { p, pprime } => {
            let c = spectrum::prop_star(&ws.prime(pprime)?, &ws.prime(p)?)?;
            let mut v = verdict(c.holds);
            if let Some(m) = &c.witness {
                v["witness"] = json::term(m);
            }
            v
        }
        Cmd::Specializes { p1, p2 } => verdict(spectrum::specializes(&ws.prime(p1)?, &ws.prime(p2)?)?),
        Cmd::OpenMember { p, f, g } => {
            let p = ws.prime(p)?;
            let (f, g) = (parse_poly(&ws.raw(f)?, p.monoid())?, parse_poly(&ws.raw(g)?, p.monoid())?);
            verdict(spectrum::basic_open_member(&p, &f, &g)?)
        }
        Cmd::SeriesDist { f, g } => match series::distance(&ws.series(f)?, &ws.series(g)?)? {
            Distance::Exact(d) => json!({ "outcome": "exact", "value": json::tuple(&d) }),
            Distance::BelowPrecision(d) => json!({ "outcome": "below_precision", "bound": json::tuple(&d) }),
        },
        Cmd::SeriesMul { f, g } => json!({ "series": json::series(&series::series_mul(&ws.series(f)?, &ws.series(g)?)?) }),
        Cmd::SeriesEval { f, pprime } => {
            let (v, terms) = series::eval_at(&ws.series(f)?, &ws.prime(pprime)?)?;
            json!({ "value": json::tuple(&v), "leading": terms.iter().map(json::term).collect::<Vec<_>>() })
        }
        Cmd::SeriesConverges { stream, p, horizon } => {
            match series::converges(&ws.stream(stream)?, &ws.prime(p)?, *horizon)? {
                Convergence::Certified => json!({ "verdict": "certified" }),
                Convergence::VerifiedToHorizon => json!({ "verdict": "verified_to_horizon", "horizon": horizon }),
                Convergence::Diverges { threshold, indices } => {
                    json!({ "verdict": "diverges", "threshold": json::tuple(&threshold), "indices": indices })
                }
            }
        }
        Cmd::Dim { p } => {
            let r = dimension::dim_top_report(&ws.prime(p)?)?;
            json!({
                "dim_base": r.dim_base,
                "q_rank": r.q_rank,
                "height": r.height,
                "dim_top_lower": r.dim_top_lower,
                "dim_top_upper": r.dim_top_upper,
                "exact": r.exact,
                "reason": r.reason.tag(),
            })
        }
        Cmd::Height { p } => json!({ "height": dimension::height(&ws.prime(p)?)? }),
        Cmd::Chain { p } => {
            let c = dimension::build_maximal_chain(&ws.prime(p)?)?;
            json!({ "length": c.len(), "chain": c.iter().map(json::prime).collect::<Vec<_>>() })
        }
        Cmd::Trdeg { gamma, gens } => {
            let g = gens.iter().map(|s| parse_tuple(s)).collect::<Result<Vec<_>>>()?;
            let ext = ExtensionSpec::new(parse_gamma(gamma)?, g)?;
            json!({ "trdeg": transcendence::trdeg(&ext), "basis": transcendence::transcendence_basis(&ext) })
        }
        Cmd::Hilbert { monoid } => json!({ "generators": geometry::hilbert_basis(&parse_monoid(&ws.raw(monoid)?)?)? }),
        Cmd::Strata { p } => {
            let p = ws.prime(p)?;
            let s = geometry::stratum_of(&p)?;
            json!({
                "face": json::face(&p, &s.face),
                "perp_basis": s.perp_basis,
                "restriction": json::prime(&geometry::stratum_restrict(&p)?),
            })
        }
        Cmd::Plot { p, samples, random, out } => {
            let p = ws.prime(p)?;
            let mut ss = samples.iter().map(|s| ws.prime(s)).collect::<Result<Vec<_>>>()?;
            let w = plot::omega(&p)?;
            ss.extend(plot::random_samples(&p, w, *random, &mut ChaCha8Rng::seed_from_u64(seed()))?);
            let pl = plot::render(&p, &ss)?;
            let mut v = json!({ "samples": pl.samples });
            match out {
                Some(path) => {
                    std::fs::write(path, &pl.svg).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
                    v["path"] = json!(path);
                }
                None => v["svg"] = json!(pl.svg),
            }
            v
        }
    })
}

fn emit(body: Value) {
    let mut m = Map::new();
    m.insert("v".into(), json!(1));
    if let Value::Object(o) = body {
        m.extend(o);
    }
    println!("{}", Value::Object(m));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(v) => {
            emit(v);
            ExitCode::SUCCESS
        }
        Err(e) => {
            emit(json!({ "error": { "code": e.code(), "message": e.to_string() } }));
            ExitCode::from(2)
        }
    }
}
