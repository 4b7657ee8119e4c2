//! `schurweyl`: command-line front end for the schur-weyl engine.
//!
//! Every flag marked `env` can also be set through `SCHURWEYL_<FLAG>`.

mod output;
mod rho;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use schur_weyl::characters::{CharacterTable, TableCache, DEFAULT_TABLE_CAP};
use schur_weyl::dimensions::{bounds, dim_u, dim_v};
use schur_weyl::kronecker::{entropy_triple_report, stretch_nonvanishing_check, KroneckerEngine, DEFAULT_KRON_CAP};
use schur_weyl::partitions::{enumerate_partitions, CycleType, Partition};
use schur_weyl::quantum::{
    ball_probability, compat_search_with_cap, entropy_inequality_report, kw_bound_check, nats_to_bits,
    young_distribution, DEFAULT_COMPAT_CAP,
};
use schur_weyl::symfunc::{schur, schur_branching, SymPoint};
use schur_weyl::tensor_oracle::{
    central_projector_with_cap, exact_trace, numerical_rank, overlap_check, young_symmetrizer_with_cap, Tableau,
    DEFAULT_ORACLE_CAP,
};
use schur_weyl::Error;
use serde_json::Value;

use output::{num, render, text, Format, Section};

/// Seed used when none is given.
const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Parser)]
#[command(name = "schurweyl", version, about = "Symmetric-group representations and quantum marginal spectra")]
struct Cli {
    /// Output style.
    #[arg(long, global = true, value_enum, default_value = "human", env = "SCHURWEYL_FORMAT")]
    format: Format,
    /// Directory for cached character tables.
    #[arg(long, global = true, env = "SCHURWEYL_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Report entropies in bits instead of nats.
    #[arg(long, global = true, env = "SCHURWEYL_BITS")]
    bits: bool,
    /// Seed for `random:` states.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED, env = "SCHURWEYL_SEED")]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Partitions of k, with conjugates and dim U_λ.
    Partitions {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        max_rows: Option<usize>,
    },
    /// A single character value χ_λ(τ).
    Char {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        tau: CycleType,
    },
    /// Full character table of S_k.
    Chartable {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_TABLE_CAP, value_parser = cap_parser())]
        cap: usize,
    },
    /// dim U_λ, dim V_λ and the bound sandwich.
    Dims {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        d: usize,
    },
    /// Schur function s_λ at a point.
    Schur {
        #[arg(long)]
        lambda: Partition,
        /// Comma-separated coordinates.
        #[arg(long)]
        x: SymPoint,
    },
    /// Kronecker coefficient g_{λμν}, optionally along stretches.
    Kron {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        mu: Partition,
        #[arg(long)]
        nu: Partition,
        #[arg(long, default_value_t = DEFAULT_KRON_CAP, value_parser = cap_parser())]
        cap: usize,
        /// Also evaluate g at N λ, N μ, N ν for N up to this bound.
        #[arg(long, value_parser = cap_parser())]
        stretch: Option<usize>,
    },
    /// Every triple of partitions of k with nonzero g.
    KronTable {
        #[arg(long)]
        k: usize,
        /// Row limits for λ, μ, ν.
        #[arg(long, value_delimiter = ',')]
        max_rows: Option<Vec<usize>>,
        #[arg(long, default_value_t = DEFAULT_KRON_CAP, value_parser = cap_parser())]
        cap: usize,
    },
    /// Young-frame distribution of ρ^{⊗k}.
    YoungDist {
        #[arg(long)]
        rho: String,
        #[arg(long)]
        k: usize,
    },
    /// Per-frame and aggregated estimation bounds.
    KwCheck {
        #[arg(long)]
        rho: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0.1, value_parser = eps_parser())]
        eps: f64,
    },
    /// Weight of frames inside the eps-ball around spec ρ.
    BallProb {
        #[arg(long)]
        rho: String,
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<usize>,
        #[arg(long, value_parser = eps_parser())]
        eps: f64,
    },
    /// Closest partition triple with nonzero g to the spectra of ρ^{AB}, ρ^A, ρ^B.
    Compat {
        #[arg(long)]
        rho: String,
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<usize>,
        #[arg(long, default_value_t = 0.5, value_parser = eps_parser())]
        eps: f64,
        #[arg(long, default_value_t = DEFAULT_COMPAT_CAP, value_parser = cap_parser())]
        cap: usize,
    },
    /// Entropy inequalities for a partition triple or for a bipartite state.
    EntropyCheck {
        #[arg(long, requires_all = ["mu", "nu"], conflicts_with = "rho")]
        lambda: Option<Partition>,
        #[arg(long)]
        mu: Option<Partition>,
        #[arg(long)]
        nu: Option<Partition>,
        #[arg(long, required_unless_present = "lambda")]
        rho: Option<String>,
        /// Degree used for the compatible triple when checking a state.
        #[arg(long, default_value_t = 4)]
        k: usize,
    },
    /// Cross-checks against explicit matrices on (C^d)^{⊗k}.
    Oracle {
        #[arg(long, value_enum)]
        check: OracleCheck,
        #[arg(long)]
        lambda: Partition,
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Tableau rows separated by `/`, e.g. `1,3/2`. Defaults to the row-reading filling.
        #[arg(long)]
        tableau: Option<String>,
        #[arg(long)]
        mu: Option<Partition>,
        #[arg(long)]
        nu: Option<Partition>,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        rho: Option<String>,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP, value_parser = cap_parser())]
        cap: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OracleCheck {
    /// Rank of P_λ against dim U_λ · dim V_λ.
    Projector,
    /// e(T)² = r e(T) and the rank of e(T)/r.
    Symmetrizer,
    /// tr(P_λ ρ^{⊗k}) against dim U_λ · s_λ(spec ρ).
    Trace,
    /// (P_μ ⊗ P_ν) P_λ ≠ 0 against g ≠ 0.
    Overlap,
}

fn cap_parser() -> clap::builder::RangedU64ValueParser<usize> {
    clap::builder::RangedU64ValueParser::<usize>::new().range(1..)
}

fn eps_parser() -> impl clap::builder::TypedValueParser<Value = f64> {
    |s: &str| -> Result<f64, String> {
        let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
        if v > 0.0 && v.is_finite() {
            Ok(v)
        } else {
            Err(format!("eps must be positive, got {v}"))
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::Inconsistent(_)) => 2,
            _ => 1,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn big(x: &BigUint) -> Value {
    text(x)
}

fn entropy_unit(bits: bool) -> &'static str {
    if bits {
        "bits"
    } else {
        "nats"
    }
}

fn run(cli: &Cli) -> CliResult<Vec<Section>> {
    let scale = |h: f64| if cli.bits { nats_to_bits(h) } else { h };
    let load = |spec: &str| rho::load(spec, cli.seed);
    let table = |k: usize, cap: usize| -> CliResult<CharacterTable> {
        Ok(match &cli.cache_dir {
            Some(dir) => TableCache::new(dir).with_cap(cap).get_or_build(k)?,
            None => CharacterTable::build_with_cap(k, cap)?,
        })
    };
    let engine = |k: usize, cap: usize| -> CliResult<KroneckerEngine> {
        if k > cap {
            return Err(Error::TableTooLarge { k, cap }.into());
        }
        Ok(KroneckerEngine::from_table(Arc::new(table(k, cap)?)))
    };

    let mut out = Vec::new();
    match &cli.command {
        Command::Partitions { k, max_rows } => {
            let mut s = Section::new("partition", &["lambda", "conjugate", "dim_u"]);
            for p in enumerate_partitions(*k, max_rows.unwrap_or(usize::MAX)) {
                s.push(vec![text(&p), text(p.conjugate()), big(&dim_u(&p))]);
            }
            out.push(s);
        }
        Command::Char { lambda, tau } => {
            let chi = schur_weyl::character(lambda, tau)?;
            let mut s = Section::new("character", &["lambda", "tau", "chi"]);
            s.push(vec![text(lambda), text(tau), text(chi)]);
            out.push(s);
        }
        Command::Chartable { k, cap } => {
            let t = table(*k, *cap)?;
            let mut classes = Section::new("class", &["tau", "size"]);
            for (c, size) in t.classes().iter().zip(t.class_sizes()) {
                classes.push(vec![text(c), big(size)]);
            }
            let mut rows = Section::new("character_row", &["lambda", "values"]);
            for (i, lambda) in t.rows().iter().enumerate() {
                let vals: Vec<String> = t.values()[i].iter().map(ToString::to_string).collect();
                rows.push(vec![text(lambda), text(vals.join(" "))]);
            }
            out.push(classes);
            out.push(rows);
        }
        Command::Dims { lambda, d } => {
            let r = bounds(lambda, *d);
            let mut s = Section::new(
                "dimensions",
                &["lambda", "d", "dim_u", "dim_v", "v_upper", "u_lower", "u_upper", "v_bound_holds", "u_bounds_hold"],
            );
            s.push(vec![
                text(&r.lambda),
                Value::from(r.d),
                big(&r.dim_u),
                big(&r.dim_v),
                big(&r.v_upper),
                text(&r.u_lower),
                text(&r.u_upper),
                Value::from(r.v_bound_holds),
                Value::from(r.u_bounds_hold),
            ]);
            out.push(s);
        }
        Command::Schur { lambda, x } => {
            let mut s = Section::new("schur", &["lambda", "x", "value", "branching_value"]);
            s.push(vec![text(lambda), text(x), num(schur(lambda, x)), num(schur_branching(lambda, x))]);
            out.push(s);
        }
        Command::Kron { lambda, mu, nu, cap, stretch } => {
            let g = engine(lambda.weight(), *cap)?.kron(lambda, mu, nu)?;
            let mut s = Section::new("kronecker", &["lambda", "mu", "nu", "g"]);
            s.push(vec![text(lambda), text(mu), text(nu), big(&g)]);
            out.push(s);
            if let Some(max) = stretch {
                let rep = stretch_nonvanishing_check(lambda, mu, nu, *max, *cap)?;
                let mut s = Section::new("stretch", &["factor", "g", "nonzero"]);
                for e in &rep.entries {
                    s.push(vec![Value::from(e.factor), big(&e.g), Value::from(e.nonzero)]);
                }
                out.push(s);
            }
        }
        Command::KronTable { k, max_rows, cap } => {
            let rows = match max_rows.as_deref() {
                Some([a, b, c]) => (*a, *b, *c),
                Some(_) => return Err(CliError::Usage("--max-rows takes three values".into())),
                None => (usize::MAX, usize::MAX, usize::MAX),
            };
            let mut s = Section::new("kronecker", &["lambda", "mu", "nu", "g"]);
            for t in engine(*k, *cap)?.nonzero_triples(rows)? {
                s.push(vec![text(&t.lambda), text(&t.mu), text(&t.nu), big(&t.g)]);
            }
            out.push(s);
        }
        Command::YoungDist { rho, k } => {
            let state = load(rho)?;
            let mut s = Section::new("frame_weight", &["k", "lambda", "weight"]);
            for fw in young_distribution(&state, *k)? {
                s.push(vec![Value::from(*k), text(&fw.lambda), num(fw.weight)]);
            }
            out.push(s);
        }
        Command::KwCheck { rho, k, eps } => {
            let rep = kw_bound_check(&load(rho)?, *k, *eps)?;
            let mut s = Section::new("kw_frame", &["lambda", "weight", "divergence", "bound", "holds"]);
            for e in &rep.entries {
                s.push(vec![text(&e.lambda), num(e.weight), num(e.divergence), num(e.bound), Value::from(e.holds)]);
            }
            let mut summary = Section::new(
                "kw_summary",
                &["k", "d", "eps", "outside_weight", "outside_min_divergence", "outside_bound", "outside_holds", "all_hold"],
            );
            summary.push(vec![
                Value::from(rep.k),
                Value::from(rep.d),
                num(*eps),
                num(rep.outside_weight),
                num(rep.outside_min_divergence),
                num(rep.outside_bound),
                Value::from(rep.outside_holds),
                Value::from(rep.all_hold),
            ]);
            out.push(s);
            out.push(summary);
        }
        Command::BallProb { rho, k, eps } => {
            let state = load(rho)?;
            let mut s = Section::new("ball_probability", &["k", "eps", "probability"]);
            for &kk in k {
                s.push(vec![Value::from(kk), num(*eps), num(ball_probability(&state, kk, *eps)?)]);
            }
            out.push(s);
        }
        Command::Compat { rho, k, eps, cap } => {
            let rep = compat_search_with_cap(&load(rho)?, k, *eps, *cap)?;
            let join = |v: &[f64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            let mut spectra = Section::new("spectra", &["m", "n", "spectrum_ab", "spectrum_a", "spectrum_b"]);
            spectra.push(vec![
                Value::from(rep.m),
                Value::from(rep.n),
                text(join(&rep.spectrum_ab)),
                text(join(&rep.spectrum_a)),
                text(join(&rep.spectrum_b)),
            ]);
            let mut s = Section::new("compat", &["k", "lambda", "mu", "nu", "distance", "g", "radius"]);
            for e in &rep.entries {
                s.push(vec![
                    Value::from(e.k),
                    text(&e.lambda),
                    text(&e.mu),
                    text(&e.nu),
                    num(e.distance),
                    big(&e.g),
                    num(e.radius),
                ]);
            }
            out.push(spectra);
            out.push(s);
        }
        Command::EntropyCheck { lambda, mu, nu, rho, k } => {
            let unit = entropy_unit(cli.bits);
            if let (Some(l), Some(m), Some(n)) = (lambda, mu, nu) {
                let rep = entropy_triple_report(&engine(l.weight(), DEFAULT_KRON_CAP)?, l, m, n)?;
                let mut s = Section::new("entropy_triple", &["lambda", "mu", "nu", "g", "holds"]);
                s.push(vec![text(&rep.lambda), text(&rep.mu), text(&rep.nu), big(&rep.g), Value::from(rep.holds)]);
                out.push(s);
                let mut c = Section::new("entropy_comparison", &["assignment", "lhs", "rhs", "unit", "holds"]);
                for (i, cmp) in rep.comparisons.iter().enumerate() {
                    c.push(vec![Value::from(i), num(scale(cmp.lhs)), num(scale(cmp.rhs)), text(unit), Value::from(cmp.holds)]);
                }
                out.push(c);
            } else {
                let spec = rho.as_deref().ok_or_else(|| CliError::Usage("--rho or --lambda is required".into()))?;
                let rep = entropy_inequality_report(&load(spec)?, *k)?;
                let mut s = Section::new(
                    "entropy_state",
                    &["s_ab", "s_a", "s_b", "unit", "subadditive", "triangle"],
                );
                s.push(vec![
                    num(scale(rep.s_ab)),
                    num(scale(rep.s_a)),
                    num(scale(rep.s_b)),
                    text(unit),
                    Value::from(rep.subadditive),
                    Value::from(rep.triangle),
                ]);
                let mut d = Section::new(
                    "dimension_inequality",
                    &["k", "lambda", "mu", "nu", "g", "dim_lambda", "dim_mu_nu", "holds"],
                );
                d.push(vec![
                    Value::from(rep.k),
                    text(&rep.triple.lambda),
                    text(&rep.triple.mu),
                    text(&rep.triple.nu),
                    big(&rep.triple.g),
                    big(&rep.dim_lambda),
                    big(&rep.dim_mu_nu),
                    Value::from(rep.dimension_inequality),
                ]);
                out.push(s);
                out.push(d);
            }
        }
        Command::Oracle { check, lambda, d, tableau, mu, nu, m, n, rho, cap } => match check {
            OracleCheck::Projector => {
                let p = central_projector_with_cap(lambda, *d, *cap)?;
                let rank = numerical_rank(&p);
                let expected = dim_u(lambda) * dim_v(lambda, *d);
                let mut s = Section::new("oracle_projector", &["lambda", "d", "rank", "dim_u_dim_v", "agrees"]);
                s.push(vec![
                    text(lambda),
                    Value::from(*d),
                    Value::from(rank),
                    big(&expected),
                    Value::from(BigUint::from(rank) == expected),
                ]);
                out.push(s);
            }
            OracleCheck::Symmetrizer => {
                let t = match tableau {
                    Some(spec) => parse_tableau(spec)?,
                    None => Tableau::canonical(lambda),
                };
                if t.frame() != lambda {
                    return Err(CliError::Usage(format!("tableau shape {} differs from --lambda {lambda}", t.frame())));
                }
                let y = young_symmetrizer_with_cap(&t, *d, *cap)?;
                let hooks = schur_weyl::partitions::factorial(lambda.weight()) / dim_u(lambda);
                let mut s = Section::new(
                    "oracle_symmetrizer",
                    &["lambda", "d", "r", "hook_product", "rank", "dim_v", "residual"],
                );
                s.push(vec![
                    text(lambda),
                    Value::from(*d),
                    Value::from(y.r),
                    big(&hooks),
                    Value::from(y.rank),
                    big(&dim_v(lambda, *d)),
                    num(y.residual),
                ]);
                out.push(s);
            }
            OracleCheck::Trace => {
                let spec = rho.as_deref().ok_or_else(|| CliError::Usage("--rho is required for the trace check".into()))?;
                let state = load(spec)?;
                let exact = exact_trace(&state, lambda)?;
                let x = state.spectrum()?.as_point();
                let formula = dim_u(lambda).to_f64().unwrap_or(f64::INFINITY) * schur(lambda, &x);
                let mut s = Section::new("oracle_trace", &["lambda", "d", "exact", "formula", "difference"]);
                s.push(vec![text(lambda), Value::from(state.dim()), num(exact), num(formula), num((exact - formula).abs())]);
                out.push(s);
            }
            OracleCheck::Overlap => {
                let (Some(mu), Some(nu)) = (mu, nu) else {
                    return Err(CliError::Usage("--mu and --nu are required for the overlap check".into()));
                };
                let rep = overlap_check(lambda, *m, *n, mu, nu)?;
                let mut s = Section::new(
                    "oracle_overlap",
                    &["lambda", "mu", "nu", "m", "n", "norm", "overlaps", "kronecker_nonzero", "agrees"],
                );
                s.push(vec![
                    text(lambda),
                    text(mu),
                    text(nu),
                    Value::from(*m),
                    Value::from(*n),
                    num(rep.norm),
                    Value::from(rep.overlaps),
                    Value::from(rep.kronecker_nonzero),
                    Value::from(rep.agrees()),
                ]);
                out.push(s);
            }
        },
    }
    Ok(out)
}

fn parse_tableau(spec: &str) -> CliResult<Tableau> {
    let rows = spec
        .split('/')
        .map(|row| {
            row.split(',')
                .map(|v| v.trim().parse::<usize>().map_err(|e| CliError::Usage(format!("tableau entry {v:?}: {e}"))))
                .collect::<CliResult<Vec<_>>>()
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Tableau::new(rows)?)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(sections) => {
            print!("{}", render(&sections, cli.format));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Core(Error::Inconsistent("x".into())).exit_code(), 2);
        assert_eq!(CliError::Core(Error::MissingBipartition).exit_code(), 1);
        assert_eq!(CliError::Usage("x".into()).exit_code(), 1);
    }

    #[test]
    fn tableau_argument() {
        assert_eq!(parse_tableau("1,3/2").unwrap().filling(), &[vec![1, 3], vec![2]]);
        assert!(parse_tableau("2,1").is_err());
        assert!(parse_tableau("1,a").is_err());
    }

    #[test]
    fn command_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
