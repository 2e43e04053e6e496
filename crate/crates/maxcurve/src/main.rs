use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use maxcurve::report::Recorder;
use maxcurve::suite::{self, AutCheck, IdCheck, Settings};
use maxcurve::AppError;
use maxcurve_core::{CurveSpec, Family};
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "maxcurve", version, about = "Exhaustive verification of the maximal curves X_n over F_{q^{2n}}")]
struct Cli {
    /// Worker threads for counting; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Largest field order that gets log tables.
    #[arg(long, global = true, env = "MAXCURVE_LOG_BOUND")]
    log_bound: Option<u64>,
    /// Run even when the field exceeds the resource bound.
    #[arg(long, global = true)]
    force: bool,
    /// Leave per-item timings out of the report, making it byte-for-byte reproducible.
    #[arg(long, global = true)]
    no_timings: bool,
    /// Seed for the sampled checks.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Perturb the expected value of the named item.
    #[arg(long, global = true, hide = true)]
    flip_expected: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Qn {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    n: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form genus against Riemann–Hurwitz.
    Genus {
        #[command(flatten)]
        qn: Qn,
        #[arg(long, requires = "k2")]
        k1: Option<u64>,
        #[arg(long, requires = "k1")]
        k2: Option<u64>,
    },
    /// Count rational places and compare with the Hasse–Weil bound.
    Count {
        #[arg(long, value_enum)]
        curve: CurveArg,
        #[command(flatten)]
        qn: Qn,
        #[arg(long, default_value_t = 1)]
        k1: u64,
        #[arg(long, default_value_t = 1)]
        k2: u64,
    },
    /// Genera of the subcovers Y_{k1,k2}.
    Spectrum {
        #[command(flatten)]
        qn: Qn,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Orders, action and orbit structure of the automorphism group.
    Autgroup {
        #[command(flatten)]
        qn: Qn,
        #[arg(long, value_enum, default_value_t = AutArg::All)]
        check: AutArg,
    },
    /// Field identities used in the point count, and the model maps.
    Identity {
        #[command(flatten)]
        qn: Qn,
        #[arg(long, value_enum, default_value_t = IdArg::All)]
        check: IdArg,
    },
    /// Every suite for one (q, n).
    VerifyAll {
        #[command(flatten)]
        qn: Qn,
    },
}

#[derive(ValueEnum, Clone, Copy)]
enum CurveArg {
    Xn,
    Ggs,
    Hermitian,
    Etaz,
    Rhoz,
    Subcover,
}

impl From<CurveArg> for Family {
    fn from(c: CurveArg) -> Family {
        match c {
            CurveArg::Xn => Family::Xn,
            CurveArg::Ggs => Family::Ggs,
            CurveArg::Hermitian => Family::Hermitian,
            CurveArg::Etaz => Family::EtaZ,
            CurveArg::Rhoz => Family::RhoZ,
            CurveArg::Subcover => Family::Subcover,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy)]
enum AutArg {
    Orders,
    Action,
    Orbit,
    All,
}

#[derive(ValueEnum, Clone, Copy)]
enum IdArg {
    Etacount,
    Deltapower,
    Trace,
    Pvanish,
    P1p2,
    Splitcount,
    Phi,
    Psi,
    All,
}

fn params(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs.iter().map(|(k, v)| ((*k).to_owned(), v.clone())).collect()
}

fn run(cli: Cli) -> Result<bool, AppError> {
    let settings = Settings {
        log_bound: cli.log_bound.unwrap_or(maxcurve_core::gf::DEFAULT_LOG_BOUND),
        threads: cli.threads,
        force: cli.force,
        seed: cli.seed,
        ..Settings::default()
    };
    let mut rec = Recorder::new(!cli.no_timings, cli.flip_expected);
    let (name, p) = match cli.command {
        Command::Genus { qn, k1, k2 } => {
            suite::genus(&mut rec, qn.q, qn.n, k1.zip(k2))?;
            ("genus", params(&[("q", json!(qn.q)), ("n", json!(qn.n)), ("k1", json!(k1)), ("k2", json!(k2))]))
        }
        Command::Count { curve, qn, k1, k2 } => {
            let family = Family::from(curve);
            let spec = if family == Family::Subcover {
                CurveSpec::subcover(qn.q, qn.n, k1, k2)
            } else {
                CurveSpec::new(family, qn.q, qn.n)
            };
            let r = suite::count(&mut rec, &settings, &spec)?;
            eprintln!(
                "{} q={} n={}: {} places ({} at infinity, {} ramified, {} split), genus {}, {}",
                family,
                qn.q,
                qn.n,
                r.total,
                r.infinite_places,
                r.ramified_places,
                r.split_places,
                r.genus,
                r.strategy.as_str()
            );
            let mut p = params(&[("curve", json!(family.as_str())), ("q", json!(qn.q)), ("n", json!(qn.n))]);
            if family == Family::Subcover {
                p.insert("k1".into(), json!(k1));
                p.insert("k2".into(), json!(k2));
            }
            ("count", p)
        }
        Command::Spectrum { qn, format } => {
            let rows = suite::spectrum(&mut rec, qn.q, qn.n)?;
            if format == Format::Csv {
                suite::write_csv(&rows, std::io::stdout().lock())?;
                return Ok(rec.items().iter().all(|i| i.pass));
            }
            ("spectrum", params(&[("q", json!(qn.q)), ("n", json!(qn.n))]))
        }
        Command::Autgroup { qn, check } => {
            let (c, label) = match check {
                AutArg::Orders => (AutCheck::Orders, "orders"),
                AutArg::Action => (AutCheck::Action, "action"),
                AutArg::Orbit => (AutCheck::Orbit, "orbit"),
                AutArg::All => (AutCheck::All, "all"),
            };
            suite::autgroup(&mut rec, &settings, qn.q, qn.n, c)?;
            ("autgroup", params(&[("q", json!(qn.q)), ("n", json!(qn.n)), ("check", json!(label))]))
        }
        Command::Identity { qn, check } => {
            let (c, label) = match check {
                IdArg::Etacount => (IdCheck::EtaCount, "etacount"),
                IdArg::Deltapower => (IdCheck::DeltaPower, "deltapower"),
                IdArg::Trace => (IdCheck::Trace, "trace"),
                IdArg::Pvanish => (IdCheck::PVanish, "pvanish"),
                IdArg::P1p2 => (IdCheck::P1P2, "p1p2"),
                IdArg::Splitcount => (IdCheck::SplitCount, "splitcount"),
                IdArg::Phi => (IdCheck::Phi, "phi"),
                IdArg::Psi => (IdCheck::Psi, "psi"),
                IdArg::All => (IdCheck::All, "all"),
            };
            suite::identity(&mut rec, &settings, qn.q, qn.n, c)?;
            ("identity", params(&[("q", json!(qn.q)), ("n", json!(qn.n)), ("check", json!(label))]))
        }
        Command::VerifyAll { qn } => {
            suite::verify_all(&mut rec, &settings, qn.q, qn.n)?;
            ("verify-all", params(&[("q", json!(qn.q)), ("n", json!(qn.n))]))
        }
    };
    let report = rec.finish(name, p);
    println!("{}", report.to_json());
    Ok(report.pass)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
