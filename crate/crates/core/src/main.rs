use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fano_qc::expr::named_lines;
use fano_qc::lefschetz::{self, Annihilator, IntersectionSpec, PFOp};
use fano_qc::novikov::QuantumMatrix;
use fano_qc::qde::{self, DifferentialSystem};
use fano_qc::rational::format_rational;
use fano_qc::reconstruct::{checks, reconstruct, verify_relation, QuantumProducts};
use fano_qc::ring::{BundleSpec, CohRing};
use fano_qc::seeds::{format_seeds, load_seeds, seed_table, SeedSource};
use fano_qc::{fixtures, Error};

#[derive(Parser)]
#[command(
    name = "fano-qc",
    version,
    about = "Quantum cohomology of projectivised Fano bundles over P^n"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reconstruct M_p and M_xi from seed invariants.
    Reconstruct(ReconstructArgs),
    /// Identity component of the J-function.
    Jfun(JfunArgs),
    /// Period sequence of a complete intersection, Picard-Fuchs checks.
    Periods(PeriodArgs),
    /// Dump the seed invariants the reconstruction reads.
    Seeds(SeedArgs),
}

#[derive(Args)]
struct Common {
    /// `flagship`, `p1-trivial`, or a TOML file with n, r, chern.
    #[arg(long, default_value = "flagship")]
    bundle: String,
    /// Seed table file; default is the builtin source for the bundle.
    #[arg(long)]
    seeds: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReconstructArgs {
    #[command(flatten)]
    common: Common,
    /// Compare against the shipped flagship matrices.
    #[arg(long)]
    verify_fixture: bool,
    /// `name: relation` file of star-polynomials in p, xi, q1, q2 that must vanish.
    #[arg(long)]
    relations: Option<PathBuf>,
}

#[derive(Args)]
struct JfunArgs {
    #[command(flatten)]
    common: Common,
    /// Truncation: all q1^a q2^b with a + b <= order.
    #[arg(long, default_value_t = 16)]
    order: u32,
    /// Print the size x size table i!^d1 j!^d2 c_ij.
    #[arg(long)]
    apery: Option<u32>,
    /// `name: operator` file in D1, D2, q1, q2, z.
    #[arg(long)]
    check_operators: Option<PathBuf>,
}

#[derive(Args)]
struct PeriodArgs {
    #[command(flatten)]
    common: Common,
    /// Divisors cutting out the intersection, e.g. `p,xi^5`.
    #[arg(long, default_value = "p,xi^5")]
    cut: String,
    #[arg(long, default_value_t = 10)]
    terms: usize,
    /// Print only the regularized sequence.
    #[arg(long, conflicts_with = "plain")]
    regularized: bool,
    /// Print only the plain sequence.
    #[arg(long)]
    plain: bool,
    /// Apply a Picard-Fuchs operator (lines of c*t^m*D^e) to the regularized sequence.
    #[arg(long)]
    pf_verify: Option<PathBuf>,
    /// Search for an annihilator: `order,degree`.
    #[arg(long, value_parser = parse_pair)]
    pf_search: Option<(u32, u32)>,
}

#[derive(Args)]
struct SeedArgs {
    #[command(flatten)]
    common: Common,
}

fn parse_pair(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once(',').ok_or("expected ORDER,DEGREE")?;
    let num = |x: &str| x.trim().parse::<u32>().map_err(|e| format!("'{x}': {e}"));
    Ok((num(a)?, num(b)?))
}

/// Input problems exit with 2, failed checks with 1.
enum Failure {
    Input(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Flatness { .. }
            | Error::Homogeneity { .. }
            | Error::NonInteger { .. }
            | Error::Dependency { .. } => Failure::Mismatch(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Run = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(dir: &Path, name: &str, text: &str) -> Run {
    std::fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

struct Setup {
    ring: CohRing,
    source: SeedSource,
}

fn setup(c: &Common) -> Result<Setup, Failure> {
    let spec = match c.bundle.as_str() {
        "flagship" => BundleSpec::flagship(),
        "p1-trivial" => BundleSpec::p1_trivial(),
        path => BundleSpec::from_toml(&read(Path::new(path))?)?,
    };
    let ring = CohRing::new(&spec)?;
    let source = match &c.seeds {
        Some(path) => SeedSource::Table(load_seeds(&ring, path)?),
        None => SeedSource::builtin(&ring)
            .ok_or_else(|| Failure::Input("no builtin seed invariants for this bundle; pass --seeds FILE".into()))?,
    };
    Ok(Setup { ring, source })
}

fn products(s: &Setup) -> Result<QuantumProducts, Failure> {
    Ok(reconstruct(&s.ring, &s.source)?)
}

fn cmd_reconstruct(args: &ReconstructArgs) -> Run {
    let s = setup(&args.common)?;
    let q = products(&s)?;
    let mut failures = Vec::new();
    if args.verify_fixture {
        if !s.ring.spec().is_flagship() {
            return Err(Failure::Input("--verify-fixture needs the flagship bundle".into()));
        }
        for (name, m, text) in [
            ("M_p", &q.mp, fixtures::FLAGSHIP_MP),
            ("M_xi", &q.mxi, fixtures::FLAGSHIP_MXI),
        ] {
            let expect = QuantumMatrix::from_triplet_text(s.ring.size(), text)?;
            match m.first_difference(&expect) {
                None => println!("{name}: matches fixture"),
                Some((i, j)) => failures.push(format!(
                    "{name} differs at ({}, {}): computed {}, fixture {}",
                    i + 1,
                    j + 1,
                    m.get(i, j),
                    expect.get(i, j)
                )),
            }
        }
    }
    if let Some(path) = &args.relations {
        for (_, name, body) in named_lines(&read(path)?)? {
            let res = verify_relation(&q, &body)?;
            match res.iter().position(|x| !x.is_zero()) {
                None => println!("{name}: 0"),
                Some(i) => failures.push(format!("{name}: component {} is {}", s.ring.basis()[i], res[i])),
            }
        }
    }
    if let Some((i, j)) = checks::commutator(&q) {
        failures.push(format!("M_p M_xi != M_xi M_p at ({}, {})", i + 1, j + 1));
    }
    match &args.common.out {
        Some(dir) => {
            write(dir, "mp.triplets", &q.mp.to_triplet_text())?;
            write(dir, "mxi.triplets", &q.mxi.to_triplet_text())?;
            write(dir, "mp.tsv", &q.mp.to_dense_text())?;
            write(dir, "mxi.tsv", &q.mxi.to_dense_text())?;
        }
        None if !args.verify_fixture && args.relations.is_none() => {
            let names: Vec<String> = s.ring.basis().iter().map(ToString::to_string).collect();
            println!("basis\t{}", names.join("\t"));
            print!("M_p\n{}M_xi\n{}", q.mp.to_dense_text(), q.mxi.to_dense_text());
        }
        None => {}
    }
    report(failures)
}

fn report(failures: Vec<String>) -> Run {
    if failures.is_empty() {
        return Ok(());
    }
    Err(Failure::Mismatch(failures.join("\n")))
}

fn cmd_jfun(args: &JfunArgs) -> Run {
    let s = setup(&args.common)?;
    let q = products(&s)?;
    let sys = DifferentialSystem::new(&s.ring, &q);
    let mut failures = Vec::new();
    let c = match &args.check_operators {
        Some(path) => {
            let ops = qde::parse_operator_file(&read(path)?)?;
            let j = qde::j_series(&sys, args.order)?;
            j.check_homogeneity()?;
            for (name, op) in &ops {
                if let Err(i) = op.homogeneous_degree(sys.weights()) {
                    eprintln!(
                        "warning: {name}: term {} ({}) breaks homogeneity",
                        i + 1,
                        op.term_text(i)
                    );
                }
                let res = qde::apply_operator(&sys, op, &j);
                let bad = res.nonzero_indices();
                match bad.first() {
                    None => println!("{name}: zero at {} certified indices", res.certified()),
                    Some((a, b)) => failures.push(format!(
                        "{name}: nonzero at {} of {} certified indices, first q1^{a} q2^{b}",
                        bad.len(),
                        res.certified()
                    )),
                }
            }
            qde::identity_coefficients(&j)?
        }
        None => qde::identity_row_coefficients(&sys, args.order)?,
    };
    let csv = qde::coefficient_csv(&c, args.order + 1);
    if let Some(size) = args.apery {
        let table = qde::apery_table(&c, size, sys.weights())?;
        let text = table
            .iter()
            .map(|row| row.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join("\n");
        match &args.common.out {
            Some(dir) => write(dir, "apery.csv", &(text + "\n"))?,
            None => println!("{text}"),
        }
    }
    match &args.common.out {
        Some(dir) => write(dir, "c.csv", &csv)?,
        None if args.apery.is_none() && args.check_operators.is_none() => print!("{csv}"),
        None => {}
    }
    report(failures)
}

fn lines(seq: &[fano_qc::rational::Rational]) -> String {
    seq.iter().fold(String::new(), |mut s, x| {
        let _ = writeln!(s, "{}", format_rational(x));
        s
    })
}

fn cmd_periods(args: &PeriodArgs) -> Run {
    let s = setup(&args.common)?;
    let cut = IntersectionSpec::parse(&args.cut)?;
    let mut terms = args.terms;
    if let Some((o, d)) = args.pf_search {
        terms = terms.max(((o + 1) * (d + 1) + 10) as usize);
    }
    if terms == 0 {
        return Err(Failure::Input("--terms must be at least 1".into()));
    }
    let q = products(&s)?;
    let sys = DifferentialSystem::new(&s.ring, &q);
    let c = qde::identity_row_coefficients(&sys, terms as u32 - 1)?;
    let d = lefschetz::hypergeometric_modify(&c, &cut);
    let mm = lefschetz::mirror_map_correction(&d, sys.weights(), &cut)?;
    let g0: BTreeMap<_, _> = mm.g0.iter().map(|(k, v)| (*k, format_rational(v))).collect();
    eprintln!("mirror map: G0 non-constant part {g0:?}");
    let plain = lefschetz::period_sequence(&d, &mm.multiplier, terms)?;
    let reg = lefschetz::regularize(&plain);
    let shown = args.terms.max(1);
    let (plain_out, reg_out) = (lines(&plain[..shown]), lines(&reg[..shown]));
    match &args.common.out {
        Some(dir) => {
            write(dir, "period_plain.txt", &plain_out)?;
            write(dir, "period_regularized.txt", &reg_out)?;
        }
        None if args.regularized => print!("{reg_out}"),
        None if args.plain => print!("{plain_out}"),
        None => print!("# plain\n{plain_out}# regularized\n{reg_out}"),
    }
    let mut failures = Vec::new();
    if let Some(path) = &args.pf_verify {
        let op = PFOp::parse(&read(path)?)?;
        let res = lefschetz::pf_apply(&op, &reg);
        match res.iter().position(|x| x != &Default::default()) {
            None => println!("pf-verify: residual zero at {} certified positions", res.len()),
            Some(i) => failures.push(format!("pf-verify: residual at t^{i} is {}", format_rational(&res[i]))),
        }
    }
    if let Some((o, dg)) = args.pf_search {
        match lefschetz::find_annihilator(&reg, o, dg)? {
            Annihilator::Unique(op) => {
                println!("# annihilator, order {o}, degree {dg}, {} terms", op.len());
                print!("{op}");
            }
            Annihilator::None => failures.push(format!("pf-search: no operator of order {o}, degree {dg}")),
            Annihilator::Degenerate(k) => failures.push(format!(
                "pf-search: {k}-dimensional solution space; lower order or degree"
            )),
        }
    }
    report(failures)
}

fn cmd_seeds(args: &SeedArgs) -> Run {
    let s = setup(&args.common)?;
    let table = seed_table(&s.ring, &s.source)?;
    let text = format_seeds(&s.ring, &table);
    match &args.common.out {
        Some(dir) => write(dir, "seeds.txt", &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Reconstruct(a) => cmd_reconstruct(a),
        Cmd::Jfun(a) => cmd_jfun(a),
        Cmd::Periods(a) => cmd_periods(a),
        Cmd::Seeds(a) => cmd_seeds(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(m)) => {
            eprintln!("{m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
