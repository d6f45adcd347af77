//! `tavoid` — build, inspect, and verify LP energy-bound certificates for
//! inner-product-avoiding spherical codes.
//!
//! Exit codes: 0 success/valid, 1 a verification or bound check failed,
//! 2 usage or input error, 3 the distribution solve is infeasible.

mod cert_io;
mod output;
mod repro;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_traits::Zero;
use serde::Serialize;

use tavoid_core::certify::{
    self, builtin_nodes, lower_certificate_dec, lower_certificate_exact, sandwich_dec,
    sandwich_exact, upper_certificate_dec, upper_certificate_exact, verify_certificate_dec,
    verify_certificate_exact, Direction, SandwichReport, VerificationReport,
};
use tavoid_core::designs::{p48, solve_distribution, SolveError, P48_POINTS};
use tavoid_core::gegenbauer::{GegenbauerBasis, Sign};
use tavoid_core::interpolate::{partial_products, AvoidSet};
use tavoid_core::potentials::{Kind, Potential};
use tavoid_core::ratpoly::{poly_from_csv, rat_int, Rational};

use cert_io::{cert_table, dec_to_dto, dto_to_cert, exact_to_dto, CertDto, EitherCert};
use output::{emit, kv, render, status_line, Format};

#[derive(Parser)]
#[command(
    name = "tavoid",
    version,
    about = "Exact LP energy-bound certificates for inner-product-avoiding spherical codes"
)]
struct Cli {
    /// Working precision (decimal digits) for decimal-kind computations
    #[arg(long, global = true, default_value_t = certify::DEFAULT_PRECISION)]
    precision: u32,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write output to a file instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the normalized ultraspherical polynomials for a dimension
    Gegenbauer {
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        max_degree: usize,
    },
    /// Expand a polynomial in the ultraspherical basis
    Expand {
        /// Ascending comma-separated coefficients, each `p/q` or integer
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 48)]
        dim: u32,
    },
    /// Print the staged node-product expansions behind a bound's nodes
    PartialProducts {
        /// Avoided set name (T1 or T2)
        #[arg(long)]
        avoid: String,
        /// Which bound's node multiset to use
        #[arg(long, value_parser = ["lower", "upper"])]
        bound: String,
        #[arg(long, default_value_t = 48)]
        dim: u32,
    },
    /// Distance-distribution operations
    Distribution {
        #[command(subcommand)]
        cmd: DistributionCmd,
    },
    /// Energy of the built-in reference design under a potential
    Energy {
        #[arg(long)]
        potential: String,
    },
    /// Ultraspherical moments of the built-in reference design
    Moments {
        #[arg(long, default_value_t = 14)]
        max_degree: usize,
    },
    /// Exactness of the quadrature rule induced by the built-in design
    QuadratureCheck {
        #[arg(long, default_value_t = 13)]
        max_degree: usize,
    },
    /// Build a bound certificate (exit 0 VALID, 1 INVALID)
    Certify {
        #[command(subcommand)]
        direction: CertifyCmd,
    },
    /// Re-derive a stored certificate and re-check every stored value
    Verify {
        /// Path to a certificate JSON file
        path: PathBuf,
    },
    /// Both lower bounds and the upper bound pinching the design energy
    Sandwich {
        #[arg(long)]
        potential: String,
    },
    /// Re-run every published computation and print a checklist
    ReproducePaper {
        /// Deliberately corrupt one frozen table entry (harness self-test)
        #[arg(long, hide = true)]
        corrupt_table: bool,
    },
}

#[derive(Subcommand)]
enum DistributionCmd {
    /// Solve for the per-point counts from support, cardinality, strength
    Solve {
        /// Comma-separated support abscissae, each `p/q` or integer
        #[arg(long)]
        support: String,
        #[arg(long)]
        n_points: u64,
        #[arg(long)]
        strength: u32,
        /// Treat the code as antipodal (± classes share a count)
        #[arg(long)]
        antipodal: bool,
        #[arg(long, default_value_t = 48)]
        dim: u32,
    },
}

#[derive(Args)]
struct CertifyArgs {
    /// Avoided set name (T1 or T2)
    #[arg(long)]
    avoid: String,
    /// Potential spec: poly:[..], riesz:s=<k>, gauss:sigma=<r>
    #[arg(long)]
    potential: String,
    #[arg(long, default_value_t = 48)]
    dim: u32,
    #[arg(long, default_value_t = P48_POINTS)]
    n_points: u64,
}

#[derive(Subcommand)]
enum CertifyCmd {
    /// Lower bound on the energy of avoiding codes
    Lower(CertifyArgs),
    /// Upper bound on the energy of avoiding strength-11 designs
    Upper(CertifyArgs),
}

/// An error that terminates the process with a specific exit code.
enum CliError {
    /// Bad input or an unsatisfiable precondition — exit 2.
    Usage(String),
    /// The distribution solve has no acceptable solution — exit 3.
    Infeasible(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Infeasible(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Infeasible(m) => m,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let Cli {
        precision,
        format,
        out,
        command,
    } = cli;
    if precision < certify::MIN_PRECISION {
        return Err(CliError::Usage(format!(
            "precision {precision} is below the supported minimum {}",
            certify::MIN_PRECISION
        )));
    }
    match command {
        Command::Gegenbauer { dim, max_degree } => {
            let rendered = cmd_gegenbauer(dim, max_degree, format)?;
            emit(&out, &rendered).map_err(usage)?;
            Ok(0)
        }
        Command::Expand { poly, dim } => {
            let rendered = cmd_expand(&poly, dim, format)?;
            emit(&out, &rendered).map_err(usage)?;
            Ok(0)
        }
        Command::PartialProducts { avoid, bound, dim } => {
            let rendered = cmd_partial_products(&avoid, &bound, dim, format)?;
            emit(&out, &rendered).map_err(usage)?;
            Ok(0)
        }
        Command::Distribution {
            cmd:
                DistributionCmd::Solve {
                    support,
                    n_points,
                    strength,
                    antipodal,
                    dim,
                },
        } => {
            let rendered = cmd_solve(&support, n_points, strength, antipodal, dim, format)?;
            emit(&out, &rendered).map_err(usage)?;
            Ok(0)
        }
        Command::Energy { potential } => {
            let rendered = cmd_energy(&potential, precision, format)?;
            emit(&out, &rendered).map_err(usage)?;
            Ok(0)
        }
        Command::Moments { max_degree } => {
            let rendered = cmd_moments(max_degree, format)?;
            emit(&out, &rendered).map_err(usage)?;
            Ok(0)
        }
        Command::QuadratureCheck { max_degree } => {
            let (rendered, passed) = cmd_quadrature_check(max_degree, format)?;
            emit(&out, &rendered).map_err(usage)?;
            Ok(if passed { 0 } else { 1 })
        }
        Command::Certify { direction } => cmd_certify(direction, precision, format, &out),
        Command::Verify { path } => cmd_verify(&path, format, &out),
        Command::Sandwich { potential } => {
            let (rendered, passed) = cmd_sandwich(&potential, precision, format)?;
            emit(&out, &rendered).map_err(usage)?;
            Ok(if passed { 0 } else { 1 })
        }
        Command::ReproducePaper { corrupt_table } => {
            let report = repro::run(precision, corrupt_table);
            let rendered = render(format, &report, || {
                let mut s = String::new();
                for i in &report.items {
                    s += &status_line(i.passed, &i.name, &i.detail);
                }
                s += &kv("reproduction", if report.all_passed { "PASS" } else { "FAIL" });
                s
            });
            emit(&out, &rendered).map_err(usage)?;
            Ok(if report.all_passed { 0 } else { 1 })
        }
    }
}

fn parse_avoid(name: &str) -> Result<AvoidSet, CliError> {
    match name {
        "T1" => Ok(AvoidSet::t1()),
        "T2" => Ok(AvoidSet::t2()),
        other => Err(CliError::Usage(format!(
            "unknown avoided set `{other}` (built-ins: T1, T2)"
        ))),
    }
}

fn parse_potential(spec: &str) -> Result<Potential, CliError> {
    Potential::parse(spec).map_err(usage)
}

#[derive(Serialize)]
struct PolyRow {
    degree: usize,
    coeffs: Vec<String>,
    display: String,
}

fn cmd_gegenbauer(dim: u32, max_degree: usize, format: Format) -> Result<String, CliError> {
    let basis = GegenbauerBasis::new(dim, max_degree).map_err(usage)?;
    #[derive(Serialize)]
    struct Out {
        dim: u32,
        polynomials: Vec<PolyRow>,
    }
    let polynomials: Vec<PolyRow> = (0..=max_degree)
        .map(|i| {
            let p = basis.poly(i);
            PolyRow {
                degree: i,
                coeffs: p.coeffs().iter().map(|c| c.to_string()).collect(),
                display: p.to_string(),
            }
        })
        .collect();
    let payload = Out { dim, polynomials };
    Ok(render(format, &payload, || {
        let mut s = String::new();
        for row in &payload.polynomials {
            s += &kv(&format!("P_{}", row.degree), &row.display);
        }
        s
    }))
}

fn cmd_expand(poly: &str, dim: u32, format: Format) -> Result<String, CliError> {
    let p = poly_from_csv(poly).map_err(CliError::Usage)?;
    let degree = p.degree().unwrap_or(0);
    let basis = GegenbauerBasis::new(dim, degree).map_err(usage)?;
    let e = basis.expand(&p).map_err(usage)?;
    #[derive(Serialize)]
    struct Row {
        i: usize,
        coeff: String,
        sign: String,
    }
    #[derive(Serialize)]
    struct Out {
        dim: u32,
        poly: String,
        coeffs: Vec<Row>,
    }
    let payload = Out {
        dim,
        poly: p.to_string(),
        coeffs: e
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| Row {
                i,
                coeff: c.to_string(),
                sign: Sign::of(c).to_string(),
            })
            .collect(),
    };
    Ok(render(format, &payload, || {
        let mut s = String::new();
        s += &kv("poly", &payload.poly);
        for row in &payload.coeffs {
            s += &kv(&format!("f_{}", row.i), format!("{} [{}]", row.coeff, row.sign));
        }
        s
    }))
}

fn cmd_partial_products(
    avoid: &str,
    bound: &str,
    dim: u32,
    format: Format,
) -> Result<String, CliError> {
    let avoid = parse_avoid(avoid)?;
    let direction = match bound {
        "lower" => Direction::Lower,
        "upper" => Direction::Upper,
        other => return Err(CliError::Usage(format!("unknown bound `{other}`"))),
    };
    let nodes = builtin_nodes(direction, &avoid).map_err(usage)?;
    let pps = partial_products(&nodes, dim).map_err(usage)?;
    #[derive(Serialize)]
    struct Stage {
        r: usize,
        poly: String,
        coeffs: Vec<String>,
    }
    #[derive(Serialize)]
    struct Out {
        avoid: String,
        bound: String,
        dim: u32,
        nodes: Vec<String>,
        stages: Vec<Stage>,
    }
    let payload = Out {
        avoid: avoid.name().to_string(),
        bound: bound.to_string(),
        dim,
        nodes: nodes.nodes().iter().map(|t| t.to_string()).collect(),
        stages: pps
            .iter()
            .map(|pp| Stage {
                r: pp.r,
                poly: pp.poly.to_string(),
                coeffs: pp.expansion.coeffs().iter().map(|c| c.to_string()).collect(),
            })
            .collect(),
    };
    Ok(render(format, &payload, || {
        let mut s = String::new();
        s += &kv("avoid", &payload.avoid);
        s += &kv("nodes", payload.nodes.join(", "));
        for st in &payload.stages {
            s += &kv(&format!("PP_{}", st.r), st.coeffs.join(", "));
        }
        s
    }))
}

fn cmd_solve(
    support: &str,
    n_points: u64,
    strength: u32,
    antipodal: bool,
    dim: u32,
    format: Format,
) -> Result<String, CliError> {
    let mut abscissae = Vec::new();
    for part in support.split(',') {
        let part = part.trim();
        let t: Rational = part
            .parse()
            .map_err(|_| CliError::Usage(format!("invalid support abscissa `{part}`")))?;
        abscissae.push(t);
    }
    let d = solve_distribution(&abscissae, n_points, strength, antipodal, dim).map_err(
        |e| match e {
            SolveError::Singular
            | SolveError::Inconsistent
            | SolveError::NonIntegral { .. }
            | SolveError::Negative { .. } => CliError::Infeasible(e.to_string()),
            other => CliError::Usage(other.to_string()),
        },
    )?;
    #[derive(Serialize)]
    struct Out {
        n_points: u64,
        antipodal: bool,
        strength: u32,
        counts: BTreeMap<String, u64>,
    }
    let payload = Out {
        n_points: d.n_points(),
        antipodal: d.antipodal(),
        strength,
        counts: d
            .entries()
            .iter()
            .map(|(t, c)| (t.to_string(), *c))
            .collect(),
    };
    Ok(render(format, &payload, || {
        let mut s = String::new();
        s += &kv("N", payload.n_points);
        // numeric order is more useful than the map's lexicographic order
        let mut ordered: Vec<(&String, &u64)> = payload.counts.iter().collect();
        ordered.sort_by_key(|(t, _)| t.parse::<Rational>().expect("serialized rational"));
        for (t, c) in ordered {
            s += &kv(&format!("A_{{{t}}}"), c);
        }
        s
    }))
}

fn cmd_energy(spec: &str, precision: u32, format: Format) -> Result<String, CliError> {
    let h = parse_potential(spec)?;
    let d = p48();
    #[derive(Serialize)]
    struct Out {
        potential: String,
        kind: String,
        energy: String,
        decimal: String,
    }
    let payload = match h.kind() {
        Kind::Exact => {
            let e = d.energy(&h).map_err(usage)?;
            let dec = d.energy_dec(&h, precision).map_err(usage)?;
            Out {
                potential: h.spec_string(),
                kind: "exact".to_string(),
                energy: e.to_string(),
                decimal: dec.to_string(),
            }
        }
        Kind::Float => {
            let dec = d.energy_dec(&h, precision).map_err(usage)?;
            Out {
                potential: h.spec_string(),
                kind: "decimal".to_string(),
                energy: dec.to_string(),
                decimal: dec.to_string(),
            }
        }
    };
    Ok(render(format, &payload, || {
        let mut s = String::new();
        s += &kv("potential", &payload.potential);
        s += &kv("kind", &payload.kind);
        s += &kv("energy", &payload.energy);
        s += &kv("decimal", &payload.decimal);
        s
    }))
}

fn cmd_moments(max_degree: usize, format: Format) -> Result<String, CliError> {
    let d = p48();
    let basis = GegenbauerBasis::new(48, max_degree).map_err(usage)?;
    #[derive(Serialize)]
    struct Row {
        i: usize,
        value: String,
        zero: bool,
    }
    #[derive(Serialize)]
    struct Out {
        strength: usize,
        moments: Vec<Row>,
    }
    let payload = Out {
        strength: d.strength(48).map_err(usage)?,
        moments: (1..=max_degree)
            .map(|i| {
                let m = d.moment(&basis, i);
                Row {
                    i,
                    value: m.to_string(),
                    zero: m.is_zero(),
                }
            })
            .collect(),
    };
    Ok(render(format, &payload, || {
        let mut s = String::new();
        for row in &payload.moments {
            s += &kv(&format!("M_{}", row.i), &row.value);
        }
        s += &kv("strength", payload.strength);
        s
    }))
}

fn cmd_quadrature_check(max_degree: usize, format: Format) -> Result<(String, bool), CliError> {
    let d = p48();
    let q = d.quadrature(48).map_err(usage)?;
    #[derive(Serialize)]
    struct Row {
        degree: usize,
        residual: String,
        exact: bool,
    }
    #[derive(Serialize)]
    struct Out {
        exactness: usize,
        weight_sum: String,
        rows: Vec<Row>,
        passed: bool,
    }
    let rows: Vec<Row> = (0..=max_degree)
        .map(|k| {
            let r = q.residual(&tavoid_core::ratpoly::RationalPoly::monomial(rat_int(1), k));
            Row {
                degree: k,
                residual: r.to_string(),
                exact: r.is_zero(),
            }
        })
        .collect();
    // degrees past exactness+1 can be exact incidentally (odd powers vanish
    // on an antipodal design), so only the first overshoot must fail
    let row_ok = |r: &Row| match r.degree {
        d if d <= q.exactness() => r.exact,
        d if d == q.exactness() + 1 => !r.exact,
        _ => true,
    };
    let passed = q.weight_sum() == rat_int(1) && rows.iter().all(row_ok);
    let payload = Out {
        exactness: q.exactness(),
        weight_sum: q.weight_sum().to_string(),
        rows,
        passed,
    };
    let rendered = render(format, &payload, || {
        let mut s = String::new();
        s += &kv("exactness", payload.exactness);
        s += &kv("weight_sum", &payload.weight_sum);
        for row in &payload.rows {
            s += &status_line(
                row_ok(row),
                &format!("t^{}", row.degree),
                &format!("residual {}", row.residual),
            );
        }
        s
    });
    Ok((rendered, payload.passed))
}

fn cmd_certify(
    cmd: CertifyCmd,
    precision: u32,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<u8, CliError> {
    let (direction, args) = match cmd {
        CertifyCmd::Lower(a) => (Direction::Lower, a),
        CertifyCmd::Upper(a) => (Direction::Upper, a),
    };
    let avoid = parse_avoid(&args.avoid)?;
    let h = parse_potential(&args.potential)?;
    let (dto, valid) = match h.kind() {
        Kind::Exact => {
            let c = match direction {
                Direction::Lower => lower_certificate_exact(&h, &avoid, args.dim, args.n_points),
                Direction::Upper => upper_certificate_exact(&h, &avoid, args.dim, args.n_points),
            }
            .map_err(usage)?;
            (exact_to_dto(&c), c.is_valid())
        }
        Kind::Float => {
            let c = match direction {
                Direction::Lower => {
                    lower_certificate_dec(&h, &avoid, args.dim, args.n_points, precision)
                }
                Direction::Upper => {
                    upper_certificate_dec(&h, &avoid, args.dim, args.n_points, precision)
                }
            }
            .map_err(usage)?;
            (dec_to_dto(&c), c.is_valid())
        }
    };
    let rendered = render(format, &dto, || cert_table(&dto, valid));
    // `--out` captures the machine-readable certificate regardless of the
    // display format; the table still goes to standard output
    match (out, format) {
        (Some(path), Format::Table) => {
            let mut json = serde_json::to_string_pretty(&dto).expect("serializable certificate");
            json.push('\n');
            std::fs::write(path, json).map_err(usage)?;
            print!("{rendered}");
        }
        _ => emit(out, &rendered).map_err(usage)?,
    }
    Ok(if valid { 0 } else { 1 })
}

fn report_output(
    report: &VerificationReport,
    format: Format,
) -> String {
    #[derive(Serialize)]
    struct Out {
        passed: bool,
        checks: Vec<cert_io::CheckDto>,
    }
    let payload = Out {
        passed: report.passed(),
        checks: report
            .checks
            .iter()
            .map(|c| cert_io::CheckDto {
                name: c.name.clone(),
                passed: c.passed,
                detail: c.detail.clone(),
            })
            .collect(),
    };
    render(format, &payload, || {
        let mut s = String::new();
        for c in &payload.checks {
            s += &status_line(c.passed, &c.name, &c.detail);
        }
        s += &kv("verification", if payload.passed { "PASS" } else { "FAIL" });
        s
    })
}

fn cmd_verify(path: &PathBuf, format: Format, out: &Option<PathBuf>) -> Result<u8, CliError> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let dto: CertDto = serde_json::from_str(&raw)
        .map_err(|e| CliError::Usage(format!("malformed certificate: {e}")))?;
    let report = match dto_to_cert(&dto).map_err(CliError::Usage)? {
        EitherCert::Exact(c) => verify_certificate_exact(&c),
        EitherCert::Float(c) => verify_certificate_dec(&c),
    };
    let rendered = report_output(&report, format);
    emit(out, &rendered).map_err(usage)?;
    Ok(if report.passed() { 0 } else { 1 })
}

fn sandwich_output<S>(r: &SandwichReport<S>, format: Format) -> String
where
    S: tavoid_core::scalar::Scalar + std::fmt::Display,
{
    #[derive(Serialize)]
    struct Side {
        bound: String,
        valid: bool,
    }
    #[derive(Serialize)]
    struct Out {
        potential: String,
        energy: String,
        lower_t1: Side,
        lower_t2: Side,
        upper: Side,
        coincide: bool,
        all_valid: bool,
    }
    let side = |c: &tavoid_core::certify::BoundCertificate<S>| Side {
        bound: c.bound.to_string(),
        valid: c.is_valid(),
    };
    let payload = Out {
        potential: r.potential.clone(),
        energy: r.energy.to_string(),
        lower_t1: side(&r.lower_t1),
        lower_t2: side(&r.lower_t2),
        upper: side(&r.upper),
        coincide: r.coincide,
        all_valid: r.all_valid,
    };
    render(format, &payload, || {
        let mut s = String::new();
        s += &kv("potential", &payload.potential);
        s += &kv("energy", &payload.energy);
        s += &kv("lower_t1", &payload.lower_t1.bound);
        s += &kv("lower_t2", &payload.lower_t2.bound);
        s += &kv("upper", &payload.upper.bound);
        s += &kv(
            "sandwich",
            if payload.coincide && payload.all_valid {
                "BOUNDS COINCIDE"
            } else {
                "BOUNDS DIFFER"
            },
        );
        s
    })
}

fn cmd_sandwich(
    spec: &str,
    precision: u32,
    format: Format,
) -> Result<(String, bool), CliError> {
    let h = parse_potential(spec)?;
    match h.kind() {
        Kind::Exact => {
            let r = sandwich_exact(&h).map_err(usage)?;
            Ok((sandwich_output(&r, format), r.coincide && r.all_valid))
        }
        Kind::Float => {
            let r = sandwich_dec(&h, precision).map_err(usage)?;
            Ok((sandwich_output(&r, format), r.coincide && r.all_valid))
        }
    }
}
