//! Certificate (de)serialization. Top-level JSON keys are fixed:
//! `direction, dim, N, avoid, nodes, potential, interpolant_coeffs,
//! gegenbauer_coeffs, sign_exceptions, class, bound, design_energy, gap,
//! checks` — rationals as `p/q` strings, decimal-kind numbers as
//! full-precision decimal strings, plus a `precision` key present only for
//! the decimal kind (verification must replay at the same precision).

use serde::{Deserialize, Serialize};

use tavoid_core::certify::{
    AdmissibilityClass, BoundCertificate, Check, Direction, ExactCertificate, FloatCertificate,
};
use tavoid_core::interpolate::{AvoidSet, NodeMultiset};
use tavoid_core::potentials::dec::Dec;
use tavoid_core::potentials::{Kind, Potential};
use tavoid_core::ratpoly::Rational;

#[derive(Debug, Serialize, Deserialize)]
pub struct CertDto {
    pub direction: String,
    pub dim: u32,
    #[serde(rename = "N")]
    pub n_points: u64,
    pub avoid: AvoidDto,
    pub nodes: Vec<String>,
    pub potential: String,
    pub interpolant_coeffs: Vec<String>,
    pub gegenbauer_coeffs: Vec<String>,
    pub sign_exceptions: Vec<usize>,
    pub class: String,
    pub bound: String,
    pub design_energy: Option<String>,
    pub gap: Option<String>,
    pub checks: Vec<CheckDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AvoidDto {
    pub name: String,
    pub intervals: Vec<[String; 2]>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CheckDto {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn common_dto<S: tavoid_core::scalar::Scalar + std::fmt::Display>(
    c: &BoundCertificate<S>,
    precision: Option<u32>,
) -> CertDto {
    CertDto {
        direction: c.direction.as_str().to_string(),
        dim: c.dim,
        n_points: c.n_points,
        avoid: AvoidDto {
            name: c.avoid.name().to_string(),
            intervals: c
                .avoid
                .intervals()
                .iter()
                .map(|(lo, hi)| [lo.to_string(), hi.to_string()])
                .collect(),
        },
        nodes: c.nodes.nodes().iter().map(|t| t.to_string()).collect(),
        potential: c.potential.spec_string(),
        interpolant_coeffs: c.interpolant_coeffs.iter().map(|v| v.to_string()).collect(),
        gegenbauer_coeffs: c.gegenbauer_coeffs.iter().map(|v| v.to_string()).collect(),
        sign_exceptions: c.sign_exceptions.iter().copied().collect(),
        class: c.class.spec_string(),
        bound: c.bound.to_string(),
        design_energy: c.design_energy.as_ref().map(|v| v.to_string()),
        gap: c.gap.as_ref().map(|v| v.to_string()),
        checks: c
            .checks
            .iter()
            .map(|ch| CheckDto {
                name: ch.name.clone(),
                passed: ch.passed,
                detail: ch.detail.clone(),
            })
            .collect(),
        precision,
    }
}

pub fn exact_to_dto(c: &ExactCertificate) -> CertDto {
    common_dto(c, None)
}

pub fn dec_to_dto(c: &FloatCertificate) -> CertDto {
    common_dto(c, Some(c.ctx))
}

/// A deserialized certificate of either arithmetic kind.
pub enum EitherCert {
    Exact(Box<ExactCertificate>),
    Float(Box<FloatCertificate>),
}

fn parse_rational(s: &str, what: &str) -> Result<Rational, String> {
    s.parse()
        .map_err(|_| format!("{what}: `{s}` is not a rational"))
}

fn parse_checks(dto: &CertDto) -> Vec<Check> {
    dto.checks
        .iter()
        .map(|c| Check {
            name: c.name.clone(),
            passed: c.passed,
            detail: c.detail.clone(),
        })
        .collect()
}

/// Rebuilds the in-memory certificate from its JSON form. The arithmetic
/// kind follows the embedded potential spec; decimal certificates must
/// carry their working precision.
pub fn dto_to_cert(dto: &CertDto) -> Result<EitherCert, String> {
    let direction = match dto.direction.as_str() {
        "lower" => Direction::Lower,
        "upper" => Direction::Upper,
        other => return Err(format!("unknown direction `{other}`")),
    };
    let potential =
        Potential::parse(&dto.potential).map_err(|e| format!("potential: {e}"))?;
    let mut intervals = Vec::new();
    for [lo, hi] in &dto.avoid.intervals {
        intervals.push((
            parse_rational(lo, "avoid interval")?,
            parse_rational(hi, "avoid interval")?,
        ));
    }
    let avoid =
        AvoidSet::new(&dto.avoid.name, intervals).map_err(|e| format!("avoid set: {e}"))?;
    let mut nodes = Vec::new();
    for s in &dto.nodes {
        nodes.push(parse_rational(s, "node")?);
    }
    let nodes = NodeMultiset::new(nodes).map_err(|e| format!("nodes: {e}"))?;
    let class = AdmissibilityClass::parse(&dto.class)?;
    let sign_exceptions = dto.sign_exceptions.iter().copied().collect();
    let checks = parse_checks(dto);

    match potential.kind() {
        Kind::Exact => {
            let parse_vec = |xs: &[String], what: &str| -> Result<Vec<Rational>, String> {
                xs.iter().map(|s| parse_rational(s, what)).collect()
            };
            Ok(EitherCert::Exact(Box::new(BoundCertificate {
                direction,
                dim: dto.dim,
                n_points: dto.n_points,
                avoid,
                nodes,
                potential,
                interpolant_coeffs: parse_vec(&dto.interpolant_coeffs, "interpolant")?,
                gegenbauer_coeffs: parse_vec(&dto.gegenbauer_coeffs, "expansion")?,
                sign_exceptions,
                class,
                bound: parse_rational(&dto.bound, "bound")?,
                design_energy: dto
                    .design_energy
                    .as_ref()
                    .map(|s| parse_rational(s, "design energy"))
                    .transpose()?,
                gap: dto
                    .gap
                    .as_ref()
                    .map(|s| parse_rational(s, "gap"))
                    .transpose()?,
                checks,
                ctx: (),
            })))
        }
        Kind::Float => {
            let prec = dto
                .precision
                .ok_or("decimal-kind certificate is missing its `precision` key")?;
            let parse_dec = |s: &str, what: &str| -> Result<Dec, String> {
                Dec::parse(s, prec).map_err(|_| format!("{what}: `{s}` is not a decimal"))
            };
            let parse_vec = |xs: &[String], what: &str| -> Result<Vec<Dec>, String> {
                xs.iter().map(|s| parse_dec(s, what)).collect()
            };
            Ok(EitherCert::Float(Box::new(BoundCertificate {
                direction,
                dim: dto.dim,
                n_points: dto.n_points,
                avoid,
                nodes,
                potential,
                interpolant_coeffs: parse_vec(&dto.interpolant_coeffs, "interpolant")?,
                gegenbauer_coeffs: parse_vec(&dto.gegenbauer_coeffs, "expansion")?,
                sign_exceptions,
                class,
                bound: parse_dec(&dto.bound, "bound")?,
                design_energy: dto
                    .design_energy
                    .as_ref()
                    .map(|s| parse_dec(s, "design energy"))
                    .transpose()?,
                gap: dto
                    .gap
                    .as_ref()
                    .map(|s| parse_dec(s, "gap"))
                    .transpose()?,
                checks,
                ctx: prec,
            })))
        }
    }
}

/// Human-readable rendering of a certificate DTO.
pub fn cert_table(dto: &CertDto, valid: bool) -> String {
    use crate::output::{kv, status_line};
    let mut s = String::new();
    s += &kv("direction", &dto.direction);
    s += &kv("avoid", &dto.avoid.name);
    s += &kv("potential", &dto.potential);
    s += &kv("class", &dto.class);
    s += &kv("dim", dto.dim);
    s += &kv("N", dto.n_points);
    if let Some(p) = dto.precision {
        s += &kv("precision", p);
    }
    s += &kv("bound", &dto.bound);
    s += &kv(
        "design_energy",
        dto.design_energy.as_deref().unwrap_or("n/a"),
    );
    s += &kv("gap", dto.gap.as_deref().unwrap_or("n/a"));
    for c in &dto.checks {
        s += &status_line(c.passed, &c.name, &c.detail);
    }
    s += &kv("certificate", if valid { "VALID" } else { "INVALID" });
    s
}
