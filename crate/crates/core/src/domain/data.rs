use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use super::parse::{integer_arg, Call};
use super::{Domain, Shape};
use crate::error::{Error, Result};
use crate::geom::Point;

pub const DATA_NAMES: &str =
    "constant(c), affine(a,b,c), saddle, fourier_mode(m), annulus_indicator, hadamard_partial(M)";

/// Largest number of terms accepted for the truncated lacunary series.
pub const HADAMARD_MAX_TERMS: u32 = 7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DataKind {
    Constant(f64),
    /// `a·x + b·y + c`.
    Affine { a: f64, b: f64, c: f64 },
    /// `x² − y²`.
    Saddle,
    /// Boundary values `Re(zᵐ) = rᵐ cos(mθ)`, extended by `Re(zᵐ) + sdf²`,
    /// which is not harmonic but agrees with `Re(zᵐ)` on the boundary.
    FourierMode(u32),
    /// 1 on the inner circle, 0 on the outer; extended by the radial
    /// harmonic function `log(R/r) / log(R/ρ)`.
    AnnulusIndicator { inner: f64, outer: f64 },
    /// `Σ_{n=1}^{M} n⁻² r^{n!} sin(n!θ)`.
    HadamardPartial(u32),
}

/// Boundary values `g` together with a continuous finite-energy extension `φ`
/// on the closure of the domain.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryData {
    kind: DataKind,
    name: String,
    domain: Domain,
}

/// Parses a data identifier such as `"fourier_mode(3)"` for use on `domain`.
pub fn builtin_data(spec: &str, domain: &Domain) -> Result<BoundaryData> {
    let call = Call::parse("data", spec)?;
    let kind = match call.name.as_str() {
        "constant" => {
            call.expect_arity("data", 1)?;
            DataKind::Constant(call.args[0])
        }
        "affine" => {
            call.expect_arity("data", 3)?;
            DataKind::Affine {
                a: call.args[0],
                b: call.args[1],
                c: call.args[2],
            }
        }
        "saddle" => {
            call.expect_arity("data", 0)?;
            DataKind::Saddle
        }
        "fourier_mode" => {
            call.expect_arity("data", 1)?;
            DataKind::FourierMode(integer_arg("fourier mode m", call.args[0])?)
        }
        "annulus_indicator" => {
            call.expect_arity("data", 0)?;
            match domain.shape() {
                Shape::Annulus { inner, outer } => DataKind::AnnulusIndicator { inner, outer },
                _ => {
                    return Err(Error::DomainMismatch {
                        data: call.to_string(),
                        domain: domain.name().to_string(),
                    })
                }
            }
        }
        "hadamard_partial" => {
            call.expect_arity("data", 1)?;
            return hadamard_partial_sum(integer_arg("number of terms M", call.args[0])?);
        }
        _ => {
            return Err(Error::UnknownName {
                kind: "data",
                name: call.name,
                valid: DATA_NAMES,
            })
        }
    };
    Ok(BoundaryData {
        kind,
        name: call.to_string(),
        domain: domain.clone(),
    })
}

/// Truncation of the lacunary series whose limit is continuous on the unit
/// circle but has a harmonic extension of infinite energy.
pub fn hadamard_partial_sum(terms: u32) -> Result<BoundaryData> {
    if !(1..=HADAMARD_MAX_TERMS).contains(&terms) {
        return Err(Error::Parameter(format!(
            "hadamard_partial needs 1 <= M <= {HADAMARD_MAX_TERMS}, got {terms}"
        )));
    }
    Ok(BoundaryData {
        kind: DataKind::HadamardPartial(terms),
        name: format!("hadamard_partial({terms})"),
        domain: Domain::disc(1.0)?,
    })
}

fn fourier_mode(m: u32, p: Point) -> f64 {
    Complex64::new(p.x, p.y).powu(m).re
}

fn factorial(n: u32) -> u64 {
    (1..=u64::from(n)).product()
}

impl BoundaryData {
    pub fn kind(&self) -> DataKind {
        self.kind
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    /// The extension `φ`, defined on the closure of the domain.
    pub fn phi(&self, p: Point) -> f64 {
        match self.kind {
            DataKind::FourierMode(m) => {
                let d = self.domain.sdf(p);
                fourier_mode(m, p) + d * d
            }
            _ => self.harmonic(p),
        }
    }

    /// Boundary values `g`.
    pub fn g(&self, p: Point) -> f64 {
        match self.kind {
            DataKind::AnnulusIndicator { inner, outer } => {
                let r = p.norm();
                if (r - inner).abs() <= (outer - r).abs() {
                    1.0
                } else {
                    0.0
                }
            }
            _ => self.harmonic(p),
        }
    }

    fn harmonic(&self, p: Point) -> f64 {
        match self.kind {
            DataKind::Constant(c) => c,
            DataKind::Affine { a, b, c } => a * p.x + b * p.y + c,
            DataKind::Saddle => p.x * p.x - p.y * p.y,
            DataKind::FourierMode(m) => fourier_mode(m, p),
            DataKind::AnnulusIndicator { inner, outer } => (outer / p.norm()).ln() / (outer / inner).ln(),
            DataKind::HadamardPartial(terms) => {
                let r = p.norm();
                let theta = p.y.atan2(p.x);
                (1..=terms)
                    .map(|n| {
                        let mode = factorial(n) as f64;
                        r.powf(mode) * (mode * theta).sin() / f64::from(n * n)
                    })
                    .sum()
            }
        }
    }

    pub fn has_analytic_solution(&self) -> bool {
        true
    }

    /// The harmonic function with boundary values `g`, where known.
    pub fn analytic_solution(&self, p: Point) -> Option<f64> {
        self.has_analytic_solution().then(|| self.harmonic(p))
    }

    /// Whether `φ` itself is harmonic, so that it is its own solution.
    pub fn extension_is_harmonic(&self) -> bool {
        !matches!(self.kind, DataKind::FourierMode(_))
    }

    /// Highest angular frequency present in `φ`; used to check that a grid
    /// resolves the data.
    pub fn max_mode(&self) -> u64 {
        match self.kind {
            DataKind::Constant(_) | DataKind::AnnulusIndicator { .. } => 0,
            DataKind::Affine { .. } => 1,
            DataKind::Saddle => 2,
            DataKind::FourierMode(m) => u64::from(m),
            DataKind::HadamardPartial(terms) => factorial(terms),
        }
    }

    /// Closed-form Dirichlet energy of the series on the unit disc,
    /// `π Σ n!/n⁴`.
    pub fn hadamard_exact_energy(&self) -> Option<f64> {
        match self.kind {
            DataKind::HadamardPartial(terms) => Some(
                PI * (1..=terms)
                    .map(|n| factorial(n) as f64 / f64::from(n).powi(4))
                    .sum::<f64>(),
            ),
            _ => None,
        }
    }
}

impl fmt::Display for BoundaryData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}
