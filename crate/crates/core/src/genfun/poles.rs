use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use super::roots::{find_roots, snap_exact_root};
use crate::error::Result;
use crate::exact::{ComplexQ, Poly};

/// Tolerance for deciding `|root| = 1` when a root is only known numerically.
pub const CIRCLE_TOLERANCE: f64 = 1e-10;

/// Float roots closer than this (relative) are merged into one multiple root.
const CLUSTER_TOLERANCE: f64 = 1e-5;

#[derive(Debug, Clone, PartialEq)]
pub enum Root {
    Exact(ComplexQ),
    Numeric { value: Complex64, tol: f64 },
}

impl Root {
    pub fn to_c64(&self) -> Complex64 {
        match self {
            Root::Exact(z) => z.to_c64(),
            Root::Numeric { value, .. } => *value,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Root::Exact(_))
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Root::Exact(z) => write!(f, "{z}"),
            Root::Numeric { value, tol } => {
                write!(f, "{} (±{tol:e})", crate::exact::format_c64(*value))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Pole {
    pub root: Root,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Location {
    Inside,
    OnCircle,
    Outside,
    Removable,
}

/// An admissibility condition of the regularized sum that a generating function fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    PoleInsideDisc { root: String },
    PoleAtOne,
    HigherOrderOnCircle { root: String, order: usize },
    SeveralOnCircle { count: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::PoleInsideDisc { root } => {
                write!(f, "pole {root} lies inside the open unit disc (coefficients must grow at most polynomially)")
            }
            Violation::PoleAtOne => {
                write!(f, "pole at z = 1 (the on-circle pole z0 must differ from 1)")
            }
            Violation::HigherOrderOnCircle { root, order } => {
                write!(f, "pole {root} on the unit circle has order {order} (only simple poles are supported)")
            }
            Violation::SeveralOnCircle { count } => {
                write!(f, "{count} poles on the unit circle (at most one is assumed; see --allow-multi-pole)")
            }
        }
    }
}

/// Denominator roots bucketed by position relative to the unit circle.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PoleReport {
    pub inside: Vec<Pole>,
    pub on_circle: Vec<Pole>,
    pub outside: Vec<Pole>,
    /// Denominator roots cancelled by the numerator.
    pub removable: Vec<Pole>,
}

impl PoleReport {
    /// First violated assumption, if any. `allow_multi_pole` waives the
    /// single-pole requirement (experimental).
    pub fn check_admissible(&self, allow_multi_pole: bool) -> std::result::Result<(), Violation> {
        if let Some(p) = self.inside.first() {
            return Err(Violation::PoleInsideDisc { root: p.root.to_string() });
        }
        for p in &self.on_circle {
            if is_one(&p.root) {
                return Err(Violation::PoleAtOne);
            }
        }
        for p in &self.on_circle {
            if p.multiplicity > 1 {
                return Err(Violation::HigherOrderOnCircle { root: p.root.to_string(), order: p.multiplicity });
            }
        }
        if self.on_circle.len() > 1 && !allow_multi_pole {
            return Err(Violation::SeveralOnCircle { count: self.on_circle.len() });
        }
        Ok(())
    }

    pub fn admissible(&self) -> bool {
        self.check_admissible(false).is_ok()
    }

    /// True when every pole position was decided in exact arithmetic.
    pub fn all_exact(&self) -> bool {
        self.entries().all(|(_, p)| p.root.is_exact())
    }

    pub fn entries(&self) -> impl Iterator<Item = (Location, &Pole)> {
        self.inside
            .iter()
            .map(|p| (Location::Inside, p))
            .chain(self.on_circle.iter().map(|p| (Location::OnCircle, p)))
            .chain(self.outside.iter().map(|p| (Location::Outside, p)))
            .chain(self.removable.iter().map(|p| (Location::Removable, p)))
    }

    fn push(&mut self, pole: Pole) {
        match locate(&pole.root) {
            Location::Inside => self.inside.push(pole),
            Location::OnCircle => self.on_circle.push(pole),
            _ => self.outside.push(pole),
        }
    }
}

fn is_one(root: &Root) -> bool {
    match root {
        Root::Exact(z) => z.is_one(),
        Root::Numeric { value, tol } => (value - Complex64::new(1.0, 0.0)).norm() < *tol,
    }
}

fn locate(root: &Root) -> Location {
    match root {
        Root::Exact(z) => match z.norm_sqr().partial_cmp(&1).expect("total order") {
            std::cmp::Ordering::Less => Location::Inside,
            std::cmp::Ordering::Equal => Location::OnCircle,
            std::cmp::Ordering::Greater => Location::Outside,
        },
        Root::Numeric { value, tol } => {
            let r = value.norm();
            if (r - 1.0).abs() < *tol {
                Location::OnCircle
            } else if r < 1.0 {
                Location::Inside
            } else {
                Location::Outside
            }
        }
    }
}

/// Buckets exactly known roots. `common` is the numerator/denominator gcd;
/// its share of each multiplicity is moved to the removable bucket.
pub(super) fn classify_exact(roots: &[(ComplexQ, usize)], common: &Poly) -> PoleReport {
    let mut report = PoleReport::default();
    for (root, mult) in roots {
        let cancelled = common.root_multiplicity(root).min(*mult);
        let remaining = mult - cancelled;
        if cancelled > 0 {
            report.removable.push(Pole { root: Root::Exact(root.clone()), multiplicity: cancelled });
        }
        if remaining > 0 {
            report.push(Pole { root: Root::Exact(root.clone()), multiplicity: remaining });
        }
    }
    report
}

/// Finds and buckets the roots of `den` (already reduced against the numerator).
///
/// Roots that can be recognised as Gaussian rationals and verified exactly are
/// deflated and reported as exact; the rest stay numeric.
pub(super) fn classify_numeric(den: &Poly, removable: Vec<Pole>) -> Result<PoleReport> {
    let mut report = PoleReport { removable, ..Default::default() };
    let mut rest = den.clone();
    let mut floats = Vec::new();
    while rest.degree().unwrap_or(0) >= 1 {
        let approx = find_roots(&rest.to_c64())?;
        let snapped = approx.iter().find_map(|&r| snap_exact_root(&rest, r));
        match snapped {
            Some(root) => {
                let m = rest.root_multiplicity(&root);
                let factor = Poly::linear_factor(&root).pow(m as u32);
                rest = rest.div_rem(&factor)?.0;
                report.push(Pole { root: Root::Exact(root), multiplicity: m });
            }
            None => {
                floats = approx;
                break;
            }
        }
    }
    for (value, multiplicity) in cluster(&floats) {
        report.push(Pole { root: Root::Numeric { value, tol: CIRCLE_TOLERANCE }, multiplicity });
    }
    Ok(report)
}

fn cluster(roots: &[Complex64]) -> Vec<(Complex64, usize)> {
    let mut groups: Vec<Vec<Complex64>> = Vec::new();
    for &r in roots {
        let tol = CLUSTER_TOLERANCE * r.norm().max(1.0);
        match groups.iter_mut().find(|g| (g[0] - r).norm() < tol) {
            Some(g) => g.push(r),
            None => groups.push(vec![r]),
        }
    }
    groups
        .into_iter()
        .map(|g| {
            let n = g.len();
            (g.iter().sum::<Complex64>() / n as f64, n)
        })
        .collect()
}
