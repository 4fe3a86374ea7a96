//! Geometric phase: connection line integrals, curvature surface
//! integrals, and the rectangle helper pairing the two for Stokes checks.

use crate::error::CoreError;
use crate::family::{ParameterPoint, ReferenceState, UnitaryFamily};
use crate::tensor::{berry_connection, oqgt_entry};

/// Closed polyline in parameter space. Orientation is the point order;
/// closure of the endpoints is exact (identical coordinates).
#[derive(Debug, Clone)]
pub struct LoopPath {
    points: Vec<ParameterPoint>,
}

impl LoopPath {
    pub fn new(points: Vec<ParameterPoint>) -> Result<Self, CoreError> {
        if points.len() < 2 {
            return Err(CoreError::LoopTooShort { got: points.len() });
        }
        let first = &points[0];
        let last = &points[points.len() - 1];
        if first.coords != last.coords {
            return Err(CoreError::OpenLoop);
        }
        let d = first.dim();
        if points.iter().any(|p| p.dim() != d) {
            return Err(CoreError::DimensionMismatch {
                expected: d,
                found: points.iter().map(|p| p.dim()).find(|&n| n != d).unwrap_or(d),
            });
        }
        Ok(LoopPath { points })
    }

    pub fn points(&self) -> &[ParameterPoint] {
        &self.points
    }

    /// Same polyline traversed backwards.
    pub fn reversed(&self) -> LoopPath {
        let mut points = self.points.clone();
        points.reverse();
        LoopPath { points }
    }
}

/// A coordinate rectangle spanned by two parameter axes, with the
/// remaining coordinates frozen at `base`. Orientation is `axis_a` cross
/// `axis_b`: the paired boundary loop runs counterclockwise in the
/// `(a, b)` plane.
#[derive(Debug, Clone)]
pub struct SurfaceRect {
    pub base: ParameterPoint,
    pub axis_a: usize,
    pub axis_b: usize,
    pub a_range: (f64, f64),
    pub b_range: (f64, f64),
    /// Mesh cells along each axis for the midpoint quadrature.
    pub na: usize,
    pub nb: usize,
}

impl SurfaceRect {
    fn validate(&self) -> Result<(), CoreError> {
        let d = self.base.dim();
        for axis in [self.axis_a, self.axis_b] {
            if axis >= d {
                return Err(CoreError::AxisOutOfRange { axis, dim: d });
            }
        }
        if self.axis_a == self.axis_b {
            return Err(CoreError::invalid(
                "surface rectangle",
                "the two axes must be distinct",
            ));
        }
        if self.na == 0 || self.nb == 0 {
            return Err(CoreError::invalid(
                "surface rectangle",
                "mesh counts must be at least 1",
            ));
        }
        Ok(())
    }

    fn point_at(&self, a: f64, b: f64) -> ParameterPoint {
        let mut p = self.base.clone();
        p.coords[self.axis_a] = a;
        p.coords[self.axis_b] = b;
        p
    }
}

/// Phase values are reported both raw and wrapped to `(-pi, pi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseResult {
    pub raw: f64,
    pub principal: f64,
}

impl PhaseResult {
    fn from_raw(raw: f64) -> Self {
        let tau = std::f64::consts::TAU;
        let mut m = raw.rem_euclid(tau);
        if m > std::f64::consts::PI {
            m -= tau;
        }
        PhaseResult { raw, principal: m }
    }
}

/// `n` evenly spaced values from `x0` (inclusive) to `x1` (exclusive),
/// used to build polyline legs whose corners are hit exactly.
fn leg(x0: f64, x1: f64, n: usize) -> impl Iterator<Item = f64> {
    let dx = (x1 - x0) / n as f64;
    (0..n).map(move |i| if i == 0 { x0 } else { x0 + i as f64 * dx })
}

/// Counterclockwise boundary of a [`SurfaceRect`] in its `(a, b)` plane,
/// with `na`/`nb` segments per `a`/`b` leg. The loop closes exactly on its
/// starting point, so [`geometric_phase_line`] over this path pairs with
/// [`geometric_phase_surface`] over the rectangle (Stokes).
pub fn rectangle_loop(rect: &SurfaceRect, na: usize, nb: usize) -> Result<LoopPath, CoreError> {
    rect.validate()?;
    if na == 0 || nb == 0 {
        return Err(CoreError::invalid(
            "rectangle loop",
            "segment counts must be at least 1",
        ));
    }
    let (a0, a1) = rect.a_range;
    let (b0, b1) = rect.b_range;
    let mut points = Vec::with_capacity(2 * (na + nb) + 1);
    for a in leg(a0, a1, na) {
        points.push(rect.point_at(a, b0));
    }
    for b in leg(b0, b1, nb) {
        points.push(rect.point_at(a1, b));
    }
    for a in leg(a1, a0, na) {
        points.push(rect.point_at(a, b1));
    }
    for b in leg(b1, b0, nb) {
        points.push(rect.point_at(a0, b));
    }
    points.push(rect.point_at(a0, b0));
    LoopPath::new(points)
}

/// Trapezoidal line integral of the connection around a closed loop:
/// `gamma = -contour_integral(beta . dlambda)`.
///
/// The reference state must not vary with the parameters (the caller's
/// responsibility; the connection is only a connection then).
pub fn geometric_phase_line(
    family: &UnitaryFamily,
    rho: &ReferenceState,
    path: &LoopPath,
) -> Result<PhaseResult, CoreError> {
    let pts = path.points();
    let n = pts.len();
    let mut betas: Vec<Vec<f64>> = Vec::with_capacity(n);
    for p in &pts[..n - 1] {
        betas.push(berry_connection(family, rho, p)?);
    }
    // closed loop: the endpoint's connection equals the start's
    betas.push(betas[0].clone());

    let mut acc = 0.0f64;
    for i in 0..n - 1 {
        let (p0, p1) = (&pts[i], &pts[i + 1]);
        for axis in 0..p0.dim() {
            let dx = p1.coords[axis] - p0.coords[axis];
            if dx != 0.0 {
                acc += 0.5 * (betas[i][axis] + betas[i + 1][axis]) * dx;
            }
        }
    }
    Ok(PhaseResult::from_raw(-acc))
}

/// Midpoint-rule surface integral of the curvature 2-form over a
/// coordinate rectangle: `gamma = -surface_integral(sigma)`.
///
/// The 2-form evaluated on the `(a, b)` coordinate plane is `2 Im Q_ab`
/// (wedge antisymmetrization doubles the component), so that this integral
/// matches [`geometric_phase_line`] over [`rectangle_loop`] within the
/// quadrature error.
pub fn geometric_phase_surface(
    family: &UnitaryFamily,
    rho: &ReferenceState,
    rect: &SurfaceRect,
) -> Result<PhaseResult, CoreError> {
    rect.validate()?;
    let (a0, a1) = rect.a_range;
    let (b0, b1) = rect.b_range;
    let da = (a1 - a0) / rect.na as f64;
    let db = (b1 - b0) / rect.nb as f64;
    if da == 0.0 || db == 0.0 {
        return Ok(PhaseResult::from_raw(0.0));
    }
    let mut acc = 0.0f64;
    for i in 0..rect.na {
        let a = a0 + (i as f64 + 0.5) * da;
        for j in 0..rect.nb {
            let b = b0 + (j as f64 + 0.5) * db;
            let p = rect.point_at(a, b);
            let q_ab = oqgt_entry(family, rho, &p, rect.axis_a, rect.axis_b)?;
            acc += 2.0 * q_ab.im * da * db;
        }
    }
    Ok(PhaseResult::from_raw(-acc))
}
