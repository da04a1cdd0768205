//! Sector geometry: side frames, signed side coordinates and stretched
//! variables.
//!
//! The sector S has its vertex at the origin, the side Γ along the positive
//! x1-axis and the side Γ⁻ at opening angle omega, 0 < omega < pi. Each side
//! carries an orthonormal frame (e_s, e_r) with e_s along the side and e_r
//! pointing into S, so every point decomposes as
//!
//! ```text
//! x = s·e_s + r·e_r = s⁻·e_s⁻ + r⁻·e_r⁻ ,
//! ```
//!
//! with r, r⁻ >= 0 exactly for x in S̄. For a diffusion parameter eps the
//! stretched variables are xi = r/eps, sigma = s/eps (same with minus) and
//! eta = x/eps, tied together by eta = xi·e_r + sigma·e_s = xi⁻·e_r⁻ + sigma⁻·e_s⁻.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("opening angle must lie in (0, pi), got {0}")]
    InvalidOpeningAngle(f64),
    #[error("opening angle {0} outside the validated range [pi/12, 11pi/12]")]
    UnvalidatedOpeningAngle(f64),
    #[error("eps must be positive, got {0}")]
    NonPositiveEps(f64),
}

/// Plane vector / point.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

pub type Point = Vec2;

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn scale(self, t: f64) -> Vec2 {
        Vec2::new(t * self.x, t * self.y)
    }
}

impl std::ops::Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl std::ops::Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl std::ops::Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// Which side of the sector a quantity refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        }
    }
}

/// Signed coordinates of a point relative to one side: arclength along the
/// side from the vertex and perpendicular distance, positive inside S.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SideCoords {
    pub s: f64,
    pub r: f64,
}

/// All five stretched variables of a point for a given eps.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StretchedCoords {
    pub xi: f64,
    pub sigma: f64,
    pub xi_minus: f64,
    pub sigma_minus: f64,
    pub eta: Point,
}

/// The convex sector with its two side frames. Immutable after construction.
#[derive(Clone, Copy, Debug)]
pub struct SectorGeometry {
    omega: f64,
    e_s: Vec2,
    e_r: Vec2,
    e_s_minus: Vec2,
    e_r_minus: Vec2,
}

impl SectorGeometry {
    /// Sector with opening angle `omega` (radians), vertex at the origin and
    /// Γ along the positive x1-axis. Requires 0 < omega < pi (convexity).
    pub fn new(omega: f64) -> Result<Self, GeometryError> {
        if !(omega > 0.0 && omega < std::f64::consts::PI) {
            return Err(GeometryError::InvalidOpeningAngle(omega));
        }
        let (sin_w, cos_w) = omega.sin_cos();
        Ok(SectorGeometry {
            omega,
            e_s: Vec2::new(1.0, 0.0),
            e_r: Vec2::new(0.0, 1.0),
            e_s_minus: Vec2::new(cos_w, sin_w),
            // perpendicular to Γ⁻ pointing into S
            e_r_minus: Vec2::new(sin_w, -cos_w),
        })
    }

    /// Like [`SectorGeometry::new`] but restricted to the validated opening
    /// range [pi/12, 11pi/12]; outside it the mapped corner stencil is too
    /// ill-conditioned for the default grids.
    pub fn validated(omega: f64) -> Result<Self, GeometryError> {
        let lo = std::f64::consts::PI / 12.0;
        let hi = 11.0 * std::f64::consts::PI / 12.0;
        if !(lo..=hi).contains(&omega) {
            return Err(GeometryError::UnvalidatedOpeningAngle(omega));
        }
        Self::new(omega)
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn tangent(&self, side: Side) -> Vec2 {
        match side {
            Side::Plus => self.e_s,
            Side::Minus => self.e_s_minus,
        }
    }

    pub fn normal(&self, side: Side) -> Vec2 {
        match side {
            Side::Plus => self.e_r,
            Side::Minus => self.e_r_minus,
        }
    }

    /// (s, r) of `x` relative to the requested side. Defined on the whole
    /// plane; r >= 0 iff x lies on the S-side of that side's line.
    pub fn side_coords(&self, x: Point, side: Side) -> SideCoords {
        SideCoords {
            s: x.dot(self.tangent(side)),
            r: x.dot(self.normal(side)),
        }
    }

    /// Point with given side coordinates: x = s·e_s + r·e_r.
    pub fn point_from_side(&self, side: Side, s: f64, r: f64) -> Point {
        self.tangent(side).scale(s) + self.normal(side).scale(r)
    }

    /// Foot point on the side at arclength s.
    pub fn boundary_point(&self, side: Side, s: f64) -> Point {
        self.tangent(side).scale(s)
    }

    /// True if x lies in the closed sector.
    pub fn contains(&self, x: Point) -> bool {
        x.dot(self.e_r) >= 0.0 && x.dot(self.e_r_minus) >= 0.0
    }

    /// All stretched variables of x for the given eps > 0.
    pub fn stretch(&self, x: Point, eps: f64) -> Result<StretchedCoords, GeometryError> {
        if !(eps > 0.0) {
            return Err(GeometryError::NonPositiveEps(eps));
        }
        let eta = x.scale(1.0 / eps);
        Ok(self.eta_split(eta))
    }

    /// Decomposition of a stretched point eta into (xi, sigma, xi⁻, sigma⁻).
    pub fn eta_split(&self, eta: Point) -> StretchedCoords {
        StretchedCoords {
            xi: eta.dot(self.e_r),
            sigma: eta.dot(self.e_s),
            xi_minus: eta.dot(self.e_r_minus),
            sigma_minus: eta.dot(self.e_s_minus),
            eta,
        }
    }

    /// Coefficients of eta in the oblique side-direction basis:
    /// eta = alpha·e_s + beta·e_s⁻ with alpha, beta >= 0 exactly on S̄.
    pub fn oblique_coords(&self, eta: Point) -> (f64, f64) {
        let s = self.omega.sin();
        // invert [e_s  e_s⁻] using cross products; det = sin(omega)
        let alpha = (eta.x * self.e_s_minus.y - eta.y * self.e_s_minus.x) / s;
        let beta = (eta.y * self.e_s.x - eta.x * self.e_s.y) / s;
        (alpha, beta)
    }

    /// Inverse of [`SectorGeometry::oblique_coords`].
    pub fn from_oblique(&self, alpha: f64, beta: f64) -> Point {
        self.e_s.scale(alpha) + self.e_s_minus.scale(beta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn right_angle_side_coords() {
        let g = SectorGeometry::new(std::f64::consts::FRAC_PI_2).unwrap();
        let x = Vec2::new(2.0, 3.0);
        let p = g.side_coords(x, Side::Plus);
        assert_eq!((p.s, p.r), (2.0, 3.0));
        let m = g.side_coords(x, Side::Minus);
        assert_eq!((m.s, m.r), (3.0, 2.0));
    }

    #[test]
    fn point_on_minus_side() {
        let g = SectorGeometry::new(std::f64::consts::FRAC_PI_3).unwrap();
        let x = g.boundary_point(Side::Minus, 1.0);
        let m = g.side_coords(x, Side::Minus);
        assert_close(m.s, 1.0, 1e-15);
        assert_close(m.r, 0.0, 1e-15);
    }

    #[test]
    fn stretch_right_angle() {
        let g = SectorGeometry::new(std::f64::consts::FRAC_PI_2).unwrap();
        let c = g.stretch(Vec2::new(0.2, 0.1), 0.1).unwrap();
        assert_close(c.xi, 1.0, 1e-13);
        assert_close(c.sigma, 2.0, 1e-13);
        assert_close(c.xi_minus, 2.0, 1e-13);
        assert_close(c.sigma_minus, 1.0, 1e-13);
        assert_close(c.eta.x, 2.0, 1e-13);
        assert_close(c.eta.y, 1.0, 1e-13);
    }

    #[test]
    fn stretch_vertex_is_zero() {
        let g = SectorGeometry::new(1.0).unwrap();
        let c = g.stretch(Vec2::ZERO, 0.37).unwrap();
        assert_eq!(c.xi, 0.0);
        assert_eq!(c.sigma, 0.0);
        assert_eq!(c.xi_minus, 0.0);
        assert_eq!(c.sigma_minus, 0.0);
    }

    #[test]
    fn rejects_bad_eps_and_omega() {
        let g = SectorGeometry::new(1.0).unwrap();
        assert!(g.stretch(Vec2::new(1.0, 1.0), 0.0).is_err());
        assert!(g.stretch(Vec2::new(1.0, 1.0), -1.0).is_err());
        assert!(SectorGeometry::new(0.0).is_err());
        assert!(SectorGeometry::new(std::f64::consts::PI).is_err());
        assert!(SectorGeometry::validated(0.1).is_err());
        assert!(SectorGeometry::validated(3.0).is_err());
    }

    /// On Γ the minus-side stretched variables satisfy sigma⁻ = cot(omega)·xi⁻.
    #[test]
    fn cotangent_relation_on_plus_side() {
        let g = SectorGeometry::new(std::f64::consts::FRAC_PI_3).unwrap();
        for s in [0.1, 0.5, 1.0, 2.5] {
            let x = g.boundary_point(Side::Plus, s);
            let c = g.stretch(x, 0.05).unwrap();
            let cot = 1.0 / std::f64::consts::FRAC_PI_3.tan();
            assert_close(c.sigma_minus, cot * c.xi_minus, 1e-14 * (1.0 + c.xi_minus.abs()));
        }
    }

    /// Both decompositions of eta reproduce eta itself, 1e4 seeded samples.
    #[test]
    fn eta_decompositions_agree() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..10_000 {
            let omega = rng.gen_range(0.3..2.8);
            let g = SectorGeometry::new(omega).unwrap();
            let x = Vec2::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let eps = rng.gen_range(1e-3..1.0);
            let c = g.stretch(x, eps).unwrap();
            let a = g.normal(Side::Plus).scale(c.xi) + g.tangent(Side::Plus).scale(c.sigma);
            let b = g.normal(Side::Minus).scale(c.xi_minus)
                + g.tangent(Side::Minus).scale(c.sigma_minus);
            let scale = 1.0 + c.eta.norm();
            assert!((a - c.eta).norm() <= 1e-12 * scale);
            assert!((b - c.eta).norm() <= 1e-12 * scale);
        }
    }

    proptest! {
        #[test]
        fn side_coords_roundtrip(omega in 0.3f64..2.8, s in -5.0f64..5.0, r in -5.0f64..5.0,
                                 minus in proptest::bool::ANY) {
            let g = SectorGeometry::new(omega).unwrap();
            let side = if minus { Side::Minus } else { Side::Plus };
            let x = g.point_from_side(side, s, r);
            let c = g.side_coords(x, side);
            prop_assert!((c.s - s).abs() <= 1e-12 * (1.0 + s.abs()));
            prop_assert!((c.r - r).abs() <= 1e-12 * (1.0 + r.abs()));
        }

        #[test]
        fn side_coords_linear(omega in 0.3f64..2.8,
                              ax in -2.0f64..2.0, ay in -2.0f64..2.0,
                              bx in -2.0f64..2.0, by in -2.0f64..2.0,
                              la in -3.0f64..3.0, lb in -3.0f64..3.0) {
            let g = SectorGeometry::new(omega).unwrap();
            let a = Vec2::new(ax, ay);
            let b = Vec2::new(bx, by);
            let combo = a.scale(la) + b.scale(lb);
            for side in [Side::Plus, Side::Minus] {
                let ca = g.side_coords(a, side);
                let cb = g.side_coords(b, side);
                let cc = g.side_coords(combo, side);
                prop_assert!((cc.s - (la * ca.s + lb * cb.s)).abs() <= 1e-10);
                prop_assert!((cc.r - (la * ca.r + lb * cb.r)).abs() <= 1e-10);
            }
        }

        #[test]
        fn oblique_roundtrip(omega in 0.3f64..2.8, a in 0.0f64..5.0, b in 0.0f64..5.0) {
            let g = SectorGeometry::new(omega).unwrap();
            let eta = g.from_oblique(a, b);
            let (aa, bb) = g.oblique_coords(eta);
            prop_assert!((aa - a).abs() <= 1e-10 * (1.0 + a));
            prop_assert!((bb - b).abs() <= 1e-10 * (1.0 + b));
            prop_assert!(g.contains(eta) || a.min(b) < 1e-12);
        }
    }
}
