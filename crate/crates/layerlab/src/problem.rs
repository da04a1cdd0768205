//! Problem data: the semilinear reaction term b(x,u) with its derivatives,
//! the reduced solution u0, the boundary data g along each side, and the
//! stability constant gamma. From these the layer nonlinearities
//!
//! ```text
//! B(x,t)  = b(x, u0(x) + t),          B(x,0) = 0,
//! B̃(x,t;p) = B(x,t) - p·t,
//! ```
//!
//! are derived; B̃ drives every shifted (super-/sub-solution) construction.
//! The module also ships the three built-in model problems and the numeric
//! validation of the structural assumptions:
//!
//! * A1 (stability):  b_u(x, u0(x)) > gamma² > 0,
//! * A2 (side layers): ∫_{u0(x)}^{v} b(x,s) ds > 0 for v between u0 and g,
//! * A3 (corner):      b(O, g(O)) > 0 (the A4-simplified form),
//! * A4 (ordering):    u0 < g on the boundary.

use crate::geometry::{Point, SectorGeometry, Side, Vec2};
use crate::quad::adaptive_simpson;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("unknown fixture `{0}` (available: MP-LIN, MP-CUBIC, MP-VAR)")]
    UnknownFixture(String),
}

pub type ScalarField = Arc<dyn Fn(Point) -> f64 + Send + Sync>;
pub type VectorField = Arc<dyn Fn(Point) -> Vec2 + Send + Sync>;
pub type ReactionFn = Arc<dyn Fn(Point, f64) -> f64 + Send + Sync>;
pub type ReactionGrad = Arc<dyn Fn(Point, f64) -> Vec2 + Send + Sync>;
pub type BoundaryFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Boundary data along one side as a function of arclength, with derivative.
#[derive(Clone)]
pub struct SideData {
    pub value: BoundaryFn,
    pub deriv: BoundaryFn,
}

/// The full problem data. All callables must be pure; the struct is
/// immutable and cheap to clone (everything is behind `Arc`). The diffusion
/// parameter eps is deliberately not part of the problem: it is chosen per
/// run on the expansion side.
#[derive(Clone)]
pub struct SemilinearProblem {
    pub name: String,
    pub b: ReactionFn,
    pub b_u: ReactionFn,
    pub b_uu: ReactionFn,
    /// Gradient of b in x at fixed u.
    pub grad_x_b: ReactionGrad,
    pub u0: ScalarField,
    pub grad_u0: VectorField,
    /// Laplacian of u0; used by the analytic residual assembly.
    pub lap_u0: ScalarField,
    pub g: SideData,
    pub g_minus: SideData,
    pub gamma: f64,
}

impl SemilinearProblem {
    pub fn side_data(&self, side: Side) -> &SideData {
        match side {
            Side::Plus => &self.g,
            Side::Minus => &self.g_minus,
        }
    }

    /// Layer amplitude A(s) = g(x̄) - u0(x̄) at arclength s of the side.
    pub fn amplitude(&self, geom: &SectorGeometry, side: Side, s: f64) -> f64 {
        let xb = geom.boundary_point(side, s);
        (self.side_data(side).value)(s) - (self.u0)(xb)
    }

    /// d/ds [g - u0](x̄(s)).
    pub fn amplitude_deriv(&self, geom: &SectorGeometry, side: Side, s: f64) -> f64 {
        let xb = geom.boundary_point(side, s);
        (self.side_data(side).deriv)(s) - (self.grad_u0)(xb).dot(geom.tangent(side))
    }

    /// d²/ds² [g - u0](x̄(s)), by central differencing of the exact first
    /// derivative data.
    pub fn amplitude_deriv2(&self, geom: &SectorGeometry, side: Side, s: f64) -> f64 {
        let d = 1e-4;
        (self.amplitude_deriv(geom, side, s + d) - self.amplitude_deriv(geom, side, s - d))
            / (2.0 * d)
    }
}

/// The shifted layer nonlinearity and its derivatives. Constructed once per
/// problem; all methods are pure.
#[derive(Clone)]
pub struct LayerNonlinearity {
    b: ReactionFn,
    b_u: ReactionFn,
    b_uu: ReactionFn,
    grad_x_b: ReactionGrad,
    u0: ScalarField,
    grad_u0: VectorField,
}

impl LayerNonlinearity {
    /// B(x,t) = b(x, u0(x)+t).
    pub fn b(&self, x: Point, t: f64) -> f64 {
        (self.b)(x, (self.u0)(x) + t)
    }

    /// B_t(x,t) = b_u(x, u0(x)+t).
    pub fn b_t(&self, x: Point, t: f64) -> f64 {
        (self.b_u)(x, (self.u0)(x) + t)
    }

    pub fn b_tt(&self, x: Point, t: f64) -> f64 {
        (self.b_uu)(x, (self.u0)(x) + t)
    }

    /// Gradient of B in x at fixed t: ∇ₓb(x,u0+t) + b_u(x,u0+t)·∇u0(x).
    pub fn grad_x(&self, x: Point, t: f64) -> Vec2 {
        let u = (self.u0)(x) + t;
        let g = (self.grad_x_b)(x, u);
        let gu0 = (self.grad_u0)(x);
        g + gu0.scale((self.b_u)(x, u))
    }

    /// B̃(x,t;p) = B(x,t) - p·t.
    pub fn tilde(&self, x: Point, t: f64, p: f64) -> f64 {
        self.b(x, t) - p * t
    }

    pub fn tilde_t(&self, x: Point, t: f64, p: f64) -> f64 {
        self.b_t(x, t) - p
    }
}

/// Derive the layer nonlinearity of a problem.
pub fn make_layer_nonlinearity(prob: &SemilinearProblem) -> LayerNonlinearity {
    LayerNonlinearity {
        b: prob.b.clone(),
        b_u: prob.b_u.clone(),
        b_uu: prob.b_uu.clone(),
        grad_x_b: prob.grad_x_b.clone(),
        u0: prob.u0.clone(),
        grad_u0: prob.grad_u0.clone(),
    }
}

/// How the assumption checks sample the (bounded) region.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SamplingPlan {
    /// Radius of the sampled disk sector around the vertex.
    pub radius: f64,
    /// Arclength samples per side.
    pub n_boundary: usize,
    /// Interior samples for A1 and the reduced-equation residual.
    pub n_interior: usize,
    /// Interior v-grid points per boundary sample for the A2 quadrature.
    pub n_v: usize,
    pub seed: u64,
}

impl Default for SamplingPlan {
    fn default() -> Self {
        SamplingPlan { radius: 3.0, n_boundary: 48, n_interior: 600, n_v: 64, seed: 7 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AssumptionReport {
    /// min over samples of b_u(x, u0(x)) - gamma².
    pub a1_margin: f64,
    /// min over boundary samples and v-grid of ∫_{u0}^{v} b(x,s) ds.
    pub a2_min_integral: f64,
    /// True when g == u0 at every boundary sample, so A2 imposes nothing.
    pub a2_vacuous: bool,
    /// b(O, g(O)).
    pub a3_value: f64,
    /// min over boundary samples of g - u0.
    pub a4_margin: f64,
    /// max |b(x, u0(x))| over samples.
    pub reduced_residual_max: f64,
    pub a1_passed: bool,
    pub a2_passed: bool,
    pub a3_passed: bool,
    pub a4_passed: bool,
    pub reduced_passed: bool,
    pub region_note: String,
}

impl AssumptionReport {
    pub fn all_passed(&self) -> bool {
        self.a1_passed && self.a2_passed && self.a3_passed && self.a4_passed && self.reduced_passed
    }
}

/// Numerically validate A1-A4 and the reduced equation on a bounded region.
/// Failures are reported, not raised, so defective data can be studied.
pub fn validate_assumptions(
    prob: &SemilinearProblem,
    geom: &SectorGeometry,
    plan: &SamplingPlan,
) -> AssumptionReport {
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    let gamma2 = prob.gamma * prob.gamma;

    let mut points: Vec<Point> = Vec::new();
    for side in [Side::Plus, Side::Minus] {
        for k in 0..plan.n_boundary {
            let s = plan.radius * (k as f64 + 0.5) / plan.n_boundary as f64;
            points.push(geom.boundary_point(side, s));
        }
    }
    points.push(Point::ZERO);
    while points.len() < 2 * plan.n_boundary + 1 + plan.n_interior {
        let x = Vec2::new(
            rng.gen_range(-plan.radius..plan.radius),
            rng.gen_range(-plan.radius..plan.radius),
        );
        if geom.contains(x) && x.norm() <= plan.radius {
            points.push(x);
        }
    }

    let mut a1_margin = f64::INFINITY;
    let mut reduced_max = 0.0f64;
    for &x in &points {
        let u0x = (prob.u0)(x);
        a1_margin = a1_margin.min((prob.b_u)(x, u0x) - gamma2);
        reduced_max = reduced_max.max((prob.b)(x, u0x).abs());
    }

    // A2: quadrature of ∫_{u0}^{v} b along a v-grid spanning (u0, g]'
    let mut a2_min = f64::INFINITY;
    let mut a4_margin = f64::INFINITY;
    for side in [Side::Plus, Side::Minus] {
        for k in 0..=plan.n_boundary {
            let s = plan.radius * k as f64 / plan.n_boundary as f64;
            let xb = geom.boundary_point(side, s);
            let u0x = (prob.u0)(xb);
            let gx = (prob.side_data(side).value)(s);
            a4_margin = a4_margin.min(gx - u0x);
            if gx == u0x {
                continue; // (a,b]' is empty, A2 imposes nothing here
            }
            for j in 1..=plan.n_v {
                let v = u0x + (gx - u0x) * j as f64 / plan.n_v as f64;
                let integral = adaptive_simpson(&|t| (prob.b)(xb, t), u0x, v, 1e-12);
                a2_min = a2_min.min(integral);
            }
        }
    }
    let a2_vacuous = a2_min == f64::INFINITY;
    if a2_vacuous {
        a2_min = 0.0; // g == u0 everywhere sampled: nothing to check
    }

    let a3_value = (prob.b)(Point::ZERO, (prob.g.value)(0.0));

    AssumptionReport {
        a1_margin,
        a2_min_integral: a2_min,
        a2_vacuous,
        a3_value,
        a4_margin,
        reduced_residual_max: reduced_max,
        a1_passed: a1_margin > 0.0,
        a2_passed: a2_vacuous || a2_min > 0.0,
        a3_passed: a3_value > 0.0,
        a4_passed: a4_margin > 0.0,
        reduced_passed: reduced_max <= 1e-10,
        region_note: format!("checked on bounded region |x| <= {}", plan.radius),
    }
}

/// A named problem together with its default opening angle.
#[derive(Clone)]
pub struct Fixture {
    pub problem: SemilinearProblem,
    pub omega: f64,
}

/// The three built-in model problems.
///
/// * `MP-LIN`:   b = u, u0 = 0, g = 1; every layer object is analytic.
/// * `MP-CUBIC`: b = u + u³, u0 = 0, g = 1; closed-form side profile and a
///   nonzero second u-derivative, so the theta rule is exercised.
/// * `MP-VAR`:   x-dependent coefficient and s-dependent boundary data, so
///   v1, the s-sensitivities and every corner right-hand side are nonzero.
pub fn builtin_fixture(name: &str) -> Result<Fixture, ProblemError> {
    builtin_fixture_with_omega(name, None)
}

/// Fixture with an overridden opening angle (the boundary data of MP-VAR
/// depends on where Γ⁻ lies, so the fixture must be rebuilt for the angle).
pub fn builtin_fixture_with_omega(name: &str, omega: Option<f64>) -> Result<Fixture, ProblemError> {
    let constant = |v: f64| -> BoundaryFn { Arc::new(move |_| v) };
    match name {
        "MP-LIN" => {
            let omega = omega.unwrap_or(std::f64::consts::FRAC_PI_2);
            Ok(Fixture {
                problem: SemilinearProblem {
                    name: "MP-LIN".into(),
                    b: Arc::new(|_, u| u),
                    b_u: Arc::new(|_, _| 1.0),
                    b_uu: Arc::new(|_, _| 0.0),
                    grad_x_b: Arc::new(|_, _| Vec2::ZERO),
                    u0: Arc::new(|_| 0.0),
                    grad_u0: Arc::new(|_| Vec2::ZERO),
                    lap_u0: Arc::new(|_| 0.0),
                    g: SideData { value: constant(1.0), deriv: constant(0.0) },
                    g_minus: SideData { value: constant(1.0), deriv: constant(0.0) },
                    gamma: 0.9,
                },
                omega,
            })
        }
        "MP-CUBIC" => {
            let omega = omega.unwrap_or(std::f64::consts::FRAC_PI_2);
            Ok(Fixture {
                problem: SemilinearProblem {
                    name: "MP-CUBIC".into(),
                    b: Arc::new(|_, u| u + u * u * u),
                    b_u: Arc::new(|_, u| 1.0 + 3.0 * u * u),
                    b_uu: Arc::new(|_, u| 6.0 * u),
                    grad_x_b: Arc::new(|_, _| Vec2::ZERO),
                    u0: Arc::new(|_| 0.0),
                    grad_u0: Arc::new(|_| Vec2::ZERO),
                    lap_u0: Arc::new(|_| 0.0),
                    g: SideData { value: constant(1.0), deriv: constant(0.0) },
                    g_minus: SideData { value: constant(1.0), deriv: constant(0.0) },
                    gamma: 0.9,
                },
                omega,
            })
        }
        "MP-VAR" => {
            let omega = omega.unwrap_or(std::f64::consts::FRAC_PI_3);
            // coefficient with non-radial level sets so that e_r·∇c != 0 on
            // both sides; c in (1, 2]
            let c = |x: Point| 1.0 + 1.0 / (1.0 + (x.x - x.y) * (x.x - x.y));
            let grad_c = |x: Point| {
                let d = x.x - x.y;
                let f = -2.0 * d / ((1.0 + d * d) * (1.0 + d * d));
                Vec2::new(f, -f)
            };
            let u0 = |x: Point| x.x.tanh();
            let grad_u0 = |x: Point| {
                let t = x.x.tanh();
                Vec2::new(1.0 - t * t, 0.0)
            };
            let cos_w = omega.cos();
            let g_plus = move |s: f64| s.tanh() + 1.0 + 0.3 * s.tanh();
            let dg_plus = move |s: f64| {
                let sech2 = 1.0 - s.tanh() * s.tanh();
                1.3 * sech2
            };
            let g_minus = move |s: f64| (s * cos_w).tanh() + 1.0 + 0.3 * s.tanh();
            let dg_minus = move |s: f64| {
                let t1 = (s * cos_w).tanh();
                let t2 = s.tanh();
                cos_w * (1.0 - t1 * t1) + 0.3 * (1.0 - t2 * t2)
            };
            Ok(Fixture {
                problem: SemilinearProblem {
                    name: "MP-VAR".into(),
                    b: Arc::new(move |x, u| {
                        let w = u - u0(x);
                        c(x) * w + w * w * w
                    }),
                    b_u: Arc::new(move |x, u| {
                        let w = u - u0(x);
                        c(x) + 3.0 * w * w
                    }),
                    b_uu: Arc::new(move |x, u| 6.0 * (u - u0(x))),
                    grad_x_b: Arc::new(move |x, u| {
                        let w = u - u0(x);
                        grad_c(x).scale(w) + grad_u0(x).scale(-(c(x) + 3.0 * w * w))
                    }),
                    u0: Arc::new(u0),
                    grad_u0: Arc::new(grad_u0),
                    lap_u0: Arc::new(|x| {
                        let t = x.x.tanh();
                        -2.0 * t * (1.0 - t * t)
                    }),
                    g: SideData { value: Arc::new(g_plus), deriv: Arc::new(dg_plus) },
                    g_minus: SideData { value: Arc::new(g_minus), deriv: Arc::new(dg_minus) },
                    gamma: 0.9,
                },
                omega,
            })
        }
        other => Err(ProblemError::UnknownFixture(other.into())),
    }
}

pub const FIXTURE_NAMES: [&str; 3] = ["MP-LIN", "MP-CUBIC", "MP-VAR"];
