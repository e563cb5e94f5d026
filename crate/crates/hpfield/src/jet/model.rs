use super::chart::ChartSpec;

/// First-derivative coordinates at one base point, indexed `[field][axis]`.
pub type JetSlots = Vec<Vec<f64>>;

/// One point of the momentum-extended chart.
#[derive(Debug, Clone, PartialEq)]
pub struct PontryaginPoint {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub v: JetSlots,
    pub p: f64,
    pub pmom: JetSlots,
}

impl PontryaginPoint {
    pub fn zeros(chart: &ChartSpec) -> Self {
        let b = chart.base_dim();
        let f = chart.fiber_dim();
        PontryaginPoint {
            x: vec![0.0; b],
            y: vec![0.0; f],
            v: vec![vec![0.0; b]; f],
            p: 0.0,
            pmom: vec![vec![0.0; b]; f],
        }
    }

    /// Flattens the point into the chart's coordinate order.
    pub fn to_coords(&self, chart: &ChartSpec) -> Vec<f64> {
        let mut out = vec![0.0; chart.pontryagin_dim()];
        for (mu, &x) in self.x.iter().enumerate() {
            out[chart.idx_x(mu)] = x;
        }
        for (a, &y) in self.y.iter().enumerate() {
            out[chart.idx_y(a)] = y;
        }
        for (a, row) in self.v.iter().enumerate() {
            for (mu, &v) in row.iter().enumerate() {
                out[chart.idx_v(a, mu)] = v;
            }
        }
        out[chart.idx_p()] = self.p;
        for (a, row) in self.pmom.iter().enumerate() {
            for (mu, &pm) in row.iter().enumerate() {
                out[chart.idx_pmom(a, mu)] = pm;
            }
        }
        out
    }

    pub fn from_coords(chart: &ChartSpec, coords: &[f64]) -> Self {
        let b = chart.base_dim();
        let f = chart.fiber_dim();
        let mut pt = PontryaginPoint::zeros(chart);
        for mu in 0..b {
            pt.x[mu] = coords[chart.idx_x(mu)];
        }
        for a in 0..f {
            pt.y[a] = coords[chart.idx_y(a)];
        }
        for a in 0..f {
            for mu in 0..b {
                pt.v[a][mu] = coords[chart.idx_v(a, mu)];
                pt.pmom[a][mu] = coords[chart.idx_pmom(a, mu)];
            }
        }
        pt.p = coords[chart.idx_p()];
        pt
    }
}

/// Per-face boundary condition for static boundary-value solves. Faces are
/// indexed `2*axis + side` with side 0 the low end of the axis.
#[derive(Debug, Clone, PartialEq)]
pub enum FaceCondition {
    /// Dirichlet: every field component pinned to zero on the face.
    Clamped,
    /// Prescribed boundary load, one value per field component. A zero
    /// vector is a free face.
    Traction(Vec<f64>),
}

/// Boundary data for a solve, one condition per face.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySpec {
    pub faces: Vec<FaceCondition>,
}

impl BoundarySpec {
    pub fn new(faces: Vec<FaceCondition>) -> Self {
        BoundarySpec { faces }
    }

    pub fn face(&self, axis: usize, side: usize) -> &FaceCondition {
        &self.faces[2 * axis + side]
    }

    /// Outward unit normal component along `axis` for the given side.
    pub fn normal_component(side: usize) -> f64 {
        if side == 0 {
            -1.0
        } else {
            1.0
        }
    }
}

/// Affine velocity constraints `A(t,q) v + B(t,q) = 0` for one-dimensional
/// base charts (mechanics).
pub trait AffineConstraint {
    /// Number of constraint rows.
    fn rows(&self) -> usize;

    /// Coefficient matrix `A[row][coordinate]` and offset `B[row]` at (t, q).
    fn coefficients(&self, t: f64, q: &[f64]) -> (Vec<Vec<f64>>, Vec<f64>);
}

/// A first-order Lagrangian density with analytic partial derivatives.
///
/// Derivatives are supplied analytically by every implementation; the
/// finite-difference machinery in this crate only cross-checks them.
pub trait Lagrangian {
    fn chart(&self) -> &ChartSpec;

    fn lagrangian(&self, x: &[f64], y: &[f64], v: &JetSlots) -> f64;

    /// Partial in each base direction at frozen (y, v).
    fn dl_dx(&self, x: &[f64], y: &[f64], v: &JetSlots) -> Vec<f64>;

    /// Partial in each field component.
    fn dl_dy(&self, x: &[f64], y: &[f64], v: &JetSlots) -> Vec<f64>;

    /// Partial in each derivative slot, indexed `[field][axis]`.
    fn dl_dv(&self, x: &[f64], y: &[f64], v: &JetSlots) -> JetSlots;

    /// Affine velocity constraint, when the model has one.
    fn constraint(&self) -> Option<&dyn AffineConstraint> {
        None
    }

    /// Boundary conditions, when the model is a boundary-value problem.
    fn boundary(&self) -> Option<&BoundarySpec> {
        None
    }
}
