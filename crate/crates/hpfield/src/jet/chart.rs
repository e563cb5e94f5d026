use crate::error::{Error, Result};

/// Names and index layout for one first-order chart with momenta.
///
/// A chart fixes `base_dim` independent variables `x^mu`, `fiber_dim` fields
/// `y^A`, the first-derivative coordinates `v^A_mu`, one scalar momentum `p`
/// conjugate to the volume, and the polymomenta `p_A^mu`. The flat coordinate
/// order is
///
/// ```text
/// x^0..x^{B-1} | y^0..y^{N-1} | v^A_mu (A-major) | p | p_A^mu (A-major)
/// ```
///
/// and every exterior-algebra object built on the chart uses these indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartSpec {
    base_names: Vec<String>,
    fiber_names: Vec<String>,
}

impl ChartSpec {
    pub fn new<S: Into<String>>(
        base_names: impl IntoIterator<Item = S>,
        fiber_names: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let base_names: Vec<String> = base_names.into_iter().map(Into::into).collect();
        let fiber_names: Vec<String> = fiber_names.into_iter().map(Into::into).collect();
        if base_names.is_empty() || fiber_names.is_empty() {
            return Err(Error::Invalid(
                "chart needs at least one base and one fiber coordinate".into(),
            ));
        }
        Ok(ChartSpec {
            base_names,
            fiber_names,
        })
    }

    /// Number of independent variables (n+1 for an n-spatial theory).
    pub fn base_dim(&self) -> usize {
        self.base_names.len()
    }

    /// Number of field components.
    pub fn fiber_dim(&self) -> usize {
        self.fiber_names.len()
    }

    /// n = base_dim - 1, the exponent that grades the theory.
    pub fn horizontal_degree(&self) -> usize {
        self.base_dim() - 1
    }

    /// Total dimension of the momentum-extended chart.
    pub fn pontryagin_dim(&self) -> usize {
        let b = self.base_dim();
        let f = self.fiber_dim();
        b + f + f * b + 1 + f * b
    }

    pub fn base_names(&self) -> &[String] {
        &self.base_names
    }

    pub fn fiber_names(&self) -> &[String] {
        &self.fiber_names
    }

    pub fn idx_x(&self, mu: usize) -> usize {
        debug_assert!(mu < self.base_dim());
        mu
    }

    pub fn idx_y(&self, a: usize) -> usize {
        debug_assert!(a < self.fiber_dim());
        self.base_dim() + a
    }

    pub fn idx_v(&self, a: usize, mu: usize) -> usize {
        debug_assert!(a < self.fiber_dim() && mu < self.base_dim());
        self.base_dim() + self.fiber_dim() + a * self.base_dim() + mu
    }

    pub fn idx_p(&self) -> usize {
        let b = self.base_dim();
        let f = self.fiber_dim();
        b + f + f * b
    }

    pub fn idx_pmom(&self, a: usize, mu: usize) -> usize {
        debug_assert!(a < self.fiber_dim() && mu < self.base_dim());
        self.idx_p() + 1 + a * self.base_dim() + mu
    }

    /// Human-readable name of one flat coordinate, for dumps and reports.
    pub fn coordinate_name(&self, index: usize) -> String {
        let b = self.base_dim();
        let f = self.fiber_dim();
        if index < b {
            return self.base_names[index].clone();
        }
        let index = index - b;
        if index < f {
            return self.fiber_names[index].clone();
        }
        let index = index - f;
        if index < f * b {
            let (a, mu) = (index / b, index % b);
            return format!("v[{}]_{}", self.fiber_names[a], self.base_names[mu]);
        }
        let index = index - f * b;
        if index == 0 {
            return "p".to_string();
        }
        let index = index - 1;
        let (a, mu) = (index / b, index % b);
        format!("p[{}]^{}", self.fiber_names[a], self.base_names[mu])
    }
}
