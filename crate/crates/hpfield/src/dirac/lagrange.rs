use rand::RngExt;

use crate::dirac::contract::{
    contract_frame_closed, contract_frame_expanded, frame_contraction_sign, FrameLift,
};
use crate::error::Result;
use crate::exterior::{interior_right_decomposable, ExteriorElement};
use crate::jet::ops::{d_generalized_energy, legendre_transform};
use crate::jet::{JetSlots, Lagrangian, PontryaginPoint};

/// Which implementation computes the left contraction of the canonical form.
/// Both must agree; keeping the slow expansion path callable is what lets the
/// fast path be cross-checked forever.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContractionPath {
    Closed,
    Expanded,
}

/// The field-equation residual one-form at a point:
/// `X -| omega - sign * dE`, where `sign` matches the contraction
/// convention. The residual vanishes exactly when the lift encodes a
/// solution: field slots carry the balance law, momentum slots the jet
/// condition, velocity slots the momentum map, and base slots the energy
/// balance.
pub fn lagrange_dirac_residual(
    model: &dyn Lagrangian,
    pt: &PontryaginPoint,
    lift: &FrameLift,
    path: ContractionPath,
) -> Result<ExteriorElement> {
    let chart = model.chart();
    let contraction = match path {
        ContractionPath::Closed => contract_frame_closed(&chart, lift)?,
        ContractionPath::Expanded => contract_frame_expanded(&chart, lift)?,
    };
    let de = d_generalized_energy(model, pt);
    contraction.sub(&de.scale(frame_contraction_sign(&chart)))
}

/// Sup norm of [`lagrange_dirac_residual`].
pub fn lagrange_dirac_residual_norm(
    model: &dyn Lagrangian,
    pt: &PontryaginPoint,
    lift: &FrameLift,
    path: ContractionPath,
) -> Result<f64> {
    Ok(lagrange_dirac_residual(model, pt, lift, path)?.sup_norm())
}

/// Constructs a point on the momentum-map image together with a lift whose
/// field-equation residual vanishes identically: field coefficients equal the
/// velocities, the momentum-coefficient trace matches the field derivative of
/// the density, and the covelocity coefficients absorb the rest. The
/// off-trace momentum coefficients are free and drawn at random.
pub fn exact_lift(
    model: &dyn Lagrangian,
    x: &[f64],
    y: &[f64],
    v: &JetSlots,
    rng: &mut impl RngExt,
) -> Result<(PontryaginPoint, FrameLift)> {
    let chart = model.chart();
    let b = chart.base_dim();
    let f = chart.fiber_dim();
    let (pmom, p) = legendre_transform(model, x, y, v);
    let pt = PontryaginPoint {
        x: x.to_vec(),
        y: y.to_vec(),
        v: v.to_vec(),
        p,
        pmom,
    };
    let lx = model.dl_dx(x, y, &pt.v);
    let ly = model.dl_dy(x, y, &pt.v);

    let mut lift = FrameLift::zeros(&chart);
    lift.c_y = pt.v.clone();
    for a in 0..f {
        for nu in 0..b {
            for mu in 0..b {
                lift.c_pmom[a][nu][mu] = rng.random_range(-1.0..=1.0);
            }
        }
        let partial_trace: f64 = (0..b - 1).map(|mu| lift.c_pmom[a][mu][mu]).sum();
        lift.c_pmom[a][b - 1][b - 1] = ly[a] - partial_trace;
    }
    for mu in 0..b {
        let mut c = lx[mu];
        for a in 0..f {
            c += lift.c_y[a][mu] * ly[a];
            for l in 0..b {
                c -= lift.c_y[a][l] * lift.c_pmom[a][l][mu];
            }
        }
        lift.c_p[mu] = c;
    }
    Ok((pt, lift))
}

/// Right contraction of the lifted multivector with the energy differential,
/// `X |- dE`. For any lift with vanishing field-equation residual this is
/// identically zero: each factor already pairs to zero with `dE`, which is
/// the pointwise form of energy conservation.
pub fn energy_contraction(
    model: &dyn Lagrangian,
    pt: &PontryaginPoint,
    lift: &FrameLift,
) -> Result<ExteriorElement> {
    let chart = model.chart();
    let mv = lift.expand(&chart)?;
    let de = d_generalized_energy(model, pt);
    interior_right_decomposable(&mv, &de)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::ChartSpec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    struct Coupled {
        chart: ChartSpec,
    }

    impl Coupled {
        fn new() -> Self {
            Coupled {
                chart: ChartSpec::new(
                    ["t", "x"],
                    ["u", "w"],
                )
                .unwrap(),
            }
        }
    }

    impl Lagrangian for Coupled {
        fn chart(&self) -> &ChartSpec {
            &self.chart
        }

        fn lagrangian(&self, x: &[f64], y: &[f64], v: &JetSlots) -> f64 {
            0.5 * (v[0][0] * v[0][0] - v[0][1] * v[0][1]) + v[1][0] * v[1][1]
                + x[0] * y[0] * y[1]
                - 0.3 * y[1] * y[1]
                + 0.2 * x[1]
        }

        fn dl_dx(&self, _x: &[f64], y: &[f64], _v: &JetSlots) -> Vec<f64> {
            vec![y[0] * y[1], 0.2]
        }

        fn dl_dy(&self, x: &[f64], y: &[f64], _v: &JetSlots) -> Vec<f64> {
            vec![x[0] * y[1], x[0] * y[0] - 0.6 * y[1]]
        }

        fn dl_dv(&self, _x: &[f64], _y: &[f64], v: &JetSlots) -> JetSlots {
            vec![vec![v[0][0], -v[0][1]], vec![v[1][1], v[1][0]]]
        }
    }

    fn sample_jet() -> (Vec<f64>, Vec<f64>, JetSlots) {
        (
            vec![0.4, -0.7],
            vec![0.9, 0.3],
            vec![vec![0.5, -0.2], vec![1.1, 0.6]],
        )
    }

    #[test]
    fn exact_lift_zeroes_the_residual_on_both_paths() {
        let model = Coupled::new();
        let (x, y, v) = sample_jet();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let (pt, lift) = exact_lift(&model, &x, &y, &v, &mut rng).unwrap();
        for path in [ContractionPath::Closed, ContractionPath::Expanded] {
            let res = lagrange_dirac_residual_norm(&model, &pt, &lift, path).unwrap();
            assert!(res < 1e-13, "{path:?} residual {res}");
        }
    }

    #[test]
    fn velocity_slots_detect_momentum_map_violations() {
        let model = Coupled::new();
        let chart = model.chart();
        let (x, y, v) = sample_jet();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let (mut pt, lift) = exact_lift(&model, &x, &y, &v, &mut rng).unwrap();
        pt.pmom[1][0] += 0.25;
        let res = lagrange_dirac_residual(&model, &pt, &lift, ContractionPath::Closed).unwrap();
        let at_v = res.coefficient_at(&[chart.idx_v(1, 0)]).abs();
        assert!((at_v - 0.25).abs() < 1e-13, "velocity slot {at_v}");
        assert!(res.sup_norm() <= 0.25 + 1e-13);
    }

    #[test]
    fn field_slots_detect_balance_violations() {
        let model = Coupled::new();
        let chart = model.chart();
        let (x, y, v) = sample_jet();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let (pt, mut lift) = exact_lift(&model, &x, &y, &v, &mut rng).unwrap();
        lift.c_pmom[0][1][1] += 0.4;
        let res = lagrange_dirac_residual(&model, &pt, &lift, ContractionPath::Closed).unwrap();
        let at_y = res.coefficient_at(&[chart.idx_y(0)]).abs();
        assert!((at_y - 0.4).abs() < 1e-13, "field slot {at_y}");
    }

    #[test]
    fn exact_lift_conserves_energy_pointwise() {
        let model = Coupled::new();
        let (x, y, v) = sample_jet();
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let (pt, lift) = exact_lift(&model, &x, &y, &v, &mut rng).unwrap();
        let contraction = energy_contraction(&model, &pt, &lift).unwrap();
        assert!(contraction.sup_norm() < 1e-13, "{}", contraction.sup_norm());
    }
}
