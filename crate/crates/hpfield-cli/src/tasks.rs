//! Example-driven subcommands: `solve`, `residual`, and `energy-report`.
//! Each builds a reference or converged section for a bundled example,
//! runs the pointwise diagnostics, prints one line per check, writes the
//! section grids as CSV (solve only), and emits a versioned JSON report.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use hpfield::dirac::ContractionPath;
use hpfield::jet::{FaceCondition, GridMeta, Lagrangian};
use hpfield::solver::{
    energy_report, march_hyperbolic, newton_solve, nonholonomic_solve, residual_grids,
    section_membership, DiscreteSection, MarchSpec, Trajectory,
};
use hpfield::theories::{
    dispersive_wave, make_example, transverse_plane_wave, ExampleModel, ExampleParams,
    PlaneShearConstrained,
};
use hpfield::tol;

use crate::config::{usage, RunConfig};
use crate::report::{self, status, CheckRow};

/// Field examples served by `residual` and `energy-report`; `solve` adds
/// `shear` on top.
const FIELD_IDS: [&str; 7] = [
    "wave",
    "kg",
    "maxwell",
    "maxwell2d",
    "rod",
    "patch",
    "patch-confined",
];

/// `solve elastostatics` reads naturally, so the canonical 1D example
/// answers to that name too.
fn canonical(id: &str) -> &str {
    match id {
        "elastostatics" => "rod",
        other => other,
    }
}

fn integer_wave_number(params: &ExampleParams) -> anyhow::Result<f64> {
    let k = params.wave_number;
    if k < 1.0 || k.fract() != 0.0 {
        return Err(usage(format!(
            "wave_number {k} must be a positive integer to stay periodic on the sampling box"
        )));
    }
    Ok(k)
}

/// Closed-form displacement slopes `u_a = slope_a x` of the static examples.
fn elasto_slopes(id: &str, p: &ExampleParams) -> Vec<f64> {
    match id {
        "rod" => vec![p.traction / (2.0 * p.mu)],
        "patch" => vec![p.traction / (2.0 * p.mu), 0.0],
        "patch-confined" => vec![p.traction / (p.lambda + 2.0 * p.mu), 0.0],
        other => unreachable!("no closed form registered for '{other}'"),
    }
}

/// Sup distance of the stored fields from a closed-form section, over every
/// node of the lattice.
fn sup_error_vs(section: &DiscreteSection, exact: &dyn Fn(&[f64]) -> Vec<f64>) -> f64 {
    let b = section.chart.base_dim();
    let mut idx = vec![0usize; b];
    let mut x = vec![0.0; b];
    let mut worst = 0.0f64;
    for flat in 0..section.node_count() {
        section.p.unflatten(flat, &mut idx);
        for axis in 0..b {
            x[axis] = section.meta.coordinate(axis, idx[axis]);
        }
        let want = exact(&x);
        for (a, w) in want.iter().enumerate() {
            worst = worst.max((section.y[a].get_flat(flat) - w).abs());
        }
    }
    worst
}

/// Worst traction-row value `pmom . n - tau` over every node of every
/// traction face, with the node count for reporting.
fn traction_rows(model: &dyn Lagrangian, section: &DiscreteSection) -> (f64, usize) {
    let Some(boundary) = model.boundary() else {
        return (0.0, 0);
    };
    let b = section.chart.base_dim();
    let f = section.chart.fiber_dim();
    let mut idx = vec![0usize; b];
    let mut worst = 0.0f64;
    let mut nodes = 0;
    for axis in 0..b {
        for side in 0..2 {
            let traction = match boundary.face(axis, side) {
                FaceCondition::Traction(t) => t.clone(),
                FaceCondition::Clamped => continue,
            };
            let normal = if side == 0 { -1.0 } else { 1.0 };
            let wall = if side == 0 {
                0
            } else {
                section.meta.extents[axis] - 1
            };
            for flat in 0..section.node_count() {
                section.p.unflatten(flat, &mut idx);
                if idx[axis] != wall {
                    continue;
                }
                nodes += 1;
                for a in 0..f {
                    let row = section.pmom[a][axis].get_flat(flat) * normal - traction[a];
                    worst = worst.max(row.abs());
                }
            }
        }
    }
    (worst, nodes)
}

/// A reference section with a closed-form origin: sampled exact solutions
/// for the dynamic examples, converged Newton solves for the static ones.
struct Reference {
    model: ExampleModel,
    section: DiscreteSection,
    /// Interior margin excluding boundary-condition rows and one-sided
    /// stencils near non-periodic walls.
    margin: usize,
    grid: Vec<usize>,
    newton_iterations: Option<usize>,
}

fn reference(id: &str, cfg: &RunConfig) -> anyhow::Result<Reference> {
    let params = &cfg.params;
    let model = make_example(id, params).map_err(|e| usage(e.to_string()))?;
    let lag_chart_dims = {
        let chart = model.as_lagrangian().chart();
        (chart.base_dim(), chart.fiber_dim())
    };
    let (b, f) = lag_chart_dims;
    match id {
        "wave" | "kg" => {
            let k = integer_wave_number(params)?;
            let mass = params.mass;
            let grid = cfg.grid_or(&[64, 64], 2)?;
            let (m_t, m_x) = (grid[0], grid[1]);
            // The x axis spans two periods so the two spacings differ and
            // the truncation error is measurable (equal spacings annihilate
            // traveling waves exactly).
            let (meta, periodic, margin) = if id == "wave" {
                (
                    GridMeta {
                        extents: vec![m_t, m_x],
                        spacing: vec![TAU / m_t as f64, 2.0 * TAU / m_x as f64],
                        origin: vec![0.0, 0.0],
                    },
                    vec![true, true],
                    0,
                )
            } else {
                (
                    GridMeta {
                        extents: vec![m_t, m_x],
                        spacing: vec![2.0 / (m_t as f64 - 1.0), TAU / m_x as f64],
                        origin: vec![0.0, 0.0],
                    },
                    vec![false, true],
                    2,
                )
            };
            let massless = id == "wave";
            let exact = move |c: &[f64]| {
                if massless {
                    vec![(k * (c[1] - c[0])).sin()]
                } else {
                    vec![dispersive_wave(mass, k, c[0], c[1])]
                }
            };
            let section =
                DiscreteSection::from_fields(model.as_lagrangian(), meta, periodic, &exact, None)?;
            Ok(Reference {
                model,
                section,
                margin,
                grid,
                newton_iterations: None,
            })
        }
        "maxwell" => {
            let k = integer_wave_number(params)?;
            let grid = cfg.grid_or(&[16, 16, 16], 3)?;
            let meta = GridMeta {
                extents: grid.clone(),
                spacing: vec![
                    TAU / grid[0] as f64,
                    2.0 * TAU / grid[1] as f64,
                    TAU / grid[2] as f64,
                ],
                origin: vec![0.0; 3],
            };
            let exact = move |c: &[f64]| transverse_plane_wave(k, c[0], c[1]);
            let section = DiscreteSection::from_fields(
                model.as_lagrangian(),
                meta,
                vec![true, true, true],
                &exact,
                None,
            )?;
            Ok(Reference {
                model,
                section,
                margin: 0,
                grid,
                newton_iterations: None,
            })
        }
        "maxwell2d" => {
            // 1+1 electromagnetism has no transverse direction, hence no
            // traveling waves; the reference is the uniform field strength
            // A = (0, t), whose lattice residual is pure roundoff.
            let grid = cfg.grid_or(&[33, 32], 2)?;
            let meta = GridMeta {
                extents: grid.clone(),
                spacing: vec![2.0 / (grid[0] as f64 - 1.0), TAU / grid[1] as f64],
                origin: vec![0.0, 0.0],
            };
            let exact = |c: &[f64]| vec![0.0, c[0]];
            let section = DiscreteSection::from_fields(
                model.as_lagrangian(),
                meta,
                vec![false, true],
                &exact,
                None,
            )?;
            Ok(Reference {
                model,
                section,
                margin: 2,
                grid,
                newton_iterations: None,
            })
        }
        "rod" | "patch" | "patch-confined" => {
            let default: &[usize] = if b == 1 { &[17] } else { &[9, 7] };
            let grid = cfg.grid_or(default, b)?;
            let meta = GridMeta {
                extents: grid.clone(),
                spacing: grid.iter().map(|&m| 1.0 / (m as f64 - 1.0)).collect(),
                origin: vec![0.0; b],
            };
            let mut section = DiscreteSection::from_fields(
                model.as_lagrangian(),
                meta,
                vec![false; b],
                &|_| vec![0.0; f],
                None,
            )?;
            let newton = newton_solve(model.as_lagrangian(), &mut section)?;
            Ok(Reference {
                model,
                section,
                margin: 1,
                grid,
                newton_iterations: Some(newton.iterations),
            })
        }
        other => Err(usage(format!(
            "no reference section for '{other}'; field examples are {}",
            FIELD_IDS.join(", ")
        ))),
    }
}

#[derive(Serialize)]
struct TaskBody {
    example: String,
    grid: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dt: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    newton_iterations: Option<usize>,
    checks: Vec<CheckRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    artifacts: Vec<String>,
    status: String,
}

fn announce(row: &CheckRow) {
    println!(
        "{}: max residual {:.3e} over {} samples [{}]",
        row.check, row.max_residual, row.samples, row.status
    );
}

fn finish(
    cfg: &RunConfig,
    file: &str,
    command: &str,
    mut body: TaskBody,
    checks: Vec<CheckRow>,
) -> anyhow::Result<bool> {
    let pass = checks.iter().all(|c| c.status == "pass");
    for row in &checks {
        announce(row);
    }
    body.checks = checks;
    body.status = status(pass).to_string();
    let path = report::write(&cfg.out, file, command, cfg.seed, body)?;
    println!("report: {}", path.display());
    Ok(pass)
}

fn empty_body(example: &str, grid: Vec<usize>) -> TaskBody {
    TaskBody {
        example: example.to_string(),
        grid,
        steps: None,
        dt: None,
        newton_iterations: None,
        checks: Vec::new(),
        artifacts: Vec::new(),
        status: String::new(),
    }
}

pub fn solve(cfg: &RunConfig, example: &str) -> anyhow::Result<bool> {
    let id = canonical(example);
    match id {
        "rod" | "patch" | "patch-confined" => solve_static(cfg, id),
        "wave" | "kg" | "maxwell" | "maxwell2d" => solve_march(cfg, id),
        "shear" => solve_shear(cfg),
        other => Err(usage(format!(
            "unknown example '{other}'; expected one of {}, shear",
            FIELD_IDS.join(", ")
        ))),
    }
}

fn solve_static(cfg: &RunConfig, id: &str) -> anyhow::Result<bool> {
    let reference = reference(id, cfg)?;
    let lag = reference.model.as_lagrangian();
    let section = &reference.section;
    let slopes = elasto_slopes(id, &cfg.params);
    let exact = |x: &[f64]| slopes.iter().map(|s| s * x[0]).collect::<Vec<f64>>();
    let closed_form_err = sup_error_vs(section, &exact);
    let (traction, traction_nodes) = traction_rows(lag, section);
    let membership = section_membership(lag, section, reference.margin, ContractionPath::Closed)?;
    let sup_tol = cfg.tol.unwrap_or(if id == "rod" {
        tol::ROD_SUP
    } else {
        tol::PATCH_SUP
    });

    let checks = vec![
        CheckRow::new(
            "closed-form-displacement",
            section.node_count(),
            closed_form_err,
            closed_form_err <= sup_tol,
        ),
        CheckRow::new(
            "traction-rows",
            traction_nodes,
            traction,
            traction <= tol::TRACTION_SUP,
        ),
        CheckRow::new(
            "dirac-membership",
            membership.nodes_checked,
            membership.max_residual,
            membership.passed(),
        ),
    ];

    section.write_csv(&cfg.out)?;
    let mut body = empty_body(id, reference.grid);
    body.newton_iterations = reference.newton_iterations;
    body.artifacts = csv_artifacts(section);
    finish(cfg, "solve_report.json", &format!("solve {id}"), body, checks)
}

fn csv_artifacts(section: &DiscreteSection) -> Vec<String> {
    let mut files = vec!["grid.txt".to_string(), "p.csv".to_string()];
    for name in section.chart.fiber_names() {
        files.push(format!("{name}.csv"));
    }
    files
}

fn solve_march(cfg: &RunConfig, id: &str) -> anyhow::Result<bool> {
    let params = &cfg.params;
    let model = make_example(id, params).map_err(|e| usage(e.to_string()))?;
    let hyper = model
        .as_hyperbolic()
        .ok_or_else(|| usage(format!("'{id}' is not an evolution problem")))?;
    let spatial = model.as_lagrangian().chart().base_dim() - 1;
    let m = cfg.grid_or(&[default_march_nodes(id)], 1)?[0];
    let dt = PI / m as f64;
    let steps = 2 * m;
    let spec = MarchSpec::periodic_box(spatial, m, dt, steps);

    let exact: Box<dyn Fn(&[f64]) -> Vec<f64>> = match id {
        "wave" => {
            let k = integer_wave_number(params)?;
            Box::new(move |c: &[f64]| vec![(k * (c[1] - c[0])).sin()])
        }
        "kg" => {
            let (k, mass) = (integer_wave_number(params)?, params.mass);
            Box::new(move |c: &[f64]| vec![dispersive_wave(mass, k, c[0], c[1])])
        }
        "maxwell" => {
            let k = integer_wave_number(params)?;
            Box::new(move |c: &[f64]| transverse_plane_wave(k, c[0], c[1]))
        }
        "maxwell2d" => Box::new(|c: &[f64]| vec![0.0, c[0]]),
        other => unreachable!("'{other}' dispatched to solve_march"),
    };

    let section = march_hyperbolic(hyper, &spec, exact.as_ref())?;
    let err = sup_error_vs(&section, exact.as_ref());
    let h = TAU / m as f64;
    // Leapfrog phase error over the 2 pi horizon is O(h^2); the uniform 1+1
    // electromagnetic field is linear in t, which the scheme reproduces
    // exactly.
    let sup_tol = cfg.tol.unwrap_or(if id == "maxwell2d" {
        1e-10
    } else {
        tol::GRID_SAFETY * h * h
    });
    let membership =
        section_membership(model.as_lagrangian(), &section, 2, ContractionPath::Closed)?;

    let checks = vec![
        CheckRow::new(
            "marched-vs-closed-form",
            section.node_count(),
            err,
            err <= sup_tol,
        ),
        CheckRow::new(
            "dirac-membership",
            membership.nodes_checked,
            membership.max_residual,
            membership.passed(),
        ),
    ];

    section.write_csv(&cfg.out)?;
    let mut body = empty_body(id, vec![m]);
    body.steps = Some(steps);
    body.dt = Some(dt);
    body.artifacts = csv_artifacts(&section);
    finish(cfg, "solve_report.json", &format!("solve {id}"), body, checks)
}

fn default_march_nodes(id: &str) -> usize {
    match id {
        "maxwell" => 16,
        "maxwell2d" => 32,
        _ => 64,
    }
}

/// DAE solve of the plane shear system over `t in [0, 2]`, checked against
/// the closed form and the per-step invariants.
fn shear_run(cfg: &RunConfig) -> anyhow::Result<(Trajectory, DiscreteSection, usize, f64)> {
    let steps = cfg.grid_or(&[200], 1)?[0];
    let dt = 2.0 / steps as f64;
    let model = PlaneShearConstrained::new();
    let (trajectory, section) = nonholonomic_solve(&model, 0.0, &[0.0, 0.0], &[1.0, 0.0], steps, dt)?;
    Ok((trajectory, section, steps, dt))
}

fn shear_checks(cfg: &RunConfig, trajectory: &Trajectory, steps: usize, dt: f64) -> Vec<CheckRow> {
    let model = PlaneShearConstrained::new();
    let constraint = trajectory.max_constraint_violation(&model);

    let (q_exact, v_exact, _) = hpfield::theories::shear_closed_form(trajectory.times[steps]);
    let mut endpoint = 0.0f64;
    for k in 0..2 {
        endpoint = endpoint.max((trajectory.q[steps][k] - q_exact[k]).abs());
        endpoint = endpoint.max((trajectory.v[steps][k] - v_exact[k]).abs());
    }

    // Energy is conserved exactly on this system (the constraint is
    // homogeneous), so the midpoint scheme drifts O(dt^3) per step.
    let energy = |j: usize| {
        hpfield::solver::mechanical_energy(
            &model,
            trajectory.times[j],
            &trajectory.q[j],
            &trajectory.v[j],
        )
    };
    let mut drift = 0.0f64;
    for j in 0..steps {
        drift = drift.max((energy(j + 1) - energy(j)).abs());
    }

    let endpoint_tol = cfg.tol.unwrap_or(tol::GRID_SAFETY * dt * dt);
    vec![
        CheckRow::new(
            "constraint-violation",
            steps + 1,
            constraint,
            constraint <= tol::CONSTRAINT_PER_STEP,
        ),
        CheckRow::new(
            "trajectory-vs-closed-form",
            steps + 1,
            endpoint,
            endpoint <= endpoint_tol,
        ),
        CheckRow::new(
            "per-step-energy-drift",
            steps,
            drift,
            drift <= tol::GRID_SAFETY * dt * dt * dt,
        ),
    ]
}

fn solve_shear(cfg: &RunConfig) -> anyhow::Result<bool> {
    let (trajectory, section, steps, dt) = shear_run(cfg)?;
    let checks = shear_checks(cfg, &trajectory, steps, dt);

    section.write_csv(&cfg.out)?;
    write_trajectory_csv(cfg, &trajectory)?;
    let mut body = empty_body("shear", vec![steps]);
    body.steps = Some(steps);
    body.dt = Some(dt);
    body.artifacts = csv_artifacts(&section);
    body.artifacts.push("trajectory.csv".to_string());
    finish(cfg, "solve_report.json", "solve shear", body, checks)
}

fn write_trajectory_csv(cfg: &RunConfig, trajectory: &Trajectory) -> anyhow::Result<()> {
    std::fs::create_dir_all(&cfg.out)?;
    let mut text = String::from("t,q0,q1,v0,v1,lambda0\n");
    for j in 0..trajectory.times.len() {
        // The multiplier lives on interval midpoints; the last node repeats
        // the final interval's value for a rectangular table.
        let lam = trajectory.lambda[j.min(trajectory.lambda.len() - 1)][0];
        text.push_str(&format!(
            "{},{},{},{},{},{}\n",
            trajectory.times[j],
            trajectory.q[j][0],
            trajectory.q[j][1],
            trajectory.v[j][0],
            trajectory.v[j][1],
            lam
        ));
    }
    std::fs::write(cfg.out.join("trajectory.csv"), text)?;
    Ok(())
}

pub fn residual(cfg: &RunConfig, example: &str) -> anyhow::Result<bool> {
    let id = canonical(example);
    if id == "shear" {
        let (trajectory, _, steps, dt) = shear_run(cfg)?;
        let checks = shear_checks(cfg, &trajectory, steps, dt);
        let mut body = empty_body("shear", vec![steps]);
        body.steps = Some(steps);
        body.dt = Some(dt);
        return finish(cfg, "residual_report.json", "residual shear", body, checks);
    }

    let reference = reference(id, cfg)?;
    let lag = reference.model.as_lagrangian();
    let section = &reference.section;
    let grids = residual_grids(lag, section)?;
    let sup = grids.interior_sup(section, reference.margin);
    let membership = section_membership(lag, section, reference.margin, ContractionPath::Closed)?;
    let energy = energy_report(lag, section, reference.margin)?;
    let h_max = section
        .meta
        .spacing
        .iter()
        .fold(0.0f64, |acc, &h| acc.max(h));

    let mut checks = vec![
        CheckRow::new(
            "interior-residual-sup",
            membership.nodes_checked,
            sup,
            sup <= membership.bound,
        ),
        CheckRow::new(
            "dirac-membership",
            membership.nodes_checked,
            membership.max_residual,
            membership.passed(),
        ),
        CheckRow::new(
            "energy-sup",
            section.node_count(),
            energy.max_abs_energy,
            energy.max_abs_energy <= cfg.tol.unwrap_or(tol::ENERGY_SUP),
        ),
        CheckRow::new(
            "flux-contraction",
            energy.nodes_checked,
            energy.max_flux_contraction,
            energy.max_flux_contraction <= tol::GRID_SAFETY * h_max,
        ),
    ];
    if lag.boundary().is_some() {
        let (traction, nodes) = traction_rows(lag, section);
        checks.push(CheckRow::new(
            "traction-rows",
            nodes,
            traction,
            traction <= tol::TRACTION_SUP,
        ));
    }

    let mut body = empty_body(id, reference.grid);
    body.newton_iterations = reference.newton_iterations;
    finish(
        cfg,
        "residual_report.json",
        &format!("residual {id}"),
        body,
        checks,
    )
}

#[derive(Serialize)]
struct EnergyBody {
    examples: Vec<String>,
    checks: Vec<CheckRow>,
    status: String,
}

pub fn energy(cfg: &RunConfig, example: Option<&str>) -> anyhow::Result<bool> {
    let ids: Vec<&str> = match example {
        Some(raw) => {
            let id = canonical(raw);
            if !FIELD_IDS.contains(&id) {
                return Err(usage(format!(
                    "energy-report covers the field examples {}; \
                     for shear use `residual shear` (per-step drift)",
                    FIELD_IDS.join(", ")
                )));
            }
            vec![id]
        }
        None => FIELD_IDS.to_vec(),
    };
    // A single explicit grid cannot fit every example's axis count.
    if cfg.grid.is_some() && ids.len() > 1 {
        return Err(usage("--grid with energy-report needs an explicit example"));
    }

    let mut checks = Vec::new();
    let mut pass = true;
    for id in &ids {
        let reference = reference(id, cfg)?;
        let lag = reference.model.as_lagrangian();
        let section = &reference.section;
        let report = energy_report(lag, section, reference.margin)?;
        let h_max = section
            .meta
            .spacing
            .iter()
            .fold(0.0f64, |acc, &h| acc.max(h));
        let energy_ok = report.max_abs_energy <= cfg.tol.unwrap_or(tol::ENERGY_SUP);
        let flux_ok = report.max_flux_contraction <= tol::GRID_SAFETY * h_max;
        pass &= energy_ok && flux_ok;
        let row = CheckRow::new(
            format!("{id} energy-sup"),
            section.node_count(),
            report.max_abs_energy,
            energy_ok,
        );
        announce(&row);
        checks.push(row);
        let row = CheckRow::new(
            format!("{id} flux-contraction"),
            report.nodes_checked,
            report.max_flux_contraction,
            flux_ok,
        );
        announce(&row);
        checks.push(row);
    }

    let body = EnergyBody {
        examples: ids.iter().map(|s| s.to_string()).collect(),
        checks,
        status: status(pass).to_string(),
    };
    let path = report::write(&cfg.out, "energy_report.json", "energy-report", cfg.seed, body)?;
    println!("report: {}", path.display());
    Ok(pass)
}
