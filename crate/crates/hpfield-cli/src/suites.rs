//! Verification subcommands: the seeded exterior-algebra identity suite and
//! the graded isotropy suite, each printed one line per check and written as
//! a versioned JSON report.

use serde::Serialize;

use hpfield::dirac::isotropy_suite;
use hpfield::exterior::suite::{run_identity_suite, FrameContractionCheck};
use hpfield::tol;

use crate::config::{usage, RunConfig};
use crate::report::{self, status, CheckRow};

#[derive(Serialize)]
struct AlgebraBody {
    dims: Vec<usize>,
    samples_per_identity: usize,
    tolerance: f64,
    checks: Vec<CheckRow>,
    frame_patterns: Vec<FrameContractionCheck>,
    status: String,
}

pub fn verify_algebra(cfg: &RunConfig) -> anyhow::Result<bool> {
    let samples = cfg.samples.unwrap_or(1000);
    let tolerance = cfg.tol.unwrap_or(tol::ALGEBRA_IDENTITY_REL);
    let dims = vec![2, 3, 4, 5, 6];
    let suite = run_identity_suite(cfg.seed, samples, &dims);

    let mut pass = true;
    let mut checks = Vec::new();
    for c in &suite.checks {
        let ok = c.max_rel_residual <= tolerance;
        pass &= ok;
        println!(
            "{}: {} samples, max rel residual {:.3e} <= {:.1e} [{}]",
            c.name,
            c.samples,
            c.max_rel_residual,
            tolerance,
            status(ok)
        );
        checks.push(CheckRow::new(&c.name, c.samples, c.max_rel_residual, ok));
    }
    for f in &suite.frame_checks {
        let ok = f.single_matches_kernel_pattern && f.double_matches_kernel_pattern;
        pass &= ok;
        println!(
            "frame contraction dim {}: single deletion (-1)^nu delta, double deletion \
             (-1)^(n+mu+nu) (delta dx^nu - delta dx^mu), term ratios to the all-plus \
             convention {}/{} [{}]",
            f.dim,
            f.double_dx_mu_term_ratio,
            f.double_dx_nu_term_ratio,
            status(ok)
        );
    }

    let body = AlgebraBody {
        dims,
        samples_per_identity: samples,
        tolerance,
        checks,
        frame_patterns: suite.frame_checks.clone(),
        status: status(pass).to_string(),
    };
    let path = report::write(&cfg.out, "algebra_report.json", "verify-algebra", cfg.seed, body)?;
    println!("report: {}", path.display());
    Ok(pass)
}

#[derive(Serialize)]
struct DiracBody {
    tolerance: f64,
    detection_window: f64,
    samples_per_bidegree: usize,
    checks: Vec<CheckRow>,
    maximality_note: String,
    status: String,
}

pub fn verify_dirac(cfg: &RunConfig) -> anyhow::Result<bool> {
    let samples = cfg.samples.unwrap_or(25);
    let tolerance = cfg.tol.unwrap_or(tol::ALGEBRA_IDENTITY_REL);
    if let Some(n) = cfg.n {
        if n > 2 {
            return Err(usage(format!("--n {n} out of range; charts cover n = 0, 1, 2")));
        }
    }
    let suite = isotropy_suite(cfg.seed, samples)?;

    let mut pass = true;
    let mut checks = Vec::new();
    for chart in &suite.charts {
        let n = chart.base_dim - 1;
        if cfg.n.is_some_and(|want| want != n) {
            continue;
        }
        for c in &chart.checks {
            let graph_ok = c.max_graph_residual <= tolerance;
            let detect_ok = c.worst_detection_ratio <= suite.detection_window;
            pass &= graph_ok && detect_ok;
            println!(
                "isotropy n={n} (r, s)=({}, {}): {} samples, max graph pairing {:.3e} <= \
                 {:.1e} [{}], perturbation detection error {:.2}% <= {:.0}% [{}]",
                c.r,
                c.s,
                c.samples,
                c.max_graph_residual,
                tolerance,
                status(graph_ok),
                100.0 * c.worst_detection_ratio,
                100.0 * suite.detection_window,
                status(detect_ok)
            );
            checks.push(
                CheckRow::new(
                    format!("graph-pairing-n{n}"),
                    c.samples,
                    c.max_graph_residual,
                    graph_ok,
                )
                .with_bidegree(c.r, c.s),
            );
            checks.push(
                CheckRow::new(
                    format!("perturbation-detection-n{n}"),
                    c.samples,
                    c.worst_detection_ratio,
                    detect_ok,
                )
                .with_bidegree(c.r, c.s),
            );
        }
    }
    if checks.is_empty() {
        return Err(usage("no isotropy checks selected"));
    }
    println!("note: {}", suite.maximality_note);

    let body = DiracBody {
        tolerance,
        detection_window: suite.detection_window,
        samples_per_bidegree: samples,
        checks,
        maximality_note: suite.maximality_note.clone(),
        status: status(pass).to_string(),
    };
    let path = report::write(&cfg.out, "dirac_report.json", "verify-dirac", cfg.seed, body)?;
    println!("report: {}", path.display());
    Ok(pass)
}
