use crate::diagnostics::{
    check_convex_order, chi_square_batch, empirical_joint_intensity_ratio, estimate_void_probability,
    nearest_neighbor_ks, outage_capacity, poisson_void_probability, ripley_k_estimate, shannon_mean_capacity,
    write_report_csv, CountDistribution, DiagnosticRow, Fading, OrderWitness, Rect,
};
use crate::error::Result;
use crate::point_processes::{BoundaryMode, PatternGenerator, Point, ReplicaLaw, Window};
use crate::seeding::derive_seeds;
use crate::shot_noise::{
    empirical_joint_laplace, interference_samples, poisson_laplace_closed_form, Attenuation,
};
use crate::stats::EstimateWithCI;

use super::config::GeneratorSpec;
use super::RunContext;

const K: f64 = 3.0;

fn row(diagnostic: &str, params: String, est: EstimateWithCI, reference: f64, pass: bool) -> DiagnosticRow {
    DiagnosticRow {
        diagnostic: diagnostic.into(),
        params,
        value: est.value,
        std_error: est.std_error,
        reference_value: reference,
        verdict: if pass { "pass" } else { "fail" }.into(),
    }
}

/// Probe points around `center`: 1, 2 or 4 corners of a small rectangle.
pub(super) fn probes(center: Point<f64>, n: usize) -> Vec<Point<f64>> {
    let offsets = [(0.0, 0.0), (0.7, 0.0), (0.0, 0.9), (0.7, 0.9)];
    offsets[..n.min(4)]
        .iter()
        .map(|&(dx, dy)| Point::new(center.x + dx, center.y + dy))
        .collect()
}

pub(super) fn run(ctx: &mut RunContext) -> Result<()> {
    let d = ctx.config.diagnostics.clone();
    let master = ctx.config.master_seed;
    let (lattice, window) = ctx.config.window.lattice_and_window()?;
    let lambda = lattice.intensity();
    let bin1 = GeneratorSpec::Perturbed(ReplicaLaw::binomial_unit_mean(1)).build(lattice, window);
    let poi_replicas = GeneratorSpec::Perturbed(ReplicaLaw::Poisson { mean: 1.0 }).build(lattice, window);
    let matched = GeneratorSpec::Poisson.build(lattice, window);
    let unit = PatternGenerator::Poisson { intensity: 1.0, window };
    let seeds = |label: &str, n: usize| derive_seeds(master, &format!("diagnostics_suite/{label}"), n);
    let mut rows = Vec::new();

    ctx.timed("count laws", |_| {
        let poi = CountDistribution::poisson(1.0);
        for n in 1..=10u64 {
            let b = CountDistribution::binomial_unit_mean(n);
            let holds = check_convex_order(&b, &poi, 20)?.holds;
            rows.push(row("convex_order", format!("{} <=cx Poi(1)", ReplicaLaw::binomial_unit_mean(n)), EstimateWithCI::exact(holds as u8 as f64), 1.0, holds));
            if n < 10 {
                let next = CountDistribution::binomial_unit_mean(n + 1);
                let chain = check_convex_order(&b, &next, 20)?.holds;
                rows.push(row("convex_order", format!("{} <=cx {}", ReplicaLaw::binomial_unit_mean(n), ReplicaLaw::binomial_unit_mean(n + 1)), EstimateWithCI::exact(chain as u8 as f64), 1.0, chain));
            }
        }
        let reversed = check_convex_order(&poi, &CountDistribution::binomial_unit_mean(2), 20)?;
        let k = match reversed.witness {
            Some(OrderWitness::StopLoss { k, .. }) => k as f64,
            _ => f64::NAN,
        };
        rows.push(row("convex_order_witness", "Poi(1) <=cx Bin(2,1/2)".into(), EstimateWithCI::exact(k), 1.0, !reversed.holds && k == 1.0));
        let sl_poi = poi.stop_loss(1);
        rows.push(row("stop_loss", "Poi(1), k=1".into(), EstimateWithCI::exact(sl_poi), (-1f64).exp(), (sl_poi - (-1f64).exp()).abs() < 1e-9));
        let sl_bin = CountDistribution::binomial_unit_mean(2).stop_loss(1);
        rows.push(row("stop_loss", "Bin(2,1/2), k=1".into(), EstimateWithCI::exact(sl_bin), 0.25, (sl_bin - 0.25).abs() < 1e-9));
        Ok(())
    })?;

    ctx.timed("poisson reduction", |ctx| {
        let region = Rect::new(window.x_min, window.x_max, window.y_min, window.y_max)?;
        let chi_seeds = seeds("chi_square", d.chi_square_seeds);
        ctx.manifest.record_seeds("diagnostics_suite/chi_square", &chi_seeds);
        let batch = chi_square_batch(&poi_replicas, &region, 4, 4, &chi_seeds, d.chi_square_level)?;
        let allowed = (0.05 * batch.seeds as f64).ceil();
        rows.push(row(
            "chi_square_rejections",
            format!("Poi(1) replicas, 16 cells, level {}", d.chi_square_level),
            EstimateWithCI::exact(batch.rejections as f64),
            d.chi_square_level * batch.seeds as f64,
            batch.rejections as f64 <= allowed,
        ));
        let c = window.center();
        let grid: Vec<Point<f64>> = (-2..=2)
            .flat_map(|i| (-2..=2).map(move |j| Point::new(c.x + 7.0 * i as f64, c.y + 7.0 * j as f64)))
            .collect();
        let ks = nearest_neighbor_ks(&poi_replicas, &matched, &grid, &seeds("ks_a", d.replications / 4), &seeds("ks_b", d.replications / 4))?;
        rows.push(DiagnosticRow {
            diagnostic: "ks_nearest_neighbor".into(),
            params: "Poi(1) replicas vs Poisson, statistic / p-value".into(),
            value: ks.statistic,
            std_error: 0.0,
            reference_value: ks.p_value,
            verdict: if ks.rejects_at(0.01) { "fail" } else { "pass" }.into(),
        });
        Ok(())
    })?;

    ctx.timed("void and capacity functional", |ctx| {
        let r = d.void_radius;
        let b = Rect::point(window.center());
        let s = seeds("void", d.replications);
        ctx.manifest.record_seeds("diagnostics_suite/void", &s);
        let unit_void = estimate_void_probability(&unit, &b, r, &s)?;
        let exact = poisson_void_probability(1.0, &b, r);
        rows.push(row("void_probability", format!("Poisson(1), point, r={r}"), unit_void.void, exact, unit_void.void.agrees_with(exact, K)));
        let v_bin = estimate_void_probability(&bin1, &b, r, &s)?;
        let v_poi = estimate_void_probability(&matched, &b, r, &s)?;
        let exact = poisson_void_probability(lambda, &b, r);
        rows.push(row("void_probability", format!("Poisson({lambda:.4}), point, r={r}"), v_poi.void, exact, v_poi.void.agrees_with(exact, K)));
        rows.push(row("void_probability", format!("Bin(1,1) lattice, point, r={r}; reference matched Poisson"), v_bin.void, v_poi.void.value, v_bin.void.clearly_below(&v_poi.void, K)));
        Ok(())
    })?;

    ctx.timed("ripley", |ctx| {
        let torus = Window::sized(50.0, 50.0, BoundaryMode::Torus)?;
        let unit_torus = PatternGenerator::Poisson { intensity: 1.0, window: torus };
        let s = seeds("ripley", 200);
        ctx.manifest.record_seeds("diagnostics_suite/ripley", &s);
        let k1 = ripley_k_estimate(&unit_torus, 1.0, &s)?;
        let pi = std::f64::consts::PI;
        rows.push(row("ripley_k", "Poisson(1), 50x50 torus, r=1".into(), k1, pi, k1.agrees_with(pi, K)));
        let r = d.ripley_radius;
        let s = seeds("ripley_lattice", 200);
        let k_bin = ripley_k_estimate(&bin1, r, &s)?;
        let k_poi = ripley_k_estimate(&matched, r, &s)?;
        let reference = pi * r * r;
        rows.push(row("ripley_k", format!("Bin(1,1) lattice, r={r}; reference pi r^2"), k_bin, reference, k_bin.value + K * k_bin.std_error < reference));
        rows.push(row("ripley_k", format!("matched Poisson, r={r}"), k_poi, reference, k_poi.agrees_with(reference, K)));
        Ok(())
    })?;

    ctx.timed("joint intensities", |_| {
        let c = window.center();
        let boxes = [
            Rect::new(c.x - 1.0, c.x, c.y - 0.5, c.y + 0.5)?,
            Rect::new(c.x, c.x + 1.0, c.y - 0.5, c.y + 0.5)?,
            Rect::new(c.x + 3.0, c.x + 4.0, c.y + 2.0, c.y + 3.0)?,
        ];
        let s = seeds("joint", d.replications);
        for k in 2..=3 {
            let est = empirical_joint_intensity_ratio(&unit, &boxes[..k], &s)?;
            rows.push(row("joint_intensity_ratio", format!("Poisson(1), k={k}"), est, 1.0, est.agrees_with(1.0, K)));
        }
        let est = empirical_joint_intensity_ratio(&bin1, &boxes[..2], &s)?;
        rows.push(row("joint_intensity_ratio", "Bin(1,1) lattice, two adjacent unit boxes".into(), est, 1.0, est.value + K * est.std_error < 1.0));
        Ok(())
    })?;

    ctx.timed("laplace transforms", |ctx| {
        let att = Attenuation::InversePoly { alpha: 4.0 };
        let big = Window::sized(80.0, 80.0, BoundaryMode::Free)?;
        let unit_big = PatternGenerator::Poisson { intensity: 1.0, window: big };
        let s = seeds("laplace_poisson", d.replications);
        ctx.manifest.record_seeds("diagnostics_suite/laplace_poisson", &s);
        let samples = interference_samples(&unit_big, &[big.center()], &att, &s)?;
        for &sv in &d.laplace_s {
            let est = empirical_joint_laplace(&samples, sv);
            let exact = poisson_laplace_closed_form(1.0, &att, sv)?;
            rows.push(row("laplace_closed_form", format!("Poisson(1), n=1, s={sv}"), est, exact, est.agrees_with(exact, K)));
        }
        let s = seeds("laplace_order", d.replications);
        for &n in &d.laplace_probes {
            let pts = probes(window.center(), n);
            let a = interference_samples(&bin1, &pts, &att, &s)?;
            let b = interference_samples(&matched, &pts, &att, &s)?;
            for &sv in &d.laplace_s {
                let (ea, eb) = (empirical_joint_laplace(&a, sv), empirical_joint_laplace(&b, sv));
                rows.push(row("laplace_order", format!("Bin(1,1) vs matched Poisson, n={n}, s={sv}"), ea, eb.value, ea.clearly_below(&eb, K)));
            }
        }
        let pts = probes(window.center(), 1);
        let a: Vec<f64> = interference_samples(&bin1, &pts, &att, &s)?.into_iter().map(|v| v[0]).collect();
        let b: Vec<f64> = interference_samples(&matched, &pts, &att, &s)?.into_iter().map(|v| v[0]).collect();
        let fading = Fading::Exponential { rate: d.fading_rate };
        let noise = 2.2f64.powi(-4);
        let (sa, sb) = (shannon_mean_capacity(&a, d.capacity_f0, noise), shannon_mean_capacity(&b, d.capacity_f0, noise));
        rows.push(row("shannon_capacity", format!("Bin(1,1) vs matched Poisson, F0={}", d.capacity_f0), sa, sb.value, sa.not_above(&sb, K)));
        let (oa, ob) = (
            outage_capacity(&a, d.capacity_threshold, noise, fading),
            outage_capacity(&b, d.capacity_threshold, noise, fading),
        );
        rows.push(row("outage_capacity", format!("Bin(1,1) vs matched Poisson, T={}", d.capacity_threshold), oa, ob.value, oa.not_above(&ob, K)));
        Ok(())
    })?;

    let failed = rows.iter().filter(|r| r.verdict == "fail").count();
    ctx.note(format!("{} diagnostics, {failed} failed", rows.len()));
    for r in rows.iter().filter(|r| r.verdict == "fail") {
        ctx.note(format!("failed: {} [{}] value {} vs {}", r.diagnostic, r.params, r.value, r.reference_value));
    }
    ctx.write_file("tables/diagnostics_report.csv", |w| write_report_csv(&rows, w))
}
