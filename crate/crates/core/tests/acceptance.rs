//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Built without the libtest harness so the lines are always printed; the
//! process exits nonzero if any criterion fails.

use std::f64::consts::PI;
use std::time::Instant;

use subperc::diagnostics::{
    check_convex_order, chi_square_batch, empirical_joint_intensity_ratio, estimate_void_probability,
    nearest_neighbor_ks, poisson_void_probability, ripley_k_estimate, CountDistribution, OrderWitness, Rect,
};
use subperc::experiments::{ExperimentConfig, GeneratorSpec};
use subperc::percolation::{
    check_discretization_sandwich, estimate_critical_radius, expected_path_count_bound, lower_bound_radius,
    open_paths_from_origin, path_bound_base, ScanConfig,
};
use subperc::point_processes::{
    sample_homogeneous_poisson, BoundaryMode, Lattice, PatternGenerator, Point, PointPattern, ReplicaLaw, Window,
};
use subperc::seeding::derive_seeds;
use subperc::shot_noise::{
    build_sinr_graph, empirical_joint_laplace, estimate_gamma_c, interference_samples, poisson_laplace_closed_form,
    snr_range, Attenuation, Interferers, SinrInstance, SinrParams,
};
use subperc::spatial_graphs::{build_gilbert_with_rule, RangeRule};

const K: f64 = 3.0;
const MASTER: u64 = 20_240_601;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

fn fig2_setup() -> (Lattice<f64>, Window<f64>) {
    ExperimentConfig::default().window.lattice_and_window().unwrap()
}

fn rho_hat(spec: GeneratorSpec, replications: usize, master: u64) -> (f64, f64) {
    let (lattice, window) = fig2_setup();
    let source = spec.build(lattice, window);
    let config = ScanConfig::new((0.8, 1.5), replications, master, &format!("acceptance/{}", spec.slug()));
    let result = estimate_critical_radius(&source, &config).unwrap();
    let at = result
        .curve()
        .into_iter()
        .min_by(|a, b| {
            (a.param - result.threshold_estimate)
                .abs()
                .total_cmp(&(b.param - result.threshold_estimate).abs())
        })
        .unwrap();
    (result.threshold_estimate, at.mean_fraction)
}

fn unit_mean_laws() -> [(GeneratorSpec, f64); 4] {
    [
        (GeneratorSpec::Perturbed(ReplicaLaw::binomial_unit_mean(1)), 1.04),
        (GeneratorSpec::Perturbed(ReplicaLaw::binomial_unit_mean(2)), 1.07),
        (GeneratorSpec::Perturbed(ReplicaLaw::binomial_unit_mean(3)), 1.09),
        (GeneratorSpec::Perturbed(ReplicaLaw::Poisson { mean: 1.0 }), 1.12),
    ]
}

fn fig2_reproduction() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (spec, reference) in unit_mean_laws() {
        let (rho, fraction) = rho_hat(spec, 100, MASTER);
        let ok = (rho - reference).abs() <= 0.03;
        pass &= ok;
        parts.push(format!("{}={rho:.4} (ref {reference}, fraction {fraction:.2})", spec.slug()));
    }
    Outcome::new(pass, parts.join(", "))
}

fn poisson_and_lattice_ranges() -> Outcome {
    let (poisson, _) = rho_hat(GeneratorSpec::Poisson, 100, MASTER);
    let (lattice, _) = rho_hat(GeneratorSpec::Lattice, 10, MASTER);
    let pass = (poisson - 1.112).abs() <= 0.03 && (lattice - 1.0).abs() <= 0.01;
    Outcome::new(pass, format!("poisson {poisson:.4} (ref 1.112), lattice {lattice:.4} (ref 1)"))
}

fn monotone_trend() -> Outcome {
    let seeds = derive_seeds(MASTER, "acceptance/trend", 20);
    let means: Vec<f64> = unit_mean_laws()
        .iter()
        .map(|&(spec, _)| seeds.iter().map(|&s| rho_hat(spec, 10, s).0).sum::<f64>() / seeds.len() as f64)
        .collect();
    let pass = means.windows(2).all(|w| w[0] < w[1]);
    let shown: Vec<String> = means.iter().map(|m| format!("{m:.4}")).collect();
    Outcome::new(pass, format!("mean rho over 20 seeds: {}", shown.join(" < ")))
}

fn poisson_reduction() -> Outcome {
    let (lattice, window) = fig2_setup();
    let replicas = GeneratorSpec::Perturbed(ReplicaLaw::Poisson { mean: 1.0 }).build(lattice, window);
    let matched = GeneratorSpec::Poisson.build(lattice, window);
    let region = Rect::new(window.x_min, window.x_max, window.y_min, window.y_max).unwrap();
    let seeds = derive_seeds(MASTER, "acceptance/chi_square", 100);
    let batch = chi_square_batch(&replicas, &region, 4, 4, &seeds, 0.01).unwrap();
    let c = window.center();
    let probes: Vec<Point<f64>> = (-2..=2)
        .flat_map(|i| (-2..=2).map(move |j| Point::new(c.x + 7.0 * i as f64, c.y + 7.0 * j as f64)))
        .collect();
    let ks = nearest_neighbor_ks(
        &replicas,
        &matched,
        &probes,
        &derive_seeds(MASTER, "acceptance/ks_a", 400),
        &derive_seeds(MASTER, "acceptance/ks_b", 400),
    )
    .unwrap();
    let pass = batch.rejections <= 5 && !ks.rejects_at(0.01);
    Outcome::new(
        pass,
        format!(
            "chi-square rejections {}/100 at level 0.01, KS D={:.4} p={:.3}",
            batch.rejections, ks.statistic, ks.p_value
        ),
    )
}

fn convex_order_suite() -> Outcome {
    let poi = CountDistribution::poisson(1.0);
    let mut pass = true;
    for n in 1..=10 {
        let b = CountDistribution::binomial_unit_mean(n);
        pass &= check_convex_order(&b, &poi, 20).unwrap().holds;
        if n < 10 {
            let next = CountDistribution::binomial_unit_mean(n + 1);
            pass &= check_convex_order(&b, &next, 20).unwrap().holds;
        }
    }
    let bin2 = CountDistribution::binomial_unit_mean(2);
    let reversed = check_convex_order(&poi, &bin2, 20).unwrap();
    let witness = match reversed.witness {
        Some(OrderWitness::StopLoss { k, lower, upper }) => Some((k, lower, upper)),
        _ => None,
    };
    let witness_ok = matches!(witness, Some((1, lo, up))
        if (lo - (-1f64).exp()).abs() < 1e-9 && (up - 0.25).abs() < 1e-9);
    pass &= !reversed.holds && witness_ok;
    Outcome::new(pass, format!("reversed Poi(1) vs Bin(2,1/2) witness {witness:?}"))
}

fn closed_form_poisson() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    let unit_free = Window::sized(20.0, 20.0, BoundaryMode::Free).unwrap();
    let unit = PatternGenerator::Poisson {
        intensity: 1.0,
        window: unit_free,
    };

    let b = Rect::point(unit_free.center());
    let seeds = derive_seeds(MASTER, "acceptance/void", 40000);
    let v = estimate_void_probability(&unit, &b, 1.0, &seeds).unwrap().void;
    let exact = poisson_void_probability(1.0, &b, 1.0);
    pass &= v.agrees_with(exact, K) && (exact - (-PI).exp()).abs() < 1e-15;
    parts.push(format!("void {:.4}+-{:.4} vs {exact:.4}", v.value, v.std_error));

    let torus = Window::sized(50.0, 50.0, BoundaryMode::Torus).unwrap();
    let on_torus = PatternGenerator::Poisson {
        intensity: 1.0,
        window: torus,
    };
    let k = ripley_k_estimate(&on_torus, 1.0, &derive_seeds(MASTER, "acceptance/ripley", 200)).unwrap();
    pass &= k.agrees_with(PI, K);
    parts.push(format!("K(1) {:.4}+-{:.4}", k.value, k.std_error));

    let c = unit_free.center();
    let boxes = [
        Rect::new(c.x - 1.0, c.x, c.y - 0.5, c.y + 0.5).unwrap(),
        Rect::new(c.x + 2.0, c.x + 3.0, c.y + 1.0, c.y + 2.0).unwrap(),
    ];
    let ratio = empirical_joint_intensity_ratio(&unit, &boxes, &derive_seeds(MASTER, "acceptance/moment", 40000)).unwrap();
    pass &= ratio.agrees_with(1.0, K);
    parts.push(format!("moment ratio {:.3}+-{:.3}", ratio.value, ratio.std_error));

    let att = Attenuation::InversePoly { alpha: 4.0 };
    let big = Window::sized(80.0, 80.0, BoundaryMode::Free).unwrap();
    let wide = PatternGenerator::Poisson {
        intensity: 1.0,
        window: big,
    };
    let samples =
        interference_samples(&wide, &[big.center()], &att, &derive_seeds(MASTER, "acceptance/laplace", 2000)).unwrap();
    for s in [-1.0, 0.5] {
        let est = empirical_joint_laplace(&samples, s);
        let exact = poisson_laplace_closed_form(1.0, &att, s).unwrap();
        pass &= est.agrees_with(exact, K);
        parts.push(format!("L({s}) {:.4}+-{:.4} vs {exact:.4}", est.value, est.std_error));
    }
    Outcome::new(pass, parts.join(", "))
}

fn ordering_fingerprints() -> Outcome {
    let (lattice, window) = fig2_setup();
    let bin1 = GeneratorSpec::Perturbed(ReplicaLaw::binomial_unit_mean(1)).build(lattice, window);
    let matched = GeneratorSpec::Poisson.build(lattice, window);
    let mut pass = true;
    let mut parts = Vec::new();

    let b = Rect::point(window.center());
    for r in [0.6, 0.8] {
        let seeds = derive_seeds(MASTER, &format!("acceptance/void_order/{r}"), 2000);
        let vb = estimate_void_probability(&bin1, &b, r, &seeds).unwrap().void;
        let vp = estimate_void_probability(&matched, &b, r, &seeds).unwrap().void;
        pass &= vb.clearly_below(&vp, K);
        parts.push(format!("void(r={r}) {:.4} < {:.4}", vb.value, vp.value));
    }

    let seeds = derive_seeds(MASTER, "acceptance/ripley_order", 200);
    for r in [0.5, 1.0] {
        let kb = ripley_k_estimate(&bin1, r, &seeds).unwrap();
        let kp = ripley_k_estimate(&matched, r, &seeds).unwrap();
        pass &= kb.clearly_below(&kp, K);
        parts.push(format!("K({r}) {:.4} < {:.4}", kb.value, kp.value));
    }

    let att = Attenuation::InversePoly { alpha: 4.0 };
    let c = window.center();
    let seeds = derive_seeds(MASTER, "acceptance/laplace_order", 10000);
    for probes in [vec![c], vec![c, Point::new(c.x + 0.7, c.y + 0.9)]] {
        let a = interference_samples(&bin1, &probes, &att, &seeds).unwrap();
        let b = interference_samples(&matched, &probes, &att, &seeds).unwrap();
        for s in [-1.0, 0.5] {
            let (ea, eb) = (empirical_joint_laplace(&a, s), empirical_joint_laplace(&b, s));
            pass &= ea.clearly_below(&eb, K);
            parts.push(format!("L_{}({s}) {:.4} < {:.4}", probes.len(), ea.value, eb.value));
        }
    }
    Outcome::new(pass, parts.join(", "))
}

fn sinr_structure() -> Outcome {
    let params = |noise: f64, gamma: f64| {
        SinrParams::new(1.0, noise, 1.0, gamma, Attenuation::InversePoly { alpha: 4.0 }).unwrap()
    };
    let mut pass = true;

    let w = Window::sized(15.0, 15.0, BoundaryMode::Free).unwrap();
    let base = params(2.2f64.powi(-4), 0.0);
    let range = snr_range(&base).unwrap();
    let mut monotone = true;
    for seed in 0..100 {
        let backbone = sample_homogeneous_poisson(1.0, &w, seed).unwrap();
        let inter = sample_homogeneous_poisson(1.0, &w, 10_000 + seed).unwrap();
        let gilbert = build_gilbert_with_rule(&backbone, range, w.metric(), RangeRule::Open).unwrap();
        let instance = SinrInstance::new(&backbone, &inter, &base).unwrap();
        let mut previous = instance.graph(0.0);
        pass &= previous.edges() == gilbert.edges();
        for gamma in [0.001, 0.01, 0.05, 0.2, 1.0] {
            let g = instance.graph(gamma);
            monotone &= g.is_subgraph_of(&previous);
            previous = g;
        }
    }
    pass &= monotone;

    let mut worst: f64 = 0.0;
    for noise in [0.01, 0.1, 2.2f64.powi(-4), 0.5, 0.9] {
        for alpha in [2.5, 3.0, 4.0, 6.0] {
            let p = SinrParams::new(1.0, noise, 1.0, 0.0, Attenuation::InversePoly { alpha }).unwrap();
            let r = snr_range(&p).unwrap();
            worst = worst.max((p.attenuation.gain(r) - p.required_gain()).abs());
        }
    }
    pass &= worst <= 1e-12;

    let window = Window::sized(10.0, 10.0, BoundaryMode::Free).unwrap();
    let make = |pts: &[(f64, f64)]| {
        PointPattern::from_points(pts.iter().map(|&(x, y)| Point::new(x, y)).collect(), window).unwrap()
    };
    let backbone = make(&[(0.0, 0.0), (0.1, 0.0)]);
    let interferer = make(&[(0.1, 0.05)]);
    let at0 = build_sinr_graph(&backbone, &interferer, &params(0.5, 0.0)).unwrap().has_edge(0, 1);
    let at10 = build_sinr_graph(&backbone, &interferer, &params(0.5, 10.0)).unwrap().has_edge(0, 1);
    pass &= at0 && !at10;
    Outcome::new(
        pass,
        format!("100 instances, gamma-monotone {monotone}, inversion error {worst:.1e}, 3-node edge {at0}/{at10}"),
    )
}

fn gamma_c_positivity() -> Outcome {
    let defaults = ExperimentConfig::default();
    let (lattice, window) = defaults.window.lattice_and_window().unwrap();
    let q = &defaults.sinr;
    let params = q.params().unwrap();
    let backbone = q.backbone.build(lattice, window);
    let interferers = PatternGenerator::Poisson {
        intensity: q.interferer_intensity,
        window,
    };
    let mut pass = true;
    let mut estimates = Vec::new();
    for master in derive_seeds(MASTER, "acceptance/gamma_c", 10) {
        let config = ScanConfig::new((0.0, q.gamma_hi), 10, master, "sinr_gamma_scan").with_tolerance(q.gamma_tolerance);
        let result = estimate_gamma_c(&backbone, Interferers::Independent(&interferers), &params, &config).unwrap();
        let curve = result.curve();
        let monotone = curve.windows(2).all(|s| s[1].mean_fraction <= s[0].mean_fraction);
        pass &= result.threshold_estimate > 0.0 && result.final_bracket.0 > 0.0 && monotone;
        estimates.push(format!("{:.4}", result.threshold_estimate));
    }
    Outcome::new(pass, format!("gamma_c over 10 seeds: {}", estimates.join(" ")))
}

fn appendix_bounds() -> Outcome {
    let lambda = 2.0 / 3f64.sqrt();
    let c = lower_bound_radius(lambda, 2).unwrap();
    let formula = 0.5 / (7.0 * lambda).sqrt();
    let mut pass = (c - formula).abs() <= 1e-6 && (c - 0.17588).abs() <= 1e-4;
    let base = path_bound_base(lambda, c, 2).unwrap();
    pass &= (base - 1.0).abs() <= 1e-12;

    let window = Window::new(-4.0, 4.0, -4.0, 4.0, BoundaryMode::Free).unwrap();
    let seeds = derive_seeds(MASTER, "acceptance/paths", 100);
    let patterns: Vec<_> = seeds.iter().map(|&s| sample_homogeneous_poisson(1.0, &window, s).unwrap()).collect();
    let mut paths = Vec::new();
    for r in [0.1, 0.2, 0.3] {
        for n in 2..=4u32 {
            let mean = patterns
                .iter()
                .map(|p| open_paths_from_origin(p, r, n as usize).unwrap() as f64)
                .sum::<f64>()
                / patterns.len() as f64;
            let bound = expected_path_count_bound(1.0, r, n, 2).unwrap();
            pass &= mean <= bound;
            paths.push(format!("r={r} n={n}: {mean:.3}<={bound:.3}"));
        }
    }

    let sandwich_window = Window::sized(20.0, 20.0, BoundaryMode::Free).unwrap();
    let mut violations = 0;
    let mut crossings = [0usize; 3];
    // radii on both sides of each discretization's crossing threshold
    let radii = [0.45, 0.6, 1.1, 1.3];
    for (i, r) in radii.into_iter().enumerate() {
        for s in derive_seeds(MASTER, &format!("acceptance/sandwich/{i}"), 100) {
            let p = sample_homogeneous_poisson(1.0, &sandwich_window, s).unwrap();
            let o = check_discretization_sandwich(&p, r).unwrap();
            violations += usize::from(!o.consistent());
            crossings[0] += usize::from(o.fine);
            crossings[1] += usize::from(o.boolean);
            crossings[2] += usize::from(o.coarse);
        }
    }
    pass &= violations == 0;
    Outcome::new(
        pass,
        format!(
            "c={c:.6}, base at c={base:.12}, {}; sandwich violations {violations}/{} (fine/boolean/coarse crossings {crossings:?})",
            paths.join(", "),
            100 * radii.len()
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("critical range of the unit-mean replica laws", fig2_reproduction),
        ("Poisson and lattice critical ranges", poisson_and_lattice_ranges),
        ("monotone trend over 20 master seeds", monotone_trend),
        ("Poisson replicas reduce to Poisson", poisson_reduction),
        ("convex order suite", convex_order_suite),
        ("closed-form Poisson checks", closed_form_poisson),
        ("ordering fingerprints against matched Poisson", ordering_fingerprints),
        ("SINR structural suite", sinr_structure),
        ("gamma_c positivity", gamma_c_positivity),
        ("path and void bounds", appendix_bounds),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        println!(
            "{verdict} [{}] {name}: {} ({:.1}s)",
            i + 1,
            outcome.detail,
            start.elapsed().as_secs_f64()
        );
        if !outcome.pass {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", criteria.len());
    } else {
        eprintln!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
