use crate::diagnostics::report::csv_field;
use crate::diagnostics::CountDistribution;
use crate::error::Result;
use crate::point_processes::{
    hexagon_vertices, io::write_pattern_csv, sample_homogeneous_poisson, sample_perturbed_lattice_detailed,
    triangular_lattice_pattern, PointPattern, ReplicaLaw,
};
use crate::seeding::derive_seed;

use super::config::GeneratorSpec;
use super::svg::pattern_svg;
use super::RunContext;

pub(super) fn default_generators() -> Vec<GeneratorSpec> {
    let mut v = vec![GeneratorSpec::Lattice];
    v.extend((1..=3).map(|n| GeneratorSpec::Perturbed(ReplicaLaw::binomial_unit_mean(n))));
    v.push(GeneratorSpec::Perturbed(ReplicaLaw::Poisson { mean: 1.0 }));
    v.push(GeneratorSpec::Perturbed(ReplicaLaw::CoxBernoulli { a: 5.0 }));
    v
}

struct PanelRow {
    generator: String,
    points: usize,
    sites: usize,
    empty_sites: usize,
    reference: Option<f64>,
}

pub(super) fn run(ctx: &mut RunContext) -> Result<()> {
    let (lattice, window) = ctx.config.window.lattice_and_window()?;
    let specs = ctx.config.generators.clone().unwrap_or_else(default_generators);
    // every panel uses the same seed, so they differ only in the generator
    let seed = derive_seed(ctx.config.master_seed, "fig1_patterns", 0);
    ctx.manifest.record_seeds("fig1_patterns", &[seed]);
    let inside_sites = lattice.sites_in(&window);
    let hexagons: Vec<_> = inside_sites
        .iter()
        .map(|s| hexagon_vertices(&s.position, lattice.apothem()).to_vec())
        .collect();
    let mut rows = Vec::new();
    for spec in &specs {
        let slug = spec.slug();
        let (pattern, empty, reference): (PointPattern<f64>, usize, Option<f64>) = match spec {
            GeneratorSpec::Lattice => (triangular_lattice_pattern(&lattice, &window), 0, Some(0.0)),
            GeneratorSpec::Poisson => (sample_homogeneous_poisson(lattice.intensity(), &window, seed)?, 0, None),
            GeneratorSpec::Perturbed(law) => {
                let sample = sample_perturbed_lattice_detailed(&lattice, law, &window, seed)?;
                let empty = sample.sites.iter().filter(|s| s.inside && s.replicas == 0).count();
                let p0 = CountDistribution::new(*law)?.pmf(0);
                (sample.pattern, empty, Some(p0))
            }
        };
        ctx.write_file(&format!("patterns/fig1_{slug}.csv"), |w| write_pattern_csv(&pattern, w))?;
        let svg = pattern_svg(&pattern, &hexagons, &spec.to_string());
        ctx.write_text(&format!("figures/fig1_{slug}.svg"), &svg)?;
        rows.push(PanelRow {
            generator: spec.to_string(),
            points: pattern.len(),
            sites: inside_sites.len(),
            empty_sites: empty,
            reference,
        });
    }
    let mut text = String::from("generator,points,sites,empty_sites,empty_fraction,reference_empty_fraction,std_error,verdict\n");
    for r in &rows {
        let frac = r.empty_sites as f64 / r.sites as f64;
        let (reference, se, verdict) = match r.reference {
            Some(p) => {
                let se = (p * (1.0 - p) / r.sites as f64).sqrt();
                let ok = (frac - p).abs() <= 3.0 * se;
                (p.to_string(), se.to_string(), if ok { "pass" } else { "fail" })
            }
            None => (String::new(), String::new(), ""),
        };
        if r.reference.is_some() && r.generator != "lattice" {
            ctx.note(format!(
                "{}: {} points, empty-site fraction {frac:.4} (expected {reference:.6})",
                r.generator, r.points
            ));
        } else {
            ctx.note(format!("{}: {} points", r.generator, r.points));
        }
        text.push_str(&format!(
            "{},{},{},{},{frac},{reference},{se},{verdict}\n",
            csv_field(&r.generator), r.points, r.sites, r.empty_sites
        ));
    }
    ctx.write_text("tables/fig1_summary.csv", &text)
}
