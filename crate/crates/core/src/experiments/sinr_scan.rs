use crate::error::Result;
use crate::percolation::io::{scan_summary, write_scan_csv};
use crate::percolation::{level_set_crossing, LevelDirection, ScanConfig};
use crate::point_processes::{PatternGenerator, PatternSource};
use crate::shot_noise::{
    estimate_gamma_c_with, interference_grid, interferer_seed, snr_range, write_interference_grid_csv, Criterion,
    Interferers,
};

use super::config::{CriterionSetting, InterfererSetting};
use super::RunContext;

pub(super) fn run(ctx: &mut RunContext) -> Result<()> {
    let (lattice, window) = ctx.config.window.lattice_and_window()?;
    let q = ctx.config.sinr.clone();
    let params = q.params()?;
    let range = snr_range(&params)?;
    let backbone = q.backbone.build(lattice, window);
    let independent = PatternGenerator::Poisson {
        intensity: q.interferer_intensity,
        window,
    };
    let interferers = match q.interferers {
        InterfererSetting::Independent => Interferers::Independent(&independent),
        InterfererSetting::Backbone => Interferers::Backbone,
        InterfererSetting::BackboneAndIndependent => Interferers::BackboneAnd(&independent),
    };
    let criterion = match q.criterion {
        CriterionSetting::Fraction => Criterion::LargestFraction,
        CriterionSetting::Crossing => Criterion::Crossing {
            margin: q.crossing_margin,
        },
    };
    let s = &ctx.config.scan;
    let config = ScanConfig::new((0.0, q.gamma_hi), s.replications, ctx.config.master_seed, "sinr_gamma_scan")
        .with_target(s.target_fraction)
        .with_tolerance(q.gamma_tolerance);
    ctx.manifest.record_seeds("sinr_gamma_scan", &config.seeds);
    let interferer_seeds: Vec<u64> = config.seeds.iter().map(|&s| interferer_seed(s)).collect();
    ctx.manifest.record_seeds("sinr_gamma_scan/interferers", &interferer_seeds);

    let result = ctx.timed("gamma scan", |_| {
        estimate_gamma_c_with(&backbone, interferers, &params, &config, criterion)
    })?;
    ctx.write_file("tables/sinr_gamma_curve.csv", |w| write_scan_csv(&result, w))?;
    let mut summary = scan_summary(&result);
    summary["snr_range"] = range.into();
    summary["params"] = serde_json::to_value(params.record())?;
    ctx.write_text("tables/sinr_gamma_c.json", &(serde_json::to_string_pretty(&summary)? + "\n"))?;
    ctx.note(format!(
        "gamma_c estimate {:.5} (noise-limited range {range:.4}, bracket ({}, {}))",
        result.threshold_estimate, result.final_bracket.0, result.final_bracket.1
    ));

    // interference field of the first replication's interferers
    let field_pattern = match q.interferers {
        InterfererSetting::Backbone => backbone.generate(config.seeds[0])?,
        _ => independent.generate(interferer_seeds[0])?,
    };
    let n = q.grid_cells.max(2);
    let (grid, centers) = ctx.timed("interference grid", |_| {
        Ok(interference_grid(&field_pattern, &params.attenuation, n, n))
    })?;
    ctx.write_file("patterns/sinr_interference_grid.csv", |w| {
        write_interference_grid_csv(&grid, &centers, w)
    })?;
    let mut sorted = grid.values.clone();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let mut levels = String::from("quantile,level,sub_level_crossing,super_level_crossing\n");
    for qt in [0.1, 0.25, 0.5, 0.75, 0.9, 1.0] {
        let idx = ((qt * (sorted.len() - 1) as f64).round() as usize).min(sorted.len() - 1);
        let m = sorted[idx];
        levels.push_str(&format!(
            "{qt},{m},{},{}\n",
            level_set_crossing(&grid, m, LevelDirection::SubLevel),
            level_set_crossing(&grid, m, LevelDirection::SuperLevel)
        ));
    }
    ctx.write_text("tables/sinr_level_sets.csv", &levels)
}
