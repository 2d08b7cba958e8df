use crate::error::{Error, Result};
use crate::percolation::{expected_path_count_bound, lower_bound_radius, path_bound_base, peierls_void_bound};

use super::RunContext;

pub(super) fn run(ctx: &mut RunContext) -> Result<()> {
    let b = ctx.config.bounds.clone();
    if b.intensities.is_empty() {
        return Err(Error::param("bounds.intensities is empty"));
    }
    let half_rho = b.empirical_rho.iter().copied().fold(f64::INFINITY, f64::min) / 2.0;
    let mut radius = String::from("lambda,c_lambda,path_base_at_c,min_empirical_rho_over_2,c_le_rho_over_2\n");
    let mut previous: Option<(f64, f64)> = None;
    let mut decreasing = true;
    let mut sorted = b.intensities.clone();
    sorted.sort_by(|a, b| a.total_cmp(b));
    for &lambda in &sorted {
        let c = lower_bound_radius(lambda, b.dimension)?;
        let base = path_bound_base(lambda, c, b.dimension)?;
        if let Some((l0, c0)) = previous {
            decreasing &= l0 == lambda || c < c0;
        }
        previous = Some((lambda, c));
        let check = if b.empirical_rho.is_empty() { String::new() } else { (c <= half_rho).to_string() };
        let half = if b.empirical_rho.is_empty() { String::new() } else { half_rho.to_string() };
        radius.push_str(&format!("{lambda},{c},{base},{half},{check}\n"));
        ctx.note(format!("lambda = {lambda:.6}: c = {c:.6}, path-bound base at c = {base:.12}"));
    }
    ctx.write_text("tables/bounds_lower_radius.csv", &radius)?;
    ctx.note(format!("c(lambda) strictly decreasing: {decreasing}"));

    let mut paths = String::from("lambda,r,n,path_count_bound,peierls_void_bound\n");
    for &lambda in &sorted {
        for &r in &b.radii {
            for &n in &b.path_lengths {
                paths.push_str(&format!(
                    "{lambda},{r},{n},{},{}\n",
                    expected_path_count_bound(lambda, r, n, b.dimension)?,
                    peierls_void_bound(lambda, r, n, b.dimension)?
                ));
            }
        }
    }
    ctx.write_text("tables/bounds_paths.csv", &paths)
}
