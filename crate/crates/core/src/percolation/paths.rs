use crate::error::{Error, Result};
use crate::point_processes::{Point, PointPattern};
use crate::scalar::Scalar;

use super::site_field::{BinaryGrid, SiteField};

/// Number of self-avoiding paths of `sites` open sites starting at `start`,
/// moving between sites that share a side or a corner.
pub fn count_open_paths(grid: &BinaryGrid, start: (usize, usize), sites: usize) -> u64 {
    if sites == 0 || !grid.is_open(start.0, start.1) {
        return 0;
    }
    let mut visited = vec![false; grid.columns() * grid.rows()];
    visited[start.1 * grid.columns() + start.0] = true;
    extend(grid, start, sites - 1, &mut visited)
}

fn extend(grid: &BinaryGrid, at: (usize, usize), remaining: usize, visited: &mut [bool]) -> u64 {
    if remaining == 0 {
        return 1;
    }
    let mut total = 0;
    let next: Vec<(usize, usize)> = grid.neighbors(at.0, at.1).collect();
    for (i, j) in next {
        let k = j * grid.columns() + i;
        if visited[k] || !grid.is_open(i, j) {
            continue;
        }
        visited[k] = true;
        total += extend(grid, (i, j), remaining - 1, visited);
        visited[k] = false;
    }
    total
}

/// Open self-avoiding paths of `sites` sites from the origin in the site
/// field of side `2r` whose central box is `[-r, r)^2`.
///
/// The pattern window must contain `[-(2 sites - 1) r, (2 sites - 1) r]^2`
/// so every box such a path can reach is fully observed.
pub fn open_paths_from_origin<T: Scalar>(pattern: &PointPattern<T>, r: T, sites: usize) -> Result<u64> {
    if !(r > T::zero()) {
        return Err(Error::param(format!("radius must be > 0, got {r}")));
    }
    let reach = sites.saturating_sub(1);
    let half_extent = T::from_count(2 * reach + 1) * r;
    let w = &pattern.window;
    if w.x_min > -half_extent || w.x_max < half_extent || w.y_min > -half_extent || w.y_max < half_extent {
        return Err(Error::geometry(format!(
            "window must cover [-{half_extent}, {half_extent}]^2 for paths of {sites} sites"
        )));
    }
    let n = 2 * reach + 1;
    let field = SiteField::from_points(
        &pattern.points,
        T::lit(2.0) * r,
        Point::new(-half_extent, -half_extent),
        n,
        n,
    )?;
    Ok(count_open_paths(&field.grid, (reach, reach), sites))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_paths(grid: &BinaryGrid, start: (usize, usize), sites: usize) -> u64 {
        // enumerate all sequences then filter
        fn rec(grid: &BinaryGrid, path: &mut Vec<(usize, usize)>, sites: usize) -> u64 {
            if path.len() == sites {
                return 1;
            }
            let last = *path.last().unwrap();
            let mut t = 0;
            for j in 0..grid.rows() {
                for i in 0..grid.columns() {
                    let adjacent = (i as i64 - last.0 as i64).abs() <= 1
                        && (j as i64 - last.1 as i64).abs() <= 1
                        && (i, j) != last;
                    if adjacent && grid.is_open(i, j) && !path.contains(&(i, j)) {
                        path.push((i, j));
                        t += rec(grid, path, sites);
                        path.pop();
                    }
                }
            }
            t
        }
        if !grid.is_open(start.0, start.1) {
            return 0;
        }
        rec(grid, &mut vec![start], sites)
    }

    #[test]
    fn full_grid_path_counts() {
        let g = BinaryGrid::new(7, 7, true);
        assert_eq!(count_open_paths(&g, (3, 3), 1), 1);
        assert_eq!(count_open_paths(&g, (3, 3), 2), 8);
        // never more than (3^2 - 2)^n
        for n in 1..=4u32 {
            assert!(count_open_paths(&g, (3, 3), n as usize) <= 7u64.pow(n));
        }
    }

    #[test]
    fn matches_exhaustive_enumeration() {
        let g = BinaryGrid::from_fn(5, 5, |i, j| (i * 7 + j * 3) % 4 != 0);
        for n in 1..=4 {
            assert_eq!(count_open_paths(&g, (2, 2), n), brute_paths(&g, (2, 2), n), "n = {n}");
        }
        let closed = BinaryGrid::new(3, 3, false);
        assert_eq!(count_open_paths(&closed, (1, 1), 2), 0);
    }

    #[test]
    fn origin_paths_require_coverage() {
        use crate::point_processes::{BoundaryMode, Window};
        let w = Window::new(-1.0, 1.0, -1.0, 1.0, BoundaryMode::Free).unwrap();
        let p = PointPattern::from_points(vec![Point::new(0.0, 0.0)], w).unwrap();
        assert!(open_paths_from_origin(&p, 0.2, 4).is_err());
        assert_eq!(open_paths_from_origin(&p, 0.2, 1).unwrap(), 1);
        assert_eq!(open_paths_from_origin(&p, 0.2, 2).unwrap(), 0);
    }
}
