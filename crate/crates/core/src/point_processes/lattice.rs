use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::window::{BoundaryMode, Point, Window};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeKind {
    /// Triangular lattice; its Voronoi cells are regular hexagons.
    Triangular,
}

/// Triangular lattice with nearest-neighbor distance `spacing`.
///
/// Site `(i, j)` sits at `origin + ((i + (j mod 2)/2) * spacing, j * sqrt(3)/2 * spacing)`,
/// so rows are horizontal and odd rows are shifted by half a spacing. The
/// Voronoi hexagon of a site has its flat sides facing the six neighbors,
/// apothem `spacing / 2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Lattice<T> {
    pub kind: LatticeKind,
    pub spacing: T,
    pub origin: Point<T>,
}

/// Lattice site with its integer coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Site<T> {
    pub i: i64,
    pub j: i64,
    pub position: Point<T>,
}

impl<T: Scalar> Lattice<T> {
    pub fn triangular(spacing: T, origin: Point<T>) -> Result<Self> {
        if !(spacing > T::zero()) || !spacing.is_finite() {
            return Err(Error::param(format!("lattice spacing must be > 0, got {spacing}")));
        }
        Ok(Self {
            kind: LatticeKind::Triangular,
            spacing,
            origin,
        })
    }

    /// A lattice of `columns x rows` sites together with the window it tiles.
    ///
    /// The window is `[0, columns * spacing) x [0, rows * sqrt(3)/2 * spacing)`
    /// and every site is the center of its own tile. With an even row count
    /// the lattice is periodic in the window, which torus mode requires.
    pub fn fitted(
        columns: usize,
        rows: usize,
        spacing: T,
        boundary: BoundaryMode,
    ) -> Result<(Self, Window<T>)> {
        if columns == 0 || rows == 0 {
            return Err(Error::param("lattice needs at least one row and column"));
        }
        if boundary == BoundaryMode::Torus && rows % 2 == 1 {
            return Err(Error::param(
                "torus windows need an even number of lattice rows",
            ));
        }
        let row_height = T::lit(3f64.sqrt() / 2.0) * spacing;
        let origin = Point::new(spacing / T::lit(4.0), row_height / T::lit(2.0));
        let lattice = Self::triangular(spacing, origin)?;
        let window = Window::sized(
            T::from_count(columns) * spacing,
            T::from_count(rows) * row_height,
            boundary,
        )?;
        Ok((lattice, window))
    }

    pub fn row_height(&self) -> T {
        T::lit(3f64.sqrt() / 2.0) * self.spacing
    }

    /// Sites per unit area, `2 / (sqrt(3) * spacing^2)`.
    pub fn intensity(&self) -> T {
        T::lit(2.0 / 3f64.sqrt()) / (self.spacing * self.spacing)
    }

    pub fn apothem(&self) -> T {
        self.spacing / T::lit(2.0)
    }

    pub fn circumradius(&self) -> T {
        self.spacing / T::lit(3f64.sqrt())
    }

    pub fn site(&self, i: i64, j: i64) -> Point<T> {
        let shift = if j.rem_euclid(2) == 1 { T::lit(0.5) } else { T::zero() };
        let fi = T::from_i64(i).expect("site index") + shift;
        let fj = T::from_i64(j).expect("site index");
        Point::new(
            self.origin.x + fi * self.spacing,
            self.origin.y + fj * self.row_height(),
        )
    }

    fn sites_with_padding(&self, window: &Window<T>, pad_x: T, pad_y: T) -> Vec<Site<T>> {
        let h = self.row_height();
        let s = self.spacing;
        let j_lo = ((window.y_min - pad_y - self.origin.y) / h).floor().to_i64().unwrap_or(0) - 1;
        let j_hi = ((window.y_max + pad_y - self.origin.y) / h).ceil().to_i64().unwrap_or(0) + 1;
        let i_lo = ((window.x_min - pad_x - self.origin.x) / s).floor().to_i64().unwrap_or(0) - 1;
        let i_hi = ((window.x_max + pad_x - self.origin.x) / s).ceil().to_i64().unwrap_or(0) + 1;
        let mut out = Vec::new();
        for j in j_lo..=j_hi {
            for i in i_lo..=i_hi {
                let p = self.site(i, j);
                let inside = if pad_x > T::zero() || pad_y > T::zero() {
                    p.x + pad_x > window.x_min
                        && p.x - pad_x < window.x_max
                        && p.y + pad_y > window.y_min
                        && p.y - pad_y < window.y_max
                } else {
                    window.contains(&p)
                };
                if inside {
                    out.push(Site { i, j, position: p });
                }
            }
        }
        out
    }

    /// Sites lying in the (half-open) window.
    pub fn sites_in(&self, window: &Window<T>) -> Vec<Site<T>> {
        self.sites_with_padding(window, T::zero(), T::zero())
    }

    /// Sites whose Voronoi hexagon may intersect the window (bounding-box test).
    pub fn sites_touching(&self, window: &Window<T>) -> Vec<Site<T>> {
        self.sites_with_padding(window, self.apothem(), self.circumradius())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fitted_window_holds_every_site_once() {
        let (lat, win) = Lattice::<f64>::fitted(10, 8, 1.0, BoundaryMode::Torus).unwrap();
        assert_eq!(lat.sites_in(&win).len(), 80);
        assert!((win.area() * lat.intensity() - 80.0).abs() < 1e-9);
    }

    #[test]
    fn odd_rows_rejected_on_torus() {
        assert!(Lattice::<f64>::fitted(10, 7, 1.0, BoundaryMode::Torus).is_err());
        assert!(Lattice::<f64>::fitted(10, 7, 1.0, BoundaryMode::Free).is_ok());
    }

    #[test]
    fn neighbors_at_unit_distance() {
        let lat = Lattice::<f64>::triangular(1.0, Point::origin()).unwrap();
        let c = lat.site(0, 0);
        for (i, j) in [(1, 0), (-1, 0), (0, 1), (-1, 1), (0, -1), (-1, -1)] {
            let d = c.euclidean_distance(&lat.site(i, j));
            assert!((d - 1.0).abs() < 1e-12, "({i},{j}) at {d}");
        }
    }

    #[test]
    fn touching_is_superset_of_inside() {
        let (lat, win) = Lattice::<f64>::fitted(6, 6, 1.0, BoundaryMode::Free).unwrap();
        let inside = lat.sites_in(&win);
        let touching = lat.sites_touching(&win);
        assert!(touching.len() > inside.len());
        for s in &inside {
            assert!(touching.iter().any(|t| t.i == s.i && t.j == s.j));
        }
    }
}
