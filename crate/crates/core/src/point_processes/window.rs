use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn origin() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn euclidean_distance(&self, other: &Self) -> T {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// How the edges of a [`Window`] are treated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryMode {
    /// Opposite edges are identified.
    Torus,
    /// Points outside are discarded; distances are Euclidean.
    Free,
}

impl std::str::FromStr for BoundaryMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "torus" => Ok(BoundaryMode::Torus),
            "free" => Ok(BoundaryMode::Free),
            other => Err(Error::param(format!("unknown boundary mode {other:?}"))),
        }
    }
}

impl std::fmt::Display for BoundaryMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BoundaryMode::Torus => "torus",
            BoundaryMode::Free => "free",
        })
    }
}

/// Half-open rectangular simulation window `[x_min, x_max) x [y_min, y_max)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window<T> {
    pub x_min: T,
    pub x_max: T,
    pub y_min: T,
    pub y_max: T,
    pub boundary: BoundaryMode,
}

impl<T: Scalar> Window<T> {
    pub fn new(x_min: T, x_max: T, y_min: T, y_max: T, boundary: BoundaryMode) -> Result<Self> {
        let finite = [x_min, x_max, y_min, y_max].iter().all(|v| v.is_finite());
        if !finite || !(x_min < x_max) || !(y_min < y_max) {
            return Err(Error::param(format!(
                "window needs x_min < x_max and y_min < y_max, got [{x_min}, {x_max}) x [{y_min}, {y_max})"
            )));
        }
        Ok(Self {
            x_min,
            x_max,
            y_min,
            y_max,
            boundary,
        })
    }

    /// `[0, width) x [0, height)`.
    pub fn sized(width: T, height: T, boundary: BoundaryMode) -> Result<Self> {
        Self::new(T::zero(), width, T::zero(), height, boundary)
    }

    pub fn with_boundary(mut self, boundary: BoundaryMode) -> Self {
        self.boundary = boundary;
        self
    }

    pub fn width(&self) -> T {
        self.x_max - self.x_min
    }

    pub fn height(&self) -> T {
        self.y_max - self.y_min
    }

    pub fn area(&self) -> T {
        self.width() * self.height()
    }

    pub fn center(&self) -> Point<T> {
        let two = T::lit(2.0);
        Point::new((self.x_min + self.x_max) / two, (self.y_min + self.y_max) / two)
    }

    pub fn contains(&self, p: &Point<T>) -> bool {
        p.x >= self.x_min && p.x < self.x_max && p.y >= self.y_min && p.y < self.y_max
    }

    /// Maps a point into the window by periodic translation.
    pub fn wrap(&self, p: Point<T>) -> Point<T> {
        Point::new(
            wrap_coord(p.x, self.x_min, self.width()),
            wrap_coord(p.y, self.y_min, self.height()),
        )
    }

    pub fn metric(&self) -> Metric<T> {
        match self.boundary {
            BoundaryMode::Free => Metric::Euclidean,
            BoundaryMode::Torus => Metric::Torus {
                width: self.width(),
                height: self.height(),
            },
        }
    }
}

fn wrap_coord<T: Scalar>(v: T, lo: T, span: T) -> T {
    let mut r = (v - lo) % span;
    if r < T::zero() {
        r = r + span;
    }
    // (-tiny % span) + span can round up to span itself
    if r >= span {
        r = T::zero();
    }
    lo + r
}

/// Distance used when building graphs and summing interference.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Metric<T> {
    Euclidean,
    /// Minimum-image distance on a flat torus with the given periods.
    Torus { width: T, height: T },
}

impl<T: Scalar> Metric<T> {
    #[inline]
    pub fn offset(&self, a: &Point<T>, b: &Point<T>) -> (T, T) {
        let dx = (a.x - b.x).abs();
        let dy = (a.y - b.y).abs();
        match *self {
            Metric::Euclidean => (dx, dy),
            Metric::Torus { width, height } => (dx.min(width - dx), dy.min(height - dy)),
        }
    }

    #[inline]
    pub fn distance(&self, a: &Point<T>, b: &Point<T>) -> T {
        let (dx, dy) = self.offset(a, b);
        dx.hypot(dy)
    }

    #[inline]
    pub fn distance_squared(&self, a: &Point<T>, b: &Point<T>) -> T {
        let (dx, dy) = self.offset(a, b);
        dx * dx + dy * dy
    }
}
