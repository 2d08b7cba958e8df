use crate::error::{Error, Result};
use crate::point_processes::{Point, PointPattern, Window};
use crate::scalar::Scalar;

/// Closed axis-aligned rectangle; zero width or height is allowed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rect<T> {
    pub x_min: T,
    pub x_max: T,
    pub y_min: T,
    pub y_max: T,
}

impl<T: Scalar> Rect<T> {
    pub fn new(x_min: T, x_max: T, y_min: T, y_max: T) -> Result<Self> {
        if !(x_min <= x_max && y_min <= y_max) {
            return Err(Error::geometry(format!(
                "rectangle [{x_min}, {x_max}] x [{y_min}, {y_max}] is inverted"
            )));
        }
        Ok(Self { x_min, x_max, y_min, y_max })
    }

    pub fn point(p: Point<T>) -> Self {
        Self {
            x_min: p.x,
            x_max: p.x,
            y_min: p.y,
            y_max: p.y,
        }
    }

    pub fn square(center: Point<T>, side: T) -> Self {
        let h = side / T::lit(2.0);
        Self {
            x_min: center.x - h,
            x_max: center.x + h,
            y_min: center.y - h,
            y_max: center.y + h,
        }
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

    pub fn perimeter(&self) -> T {
        T::lit(2.0) * (self.width() + self.height())
    }

    /// Area of the set of points within `r` of the rectangle.
    pub fn dilated_area(&self, r: T) -> T {
        self.area() + self.perimeter() * r + T::PI() * r * r
    }

    pub fn distance_to(&self, p: &Point<T>) -> T {
        let dx = (self.x_min - p.x).max(p.x - self.x_max).max(T::zero());
        let dy = (self.y_min - p.y).max(p.y - self.y_max).max(T::zero());
        dx.hypot(dy)
    }

    /// Half-open membership `[x_min, x_max) x [y_min, y_max)`, used for counts.
    pub fn contains_half_open(&self, p: &Point<T>) -> bool {
        p.x >= self.x_min && p.x < self.x_max && p.y >= self.y_min && p.y < self.y_max
    }

    /// Whether the interiors intersect.
    pub fn overlaps(&self, other: &Self) -> bool {
        self.x_min < other.x_max && other.x_min < self.x_max && self.y_min < other.y_max && other.y_min < self.y_max
    }

    /// Whether the `r`-neighborhood lies inside the window.
    pub fn dilation_inside(&self, r: T, window: &Window<T>) -> bool {
        self.x_min - r >= window.x_min
            && self.x_max + r <= window.x_max
            && self.y_min - r >= window.y_min
            && self.y_max + r <= window.y_max
    }

    pub fn count(&self, pattern: &PointPattern<T>) -> usize {
        pattern.points.iter().filter(|p| self.contains_half_open(p)).count()
    }
}
