use rand::Rng;

use crate::scalar::Scalar;

use super::window::Point;

/// Fraction of bounding-box proposals accepted: hexagon area `2*sqrt(3)*a^2`
/// over box area `8*a^2/sqrt(3)`.
pub const HEXAGON_ACCEPTANCE: f64 = 0.75;

/// Whether `p` lies in the regular hexagon with flat sides at `x = center.x +- apothem`.
pub fn hexagon_contains<T: Scalar>(center: &Point<T>, apothem: T, p: &Point<T>) -> bool {
    let sqrt3 = T::lit(3f64.sqrt());
    let dx = (p.x - center.x).abs();
    let dy = (p.y - center.y).abs();
    let circumradius = T::lit(2.0) * apothem / sqrt3;
    dx <= apothem && dy <= circumradius - dx / sqrt3
}

/// Uniform point in the regular hexagon of the given apothem centered at
/// `center`, with flat sides facing the horizontal lattice neighbors.
///
/// Rejection from the bounding box; also returns the number of proposals used.
pub fn sample_uniform_in_hexagon_counted<T: Scalar, R: Rng + ?Sized>(
    center: &Point<T>,
    apothem: T,
    rng: &mut R,
) -> (Point<T>, u32) {
    let sqrt3 = T::lit(3f64.sqrt());
    let circumradius = T::lit(2.0) * apothem / sqrt3;
    let mut proposals = 0;
    loop {
        proposals += 1;
        let dx: T = rng.random_range(-apothem..=apothem);
        let dy: T = rng.random_range(-circumradius..=circumradius);
        if dy.abs() <= circumradius - dx.abs() / sqrt3 {
            return (Point::new(center.x + dx, center.y + dy), proposals);
        }
    }
}

/// Corners of the hexagon used by [`hexagon_contains`], counterclockwise from the top.
pub fn hexagon_vertices<T: Scalar>(center: &Point<T>, apothem: T) -> [Point<T>; 6] {
    let r = T::lit(2.0) * apothem / T::lit(3f64.sqrt());
    let h = r / T::lit(2.0);
    let (x, y) = (center.x, center.y);
    [
        Point::new(x, y + r),
        Point::new(x - apothem, y + h),
        Point::new(x - apothem, y - h),
        Point::new(x, y - r),
        Point::new(x + apothem, y - h),
        Point::new(x + apothem, y + h),
    ]
}

pub fn sample_uniform_in_hexagon<T: Scalar, R: Rng + ?Sized>(
    center: &Point<T>,
    apothem: T,
    rng: &mut R,
) -> Point<T> {
    sample_uniform_in_hexagon_counted(center, apothem, rng).0
}
