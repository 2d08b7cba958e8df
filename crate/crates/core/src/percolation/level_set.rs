use crate::scalar::Scalar;

use super::site_field::BinaryGrid;

/// Scalar values on a rectangular grid, indexed `(column, row)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ValueGrid<T> {
    pub nx: usize,
    pub ny: usize,
    pub values: Vec<T>,
}

impl<T: Scalar> ValueGrid<T> {
    pub fn from_fn<F: FnMut(usize, usize) -> T>(nx: usize, ny: usize, mut f: F) -> Self {
        let mut values = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                values.push(f(i, j));
            }
        }
        Self { nx, ny, values }
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.values[j * self.nx + i]
    }

    pub fn min(&self) -> Option<T> {
        self.values.iter().copied().reduce(T::min)
    }

    pub fn max(&self) -> Option<T> {
        self.values.iter().copied().reduce(T::max)
    }

    pub fn threshold(&self, level: T, direction: LevelDirection) -> BinaryGrid {
        BinaryGrid::from_fn(self.nx, self.ny, |i, j| {
            let v = self.get(i, j);
            match direction {
                LevelDirection::SubLevel => v <= level,
                LevelDirection::SuperLevel => v >= level,
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelDirection {
    /// `{v <= M}`
    SubLevel,
    /// `{v >= M}`
    SuperLevel,
}

/// Left-right crossing of the level set `{v <= M}` or `{v >= M}`.
pub fn level_set_crossing<T: Scalar>(grid: &ValueGrid<T>, level: T, direction: LevelDirection) -> bool {
    grid.threshold(level, direction).crosses_left_right()
}
