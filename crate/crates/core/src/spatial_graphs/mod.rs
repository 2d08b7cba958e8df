//! Gilbert and carrier-sense graphs with cell-list neighbor search, plus
//! connected-component statistics.

mod cell_list;
mod components;
mod graph;
pub mod io;

pub use cell_list::CellList;
pub use components::{connected_components, largest_component_fraction, ComponentStats, UnionFind};
pub use graph::{
    build_carrier_sense, build_gilbert, build_gilbert_with_rule, gilbert_edges_brute_force,
    RangeRule, SpatialGraph,
};
