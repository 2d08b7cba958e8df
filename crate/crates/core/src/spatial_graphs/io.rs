//! Edge-list and component-label CSV export.

use std::io::{BufWriter, Write};

use crate::error::Result;
use crate::scalar::Scalar;

use super::components::ComponentStats;
use super::graph::SpatialGraph;

pub fn write_edges_csv<T: Scalar, W: Write>(graph: &SpatialGraph<T>, out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    writeln!(out, "i,j")?;
    for (i, j) in graph.edges() {
        writeln!(out, "{i},{j}")?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_components_csv<W: Write>(stats: &ComponentStats, out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    writeln!(out, "node,component")?;
    for (node, label) in stats.labels.iter().enumerate() {
        writeln!(out, "{node},{label}")?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point_processes::Metric;
    use crate::spatial_graphs::connected_components;

    #[test]
    fn csv_layout() {
        let g = SpatialGraph::<f64>::from_edges(3, [(0, 2)], Metric::Euclidean).unwrap();
        let mut buf = Vec::new();
        write_edges_csv(&g, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "i,j\n0,2\n");
        let mut buf = Vec::new();
        write_components_csv(&connected_components(&g), &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "node,component\n0,0\n1,1\n2,0\n");
    }
}
