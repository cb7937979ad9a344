pub mod circle;
pub mod cli;
pub mod coloring;
pub mod distance;
pub mod exact;
pub mod exec;
pub mod generators;
pub mod geom;
pub mod pct;
pub mod svg;
pub mod tiling;
pub mod triangles;
