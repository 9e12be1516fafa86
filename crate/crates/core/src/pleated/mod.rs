//! Pleated surfaces made of tessellation pentagons: topology, vertex links in
//! the octahedral 3-sphere, and self-intersection from push-off weights.

mod path;
mod surface;

pub use path::{glt_weight_exact, glt_weight_monte_carlo, pushoff_count, EdgePath, PathError, Turn, WeightConfig, WeightEstimate};
pub use surface::{surface_topology, PleatedSurface, SelfIntersection, SurfaceError, SurfaceTopology, VertexLink};

#[cfg(test)]
mod tests;
