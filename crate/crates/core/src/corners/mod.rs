//! Complexes of right-angled model cells (pentagons, dodecahedra, 120-cells)
//! glued along facets: strata, embeddedness, colouring and mirroring,
//! thickening, corner angles and local star development.

mod attach;
mod catalog;
mod complex;
mod facets;
mod star;

pub use attach::{attach_above, extension_symmetry, Thickening};
pub use catalog::{CellKind, ModelCatalog, VertexKey};
pub(crate) use complex::{ordered_sign, perm_sign};
pub use complex::{apply_sym, CornerComplex, CornerError, FacetMap, Gluing, ModelCell, Slot, Strata};
pub use facets::{embedded_faces_report, mirror, BoundaryFacets, Colouring};
pub use star::{check_corner_angles, develop_star, CornerReport, Star, StarCell};

#[cfg(test)]
mod tests;
