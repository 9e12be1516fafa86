pub mod golden;
pub mod polytopes;
pub mod corners;
pub mod pleated;
pub mod homology;
pub mod scenarios;
