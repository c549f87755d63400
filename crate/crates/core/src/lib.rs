pub mod circulant;
pub mod classify;
pub mod cli;
pub mod decomp;
pub mod homology;
pub mod linalg;
pub mod simplex;
