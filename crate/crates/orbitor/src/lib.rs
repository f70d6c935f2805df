//! Certification of p-torsion-freeness for spaces built from combinatorial
//! data: toric and torus orbifolds over simple polytopes and manifolds with
//! corners, abstract q-CW building sequences, and weighted Grassmannians.

pub mod charpair;
pub mod cli;
pub mod complexes;
pub mod linalg;
pub mod numio;
pub mod presentation;
pub mod qcw;
pub mod report;
pub mod retraction;
pub mod wgrass;
