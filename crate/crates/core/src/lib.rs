//! Exact computer algebra for finitely presented augmented algebras over
//! GF(p): noncommutative Groebner bases, free resolutions of the trivial
//! module (recursive quiver-of-chains construction and twisted tensor
//! product complexes), cohomology dimensions, and identity verification
//! suites at desk scale.

pub mod anick;
pub mod cohom;
pub mod freealg;
pub mod gfp;
pub mod presets;
pub mod report;
pub mod rewrite;
pub mod suites;
pub mod ttp;
