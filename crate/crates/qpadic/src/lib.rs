//! Exact p-adic computer algebra kernel: skew-Tate algebras with Gauss
//! norms, Weierstrass division, the quantized enveloping algebra U_q(sl2)
//! and variants, its quantum double, and the duality pairing with the
//! quantum coordinate ring of SL_q(2).

pub mod checks;
pub mod error;
pub mod scalars;
pub mod qalgebra;
pub mod qdouble;
pub mod skewseries;
pub mod slq2;
pub mod weierstrass;

pub use error::{Error, Result};
pub use scalars::{PPower, PadicScalar, QParams};
