//! Quantum Grothendieck rings of type A.
//!
//! The crate implements the quantum torus `𝒴_{n,t}`, the skew pairing `𝒩`,
//! fundamental q-characters, the standard and canonical bases of `K_t(𝒞_n)`
//! and the quantum inflations `K_t(𝒞_n) → K_t(𝒞_ñ)` attached to increasing
//! maps `[1,n] → [1,ñ]`, together with checks of the bosonic-extension relations.

pub mod bosonic;
pub mod error;
pub mod heightmap;
pub mod inflate;
pub mod klbasis;
pub mod pairing;
pub mod qchar;
pub mod torus;
pub mod verify;

pub use error::{Error, Result};
pub use torus::{CommutativePoly, TCoeff, TorusElement, Vertex, YMonomial};
