//! Spin-refined quantum invariants of closed oriented 3-manifolds.
//!
//! The crate evaluates the `U_q(sl2)` Reshetikhin–Turaev invariant `τ(M)` of a
//! surgery presentation and its refinement `τ(M, s)` by spin structures, the
//! Turaev–Viro state sum `Z(M)` of a generalized triangulation together with its
//! refinement `Z(M, h)` by first `Z/2`-cohomology classes, and the genus-`g`
//! vector-space data (special colorings, spin projectors, dimensions) of the
//! associated spin TQFT.
//!
//! All quantities are computed at the principal primitive `4r`-th root of unity
//! `A = exp(2πi / 4r)`, `r ≡ 0 (mod 4)`, in arbitrary-precision complex
//! floating point. Linking matrices, characteristic sublinks and cohomology are
//! exact.
//!
//! Module map:
//!
//! * [`arith`]: root-of-unity parameters, [`Scalar`] arithmetic and the basic
//!   constants `ω_i²`, `q_i²`, `ω`, `Δ`.
//! * [`recoupling`]: Temperley–Lieb / Kauffman bracket evaluation with
//!   Jones–Wenzl cabling, theta and tetrahedron networks, 6j symbols, the Hopf
//!   matrix and the circle relations.
//! * [`linkdata`]: framed colored links, linking matrices, signatures.
//! * [`spinalg`]: `GF(2)` machinery: characteristic sublinks, spin evaluation,
//!   Arf invariants and cohomology of triangulations.
//! * [`rtinv`]: closed-manifold `τ(M)`, `τ(M, s)`, splitting and Kirby moves.
//! * [`tvinv`]: generalized triangulations and the (refined) state sums.
//! * [`tqftspace`]: colorings of `G^g`, Verlinde and spin dimensions, cylinder
//!   projectors and the solid-torus example.
//! * [`verify`]: the identity suite shared by the CLI and the test targets.

pub mod arith;
pub mod error;
pub mod gf2;
pub mod linkdata;
pub mod recoupling;
pub mod rtinv;
pub mod spinalg;
pub mod tqftspace;
pub mod tvinv;
pub mod verify;

pub use arith::{Scalar, TheoryParams};
pub use error::{Error, Result};
