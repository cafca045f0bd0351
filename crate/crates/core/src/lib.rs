//! Exact computer algebra for the hyperbolic (generalized Weyl) presentation
//! of a `q`-deformation of `U(sl2)` generated by `e, f, h` with
//!
//! ```text
//! q h e - e h = 2 e,    h f - q f h = -2 f,    e f - q f e = h + (1 - q)/4 h^2.
//! ```
//!
//! Layers, bottom up:
//!
//! * [`qfield`]: the coefficient field `Q(v)`, `q = v^2`, and `R = Q(v)[xi, h]`.
//! * [`gwa`]: canonical forms and multiplication in `R{theta, xi}` for any
//!   automorphism `theta` of `R`.
//! * [`jz`]: the concrete algebra, its Casimir element, a PBW rewriting
//!   oracle, and the identity suite.
//! * [`spectrum`]: classification of closed points `(xi - alpha, h - beta)`.
//! * [`repmod`]: the associated irreducible weight modules and their checks.
//! * [`cli`]: the batch front end.

pub mod cli;
pub mod gwa;
pub mod jz;
pub mod qfield;
pub mod repmod;
pub mod spectrum;
