//! Exact computer algebra for elliptic surfaces built from pairs of
//! 3-isogenous elliptic curves.
//!
//! The crate provides, bottom up:
//!
//! * [`field`] — the [`field::Field`] trait: exact field arithmetic with
//!   context carried by the elements themselves.
//! * [`tower`] — number-field towers `Q(g_1)(g_2)...` with lazy detection of
//!   reducible extensions, automorphisms, and numeric embeddings.
//! * [`poly`] / [`ratfunc`] — dense univariate polynomials and rational
//!   functions over any [`field::Field`]; valuations, substitution,
//!   resultants, squarefree decomposition, rewriting in powers of the
//!   variable.
//! * [`linalg`] — kernels of small matrices over a field.
//! * [`elliptic`] — Weierstrass curves and plane cubics with a marked origin:
//!   group law, invariants, model rescaling, tangents.
//! * [`isogeny`] — the one-parameter family of 3-isogenies used everywhere
//!   downstream, together with its degenerate `j = 0` sibling.
//! * [`inose`] — construction of the elliptic surfaces `F^(n)` attached to a
//!   pair of 3-isogenous curves, the auxiliary cubic pencil, and the
//!   birational map from the pencil to `F^(6)`.
//! * [`sections`] — the conic-through-a-divisor method: produces explicit
//!   sections of `F^(1)`, `F^(2)` and verifies them against closed forms.
//! * [`lattice`] — Kodaira fiber classification, height pairings, Gram
//!   matrices and determinant identities for the Mordell-Weil lattice.
//! * [`fixtures`] — the three named singular-K3 data sets (`x333`, `x323`,
//!   `x303`) with all printed reference values.
//! * [`jsonio`] — deterministic JSON encoding of every public data type.

pub mod error;
pub mod field;
pub mod tower;
pub mod poly;
pub mod ratfunc;
pub mod linalg;
pub mod elliptic;
pub mod isogeny;
pub mod inose;
pub mod sections;
pub mod lattice;
pub mod fixtures;
pub mod jsonio;

pub use error::{CasError, Result};
pub use field::Field;
pub use tower::{FieldAutomorphism, FieldTower, NFElement};
