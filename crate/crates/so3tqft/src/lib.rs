//! Exact computation for the SO(3) TQFT at an odd prime `p`.
//!
//! The crate is layered bottom-up:
//!
//! * [`cyclo`], [`ideal`], [`linalg`]: arithmetic in `Q(ζ_4p)`, ideals of its
//!   integer rings as Hermite normal forms, and exact linear algebra.
//! * [`planar`]: Kauffman bracket evaluation of colored diagrams through
//!   Jones–Wenzl projectors and a transfer-matrix sweep.
//! * [`recoupling`]: loop, theta, tetrahedron and 6j values, twists, the Hopf
//!   matrix and the surgery element ω.
//! * [`lollipop`]: lollipop trees, small colorings and exponent bookkeeping.
//! * [`lattice`]: the bases `B`, `B♯`, Gram matrices and mod-`h` forms.
//! * [`invariants`]: surgery invariants, mapping tori and the lollipop suite.
//! * [`fkb`]: the obstruction ideal of a knot complement in a solid torus.
//! * [`checks`]: named end-to-end checks shared by the CLI and the tests.

pub mod checks;
pub mod cyclo;
pub mod error;
pub mod fkb;
pub mod ideal;
pub mod invariants;
pub mod lattice;
pub mod linalg;
pub mod lollipop;
pub mod planar;
pub mod recoupling;

pub use cyclo::{make_context, CycloElem, IdealRing, PrimeContext, RingKind};
pub use error::{Error, Result};
pub use ideal::IdealLattice;
