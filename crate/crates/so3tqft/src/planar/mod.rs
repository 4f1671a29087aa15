//! Kauffman bracket evaluation of colored planar diagrams.
//!
//! Colored edges are cabled through one Jones–Wenzl projector per strand,
//! crossings become grids of elementary crossings, and the resulting network
//! is contracted by a transfer-matrix sweep over crossingless states.

pub mod coef;
pub mod diagram;
pub mod morse;
pub mod net;
pub mod shapes;
pub mod tangles;
pub mod tl;

pub use coef::{Coef, CoefTable, MAX_P};
pub use diagram::{ColoredDiagram, Component, Role};
pub use morse::Morse;
pub use net::{Net, DEFAULT_WIDTH_CAP};
pub use tl::{jw_projector, TLVector};
