//! Exact computations with Sullivan algebras, homotopies of dg algebra maps,
//! L∞-algebras and their Maurer–Cartan elements, and the additive action of
//! degree −1 linear maps on morphism sets.

pub mod acceptance;
pub mod algebra;
pub mod cdga;
pub mod ce;
pub mod error;
pub mod fixture;
pub mod gauge;
pub mod graded;
pub mod homotopy;
pub mod interval;
pub mod linalg;
pub mod linf;
pub mod poly;
pub mod random;

pub use algebra::{DgAlgebra, Degree, Ground};
pub use cdga::{CdgaMorphism, Element, FreeCdga, Monomial, SullivanOrder};
pub use error::{Error, Result};
pub use graded::{GradedBasis, GradedMap, Scalar};
pub use interval::{Interval, IntervalElement};
pub use linf::{LInfinityAlgebra, MCElement, MCPath, NilpotencyBound};
pub use ce::{chevalley_eilenberg, ce_sullivan_filtration, CEPresentation};
pub use homotopy::{
    compose_homotopies, gl_act, gs_act, gs_collapse, theta, theta_inverse, GlElement, GsElement,
    Homotopy,
};
pub use gauge::{
    bch, gauge_act, gauge_flow, gauge_to_additive, orbit_compare, path_to_additive, GaugeElement,
    OrbitReport,
};
pub use fixture::{parse_fixture, Fixture};
