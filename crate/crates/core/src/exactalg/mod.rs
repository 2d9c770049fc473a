//! Exact scalar and polynomial arithmetic, plus certified ball numerics.

pub mod ball;
pub mod cheb;
pub mod isolate;
pub mod laurent;
pub mod linalg;
pub mod poly;
pub mod resultant;
pub mod roots;

pub use ball::{ComplexBall, Dyadic, Mag, DEFAULT_PRECISION};
pub use cheb::{cheb_e, cheb_t};
pub use isolate::isolate_roots;
pub use laurent::{compose_laurent, LaurentPoly1, LaurentPoly2};
pub use poly::{rat, UniPoly};
pub use roots::{distinct_roots_excluding, multiplicity_at, squarefree_part, strip_roots};
