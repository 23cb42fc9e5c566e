//! Construction and exact desk-scale analysis of CSS quantum codes built
//! from Cayley graphs over `F_2^r`, together with the hypercube
//! pseudo-border combinatorics that lower-bound their minimum distance.
//!
//! Module map:
//! - [`gf2`]: bit-packed GF(2) linear algebra and increasing-weight search;
//! - [`cayley`]: the Cayley graph of a generator matrix and its local
//!   structure;
//! - [`border`]: borders and pseudo-borders as vertex-set predicates;
//! - [`css`]: the `[[N, K, D]]` parameter computation;
//! - [`hypercube`]: local pseudo-borders of the hypercube, flips, layer
//!   counting and exact minimal searches;
//! - [`bounds`]: closed-form lower bounds in exact arithmetic;
//! - [`verify`]: named check suites over all of the above.

pub mod bounds;
pub mod border;
pub mod cayley;
pub mod css;
pub mod gf2;
pub mod hypercube;
pub mod sampling;
pub mod verify;
