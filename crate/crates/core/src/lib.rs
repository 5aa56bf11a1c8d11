//! Exact-integer machinery for primitive Pythagorean triples, gnomon
//! arithmetic, Euler bricks, and the perfect-cuboid search.
//!
//! The crate is organized around one constructive pipeline and one
//! independent check of it:
//!
//! * [`ppt`] enumerates primitive triples in a canonical two-level order via
//!   generating squares S = 2tl, and inverts legs back to their generators.
//! * [`gnomon`] represents leg squares as arithmetic progressions of odd
//!   numbers and transforms them while preserving area.
//! * [`brick`] intersects leg truncations to construct Euler bricks (integer
//!   edges and face diagonals), their alternatives, and a parametric family.
//! * [`scan`] sweeps the table, deduplicates bricks, tests every one for an
//!   integer space diagonal, and checkpoints so long runs can resume.
//! * [`oracle`] is deliberately independent ground truth: classical (m, n)
//!   triple enumeration, an exhaustive brick search, and the Stirling
//!   recurrence behind the counting laws.
//!
//! All arithmetic is integer-exact; squares and sums of squares are computed
//! in 128-bit intermediates and anything that would leave the supported
//! range fails loudly instead of wrapping.

pub mod brick;
pub mod error;
pub mod factor;
pub mod gnomon;
pub mod oracle;
pub mod ppt;
pub mod scan;

pub use error::{Error, Result};
