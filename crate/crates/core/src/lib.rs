//! p-adic character neural networks.
//!
//! The network `x -> C chi(Ax + b)` uses a single injective p-adic
//! character `chi` on `Zp` as its activation. Everything is computed
//! exactly on residues modulo powers of `p`:
//!
//! - [`padic`]: residues, scaled values `p^(-F) u`, valuations, inverses.
//! - [`characters`]: three ways to evaluate `a^x`, `exp_p`, the Iwasawa
//!   logarithm, injectivity and inversion.
//! - [`network`]: the forward map and the sum/product/stacking
//!   combinators used to build approximants.
//! - [`polysys`]: sparse integer polynomials and compilation of the
//!   training residual into a polynomial system.
//! - [`solver`]: digit dynamic programming for the exact l-infinity
//!   minimum, a brute-force oracle, and the training driver.
//! - [`cli`]: the `padic-charnet` command-line front end.

pub mod characters;
pub mod cli;
pub mod error;
pub mod network;
pub mod padic;
pub mod polysys;
pub mod solver;

pub use characters::{Character, EvalMethod};
pub use error::{Error, Result};
pub use network::{CharacterNetwork, Dataset};
pub use padic::{PadicContext, PadicResidue, ScaledPadic, Valuation};
