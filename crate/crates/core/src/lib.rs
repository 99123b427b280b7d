//! Gabriel-Roiter measures of finite-length quiver representations over
//! prime fields, together with the order-theoretic structure around them:
//! submodule lattices, the embeds-in-a-power preorder, submodule-closed
//! subcategories of finite desk models, Galois adjunctions and quotient
//! identities, the GR filtration, and the Kronecker algebra's closed-form
//! values as ground truth.
//!
//! All arithmetic is exact, over F_p for p in {2, 3, 5, 7}. Every
//! exhaustive search runs under an explicit cap and fails loudly with
//! [`Error::CapExceeded`] instead of truncating.

pub mod error;
pub mod grm;
pub mod io;
pub mod kronecker;
pub mod linalg;
pub mod measures;
pub mod quiver;
pub mod subcat;
pub mod submod;

pub use error::{Error, Result};

/// Budget for exhaustive enumerations. `enum_cap` bounds vector and
/// submodule scans (p^length and friends), `hom_cap` bounds searches over
/// hom and endomorphism spaces (p^dim).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub enum_cap: u64,
    pub hom_cap: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { enum_cap: linalg::DEFAULT_ENUM_CAP, hom_cap: linalg::DEFAULT_ENUM_CAP }
    }
}
