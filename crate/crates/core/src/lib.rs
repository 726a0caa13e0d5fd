//! Exact-arithmetic workbench for crossed products, smash (co)products and
//! crossed biproducts built from structure constants.
//!
//! Sweedler-notation equations are compiled to tensor contractions and checked
//! on every basis tuple; brute-force axiom oracles give the ground truth for
//! each iff-statement.

pub mod error;
pub mod scalar;
pub mod space;
pub mod tensor;
pub mod serial;
pub mod contract;
pub mod sweedler;
pub mod elem;
pub mod bundle;
pub mod structures;
pub mod products;
pub mod conditions;
pub mod catalog;
pub mod instance;
pub mod report;

pub use error::{Error, Result};
pub use scalar::{Field, Scalar};
pub use space::{Role, Space};
pub use tensor::{maps_equal, Equality, LinMap, Tensor};
