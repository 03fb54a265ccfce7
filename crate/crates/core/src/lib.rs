//! Exact, desk-scale computations around symmetric monoidal categories:
//! finite categories and their nerves, Segal's Γ, rigid duals and
//! categorical traces, Grothendieck constructions, categories of simplices,
//! mixed complexes with the Chern character of idempotents, and the
//! oriented 1-bordism category over `BG`.

pub mod bord;
pub mod checks;
pub mod cli;
pub mod cyclic;
pub mod error;
pub mod fibration;
pub mod field;
pub mod fincat;
pub mod gamma;
pub mod matrix;
pub mod nerve;
pub mod simplices;
pub mod smc;

pub use error::{Error, Result};
