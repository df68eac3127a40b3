//! Comparison algorithms sharing the GMPA substrate.

pub mod de;
pub mod gwo;
pub mod mpa;
pub mod pso;
pub mod random;

pub use de::{run_de, DeConfig};
pub use gwo::{run_gwo, GwoConfig};
pub use mpa::{run_mpa, MpaConfig};
pub use pso::{run_pso, PsoConfig};
pub use random::run_random_search;
