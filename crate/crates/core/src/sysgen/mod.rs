//! Degree balancing, coefficient-system generation, comparison with the reference
//! transcription, and the `m = 1` branch solver.

mod balance;
mod solve;
mod system;

pub use balance::*;
pub use solve::*;
pub use system::*;
