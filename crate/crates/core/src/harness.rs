//! Graph generators and the benchmark runner.

pub mod bench;
pub mod gen;
pub mod rng;

pub use bench::{run_bench, BenchRecord};
pub use gen::{generate, Family, GenError, GenSpec, WeightModel};
pub use rng::SeededRng;
