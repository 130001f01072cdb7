//! Independence number of uniform random cographs and the longest increasing
//! subsequence of uniform random separable permutations: combinatorial
//! structures, exact and floating enumeration, exact-uniform samplers,
//! saddle-point asymptotics, the Brownian cographon limit, and brute-force
//! oracles used to cross-check all of the above.

pub mod asymptotics;
pub mod brownian;
pub mod oracle;
pub mod sampling;
pub mod series;
pub mod statistics;
pub mod structures;

pub use structures::{Cotree, Decoration, Graph, Permutation, SchroderTree, Sign};
