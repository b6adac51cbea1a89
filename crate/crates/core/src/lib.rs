//! Exact enumeration of permutations that avoid nonconsecutive instances of
//! 2- and 3-letter patterns: a permutation may contain the pattern, but only
//! on adjacent positions.
//!
//! The crate pairs every count with an independent route to it: brute force
//! over `S_n` ([`oracle`]), closed forms and recurrences ([`counting`]),
//! generating functions over exact rationals ([`series`]) and explicit
//! bijections ([`bijections`]).

pub mod bijections;
pub mod cli;
pub mod counting;
pub mod error;
pub mod oracle;
pub mod perm;
pub mod series;

pub use counting::BigCount;
pub use error::{Error, Result};
pub use oracle::{ClassLabel, Execution, Oracle};
pub use perm::{Occurrence, Pattern, Permutation};
pub use series::PowerSeries;
