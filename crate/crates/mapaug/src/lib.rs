//! Approximation algorithms for the matching augmentation problem.

pub mod bridge;
pub mod cover;
pub mod exact;
pub mod gen;
pub mod glue;
pub mod graph;
pub mod io;
pub mod matching;
pub mod reduce;
pub mod report;
pub mod special;
pub mod stats;

pub type Rational = num_rational::Ratio<i64>;
