pub mod error;
pub mod poly;
pub mod jet;
pub mod parse;
pub mod counter;
pub mod equation;
pub mod variety;
pub mod invariants;
pub mod formula;
pub mod job;
