pub mod bt;
pub mod count;
pub mod ff;
pub mod graph;
pub mod shift;
pub mod walk;
