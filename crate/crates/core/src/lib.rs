pub mod algebroid;
pub mod freefield;
pub mod geometry;
pub mod laurent;
pub mod linalg;
pub mod random;
pub mod scalar;
pub mod veronese;
