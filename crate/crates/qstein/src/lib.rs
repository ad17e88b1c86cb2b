pub mod algebras;
pub mod azb;
pub mod cli;
pub mod combination;
pub mod envelope;
pub mod hopf;
pub mod qcomb;
pub mod scalar;
pub mod seminorm;
pub mod skew;
pub mod transform;
