pub mod cli;
pub mod exact;
pub mod homspace;
pub mod rootsys;
pub mod ulrichcheck;
pub mod verify;
