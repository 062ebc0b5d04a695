pub mod bits;
pub mod error;
pub mod galois;
pub mod order;
pub mod quartet;
pub mod classification;
pub mod concept_lattice;
pub mod io;
pub mod generate;
pub mod verify;
