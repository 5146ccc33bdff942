pub mod error;
pub mod fock;
pub mod geom;
pub mod partitions;
pub mod rmatrix;
pub mod shuffle;
pub mod symfun;
pub mod verify;

pub use error::{CoreError, Result};
pub use partitions::Partition;
