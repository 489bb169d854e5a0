//! Doubly-even binary codes and the structures built from them: the code
//! operad, Adinkra chromotopologies with odd-dashings, Moufang code loops,
//! and the dessins of chromotopologies.

pub mod adinkra;
pub mod codeloop;
pub mod codes;
pub mod dessin;
pub mod error;
pub mod gf2;
pub mod operad;
pub mod perm;
pub mod verify;

pub use codes::{enumerate_doubly_even, BinaryCode};
pub use error::{Error, Result};
pub use gf2::{BitWord, GF2Matrix};
pub use perm::Permutation;
