//! Centers of integral group rings of finite groups: class algebras,
//! character tables over cyclotomic fields, and an exhaustive search for
//! integral isomorphisms between centers.

#![allow(clippy::needless_range_loop)]

pub mod builtin;
pub mod center;
pub mod char_table;
pub mod class_algebra;
pub mod cli_io;
pub mod cyclotomic;
pub mod group;
pub mod iso;

pub use center::CenterData;
pub use char_table::CharacterTable;
pub use class_algebra::{CentralElement, ClassAlgebra};
pub use cyclotomic::CycNum;
pub use group::FiniteGroup;
