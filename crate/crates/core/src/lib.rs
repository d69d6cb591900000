pub mod algebra;
pub mod basis;
pub mod document;
pub mod family;
pub mod germ;
pub mod invariants;
