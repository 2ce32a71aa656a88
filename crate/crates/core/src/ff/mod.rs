//! Exact arithmetic in `Z_p` and `GF(p^n)`.

mod arith;
mod field;
pub mod poly;
pub mod prime;
mod subfield;

pub use arith::{IndexedField, LOG_TABLE_LIMIT};
pub use field::{make_prime_field, ExtField, FieldDescriptor, FieldElem, MAX_ORDER};
pub use poly::{find_irreducible, is_irreducible};
pub use subfield::{locate_subfield, SubfieldHandle};
