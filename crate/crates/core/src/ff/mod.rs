//! Finite fields GF(p^n) and polynomial arithmetic over them.

mod field;
mod irreducible;
pub mod parse;
mod poly;
mod table;

pub use field::{prime_power, FieldSpec, FqElem, MAX_ORDER};
pub use irreducible::{
    count_irreducible, factor, factor_with, is_irreducible, poly_phi, poly_phi_f64,
    poly_von_mangoldt, Factorization,
};
pub use poly::{raw, FqPoly};
pub use table::{
    decode, encode, enumerate_polys, from_index, index_of, IrreducibleTable, LambdaTable,
    PolyRange,
};
pub(crate) use table::bounded_order_power;
