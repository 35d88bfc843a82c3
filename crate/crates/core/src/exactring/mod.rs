//! Exact coefficient domains: the rationals, prime and extension fields,
//! rational function fields over them, and odd residue rings `Z/n`.
//!
//! Every element carries its [`Ring`]. Payloads are always canonical
//! (reduced fractions, least residues, reduced polynomial residues, coprime
//! numerator/denominator with monic denominator), so `==` is equality in the
//! ring.

mod elem;
mod fpoly;
mod parse;
mod poly;
mod ring;
mod roots;

pub use elem::RingElem;
pub use parse::{parse_elem, parse_elem_list, split_list};
pub use poly::Poly;
pub use ring::{Ring, RingDescriptor};
pub use roots::{canonical_cmp, is_square, poly_roots, poly_roots_flat, poly_sqrt, pow_mod};

pub(crate) use fpoly::{factor_u64, gcd_u64, inv_mod as inv_mod_u64};
