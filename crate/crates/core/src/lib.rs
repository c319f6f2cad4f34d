//! Minimal linear codes c(u,v) = (u f_D(x) + Tr(vx))_{x ≠ 0} from subsets D of F_{q^m}^*:
//! partial difference set certificates, character sums, minimality checks,
//! cutting blocking sets, automorphisms, and secret sharing on the dual code.

pub mod automorphism;
pub mod blocking;
pub mod charsum;
pub mod code;
pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod linalg;
pub mod lincode;
pub mod minimality;
pub mod par;
pub mod pds;
mod poly;
pub mod recipes;
pub mod sss;
pub mod subset;

pub use cyclotomic::CyclotomicInt;
pub use error::{Error, Result};
pub use field::{Elem, FieldSpec, FieldTower, Level, Subspace};
pub use par::Exec;
pub use poly::default_modulus_table;
pub use subset::{Origin, QuadricKind, SubsetD};
