//! Ordinal-valued length, reduced length and Cantor-Bendixson rank of finitely generated
//! modules over `Z`, `GF(p)[x..]`, `Q[x..]` and `Z[x..]`, together with brute-force oracles
//! that recheck the underlying identities on small inputs.
//!
//! The crate is `no_std` and only needs `alloc`. Parsing of ring and module descriptions,
//! JSON output and the command-line interface live in the `lenkrull` crate.

#![no_std]

extern crate alloc;

pub mod length;
pub mod localpid;
pub mod monomial;
pub mod oracles;
pub mod ordinal;
pub mod zmodule;

pub use length::{
    analyze, cb_rank, length_vector, BaseRing, CbResult, CyclicPiece, LengthError, LengthReport,
    LengthVector, ModuleBody, ModuleDescriptor, RingDescriptor,
};
pub use localpid::{cb_rank_local_pid, lengths_local_pid, LocalPidModule};
pub use monomial::{Face, MonomialIdeal, StandardPair};
pub use ordinal::Ordinal;
pub use zmodule::{FactorBound, ZNormalForm, ZPresentation};
