//! Exact rational sparse linear algebra: echelon forms, kernels, images,
//! subspace lattice operations, and modular-rank certificates.

mod modular;
mod rref;
mod sparse;
mod subspace;

pub use modular::{
    certify_nullity, is_prime, modular_rank, prime_stream, CertifiedNullity, NullityOutcome,
};
pub use rref::{rref_rows, Echelon};
pub use sparse::{
    sv_axpy, sv_collect, sv_dot, sv_from_dense, sv_get, sv_primitive, sv_scale, sv_to_dense,
    SparseMat, SparseVec,
};
pub use subspace::{image, kernel, normalize_line, rank, Subspace};
