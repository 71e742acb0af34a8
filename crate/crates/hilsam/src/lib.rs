//! hilsam: exact commutative-algebra computations for Hilbert-Samuel
//! functions of parameter ideals in presented Noetherian local rings.
//!
//! The toolkit works with rings R = S/J localized at the image of the origin,
//! where S is a polynomial ring over Q or a prime field.  On top of a
//! deterministic Groebner engine it computes lengths lambda_R(R/Q^n), fits
//! Hilbert coefficients e_0..e_d in the alternating binomial basis, certifies
//! sequence conditions (regular, d-sequence, superficial), and runs a small
//! lab of executable theorem checks (non-positivity bounds, the colon-length
//! formula for e_d, vanishing characterizations, idealization cross-checks)
//! over a built-in corpus of rings.
//!
//! Everything is exact: no floats anywhere.  All randomized search is seeded
//! and reproducible, and every public computation is deterministic -- same
//! input, byte-identical output, regardless of thread count.

pub mod error;
pub mod field;
pub mod hilbert;
pub mod ideal;
pub mod monomial;
pub mod poly;
pub mod ring;
pub mod ringfile;
pub mod sequences;
pub mod theorems;

pub use error::{Error, Result};
pub use field::{FieldElem, FieldSpec};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{PolyRing, Polynomial};

pub(crate) mod par {
    //! Data-parallel map with a sequential fallback: the `parallel` feature
    //! routes through rayon, otherwise a plain iterator.  Both preserve input
    //! order, so results are identical either way.

    #[cfg(feature = "parallel")]
    pub fn map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
    where
        T: Send,
        U: Send,
        F: Fn(T) -> U + Sync + Send,
    {
        use rayon::prelude::*;
        items.into_par_iter().map(f).collect()
    }

    #[cfg(not(feature = "parallel"))]
    pub fn map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
    where
        F: Fn(T) -> U,
    {
        items.into_iter().map(f).collect()
    }

    /// Always-sequential variant, kept for benchmarking the two paths
    /// against each other.
    pub fn map_seq<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
    where
        F: Fn(T) -> U,
    {
        items.into_iter().map(f).collect()
    }
}
