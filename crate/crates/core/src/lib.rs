//! Represented matroids over finite fields, with the tools around them:
//! minors and duality, girth and connectivity, perturbation distance,
//! subfield and frame templates, linear-code thresholds and growth rates.
//!
//! ```
//! use matrep::{make_field, Caps, Matrix, Matroid, ReprMatroid};
//!
//! let f = make_field(2, 1)?;
//! let fano_cols: Vec<Vec<u32>> = (1..8u32).map(|c| (0..3).map(|i| c >> i & 1).collect()).collect();
//! let a = Matrix::from_columns(
//!     &f,
//!     matrep::linalg::numbered_labels("r", 3),
//!     matrep::linalg::numbered_labels("p", 7),
//!     &fano_cols,
//! )?;
//! let fano = ReprMatroid::from_generator(&a);
//! let caps = Caps::default();
//! assert_eq!(matrep::matroid::girth(&fano, &caps)?, Some(3));
//! assert_eq!(matrep::matroid::cogirth(&fano, &caps)?, Some(4));
//! # Ok::<(), matrep::Error>(())
//! ```

pub mod codes;
mod caps;
pub mod constructions;
mod error;
pub mod field;
pub mod growth;
pub mod io;
pub mod linalg;
pub mod matroid;
pub mod perturb;
pub mod templates;

pub use caps::Caps;
pub use error::{Error, Result};
pub use field::{field_of_order, make_field, Elem, Field, FiniteField, MultSubgroup, Subfield};
pub use linalg::{Matrix, Subspace};
pub use matroid::{Matroid, OracleMatroid, ReprMatroid};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/matroids.md")]
    mod matroids {}
    #[doc = include_str!("../../../book/src/constructions.md")]
    mod constructions {}
    #[doc = include_str!("../../../book/src/perturbations.md")]
    mod perturbations {}
    #[doc = include_str!("../../../book/src/templates.md")]
    mod templates {}
    #[doc = include_str!("../../../book/src/codes.md")]
    mod codes {}
    #[doc = include_str!("../../../book/src/growth.md")]
    mod growth {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
