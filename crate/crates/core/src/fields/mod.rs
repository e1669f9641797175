//! Coefficient fields and rings: finite fields, rational function fields and
//! their perfections, Galois rings, and precision-tracked Laurent series.

pub mod descriptor;
pub mod forms;
pub mod fq;
pub mod galois;
pub mod parse;
pub mod ratfn;
pub mod ring;
pub mod series;
pub mod upoly;

pub use descriptor::FieldDescriptor;
pub use forms::LogForm;
pub use fq::{FqCtx, FqEmbedding};
pub use galois::GaloisRing;
pub use ring::{Elem, FormSymbol, Ring};
pub use series::Series;
