//! Modulus of rational maps into split groups and Swan conductors.

pub mod group;
pub mod place;
pub mod swan;

pub use group::{
    candidate_places, check_embedding_independence, check_embedding_independence_local, localize, mod_at_place, mod_v,
    modulus_divisor, EmbeddingReport, GroupPoint, ModulusDivisor, SplitGroupDescriptor,
};
pub use place::{completion_at_place, global_ctx, LocalField, Place};
pub use swan::{asw_reduce, refined_swan, render_rsw, swan_conductor, verify_prop48, Prop48Report};
