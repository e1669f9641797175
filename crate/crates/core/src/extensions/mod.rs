//! Embeddings of discrete valuation fields and level comparisons along them.

pub mod compare;
pub mod embedding;

pub use compare::{
    compare_levels, default_family, thmb_witness, thmc_witness, verify_lemma88, FamilyEntry, Lemma88Report,
    LevelComparison, ThmBReport, ThmCReport,
};
pub use embedding::{
    apply_embedding, make_perfect_residue_extension, make_tame_extension, make_wild_extension, DVEmbedding, ResidueKind,
};
