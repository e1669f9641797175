pub mod generators;
pub mod local;
pub mod threshold;

pub use generators::{
    predicted_s_symbol, predicted_sprime_symbol, predicted_unit_symbol, probe_filtration_via_pairing, s_map,
    sprime_map, GenKind, ProbeReport, UnitFiltrationGen, ODD_P_SIGN,
};
pub use local::{gm_symbol, higher_local_symbol, rank_cap, set_rank_cap, wn_symbol, MilnorSymbol};
pub use threshold::{gm_vanishing_threshold, rank2_vanishing_threshold, residue_extension, symbol_vanishing_threshold};
