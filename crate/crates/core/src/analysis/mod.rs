//! Experiment drivers built on the core modules.

pub mod catalog;
pub mod report;
pub mod search;

pub use catalog::{catalog_get, load_king, NamedState, StateSource};
pub use report::{spectrum_report, SpectrumTable};
pub use search::{max_multipole_search, max_multipole_search_with, random_state, Sampler, SearchConfig, SearchResult};
