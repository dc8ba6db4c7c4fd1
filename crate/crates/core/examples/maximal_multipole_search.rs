//! Random search for the state maximizing each multipole length, with
//! coherent and NOON states entered as candidates.
//!
//! cargo run --release --example maximal_multipole_search [2S] [samples] [seed]

use majorana::analysis::search::{max_multipole_search_with, Sampler, SearchConfig, SearchResultFile};
use majorana::io::to_json;
use majorana::SpinLabel;

fn main() -> majorana::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("integer argument"));
    let two_s = args.next().unwrap_or(8) as u32;
    let samples = args.next().unwrap_or(2000) as usize;
    let seed = args.next().unwrap_or(1);
    let config = SearchConfig { samples, seed, sampler: Sampler::Haar };
    let result = max_multipole_search_with(SpinLabel::new(two_s), config)?;
    for c in &result.per_k {
        println!("K = {:>2}: ρ_K² = {:.6} from {:?}", c.k, c.best_value, c.source);
    }
    if std::env::var_os("SEARCH_JSON").is_some() {
        println!("{}", to_json(&SearchResultFile::from(&result)));
    }
    Ok(())
}
