//! The JSON documents read and written by the command-line tool.
//!
//! cargo run --example file_formats

use majorana::io::{constellation_to_json, parse_document, state_to_json, Document};
use majorana::{Constellation, SpinLabel, SpinState, Star};

fn main() -> majorana::Result<()> {
    let psi = SpinState::noon(SpinLabel::new(2));
    let text = state_to_json(&psi);
    println!("state document:\n{text}");

    let stars = Constellation::from_stars(vec![Star::from_angles(1.0, 0.5), Star::south()]);
    let text_c = constellation_to_json(&stars);
    println!("constellation document:\n{text_c}");

    // either kind parses through the same entry point
    for doc in [&text, &text_c] {
        match parse_document(doc)? {
            Document::State(s) => println!("parsed a state, spin {}, bit-exact: {}", s.spin(), s.amps() == psi.amps()),
            Document::Constellation(c) => println!("parsed {} stars, {} at infinity", c.stars().len(), c.n_infinite()),
        }
    }

    let err = parse_document(r#"{"two_s": 1, "amps": [[0.6, 0.0], [0.7998, 0.0]]}"#).unwrap_err();
    println!("rejected: {err}");
    Ok(())
}
