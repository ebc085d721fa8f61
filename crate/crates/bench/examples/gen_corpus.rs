//! Writes the synthetic desk corpus as Matrix Market files.
//!
//!     cargo run --release -p rcmpp-bench --example gen_corpus -- corpus/

use std::path::PathBuf;

fn main() -> std::io::Result<()> {
    let dir = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("corpus"));
    let corpus = rcmpp_bench::synth::desk_corpus();
    for path in rcmpp_bench::synth::write_corpus(&dir, &corpus)? {
        println!("{}", path.display());
    }
    Ok(())
}
