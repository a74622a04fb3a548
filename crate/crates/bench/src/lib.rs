//! Shared fixtures for the benchmarks.

use algdyn::{System, SystemConfig};

pub fn stock(name: &str) -> System {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(format!("{name}.toml"));
    System::from_config(&SystemConfig::from_path(&path).expect("stock config"), 128).expect("stock system")
}
