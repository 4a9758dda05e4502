//! Shared fixtures for the benchmark suite.

use rootcomp_core::{AffineType, CartanData, Weight};

pub fn cartan(label: &str) -> CartanData {
    CartanData::new(label.parse::<AffineType>().expect("valid type label"))
}

pub fn weight(cd: &CartanData, literal: &str) -> Weight {
    Weight::parse(cd, literal).expect("valid weight literal")
}
