//! Worked discourses embedded with the crate.
//!
//! Each fixture is a self-contained `.slt` theory for one discourse,
//! paired with the machine-format report the analysis is expected to
//! produce byte for byte. The fixtures double as documentation: read the
//! comment atop each file for the sentence it encodes.

pub struct Fixture {
    pub name: &'static str,
    pub source: &'static str,
    pub golden_report: &'static str,
}

macro_rules! fixtures {
    ($($name:literal),+ $(,)?) => {
        &[$(Fixture {
            name: $name,
            source: include_str!(concat!("../corpus/", $name, ".slt")),
            golden_report: include_str!(concat!("../corpus/golden/", $name, ".report.json")),
        }),+]
    };
}

pub const FIXTURES: &[Fixture] = fixtures![
    "tweety",
    "buganda_bald",
    "france_bald",
    "buganda_exists",
    "buganda_exists_contradicted",
    "buganda_not_exist",
    "regret",
    "regret_then_cancelled",
    "strike",
    "sherlock",
    "pele",
    "ross_zeus_unknown",
    "ross_zeus_eow",
    "usat_not_dsat",
];

pub fn fixture(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}
