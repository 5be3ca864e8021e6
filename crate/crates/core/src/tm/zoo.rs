//! Small machines shipped with the crate, halting and looping.

use super::machine::TmSpec;

const SOURCES: [(&str, &str); 12] = [
    ("halt-now", include_str!("../../zoo/halt-now.tm")),
    ("incrementer", include_str!("../../zoo/incrementer.tm")),
    ("eraser", include_str!("../../zoo/eraser.tm")),
    ("bb2", include_str!("../../zoo/bb2.tm")),
    ("bb3", include_str!("../../zoo/bb3.tm")),
    ("writer-5", include_str!("../../zoo/writer-5.tm")),
    ("shuttle-4", include_str!("../../zoo/shuttle-4.tm")),
    ("shuttle-16", include_str!("../../zoo/shuttle-16.tm")),
    ("spin", include_str!("../../zoo/spin.tm")),
    ("walker", include_str!("../../zoo/walker.tm")),
    ("ping-pong", include_str!("../../zoo/ping-pong.tm")),
    ("shuttle-forever", include_str!("../../zoo/shuttle-forever.tm")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    SOURCES.iter().map(|(n, _)| *n)
}

pub fn source(name: &str) -> Option<&'static str> {
    SOURCES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn by_name(name: &str) -> Option<TmSpec> {
    source(name).map(|s| TmSpec::parse(s).expect("zoo machines parse"))
}

pub fn all() -> Vec<(&'static str, TmSpec)> {
    names().map(|n| (n, by_name(n).expect("listed"))).collect()
}
