//! Empty on purpose; see `tests/acceptance.rs`.
