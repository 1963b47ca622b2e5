//! JSON wire formats, seeded generators and property suites.

pub mod gen;
pub mod json;
pub mod par;
pub mod suite;
