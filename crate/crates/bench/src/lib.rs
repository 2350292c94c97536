//! Shared fixtures for the benchmarks.

use coxspec::coxeter::Builtin;
use coxspec::{CayleySystem, SimplexPoint};

/// The icosahedral system and an interior point away from the symmetric ones.
pub fn h3_fixture() -> (CayleySystem, SimplexPoint) {
    let s = CayleySystem::builtin(Builtin::H3).expect("H3 is finite");
    let x = s.point(&[0.2, 0.3, 0.5]).expect("interior weights");
    (s, x)
}
