//! Shared fixtures for the benchmark targets.

use ddl_core::exactalg::{int, rat};
use ddl_core::flow::{lattice_at, FlowPoint};
use ddl_core::{catalog, MatrixCurve};

/// The parabola's lattice at `s = 2/7`, `N = 2^j`.
pub fn parabola_point(j: u32) -> FlowPoint {
    lattice_at(&catalog::parabola(), &rat(2, 7), &int(1i64 << j)).expect("2/7 lies on the curve")
}

/// A `2 x 4` polynomial curve that is generic at `0`.
pub fn wide_curve() -> MatrixCurve {
    MatrixCurve::from_polys(
        &[&["s", "s^2", "s^3", "2*s + s^4"], &["s^2 - s", "s", "1 + s^3", "s^2"]],
        int(0),
        int(1),
    )
    .expect("polynomial entries")
}
