//! Shared fixtures for the benchmarks.

use ctqmc_core::generators::{Boundary, Geometry};
use ctqmc_core::{eigenbasis, superop_of, EigenChannelBasis, KrausChannel};

/// Basis of the PQ channel with `p = 5/6`, `q = 2/3`, `r = 0`.
pub fn pq_basis() -> EigenChannelBasis {
    let ch = KrausChannel::pq(5.0 / 6.0, 2.0 / 3.0, 0.0).expect("valid channel");
    eigenbasis(&superop_of(&ch).expect("normalized")).expect("Hermitian")
}

pub fn pq_channel() -> KrausChannel {
    KrausChannel::pq(5.0 / 6.0, 2.0 / 3.0, 0.0).expect("valid channel")
}

pub fn geometries() -> [(&'static str, Geometry); 4] {
    [
        ("line", Geometry::Line),
        ("absorbing", Geometry::HalfLine(Boundary::Absorbing)),
        ("reflecting", Geometry::HalfLine(Boundary::Reflecting)),
        ("segment", Geometry::Segment { sites: 20, left: Boundary::Absorbing, right: Boundary::Reflecting }),
    ]
}
