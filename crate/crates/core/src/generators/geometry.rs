use std::fmt;

use crate::error::{Error, Result};

/// Behaviour at the end vertex of a lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    /// Mass leaving through the end is lost.
    Absorbing,
    /// Mass that would leave stays on the end vertex.
    Reflecting,
}

/// One-dimensional lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Geometry {
    /// The integers.
    Line,
    /// The non-negative integers with a barrier at 0.
    HalfLine(Boundary),
    /// Sites `0..sites` with a barrier at each end.
    Segment { sites: usize, left: Boundary, right: Boundary },
}

impl Geometry {
    pub fn segment(sites: usize, left: Boundary, right: Boundary) -> Result<Self> {
        if sites < 2 {
            return Err(Error::Validation(format!("a segment needs at least 2 sites, got {sites}")));
        }
        Ok(Geometry::Segment { sites, left, right })
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Geometry::Segment { .. })
    }

    /// True when probability mass is conserved by the lattice.
    pub fn is_conservative(&self) -> bool {
        match *self {
            Geometry::Line => true,
            Geometry::HalfLine(b) => b == Boundary::Reflecting,
            Geometry::Segment { left, right, .. } => left == Boundary::Reflecting && right == Boundary::Reflecting,
        }
    }

    pub fn contains(&self, site: i64) -> bool {
        match *self {
            Geometry::Line => true,
            Geometry::HalfLine(_) => site >= 0,
            Geometry::Segment { sites, .. } => site >= 0 && (site as usize) < sites,
        }
    }

    pub fn check_site(&self, site: i64) -> Result<()> {
        if self.contains(site) {
            Ok(())
        } else {
            Err(Error::Validation(format!("site {site} is outside the {self}")))
        }
    }

    /// Sites covered by an assembled operator: `0..truncation` on the half-line,
    /// `-truncation..=truncation` on the line, all sites on a segment.
    pub fn window(&self, truncation: usize) -> (i64, i64) {
        match *self {
            Geometry::Line => (-(truncation as i64), truncation as i64),
            Geometry::HalfLine(_) => (0, truncation as i64 - 1),
            Geometry::Segment { sites, .. } => (0, sites as i64 - 1),
        }
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Boundary::Absorbing => "absorbing",
            Boundary::Reflecting => "reflecting",
        })
    }
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Geometry::Line => write!(f, "line"),
            Geometry::HalfLine(b) => write!(f, "{b} half-line"),
            Geometry::Segment { sites, left, right } => write!(f, "{sites}-site segment ({left}/{right})"),
        }
    }
}
