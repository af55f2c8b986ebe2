//! Exact combinatorics of Newton polyhedra.
//!
//! The crate computes, without floating point in any exact path:
//!
//! * convex hulls of lattice points with full face lattices, normalized
//!   volumes, and lattice-relative face volumes ([`polytope`]);
//! * Newton-polygon slope data and curve weight multiplicities by two
//!   independent methods ([`polygon`], [`curve`]);
//! * signed weight vectors of compactly supported cohomology for curves and
//!   surfaces, and the stratification assembly for surfaces in the 3-torus
//!   ([`signed`], [`surface`]);
//! * exact lattice-point counts, per-residue-class interior counts, and the
//!   derived Hodge-Deligne tables ([`lattice`], [`hodge`]);
//! * Eulerian numbers, the convolved descent distribution, adjoint Hodge
//!   numbers and the numerical non-density conditions ([`hodge`]);
//! * big-monodromy certificates and the prime-truncation search
//!   ([`monodromy`]);
//! * a finite-field brute-force oracle for nondegeneracy, point counts, and
//!   Weil-style bound checks ([`ff`]).

pub mod curve;
pub mod error;
pub mod ff;
pub mod hodge;
pub mod json;
pub mod lattice;
pub mod monodromy;
pub mod polygon;
pub mod polytope;
pub mod signed;
pub mod surface;

pub use error::{Error, Result};

/// Cell budget for brute-force enumerations.
///
/// The default of 10^9 candidate cells keeps every desk-scale computation in
/// this crate comfortably inside a few seconds while failing predictably on
/// runaway inputs. The `NTW_BUDGET` environment variable overrides it.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub cells: u128,
}

impl Default for Budget {
    fn default() -> Self {
        let cells = std::env::var("NTW_BUDGET")
            .ok()
            .and_then(|s| s.trim().parse::<u128>().ok())
            .unwrap_or(1_000_000_000);
        Budget { cells }
    }
}

impl Budget {
    pub fn new(cells: u128) -> Self {
        Budget { cells }
    }

    /// Fails with `BudgetExceeded` if `estimate` cells would overrun the budget.
    pub fn check(&self, estimate: u128) -> Result<()> {
        if estimate > self.cells {
            Err(Error::BudgetExceeded {
                estimate,
                budget: self.cells,
            })
        } else {
            Ok(())
        }
    }
}
