//! Numeric tolerances used by the validation checks and the verification
//! suite. Centralized so no check invents its own magic number.

/// Entrywise tolerance for unitarity checks (U·U† = I). Matrix products of
/// exactly-representable entries accumulate only a few ulps per entry.
pub const UNITARITY: f64 = 1e-10;

/// Tolerance for eigenvalue-multiset comparisons after a numeric
/// eigendecomposition.
pub const EIGENVALUE: f64 = 1e-8;

/// Hermiticity defect allowed on a density matrix, max |rho_ij - conj(rho_ji)|.
pub const HERMITICITY: f64 = 1e-12;

/// Allowed deviation of trace(rho) from 1.
pub const TRACE: f64 = 1e-12;

/// Eigenvalue floor for the positive-semidefiniteness check. Hermitian
/// eigensolvers report slightly negative values for zero eigenvalues.
pub const EIG_FLOOR: f64 = -1e-10;

/// Kraus completeness defect, max entry of |sum M†M - I|.
pub const KRAUS_COMPLETENESS: f64 = 1e-12;

/// Agreement required between the closed-form probabilities and the dense
/// density-matrix simulation.
pub const ORACLE_MATCH: f64 = 1e-10;

/// Agreement required between two algebraically identical channel forms
/// (Kraus sum vs isotropic mixing) and between step orderings.
pub const CHANNEL_EQUIV: f64 = 1e-12;

/// Interval width at which the golden-section peak search stops.
pub const PEAK_SEARCH: f64 = 1e-8;
