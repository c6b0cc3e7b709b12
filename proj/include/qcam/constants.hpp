#pragma once

// Central tolerance record.  Every numerical threshold used by the library
// lives here so a report or sidecar can dump the complete set, and so no
// module invents a private epsilon.

namespace qcam::tol {

// Hermiticity: |A[i][j] - conj(A[j][i])| must stay below this, scaled by
// max(1, max|entry|) so large-norm observables built to machine accuracy
// are not spuriously rejected.
inline constexpr double hermiticity = 1e-12;

// Eigendecomposition contract: ||V diag(w) V^dag - A||_max <= eig_reconstruct * dim.
inline constexpr double eig_reconstruct = 1e-10;

// Orthonormality of a user-supplied basis: ||B^dag B - I||_max.
inline constexpr double basis_orthonormal = 1e-10;

// PSD handling: eigenvalues in [psd_clamp_floor, 0) are clamped to zero;
// anything below the floor is a genuine negativity and raises NotPSD.
inline constexpr double psd_clamp_floor = -1e-8;

// sqrt_psd contract: ||sqrt(rho)^2 - rho||_F.
inline constexpr double sqrt_residual = 1e-9;

// Density matrices: |trace - 1|.
inline constexpr double trace_one = 1e-10;

// Eigenvalue grouping into degenerate sectors / mode dedup:
// threshold = degeneracy_rel * (lambda_max - lambda_min + 1).
inline constexpr double degeneracy_rel = 1e-9;

// covariance_check verdict: covariant iff max violation below this.
inline constexpr double covariance = 1e-8;

// Kraus completeness: ||sum K^dag K - I||_max.
inline constexpr double kraus_completeness = 1e-10;

// Slack for monotonicity property tests (after <= before + slack).
inline constexpr double monotonicity_slack = 1e-9;

// Lindblad integrator: |trace(rho) - 1| growth allowed per step.
inline constexpr double trace_drift_per_step = 1e-9;

// Quadrature absolute tolerance for weight functions built from g(x).
inline constexpr double from_g_quadrature = 1e-8;

}  // namespace qcam::tol
