#pragma once
#include <vector>

#include "qcam/complex_matrix.hpp"

// Hermitian eigenproblems and the operations built directly on them.
//
// Two independent eigensolvers are provided:
//   eigh()        - Householder tridiagonalization + implicit-shift QL,
//                   O(n^3), the production path (OpenMP in the update kernels).
//   eigh_jacobi() - cyclic complex Jacobi sweeps, serial, kept as the
//                   reference implementation for testing and benchmarking.
// Both satisfy the same contract: ascending eigenvalues, unitary column
// eigenvectors, and ||V diag(w) V^dag - A||_max <= tol::eig_reconstruct * dim.

namespace qcam {

struct EigResult {
    std::vector<double> eigenvalues;  // ascending
    CMatrix vectors;                  // column i pairs with eigenvalues[i]
};

EigResult eigh(const CMatrix& a);
EigResult eigh_jacobi(const CMatrix& a);

// Eigenvalues only (same algorithm as eigh, vectors skipped).
std::vector<double> eigenvalues_of(const CMatrix& a);

// Principal square root of a PSD Hermitian matrix.  Eigenvalues in
// [tol::psd_clamp_floor, 0) are clamped to zero; anything lower raises NotPSD.
CMatrix sqrt_psd(const CMatrix& rho);
// Same, reusing an existing decomposition of rho.
CMatrix sqrt_psd_from_eig(const EigResult& eig);

// Sum of singular values, computed from the spectrum of M^dag M.
double trace_norm(const CMatrix& m);

enum class OverlapKind { Affinity, Fidelity, Hellinger, Bures };

// Overlap measures between two density matrices:
//   Affinity  = tr(sqrt(rho) sqrt(tau))                 in [0, 1]
//   Fidelity  = (tr sqrt(sqrt(rho) tau sqrt(rho)))^2    in [0, 1]
//   Hellinger = 1 - Affinity                            in [0, 1]
//   Bures     = 2 - 2 sqrt(Fidelity)                    in [0, 2]
double state_overlap(const CMatrix& rho, const CMatrix& tau, OverlapKind kind);

// Eigendecomposition of a real symmetric tridiagonal matrix (diagonal d,
// off-diagonal e with e[i] coupling i and i+1).  Used internally by eigh and
// by the Gauss-Hermite node construction.  Returns ascending eigenvalues; if
// vectors != nullptr it must come in as an initialized matrix with n columns
// (typically identity) and is rotated in place.
void tridiagonal_eig(std::vector<double>& d, std::vector<double>& e, CMatrix* vectors);

}  // namespace qcam
