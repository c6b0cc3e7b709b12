#pragma once
#include <cstdint>
#include <utility>
#include <vector>

#include "qcam/complex_matrix.hpp"
#include "qcam/hermitian.hpp"

// States, observables, and the two representations of N-qubit collective-spin
// systems:
//   FullTensor - the 2^N product basis, bit n of the index is qubit n
//                (bit 0 means "up", the +1/2 eigenstate of s_z), capped at
//                N = 12;
//   Dicke      - the symmetric (N+1)-dimensional sector, index k counts
//                flipped ("down") spins.
// Anything not tied to qubits is Generic.

namespace qcam {

enum class Repr { FullTensor, Dicke, Generic };

struct QuantumState {
    CMatrix rho;
    Repr repr = Repr::Generic;
    int n_particles = 0;  // meaningful for FullTensor / Dicke
    bool pure = false;    // construction-time knowledge that rho = |psi><psi|
};

// Density-matrix checks: Hermitian within tolerance and unit trace within
// tol::trace_one; with check_psd also no eigenvalue below the clamp floor.
void validate_state(const QuantumState& s, bool check_psd = false);

QuantumState make_state(CMatrix rho, Repr repr = Repr::Generic, int n_particles = 0);
QuantumState pure_state(const std::vector<cplx>& amplitudes, Repr repr = Repr::Generic,
                        int n_particles = 0);

// An observable bundles the matrix with its eigendecomposition and the
// grouping of eigenvalues into degenerate sectors (gap threshold
// tol::degeneracy_rel * (lambda_max - lambda_min + 1)).
struct SectorInfo {
    double lambda;      // representative (mean) eigenvalue of the sector
    std::size_t begin;  // first index in the sorted eigenvalue list
    std::size_t count;
};

class Observable {
public:
    explicit Observable(CMatrix m);

    const CMatrix& matrix() const { return m_; }
    const EigResult& eig() const { return eig_; }
    const std::vector<SectorInfo>& sectors() const { return sectors_; }
    std::size_t dim() const { return m_.rows(); }
    double group_tolerance() const { return group_tol_; }
    std::size_t sector_of(std::size_t eig_index) const { return index_to_sector_[eig_index]; }
    // Spectral projector onto sector s (materialized on demand).
    CMatrix sector_projector(std::size_t s) const;
    double lambda_min() const { return eig_.eigenvalues.front(); }
    double lambda_max() const { return eig_.eigenvalues.back(); }

private:
    CMatrix m_;
    EigResult eig_;
    std::vector<SectorInfo> sectors_;
    std::vector<std::size_t> index_to_sector_;
    double group_tol_ = 0.0;
};

// V^dag M V and back, with V the observable's eigenvector matrix.
CMatrix to_eigenbasis(const CMatrix& m, const Observable& obs);
CMatrix from_eigenbasis(const CMatrix& m, const Observable& obs);

// ---- collective-spin constructions ----

std::size_t full_dim(int n);   // 2^n, throws TooLarge for n > 12
std::size_t dicke_dim(int n);  // n + 1

// Spin-coherent state: every qubit points along (theta, phi) on the Bloch
// sphere.  Dicke amplitudes sqrt(C(n,k)) cos^(n-k)(theta/2) sin^k(theta/2) e^{ik phi}.
QuantumState spin_coherent(int n, double theta, double phi, Repr repr);

// cos(theta/2)|0...0> + e^{i phi} sin(theta/2)|1...1>.
QuantumState ghz_state(int n, double theta, double phi, Repr repr);

// Product state with per-site Bloch angles; FullTensor only.
QuantumState product_state(const std::vector<std::pair<double, double>>& site_angles);

// Collective spin component along the axis (axis_theta, axis_phi).
Observable collective_spin(int n, double axis_theta, double axis_phi, Repr repr);

// Collective lowering operator S_- (sum of single-site lowering operators).
CMatrix lowering_operator(int n, Repr repr);

// Symmetric-subspace isometry: maps Dicke vectors/matrices into FullTensor.
CMatrix dicke_embedding(int n);
QuantumState dicke_to_full(const QuantumState& s);
CMatrix dicke_to_full_op(const CMatrix& m, int n);
// Projection back; leakage (if non-null) receives the Frobenius norm of the
// part of m living outside the symmetric subspace.
CMatrix full_to_dicke_op(const CMatrix& m, int n, double* leakage = nullptr);
QuantumState full_to_dicke(const QuantumState& s, double* leakage = nullptr);

// Reduced state over one factor of a bipartite split dim = da * db.
CMatrix partial_trace(const CMatrix& rho, std::size_t da, std::size_t db, bool keep_first);

}  // namespace qcam
