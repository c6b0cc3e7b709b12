#pragma once
#include <cstddef>
#include <utility>
#include <vector>

#include "qcam/complex_matrix.hpp"
#include "qcam/states.hpp"

// Mode decomposition of a state with respect to an observable L: the matrix
// splits into blocks connecting eigenvalue sectors, one block set per
// eigenvalue gap omega.  All block bookkeeping happens in L's sorted
// eigenbasis; degenerate sectors are treated as wholes, which makes every
// quantity here invariant under basis rotations inside a sector.

namespace qcam {

struct ModeSpectrum {
    std::vector<double> omegas;  // ascending, symmetric under negation, contains 0
    // pairs[i] lists the (row sector, column sector) index pairs whose
    // eigenvalue gap equals omegas[i].
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pairs;
    double match_tol = 0.0;

    std::size_t index_of(double omega) const;  // throws UnknownMode
    bool contains(double omega) const;
};

ModeSpectrum mode_spectrum(const Observable& l);

enum class ModeNorm { Trace, HilbertSchmidt };

// Caches rho (and sqrt(rho) when needed) in L's eigenbasis so that sweeping
// over many modes pays the transform cost once.  Pure states take a shortcut:
// only sector amplitudes of the state vector are needed.
class ModeAnalysis {
public:
    ModeAnalysis(const QuantumState& rho, const Observable& l);

    const ModeSpectrum& spectrum() const { return spec_; }
    const Observable& observable() const { return *l_; }

    double a_tr(std::size_t mode_index) const;
    double a_hs(std::size_t mode_index) const;
    double value(std::size_t mode_index, ModeNorm kind) const;

    // Mode component as a full-dimension matrix in the eigenbasis of L.
    CMatrix component(std::size_t mode_index) const;

    // Sum of A_HS over all omega != 0.
    double total_hs() const;

private:
    const Observable* l_;
    ModeSpectrum spec_;
    bool pure_ = false;
    std::vector<cplx> psi_eig_;        // pure path: state vector in eigenbasis
    std::vector<double> sector_prob_;  // pure path: ||P_m psi||^2
    CMatrix rho_eig_;                  // mixed path
    mutable CMatrix sqrt_eig_;         // mixed path, built on demand
    mutable bool have_sqrt_ = false;
    const CMatrix& sqrt_in_eigenbasis() const;
};

// One-shot wrappers around ModeAnalysis.
struct ModeComponent {
    double omega;
    CMatrix block;  // in L's eigenbasis
};
ModeComponent mode_component(const QuantumState& rho, const Observable& l, double omega);
double mode_asymmetry(const QuantumState& rho, const Observable& l, double omega, ModeNorm kind);

// Sum over all nonzero modes of the Hilbert-Schmidt mode weights of sqrt(rho);
// equals the affinity coherence in L's eigenbasis when L is nondegenerate.
double total_asymmetry(const QuantumState& rho, const Observable& l);

// exp(-i x L) rho exp(i x L) with sector-representative eigenvalues, so the
// action on mode omega is exactly the phase exp(-i omega x).
QuantumState translate(const QuantumState& rho, const Observable& l, double x);

// Extract the (unique up to phase) state vector of a pure density matrix.
std::vector<cplx> pure_amplitudes(const QuantumState& rho);

}  // namespace qcam
