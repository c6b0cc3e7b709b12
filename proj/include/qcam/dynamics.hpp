#pragma once
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qcam/asymmetry.hpp"
#include "qcam/rng.hpp"
#include "qcam/states.hpp"

// Open-system dynamics under a single jump operator A,
//   d rho / d tau = A rho A^dag - (1/2) {A^dag A, rho},
// integrated with classic RK4, plus channel constructions used by the
// covariance and monotonicity property suites.

namespace qcam {

struct KrausChannel {
    std::vector<CMatrix> ops;
};

// Validates sum K^dag K = I within tol::kraus_completeness.
KrausChannel make_kraus(std::vector<CMatrix> ops);
// Linear extension to arbitrary (not necessarily Hermitian) matrices.
CMatrix apply_kraus(const KrausChannel& k, const CMatrix& m);

// A general channel: a linear map with an optional Kraus form.
struct ChannelMap {
    std::function<CMatrix(const CMatrix&)> apply;
    std::optional<KrausChannel> kraus;
    std::string description;
};

ChannelMap channel_from_kraus(KrausChannel k);

// Covariant channel that kills a symmetric set of modes (zeroes every block
// whose gap matches a kill_omega) and leaves the rest untouched.  A Kraus
// form is attached when the sector multiplier matrix is positive
// semidefinite (it always is for full dephasing and for the keep/kill
// patterns used in the fixtures).
ChannelMap partial_dephasing(const Observable& l, const std::vector<double>& kill_omegas);

// Random trace-preserving channel whose Kraus operators have exactly one
// nonzero entry per column: maps diagonal states to diagonal states.
KrausChannel random_incoherent_channel(std::size_t dim, std::size_t n_kraus, Rng& rng);

// Random convex mixture of covariance-preserving primitives: translations
// exp(-ixL), Gaussian blur, sector-block unitaries, and random-phase
// dephasing mixtures.
ChannelMap random_covariant_channel(const Observable& l, Rng& rng);

struct CovarianceReport {
    double max_violation = 0.0;
    bool covariant = false;
};

// Samples random states, splits them into modes, and compares E(rho^(omega))
// with (E(rho))^(omega) entrywise.
CovarianceReport covariance_check(const ChannelMap& e, const Observable& l, int n_samples,
                                  std::uint64_t seed);

struct LindbladSpec {
    CMatrix jump;
    double dt = 1e-4;
    std::size_t steps = 100;
    std::size_t record_stride = 1;  // trajectory keeps every record_stride-th state
};

struct Trajectory {
    std::vector<double> times;
    std::vector<QuantumState> states;
    double max_step_trace_drift = 0.0;
};

Trajectory lindblad_evolve(const QuantumState& rho0, const LindbladSpec& spec);

// Closed form of the GHZ state dephased for time tau under collective S_z:
// the extreme off-diagonal is damped by exp(-n^2 tau / 2).
QuantumState dephased_ghz(int n, double theta, double phi, double tau, Repr repr = Repr::Dicke);

}  // namespace qcam
