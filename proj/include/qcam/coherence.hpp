#pragma once
#include <string>
#include <vector>

#include "qcam/complex_matrix.hpp"
#include "qcam/states.hpp"

// Basis-dependent coherence quantifiers.  The affinity-based measure c_a is
// the workhorse: c_a(rho) = 1 - sum_i (sqrt(rho))_ii^2, equivalently the sum
// of squared off-diagonal entries of sqrt(rho), with the closest diagonal
// state given by p_i proportional to (sqrt(rho))_ii^2.

namespace qcam {

struct CoherenceResult {
    double value;                            // in [0, 1]
    std::vector<double> closest_incoherent;  // maximizing diagonal probabilities
    std::string basis;                       // "computational" or "custom"
};

// Affinity coherence in the computational basis.
CoherenceResult c_a(const QuantumState& rho);
// Same in the basis given by the (orthonormal) columns of `basis`.
CoherenceResult c_a(const QuantumState& rho, const CMatrix& basis);

// l1 coherence: sum of |off-diagonal entries| of rho itself.
double c_l1(const QuantumState& rho);
double c_l1(const QuantumState& rho, const CMatrix& basis);

}  // namespace qcam
