#include "qcam/coherence.hpp"

#include <cmath>

#include "qcam/asymmetry.hpp"
#include "qcam/constants.hpp"
#include "qcam/hermitian.hpp"

namespace qcam {

namespace {

void check_orthonormal(const CMatrix& b) {
    require_square(b, "c_a basis");
    const CMatrix g = matmul(adjoint(b), b);
    double defect = 0.0;
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j)
            defect = std::max(defect, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
    if (defect > tol::basis_orthonormal)
        throw BasisNotOrthonormalError("basis columns fail orthonormality by " + std::to_string(defect));
}

// Diagonal of sqrt(rho) in the requested basis; exploits purity when known.
std::vector<double> sqrt_diagonal(const QuantumState& rho, const CMatrix* basis) {
    const std::size_t n = rho.rho.rows();
    std::vector<double> d(n);
    if (rho.pure) {
        // sqrt of a rank-1 projector is itself.
        auto psi = pure_amplitudes(rho);
        if (basis) {
            std::vector<cplx> tilde(n, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                cplx s = 0.0;
                for (std::size_t k = 0; k < n; ++k) s += std::conj((*basis)(k, i)) * psi[k];
                tilde[i] = s;
            }
            psi = std::move(tilde);
        }
        for (std::size_t i = 0; i < n; ++i) d[i] = std::norm(psi[i]);
        return d;
    }
    CMatrix work = basis ? hermitize(matmul(adjoint(*basis), matmul(rho.rho, *basis))) : rho.rho;
    const CMatrix s = sqrt_psd(work);
    for (std::size_t i = 0; i < n; ++i) d[i] = s(i, i).real();
    return d;
}

CoherenceResult c_a_impl(const QuantumState& rho, const CMatrix* basis) {
    validate_state(rho);
    if (basis) {
        require_same_shape(rho.rho, *basis, "c_a");
        check_orthonormal(*basis);
    }
    const auto d = sqrt_diagonal(rho, basis);
    double diag2 = 0.0;
    for (double x : d) diag2 += x * x;
    CoherenceResult r;
    r.value = std::min(1.0, std::max(0.0, 1.0 - diag2));
    r.closest_incoherent.resize(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) r.closest_incoherent[i] = d[i] * d[i] / diag2;
    r.basis = basis ? "custom" : "computational";
    return r;
}

double c_l1_impl(const QuantumState& rho, const CMatrix* basis) {
    validate_state(rho);
    const CMatrix m = basis ? matmul(adjoint(*basis), matmul(rho.rho, *basis)) : rho.rho;
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (i != j) s += std::abs(m(i, j));
    return s;
}

}  // namespace

CoherenceResult c_a(const QuantumState& rho) { return c_a_impl(rho, nullptr); }

CoherenceResult c_a(const QuantumState& rho, const CMatrix& basis) { return c_a_impl(rho, &basis); }

double c_l1(const QuantumState& rho) { return c_l1_impl(rho, nullptr); }

double c_l1(const QuantumState& rho, const CMatrix& basis) {
    check_orthonormal(basis);
    return c_l1_impl(rho, &basis);
}

}  // namespace qcam
