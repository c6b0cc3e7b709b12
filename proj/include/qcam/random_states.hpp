#pragma once
#include <cmath>

#include "qcam/hermitian.hpp"
#include "qcam/rng.hpp"
#include "qcam/states.hpp"

// Random test inputs shared by the property suites.  All draws go through
// qcam::Rng, so a fixed seed reproduces the same objects everywhere.

namespace qcam {

inline QuantumState random_pure(std::size_t dim, Rng& rng) {
    std::vector<cplx> psi(dim);
    double n2 = 0.0;
    for (auto& a : psi) {
        a = cplx(rng.normal(), rng.normal());
        n2 += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : psi) a *= inv;
    return pure_state(psi);
}

// Full-rank mixed state: G G^dag / tr(G G^dag) with Gaussian G.
inline QuantumState random_mixed(std::size_t dim, Rng& rng) {
    CMatrix g(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) g(i, j) = cplx(rng.normal(), rng.normal());
    CMatrix m = matmul(g, adjoint(g));
    m *= cplx(1.0 / trace(m).real());
    return make_state(hermitize(m));
}

inline CMatrix random_hermitian(std::size_t dim, Rng& rng, double scale = 1.0) {
    CMatrix h(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        h(i, i) = scale * rng.normal();
        for (std::size_t j = i + 1; j < dim; ++j) {
            h(i, j) = scale * 0.5 * cplx(rng.normal(), rng.normal());
            h(j, i) = std::conj(h(i, j));
        }
    }
    return h;
}

inline CMatrix random_unitary(std::size_t dim, Rng& rng) {
    return eigh(random_hermitian(dim, rng)).vectors;
}

// Observable with eigenvalues in [-2, 2]; optionally with a forced
// degenerate sector so the block machinery gets exercised.
inline Observable random_observable(std::size_t dim, Rng& rng, bool with_degeneracy) {
    std::vector<double> lam(dim);
    for (auto& x : lam) x = rng.uniform(-2.0, 2.0);
    if (with_degeneracy && dim >= 3) {
        lam[1] = lam[0];  // one doubly degenerate level
        if (dim >= 5) lam[3] = lam[2];
    }
    const CMatrix u = random_unitary(dim, rng);
    CMatrix l(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < dim; ++k) s += lam[k] * u(i, k) * std::conj(u(j, k));
            l(i, j) = s;
        }
    return Observable(hermitize(l));
}

}  // namespace qcam
