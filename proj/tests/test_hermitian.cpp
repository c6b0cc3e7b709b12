#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qcam/constants.hpp"
#include "qcam/hermitian.hpp"
#include "qcam/random_states.hpp"
#include "qcam/rng.hpp"
#include "qcam/states.hpp"

using namespace qcam;

namespace {

// ||V diag(w) V^dag - A||_max.
double reconstruction_error(const EigResult& r, const CMatrix& a) {
    const std::size_t n = a.rows();
    CMatrix rec(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                s += r.eigenvalues[k] * r.vectors(i, k) * std::conj(r.vectors(j, k));
            rec(i, j) = s;
        }
    return max_abs(rec - a);
}

double unitarity_error(const CMatrix& v) {
    return max_abs(matmul(adjoint(v), v) - CMatrix::identity(v.rows()));
}

}  // namespace

TEST_CASE("diagonal matrices take the exact fast path") {
    const CMatrix d = CMatrix::diagonal(std::vector<double>{3.0, 1.0, 2.0});
    const EigResult r = eigh(d);
    CHECK(r.eigenvalues == std::vector<double>{1.0, 2.0, 3.0});
    // Eigenvectors are exact unit columns permuted to the sorted order.
    CHECK(r.vectors(1, 0) == cplx(1.0));
    CHECK(r.vectors(2, 1) == cplx(1.0));
    CHECK(r.vectors(0, 2) == cplx(1.0));
    CHECK(reconstruction_error(r, d) == 0.0);
}

TEST_CASE("two-level flip operators have the exact spectrum") {
    CMatrix x(2, 2), y(2, 2);
    x(0, 1) = 1.0; x(1, 0) = 1.0;
    y(0, 1) = cplx(0.0, -1.0); y(1, 0) = cplx(0.0, 1.0);
    for (const CMatrix& m : {x, y}) {
        const EigResult r = eigh(m);
        CHECK(r.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
        CHECK(r.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(reconstruction_error(r, m) < 1e-14);
        CHECK(unitarity_error(r.vectors) < 1e-14);
    }
}

TEST_CASE("production and reference eigensolvers agree") {
    Rng rng(1234);
    for (std::size_t dim : {2u, 5u, 9u, 16u}) {
        const CMatrix h = random_hermitian(dim, rng, 2.0);
        const EigResult a = eigh(h);
        const EigResult b = eigh_jacobi(h);
        for (std::size_t i = 0; i < dim; ++i)
            CHECK(a.eigenvalues[i] == doctest::Approx(b.eigenvalues[i]).epsilon(1e-11).scale(1.0));
        CHECK(reconstruction_error(a, h) < tol::eig_reconstruct * static_cast<double>(dim));
        CHECK(reconstruction_error(b, h) < tol::eig_reconstruct * static_cast<double>(dim));
        CHECK(unitarity_error(a.vectors) < 1e-12);
        CHECK(unitarity_error(b.vectors) < 1e-12);
    }
}

TEST_CASE("eigensolver handles heavily degenerate spin operators") {
    // Tilted collective spin on the full product space: eigenvalue
    // multiplicities up to C(8,4) = 70, including a large zero cluster.
    // Regression: the deflation test must terminate on such clusters.
    const CMatrix m = collective_spin(8, 0.4, 0.9, Repr::FullTensor).matrix();
    const EigResult r = eigh(m);
    CHECK(reconstruction_error(r, m) < tol::eig_reconstruct * static_cast<double>(m.rows()));
    CHECK(unitarity_error(r.vectors) < 1e-11);
    // Spectrum is (n_up - n_down)/2 in {-4, ..., +4} with binomial counts.
    CHECK(r.eigenvalues.front() == doctest::Approx(-4.0).epsilon(1e-12));
    CHECK(r.eigenvalues.back() == doctest::Approx(4.0).epsilon(1e-12));
    std::size_t zeros = 0;
    for (double w : r.eigenvalues)
        if (std::fabs(w) < 1e-9) ++zeros;
    CHECK(zeros == 70);
}

TEST_CASE("tridiagonal solver on closed-form cases") {
    // [[0, 1], [1, 0]] -> eigenvalues -1, +1.
    std::vector<double> d{0.0, 0.0}, e{1.0};
    CMatrix v = CMatrix::identity(2);
    tridiagonal_eig(d, e, &v);
    std::vector<double> w = d;
    std::sort(w.begin(), w.end());
    CHECK(w[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(w[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("tridiagonal solver terminates on near-zero clusters") {
    // All-zero diagonal with widely graded couplings: a purely
    // neighbour-relative deflation test stalls here.
    std::vector<double> d(4, 0.0);
    std::vector<double> e{1e-3, 1e-12, 1e-3};
    CMatrix v = CMatrix::identity(4);
    tridiagonal_eig(d, e, &v);
    CMatrix t(4, 4);
    t(0, 1) = t(1, 0) = 1e-3;
    t(1, 2) = t(2, 1) = 1e-12;
    t(2, 3) = t(3, 2) = 1e-3;
    const EigResult ref = eigh_jacobi(t);
    std::sort(d.begin(), d.end());
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(d[i] == doctest::Approx(ref.eigenvalues[i]).epsilon(1e-13).scale(1.0));
}

TEST_CASE("matrix square root of full-rank states") {
    Rng rng(77);
    for (std::size_t dim : {2u, 4u, 7u}) {
        const QuantumState rho = random_mixed(dim, rng);
        const CMatrix s = sqrt_psd(rho.rho);
        CHECK(frobenius_norm(matmul(s, s) - rho.rho) < tol::sqrt_residual);
        CHECK(is_hermitian(s));
    }
}

TEST_CASE("square root of a pure state is the state itself") {
    // Rank-deficient input: eigenvalues that are pure rounding noise around
    // zero must be clamped, not amplified to sqrt(noise)-sized entries.
    Rng rng(78);
    const QuantumState rho = random_pure(6, rng);
    const CMatrix s = sqrt_psd(rho.rho);
    CHECK(max_abs(s - rho.rho) < 1e-12);
}

TEST_CASE("square root rejects genuinely negative matrices") {
    const CMatrix bad = CMatrix::diagonal(std::vector<double>{1.5, -0.5});
    CHECK_THROWS_AS(sqrt_psd(bad), NotPSDError);
}

TEST_CASE("trace norm via an independent spectral route") {
    Rng rng(91);
    // Hermitian input: sum of |eigenvalues| from the reference solver.
    const CMatrix h = random_hermitian(5, rng);
    double want = 0.0;
    for (double w : eigh_jacobi(h).eigenvalues) want += std::fabs(w);
    CHECK(trace_norm(h) == doctest::Approx(want).epsilon(1e-11));

    // General input: the Hermitian embedding [[0, M], [M^dag, 0]] has
    // eigenvalues +-sigma_i, so the singular values come out of a different
    // algorithm on a different matrix.
    const std::size_t n = 4;
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = cplx(rng.normal(), rng.normal());
    CMatrix emb(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            emb(i, n + j) = m(i, j);
            emb(n + j, i) = std::conj(m(i, j));
        }
    double half_sum = 0.0;
    for (double w : eigh_jacobi(emb).eigenvalues) half_sum += std::fabs(w);
    CHECK(trace_norm(m) == doctest::Approx(0.5 * half_sum).epsilon(1e-10));
}

TEST_CASE("trace norm of a rank-one outer product") {
    std::vector<cplx> u{cplx(1.0, 2.0), cplx(0.0, -1.0), cplx(0.5, 0.0)};
    std::vector<cplx> v{cplx(2.0, 0.0), cplx(1.0, 1.0)};
    double nu = 0.0, nv = 0.0;
    for (auto& x : u) nu += std::norm(x);
    for (auto& x : v) nv += std::norm(x);
    CMatrix m(3, 2);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 2; ++j) m(i, j) = u[i] * std::conj(v[j]);
    CHECK(trace_norm(m) == doctest::Approx(std::sqrt(nu * nv)).epsilon(1e-12));
}

TEST_CASE("overlap measures on identical and orthogonal states") {
    Rng rng(13);
    const QuantumState rho = random_mixed(4, rng);
    CHECK(state_overlap(rho.rho, rho.rho, OverlapKind::Affinity) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(state_overlap(rho.rho, rho.rho, OverlapKind::Hellinger) == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
    CHECK(state_overlap(rho.rho, rho.rho, OverlapKind::Fidelity) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(state_overlap(rho.rho, rho.rho, OverlapKind::Bures) == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));

    const CMatrix e0 = CMatrix::diagonal(std::vector<double>{1.0, 0.0});
    const CMatrix e1 = CMatrix::diagonal(std::vector<double>{0.0, 1.0});
    CHECK(state_overlap(e0, e1, OverlapKind::Affinity) == doctest::Approx(0.0).scale(1.0));
    CHECK(state_overlap(e0, e1, OverlapKind::Fidelity) == doctest::Approx(0.0).scale(1.0));
    CHECK(state_overlap(e0, e1, OverlapKind::Bures) == doctest::Approx(2.0));
}

TEST_CASE("fidelity against a pure state is the expectation value") {
    Rng rng(14);
    const QuantumState psi = random_pure(5, rng);
    const QuantumState rho = random_mixed(5, rng);
    const double f = state_overlap(psi.rho, rho.rho, OverlapKind::Fidelity);
    const double want = trace_of_product(psi.rho, rho.rho).real();
    CHECK(f == doctest::Approx(want).epsilon(1e-10));
}
