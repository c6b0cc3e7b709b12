#include "doctest.h"

#include <cmath>

#include "qcam/complex_matrix.hpp"
#include "qcam/rng.hpp"

using namespace qcam;

namespace {

CMatrix random_matrix(std::size_t r, std::size_t c, Rng& rng) {
    CMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = cplx(rng.normal(), rng.normal());
    return m;
}

}  // namespace

TEST_CASE("identity and diagonal constructors") {
    const CMatrix i3 = CMatrix::identity(3);
    CHECK(i3(0, 0) == cplx(1.0));
    CHECK(i3(1, 2) == cplx(0.0));
    const CMatrix d = CMatrix::diagonal(std::vector<double>{2.0, -1.0});
    CHECK(d(0, 0) == cplx(2.0));
    CHECK(d(1, 1) == cplx(-1.0));
    CHECK(d(0, 1) == cplx(0.0));
}

TEST_CASE("parallel and serial multiply kernels agree exactly") {
    Rng rng(42);
    for (std::size_t n : {1u, 7u, 16u, 33u}) {
        const CMatrix a = random_matrix(n, n, rng);
        const CMatrix b = random_matrix(n, n, rng);
        const CMatrix p = matmul(a, b);
        const CMatrix s = matmul_serial(a, b);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) CHECK(p(i, j) == s(i, j));
    }
}

TEST_CASE("multiply handles rectangular shapes") {
    Rng rng(7);
    const CMatrix a = random_matrix(3, 5, rng);
    const CMatrix b = random_matrix(5, 2, rng);
    const CMatrix c = matmul(a, b);
    CHECK(c.rows() == 3);
    CHECK(c.cols() == 2);
    // Spot-check one entry against the definition.
    cplx want = 0.0;
    for (std::size_t k = 0; k < 5; ++k) want += a(1, k) * b(k, 0);
    CHECK(std::abs(c(1, 0) - want) < 1e-14);
    CHECK_THROWS_AS(matmul(b, a), DimensionMismatchError);
}

TEST_CASE("matvec matches matmul on a single column") {
    Rng rng(3);
    const CMatrix a = random_matrix(4, 4, rng);
    std::vector<cplx> x(4);
    for (auto& v : x) v = cplx(rng.normal(), rng.normal());
    CMatrix col(4, 1);
    for (std::size_t i = 0; i < 4; ++i) col(i, 0) = x[i];
    const auto y = matvec(a, x);
    const CMatrix yc = matmul(a, col);
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(y[i] - yc(i, 0)) < 1e-14);
}

TEST_CASE("adjoint is an involution and reverses products") {
    Rng rng(11);
    const CMatrix a = random_matrix(3, 4, rng);
    const CMatrix b = random_matrix(4, 3, rng);
    const CMatrix aa = adjoint(adjoint(a));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(aa(i, j) == a(i, j));
    const CMatrix lhs = adjoint(matmul(a, b));
    const CMatrix rhs = matmul(adjoint(b), adjoint(a));
    CHECK(max_abs(lhs - rhs) < 1e-13);
}

TEST_CASE("kron dimensions and block structure") {
    CMatrix a(2, 2), b(2, 2);
    a(0, 0) = 1.0; a(0, 1) = 2.0; a(1, 0) = 3.0; a(1, 1) = 4.0;
    b(0, 0) = cplx(0.0, 1.0); b(1, 1) = 5.0;
    const CMatrix k = kron(a, b);
    CHECK(k.rows() == 4);
    CHECK(k(0, 0) == cplx(0.0, 1.0));        // a00 * b00
    CHECK(k(1, 1) == cplx(5.0));             // a00 * b11
    CHECK(k(0, 2) == cplx(0.0, 2.0));        // a01 * b00
    CHECK(k(3, 3) == cplx(20.0));            // a11 * b11
    CHECK(k(0, 1) == cplx(0.0));
}

TEST_CASE("trace_of_product avoids forming the product") {
    Rng rng(5);
    const CMatrix a = random_matrix(6, 6, rng);
    const CMatrix b = random_matrix(6, 6, rng);
    const cplx direct = trace(matmul(a, b));
    CHECK(std::abs(trace_of_product(a, b) - direct) < 1e-12);
}

TEST_CASE("outer product matches entrywise definition") {
    const std::vector<cplx> v{cplx(1.0, 1.0), cplx(0.0, -2.0)};
    const std::vector<cplx> w{cplx(3.0), cplx(0.0, 1.0)};
    const CMatrix m = outer(v, w);
    CHECK(m(0, 0) == v[0] * std::conj(w[0]));
    CHECK(m(1, 1) == v[1] * std::conj(w[1]));
    CHECK(m(0, 1) == v[0] * std::conj(w[1]));
}

TEST_CASE("norms and hermiticity defect") {
    CMatrix m(2, 2);
    m(0, 0) = 3.0; m(0, 1) = cplx(0.0, 4.0);
    CHECK(frobenius_norm(m) == doctest::Approx(5.0));
    CHECK(max_abs(m) == doctest::Approx(4.0));

    CMatrix h(2, 2);
    h(0, 0) = 1.0; h(0, 1) = cplx(0.5, 0.5); h(1, 0) = cplx(0.5, -0.5); h(1, 1) = -1.0;
    CHECK(is_hermitian(h));
    CHECK(hermiticity_defect(h) == doctest::Approx(0.0));
    h(1, 0) = cplx(0.5, -0.5 + 1e-6);
    CHECK_FALSE(is_hermitian(h));
    const CMatrix fixed = hermitize(h);
    CHECK(is_hermitian(fixed));
}

TEST_CASE("hermiticity tolerance scales with the entry magnitude") {
    // A large-norm matrix assembled to machine accuracy must not be rejected
    // for a defect that is tiny relative to its entries.
    CMatrix big(2, 2);
    big(0, 0) = 1e8;
    big(0, 1) = cplx(1e8, 1e-6);
    big(1, 0) = cplx(1e8, -1e-6 + 1e-7);  // absolute defect ~1e-7, relative ~1e-15
    big(1, 1) = -1e8;
    CHECK(is_hermitian(big));
    CMatrix small(2, 2);
    small(0, 1) = cplx(0.0, 1e-7);  // same absolute defect at order-1 scale
    small(1, 0) = cplx(0.0, 0.0);
    small(0, 0) = 1.0;
    small(1, 1) = 1.0;
    CHECK_FALSE(is_hermitian(small));
}

TEST_CASE("shape guards throw on mismatch") {
    const CMatrix a(2, 3);
    const CMatrix b(2, 2);
    CHECK_THROWS_AS(require_same_shape(a, b, "test"), DimensionMismatchError);
    CHECK_THROWS_AS(require_square(a, "test"), DimensionMismatchError);
    CHECK_THROWS_AS(trace(a), DimensionMismatchError);
}
