#include "doctest.h"

#include <cmath>
#include <vector>

#include "qcam/asymmetry.hpp"
#include "qcam/random_states.hpp"
#include "qcam/rng.hpp"
#include "qcam/states.hpp"

using namespace qcam;

namespace {
constexpr double kPi = 3.14159265358979323846;

CMatrix pauli_z() {
    return CMatrix::diagonal(std::vector<double>{0.5, -0.5});
}
}  // namespace

TEST_CASE("representation dimensions and the size cap") {
    CHECK(full_dim(3) == 8);
    CHECK(dicke_dim(3) == 4);
    CHECK(full_dim(12) == 4096);
    CHECK_THROWS_AS(full_dim(13), TooLargeError);
}

TEST_CASE("aligned-state amplitudes follow the binomial profile") {
    const QuantumState s = spin_coherent(2, 0.5 * kPi, 0.0, Repr::Dicke);
    CHECK(s.pure);
    const auto amp = pure_amplitudes(s);
    REQUIRE(amp.size() == 3);
    CHECK(std::abs(amp[0]) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(amp[1]) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(std::abs(amp[2]) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("aligned state at the poles is a basis state") {
    const QuantumState top = spin_coherent(4, 0.0, 0.3, Repr::Dicke);
    CHECK(top.rho(0, 0).real() == doctest::Approx(1.0).epsilon(1e-14));
    const QuantumState bottom = spin_coherent(4, kPi, 0.0, Repr::Dicke);
    CHECK(bottom.rho(4, 4).real() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("symmetric embedding maps one representation onto the other") {
    for (double theta : {0.6, 1.1}) {
        const QuantumState d = spin_coherent(3, theta, 0.7, Repr::Dicke);
        const QuantumState f = spin_coherent(3, theta, 0.7, Repr::FullTensor);
        const QuantumState lifted = dicke_to_full(d);
        CHECK(max_abs(lifted.rho - f.rho) < 1e-12);
        double leak = 0.0;
        const QuantumState back = full_to_dicke(f, &leak);
        CHECK(max_abs(back.rho - d.rho) < 1e-12);
        CHECK(leak < 1e-12);
    }
}

TEST_CASE("extreme superposition has the expected corners") {
    const double th = 0.8, ph = 0.4;
    const QuantumState g = ghz_state(3, th, ph, Repr::FullTensor);
    const double c = std::cos(0.5 * th), s = std::sin(0.5 * th);
    CHECK(g.rho(0, 0).real() == doctest::Approx(c * c).epsilon(1e-13));
    CHECK(g.rho(7, 7).real() == doctest::Approx(s * s).epsilon(1e-13));
    CHECK(std::abs(g.rho(0, 7) - c * s * std::polar(1.0, -ph)) < 1e-13);
    CHECK(g.rho(3, 3) == cplx(0.0));
    // Same structure in the symmetric basis at its own corner indices.
    const QuantumState gd = ghz_state(3, th, ph, Repr::Dicke);
    CHECK(std::abs(gd.rho(0, 3) - g.rho(0, 7)) < 1e-13);
}

TEST_CASE("tilted spin component decomposes into cartesian parts") {
    for (Repr repr : {Repr::Dicke, Repr::FullTensor}) {
        const int n = 3;
        const double at = 0.7, ap = 1.9;
        const CMatrix sm = lowering_operator(n, repr);
        const CMatrix sp = adjoint(sm);
        const CMatrix sz = collective_spin(n, 0.0, 0.0, repr).matrix();
        CMatrix sx = sp + sm;
        sx *= cplx(0.5);
        CMatrix sy = sp - sm;
        sy *= cplx(0.0, -0.5);
        CMatrix want = std::cos(at) * sz + (std::sin(at) * std::cos(ap)) * sx +
                       (std::sin(at) * std::sin(ap)) * sy;
        const CMatrix got = collective_spin(n, at, ap, repr).matrix();
        CHECK(max_abs(got - want) < 1e-12);
    }
}

TEST_CASE("lowering operator matrix elements in the symmetric basis") {
    const int n = 4;
    const CMatrix sm = lowering_operator(n, Repr::Dicke);
    // Acting on k flipped spins: coupling sqrt((k+1)(n-k)) to k+1.
    for (int k = 0; k < n; ++k) {
        const double want = std::sqrt(static_cast<double>((k + 1) * (n - k)));
        CHECK(sm(k + 1, k).real() == doctest::Approx(want).epsilon(1e-13));
    }
    CHECK(sm(1, 0).real() == doctest::Approx(2.0).epsilon(1e-13));  // sqrt(4)
}

TEST_CASE("spin component sectors carry binomial multiplicities") {
    const Observable sz(collective_spin(3, 0.0, 0.0, Repr::FullTensor));
    const auto& secs = sz.sectors();
    REQUIRE(secs.size() == 4);
    CHECK(secs[0].lambda == doctest::Approx(-1.5).epsilon(1e-12));
    CHECK(secs[0].count == 1);
    CHECK(secs[1].count == 3);
    CHECK(secs[2].count == 3);
    CHECK(secs[3].count == 1);
    CHECK(secs[3].lambda == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("symmetric-subspace isometry") {
    const CMatrix v = dicke_embedding(4);
    CHECK(v.rows() == 16);
    CHECK(v.cols() == 5);
    CHECK(max_abs(matmul(adjoint(v), v) - CMatrix::identity(5)) < 1e-12);
}

TEST_CASE("projection back reports leakage for non-symmetric operators") {
    // A single-site operator is not permutation symmetric: projecting it into
    // the symmetric sector must flag the lost weight.
    CMatrix sz1(2, 2);
    sz1(0, 0) = 0.5;
    sz1(1, 1) = -0.5;
    const CMatrix single = kron(sz1, CMatrix::identity(4));  // one site of n = 3
    double leak = 0.0;
    full_to_dicke_op(single, 3, &leak);
    CHECK(leak > 0.1);
    // Even the permutation-invariant collective operator keeps weight outside
    // the symmetric sector: two doublet irreps with eigenvalues +-1/2 give a
    // leftover Frobenius norm of exactly 1.
    const CMatrix coll = collective_spin(3, 0.0, 0.0, Repr::FullTensor).matrix();
    full_to_dicke_op(coll, 3, &leak);
    CHECK(leak == doctest::Approx(1.0).epsilon(1e-12));
    // An operator supported on the symmetric sector compresses losslessly.
    const CMatrix w = dicke_embedding(3);
    const CMatrix inside = matmul(w, matmul(collective_spin(3, 0.7, 0.2, Repr::Dicke).matrix(), adjoint(w)));
    const CMatrix back = full_to_dicke_op(inside, 3, &leak);
    CHECK(leak < 1e-12);
    CHECK(max_abs(back - collective_spin(3, 0.7, 0.2, Repr::Dicke).matrix()) < 1e-12);
}

TEST_CASE("product state is the tensor product of its sites") {
    const std::vector<std::pair<double, double>> angles{{0.3, 0.1}, {1.2, 2.0}, {2.2, 4.0}};
    const QuantumState p = product_state(angles);
    CHECK(p.repr == Repr::FullTensor);
    CHECK(p.rho.rows() == 8);
    // Bit i of the index is site i, so the last site is the most significant
    // kron factor.
    CMatrix want = CMatrix::identity(1);
    for (auto it = angles.rbegin(); it != angles.rend(); ++it) {
        std::vector<cplx> site{std::cos(0.5 * it->first), std::polar(std::sin(0.5 * it->first), it->second)};
        want = kron(want, outer(site, site));
    }
    CHECK(max_abs(p.rho - want) < 1e-12);
}

TEST_CASE("partial trace recovers the factors of a product") {
    Rng rng(55);
    const QuantumState a = random_mixed(2, rng);
    const QuantumState b = random_mixed(3, rng);
    const CMatrix joint = kron(a.rho, b.rho);
    CHECK(max_abs(partial_trace(joint, 2, 3, true) - a.rho) < 1e-12);
    CHECK(max_abs(partial_trace(joint, 2, 3, false) - b.rho) < 1e-12);
    CHECK_THROWS_AS(partial_trace(joint, 4, 2, true), DimensionMismatchError);
}

TEST_CASE("state validation rejects malformed inputs") {
    QuantumState bad_trace;
    bad_trace.rho = CMatrix::diagonal(std::vector<double>{0.7, 0.7});
    CHECK_THROWS_AS(validate_state(bad_trace), NotAStateError);

    QuantumState not_herm;
    not_herm.rho = CMatrix(2, 2);
    not_herm.rho(0, 0) = 1.0;
    not_herm.rho(0, 1) = 0.3;
    not_herm.rho(1, 0) = -0.3;
    CHECK_THROWS_AS(validate_state(not_herm), NotHermitianError);

    QuantumState neg;
    neg.rho = CMatrix::diagonal(std::vector<double>{1.5, -0.5});
    CHECK_THROWS_AS(validate_state(neg, true), NotPSDError);

    CHECK_THROWS_AS(pure_state({cplx(1.0), cplx(1.0)}), NotAStateError);
    CHECK_THROWS_AS(make_state(CMatrix::diagonal(std::vector<double>{1.0, 0.0}), Repr::Dicke, 3),
                    DimensionMismatchError);
}

TEST_CASE("observable requires a hermitian matrix") {
    CMatrix m(2, 2);
    m(0, 1) = 1.0;
    CHECK_THROWS_AS(Observable{m}, NotHermitianError);
    CHECK_NOTHROW(Observable{pauli_z()});
}
