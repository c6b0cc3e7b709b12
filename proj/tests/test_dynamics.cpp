#include "doctest.h"

#include <cmath>
#include <vector>

#include "qcam/dynamics.hpp"
#include "qcam/oracles.hpp"
#include "qcam/random_states.hpp"
#include "qcam/rng.hpp"

using namespace qcam;

namespace {

Observable ladder_qutrit() {
    return Observable(CMatrix::diagonal(std::vector<double>{0.0, 1.0, 2.0}));
}

QuantumState flat_qutrit() {
    const double r = 1.0 / std::sqrt(3.0);
    return pure_state({cplx(r), cplx(r), cplx(r)});
}

}  // namespace

TEST_CASE("kraus construction enforces trace preservation") {
    CMatrix half = CMatrix::identity(2);
    half *= cplx(0.5);
    CHECK_THROWS_AS(make_kraus({half}), NotTracePreservingError);
    CHECK_THROWS_AS(make_kraus({}), Error);
    CHECK_NOTHROW(make_kraus({CMatrix::identity(2)}));
    CMatrix a(2, 2), b(3, 3);
    CHECK_THROWS_AS(make_kraus({a, b}), DimensionMismatchError);
}

TEST_CASE("kraus application is linear and trace preserving") {
    Rng rng(61);
    KrausChannel k = random_incoherent_channel(4, 3, rng);
    const QuantumState rho = random_mixed(4, rng);
    const CMatrix out = apply_kraus(k, rho.rho);
    CHECK(trace(out).real() == doctest::Approx(1.0).epsilon(1e-12));
    CMatrix doubled = rho.rho;
    doubled *= cplx(2.0);
    CHECK(max_abs(apply_kraus(k, doubled) - (cplx(2.0) * out)) < 1e-12);
}

TEST_CASE("selective mode removal validates its target set") {
    const Observable l = ladder_qutrit();
    CHECK_THROWS_AS(partial_dephasing(l, {0.0}), Error);
    CHECK_THROWS_AS(partial_dephasing(l, {1.0, -1.0, 0.7, -0.7}), UnknownModeError);
    CHECK_THROWS_AS(partial_dephasing(l, {1.0}), ModesNotSymmetricError);
}

TEST_CASE("killing every nonzero mode leaves the diagonal") {
    const Observable l = ladder_qutrit();
    const ChannelMap full = partial_dephasing(l, {1.0, -1.0, 2.0, -2.0});
    CHECK(full.kraus.has_value());
    const CMatrix out = full.apply(flat_qutrit().rho);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            if (i == j)
                CHECK(out(i, j).real() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
            else
                CHECK(std::abs(out(i, j)) < 1e-12);
        }
}

TEST_CASE("selective removal kills only the requested gaps") {
    const Observable l = ladder_qutrit();
    const ChannelMap ch = partial_dephasing(l, {1.0, -1.0});
    const QuantumState out = make_state(hermitize(ch.apply(flat_qutrit().rho)));
    CHECK(std::abs(out.rho(1, 0)) < 1e-13);  // gap-1 entries gone
    CHECK(std::abs(out.rho(2, 1)) < 1e-13);
    CHECK(std::abs(out.rho(2, 0) - cplx(1.0 / 3.0)) < 1e-13);  // gap-2 survives
}

TEST_CASE("single-entry-per-column channels preserve diagonality") {
    Rng rng(62);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t dim = 2 + rng.integer(6);
        const std::size_t nk = 1 + rng.integer(4);
        // Construction itself revalidates completeness on every draw.
        const KrausChannel k = random_incoherent_channel(dim, nk, rng);
        std::vector<double> p(dim, 0.0);
        double left = 1.0;
        for (std::size_t i = 0; i + 1 < dim; ++i) {
            p[i] = left * rng.uniform();
            left -= p[i];
        }
        p[dim - 1] = left;
        const CMatrix out = apply_kraus(k, CMatrix::diagonal(p));
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                if (i != j) CHECK(std::abs(out(i, j)) < 1e-13);
        CHECK(trace(out).real() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("commuting and non-commuting channels are told apart") {
    Rng rng(63);
    const Observable l = ladder_qutrit();
    // Identity-like map built from an empty kill set commutes with the modes.
    const ChannelMap ident = partial_dephasing(l, {});
    CHECK(covariance_check(ident, l, 10, 555).covariant);
    // Conjugation by a dense unitary mixes sectors and must be flagged.
    const CMatrix u = random_unitary(3, rng);
    ChannelMap dense;
    dense.apply = [u](const CMatrix& m) { return matmul(u, matmul(m, adjoint(u))); };
    dense.description = "dense unitary conjugation";
    CHECK_FALSE(covariance_check(dense, l, 10, 555).covariant);
}

TEST_CASE("random structure-preserving channels pass their own check") {
    Rng rng(64);
    const Observable l = ladder_qutrit();
    for (int trial = 0; trial < 5; ++trial) {
        const ChannelMap ch = random_covariant_channel(l, rng);
        CHECK(covariance_check(ch, l, 8, 777 + trial).covariant);
    }
}

TEST_CASE("two-level amplitude decay follows the exact exponential") {
    LindbladSpec spec;
    spec.jump = lowering_operator(1, Repr::FullTensor);
    spec.dt = 1e-3;
    spec.steps = 1000;
    spec.record_stride = 1000;
    const QuantumState up = pure_state({cplx(1.0), cplx(0.0)}, Repr::FullTensor, 1);
    const Trajectory traj = lindblad_evolve(up, spec);
    REQUIRE(traj.states.size() == 2);
    CHECK(traj.times.back() == doctest::Approx(1.0).epsilon(1e-12));
    const double p = traj.states.back().rho(0, 0).real();
    CHECK(p == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
    CHECK(traj.max_step_trace_drift < 1e-12);
}

TEST_CASE("integrator rejects an unstable step size") {
    CMatrix strong = lowering_operator(1, Repr::FullTensor);
    strong *= cplx(40.0);
    LindbladSpec spec;
    spec.jump = strong;
    spec.dt = 0.1;
    spec.steps = 10;
    const QuantumState up = pure_state({cplx(1.0), cplx(0.0)}, Repr::FullTensor, 1);
    CHECK_THROWS_AS(lindblad_evolve(up, spec), StepTooLargeError);
    spec.dt = -1.0;
    CHECK_THROWS_AS(lindblad_evolve(up, spec), StepTooLargeError);
}

TEST_CASE("integrated collective dephasing matches the closed form") {
    const int n = 4;
    const double th = 1.1, ph = 0.7, tau = 0.05;
    LindbladSpec spec;
    spec.jump = collective_spin(n, 0.0, 0.0, Repr::Dicke).matrix();
    spec.dt = 1e-4;
    spec.steps = 500;
    spec.record_stride = 500;
    const Trajectory traj = lindblad_evolve(ghz_state(n, th, ph, Repr::Dicke), spec);
    const QuantumState closed = dephased_ghz(n, th, ph, tau, Repr::Dicke);
    CHECK(max_abs(traj.states.back().rho - closed.rho) < 1e-8);
}

TEST_CASE("dephased-superposition mode weights match their closed forms") {
    const int n = 5;
    const double th = 1.1, ph = 0.3, tau = 0.02;
    const QuantumState rho = dephased_ghz(n, th, ph, tau, Repr::Dicke);
    const Observable sz(collective_spin(n, 0.0, 0.0, Repr::Dicke));
    const ModeAnalysis ma(rho, sz);
    const auto idx = ma.spectrum().index_of(static_cast<double>(n));
    CHECK(ma.a_tr(idx) == doctest::Approx(oracle::dephased_ghz_a_tr(n, th, tau)).epsilon(1e-10));
    CHECK(ma.a_hs(idx) == doctest::Approx(oracle::dephased_ghz_a_hs(n, th, tau)).epsilon(1e-10));
    // tau = 0 reproduces the clean state in both representations.
    const QuantumState clean = dephased_ghz(n, th, ph, 0.0, Repr::Dicke);
    CHECK(max_abs(clean.rho - ghz_state(n, th, ph, Repr::Dicke).rho) < 1e-13);
    const QuantumState full = dephased_ghz(3, th, ph, tau, Repr::FullTensor);
    const double gamma = std::exp(-0.5 * 9.0 * tau);
    const double want = 0.5 * std::sin(th) * gamma;
    CHECK(std::abs(full.rho(0, 7)) == doctest::Approx(want).epsilon(1e-12));
    CHECK_THROWS_AS(dephased_ghz(3, th, ph, -0.1), Error);
}

TEST_CASE("trajectory recording respects the stride") {
    LindbladSpec spec;
    spec.jump = collective_spin(3, 0.0, 0.0, Repr::Dicke).matrix();
    spec.dt = 1e-3;
    spec.steps = 10;
    spec.record_stride = 2;
    const Trajectory traj = lindblad_evolve(ghz_state(3, 1.0, 0.0, Repr::Dicke), spec);
    REQUIRE(traj.times.size() == 6);  // tau = 0 plus every second step
    CHECK(traj.times[1] == doctest::Approx(2e-3).epsilon(1e-12));
    CHECK(traj.states.size() == traj.times.size());
}
