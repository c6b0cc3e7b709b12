#include "doctest.h"

#include <cmath>
#include <vector>

#include "qcam/asymmetry.hpp"
#include "qcam/coherence.hpp"
#include "qcam/random_states.hpp"
#include "qcam/rng.hpp"

using namespace qcam;

namespace {
constexpr double kPi = 3.14159265358979323846;

QuantumState flat_qutrit() {
    const double r = 1.0 / std::sqrt(3.0);
    return pure_state({cplx(r), cplx(r), cplx(r)});
}

Observable ladder_qutrit() {
    return Observable(CMatrix::diagonal(std::vector<double>{0.0, 1.0, 2.0}));
}
}  // namespace

TEST_CASE("mode spectrum of a three-level ladder") {
    const Observable l = ladder_qutrit();
    const ModeSpectrum spec = mode_spectrum(l);
    REQUIRE(spec.omegas.size() == 5);
    CHECK(spec.omegas == std::vector<double>{-2.0, -1.0, 0.0, 1.0, 2.0});
    CHECK(spec.contains(0.0));
    CHECK(spec.contains(-2.0));
    CHECK_FALSE(spec.contains(0.5));
    CHECK_THROWS_AS(spec.index_of(0.5), UnknownModeError);
    // Gap +1 is carried by two sector pairs, gap +2 by one.
    CHECK(spec.pairs[spec.index_of(1.0)].size() == 2);
    CHECK(spec.pairs[spec.index_of(2.0)].size() == 1);
}

TEST_CASE("flat qutrit mode weights") {
    const Observable l = ladder_qutrit();
    const ModeAnalysis ma(flat_qutrit(), l);
    const auto& spec = ma.spectrum();
    CHECK(ma.a_hs(spec.index_of(1.0)) == doctest::Approx(2.0 / 9.0).epsilon(1e-12));
    CHECK(ma.a_hs(spec.index_of(2.0)) == doctest::Approx(1.0 / 9.0).epsilon(1e-12));
    CHECK(ma.a_hs(spec.index_of(-1.0)) == doctest::Approx(2.0 / 9.0).epsilon(1e-12));
    CHECK(ma.a_tr(spec.index_of(1.0)) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(ma.a_tr(spec.index_of(2.0)) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(ma.total_hs() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(ma.value(spec.index_of(1.0), ModeNorm::HilbertSchmidt) == ma.a_hs(spec.index_of(1.0)));
}

TEST_CASE("one-shot wrappers match the cached analysis") {
    const Observable l = ladder_qutrit();
    const QuantumState rho = flat_qutrit();
    CHECK(mode_asymmetry(rho, l, 1.0, ModeNorm::Trace) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(mode_asymmetry(rho, l, 2.0, ModeNorm::HilbertSchmidt) == doctest::Approx(1.0 / 9.0).epsilon(1e-12));
    // Mode +omega collects the entries whose row sector sits omega above the
    // column sector.
    const ModeComponent mc = mode_component(rho, l, 1.0);
    CHECK(mc.omega == 1.0);
    CHECK(std::abs(mc.block(1, 0) - cplx(1.0 / 3.0)) < 1e-12);
    CHECK(std::abs(mc.block(2, 1) - cplx(1.0 / 3.0)) < 1e-12);
    CHECK(std::abs(mc.block(2, 0)) < 1e-15);
    CHECK(std::abs(mc.block(0, 1)) < 1e-15);
}

TEST_CASE("mode components sum back to the state") {
    Rng rng(31);
    const QuantumState rho = random_mixed(5, rng);
    const Observable l = random_observable(5, rng, true);
    const ModeAnalysis ma(rho, l);
    CMatrix sum(5, 5);
    for (std::size_t i = 0; i < ma.spectrum().omegas.size(); ++i) sum += ma.component(i);
    CHECK(max_abs(sum - to_eigenbasis(rho.rho, l)) < 1e-11);
}

TEST_CASE("degenerate sectors make the weights rotation invariant") {
    // Rotating inside a degenerate eigenvalue block must not change any
    // per-mode weight.
    Rng rng(32);
    const Observable l(CMatrix::diagonal(std::vector<double>{0.0, 0.0, 1.0}));
    const QuantumState rho = random_mixed(3, rng);
    const CMatrix u2 = random_unitary(2, rng);
    CMatrix u = CMatrix::identity(3);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) u(i, j) = u2(i, j);
    const QuantumState rot = make_state(hermitize(matmul(u, matmul(rho.rho, adjoint(u)))));
    const ModeAnalysis a(rho, l), b(rot, l);
    for (std::size_t i = 0; i < a.spectrum().omegas.size(); ++i) {
        CHECK(a.a_tr(i) == doctest::Approx(b.a_tr(i)).epsilon(1e-11).scale(1.0));
        CHECK(a.a_hs(i) == doctest::Approx(b.a_hs(i)).epsilon(1e-11).scale(1.0));
    }
}

TEST_CASE("translation phases each mode by its gap") {
    // Half-turn generated by a two-level splitting flips the superposition.
    const Observable l(CMatrix::diagonal(std::vector<double>{0.5, -0.5}));
    const double r = std::sqrt(0.5);
    const QuantumState plus = pure_state({cplx(r), cplx(r)});
    const QuantumState minus = pure_state({cplx(r), cplx(-r)});
    const QuantumState moved = translate(plus, l, kPi);
    CHECK(max_abs(moved.rho - minus.rho) < 1e-12);
    // A full turn is the identity.
    const QuantumState full = translate(plus, l, 2.0 * kPi);
    CHECK(max_abs(full.rho - plus.rho) < 1e-12);
    // Translation never changes mode weights.
    const ModeAnalysis a(plus, l), b(moved, l);
    for (std::size_t i = 0; i < a.spectrum().omegas.size(); ++i)
        CHECK(a.a_hs(i) == doctest::Approx(b.a_hs(i)).epsilon(1e-12).scale(1.0));
}

TEST_CASE("pure-state shortcut agrees with the dense path") {
    Rng rng(33);
    const QuantumState psi = random_pure(5, rng);
    QuantumState dense = make_state(psi.rho);  // same matrix, purity not flagged
    REQUIRE_FALSE(dense.pure);
    const Observable l = random_observable(5, rng, true);
    const ModeAnalysis fast(psi, l), slow(dense, l);
    for (std::size_t i = 0; i < fast.spectrum().omegas.size(); ++i) {
        CHECK(fast.a_tr(i) == doctest::Approx(slow.a_tr(i)).epsilon(1e-9).scale(1.0));
        CHECK(fast.a_hs(i) == doctest::Approx(slow.a_hs(i)).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("total weight equals basis coherence for nondegenerate spectra") {
    Rng rng(34);
    const QuantumState rho = random_mixed(4, rng);
    const Observable l = random_observable(4, rng, false);
    const double total = total_asymmetry(rho, l);
    const double ca = c_a(rho, l.eig().vectors).value;
    CHECK(total == doctest::Approx(ca).epsilon(1e-9));
}

TEST_CASE("state-vector extraction round trip") {
    Rng rng(35);
    const QuantumState psi = random_pure(4, rng);
    const auto amp = pure_amplitudes(psi);
    CHECK(max_abs(outer(amp, amp) - psi.rho) < 1e-12);
}
