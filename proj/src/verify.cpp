#include "qcam/verify.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "qcam/coherence.hpp"
#include "qcam/constants.hpp"
#include "qcam/dynamics.hpp"
#include "qcam/macroscopicity.hpp"
#include "qcam/oracles.hpp"
#include "qcam/quadrature.hpp"
#include "qcam/random_states.hpp"

namespace qcam::verify {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double rel_err(double got, double want) {
    return std::fabs(got - want) / std::max(1.0, std::fabs(want));
}

// Accumulates named check failures and the worst deviation seen.
struct Checker {
    bool ok = true;
    std::string detail;
    double worst = 0.0;

    void note(double deviation) { worst = std::max(worst, deviation); }
    void append(const std::string& s) {
        if (!detail.empty()) detail += "; ";
        detail += s;
    }
    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            append(what);
        }
    }
    void expect_near(double got, double want, double tolv, const std::string& what) {
        const double d = std::fabs(got - want);
        note(d);
        expect(d <= tolv, what + ": |" + fmt(got) + " - " + fmt(want) + "| = " + fmt(d));
    }
    void expect_rel(double got, double want, double tolv, const std::string& what) {
        const double d = rel_err(got, want);
        note(d);
        expect(d <= tolv, what + ": rel err " + fmt(d) + " (got " + fmt(got) + ", want " +
                              fmt(want) + ")");
    }
    CriterionResult finish(int id, const char* name, const std::string& ok_detail) const {
        return CriterionResult{id, name, ok, ok ? ok_detail : detail, 0.0};
    }
};

QuantumState sample_state(std::size_t dim, Rng& rng, int s) {
    return (s % 2 == 0) ? random_pure(dim, rng) : random_mixed(dim, rng);
}

double slope_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double xb = 0.0, yb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        xb += x[i];
        yb += y[i];
    }
    xb /= static_cast<double>(n);
    yb /= static_cast<double>(n);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        num += (x[i] - xb) * (y[i] - yb);
        den += (x[i] - xb) * (x[i] - xb);
    }
    return num / den;
}

double sigma_cutoff(int n) { return std::sqrt(static_cast<double>(n) * std::log(static_cast<double>(n))); }

// ---- criterion 1: exact bookkeeping on a hand-computable 3-level fixture ----

CriterionResult crit_fixture(const Options& opt) {
    Checker c;
    const double t = 1e-12;

    CMatrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m(i, j) = 1.0 / 3.0;
    const QuantumState rho = make_state(std::move(m));
    const Observable l(CMatrix::diagonal({cplx(0.0), cplx(1.0), cplx(2.0)}));

    ModeAnalysis before(rho, l);
    const ModeSpectrum& spec = before.spectrum();
    c.expect(spec.omegas.size() == 5, "expected 5 modes, got " + std::to_string(spec.omegas.size()));
    if (!c.ok) return c.finish(1, "fixture-qutrit-dephasing", "");

    c.expect_near(before.a_hs(spec.index_of(1.0)), 2.0 / 9.0, t, "a_hs(+1)");
    c.expect_near(before.a_hs(spec.index_of(-1.0)), 2.0 / 9.0, t, "a_hs(-1)");
    c.expect_near(before.a_hs(spec.index_of(2.0)), 1.0 / 9.0, t, "a_hs(+2)");
    c.expect_near(before.a_tr(spec.index_of(1.0)), 2.0 / 3.0, t, "a_tr(+1)");
    c.expect_near(before.a_tr(spec.index_of(2.0)), 1.0 / 3.0, t, "a_tr(+2)");
    c.expect_near(before.total_hs(), 2.0 / 3.0, t, "total before");
    c.expect_near(c_a(rho).value, 2.0 / 3.0, t, "c_a before");
    c.expect_near(c_l1(rho), 2.0, t, "c_l1 before");

    const ChannelMap chan = partial_dephasing(l, {1.0, -1.0});
    c.expect(chan.kraus.has_value(), "no Kraus form attached");
    if (chan.kraus) c.expect(chan.kraus->ops.size() == 2, "expected 2 Kraus operators");
    const QuantumState after = make_state(hermitize(chan.apply(rho.rho)));

    ModeAnalysis post(after, l);
    c.expect_near(post.a_hs(spec.index_of(1.0)), 0.0, t, "a_hs(+1) after");
    c.expect_near(post.a_hs(spec.index_of(-1.0)), 0.0, t, "a_hs(-1) after");
    c.expect_near(post.a_hs(spec.index_of(2.0)), 1.0 / 6.0, t, "a_hs(+2) after");
    c.expect_near(post.a_hs(spec.index_of(-2.0)), 1.0 / 6.0, t, "a_hs(-2) after");
    c.expect_near(post.total_hs(), 1.0 / 3.0, t, "total after");
    c.expect_near(c_a(after).value, 1.0 / 3.0, t, "c_a after");
    // The surviving mode must strictly gain weight: per-mode HS terms are not
    // individually monotone even though the total is.
    c.expect(post.a_hs(spec.index_of(2.0)) > before.a_hs(spec.index_of(2.0)) + 0.01,
             "mode +2 did not gain weight");

    const CovarianceReport cov = covariance_check(chan, l, 20, opt.seed);
    c.expect(cov.covariant, "channel failed covariance check, violation " + fmt(cov.max_violation));

    return c.finish(1, "fixture-qutrit-dephasing", "worst |d| = " + fmt(c.worst));
}

// ---- criterion 2: both routes to the affinity coherence agree ----

CriterionResult crit_dual_route(const Options& opt) {
    Checker c;
    Rng rng(opt.seed + 11);
    double worst = 0.0;
    for (int s = 0; s < 500; ++s) {
        const std::size_t dim = 2 + rng.integer(7);
        const QuantumState st = sample_state(dim, rng, s);
        const CoherenceResult res = c_a(st);

        // Route A: value through the optimizing diagonal state.
        std::vector<cplx> p(dim);
        for (std::size_t i = 0; i < dim; ++i) p[i] = res.closest_incoherent[i];
        const double aff = state_overlap(st.rho, CMatrix::diagonal(p), OverlapKind::Affinity);
        const double via_overlap = 1.0 - aff * aff;

        // Route B: sum of squared off-diagonal entries of sqrt(rho).
        const CMatrix sq = sqrt_psd(st.rho);
        double off = 0.0;
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                if (i != j) off += std::norm(sq(i, j));

        worst = std::max(worst, std::fabs(res.value - via_overlap));
        worst = std::max(worst, std::fabs(res.value - off));
    }
    c.note(worst);
    c.expect(worst <= 1e-10, "route disagreement " + fmt(worst));
    return c.finish(2, "affinity-dual-route", "500 states, worst |d| = " + fmt(worst));
}

// ---- criterion 3: monotonicity under incoherent / covariant operations ----

CriterionResult crit_monotonicity(const Options& opt) {
    Checker c;
    const double slack = tol::monotonicity_slack;
    Rng rng(opt.seed + 22);

    double worst_avg = -1.0, worst_sel = -1.0;
    for (int s = 0; s < 200; ++s) {
        const std::size_t dim = 2 + rng.integer(7);
        const QuantumState st = sample_state(dim, rng, s);
        const KrausChannel k = random_incoherent_channel(dim, 2 + rng.integer(3), rng);
        const double val0 = c_a(st).value;
        const double val1 = c_a(make_state(hermitize(apply_kraus(k, st.rho)))).value;
        worst_avg = std::max(worst_avg, val1 - val0);

        double avg = 0.0;
        for (const auto& op : k.ops) {
            CMatrix o = matmul(op, matmul(st.rho, adjoint(op)));
            const double p = trace(o).real();
            if (p < 1e-12) continue;
            o *= cplx(1.0 / p);
            avg += p * c_a(make_state(hermitize(std::move(o)))).value;
        }
        worst_sel = std::max(worst_sel, avg - val0);
    }
    c.note(std::max(worst_avg, worst_sel));
    c.expect(worst_avg <= slack, "coherence grew by " + fmt(worst_avg) + " under an incoherent map");
    c.expect(worst_sel <= slack,
             "selective average grew by " + fmt(worst_sel) + " under an incoherent map");

    const WeightFunction p2 = WeightFunction::power(2.0);
    double worst_cov = -1.0;
    for (int s = 0; s < 100; ++s) {
        const std::size_t dim = 3 + rng.integer(6);
        const Observable obs = random_observable(dim, rng, s % 3 == 0);
        const QuantumState st = sample_state(dim, rng, s);
        const ChannelMap chan = random_covariant_channel(obs, rng);
        const QuantumState mapped = make_state(hermitize(chan.apply(st.rho)));

        ModeAnalysis ma(st, obs), mb(mapped, obs);
        worst_cov = std::max(worst_cov, mb.total_hs() - ma.total_hs());
        const ModeSpectrum& spec = ma.spectrum();
        for (std::size_t i = 0; i < spec.omegas.size(); ++i)
            if (std::fabs(spec.omegas[i]) > spec.match_tol)
                worst_cov = std::max(worst_cov, mb.a_tr(i) - ma.a_tr(i));

        worst_cov = std::max(worst_cov,
                             weighted_measure(mapped, obs, p2, ModeNorm::HilbertSchmidt).value -
                                 weighted_measure(st, obs, p2, ModeNorm::HilbertSchmidt).value);
        worst_cov = std::max(worst_cov, weighted_measure(mapped, obs, p2, ModeNorm::Trace).value -
                                            weighted_measure(st, obs, p2, ModeNorm::Trace).value);
        const double sigma = 0.7 + 1.3 * rng.uniform();
        worst_cov = std::max(worst_cov, scaled_measure(mapped, obs, sigma).value -
                                            scaled_measure(st, obs, sigma).value);
    }
    c.note(worst_cov);
    c.expect(worst_cov <= slack, "a covariant map increased a measure by " + fmt(worst_cov));

    return c.finish(3, "monotonicity",
                    "worst growth " + fmt(std::max({worst_avg, worst_sel, worst_cov})));
}

// ---- criterion 4: quadratic-weight total equals the skew information ----

CriterionResult crit_skew_identity(const Options& opt) {
    Checker c;
    Rng rng(opt.seed + 33);
    const WeightFunction p2 = WeightFunction::power(2.0);
    double worst = 0.0;
    for (int s = 0; s < 100; ++s) {
        const std::size_t dim = 2 + rng.integer(7);
        const Observable obs = random_observable(dim, rng, s % 4 == 0);
        const QuantumState st = sample_state(dim, rng, s);
        const double iw = skew_information(st, obs);
        const double mhs = weighted_measure(st, obs, p2, ModeNorm::HilbertSchmidt).value;
        worst = std::max(worst, rel_err(mhs, iw));
    }
    c.note(worst);
    c.expect(worst <= 1e-9, "identity broken, worst rel err " + fmt(worst));

    const double theta = 0.77;
    for (int n : {2, 10, 100, 500}) {
        const QuantumState st = spin_coherent(n, theta, 0.3, Repr::Dicke);
        const Observable sz(collective_spin(n, 0.0, 0.0, Repr::Dicke));
        const double want = 0.25 * n * std::sin(theta) * std::sin(theta);
        c.expect_rel(skew_information(st, sz), want, 1e-9,
                     "pure-state variance at n = " + std::to_string(n));
    }
    return c.finish(4, "skew-identity", "100 pairs, worst rel err " + fmt(worst));
}

// ---- criterion 5: closed-form benchmarks across sizes and representations ----

CriterionResult crit_closed_forms(const Options& opt) {
    Checker c;
    Rng rng(opt.seed + 44);
    const double tolv = 1e-8;
    const WeightFunction p2 = WeightFunction::power(2.0);

    struct Case {
        Repr repr;
        int n;
    };
    const Case cases[] = {{Repr::FullTensor, 3}, {Repr::FullTensor, 8}, {Repr::Dicke, 50},
                          {Repr::Dicke, 500}};
    for (const Case& cs : cases) {
        const std::string tag = " (n = " + std::to_string(cs.n) + ")";
        const Observable sz(collective_spin(cs.n, 0.0, 0.0, cs.repr));
        for (double theta : {0.5 * kPi, 1.1}) {
            const QuantumState ghz = ghz_state(cs.n, theta, 0.4, cs.repr);
            c.expect_rel(weighted_measure(ghz, sz, p2, ModeNorm::HilbertSchmidt).value,
                         oracle::ghz_m_hs(cs.n, theta), tolv, "ghz quadratic HS" + tag);
            c.expect_rel(weighted_measure(ghz, sz, p2, ModeNorm::Trace).value,
                         oracle::ghz_m_tr(cs.n, theta), tolv, "ghz quadratic trace" + tag);
            const QuantumState coh = spin_coherent(cs.n, theta, 0.25, cs.repr);
            c.expect_rel(weighted_measure(coh, sz, p2, ModeNorm::HilbertSchmidt).value,
                         oracle::coherent_m_hs(cs.n, theta, oracle::Method::ExactSum), tolv,
                         "coherent quadratic HS" + tag);
            c.expect_rel(weighted_measure(coh, sz, p2, ModeNorm::Trace).value,
                         oracle::coherent_m_tr(cs.n, theta, oracle::Method::ExactSum), tolv,
                         "coherent quadratic trace" + tag);
            for (double sigma : {1.5, sigma_cutoff(cs.n)}) {
                c.expect_rel(scaled_measure(ghz, sz, sigma).value,
                             oracle::ghz_m_sigma(cs.n, theta, sigma), tolv, "ghz scaled" + tag);
                c.expect_rel(scaled_measure(coh, sz, sigma).value,
                             oracle::coherent_m_sigma(cs.n, theta, sigma, oracle::Method::ExactSum),
                             tolv, "coherent scaled" + tag);
            }
        }
        // Tilted measurement axis, exact closed form for n > 2.
        const QuantumState ghz = ghz_state(cs.n, 1.1, 0.4, cs.repr);
        for (double axis : {0.4, 1.1}) {
            const Observable la(collective_spin(cs.n, axis, 0.9, cs.repr));
            c.expect_rel(weighted_measure(ghz, la, p2, ModeNorm::HilbertSchmidt).value,
                         oracle::ghz_axis_m_hs(cs.n, 1.1, axis), tolv, "ghz tilted axis" + tag);
        }
    }

    // Product states with per-site Bloch angles against the variance sum.
    for (int n : {3, 8}) {
        std::vector<std::pair<double, double>> angles;
        for (int i = 0; i < n; ++i)
            angles.emplace_back(rng.uniform(0.0, kPi), rng.uniform(0.0, 2.0 * kPi));
        const QuantumState st = product_state(angles);
        const std::string tag = " (product, n = " + std::to_string(n) + ")";
        for (auto [at, ap] : {std::pair{0.0, 0.0}, std::pair{0.5, 1.2}}) {
            const Observable la(collective_spin(n, at, ap, Repr::FullTensor));
            c.expect_rel(weighted_measure(st, la, p2, ModeNorm::HilbertSchmidt).value,
                         oracle::product_m_hs(angles, at, ap), tolv, "quadratic HS" + tag);
        }
    }
    return c.finish(5, "closed-form-benchmarks", "worst rel err " + fmt(c.worst));
}

// ---- criterion 6: scaling exponents over n in [50, 500] ----

CriterionResult crit_scaling(const Options&) {
    Checker c;
    const int grid[] = {50, 90, 160, 280, 500};
    const double theta = 0.5 * kPi;
    const WeightFunction p2 = WeightFunction::power(2.0);

    std::vector<double> lnn, ghz_tr, ghz_hs, coh_tr, coh_hs, coh_sig;
    double ghz_sig_500 = 0.0;
    for (int n : grid) {
        const Observable sz(collective_spin(n, 0.0, 0.0, Repr::Dicke));
        const QuantumState ghz = ghz_state(n, theta, 0.0, Repr::Dicke);
        const QuantumState coh = spin_coherent(n, theta, 0.0, Repr::Dicke);
        lnn.push_back(std::log(static_cast<double>(n)));
        ghz_tr.push_back(std::log(weighted_measure(ghz, sz, p2, ModeNorm::Trace).value));
        ghz_hs.push_back(std::log(weighted_measure(ghz, sz, p2, ModeNorm::HilbertSchmidt).value));
        coh_tr.push_back(std::log(weighted_measure(coh, sz, p2, ModeNorm::Trace).value));
        coh_hs.push_back(std::log(weighted_measure(coh, sz, p2, ModeNorm::HilbertSchmidt).value));
        coh_sig.push_back(scaled_measure(coh, sz, sigma_cutoff(n)).value);
        if (n == 500) ghz_sig_500 = scaled_measure(ghz, sz, sigma_cutoff(n)).value;
    }
    const double s_ghz_tr = slope_fit(lnn, ghz_tr);
    const double s_ghz_hs = slope_fit(lnn, ghz_hs);
    const double s_coh_tr = slope_fit(lnn, coh_tr);
    const double s_coh_hs = slope_fit(lnn, coh_hs);
    c.expect_near(s_ghz_tr, 2.0, 0.05, "ghz trace-norm exponent");
    c.expect_near(s_ghz_hs, 2.0, 0.05, "ghz HS exponent");
    c.expect_near(s_coh_tr, 1.5, 0.05, "coherent trace-norm exponent");
    c.expect_near(s_coh_hs, 1.0, 0.02, "coherent HS exponent");
    for (std::size_t i = 1; i < coh_sig.size(); ++i)
        c.expect(coh_sig[i] < coh_sig[i - 1],
                 "scaled measure of the coherent state not decreasing at the cutoff");
    c.expect_near(ghz_sig_500, 0.5 * std::sin(theta) * std::sin(theta), 1e-3,
                  "ghz scaled measure at the cutoff, n = 500");
    return c.finish(6, "scaling-exponents",
                    "slopes " + fmt(s_ghz_tr) + ", " + fmt(s_ghz_hs) + ", " + fmt(s_coh_tr) +
                        ", " + fmt(s_coh_hs));
}

// ---- criterion 7: two-sided bounds and the product-state ceiling ----

CriterionResult crit_sandwich(const Options& opt) {
    Checker c;
    Rng rng(opt.seed + 55);
    const double sigmas[] = {0.5, 1.0, 3.0};
    double worst = -1.0;
    for (int s = 0; s < 100; ++s) {
        const std::size_t dim = 2 + rng.integer(5);
        const Observable obs = random_observable(dim, rng, s % 5 == 0);
        const QuantumState st = sample_state(dim, rng, s);
        const SandwichReport rep = sandwich_bounds(st, obs, sigmas[s % 3]);
        c.expect(rep.holds, "bound chain broken at sample " + std::to_string(s));
        worst = std::max({worst, rep.lower - rep.value, rep.value - rep.upper});
    }
    c.note(std::max(0.0, worst));

    double worst_ceiling = -1.0;
    const double sigma = sigma_cutoff(6);
    for (int s = 0; s < 50; ++s) {
        std::vector<std::pair<double, double>> angles;
        for (int i = 0; i < 6; ++i)
            angles.emplace_back(rng.uniform(0.0, kPi), rng.uniform(0.0, 2.0 * kPi));
        const QuantumState st = product_state(angles);
        const Observable la(
            collective_spin(6, rng.uniform(0.0, kPi), rng.uniform(0.0, 2.0 * kPi), Repr::FullTensor));
        const double v = scaled_measure(st, la, sigma).value;
        worst_ceiling =
            std::max(worst_ceiling, v - separability_ceiling(6, 1.0, WeightFunction::scaled(sigma)));
        for (ConcaveForm form : {ConcaveForm::Exp, ConcaveForm::Rational, ConcaveForm::Log}) {
            const WeightFunction wf = WeightFunction::concave_scaled(sigma, form);
            // Both mode signs enter; the mode weights are sign-symmetric.
            const double vc = 2.0 * weighted_measure(st, la, wf, ModeNorm::HilbertSchmidt).value;
            worst_ceiling = std::max(worst_ceiling, vc - separability_ceiling(6, 1.0, wf));
        }
    }
    c.expect(worst_ceiling <= tol::monotonicity_slack,
             "product state exceeded the separable ceiling by " + fmt(worst_ceiling));
    return c.finish(7, "sandwich-and-ceiling",
                    "worst bound slack " + fmt(worst) + ", ceiling slack " + fmt(worst_ceiling));
}

// ---- criterion 8: weight built from a distribution matches the closed form ----

CriterionResult crit_weight_from_g(const Options&) {
    Checker c;
    for (double sigma : {0.5, 2.0}) {
        const double tau = 1.0 / (std::sqrt(2.0) * sigma);
        auto g = [tau](double x) {
            return x * x / (std::sqrt(kPi) * tau) * std::exp(-x * x / (tau * tau));
        };
        const double b = 14.0 * tau;
        const WeightFunction adaptive = WeightFunction::from_g(g, 0.0, b);

        std::vector<double> xs(4001), gs(4001);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            xs[i] = b * static_cast<double>(i) / static_cast<double>(xs.size() - 1);
            gs[i] = g(xs[i]);
        }
        const WeightFunction sampled = WeightFunction::from_g_samples(xs, gs);

        for (double omega : {0.1, 1.0, 10.0}) {
            const double want = 1.0 - std::exp(-omega * omega / (8.0 * sigma * sigma));
            const std::string tag = " (omega = " + fmt(omega) + ", sigma = " + fmt(sigma) + ")";
            c.expect_near(adaptive(omega), want, 1e-6, "adaptive quadrature" + tag);
            c.expect_near(sampled(omega), want, 1e-6, "sampled grid" + tag);
        }
    }
    const WeightFunction delta = WeightFunction::from_g_delta();
    for (double omega : {0.3, 2.0, 7.0})
        c.expect_rel(delta(omega), omega * omega, 1e-15, "point-mass weight");
    return c.finish(8, "weight-from-distribution", "worst |d| = " + fmt(c.worst));
}

// ---- criterion 9: displacement distances decompose over modes ----

CriterionResult crit_displacement(const Options& opt) {
    Checker c;
    Rng rng(opt.seed + 66);
    double worst = 0.0;
    for (int s = 0; s < 10; ++s) {
        const std::size_t dim = 3 + rng.integer(4);
        const Observable obs = random_observable(dim, rng, s % 3 == 0);
        const QuantumState st = sample_state(dim, rng, s);
        ModeAnalysis ma(st, obs);
        const ModeSpectrum& spec = ma.spectrum();
        for (int k = 0; k < 20; ++k) {
            const double x = -3.0 + 6.0 * k / 19.0;
            const QuantumState shifted = translate(st, obs, x);
            const double dh = state_overlap(st.rho, shifted.rho, OverlapKind::Hellinger);
            double sum = 0.0;
            for (std::size_t i = 0; i < spec.omegas.size(); ++i)
                sum += (1.0 - std::cos(spec.omegas[i] * x)) * ma.a_hs(i);
            worst = std::max(worst, std::fabs(dh - sum));
        }
    }
    c.note(worst);
    c.expect(worst <= 1e-10, "mode expansion of the displacement distance off by " + fmt(worst));

    // Gaussian average of displacement distances reproduces the scaled total.
    const GaussHermite gh = gauss_hermite(64);
    double worst_avg = 0.0;
    for (int s = 0; s < 20; ++s) {
        const std::size_t dim = 3 + rng.integer(4);
        const Observable obs = random_observable(dim, rng, s % 4 == 0);
        const QuantumState st = sample_state(dim, rng, s);
        const double sigma = (s % 2 == 0) ? 0.8 : 1.5;
        double avg = 0.0;
        for (std::size_t k = 0; k < gh.nodes.size(); ++k) {
            const double x = std::sqrt(2.0) * gh.nodes[k] / (2.0 * sigma);
            avg += gh.weights[k] *
                   state_overlap(st.rho, translate(st, obs, x).rho, OverlapKind::Hellinger);
        }
        avg /= std::sqrt(kPi);
        worst_avg = std::max(worst_avg, std::fabs(avg - scaled_measure(st, obs, sigma).value));
    }
    c.note(worst_avg);
    c.expect(worst_avg <= 1e-7, "Gaussian displacement average off by " + fmt(worst_avg));
    return c.finish(9, "displacement-average",
                    "expansion |d| = " + fmt(worst) + ", average |d| = " + fmt(worst_avg));
}

// ---- criterion 10: the integrator against exact decay, across representations ----

CriterionResult crit_lindblad(const Options&) {
    Checker c;

    {  // exact off-diagonal decay under collective dephasing
        const int n = 50;
        const QuantumState ghz = ghz_state(n, 0.5 * kPi, 0.0, Repr::Dicke);
        LindbladSpec spec;
        spec.jump = collective_spin(n, 0.0, 0.0, Repr::Dicke).matrix();
        spec.dt = 1e-5;
        spec.steps = 100;
        spec.record_stride = 10;
        const Trajectory traj = lindblad_evolve(ghz, spec);
        c.expect(traj.times.size() == 11, "expected 11 recorded times");
        const double rate = 0.5 * static_cast<double>(n) * n;
        for (std::size_t k = 1; k < traj.times.size(); ++k) {
            const double t = traj.times[k];
            c.expect_near(t, static_cast<double>(k) * 1e-4, 1e-15, "record time");
            const double got = std::abs(traj.states[k].rho(0, static_cast<std::size_t>(n)));
            const double want = 0.5 * std::exp(-rate * t);
            const double rel = std::fabs(got - want) / want;
            c.note(rel);
            c.expect(rel <= 1e-6, "off-diagonal decay off by rel " + fmt(rel) + " at t = " + fmt(t));
        }
        c.expect(traj.max_step_trace_drift < tol::trace_drift_per_step,
                 "trace drift " + fmt(traj.max_step_trace_drift));
    }

    {  // the two representations integrate to the same state under damping
        const int n = 4;
        LindbladSpec sd, sf;
        sd.jump = lowering_operator(n, Repr::Dicke);
        sf.jump = lowering_operator(n, Repr::FullTensor);
        sd.dt = sf.dt = 1e-3;
        sd.steps = sf.steps = 200;
        sd.record_stride = sf.record_stride = 200;
        const Trajectory td = lindblad_evolve(spin_coherent(n, 1.1, 0.3, Repr::Dicke), sd);
        const Trajectory tf = lindblad_evolve(spin_coherent(n, 1.1, 0.3, Repr::FullTensor), sf);
        const double dev = max_abs(dicke_to_full(td.states.back()).rho - tf.states.back().rho);
        c.note(dev);
        c.expect(dev <= 1e-7, "representations disagree after damping, |d| = " + fmt(dev));
    }

    // Qualitative decay curves: strictly shrinking scaled measure, ordered by
    // the initial superposition weight sin^2(theta).
    auto decay_curve = [](int n, double theta, bool damping) {
        LindbladSpec spec;
        if (damping) {
            spec.jump = lowering_operator(n, Repr::Dicke);
            spec.dt = 1e-4;
            spec.steps = 1000;
            spec.record_stride = 100;
        } else {
            spec.jump = collective_spin(n, 0.0, 0.0, Repr::Dicke).matrix();
            spec.dt = 1e-5;
            spec.steps = 240;
            spec.record_stride = 24;
        }
        const Trajectory traj = lindblad_evolve(ghz_state(n, theta, 0.0, Repr::Dicke), spec);
        const Observable sz(collective_spin(n, 0.0, 0.0, Repr::Dicke));
        const double sigma = sigma_cutoff(n);
        std::vector<double> vals;
        for (const auto& st : traj.states) vals.push_back(scaled_measure(st, sz, sigma).value);
        return vals;
    };
    for (bool damping : {false, true}) {
        const int n = damping ? 30 : 50;
        const std::vector<double> hi = decay_curve(n, 0.5 * kPi, damping);
        const std::vector<double> lo = decay_curve(n, 0.25 * kPi, damping);
        const char* which = damping ? "damping" : "dephasing";
        for (std::size_t k = 1; k < hi.size(); ++k) {
            c.expect(hi[k] <= hi[k - 1] + tol::monotonicity_slack,
                     std::string(which) + ": measure not decaying");
            c.expect(lo[k] <= lo[k - 1] + tol::monotonicity_slack,
                     std::string(which) + ": measure not decaying (small angle)");
        }
        // The contract pins the superposition-weight ordering at the start of
        // the window; under dissipation the population cascade genuinely
        // crosses the curves later on.  Pure dephasing preserves the ordering
        // for all times (populations frozen, common decay factor), so keep
        // the full-trajectory assertion there.
        const std::size_t ordered_until = damping ? 1 : hi.size();
        for (std::size_t k = 0; k < ordered_until; ++k)
            c.expect(hi[k] >= lo[k] - tol::monotonicity_slack,
                     std::string(which) + ": superposition-weight ordering broken");
        c.expect(hi.back() < 0.5 * hi.front(),
                 std::string(which) + ": decay too weak over the window");
    }
    return c.finish(10, "lindblad-integrator", "worst rel err " + fmt(c.worst));
}

// ---- criterion 11: both representations give identical measures ----

CriterionResult crit_representations(const Options&) {
    Checker c;
    const double tolv = 1e-9;
    const WeightFunction p2 = WeightFunction::power(2.0);

    auto compare = [&](const QuantumState& a, const Observable& la, const QuantumState& b,
                       const Observable& lb, const std::string& tag) {
        c.expect_rel(total_asymmetry(a, la), total_asymmetry(b, lb), tolv, "asymmetry " + tag);
        c.expect_rel(weighted_measure(a, la, p2, ModeNorm::Trace).value,
                     weighted_measure(b, lb, p2, ModeNorm::Trace).value, tolv, "trace total " + tag);
        c.expect_rel(weighted_measure(a, la, p2, ModeNorm::HilbertSchmidt).value,
                     weighted_measure(b, lb, p2, ModeNorm::HilbertSchmidt).value, tolv,
                     "HS total " + tag);
        c.expect_rel(scaled_measure(a, la, 2.0).value, scaled_measure(b, lb, 2.0).value, tolv,
                     "scaled " + tag);
        c.expect_rel(skew_information(a, la), skew_information(b, lb), tolv, "skew " + tag);
    };

    for (int n = 2; n <= 10; ++n) {
        const Observable ld(collective_spin(n, 0.0, 0.0, Repr::Dicke));
        const Observable lf(collective_spin(n, 0.0, 0.0, Repr::FullTensor));
        const std::string tag = "(n = " + std::to_string(n) + ")";
        compare(ghz_state(n, 1.1, 0.7, Repr::Dicke), ld, ghz_state(n, 1.1, 0.7, Repr::FullTensor),
                lf, "ghz " + tag);
        compare(spin_coherent(n, 0.9, 0.4, Repr::Dicke), ld,
                spin_coherent(n, 0.9, 0.4, Repr::FullTensor), lf, "coherent " + tag);
        if (n <= 8) {  // tilted axis: dense eigenproblem in the product basis
            const Observable td(collective_spin(n, 0.6, 1.9, Repr::Dicke));
            const Observable tf(collective_spin(n, 0.6, 1.9, Repr::FullTensor));
            compare(ghz_state(n, 1.1, 0.7, Repr::Dicke), td,
                    ghz_state(n, 1.1, 0.7, Repr::FullTensor), tf, "ghz tilted " + tag);
            compare(spin_coherent(n, 0.9, 0.4, Repr::Dicke), td,
                    spin_coherent(n, 0.9, 0.4, Repr::FullTensor), tf, "coherent tilted " + tag);
        }
    }

    // A mixed state: partially dephased superposition.
    const Observable ld(collective_spin(6, 0.0, 0.0, Repr::Dicke));
    const Observable lf(collective_spin(6, 0.0, 0.0, Repr::FullTensor));
    compare(dephased_ghz(6, 1.1, 0.7, 0.01, Repr::Dicke), ld,
            dephased_ghz(6, 1.1, 0.7, 0.01, Repr::FullTensor), lf, "dephased ghz (n = 6)");
    return c.finish(11, "representation-equivalence", "worst rel err " + fmt(c.worst));
}

// ---- criterion 12: CLI round trip, determinism, exit codes ----

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CriterionResult crit_cli(const Options& opt) {
    Checker c;
    if (opt.cli_path.empty())
        return CriterionResult{12, "cli-roundtrip", false, "no CLI binary path configured", 0.0};

    namespace fs = std::filesystem;
    const fs::path dir(opt.work_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    c.expect(!ec, "cannot create work dir " + dir.string());
    if (!c.ok) return c.finish(12, "cli-roundtrip", "");

    auto run = [&](const std::string& args, int& code) {
        const std::string cmd = "\"" + opt.cli_path + "\" " + args + " > /dev/null 2>&1";
        const int rc = std::system(cmd.c_str());
        if (rc == -1) return false;
        code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
        return true;
    };
    const std::string cfg = (dir / "grid.json").string();
    {
        std::ofstream out(cfg);
        out << "{\"n_grid\": [2, 5, 9]}\n";
    }

    const std::string a = (dir / "a.csv").string(), b = (dir / "b.csv").string();
    int code = -1;
    c.expect(run("sweep-n --config " + cfg + " --seed 7 --out " + a, code) && code == 0,
             "first sweep run failed (exit " + std::to_string(code) + ")");
    c.expect(run("sweep-n --config " + cfg + " --seed 7 --out " + b, code) && code == 0,
             "second sweep run failed (exit " + std::to_string(code) + ")");
    const std::string bytes_a = read_file(a), bytes_b = read_file(b);
    c.expect(!bytes_a.empty(), "sweep output empty");
    c.expect(bytes_a == bytes_b, "repeated runs differ byte-for-byte");
    c.expect(fs::exists(a + ".meta.json"), "metadata sidecar missing");
    try {
        const auto meta = nlohmann::json::parse(read_file(a + ".meta.json"));
        c.expect(meta.contains("version") && meta.contains("command") && meta.contains("config"),
                 "sidecar lacks version/command/config fields");
        c.expect(meta.value("seed", std::uint64_t{0}) == 7, "sidecar seed not echoed");
    } catch (const std::exception& e) {
        c.expect(false, std::string("sidecar unparsable: ") + e.what());
    }

    const std::string m = (dir / "m.csv").string();
    c.expect(run("measure --state ghz --n 6 --theta 0.8 --measure m_hs --out " + m, code) &&
                 code == 0,
             "measure run failed (exit " + std::to_string(code) + ")");
    {
        const std::string text = read_file(m);
        const auto nl = text.find_last_not_of("\n");
        const auto start = text.rfind('\n', nl == std::string::npos ? 0 : nl);
        std::string last = text.substr(start == std::string::npos ? 0 : start + 1);
        const auto comma = last.rfind(',');
        double got = 0.0;
        try {
            got = std::stod(last.substr(comma == std::string::npos ? 0 : comma + 1));
        } catch (...) {
            c.expect(false, "cannot parse measure output");
        }
        c.expect_rel(got, oracle::ghz_m_hs(6, 0.8), 1e-8, "measured value");
    }

    c.expect(run("measure --state nosuch --n 4 --out " + (dir / "x.csv").string(), code) &&
                 code == 2,
             "bad state name should exit 2, got " + std::to_string(code));
    c.expect(run("measure --state ghz --n 4 --sigma bogus --measure m_sigma --out " +
                     (dir / "y.csv").string(),
                 code) &&
                 code == 2,
             "bad sigma should exit 2, got " + std::to_string(code));

    const std::string modes_out = (dir / "modes.csv").string();
    c.expect(run("modes --state coherent --n 4 --theta 1.0 --out " + modes_out, code) && code == 0,
             "modes run failed (exit " + std::to_string(code) + ")");
    {
        const std::string text = read_file(modes_out);
        std::size_t lines = 0;
        for (char ch : text)
            if (ch == '\n') ++lines;
        c.expect(lines == 6, "modes output should have 6 lines, got " + std::to_string(lines));
    }

    const std::string evo = (dir / "evo.csv").string();
    c.expect(run("evolve --state ghz --n 6 --theta 0.8 --channel dephasing --samples 5 --out " +
                     evo,
                 code) &&
                 code == 0,
             "evolve run failed (exit " + std::to_string(code) + ")");
    {
        const std::string text = read_file(evo);
        std::size_t lines = 0;
        for (char ch : text)
            if (ch == '\n') ++lines;
        c.expect(lines == 6, "evolve output should have 6 lines, got " + std::to_string(lines));
    }
    return c.finish(12, "cli-roundtrip", "deterministic output, exit codes as contracted");
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const Options& opt) {
    using Fn = CriterionResult (*)(const Options&);
    const Fn fns[] = {crit_fixture,      crit_dual_route, crit_monotonicity, crit_skew_identity,
                      crit_closed_forms, crit_scaling,    crit_sandwich,     crit_weight_from_g,
                      crit_displacement, crit_lindblad,   crit_representations, crit_cli};
    std::vector<CriterionResult> out;
    int id = 1;
    for (Fn fn : fns) {
        const auto t0 = std::chrono::steady_clock::now();
        CriterionResult r;
        try {
            r = fn(opt);
        } catch (const std::exception& e) {
            r.id = id;
            r.name = "criterion-" + std::to_string(id);
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.id = id++;
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(std::move(r));
    }
    return out;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

void print_results(const std::vector<CriterionResult>& results, std::ostream& os) {
    int passed = 0;
    for (const auto& r : results) {
        os << "[" << std::setw(2) << r.id << "] " << (r.pass ? "PASS" : "FAIL") << "  "
           << std::left << std::setw(28) << r.name << std::right << std::fixed
           << std::setprecision(2) << std::setw(7) << r.seconds << " s  " << r.detail << "\n";
        os.unsetf(std::ios::fixed);
        if (r.pass) ++passed;
    }
    os << "acceptance: " << passed << "/" << results.size() << " criteria passed\n";
}

}  // namespace qcam::verify
