#include "qcam/macroscopicity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcam/constants.hpp"
#include "qcam/hermitian.hpp"
#include "qcam/quadrature.hpp"

namespace qcam {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sinc(double u) {
    if (std::fabs(u) < 1e-8) return 1.0 - u * u / 6.0;
    return std::sin(u) / u;
}

double concave_base(ConcaveForm form, double x) {
    switch (form) {
        case ConcaveForm::Exp: return 1.0 - std::exp(-x / 8.0);
        case ConcaveForm::Rational: return x / (8.0 + x);
        case ConcaveForm::Log: return std::log1p(x / 8.0);
    }
    throw Error("concave_base: unreachable");
}

}  // namespace

WeightFunction WeightFunction::power(double p) {
    if (p <= 0.0) throw InvalidWeightError("power weight needs a positive exponent (f(0) must vanish)");
    WeightFunction w;
    w.kind_ = WeightKind::Power;
    w.power_ = p;
    return w;
}

WeightFunction WeightFunction::scaled(double sigma) {
    if (sigma <= 0.0) throw InvalidWeightError("scaled weight needs sigma > 0");
    WeightFunction w;
    w.kind_ = WeightKind::Scaled;
    w.sigma_ = sigma;
    return w;
}

WeightFunction WeightFunction::from_g_samples(std::vector<double> xs, std::vector<double> gs) {
    if (xs.size() != gs.size() || xs.size() < 2)
        throw InvalidWeightError("from_g_samples: need matching xs/gs with at least two points");
    if (xs.front() < 0.0) throw InvalidWeightError("from_g_samples: domain must lie in [0, inf)");
    for (double g : gs)
        if (g < 0.0) throw InvalidWeightError("from_g_samples: g must be nonnegative");
    WeightFunction w;
    w.kind_ = WeightKind::FromG;
    w.xs_ = std::move(xs);
    w.gs_ = std::move(gs);
    return w;
}

WeightFunction WeightFunction::from_g(std::function<double(double)> g, double a, double b) {
    if (a < 0.0 || b <= a) throw InvalidWeightError("from_g: need 0 <= a < b");
    WeightFunction w;
    w.kind_ = WeightKind::FromG;
    w.g_ = std::move(g);
    w.a_ = a;
    w.b_ = b;
    return w;
}

WeightFunction WeightFunction::from_g_delta() {
    WeightFunction w;
    w.kind_ = WeightKind::FromG;
    w.delta_flag_ = true;
    return w;
}

WeightFunction WeightFunction::concave_scaled(double sigma, ConcaveForm form) {
    if (sigma <= 0.0) throw InvalidWeightError("concave_scaled weight needs sigma > 0");
    WeightFunction w;
    w.kind_ = WeightKind::ConcaveScaled;
    w.sigma_ = sigma;
    w.form_ = form;
    return w;
}

double WeightFunction::operator()(double omega) const {
    switch (kind_) {
        case WeightKind::Power: return std::pow(std::fabs(omega), power_);
        case WeightKind::Scaled:
            return 1.0 - std::exp(-omega * omega / (8.0 * sigma_ * sigma_));
        case WeightKind::ConcaveScaled:
            return concave_base(form_, omega * omega / (sigma_ * sigma_));
        case WeightKind::FromG: {
            if (delta_flag_) return omega * omega;
            const double w2 = omega * omega;
            if (g_) {
                auto integrand = [&](double x) {
                    const double g = g_(x);
                    if (g < 0.0) throw InvalidWeightError("from_g: g(x) negative at x = " + std::to_string(x));
                    const double s = sinc(0.5 * omega * x);
                    return s * s * g;
                };
                // Panel at the half-period of sin^2(omega x / 2) so the
                // adaptive rule never sees an aliased view of the oscillation.
                const double half_period = kPi / std::max(std::fabs(omega), 1e-300);
                const std::size_t panels = std::min<std::size_t>(
                    4096, std::max<std::size_t>(8, static_cast<std::size_t>(std::ceil((b_ - a_) / half_period))));
                const double h = (b_ - a_) / static_cast<double>(panels);
                const double panel_tol = tol::from_g_quadrature / static_cast<double>(panels);
                double total = 0.0;
                for (std::size_t i = 0; i < panels; ++i) {
                    const double lo = a_ + h * static_cast<double>(i);
                    const double hi = (i + 1 == panels) ? b_ : lo + h;
                    total += integrate_adaptive(integrand, lo, hi, panel_tol);
                }
                return w2 * total;
            }
            std::vector<double> ys(xs_.size());
            for (std::size_t i = 0; i < xs_.size(); ++i) {
                const double s = sinc(0.5 * omega * xs_[i]);
                ys[i] = s * s * gs_[i];
            }
            return w2 * integrate_samples(xs_, ys);
        }
    }
    throw Error("WeightFunction: unreachable");
}

bool WeightFunction::monotone_on(const std::vector<double>& omegas) const {
    std::vector<double> mags;
    for (double w : omegas)
        if (w > 0.0) mags.push_back(w);
    std::sort(mags.begin(), mags.end());
    double prev = 0.0;  // f(0) = 0 for every admissible family
    for (double w : mags) {
        const double f = (*this)(w);
        if (f < prev - 1e-12) return false;
        prev = f;
    }
    return true;
}

MacroscopicityReport weighted_measure(const QuantumState& rho, const Observable& l,
                                      const WeightFunction& f, ModeNorm kind) {
    ModeAnalysis ma(rho, l);
    const auto& spec = ma.spectrum();
    MacroscopicityReport rep;
    rep.norm = kind;
    for (std::size_t i = 0; i < spec.omegas.size(); ++i) {
        const double w = spec.omegas[i];
        if (w <= 0.0) continue;
        const double a = ma.value(i, kind);
        const double fw = f(w);
        rep.omegas.push_back(w);
        rep.mode_values.push_back(a);
        rep.weights.push_back(fw);
        rep.value += fw * a;
    }
    rep.weight_monotone = f.monotone_on(spec.omegas);
    return rep;
}

MacroscopicityReport scaled_measure(const QuantumState& rho, const Observable& l, double sigma) {
    const WeightFunction f = WeightFunction::scaled(sigma);
    ModeAnalysis ma(rho, l);
    const auto& spec = ma.spectrum();
    MacroscopicityReport rep;
    rep.norm = ModeNorm::HilbertSchmidt;
    for (std::size_t i = 0; i < spec.omegas.size(); ++i) {
        const double w = spec.omegas[i];
        if (w == 0.0) continue;
        const double a = ma.a_hs(i);
        const double fw = f(w);
        rep.omegas.push_back(w);
        rep.mode_values.push_back(a);
        rep.weights.push_back(fw);
        rep.value += fw * a;
    }
    rep.weight_monotone = true;
    return rep;
}

double skew_information(const QuantumState& rho, const Observable& l) {
    if (rho.rho.rows() != l.dim())
        throw DimensionMismatchError("skew_information: state and observable dimensions differ");
    if (rho.pure) {
        // Variance of L in the pure state.
        const auto psi = pure_amplitudes(rho);
        const auto lpsi = matvec(l.matrix(), psi);
        double ex = 0.0, ex2 = 0.0;
        for (std::size_t i = 0; i < psi.size(); ++i) {
            ex += (std::conj(psi[i]) * lpsi[i]).real();
            ex2 += std::norm(lpsi[i]);
        }
        return ex2 - ex * ex;
    }
    const CMatrix s = sqrt_psd(rho.rho);
    const CMatrix c = matmul(s, l.matrix()) - matmul(l.matrix(), s);
    return -0.5 * trace_of_product(c, c).real();
}

QuantumState fuzzy_channel(const QuantumState& rho, const Observable& l, double sigma) {
    if (sigma <= 0.0) throw InvalidWeightError("fuzzy_channel: sigma must be positive");
    if (rho.rho.rows() != l.dim())
        throw DimensionMismatchError("fuzzy_channel: state and observable dimensions differ");
    const std::size_t dim = l.dim();
    std::vector<double> lam(dim);
    for (std::size_t i = 0; i < dim; ++i) lam[i] = l.sectors()[l.sector_of(i)].lambda;
    CMatrix r = to_eigenbasis(rho.rho, l);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            const double gap = lam[i] - lam[j];
            r(i, j) *= std::exp(-gap * gap / (8.0 * sigma * sigma));
        }
    QuantumState out{hermitize(from_eigenbasis(r, l)), rho.repr, rho.n_particles, false};
    return out;
}

SandwichReport sandwich_bounds(const QuantumState& rho, const Observable& l, double sigma) {
    SandwichReport rep;
    rep.value = scaled_measure(rho, l, sigma).value;
    const QuantumState blurred = fuzzy_channel(rho, l, sigma);
    rep.lower = 0.5 * state_overlap(rho.rho, blurred.rho, OverlapKind::Bures);
    rep.upper = 1.0 - std::exp(-skew_information(rho, l) / (4.0 * sigma * sigma));
    rep.holds = rep.lower <= rep.value + tol::monotonicity_slack &&
                rep.value <= rep.upper + tol::monotonicity_slack;
    return rep;
}

double separability_ceiling(int n, double l_max, const WeightFunction& family) {
    if (n < 1) throw Error("separability_ceiling: need at least one factor");
    if (l_max < 0.0) throw Error("separability_ceiling: spectral span must be nonnegative");
    const double s2 = family.sigma() * family.sigma();
    switch (family.kind()) {
        case WeightKind::Scaled:
            return 1.0 - std::exp(-n * l_max * l_max / (16.0 * s2));
        case WeightKind::ConcaveScaled:
            return concave_base(family.concave_form(), n * l_max * l_max / (2.0 * s2));
        default:
            throw UnsupportedCombinationError(
                "separability_ceiling: only Scaled and ConcaveScaled families are supported");
    }
}

}  // namespace qcam
