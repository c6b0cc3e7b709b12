#pragma once
#include <functional>
#include <vector>

#include "qcam/asymmetry.hpp"
#include "qcam/states.hpp"

// Weighted-mode macroscopicity measures.
//
// Summation conventions (fixed here, used consistently everywhere):
//   * weighted_measure sums f(omega) A^(omega) over POSITIVE modes only.
//     With f(omega) = omega^2 this reproduces the quadratic-weight values
//     (GHZ: N^2 sin^2(theta)/4 for the Hilbert-Schmidt norm) and, for the
//     Hilbert-Schmidt norm, equals the skew information.
//   * scaled_measure sums (1 - exp(-omega^2 / 8 sigma^2)) A_HS^(omega) over
//     ALL nonzero modes, both signs (GHZ: (1/2) sin^2(theta) (1 - e^{-N^2/8 sigma^2})).

namespace qcam {

enum class WeightKind { Power, Scaled, FromG, ConcaveScaled };
enum class ConcaveForm { Exp, Rational, Log };

class WeightFunction {
public:
    // f(omega) = |omega|^p, p > 0.
    static WeightFunction power(double p = 2.0);
    // f(omega) = 1 - exp(-omega^2 / (8 sigma^2)), sigma > 0.
    static WeightFunction scaled(double sigma);
    // f(omega) = omega^2 * integral over [a, b] of sinc^2(omega x / 2) g(x) dx,
    // domain within [0, inf).  Tabulated samples use composite Simpson on the
    // given grid; the callable form integrates adaptively to tol::from_g_quadrature.
    static WeightFunction from_g_samples(std::vector<double> xs, std::vector<double> gs);
    static WeightFunction from_g(std::function<double(double)> g, double a, double b);
    // g = Dirac delta at x = 0 (encoded as a flag): f(omega) = omega^2.
    static WeightFunction from_g_delta();
    // f(omega) = base(omega^2 / sigma^2) for a concave increasing base with
    // base(0) = 0; used by the separability ceiling.
    static WeightFunction concave_scaled(double sigma, ConcaveForm form);

    double operator()(double omega) const;
    WeightKind kind() const { return kind_; }
    double sigma() const { return sigma_; }
    ConcaveForm concave_form() const { return form_; }
    // f nondecreasing in |omega| along the given mode values?
    bool monotone_on(const std::vector<double>& omegas) const;

private:
    WeightFunction() = default;
    WeightKind kind_ = WeightKind::Power;
    double power_ = 2.0;
    double sigma_ = 1.0;
    bool delta_flag_ = false;
    ConcaveForm form_ = ConcaveForm::Exp;
    std::vector<double> xs_, gs_;
    std::function<double(double)> g_;
    double a_ = 0.0, b_ = 0.0;
};

struct MacroscopicityReport {
    double value = 0.0;
    ModeNorm norm = ModeNorm::HilbertSchmidt;
    std::vector<double> omegas;       // modes entering the sum
    std::vector<double> mode_values;  // A^(omega)
    std::vector<double> weights;      // f(omega)
    bool weight_monotone = true;      // flagged, never enforced
};

// sum over positive modes of f(omega) A^(omega).
MacroscopicityReport weighted_measure(const QuantumState& rho, const Observable& l,
                                      const WeightFunction& f, ModeNorm kind);

// sum over all nonzero modes of (1 - exp(-omega^2/8 sigma^2)) A_HS^(omega).
MacroscopicityReport scaled_measure(const QuantumState& rho, const Observable& l, double sigma);

// Wigner-Yanase style skew information -(1/2) tr([sqrt(rho), L]^2); for pure
// states this is the variance of L.
double skew_information(const QuantumState& rho, const Observable& l);

// Gaussian-blur channel: damps the (i, j) entry in L's eigenbasis by
// exp(-(lambda_i - lambda_j)^2 / (8 sigma^2)).
QuantumState fuzzy_channel(const QuantumState& rho, const Observable& l, double sigma);

// (1/2) Bures(rho, fuzzy(rho))  <=  scaled measure  <=  1 - exp(-I_W / 4 sigma^2).
struct SandwichReport {
    double lower = 0.0, value = 0.0, upper = 0.0;
    bool holds = false;
};
SandwichReport sandwich_bounds(const QuantumState& rho, const Observable& l, double sigma);

// Upper bound on the measure over N-fold product states whose single-site
// observable has spectral span l_max.  Supports the Scaled family
// (1 - exp(-N l_max^2 / 16 sigma^2)) and ConcaveScaled (base(N l_max^2 / 2 sigma^2)).
double separability_ceiling(int n, double l_max, const WeightFunction& family);

}  // namespace qcam
