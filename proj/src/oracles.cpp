#include "qcam/oracles.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qcam/errors.hpp"

namespace qcam::oracle {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double log_binomial(int n, int k) {
    if (k < 0 || k > n)
        throw Error("log_binomial: k = " + std::to_string(k) + " outside [0, " + std::to_string(n) + "]");
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double erfc(double x) { return std::erfc(x); }

namespace {

// Log-magnitude of the spin-coherent Dicke amplitude |c_k|; -inf encodes an
// exact zero (theta at a pole).
double log_amp(int n, int k, double lc, double ls, bool cos_zero, bool sin_zero) {
    if ((cos_zero && k < n) || (sin_zero && k > 0))
        return -std::numeric_limits<double>::infinity();
    return 0.5 * log_binomial(n, k) + (n - k) * lc + k * ls;
}

struct AmpLogs {
    double lc, ls;
    bool cos_zero, sin_zero;
};

AmpLogs amp_logs(double theta) {
    const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
    AmpLogs a;
    a.cos_zero = c == 0.0;
    a.sin_zero = s == 0.0;
    a.lc = a.cos_zero ? 0.0 : std::log(std::fabs(c));
    a.ls = a.sin_zero ? 0.0 : std::log(std::fabs(s));
    if (c < 0.0 || s < 0.0)
        throw Error("coherent mode oracle: theta outside [0, pi]");
    return a;
}

}  // namespace

double coherent_a_tr(int n, double theta, int omega, Method method) {
    if (omega < 1 || omega > n) return 0.0;
    if (method == Method::Normal) {
        const double s2 = n * std::sin(theta) * std::sin(theta);
        if (s2 == 0.0) return 0.0;
        const double arg = (omega - 2.0 * n * std::pow(std::sin(0.5 * theta), 2)) / std::sqrt(2.0 * s2);
        return 0.5 * std::exp(-omega * omega / (2.0 * s2)) * erfc(arg);
    }
    const AmpLogs a = amp_logs(theta);
    double sum = 0.0;
    for (int k = omega; k <= n; ++k) {
        const double la = log_amp(n, k, a.lc, a.ls, a.cos_zero, a.sin_zero);
        const double lb = log_amp(n, k - omega, a.lc, a.ls, a.cos_zero, a.sin_zero);
        if (std::isinf(la) || std::isinf(lb)) continue;
        sum += std::exp(la + lb);
    }
    return sum;
}

double coherent_a_hs(int n, double theta, int omega, Method method) {
    if (omega < 1 || omega > n) return 0.0;
    if (method == Method::Normal) {
        const double s2 = n * std::sin(theta) * std::sin(theta);
        if (s2 == 0.0) return 0.0;
        const double arg = (omega - 2.0 * n * std::pow(std::sin(0.5 * theta), 2)) / std::sqrt(s2);
        return 0.5 / std::sqrt(kPi * s2) * std::exp(-omega * omega / s2) * erfc(arg);
    }
    const AmpLogs a = amp_logs(theta);
    double sum = 0.0;
    for (int k = omega; k <= n; ++k) {
        const double la = log_amp(n, k, a.lc, a.ls, a.cos_zero, a.sin_zero);
        const double lb = log_amp(n, k - omega, a.lc, a.ls, a.cos_zero, a.sin_zero);
        if (std::isinf(la) || std::isinf(lb)) continue;
        sum += std::exp(2.0 * (la + lb));
    }
    return sum;
}

double coherent_m_tr(int n, double theta, Method method) {
    if (method == Method::Normal) {
        const double s = std::sin(theta);
        return std::sqrt(kPi / 2.0) * std::pow(static_cast<double>(n), 1.5) * s * s * s;
    }
    double sum = 0.0;
    for (int w = 1; w <= n; ++w) sum += static_cast<double>(w) * w * coherent_a_tr(n, theta, w, method);
    return sum;
}

double coherent_m_hs(int n, double theta, Method method) {
    if (method == Method::Normal) {
        const double s = std::sin(theta);
        return 0.25 * n * s * s;
    }
    double sum = 0.0;
    for (int w = 1; w <= n; ++w) sum += static_cast<double>(w) * w * coherent_a_hs(n, theta, w, method);
    return sum;
}

double coherent_m_sigma(int n, double theta, double sigma, Method method) {
    if (sigma <= 0.0) throw InvalidWeightError("coherent_m_sigma: sigma must be positive");
    if (method == Method::Normal) {
        const double s = std::sin(theta);
        return 1.0 - 1.0 / std::sqrt(1.0 + n * s * s / (8.0 * sigma * sigma));
    }
    double sum = 0.0;
    for (int w = 1; w <= n; ++w) {
        const double weight = 1.0 - std::exp(-static_cast<double>(w) * w / (8.0 * sigma * sigma));
        sum += 2.0 * weight * coherent_a_hs(n, theta, w, method);  // both mode signs
    }
    return sum;
}

double ghz_a_tr(double theta) { return 0.5 * std::sin(theta); }

double ghz_a_hs(double theta) {
    const double s = std::sin(theta);
    return 0.25 * s * s;
}

double ghz_m_tr(int n, double theta) {
    return 0.5 * static_cast<double>(n) * n * std::sin(theta);
}

double ghz_m_hs(int n, double theta) {
    const double s = std::sin(theta);
    return 0.25 * static_cast<double>(n) * n * s * s;
}

double ghz_m_sigma(int n, double theta, double sigma) {
    if (sigma <= 0.0) throw InvalidWeightError("ghz_m_sigma: sigma must be positive");
    const double s = std::sin(theta);
    const double nn = static_cast<double>(n) * n;
    return 0.5 * s * s * (1.0 - std::exp(-nn / (8.0 * sigma * sigma)));
}

double ghz_axis_m_hs(int n, double theta, double axis_theta) {
    if (n <= 2) throw Error("ghz_axis_m_hs: closed form valid for n > 2 only");
    const double s = std::sin(theta), ct = std::cos(axis_theta), st = std::sin(axis_theta);
    return 0.25 * static_cast<double>(n) * n * s * s * ct * ct + 0.25 * n * st * st;
}

double product_m_hs(const std::vector<std::pair<double, double>>& site_angles, double axis_theta,
                    double axis_phi) {
    const double nx = std::sin(axis_theta) * std::cos(axis_phi);
    const double ny = std::sin(axis_theta) * std::sin(axis_phi);
    const double nz = std::cos(axis_theta);
    double sum = 0.0;
    for (const auto& [th, ph] : site_angles) {
        const double mx = std::sin(th) * std::cos(ph);
        const double my = std::sin(th) * std::sin(ph);
        const double mz = std::cos(th);
        const double dot = mx * nx + my * ny + mz * nz;
        sum += 0.25 * (1.0 - dot * dot);  // sin^2 of the angle between the vectors
    }
    return sum;
}

double dephased_ghz_a_tr(int n, double theta, double tau) {
    const double gamma = std::exp(-0.5 * static_cast<double>(n) * n * tau);
    return 0.5 * std::sin(theta) * gamma;
}

double dephased_ghz_a_hs(int n, double theta, double tau) {
    // 2x2 block [[a, c], [conj(c), b]]: sqrt has off-diagonal
    // c / sqrt(1 + 2 sqrt(det)), det = ab - |c|^2.
    const double gamma = std::exp(-0.5 * static_cast<double>(n) * n * tau);
    const double a = std::pow(std::cos(0.5 * theta), 2), b = std::pow(std::sin(0.5 * theta), 2);
    const double c2 = 0.25 * std::sin(theta) * std::sin(theta) * gamma * gamma;
    const double det = std::max(0.0, a * b - c2);
    return c2 / (1.0 + 2.0 * std::sqrt(det));
}

}  // namespace qcam::oracle
