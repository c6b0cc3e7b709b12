#pragma once
#include <functional>
#include <vector>

// Quadrature helpers: adaptive Simpson on a callable, composite Simpson on
// tabulated samples, and Gauss-Hermite nodes/weights (for integrals against
// exp(-t^2)) built by the Golub-Welsch method on top of tridiagonal_eig.

namespace qcam {

// Integral of f over [a, b] to absolute tolerance tol (adaptive Simpson).
double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol);

// Composite Simpson over tabulated values ys at strictly increasing xs.
// Uses Simpson on consecutive point triples; a trailing odd interval is
// handled by a trapezoid.
double integrate_samples(const std::vector<double>& xs, const std::vector<double>& ys);

struct GaussHermite {
    std::vector<double> nodes;    // t_i
    std::vector<double> weights;  // w_i:  sum_i w_i f(t_i) ~ integral f(t) exp(-t^2) dt
};

GaussHermite gauss_hermite(std::size_t n);

}  // namespace qcam
