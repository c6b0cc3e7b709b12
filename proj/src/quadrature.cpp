#include "qcam/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qcam/errors.hpp"
#include "qcam/hermitian.hpp"

namespace qcam {

namespace {

double simpson(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double b, double fa,
                     double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (depth <= 0) throw NumericalError("integrate_adaptive: recursion limit reached");
    if (std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol) {
    if (!(b > a)) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = simpson(fa, fm, fb, b - a);
    return adaptive_step(f, a, b, fa, fm, fb, whole, tol, 48);
}

double integrate_samples(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw DimensionMismatchError("integrate_samples: xs/ys lengths differ");
    if (xs.size() < 2) return 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        if (!(xs[i + 1] > xs[i]))
            throw AsymmetricInputError("integrate_samples: xs must be strictly increasing");
    double total = 0.0;
    std::size_t i = 0;
    while (i + 2 < xs.size()) {
        // Simpson on a possibly non-uniform triple (exact for quadratics).
        const double h0 = xs[i + 1] - xs[i], h1 = xs[i + 2] - xs[i + 1];
        const double h = h0 + h1;
        total += h / 6.0 *
                 ((2.0 - h1 / h0) * ys[i] + (h * h / (h0 * h1)) * ys[i + 1] + (2.0 - h0 / h1) * ys[i + 2]);
        i += 2;
    }
    if (i + 2 == xs.size())  // one interval left
        total += 0.5 * (xs[i + 1] - xs[i]) * (ys[i] + ys[i + 1]);
    return total;
}

GaussHermite gauss_hermite(std::size_t n) {
    if (n == 0) throw InvalidWeightError("gauss_hermite: need at least one node");
    // Golub-Welsch: Jacobi matrix for Hermite polynomials has zero diagonal
    // and off-diagonal sqrt(k/2); weights come from the first row of the
    // eigenvector matrix times the zeroth moment sqrt(pi).
    std::vector<double> d(n, 0.0), e(n, 0.0);
    for (std::size_t k = 1; k < n; ++k) e[k - 1] = std::sqrt(0.5 * static_cast<double>(k));
    CMatrix z = CMatrix::identity(n);
    tridiagonal_eig(d, e, &z);
    GaussHermite gh;
    gh.nodes.resize(n);
    gh.weights.resize(n);
    const double mu0 = std::sqrt(3.14159265358979323846);
    // tridiagonal_eig does not sort; do it here by node value.
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
    for (std::size_t i = 0; i < n; ++i) {
        gh.nodes[i] = d[idx[i]];
        const double q0 = z(0, idx[i]).real();
        gh.weights[i] = mu0 * q0 * q0;
    }
    return gh;
}

}  // namespace qcam
