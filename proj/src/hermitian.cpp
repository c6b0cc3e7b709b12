#include "qcam/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qcam/constants.hpp"

namespace qcam {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool exactly_diagonal(const CMatrix& a) {
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j && a(i, j) != cplx{}) return false;
    return true;
}

// Ascending stable sort of eigenvalues, permuting eigenvector columns along.
void sort_eig(std::vector<double>& w, CMatrix* v) {
    const std::size_t n = w.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return w[a] < w[b]; });
    std::vector<double> ws(n);
    for (std::size_t i = 0; i < n; ++i) ws[i] = w[idx[i]];
    w = std::move(ws);
    if (v) {
        CMatrix vs(v->rows(), v->cols());
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < v->rows(); ++i) vs(i, j) = (*v)(i, idx[j]);
        *v = std::move(vs);
    }
}

EigResult diagonal_eig(const CMatrix& a, bool want_vectors) {
    const std::size_t n = a.rows();
    EigResult r;
    r.eigenvalues.resize(n);
    for (std::size_t i = 0; i < n; ++i) r.eigenvalues[i] = a(i, i).real();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t x, std::size_t y) { return r.eigenvalues[x] < r.eigenvalues[y]; });
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = r.eigenvalues[idx[i]];
    r.eigenvalues = std::move(w);
    if (want_vectors) {
        r.vectors = CMatrix(n, n);
        for (std::size_t j = 0; j < n; ++j) r.vectors(idx[j], j) = 1.0;
    }
    return r;
}

CMatrix checked_hermitian_copy(const CMatrix& a, const char* where) {
    require_square(a, where);
    const double defect = hermiticity_defect(a);
    if (defect > tol::hermiticity * std::max(1.0, max_abs(a)))
        throw NotHermitianError(std::string(where) + ": hermiticity defect " + std::to_string(defect));
    return hermitize(a);
}

// Householder reduction of Hermitian A (destroyed) to real symmetric
// tridiagonal (d, e).  When want_vectors, Z receives the accumulated unitary
// (A = Z T Z^dag with T the real tridiagonal).
void householder_tridiag(CMatrix& a, std::vector<double>& d, std::vector<double>& e, CMatrix& z,
                         bool want_vectors) {
    const std::size_t n = a.rows();
    d.assign(n, 0.0);
    e.assign(n, 0.0);
    if (n == 0) return;
    std::vector<std::vector<cplx>> reflectors(n);
    std::vector<cplx> subdiag(n, 0.0);
    std::vector<cplx> p(n), w(n);

    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t m = n - k - 1;
        double beta2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) beta2 += std::norm(a(i, k));
        const double beta = std::sqrt(beta2);
        if (beta == 0.0) {
            subdiag[k] = 0.0;
            continue;
        }
        const cplx a0 = a(k + 1, k);
        const cplx phase = std::abs(a0) > 0.0 ? a0 / std::abs(a0) : cplx(1.0);
        std::vector<cplx> v(m);
        for (std::size_t i = 0; i < m; ++i) v[i] = a(k + 1 + i, k);
        v[0] += phase * beta;
        double vn2 = 0.0;
        for (const auto& x : v) vn2 += std::norm(x);
        const double vn = std::sqrt(vn2);
        for (auto& x : v) x /= vn;

        // Two-sided reflector update of the trailing block:
        //   T <- T - v w^dag - w v^dag,  w = p - (v^dag p) v,  p = 2 T v.
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (std::size_t i = 0; i < m; ++i) {
            cplx s = 0.0;
            const cplx* row = a.data() + (k + 1 + i) * n + (k + 1);
            for (std::size_t j = 0; j < m; ++j) s += row[j] * v[j];
            p[i] = 2.0 * s;
        }
        cplx vp = 0.0;
        for (std::size_t i = 0; i < m; ++i) vp += std::conj(v[i]) * p[i];
        for (std::size_t i = 0; i < m; ++i) w[i] = p[i] - vp * v[i];
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (std::size_t i = 0; i < m; ++i) {
            cplx* row = a.data() + (k + 1 + i) * n + (k + 1);
            const cplx vi = v[i], wi = w[i];
            for (std::size_t j = 0; j < m; ++j) row[j] -= vi * std::conj(w[j]) + wi * std::conj(v[j]);
        }
        subdiag[k] = -phase * beta;
        reflectors[k] = std::move(v);
    }
    if (n >= 2) subdiag[n - 2] = a(n - 1, n - 2);
    for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i).real();

    // Phase out the complex subdiagonal: T_c = D T_r D^dag with D = diag(phi).
    std::vector<cplx> phi(n, 1.0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double ab = std::abs(subdiag[k]);
        e[k] = ab;
        phi[k + 1] = ab > 0.0 ? phi[k] * (subdiag[k] / ab) : phi[k];
    }

    if (want_vectors) {
        z = CMatrix::identity(n);
        for (std::size_t k = n; k-- > 0;) {
            const auto& v = reflectors[k];
            if (v.empty()) continue;
            const std::size_t off = k + 1, m = v.size();
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
            for (std::size_t j = 0; j < n; ++j) {
                cplx t = 0.0;
                for (std::size_t i = 0; i < m; ++i) t += std::conj(v[i]) * z(off + i, j);
                t *= 2.0;
                for (std::size_t i = 0; i < m; ++i) z(off + i, j) -= t * v[i];
            }
        }
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) z(i, j) *= phi[j];
    }
}

}  // namespace

void tridiagonal_eig(std::vector<double>& d, std::vector<double>& e, CMatrix* vectors) {
    const std::size_t n = d.size();
    if (n == 0) return;
    e.resize(n, 0.0);
    e[n - 1] = 0.0;
    // Deflation threshold against the overall matrix scale, not just the two
    // neighbouring diagonal entries: clusters of near-zero eigenvalues would
    // otherwise never pass a purely neighbour-relative test.
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::fabs(d[i]) + std::fabs(e[i]));
    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= kEps * std::max(dd, scale)) break;
            }
            if (m != l) {
                if (iter++ == 50)
                    throw NumericalError("tridiagonal QL: no convergence after 50 iterations");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (std::size_t i = m; i-- > l;) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (vectors) {
                        for (std::size_t k = 0; k < vectors->rows(); ++k) {
                            const cplx fk = (*vectors)(k, i + 1);
                            (*vectors)(k, i + 1) = s * (*vectors)(k, i) + c * fk;
                            (*vectors)(k, i) = c * (*vectors)(k, i) - s * fk;
                        }
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

EigResult eigh(const CMatrix& a) {
    CMatrix h = checked_hermitian_copy(a, "eigh");
    if (exactly_diagonal(h)) return diagonal_eig(h, true);
    std::vector<double> d, e;
    EigResult r;
    householder_tridiag(h, d, e, r.vectors, true);
    tridiagonal_eig(d, e, &r.vectors);
    r.eigenvalues = std::move(d);
    sort_eig(r.eigenvalues, &r.vectors);
    return r;
}

std::vector<double> eigenvalues_of(const CMatrix& a) {
    CMatrix h = checked_hermitian_copy(a, "eigenvalues_of");
    if (exactly_diagonal(h)) return diagonal_eig(h, false).eigenvalues;
    std::vector<double> d, e;
    CMatrix z;
    householder_tridiag(h, d, e, z, false);
    tridiagonal_eig(d, e, nullptr);
    sort_eig(d, nullptr);
    return d;
}

EigResult eigh_jacobi(const CMatrix& a) {
    CMatrix h = checked_hermitian_copy(a, "eigh_jacobi");
    const std::size_t n = h.rows();
    if (exactly_diagonal(h)) return diagonal_eig(h, true);
    CMatrix v = CMatrix::identity(n);
    const double scale = std::max(1.0, frobenius_norm(h));

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off2 = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off2 += std::norm(h(i, j));
        if (std::sqrt(2.0 * off2) <= 1e-13 * scale) break;
        if (sweep == 99) throw NumericalError("jacobi: no convergence after 100 sweeps");

        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = h(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                const cplx u = apq / mag;
                const double app = h(p, p).real(), aqq = h(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx cu = std::conj(u);
                // Columns: A <- A R, with R(p,p)=c, R(p,q)=s, R(q,p)=-s cu, R(q,q)=c cu.
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = h(k, p), akq = h(k, q);
                    h(k, p) = c * akp - s * cu * akq;
                    h(k, q) = s * akp + c * cu * akq;
                }
                // Rows: A <- R^dag A.
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = h(p, k), aqk = h(q, k);
                    h(p, k) = c * apk - s * u * aqk;
                    h(q, k) = s * apk + c * u * aqk;
                }
                h(p, q) = 0.0;
                h(q, p) = 0.0;
                h(p, p) = h(p, p).real();
                h(q, q) = h(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * cu * vkq;
                    v(k, q) = s * vkp + c * cu * vkq;
                }
            }
    }
    EigResult r;
    r.eigenvalues.resize(n);
    for (std::size_t i = 0; i < n; ++i) r.eigenvalues[i] = h(i, i).real();
    r.vectors = std::move(v);
    sort_eig(r.eigenvalues, &r.vectors);
    return r;
}

CMatrix sqrt_psd_from_eig(const EigResult& eig) {
    const std::size_t n = eig.eigenvalues.size();
    // Eigenvalues within solver rounding noise of zero are treated as exact
    // zeros: sqrt() would otherwise amplify O(eps) noise to O(sqrt(eps))
    // entries, which dominates the error budget for rank-deficient states.
    double wmax = 0.0;
    for (double w : eig.eigenvalues) wmax = std::max(wmax, w);
    const double zero_floor = wmax * kEps * 8.0 * static_cast<double>(std::max<std::size_t>(n, 1));
    std::vector<double> roots(n);
    for (std::size_t i = 0; i < n; ++i) {
        double w = eig.eigenvalues[i];
        if (w < tol::psd_clamp_floor)
            throw NotPSDError("sqrt_psd: eigenvalue " + std::to_string(w) + " below clamp floor");
        roots[i] = w > zero_floor ? std::sqrt(w) : 0.0;
    }
    // V diag(sqrt(w)) V^dag
    const CMatrix& v = eig.vectors;
    CMatrix out(n, n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += roots[k] * v(i, k) * std::conj(v(j, k));
            out(i, j) = s;
            out(j, i) = std::conj(s);
        }
    for (std::size_t i = 0; i < n; ++i) out(i, i) = out(i, i).real();
    return out;
}

CMatrix sqrt_psd(const CMatrix& rho) {
    return sqrt_psd_from_eig(eigh(rho));
}

namespace {

// Sum of sqrt(w) with the same noise floor sqrt_psd_from_eig applies: solver
// rounding turns true zeros into O(eps) values, and sqrt() would promote each
// to an O(sqrt(eps)) contribution.
double root_sum_clamped(const std::vector<double>& ws) {
    double wmax = 0.0;
    for (double w : ws) wmax = std::max(wmax, w);
    const double floor = wmax * kEps * 8.0 * static_cast<double>(std::max<std::size_t>(ws.size(), 1));
    double s = 0.0;
    for (double w : ws)
        if (w > floor) s += std::sqrt(w);
    return s;
}

}  // namespace

double trace_norm(const CMatrix& m) {
    const CMatrix g = hermitize(matmul(adjoint(m), m));
    return root_sum_clamped(eigenvalues_of(g));
}

double state_overlap(const CMatrix& rho, const CMatrix& tau, OverlapKind kind) {
    require_same_shape(rho, tau, "state_overlap");
    require_square(rho, "state_overlap");
    switch (kind) {
        case OverlapKind::Affinity:
        case OverlapKind::Hellinger: {
            const CMatrix sr = sqrt_psd(rho), st = sqrt_psd(tau);
            double a = trace_of_product(sr, st).real();
            a = std::min(1.0, std::max(0.0, a));
            return kind == OverlapKind::Affinity ? a : 1.0 - a;
        }
        case OverlapKind::Fidelity:
        case OverlapKind::Bures: {
            const CMatrix sr = sqrt_psd(rho);
            const CMatrix inner = hermitize(matmul(sr, matmul(tau, sr)));
            const double root_sum = root_sum_clamped(eigenvalues_of(inner));
            double f = std::min(1.0, root_sum * root_sum);
            return kind == OverlapKind::Fidelity ? f : 2.0 - 2.0 * std::sqrt(f);
        }
    }
    throw Error("state_overlap: unreachable");
}

}  // namespace qcam
