#include "qcam/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcam/constants.hpp"

namespace qcam {

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diagonal(const std::vector<double>& d) {
    CMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

CMatrix CMatrix::diagonal(const std::vector<cplx>& d) {
    CMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* where) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatchError(std::string(where) + ": shapes " +
                                     std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                     " vs " + std::to_string(b.rows()) + "x" +
                                     std::to_string(b.cols()));
}

void require_square(const CMatrix& a, const char* where) {
    if (!a.is_square())
        throw DimensionMismatchError(std::string(where) + ": matrix is " +
                                     std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                     ", expected square");
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    require_same_shape(*this, o, "operator+=");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
    require_same_shape(*this, o, "operator-=");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
    for (auto& x : a_) x *= s;
    return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(cplx s, CMatrix a) { return a *= s; }

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatchError("matmul: inner dimensions differ");
    const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
    CMatrix c(m, n);
    // i-k-j ordering keeps the inner loop streaming over rows of B and C.
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::size_t i = 0; i < m; ++i) {
        cplx* ci = c.data() + i * n;
        for (std::size_t l = 0; l < k; ++l) {
            const cplx ail = a(i, l);
            if (ail == cplx{}) continue;
            const cplx* bl = b.data() + l * n;
            for (std::size_t j = 0; j < n; ++j) ci[j] += ail * bl[j];
        }
    }
    return c;
}

CMatrix matmul_serial(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatchError("matmul_serial: inner dimensions differ");
    const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
    CMatrix c(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            const cplx ail = a(i, l);
            if (ail == cplx{}) continue;
            for (std::size_t j = 0; j < n; ++j) c(i, j) += ail * b(l, j);
        }
    return c;
}

std::vector<cplx> matvec(const CMatrix& a, const std::vector<cplx>& x) {
    if (a.cols() != x.size()) throw DimensionMismatchError("matvec: inner dimensions differ");
    std::vector<cplx> y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

CMatrix adjoint(const CMatrix& a) {
    CMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
    return t;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx{}) continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    k(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
        }
    return k;
}

cplx trace(const CMatrix& a) {
    require_square(a, "trace");
    cplx t = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

cplx trace_of_product(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows() || a.rows() != b.cols())
        throw DimensionMismatchError("trace_of_product: shapes do not close a cycle");
    cplx t = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t += a(i, j) * b(j, i);
    return t;
}

double frobenius_norm(const CMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

double max_abs(const CMatrix& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j)));
    return m;
}

double hermiticity_defect(const CMatrix& a) {
    require_square(a, "hermiticity_defect");
    double d = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i; j < a.cols(); ++j)
            d = std::max(d, std::abs(a(i, j) - std::conj(a(j, i))));
    return d;
}

bool is_hermitian(const CMatrix& a) {
    return hermiticity_defect(a) <= tol::hermiticity * std::max(1.0, max_abs(a));
}

CMatrix hermitize(const CMatrix& a) {
    require_square(a, "hermitize");
    CMatrix h(a.rows(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    return h;
}

CMatrix outer(const std::vector<cplx>& v, const std::vector<cplx>& w) {
    CMatrix m(v.size(), w.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < w.size(); ++j) m(i, j) = v[i] * std::conj(w[j]);
    return m;
}

}  // namespace qcam
