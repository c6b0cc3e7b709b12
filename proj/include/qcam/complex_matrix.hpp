#pragma once
#include <complex>
#include <cstddef>
#include <vector>

#include "qcam/errors.hpp"

// Dense row-major complex matrix plus the handful of kernels everything else
// is built on.  The multiply kernels exist in two flavours: matmul() is the
// OpenMP-parallel production path, matmul_serial() is the plain reference kept
// for testing and benchmarking.  Both must agree to machine precision.

namespace qcam {

using cplx = std::complex<double>;

class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static CMatrix identity(std::size_t n);
    static CMatrix diagonal(const std::vector<double>& d);
    static CMatrix diagonal(const std::vector<cplx>& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    cplx* data() { return a_.data(); }
    const cplx* data() const { return a_.data(); }

    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator-=(const CMatrix& o);
    CMatrix& operator*=(cplx s);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> a_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(cplx s, CMatrix a);

// C = A * B.  Production kernel (OpenMP when compiled in).
CMatrix matmul(const CMatrix& a, const CMatrix& b);
// Reference kernel: straight triple loop, no pragmas.
CMatrix matmul_serial(const CMatrix& a, const CMatrix& b);

// y = A * x.
std::vector<cplx> matvec(const CMatrix& a, const std::vector<cplx>& x);

CMatrix adjoint(const CMatrix& a);
CMatrix kron(const CMatrix& a, const CMatrix& b);

cplx trace(const CMatrix& a);
// trace(A * B) in O(n^2) without forming the product.
cplx trace_of_product(const CMatrix& a, const CMatrix& b);

double frobenius_norm(const CMatrix& a);
double max_abs(const CMatrix& a);
// Largest |A[i][j] - conj(A[j][i])|.
double hermiticity_defect(const CMatrix& a);
// True when the defect is below tol::hermiticity * max(1, max|entry|).
bool is_hermitian(const CMatrix& a);
// (A + A^dag) / 2.
CMatrix hermitize(const CMatrix& a);

// Outer product v w^dag.
CMatrix outer(const std::vector<cplx>& v, const std::vector<cplx>& w);

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* where);
void require_square(const CMatrix& a, const char* where);

}  // namespace qcam
