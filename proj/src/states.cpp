#include "qcam/states.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "qcam/constants.hpp"
#include "qcam/oracles.hpp"

namespace qcam {

namespace {

int popcount(std::size_t b) { return std::popcount(static_cast<unsigned long long>(b)); }

void require_particles(int n, const char* where) {
    if (n < 1) throw Error(std::string(where) + ": need at least one particle");
}

std::size_t repr_dim(int n, Repr repr, const char* where) {
    switch (repr) {
        case Repr::FullTensor: return full_dim(n);
        case Repr::Dicke: return dicke_dim(n);
        case Repr::Generic: throw Error(std::string(where) + ": representation must be FullTensor or Dicke");
    }
    throw Error("repr_dim: unreachable");
}

}  // namespace

std::size_t full_dim(int n) {
    require_particles(n, "full_dim");
    if (n > 12)
        throw TooLargeError("full tensor representation capped at 12 qubits, got " + std::to_string(n));
    return std::size_t{1} << n;
}

std::size_t dicke_dim(int n) {
    require_particles(n, "dicke_dim");
    return static_cast<std::size_t>(n) + 1;
}

void validate_state(const QuantumState& s, bool check_psd) {
    require_square(s.rho, "validate_state");
    if (!is_hermitian(s.rho))
        throw NotHermitianError("state is not Hermitian within tolerance");
    const double tr = trace(s.rho).real();
    if (std::fabs(tr - 1.0) > tol::trace_one)
        throw NotAStateError("state trace " + std::to_string(tr) + " differs from 1");
    if (check_psd) {
        const auto w = eigenvalues_of(s.rho);
        if (!w.empty() && w.front() < tol::psd_clamp_floor)
            throw NotPSDError("state eigenvalue " + std::to_string(w.front()) + " below clamp floor");
    }
}

QuantumState make_state(CMatrix rho, Repr repr, int n_particles) {
    QuantumState s{std::move(rho), repr, n_particles, false};
    if (repr != Repr::Generic) {
        const std::size_t want = repr_dim(n_particles, repr, "make_state");
        if (s.rho.rows() != want)
            throw DimensionMismatchError("make_state: matrix dim " + std::to_string(s.rho.rows()) +
                                         " does not match representation dim " + std::to_string(want));
    }
    validate_state(s);
    return s;
}

QuantumState pure_state(const std::vector<cplx>& amplitudes, Repr repr, int n_particles) {
    double n2 = 0.0;
    for (const auto& a : amplitudes) n2 += std::norm(a);
    if (std::fabs(n2 - 1.0) > 1e-8)
        throw NotAStateError("pure_state: amplitude norm^2 " + std::to_string(n2) + " differs from 1");
    std::vector<cplx> v = amplitudes;
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : v) a *= inv;
    QuantumState s{outer(v, v), repr, n_particles, true};
    if (repr != Repr::Generic) {
        const std::size_t want = repr_dim(n_particles, repr, "pure_state");
        if (v.size() != want)
            throw DimensionMismatchError("pure_state: amplitude count does not match representation dim");
    }
    return s;
}

Observable::Observable(CMatrix m) : m_(std::move(m)) {
    require_square(m_, "Observable");
    if (!is_hermitian(m_)) throw NotHermitianError("Observable: matrix is not Hermitian within tolerance");
    m_ = hermitize(m_);
    eig_ = eigh(m_);
    const std::size_t n = m_.rows();
    const double span = eig_.eigenvalues.back() - eig_.eigenvalues.front();
    group_tol_ = tol::degeneracy_rel * (span + 1.0);
    index_to_sector_.resize(n);
    std::size_t begin = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        if (i == n || eig_.eigenvalues[i] - eig_.eigenvalues[i - 1] > group_tol_) {
            double mean = 0.0;
            for (std::size_t k = begin; k < i; ++k) mean += eig_.eigenvalues[k];
            mean /= static_cast<double>(i - begin);
            for (std::size_t k = begin; k < i; ++k) index_to_sector_[k] = sectors_.size();
            sectors_.push_back(SectorInfo{mean, begin, i - begin});
            begin = i;
        }
    }
}

CMatrix Observable::sector_projector(std::size_t s) const {
    if (s >= sectors_.size()) throw Error("sector_projector: sector index out of range");
    const SectorInfo& sec = sectors_[s];
    const std::size_t n = dim();
    CMatrix p(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx acc = 0.0;
            for (std::size_t k = sec.begin; k < sec.begin + sec.count; ++k)
                acc += eig_.vectors(i, k) * std::conj(eig_.vectors(j, k));
            p(i, j) = acc;
        }
    return p;
}

CMatrix to_eigenbasis(const CMatrix& m, const Observable& obs) {
    return matmul(adjoint(obs.eig().vectors), matmul(m, obs.eig().vectors));
}

CMatrix from_eigenbasis(const CMatrix& m, const Observable& obs) {
    return matmul(obs.eig().vectors, matmul(m, adjoint(obs.eig().vectors)));
}

QuantumState spin_coherent(int n, double theta, double phi, Repr repr) {
    if (repr == Repr::FullTensor)
        return product_state(std::vector<std::pair<double, double>>(n, {theta, phi}));
    require_particles(n, "spin_coherent");
    const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
    std::vector<cplx> amps(dicke_dim(n), 0.0);
    if (s == 0.0) {
        amps[0] = 1.0;
    } else if (c == 0.0) {
        amps[n] = std::polar(1.0, n * phi);
    } else {
        const double lc = std::log(std::fabs(c)), ls = std::log(std::fabs(s));
        const double sc = c < 0.0 ? -1.0 : 1.0, ss = s < 0.0 ? -1.0 : 1.0;
        for (int k = 0; k <= n; ++k) {
            const double mag = std::exp(0.5 * oracle::log_binomial(n, k) + (n - k) * lc + k * ls);
            double sign = 1.0;
            if ((n - k) % 2 == 1 && sc < 0.0) sign = -sign;
            if (k % 2 == 1 && ss < 0.0) sign = -sign;
            amps[k] = sign * mag * std::polar(1.0, k * phi);
        }
    }
    return pure_state(amps, Repr::Dicke, n);
}

QuantumState ghz_state(int n, double theta, double phi, Repr repr) {
    require_particles(n, "ghz_state");
    const cplx top = std::cos(0.5 * theta);
    const cplx bottom = std::sin(0.5 * theta) * std::polar(1.0, phi);
    if (repr == Repr::Dicke) {
        std::vector<cplx> amps(dicke_dim(n), 0.0);
        amps[0] = top;
        amps[n] = bottom;
        return pure_state(amps, Repr::Dicke, n);
    }
    std::vector<cplx> amps(full_dim(n), 0.0);
    amps[0] = top;
    amps[full_dim(n) - 1] = bottom;
    return pure_state(amps, Repr::FullTensor, n);
}

QuantumState product_state(const std::vector<std::pair<double, double>>& site_angles) {
    const int n = static_cast<int>(site_angles.size());
    const std::size_t dim = full_dim(n);
    std::vector<cplx> a0(n), a1(n);
    for (int i = 0; i < n; ++i) {
        a0[i] = std::cos(0.5 * site_angles[i].first);
        a1[i] = std::sin(0.5 * site_angles[i].first) * std::polar(1.0, site_angles[i].second);
    }
    std::vector<cplx> amps(dim);
    for (std::size_t b = 0; b < dim; ++b) {
        cplx p = 1.0;
        for (int i = 0; i < n; ++i) p *= ((b >> i) & 1u) ? a1[i] : a0[i];
        amps[b] = p;
    }
    return pure_state(amps, Repr::FullTensor, n);
}

CMatrix lowering_operator(int n, Repr repr) {
    require_particles(n, "lowering_operator");
    if (repr == Repr::Dicke) {
        const double j = 0.5 * n;
        CMatrix s(dicke_dim(n), dicke_dim(n));
        for (int k = 0; k < n; ++k) {
            const double m = j - k;
            s(k + 1, k) = std::sqrt((j + m) * (j - m + 1.0));
        }
        return s;
    }
    const std::size_t dim = full_dim(n);
    CMatrix s(dim, dim);
    for (std::size_t b = 0; b < dim; ++b)
        for (int i = 0; i < n; ++i)
            if (((b >> i) & 1u) == 0) s(b | (std::size_t{1} << i), b) += 1.0;
    return s;
}

Observable collective_spin(int n, double axis_theta, double axis_phi, Repr repr) {
    require_particles(n, "collective_spin");
    const double ct = std::cos(axis_theta), st = std::sin(axis_theta);
    const cplx eip = std::polar(1.0, axis_phi);
    if (repr == Repr::Dicke) {
        const std::size_t dim = dicke_dim(n);
        const double j = 0.5 * n;
        CMatrix s(dim, dim);
        for (int k = 0; k <= n; ++k) s(k, k) = ct * (j - k);
        for (int k = 0; k < n; ++k) {
            const double m = j - k;
            const double lower = std::sqrt((j + m) * (j - m + 1.0));  // <k+1| S_- |k>
            // S_n = ct S_z + (st/2)(e^{-i phi} S_+ + e^{i phi} S_-)
            s(k + 1, k) += 0.5 * st * eip * lower;
            s(k, k + 1) += 0.5 * st * std::conj(eip) * lower;
        }
        return Observable(std::move(s));
    }
    const std::size_t dim = full_dim(n);
    CMatrix s(dim, dim);
    for (std::size_t b = 0; b < dim; ++b)
        for (int i = 0; i < n; ++i) {
            const bool down = (b >> i) & 1u;
            s(b, b) += down ? -0.5 * ct : 0.5 * ct;
            const std::size_t flipped = b ^ (std::size_t{1} << i);
            if (!down)
                s(flipped, b) += 0.5 * st * eip;  // <1| n.s |0>
            else
                s(flipped, b) += 0.5 * st * std::conj(eip);
        }
    return Observable(std::move(s));
}

CMatrix dicke_embedding(int n) {
    const std::size_t dim = full_dim(n);
    CMatrix w(dim, dicke_dim(n));
    std::vector<double> inv_sqrt(dicke_dim(n));
    for (int k = 0; k <= n; ++k) inv_sqrt[k] = std::exp(-0.5 * oracle::log_binomial(n, k));
    for (std::size_t b = 0; b < dim; ++b) w(b, popcount(b)) = inv_sqrt[popcount(b)];
    return w;
}

QuantumState dicke_to_full(const QuantumState& s) {
    if (s.repr != Repr::Dicke) throw Error("dicke_to_full: state is not in the Dicke representation");
    const CMatrix w = dicke_embedding(s.n_particles);
    QuantumState out{matmul(w, matmul(s.rho, adjoint(w))), Repr::FullTensor, s.n_particles, s.pure};
    return out;
}

CMatrix dicke_to_full_op(const CMatrix& m, int n) {
    if (m.rows() != dicke_dim(n) || m.cols() != dicke_dim(n))
        throw DimensionMismatchError("dicke_to_full_op: matrix does not match Dicke dim");
    const CMatrix w = dicke_embedding(n);
    return matmul(w, matmul(m, adjoint(w)));
}

CMatrix full_to_dicke_op(const CMatrix& m, int n, double* leakage) {
    if (m.rows() != full_dim(n) || m.cols() != full_dim(n))
        throw DimensionMismatchError("full_to_dicke_op: matrix does not match full dim");
    const CMatrix w = dicke_embedding(n);
    CMatrix md = matmul(adjoint(w), matmul(m, w));
    if (leakage) *leakage = frobenius_norm(m - matmul(w, matmul(md, adjoint(w))));
    return md;
}

QuantumState full_to_dicke(const QuantumState& s, double* leakage) {
    if (s.repr != Repr::FullTensor)
        throw Error("full_to_dicke: state is not in the full tensor representation");
    CMatrix md = full_to_dicke_op(s.rho, s.n_particles, leakage);
    QuantumState out{std::move(md), Repr::Dicke, s.n_particles, s.pure};
    return out;
}

CMatrix partial_trace(const CMatrix& rho, std::size_t da, std::size_t db, bool keep_first) {
    require_square(rho, "partial_trace");
    if (rho.rows() != da * db)
        throw DimensionMismatchError("partial_trace: dim does not factor as da * db");
    if (keep_first) {
        CMatrix out(da, da);
        for (std::size_t i = 0; i < da; ++i)
            for (std::size_t j = 0; j < da; ++j) {
                cplx s = 0.0;
                for (std::size_t b = 0; b < db; ++b) s += rho(i * db + b, j * db + b);
                out(i, j) = s;
            }
        return out;
    }
    CMatrix out(db, db);
    for (std::size_t p = 0; p < db; ++p)
        for (std::size_t q = 0; q < db; ++q) {
            cplx s = 0.0;
            for (std::size_t a = 0; a < da; ++a) s += rho(a * db + p, a * db + q);
            out(p, q) = s;
        }
    return out;
}

}  // namespace qcam
