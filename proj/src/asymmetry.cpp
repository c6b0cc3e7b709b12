#include "qcam/asymmetry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcam/constants.hpp"

namespace qcam {

std::size_t ModeSpectrum::index_of(double omega) const {
    for (std::size_t i = 0; i < omegas.size(); ++i)
        if (std::fabs(omegas[i] - omega) <= match_tol) return i;
    throw UnknownModeError("mode " + std::to_string(omega) + " not present in the spectrum");
}

bool ModeSpectrum::contains(double omega) const {
    for (double w : omegas)
        if (std::fabs(w - omega) <= match_tol) return true;
    return false;
}

ModeSpectrum mode_spectrum(const Observable& l) {
    const auto& sectors = l.sectors();
    const std::size_t ns = sectors.size();
    struct Entry {
        double gap;
        std::size_t m, n;
    };
    std::vector<Entry> entries;
    entries.reserve(ns * ns);
    for (std::size_t m = 0; m < ns; ++m)
        for (std::size_t n = 0; n < ns; ++n)
            entries.push_back({sectors[m].lambda - sectors[n].lambda, m, n});
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.gap < b.gap; });

    ModeSpectrum spec;
    spec.match_tol = l.group_tolerance();
    std::size_t begin = 0;
    for (std::size_t i = 1; i <= entries.size(); ++i) {
        if (i == entries.size() || entries[i].gap - entries[i - 1].gap > spec.match_tol) {
            double mean = 0.0;
            for (std::size_t k = begin; k < i; ++k) mean += entries[k].gap;
            mean /= static_cast<double>(i - begin);
            spec.omegas.push_back(mean);
            spec.pairs.emplace_back();
            for (std::size_t k = begin; k < i; ++k) spec.pairs.back().push_back({entries[k].m, entries[k].n});
            begin = i;
        }
    }
    // Snap the zero mode and enforce exact +-omega symmetry (the gap multiset
    // is symmetric by construction; only floating-point dust can differ).
    for (auto& w : spec.omegas)
        if (std::fabs(w) <= spec.match_tol) w = 0.0;
    for (std::size_t i = 0; i < spec.omegas.size(); ++i) {
        if (spec.omegas[i] >= 0.0) continue;
        bool matched = false;
        for (std::size_t j = 0; j < spec.omegas.size(); ++j)
            if (spec.omegas[j] > 0.0 && std::fabs(spec.omegas[i] + spec.omegas[j]) <= spec.match_tol) {
                spec.omegas[i] = -spec.omegas[j];
                matched = true;
                break;
            }
        if (!matched)
            throw ModesNotSymmetricError("mode spectrum lost +-omega symmetry at omega = " +
                                         std::to_string(spec.omegas[i]));
    }
    return spec;
}

std::vector<cplx> pure_amplitudes(const QuantumState& rho) {
    const std::size_t n = rho.rho.rows();
    std::size_t j0 = 0;
    double best = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double d = rho.rho(j, j).real();
        if (d > best) {
            best = d;
            j0 = j;
        }
    }
    if (best <= 0.0) throw NotAStateError("pure_amplitudes: no positive diagonal entry");
    const double inv = 1.0 / std::sqrt(best);
    std::vector<cplx> psi(n);
    for (std::size_t i = 0; i < n; ++i) psi[i] = rho.rho(i, j0) * inv;
    return psi;
}

ModeAnalysis::ModeAnalysis(const QuantumState& rho, const Observable& l)
    : l_(&l), spec_(mode_spectrum(l)) {
    if (rho.rho.rows() != l.dim())
        throw DimensionMismatchError("ModeAnalysis: state and observable dimensions differ");
    pure_ = rho.pure;
    if (pure_) {
        const auto psi = pure_amplitudes(rho);
        const CMatrix& v = l.eig().vectors;
        psi_eig_.assign(l.dim(), 0.0);
        for (std::size_t i = 0; i < l.dim(); ++i) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < l.dim(); ++k) s += std::conj(v(k, i)) * psi[k];
            psi_eig_[i] = s;
        }
        sector_prob_.assign(l.sectors().size(), 0.0);
        for (std::size_t m = 0; m < l.sectors().size(); ++m) {
            const auto& sec = l.sectors()[m];
            for (std::size_t i = sec.begin; i < sec.begin + sec.count; ++i)
                sector_prob_[m] += std::norm(psi_eig_[i]);
        }
    } else {
        rho_eig_ = to_eigenbasis(rho.rho, l);
    }
}

const CMatrix& ModeAnalysis::sqrt_in_eigenbasis() const {
    if (!have_sqrt_) {
        sqrt_eig_ = sqrt_psd(hermitize(rho_eig_));
        have_sqrt_ = true;
    }
    return sqrt_eig_;
}

double ModeAnalysis::a_hs(std::size_t mode_index) const {
    const auto& sectors = l_->sectors();
    double sum = 0.0;
    if (pure_) {
        for (const auto& [m, n] : spec_.pairs[mode_index]) sum += sector_prob_[m] * sector_prob_[n];
        return sum;
    }
    const CMatrix& s = sqrt_in_eigenbasis();
    for (const auto& [m, n] : spec_.pairs[mode_index]) {
        const auto& sm = sectors[m];
        const auto& sn = sectors[n];
        for (std::size_t i = sm.begin; i < sm.begin + sm.count; ++i)
            for (std::size_t j = sn.begin; j < sn.begin + sn.count; ++j) sum += std::norm(s(i, j));
    }
    return sum;
}

double ModeAnalysis::a_tr(std::size_t mode_index) const {
    const auto& sectors = l_->sectors();
    double sum = 0.0;
    if (pure_) {
        // Each block is rank one; its trace norm is the product of the
        // projected vector norms.
        for (const auto& [m, n] : spec_.pairs[mode_index])
            sum += std::sqrt(sector_prob_[m] * sector_prob_[n]);
        return sum;
    }
    for (const auto& [m, n] : spec_.pairs[mode_index]) {
        const auto& sm = sectors[m];
        const auto& sn = sectors[n];
        if (sm.count == 1 && sn.count == 1) {
            sum += std::abs(rho_eig_(sm.begin, sn.begin));
            continue;
        }
        CMatrix block(sm.count, sn.count);
        for (std::size_t i = 0; i < sm.count; ++i)
            for (std::size_t j = 0; j < sn.count; ++j) block(i, j) = rho_eig_(sm.begin + i, sn.begin + j);
        sum += trace_norm(block);
    }
    return sum;
}

double ModeAnalysis::value(std::size_t mode_index, ModeNorm kind) const {
    return kind == ModeNorm::Trace ? a_tr(mode_index) : a_hs(mode_index);
}

CMatrix ModeAnalysis::component(std::size_t mode_index) const {
    const auto& sectors = l_->sectors();
    const std::size_t dim = l_->dim();
    CMatrix out(dim, dim);
    for (const auto& [m, n] : spec_.pairs[mode_index]) {
        const auto& sm = sectors[m];
        const auto& sn = sectors[n];
        for (std::size_t i = sm.begin; i < sm.begin + sm.count; ++i)
            for (std::size_t j = sn.begin; j < sn.begin + sn.count; ++j)
                out(i, j) = pure_ ? psi_eig_[i] * std::conj(psi_eig_[j]) : rho_eig_(i, j);
    }
    return out;
}

double ModeAnalysis::total_hs() const {
    double sum = 0.0;
    for (std::size_t i = 0; i < spec_.omegas.size(); ++i)
        if (spec_.omegas[i] != 0.0) sum += a_hs(i);
    return sum;
}

ModeComponent mode_component(const QuantumState& rho, const Observable& l, double omega) {
    ModeAnalysis ma(rho, l);
    const std::size_t idx = ma.spectrum().index_of(omega);
    return ModeComponent{ma.spectrum().omegas[idx], ma.component(idx)};
}

double mode_asymmetry(const QuantumState& rho, const Observable& l, double omega, ModeNorm kind) {
    ModeAnalysis ma(rho, l);
    return ma.value(ma.spectrum().index_of(omega), kind);
}

double total_asymmetry(const QuantumState& rho, const Observable& l) {
    return ModeAnalysis(rho, l).total_hs();
}

QuantumState translate(const QuantumState& rho, const Observable& l, double x) {
    if (rho.rho.rows() != l.dim())
        throw DimensionMismatchError("translate: state and observable dimensions differ");
    const std::size_t dim = l.dim();
    std::vector<double> lam(dim);
    for (std::size_t i = 0; i < dim; ++i) lam[i] = l.sectors()[l.sector_of(i)].lambda;
    CMatrix r = to_eigenbasis(rho.rho, l);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) r(i, j) *= std::polar(1.0, -(lam[i] - lam[j]) * x);
    QuantumState out{hermitize(from_eigenbasis(r, l)), rho.repr, rho.n_particles, rho.pure};
    return out;
}

}  // namespace qcam
