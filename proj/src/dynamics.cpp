#include "qcam/dynamics.hpp"

#include <cmath>
#include <memory>
#include <numeric>
#include <string>

#include "qcam/constants.hpp"
#include "qcam/hermitian.hpp"
#include "qcam/macroscopicity.hpp"
#include "qcam/random_states.hpp"

namespace qcam {

KrausChannel make_kraus(std::vector<CMatrix> ops) {
    if (ops.empty()) throw Error("make_kraus: empty operator list");
    const std::size_t dim = ops.front().rows();
    CMatrix sum(dim, dim);
    for (const auto& k : ops) {
        if (k.rows() != dim || k.cols() != dim)
            throw DimensionMismatchError("make_kraus: operators must share a square shape");
        sum += matmul(adjoint(k), k);
    }
    double defect = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            defect = std::max(defect, std::abs(sum(i, j) - (i == j ? 1.0 : 0.0)));
    if (defect > tol::kraus_completeness)
        throw NotTracePreservingError("make_kraus: completeness defect " + std::to_string(defect));
    return KrausChannel{std::move(ops)};
}

CMatrix apply_kraus(const KrausChannel& k, const CMatrix& m) {
    CMatrix out(m.rows(), m.cols());
    for (const auto& op : k.ops) out += matmul(op, matmul(m, adjoint(op)));
    return out;
}

ChannelMap channel_from_kraus(KrausChannel k) {
    auto shared = std::make_shared<KrausChannel>(std::move(k));
    ChannelMap c;
    c.apply = [shared](const CMatrix& m) { return apply_kraus(*shared, m); };
    c.kraus = *shared;
    c.description = "kraus(" + std::to_string(shared->ops.size()) + ")";
    return c;
}

ChannelMap partial_dephasing(const Observable& l, const std::vector<double>& kill_omegas) {
    const ModeSpectrum spec = mode_spectrum(l);
    for (double w : kill_omegas) {
        if (std::fabs(w) <= spec.match_tol)
            throw Error("partial_dephasing: cannot kill the zero mode");
        if (!spec.contains(w))
            throw UnknownModeError("partial_dephasing: mode " + std::to_string(w) + " not in spectrum");
        bool mirrored = false;
        for (double v : kill_omegas)
            if (std::fabs(v + w) <= spec.match_tol) mirrored = true;
        if (!mirrored)
            throw ModesNotSymmetricError("partial_dephasing: kill set must contain -omega for omega = " +
                                         std::to_string(w));
    }

    const auto& sectors = l.sectors();
    const std::size_t ns = sectors.size();
    // Sector multiplier: 0 on killed gaps, 1 elsewhere.
    auto factor = [&](std::size_t m, std::size_t n) {
        const double gap = sectors[m].lambda - sectors[n].lambda;
        for (double w : kill_omegas)
            if (std::fabs(gap - w) <= spec.match_tol) return 0.0;
        return 1.0;
    };

    struct Ctx {
        Observable l;
        std::vector<std::size_t> sector_of_index;
        std::vector<std::vector<double>> f;
        explicit Ctx(Observable obs) : l(std::move(obs)) {}
    };
    auto ctx = std::make_shared<Ctx>(l);
    ctx->sector_of_index.resize(l.dim());
    for (std::size_t i = 0; i < l.dim(); ++i) ctx->sector_of_index[i] = l.sector_of(i);
    ctx->f.assign(ns, std::vector<double>(ns, 1.0));
    for (std::size_t m = 0; m < ns; ++m)
        for (std::size_t n = 0; n < ns; ++n) ctx->f[m][n] = factor(m, n);

    ChannelMap c;
    c.apply = [ctx](const CMatrix& m) {
        const Observable& obs = ctx->l;
        CMatrix r = to_eigenbasis(m, obs);
        for (std::size_t i = 0; i < r.rows(); ++i)
            for (std::size_t j = 0; j < r.cols(); ++j)
                r(i, j) *= ctx->f[ctx->sector_of_index[i]][ctx->sector_of_index[j]];
        return from_eigenbasis(r, obs);
    };
    c.description = "partial_dephasing(" + std::to_string(kill_omegas.size()) + " modes)";

    // Kraus form from the spectral decomposition of the multiplier matrix,
    // when it is PSD (Schur product theorem: then the map is CP).
    CMatrix fm(ns, ns);
    for (std::size_t m = 0; m < ns; ++m)
        for (std::size_t n = 0; n < ns; ++n) fm(m, n) = ctx->f[m][n];
    const EigResult fe = eigh(fm);
    if (fe.eigenvalues.front() >= -1e-12 && l.dim() <= 64) {
        std::vector<CMatrix> ops;
        for (std::size_t r = 0; r < ns; ++r) {
            const double w = std::max(0.0, fe.eigenvalues[r]);
            if (w <= 1e-14) continue;
            CMatrix k(l.dim(), l.dim());
            for (std::size_t m = 0; m < ns; ++m) {
                const cplx coeff = std::sqrt(w) * fe.vectors(m, r);
                if (std::abs(coeff) < 1e-16) continue;
                k += coeff * l.sector_projector(m);
            }
            ops.push_back(std::move(k));
        }
        c.kraus = make_kraus(std::move(ops));
    }
    return c;
}

KrausChannel random_incoherent_channel(std::size_t dim, std::size_t n_kraus, Rng& rng) {
    if (dim < 1 || n_kraus < 1) throw Error("random_incoherent_channel: need dim >= 1, n_kraus >= 1");
    // Operator r carries one entry per column, at rows forming a random
    // permutation: K_r = D_r P_r with D_r diagonal.  Injective rows keep
    // K_r^dag K_r diagonal, so completeness reduces to sum_r |a_{r,j}|^2 = 1
    // per column, which the weight normalisation guarantees.
    std::vector<CMatrix> ops(n_kraus, CMatrix(dim, dim));
    std::vector<std::vector<double>> amp(n_kraus, std::vector<double>(dim));
    for (std::size_t j = 0; j < dim; ++j) {
        double total = 0.0;
        for (std::size_t r = 0; r < n_kraus; ++r) {
            amp[r][j] = rng.uniform() + 1e-3;
            total += amp[r][j];
        }
        for (std::size_t r = 0; r < n_kraus; ++r) amp[r][j] = std::sqrt(amp[r][j] / total);
    }
    std::vector<std::size_t> perm(dim);
    for (std::size_t r = 0; r < n_kraus; ++r) {
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        for (std::size_t i = dim; i > 1; --i) std::swap(perm[i - 1], perm[rng.integer(i)]);
        for (std::size_t j = 0; j < dim; ++j)
            ops[r](perm[j], j) = amp[r][j] * std::polar(1.0, rng.uniform(0.0, 2.0 * 3.14159265358979323846));
    }
    return make_kraus(std::move(ops));
}

namespace {

// Unitary that is block diagonal in L's sectors, random inside each block.
CMatrix random_sector_unitary(const Observable& l, Rng& rng) {
    const std::size_t dim = l.dim();
    CMatrix u(dim, dim);
    for (const auto& sec : l.sectors()) {
        // Eigenvectors of a random Hermitian block form a random unitary.
        CMatrix h(sec.count, sec.count);
        for (std::size_t i = 0; i < sec.count; ++i) {
            h(i, i) = rng.normal();
            for (std::size_t j = i + 1; j < sec.count; ++j) {
                h(i, j) = 0.5 * cplx(rng.normal(), rng.normal());
                h(j, i) = std::conj(h(i, j));
            }
        }
        const EigResult e = eigh(h);
        for (std::size_t i = 0; i < sec.count; ++i)
            for (std::size_t j = 0; j < sec.count; ++j) u(sec.begin + i, sec.begin + j) = e.vectors(i, j);
    }
    // Conjugate back into the original basis.
    return matmul(l.eig().vectors, matmul(u, adjoint(l.eig().vectors)));
}

CMatrix translation_unitary(const Observable& l, double x) {
    const std::size_t dim = l.dim();
    std::vector<cplx> phases(dim);
    for (std::size_t i = 0; i < dim; ++i)
        phases[i] = std::polar(1.0, -l.sectors()[l.sector_of(i)].lambda * x);
    return matmul(l.eig().vectors, matmul(CMatrix::diagonal(phases), adjoint(l.eig().vectors)));
}

}  // namespace

ChannelMap random_covariant_channel(const Observable& l, Rng& rng) {
    struct Primitive {
        double weight;
        std::function<CMatrix(const CMatrix&)> apply;
    };
    auto prims = std::make_shared<std::vector<Primitive>>();
    const int n_prims = 2 + static_cast<int>(rng.integer(3));
    double total = 0.0;
    std::string desc = "covariant_mixture(";
    auto lshared = std::make_shared<Observable>(l);
    for (int p = 0; p < n_prims; ++p) {
        const double weight = rng.uniform() + 0.1;
        total += weight;
        switch (rng.integer(4)) {
            case 0: {  // fixed translation
                auto u = std::make_shared<CMatrix>(translation_unitary(l, rng.uniform(0.2, 3.0)));
                prims->push_back({weight, [u](const CMatrix& m) {
                                      return matmul(*u, matmul(m, adjoint(*u)));
                                  }});
                desc += "T";
                break;
            }
            case 1: {  // Gaussian blur
                const double sigma = rng.uniform(0.5, 3.0);
                prims->push_back({weight, [lshared, sigma](const CMatrix& m) {
                                      CMatrix r = to_eigenbasis(m, *lshared);
                                      const auto& sect = lshared->sectors();
                                      for (std::size_t i = 0; i < r.rows(); ++i)
                                          for (std::size_t j = 0; j < r.cols(); ++j) {
                                              const double gap =
                                                  sect[lshared->sector_of(i)].lambda -
                                                  sect[lshared->sector_of(j)].lambda;
                                              r(i, j) *= std::exp(-gap * gap / (8.0 * sigma * sigma));
                                          }
                                      return from_eigenbasis(r, *lshared);
                                  }});
                desc += "G";
                break;
            }
            case 2: {  // sector-block unitary
                auto u = std::make_shared<CMatrix>(random_sector_unitary(l, rng));
                prims->push_back({weight, [u](const CMatrix& m) {
                                      return matmul(*u, matmul(m, adjoint(*u)));
                                  }});
                desc += "U";
                break;
            }
            default: {  // random-phase dephasing mixture
                const int terms = 2 + static_cast<int>(rng.integer(3));
                auto us = std::make_shared<std::vector<CMatrix>>();
                std::vector<double> tw(terms);
                double tt = 0.0;
                for (int t = 0; t < terms; ++t) {
                    us->push_back(translation_unitary(l, rng.uniform(0.0, 6.0)));
                    tw[t] = rng.uniform() + 0.1;
                    tt += tw[t];
                }
                auto weights = std::make_shared<std::vector<double>>(tw);
                for (auto& x : *weights) x /= tt;
                prims->push_back({weight, [us, weights](const CMatrix& m) {
                                      CMatrix out(m.rows(), m.cols());
                                      for (std::size_t t = 0; t < us->size(); ++t) {
                                          const CMatrix& u = (*us)[t];
                                          out += cplx((*weights)[t]) *
                                                 matmul(u, matmul(m, adjoint(u)));
                                      }
                                      return out;
                                  }});
                desc += "D";
                break;
            }
        }
    }
    for (auto& p : *prims) p.weight /= total;
    ChannelMap c;
    c.apply = [prims](const CMatrix& m) {
        CMatrix out(m.rows(), m.cols());
        for (const auto& p : *prims) out += cplx(p.weight) * p.apply(m);
        return out;
    };
    c.description = desc + ")";
    return c;
}

CovarianceReport covariance_check(const ChannelMap& e, const Observable& l, int n_samples,
                                  std::uint64_t seed) {
    Rng rng(seed);
    const std::size_t dim = l.dim();
    CovarianceReport rep;
    for (int s = 0; s < n_samples; ++s) {
        // Alternate pure and full-rank mixed samples.
        const QuantumState rho = (s % 2 == 0) ? random_pure(dim, rng) : random_mixed(dim, rng);
        const CMatrix mapped = e.apply(rho.rho);
        ModeAnalysis before(rho, l);
        QuantumState mapped_state{hermitize(mapped), Repr::Generic, 0, false};
        ModeAnalysis after(mapped_state, l);
        const auto& spec = before.spectrum();
        for (std::size_t i = 0; i < spec.omegas.size(); ++i) {
            const CMatrix lhs = e.apply(from_eigenbasis(before.component(i), l));
            const CMatrix rhs = from_eigenbasis(after.component(i), l);
            rep.max_violation = std::max(rep.max_violation, max_abs(lhs - rhs));
        }
    }
    rep.covariant = rep.max_violation < tol::covariance;
    return rep;
}

Trajectory lindblad_evolve(const QuantumState& rho0, const LindbladSpec& spec) {
    require_square(spec.jump, "lindblad_evolve");
    if (spec.jump.rows() != rho0.rho.rows())
        throw DimensionMismatchError("lindblad_evolve: jump operator does not match state dim");
    if (!(spec.dt > 0.0)) throw StepTooLargeError("lindblad_evolve: dt must be positive");
    if (spec.steps < 1) throw Error("lindblad_evolve: need at least one step");
    if (spec.record_stride < 1) throw Error("lindblad_evolve: record_stride must be >= 1");
    validate_state(rho0);

    const CMatrix& a = spec.jump;
    const CMatrix ad = adjoint(a);
    const CMatrix b = matmul(ad, a);  // A^dag A

    auto liouville = [&](const CMatrix& r) {
        CMatrix out = matmul(a, matmul(r, ad));
        const CMatrix br = matmul(b, r);
        const CMatrix rb = matmul(r, b);
        out -= cplx(0.5) * (br + rb);
        return out;
    };

    Trajectory traj;
    CMatrix rho = rho0.rho;
    auto record = [&](double t) {
        traj.times.push_back(t);
        traj.states.push_back(QuantumState{rho, rho0.repr, rho0.n_particles, false});
    };
    record(0.0);
    double prev_trace = trace(rho).real();
    for (std::size_t step = 1; step <= spec.steps; ++step) {
        const CMatrix k1 = liouville(rho);
        const CMatrix k2 = liouville(rho + cplx(0.5 * spec.dt) * k1);
        const CMatrix k3 = liouville(rho + cplx(0.5 * spec.dt) * k2);
        const CMatrix k4 = liouville(rho + cplx(spec.dt) * k3);
        rho += cplx(spec.dt / 6.0) * (k1 + cplx(2.0) * k2 + cplx(2.0) * k3 + k4);
        rho = hermitize(rho);
        const double tr = trace(rho).real();
        const double drift = std::fabs(tr - prev_trace);
        traj.max_step_trace_drift = std::max(traj.max_step_trace_drift, drift);
        if (drift > tol::trace_drift_per_step)
            throw StepTooLargeError("lindblad_evolve: trace drift " + std::to_string(drift) +
                                    " in one step; reduce dt");
        prev_trace = tr;
        if (step % spec.record_stride == 0 || step == spec.steps)
            record(static_cast<double>(step) * spec.dt);
    }
    return traj;
}

QuantumState dephased_ghz(int n, double theta, double phi, double tau, Repr repr) {
    if (tau < 0.0) throw Error("dephased_ghz: tau must be nonnegative");
    const double gamma = std::exp(-0.5 * static_cast<double>(n) * n * tau);
    const double a = std::pow(std::cos(0.5 * theta), 2);
    const double bb = std::pow(std::sin(0.5 * theta), 2);
    const cplx c = 0.5 * std::sin(theta) * gamma * std::polar(1.0, -phi);
    std::size_t dim, top, bottom;
    if (repr == Repr::Dicke) {
        dim = dicke_dim(n);
        top = 0;
        bottom = static_cast<std::size_t>(n);
    } else {
        dim = full_dim(n);
        top = 0;
        bottom = dim - 1;
    }
    CMatrix rho(dim, dim);
    rho(top, top) = a;
    rho(bottom, bottom) = bb;
    rho(top, bottom) = c;
    rho(bottom, top) = std::conj(c);
    return make_state(std::move(rho), repr, n);
}

}  // namespace qcam
