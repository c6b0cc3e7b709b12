#include "qcam/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "qcam/coherence.hpp"
#include "qcam/constants.hpp"
#include "qcam/dynamics.hpp"
#include "qcam/macroscopicity.hpp"
#include "qcam/verify.hpp"

namespace qcam::cli {

namespace {

using nlohmann::json;

struct Table {
    std::vector<std::string> columns;
    std::vector<json> rows;  // each row a json array aligned with columns
};

std::string cell_text(const json& c) {
    if (c.is_string()) return c.get<std::string>();
    if (c.is_number_integer()) return std::to_string(c.get<long long>());
    if (c.is_number_unsigned()) return std::to_string(c.get<unsigned long long>());
    return format_double(c.get<double>());
}

void write_csv(const Table& t, std::ostream& os) {
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
        os << "\n";
    }
}

json config_echo(const RunConfig& cfg) {
    json angles = json::array();
    for (auto [t, p] : cfg.site_angles) angles.push_back({t, p});
    return json{{"state", cfg.state},
                {"n", cfg.n},
                {"theta", cfg.theta},
                {"phi", cfg.phi},
                {"axis_theta", cfg.axis_theta},
                {"axis_phi", cfg.axis_phi},
                {"site_angles", angles},
                {"measure", cfg.measure},
                {"weight", cfg.weight},
                {"sigma", cfg.sigma},
                {"repr", cfg.repr},
                {"format", cfg.format},
                {"n_grid", cfg.n_grid},
                {"axis_points", cfg.axis_points},
                {"channel", cfg.channel},
                {"tau_max", cfg.tau_max},
                {"dt", cfg.dt},
                {"samples", cfg.samples}};
}

json tolerance_record() {
    return json{{"hermiticity", tol::hermiticity},
                {"eig_reconstruct", tol::eig_reconstruct},
                {"basis_orthonormal", tol::basis_orthonormal},
                {"psd_clamp_floor", tol::psd_clamp_floor},
                {"sqrt_residual", tol::sqrt_residual},
                {"trace_one", tol::trace_one},
                {"degeneracy_rel", tol::degeneracy_rel},
                {"covariance", tol::covariance},
                {"kraus_completeness", tol::kraus_completeness},
                {"monotonicity_slack", tol::monotonicity_slack},
                {"trace_drift_per_step", tol::trace_drift_per_step},
                {"from_g_quadrature", tol::from_g_quadrature}};
}

json metadata(const RunConfig& cfg, const Table& t) {
    return json{{"command", cfg.command}, {"version", kVersion},       {"seed", cfg.seed},
                {"config", config_echo(cfg)}, {"tolerances", tolerance_record()},
                {"columns", t.columns}};
}

void emit(const RunConfig& cfg, const Table& t, std::ostream& fallback) {
    std::ofstream file;
    std::ostream* os = &fallback;
    if (!cfg.out.empty()) {
        file.open(cfg.out, std::ios::binary);
        if (!file) throw Error("cannot open output file '" + cfg.out + "'");
        os = &file;
    }
    if (cfg.format == "json") {
        json doc = metadata(cfg, t);
        doc["rows"] = t.rows;
        *os << doc.dump(2) << "\n";
    } else {  // csv, validated earlier
        write_csv(t, *os);
        if (!cfg.out.empty()) {
            std::ofstream side(cfg.out + ".meta.json", std::ios::binary);
            if (!side) throw Error("cannot open sidecar for '" + cfg.out + "'");
            side << metadata(cfg, t).dump(2) << "\n";
        }
    }
}

double parse_positive(const std::string& s, const char* field) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0' || !std::isfinite(v) || !(v > 0.0))
        throw ConfigError(field, "expected a positive number, got '" + s + "'");
    return v;
}

// --sigma accepts a number or the size-dependent cutoff rule.
double sigma_value(const RunConfig& cfg, int n) {
    if (cfg.sigma == "sqrt-nlogn") {
        if (n < 2) throw ConfigError("sigma", "the sqrt-nlogn rule needs n >= 2");
        return std::sqrt(static_cast<double>(n) * std::log(static_cast<double>(n)));
    }
    return parse_positive(cfg.sigma, "sigma");
}

WeightFunction weight_fn(const RunConfig& cfg, double sigma) {
    if (cfg.weight == "scaled") return WeightFunction::scaled(sigma);
    if (cfg.weight.rfind("power", 0) == 0) {
        const std::string digits = cfg.weight.substr(5);
        return WeightFunction::power(parse_positive(digits.empty() ? "2" : digits, "weight"));
    }
    throw ConfigError("weight", "expected power<p> or scaled, got '" + cfg.weight + "'");
}

Repr resolve_repr(const RunConfig& cfg) {
    if (cfg.state == "product") {
        if (cfg.repr != "auto" && cfg.repr != "full")
            throw ConfigError("repr", "product states live in the full representation");
        if (cfg.n > 12) throw ConfigError("n", "full representation capped at n = 12");
        return Repr::FullTensor;
    }
    if (cfg.repr == "auto" || cfg.repr == "dicke") return Repr::Dicke;
    if (cfg.repr == "full") {
        if (cfg.n > 12) throw ConfigError("n", "full representation capped at n = 12");
        return Repr::FullTensor;
    }
    throw ConfigError("repr", "expected auto, dicke, or full, got '" + cfg.repr + "'");
}

void validate_common(const RunConfig& cfg) {
    if (cfg.n < 1) throw ConfigError("n", "need n >= 1");
    if (!std::isfinite(cfg.theta) || !std::isfinite(cfg.phi))
        throw ConfigError("theta", "angles must be finite");
    if (!std::isfinite(cfg.axis_theta) || !std::isfinite(cfg.axis_phi))
        throw ConfigError("axis_theta", "axis angles must be finite");
    if (cfg.format != "csv" && cfg.format != "json")
        throw ConfigError("format", "expected csv or json, got '" + cfg.format + "'");
    if (cfg.state != "coherent" && cfg.state != "ghz" && cfg.state != "product")
        throw ConfigError("state", "expected coherent, ghz, or product, got '" + cfg.state + "'");
}

QuantumState build_state(const RunConfig& cfg, Repr repr) {
    if (cfg.state == "coherent") return spin_coherent(cfg.n, cfg.theta, cfg.phi, repr);
    if (cfg.state == "ghz") return ghz_state(cfg.n, cfg.theta, cfg.phi, repr);
    // product
    auto angles = cfg.site_angles;
    if (angles.empty())
        angles.assign(static_cast<std::size_t>(cfg.n), {cfg.theta, cfg.phi});
    if (angles.size() != static_cast<std::size_t>(cfg.n))
        throw ConfigError("site_angles", "need exactly n = " + std::to_string(cfg.n) + " entries");
    return product_state(angles);
}

bool observable_needed(const std::string& measure) {
    return measure != "c_a" && measure != "c_l1";
}

double measure_value(const std::string& name, const QuantumState& st, const Observable* obs,
                     double sigma, const WeightFunction& wf) {
    if (name == "c_a") return c_a(st).value;
    if (name == "c_l1") return c_l1(st);
    if (name == "asymmetry") return total_asymmetry(st, *obs);
    if (name == "m_tr") return weighted_measure(st, *obs, wf, ModeNorm::Trace).value;
    if (name == "m_hs") return weighted_measure(st, *obs, wf, ModeNorm::HilbertSchmidt).value;
    if (name == "m_sigma") return scaled_measure(st, *obs, sigma).value;
    if (name == "skew") return skew_information(st, *obs);
    throw ConfigError("measure", "unknown measure '" + name + "'");
}

void validate_measure_name(const std::string& name) {
    for (const char* known : {"c_a", "c_l1", "asymmetry", "m_tr", "m_hs", "m_sigma", "skew"})
        if (name == known) return;
    throw ConfigError("measure", "unknown measure '" + name + "'");
}

// ---- commands ----

int cmd_measure(const RunConfig& cfg, std::ostream& out) {
    validate_measure_name(cfg.measure);
    const Repr repr = resolve_repr(cfg);
    const double sigma = sigma_value(cfg, cfg.n);
    const WeightFunction wf = weight_fn(cfg, sigma);
    const QuantumState st = build_state(cfg, repr);
    std::optional<Observable> obs;
    if (observable_needed(cfg.measure))
        obs.emplace(collective_spin(cfg.n, cfg.axis_theta, cfg.axis_phi, repr));
    const double v = measure_value(cfg.measure, st, obs ? &*obs : nullptr, sigma, wf);

    Table t;
    t.columns = {"state", "n",       "theta", "phi",  "axis_theta",
                 "axis_phi", "measure", "sigma", "value"};
    t.rows.push_back(json::array({cfg.state, cfg.n, cfg.theta, cfg.phi, cfg.axis_theta,
                                  cfg.axis_phi, cfg.measure, sigma, v}));
    emit(cfg, t, out);
    return 0;
}

int cmd_modes(const RunConfig& cfg, std::ostream& out) {
    const Repr repr = resolve_repr(cfg);
    const QuantumState st = build_state(cfg, repr);
    const Observable obs(collective_spin(cfg.n, cfg.axis_theta, cfg.axis_phi, repr));
    ModeAnalysis ma(st, obs);
    const ModeSpectrum& spec = ma.spectrum();

    Table t;
    t.columns = {"omega", "a_tr", "a_hs"};
    for (std::size_t i = 0; i < spec.omegas.size(); ++i) {
        if (spec.omegas[i] < -spec.match_tol) continue;  // sign-symmetric; list omega >= 0
        t.rows.push_back(json::array({spec.omegas[i], ma.a_tr(i), ma.a_hs(i)}));
    }
    emit(cfg, t, out);
    return 0;
}

int cmd_sweep_n(const RunConfig& cfg, std::ostream& out) {
    std::vector<int> grid = cfg.n_grid;
    if (grid.empty()) grid = {50, 70, 100, 140, 200, 280, 400, 500};
    for (int n : grid)
        if (n < 2) throw ConfigError("n_grid", "every size must be >= 2");

    const double pi = 3.14159265358979323846;
    struct Panel {
        const char* state;
        double theta;
    };
    const Panel panels[] = {{"ghz", 0.5 * pi}, {"ghz", 0.25 * pi},
                            {"coherent", 0.5 * pi}, {"coherent", 0.25 * pi}};

    std::vector<std::vector<json>> slots(grid.size());
    std::string error;
#pragma omp parallel for schedule(dynamic)
    for (long gi = 0; gi < static_cast<long>(grid.size()); ++gi) {
        try {
            const int n = grid[static_cast<std::size_t>(gi)];
            const Observable sz(collective_spin(n, 0.0, 0.0, Repr::Dicke));
            const double sigma = sigma_value(cfg, n);
            const WeightFunction wf = weight_fn(cfg, sigma);
            std::vector<json> rows;
            for (const Panel& p : panels) {
                const QuantumState st = (p.state[0] == 'g')
                                            ? ghz_state(n, p.theta, 0.0, Repr::Dicke)
                                            : spin_coherent(n, p.theta, 0.0, Repr::Dicke);
                rows.push_back(json::array(
                    {n, p.state, p.theta,
                     weighted_measure(st, sz, wf, ModeNorm::Trace).value,
                     weighted_measure(st, sz, wf, ModeNorm::HilbertSchmidt).value,
                     scaled_measure(st, sz, sigma).value}));
            }
            slots[static_cast<std::size_t>(gi)] = std::move(rows);
        } catch (const std::exception& e) {
#pragma omp critical
            error = e.what();
        }
    }
    if (!error.empty()) throw Error(error);

    Table t;
    t.columns = {"n", "state", "theta", "m_tr", "m_hs", "m_sigma"};
    for (auto& rows : slots)
        for (auto& r : rows) t.rows.push_back(std::move(r));
    emit(cfg, t, out);
    return 0;
}

int cmd_sweep_axis(const RunConfig& cfg, std::ostream& out) {
    if (cfg.axis_points < 2) throw ConfigError("axis_points", "need at least 2 grid points");
    const Repr repr = resolve_repr(cfg);
    const double pi = 3.14159265358979323846;
    const double sigma = sigma_value(cfg, cfg.n);
    const WeightFunction wf = weight_fn(cfg, sigma);
    const QuantumState ghz = ghz_state(cfg.n, cfg.theta, cfg.phi, repr);
    const QuantumState aligned = spin_coherent(cfg.n, 0.0, 0.0, repr);

    std::vector<std::vector<json>> slots(static_cast<std::size_t>(cfg.axis_points));
    std::string error;
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < static_cast<long>(cfg.axis_points); ++k) {
        try {
            const double at = pi * static_cast<double>(k) / (cfg.axis_points - 1);
            const Observable la(collective_spin(cfg.n, at, cfg.axis_phi, repr));
            std::vector<json> rows;
            for (const auto* pair : {&ghz, &aligned}) {
                const char* name = (pair == &ghz) ? "ghz" : "aligned";
                rows.push_back(json::array(
                    {at, name, weighted_measure(*pair, la, wf, ModeNorm::Trace).value,
                     weighted_measure(*pair, la, wf, ModeNorm::HilbertSchmidt).value,
                     scaled_measure(*pair, la, sigma).value}));
            }
            slots[static_cast<std::size_t>(k)] = std::move(rows);
        } catch (const std::exception& e) {
#pragma omp critical
            error = e.what();
        }
    }
    if (!error.empty()) throw Error(error);

    Table t;
    t.columns = {"axis_theta", "state", "m_tr", "m_hs", "m_sigma"};
    for (auto& rows : slots)
        for (auto& r : rows) t.rows.push_back(std::move(r));
    emit(cfg, t, out);
    return 0;
}

int cmd_evolve(const RunConfig& cfg, std::ostream& out) {
    if (cfg.samples < 2) throw ConfigError("samples", "need at least 2 recorded times");
    if (cfg.channel != "dephasing" && cfg.channel != "dissipation")
        throw ConfigError("channel", "expected dephasing or dissipation, got '" + cfg.channel + "'");
    if (cfg.tau_max > 0.0 && !std::isfinite(cfg.tau_max))
        throw ConfigError("tau_max", "must be finite");
    const Repr repr = resolve_repr(cfg);
    const double sigma = sigma_value(cfg, cfg.n);
    const QuantumState st = build_state(cfg, repr);
    const Observable axis(collective_spin(cfg.n, cfg.axis_theta, cfg.axis_phi, repr));

    const double nn = static_cast<double>(cfg.n);
    CMatrix jump = (cfg.channel == "dephasing") ? collective_spin(cfg.n, 0.0, 0.0, repr).matrix()
                                                : lowering_operator(cfg.n, repr);
    const double tau_max = (cfg.tau_max > 0.0)
                               ? cfg.tau_max
                               : (cfg.channel == "dephasing" ? 6.0 / (nn * nn) : 3.0 / nn);

    // Step size: resolve each sampling interval and keep rate * dt small.
    const double seg = tau_max / (cfg.samples - 1);
    const double lam = eigenvalues_of(matmul(adjoint(jump), jump)).back();
    double dt_req = (cfg.dt > 0.0) ? cfg.dt : std::min(seg, lam > 1e-12 ? 0.1 / lam : seg);
    const double sub_f = std::ceil(seg / dt_req - 1e-12);
    if (!(sub_f >= 1.0) || sub_f * (cfg.samples - 1) > 5e6)
        throw ConfigError("dt", "step size would need more than 5e6 integrator steps");
    const std::size_t sub = static_cast<std::size_t>(sub_f);

    LindbladSpec spec;
    spec.jump = std::move(jump);
    spec.dt = seg / static_cast<double>(sub);
    spec.steps = sub * static_cast<std::size_t>(cfg.samples - 1);
    spec.record_stride = sub;
    const Trajectory traj = lindblad_evolve(st, spec);

    Table t;
    t.columns = {"tau", "m_sigma", "corner_abs", "trace"};
    const std::size_t last = st.rho.rows() - 1;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const QuantumState& s = traj.states[k];
        t.rows.push_back(json::array({traj.times[k], scaled_measure(s, axis, sigma).value,
                                      std::abs(s.rho(0, last)), trace(s.rho).real()}));
    }
    emit(cfg, t, out);
    return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
    verify::Options vo;
    vo.seed = cfg.seed;
    vo.cli_path = cfg.cli_path;
    const auto results = verify::run_acceptance(vo);
    std::ostringstream text;
    verify::print_results(results, text);
    if (cfg.out.empty()) {
        out << text.str();
    } else {
        std::ofstream file(cfg.out, std::ios::binary);
        if (!file) throw Error("cannot open output file '" + cfg.out + "'");
        file << text.str();
        diag << text.str();
    }
    return verify::all_passed(results) ? 0 : 1;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void apply_config_json(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config", "cannot read '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw ConfigError("config", std::string("parse failure: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config", "top level must be an object");

    for (const auto& [key, value] : doc.items()) {
        try {
            if (key == "state") cfg.state = value.get<std::string>();
            else if (key == "n") cfg.n = value.get<int>();
            else if (key == "theta") cfg.theta = value.get<double>();
            else if (key == "phi") cfg.phi = value.get<double>();
            else if (key == "axis_theta") cfg.axis_theta = value.get<double>();
            else if (key == "axis_phi") cfg.axis_phi = value.get<double>();
            else if (key == "measure") cfg.measure = value.get<std::string>();
            else if (key == "weight") cfg.weight = value.get<std::string>();
            else if (key == "sigma") {
                if (value.is_string()) cfg.sigma = value.get<std::string>();
                else cfg.sigma = format_double(value.get<double>());
            } else if (key == "repr") cfg.repr = value.get<std::string>();
            else if (key == "out") cfg.out = value.get<std::string>();
            else if (key == "format") cfg.format = value.get<std::string>();
            else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
            else if (key == "n_grid") cfg.n_grid = value.get<std::vector<int>>();
            else if (key == "axis_points") cfg.axis_points = value.get<int>();
            else if (key == "channel") cfg.channel = value.get<std::string>();
            else if (key == "tau_max") cfg.tau_max = value.get<double>();
            else if (key == "dt") cfg.dt = value.get<double>();
            else if (key == "samples") cfg.samples = value.get<int>();
            else if (key == "site_angles") {
                cfg.site_angles.clear();
                for (const auto& entry : value) {
                    if (!entry.is_array() || entry.size() != 2)
                        throw ConfigError("site_angles", "entries must be [theta, phi] pairs");
                    cfg.site_angles.emplace_back(entry[0].get<double>(), entry[1].get<double>());
                }
            } else {
                throw ConfigError(key, "unknown configuration field");
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError(key, "wrong type");
        }
    }
}

int run(const RunConfig& cfg, std::ostream& out_stream, std::ostream& diag) {
    validate_common(cfg);
    if (cfg.command == "measure") return cmd_measure(cfg, out_stream);
    if (cfg.command == "modes") return cmd_modes(cfg, out_stream);
    if (cfg.command == "sweep-n") return cmd_sweep_n(cfg, out_stream);
    if (cfg.command == "sweep-axis") return cmd_sweep_axis(cfg, out_stream);
    if (cfg.command == "evolve") return cmd_evolve(cfg, out_stream);
    if (cfg.command == "verify") return cmd_verify(cfg, out_stream, diag);
    throw ConfigError("command", "unknown command '" + cfg.command + "'");
}

}  // namespace qcam::cli
