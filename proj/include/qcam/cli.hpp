#pragma once
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

// Command layer: everything the qcam binary can do, exposed as a library so
// tests can drive it in-process.  Exit-code contract: 0 success, 1 numerical
// or domain failure (qcam::Error), 2 configuration/usage problems
// (qcam::ConfigError, bad flags).

namespace qcam::cli {

inline constexpr const char* kVersion = "0.1.0";

struct RunConfig {
    std::string command;  // measure | modes | sweep-n | sweep-axis | evolve | verify

    std::string state = "coherent";  // coherent | ghz | product
    int n = 10;
    double theta = 1.5707963267948966;  // pi/2
    double phi = 0.0;
    double axis_theta = 0.0;
    double axis_phi = 0.0;
    // Per-site Bloch angles for product states (config file only); empty
    // means every site points along (theta, phi).
    std::vector<std::pair<double, double>> site_angles;

    std::string measure = "m_hs";  // c_a | c_l1 | asymmetry | m_tr | m_hs | m_sigma | skew
    std::string weight = "power2";  // power<p> | scaled
    std::string sigma = "sqrt-nlogn";  // positive number or the cutoff rule
    std::string repr = "auto";  // auto | dicke | full

    std::string out;             // output file; empty writes to stdout
    std::string format = "csv";  // csv | json
    std::uint64_t seed = 1;

    std::vector<int> n_grid;  // sweep-n sizes; empty uses the default ladder
    int axis_points = 181;    // sweep-axis grid resolution over [0, pi]

    std::string channel = "dephasing";  // evolve: dephasing | dissipation
    double tau_max = -1.0;              // evolve window; <= 0 picks the default
    double dt = -1.0;                   // integrator step; <= 0 picks a stable one
    int samples = 25;                   // recorded times including tau = 0

    std::string cli_path;  // self path, used by `verify` to exercise the binary
};

// Loads a JSON config file into cfg (known fields only; unknown keys raise
// ConfigError).  Values later overridden by explicit flags.
void apply_config_json(RunConfig& cfg, const std::string& path);

// Executes cfg.command.  Tables go to cfg.out (plus a .meta.json sidecar for
// CSV) or to out_stream when cfg.out is empty; diagnostics go to diag.
// Returns the process exit code; throws ConfigError / Error for the caller
// to map (the qcam main translates them to 2 / 1).
int run(const RunConfig& cfg, std::ostream& out_stream, std::ostream& diag);

// 17-significant-digit formatting used for every floating-point cell.
std::string format_double(double v);

}  // namespace qcam::cli
