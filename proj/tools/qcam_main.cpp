#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qcam/cli.hpp"
#include "qcam/errors.hpp"

// Flag parsing only; all behavior lives in qcam::cli::run so tests can call
// it in-process.  A --config JSON file supplies defaults, explicit flags win.

int main(int argc, char** argv) {
    qcam::cli::RunConfig cfg;
    cfg.cli_path = argv[0];
    try {
        for (int i = 1; i + 1 < argc; ++i)
            if (std::string(argv[i]) == "--config") qcam::cli::apply_config_json(cfg, argv[i + 1]);

        CLI::App app{"coherence, asymmetry modes, and macroscopicity for collective spins"};
        app.require_subcommand(1);
        std::string config_path;  // value consumed by the pre-scan above

        auto add_common = [&](CLI::App* sub) {
            sub->add_option("--config", config_path, "JSON config file (defaults; flags override)");
            sub->add_option("--state", cfg.state, "coherent | ghz | product");
            sub->add_option("--n", cfg.n, "number of spins");
            sub->add_option("--theta", cfg.theta, "polar angle of the state");
            sub->add_option("--phi", cfg.phi, "azimuth of the state");
            sub->add_option("--axis-theta", cfg.axis_theta, "polar angle of the measured axis");
            sub->add_option("--axis-phi", cfg.axis_phi, "azimuth of the measured axis");
            sub->add_option("--measure", cfg.measure,
                            "c_a | c_l1 | asymmetry | m_tr | m_hs | m_sigma | skew");
            sub->add_option("--weight", cfg.weight, "power<p> | scaled");
            sub->add_option("--sigma", cfg.sigma, "positive number or sqrt-nlogn");
            sub->add_option("--repr", cfg.repr, "auto | dicke | full");
            sub->add_option("--out", cfg.out, "output file (stdout if omitted)");
            sub->add_option("--format", cfg.format, "csv | json");
            sub->add_option("--seed", cfg.seed, "seed recorded in metadata, used by verify");
            return sub;
        };

        add_common(app.add_subcommand("measure", "one measure of one state"));
        add_common(app.add_subcommand("modes", "per-mode asymmetry table"));
        CLI::App* sn = add_common(app.add_subcommand("sweep-n", "measures across system sizes"));
        sn->add_option("--n-grid", cfg.n_grid, "system sizes to sweep");
        CLI::App* sa =
            add_common(app.add_subcommand("sweep-axis", "measures across measurement axes"));
        sa->add_option("--axis-points", cfg.axis_points, "grid points over [0, pi]");
        CLI::App* ev = add_common(app.add_subcommand("evolve", "measure along a decay trajectory"));
        ev->add_option("--channel", cfg.channel, "dephasing | dissipation");
        ev->add_option("--tau-max", cfg.tau_max, "time window (default set by the channel)");
        ev->add_option("--dt", cfg.dt, "integrator step (default: stability rule)");
        ev->add_option("--samples", cfg.samples, "recorded times including tau = 0");
        add_common(app.add_subcommand("verify", "run the acceptance suite"));

        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e);
            return code == 0 ? 0 : 2;
        }
        cfg.command = app.get_subcommands().front()->get_name();
        return qcam::cli::run(cfg, std::cout, std::cerr);
    } catch (const qcam::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qcam::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
