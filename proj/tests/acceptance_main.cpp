#include <iostream>

#include "qcam/verify.hpp"

// Prints one line per acceptance criterion; exit code 0 only if all pass.
// The CLI binary path comes from the build (or argv[1] as an override).

int main(int argc, char** argv) {
    qcam::verify::Options opt;
#ifdef QCAM_CLI_PATH
    opt.cli_path = QCAM_CLI_PATH;
#endif
    if (argc > 1) opt.cli_path = argv[1];
    const auto results = qcam::verify::run_acceptance(opt);
    qcam::verify::print_results(results, std::cout);
    return qcam::verify::all_passed(results) ? 0 : 1;
}
