#pragma once
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

// End-to-end acceptance suite: twelve numbered criteria covering fixtures,
// cross-route identities, monotonicity properties, closed-form benchmarks,
// scaling exponents, bounds, quadrature, dynamics, representation
// equivalence, and the CLI round trip.  Shared by the `verify` subcommand
// and the ctest acceptance binary.

namespace qcam::verify {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct Options {
    std::uint64_t seed = 20260822;
    // Path of the CLI binary exercised by the round-trip criterion; without
    // it that criterion fails (it is part of the contract, not optional).
    std::string cli_path;
    std::string work_dir = "acceptance_tmp";
};

std::vector<CriterionResult> run_acceptance(const Options& opt);
bool all_passed(const std::vector<CriterionResult>& results);
void print_results(const std::vector<CriterionResult>& results, std::ostream& os);

}  // namespace qcam::verify
