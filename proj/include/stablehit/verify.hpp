#pragma once

#include "stablehit/montecarlo.hpp"
#include "stablehit/resolvent.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace stablehit {

struct VerificationReport {
    std::string check_id;
    double lhs = 0.0;
    double rhs = 0.0;
    double tolerance = 0.0;
    bool relative = false;  // compare against tolerance * max(|lhs|, |rhs|, 1)
    bool pass = false;
    std::optional<std::size_t> n_samples;
    std::string notes;
};

/// Builds a report and sets `pass` from the comparison rule.
VerificationReport make_report(std::string id, double lhs, double rhs, double tolerance, bool relative = false,
                               std::string notes = {});

struct SuiteOptions {
    std::size_t n_samples = 1'000'000;
    std::size_t chunks = 64;
    Backend backend = Backend::openmp;
};

/// Names accepted by run_suite.
const std::vector<std::string>& suite_names();

/// Runs every check of the named suite. An empty grid selects the suite's
/// default indices. Checks that throw are reported as failures with the
/// message in `notes`; the suite never stops early. Throws UnknownSuite.
std::vector<VerificationReport> run_suite(const std::string& suite_name, const std::vector<StableIndex>& idx_grid,
                                          std::uint64_t seed, const SuiteOptions& options = {});

std::string report_to_json(const std::vector<VerificationReport>& reports);
std::string report_to_csv(const std::vector<VerificationReport>& reports);

}  // namespace stablehit
