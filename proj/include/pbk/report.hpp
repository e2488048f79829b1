#pragma once

#include "pbk/model_catalog.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pbk {

struct RunConfig {
    std::vector<double> radii;          // default: 20-point geometric grid
    unsigned seed = 0;
    double kernel_tol = 1e-10;
    double curvature_tol = 1e-9;
    double norm_tol = 1e-10;
    std::int64_t max_terms = 1000000;
    int quad_subdivisions = 2000;
    std::optional<ProductModel> model;  // [model] json= inline override
    std::vector<std::string> checks;    // empty = run everything
};

/// Line-based key=value file with [grid], [tolerances], [budgets], [model],
/// [suite] sections. Unknown keys raise parameter_error. Missing file raises
/// parameter_error as well; callers map it to the config exit code.
RunConfig parse_config(const std::string& path);
RunConfig default_config();

enum class CheckStatus { pass, fail, expected_fail, inconclusive };

std::string to_string(CheckStatus s);

struct CheckResult {
    std::string id;
    std::string anchor;    // human-readable identity being tested, no commas
    double expected;
    double measured;
    double tolerance;
    CheckStatus status = CheckStatus::fail;
    double runtime_ms = 0.0;

    /// CSV folding: expected_fail counts as pass, inconclusive as fail.
    bool passed() const {
        return status == CheckStatus::pass || status == CheckStatus::expected_fail;
    }
};

struct VerificationReport {
    std::string suite;
    std::vector<CheckResult> checks;
    std::map<std::string, std::string> environment;
    bool overall_pass = false;
    bool any_inconclusive = false;
};

/// Runs the registered checks (all, or the subset named in config.checks)
/// concurrently and assembles results in registration order.
VerificationReport run_verification_suite(const RunConfig& config);

std::string export_json(const VerificationReport& report);

/// Header "check_id,anchor,expected,measured,tolerance,pass,runtime_ms";
/// floats as %.17g. Byte-identical across runs except the runtime column.
std::string export_csv(const VerificationReport& report);

} // namespace pbk
