#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace kawahara {

/// One measured quantity of a criterion: value <= limit (or >= limit when
/// at_least is set).
struct Check {
    std::string name;
    double value = 0.0;
    double limit = 0.0;
    bool at_least = false;
    bool pass = false;
};

struct CriterionResult {
    int id = 0;
    std::string group;
    std::string title;
    bool pass = false;
    std::vector<Check> checks;
    /// diagnostics that carry no pass/fail meaning
    std::vector<Check> diagnostics;
    std::string error;
};

struct VerifyOptions {
    std::uint64_t seed = 1;
    /// group names ("kernel", "probe", ...) or criterion numbers; empty = all
    std::vector<std::string> only;
    /// scale the tabulated kernel values to exercise the failure path
    bool corrupt_kernel_table = false;
};

struct VerifyReport {
    std::uint64_t seed = 0;
    std::vector<CriterionResult> criteria;
    bool pass() const;
};

/// Groups in criterion order, each with the criterion numbers it covers.
const std::vector<std::pair<std::string, std::vector<int>>>& verify_groups();

/// Throws ConfigurationError for an unknown --only entry.
std::vector<int> select_criteria(const std::vector<std::string>& only);

VerifyReport run_verify(const VerifyOptions& opt,
                        const std::function<void(const CriterionResult&)>& on_done = {});

/// Stable JSON text (no timings), schema_version 1.
std::string report_json(const VerifyReport& rep);

}  // namespace kawahara
