#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ppmc/oracle.hpp"

namespace ppmc {

struct SelftestConfig {
    std::vector<unsigned> dims{1, 2};
    unsigned kMin = 1;
    unsigned kMax = 4;
    std::uint64_t seed = 20241018;
    /// Runs the exact-engine suites with DeltaRule::faulty().
    bool injectFault = false;
    /// Oracle cross-checks are limited to k <= this.
    unsigned numericCeiling = 4;
    OracleConfig oracle{};
};

struct SelftestCheck {
    std::string module;
    std::string invariant;
    bool pass;
    std::string witness;  // empty on success
};

struct SelftestSummary {
    std::vector<SelftestCheck> checks;
    bool allPassed() const;
    std::size_t failures() const;
};

SelftestSummary runSelftest(const SelftestConfig& config);

nlohmann::json toJson(const SelftestSummary& summary, const SelftestConfig& config);

}  // namespace ppmc
