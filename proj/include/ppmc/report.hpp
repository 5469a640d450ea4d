#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ppmc/geometry.hpp"
#include "ppmc/oracle.hpp"
#include "ppmc/reduced_poly.hpp"

namespace ppmc {

/// Rows a, columns b, each entry "num/den+num/den·i".
nlohmann::json gridToJson(const ReducedPoly& p);
ReducedPoly gridFromJson(const nlohmann::json& j);

struct OracleSection {
    std::vector<OracleCheck> checks;
    Verdict verdict;
};

/// Serialized PpmcReport. Grids are omitted when `includeGrids` is false.
nlohmann::json toJson(const PpmcReport& report, const OracleSection* oracle = nullptr, bool includeGrids = true);

inline constexpr const char* kTableHeader = "k,c11,c00,c20,nabla21,nabla10,residual_zero";

/// Integer when the denominator is 1, otherwise "p/q".
std::string compactRational(const mpq_class& q);

/// One CSV row of the coefficient table for a single-term report.
std::string tableRow(const TermReport& t);

/// Aligned plain-text rendering of a list of reports.
std::string textTable(const std::vector<PpmcReport>& reports);

}  // namespace ppmc
