#include "ppmc/report.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace ppmc {

nlohmann::json gridToJson(const ReducedPoly& p) {
    nlohmann::json rows = nlohmann::json::array();
    for (unsigned a = 0; a <= p.k(); ++a) {
        nlohmann::json row = nlohmann::json::array();
        for (unsigned b = 0; b <= p.k(); ++b) row.push_back(p(a, b).toString());
        rows.push_back(std::move(row));
    }
    return rows;
}

ReducedPoly gridFromJson(const nlohmann::json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("grid must be a non-empty nested array");
    const unsigned k = static_cast<unsigned>(j.size()) - 1;
    ReducedPoly p(k);
    for (unsigned a = 0; a <= k; ++a) {
        if (!j[a].is_array() || j[a].size() != k + 1) throw std::invalid_argument("grid must be square");
        for (unsigned b = 0; b <= k; ++b) p(a, b) = GaussianRational::parse(j[a][b].get<std::string>());
    }
    return p;
}

std::string compactRational(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return rationalString(q);
}

nlohmann::json toJson(const PpmcReport& report, const OracleSection* oracle, bool includeGrids) {
    nlohmann::json specTerms = nlohmann::json::array();
    for (const auto& [k, a] : report.spec.terms) specTerms.push_back({{"k", k}, {"a_k", rationalString(a)}});

    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : report.terms) {
        nlohmann::json term = {{"k", t.k},
                               {"a_k", rationalString(t.coefficient)},
                               {"residual_zero", t.residualZero},
                               {"residual_norm", t.residualNorm},
                               {"residual_norm_sq", rationalString(t.residualNormSquared)}};
        if (includeGrids) {
            term["alpha"] = gridToJson(t.alpha);
            term["alpha11"] = gridToJson(t.alpha11);
            term["nabla_paper"] = gridToJson(t.nablaLiteral);
            term["nabla_perp"] = gridToJson(t.nablaPerp);
        }
        terms.push_back(std::move(term));
    }

    nlohmann::json out = {{"spec", {{"n", report.spec.n}, {"terms", specTerms}}},
                          {"innerProduct", report.innerProductLabel},
                          {"terms", terms},
                          {"verdict", toString(report.verdict)},
                          {"version", report.toolVersion}};
    if (oracle != nullptr) {
        nlohmann::json checks = nlohmann::json::array();
        for (const auto& c : oracle->checks) checks.push_back(toJson(c));
        out["oracle"] = {{"checks", checks}, {"verdict", toString(oracle->verdict)}};
    }
    return out;
}

namespace {

mpq_class entryOrZero(const ReducedPoly& p, unsigned a, unsigned b) {
    if (a > p.k() || b > p.k()) return 0;
    return p(a, b).re();
}

}  // namespace

std::string tableRow(const TermReport& t) {
    std::ostringstream row;
    row << t.k << ',' << compactRational(entryOrZero(t.alpha11, 1, 1)) << ','
        << compactRational(entryOrZero(t.alpha11, 0, 0)) << ',' << compactRational(entryOrZero(t.alpha, 2, 0)) << ','
        << compactRational(entryOrZero(t.nablaLiteral, 2, 1)) << ',' << compactRational(entryOrZero(t.nablaLiteral, 1, 0))
        << ',' << (t.residualZero ? "true" : "false");
    return row.str();
}

std::string textTable(const std::vector<PpmcReport>& reports) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof line, "%-3s %-6s %-8s %-8s %-8s %-8s %-10s %-10s %-14s %s\n", "n", "k", "a_k", "c11",
                  "c00", "c20", "nabla21", "nabla10", "residual_norm", "verdict");
    out << line;
    for (const auto& r : reports) {
        for (const auto& t : r.terms) {
            std::snprintf(line, sizeof line, "%-3u %-6u %-8s %-8s %-8s %-8s %-10s %-10s %-14.6g %s\n", r.spec.n, t.k,
                          compactRational(t.coefficient).c_str(), compactRational(entryOrZero(t.alpha11, 1, 1)).c_str(),
                          compactRational(entryOrZero(t.alpha11, 0, 0)).c_str(),
                          compactRational(entryOrZero(t.alpha, 2, 0)).c_str(),
                          compactRational(entryOrZero(t.nablaLiteral, 2, 1)).c_str(),
                          compactRational(entryOrZero(t.nablaLiteral, 1, 0)).c_str(), t.residualNorm,
                          toString(r.verdict).c_str());
            out << line;
        }
    }
    return out.str();
}

}  // namespace ppmc
