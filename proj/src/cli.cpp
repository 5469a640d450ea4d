#include "ppmc/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "ppmc/geometry.hpp"
#include "ppmc/oracle.hpp"
#include "ppmc/report.hpp"
#include "ppmc/selftest.hpp"

namespace ppmc {

namespace {

constexpr unsigned kExactCeiling = 12;
constexpr unsigned kNumericCeiling = 6;
constexpr unsigned kNumericMaxDim = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Mode { exact, numeric, both };
enum class Format { json, csv, text };

struct RunConfig {
    std::string command;
    unsigned n = 1;
    std::string kRange = "1..6";
    std::string terms;
    Mode mode = Mode::exact;
    std::uint64_t seed = 20241018;
    std::string outputPath;
    Format format = Format::json;
    std::vector<unsigned> dims{1, 2};
    bool injectFault = false;
};

std::string formatExtension(Format f) {
    switch (f) {
        case Format::json: return "json";
        case Format::csv: return "csv";
        case Format::text: return "txt";
    }
    return "out";
}

std::string modeName(Mode m) {
    switch (m) {
        case Mode::exact: return "exact";
        case Mode::numeric: return "numeric";
        case Mode::both: return "both";
    }
    return "";
}

bool usesNumeric(Mode m) { return m != Mode::exact; }

void checkDims(const RunConfig& cfg, unsigned n, unsigned kMax) {
    if (n < 1) throw UsageError("--n must be at least 1");
    if (kMax > kExactCeiling) throw UsageError("k above the exact ceiling of " + std::to_string(kExactCeiling));
    if (usesNumeric(cfg.mode) && (kMax > kNumericCeiling || n > kNumericMaxDim)) {
        throw UsageError("numeric mode supports k <= " + std::to_string(kNumericCeiling) + " and n <= " +
                         std::to_string(kNumericMaxDim));
    }
}

std::pair<unsigned, unsigned> checkedRange(const RunConfig& cfg) {
    std::pair<unsigned, unsigned> range;
    try {
        range = parseRange(cfg.kRange);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (range.first < 1) throw UsageError("k must be at least 1 (k = 0 is not an embedding)");
    if (range.first > range.second) throw UsageError("empty k range " + cfg.kRange);
    checkDims(cfg, cfg.n, range.second);
    return range;
}

OracleSection oracleFor(const PpmcReport& report, std::uint64_t seed) {
    OracleConfig oc;
    oc.seed = seed;
    OracleSection section{runOracleSuite(report.spec, oc), Verdict::ppmc};
    for (const auto& c : section.checks) {
        const bool isResidual = c.name.ends_with("nabla_residual_ratio") || c.name == "concatenated_residual";
        if (isResidual && c.value >= c.tolerance) section.verdict = Verdict::not_ppmc;
    }
    return section;
}

bool oracleAgrees(const OracleSection& s, Verdict expected) {
    return s.verdict == expected && std::all_of(s.checks.begin(), s.checks.end(), [](const auto& c) { return c.pass; });
}

struct Outcome {
    std::string body;
    bool agreement;
};

Outcome renderReports(const RunConfig& cfg, const std::vector<PpmcReport>& reports,
                      const std::vector<OracleSection>& oracles, const std::string& command) {
    bool agreement = true;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const Verdict expected = predictedVerdict(reports[i].spec);
        if (reports[i].verdict != expected) agreement = false;
        if (!oracles.empty() && !oracleAgrees(oracles[i], expected)) agreement = false;
    }
    std::ostringstream body;
    switch (cfg.format) {
        case Format::json: {
            nlohmann::json list = nlohmann::json::array();
            for (std::size_t i = 0; i < reports.size(); ++i) {
                list.push_back(toJson(reports[i], oracles.empty() ? nullptr : &oracles[i], cfg.mode != Mode::numeric));
            }
            nlohmann::json doc = {{"command", command},
                                  {"version", kToolVersion},
                                  {"innerProduct", kInnerProductLabel},
                                  {"mode", modeName(cfg.mode)},
                                  {"seed", cfg.seed},
                                  {"reports", list},
                                  {"theorem_agreement", agreement}};
            body << doc.dump(2) << '\n';
            break;
        }
        case Format::csv:
            body << kTableHeader << '\n';
            for (const auto& r : reports) {
                for (const auto& t : r.terms) body << tableRow(t) << '\n';
            }
            break;
        case Format::text:
            body << textTable(reports);
            for (std::size_t i = 0; i < oracles.size(); ++i) {
                for (const auto& c : oracles[i].checks) {
                    body << "  oracle " << (c.pass ? "PASS " : "FAIL ") << c.name << " value=" << c.value
                         << " tol=" << c.tolerance << '\n';
                }
            }
            body << "theorem agreement: " << (agreement ? "yes" : "NO") << '\n';
            break;
    }
    return {body.str(), agreement};
}

std::vector<OracleSection> oraclesFor(const RunConfig& cfg, const std::vector<PpmcReport>& reports) {
    std::vector<OracleSection> out;
    if (!usesNumeric(cfg.mode)) return out;
    std::vector<std::future<OracleSection>> jobs;
    for (const auto& r : reports) jobs.push_back(std::async(std::launch::async, oracleFor, std::cref(r), cfg.seed));
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

Outcome runVerify(const RunConfig& cfg) {
    const auto [kMin, kMax] = checkedRange(cfg);
    std::vector<std::future<PpmcReport>> jobs;
    for (unsigned k = kMin; k <= kMax; ++k) {
        jobs.push_back(std::async(std::launch::async, [n = cfg.n, k] {
            return ppmcVerdict(EmbeddingSpec(n, {{k, mpq_class(1)}}));
        }));
    }
    std::vector<PpmcReport> reports;
    for (auto& j : jobs) reports.push_back(j.get());
    return renderReports(cfg, reports, oraclesFor(cfg, reports), "verify");
}

Outcome runSum(const RunConfig& cfg) {
    std::vector<std::pair<unsigned, mpq_class>> terms;
    try {
        terms = parseTerms(cfg.terms);
        unsigned kMax = 0;
        for (const auto& t : terms) kMax = std::max(kMax, t.first);
        checkDims(cfg, cfg.n, kMax);
        const EmbeddingSpec spec(cfg.n, terms);
        std::vector<PpmcReport> reports{ppmcVerdict(spec)};
        return renderReports(cfg, reports, oraclesFor(cfg, reports), "sum");
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

Outcome runTable(const RunConfig& cfg) {
    const auto [kMin, kMax] = checkedRange(cfg);
    std::vector<PpmcReport> reports;
    for (unsigned k = kMin; k <= kMax; ++k) reports.push_back(ppmcVerdict(EmbeddingSpec(cfg.n, {{k, mpq_class(1)}})));
    RunConfig tableCfg = cfg;
    tableCfg.mode = Mode::exact;
    return renderReports(tableCfg, reports, {}, "table");
}

Outcome runSelftestCommand(const RunConfig& cfg) {
    const auto [kMin, kMax] = checkedRange(cfg);
    SelftestConfig sc;
    sc.dims = cfg.dims;
    sc.kMin = kMin;
    sc.kMax = kMax;
    sc.seed = cfg.seed;
    sc.injectFault = cfg.injectFault;
    for (unsigned n : sc.dims) {
        if (n < 1 || n > kNumericMaxDim) throw UsageError("selftest dimensions must lie in 1..3");
    }
    const SelftestSummary summary = runSelftest(sc);
    std::ostringstream body;
    if (cfg.format == Format::json) {
        body << toJson(summary, sc).dump(2) << '\n';
    } else {
        for (const auto& c : summary.checks) {
            body << (c.pass ? "PASS " : "FAIL ") << c.module << ": " << c.invariant;
            if (!c.pass) body << "  [" << c.witness << "]";
            body << '\n';
        }
        body << summary.checks.size() - summary.failures() << "/" << summary.checks.size() << " checks passed\n";
    }
    return {body.str(), summary.allPassed()};
}

}  // namespace

std::pair<unsigned, unsigned> parseRange(const std::string& text) {
    auto parseUnsigned = [&](const std::string& s) {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
            throw std::invalid_argument("malformed k range '" + text + "'");
        }
        return static_cast<unsigned>(std::stoul(s));
    };
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const unsigned k = parseUnsigned(text);
        return {k, k};
    }
    return {parseUnsigned(text.substr(0, dots)), parseUnsigned(text.substr(dots + 2))};
}

int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Equivariant embeddings of CP^n: second fundamental forms and the ppmc verdict"};
    app.require_subcommand(1);
    RunConfig cfg;

    const std::map<std::string, Mode> modes{{"exact", Mode::exact}, {"numeric", Mode::numeric}, {"both", Mode::both}};
    const std::map<std::string, Format> formats{{"json", Format::json}, {"csv", Format::csv}, {"text", Format::text}};

    auto common = [&](CLI::App* sub, bool withMode) {
        sub->add_option("--seed", cfg.seed, "seed for random frames and unitaries");
        sub->add_option("-o,--output", cfg.outputPath, "output file (default: stdout or $PPMC_OUTPUT_DIR)");
        sub->add_option("--format", cfg.format, "json, csv or text")
            ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
        if (withMode) {
            sub->add_option("--mode", cfg.mode, "exact, numeric or both")
                ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
        }
    };

    auto* verify = app.add_subcommand("verify", "theorem verdict for each k in a range");
    verify->add_option("--n", cfg.n, "complex dimension of CP^n")->required();
    verify->add_option("--k", cfg.kRange, "k or a..b")->required();
    common(verify, true);

    auto* table = app.add_subcommand("table", "coefficient table of alpha11 and nabla alpha11");
    table->add_option("--n", cfg.n, "complex dimension of CP^n");
    table->add_option("--k", cfg.kRange, "k or a..b");
    common(table, false);

    auto* sum = app.add_subcommand("sum", "verdict for a direct sum of embeddings");
    sum->add_option("--n", cfg.n, "complex dimension of CP^n")->required();
    sum->add_option("--terms", cfg.terms, "k:a_k,k:a_k")->required();
    common(sum, true);

    auto* selftest = app.add_subcommand("selftest", "run every invariant suite");
    selftest->add_option("--dims", cfg.dims, "values of n to test")->delimiter(',');
    selftest->add_option("--k", cfg.kRange, "k range")->default_str("1..4");
    selftest->add_flag("--inject-fault", cfg.injectFault, "flip the sign of one delta rule");
    common(selftest, false);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitAgreement;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitAgreement;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n' << app.help();
        return kExitUsage;
    }

    Outcome outcome;
    try {
        if (verify->parsed()) {
            cfg.command = "verify";
            outcome = runVerify(cfg);
        } else if (table->parsed()) {
            cfg.command = "table";
            if (table->count("--format") == 0) cfg.format = Format::csv;
            outcome = runTable(cfg);
        } else if (sum->parsed()) {
            cfg.command = "sum";
            outcome = runSum(cfg);
        } else {
            cfg.command = "selftest";
            if (selftest->count("--k") == 0) cfg.kRange = "1..4";
            outcome = runSelftestCommand(cfg);
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    std::string path = cfg.outputPath;
    if (path.empty()) {
        if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
            path = (std::filesystem::path(dir) / (cfg.command + "." + formatExtension(cfg.format))).string();
        }
    }
    if (path.empty()) {
        out << outcome.body;
    } else {
        std::ofstream file(path, std::ios::binary);
        file << outcome.body;
        file.close();
        if (!file) {
            err << "error: could not write report to " << path << '\n';
            return kExitWriteFailure;
        }
        err << "wrote " << path << '\n';
    }
    return outcome.agreement ? kExitAgreement : kExitDisagreement;
}

}  // namespace ppmc
