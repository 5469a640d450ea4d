#include "ppmc/geometry.hpp"

#include <cmath>
#include <future>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ppmc/reduced_gram.hpp"

namespace ppmc {

namespace {

void requirePositive(unsigned k, const char* what) {
    if (k == 0) throw std::invalid_argument(std::string(what) + ": k = 0 is constant, not an embedding");
}

}  // namespace

ReducedPoly phiReduced(unsigned k) {
    requirePositive(k, "phiReduced");
    return xxbarPower(k);
}

ReducedPoly firstFundamental(unsigned k) { return deltaDerive(phiReduced(k)); }

ReducedPoly secondFundamental(unsigned k) { return deltaDerive(firstFundamental(k)); }

SffSplit splitSff(unsigned k) {
    ReducedPoly alpha = secondFundamental(k);
    ReducedPoly alpha11 = projectEigen(alpha, {IsotropyOp::root_j, Eigenvalue::plus_one});
    ReducedPoly rest = projectEigen(alpha, {IsotropyOp::root_j, Eigenvalue::minus_one});
    return {std::move(alpha), std::move(alpha11), std::move(rest)};
}

ReducedPoly meanCurvatureAlpha11(unsigned k) {
    const ReducedPoly phi = phiReduced(k);
    const DeltaRule rotated = DeltaRule::greatCircle(GaussianRational::i());
    const ReducedPoly alphaJ = deltaDerive(deltaDerive(phi, rotated), rotated);
    return (secondFundamental(k) + alphaJ) * GaussianRational(mpq_class(1, 2));
}

ReducedPoly deltaXi(unsigned k) { return deltaDerive(splitSff(k).alpha11); }

ReducedPoly weingartenTerm(unsigned k) {
    requirePositive(k, "weingartenTerm");
    // (x x̄)^{k-1} · δ(-x x̄ + v v̄), scaled by 2k
    ReducedPoly inner = ReducedPoly::monomial(1, 1, 1) - ReducedPoly::monomial(1, 0, 0);
    return xxbarPower(k - 1) * deltaDerive(inner) * GaussianRational(static_cast<long>(2 * k));
}

ReducedPoly nablaAlpha11Paper(unsigned k) {
    const ReducedPoly odd = projectEigen(deltaXi(k), {IsotropyOp::symmetry_s, Eigenvalue::minus_one});
    return odd - weingartenTerm(k);
}

ReducedPoly nablaAlpha11Perp(unsigned k, unsigned n) {
    if (n < 1) throw std::invalid_argument("nablaAlpha11Perp: n must be >= 1");
    const ReducedPoly odd = projectEigen(deltaXi(k), {IsotropyOp::symmetry_s, Eigenvalue::minus_one});
    return projectNormalReduced(odd, n);
}

EmbeddingSpec::EmbeddingSpec(unsigned n_, std::vector<std::pair<unsigned, mpq_class>> terms_)
    : n(n_), terms(std::move(terms_)) {
    if (n < 1) throw std::invalid_argument("embedding spec: n must be >= 1");
    if (terms.empty()) throw std::invalid_argument("embedding spec: term list is empty");
    std::set<unsigned> seen;
    for (auto& [k, a] : terms) {
        a.canonicalize();
        if (k == 0) throw std::invalid_argument("embedding spec: k must be >= 1");
        if (sgn(a) == 0) throw std::invalid_argument("embedding spec: coefficients must be nonzero");
        if (!seen.insert(k).second) throw std::invalid_argument("embedding spec: repeated k");
    }
}

std::vector<std::pair<unsigned, mpq_class>> parseTerms(const std::string& text) {
    std::vector<std::pair<unsigned, mpq_class>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos || colon == 0) throw std::invalid_argument("term must be k:a, got '" + item + "'");
        const std::string kText = item.substr(0, colon);
        if (kText.find_first_not_of("0123456789") != std::string::npos) {
            throw std::invalid_argument("term degree must be a non-negative integer, got '" + kText + "'");
        }
        out.emplace_back(static_cast<unsigned>(std::stoul(kText)), parseRational(item.substr(colon + 1)));
    }
    if (out.empty()) throw std::invalid_argument("no terms given");
    return out;
}

std::string toString(Verdict v) { return v == Verdict::ppmc ? "ppmc" : "not_ppmc"; }

TermReport analyzeTerm(unsigned n, unsigned k, const mpq_class& coefficient) {
    const GaussianRational a(coefficient);
    const SffSplit split = splitSff(k);
    TermReport t{k,
                 coefficient,
                 split.alpha * a,
                 split.alpha11 * a,
                 nablaAlpha11Paper(k) * a,
                 nablaAlpha11Perp(k, n) * a,
                 false,
                 0,
                 0.0};
    t.residualZero = t.nablaPerp.isZero();
    t.residualNormSquared = ReducedGram(n, k).normSquared(t.nablaPerp);
    t.residualNorm = std::sqrt(t.residualNormSquared.get_d());
    return t;
}

PpmcReport ppmcVerdict(const EmbeddingSpec& spec) {
    std::vector<std::future<TermReport>> jobs;
    jobs.reserve(spec.terms.size());
    for (const auto& [k, a] : spec.terms) {
        jobs.push_back(std::async(std::launch::async, analyzeTerm, spec.n, k, a));
    }
    PpmcReport report{spec, {}, Verdict::ppmc};
    for (auto& job : jobs) {
        report.terms.push_back(job.get());
        if (!report.terms.back().residualZero) report.verdict = Verdict::not_ppmc;
    }
    return report;
}

Verdict predictedVerdict(const EmbeddingSpec& spec) {
    for (const auto& term : spec.terms) {
        if (term.first != 1) return Verdict::not_ppmc;
    }
    return Verdict::ppmc;
}

}  // namespace ppmc
