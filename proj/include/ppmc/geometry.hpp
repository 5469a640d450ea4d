#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ppmc/gaussian_rational.hpp"
#include "ppmc/reduced_poly.hpp"

namespace ppmc {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kInnerProductLabel = "L2-sphere-normalized";

/// Φ_k(x) = (x x̄)^k.
ReducedPoly phiReduced(unsigned k);

/// v̂ = dΦ(v) = δ(x x̄)^k.
ReducedPoly firstFundamental(unsigned k);

/// α(v,v) = δv̂. It is s-even, hence already normal.
ReducedPoly secondFundamental(unsigned k);

struct SffSplit {
    ReducedPoly alpha;
    ReducedPoly alpha11;       // E_+(j) part
    ReducedPoly alpha20plus02; // E_-(j) part
};

SffSplit splitSff(unsigned k);

/// α^{(1,1)}(v,v) recomputed as ½(α(v,v) + α(Jv,Jv)), rerunning the δ
/// calculus along the great circle in direction iv.
ReducedPoly meanCurvatureAlpha11(unsigned k);

/// δξ for ξ = α^{(1,1)}(v,v).
ReducedPoly deltaXi(unsigned k);

/// Shape-operator term of δξ that the literal derivation removes as
/// tangential: 2k(x x̄)^{k-1} δ(-x x̄ + v v̄) = -4 v̂.
ReducedPoly weingartenTerm(unsigned k);

/// The literal N^- component: s-odd part of δξ with the tangential
/// Weingarten term -4v̂ removed.
ReducedPoly nablaAlpha11Paper(unsigned k);

/// ∇⊥_v α^{(1,1)}(v,v): L²-normal projection of the s-odd part of δξ.
ReducedPoly nablaAlpha11Perp(unsigned k, unsigned n);

/// Direct sum Σ a_k Φ_k on CP^n.
struct EmbeddingSpec {
    unsigned n;
    std::vector<std::pair<unsigned, mpq_class>> terms;

    EmbeddingSpec(unsigned n, std::vector<std::pair<unsigned, mpq_class>> terms);
};

/// Parses "k:a,k:a" with rational a (e.g. "1:3/2,2:-1").
std::vector<std::pair<unsigned, mpq_class>> parseTerms(const std::string& text);

struct TermReport {
    unsigned k;
    mpq_class coefficient;
    ReducedPoly alpha;
    ReducedPoly alpha11;
    ReducedPoly nablaLiteral;
    ReducedPoly nablaPerp;
    bool residualZero;
    mpq_class residualNormSquared;  // exact L² norm² of nablaPerp
    double residualNorm;
};

enum class Verdict { ppmc, not_ppmc };

std::string toString(Verdict v);

struct PpmcReport {
    EmbeddingSpec spec;
    std::vector<TermReport> terms;
    Verdict verdict;
    std::string innerProductLabel = kInnerProductLabel;
    std::string toolVersion = kToolVersion;
};

TermReport analyzeTerm(unsigned n, unsigned k, const mpq_class& coefficient);

/// Per-term grids (computed concurrently) and the combined verdict: the sum
/// is ppmc iff every component is.
PpmcReport ppmcVerdict(const EmbeddingSpec& spec);

/// Theorem prediction for a spec: ppmc iff every term has k = 1.
Verdict predictedVerdict(const EmbeddingSpec& spec);

}  // namespace ppmc
