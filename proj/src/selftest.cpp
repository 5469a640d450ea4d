#include "ppmc/selftest.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "ppmc/bipoly.hpp"
#include "ppmc/geometry.hpp"
#include "ppmc/reduced_gram.hpp"

namespace ppmc {

bool SelftestSummary::allPassed() const { return failures() == 0; }

std::size_t SelftestSummary::failures() const {
    std::size_t f = 0;
    for (const auto& c : checks) f += c.pass ? 0 : 1;
    return f;
}

namespace {

class Recorder {
public:
    explicit Recorder(SelftestSummary& s) : summary_(s) {}

    void check(const std::string& module, const std::string& invariant, bool pass, const std::string& witness) {
        summary_.checks.push_back({module, invariant, pass, pass ? std::string() : witness});
    }

private:
    SelftestSummary& summary_;
};

ReducedPoly randomGrid(unsigned k, std::mt19937_64& rng, bool real) {
    std::uniform_int_distribution<long> dist(-3, 3);
    ReducedPoly p(k);
    for (unsigned a = 0; a <= k; ++a) {
        for (unsigned b = 0; b <= k; ++b) {
            if (real && b < a) continue;
            GaussianRational c(mpq_class(dist(rng)), mpq_class(real && a == b ? 0 : dist(rng)));
            p(a, b) = c;
            if (real) p(b, a) = c.conj();
        }
    }
    return p;
}

std::string gridWitness(const ReducedPoly& p) {
    std::ostringstream out;
    out << "k=" << p.k() << " [";
    for (unsigned a = 0; a <= p.k(); ++a) {
        for (unsigned b = 0; b <= p.k(); ++b) {
            if (!p(a, b).isZero()) out << " (" << a << "," << b << "):" << p(a, b);
        }
    }
    out << " ]";
    return out.str();
}

std::string kTag(unsigned k) { return " k=" + std::to_string(k); }

ReducedPoly closedAlpha(unsigned k) {
    const long kk = k;
    ReducedPoly p(k);
    if (k >= 2) {
        p(2, 0) = kk * (kk - 1);
        p(0, 2) = kk * (kk - 1);
    }
    p(1, 1) = 2 * kk * kk;
    p(0, 0) = -2 * kk;
    return p;
}

ReducedPoly closedAlpha11(unsigned k) {
    const long kk = k;
    ReducedPoly p(k);
    p(1, 1) = 2 * kk * kk;
    p(0, 0) = -2 * kk;
    return p;
}

ReducedPoly closedNablaLiteral(unsigned k) {
    const long kk = k;
    ReducedPoly p(k);
    if (k >= 2) {
        p(2, 1) = 2 * kk * kk * (kk - 1);
        p(1, 2) = 2 * kk * kk * (kk - 1);
    }
    p(1, 0) = -4 * kk * (kk - 1);
    p(0, 1) = -4 * kk * (kk - 1);
    return p;
}

bool inRealEigenspace(const ReducedPoly& p, bool even) {
    const ReducedPoly image = applyIsotropy(p, IsotropyOp::symmetry_s);
    return p.isReal() && (even ? image == p : image == -p);
}

void reducedSuite(const SelftestConfig& cfg, const DeltaRule& rule, Recorder& rec) {
    const std::string mod = "reduced-symbolic";
    std::mt19937_64 rng(deriveSeed(cfg.seed, 1));
    const EigenLabel sPlus{IsotropyOp::symmetry_s, Eigenvalue::plus_one};
    const EigenLabel sMinus{IsotropyOp::symmetry_s, Eigenvalue::minus_one};
    for (unsigned k = 0; k <= cfg.kMax; ++k) {
        const ReducedPoly p = randomGrid(k, rng, false);
        const ReducedPoly q = randomGrid(k, rng, false);
        const ReducedPoly r = randomGrid(k, rng, true);
        const std::string tag = kTag(k);

        const ReducedPoly ss = applyIsotropy(applyIsotropy(p, IsotropyOp::symmetry_s), IsotropyOp::symmetry_s);
        rec.check(mod, "s is an involution" + tag, ss == p, gridWitness(ss));
        const ReducedPoly jj = applyIsotropy(applyIsotropy(p, IsotropyOp::root_j), IsotropyOp::root_j);
        rec.check(mod, "j squared equals s" + tag, jj == applyIsotropy(p, IsotropyOp::symmetry_s), gridWitness(jj));

        const ReducedPoly sSum = projectEigen(p, sPlus) + projectEigen(p, sMinus);
        rec.check(mod, "s projections resolve identity" + tag, sSum == p, gridWitness(sSum));
        ReducedPoly jSum(k);
        bool idempotent = true, annihilating = true;
        const Eigenvalue all[] = {Eigenvalue::plus_one, Eigenvalue::minus_one, Eigenvalue::plus_i, Eigenvalue::minus_i};
        for (Eigenvalue e : all) {
            const ReducedPoly pe = projectEigen(p, {IsotropyOp::root_j, e});
            jSum += pe;
            idempotent = idempotent && projectEigen(pe, {IsotropyOp::root_j, e}) == pe;
            for (Eigenvalue f : all) {
                if (f != e) annihilating = annihilating && projectEigen(pe, {IsotropyOp::root_j, f}).isZero();
            }
        }
        rec.check(mod, "j projections resolve identity" + tag, jSum == p, gridWitness(jSum));
        rec.check(mod, "j projections idempotent" + tag, idempotent, gridWitness(p));
        rec.check(mod, "j projections mutually annihilating" + tag, annihilating, gridWitness(p));

        const ReducedPoly lhs = deltaDerive(p * q, rule);
        const ReducedPoly rhs = deltaDerive(p, rule) * q + p * deltaDerive(q, rule);
        rec.check(mod, "derivation law" + tag, lhs == rhs, gridWitness(lhs - rhs));

        const ReducedPoly even = projectEigen(p, sPlus);
        const ReducedPoly odd = projectEigen(p, sMinus);
        const bool alternates = projectEigen(deltaDerive(even, rule), sPlus).isZero() &&
                                projectEigen(deltaDerive(odd, rule), sMinus).isZero();
        rec.check(mod, "delta alternates s-parity" + tag, alternates, gridWitness(p));

        const ReducedPoly dr = deltaDerive(r, rule);
        rec.check(mod, "delta preserves reality" + tag, dr.isReal(), gridWitness(dr));
        bool isoReal = applyIsotropy(r, IsotropyOp::symmetry_s).isReal() &&
                       projectEigen(r, sPlus).isReal() && projectEigen(r, sMinus).isReal() &&
                       projectEigen(r, {IsotropyOp::root_j, Eigenvalue::plus_one}).isReal() &&
                       projectEigen(r, {IsotropyOp::root_j, Eigenvalue::minus_one}).isReal();
        rec.check(mod, "isotropy and real eigenprojections preserve reality" + tag, isoReal, gridWitness(r));

        if (k == 0) continue;
        for (unsigned n : cfg.dims) {
            const ReducedGram gram(n, k);
            const ReducedPoly normal = projectNormalReduced(r, n);
            const bool idem = projectNormalReduced(normal, n) == normal;
            const bool orth = gram.inner(ReducedPoly::monomial(k, 1, 0), normal).isZero() &&
                              gram.inner(ReducedPoly::monomial(k, 0, 1), normal).isZero();
            rec.check(mod, "normal projection idempotent and orthogonal n=" + std::to_string(n) + tag, idem && orth,
                      gridWitness(normal));
        }
    }
}

void geometrySuite(const SelftestConfig& cfg, const DeltaRule& rule, Recorder& rec) {
    const std::string mod = "geometry-engine";
    const EigenLabel sMinus{IsotropyOp::symmetry_s, Eigenvalue::minus_one};
    for (unsigned k = cfg.kMin; k <= cfg.kMax; ++k) {
        const std::string tag = kTag(k);
        const ReducedPoly phi = phiReduced(k);
        const ReducedPoly vhat = deltaDerive(phi, rule);
        const ReducedPoly alpha = deltaDerive(vhat, rule);
        const ReducedPoly alpha11 = projectEigen(alpha, {IsotropyOp::root_j, Eigenvalue::plus_one});
        const ReducedPoly dxi = deltaDerive(alpha11, rule);

        rec.check(mod, "second fundamental form closed form" + tag, alpha == closedAlpha(k), gridWitness(alpha));
        rec.check(mod, "alpha11 closed form" + tag, alpha11 == closedAlpha11(k), gridWitness(alpha11));
        rec.check(mod, "alpha is s-even" + tag, inRealEigenspace(alpha, true), gridWitness(alpha));
        rec.check(mod, "delta alpha11 is s-odd" + tag, inRealEigenspace(dxi, false),
                  gridWitness(dxi));
        rec.check(mod, "tangent vector is s-odd" + tag, inRealEigenspace(vhat, false), gridWitness(vhat));

        const ReducedPoly literal = projectEigen(dxi, sMinus) - weingartenTerm(k);
        rec.check(mod, "nabla alpha11 literal closed form" + tag, literal == closedNablaLiteral(k), gridWitness(literal));
        rec.check(mod, "mean curvature identity" + tag, meanCurvatureAlpha11(k) == alpha11,
                  gridWitness(meanCurvatureAlpha11(k)));

        for (unsigned n : cfg.dims) {
            const ReducedPoly perp = projectNormalReduced(projectEigen(dxi, sMinus), n);
            rec.check(mod, "theorem: residual zero iff k=1 n=" + std::to_string(n) + tag, perp.isZero() == (k == 1),
                      gridWitness(perp));
            const ReducedPoly diff = perp - literal;
            const bool tangential = diff == projectTangentReduced(diff, n);
            rec.check(mod, "literal and normal nabla differ tangentially n=" + std::to_string(n) + tag, tangential,
                      gridWitness(diff));
            if (k <= 3) {
                const ExactFrame frame = ExactFrame::standard(n);
                const GaussianRational pairing =
                    innerL2(embedReduced(alpha, frame), embedReduced(projectEigen(dxi, sMinus), frame));
                rec.check(mod, "alpha perpendicular to nabla alpha11 n=" + std::to_string(n) + tag, pairing.isZero(),
                          pairing.toString());
            }
        }
    }
}

void bipolySuite(const SelftestConfig& cfg, Recorder& rec) {
    const std::string mod = "bipoly-full";
    for (unsigned n : cfg.dims) {
        for (unsigned k = std::max(1u, cfg.kMin); k <= std::min(cfg.kMax, 2u); ++k) {
            const std::size_t m = monomialCount(n, k);
            const auto result = orbitRank(n, k, static_cast<unsigned>(3 * m * m), deriveSeed(cfg.seed, 100 + 10 * n + k));
            std::ostringstream w;
            w << "rank=" << result.rank << " expected=" << m * m << " gap=" << result.gap;
            rec.check(mod, "orbit of f_k spans V_k n=" + std::to_string(n) + kTag(k),
                      result.rank == m * m && result.gap >= 1e6, w.str());
        }
        for (unsigned k = cfg.kMin; k <= std::min(cfg.kMax, 3u); ++k) {
            const Eigen::MatrixXcd g = haarUnitary(n + 1, deriveSeed(cfg.seed, 200 + n));
            const Eigen::MatrixXcd h = haarUnitary(n + 1, deriveSeed(cfg.seed, 300 + n));
            const NumericFrame f = randomFrame(n, deriveSeed(cfg.seed, 400 + n));
            const NumericBiPoly p = toNumeric(embedReduced(secondFundamental(k), ExactFrame::standard(n)));
            const NumericBiPoly q = expandPhi(f.w, k);
            const double lawDev = normL2(groupAct(g * h, p) - groupAct(g, groupAct(h, p)));
            rec.check(mod, "representation law n=" + std::to_string(n) + kTag(k), lawDev < 1e-10,
                      "deviation=" + std::to_string(lawDev));
            const double invDev = std::abs(innerL2(groupAct(g, p), groupAct(g, q)) - innerL2(p, q));
            rec.check(mod, "inner product invariance n=" + std::to_string(n) + kTag(k), invDev < 1e-10,
                      "deviation=" + std::to_string(invDev));
            const double realDev = groupAct(g, p).isReal(1e-12) ? 0.0 : 1.0;
            rec.check(mod, "group action preserves reality n=" + std::to_string(n) + kTag(k), realDev == 0.0, "not real");
            const NumericBiPoly phiX = expandPhi(f.u, k);
            Vector<Complex> z(n + 1);
            for (unsigned i = 0; i <= n; ++i) z[i] = Complex(0.3 * i - 0.2, 0.1 + 0.05 * i);
            const double evalDev =
                std::abs(phiX.evaluate(z) - std::pow(std::abs(dot(f.u, z)), 2.0 * k));
            rec.check(mod, "expandPhi evaluates to |v*z|^2k n=" + std::to_string(n) + kTag(k), evalDev < 1e-12,
                      "deviation=" + std::to_string(evalDev));
        }
    }
}

void oracleSuite(const SelftestConfig& cfg, Recorder& rec) {
    const std::string mod = "numeric-oracle";
    OracleConfig oc = cfg.oracle;
    oc.seed = cfg.seed;
    for (unsigned n : cfg.dims) {
        for (unsigned k = cfg.kMin; k <= std::min(cfg.kMax, cfg.numericCeiling); ++k) {
            const EmbeddingSpec spec(n, {{k, mpq_class(1)}});
            for (const auto& c : runOracleSuite(spec, oc)) {
                std::ostringstream w;
                w << "value=" << c.value << " tolerance=" << c.tolerance;
                rec.check(mod, c.name + " n=" + std::to_string(n) + (c.name.rfind("k=", 0) == 0 ? "" : kTag(k)), c.pass,
                          w.str());
            }
        }
    }
    if (cfg.kMin <= 1 && cfg.kMax >= 2) {
        const EmbeddingSpec sum(1, {{1, mpq_class(1)}, {2, mpq_class(1)}});
        for (const auto& c : runOracleSuite(sum, oc)) {
            std::ostringstream w;
            w << "value=" << c.value << " tolerance=" << c.tolerance;
            rec.check(mod, "direct sum [(1,1),(2,1)] " + c.name, c.pass, w.str());
        }
    }
}

}  // namespace

SelftestSummary runSelftest(const SelftestConfig& config) {
    SelftestSummary summary;
    Recorder rec(summary);
    const DeltaRule rule = config.injectFault ? DeltaRule::faulty() : DeltaRule::greatCircle();
    reducedSuite(config, rule, rec);
    geometrySuite(config, rule, rec);
    bipolySuite(config, rec);
    oracleSuite(config, rec);
    return summary;
}

nlohmann::json toJson(const SelftestSummary& summary, const SelftestConfig& config) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : summary.checks) {
        nlohmann::json j = {{"module", c.module}, {"invariant", c.invariant}, {"pass", c.pass}};
        if (!c.pass) j["witness"] = c.witness;
        checks.push_back(std::move(j));
    }
    return {{"command", "selftest"},
            {"version", kToolVersion},
            {"innerProduct", kInnerProductLabel},
            {"seed", config.seed},
            {"dims", config.dims},
            {"kMin", config.kMin},
            {"kMax", config.kMax},
            {"injectFault", config.injectFault},
            {"checks", checks},
            {"total", summary.checks.size()},
            {"failures", summary.failures()}};
}

}  // namespace ppmc
