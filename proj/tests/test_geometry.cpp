#include "doctest.h"
#include "ppmc/bipoly.hpp"
#include "ppmc/geometry.hpp"
#include "ppmc/reduced_gram.hpp"
#include "support.hpp"

using namespace ppmc;
using ppmc::test::grid;
using ppmc::test::handDelta;
using ppmc::test::handNablaLiteral;
using ppmc::test::oddPart;

namespace {

const EigenLabel kOdd{IsotropyOp::symmetry_s, Eigenvalue::minus_one};

long kk(unsigned k) { return static_cast<long>(k); }

}  // namespace

TEST_CASE("first and second fundamental forms") {
    CHECK(phiReduced(2) == grid(2, {{0, 0, 1}}));
    CHECK(firstFundamental(2) == grid(2, {{1, 0, 2}, {0, 1, 2}}));
    CHECK(secondFundamental(2) == grid(2, {{2, 0, 2}, {0, 2, 2}, {1, 1, 8}, {0, 0, -4}}));
    CHECK(secondFundamental(1) == grid(1, {{1, 1, 2}, {0, 0, -2}}));
    CHECK_THROWS_AS(phiReduced(0), std::invalid_argument);

    for (unsigned k = 1; k <= 8; ++k) {
        const long K = kk(k);
        CHECK(secondFundamental(k) == grid(k, {{2, 0, K * (K - 1)}, {0, 2, K * (K - 1)}, {1, 1, 2 * K * K}, {0, 0, -2 * K}}));
        CHECK(secondFundamental(k) == handDelta(handDelta(phiReduced(k))));
    }
}

TEST_CASE("type split of the second fundamental form") {
    for (unsigned k = 1; k <= 8; ++k) {
        const long K = kk(k);
        const SffSplit s = splitSff(k);
        CHECK(s.alpha11 == grid(k, {{1, 1, 2 * K * K}, {0, 0, -2 * K}}));
        CHECK(s.alpha20plus02 == grid(k, {{2, 0, K * (K - 1)}, {0, 2, K * (K - 1)}}));
        CHECK(s.alpha11 + s.alpha20plus02 == s.alpha);
        CHECK(s.alpha11.isReal());
        CHECK(s.alpha20plus02.isReal());
        CHECK(meanCurvatureAlpha11(k) == s.alpha11);
    }
    CHECK(splitSff(1).alpha11 == splitSff(1).alpha);
    CHECK(splitSff(1).alpha20plus02.isZero());
}

TEST_CASE("derivative of the pluri-mean curvature") {
    CHECK(deltaXi(1) == grid(1, {{1, 0, -4}, {0, 1, -4}}));
    for (unsigned k = 1; k <= 8; ++k) {
        const long K = kk(k);
        CHECK(weingartenTerm(k) == firstFundamental(k) * GaussianRational(-4));

        const ReducedPoly literal = nablaAlpha11Paper(k);
        CHECK(literal ==
              grid(k, {{2, 1, 2 * K * K * (K - 1)}, {1, 2, 2 * K * K * (K - 1)}, {1, 0, -4 * K * (K - 1)}, {0, 1, -4 * K * (K - 1)}}));
        CHECK(literal == handNablaLiteral(k));
        CHECK(literal.isZero() == (k == 1));

        // the raw s-odd part keeps the shape-operator term -4v̂ in (1,0),(0,1)
        const ReducedPoly rawOdd = projectEigen(deltaXi(k), kOdd);
        CHECK(rawOdd == oddPart(handDelta(splitSff(k).alpha11)));
        CHECK(rawOdd(1, 0) == GaussianRational(-4 * K * K));

        for (unsigned n = 1; n <= 3; ++n) {
            const ReducedPoly perp = nablaAlpha11Perp(k, n);
            CHECK(perp.isZero() == (k == 1));
            CHECK(perp.isReal());
            // both variants differ by a tangential grid
            CHECK(projectNormalReduced(literal, n) == perp);
            CHECK(projectTangentReduced(literal - perp, n) == literal - perp);
        }
    }
}

TEST_CASE("exact k=2 values") {
    CHECK(nablaAlpha11Paper(2) == grid(2, {{2, 1, 8}, {1, 2, 8}, {1, 0, -8}, {0, 1, -8}}));
    // projection onto span{(1,0),(0,1)} for n=1, k=2: the Gram block is diagonal with 1/20 on both
    const ReducedGram g(1, 2);
    CHECK(g(1, 0, 1, 0) == mpq_class(1, 20));
    CHECK(g(1, 0, 0, 1) == 0);
    CHECK(g(2, 1, 1, 0) == mpq_class(1, 30));
    // coefficient of (1,0) after projection: -8 - (-8·1/20 + 8·1/30)/(1/20) = -16/3
    const ReducedPoly perp = nablaAlpha11Perp(2, 1);
    CHECK(perp(2, 1) == GaussianRational(8));
    CHECK(perp(1, 0) == GaussianRational(mpq_class(-16, 3)));
}

TEST_CASE("parity lemma") {
    for (unsigned k = 1; k <= 8; ++k) {
        const ReducedPoly alpha = secondFundamental(k);
        CHECK(applyIsotropy(alpha, IsotropyOp::symmetry_s) == alpha);
        const ReducedPoly d = deltaDerive(splitSff(k).alpha11);
        CHECK(applyIsotropy(projectEigen(d, kOdd), IsotropyOp::symmetry_s) == -projectEigen(d, kOdd));
        CHECK(applyIsotropy(nablaAlpha11Paper(k), IsotropyOp::symmetry_s) == -nablaAlpha11Paper(k));
    }
}

TEST_CASE("orthogonality of alpha and its derivative") {
    for (unsigned n = 1; n <= 3; ++n) {
        for (unsigned k = 1; k <= 6; ++k) {
            const ReducedGram g(n, k);
            const ReducedPoly alpha = secondFundamental(k);
            CHECK(g.inner(alpha, projectEigen(deltaXi(k), kOdd)).isZero());
            CHECK(g.inner(alpha, nablaAlpha11Perp(k, n)).isZero());
            CHECK(g.inner(alpha, nablaAlpha11Paper(k)).isZero());
        }
    }
    // same pairing on the full polynomial model
    for (unsigned k = 1; k <= 3; ++k) {
        const ExactFrame f = ExactFrame::standard(2);
        CHECK(innerL2(embedReduced(secondFundamental(k), f), embedReduced(projectEigen(deltaXi(k), kOdd), f)).isZero());
    }
}

TEST_CASE("verdicts") {
    CHECK((ppmcVerdict(EmbeddingSpec(1, {{1, 1}})).verdict == Verdict::ppmc));
    CHECK((ppmcVerdict(EmbeddingSpec(2, {{2, 1}})).verdict == Verdict::not_ppmc));
    CHECK((ppmcVerdict(EmbeddingSpec(3, {{1, 5}})).verdict == Verdict::ppmc));

    const PpmcReport sum = ppmcVerdict(EmbeddingSpec(1, parseTerms("1:3/2,2:-1")));
    CHECK((sum.verdict == Verdict::not_ppmc));
    REQUIRE(sum.terms.size() == 2);
    CHECK(sum.terms[0].residualZero);
    CHECK_FALSE(sum.terms[1].residualZero);
    CHECK(sum.terms[0].coefficient == mpq_class(3, 2));
    CHECK(sum.terms[1].nablaPerp == nablaAlpha11Perp(2, 1) * GaussianRational(-1));
    CHECK(sum.innerProductLabel == "L2-sphere-normalized");
    CHECK((toString(sum.verdict) == "not_ppmc"));
    CHECK((toString(Verdict::ppmc) == "ppmc"));

    for (unsigned n = 1; n <= 3; ++n) {
        for (unsigned k = 1; k <= 8; ++k) {
            const EmbeddingSpec spec(n, {{k, 1}});
            CHECK((ppmcVerdict(spec).verdict == predictedVerdict(spec)));
        }
    }
}

TEST_CASE("scale equivariance of the residual") {
    const mpq_class a(-7, 3);
    for (unsigned k = 1; k <= 4; ++k) {
        const TermReport one = analyzeTerm(2, k, 1);
        const TermReport scaled = analyzeTerm(2, k, a);
        CHECK(scaled.nablaPerp == one.nablaPerp * GaussianRational(a));
        CHECK(scaled.alpha == one.alpha * GaussianRational(a));
        CHECK(scaled.residualNormSquared == one.residualNormSquared * a * a);
        CHECK(scaled.residualZero == one.residualZero);
    }
    CHECK(analyzeTerm(1, 1, 1).residualNormSquared == 0);
    CHECK(analyzeTerm(1, 2, 1).residualNorm > 0.0);
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(EmbeddingSpec(0, {{1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(EmbeddingSpec(1, {}), std::invalid_argument);
    CHECK_THROWS_AS(EmbeddingSpec(1, {{0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(EmbeddingSpec(1, {{1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(EmbeddingSpec(1, {{2, 1}, {2, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(parseTerms("1"), std::invalid_argument);
    CHECK_THROWS_AS(parseTerms("x:1"), std::invalid_argument);
    CHECK_THROWS_AS(parseTerms("1:1/0"), std::exception);
    const auto terms = parseTerms("1:3/2,2:-1");
    REQUIRE(terms.size() == 2);
    CHECK(terms[1].first == 2);
    CHECK(terms[1].second == -1);
}
