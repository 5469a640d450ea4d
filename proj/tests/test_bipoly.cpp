#include <cmath>
#include <random>

#include "doctest.h"
#include "ppmc/bipoly.hpp"
#include "ppmc/geometry.hpp"
#include "support.hpp"

using namespace ppmc;
using ppmc::test::randomGrid;

namespace {

Vector<Complex> randomUnit(unsigned n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Vector<Complex> z(n + 1);
    double s = 0.0;
    for (auto& c : z) {
        c = {g(rng), g(rng)};
        s += std::norm(c);
    }
    for (auto& c : z) c /= std::sqrt(s);
    return z;
}

Complex hermitian(const Vector<Complex>& a, const Vector<Complex>& b) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

Vector<Complex> multiply(const Eigen::MatrixXcd& g, const Vector<Complex>& x) {
    Vector<Complex> r(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) r[i] += g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * x[j];
    }
    return r;
}

double distance(const NumericBiPoly& p, const NumericBiPoly& q) { return normL2(p - q); }

NumericBiPoly randomNumeric(unsigned n, unsigned k, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    NumericBiPoly p(n, k);
    for (const auto& mu : multiIndices(n + 1, k)) {
        for (const auto& nu : multiIndices(n + 1, k)) p.add(mu, nu, {g(rng), g(rng)});
    }
    return p;
}

NumericFrame rotate(const NumericFrame& f, double t) {
    Vector<Complex> u(f.u.size()), w(f.w.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        u[i] = std::cos(t) * f.u[i] + std::sin(t) * f.w[i];
        w[i] = -std::sin(t) * f.u[i] + std::cos(t) * f.w[i];
    }
    return {f.n, u, w};
}

}  // namespace

TEST_CASE("multi-index basics") {
    CHECK(multiIndices(2, 2).size() == 3);
    CHECK(multiIndices(3, 2).size() == 6);
    CHECK(monomialCount(2, 3) == 10);
    CHECK(factorial(MultiIndex{2, 3}) == 12);
}

TEST_CASE("expandPhi examples") {
    for (unsigned k = 1; k <= 3; ++k) {
        Vector<GaussianRational> e(3);
        e[2] = 1;
        const ExactBiPoly fk = expandPhi(e, k);
        CHECK(fk.terms().size() == 1);
        CHECK(fk.coeff({0, 0, k}, {0, 0, k}) == GaussianRational(1));
    }

    const double r = 1.0 / std::sqrt(2.0);
    const NumericBiPoly half = expandPhi(Vector<Complex>{r, r}, 1);
    CHECK(half.terms().size() == 4);
    for (const auto& [key, c] : half.terms()) CHECK(std::abs(c - 0.5) < 1e-15);

    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
        const auto z = randomUnit(1, rng);
        CHECK(std::abs(half.evaluate(z) - std::norm(z[0] + z[1]) / 2.0) < 1e-14);
    }

    // exact direction (3/5, 4/5·i)
    const Vector<GaussianRational> v{GaussianRational(mpq_class(3, 5)), GaussianRational(0, mpq_class(4, 5))};
    const ExactBiPoly p = expandPhi(v, 1);
    CHECK(p.coeff({1, 0}, {0, 1}) == GaussianRational(0, mpq_class(12, 25)));
    CHECK(p.coeff({0, 1}, {0, 1}) == GaussianRational(mpq_class(16, 25)));
    CHECK(p.isReal());
    CHECK(expandPhi(v, 2).coeff({1, 1}, {1, 1}) == GaussianRational(mpq_class(4 * 144, 625)));

    CHECK_THROWS_AS(expandPhi(v, 0), std::invalid_argument);
    CHECK_THROWS_AS(expandPhi(Vector<Complex>{1.0, 1.0}, 1), std::invalid_argument);
}

TEST_CASE("property: evaluation identity") {
    std::mt19937_64 rng(4);
    for (unsigned n = 1; n <= 3; ++n) {
        for (unsigned k = 1; k <= 3; ++k) {
            const auto v = randomUnit(n, rng);
            const NumericBiPoly p = expandPhi(v, k);
            CHECK(p.isReal(1e-14));
            for (int i = 0; i < 5; ++i) {
                const auto z = randomUnit(n, rng);
                const double expected = std::pow(std::norm(hermitian(v, z)), k);
                CHECK(std::abs(p.evaluate(z) - expected) < 1e-13);
            }
        }
    }
}

TEST_CASE("groupAct examples") {
    std::mt19937_64 rng(6);
    const NumericBiPoly p = randomNumeric(2, 2, rng);
    CHECK(distance(groupAct(Eigen::MatrixXcd::Identity(3, 3), p), p) < 1e-14);

    for (unsigned k = 1; k <= 3; ++k) {
        Vector<Complex> e(3, 0.0);
        e[2] = 1.0;
        const NumericBiPoly fk = expandPhi(e, k);
        const Eigen::MatrixXcd g = haarUnitary(3, 100 + k);
        Vector<Complex> lastColumn(3);
        for (int i = 0; i < 3; ++i) lastColumn[static_cast<std::size_t>(i)] = g(i, 2);
        CHECK(distance(groupAct(g, fk), expandPhi(lastColumn, k)) < 1e-12);

        Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(3, 3);
        d(0, 0) = std::polar(1.0, 0.3);
        d(1, 1) = std::polar(1.0, -1.1);
        d(2, 2) = std::polar(1.0, 2.0);
        CHECK(distance(groupAct(d, fk), fk) < 1e-14);
    }

    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(3, 3);
    bad(0, 1) = 1e-6;
    CHECK_THROWS_AS(groupAct(bad, p), std::invalid_argument);
    CHECK_THROWS_AS(groupAct(Eigen::MatrixXcd::Identity(2, 2), p), std::invalid_argument);
}

TEST_CASE("exact and numeric group actions agree") {
    const GaussianRational c(mpq_class(3, 5)), s(mpq_class(4, 5)), i = GaussianRational::i();
    const ExactMatrix g{{c, -s, 0}, {s * i, c * i, 0}, {0, 0, -i}};
    Eigen::MatrixXcd gn(3, 3);
    for (int r = 0; r < 3; ++r) {
        for (int col = 0; col < 3; ++col) gn(r, col) = g[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)].toComplex();
    }
    std::mt19937_64 rng(8);
    const ReducedPoly grid = randomGrid(2, rng, true);
    const ExactBiPoly p = embedReduced(grid, ExactFrame::standard(2));
    const ExactBiPoly q = groupAct(g, p);
    CHECK(q.isReal());
    CHECK(innerL2(q, q) == innerL2(p, p));
    CHECK(distance(toNumeric(q), groupAct(gn, toNumeric(p))) < 1e-12);

    // a permutation matrix just relabels variables
    const ExactMatrix swap{{0, 1}, {1, 0}};
    const ExactBiPoly f = expandPhi(Vector<GaussianRational>{0, 1}, 2);
    CHECK(groupAct(swap, f) == expandPhi(Vector<GaussianRational>{1, 0}, 2));

    const ExactMatrix notUnitary{{1, 1}, {0, 1}};
    CHECK_THROWS_AS(groupAct(notUnitary, f), std::invalid_argument);
}

TEST_CASE("innerL2 examples") {
    Vector<GaussianRational> e{0, 1};
    const ExactBiPoly f1 = expandPhi(e, 1);
    CHECK(innerL2(f1, f1) == GaussianRational(mpq_class(1, 3)));

    ExactBiPoly off(1, 1);
    off.add({1, 0}, {0, 1}, 1);
    CHECK(innerL2(f1, off).isZero());

    // Monte Carlo ‖p‖² = E|p(z)|² for a random numeric polynomial
    std::mt19937_64 rng(9);
    const NumericBiPoly p = randomNumeric(1, 2, rng);
    double mc = 0.0;
    const int samples = 300000;
    for (int i = 0; i < samples; ++i) mc += std::norm(p.evaluate(randomUnit(1, rng)));
    mc /= samples;
    const double exact = innerL2(p, p).real();
    CHECK(std::abs(mc - exact) < 0.02 * exact);

    CHECK_THROWS_AS(innerL2(f1, expandPhi(e, 2)), std::invalid_argument);
}

TEST_CASE("property: invariance, representation law, reality") {
    std::mt19937_64 rng(10);
    for (unsigned trial = 0; trial < 12; ++trial) {
        const unsigned n = 1 + trial % 3, k = 1 + (trial / 3) % 2;
        const NumericBiPoly p = randomNumeric(n, k, rng), q = randomNumeric(n, k, rng);
        const Eigen::MatrixXcd g = haarUnitary(n + 1, deriveSeed(77, 2 * trial));
        const Eigen::MatrixXcd h = haarUnitary(n + 1, deriveSeed(77, 2 * trial + 1));
        const double scale = normL2(p) * normL2(q);
        CHECK(std::abs(innerL2(groupAct(g, p), groupAct(g, q)) - innerL2(p, q)) < 1e-10 * scale);
        CHECK(distance(groupAct(g * h, p), groupAct(g, groupAct(h, p))) < 1e-10 * normL2(p));

        const NumericBiPoly r = toNumeric(embedReduced(randomGrid(k, rng, true), ExactFrame::standard(n)));
        REQUIRE(r.isReal(1e-15));
        CHECK(groupAct(g, r).isReal(1e-12));
    }
}

TEST_CASE("property: norm constancy and height functions") {
    std::mt19937_64 rng(12);
    for (unsigned n = 1; n <= 3; ++n) {
        for (unsigned k = 1; k <= 3; ++k) {
            // ‖Φ(v)‖² = E|z_{n+1}|^{4k} = n!(2k)!/(n+2k)!
            const double expected = mpq_class(factorial(n) * factorial(2 * k) / factorial(n + 2 * k)).get_d();
            for (int i = 0; i < 5; ++i) {
                const auto v = randomUnit(n, rng);
                CHECK(std::abs(innerL2(expandPhi(v, k), expandPhi(v, k)).real() - expected) < 1e-12);
            }
            const Eigen::MatrixXcd g = haarUnitary(n + 1, 500 + 10 * n + k);
            const NumericBiPoly q = randomNumeric(n, k, rng);
            const auto x = randomUnit(n, rng);
            const auto ginvx = multiply(g.adjoint(), x);
            const Complex lhs = innerL2(expandPhi(ginvx, k), q);
            const Complex rhs = innerL2(expandPhi(x, k), groupAct(g, q));
            CHECK(std::abs(lhs - rhs) < 1e-10 * normL2(q));
        }
    }
}

TEST_CASE("embedReduced") {
    for (unsigned n = 1; n <= 3; ++n) {
        for (unsigned k = 1; k <= 3; ++k) {
            Vector<GaussianRational> e(n + 1);
            e[n] = 1;
            CHECK(embedReduced(phiReduced(k), ExactFrame::standard(n)) == expandPhi(e, k));
        }
    }

    std::mt19937_64 rng(14);
    for (unsigned trial = 0; trial < 6; ++trial) {
        const unsigned n = 1 + trial % 2, k = 1 + trial % 3;
        const NumericFrame frame = randomFrame(n, 900 + trial);

        // v̂ against the t-derivative of Φ along the great circle
        const double h = 1e-4;
        const NumericBiPoly fd = (expandPhi(rotate(frame, h).u, k) - expandPhi(rotate(frame, -h).u, k)) * Complex(1.0 / (2 * h));
        const NumericBiPoly vhat = embedReduced(firstFundamental(k), frame);
        CHECK(distance(fd, vhat) < 1e-7 * normL2(vhat));

        // δ on a random grid against the same difference quotient
        const ReducedPoly p = randomGrid(k, rng);
        const NumericBiPoly fdp =
            (embedReduced(p, rotate(frame, h)) - embedReduced(p, rotate(frame, -h))) * Complex(1.0 / (2 * h));
        const NumericBiPoly dp = embedReduced(deltaDerive(p), frame);
        CHECK(distance(fdp, dp) < 1e-7 * normL2(dp));

        const ReducedPoly q = randomGrid(1, rng, true);
        CHECK(embedReduced(p * q, ExactFrame::standard(n)) ==
              embedReduced(p, ExactFrame::standard(n)) * embedReduced(q, ExactFrame::standard(n)));
        CHECK(embedReduced(q, ExactFrame::standard(n)).isReal());
    }
}

TEST_CASE("frame validation") {
    CHECK_THROWS_AS(NumericFrame(1, {1.0, 0.0}, {1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(NumericFrame(1, {2.0, 0.0}, {0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(NumericFrame(2, {1.0, 0.0}, {0.0, 1.0}), std::invalid_argument);
    CHECK_NOTHROW(NumericFrame(1, {1.0, 0.0}, {0.0, Complex(0.0, 1.0)}));
}

TEST_CASE("orbit span rank") {
    struct Case {
        unsigned n, k;
        std::size_t rank;
    };
    for (const Case c : {Case{1, 1, 4}, Case{1, 2, 9}, Case{2, 1, 9}, Case{2, 2, 36}}) {
        const std::size_t m = monomialCount(c.n, c.k);
        const OrbitRankResult r = orbitRank(c.n, c.k, static_cast<unsigned>(3 * m * m), 20241018);
        CHECK(r.rank == c.rank);
        CHECK(r.expected == c.rank);
    }
    // fewer samples than dimensions cannot reach full rank
    CHECK(orbitRank(2, 1, 5, 1).rank == 5);
}

TEST_CASE("JSON round trip") {
    std::mt19937_64 rng(15);
    const ExactBiPoly p = embedReduced(randomGrid(2, rng), ExactFrame::standard(2));
    const auto j = toJson(p);
    CHECK(j["mode"] == "exact");
    CHECK(j["n"] == 2);
    CHECK(exactBiPolyFromJson(j) == p);
    CHECK(toJson(toNumeric(p))["mode"] == "numeric");
}
