#pragma once

#include <initializer_list>
#include <random>
#include <tuple>

#include "ppmc/reduced_poly.hpp"

namespace ppmc::test {

/// Grid of bidegree k from (a, b, coefficient) entries.
inline ReducedPoly grid(unsigned k, std::initializer_list<std::tuple<unsigned, unsigned, long>> entries) {
    ReducedPoly p(k);
    for (const auto& [a, b, c] : entries) {
        if (c != 0) p(a, b) = GaussianRational(c);
    }
    return p;
}

/// Small Gaussian-integer entries; `real` enforces coeffs[b][a] = conj(coeffs[a][b]).
inline ReducedPoly randomGrid(unsigned k, std::mt19937_64& rng, bool real = false) {
    std::uniform_int_distribution<long> dist(-4, 4);
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

/// Great-circle δ applied monomial by monomial:
/// δ m_ab = (k-a) m_{a+1,b} - a m_{a-1,b} + (k-b) m_{a,b+1} - b m_{a,b-1}.
inline ReducedPoly handDelta(const ReducedPoly& p) {
    const unsigned k = p.k();
    ReducedPoly r(k);
    for (unsigned a = 0; a <= k; ++a) {
        for (unsigned b = 0; b <= k; ++b) {
            const GaussianRational& c = p(a, b);
            if (c.isZero()) continue;
            if (a < k) r(a + 1, b) += c * GaussianRational(static_cast<long>(k - a));
            if (a > 0) r(a - 1, b) -= c * GaussianRational(static_cast<long>(a));
            if (b < k) r(a, b + 1) += c * GaussianRational(static_cast<long>(k - b));
            if (b > 0) r(a, b - 1) -= c * GaussianRational(static_cast<long>(b));
        }
    }
    return r;
}

/// Keeps the entries with a + b odd.
inline ReducedPoly oddPart(const ReducedPoly& p) {
    ReducedPoly r(p.k());
    for (unsigned a = 0; a <= p.k(); ++a) {
        for (unsigned b = 0; b <= p.k(); ++b) {
            if ((a + b) % 2 == 1) r(a, b) = p(a, b);
        }
    }
    return r;
}

/// Literal N^- grid rebuilt from (x x̄)^k: δ twice, keep a = b, δ again,
/// keep the odd part, then drop the -4v̂ shape-operator term.
inline ReducedPoly handNablaLiteral(unsigned k) {
    ReducedPoly phi(k);
    phi(0, 0) = 1;
    const ReducedPoly vhat = handDelta(phi);
    const ReducedPoly alpha = handDelta(vhat);
    ReducedPoly xi(k);
    for (unsigned a = 0; a <= k; ++a) xi(a, a) = alpha(a, a);
    return oddPart(handDelta(xi)) + vhat * GaussianRational(4);
}

}  // namespace ppmc::test
