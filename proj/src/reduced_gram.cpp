#include "ppmc/reduced_gram.hpp"

#include <stdexcept>

namespace ppmc {

ReducedGram::ReducedGram(unsigned n, unsigned k) : n_(n), k_(k) {
    if (n < 1) throw std::invalid_argument("reduced Gram matrix needs n >= 1");
    const unsigned s = k + 1;
    entries_.assign(static_cast<std::size_t>(s) * s * s * s, mpq_class(0));
    const mpq_class scale = factorial(n) / factorial(n + 2 * k);
    for (unsigned a = 0; a <= k; ++a) {
        for (unsigned b = 0; b <= k; ++b) {
            for (unsigned a2 = 0; a2 <= k; ++a2) {
                for (unsigned b2 = 0; b2 <= k; ++b2) {
                    if (static_cast<int>(a) - static_cast<int>(b) != static_cast<int>(a2) - static_cast<int>(b2)) {
                        continue;
                    }
                    // conj(m) m' = |z_1|^{2(b+a2)} |z_{n+1}|^{2(2k-b-a2)}
                    const unsigned p = b + a2;
                    entries_[((a * s + b) * s + a2) * s + b2] = scale * factorial(p) * factorial(2 * k - p);
                }
            }
        }
    }
}

const mpq_class& ReducedGram::operator()(unsigned a, unsigned b, unsigned a2, unsigned b2) const {
    if (a > k_ || b > k_ || a2 > k_ || b2 > k_) throw std::out_of_range("reduced Gram index out of range");
    const unsigned s = k_ + 1;
    return entries_[((a * s + b) * s + a2) * s + b2];
}

GaussianRational ReducedGram::inner(const ReducedPoly& p, const ReducedPoly& q) const {
    if (p.k() != k_ || q.k() != k_) throw std::invalid_argument("bidegree does not match the Gram matrix");
    GaussianRational sum;
    for (unsigned a = 0; a <= k_; ++a) {
        for (unsigned b = 0; b <= k_; ++b) {
            if (p(a, b).isZero()) continue;
            const GaussianRational pc = p(a, b).conj();
            for (unsigned a2 = 0; a2 <= k_; ++a2) {
                // only the b2 with a2 - b2 = a - b contributes
                const int b2 = static_cast<int>(a2) - static_cast<int>(a) + static_cast<int>(b);
                if (b2 < 0 || b2 > static_cast<int>(k_)) continue;
                const auto& qc = q(a2, static_cast<unsigned>(b2));
                if (qc.isZero()) continue;
                sum += pc * qc * GaussianRational((*this)(a, b, a2, static_cast<unsigned>(b2)));
            }
        }
    }
    return sum;
}

mpq_class ReducedGram::normSquared(const ReducedPoly& p) const { return inner(p, p).re(); }

std::vector<std::vector<mpq_class>> reducedGram(unsigned n, unsigned k) {
    const ReducedGram g(n, k);
    const unsigned s = k + 1;
    std::vector<std::vector<mpq_class>> dense(s * s, std::vector<mpq_class>(s * s));
    for (unsigned i = 0; i < s * s; ++i) {
        for (unsigned j = 0; j < s * s; ++j) dense[i][j] = g(i / s, i % s, j / s, j % s);
    }
    return dense;
}

ReducedPoly projectTangentReduced(const ReducedPoly& p, unsigned n) {
    const unsigned k = p.k();
    if (k == 0) throw std::invalid_argument("tangent space is degenerate for k = 0");
    const ReducedGram gram(n, k);
    const ReducedPoly t1 = ReducedPoly::monomial(k, 1, 0);
    const ReducedPoly t2 = ReducedPoly::monomial(k, 0, 1);

    // Normal equations G c = r with G the 2x2 Gram block of {t1, t2}.
    const GaussianRational g11 = gram.inner(t1, t1), g12 = gram.inner(t1, t2);
    const GaussianRational g21 = gram.inner(t2, t1), g22 = gram.inner(t2, t2);
    const GaussianRational r1 = gram.inner(t1, p), r2 = gram.inner(t2, p);
    const GaussianRational det = g11 * g22 - g12 * g21;
    const GaussianRational c1 = (r1 * g22 - g12 * r2) / det;
    const GaussianRational c2 = (g11 * r2 - g21 * r1) / det;
    return t1 * c1 + t2 * c2;
}

ReducedPoly projectNormalReduced(const ReducedPoly& p, unsigned n) { return p - projectTangentReduced(p, n); }

}  // namespace ppmc
