#include "ppmc/reduced_poly.hpp"

#include <stdexcept>
#include <string>

namespace ppmc {

ReducedPoly::ReducedPoly(unsigned k) : k_(k), coeffs_(static_cast<std::size_t>(k + 1) * (k + 1)) {}

ReducedPoly ReducedPoly::monomial(unsigned k, unsigned a, unsigned b, GaussianRational c) {
    ReducedPoly p(k);
    p(a, b) = std::move(c);
    return p;
}

std::size_t ReducedPoly::index(unsigned a, unsigned b) const {
    if (a > k_ || b > k_) {
        throw std::out_of_range("ReducedPoly index (" + std::to_string(a) + "," + std::to_string(b) +
                                ") outside bidegree " + std::to_string(k_));
    }
    return static_cast<std::size_t>(a) * (k_ + 1) + b;
}

bool ReducedPoly::isZero() const {
    for (const auto& c : coeffs_) {
        if (!c.isZero()) return false;
    }
    return true;
}

bool ReducedPoly::isReal() const {
    for (unsigned a = 0; a <= k_; ++a) {
        for (unsigned b = a; b <= k_; ++b) {
            if (!((*this)(b, a) == (*this)(a, b).conj())) return false;
        }
    }
    return true;
}

std::size_t ReducedPoly::support() const {
    std::size_t count = 0;
    for (const auto& c : coeffs_) count += c.isZero() ? 0 : 1;
    return count;
}

ReducedPoly& ReducedPoly::operator+=(const ReducedPoly& o) {
    if (o.k_ != k_) throw std::invalid_argument("cannot add ReducedPoly of different bidegree");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

ReducedPoly& ReducedPoly::operator-=(const ReducedPoly& o) {
    if (o.k_ != k_) throw std::invalid_argument("cannot subtract ReducedPoly of different bidegree");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
}

ReducedPoly& ReducedPoly::operator*=(const GaussianRational& c) {
    for (auto& coeff : coeffs_) coeff *= c;
    return *this;
}

ReducedPoly operator*(const ReducedPoly& p, const ReducedPoly& q) {
    ReducedPoly r(p.k() + q.k());
    for (unsigned a1 = 0; a1 <= p.k(); ++a1) {
        for (unsigned b1 = 0; b1 <= p.k(); ++b1) {
            const auto& c1 = p(a1, b1);
            if (c1.isZero()) continue;
            for (unsigned a2 = 0; a2 <= q.k(); ++a2) {
                for (unsigned b2 = 0; b2 <= q.k(); ++b2) {
                    const auto& c2 = q(a2, b2);
                    if (!c2.isZero()) r(a1 + a2, b1 + b2) += c1 * c2;
                }
            }
        }
    }
    return r;
}

bool operator==(const ReducedPoly& p, const ReducedPoly& q) { return p.k_ == q.k_ && p.coeffs_ == q.coeffs_; }

ReducedPoly xxbarPower(unsigned k) { return ReducedPoly::monomial(k, 0, 0); }

ReducedPoly pow(const ReducedPoly& p, unsigned e) {
    ReducedPoly r = ReducedPoly::monomial(0, 0, 0);
    for (unsigned i = 0; i < e; ++i) r = r * p;
    return r;
}

DeltaRule DeltaRule::greatCircle(const GaussianRational& phase) {
    if (!(phase.norm() == 1)) throw std::invalid_argument("great-circle phase must have modulus 1");
    return {phase, -phase.conj(), phase.conj(), -phase};
}

DeltaRule DeltaRule::faulty() {
    DeltaRule r = greatCircle();
    r.dvbar = -r.dvbar;
    return r;
}

ReducedPoly deltaDerive(const ReducedPoly& p, const DeltaRule& rule) {
    const unsigned k = p.k();
    ReducedPoly r(k);
    for (unsigned a = 0; a <= k; ++a) {
        for (unsigned b = 0; b <= k; ++b) {
            const auto& c = p(a, b);
            if (c.isZero()) continue;
            // x^{k-a} -> (k-a) x^{k-a-1} · δx
            if (a < k) r(a + 1, b) += c * GaussianRational(static_cast<long>(k - a)) * rule.dx;
            // v^a -> a v^{a-1} · δv
            if (a > 0) r(a - 1, b) += c * GaussianRational(static_cast<long>(a)) * rule.dv;
            if (b < k) r(a, b + 1) += c * GaussianRational(static_cast<long>(k - b)) * rule.dxbar;
            if (b > 0) r(a, b - 1) += c * GaussianRational(static_cast<long>(b)) * rule.dvbar;
        }
    }
    return r;
}

EigenLabel::EigenLabel(IsotropyOp op_, Eigenvalue value_) : op(op_), value(value_) {
    if (op == IsotropyOp::symmetry_s && (value == Eigenvalue::plus_i || value == Eigenvalue::minus_i)) {
        throw std::invalid_argument("the symmetry s only has eigenvalues +1 and -1");
    }
}

GaussianRational eigenvalueScalar(Eigenvalue e) {
    switch (e) {
        case Eigenvalue::plus_one: return 1;
        case Eigenvalue::minus_one: return -1;
        case Eigenvalue::plus_i: return GaussianRational::i();
        case Eigenvalue::minus_i: return -GaussianRational::i();
    }
    throw std::logic_error("unreachable eigenvalue");
}

Eigenvalue monomialEigenvalue(unsigned a, unsigned b, IsotropyOp op) {
    if (op == IsotropyOp::symmetry_s) return (a + b) % 2 == 0 ? Eigenvalue::plus_one : Eigenvalue::minus_one;
    const int r = ((static_cast<int>(a) - static_cast<int>(b)) % 4 + 4) % 4;
    static constexpr Eigenvalue kByResidue[4] = {Eigenvalue::plus_one, Eigenvalue::plus_i, Eigenvalue::minus_one,
                                                 Eigenvalue::minus_i};
    return kByResidue[r];
}

ReducedPoly applyIsotropy(const ReducedPoly& p, IsotropyOp op) {
    ReducedPoly r = p;
    for (unsigned a = 0; a <= p.k(); ++a) {
        for (unsigned b = 0; b <= p.k(); ++b) {
            if (!p(a, b).isZero()) r(a, b) *= eigenvalueScalar(monomialEigenvalue(a, b, op));
        }
    }
    return r;
}

ReducedPoly projectEigen(const ReducedPoly& p, const EigenLabel& label) {
    ReducedPoly r(p.k());
    for (unsigned a = 0; a <= p.k(); ++a) {
        for (unsigned b = 0; b <= p.k(); ++b) {
            if (monomialEigenvalue(a, b, label.op) == label.value) r(a, b) = p(a, b);
        }
    }
    return r;
}

}  // namespace ppmc
