#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "ppmc/reduced_poly.hpp"
#include "ppmc/scalar.hpp"

namespace ppmc {

/// Exponent vector of a monomial in z_1, ..., z_{n+1}.
using MultiIndex = std::vector<unsigned>;

unsigned degree(const MultiIndex& mu);
/// μ! = Π μ_i!
mpq_class factorial(const MultiIndex& mu);
/// All exponent vectors of length `vars` and total degree `deg`, ascending.
std::vector<MultiIndex> multiIndices(unsigned vars, unsigned deg);
/// binomial(n + k, n): number of holomorphic monomials of degree k in n+1 variables.
std::size_t monomialCount(unsigned n, unsigned k);

inline constexpr double kUnitTolerance = 1e-12;

/// Bihomogeneous polynomial Σ c_{μν} z^μ z̄^ν of bidegree (k,k) on C^{n+1}.
/// Exact zeros are never stored.
template <class Scalar>
class BiPoly {
public:
    using Key = std::pair<MultiIndex, MultiIndex>;
    using Terms = std::map<Key, Scalar>;

    BiPoly(unsigned n, unsigned k) : n_(n), k_(k) {}

    unsigned n() const { return n_; }
    unsigned k() const { return k_; }
    const Terms& terms() const { return terms_; }

    Scalar coeff(const MultiIndex& mu, const MultiIndex& nu) const {
        auto it = terms_.find({mu, nu});
        return it == terms_.end() ? Scalar{} : it->second;
    }

    void add(const MultiIndex& mu, const MultiIndex& nu, const Scalar& c) {
        if (mu.size() != n_ + 1 || nu.size() != n_ + 1 || degree(mu) != k_ || degree(nu) != k_) {
            throw std::invalid_argument("monomial does not have bidegree (k,k) on C^{n+1}");
        }
        if (ppmc::isZero(c)) return;
        auto [it, inserted] = terms_.try_emplace({mu, nu}, c);
        if (!inserted) {
            it->second += c;
            if (ppmc::isZero(it->second)) terms_.erase(it);
        }
    }

    bool isZero() const { return terms_.empty(); }

    /// coeff(ν,μ) = conj(coeff(μ,ν)) up to `tol` (exactly in exact mode).
    bool isReal(double tol = 0.0) const {
        for (const auto& [key, c] : terms_) {
            const Scalar mirrored = coeff(key.second, key.first);
            if constexpr (std::is_same_v<Scalar, GaussianRational>) {
                if (!(mirrored == conjugate(c))) return false;
            } else {
                if (std::abs(mirrored - conjugate(c)) > tol) return false;
            }
        }
        return true;
    }

    BiPoly& operator+=(const BiPoly& o) {
        checkCompatible(o);
        for (const auto& [key, c] : o.terms_) add(key.first, key.second, c);
        return *this;
    }

    BiPoly& operator-=(const BiPoly& o) {
        checkCompatible(o);
        for (const auto& [key, c] : o.terms_) add(key.first, key.second, -c);
        return *this;
    }

    BiPoly& operator*=(const Scalar& s) {
        if (ppmc::isZero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& [key, c] : terms_) c *= s;
        return *this;
    }

    friend BiPoly operator+(BiPoly p, const BiPoly& q) { return p += q; }
    friend BiPoly operator-(BiPoly p, const BiPoly& q) { return p -= q; }
    friend BiPoly operator*(BiPoly p, const Scalar& s) { return p *= s; }

    /// Ring product; bidegrees add.
    friend BiPoly operator*(const BiPoly& p, const BiPoly& q) {
        if (p.n_ != q.n_) throw std::invalid_argument("BiPoly product needs equal n");
        BiPoly r(p.n_, p.k_ + q.k_);
        for (const auto& [kp, cp] : p.terms_) {
            for (const auto& [kq, cq] : q.terms_) {
                MultiIndex mu = kp.first, nu = kp.second;
                for (unsigned i = 0; i <= p.n_; ++i) {
                    mu[i] += kq.first[i];
                    nu[i] += kq.second[i];
                }
                r.add(mu, nu, cp * cq);
            }
        }
        return r;
    }

    friend bool operator==(const BiPoly& p, const BiPoly& q) {
        return p.n_ == q.n_ && p.k_ == q.k_ && p.terms_ == q.terms_;
    }

    /// Value at z (always computed in double precision).
    Complex evaluate(const std::vector<Complex>& z) const {
        if (z.size() != n_ + 1) throw std::invalid_argument("evaluation point has wrong dimension");
        Complex sum = 0.0;
        for (const auto& [key, c] : terms_) {
            Complex m = toComplex(c);
            for (unsigned i = 0; i <= n_; ++i) {
                m *= std::pow(z[i], static_cast<int>(key.first[i])) *
                     std::pow(std::conj(z[i]), static_cast<int>(key.second[i]));
            }
            sum += m;
        }
        return sum;
    }

    void checkCompatible(const BiPoly& o) const {
        if (o.n_ != n_ || o.k_ != k_) throw std::invalid_argument("BiPoly (n,k) mismatch");
    }

private:
    unsigned n_;
    unsigned k_;
    Terms terms_;
};

using ExactBiPoly = BiPoly<GaussianRational>;
using NumericBiPoly = BiPoly<Complex>;

NumericBiPoly toNumeric(const ExactBiPoly& p);

template <class Scalar>
using Vector = std::vector<Scalar>;

/// Square matrix stored row-major as nested vectors (exact mode); numeric
/// code uses Eigen::MatrixXcd.
using ExactMatrix = std::vector<std::vector<GaussianRational>>;

/// Orthonormal pair (u, w) in C^{n+1}: base point x = u* and horizontal
/// tangent direction v = w*.
template <class Scalar>
struct Frame {
    unsigned n;
    Vector<Scalar> u;
    Vector<Scalar> w;

    Frame(unsigned n_, Vector<Scalar> u_, Vector<Scalar> w_);

    /// u = e_{n+1}, w = e_1.
    static Frame standard(unsigned n);
};

using ExactFrame = Frame<GaussianRational>;
using NumericFrame = Frame<Complex>;

NumericFrame toNumeric(const ExactFrame& f);
/// Seeded random orthonormal frame.
NumericFrame randomFrame(unsigned n, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Polynomials in z alone, used to expand products of linear forms.

template <class Scalar>
using HoloPoly = std::map<MultiIndex, Scalar>;

template <class Scalar>
HoloPoly<Scalar> holoProduct(const HoloPoly<Scalar>& a, const HoloPoly<Scalar>& b) {
    HoloPoly<Scalar> r;
    for (const auto& [ma, ca] : a) {
        for (const auto& [mb, cb] : b) {
            MultiIndex m = ma;
            for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
            r[m] += ca * cb;
        }
    }
    std::erase_if(r, [](const auto& kv) { return isZero(kv.second); });
    return r;
}

/// (Σ_j coeffs_j z_j)^e
template <class Scalar>
HoloPoly<Scalar> linearFormPower(const Vector<Scalar>& coeffs, unsigned e) {
    HoloPoly<Scalar> r{{MultiIndex(coeffs.size(), 0), Scalar(1)}};
    HoloPoly<Scalar> form;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (isZero(coeffs[j])) continue;
        MultiIndex m(coeffs.size(), 0);
        m[j] = 1;
        form[m] = coeffs[j];
    }
    for (unsigned i = 0; i < e; ++i) r = holoProduct(r, form);
    return r;
}

template <class Scalar>
void addOuter(BiPoly<Scalar>& target, const HoloPoly<Scalar>& holo, const HoloPoly<Scalar>& anti,
              const Scalar& scale) {
    for (const auto& [mu, ca] : holo) {
        const Scalar left = scale * ca;
        for (const auto& [nu, cb] : anti) target.add(mu, nu, left * cb);
    }
}

template <class Scalar>
Scalar dot(const Vector<Scalar>& a, const Vector<Scalar>& b) {
    Scalar s{};
    for (std::size_t i = 0; i < a.size(); ++i) s += conjugate(a[i]) * b[i];
    return s;
}

template <class Scalar>
void requireUnit(const Vector<Scalar>& v, const char* what) {
    const Scalar nn = dot(v, v);
    if constexpr (std::is_same_v<Scalar, GaussianRational>) {
        if (!(nn == GaussianRational(1))) throw std::invalid_argument(std::string(what) + " must be a unit vector");
    } else {
        if (std::abs(nn - 1.0) > kUnitTolerance) {
            throw std::invalid_argument(std::string(what) + " must be a unit vector");
        }
    }
}

/// |v*z|^{2k} expanded: coeff(μ,ν) = (k!/μ!)(k!/ν!) conj(v)^μ v^ν.
template <class Scalar>
BiPoly<Scalar> expandPhi(const Vector<Scalar>& v, unsigned k) {
    if (k == 0) throw std::invalid_argument("expandPhi: k = 0 gives a constant, not an embedding");
    requireUnit(v, "expandPhi direction");
    const unsigned n = static_cast<unsigned>(v.size()) - 1;
    Vector<Scalar> conjV(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) conjV[i] = conjugate(v[i]);
    // (v*z)^k and its conjugate carry the multinomial weights already.
    const auto holo = linearFormPower(conjV, k);
    const auto anti = linearFormPower(v, k);
    BiPoly<Scalar> r(n, k);
    addOuter(r, holo, anti, Scalar(1));
    return r;
}

template <class Scalar>
Frame<Scalar>::Frame(unsigned n_, Vector<Scalar> u_, Vector<Scalar> w_) : n(n_), u(std::move(u_)), w(std::move(w_)) {
    if (u.size() != n + 1 || w.size() != n + 1) throw std::invalid_argument("frame vectors must lie in C^{n+1}");
    requireUnit(u, "frame base point");
    requireUnit(w, "frame tangent direction");
    const Scalar overlap = dot(u, w);
    if constexpr (std::is_same_v<Scalar, GaussianRational>) {
        if (!overlap.isZero()) throw std::invalid_argument("frame vectors must be orthogonal");
    } else {
        if (std::abs(overlap) > kUnitTolerance) throw std::invalid_argument("frame vectors must be orthogonal");
    }
}

template <class Scalar>
Frame<Scalar> Frame<Scalar>::standard(unsigned n) {
    Vector<Scalar> u(n + 1), w(n + 1);
    u[n] = Scalar(1);
    w[0] = Scalar(1);
    return Frame(n, std::move(u), std::move(w));
}

/// Substitutes x = u*z, v = w*z (and conjugates) into a reduced polynomial.
template <class Scalar>
BiPoly<Scalar> embedReduced(const ReducedPoly& p, const Frame<Scalar>& frame) {
    const unsigned k = p.k();
    Vector<Scalar> xForm(frame.n + 1), vForm(frame.n + 1);
    for (unsigned j = 0; j <= frame.n; ++j) {
        xForm[j] = conjugate(frame.u[j]);
        vForm[j] = conjugate(frame.w[j]);
    }
    std::vector<HoloPoly<Scalar>> holo(k + 1), anti(k + 1);
    for (unsigned a = 0; a <= k; ++a) {
        holo[a] = holoProduct(linearFormPower(xForm, k - a), linearFormPower(vForm, a));
        anti[a] = holoProduct(linearFormPower(frame.u, k - a), linearFormPower(frame.w, a));
    }
    BiPoly<Scalar> r(frame.n, k);
    for (unsigned a = 0; a <= k; ++a) {
        for (unsigned b = 0; b <= k; ++b) {
            if (!p(a, b).isZero()) addOuter(r, holo[a], anti[b], fromGaussian<Scalar>(p(a, b)));
        }
    }
    return r;
}

/// Exact L² inner product ⟨p,q⟩ = ∫ conj(p) q over the unit sphere of
/// C^{n+1} with normalized measure.
template <class Scalar>
Scalar innerL2(const BiPoly<Scalar>& p, const BiPoly<Scalar>& q) {
    p.checkCompatible(q);
    const unsigned n = p.n(), k = p.k();
    const mpq_class scale = factorial(n) / factorial(n + 2 * k);

    // conj(z^μ z̄^ν) z^μ' z̄^ν' integrates to zero unless μ - ν = μ' - ν'.
    using Weight = std::vector<int>;
    auto weightOf = [](const MultiIndex& mu, const MultiIndex& nu) {
        Weight w(mu.size());
        for (std::size_t i = 0; i < mu.size(); ++i) w[i] = static_cast<int>(mu[i]) - static_cast<int>(nu[i]);
        return w;
    };
    std::map<Weight, std::vector<const typename BiPoly<Scalar>::Terms::value_type*>> qByWeight;
    for (const auto& term : q.terms()) qByWeight[weightOf(term.first.first, term.first.second)].push_back(&term);

    std::map<MultiIndex, Scalar> integralCache;
    Scalar sum{};
    for (const auto& [kp, cp] : p.terms()) {
        auto it = qByWeight.find(weightOf(kp.first, kp.second));
        if (it == qByWeight.end()) continue;
        const Scalar pc = conjugate(cp);
        for (const auto* term : it->second) {
            MultiIndex combined = kp.second;
            for (unsigned i = 0; i <= n; ++i) combined[i] += term->first.first[i];
            auto [cached, inserted] = integralCache.try_emplace(combined);
            if (inserted) cached->second = fromGaussian<Scalar>(GaussianRational(scale * factorial(combined)));
            sum += pc * term->second * cached->second;
        }
    }
    return sum;
}

template <class Scalar>
double normL2(const BiPoly<Scalar>& p) {
    return std::sqrt(std::max(0.0, toComplex(innerL2(p, p)).real()));
}

/// ρ(g)p : z ↦ p(g* z).
NumericBiPoly groupAct(const Eigen::MatrixXcd& g, const NumericBiPoly& p);
ExactBiPoly groupAct(const ExactMatrix& g, const ExactBiPoly& p);

/// Haar-distributed unitary of size dim from a seeded complex Gaussian
/// matrix (QR with phase-corrected diagonal).
Eigen::MatrixXcd haarUnitary(unsigned dim, std::uint64_t seed);

/// Independent per-task seed derived from a base seed and a task index.
std::uint64_t deriveSeed(std::uint64_t base, std::uint64_t index);

/// Dense coefficient layout of V_k: index(μ,ν) = idx(μ)·M + idx(ν).
class MonomialBasis {
public:
    MonomialBasis(unsigned n, unsigned k);

    unsigned n() const { return n_; }
    unsigned k() const { return k_; }
    std::size_t holoCount() const { return holo_.size(); }
    std::size_t dimension() const { return holo_.size() * holo_.size(); }
    const std::vector<MultiIndex>& holo() const { return holo_; }
    std::size_t holoIndex(const MultiIndex& mu) const;

    Eigen::VectorXcd toDense(const NumericBiPoly& p) const;
    NumericBiPoly fromDense(const Eigen::VectorXcd& v) const;

    /// Fast |u*z|^{2k} coefficients in dense layout.
    Eigen::VectorXcd phiDense(const Vector<Complex>& u) const;
    /// ρ(g) on the dense layout: p(g⁻¹z) with g unitary.
    Eigen::VectorXcd act(const Eigen::MatrixXcd& g, const Eigen::VectorXcd& p) const;
    /// Sparse Hermitian L² Gram matrix on the dense layout.
    const std::vector<std::tuple<std::size_t, std::size_t, double>>& gramEntries() const { return gram_; }
    Complex inner(const Eigen::VectorXcd& p, const Eigen::VectorXcd& q) const;

private:
    unsigned n_;
    unsigned k_;
    std::vector<MultiIndex> holo_;
    std::map<MultiIndex, std::size_t> index_;
    std::vector<double> weights_;  // k!/μ!
    std::vector<std::tuple<std::size_t, std::size_t, double>> gram_;
};

struct OrbitRankResult {
    std::size_t rank = 0;
    std::size_t expected = 0;  // binomial(n+k,n)^2
    /// σ_rank / σ_{rank+1}; infinity when rank equals the number of columns.
    double gap = 0.0;
    std::vector<double> singularValues;
};

/// Real rank of {ρ(g) f_k} over sampleCount Haar-random g.
OrbitRankResult orbitRank(unsigned n, unsigned k, unsigned sampleCount, std::uint64_t seed);

nlohmann::json toJson(const ExactBiPoly& p);
nlohmann::json toJson(const NumericBiPoly& p);
ExactBiPoly exactBiPolyFromJson(const nlohmann::json& j);

}  // namespace ppmc
