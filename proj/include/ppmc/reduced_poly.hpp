#pragma once

#include <cstddef>
#include <vector>

#include "ppmc/gaussian_rational.hpp"

namespace ppmc {

/// Polynomial in the four commuting symbols x, v, x̄, v̄ of bidegree (k,k).
///
/// Entry (a,b) multiplies the monomial x^{k-a} v^a x̄^{k-b} v̄^b, so a counts
/// tangent factors on the holomorphic side and b on the antiholomorphic side.
/// Here x is the base-point functional and v a unit horizontal tangent
/// functional; everything the second-order calculus of Φ_k needs closes in
/// this ring.
class ReducedPoly {
public:
    ReducedPoly() : ReducedPoly(0) {}
    explicit ReducedPoly(unsigned k);

    /// Single monomial c · x^{k-a} v^a x̄^{k-b} v̄^b.
    static ReducedPoly monomial(unsigned k, unsigned a, unsigned b, GaussianRational c = 1);

    unsigned k() const { return k_; }
    unsigned size() const { return k_ + 1; }

    const GaussianRational& operator()(unsigned a, unsigned b) const { return coeffs_[index(a, b)]; }
    GaussianRational& operator()(unsigned a, unsigned b) { return coeffs_[index(a, b)]; }

    bool isZero() const;
    /// coeffs[b][a] == conj(coeffs[a][b]): the function is real valued.
    bool isReal() const;
    /// Number of nonzero entries.
    std::size_t support() const;

    ReducedPoly& operator+=(const ReducedPoly& o);
    ReducedPoly& operator-=(const ReducedPoly& o);
    ReducedPoly& operator*=(const GaussianRational& c);

    friend ReducedPoly operator+(ReducedPoly p, const ReducedPoly& q) { return p += q; }
    friend ReducedPoly operator-(ReducedPoly p, const ReducedPoly& q) { return p -= q; }
    friend ReducedPoly operator*(ReducedPoly p, const GaussianRational& c) { return p *= c; }
    friend ReducedPoly operator*(const GaussianRational& c, ReducedPoly p) { return p *= c; }
    /// Ring product; bidegrees add and grids convolve.
    friend ReducedPoly operator*(const ReducedPoly& p, const ReducedPoly& q);
    ReducedPoly operator-() const { return *this * GaussianRational(-1); }

    friend bool operator==(const ReducedPoly& p, const ReducedPoly& q);

private:
    std::size_t index(unsigned a, unsigned b) const;

    unsigned k_;
    std::vector<GaussianRational> coeffs_;
};

/// (x x̄)^k.
ReducedPoly xxbarPower(unsigned k);
ReducedPoly pow(const ReducedPoly& p, unsigned e);

/// Action of δ on the four generators along the curve cos t·x + sin t·(c v):
///   δx = cv, δv = -c̄x, δx̄ = c̄v̄, δv̄ = -cx̄.
/// c = 1 is the plain great-circle derivative, c = i differentiates in the
/// direction Jv. The coefficients are stored individually so that a
/// deliberately broken rule can be fed to the self test.
struct DeltaRule {
    GaussianRational dx{1};     // coefficient of v in δx
    GaussianRational dv{-1};    // coefficient of x in δv
    GaussianRational dxbar{1};  // coefficient of v̄ in δx̄
    GaussianRational dvbar{-1}; // coefficient of x̄ in δv̄

    static DeltaRule greatCircle(const GaussianRational& phase = 1);
    /// Great-circle rule with the sign of δv̄ flipped.
    static DeltaRule faulty();
};

/// Derivation extending the generator rule by Leibniz; preserves bidegree.
ReducedPoly deltaDerive(const ReducedPoly& p, const DeltaRule& rule = {});

enum class IsotropyOp { symmetry_s, root_j };

/// Eigenvalue of a reduced eigenspace: ±1 or ±i.
enum class Eigenvalue { plus_one, minus_one, plus_i, minus_i };

struct EigenLabel {
    IsotropyOp op;
    Eigenvalue value;

    EigenLabel(IsotropyOp op, Eigenvalue value);
};

GaussianRational eigenvalueScalar(Eigenvalue e);

/// ρ(s_x) replaces (v, v̄) by (-v, -v̄); ρ(j_x) by (iv, -iv̄).
ReducedPoly applyIsotropy(const ReducedPoly& p, IsotropyOp op);

/// Eigenvalue of monomial (a,b): (-1)^{a+b} for s, i^{a-b} for j.
Eigenvalue monomialEigenvalue(unsigned a, unsigned b, IsotropyOp op);

/// Keeps the monomials whose eigenvalue under `label.op` is `label.value`.
ReducedPoly projectEigen(const ReducedPoly& p, const EigenLabel& label);

}  // namespace ppmc
