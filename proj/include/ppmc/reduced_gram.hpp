#pragma once

#include <vector>

#include "ppmc/gaussian_rational.hpp"
#include "ppmc/reduced_poly.hpp"

namespace ppmc {

/// L² Gram matrix (normalized measure on the unit sphere of C^{n+1}) of the
/// reduced monomials of bidegree k, instantiated at x = z_{n+1}, v = z_1.
/// By U_{n+1}-invariance it is the same for every orthonormal frame.
class ReducedGram {
public:
    ReducedGram(unsigned n, unsigned k);

    unsigned n() const { return n_; }
    unsigned k() const { return k_; }

    /// ⟨m_{ab}, m_{a'b'}⟩; zero unless a-b = a'-b'.
    const mpq_class& operator()(unsigned a, unsigned b, unsigned a2, unsigned b2) const;

    /// Hermitian pairing Σ conj(p_i) G_ij q_j.
    GaussianRational inner(const ReducedPoly& p, const ReducedPoly& q) const;
    /// ‖p‖², exact.
    mpq_class normSquared(const ReducedPoly& p) const;

private:
    unsigned n_;
    unsigned k_;
    std::vector<mpq_class> entries_;  // indexed by ((a*(k+1)+b)*(k+1)+a2)*(k+1)+b2
};

/// Dense view: entry ((a,b),(a',b')) in row-major (a, then b) order.
std::vector<std::vector<mpq_class>> reducedGram(unsigned n, unsigned k);

/// Removes the L²-orthogonal projection of p onto the complex span of the
/// tangential monomials (1,0) and (0,1). For real p this is exactly the
/// normal component with respect to the orbit's tangent space.
ReducedPoly projectNormalReduced(const ReducedPoly& p, unsigned n);

/// The tangential part p - projectNormalReduced(p, n).
ReducedPoly projectTangentReduced(const ReducedPoly& p, unsigned n);

}  // namespace ppmc
