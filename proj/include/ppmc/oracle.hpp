#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "ppmc/bipoly.hpp"
#include "ppmc/geometry.hpp"

namespace ppmc {

/// A numeric ∇⊥α^{(1,1)} below this fraction of ‖α‖ counts as zero.
inline constexpr double kResidualThreshold = 1e-6;

/// Finite-difference steps and acceptance tolerances, one per derivative order.
struct OracleConfig {
    double h1 = 1e-4;
    double h2 = 1e-3;
    double h3 = 1e-2;
    double tolRel1 = 1e-7;
    double tolRel2 = 1e-5;
    double tolRel3 = 1e-3;
    std::uint64_t seed = 20241018;
    unsigned sampleCount = 50;

    void validate() const;
    double step(int order) const;
    double tolerance(int order) const;
};

/// Double-precision model of Σ a_k Φ_k with values in ⊕ V_k, stored as one
/// concatenated dense coefficient vector.
class NumericEmbedding {
public:
    explicit NumericEmbedding(const EmbeddingSpec& spec);

    unsigned n() const { return n_; }
    std::size_t dimension() const { return offsets_.back(); }

    Eigen::VectorXcd at(const Vector<Complex>& point) const;
    /// Real inner product Re⟨p,q⟩_{L²} summed over the blocks.
    double inner(const Eigen::VectorXcd& p, const Eigen::VectorXcd& q) const;
    double norm(const Eigen::VectorXcd& p) const;

    /// Block of the k-th term (index into the spec's term list).
    Eigen::VectorXcd block(const Eigen::VectorXcd& p, std::size_t term) const;
    /// Embeds a reduced grid per term (already scaled by a_k) into the
    /// concatenated layout at the given frame.
    Eigen::VectorXcd embed(const std::vector<ReducedPoly>& perTerm, const NumericFrame& frame) const;

    const std::vector<double>& coefficients() const { return coefficients_; }
    const std::vector<unsigned>& degrees() const { return degrees_; }

private:
    unsigned n_;
    std::vector<unsigned> degrees_;
    std::vector<double> coefficients_;
    std::vector<MonomialBasis> bases_;
    std::vector<std::size_t> offsets_;
};

/// Point on the great circle cos t·u + sin t·w.
Vector<Complex> greatCirclePoint(const NumericFrame& frame, double t);

/// Central finite difference of t ↦ Φ(cos t·u + sin t·w), order 1..3.
Eigen::VectorXcd fdCurveDerivative(const NumericEmbedding& phi, const NumericFrame& frame, int order, double h);

/// Orthonormal basis of the complex orthogonal complement of `point`, with
/// `first` (after orthogonalization) as its first element.
std::vector<Vector<Complex>> horizontalBasis(const Vector<Complex>& point, const Vector<Complex>& first);

struct NormalProjection {
    Eigen::VectorXcd normal;
    Eigen::VectorXcd tangential;
    double conditionNumber = 0.0;
    /// Residual of fitting `tangential` by the tangent basis, relative to the input norm.
    double tangentFitResidual = 0.0;
};

/// Projects onto the normal space at `point`, using the 2n tangent vectors
/// dΦ(w_j), dΦ(i w_j) from first-order central differences.
NormalProjection projectNormal(const NumericEmbedding& phi, const Vector<Complex>& point, const Eigen::VectorXcd& vec,
                               double h1);

/// Geodesic second derivative at `point` in horizontal direction d.
Eigen::VectorXcd fdGeodesicSecond(const NumericEmbedding& phi, const Vector<Complex>& point, const Vector<Complex>& d,
                                  double h2);

/// α(v, w2) by polarization, normally projected. w2 must be horizontal.
Eigen::VectorXcd fdAlphaPolarized(const NumericEmbedding& phi, const NumericFrame& frame,
                                  const Vector<Complex>& secondDirection, const OracleConfig& config);

/// ½(α(v,v) + α(Jv,Jv)) from geodesic second differences.
Eigen::VectorXcd fdAlpha11(const NumericEmbedding& phi, const Vector<Complex>& point, const Vector<Complex>& v,
                           const OracleConfig& config);

struct NablaResult {
    Eigen::VectorXcd raw;        // central difference of the projected α^{(1,1)} field
    Eigen::VectorXcd projected;  // its normal part at the base point
    double conditionNumber = 0.0;
    double tangentFitResidual = 0.0;
};

/// d/dt of α^{(1,1)}(v(t),v(t)) along the geodesic with v(t) = x'(t), then
/// projected to the normal space at t = 0.
NablaResult fdNablaAlpha11Diagonal(const NumericEmbedding& phi, const NumericFrame& frame, const OracleConfig& config);

/// Part of a direct-sum residual lying in the normal space of summand `term`.
Eigen::VectorXcd componentResidual(const EmbeddingSpec& spec, std::size_t term, const Eigen::VectorXcd& residual,
                                   const Vector<Complex>& point, double h1);

struct EquivarianceResult {
    double maxDeviation = 0.0;
    double orbitNormSpread = 0.0;
};

/// max |ρ(g)Φ(x) - Φ(gx)|_{L²} over seeded Haar samples, plus the spread of
/// |Φ(x)| over random points.
EquivarianceResult checkEquivariance(const EmbeddingSpec& spec, unsigned sampleCount, std::uint64_t seed);

/// ‖a - b‖ / ‖b‖ in the embedding's norm.
double relativeError(const NumericEmbedding& phi, const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

struct OracleCheck {
    std::string name;
    double value;
    double tolerance;
    bool pass;
};

nlohmann::json toJson(const OracleCheck& c);

/// Cross-checks every exact grid of the spec against the finite-difference
/// model at a seeded random frame.
std::vector<OracleCheck> runOracleSuite(const EmbeddingSpec& spec, const OracleConfig& config);

}  // namespace ppmc
