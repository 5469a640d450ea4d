#include "ppmc/bipoly.hpp"

#include <limits>
#include <random>

namespace ppmc {

unsigned degree(const MultiIndex& mu) {
    unsigned d = 0;
    for (unsigned e : mu) d += e;
    return d;
}

mpq_class factorial(const MultiIndex& mu) {
    mpq_class f = 1;
    for (unsigned e : mu) f *= factorial(e);
    return f;
}

namespace {

void enumerate(unsigned vars, unsigned deg, MultiIndex& current, unsigned pos, std::vector<MultiIndex>& out) {
    if (pos + 1 == vars) {
        current[pos] = deg;
        out.push_back(current);
        return;
    }
    for (unsigned e = 0; e <= deg; ++e) {
        current[pos] = e;
        enumerate(vars, deg - e, current, pos + 1, out);
    }
}

}  // namespace

std::vector<MultiIndex> multiIndices(unsigned vars, unsigned deg) {
    std::vector<MultiIndex> out;
    if (vars == 0) return out;
    MultiIndex current(vars, 0);
    enumerate(vars, deg, current, 0, out);
    return out;
}

std::size_t monomialCount(unsigned n, unsigned k) {
    std::size_t c = 1;
    for (unsigned i = 1; i <= n; ++i) c = c * (k + i) / i;
    return c;
}

NumericBiPoly toNumeric(const ExactBiPoly& p) {
    NumericBiPoly r(p.n(), p.k());
    for (const auto& [key, c] : p.terms()) r.add(key.first, key.second, c.toComplex());
    return r;
}

NumericFrame toNumeric(const ExactFrame& f) {
    Vector<Complex> u(f.u.size()), w(f.w.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        u[i] = f.u[i].toComplex();
        w[i] = f.w[i].toComplex();
    }
    return {f.n, std::move(u), std::move(w)};
}

NumericFrame randomFrame(unsigned n, std::uint64_t seed) {
    const Eigen::MatrixXcd g = haarUnitary(n + 1, seed);
    Vector<Complex> u(n + 1), w(n + 1);
    for (unsigned i = 0; i <= n; ++i) {
        u[i] = g(i, n);
        w[i] = g(i, 0);
    }
    return {n, std::move(u), std::move(w)};
}

namespace {

// z_i -> (g* z)_i = Σ_j conj(g_ji) z_j; z̄_i -> Σ_j g_ji z̄_j.
template <class Scalar, class Entry>
BiPoly<Scalar> substitute(unsigned n, const BiPoly<Scalar>& p, Entry entry) {
    std::vector<Vector<Scalar>> holoForms(n + 1, Vector<Scalar>(n + 1)), antiForms(n + 1, Vector<Scalar>(n + 1));
    for (unsigned i = 0; i <= n; ++i) {
        for (unsigned j = 0; j <= n; ++j) {
            antiForms[i][j] = entry(j, i);
            holoForms[i][j] = conjugate(antiForms[i][j]);
        }
    }
    std::map<MultiIndex, HoloPoly<Scalar>> holoCache, antiCache;
    auto expand = [&](const MultiIndex& mu, const std::vector<Vector<Scalar>>& forms,
                      std::map<MultiIndex, HoloPoly<Scalar>>& cache) -> const HoloPoly<Scalar>& {
        auto [it, inserted] = cache.try_emplace(mu);
        if (inserted) {
            HoloPoly<Scalar> acc{{MultiIndex(n + 1, 0), Scalar(1)}};
            for (unsigned i = 0; i <= n; ++i) {
                if (mu[i] > 0) acc = holoProduct(acc, linearFormPower(forms[i], mu[i]));
            }
            it->second = std::move(acc);
        }
        return it->second;
    };
    BiPoly<Scalar> r(n, p.k());
    for (const auto& [key, c] : p.terms()) {
        addOuter(r, expand(key.first, holoForms, holoCache), expand(key.second, antiForms, antiCache), c);
    }
    return r;
}

}  // namespace

NumericBiPoly groupAct(const Eigen::MatrixXcd& g, const NumericBiPoly& p) {
    const unsigned dim = p.n() + 1;
    if (g.rows() != dim || g.cols() != dim) throw std::invalid_argument("groupAct: matrix size must be n+1");
    const double defect = (g.adjoint() * g - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
    if (defect > kUnitTolerance) throw std::invalid_argument("groupAct: matrix is not unitary");
    const MonomialBasis basis(p.n(), p.k());
    return basis.fromDense(basis.act(g, basis.toDense(p)));
}

ExactBiPoly groupAct(const ExactMatrix& g, const ExactBiPoly& p) {
    const unsigned dim = p.n() + 1;
    if (g.size() != dim) throw std::invalid_argument("groupAct: matrix size must be n+1");
    for (const auto& row : g) {
        if (row.size() != dim) throw std::invalid_argument("groupAct: matrix must be square");
    }
    for (unsigned i = 0; i < dim; ++i) {
        for (unsigned j = 0; j < dim; ++j) {
            GaussianRational s;
            for (unsigned l = 0; l < dim; ++l) s += g[l][i].conj() * g[l][j];
            if (!(s == GaussianRational(i == j ? 1 : 0))) throw std::invalid_argument("groupAct: matrix is not unitary");
        }
    }
    return substitute(p.n(), p, [&](unsigned r, unsigned c) { return g[r][c]; });
}

std::uint64_t deriveSeed(std::uint64_t base, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(base), static_cast<std::uint32_t>(base >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

Eigen::MatrixXcd haarUnitary(unsigned dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXcd z(dim, dim);
    for (unsigned j = 0; j < dim; ++j) {
        for (unsigned i = 0; i < dim; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            z(i, j) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (unsigned j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0.0) q.col(j) *= d / mag;
    }
    return q;
}

MonomialBasis::MonomialBasis(unsigned n, unsigned k) : n_(n), k_(k), holo_(multiIndices(n + 1, k)) {
    weights_.reserve(holo_.size());
    const double kf = factorial(k).get_d();
    for (std::size_t i = 0; i < holo_.size(); ++i) {
        index_[holo_[i]] = i;
        weights_.push_back(kf / factorial(holo_[i]).get_d());
    }
    // Gram entry between (μ,ν) and (μ',ν'): nonzero iff ν+μ' = μ+ν'.
    const mpq_class scale = factorial(n) / factorial(n + 2 * k);
    const std::size_t m = holo_.size();
    std::map<std::vector<int>, std::vector<std::size_t>> byWeight;
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            std::vector<int> w(n + 1);
            for (unsigned i = 0; i <= n; ++i) w[i] = static_cast<int>(holo_[a][i]) - static_cast<int>(holo_[b][i]);
            byWeight[w].push_back(a * m + b);
        }
    }
    std::map<MultiIndex, double> integrals;
    for (const auto& [w, members] : byWeight) {
        for (std::size_t i : members) {
            for (std::size_t j : members) {
                MultiIndex combined = holo_[i % m];
                for (unsigned l = 0; l <= n; ++l) combined[l] += holo_[j / m][l];
                auto [it, inserted] = integrals.try_emplace(std::move(combined));
                if (inserted) it->second = mpq_class(scale * factorial(it->first)).get_d();
                gram_.emplace_back(i, j, it->second);
            }
        }
    }
}

std::size_t MonomialBasis::holoIndex(const MultiIndex& mu) const {
    auto it = index_.find(mu);
    if (it == index_.end()) throw std::out_of_range("multi-index not in basis");
    return it->second;
}

Eigen::VectorXcd MonomialBasis::toDense(const NumericBiPoly& p) const {
    if (p.n() != n_ || p.k() != k_) throw std::invalid_argument("MonomialBasis: (n,k) mismatch");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dimension()));
    for (const auto& [key, c] : p.terms()) {
        v(static_cast<Eigen::Index>(holoIndex(key.first) * holoCount() + holoIndex(key.second))) = c;
    }
    return v;
}

NumericBiPoly MonomialBasis::fromDense(const Eigen::VectorXcd& v) const {
    NumericBiPoly p(n_, k_);
    const std::size_t m = holoCount();
    for (std::size_t i = 0; i < dimension(); ++i) p.add(holo_[i / m], holo_[i % m], v(static_cast<Eigen::Index>(i)));
    return p;
}

Eigen::VectorXcd MonomialBasis::phiDense(const Vector<Complex>& u) const {
    const std::size_t m = holoCount();
    Eigen::VectorXcd holo(static_cast<Eigen::Index>(m)), anti(static_cast<Eigen::Index>(m));
    for (std::size_t a = 0; a < m; ++a) {
        Complex h = weights_[a], c = weights_[a];
        for (unsigned i = 0; i <= n_; ++i) {
            const int e = static_cast<int>(holo_[a][i]);
            if (e == 0) continue;
            h *= std::pow(std::conj(u[i]), e);
            c *= std::pow(u[i], e);
        }
        holo(static_cast<Eigen::Index>(a)) = h;
        anti(static_cast<Eigen::Index>(a)) = c;
    }
    Eigen::VectorXcd out(static_cast<Eigen::Index>(m * m));
    for (std::size_t a = 0; a < m; ++a) {
        out.segment(static_cast<Eigen::Index>(a * m), static_cast<Eigen::Index>(m)) = holo(static_cast<Eigen::Index>(a)) * anti;
    }
    return out;
}

Eigen::VectorXcd MonomialBasis::act(const Eigen::MatrixXcd& g, const Eigen::VectorXcd& p) const {
    const auto m = static_cast<Eigen::Index>(holoCount());
    if (g.rows() != n_ + 1 || g.cols() != n_ + 1) throw std::invalid_argument("act: matrix size must be n+1");
    if (p.size() != m * m) throw std::invalid_argument("act: vector has wrong dimension");
    // column a holds the expansion of (g*z)^{μ_a}; the antiholomorphic side is its conjugate
    Eigen::MatrixXcd holoMap = Eigen::MatrixXcd::Zero(m, m);
    std::vector<HoloPoly<Complex>> forms(n_ + 1);
    for (unsigned i = 0; i <= n_; ++i) {
        for (unsigned j = 0; j <= n_; ++j) {
            if (g(j, i) == 0.0) continue;
            MultiIndex e(n_ + 1, 0);
            e[j] = 1;
            forms[i][e] = std::conj(g(j, i));
        }
    }
    for (Eigen::Index a = 0; a < m; ++a) {
        HoloPoly<Complex> acc{{MultiIndex(n_ + 1, 0), Complex(1.0)}};
        const MultiIndex& mu = holo_[static_cast<std::size_t>(a)];
        for (unsigned i = 0; i <= n_; ++i) {
            for (unsigned r = 0; r < mu[i]; ++r) acc = holoProduct(acc, forms[i]);
        }
        for (const auto& [nu, c] : acc) holoMap(static_cast<Eigen::Index>(holoIndex(nu)), a) = c;
    }
    const Eigen::MatrixXcd c = Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(p.data(), m, m);
    const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> r = holoMap * c * holoMap.conjugate().transpose();
    return Eigen::Map<const Eigen::VectorXcd>(r.data(), m * m);
}

Complex MonomialBasis::inner(const Eigen::VectorXcd& p, const Eigen::VectorXcd& q) const {
    Complex s = 0.0;
    for (const auto& [i, j, g] : gram_) {
        s += std::conj(p(static_cast<Eigen::Index>(i))) * q(static_cast<Eigen::Index>(j)) * g;
    }
    return s;
}

OrbitRankResult orbitRank(unsigned n, unsigned k, unsigned sampleCount, std::uint64_t seed) {
    if (k == 0) throw std::invalid_argument("orbitRank: k must be positive");
    const MonomialBasis basis(n, k);
    const std::size_t dim = basis.dimension();
    NumericBiPoly fk(n, k);
    {
        MultiIndex last(n + 1, 0);
        last[n] = k;
        fk.add(last, last, 1.0);
    }
    Eigen::MatrixXd rows(sampleCount, static_cast<Eigen::Index>(2 * dim));
    for (unsigned s = 0; s < sampleCount; ++s) {
        const Eigen::VectorXcd v = basis.toDense(groupAct(haarUnitary(n + 1, deriveSeed(seed, s)), fk));
        rows.row(s).head(static_cast<Eigen::Index>(dim)) = v.real().transpose();
        rows.row(s).tail(static_cast<Eigen::Index>(dim)) = v.imag().transpose();
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(rows);
    OrbitRankResult result;
    result.expected = dim;
    const auto& sv = svd.singularValues();
    result.singularValues.assign(sv.data(), sv.data() + sv.size());
    const double cutoff = sv.size() > 0 ? 1e-8 * sv(0) : 0.0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) result.rank += sv(i) > cutoff ? 1 : 0;
    if (result.rank == 0) {
        result.gap = 0.0;
    } else if (result.rank < static_cast<std::size_t>(sv.size())) {
        const double below = sv(static_cast<Eigen::Index>(result.rank));
        result.gap = below > 0.0 ? sv(static_cast<Eigen::Index>(result.rank) - 1) / below
                                 : std::numeric_limits<double>::infinity();
    } else {
        result.gap = std::numeric_limits<double>::infinity();
    }
    return result;
}

nlohmann::json toJson(const ExactBiPoly& p) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [key, c] : p.terms()) {
        terms.push_back({{"mu", key.first}, {"nu", key.second}, {"re", rationalString(c.re())},
                         {"im", rationalString(c.im())}});
    }
    return {{"n", p.n()}, {"k", p.k()}, {"mode", "exact"}, {"terms", terms}};
}

nlohmann::json toJson(const NumericBiPoly& p) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [key, c] : p.terms()) {
        terms.push_back({{"mu", key.first}, {"nu", key.second}, {"re", c.real()}, {"im", c.imag()}});
    }
    return {{"n", p.n()}, {"k", p.k()}, {"mode", "numeric"}, {"terms", terms}};
}

ExactBiPoly exactBiPolyFromJson(const nlohmann::json& j) {
    if (j.at("mode").get<std::string>() != "exact") throw std::invalid_argument("BiPoly JSON is not in exact mode");
    ExactBiPoly p(j.at("n").get<unsigned>(), j.at("k").get<unsigned>());
    for (const auto& t : j.at("terms")) {
        p.add(t.at("mu").get<MultiIndex>(), t.at("nu").get<MultiIndex>(),
              GaussianRational(parseRational(t.at("re").get<std::string>()),
                               parseRational(t.at("im").get<std::string>())));
    }
    return p;
}

}  // namespace ppmc
