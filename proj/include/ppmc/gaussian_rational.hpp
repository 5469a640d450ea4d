#pragma once

#include <complex>
#include <ostream>
#include <string>

#include <gmpxx.h>

namespace ppmc {

/// Exact complex number with arbitrary-precision rational real and imaginary
/// parts. Values are kept canonical (lowest terms, positive denominators).
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long re) : re_(re) {}  // NOLINT: implicit integer promotion is intended
    GaussianRational(mpq_class re, mpq_class im = 0);

    static GaussianRational i() { return {mpq_class(0), mpq_class(1)}; }
    /// Parses "p/q" (real) or the serialized "p/q+r/s·i" form.
    static GaussianRational parse(const std::string& text);

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool isZero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool isReal() const { return sgn(im_) == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    /// |z|^2, exact.
    mpq_class norm() const { return re_ * re_ + im_ * im_; }
    std::complex<double> toComplex() const { return {re_.get_d(), im_.get_d()}; }

    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    GaussianRational operator-() const { return {-re_, -im_}; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    /// "num/den+num/den·i"; the imaginary sign is carried by the separator.
    std::string toString() const;

private:
    void canonicalize();

    mpq_class re_{0};
    mpq_class im_{0};
};

std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

/// n! as an exact rational.
mpq_class factorial(unsigned n);

/// "num/den" with the denominator always written.
std::string rationalString(const mpq_class& q);
mpq_class parseRational(const std::string& text);

}  // namespace ppmc
