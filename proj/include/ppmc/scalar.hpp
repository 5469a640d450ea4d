#pragma once

#include <complex>
#include <string_view>

#include "ppmc/gaussian_rational.hpp"

namespace ppmc {

using Complex = std::complex<double>;

// Overload set shared by the exact and the double-precision coefficient modes.

inline bool isZero(const GaussianRational& z) { return z.isZero(); }
inline bool isZero(const Complex& z) { return z == Complex(0.0, 0.0); }

inline GaussianRational conjugate(const GaussianRational& z) { return z.conj(); }
inline Complex conjugate(const Complex& z) { return std::conj(z); }

inline Complex toComplex(const GaussianRational& z) { return z.toComplex(); }
inline Complex toComplex(const Complex& z) { return z; }

template <class Scalar>
Scalar fromGaussian(const GaussianRational& z);

template <>
inline GaussianRational fromGaussian<GaussianRational>(const GaussianRational& z) {
    return z;
}

template <>
inline Complex fromGaussian<Complex>(const GaussianRational& z) {
    return z.toComplex();
}

template <class Scalar>
constexpr std::string_view modeName();

template <>
constexpr std::string_view modeName<GaussianRational>() {
    return "exact";
}

template <>
constexpr std::string_view modeName<Complex>() {
    return "numeric";
}

}  // namespace ppmc
