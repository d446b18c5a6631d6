#pragma once

#include <complex>

#include "floq/rational.hpp"

namespace floq {

// The two coefficient fields of the library: exact Gaussian rationals for the
// certified pipeline, complex doubles for sampled spectra and quantum-graph
// reductions.
template <class C>
struct scalar_traits;

template <>
struct scalar_traits<GaussianRational> {
    static constexpr bool exact = true;
    static GaussianRational zero() { return {}; }
    static GaussianRational one() { return GaussianRational(1); }
    static bool is_zero(const GaussianRational& c) { return c.is_zero(); }
    static GaussianRational conj(const GaussianRational& c) { return c.conj(); }
    static std::complex<double> to_complex(const GaussianRational& c) { return c.to_complex(); }
    static double abs2(const GaussianRational& c) { return c.norm2().get_d(); }
};

template <>
struct scalar_traits<std::complex<double>> {
    static constexpr bool exact = false;
    static std::complex<double> zero() { return {0.0, 0.0}; }
    static std::complex<double> one() { return {1.0, 0.0}; }
    static bool is_zero(const std::complex<double>& c) { return c.real() == 0.0 && c.imag() == 0.0; }
    static std::complex<double> conj(const std::complex<double>& c) { return std::conj(c); }
    static std::complex<double> to_complex(const std::complex<double>& c) { return c; }
    static double abs2(const std::complex<double>& c) { return std::norm(c); }
};

using Cx = std::complex<double>;

}  // namespace floq
