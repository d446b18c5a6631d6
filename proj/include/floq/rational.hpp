#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace floq {

// Exact rational scalar. GMP keeps the arithmetic overflow-free; everything
// in the exact pipeline (division tests, nullspaces) relies on that.
using Rational = mpq_class;

Rational rational_from_string(const std::string& text);
std::string rational_to_string(const Rational& q);

// Continued-fraction approximation with bounded denominator. Used when a
// decimal lambda has to enter the exact pipeline.
Rational rationalize(double x, std::uint64_t max_denominator = 1000000);

inline double to_double(const Rational& q) { return q.get_d(); }

// Gaussian rational a + b*i. The exact coefficient field of the solver.
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(int v) : re(v), im(0) {}
    GaussianRational(Rational r) : re(std::move(r)), im(0) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussianRational conj() const { return {re, Rational(-im)}; }
    // |z|^2, exact.
    Rational norm2() const { return re * re + im * im; }

    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);

    GaussianRational& operator+=(const GaussianRational& b) { return *this = *this + b; }
    GaussianRational& operator-=(const GaussianRational& b) { return *this = *this - b; }
    GaussianRational& operator*=(const GaussianRational& b) { return *this = *this * b; }
    GaussianRational& operator/=(const GaussianRational& b) { return *this = *this / b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

// Parses "p/q", "p", "p/q+r/s i", "r/s i" (spaces around the trailing i optional).
GaussianRational gaussian_from_string(const std::string& text);
// Canonical form: real part alone when im == 0, otherwise "p/q+r/s i".
std::string gaussian_to_string(const GaussianRational& z);

}  // namespace floq
