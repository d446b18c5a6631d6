#include "floq/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace floq {

namespace {

bool is_rational_char(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+';
}

}  // namespace

Rational rational_from_string(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (!s.empty() && s.front() == '+') s.erase(s.begin());  // GMP rejects a leading plus
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    for (char c : s)
        if (!is_rational_char(c)) throw std::invalid_argument("bad rational literal: " + text);
    try {
        Rational q;
        if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + text);
        if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw;
    } catch (...) {
        throw std::invalid_argument("bad rational literal: " + text);
    }
}

std::string rational_to_string(const Rational& q) {
    return q.get_str();
}

Rational rationalize(double x, std::uint64_t max_denominator) {
    if (!std::isfinite(x)) throw std::invalid_argument("cannot rationalize non-finite value");
    // Stern-Brocot style continued fractions: p[k] = a*p[k-1] + p[k-2].
    bool neg = x < 0;
    double v = neg ? -x : x;
    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = v;
    for (int iter = 0; iter < 64; ++iter) {
        double fl = std::floor(frac);
        if (fl > 1e18) break;
        mpz_class a(static_cast<unsigned long>(fl));
        mpz_class p2 = a * p1 + p0;
        mpz_class q2 = a * q1 + q0;
        if (q2 > mpz_class(static_cast<unsigned long>(max_denominator))) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double rem = frac - fl;
        if (rem < 1e-15 * (1.0 + fl)) break;
        frac = 1.0 / rem;
    }
    if (q1 == 0) {  // never stepped: fall back to nearest integer
        p1 = mpz_class(static_cast<long>(std::llround(v)));
        q1 = 1;
    }
    Rational r(p1, q1);
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    if (b.is_zero()) throw std::invalid_argument("division by zero Gaussian rational");
    Rational n = b.norm2();
    GaussianRational num = a * b.conj();
    return {num.re / n, num.im / n};
}

GaussianRational gaussian_from_string(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("empty Gaussian rational literal");
    if (s.back() != 'i') return GaussianRational(rational_from_string(s));
    s.pop_back();
    if (s.empty()) return GaussianRational(Rational(0), Rational(1));
    // Split real and imaginary at the last top-level +/- (not a leading sign,
    // not the sign of a numerator right after '/').
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != '/' && s[i - 1] != '+' && s[i - 1] != '-') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) {
        std::string imtxt = s;
        if (imtxt.empty() || imtxt == "+") imtxt = "1";
        if (imtxt == "-") imtxt = "-1";
        return GaussianRational(Rational(0), rational_from_string(imtxt));
    }
    std::string retxt = s.substr(0, split);
    std::string imtxt = s.substr(split);
    if (imtxt == "+") imtxt = "1";
    if (imtxt == "-") imtxt = "-1";
    return GaussianRational(rational_from_string(retxt), rational_from_string(imtxt));
}

std::string gaussian_to_string(const GaussianRational& z) {
    if (z.im == 0) return rational_to_string(z.re);
    std::string out = rational_to_string(z.re);
    if (z.im > 0) out += "+";
    out += rational_to_string(z.im);
    out += " i";
    return out;
}

}  // namespace floq
