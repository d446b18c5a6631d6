#include "floq/laurent.hpp"

#include <sstream>

namespace floq {

namespace {

// Renders one coefficient for use in a signed term sequence. Gaussian
// coefficients with both parts are parenthesized so signs stay unambiguous.
std::string coeff_body(const GaussianRational& c, bool& negated) {
    negated = false;
    if (c.im == 0) {
        Rational r = c.re;
        if (r < 0) {
            negated = true;
            r = -r;
        }
        return rational_to_string(r);
    }
    if (c.re == 0) {
        Rational i = c.im;
        if (i < 0) {
            negated = true;
            i = -i;
        }
        if (i == 1) return "i";
        return rational_to_string(i) + "*i";
    }
    return "(" + gaussian_to_string(c) + ")";
}

}  // namespace

std::string poly_to_string(const LaurentPoly<GaussianRational>& p) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    // grlex-descending: largest term first.
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        bool negated = false;
        std::string body = coeff_body(c, negated);
        std::string monomial;
        for (int i = 0; i < p.dimension(); ++i) {
            if (e[static_cast<std::size_t>(i)] == 0) continue;
            if (!monomial.empty()) monomial += "*";
            monomial += "z" + std::to_string(i + 1);
            if (e[static_cast<std::size_t>(i)] != 1)
                monomial += "^" + std::to_string(e[static_cast<std::size_t>(i)]);
        }
        if (first) {
            if (negated) out << "-";
            first = false;
        } else {
            out << (negated ? " - " : " + ");
        }
        if (monomial.empty()) {
            out << body;
        } else if (body == "1") {
            out << monomial;
        } else {
            out << body << "*" << monomial;
        }
    }
    return out.str();
}

}  // namespace floq
