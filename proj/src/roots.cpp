#include "floq/roots.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace floq {

namespace {

using Cd = std::complex<double>;

Cd eval(const std::vector<Cd>& c, const Cd& z) {
    Cd acc{0.0, 0.0};
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
    return acc;
}

}  // namespace

std::vector<Cd> polynomial_roots(std::vector<Cd> coeffs, double tol, double drop_tol) {
    double maxc = 0.0;
    for (const Cd& c : coeffs) maxc = std::max(maxc, std::abs(c));
    if (maxc == 0.0) throw std::invalid_argument("polynomial_roots: zero polynomial");

    while (!coeffs.empty() && std::abs(coeffs.back()) <= drop_tol * maxc) coeffs.pop_back();
    if (coeffs.size() <= 1) return {};

    std::vector<Cd> roots;
    std::size_t zero_roots = 0;
    while (zero_roots < coeffs.size() - 1 && std::abs(coeffs[zero_roots]) <= drop_tol * maxc)
        ++zero_roots;
    roots.assign(zero_roots, Cd(0.0, 0.0));
    coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<long>(zero_roots));

    const std::size_t d = coeffs.size() - 1;
    if (d == 0) return roots;

    // Monic normalization.
    const Cd lead = coeffs.back();
    for (Cd& c : coeffs) c /= lead;

    double radius = 0.0;
    for (std::size_t i = 0; i < d; ++i) radius = std::max(radius, std::abs(coeffs[i]));
    radius = 1.0 + radius;

    std::vector<Cd> x(d);
    const Cd seed{0.4, 0.9};
    Cd acc{1.0, 0.0};
    for (std::size_t i = 0; i < d; ++i) {
        acc *= seed;
        x[i] = radius * acc / std::abs(acc) * (0.5 + 0.5 * (double(i) + 1.0) / double(d));
    }

    for (int iter = 0; iter < 1000; ++iter) {
        double max_step = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            Cd denom{1.0, 0.0};
            for (std::size_t j = 0; j < d; ++j)
                if (j != i) denom *= (x[i] - x[j]);
            if (denom == Cd(0.0, 0.0)) {
                x[i] += Cd(1e-8, 1e-8);
                continue;
            }
            Cd step = eval(coeffs, x[i]) / denom;
            x[i] -= step;
            max_step = std::max(max_step, std::abs(step));
        }
        if (max_step < tol * 1e-3) break;
    }

    roots.insert(roots.end(), x.begin(), x.end());
    return roots;
}

}  // namespace floq
