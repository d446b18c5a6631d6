#include "floq/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace floq {

namespace {

using Cd = std::complex<double>;

double off_norm(const ComplexMatrix& a) {
    double s = 0.0;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) s += std::norm(a[i][j]);
    return std::sqrt(s);
}

double frob_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const auto& row : a)
        for (const Cd& v : row) s += std::norm(v);
    return std::sqrt(s);
}

// One unitary rotation in the (p,q) plane annihilating a[p][q].
void rotate(ComplexMatrix& a, std::size_t p, std::size_t q) {
    const Cd gamma = a[p][q];
    const double g = std::abs(gamma);
    if (g == 0.0) return;
    const double alpha = a[p][p].real();
    const double beta = a[q][q].real();
    const double tau = (beta - alpha) / (2.0 * g);
    const double t = tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const Cd phase = gamma / g;
    const Cd s = t * c * phase;

    const std::size_t n = a.size();
    // A <- A U, with U = I except U_pp = c, U_pq = s, U_qp = -conj(s), U_qq = c.
    for (std::size_t k = 0; k < n; ++k) {
        const Cd akp = a[k][p];
        const Cd akq = a[k][q];
        a[k][p] = c * akp - std::conj(s) * akq;
        a[k][q] = s * akp + c * akq;
    }
    // A <- U^H A.
    for (std::size_t k = 0; k < n; ++k) {
        const Cd apk = a[p][k];
        const Cd aqk = a[q][k];
        a[p][k] = c * apk - s * aqk;
        a[q][k] = std::conj(s) * apk + c * aqk;
    }
    a[p][q] = Cd(0.0, 0.0);
    a[q][p] = Cd(0.0, 0.0);
    a[p][p] = Cd(a[p][p].real(), 0.0);
    a[q][q] = Cd(a[q][q].real(), 0.0);
}

}  // namespace

std::vector<double> hermitian_eigenvalues(ComplexMatrix a, double hermitian_tol) {
    const std::size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("hermitian_eigenvalues: non-square matrix");
    if (n == 0) return {};

    double dev = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            dev = std::max(dev, std::abs(a[i][j] - std::conj(a[j][i])));
    if (dev > hermitian_tol * std::max(1.0, frob_norm(a)))
        throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian");
    // Fold roundoff asymmetry away before iterating.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            Cd m = 0.5 * (a[i][j] + std::conj(a[j][i]));
            a[i][j] = m;
            a[j][i] = std::conj(m);
        }
        a[i][i] = Cd(a[i][i].real(), 0.0);
    }

    const double target = 1e-12 * std::max(1.0, frob_norm(a));
    for (int sweep = 0; sweep < 60; ++sweep) {
        if (off_norm(a) <= target) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) rotate(a, p, q);
    }

    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i].real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace floq
