#pragma once

#include <complex>
#include <vector>

namespace floq {

// All complex roots of sum_k coeffs[k] z^k by Durand-Kerner iteration.
// Leading coefficients below drop_tol * max|coeff| are dropped first; exact
// roots at zero (trailing zero coefficients) are returned as zeros.
std::vector<std::complex<double>> polynomial_roots(std::vector<std::complex<double>> coeffs,
                                                   double tol = 1e-10,
                                                   double drop_tol = 1e-12);

}  // namespace floq
