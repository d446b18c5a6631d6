#pragma once

#include <complex>
#include <vector>

namespace floq {

using ComplexMatrix = std::vector<std::vector<std::complex<double>>>;

// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations, sorted
// non-decreasing. Throws std::invalid_argument when the input deviates from
// Hermitian by more than hermitian_tol.
std::vector<double> hermitian_eigenvalues(ComplexMatrix a, double hermitian_tol = 1e-9);

}  // namespace floq
