#pragma once

#include <optional>
#include <string>
#include <vector>

#include "floq/laurent.hpp"

namespace floq {

// unit * z^monomial * prod factors[i]^mult[i] reproduces the input when
// status == Exact. Factors carry nonnegative exponents.
struct Factorization {
    enum class Status { Exact, Unknown };
    GaussianRational unit = GaussianRational(1);
    Exponent monomial;
    std::vector<std::pair<LaurentPolyQ, int>> factors;
    Status status = Status::Unknown;
};

enum class Irreducibility { Irreducible, Reducible, Unknown };

struct IrreducibilityReport {
    Irreducibility status = Irreducibility::Unknown;
    std::optional<Factorization> witness;  // present when Reducible
    std::string note;                      // reason when Unknown
};

struct FactorBudget {
    int max_univariate_degree = 12;     // entry-level univariate cap
    int max_bivariate_total_degree = 8;  // entry-level bivariate cap
    long max_candidates = 200000;        // Kronecker divisor-combination cap
};

// Rational-coefficient irreducibility over Q: n = 1 by rational roots plus
// Kronecker factor interpolation, n = 2 by Kronecker substitution into one
// variable and factor recombination. Gaussian (truly complex) coefficients
// and n >= 3 report Unknown.
IrreducibilityReport irreducibility_check(const LaurentPolyQ& p, const FactorBudget& budget = {});

}  // namespace floq
