#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "floq/rational.hpp"

namespace floq::linsolve {

// One equation row: (column, coefficient) pairs sorted by column.
using SparseRow = std::vector<std::pair<int, GaussianRational>>;

// Solves rows * x = rhs exactly. Returns one solution (free variables zero)
// or nullopt when inconsistent. Deterministic: columns processed in order,
// pivot row = first remaining row with a nonzero entry in the column.
std::optional<std::vector<GaussianRational>> solve(std::vector<SparseRow> rows,
                                                   std::vector<GaussianRational> rhs, int cols);

// Exact nullspace basis, one primitive integer-scaled vector per free column.
// A sound modular full-rank certificate short-circuits the empty case.
std::vector<std::vector<GaussianRational>> nullspace(std::vector<SparseRow> rows, int cols);

// True only when the columns are certainly linearly independent over Q
// (verified mod a fixed prime with p = 3 mod 4, so F_p[i] is a field).
// False means "unknown", not "dependent".
bool columns_independent_mod_p(const std::vector<SparseRow>& rows, int cols);

}  // namespace floq::linsolve
