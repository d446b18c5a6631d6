#pragma once

#include <optional>

#include "floq/factor.hpp"
#include "floq/linsolve.hpp"
#include "floq/spectrum.hpp"

namespace floq {

enum class SolveOutcome { Solution, NoCompactSolution, FlatBandDegenerate };

// Degree bookkeeping of the adjugate/division pipeline; every field is an
// observed sup-norm that the proof bounds a priori.
struct SolveTrace {
    int r_source = 0;        // r = r(supp psi)
    int stencil = 0;         // R = r(supp_W(A))
    int vertex_count = 0;    // |W|
    int a1_sup = 0;          // entries of A1, bounded by 2R
    int adjugate_sup = 0;    // entries of adj(A1), bounded by 2R(|W|-1)
    int det_sup = 0;         // det(A1), bounded by 2R|W|
    int content_sup = 0;     // monomial content q, bounded by 2R|W|
    int numerator_sup = 0;   // adj(A1)*phi, bounded by 2r + 2R(|W|-1)
    int result_sup = 0;      // fhat, bounded by r + R(2|W|+1)
};

struct SolveReport {
    SolveOutcome outcome = SolveOutcome::NoCompactSolution;
    LatticeFunctionQ solution;            // meaningful when outcome == Solution
    int certified_bound = 0;              // rho = r + R(2|W|+1)
    std::optional<int> achieved_radius;   // radius of the solution support
    Irreducibility irreducibility = Irreducibility::Unknown;
    std::string irreducibility_note;
};

// rho = r_source + R(2|W|+1); any compactly supported solution has radius
// strictly below rho.
int support_bound(const PeriodicOperatorQ& op, int r_source);

// Decides (A - lambda) u = psi in compactly supported functions by the exact
// adjugate / monomial-content / divisibility pipeline, and returns u when it
// exists. NoCompactSolution upgrades to "no l2 solution at all" only under
// the reported irreducibility (and lambda interior), which is echoed.
SolveReport solve(const PeriodicOperatorQ& op, const GaussianRational& lambda,
                  const LatticeFunctionQ& psi, SolveTrace* trace = nullptr,
                  const FactorBudget& budget = {});

// Independent oracle: unknowns on cells |g|_inf <= rho, exact equations on
// cells |g|_inf <= rho + R, solved by exact sparse elimination. Returns a
// solution iff the truncated system is consistent. For rho >= radius(supp psi)
// this decides compact solvability within the box; an undersized rho
// typically reports inconsistency.
std::optional<LatticeFunctionQ> solve_truncated_oracle(const PeriodicOperatorQ& op,
                                                       const GaussianRational& lambda,
                                                       const LatticeFunctionQ& psi, int rho);

// All cells g with |g|_inf <= radius, in a fixed deterministic order.
std::vector<Shift> cells_in_box(int dimension, int radius);

}  // namespace floq
