#pragma once

#include <optional>
#include <string>
#include <vector>

#include "floq/solver.hpp"

namespace floq {

struct EmbeddedEigenReport {
    GaussianRational lambda;
    std::vector<LatticeFunctionQ> basis;   // exact nullspace basis, possibly empty
    int search_radius = 0;                 // rho = r(S) + R(2|W|+1)
    Membership band_status;                // numeric placement of lambda
    std::vector<bool> bound_satisfied;     // verify_bound per basis element
};

// Hermitian B with (A+B) f = lambda f, supported on supp(f) u supp((lambda-A)f).
// Requires real lambda and f != 0. An exact eigenfunction yields B = 0 (empty
// site list).
LocalPerturbationQ plant_embedded(const PeriodicOperatorQ& op, const LatticeFunctionQ& f,
                                  const GaussianRational& lambda);

// Exhaustive compactly-supported eigenfunction search for A+B at lambda within
// the certified box r(S) + R(2|W|+1). Under band-interior lambda and
// irreducible Delta1 the returned basis spans all l2 eigenfunctions.
EmbeddedEigenReport find_embedded(const PeriodicOperatorQ& op, const LocalPerturbationQ& b,
                                  const GaussianRational& lambda, int band_resolution = 64);

struct BoundCheck {
    bool satisfied = false;
    int margin = 0;  // r(S) + R(2|W|+1) - r(supp f)
};

BoundCheck verify_bound(const LatticeFunctionQ& f, const std::vector<VertexSite>& s,
                        const PeriodicOperatorQ& op);

// A finite symmetric operator on fresh vertices with a marked contact vertex.
struct PendantSpec {
    std::vector<std::string> labels;
    std::vector<std::vector<GaussianRational>> matrix;  // Hermitian, |labels|^2
    int contact = 0;
};

// Attaches one pendant copy at attach_vertex in every cell. New vertices
// inherit the attach vertex's position when positions are present.
PeriodicOperatorQ attach_decoration(const PeriodicOperatorQ& base, const PendantSpec& pendant,
                                    int attach_vertex, const GaussianRational& weight);

// Half-space criterion: P f = 0 has no compactly supported solutions when for
// every vertex y some site x != y has y in supp_x(P) with the rest of
// supp_x(P) strictly on the positive side of the hyperplane through y.
bool halfspace_no_compact_support(const PeriodicOperatorQ& op, const std::vector<long>& direction);

// Perturbed variant: periodic check away from supp(B), explicit check with the
// B couplings folded in on the finitely many sites near it.
bool halfspace_no_compact_support(const PeriodicOperatorQ& op, const LocalPerturbationQ& b,
                                  const std::vector<long>& direction);

}  // namespace floq
