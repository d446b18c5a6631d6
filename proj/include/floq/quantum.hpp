#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "floq/lattice.hpp"
#include "floq/spectrum.hpp"

namespace floq {

struct PotentialSegment {
    Rational length;
    Rational value;
};

// Edge of a periodic metric graph; empty segments mean zero potential.
struct MetricEdge {
    int u = 0;
    int v = 0;
    Shift shift;
    Rational length;
    std::vector<PotentialSegment> potential;
};

// Kirchhoff conditions at every vertex.
struct MetricGraph {
    int dimension = 1;
    std::vector<std::string> vertices;
    std::vector<MetricEdge> edges;

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    void check() const;
};

// Potential delta on one edge copy of the infinite graph.
struct EdgePerturbation {
    int edge = 0;
    Shift cell;  // which periodic copy
    std::vector<PotentialSegment> delta;
};

using TransferMatrix = std::array<std::array<double, 2>, 2>;

// Propagates (f, f') from edge start to end; det = 1 (Wronskian).
TransferMatrix edge_transfer(const MetricEdge& e, double lambda);

// Transfer with an additional potential delta overlaid on the edge.
TransferMatrix edge_transfer_perturbed(const MetricEdge& e,
                                       const std::vector<PotentialSegment>& delta, double lambda);

// True iff lambda is in the edge's Dirichlet spectrum (the (1,2) entry of the
// transfer matrix vanishes).
bool dirichlet_hit(const MetricEdge& e, double lambda);

struct DirichletCollision : std::runtime_error {
    explicit DirichletCollision(std::vector<int> offending)
        : std::runtime_error("lambda lies in the Dirichlet spectrum of some edges"),
          edges(std::move(offending)) {}
    std::vector<int> edges;
};

struct QuantumReduction {
    PeriodicOperatorX op;                           // A(lambda)
    std::optional<LocalPerturbationX> perturbation;  // B = A1(lambda) - A(lambda)
};

// Vertex-reduction of the quantum eigenproblem at energy lambda: Kirchhoff
// conditions become A(lambda) f = 0 on vertex values. With perturbations the
// difference operator B is returned alongside.
QuantumReduction reduce(const MetricGraph& g, double lambda,
                        const std::vector<EdgePerturbation>& perturbations = {});

struct EdgeCopyRef {
    int edge = 0;
    Shift cell;
    friend bool operator<(const EdgeCopyRef& a, const EdgeCopyRef& b) {
        if (a.edge != b.edge) return a.edge < b.edge;
        return a.cell < b.cell;
    }
};

// (value, derivative) at the edge start, one entry per edge copy meeting the
// support; absent copies are identically zero (both endpoint values vanish).
struct EdgeSolutionCoeffs {
    double lambda = 0.0;
    std::map<EdgeCopyRef, std::pair<Cx, Cx>> coeffs;
};

// Unique edgewise extension of vertex values satisfying A(lambda) f = 0; the
// residual of that vertex equation is checked to 1e-9 first.
EdgeSolutionCoeffs extend_to_edges(const MetricGraph& g, double lambda,
                                   const LatticeFunctionX& vertex_values);

// Value and derivative of the extended solution at coordinate x on an edge copy.
std::pair<Cx, Cx> edge_solution_at(const MetricGraph& g, const EdgeSolutionCoeffs& sol,
                                   const EdgeCopyRef& ref, double x);

// Sum of outgoing derivatives at a vertex site (the Kirchhoff residual).
Cx kirchhoff_residual(const MetricGraph& g, const EdgeSolutionCoeffs& sol, const VertexSite& site);

// Inserts degree-2 vertices until no edge hits the Dirichlet spectrum at
// lambda. Untouched when already safe; refuses above 10^6 cuts.
MetricGraph subdivide_safe(const MetricGraph& g, double lambda);

// Sampled equality of the quantum Floquet surface with the reduced
// combinatorial one: n = 1 compares reduced Fermi samples against the
// unit-modulus eigenvalues of the period monodromy; n = 2 does the same per
// z1 slice with the transverse edges folded into delta couplings.
bool fermi_equality_check(const MetricGraph& g, double lambda, int grid);

// r(S~) + r(W~)(2|W~|+1) with S~, W~ the endpoint/neighbor dilations.
int quantum_support_bound(const MetricGraph& g, const std::vector<EdgeCopyRef>& perturbed_edges);

}  // namespace floq
