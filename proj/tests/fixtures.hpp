#pragma once

#include <random>

#include "floq/io.hpp"
#include "floq/perturb.hpp"

// Shared test fixtures: the 1D chain, the 4-vertex 2D lattice of the golden
// symbol test, the pendant-pair flat-band graph, a Z^2 discrete Schroedinger
// operator, and metric-graph counterparts.
namespace fixtures {

using namespace floq;

inline GaussianRational gq(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return GaussianRational(r);
}

// (A f)(j) = f(j) - (f(j-1) + f(j+1)) / 2
inline PeriodicOperatorQ chain_laplacian() {
    PeriodicOperatorQ op;
    op.graph.dimension = 1;
    op.graph.vertices = {"a"};
    op.graph.edges = {{0, 0, {1}}};
    op.graph.positions[0] = {Rational(0)};
    op.terms = {
        {0, 0, {0}, gq(1)},
        {0, 0, {1}, gq(-1, 2)},
        {0, 0, {-1}, gq(-1, 2)},
    };
    return op;
}

// Normalized Laplacian of the 2D periodic graph with fundamental domain
// {a, b, c, d}, all degrees 3; its symbol is the golden 4x4 matrix.
inline PeriodicOperatorQ fig1_laplacian() {
    PeriodicOperatorQ op;
    op.graph.dimension = 2;
    op.graph.vertices = {"a", "b", "c", "d"};
    op.graph.edges = {
        {0, 1, {0, 0}},  // a - b
        {0, 3, {0, 0}},  // a - d
        {0, 2, {0, 1}},  // a - c in the next cell up
        {1, 2, {0, 0}},  // b - c
        {1, 3, {1, 0}},  // b - d in the next cell right
        {2, 3, {0, 0}},  // c - d
    };
    GaussianRational third = gq(-1, 3);
    Shift z{0, 0};
    op.terms = {
        {0, 0, z, gq(1)},       {1, 1, z, gq(1)},      {2, 2, z, gq(1)},  {3, 3, z, gq(1)},
        {0, 1, z, third},       {1, 0, z, third},      {0, 3, z, third},  {3, 0, z, third},
        {0, 2, {0, 1}, third},  {2, 0, {0, -1}, third},
        {1, 2, z, third},       {2, 1, z, third},
        {1, 3, {1, 0}, third},  {3, 1, {-1, 0}, third},
        {2, 3, z, third},       {3, 2, z, third},
    };
    return op;
}

// Chain adjacency operator (A f)(j) = f(j-1) + f(j+1).
inline PeriodicOperatorQ chain_adjacency() {
    PeriodicOperatorQ op;
    op.graph.dimension = 1;
    op.graph.vertices = {"a"};
    op.graph.edges = {{0, 0, {1}}};
    op.graph.positions[0] = {Rational(0)};
    op.terms = {
        {0, 0, {1}, gq(1)},
        {0, 0, {-1}, gq(1)},
    };
    return op;
}

// Chain adjacency with two pendant vertices p, q hanging off a in every cell;
// delta_p - delta_q is a compactly supported 0-eigenfunction (flat band).
inline PeriodicOperatorQ pendant_pair() {
    PeriodicOperatorQ base = chain_adjacency();
    PendantSpec p{{"p"}, {{gq(0)}}, 0};
    PendantSpec q{{"q"}, {{gq(0)}}, 0};
    PeriodicOperatorQ out = attach_decoration(base, p, 0, gq(1));
    out = attach_decoration(out, q, 0, gq(1));
    return out;
}

// -Delta + V on Z^2 with V two-periodic in the first coordinate: fundamental
// domain {a, b} at offsets 0 and 1/2, V(a) = 0, V(b) = 1.
inline PeriodicOperatorQ z2_schroedinger() {
    PeriodicOperatorQ op;
    op.graph.dimension = 2;
    op.graph.vertices = {"a", "b"};
    op.graph.edges = {
        {0, 1, {0, 0}},
        {1, 0, {1, 0}},
        {0, 0, {0, 1}},
        {1, 1, {0, 1}},
    };
    op.graph.positions[0] = {Rational(0), Rational(0)};
    op.graph.positions[1] = {Rational(1, 2), Rational(0)};
    Shift z{0, 0};
    op.terms = {
        {0, 0, z, gq(4)},          // 4 + V(a), V(a) = 0
        {1, 1, z, gq(5)},          // 4 + V(b), V(b) = 1
        {0, 1, z, gq(-1)},         {1, 0, z, gq(-1)},
        {1, 0, {1, 0}, gq(-1)},    {0, 1, {-1, 0}, gq(-1)},
        {0, 0, {0, 1}, gq(-1)},    {0, 0, {0, -1}, gq(-1)},
        {1, 1, {0, 1}, gq(-1)},    {1, 1, {0, -1}, gq(-1)},
    };
    return op;
}

// Free chain quantum graph: one vertex, one loop edge of unit length.
inline MetricGraph chain_metric() {
    MetricGraph g;
    g.dimension = 1;
    g.vertices = {"a"};
    MetricEdge e;
    e.u = 0;
    e.v = 0;
    e.shift = {1};
    e.length = Rational(1);
    g.edges = {e};
    return g;
}

// Square-lattice quantum graph: one vertex, unit loop edges in both directions.
inline MetricGraph square_metric() {
    MetricGraph g;
    g.dimension = 2;
    g.vertices = {"a"};
    MetricEdge ex, ey;
    ex.u = ey.u = 0;
    ex.v = ey.v = 0;
    ex.shift = {1, 0};
    ey.shift = {0, 1};
    ex.length = ey.length = Rational(1);
    g.edges = {ex, ey};
    return g;
}

struct Rng {
    std::mt19937_64 gen{20240613};

    int uniform(int lo, int hi) {  // inclusive
        std::uniform_int_distribution<int> d(lo, hi);
        return d(gen);
    }

    GaussianRational rational_scalar(bool allow_zero = true) {
        int num = uniform(-4, 4);
        if (!allow_zero && num == 0) num = 1;
        int den = uniform(1, 3);
        return gq(num, den);
    }

    LatticeFunctionQ function(int dimension, int vertex_count, int rad, int nonzeros) {
        LatticeFunctionQ f;
        f.dimension = dimension;
        for (int i = 0; i < nonzeros; ++i) {
            VertexSite s;
            s.vertex = uniform(0, vertex_count - 1);
            for (int d = 0; d < dimension; ++d) s.cell.push_back(uniform(-rad, rad));
            f.add(s, rational_scalar(false));
        }
        return f;
    }
};

}  // namespace fixtures
