#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "floq/scalar.hpp"

namespace floq {

// Group element g of Z^n.
using Shift = std::vector<int>;

inline Shift shift_add(const Shift& a, const Shift& b) {
    Shift r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Shift shift_sub(const Shift& a, const Shift& b) {
    Shift r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Shift shift_neg(const Shift& a) {
    Shift r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline int norm_inf(const Shift& a) {
    int m = 0;
    for (int x : a) m = std::max(m, std::abs(x));
    return m;
}

inline Shift zero_shift(int dim) { return Shift(static_cast<std::size_t>(dim), 0); }

// One vertex of the infinite graph: an orbit representative index into W plus
// the cell it sits in.
struct VertexSite {
    int vertex = 0;
    Shift cell;

    friend bool operator==(const VertexSite& a, const VertexSite& b) {
        return a.vertex == b.vertex && a.cell == b.cell;
    }
    friend bool operator<(const VertexSite& a, const VertexSite& b) {
        if (a.cell != b.cell) return a.cell < b.cell;
        return a.vertex < b.vertex;
    }
};

inline VertexSite translated(const VertexSite& s, const Shift& g) {
    return {s.vertex, shift_add(s.cell, g)};
}

struct Edge {
    int u = 0;
    int v = 0;
    Shift shift;
};

// Positions are only consumed by the half-space criterion; they are exact so
// the sign tests there stay exact.
struct PeriodicGraph {
    int dimension = 1;
    std::vector<std::string> vertices;  // the fundamental domain W, in input order
    std::vector<Edge> edges;
    std::map<int, std::vector<Rational>> positions;

    int vertex_count() const { return static_cast<int>(vertices.size()); }

    int vertex_index(const std::string& label) const {
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (vertices[i] == label) return static_cast<int>(i);
        throw std::invalid_argument("unknown vertex label: " + label);
    }

    // Degree within the infinite graph, computed from the quotient edge list.
    int degree(int v) const {
        int d = 0;
        for (const Edge& e : edges) {
            if (e.u == v) ++d;
            if (e.v == v) ++d;  // self-loops with a shift count twice: two incidences
        }
        return d;
    }

    void check_edges() const {
        std::set<std::pair<std::pair<int, int>, Shift>> seen;
        for (const Edge& e : edges) {
            if (e.u < 0 || e.u >= vertex_count() || e.v < 0 || e.v >= vertex_count())
                throw std::invalid_argument("edge endpoint out of range");
            if (static_cast<int>(e.shift.size()) != dimension)
                throw std::invalid_argument("edge shift dimension mismatch");
            auto key = std::make_pair(std::make_pair(e.u, e.v), e.shift);
            auto alt = std::make_pair(std::make_pair(e.v, e.u), shift_neg(e.shift));
            if (seen.count(key) || seen.count(alt))
                throw std::invalid_argument("duplicate edge under (u,v,g) ~ (v,u,-g)");
            seen.insert(key);
        }
    }
};

// One hopping term: (A f)(u at cell c) += coeff * f(v at cell c + shift).
template <class C>
struct Term {
    int u = 0;
    int v = 0;
    Shift shift;
    C coeff;
};

template <class C>
struct PeriodicOperator {
    PeriodicGraph graph;
    std::vector<Term<C>> terms;

    int dimension() const { return graph.dimension; }
    int vertex_count() const { return graph.vertex_count(); }
};

// Finitely supported function on vertex sites; absent keys are zero and zero
// values are never stored.
template <class C>
struct LatticeFunction {
    int dimension = 1;
    std::map<VertexSite, C> values;

    bool is_zero() const { return values.empty(); }

    C at(const VertexSite& s) const {
        auto it = values.find(s);
        return it == values.end() ? scalar_traits<C>::zero() : it->second;
    }

    void set(const VertexSite& s, const C& c) {
        if (static_cast<int>(s.cell.size()) != dimension)
            throw std::invalid_argument("site dimension mismatch");
        if (scalar_traits<C>::is_zero(c))
            values.erase(s);
        else
            values[s] = c;
    }

    void add(const VertexSite& s, const C& c) { set(s, at(s) + c); }
};

template <class C>
LatticeFunction<C> delta(int dimension, const VertexSite& s) {
    LatticeFunction<C> f;
    f.dimension = dimension;
    f.set(s, scalar_traits<C>::one());
    return f;
}

// Finite Hermitian perturbation B supported on `sites`.
template <class C>
struct LocalPerturbation {
    int dimension = 1;
    std::vector<VertexSite> sites;
    std::vector<std::vector<C>> matrix;

    int size() const { return static_cast<int>(sites.size()); }

    void check() const {
        std::set<VertexSite> uniq(sites.begin(), sites.end());
        if (uniq.size() != sites.size()) throw std::invalid_argument("duplicate perturbation sites");
        if (matrix.size() != sites.size()) throw std::invalid_argument("perturbation matrix shape");
        for (const auto& row : matrix)
            if (row.size() != sites.size()) throw std::invalid_argument("perturbation matrix shape");
        for (std::size_t i = 0; i < sites.size(); ++i)
            for (std::size_t j = 0; j < sites.size(); ++j)
                if (matrix[i][j] != scalar_traits<C>::conj(matrix[j][i]))
                    throw std::invalid_argument("perturbation matrix is not Hermitian");
    }
};

// r(S): the smallest N with S inside the cells [-N,N]^n. Empty set -> 0.
template <class Container>
int radius(const Container& sites) {
    int r = 0;
    for (const VertexSite& s : sites) r = std::max(r, norm_inf(s.cell));
    return r;
}

template <class C>
int radius(const LatticeFunction<C>& f) {
    int r = 0;
    for (const auto& [site, value] : f.values) r = std::max(r, norm_inf(site.cell));
    return r;
}

// supp_x(A) = { v : (A delta_v)(x) != 0 }, read off the term list translated
// to x's cell.
template <class C>
std::set<VertexSite> x_support(const PeriodicOperator<C>& op, const VertexSite& x) {
    if (x.vertex < 0 || x.vertex >= op.vertex_count())
        throw std::invalid_argument("x_support: vertex out of range");
    std::map<VertexSite, C> acc;
    for (const Term<C>& t : op.terms) {
        if (t.u != x.vertex) continue;
        VertexSite v{t.v, shift_add(x.cell, t.shift)};
        auto [it, inserted] = acc.emplace(v, t.coeff);
        if (!inserted) it->second += t.coeff;
    }
    std::set<VertexSite> out;
    for (const auto& [site, c] : acc)
        if (!scalar_traits<C>::is_zero(c)) out.insert(site);
    return out;
}

template <class C>
std::set<VertexSite> w_support(const PeriodicOperator<C>& op) {
    std::set<VertexSite> out;
    for (int w = 0; w < op.vertex_count(); ++w) {
        auto s = x_support(op, VertexSite{w, zero_shift(op.dimension())});
        out.insert(s.begin(), s.end());
    }
    return out;
}

// R = r(supp_W(A)); the stencil radius that every bound of the theory uses.
template <class C>
int stencil_radius(const PeriodicOperator<C>& op) {
    return radius(w_support(op));
}

template <class C>
LatticeFunction<C> apply(const PeriodicOperator<C>& op, const LatticeFunction<C>& f) {
    if (f.dimension != op.dimension())
        throw std::invalid_argument("apply: dimension mismatch");
    LatticeFunction<C> out;
    out.dimension = f.dimension;
    // (A f)(u at c) = sum over terms (u,v,g): coeff * f(v at c+g); iterate the
    // support of f and scatter each value to the sites it influences.
    for (const auto& [site, value] : f.values) {
        for (const Term<C>& t : op.terms) {
            if (t.v != site.vertex) continue;
            VertexSite target{t.u, shift_sub(site.cell, t.shift)};
            out.add(target, t.coeff * value);
        }
    }
    return out;
}

template <class C>
LatticeFunction<C> apply(const LocalPerturbation<C>& b, const LatticeFunction<C>& f) {
    if (f.dimension != b.dimension)
        throw std::invalid_argument("apply: dimension mismatch");
    LatticeFunction<C> out;
    out.dimension = f.dimension;
    for (int i = 0; i < b.size(); ++i) {
        C acc = scalar_traits<C>::zero();
        for (int j = 0; j < b.size(); ++j) acc += b.matrix[i][j] * f.at(b.sites[j]);
        out.add(b.sites[i], acc);
    }
    return out;
}

template <class C>
LatticeFunction<C> scale(const LatticeFunction<C>& f, const C& c) {
    LatticeFunction<C> out;
    out.dimension = f.dimension;
    for (const auto& [site, value] : f.values) out.add(site, value * c);
    return out;
}

template <class C>
LatticeFunction<C> sum(const LatticeFunction<C>& f, const LatticeFunction<C>& g) {
    LatticeFunction<C> out = f;
    for (const auto& [site, value] : g.values) out.add(site, value);
    return out;
}

template <class C>
LatticeFunction<C> translate(const LatticeFunction<C>& f, const Shift& h) {
    LatticeFunction<C> out;
    out.dimension = f.dimension;
    for (const auto& [site, value] : f.values) out.set(translated(site, h), value);
    return out;
}

// <f, g> = sum conj(f) g, exact over Gaussian rationals.
template <class C>
C inner(const LatticeFunction<C>& f, const LatticeFunction<C>& g) {
    C acc = scalar_traits<C>::zero();
    for (const auto& [site, value] : f.values) acc += scalar_traits<C>::conj(value) * g.at(site);
    return acc;
}

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

template <class C>
ValidationReport validate(const PeriodicOperator<C>& op) {
    ValidationReport report;
    const int n = op.dimension();
    const int w = op.vertex_count();
    for (const Term<C>& t : op.terms) {
        if (t.u < 0 || t.u >= w || t.v < 0 || t.v >= w) {
            report.violations.push_back("term references vertex index out of range");
            continue;
        }
        if (static_cast<int>(t.shift.size()) != n)
            report.violations.push_back("term shift dimension mismatch");
    }
    if (!report.violations.empty()) return report;

    // Symmetry: net coefficient of (u,v,g) must equal conj of net (v,u,-g).
    std::map<std::tuple<int, int, Shift>, C> net;
    for (const Term<C>& t : op.terms) {
        auto key = std::make_tuple(t.u, t.v, t.shift);
        auto [it, inserted] = net.emplace(key, t.coeff);
        if (!inserted) it->second += t.coeff;
    }
    for (const auto& [key, c] : net) {
        auto [u, v, g] = key;
        auto mirror = net.find(std::make_tuple(v, u, shift_neg(g)));
        C mc = mirror == net.end() ? scalar_traits<C>::zero() : mirror->second;
        if (c != scalar_traits<C>::conj(mc)) {
            report.violations.push_back("symmetry violation at term (" + std::to_string(u) + "," +
                                        std::to_string(v) + ")");
        }
    }
    try {
        op.graph.check_edges();
    } catch (const std::invalid_argument& e) {
        report.violations.push_back(e.what());
    }
    if (!op.graph.edges.empty()) {
        for (int v = 0; v < w; ++v)
            if (op.graph.degree(v) == 0)
                report.violations.push_back("vertex '" + op.graph.vertices[v] + "' has degree 0");
    }
    return report;
}

using PeriodicOperatorQ = PeriodicOperator<GaussianRational>;
using PeriodicOperatorX = PeriodicOperator<Cx>;
using LatticeFunctionQ = LatticeFunction<GaussianRational>;
using LatticeFunctionX = LatticeFunction<Cx>;
using LocalPerturbationQ = LocalPerturbation<GaussianRational>;
using LocalPerturbationX = LocalPerturbation<Cx>;

}  // namespace floq
