#include "floq/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace floq {

namespace {

constexpr double kDirichletTol = 1e-10;

// Transfer across one constant-potential piece; kappa2 = lambda - V.
// Entries are analytic in kappa2, with a series branch near zero.
TransferMatrix segment_transfer(double length, double kappa2) {
    const double l = length;
    double c, s;  // cos-like and sin(kl)/k-like entries
    const double x = kappa2 * l * l;
    if (std::abs(x) < 1e-8) {
        c = 1.0 - x / 2.0 + x * x / 24.0;
        s = l * (1.0 - x / 6.0 + x * x / 120.0);
    } else if (kappa2 > 0.0) {
        const double k = std::sqrt(kappa2);
        c = std::cos(k * l);
        s = std::sin(k * l) / k;
    } else {
        const double mu = std::sqrt(-kappa2);
        c = std::cosh(mu * l);
        s = std::sinh(mu * l) / mu;
    }
    return {{{c, s}, {-kappa2 * s, c}}};
}

TransferMatrix matmul(const TransferMatrix& a, const TransferMatrix& b) {
    TransferMatrix r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return r;
}

std::vector<PotentialSegment> segments_of(const MetricEdge& e) {
    if (e.potential.empty()) return {{e.length, Rational(0)}};
    return e.potential;
}

// Overlay delta on top of the base profile; breakpoints are merged, a short
// delta is padded with zero.
std::vector<PotentialSegment> overlay(const MetricEdge& e,
                                      const std::vector<PotentialSegment>& delta) {
    std::vector<PotentialSegment> base = segments_of(e);
    if (delta.empty()) return base;
    Rational delta_total(0);
    for (const PotentialSegment& s : delta) delta_total += s.length;
    if (delta_total > e.length)
        throw std::invalid_argument("edge perturbation longer than the edge");
    std::vector<PotentialSegment> over = delta;
    if (delta_total < e.length) over.push_back({e.length - delta_total, Rational(0)});

    std::vector<PotentialSegment> out;
    std::size_t i = 0, j = 0;
    Rational ri = base[0].length, rj = over[0].length;
    while (i < base.size() && j < over.size()) {
        Rational step = std::min(ri, rj);
        if (step > 0) out.push_back({step, base[i].value + over[j].value});
        ri -= step;
        rj -= step;
        if (ri == 0 && ++i < base.size()) ri = base[i].length;
        if (rj == 0 && ++j < over.size()) rj = over[j].length;
    }
    return out;
}

TransferMatrix transfer_of(const std::vector<PotentialSegment>& segments, double lambda) {
    TransferMatrix m{{{1.0, 0.0}, {0.0, 1.0}}};
    for (const PotentialSegment& s : segments) {
        // later segments multiply on the left: they act after earlier ones
        m = matmul(segment_transfer(to_double(s.length), lambda - to_double(s.value)), m);
    }
    return m;
}

}  // namespace

void MetricGraph::check() const {
    if (dimension < 1) throw std::invalid_argument("MetricGraph: dimension must be positive");
    for (const MetricEdge& e : edges) {
        if (e.u < 0 || e.u >= vertex_count() || e.v < 0 || e.v >= vertex_count())
            throw std::invalid_argument("MetricGraph: edge endpoint out of range");
        if (static_cast<int>(e.shift.size()) != dimension)
            throw std::invalid_argument("MetricGraph: edge shift dimension mismatch");
        if (e.length <= 0) throw std::invalid_argument("MetricGraph: nonpositive edge length");
        if (!e.potential.empty()) {
            Rational total(0);
            for (const PotentialSegment& s : e.potential) {
                if (s.length <= 0)
                    throw std::invalid_argument("MetricGraph: nonpositive potential segment");
                total += s.length;
            }
            if (total != e.length)
                throw std::invalid_argument("MetricGraph: potential segments must span the edge");
        }
    }
}

TransferMatrix edge_transfer(const MetricEdge& e, double lambda) {
    return transfer_of(segments_of(e), lambda);
}

TransferMatrix edge_transfer_perturbed(const MetricEdge& e,
                                       const std::vector<PotentialSegment>& delta, double lambda) {
    return transfer_of(overlay(e, delta), lambda);
}

bool dirichlet_hit(const MetricEdge& e, double lambda) {
    return std::abs(edge_transfer(e, lambda)[0][1]) < kDirichletTol;
}

QuantumReduction reduce(const MetricGraph& g, double lambda,
                        const std::vector<EdgePerturbation>& perturbations) {
    g.check();
    std::vector<int> offending;
    for (std::size_t i = 0; i < g.edges.size(); ++i)
        if (dirichlet_hit(g.edges[i], lambda)) offending.push_back(static_cast<int>(i));
    for (const EdgePerturbation& p : perturbations) {
        if (p.edge < 0 || p.edge >= static_cast<int>(g.edges.size()))
            throw std::invalid_argument("reduce: perturbed edge index out of range");
        const MetricEdge& e = g.edges[static_cast<std::size_t>(p.edge)];
        if (std::abs(edge_transfer_perturbed(e, p.delta, lambda)[0][1]) < kDirichletTol)
            offending.push_back(p.edge);
    }
    if (!offending.empty()) throw DirichletCollision(std::move(offending));

    QuantumReduction out;
    out.op.graph.dimension = g.dimension;
    out.op.graph.vertices = g.vertices;
    std::map<std::tuple<int, int, Shift>, Cx> acc;
    for (const MetricEdge& e : g.edges) {
        out.op.graph.edges.push_back({e.u, e.v, e.shift});
        TransferMatrix m = edge_transfer(e, lambda);
        acc[{e.u, e.v, e.shift}] += Cx(1.0 / m[0][1], 0.0);
        acc[{e.v, e.u, shift_neg(e.shift)}] += Cx(1.0 / m[0][1], 0.0);
        Shift zero = zero_shift(g.dimension);
        acc[{e.u, e.u, zero}] += Cx(-m[0][0] / m[0][1], 0.0);
        acc[{e.v, e.v, zero}] += Cx(-m[1][1] / m[0][1], 0.0);
    }
    for (const auto& [key, c] : acc) {
        if (c == Cx(0.0, 0.0)) continue;
        const auto& [u, v, shift] = key;
        out.op.terms.push_back({u, v, shift, c});
    }

    if (perturbations.empty()) return out;

    std::map<VertexSite, std::map<VertexSite, Cx>> delta_entries;
    for (const EdgePerturbation& p : perturbations) {
        const MetricEdge& e = g.edges[static_cast<std::size_t>(p.edge)];
        if (static_cast<int>(p.cell.size()) != g.dimension)
            throw std::invalid_argument("reduce: perturbation cell dimension mismatch");
        TransferMatrix m0 = edge_transfer(e, lambda);
        TransferMatrix m1 = edge_transfer_perturbed(e, p.delta, lambda);
        VertexSite a{e.u, p.cell};
        VertexSite b{e.v, shift_add(p.cell, e.shift)};
        const double off = 1.0 / m1[0][1] - 1.0 / m0[0][1];
        delta_entries[a][b] += Cx(off, 0.0);
        delta_entries[b][a] += Cx(off, 0.0);
        delta_entries[a][a] += Cx(-m1[0][0] / m1[0][1] + m0[0][0] / m0[0][1], 0.0);
        delta_entries[b][b] += Cx(-m1[1][1] / m1[0][1] + m0[1][1] / m0[0][1], 0.0);
    }
    LocalPerturbationX b;
    b.dimension = g.dimension;
    std::set<VertexSite> sites;
    for (const auto& [s, row] : delta_entries) {
        sites.insert(s);
        for (const auto& [t, c] : row) sites.insert(t);
    }
    b.sites.assign(sites.begin(), sites.end());
    const int msize = b.size();
    b.matrix.assign(static_cast<std::size_t>(msize), std::vector<Cx>(static_cast<std::size_t>(msize)));
    for (int i = 0; i < msize; ++i) {
        auto row = delta_entries.find(b.sites[static_cast<std::size_t>(i)]);
        if (row == delta_entries.end()) continue;
        for (int j = 0; j < msize; ++j) {
            auto it = row->second.find(b.sites[static_cast<std::size_t>(j)]);
            if (it != row->second.end())
                b.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = it->second;
        }
    }
    out.perturbation = std::move(b);
    return out;
}

EdgeSolutionCoeffs extend_to_edges(const MetricGraph& g, double lambda,
                                   const LatticeFunctionX& vertex_values) {
    QuantumReduction red = reduce(g, lambda);
    LatticeFunctionX residual = floq::apply(red.op, vertex_values);
    double maxval = 0.0;
    for (const auto& [site, v] : vertex_values.values) maxval = std::max(maxval, std::abs(v));
    // The vertex equation is checked where it is testable: at sites whose
    // whole stencil lies inside the support (a truncation window's rim is
    // allowed to disagree, matching the uniqueness claim's scope).
    for (const auto& [site, v] : residual.values) {
        if (std::abs(v) <= 1e-9 * std::max(1.0, maxval)) continue;
        bool interior = true;
        for (const VertexSite& s : x_support(red.op, site))
            interior = interior && vertex_values.values.count(s) > 0;
        if (interior)
            throw std::invalid_argument("extend_to_edges: vertex values violate A(lambda) f = 0");
    }

    EdgeSolutionCoeffs out;
    out.lambda = lambda;
    // Every edge copy with a nonzero endpoint gets its Dirichlet interpolant;
    // zero-zero edges stay zero.
    std::set<EdgeCopyRef> touched;
    for (const auto& [site, v] : vertex_values.values) {
        for (std::size_t i = 0; i < g.edges.size(); ++i) {
            const MetricEdge& e = g.edges[i];
            if (e.u == site.vertex) touched.insert({static_cast<int>(i), site.cell});
            if (e.v == site.vertex)
                touched.insert({static_cast<int>(i), shift_sub(site.cell, e.shift)});
        }
    }
    for (const EdgeCopyRef& ref : touched) {
        const MetricEdge& e = g.edges[static_cast<std::size_t>(ref.edge)];
        TransferMatrix m = edge_transfer(e, lambda);
        Cx fu = vertex_values.at(VertexSite{e.u, ref.cell});
        Cx fv = vertex_values.at(VertexSite{e.v, shift_add(ref.cell, e.shift)});
        if (fu == Cx(0.0, 0.0) && fv == Cx(0.0, 0.0)) continue;
        Cx derivative = (fv - m[0][0] * fu) / m[0][1];
        out.coeffs[ref] = {fu, derivative};
    }
    return out;
}

std::pair<Cx, Cx> edge_solution_at(const MetricGraph& g, const EdgeSolutionCoeffs& sol,
                                   const EdgeCopyRef& ref, double x) {
    const MetricEdge& e = g.edges[static_cast<std::size_t>(ref.edge)];
    auto it = sol.coeffs.find(ref);
    Cx value(0.0, 0.0), deriv(0.0, 0.0);
    if (it != sol.coeffs.end()) {
        value = it->second.first;
        deriv = it->second.second;
    }
    // Walk the constant pieces up to coordinate x.
    double remaining = x;
    for (const PotentialSegment& s : segments_of(e)) {
        double len = to_double(s.length);
        double step = std::min(len, remaining);
        if (step > 0.0) {
            TransferMatrix m = segment_transfer(step, sol.lambda - to_double(s.value));
            Cx nv = m[0][0] * value + m[0][1] * deriv;
            Cx nd = m[1][0] * value + m[1][1] * deriv;
            value = nv;
            deriv = nd;
        }
        remaining -= step;
        if (remaining <= 0.0) break;
    }
    return {value, deriv};
}

Cx kirchhoff_residual(const MetricGraph& g, const EdgeSolutionCoeffs& sol, const VertexSite& site) {
    Cx acc(0.0, 0.0);
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const MetricEdge& e = g.edges[i];
        if (e.u == site.vertex) {
            EdgeCopyRef ref{static_cast<int>(i), site.cell};
            auto it = sol.coeffs.find(ref);
            if (it != sol.coeffs.end()) acc += it->second.second;  // outgoing: +f'(start)
        }
        if (e.v == site.vertex) {
            EdgeCopyRef ref{static_cast<int>(i), shift_sub(site.cell, e.shift)};
            auto it = sol.coeffs.find(ref);
            if (it != sol.coeffs.end()) {
                TransferMatrix m = edge_transfer(e, sol.lambda);
                Cx fe = m[1][0] * it->second.first + m[1][1] * it->second.second;
                acc -= fe;  // outgoing at the end: -f'(end)
            }
        }
    }
    return acc;
}

MetricGraph subdivide_safe(const MetricGraph& g, double lambda) {
    g.check();
    bool any = false;
    for (const MetricEdge& e : g.edges) any = any || dirichlet_hit(e, lambda);
    if (!any) return g;

    constexpr double kEps = 1e-6;
    MetricGraph out;
    out.dimension = g.dimension;
    out.vertices = g.vertices;
    std::set<std::string> used(g.vertices.begin(), g.vertices.end());
    long total_cuts = 0;

    auto fresh_vertex = [&](int edge_idx, int k) {
        std::string base = "cut" + std::to_string(edge_idx) + "_" + std::to_string(k);
        std::string name = base;
        int suffix = 0;
        while (used.count(name)) name = base + "_" + std::to_string(++suffix);
        used.insert(name);
        out.vertices.push_back(name);
        return static_cast<int>(out.vertices.size()) - 1;
    };

    for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
        const MetricEdge& e = g.edges[ei];
        if (!dirichlet_hit(e, lambda)) {
            out.edges.push_back(e);
            continue;
        }
        // Cut at potential breakpoints, then cut each constant piece short
        // enough that its Dirichlet spectrum starts above lambda.
        std::vector<PotentialSegment> pieces;
        for (const PotentialSegment& s : segments_of(e)) {
            double kappa2 = lambda - to_double(s.value);
            long parts = 1;
            if (kappa2 > 0.0) {
                double hmax = std::numbers::pi / (std::sqrt(kappa2) + kEps);
                parts = static_cast<long>(std::floor(to_double(s.length) / hmax)) + 1;
            }
            total_cuts += parts;
            if (total_cuts > 1000000)
                throw std::invalid_argument("subdivide_safe: more than 10^6 cuts required");
            Rational piece_len = s.length / Rational(parts);
            for (long p = 0; p < parts; ++p) pieces.push_back({piece_len, s.value});
        }
        int prev = e.u;
        Shift zero = zero_shift(g.dimension);
        for (std::size_t p = 0; p < pieces.size(); ++p) {
            bool last = (p + 1 == pieces.size());
            int next = last ? e.v : fresh_vertex(static_cast<int>(ei), static_cast<int>(p));
            MetricEdge sub;
            sub.u = prev;
            sub.v = next;
            sub.shift = last ? e.shift : zero;
            sub.length = pieces[p].length;
            if (pieces[p].value != 0) sub.potential = {pieces[p]};
            out.edges.push_back(sub);
            prev = next;
        }
    }
    // All sub-edges must be safe now.
    for (const MetricEdge& e : out.edges)
        if (dirichlet_hit(e, lambda))
            throw std::logic_error("subdivide_safe: subdivision left a Dirichlet hit");
    return out;
}

namespace {

struct StrandStep {
    int edge = -1;
    bool forward = true;  // traversed from stored u to v
    int vertex = -1;      // vertex reached after the step
};

// Decomposes the quotient graph along `axis`: a single strand of edges with
// shift +-e_axis or 0 passing once through every vertex, plus per-vertex
// transverse edges (nonzero shift in the other coordinates only, or loops).
struct StrandDecomposition {
    std::vector<StrandStep> steps;
    int winding = 0;  // +-1 along axis after one period
    std::map<int, std::vector<int>> transverse;  // vertex -> edge indices
};

std::optional<StrandDecomposition> decompose_strand(const MetricGraph& g, int axis) {
    StrandDecomposition out;
    std::vector<int> longitudinal;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const MetricEdge& e = g.edges[i];
        bool moves = e.shift[static_cast<std::size_t>(axis)] != 0;
        bool transverse_only = !moves;
        if (moves && std::abs(e.shift[static_cast<std::size_t>(axis)]) > 1) return std::nullopt;
        bool longitudinal_edge = moves || (e.u != e.v);
        if (transverse_only && e.u == e.v) {
            out.transverse[e.u].push_back(static_cast<int>(i));
            continue;
        }
        if (longitudinal_edge) {
            longitudinal.push_back(static_cast<int>(i));
            continue;
        }
        return std::nullopt;
    }
    if (longitudinal.size() != g.vertices.size()) return std::nullopt;  // must be a cycle

    std::vector<std::vector<std::pair<int, bool>>> incident(g.vertices.size());
    for (int idx : longitudinal) {
        const MetricEdge& e = g.edges[static_cast<std::size_t>(idx)];
        incident[static_cast<std::size_t>(e.u)].emplace_back(idx, true);
        incident[static_cast<std::size_t>(e.v)].emplace_back(idx, false);
    }
    for (const auto& inc : incident)
        if (inc.size() != 2) return std::nullopt;

    int vertex = 0;
    int came_by = -1;
    int winding = 0;
    for (std::size_t step = 0; step < longitudinal.size(); ++step) {
        const auto& inc = incident[static_cast<std::size_t>(vertex)];
        std::pair<int, bool> chosen = (inc[0].first != came_by) ? inc[0] : inc[1];
        const MetricEdge& e = g.edges[static_cast<std::size_t>(chosen.first)];
        bool forward = chosen.second;
        int next = forward ? e.v : e.u;
        winding += (forward ? 1 : -1) * e.shift[static_cast<std::size_t>(axis)];
        out.steps.push_back({chosen.first, forward, next});
        came_by = chosen.first;
        vertex = next;
    }
    if (vertex != 0 || std::abs(winding) != 1) return std::nullopt;
    out.winding = winding;
    return out;
}

using Cmat = std::array<std::array<Cx, 2>, 2>;

Cmat cmul(const Cmat& a, const Cmat& b) {
    Cmat r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return r;
}

// Eigenvalues of a complex 2x2 matrix.
std::pair<Cx, Cx> eigen2(const Cmat& m) {
    Cx tr = m[0][0] + m[1][1];
    Cx det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    Cx disc = std::sqrt(tr * tr - 4.0 * det);
    return {(tr + disc) / 2.0, (tr - disc) / 2.0};
}

// Monodromy of the strand for one period; transverse edges (with the other
// multiplier substituted) enter as derivative-jump couplings at vertices.
Cmat strand_monodromy(const MetricGraph& g, const StrandDecomposition& strand, double lambda,
                      int axis, const std::vector<Cx>& other_multipliers) {
    Cmat m{{{Cx(1, 0), Cx(0, 0)}, {Cx(0, 0), Cx(1, 0)}}};
    for (const StrandStep& step : strand.steps) {
        const MetricEdge& e = g.edges[static_cast<std::size_t>(step.edge)];
        TransferMatrix t = edge_transfer(e, lambda);
        Cmat tc{};
        if (step.forward) {
            tc = {{{Cx(t[0][0], 0), Cx(t[0][1], 0)}, {Cx(t[1][0], 0), Cx(t[1][1], 0)}}};
        } else {
            // reversed traversal: R M^{-1} R with R = diag(1, -1)
            tc = {{{Cx(t[1][1], 0), Cx(t[0][1], 0)}, {Cx(t[1][0], 0), Cx(t[0][0], 0)}}};
        }
        m = cmul(tc, m);
        // Derivative jump from transverse edges at the vertex just reached.
        auto it = strand.transverse.find(step.vertex);
        if (it != strand.transverse.end()) {
            Cx gamma(0.0, 0.0);
            for (int idx : it->second) {
                const MetricEdge& te = g.edges[static_cast<std::size_t>(idx)];
                TransferMatrix tt = edge_transfer(te, lambda);
                Cx mult(1.0, 0.0);
                for (std::size_t d = 0; d < te.shift.size(); ++d) {
                    if (static_cast<int>(d) == axis) continue;
                    int s = te.shift[d];
                    std::size_t oi = d < static_cast<std::size_t>(axis) ? d : d - 1;
                    mult *= detail::complex_power(other_multipliers[oi], s);
                }
                gamma += (mult - tt[0][0]) / tt[0][1];
                gamma += (1.0 / mult - tt[1][1]) / tt[0][1];
            }
            Cmat jump{{{Cx(1, 0), Cx(0, 0)}, {-gamma, Cx(1, 0)}}};
            m = cmul(jump, m);
        }
    }
    return m;
}

bool match_point_sets(std::vector<Cx> a, std::vector<Cx> b, double tol) {
    if (a.size() != b.size()) return false;
    for (const Cx& x : a) {
        double best = 1e300;
        std::size_t bi = 0;
        for (std::size_t i = 0; i < b.size(); ++i) {
            double d = std::abs(x - b[i]);
            if (d < best) {
                best = d;
                bi = i;
            }
        }
        if (best > tol) return false;
        b.erase(b.begin() + static_cast<long>(bi));
    }
    return true;
}

std::vector<Cx> dedupe(std::vector<Cx> pts, double tol) {
    std::vector<Cx> out;
    for (const Cx& p : pts) {
        bool dup = false;
        for (const Cx& q : out) dup = dup || std::abs(p - q) < tol;
        if (!dup) out.push_back(p);
    }
    return out;
}

}  // namespace

bool fermi_equality_check(const MetricGraph& g, double lambda, int grid) {
    QuantumReduction red = reduce(g, lambda);

    if (g.dimension == 1) {
        auto strand = decompose_strand(g, 0);
        if (!strand)
            throw std::invalid_argument("fermi_equality_check: quotient is not a single strand");
        Cmat m = strand_monodromy(g, *strand, lambda, 0, {});
        auto [z1, z2] = eigen2(m);
        std::vector<Cx> quantum_side;
        for (Cx z : {z1, z2}) {
            if (std::abs(std::abs(z) - 1.0) < 1e-8) {
                quantum_side.push_back(strand->winding > 0 ? z : 1.0 / z);
            }
        }
        FermiSampleSet reduced = fermi_samples(red.op, 0.0, grid);
        std::vector<Cx> reduced_side;
        for (const auto& pt : reduced.points) reduced_side.push_back(pt[0]);
        return match_point_sets(dedupe(quantum_side, 1e-8), dedupe(reduced_side, 1e-8), 1e-8);
    }

    if (g.dimension != 2)
        throw std::invalid_argument("fermi_equality_check: only n <= 2 supported");
    auto strand = decompose_strand(g, 1);
    if (!strand)
        throw std::invalid_argument("fermi_equality_check: no transverse strand along axis 2");

    FermiSampleSet reduced = fermi_samples(red.op, 0.0, grid);
    for (int j = 0; j < grid; ++j) {
        double k = 2.0 * std::numbers::pi * j / grid;
        Cx z1(std::cos(k), std::sin(k));
        Cmat m = strand_monodromy(g, *strand, lambda, 1, {z1});
        auto [e1, e2] = eigen2(m);
        std::vector<Cx> quantum_side;
        for (Cx z : {e1, e2})
            if (std::abs(std::abs(z) - 1.0) < 1e-8)
                quantum_side.push_back(strand->winding > 0 ? z : 1.0 / z);
        std::vector<Cx> reduced_side;
        for (const auto& pt : reduced.points)
            if (std::abs(pt[0] - z1) < 1e-9) reduced_side.push_back(pt[1]);
        if (!match_point_sets(dedupe(quantum_side, 1e-8), dedupe(reduced_side, 1e-8), 1e-8))
            return false;
    }
    return true;
}

int quantum_support_bound(const MetricGraph& g, const std::vector<EdgeCopyRef>& perturbed_edges) {
    g.check();
    auto neighbors = [&](const VertexSite& s) {
        std::vector<VertexSite> out;
        for (const MetricEdge& e : g.edges) {
            if (e.u == s.vertex) out.push_back({e.v, shift_add(s.cell, e.shift)});
            if (e.v == s.vertex) out.push_back({e.u, shift_sub(s.cell, e.shift)});
        }
        return out;
    };
    auto dilate = [&](const std::set<VertexSite>& base) {
        std::set<VertexSite> out = base;
        for (const VertexSite& s : base)
            for (const VertexSite& t : neighbors(s)) out.insert(t);
        return out;
    };

    std::set<VertexSite> s_core;
    for (const EdgeCopyRef& ref : perturbed_edges) {
        if (ref.edge < 0 || ref.edge >= static_cast<int>(g.edges.size()))
            throw std::invalid_argument("quantum_support_bound: edge index out of range");
        const MetricEdge& e = g.edges[static_cast<std::size_t>(ref.edge)];
        s_core.insert({e.u, ref.cell});
        s_core.insert({e.v, ref.cell});
    }
    std::set<VertexSite> w_core;
    for (int v = 0; v < g.vertex_count(); ++v) w_core.insert({v, zero_shift(g.dimension)});

    std::set<VertexSite> s_tilde = dilate(s_core);
    std::set<VertexSite> w_tilde = dilate(w_core);
    int r_s = radius(s_tilde);
    int r_w = radius(w_tilde);
    return r_s + r_w * (2 * static_cast<int>(w_tilde.size()) + 1);
}

}  // namespace floq
