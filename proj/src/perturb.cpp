#include "floq/perturb.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace floq {

LocalPerturbationQ plant_embedded(const PeriodicOperatorQ& op, const LatticeFunctionQ& f,
                                  const GaussianRational& lambda) {
    if (f.is_zero()) throw std::invalid_argument("plant_embedded: zero eigenfunction");
    if (lambda.im != 0) throw std::invalid_argument("plant_embedded: lambda must be real");
    if (f.dimension != op.dimension())
        throw std::invalid_argument("plant_embedded: dimension mismatch");

    // g = (lambda - A) f; B must satisfy B f = g.
    LatticeFunctionQ g = sum(scale(f, lambda), scale(apply(op, f), GaussianRational(-1)));
    LocalPerturbationQ b;
    b.dimension = f.dimension;
    if (g.is_zero()) return b;  // f already an eigenfunction: B = 0

    std::set<VertexSite> support;
    for (const auto& [site, v] : f.values) support.insert(site);
    for (const auto& [site, v] : g.values) support.insert(site);
    b.sites.assign(support.begin(), support.end());

    GaussianRational ff = inner(f, f);
    GaussianRational gf = inner(g, f);  // real: lambda real and A symmetric
    const int m = b.size();
    b.matrix.assign(static_cast<std::size_t>(m),
                    std::vector<GaussianRational>(static_cast<std::size_t>(m)));
    for (int i = 0; i < m; ++i) {
        GaussianRational fi = f.at(b.sites[static_cast<std::size_t>(i)]);
        GaussianRational gi = g.at(b.sites[static_cast<std::size_t>(i)]);
        for (int j = 0; j < m; ++j) {
            GaussianRational fj = f.at(b.sites[static_cast<std::size_t>(j)]).conj();
            GaussianRational gj = g.at(b.sites[static_cast<std::size_t>(j)]).conj();
            b.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                (gi * fj + fi * gj) / ff - (gf / (ff * ff)) * fi * fj;
        }
    }
    b.check();
    return b;
}

EmbeddedEigenReport find_embedded(const PeriodicOperatorQ& op, const LocalPerturbationQ& b,
                                  const GaussianRational& lambda, int band_resolution) {
    if (lambda.im != 0) throw std::invalid_argument("find_embedded: lambda must be real");
    const int n = op.dimension();
    const int w = op.vertex_count();
    const int R = stencil_radius(op);
    const int rho = radius(b.sites) + R * (2 * w + 1);

    EmbeddedEigenReport report;
    report.lambda = lambda;
    report.search_radius = rho;
    report.band_status = membership(op, to_double(lambda.re), band_resolution);

    std::map<VertexSite, int> unknown_index;
    for (const Shift& g : cells_in_box(n, rho))
        for (int v = 0; v < w; ++v)
            unknown_index.emplace(VertexSite{v, g}, static_cast<int>(unknown_index.size()));

    std::map<VertexSite, int> site_row;  // B rows by site
    for (int i = 0; i < b.size(); ++i) site_row.emplace(b.sites[static_cast<std::size_t>(i)], i);

    std::vector<linsolve::SparseRow> rows;
    for (const Shift& g : cells_in_box(n, rho + R)) {
        for (int u = 0; u < w; ++u) {
            VertexSite x{u, g};
            std::map<int, GaussianRational> entries;
            for (const Term<GaussianRational>& t : op.terms) {
                if (t.u != u) continue;
                auto it = unknown_index.find(VertexSite{t.v, shift_add(g, t.shift)});
                if (it == unknown_index.end()) continue;
                entries[it->second] += t.coeff;
            }
            auto brow = site_row.find(x);
            if (brow != site_row.end()) {
                for (int j = 0; j < b.size(); ++j) {
                    const GaussianRational& c =
                        b.matrix[static_cast<std::size_t>(brow->second)][static_cast<std::size_t>(j)];
                    if (c.is_zero()) continue;
                    auto it = unknown_index.find(b.sites[static_cast<std::size_t>(j)]);
                    if (it == unknown_index.end())
                        throw std::logic_error("find_embedded: perturbation site escapes the box");
                    entries[it->second] += c;
                }
            }
            auto self = unknown_index.find(x);
            if (self != unknown_index.end()) entries[self->second] += -lambda;
            linsolve::SparseRow row;
            for (const auto& [col, v] : entries)
                if (!v.is_zero()) row.emplace_back(col, v);
            rows.push_back(std::move(row));
        }
    }

    auto basis = linsolve::nullspace(std::move(rows), static_cast<int>(unknown_index.size()));
    for (const auto& vec : basis) {
        LatticeFunctionQ f;
        f.dimension = n;
        for (const auto& [site, idx] : unknown_index) f.set(site, vec[static_cast<std::size_t>(idx)]);
        report.bound_satisfied.push_back(verify_bound(f, b.sites, op).satisfied);
        report.basis.push_back(std::move(f));
    }
    return report;
}

BoundCheck verify_bound(const LatticeFunctionQ& f, const std::vector<VertexSite>& s,
                        const PeriodicOperatorQ& op) {
    if (f.is_zero()) throw std::invalid_argument("verify_bound: zero function");
    BoundCheck check;
    int bound = radius(s) + stencil_radius(op) * (2 * op.vertex_count() + 1);
    check.margin = bound - radius(f);
    check.satisfied = check.margin > 0;
    return check;
}

PeriodicOperatorQ attach_decoration(const PeriodicOperatorQ& base, const PendantSpec& pendant,
                                    int attach_vertex, const GaussianRational& weight) {
    if (attach_vertex < 0 || attach_vertex >= base.vertex_count())
        throw std::invalid_argument("attach_decoration: bad attach vertex");
    const int m = static_cast<int>(pendant.labels.size());
    if (pendant.contact < 0 || pendant.contact >= m)
        throw std::invalid_argument("attach_decoration: bad contact index");
    if (static_cast<int>(pendant.matrix.size()) != m)
        throw std::invalid_argument("attach_decoration: pendant matrix shape");

    PeriodicOperatorQ out = base;
    const int offset = base.vertex_count();
    const int n = base.dimension();
    for (const std::string& label : pendant.labels) {
        for (const std::string& existing : out.graph.vertices)
            if (existing == label)
                throw std::invalid_argument("attach_decoration: vertex label collision: " + label);
        out.graph.vertices.push_back(label);
    }

    Shift zero = zero_shift(n);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const GaussianRational& c = pendant.matrix[static_cast<std::size_t>(i)]
                                                      [static_cast<std::size_t>(j)];
            if (c.is_zero()) continue;
            out.terms.push_back({offset + i, offset + j, zero, c});
            if (j > i) out.graph.edges.push_back({offset + i, offset + j, zero});
        }
    }
    if (!weight.is_zero()) {
        out.terms.push_back({attach_vertex, offset + pendant.contact, zero, weight});
        out.terms.push_back({offset + pendant.contact, attach_vertex, zero, weight.conj()});
    }
    out.graph.edges.push_back({attach_vertex, offset + pendant.contact, zero});

    if (!base.graph.positions.empty()) {
        auto at = base.graph.positions.find(attach_vertex);
        if (at != base.graph.positions.end())
            for (int i = 0; i < m; ++i) out.graph.positions[offset + i] = at->second;
    }
    return out;
}

namespace {

std::vector<Rational> site_position(const PeriodicGraph& graph, const VertexSite& s) {
    auto it = graph.positions.find(s.vertex);
    if (it == graph.positions.end())
        throw std::invalid_argument("halfspace criterion requires vertex positions");
    std::vector<Rational> pos(it->second);
    if (pos.size() != s.cell.size())
        throw std::invalid_argument("position dimension mismatch");
    for (std::size_t i = 0; i < pos.size(); ++i) pos[i] += s.cell[i];
    return pos;
}

// supp_x(A+B) for one site; the B couplings only act when x is one of its sites.
std::set<VertexSite> perturbed_support(const PeriodicOperatorQ& op, const LocalPerturbationQ* b,
                                       const VertexSite& x) {
    std::set<VertexSite> supp = x_support(op, x);
    if (b != nullptr) {
        for (int i = 0; i < b->size(); ++i) {
            if (!(b->sites[static_cast<std::size_t>(i)] == x)) continue;
            for (int j = 0; j < b->size(); ++j)
                if (!b->matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].is_zero())
                    supp.insert(b->sites[static_cast<std::size_t>(j)]);
        }
    }
    return supp;
}

// Does some admissible x != y witness the strict-positivity condition at y?
bool site_has_witness(const PeriodicOperatorQ& op, const LocalPerturbationQ* b,
                      const VertexSite& y, const std::vector<long>& direction) {
    std::set<VertexSite> candidates;
    for (const Term<GaussianRational>& t : op.terms)
        if (t.v == y.vertex) candidates.insert(VertexSite{t.u, shift_sub(y.cell, t.shift)});
    if (b != nullptr) {
        for (int i = 0; i < b->size(); ++i)
            for (int j = 0; j < b->size(); ++j)
                if (b->sites[static_cast<std::size_t>(j)] == y &&
                    !b->matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].is_zero())
                    candidates.insert(b->sites[static_cast<std::size_t>(i)]);
    }
    std::vector<Rational> ypos = site_position(op.graph, y);
    for (const VertexSite& x : candidates) {
        if (x == y) continue;
        std::set<VertexSite> supp = perturbed_support(op, b, x);
        if (!supp.count(y)) continue;  // net coefficient cancelled
        bool ok = true;
        for (const VertexSite& v : supp) {
            if (v == y) continue;
            std::vector<Rational> vpos = site_position(op.graph, v);
            Rational dot(0);
            for (std::size_t i = 0; i < vpos.size(); ++i)
                dot += (vpos[i] - ypos[i]) * Rational(direction[i]);
            if (dot <= 0) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

bool direction_valid(const PeriodicOperatorQ& op, const std::vector<long>& direction) {
    if (static_cast<int>(direction.size()) != op.dimension()) return false;
    for (long d : direction)
        if (d != 0) return true;
    return false;
}

}  // namespace

bool halfspace_no_compact_support(const PeriodicOperatorQ& op,
                                  const std::vector<long>& direction) {
    if (!direction_valid(op, direction))
        throw std::invalid_argument("halfspace: direction must be nonzero of matching dimension");
    for (int v = 0; v < op.vertex_count(); ++v)
        if (!site_has_witness(op, nullptr, VertexSite{v, zero_shift(op.dimension())}, direction))
            return false;
    return true;
}

bool halfspace_no_compact_support(const PeriodicOperatorQ& op, const LocalPerturbationQ& b,
                                  const std::vector<long>& direction) {
    if (!direction_valid(op, direction))
        throw std::invalid_argument("halfspace: direction must be nonzero of matching dimension");
    // Away from supp(B) the periodic witnesses apply verbatim.
    if (!halfspace_no_compact_support(op, direction)) return false;
    // Near supp(B) every admissible x can see the B couplings: check each
    // site whose cell lies within the stencil radius of a perturbed cell.
    const int R = stencil_radius(op);
    std::set<VertexSite> near;
    for (const VertexSite& s : b.sites)
        for (const Shift& g : cells_in_box(op.dimension(), R))
            for (int v = 0; v < op.vertex_count(); ++v)
                near.insert(VertexSite{v, shift_add(s.cell, g)});
    for (const VertexSite& y : near)
        if (!site_has_witness(op, &b, y, direction)) return false;
    return true;
}

}  // namespace floq
