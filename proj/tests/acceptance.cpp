// Acceptance suite: one check per shipped guarantee, one line of output each.
// Exit status is the number of failed criteria.

#include <functional>
#include <iostream>

#include "fixtures.hpp"

using namespace floq;
using fixtures::gq;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& label, const std::function<bool()>& body) {
    bool ok = false;
    std::string note;
    try {
        ok = body();
    } catch (const std::exception& e) {
        note = std::string(" (") + e.what() + ")";
    }
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << number << ": " << label << note
              << "\n";
    if (!ok) ++g_failures;
}

LatticeFunctionQ shifted_apply(const PeriodicOperatorQ& op, const GaussianRational& lambda,
                               const LatticeFunctionQ& u) {
    return sum(apply(op, u), scale(u, -lambda));
}

bool in_span(const std::vector<LatticeFunctionQ>& basis, const LatticeFunctionQ& f) {
    std::map<VertexSite, int> rows;
    auto touch = [&](const LatticeFunctionQ& g) {
        for (const auto& [site, v] : g.values) rows.emplace(site, static_cast<int>(rows.size()));
    };
    for (const auto& g : basis) touch(g);
    touch(f);
    std::vector<linsolve::SparseRow> sys(rows.size());
    std::vector<GaussianRational> rhs(rows.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (const auto& [site, v] : basis[j].values)
            sys[static_cast<std::size_t>(rows[site])].emplace_back(static_cast<int>(j), v);
    for (auto& row : sys)
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [site, v] : f.values) rhs[static_cast<std::size_t>(rows[site])] = v;
    return linsolve::solve(std::move(sys), std::move(rhs), static_cast<int>(basis.size()))
        .has_value();
}

// --- criterion bodies -------------------------------------------------------

bool golden_symbol_matrix() {
    PolyMatrixQ sym = symbol(fixtures::fig1_laplacian());
    if (sym.rows() != 4 || sym.cols() != 4) return false;

    PolyMatrixQ want(4, 4, 2);
    auto c = [](long n, long d) { return LaurentPolyQ::constant(2, fixtures::gq(n, d)); };
    for (int i = 0; i < 4; ++i) want.at(i, i) = c(1, 1);
    want.at(0, 1) = c(-1, 3);
    want.at(0, 2) = LaurentPolyQ::monomial(2, {0, 1}, gq(-1, 3));
    want.at(0, 3) = c(-1, 3);
    want.at(1, 0) = c(-1, 3);
    want.at(1, 2) = c(-1, 3);
    want.at(1, 3) = LaurentPolyQ::monomial(2, {1, 0}, gq(-1, 3));
    want.at(2, 0) = LaurentPolyQ::monomial(2, {0, -1}, gq(-1, 3));
    want.at(2, 1) = c(-1, 3);
    want.at(2, 3) = c(-1, 3);
    want.at(3, 0) = c(-1, 3);
    want.at(3, 1) = LaurentPolyQ::monomial(2, {-1, 0}, gq(-1, 3));
    want.at(3, 2) = c(-1, 3);
    if (!(sym == want)) return false;

    // canonical rendering, frozen strings
    const char* expected[4][4] = {
        {"1", "-1/3", "-1/3*z2", "-1/3"},
        {"-1/3", "1", "-1/3", "-1/3*z1"},
        {"-1/3*z2^-1", "-1/3", "1", "-1/3"},
        {"-1/3", "-1/3*z1^-1", "-1/3", "1"},
    };
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (poly_to_string(sym.at(i, j)) != expected[i][j]) return false;
    return true;
}

bool chain_band_interval() {
    BandList bl = bands(fixtures::chain_laplacian(), 64);
    return bl.bands.size() == 1 && std::abs(bl.bands[0].lo - 0.0) < 1e-8 &&
           std::abs(bl.bands[0].hi - 2.0) < 1e-8;
}

bool negative_pipeline() {
    PeriodicOperatorQ op = fixtures::chain_laplacian();
    LatticeFunctionQ psi = delta<GaussianRational>(1, {0, {0}});
    SolveReport rep = solve(op, gq(1, 2), psi);
    if (rep.outcome != SolveOutcome::NoCompactSolution) return false;
    if (rep.irreducibility != Irreducibility::Irreducible) return false;

    FloquetSurface fs = floquet_surface_poly(op, gq(1, 2));
    LaurentPolyQ base(1);
    base.add_term({2}, gq(1));
    base.add_term({1}, gq(-1));
    base.add_term({0}, gq(1));
    if (!(fs.delta1 == base * LaurentPolyQ::constant(1, gq(-1, 2)))) return false;

    return !solve_truncated_oracle(op, gq(1, 2), psi, 3).has_value();
}

bool positive_round_trips(bool check_degrees) {
    fixtures::Rng rng;
    PeriodicOperatorQ chain = fixtures::chain_laplacian();
    PeriodicOperatorQ fig = fixtures::fig1_laplacian();
    const GaussianRational chain_lambdas[] = {gq(1, 2), gq(1, 3), gq(3, 4), gq(5, 4), gq(7, 4)};
    const GaussianRational fig_lambdas[] = {gq(1, 2), gq(2, 3), gq(4, 3), gq(3, 2)};

    for (int it = 0; it < 200; ++it) {
        bool use_chain = it % 2 == 0;
        const PeriodicOperatorQ& op = use_chain ? chain : fig;
        GaussianRational lambda =
            use_chain ? chain_lambdas[it % 5] : fig_lambdas[it % 4];
        LatticeFunctionQ u0 =
            rng.function(op.dimension(), op.vertex_count(), use_chain ? 2 : 1,
                         rng.uniform(1, 3));
        if (u0.is_zero()) u0 = delta<GaussianRational>(op.dimension(),
                                                       {0, zero_shift(op.dimension())});
        LatticeFunctionQ psi = shifted_apply(op, lambda, u0);
        SolveTrace trace;
        SolveReport rep = solve(op, lambda, psi, &trace);
        if (rep.outcome != SolveOutcome::Solution) return false;
        if (!(rep.solution.values == u0.values)) return false;

        const int w = trace.vertex_count, R = trace.stencil, r = trace.r_source;
        if (*rep.achieved_radius > r + R * (2 * w + 1) - 1) return false;
        if (check_degrees) {
            if (trace.a1_sup > 2 * R) return false;
            if (trace.adjugate_sup > 2 * R * (w - 1)) return false;
            if (trace.det_sup > 2 * R * w) return false;
            if (trace.content_sup > 2 * R * w) return false;
            if (trace.numerator_sup > 2 * r + 2 * R * (w - 1)) return false;
            if (trace.result_sup > r + R * (2 * w + 1)) return false;
        }
    }
    return true;
}

bool plant_and_detect() {
    fixtures::Rng rng;
    PeriodicOperatorQ op = fixtures::chain_laplacian();
    BandList bl = bands(op, 64);
    const GaussianRational lambdas[] = {gq(1, 2), gq(1, 3), gq(2, 3), gq(3, 4), gq(5, 4),
                                        gq(4, 3), gq(3, 2), gq(5, 3), gq(7, 4), gq(1, 4)};
    for (int it = 0; it < 100; ++it) {
        GaussianRational lambda = lambdas[it % 10];
        if (membership(bl, to_double(lambda.re)).position != BandPosition::InBandInterior)
            return false;
        FloquetSurface fs = floquet_surface_poly(op, lambda);
        if (fs.flat_band) return false;
        if (irreducibility_check(fs.delta1).status != Irreducibility::Irreducible) return false;

        LatticeFunctionQ f = rng.function(1, 1, 2, rng.uniform(1, 3));
        if (f.is_zero()) f = delta<GaussianRational>(1, {0, {0}});
        LocalPerturbationQ b = plant_embedded(op, f, lambda);
        EmbeddedEigenReport rep = find_embedded(op, b, lambda);
        if (rep.basis.empty()) return false;
        if (!in_span(rep.basis, f)) return false;
        for (std::size_t i = 0; i < rep.basis.size(); ++i)
            if (!rep.bound_satisfied[i]) return false;
    }
    return true;
}

bool no_false_embeddings() {
    fixtures::Rng rng;
    PeriodicOperatorQ op = fixtures::z2_schroedinger();
    BandList bl = bands(op, 32);
    const GaussianRational lambdas[] = {gq(2), gq(5, 2), gq(3), gq(4), gq(9, 2)};
    for (const GaussianRational& lambda : lambdas)
        if (membership(bl, to_double(lambda.re)).position != BandPosition::InBandInterior)
            return false;

    for (int it = 0; it < 20; ++it) {
        // random local potential-type perturbation (diagonal, Hermitian)
        LocalPerturbationQ b;
        b.dimension = 2;
        std::set<VertexSite> sites;
        int nsites = rng.uniform(1, 3);
        while (static_cast<int>(sites.size()) < nsites)
            sites.insert({rng.uniform(0, 1), {rng.uniform(-1, 1), rng.uniform(-1, 1)}});
        b.sites.assign(sites.begin(), sites.end());
        b.matrix.assign(sites.size(), std::vector<GaussianRational>(sites.size()));
        for (std::size_t i = 0; i < sites.size(); ++i)
            b.matrix[i][i] = rng.rational_scalar(false);

        if (!halfspace_no_compact_support(op, b, {1, 0})) return false;
        for (const GaussianRational& lambda : lambdas) {
            EmbeddedEigenReport rep = find_embedded(op, b, lambda, 32);
            if (!rep.basis.empty()) return false;
        }
    }
    return true;
}

bool flat_band_detection() {
    PeriodicOperatorQ op = fixtures::pendant_pair();
    FloquetSurface fs = floquet_surface_poly(op, gq(0));
    if (!fs.flat_band) return false;

    DispersionGrid grid = dispersion(op, 32);
    for (const auto& [idx, ev] : grid.samples) {
        double nearest = 1e300;
        for (double v : ev) nearest = std::min(nearest, std::abs(v));
        if (nearest > 1e-10) return false;
    }

    LocalPerturbationQ none;
    none.dimension = 1;
    EmbeddedEigenReport rep = find_embedded(op, none, gq(0), 32);
    if (rep.basis.empty()) return false;
    LatticeFunctionQ pq;
    pq.dimension = 1;
    pq.set({1, {0}}, gq(1));
    pq.set({2, {0}}, gq(-1));
    return in_span(rep.basis, pq);
}

bool quantum_reduction() {
    MetricGraph g = fixtures::chain_metric();
    const double pi = std::numbers::pi;

    // 20 band-interior (spectrum-interior) energies avoiding Dirichlet hits
    for (int i = 0; i < 20; ++i) {
        double k = 0.25 + 2.8 * i / 19.0;  // stays inside (0, pi)
        if (!fermi_equality_check(g, k * k, 24)) return false;
    }

    // Dirichlet collision at pi^2 is refused, then succeeds after subdivision
    bool refused = false;
    try {
        reduce(g, pi * pi);
    } catch (const DirichletCollision&) {
        refused = true;
    }
    if (!refused) return false;
    MetricGraph cut = subdivide_safe(g, pi * pi);
    try {
        reduce(cut, pi * pi);
    } catch (const DirichletCollision&) {
        return false;
    }

    // subdivision invariance of the sampled surface
    for (int i = 0; i < 20; ++i) {
        double k = 0.25 + 2.8 * i / 19.0;
        double lambda = k * k;
        bool safe = true;
        for (const MetricEdge& e : cut.edges) safe = safe && !dirichlet_hit(e, lambda);
        if (!safe) continue;
        FermiSampleSet a = fermi_samples(reduce(g, lambda).op, 0.0, 8);
        FermiSampleSet b = fermi_samples(reduce(cut, lambda).op, 0.0, 8);
        std::vector<double> ka, kb;
        for (const auto& pt : a.points) ka.push_back(std::arg(pt[0]));
        for (const auto& pt : b.points) kb.push_back(std::arg(pt[0]));
        std::sort(ka.begin(), ka.end());
        std::sort(kb.begin(), kb.end());
        if (ka.size() != kb.size()) return false;
        for (std::size_t j = 0; j < ka.size(); ++j)
            if (std::abs(ka[j] - kb[j]) > 1e-8) return false;
    }
    return true;
}

bool floquet_round_trips() {
    fixtures::Rng rng;
    PeriodicOperatorQ ops[] = {fixtures::chain_laplacian(), fixtures::fig1_laplacian(),
                               fixtures::pendant_pair()};
    PolyMatrixQ syms[] = {symbol(ops[0]), symbol(ops[1]), symbol(ops[2])};
    for (int it = 0; it < 500; ++it) {
        const PeriodicOperatorQ& op = ops[it % 3];
        const PolyMatrixQ& sym = syms[it % 3];
        const int w = op.vertex_count();
        LatticeFunctionQ f = rng.function(op.dimension(), w, 3, 4);

        // inverse o transform = identity
        if (!(inverse_transform(transform(f, w)).values == f.values)) return false;

        // transform(apply(A, f)) = A(z) transform(f)
        auto lhs = transform(apply(op, f), w);
        auto rhs = apply_symbol(sym, transform(f, w));
        for (int v = 0; v < w; ++v)
            if (!(lhs.components[static_cast<std::size_t>(v)] ==
                  rhs.components[static_cast<std::size_t>(v)]))
                return false;

        // Parseval at the coefficient level
        Rational site_sum(0);
        for (const auto& [site, value] : f.values) site_sum += value.norm2();
        Rational coeff_sum(0);
        for (const auto& comp : transform(f, w).components)
            for (const auto& [e, c] : comp.terms()) coeff_sum += c.norm2();
        if (site_sum != coeff_sum) return false;
    }
    return true;
}

}  // namespace

int main() {
    criterion(1, "golden symbol matrix of the 4-vertex lattice, exact entries and rendering",
              golden_symbol_matrix);
    criterion(2, "chain band equals [0, 2] within 1e-8 at resolution 64", chain_band_interval);
    criterion(3, "chain at 1/2 with delta source: no compact solution, certified irreducible, "
                 "oracle inconsistent", negative_pipeline);
    criterion(4, "200 randomized solve round trips recover the source exactly within the bound",
              [] { return positive_round_trips(false); });
    criterion(5, "degree ledger of the proof pipeline holds on every randomized instance",
              [] { return positive_round_trips(true); });
    criterion(6, "100 plant/detect round trips: span containment and support bound",
              plant_and_detect);
    criterion(7, "half-space criterion and empty embedded basis on the Z^2 Schroedinger fixture",
              no_false_embeddings);
    criterion(8, "flat band detection on the pendant pair", flat_band_detection);
    criterion(9, "quantum reduction: surface equality, Dirichlet refusal, subdivision invariance",
              quantum_reduction);
    criterion(10, "500 exact Floquet round trips: inversion, intertwining, Parseval",
              floquet_round_trips);

    if (g_failures == 0)
        std::cout << "all criteria passed\n";
    else
        std::cout << g_failures << " criteria failed\n";
    return g_failures;
}
