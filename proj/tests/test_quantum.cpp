#include <doctest.h>

#include "fixtures.hpp"

using namespace floq;
using fixtures::gq;

namespace {

MetricEdge unit_edge(Rational length = Rational(1)) {
    MetricEdge e;
    e.u = 0;
    e.v = 0;
    e.shift = {1};
    e.length = length;
    return e;
}

double det2(const TransferMatrix& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

Cx coeff_of(const PeriodicOperatorX& op, int u, int v, const Shift& g) {
    Cx acc(0, 0);
    for (const Term<Cx>& t : op.terms)
        if (t.u == u && t.v == v && t.shift == g) acc += t.coeff;
    return acc;
}

}  // namespace

TEST_CASE("edge transfer matrices") {
    const double pi = std::numbers::pi;
    MetricEdge e = unit_edge();

    // lambda = pi^2/4: [[0, 2/pi], [-pi/2, 0]]
    TransferMatrix m = edge_transfer(e, pi * pi / 4.0);
    CHECK(std::abs(m[0][0]) < 1e-12);
    CHECK(std::abs(m[0][1] - 2.0 / pi) < 1e-12);
    CHECK(std::abs(m[1][0] + pi / 2.0) < 1e-12);
    CHECK(std::abs(m[1][1]) < 1e-12);

    // lambda = V: momentum-free propagation [[1, l], [0, 1]]
    MetricEdge withv = unit_edge(Rational(3, 2));
    withv.potential = {{Rational(3, 2), Rational(2)}};
    TransferMatrix flat = edge_transfer(withv, 2.0);
    CHECK(std::abs(flat[0][0] - 1.0) < 1e-12);
    CHECK(std::abs(flat[0][1] - 1.5) < 1e-12);
    CHECK(std::abs(flat[1][0]) < 1e-12);
    CHECK(std::abs(flat[1][1] - 1.0) < 1e-12);

    // two equal-potential halves agree with the single segment
    MetricEdge split = unit_edge();
    split.potential = {{Rational(1, 2), Rational(5)}, {Rational(1, 2), Rational(5)}};
    MetricEdge whole = unit_edge();
    whole.potential = {{Rational(1), Rational(5)}};
    for (double lambda : {-3.0, 0.5, 5.0, 11.0}) {
        TransferMatrix a = edge_transfer(split, lambda);
        TransferMatrix b = edge_transfer(whole, lambda);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) CHECK(std::abs(a[i][j] - b[i][j]) < 1e-12);
    }

    // Wronskian: det = 1 across regimes, including hyperbolic
    fixtures::Rng rng;
    for (int it = 0; it < 40; ++it) {
        MetricEdge re = unit_edge(Rational(rng.uniform(1, 3), rng.uniform(2, 3)));
        if (it % 2) re.potential = {{re.length / 2, Rational(rng.uniform(-3, 3))},
                                    {re.length - re.length / 2, Rational(rng.uniform(-3, 3))}};
        double lambda = rng.uniform(-30, 50) / 10.0;
        CHECK(std::abs(det2(edge_transfer(re, lambda)) - 1.0) < 1e-12);
    }
}

TEST_CASE("dirichlet_hit") {
    const double pi = std::numbers::pi;
    CHECK(dirichlet_hit(unit_edge(), pi * pi));
    CHECK(!dirichlet_hit(unit_edge(), pi * pi / 4.0));
    CHECK(!dirichlet_hit(unit_edge(Rational(1, 2)), pi * pi));
}

TEST_CASE("reduce: free chain coefficients") {
    MetricGraph g = fixtures::chain_metric();
    const double k = 1.3;
    QuantumReduction red = reduce(g, k * k);
    CHECK(red.op.vertex_count() == 1);
    CHECK(std::abs(coeff_of(red.op, 0, 0, {1}) - Cx(k / std::sin(k), 0)) < 1e-12);
    CHECK(std::abs(coeff_of(red.op, 0, 0, {-1}) - Cx(k / std::sin(k), 0)) < 1e-12);
    CHECK(std::abs(coeff_of(red.op, 0, 0, {0}) -
                   Cx(-2.0 * k * std::cos(k) / std::sin(k), 0)) < 1e-12);

    // lambda = pi^2/4: diagonal exactly 0, off-diagonal pi/2, surface {+-i}
    const double pi = std::numbers::pi;
    QuantumReduction quarter = reduce(g, pi * pi / 4.0);
    CHECK(std::abs(coeff_of(quarter.op, 0, 0, {0})) < 1e-12);
    CHECK(std::abs(coeff_of(quarter.op, 0, 0, {1}) - Cx(pi / 2.0, 0)) < 1e-12);
    FermiSampleSet fs = fermi_samples(quarter.op, 0.0, 8);
    REQUIRE(fs.points.size() == 2);
    for (const auto& pt : fs.points) CHECK(std::abs(std::abs(pt[0].imag()) - 1.0) < 1e-8);

    // Dirichlet collision is refused with the offending edges listed
    CHECK_THROWS_AS(reduce(g, pi * pi), DirichletCollision);
}

TEST_CASE("reduce with a perturbed edge: B sits on the edge's endpoints") {
    MetricGraph g;
    g.dimension = 1;
    g.vertices = {"a", "b"};
    MetricEdge e1;
    e1.u = 0;
    e1.v = 1;
    e1.shift = {0};
    e1.length = Rational(1, 2);
    MetricEdge e2;
    e2.u = 1;
    e2.v = 0;
    e2.shift = {1};
    e2.length = Rational(1, 2);
    g.edges = {e1, e2};

    EdgePerturbation p;
    p.edge = 0;
    p.cell = {2};
    p.delta = {{Rational(1, 2), Rational(3)}};

    QuantumReduction red = reduce(g, 2.0, {p});
    REQUIRE(red.perturbation.has_value());
    const LocalPerturbationX& b = *red.perturbation;
    REQUIRE(b.sites.size() == 2);
    CHECK(b.sites[0] == VertexSite{0, {2}});
    CHECK(b.sites[1] == VertexSite{1, {2}});
    // entries are the transfer-coefficient differences, nonzero
    CHECK(std::abs(b.matrix[0][1]) > 1e-6);
    CHECK(std::abs(b.matrix[0][1] - b.matrix[1][0]) < 1e-13);

    // unperturbed reduction of the same graph differs from A1 only there
    QuantumReduction base = reduce(g, 2.0);
    CHECK(base.op.terms.size() == red.op.terms.size());
}

TEST_CASE("extend_to_edges: zero in, zero out; explicit interpolant") {
    MetricGraph g = fixtures::chain_metric();
    const double pi = std::numbers::pi;
    LatticeFunctionX zero;
    zero.dimension = 1;
    EdgeSolutionCoeffs empty = extend_to_edges(g, pi * pi / 4.0, zero);
    CHECK(empty.coeffs.empty());

    // single nonzero endpoint value (1, 0) at lambda = pi^2/4 on a unit edge:
    // the solution is cos(pi x / 2) along the edge leaving the vertex
    LatticeFunctionX f;
    f.dimension = 1;
    f.values[{0, {0}}] = Cx(1, 0);
    EdgeSolutionCoeffs sol = extend_to_edges(g, pi * pi / 4.0, f);
    EdgeCopyRef ref{0, {0}};
    REQUIRE(sol.coeffs.count(ref));
    for (double x : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        auto [value, deriv] = edge_solution_at(g, sol, ref, x);
        CHECK(std::abs(value - Cx(std::cos(pi * x / 2.0), 0)) < 1e-12);
    }
}

TEST_CASE("extend_to_edges: windowed Floquet solution, interior residuals vanish") {
    MetricGraph g = fixtures::chain_metric();
    const double k = 1.1;
    const double lambda = k * k;
    LatticeFunctionX f;
    f.dimension = 1;
    for (int j = -6; j <= 6; ++j) f.values[{0, {j}}] = std::exp(Cx(0, k * j));
    EdgeSolutionCoeffs sol = extend_to_edges(g, lambda, f);

    // interior vertices: Kirchhoff sums vanish; edge functions are e^{ikx}
    for (int j = -5; j <= 4; ++j) {
        CHECK(std::abs(kirchhoff_residual(g, sol, {0, {j}})) < 1e-9);
        auto [value, deriv] = edge_solution_at(g, sol, EdgeCopyRef{0, {j}}, 0.37);
        CHECK(std::abs(value - std::exp(Cx(0, k * (j + 0.37)))) < 1e-9);
    }

    // a window that breaks the equation at an interior site is rejected
    LatticeFunctionX broken = f;
    broken.values[{0, {0}}] = Cx(5, 0);
    CHECK_THROWS_AS(extend_to_edges(g, lambda, broken), std::invalid_argument);
}

TEST_CASE("subdivide_safe") {
    MetricGraph g = fixtures::chain_metric();
    const double pi = std::numbers::pi;

    // already safe: untouched
    MetricGraph same = subdivide_safe(g, pi * pi / 4.0);
    CHECK(same.vertices.size() == 1);
    CHECK(same.edges.size() == 1);

    // at lambda = pi^2 the unit edge is halved and becomes safe
    MetricGraph cut = subdivide_safe(g, pi * pi);
    CHECK(cut.vertices.size() == 2);
    CHECK(cut.edges.size() == 2);
    for (const MetricEdge& e : cut.edges) {
        CHECK(e.length == Rational(1, 2));
        CHECK(!dirichlet_hit(e, pi * pi));
    }
    CHECK_NOTHROW(reduce(cut, pi * pi));
}

TEST_CASE("subdivision leaves the sampled quantum spectrum invariant") {
    MetricGraph g = fixtures::chain_metric();
    MetricGraph cut = subdivide_safe(g, std::numbers::pi * std::numbers::pi);
    fixtures::Rng rng;
    for (int it = 0; it < 20; ++it) {
        double lambda = rng.uniform(2, 95) / 10.0;
        bool safe = true;
        for (const MetricEdge& e : g.edges) safe = safe && !dirichlet_hit(e, lambda);
        for (const MetricEdge& e : cut.edges) safe = safe && !dirichlet_hit(e, lambda);
        if (!safe) continue;
        FermiSampleSet a = fermi_samples(reduce(g, lambda).op, 0.0, 8);
        FermiSampleSet b = fermi_samples(reduce(cut, lambda).op, 0.0, 8);
        // the real Floquet surface of H is intrinsic: same points both ways
        auto key = [](const std::vector<Cx>& pt) { return std::arg(pt[0]); };
        std::vector<double> ka, kb;
        for (const auto& pt : a.points) ka.push_back(key(pt));
        for (const auto& pt : b.points) kb.push_back(key(pt));
        std::sort(ka.begin(), ka.end());
        std::sort(kb.begin(), kb.end());
        REQUIRE(ka.size() == kb.size());
        for (std::size_t i = 0; i < ka.size(); ++i) CHECK(std::abs(ka[i] - kb[i]) < 1e-8);
    }
}

TEST_CASE("fermi equality on the free chain") {
    MetricGraph g = fixtures::chain_metric();
    const double pi = std::numbers::pi;
    CHECK(fermi_equality_check(g, pi * pi / 4.0, 16));
    CHECK(fermi_equality_check(g, 9.0, 16));  // k = 3

    // above a constant barrier the surface is empty on both sides
    MetricGraph barrier = fixtures::chain_metric();
    barrier.edges[0].potential = {{Rational(1), Rational(10)}};
    CHECK(fermi_equality_check(barrier, 5.0, 16));

    // subdivided chain: two vertices per cell, still a single strand
    MetricGraph cut = subdivide_safe(g, pi * pi);
    CHECK(fermi_equality_check(cut, pi * pi / 4.0, 16));
    CHECK(fermi_equality_check(cut, 9.0, 16));
}

TEST_CASE("fermi equality on the square lattice quantum graph") {
    MetricGraph g = fixtures::square_metric();
    CHECK(fermi_equality_check(g, 1.0, 12));
    CHECK(fermi_equality_check(g, 5.0, 12));
}

TEST_CASE("quantum support bound") {
    MetricGraph g = fixtures::chain_metric();
    // one perturbed edge copy at cell 0: S~ spans cells {-1,0,1}
    CHECK(quantum_support_bound(g, {{0, {0}}}) == 8);
    // empty S: r(W~)(2|W~|+1) with W~ = {a@-1, a@0, a@1}
    CHECK(quantum_support_bound(g, {}) == 7);
    // the subdivided graph has a strictly larger constant
    MetricGraph cut = subdivide_safe(g, std::numbers::pi * std::numbers::pi);
    CHECK(quantum_support_bound(cut, {}) > 7);
}

TEST_CASE("end-to-end: plant on the rationalized reduction, find, check bound") {
    MetricGraph g = fixtures::chain_metric();
    const double lambda = 2.0;  // k = sqrt(2), inside the spectrum
    QuantumReduction red = reduce(g, lambda);
    PeriodicOperatorQ aq = io::rationalize_operator(red.op);

    LatticeFunctionQ f = delta<GaussianRational>(1, {0, {0}});
    LocalPerturbationQ b = plant_embedded(aq, f, gq(0));  // A(lambda) f = 0 is the eigenproblem
    EmbeddedEigenReport rep = find_embedded(aq, b, gq(0), 16);
    REQUIRE(!rep.basis.empty());
    bool found = false;
    for (const auto& e : rep.basis) found = found || !e.is_zero();
    CHECK(found);
    int qbound = quantum_support_bound(g, {{0, {0}}});
    for (const auto& e : rep.basis) CHECK(radius(e) < qbound);
}
