#include <doctest.h>

#include "fixtures.hpp"

using namespace floq;
using fixtures::gq;

TEST_CASE("hermitian eigenvalues: cross-checked against known spectra") {
    // 2x2 with known eigenvalues 1 and 3
    ComplexMatrix m{{Cx(2, 0), Cx(1, 0)}, {Cx(1, 0), Cx(2, 0)}};
    auto ev = hermitian_eigenvalues(m);
    CHECK(std::abs(ev[0] - 1.0) < 1e-12);
    CHECK(std::abs(ev[1] - 3.0) < 1e-12);

    // complex Hermitian: [[0, i],[-i, 0]] has eigenvalues -1, 1
    ComplexMatrix c{{Cx(0, 0), Cx(0, 1)}, {Cx(0, -1), Cx(0, 0)}};
    ev = hermitian_eigenvalues(c);
    CHECK(std::abs(ev[0] + 1.0) < 1e-12);
    CHECK(std::abs(ev[1] - 1.0) < 1e-12);

    // trace is preserved on random Hermitian matrices
    fixtures::Rng rng;
    for (int it = 0; it < 20; ++it) {
        int n = rng.uniform(2, 6);
        ComplexMatrix a(n, std::vector<Cx>(n));
        double trace = 0.0;
        for (int i = 0; i < n; ++i) {
            a[i][i] = Cx(rng.uniform(-5, 5), 0);
            trace += a[i][i].real();
            for (int j = i + 1; j < n; ++j) {
                a[i][j] = Cx(rng.uniform(-3, 3) / 2.0, rng.uniform(-3, 3) / 2.0);
                a[j][i] = std::conj(a[i][j]);
            }
        }
        auto evs = hermitian_eigenvalues(a);
        double sum = 0.0;
        for (double v : evs) sum += v;
        CHECK(std::abs(sum - trace) < 1e-10);
        for (std::size_t i = 1; i < evs.size(); ++i) CHECK(evs[i - 1] <= evs[i]);
    }

    ComplexMatrix bad{{Cx(0, 0), Cx(1, 0)}, {Cx(0, 0), Cx(0, 0)}};
    CHECK_THROWS_AS(hermitian_eigenvalues(bad), std::invalid_argument);
}

TEST_CASE("jacobi eigenvalues agree with characteristic polynomial roots") {
    // independent route: det(A - x I) expanded over one-variable polynomials,
    // then rooted by Durand-Kerner
    fixtures::Rng rng;
    for (int it = 0; it < 10; ++it) {
        const int n = rng.uniform(2, 5);
        ComplexMatrix a(n, std::vector<Cx>(n));
        for (int i = 0; i < n; ++i) {
            a[i][i] = Cx(rng.uniform(-4, 4), 0);
            for (int j = i + 1; j < n; ++j) {
                a[i][j] = Cx(rng.uniform(-3, 3) / 2.0, rng.uniform(-3, 3) / 2.0);
                a[j][i] = std::conj(a[i][j]);
            }
        }
        PolyMatrixX shifted(n, n, 1);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                shifted.at(i, j) = LaurentPolyX::constant(1, a[i][j]);
                if (i == j) shifted.at(i, j).add_term({1}, Cx(-1.0, 0.0));
            }
        LaurentPolyX charpoly = determinant(shifted);
        std::vector<Cx> coeffs(static_cast<std::size_t>(n) + 1, Cx(0, 0));
        for (const auto& [e, c] : charpoly.terms()) coeffs[static_cast<std::size_t>(e[0])] = c;
        std::vector<double> roots;
        for (const Cx& r : polynomial_roots(coeffs)) roots.push_back(r.real());
        std::sort(roots.begin(), roots.end());

        auto ev = hermitian_eigenvalues(a);
        REQUIRE(ev.size() == roots.size());
        for (std::size_t i = 0; i < ev.size(); ++i) CHECK(std::abs(ev[i] - roots[i]) < 1e-8);
    }
}

TEST_CASE("polynomial roots by Durand-Kerner") {
    // z^2 - z + 1: roots exp(+-i pi/3)
    auto roots = polynomial_roots({Cx(1, 0), Cx(-1, 0), Cx(1, 0)});
    REQUIRE(roots.size() == 2);
    for (const Cx& r : roots) {
        CHECK(std::abs(std::abs(r) - 1.0) < 1e-10);
        CHECK(std::abs(std::abs(std::arg(r)) - std::numbers::pi / 3.0) < 1e-10);
    }
    // trailing zero coefficients give exact zero roots
    roots = polynomial_roots({Cx(0, 0), Cx(0, 0), Cx(1, 0), Cx(1, 0)});
    REQUIRE(roots.size() == 3);
    int zeros = 0;
    for (const Cx& r : roots) zeros += (std::abs(r) == 0.0) ? 1 : 0;
    CHECK(zeros == 2);
}

TEST_CASE("dispersion of the chain matches 1 - cos k") {
    DispersionGrid grid = dispersion(fixtures::chain_laplacian(), 16);
    CHECK(grid.samples.size() == 16);
    for (const auto& [idx, ev] : grid.samples) {
        double k = 2.0 * std::numbers::pi * idx[0] / 16.0;
        REQUIRE(ev.size() == 1);
        CHECK(std::abs(ev[0] - (1.0 - std::cos(k))) < 1e-10);
    }
    CHECK_THROWS_AS(dispersion(fixtures::chain_laplacian(), 1), std::invalid_argument);
}

TEST_CASE("dispersion of the identity operator is constant 1") {
    PeriodicOperatorQ id;
    id.graph.dimension = 1;
    id.graph.vertices = {"a"};
    id.terms = {{0, 0, {0}, gq(1)}};
    DispersionGrid grid = dispersion(id, 8);
    for (const auto& [idx, ev] : grid.samples) CHECK(std::abs(ev[0] - 1.0) < 1e-14);

    BandList bl = bands(id, 8);
    CHECK(std::abs(bl.bands[0].lo - 1.0) < 1e-12);
    CHECK(std::abs(bl.bands[0].hi - 1.0) < 1e-12);
}

TEST_CASE("pendant pair has a flat branch at zero") {
    PeriodicOperatorQ op = fixtures::pendant_pair();
    DispersionGrid grid = dispersion(op, 32);
    for (const auto& [idx, ev] : grid.samples) {
        REQUIRE(ev.size() == 3);
        double closest = 1e300;
        for (double v : ev) closest = std::min(closest, std::abs(v));
        CHECK(closest < 1e-10);
    }
}

TEST_CASE("chain band is [0,2] at resolution 64") {
    BandList bl = bands(fixtures::chain_laplacian(), 64);
    REQUIRE(bl.bands.size() == 1);
    CHECK(std::abs(bl.bands[0].lo - 0.0) < 1e-8);
    CHECK(std::abs(bl.bands[0].hi - 2.0) < 1e-8);
}

TEST_CASE("4-vertex lattice bands: inside [0,2], reproducible") {
    BandList a = bands(fixtures::fig1_laplacian(), 24);
    BandList b = bands(fixtures::fig1_laplacian(), 24);
    for (std::size_t i = 0; i < a.bands.size(); ++i) {
        CHECK(a.bands[i].lo == b.bands[i].lo);  // determinism, bit-exact
        CHECK(a.bands[i].hi == b.bands[i].hi);
        CHECK(a.bands[i].lo > -1e-8);
        CHECK(a.bands[i].hi < 2.0 + 1e-8);
    }
}

TEST_CASE("band endpoints are stable under grid refinement") {
    for (const PeriodicOperatorQ& op :
         {fixtures::chain_laplacian(), fixtures::fig1_laplacian()}) {
        BandList coarse = bands(op, 32);
        BandList fine = bands(op, 64);
        for (std::size_t j = 0; j < coarse.bands.size(); ++j) {
            CHECK(fine.bands[j].lo >= coarse.bands[j].lo - 1e-6);
            CHECK(fine.bands[j].hi <= coarse.bands[j].hi + 1e-6);
        }
    }
}

TEST_CASE("membership classification on the chain") {
    BandList bl = bands(fixtures::chain_laplacian(), 64);
    CHECK(membership(bl, 0.5).position == BandPosition::InBandInterior);
    CHECK(membership(bl, 0.5).margin > 0.0);
    CHECK(membership(bl, 3.0).position == BandPosition::NotInSpectrum);
    CHECK(membership(bl, 0.0).position == BandPosition::InSpectrumBoundary);
    CHECK(membership(bl, 2.0).position == BandPosition::InSpectrumBoundary);
}

TEST_CASE("floquet surface polynomial of the chain at 1/2") {
    FloquetSurface fs = floquet_surface_poly(fixtures::chain_laplacian(), gq(1, 2));
    CHECK(!fs.flat_band);
    CHECK(fs.content == Exponent{0});
    // Delta1 is proportional to z^2 - z + 1
    LaurentPolyQ base(1);
    base.add_term({2}, gq(1));
    base.add_term({1}, gq(-1));
    base.add_term({0}, gq(1));
    CHECK(fs.delta1 == base * LaurentPolyQ::constant(1, gq(-1, 2)));
    CHECK(fs.delta.degree_box().sup_norm <= 2 * 1 * 1);  // 2R|W|
}

TEST_CASE("surface determinant of the 4-vertex lattice obeys the degree bound") {
    FloquetSurface fs = floquet_surface_poly(fixtures::fig1_laplacian(), gq(1, 2));
    REQUIRE(!fs.flat_band);
    CHECK(fs.delta.degree_box().sup_norm <= 2 * 1 * 4);  // 2R|W| = 8
    int content_sup = 0;
    for (int q : fs.content) content_sup = std::max(content_sup, std::abs(q));
    CHECK(content_sup <= 8);
}

TEST_CASE("flat band detection on the pendant pair, both directions") {
    FloquetSurface flat = floquet_surface_poly(fixtures::pendant_pair(), gq(0));
    CHECK(flat.flat_band);

    // any nonzero lambda in a gap: the surface polynomial is honest
    FloquetSurface notflat = floquet_surface_poly(fixtures::pendant_pair(), gq(1, 3));
    CHECK(!notflat.flat_band);

    CHECK_THROWS_AS(fermi_samples(fixtures::pendant_pair(), 0.0, 16), FlatBandError);
}

TEST_CASE("identity operator at 0: unit determinant, empty surface") {
    PeriodicOperatorQ id;
    id.graph.dimension = 1;
    id.graph.vertices = {"a"};
    id.terms = {{0, 0, {0}, gq(1)}};
    FloquetSurface fs = floquet_surface_poly(id, gq(0));
    CHECK(!fs.flat_band);
    CHECK(fs.delta1 == LaurentPolyQ::constant(1, gq(1)));
    CHECK(fermi_samples(id, 0.0, 8).points.empty());
}

TEST_CASE("fermi samples of the chain") {
    // lambda = 1/2: exp(+-i pi/3)
    FermiSampleSet s = fermi_samples(fixtures::chain_laplacian(), 0.5, 16);
    REQUIRE(s.points.size() == 2);
    for (const auto& pt : s.points) {
        CHECK(std::abs(std::abs(pt[0]) - 1.0) < 1e-8);
        CHECK(std::abs(std::abs(std::arg(pt[0])) - std::numbers::pi / 3.0) < 1e-8);
    }
    // lambda = 3: off the torus entirely
    CHECK(fermi_samples(fixtures::chain_laplacian(), 3.0, 16).points.empty());
    // lambda = 1: +-i
    FermiSampleSet mid = fermi_samples(fixtures::chain_laplacian(), 1.0, 16);
    REQUIRE(mid.points.size() == 2);
    for (const auto& pt : mid.points)
        CHECK(std::abs(std::abs(pt[0].imag()) - 1.0) < 1e-8);
}

TEST_CASE("fermi samples match membership on chain and 4-vertex lattice") {
    for (const PeriodicOperatorQ& op :
         {fixtures::chain_laplacian(), fixtures::fig1_laplacian()}) {
        BandList bl = bands(op, 64);
        double lo = 1e300, hi = -1e300;
        for (const Band& b : bl.bands) {
            lo = std::min(lo, b.lo);
            hi = std::max(hi, b.hi);
        }
        for (int i = 0; i < 20; ++i) {
            double lambda = lo - 0.3 + (hi - lo + 0.6) * i / 19.0;
            Membership m = membership(bl, lambda);
            FermiSampleSet fs = fermi_samples(op, lambda, 24);
            if (m.position == BandPosition::InBandInterior) CHECK(!fs.points.empty());
            if (m.position == BandPosition::NotInSpectrum) CHECK(fs.points.empty());
        }
    }
}

TEST_CASE("eigenvalues agree at z and its conjugate-inverse") {
    fixtures::Rng rng;
    PolyMatrixQ sym = symbol(fixtures::fig1_laplacian());
    for (int it = 0; it < 15; ++it) {
        double k1 = rng.uniform(0, 628) / 100.0;
        double k2 = rng.uniform(0, 628) / 100.0;
        std::vector<Cx> z{Cx(std::cos(k1), std::sin(k1)), Cx(std::cos(k2), std::sin(k2))};
        std::vector<Cx> zbar{std::conj(z[0]), std::conj(z[1])};
        auto ev1 = fiber_eigenvalues(sym, z);
        auto ev2 = fiber_eigenvalues(sym, zbar);
        for (std::size_t i = 0; i < ev1.size(); ++i) CHECK(std::abs(ev1[i] - ev2[i]) < 1e-10);
    }
}

TEST_CASE("dispersion rejects non-symmetric operators") {
    PeriodicOperatorQ bad;
    bad.graph.dimension = 1;
    bad.graph.vertices = {"a", "b"};
    bad.terms = {{0, 1, {0}, gq(1)}};
    CHECK_THROWS_AS(dispersion(bad, 8), std::invalid_argument);
}
