#include "floq/spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace floq {

namespace detail {

namespace {
constexpr double kGolden = 0.6180339887498949;
}

double refine_extremum(const std::function<double(const std::vector<double>&)>& branch,
                       std::vector<double> k, double step, int iterations) {
    // One golden-section pass per coordinate over [k_i - step, k_i + step].
    for (std::size_t coord = 0; coord < k.size(); ++coord) {
        double a = k[coord] - step;
        double b = k[coord] + step;
        auto value_at = [&](double t) {
            std::vector<double> kk = k;
            kk[coord] = t;
            return branch(kk);
        };
        double x1 = b - kGolden * (b - a);
        double x2 = a + kGolden * (b - a);
        double f1 = value_at(x1), f2 = value_at(x2);
        for (int it = 0; it < iterations; ++it) {
            if (f1 <= f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - kGolden * (b - a);
                f1 = value_at(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + kGolden * (b - a);
                f2 = value_at(x2);
            }
        }
        k[coord] = f1 <= f2 ? x1 : x2;
    }
    return branch(k);
}

}  // namespace detail

Membership membership(const BandList& bl, double lambda) {
    Membership best;
    best.position = BandPosition::NotInSpectrum;
    bool boundary = false;
    double interior_margin = -1.0;
    for (const Band& b : bl.bands) {
        const double delta = std::max(1e-6, 1e-6 * (b.hi - b.lo));
        if (lambda >= b.lo + delta && lambda <= b.hi - delta) {
            double m = std::min(lambda - (b.lo + delta), (b.hi - delta) - lambda);
            interior_margin = std::max(interior_margin, m);
        } else if (lambda >= b.lo - delta && lambda <= b.hi + delta) {
            boundary = true;
        }
    }
    if (interior_margin >= 0.0) {
        best.position = BandPosition::InBandInterior;
        best.margin = interior_margin;
    } else if (boundary) {
        best.position = BandPosition::InSpectrumBoundary;
    }
    return best;
}

PolyMatrixQ cleared_fiber(const PeriodicOperatorQ& op, const GaussianRational& lambda) {
    PolyMatrixQ sym = symbol(op);
    const int w = op.vertex_count();
    const int n = op.dimension();
    const int r = stencil_radius(op);
    LaurentPolyQ lam = LaurentPolyQ::constant(n, lambda);
    for (int i = 0; i < w; ++i) sym.at(i, i) -= lam;
    Exponent re(static_cast<std::size_t>(n), r);
    PolyMatrixQ a1(w, w, n);
    for (int i = 0; i < w; ++i)
        for (int j = 0; j < w; ++j) a1.at(i, j) = sym.at(i, j).shifted(re);
    return a1;
}

FloquetSurface floquet_surface_poly(const PeriodicOperatorQ& op, const GaussianRational& lambda) {
    FloquetSurface out;
    out.stencil_radius = stencil_radius(op);
    PolyMatrixQ a1 = cleared_fiber(op, lambda);
    out.delta = determinant(a1);
    if (out.delta.is_zero()) {
        out.flat_band = true;
        out.content = Exponent(static_cast<std::size_t>(op.dimension()), 0);
        return out;
    }
    ClearedPoly<GaussianRational> cleared = clear_to_polynomial(out.delta);
    out.delta1 = cleared.poly;
    out.content = exp_neg(cleared.shift);
    return out;
}

namespace detail {

namespace {

// Coefficient vector of a univariate complex Laurent polynomial after
// clearing its lowest power; paired with that power so callers can reason
// about torus roots (a monomial factor never moves them off the torus).
std::vector<Cx> univariate_coeffs(const LaurentPolyX& p) {
    DegreeBox box = p.degree_box();
    std::vector<Cx> coeffs(static_cast<std::size_t>(box.max[0] - box.min[0] + 1), Cx(0.0, 0.0));
    for (const auto& [e, c] : p.terms()) coeffs[static_cast<std::size_t>(e[0] - box.min[0])] = c;
    return coeffs;
}

LaurentPolyX substitute_z1(const LaurentPolyX& p, const Cx& z1) {
    LaurentPolyX out(1);
    for (const auto& [e, c] : p.terms()) {
        Cx v = c * complex_power(z1, e[0]);
        out.add_term(Exponent{e[1]}, v);
    }
    return out;
}

bool trim_small(LaurentPolyX& p, double rel) {
    double maxc = 0.0;
    for (const auto& [e, c] : p.terms()) maxc = std::max(maxc, std::abs(c));
    if (maxc == 0.0) return true;
    LaurentPolyX trimmed(p.dimension());
    for (const auto& [e, c] : p.terms())
        if (std::abs(c) > rel * maxc) trimmed.add_term(e, c);
    p = trimmed;
    return p.is_zero();
}

}  // namespace

FermiSampleSet fermi_samples_impl(const PolyMatrixX& sym, int dimension, double lambda, int grid) {
    const int w = sym.rows();
    PolyMatrixX shifted = sym;
    LaurentPolyX lam = LaurentPolyX::constant(dimension, Cx(lambda, 0.0));
    for (int i = 0; i < w; ++i) shifted.at(i, i) -= lam;

    LaurentPolyX det = determinant(shifted);
    FermiSampleSet out;
    out.energy = lambda;
    if (det.is_zero() || trim_small(det, 1e-13)) throw FlatBandError();

    auto det_residual = [&](const std::vector<Cx>& z) { return std::abs(evaluate_poly(det, z)); };
    double scale = 0.0;
    for (const auto& [e, c] : det.terms()) scale += std::abs(c);

    if (dimension == 1) {
        for (const Cx& root : polynomial_roots(univariate_coeffs(det))) {
            if (std::abs(std::abs(root) - 1.0) >= 1e-8) continue;
            std::vector<Cx> z{root};
            if (det_residual(z) < 1e-6 * std::max(1.0, scale)) out.points.push_back(z);
        }
        return out;
    }

    for (int j = 0; j < grid; ++j) {
        double k = 2.0 * std::numbers::pi * j / grid;
        Cx z1(std::cos(k), std::sin(k));
        LaurentPolyX slice = substitute_z1(det, z1);
        if (slice.is_zero() || trim_small(slice, 1e-13)) continue;
        if (slice.term_count() == 1) continue;  // monomial slice: no torus root information
        for (const Cx& root : polynomial_roots(univariate_coeffs(slice))) {
            if (std::abs(std::abs(root) - 1.0) >= 1e-8) continue;
            std::vector<Cx> z{z1, root};
            if (det_residual(z) < 1e-6 * std::max(1.0, scale)) out.points.push_back(z);
        }
    }
    return out;
}

}  // namespace detail

}  // namespace floq
