#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <variant>

#include "floq/floquet.hpp"
#include "floq/jacobi.hpp"
#include "floq/roots.hpp"

namespace floq {

struct DispersionGrid {
    int dimension = 1;
    int resolution = 0;
    // quasimomentum index tuple -> eigenvalues sorted non-decreasing
    std::map<std::vector<int>, std::vector<double>> samples;
};

struct Band {
    double lo = 0.0;
    double hi = 0.0;
};

struct BandList {
    std::vector<Band> bands;  // one per branch, in branch order
};

enum class BandPosition { InBandInterior, InSpectrumBoundary, NotInSpectrum };

struct Membership {
    BandPosition position = BandPosition::NotInSpectrum;
    double margin = 0.0;  // distance past the interior threshold when inside
};

// det(z^{Re}(A(z)-lambda)) and its content split Delta = z^q * Delta1.
struct FloquetSurface {
    bool flat_band = false;  // Delta identically zero; pipeline inapplicable
    LaurentPolyQ delta;
    LaurentPolyQ delta1;
    Exponent content;  // q
    int stencil_radius = 0;
};

struct FermiSampleSet {
    double energy = 0.0;
    // each entry is one torus point (z_1, ..., z_n)
    std::vector<std::vector<Cx>> points;
};

namespace detail {

inline std::vector<Cx> torus_point(const std::vector<int>& idx, int resolution) {
    std::vector<Cx> z(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        double k = 2.0 * std::numbers::pi * idx[i] / resolution;
        z[i] = Cx(std::cos(k), std::sin(k));
    }
    return z;
}

inline void enumerate_grid(int dim, int resolution,
                           const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> idx(static_cast<std::size_t>(dim), 0);
    while (true) {
        fn(idx);
        int d = 0;
        while (d < dim) {
            if (++idx[static_cast<std::size_t>(d)] < resolution) break;
            idx[static_cast<std::size_t>(d)] = 0;
            ++d;
        }
        if (d == dim) break;
    }
}

// Coordinate-wise golden-section refinement of one dispersion branch around a
// grid extremizer. `target` is the branch value (negated for maxima).
double refine_extremum(const std::function<double(const std::vector<double>&)>& branch,
                       std::vector<double> k, double step, int iterations);

}  // namespace detail

template <class C>
std::vector<double> fiber_eigenvalues(const PolyMatrix<C>& sym, const std::vector<Cx>& z) {
    return hermitian_eigenvalues(evaluate_symbol(sym, z));
}

template <class C>
DispersionGrid dispersion(const PeriodicOperator<C>& op, int resolution) {
    if (resolution < 2) throw std::invalid_argument("dispersion: resolution must be >= 2");
    PolyMatrix<C> sym = symbol(op);
    DispersionGrid grid;
    grid.dimension = op.dimension();
    grid.resolution = resolution;
    detail::enumerate_grid(op.dimension(), resolution, [&](const std::vector<int>& idx) {
        grid.samples[idx] = fiber_eigenvalues(sym, detail::torus_point(idx, resolution));
    });
    return grid;
}

template <class C>
BandList bands(const PeriodicOperator<C>& op, int resolution) {
    PolyMatrix<C> sym = symbol(op);
    DispersionGrid grid = dispersion(op, resolution);
    const int w = op.vertex_count();

    auto branch_at = [&](int j, const std::vector<double>& k) {
        std::vector<Cx> z(k.size());
        for (std::size_t i = 0; i < k.size(); ++i) z[i] = Cx(std::cos(k[i]), std::sin(k[i]));
        return hermitian_eigenvalues(evaluate_symbol(sym, z))[static_cast<std::size_t>(j)];
    };

    const double step = 2.0 * std::numbers::pi / resolution;
    BandList out;
    out.bands.resize(static_cast<std::size_t>(w));
    for (int j = 0; j < w; ++j) {
        std::vector<int> argmin, argmax;
        double lo = 0.0, hi = 0.0;
        bool first = true;
        for (const auto& [idx, ev] : grid.samples) {
            double v = ev[static_cast<std::size_t>(j)];
            if (first || v < lo) {
                lo = v;
                argmin = idx;
            }
            if (first || v > hi) {
                hi = v;
                argmax = idx;
            }
            first = false;
        }
        std::vector<double> kmin(argmin.size()), kmax(argmax.size());
        for (std::size_t i = 0; i < argmin.size(); ++i) kmin[i] = step * argmin[i];
        for (std::size_t i = 0; i < argmax.size(); ++i) kmax[i] = step * argmax[i];
        double refined_lo = detail::refine_extremum(
            [&](const std::vector<double>& k) { return branch_at(j, k); }, kmin, step, 20);
        double refined_hi = -detail::refine_extremum(
            [&](const std::vector<double>& k) { return -branch_at(j, k); }, kmax, step, 20);
        out.bands[static_cast<std::size_t>(j)] = {std::min(lo, refined_lo), std::max(hi, refined_hi)};
    }
    return out;
}

Membership membership(const BandList& bands, double lambda);

template <class C>
Membership membership(const PeriodicOperator<C>& op, double lambda, int resolution) {
    return membership(bands(op, resolution), lambda);
}

// A1 = z^{Re}(A(z) - lambda I): the cleared fiber matrix of the proof
// pipeline. Entries are polynomials with exponents in [0, 2R]^n.
PolyMatrixQ cleared_fiber(const PeriodicOperatorQ& op, const GaussianRational& lambda);

FloquetSurface floquet_surface_poly(const PeriodicOperatorQ& op, const GaussianRational& lambda);

// Numeric real-Floquet-surface samples; n = 1 takes all roots of the cleared
// determinant, n = 2 slices the z1 circle on `grid` points.
template <class C>
FermiSampleSet fermi_samples(const PeriodicOperator<C>& op, double lambda, int grid);

struct FlatBandError : std::runtime_error {
    FlatBandError() : std::runtime_error("flat band: det(A(z)-lambda) is identically zero") {}
};

namespace detail {

FermiSampleSet fermi_samples_impl(const PolyMatrixX& sym, int dimension, double lambda, int grid);

template <class C>
PolyMatrixX to_numeric(const PolyMatrix<C>& m) {
    PolyMatrixX out(m.rows(), m.cols(), m.dimension());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            for (const auto& [e, c] : m.at(i, j).terms())
                out.at(i, j).add_term(e, scalar_traits<C>::to_complex(c));
    return out;
}

}  // namespace detail

template <class C>
FermiSampleSet fermi_samples(const PeriodicOperator<C>& op, double lambda, int grid) {
    if (op.dimension() > 2)
        throw std::invalid_argument("fermi_samples: only n <= 2 supported");
    return detail::fermi_samples_impl(detail::to_numeric(symbol(op)), op.dimension(), lambda, grid);
}

}  // namespace floq
