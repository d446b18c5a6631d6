#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "floq/lattice.hpp"
#include "floq/laurent.hpp"

namespace floq {

// fhat(v, z) for v in W: one Laurent polynomial per fundamental-domain vertex.
template <class C>
struct TransformedFunction {
    int dimension = 1;
    std::vector<LaurentPoly<C>> components;  // indexed like W
};

// fhat(v, z) = sum_g f(v at cell g) z^{-g}.
template <class C>
TransformedFunction<C> transform(const LatticeFunction<C>& f, int vertex_count) {
    TransformedFunction<C> out;
    out.dimension = f.dimension;
    out.components.assign(static_cast<std::size_t>(vertex_count), LaurentPoly<C>(f.dimension));
    for (const auto& [site, value] : f.values) {
        if (site.vertex < 0 || site.vertex >= vertex_count)
            throw std::invalid_argument("transform: site vertex out of range");
        out.components[static_cast<std::size_t>(site.vertex)].add_term(exp_neg(site.cell), value);
    }
    return out;
}

// f(v at cell g) = coefficient of z^{-g} in component v; exact inverse.
template <class C>
LatticeFunction<C> inverse_transform(const TransformedFunction<C>& F) {
    LatticeFunction<C> f;
    f.dimension = F.dimension;
    for (std::size_t v = 0; v < F.components.size(); ++v) {
        for (const auto& [e, c] : F.components[v].terms())
            f.set(VertexSite{static_cast<int>(v), exp_neg(e)}, c);
    }
    return f;
}

// The |W| x |W| symbol A(z): entry (u,v) = sum over terms (u,v,g) of
// coeff * z^{g}. With the z^{-g} transform convention this intertwines:
// transform(A f) = A(z) * transform(f).
template <class C>
PolyMatrix<C> symbol(const PeriodicOperator<C>& op) {
    ValidationReport report = validate(op);
    if (!report.ok())
        throw std::invalid_argument("symbol: invalid operator: " + report.violations.front());
    const int w = op.vertex_count();
    PolyMatrix<C> m(w, w, op.dimension());
    for (const Term<C>& t : op.terms) m.at(t.u, t.v).add_term(t.shift, t.coeff);
    return m;
}

template <class C>
TransformedFunction<C> apply_symbol(const PolyMatrix<C>& m, const TransformedFunction<C>& F) {
    if (m.cols() != static_cast<int>(F.components.size()))
        throw std::invalid_argument("apply_symbol: shape mismatch");
    TransformedFunction<C> out;
    out.dimension = F.dimension;
    out.components.assign(static_cast<std::size_t>(m.rows()), LaurentPoly<C>(F.dimension));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            out.components[static_cast<std::size_t>(i)] +=
                m.at(i, j) * F.components[static_cast<std::size_t>(j)];
    return out;
}

namespace detail {

inline Cx complex_power(const Cx& z, int e) {
    if (e == 0) return {1.0, 0.0};
    Cx base = e > 0 ? z : 1.0 / z;
    int n = e > 0 ? e : -e;
    Cx acc{1.0, 0.0};
    for (int i = 0; i < n; ++i) acc *= base;
    return acc;
}

}  // namespace detail

// Numeric evaluation of one Laurent polynomial at z in (C*)^n.
template <class C>
Cx evaluate_poly(const LaurentPoly<C>& p, const std::vector<Cx>& z) {
    if (static_cast<int>(z.size()) != p.dimension())
        throw std::invalid_argument("evaluate_poly: dimension mismatch");
    for (const Cx& zi : z)
        if (zi == Cx(0.0, 0.0)) throw std::invalid_argument("evaluate_poly: zero multiplier");
    Cx acc{0.0, 0.0};
    for (const auto& [e, c] : p.terms()) {
        Cx m = scalar_traits<C>::to_complex(c);
        for (std::size_t i = 0; i < z.size(); ++i)
            m *= detail::complex_power(z[i], e[i]);
        acc += m;
    }
    return acc;
}

// Exact evaluation at a Gaussian-rational point (each z_j invertible).
inline GaussianRational evaluate_poly_exact(const LaurentPoly<GaussianRational>& p,
                                            const std::vector<GaussianRational>& z) {
    if (static_cast<int>(z.size()) != p.dimension())
        throw std::invalid_argument("evaluate_poly_exact: dimension mismatch");
    for (const GaussianRational& zi : z)
        if (zi.is_zero()) throw std::invalid_argument("evaluate_poly_exact: zero multiplier");
    GaussianRational acc;
    for (const auto& [e, c] : p.terms()) {
        GaussianRational m = c;
        for (std::size_t i = 0; i < z.size(); ++i) {
            int k = e[i];
            GaussianRational base = k >= 0 ? z[i] : GaussianRational(1) / z[i];
            for (int t = 0; t < std::abs(k); ++t) m *= base;
        }
        acc += m;
    }
    return acc;
}

// The fiber matrix A(z) as a dense complex matrix.
template <class C>
std::vector<std::vector<Cx>> evaluate_symbol(const PolyMatrix<C>& m, const std::vector<Cx>& z) {
    std::vector<std::vector<Cx>> out(static_cast<std::size_t>(m.rows()),
                                     std::vector<Cx>(static_cast<std::size_t>(m.cols())));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                evaluate_poly(m.at(i, j), z);
    return out;
}

inline std::vector<std::vector<GaussianRational>> evaluate_symbol_exact(
    const PolyMatrix<GaussianRational>& m, const std::vector<GaussianRational>& z) {
    std::vector<std::vector<GaussianRational>> out(
        static_cast<std::size_t>(m.rows()),
        std::vector<GaussianRational>(static_cast<std::size_t>(m.cols())));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                evaluate_poly_exact(m.at(i, j), z);
    return out;
}

}  // namespace floq
