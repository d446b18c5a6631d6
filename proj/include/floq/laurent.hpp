#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "floq/scalar.hpp"

namespace floq {

// Exponent tuple g of z^g = z1^{g1} ... zn^{gn}; entries may be negative.
using Exponent = std::vector<int>;

inline Exponent exp_add(const Exponent& a, const Exponent& b) {
    Exponent r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Exponent exp_sub(const Exponent& a, const Exponent& b) {
    Exponent r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Exponent exp_neg(const Exponent& a) {
    Exponent r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline long total_degree(const Exponent& a) {
    long t = 0;
    for (int x : a) t += x;
    return t;
}

// Graded lexicographic order; a total order on Z^n, a monomial order on N^n.
struct GrlexLess {
    bool operator()(const Exponent& a, const Exponent& b) const {
        long ta = total_degree(a), tb = total_degree(b);
        if (ta != tb) return ta < tb;
        return a < b;  // lexicographic tiebreak
    }
};

struct DegreeBox {
    Exponent min;
    Exponent max;
    int sup_norm = 0;  // max |g_i| over all stored exponents
};

template <class C>
class LaurentPoly {
public:
    using TermMap = std::map<Exponent, C, GrlexLess>;

    LaurentPoly() : dim_(1) {}
    explicit LaurentPoly(int dim) : dim_(dim) {
        if (dim < 1) throw std::invalid_argument("LaurentPoly: dimension must be positive");
    }

    static LaurentPoly constant(int dim, const C& c) {
        LaurentPoly p(dim);
        p.add_term(Exponent(static_cast<std::size_t>(dim), 0), c);
        return p;
    }

    static LaurentPoly monomial(int dim, const Exponent& e, const C& c) {
        LaurentPoly p(dim);
        p.add_term(e, c);
        return p;
    }

    int dimension() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    C coeff(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? scalar_traits<C>::zero() : it->second;
    }

    void add_term(const Exponent& e, const C& c) {
        if (static_cast<int>(e.size()) != dim_)
            throw std::invalid_argument("LaurentPoly: exponent dimension mismatch");
        if (scalar_traits<C>::is_zero(c)) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (scalar_traits<C>::is_zero(it->second)) terms_.erase(it);
        }
    }

    // Largest term in grlex order.
    const std::pair<const Exponent, C>& leading() const {
        if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
        return *terms_.rbegin();
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        a.check_dim(b);
        LaurentPoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }

    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
        a.check_dim(b);
        LaurentPoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
        return r;
    }

    friend LaurentPoly operator-(const LaurentPoly& a) {
        LaurentPoly r(a.dim_);
        for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, -c);
        return r;
    }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        a.check_dim(b);
        LaurentPoly r(a.dim_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(exp_add(ea, eb), ca * cb);
        return r;
    }

    friend LaurentPoly operator*(const LaurentPoly& a, const C& c) {
        LaurentPoly r(a.dim_);
        for (const auto& [e, v] : a.terms_) r.add_term(e, v * c);
        return r;
    }

    LaurentPoly& operator+=(const LaurentPoly& b) { return *this = *this + b; }
    LaurentPoly& operator-=(const LaurentPoly& b) { return *this = *this - b; }
    LaurentPoly& operator*=(const LaurentPoly& b) { return *this = *this * b; }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    // Multiply by the monomial z^e.
    LaurentPoly shifted(const Exponent& e) const {
        LaurentPoly r(dim_);
        for (const auto& [t, c] : terms_) r.terms_.emplace(exp_add(t, e), c);
        return r;
    }

    bool has_negative_exponents() const {
        for (const auto& [e, c] : terms_)
            for (int x : e)
                if (x < 0) return true;
        return false;
    }

    DegreeBox degree_box() const {
        if (terms_.empty()) throw std::invalid_argument("degree_box of zero polynomial");
        DegreeBox box;
        box.min = Exponent(static_cast<std::size_t>(dim_), 0);
        box.max = box.min;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            for (int i = 0; i < dim_; ++i) {
                if (first || e[i] < box.min[i]) box.min[i] = e[i];
                if (first || e[i] > box.max[i]) box.max[i] = e[i];
            }
            first = false;
        }
        for (int i = 0; i < dim_; ++i)
            box.sup_norm = std::max({box.sup_norm, std::abs(box.min[i]), std::abs(box.max[i])});
        return box;
    }

private:
    void check_dim(const LaurentPoly& b) const {
        if (dim_ != b.dim_) throw std::invalid_argument("LaurentPoly: dimension mismatch");
    }

    int dim_;
    TermMap terms_;
};

// p = z^{-shift} * poly with poly componentwise nonnegative and no variable
// dividing every term (monomial content fully extracted).
template <class C>
struct ClearedPoly {
    LaurentPoly<C> poly;
    Exponent shift;
};

template <class C>
ClearedPoly<C> clear_to_polynomial(const LaurentPoly<C>& p) {
    if (p.is_zero()) throw std::invalid_argument("clear_to_polynomial: zero input");
    DegreeBox box = p.degree_box();
    Exponent shift = exp_neg(box.min);
    return {p.shifted(shift), shift};
}

// Single-divisor exact division for componentwise-nonnegative polynomials
// under grlex. Remainder-free iff d divides p; any nonzero remainder step
// aborts immediately because LT(d) | LT(p) is necessary for divisibility.
template <class C>
std::optional<LaurentPoly<C>> exact_divide(const LaurentPoly<C>& p, const LaurentPoly<C>& d) {
    if (d.is_zero()) throw std::invalid_argument("exact_divide: zero divisor");
    if (p.dimension() != d.dimension()) throw std::invalid_argument("exact_divide: dimension mismatch");
    if (p.has_negative_exponents() || d.has_negative_exponents())
        throw std::invalid_argument("exact_divide: negative exponents; clear first");

    const int n = p.dimension();
    LaurentPoly<C> rem = p;
    LaurentPoly<C> quot(n);
    const auto& [de, dc] = d.leading();
    while (!rem.is_zero()) {
        const auto& [re, rc] = rem.leading();
        Exponent qe(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            qe[i] = re[i] - de[i];
            if (qe[i] < 0) return std::nullopt;
        }
        C qc = rc / dc;
        LaurentPoly<C> t = LaurentPoly<C>::monomial(n, qe, qc);
        quot += t;
        rem -= t * d;
    }
    return quot;
}

// Exact division in the Laurent ring: divisibility after clearing monomial
// units from both operands.
template <class C>
std::optional<LaurentPoly<C>> laurent_divide(const LaurentPoly<C>& p, const LaurentPoly<C>& d) {
    if (d.is_zero()) throw std::invalid_argument("laurent_divide: zero divisor");
    if (p.is_zero()) return LaurentPoly<C>(p.dimension());
    ClearedPoly<C> cp = clear_to_polynomial(p);
    ClearedPoly<C> cd = clear_to_polynomial(d);
    auto q = exact_divide(cp.poly, cd.poly);
    if (!q) return std::nullopt;
    return q->shifted(exp_sub(cd.shift, cp.shift));
}

template <class C>
class PolyMatrix {
public:
    PolyMatrix() : rows_(0), cols_(0), dim_(1) {}
    PolyMatrix(int rows, int cols, int dim)
        : rows_(rows), cols_(cols), dim_(dim),
          cells_(static_cast<std::size_t>(rows) * cols, LaurentPoly<C>(dim)) {
        if (rows < 1 || cols < 1) throw std::invalid_argument("PolyMatrix: empty shape");
    }

    static PolyMatrix identity(int n, int dim) {
        PolyMatrix m(n, n, dim);
        for (int i = 0; i < n; ++i)
            m.at(i, i) = LaurentPoly<C>::constant(dim, scalar_traits<C>::one());
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int dimension() const { return dim_; }

    LaurentPoly<C>& at(int r, int c) { return cells_[static_cast<std::size_t>(r) * cols_ + c]; }
    const LaurentPoly<C>& at(int r, int c) const {
        return cells_[static_cast<std::size_t>(r) * cols_ + c];
    }

    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
        if (a.cols_ != b.rows_ || a.dim_ != b.dim_)
            throw std::invalid_argument("PolyMatrix: shape mismatch in product");
        PolyMatrix r(a.rows_, b.cols_, a.dim_);
        for (int i = 0; i < a.rows_; ++i)
            for (int j = 0; j < b.cols_; ++j)
                for (int k = 0; k < a.cols_; ++k) r.at(i, j) += a.at(i, k) * b.at(k, j);
        return r;
    }

    friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.dim_ != b.dim_)
            throw std::invalid_argument("PolyMatrix: shape mismatch");
        PolyMatrix r(a.rows_, a.cols_, a.dim_);
        for (std::size_t i = 0; i < a.cells_.size(); ++i) r.cells_[i] = a.cells_[i] - b.cells_[i];
        return r;
    }

    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.cells_ == b.cells_;
    }

    PolyMatrix scaled(const LaurentPoly<C>& p) const {
        PolyMatrix r(rows_, cols_, dim_);
        for (std::size_t i = 0; i < cells_.size(); ++i) r.cells_[i] = cells_[i] * p;
        return r;
    }

    int max_sup_norm() const {
        int m = 0;
        for (const auto& cell : cells_)
            if (!cell.is_zero()) m = std::max(m, cell.degree_box().sup_norm);
        return m;
    }

private:
    int rows_, cols_, dim_;
    std::vector<LaurentPoly<C>> cells_;
};

namespace detail {

template <class C>
LaurentPoly<C> cofactor_determinant(const PolyMatrix<C>& m, std::vector<int>& cols, int row) {
    if (static_cast<int>(cols.size()) == 1)
        return m.at(row, cols[0]);
    LaurentPoly<C> det(m.dimension());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        const LaurentPoly<C>& pivot = m.at(row, cols[j]);
        if (pivot.is_zero()) continue;
        int c = cols[j];
        cols.erase(cols.begin() + static_cast<long>(j));
        LaurentPoly<C> minor = cofactor_determinant(m, cols, row + 1);
        cols.insert(cols.begin() + static_cast<long>(j), c);
        LaurentPoly<C> contrib = pivot * minor;
        if (j % 2 == 0)
            det += contrib;
        else
            det -= contrib;
    }
    return det;
}

// Fraction-free Bareiss over the Laurent ring; every division is exact by
// Sylvester's identity. Only used for exact coefficients.
template <class C>
LaurentPoly<C> bareiss_determinant(PolyMatrix<C> m) {
    static_assert(scalar_traits<C>::exact, "Bareiss requires exact coefficients");
    const int n = m.rows();
    const int dim = m.dimension();
    LaurentPoly<C> prev = LaurentPoly<C>::constant(dim, scalar_traits<C>::one());
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k).is_zero()) {
            int swap_row = -1;
            for (int i = k + 1; i < n; ++i)
                if (!m.at(i, k).is_zero()) {
                    swap_row = i;
                    break;
                }
            if (swap_row < 0) return LaurentPoly<C>(dim);  // singular
            for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(swap_row, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                LaurentPoly<C> num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                auto q = laurent_divide(num, prev);
                if (!q) throw std::logic_error("Bareiss: inexact division (should not happen)");
                m.at(i, j) = *q;
            }
            m.at(i, k) = LaurentPoly<C>(dim);
        }
        prev = m.at(k, k);
    }
    LaurentPoly<C> det = m.at(n - 1, n - 1);
    if (sign < 0) det = -det;
    return det;
}

}  // namespace detail

template <class C>
LaurentPoly<C> determinant(const PolyMatrix<C>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: non-square matrix");
    std::vector<int> cols(static_cast<std::size_t>(m.cols()));
    for (int j = 0; j < m.cols(); ++j) cols[static_cast<std::size_t>(j)] = j;
    if constexpr (scalar_traits<C>::exact) {
        if (m.rows() > 4) return detail::bareiss_determinant(m);
    }
    return detail::cofactor_determinant(m, cols, 0);
}

// adj(M) with M * adj(M) = det(M) * I.
template <class C>
PolyMatrix<C> adjugate(const PolyMatrix<C>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("adjugate: non-square matrix");
    const int n = m.rows();
    PolyMatrix<C> adj(n, n, m.dimension());
    if (n == 1) {
        adj.at(0, 0) = LaurentPoly<C>::constant(m.dimension(), scalar_traits<C>::one());
        return adj;
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            PolyMatrix<C> minor(n - 1, n - 1, m.dimension());
            int mr = 0;
            for (int r = 0; r < n; ++r) {
                if (r == i) continue;
                int mc = 0;
                for (int c = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor.at(mr, mc) = m.at(r, c);
                    ++mc;
                }
                ++mr;
            }
            LaurentPoly<C> d = determinant(minor);
            adj.at(j, i) = ((i + j) % 2 == 0) ? d : -d;  // transposed cofactor
        }
    }
    return adj;
}

// Canonical textual form: grlex-descending terms, "z1^2*z2^-1" exponents,
// exact coefficients. Bit-stable across runs; golden files depend on it.
std::string poly_to_string(const LaurentPoly<GaussianRational>& p);

using LaurentPolyQ = LaurentPoly<GaussianRational>;
using LaurentPolyX = LaurentPoly<Cx>;
using PolyMatrixQ = PolyMatrix<GaussianRational>;
using PolyMatrixX = PolyMatrix<Cx>;

}  // namespace floq
