#include "floq/linsolve.hpp"

#include <algorithm>
#include <cstdint>
#include <map>

namespace floq::linsolve {

namespace {

const GaussianRational* row_coeff(const SparseRow& row, int col) {
    auto it = std::lower_bound(row.begin(), row.end(), col,
                               [](const auto& entry, int c) { return entry.first < c; });
    if (it == row.end() || it->first != col) return nullptr;
    return &it->second;
}

// dst <- dst - f * src, sparse merge.
void axpy(SparseRow& dst, const GaussianRational& f, const SparseRow& src) {
    SparseRow out;
    out.reserve(dst.size() + src.size());
    auto a = dst.begin();
    auto b = src.begin();
    while (a != dst.end() || b != src.end()) {
        if (b == src.end() || (a != dst.end() && a->first < b->first)) {
            out.push_back(*a++);
        } else if (a == dst.end() || b->first < a->first) {
            GaussianRational v = -(f * b->second);
            if (!v.is_zero()) out.emplace_back(b->first, v);
            ++b;
        } else {
            GaussianRational v = a->second - f * b->second;
            if (!v.is_zero()) out.emplace_back(a->first, v);
            ++a;
            ++b;
        }
    }
    dst = std::move(out);
}

struct Echelon {
    std::vector<SparseRow> rows;
    std::vector<GaussianRational> rhs;  // empty when homogeneous
    std::vector<int> pivot_cols;        // pivot column of row i
};

// Reduced row echelon form with deterministic pivoting; pivots normalized to 1.
Echelon rref(std::vector<SparseRow> rows, std::vector<GaussianRational> rhs, int cols) {
    const bool with_rhs = !rhs.empty();
    Echelon e;
    e.rows = std::move(rows);
    e.rhs = std::move(rhs);
    std::size_t rank = 0;
    for (int c = 0; c < cols && rank < e.rows.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < e.rows.size() && row_coeff(e.rows[pivot], c) == nullptr) ++pivot;
        if (pivot == e.rows.size()) continue;
        std::swap(e.rows[rank], e.rows[pivot]);
        if (with_rhs) std::swap(e.rhs[rank], e.rhs[pivot]);

        GaussianRational inv = GaussianRational(1) / *row_coeff(e.rows[rank], c);
        for (auto& [col, v] : e.rows[rank]) v *= inv;
        if (with_rhs) e.rhs[rank] *= inv;

        for (std::size_t i = 0; i < e.rows.size(); ++i) {
            if (i == rank) continue;
            const GaussianRational* f = row_coeff(e.rows[i], c);
            if (f == nullptr) continue;
            GaussianRational factor = *f;
            axpy(e.rows[i], factor, e.rows[rank]);
            if (with_rhs) e.rhs[i] -= factor * e.rhs[rank];
        }
        e.pivot_cols.push_back(c);
        ++rank;
    }
    return e;
}

// Scale a rational vector to a primitive Gaussian-integer vector with a
// canonical sign; keeps emitted bases bit-stable.
void make_primitive(std::vector<GaussianRational>& v) {
    mpz_class den_lcm = 1;
    for (const GaussianRational& x : v) {
        mpz_class d;
        mpz_lcm(d.get_mpz_t(), den_lcm.get_mpz_t(), x.re.get_den().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), d.get_mpz_t(), x.im.get_den().get_mpz_t());
    }
    mpz_class num_gcd = 0;
    for (const GaussianRational& x : v) {
        mpz_class nre = x.re.get_num() * (den_lcm / x.re.get_den());
        mpz_class nim = x.im.get_num() * (den_lcm / x.im.get_den());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), nre.get_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), nim.get_mpz_t());
    }
    if (num_gcd == 0) return;
    Rational s(den_lcm, num_gcd);
    s.canonicalize();
    int sign = 0;
    for (const GaussianRational& x : v) {
        if (!x.is_zero()) {
            Rational lead = x.re != 0 ? x.re : x.im;
            sign = (lead * s < 0) ? -1 : 1;
            break;
        }
    }
    if (sign < 0) s = -s;
    for (GaussianRational& x : v) {
        x.re *= s;
        x.im *= s;
    }
}

constexpr std::uint64_t kPrime = 2147483647;  // 2^31 - 1, = 3 mod 4

struct Fp2 {
    std::uint64_t re = 0;
    std::uint64_t im = 0;
    bool is_zero() const { return re == 0 && im == 0; }
};

std::uint64_t fp_mul(std::uint64_t a, std::uint64_t b) { return (a * b) % kPrime; }
std::uint64_t fp_sub(std::uint64_t a, std::uint64_t b) { return (a + kPrime - b) % kPrime; }
std::uint64_t fp_add(std::uint64_t a, std::uint64_t b) { return (a + b) % kPrime; }

std::uint64_t fp_pow(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = fp_mul(r, a);
        a = fp_mul(a, a);
        e >>= 1;
    }
    return r;
}

Fp2 fp2_mul(const Fp2& a, const Fp2& b) {
    return {fp_sub(fp_mul(a.re, b.re), fp_mul(a.im, b.im)),
            fp_add(fp_mul(a.re, b.im), fp_mul(a.im, b.re))};
}

Fp2 fp2_sub(const Fp2& a, const Fp2& b) { return {fp_sub(a.re, b.re), fp_sub(a.im, b.im)}; }

bool fp2_inverse(const Fp2& a, Fp2& out) {
    std::uint64_t n = fp_add(fp_mul(a.re, a.re), fp_mul(a.im, a.im));
    if (n == 0) return false;  // non-invertible despite a != 0 cannot happen in F_p^2, p = 3 mod 4
    std::uint64_t ninv = fp_pow(n, kPrime - 2);
    out = {fp_mul(a.re, ninv), fp_mul(fp_sub(0, a.im), ninv)};
    return true;
}

bool to_fp2(const GaussianRational& x, Fp2& out) {
    auto part = [](const Rational& q, std::uint64_t& r) {
        std::uint64_t num = mpz_fdiv_ui(q.get_num().get_mpz_t(), kPrime);
        std::uint64_t den = mpz_fdiv_ui(q.get_den().get_mpz_t(), kPrime);
        if (den == 0) return false;
        r = fp_mul(num, fp_pow(den, kPrime - 2));
        return true;
    };
    return part(x.re, out.re) && part(x.im, out.im);
}

}  // namespace

bool columns_independent_mod_p(const std::vector<SparseRow>& rows, int cols) {
    using ModRow = std::vector<std::pair<int, Fp2>>;
    std::vector<ModRow> m;
    m.reserve(rows.size());
    for (const SparseRow& row : rows) {
        ModRow mr;
        mr.reserve(row.size());
        for (const auto& [c, v] : row) {
            Fp2 fv;
            if (!to_fp2(v, fv)) return false;  // prime divides a denominator: inconclusive
            if (!fv.is_zero()) mr.emplace_back(c, fv);
        }
        m.push_back(std::move(mr));
    }
    std::size_t rank = 0;
    for (int c = 0; c < cols && rank < m.size(); ++c) {
        auto find = [&](const ModRow& row) {
            auto it = std::lower_bound(row.begin(), row.end(), c,
                                       [](const auto& e, int col) { return e.first < col; });
            return (it != row.end() && it->first == c) ? &it->second : nullptr;
        };
        std::size_t pivot = rank;
        while (pivot < m.size() && find(m[pivot]) == nullptr) ++pivot;
        if (pivot == m.size()) return false;  // rank deficit mod p: inconclusive
        std::swap(m[rank], m[pivot]);
        Fp2 inv;
        if (!fp2_inverse(*find(m[rank]), inv)) return false;
        for (auto& [col, v] : m[rank]) v = fp2_mul(v, inv);
        for (std::size_t i = rank + 1; i < m.size(); ++i) {
            const Fp2* f = find(m[i]);
            if (f == nullptr) continue;
            Fp2 factor = *f;
            ModRow out;
            out.reserve(m[i].size() + m[rank].size());
            auto a = m[i].begin();
            auto b = m[rank].begin();
            while (a != m[i].end() || b != m[rank].end()) {
                if (b == m[rank].end() || (a != m[i].end() && a->first < b->first)) {
                    out.push_back(*a++);
                } else if (a == m[i].end() || b->first < a->first) {
                    Fp2 v = fp2_sub(Fp2{}, fp2_mul(factor, b->second));
                    if (!v.is_zero()) out.emplace_back(b->first, v);
                    ++b;
                } else {
                    Fp2 v = fp2_sub(a->second, fp2_mul(factor, b->second));
                    if (!v.is_zero()) out.emplace_back(a->first, v);
                    ++a;
                    ++b;
                }
            }
            m[i] = std::move(out);
        }
        ++rank;
    }
    return rank == static_cast<std::size_t>(cols);
}

std::optional<std::vector<GaussianRational>> solve(std::vector<SparseRow> rows,
                                                   std::vector<GaussianRational> rhs, int cols) {
    if (rows.size() != rhs.size()) throw std::invalid_argument("linsolve::solve: shape mismatch");
    Echelon e = rref(std::move(rows), std::move(rhs), cols);
    for (std::size_t i = e.pivot_cols.size(); i < e.rows.size(); ++i)
        if (e.rows[i].empty() && !e.rhs[i].is_zero()) return std::nullopt;
    std::vector<GaussianRational> x(static_cast<std::size_t>(cols));
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i)
        x[static_cast<std::size_t>(e.pivot_cols[i])] = e.rhs[i];
    return x;
}

std::vector<std::vector<GaussianRational>> nullspace(std::vector<SparseRow> rows, int cols) {
    if (columns_independent_mod_p(rows, cols)) return {};
    Echelon e = rref(std::move(rows), {}, cols);
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (int c : e.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;

    std::vector<std::vector<GaussianRational>> basis;
    for (int cf = 0; cf < cols; ++cf) {
        if (is_pivot[static_cast<std::size_t>(cf)]) continue;
        std::vector<GaussianRational> v(static_cast<std::size_t>(cols));
        v[static_cast<std::size_t>(cf)] = GaussianRational(1);
        for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) {
            const GaussianRational* coeff = row_coeff(e.rows[i], cf);
            if (coeff != nullptr) v[static_cast<std::size_t>(e.pivot_cols[i])] = -*coeff;
        }
        make_primitive(v);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace floq::linsolve
