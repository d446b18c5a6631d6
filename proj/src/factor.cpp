#include "floq/factor.hpp"

#include <algorithm>
#include <map>

namespace floq {

namespace {

// Dense univariate integer polynomial, coefficient of x^k at index k, no
// leading zeros.
using IntPoly = std::vector<mpz_class>;

void strip(IntPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const IntPoly& p) { return static_cast<int>(p.size()) - 1; }

IntPoly mul(const IntPoly& a, const IntPoly& b) {
    if (a.empty() || b.empty()) return {};
    IntPoly r(a.size() + b.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// Exact division over Z; nullopt when not divisible.
std::optional<IntPoly> div_exact(const IntPoly& a, const IntPoly& b) {
    if (b.empty()) throw std::invalid_argument("div_exact: zero divisor");
    if (a.empty()) return IntPoly{};
    if (a.size() < b.size()) return std::nullopt;
    IntPoly rem = a;
    IntPoly quot(a.size() - b.size() + 1, mpz_class(0));
    for (std::size_t k = quot.size(); k-- > 0;) {
        mpz_class num = rem[k + b.size() - 1];
        if (num % b.back() != 0) return std::nullopt;
        mpz_class q = num / b.back();
        quot[k] = q;
        if (q != 0)
            for (std::size_t j = 0; j < b.size(); ++j) rem[k + j] -= q * b[j];
    }
    for (const mpz_class& c : rem)
        if (c != 0) return std::nullopt;
    return quot;
}

mpz_class content(const IntPoly& p) {
    mpz_class g = 0;
    for (const mpz_class& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

// Content removed, leading coefficient positive.
IntPoly primitive(IntPoly p) {
    strip(p);
    if (p.empty()) return p;
    mpz_class g = content(p);
    if (p.back() < 0) g = -g;
    for (mpz_class& c : p) c /= g;
    return p;
}

IntPoly derivative(const IntPoly& p) {
    IntPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(mpz_class(static_cast<long>(i)) * p[i]);
    strip(d);
    return d;
}

mpz_class eval(const IntPoly& p, const mpz_class& x) {
    mpz_class acc = 0;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

// Pseudo-remainder of a by b over Z.
IntPoly prem(IntPoly a, const IntPoly& b) {
    strip(a);
    while (!a.empty() && degree(a) >= degree(b)) {
        mpz_class lead = a.back();
        int shift = degree(a) - degree(b);
        IntPoly scaled(a.size(), mpz_class(0));
        for (std::size_t i = 0; i < a.size(); ++i) scaled[i] = a[i] * b.back();
        for (std::size_t i = 0; i < b.size(); ++i)
            scaled[static_cast<std::size_t>(shift) + i] -= lead * b[i];
        a = std::move(scaled);
        strip(a);
    }
    return a;
}

IntPoly gcd_primitive(IntPoly a, IntPoly b) {
    a = primitive(std::move(a));
    b = primitive(std::move(b));
    if (degree(a) < degree(b)) std::swap(a, b);
    while (!b.empty()) {
        IntPoly r = prem(a, b);
        a = std::move(b);
        b = primitive(std::move(r));
    }
    return a;
}

// Yun-style squarefree decomposition of a primitive polynomial.
std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& f) {
    std::vector<std::pair<IntPoly, int>> out;
    IntPoly g = gcd_primitive(f, derivative(f));
    if (degree(g) <= 0) {
        out.emplace_back(f, 1);
        return out;
    }
    IntPoly w = primitive(*div_exact(f, g));
    int i = 1;
    while (degree(w) > 0) {
        IntPoly y = gcd_primitive(w, g);
        IntPoly fac = primitive(*div_exact(w, y));
        if (degree(fac) > 0) out.emplace_back(fac, i);
        w = std::move(y);
        g = primitive(*div_exact(g, w));
        ++i;
    }
    return out;
}

// All positive divisors of |v| ascending; nullopt when |v| resists
// trial-division factoring or has too many divisors.
std::optional<std::vector<mpz_class>> divisors_of(const mpz_class& v, std::size_t cap) {
    mpz_class n = abs(v);
    if (n == 0) return std::nullopt;
    std::vector<std::pair<mpz_class, int>> primes;
    mpz_class d = 2;
    while (d * d <= n && d <= 1000000) {
        if (n % d == 0) {
            int m = 0;
            while (n % d == 0) {
                n /= d;
                ++m;
            }
            primes.emplace_back(d, m);
        }
        d += (d == 2) ? 1 : 2;
    }
    if (n > 1) {
        // leftover is prime iff below the square of the trial bound
        if (n > mpz_class(1000000) * mpz_class(1000000)) return std::nullopt;
        primes.emplace_back(n, 1);
    }
    std::vector<mpz_class> divs{1};
    for (const auto& [p, m] : primes) {
        std::size_t base = divs.size();
        mpz_class pk = 1;
        for (int k = 1; k <= m; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) {
                divs.push_back(divs[i] * pk);
                if (divs.size() > cap) return std::nullopt;
            }
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

struct SearchLimits {
    long candidates_left = 0;
    bool exceeded = false;
};

// Rational roots of a primitive polynomial with nonzero constant term.
std::optional<std::vector<Rational>> rational_roots(const IntPoly& f, SearchLimits& limits) {
    std::vector<Rational> roots;
    if (f.size() < 2) return roots;
    auto num_divs = divisors_of(f.front(), 4096);
    auto den_divs = divisors_of(f.back(), 4096);
    if (!num_divs || !den_divs) {
        limits.exceeded = true;
        return std::nullopt;
    }
    for (const mpz_class& p : *num_divs) {
        for (const mpz_class& q : *den_divs) {
            if (--limits.candidates_left < 0) {
                limits.exceeded = true;
                return std::nullopt;
            }
            Rational r(p, q);
            r.canonicalize();
            for (int sign = 0; sign < 2; ++sign, r = -r) {
                // q^deg * f(p/q), exactly
                std::vector<mpz_class> qpow(f.size());
                qpow[f.size() - 1] = 1;
                for (std::size_t i = f.size() - 1; i-- > 0;) qpow[i] = qpow[i + 1] * r.get_den();
                mpz_class val = 0, power = 1;
                for (std::size_t i = 0; i < f.size(); ++i) {
                    val += f[i] * power * qpow[i];
                    power *= r.get_num();
                }
                if (val == 0 && std::find(roots.begin(), roots.end(), r) == roots.end())
                    roots.push_back(r);
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// Kronecker factor search over degrees 2..deg/2: interpolate candidates
// through divisor tuples of f's values. Inner nullopt = no factor exists;
// outer nullopt = budget exceeded. Requires nonzero constant term.
std::optional<std::optional<IntPoly>> kronecker_factor(const IntPoly& f, SearchLimits& limits) {
    const int d = degree(f);
    for (int m = 2; m <= d / 2; ++m) {
        std::vector<mpz_class> points;
        for (int i = 0; static_cast<int>(points.size()) < m + 1; ++i)
            points.push_back(i == 0 ? mpz_class(0)
                                    : (i % 2 ? mpz_class((i + 1) / 2) : mpz_class(-(i / 2))));
        std::vector<std::vector<mpz_class>> value_choices;
        long combos = 1;
        bool feasible = true;
        for (std::size_t i = 0; i < points.size(); ++i) {
            auto divs = divisors_of(eval(f, points[i]), 4096);
            if (!divs) {
                feasible = false;
                break;
            }
            std::vector<mpz_class> choices;
            for (const mpz_class& dv : *divs) {
                choices.push_back(dv);
                if (i > 0) choices.push_back(-dv);  // first point: positive only (sign gauge)
            }
            if (combos > limits.candidates_left / static_cast<long>(choices.size())) {
                feasible = false;
                break;
            }
            combos *= static_cast<long>(choices.size());
            value_choices.push_back(std::move(choices));
        }
        if (!feasible) {
            limits.exceeded = true;
            return std::nullopt;
        }
        limits.candidates_left -= combos;

        std::vector<std::size_t> odo(points.size(), 0);
        while (true) {
            // Lagrange interpolation through (points[i], chosen divisor).
            std::vector<Rational> coeffs(points.size(), Rational(0));
            for (std::size_t i = 0; i < points.size(); ++i) {
                Rational denom(1);
                std::vector<Rational> numer{Rational(1)};
                for (std::size_t j = 0; j < points.size(); ++j) {
                    if (j == i) continue;
                    denom *= Rational(points[i] - points[j]);
                    std::vector<Rational> next(numer.size() + 1, Rational(0));
                    for (std::size_t k = 0; k < numer.size(); ++k) {
                        next[k] += numer[k] * Rational(-points[j]);
                        next[k + 1] += numer[k];
                    }
                    numer = std::move(next);
                }
                Rational w = Rational(value_choices[i][odo[i]]) / denom;
                w.canonicalize();
                for (std::size_t k = 0; k < numer.size(); ++k) coeffs[k] += numer[k] * w;
            }
            bool integral = true;
            IntPoly g;
            for (const Rational& c : coeffs) {
                if (c.get_den() != 1) {
                    integral = false;
                    break;
                }
                g.push_back(c.get_num());
            }
            if (integral) {
                strip(g);
                if (degree(g) == m && div_exact(f, g))
                    return std::optional<IntPoly>(primitive(std::move(g)));
            }
            std::size_t pos = 0;
            while (pos < odo.size() && ++odo[pos] == value_choices[pos].size()) {
                odo[pos] = 0;
                ++pos;
            }
            if (pos == odo.size()) break;
        }
    }
    return std::optional<IntPoly>(std::nullopt);
}

// Complete factorization into irreducibles over Q (primitive integer form).
// nullopt = budget exceeded.
std::optional<std::vector<std::pair<IntPoly, int>>> factor_univariate(const IntPoly& f,
                                                                      SearchLimits& limits) {
    std::vector<std::pair<IntPoly, int>> out;
    for (const auto& [part, mult] : squarefree_decomposition(f)) {
        std::vector<IntPoly> queue{part};
        while (!queue.empty()) {
            IntPoly cur = primitive(queue.back());
            queue.pop_back();
            if (degree(cur) <= 0) continue;
            std::size_t xpow = 0;
            while (xpow < cur.size() && cur[xpow] == 0) ++xpow;
            if (xpow > 0) {
                for (std::size_t t = 0; t < xpow; ++t) out.emplace_back(IntPoly{0, 1}, mult);
                cur.erase(cur.begin(), cur.begin() + static_cast<long>(xpow));
                queue.push_back(std::move(cur));
                continue;
            }
            if (degree(cur) == 1) {
                out.emplace_back(cur, mult);
                continue;
            }
            auto roots = rational_roots(cur, limits);
            if (!roots) return std::nullopt;
            if (!roots->empty()) {
                const Rational& r = roots->front();
                IntPoly lin{mpz_class(-r.get_num()), mpz_class(r.get_den())};  // q x - p
                auto q = div_exact(cur, lin);
                out.emplace_back(primitive(std::move(lin)), mult);
                queue.push_back(primitive(std::move(*q)));
                continue;
            }
            auto found = kronecker_factor(cur, limits);
            if (!found) return std::nullopt;
            if (*found) {
                auto q = div_exact(cur, **found);
                queue.push_back(**found);
                queue.push_back(primitive(std::move(*q)));
            } else {
                out.emplace_back(cur, mult);
            }
        }
    }
    // Canonical order; merge repeated factors.
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (degree(a.first) != degree(b.first)) return degree(a.first) < degree(b.first);
        return a.first < b.first;
    });
    std::vector<std::pair<IntPoly, int>> merged;
    for (auto& [g, m] : out) {
        if (!merged.empty() && merged.back().first == g)
            merged.back().second += m;
        else
            merged.emplace_back(std::move(g), m);
    }
    return merged;
}

bool all_real(const LaurentPolyQ& p) {
    for (const auto& [e, c] : p.terms())
        if (c.im != 0) return false;
    return true;
}

// Scale a real, nonnegative-exponent polynomial to primitive integer
// coefficients; p = unit * result with the returned unit.
std::map<Exponent, mpz_class> to_integer(const LaurentPolyQ& p, Rational& unit) {
    mpz_class den_lcm = 1;
    for (const auto& [e, c] : p.terms())
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.re.get_den().get_mpz_t());
    mpz_class num_gcd = 0;
    for (const auto& [e, c] : p.terms()) {
        mpz_class n = c.re.get_num() * (den_lcm / c.re.get_den());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
    }
    if (p.leading().second.re < 0) num_gcd = -num_gcd;
    std::map<Exponent, mpz_class> out;
    for (const auto& [e, c] : p.terms())
        out[e] = c.re.get_num() * (den_lcm / c.re.get_den()) / num_gcd;
    unit = Rational(num_gcd, den_lcm);
    unit.canonicalize();
    return out;
}

LaurentPolyQ from_int_univariate(const IntPoly& f) {
    LaurentPolyQ p(1);
    for (std::size_t i = 0; i < f.size(); ++i)
        p.add_term(Exponent{static_cast<int>(i)}, GaussianRational(Rational(f[i])));
    return p;
}

LaurentPolyQ inverse_kronecker(const IntPoly& g, int D) {
    LaurentPolyQ p(2);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i] == 0) continue;
        int e = static_cast<int>(i);
        p.add_term(Exponent{e % D, e / D}, GaussianRational(Rational(g[i])));
    }
    return p;
}

Factorization make_witness(const LaurentPolyQ& input, const Exponent& q,
                           std::vector<std::pair<LaurentPolyQ, int>> factors) {
    Factorization w;
    w.monomial = q;
    w.factors = std::move(factors);
    w.status = Factorization::Status::Exact;
    LaurentPolyQ prod = LaurentPolyQ::constant(input.dimension(), GaussianRational(1));
    for (const auto& [f, m] : w.factors)
        for (int i = 0; i < m; ++i) prod *= f;
    prod = prod.shifted(q);
    const auto& [le, lc] = prod.leading();
    w.unit = input.coeff(le) / lc;
    return w;
}

}  // namespace

IrreducibilityReport irreducibility_check(const LaurentPolyQ& p, const FactorBudget& budget) {
    if (p.is_zero()) throw std::invalid_argument("irreducibility_check: zero input");
    ClearedPoly<GaussianRational> cleared = clear_to_polynomial(p);
    Exponent q = exp_neg(cleared.shift);
    const LaurentPolyQ& poly = cleared.poly;
    if (poly.term_count() == 1)
        throw std::invalid_argument("irreducibility_check: constant/monomial input");

    IrreducibilityReport report;
    if (!all_real(poly)) {
        report.note = "Gaussian (complex) coefficients: not checked";
        return report;
    }
    const int n = p.dimension();
    if (n > 2) {
        report.note = "n >= 3 is out of scope";
        return report;
    }

    SearchLimits limits{budget.max_candidates, false};

    if (n == 1) {
        DegreeBox box = poly.degree_box();
        if (box.max[0] > budget.max_univariate_degree) {
            report.note = "degree exceeds univariate budget";
            return report;
        }
        Rational unit;
        auto intmap = to_integer(poly, unit);
        IntPoly f(static_cast<std::size_t>(box.max[0]) + 1, mpz_class(0));
        for (const auto& [e, c] : intmap) f[static_cast<std::size_t>(e[0])] = c;
        auto factors = factor_univariate(f, limits);
        if (!factors) {
            report.note = "factor search budget exceeded";
            return report;
        }
        if (factors->size() == 1 && (*factors)[0].second == 1) {
            report.status = Irreducibility::Irreducible;
            return report;
        }
        std::vector<std::pair<LaurentPolyQ, int>> fs;
        for (const auto& [g, m] : *factors) fs.emplace_back(from_int_univariate(g), m);
        report.status = Irreducibility::Reducible;
        report.witness = make_witness(p, q, std::move(fs));
        return report;
    }

    // n == 2: Kronecker substitution z2 -> z1^D, D beyond the total degree,
    // so monomials map injectively and factors of p map to factor
    // sub-multisets of the image.
    long tdeg = 0;
    for (const auto& [e, c] : poly.terms()) tdeg = std::max(tdeg, total_degree(e));
    if (tdeg > budget.max_bivariate_total_degree) {
        report.note = "total degree exceeds bivariate budget";
        return report;
    }
    const int D = static_cast<int>(tdeg) + 1;

    Rational unit;
    auto intmap = to_integer(poly, unit);
    std::size_t image_deg = 0;
    for (const auto& [e, c] : intmap)
        image_deg = std::max(image_deg, static_cast<std::size_t>(e[0] + D * e[1]));
    IntPoly image(image_deg + 1, mpz_class(0));
    for (const auto& [e, c] : intmap) image[static_cast<std::size_t>(e[0] + D * e[1])] += c;

    auto factors = factor_univariate(primitive(image), limits);
    if (!factors) {
        report.note = "image factor search budget exceeded";
        return report;
    }
    std::vector<IntPoly> flat;
    for (const auto& [g, m] : *factors)
        for (int i = 0; i < m; ++i) flat.push_back(g);
    const std::size_t total = flat.size();
    if (total <= 1) {
        report.status = Irreducibility::Irreducible;
        return report;
    }
    if (total > 20 || (1L << total) > limits.candidates_left) {
        report.note = "recombination budget exceeded";
        return report;
    }
    const long subsets = 1L << total;
    for (long mask = 1; mask + 1 < subsets; ++mask) {
        IntPoly cand{mpz_class(1)};
        for (std::size_t i = 0; i < total; ++i)
            if (mask & (1L << i)) cand = mul(cand, flat[i]);
        LaurentPolyQ g = inverse_kronecker(primitive(cand), D);
        if (g.term_count() <= 1) continue;  // monomial candidate cannot divide a content-free poly
        if (auto quot = exact_divide(poly, g)) {
            if (quot->term_count() == 1) continue;  // unit cofactor: not a proper split
            report.status = Irreducibility::Reducible;
            report.witness = make_witness(p, q, {{g, 1}, {*quot, 1}});
            return report;
        }
    }
    report.status = Irreducibility::Irreducible;
    return report;
}

}  // namespace floq
