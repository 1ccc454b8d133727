#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "dt4/localize/model.hpp"

namespace dt4
{

inline constexpr std::size_t kNumInvariants = 11;

/// Intersection numbers entering the universal polynomials, in a fixed order.
struct ChernNumbers {
    std::array<long, kNumInvariants> v{};

    enum Index : std::size_t {
        b1_sq,
        b2_sq,
        b1_c1,
        b2_c1,
        b1_D,
        b2_D,
        b1_b2,
        D_sq,
        D_c1,
        c1_sq,
        c2
    };

    static const std::array<std::string, kNumInvariants> &names()
    {
        static const std::array<std::string, kNumInvariants> n{"b1_sq", "b2_sq", "b1_c1", "b2_c1",
                                                               "b1_D",  "b2_D",  "b1_b2", "D_sq",
                                                               "D_c1",  "c1_sq", "c2"};
        return n;
    }

    long operator[](std::size_t i) const { return v[i]; }
    long &operator[](std::size_t i) { return v[i]; }
    friend bool operator==(const ChernNumbers &, const ChernNumbers &) = default;

    nlohmann::json to_json() const
    {
        nlohmann::json j;
        for (std::size_t i = 0; i < kNumInvariants; ++i) {
            j[names()[i]] = v[i];
        }
        return j;
    }

    /// Elliptic K3 with beta1 = b f, beta2 = (1 - b) f, D = m f: every pairing
    /// vanishes except c2 = 24.
    static ChernNumbers K3_point()
    {
        ChernNumbers c;
        c[c2] = 24;
        return c;
    }
};

using InvariantMask = std::array<bool, kNumInvariants>;

inline InvariantMask all_invariants()
{
    InvariantMask m;
    m.fill(true);
    return m;
}

/// Invariants that can enter the type II integrand: the beta classes do not.
inline InvariantMask typeII_invariants()
{
    InvariantMask m{};
    m[ChernNumbers::D_sq] = m[ChernNumbers::D_c1] = m[ChernNumbers::c1_sq] = m[ChernNumbers::c2] = true;
    return m;
}

inline ChernNumbers chern_invariants(const ToricSurfaceModel &model, const Divisor &beta1, const Divisor &beta2,
                                     const Divisor &d)
{
    const Divisor c1{{"K", -1}};
    ChernNumbers c;
    c[ChernNumbers::b1_sq] = model.pair(beta1, beta1);
    c[ChernNumbers::b2_sq] = model.pair(beta2, beta2);
    c[ChernNumbers::b1_c1] = model.pair(beta1, c1);
    c[ChernNumbers::b2_c1] = model.pair(beta2, c1);
    c[ChernNumbers::b1_D] = model.pair(beta1, d);
    c[ChernNumbers::b2_D] = model.pair(beta2, d);
    c[ChernNumbers::b1_b2] = model.pair(beta1, beta2);
    c[ChernNumbers::D_sq] = model.pair(d, d);
    c[ChernNumbers::D_c1] = model.pair(d, c1);
    c[ChernNumbers::c1_sq] = model.chern().c1_self;
    c[ChernNumbers::c2] = model.chern().c2;
    return c;
}

using Monomial = std::array<int, kNumInvariants>;

inline int monomial_degree(const Monomial &m)
{
    int d = 0;
    for (int e : m) {
        d += e;
    }
    return d;
}

inline std::string monomial_to_string(const Monomial &m)
{
    std::string out;
    for (std::size_t i = 0; i < kNumInvariants; ++i) {
        if (m[i] == 0) {
            continue;
        }
        if (!out.empty()) {
            out += "*";
        }
        out += ChernNumbers::names()[i];
        if (m[i] > 1) {
            out += "^" + std::to_string(m[i]);
        }
    }
    return out.empty() ? "1" : out;
}

/// Monomials of degree <= bound in the active invariants, by degree then
/// lexicographically by exponent vector (descending).
inline std::vector<Monomial> monomials_up_to(int bound, const InvariantMask &mask)
{
    std::vector<Monomial> out;
    Monomial cur{};
    for (int d = 0; d <= bound; ++d) {
        auto rec = [&](auto &&self, std::size_t i, int left) -> void {
            if (i == kNumInvariants) {
                if (left == 0) {
                    out.push_back(cur);
                }
                return;
            }
            const int top = mask[i] ? left : 0;
            for (int e = top; e >= 0; --e) {
                cur[i] = e;
                self(self, i + 1, left - e);
            }
            cur[i] = 0;
        };
        rec(rec, 0, d);
    }
    return out;
}

inline mpz_class monomial_value(const Monomial &m, const ChernNumbers &c)
{
    mpz_class r = 1;
    for (std::size_t i = 0; i < kNumInvariants; ++i) {
        for (int e = 0; e < m[i]; ++e) {
            r *= c[i];
        }
    }
    return r;
}

class UniversalPolynomial
{
public:
    UniversalPolynomial() = default;
    UniversalPolynomial(int degree_bound, std::map<Monomial, EqScalar> terms)
        : degree_bound_(degree_bound), terms_(std::move(terms))
    {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (monomial_degree(it->first) > degree_bound_) {
                throw Error("universal polynomial term exceeds the degree bound");
            }
            it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
        }
    }

    int degree_bound() const { return degree_bound_; }
    const std::map<Monomial, EqScalar> &terms() const { return terms_; }

    EqScalar evaluate(const ChernNumbers &at) const
    {
        EqScalar r;
        for (const auto &[m, c] : terms_) {
            r += EqScalar(monomial_value(m, at)) * c;
        }
        return r;
    }

    nlohmann::json to_json() const
    {
        nlohmann::json j;
        j["degree_bound"] = degree_bound_;
        j["terms"] = nlohmann::json::array();
        for (const auto &[m, c] : terms_) {
            nlohmann::json e;
            for (std::size_t i = 0; i < kNumInvariants; ++i) {
                if (m[i] != 0) {
                    e[ChernNumbers::names()[i]] = m[i];
                }
            }
            j["terms"].push_back({{"exponents", e.is_null() ? nlohmann::json::object() : e},
                                  {"monomial", monomial_to_string(m)},
                                  {"coefficient", c.to_string()}});
        }
        return j;
    }

private:
    int degree_bound_ = 0;
    std::map<Monomial, EqScalar> terms_;
};

inline EqScalar evaluate(const UniversalPolynomial &p, const ChernNumbers &at) { return p.evaluate(at); }

struct FitSample {
    ChernNumbers chern;
    EqScalar value;
};

namespace detail
{

struct Elimination {
    std::vector<std::vector<mpz_class>> a;
    std::vector<EqScalar> b;
    std::vector<std::size_t> pivot_cols;
    std::vector<std::size_t> free_cols;
};

/// Fraction-free (Bareiss) forward elimination with row pivoting.
inline Elimination bareiss(std::vector<std::vector<mpz_class>> a, std::vector<EqScalar> b)
{
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    Elimination e;
    mpz_class prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) {
            ++p;
        }
        if (p == rows) {
            e.free_cols.push_back(c);
            continue;
        }
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            const mpz_class f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) {
                mpz_class v = a[r][c] * a[i][j] - f * a[r][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a[i][j] = std::move(v);
            }
            b[i] = (EqScalar(a[r][c]) * b[i] - EqScalar(f) * b[r]) / EqScalar(prev);
        }
        prev = a[r][c];
        e.pivot_cols.push_back(c);
        ++r;
        if (r == rows) {
            for (std::size_t c2 = c + 1; c2 < cols; ++c2) {
                e.free_cols.push_back(c2);
            }
            break;
        }
    }
    e.a = std::move(a);
    e.b = std::move(b);
    return e;
}

} // namespace detail

/// Rank of the design matrix (monomials evaluated at the Chern vectors).
inline std::size_t design_rank(const std::vector<ChernNumbers> &points, int degree_bound,
                               const InvariantMask &mask = all_invariants())
{
    const auto monos = monomials_up_to(degree_bound, mask);
    std::vector<std::vector<mpz_class>> a;
    for (const auto &p : points) {
        std::vector<mpz_class> row;
        for (const auto &m : monos) {
            row.push_back(monomial_value(m, p));
        }
        a.push_back(std::move(row));
    }
    return detail::bareiss(std::move(a), std::vector<EqScalar>(points.size())).pivot_cols.size();
}

/// Exact fit of a polynomial of degree <= bound in the active invariants.
inline UniversalPolynomial fit_universal(const std::vector<FitSample> &samples, int degree_bound,
                                         const InvariantMask &mask = all_invariants())
{
    if (degree_bound < 0) {
        throw Error("fit_universal: degree bound must be nonnegative");
    }
    for (const auto &s : samples) {
        for (auto v : {var::e1, var::e2, var::lam}) {
            if (s.value.depends_on(v)) {
                throw Error("fit_universal: sample value depends on torus parameters: " + s.value.to_string());
            }
        }
    }
    const auto monos = monomials_up_to(degree_bound, mask);
    std::vector<std::vector<mpz_class>> a;
    std::vector<EqScalar> b;
    for (const auto &s : samples) {
        std::vector<mpz_class> row;
        for (const auto &m : monos) {
            row.push_back(monomial_value(m, s.chern));
        }
        a.push_back(std::move(row));
        b.push_back(s.value);
    }
    auto e = detail::bareiss(std::move(a), std::move(b));
    if (!e.free_cols.empty()) {
        std::string names;
        for (auto c : e.free_cols) {
            names += (names.empty() ? "" : ", ") + monomial_to_string(monos[c]);
        }
        throw Error("fit_universal: underdetermined system (" + std::to_string(samples.size()) + " samples, rank "
                    + std::to_string(e.pivot_cols.size()) + " of " + std::to_string(monos.size())
                    + "); deficient monomials: " + names);
    }
    const std::size_t rank = e.pivot_cols.size();
    for (std::size_t i = rank; i < e.b.size(); ++i) {
        if (!e.b[i].is_zero()) {
            throw Error("fit_universal: inconsistent system (residual " + e.b[i].to_string()
                        + " after elimination); samples are not values of one polynomial of degree <= "
                        + std::to_string(degree_bound));
        }
    }
    std::vector<EqScalar> x(monos.size());
    for (std::size_t i = rank; i-- > 0;) {
        const std::size_t c = e.pivot_cols[i];
        EqScalar acc = e.b[i];
        for (std::size_t j = c + 1; j < monos.size(); ++j) {
            if (e.a[i][j] != 0) {
                acc -= EqScalar(e.a[i][j]) * x[j];
            }
        }
        x[c] = acc / EqScalar(e.a[i][c]);
    }
    std::map<Monomial, EqScalar> terms;
    for (std::size_t c = 0; c < monos.size(); ++c) {
        terms.emplace(monos[c], x[c]);
    }
    UniversalPolynomial p(degree_bound, std::move(terms));
    for (const auto &s : samples) {
        if (!(p.evaluate(s.chern) == s.value)) {
            throw Error("fit_universal: nonzero residual after solve");
        }
    }
    return p;
}

// ---------------------------------------------------------------------------
// Test-surface battery

/// A toric configuration: surface, twist divisor D (L = K + D), classes beta1, beta2.
struct Configuration {
    std::string surface;
    Divisor d;
    Divisor beta1;
    Divisor beta2;

    std::string label() const
    {
        auto div = [](const Divisor &x) {
            std::string s;
            for (const auto &[n, c] : x) {
                if (c != 0) {
                    s += (s.empty() ? "" : "+") + std::to_string(c) + "*" + n;
                }
            }
            return s.empty() ? std::string("0") : s;
        };
        return surface + " D=" + div(d) + " b1=" + div(beta1) + " b2=" + div(beta2);
    }
};

/// Presets and small disjoint unions crossed with a small box of twists D.
/// Disjoint unions are needed because connected toric surfaces all have
/// c1^2 + c2 = 12.
inline std::vector<Configuration> typeII_battery()
{
    struct Base {
        std::string surface;
        std::vector<Divisor> twists;
    };
    const std::vector<Base> bases{
        {"P2", {{}, {{"H", 1}}, {{"H", -1}}, {{"H", 2}}}},
        {"P1xP1", {{}, {{"H1", 1}}, {{"H1", 1}, {"H2", 1}}, {{"H2", -1}}}},
        {"F1", {{}, {{"F", 1}}, {{"E", 1}}, {{"E", 1}, {"F", 1}}}},
        {"F2", {{}, {{"E", 1}}, {{"F", 2}}}},
        {"P2+P2", {{}, {{"1.H", 1}}, {{"1.H", 1}, {"2.H", -1}}, {{"1.H", 2}, {"2.H", 1}}}},
        {"P2+F1", {{}, {{"2.F", 1}}, {{"1.H", 1}, {"2.E", 1}}}},
        {"P1xP1+P2+P2", {{}, {{"2.H", 1}}, {{"1.H1", 1}, {"3.H", -1}}}},
        {"F1+F2", {{}, {{"1.E", 1}, {"2.F", 1}}}},
        {"P2+P2+P2", {{}, {{"1.H", 1}, {"3.H", 1}}}},
    };
    std::vector<Configuration> out;
    for (const auto &b : bases) {
        for (const auto &d : b.twists) {
            out.push_back({b.surface, d, {}, {}});
        }
    }
    return out;
}

/// A configuration kept out of every training battery.
inline Configuration typeII_holdout() { return {"F3+P1xP1", {{"1.F", 1}, {"2.H2", 1}}, {}, {}}; }

} // namespace dt4
