#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "dt4/eqalg/variables.hpp"

namespace dt4
{

using Exponents = std::array<std::uint16_t, kMaxVars>;

inline unsigned total_degree(const Exponents &e)
{
    unsigned d = 0;
    for (auto x : e) {
        d += x;
    }
    return d;
}

/// Graded-lex order: higher total degree first, ties broken lexicographically
/// with variable 0 most significant.
struct GrlexGreater {
    bool operator()(const Exponents &a, const Exponents &b) const
    {
        const auto da = total_degree(a);
        const auto db = total_degree(b);
        if (da != db) {
            return da > db;
        }
        return a > b;
    }
};

/// Sparse multivariate polynomial with arbitrary-precision integer
/// coefficients. Terms are kept sorted in descending graded-lex order and are
/// never zero.
class Poly
{
public:
    struct Term {
        Exponents exp{};
        mpz_class coef;
    };

    Poly() = default;

    explicit Poly(const mpz_class &c)
    {
        if (c != 0) {
            terms_.push_back({Exponents{}, c});
        }
    }

    explicit Poly(long c) : Poly(mpz_class(c)) {}

    static Poly variable(std::size_t idx, unsigned power = 1)
    {
        Poly p;
        Term t{Exponents{}, 1};
        t.exp[idx] = static_cast<std::uint16_t>(power);
        p.terms_.push_back(std::move(t));
        return p;
    }

    static Poly monomial(const Exponents &e, const mpz_class &c)
    {
        Poly p;
        if (c != 0) {
            p.terms_.push_back({e, c});
        }
        return p;
    }

    /// Builds from unsorted terms, merging duplicates.
    static Poly from_terms(std::vector<Term> terms)
    {
        std::sort(terms.begin(), terms.end(),
                  [](const Term &a, const Term &b) { return GrlexGreater{}(a.exp, b.exp); });
        Poly p;
        for (auto &t : terms) {
            if (!p.terms_.empty() && p.terms_.back().exp == t.exp) {
                p.terms_.back().coef += t.coef;
                if (p.terms_.back().coef == 0) {
                    p.terms_.pop_back();
                }
            } else if (t.coef != 0) {
                p.terms_.push_back(std::move(t));
            }
        }
        return p;
    }

    const std::vector<Term> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && total_degree(terms_[0].exp) == 0); }
    mpz_class constant_value() const
    {
        if (terms_.empty()) {
            return 0;
        }
        const auto &last = terms_.back();
        return total_degree(last.exp) == 0 ? last.coef : mpz_class(0);
    }
    const Term &leading() const { return terms_.front(); }
    const mpz_class &leading_coef() const { return terms_.front().coef; }

    unsigned degree_in(std::size_t v) const
    {
        unsigned d = 0;
        for (const auto &t : terms_) {
            d = std::max<unsigned>(d, t.exp[v]);
        }
        return d;
    }

    unsigned low_degree_in(std::size_t v) const
    {
        unsigned d = UINT16_MAX;
        for (const auto &t : terms_) {
            d = std::min<unsigned>(d, t.exp[v]);
        }
        return terms_.empty() ? 0 : d;
    }

    bool depends_on(std::size_t v) const
    {
        return std::any_of(terms_.begin(), terms_.end(), [v](const Term &t) { return t.exp[v] != 0; });
    }

    /// Lowest-index variable that occurs, if any.
    std::optional<std::size_t> first_variable() const
    {
        std::optional<std::size_t> best;
        for (const auto &t : terms_) {
            for (std::size_t i = 0; i < kMaxVars; ++i) {
                if (t.exp[i] != 0 && (!best || i < *best)) {
                    best = i;
                }
            }
        }
        return best;
    }

    /// Coefficients c_k with p = sum_k c_k v^k; c_k does not involve v.
    std::vector<Poly> coefficients_in(std::size_t v) const
    {
        std::vector<std::vector<Term>> buckets(degree_in(v) + 1);
        for (const auto &t : terms_) {
            Term u = t;
            u.exp[v] = 0;
            buckets[t.exp[v]].push_back(std::move(u));
        }
        std::vector<Poly> out;
        out.reserve(buckets.size());
        for (auto &b : buckets) {
            // relative order of terms with equal v-degree is preserved by grlex
            out.push_back(from_terms(std::move(b)));
        }
        return out;
    }

    Poly shifted(std::size_t v, int k) const
    {
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto &t : terms_) {
            Term u = t;
            const int e = static_cast<int>(u.exp[v]) + k;
            if (e < 0) {
                throw Error("negative exponent in Poly::shifted");
            }
            u.exp[v] = static_cast<std::uint16_t>(e);
            out.push_back(std::move(u));
        }
        return from_terms(std::move(out));
    }

    mpz_class content() const
    {
        mpz_class g = 0;
        for (const auto &t : terms_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_mpz_t());
            if (g == 1) {
                break;
            }
        }
        return g;
    }

    Poly operator-() const
    {
        Poly r = *this;
        for (auto &t : r.terms_) {
            t.coef = -t.coef;
        }
        return r;
    }

    Poly &operator+=(const Poly &o) { return *this = merge(*this, o, false); }
    Poly &operator-=(const Poly &o) { return *this = merge(*this, o, true); }
    Poly &operator*=(const Poly &o) { return *this = *this * o; }

    Poly &operator*=(const mpz_class &c)
    {
        if (c == 0) {
            terms_.clear();
        } else {
            for (auto &t : terms_) {
                t.coef *= c;
            }
        }
        return *this;
    }

    friend Poly operator+(const Poly &a, const Poly &b) { return merge(a, b, false); }
    friend Poly operator-(const Poly &a, const Poly &b) { return merge(a, b, true); }

    friend Poly operator*(const Poly &a, const Poly &b)
    {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        if (a.terms_.size() == 1 && total_degree(a.terms_[0].exp) == 0) {
            Poly r = b;
            r *= a.terms_[0].coef;
            return r;
        }
        if (b.terms_.size() == 1 && total_degree(b.terms_[0].exp) == 0) {
            Poly r = a;
            r *= b.terms_[0].coef;
            return r;
        }
        std::map<Exponents, mpz_class, GrlexGreater> acc;
        mpz_class prod;
        for (const auto &x : a.terms_) {
            for (const auto &y : b.terms_) {
                Exponents e;
                for (std::size_t i = 0; i < kMaxVars; ++i) {
                    e[i] = static_cast<std::uint16_t>(x.exp[i] + y.exp[i]);
                }
                mpz_mul(prod.get_mpz_t(), x.coef.get_mpz_t(), y.coef.get_mpz_t());
                acc[e] += prod;
            }
        }
        Poly r;
        r.terms_.reserve(acc.size());
        for (auto &[e, c] : acc) {
            if (c != 0) {
                r.terms_.push_back({e, std::move(c)});
            }
        }
        return r;
    }

    friend Poly operator*(const Poly &a, const mpz_class &c)
    {
        Poly r = a;
        r *= c;
        return r;
    }

    friend bool operator==(const Poly &a, const Poly &b)
    {
        if (a.terms_.size() != b.terms_.size()) {
            return false;
        }
        for (std::size_t i = 0; i < a.terms_.size(); ++i) {
            if (a.terms_[i].exp != b.terms_[i].exp || a.terms_[i].coef != b.terms_[i].coef) {
                return false;
            }
        }
        return true;
    }

    Poly pow(unsigned k) const
    {
        Poly result(1);
        Poly base = *this;
        while (k != 0) {
            if (k & 1U) {
                result *= base;
            }
            k >>= 1U;
            if (k != 0) {
                base *= base;
            }
        }
        return result;
    }

    /// Divides every coefficient by c; c must divide each one exactly.
    Poly divided_by(const mpz_class &c) const
    {
        Poly r = *this;
        for (auto &t : r.terms_) {
            if (!mpz_divisible_p(t.coef.get_mpz_t(), c.get_mpz_t())) {
                throw Error("inexact integer division of polynomial coefficients");
            }
            mpz_divexact(t.coef.get_mpz_t(), t.coef.get_mpz_t(), c.get_mpz_t());
        }
        return r;
    }

    /// Exact quotient this / d over the integers, or nullopt if d does not divide.
    std::optional<Poly> divide_exact(const Poly &d) const
    {
        if (d.is_zero()) {
            throw Error("division by the zero polynomial");
        }
        if (d.is_constant()) {
            const mpz_class c = d.constant_value();
            for (const auto &t : terms_) {
                if (!mpz_divisible_p(t.coef.get_mpz_t(), c.get_mpz_t())) {
                    return std::nullopt;
                }
            }
            return divided_by(c);
        }
        Poly rem = *this;
        std::vector<Term> quot;
        const auto &lt = d.leading();
        while (!rem.is_zero()) {
            const auto &rt = rem.leading();
            Exponents e;
            for (std::size_t i = 0; i < kMaxVars; ++i) {
                if (rt.exp[i] < lt.exp[i]) {
                    return std::nullopt;
                }
                e[i] = static_cast<std::uint16_t>(rt.exp[i] - lt.exp[i]);
            }
            if (!mpz_divisible_p(rt.coef.get_mpz_t(), lt.coef.get_mpz_t())) {
                return std::nullopt;
            }
            mpz_class c;
            mpz_divexact(c.get_mpz_t(), rt.coef.get_mpz_t(), lt.coef.get_mpz_t());
            const Poly step = monomial(e, c);
            rem -= step * d;
            quot.push_back({e, std::move(c)});
        }
        return from_terms(std::move(quot));
    }

    /// Replaces variable v by the polynomial value (Horner in v).
    Poly substitute(std::size_t v, const Poly &value) const
    {
        const auto cs = coefficients_in(v);
        Poly r;
        for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
            r = r * value + *it;
        }
        return r;
    }

    std::string to_string() const;

private:
    static Poly merge(const Poly &a, const Poly &b, bool subtract)
    {
        Poly r;
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0;
        std::size_t j = 0;
        const GrlexGreater gt;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            if (j == b.terms_.size() || (i < a.terms_.size() && gt(a.terms_[i].exp, b.terms_[j].exp))) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (i == a.terms_.size() || gt(b.terms_[j].exp, a.terms_[i].exp)) {
                r.terms_.push_back(b.terms_[j++]);
                if (subtract) {
                    r.terms_.back().coef = -r.terms_.back().coef;
                }
            } else {
                mpz_class c = a.terms_[i].coef;
                if (subtract) {
                    c -= b.terms_[j].coef;
                } else {
                    c += b.terms_[j].coef;
                }
                if (c != 0) {
                    r.terms_.push_back({a.terms_[i].exp, std::move(c)});
                }
                ++i;
                ++j;
            }
        }
        return r;
    }

    std::vector<Term> terms_;
};

inline std::string Poly::to_string() const
{
    if (terms_.empty()) {
        return "0";
    }
    auto &reg = VariableRegistry::global();
    std::string out;
    bool first = true;
    for (const auto &t : terms_) {
        mpz_class c = t.coef;
        if (first) {
            if (c < 0) {
                out += "-";
                c = -c;
            }
        } else {
            out += c < 0 ? " - " : " + ";
            c = abs(c);
        }
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            if (t.exp[i] == 0) {
                continue;
            }
            if (!mono.empty()) {
                mono += "*";
            }
            mono += reg.name(i);
            if (t.exp[i] > 1) {
                mono += "^" + std::to_string(t.exp[i]);
            }
        }
        if (mono.empty()) {
            out += c.get_str();
        } else if (c == 1) {
            out += mono;
        } else {
            out += c.get_str() + "*" + mono;
        }
    }
    return out;
}

/// Pseudo-remainder of a by b with respect to variable v.
inline Poly pseudo_remainder(const Poly &a, const Poly &b, std::size_t v)
{
    const unsigned n = b.degree_in(v);
    const Poly lcb = b.coefficients_in(v).back();
    Poly r = a;
    unsigned m = r.degree_in(v);
    if (r.is_zero() || m < n) {
        return r;
    }
    unsigned e = m - n + 1;
    while (!r.is_zero() && r.degree_in(v) >= n) {
        const unsigned d = r.degree_in(v) - n;
        const Poly lcr = r.coefficients_in(v).back();
        r = lcb * r - (lcr * b).shifted(v, static_cast<int>(d));
        --e;
    }
    return lcb.pow(e) * r;
}

Poly gcd(const Poly &a, const Poly &b);

/// gcd of the coefficients of p viewed as a polynomial in v.
inline Poly content_in(const Poly &p, std::size_t v)
{
    Poly g;
    for (const auto &c : p.coefficients_in(v)) {
        if (c.is_zero()) {
            continue;
        }
        g = gcd(g, c);
        if (g.is_constant() && abs(g.constant_value()) == 1) {
            break;
        }
    }
    return g;
}

inline Poly with_positive_lead(Poly p)
{
    if (!p.is_zero() && p.leading_coef() < 0) {
        return -p;
    }
    return p;
}

/// Greatest common divisor over Z[x_1..x_k], normalized to a positive leading
/// coefficient. Recursive content/primitive-part Euclid on the lowest-index
/// variable present.
inline Poly gcd(const Poly &a, const Poly &b)
{
    if (a.is_zero()) {
        return with_positive_lead(b);
    }
    if (b.is_zero()) {
        return with_positive_lead(a);
    }
    if (a.is_constant() || b.is_constant()) {
        mpz_class g = a.is_constant() ? abs(a.constant_value()) : a.content();
        const mpz_class h = b.is_constant() ? abs(b.constant_value()) : b.content();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), h.get_mpz_t());
        return Poly(g);
    }
    if (a == b) {
        return with_positive_lead(a);
    }
    const auto va = a.first_variable();
    const auto vb = b.first_variable();
    const std::size_t v = std::min(*va, *vb);
    if (!a.depends_on(v)) {
        return gcd(a, content_in(b, v));
    }
    if (!b.depends_on(v)) {
        return gcd(content_in(a, v), b);
    }
    const Poly ca = content_in(a, v);
    const Poly cb = content_in(b, v);
    const Poly cg = gcd(ca, cb);
    Poly p = *a.divide_exact(ca);
    Poly q = *b.divide_exact(cb);
    if (p.degree_in(v) < q.degree_in(v)) {
        std::swap(p, q);
    }
    while (true) {
        Poly r = pseudo_remainder(p, q, v);
        if (r.is_zero()) {
            break;
        }
        if (!r.depends_on(v)) {
            q = Poly(1);
            break;
        }
        p = std::move(q);
        q = *r.divide_exact(content_in(r, v));
    }
    if (q.depends_on(v)) {
        q = *q.divide_exact(content_in(q, v));
    }
    return with_positive_lead(cg * q);
}

} // namespace dt4
