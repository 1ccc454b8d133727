#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "dt4/eqalg/variables.hpp"

namespace dt4
{

/// Weierstrass elliptic surface with K_S = O(k f); k = 0 is K3.
struct EllipticSurface {
    long k = 0;

    explicit EllipticSurface(long k_ = 0) : k(k_)
    {
        if (k < 0) {
            throw Error("elliptic surface: k must be nonnegative");
        }
    }
    bool is_K3() const { return k == 0; }
};

/// a * sigma + b * f
struct DivisorClass {
    long a = 0;
    long b = 0;

    static DivisorClass sigma() { return {1, 0}; }
    static DivisorClass fiber() { return {0, 1}; }

    friend DivisorClass operator+(DivisorClass x, DivisorClass y) { return {x.a + y.a, x.b + y.b}; }
    friend DivisorClass operator-(DivisorClass x, DivisorClass y) { return {x.a - y.a, x.b - y.b}; }
    friend DivisorClass operator*(long m, DivisorClass x) { return {m * x.a, m * x.b}; }
    friend bool operator==(const DivisorClass &, const DivisorClass &) = default;
    bool is_zero() const { return a == 0 && b == 0; }
};

struct GammaClass {
    long r = 0;
    DivisorClass beta;
    long n = 0;
};

/// h = t sigma + u f
struct Polarization {
    mpq_class t;
    mpq_class u;
};

struct TypeIIComponent {
    long b = 0;
    long n1 = 0;
    long n2 = 0;
    DivisorClass alpha;
    bool vanishes = false;
    // general enumeration only
    DivisorClass beta1;
    DivisorClass beta2;

    friend bool operator==(const TypeIIComponent &, const TypeIIComponent &) = default;
};

inline nlohmann::json to_json(const TypeIIComponent &c)
{
    return {{"b", c.b},
            {"n1", c.n1},
            {"n2", c.n2},
            {"alpha", {{"a", c.alpha.a}, {"b", c.alpha.b}}},
            {"vanishes", c.vanishes}};
}

/// sigma^2 = -(k+2), sigma.f = 1, f^2 = 0
inline long pair(const DivisorClass &x, const DivisorClass &y, const EllipticSurface &s)
{
    return -(s.k + 2) * x.a * y.a + x.a * y.b + y.a * x.b;
}

inline mpq_class pair(const Polarization &h, const DivisorClass &d, const EllipticSurface &s)
{
    return -(s.k + 2) * h.t * d.a + h.t * d.b + h.u * d.a;
}

/// c1(S) = -K_S = -k f
inline DivisorClass c1_class(const EllipticSurface &s) { return {0, -s.k}; }

inline bool is_effective(const DivisorClass &d) { return d.a >= 0 && d.b >= 0; }

inline bool is_ample(const Polarization &h, const EllipticSurface &s)
{
    return h.t > 0 && (s.k + 2) * h.t < h.u;
}

inline mpq_class mu_slope(const GammaClass &g, const Polarization &h, const EllipticSurface &s)
{
    if (g.r == 0) {
        throw Error("mu_slope: rank zero");
    }
    return pair(h, g.beta, s) / g.r;
}

inline mpq_class nu_slope(const GammaClass &g, const EllipticSurface &s)
{
    if (g.r == 0) {
        throw Error("nu_slope: rank zero");
    }
    mpq_class q(pair(g.beta, g.beta + c1_class(s), s), 2);
    q.canonicalize();
    return (q - g.n) / g.r;
}

inline mpq_class twist_slope_shift(const GammaClass &g, const DivisorClass &d, const Polarization &h,
                                   const EllipticSurface &s)
{
    return mu_slope(g, h, s) - pair(h, d, s);
}

struct BogomolovResult {
    mpq_class delta;
    bool ok = false;
    std::string message;
};

inline BogomolovResult bogomolov_from_delta(const mpq_class &delta)
{
    BogomolovResult r{delta, delta >= 0, ""};
    if (!r.ok) {
        r.message = "moduli space is empty";
    }
    return r;
}

/// Delta = n when beta^2 = 0 (beta = f on K3 in particular). Other classes
/// need an explicit discriminant.
inline BogomolovResult bogomolov_ok(const GammaClass &g, const EllipticSurface &s)
{
    if (g.r <= 0) {
        throw Error("bogomolov_ok: rank must be positive");
    }
    if (pair(g.beta, g.beta, s) != 0) {
        throw Error("bogomolov_ok: discriminant for beta^2 != 0 must be given explicitly");
    }
    return bogomolov_from_delta(mpq_class(g.n));
}

inline mpq_class wall_threshold(const EllipticSurface &s, long r, const mpq_class &delta)
{
    if (r <= 0 || delta < 0) {
        throw Error("wall_threshold: need r > 0 and delta >= 0");
    }
    return mpq_class(2) / (s.k + 2 + 2 * r * r * r * delta);
}

inline bool in_stable_chamber(const Polarization &h, const EllipticSurface &s, long r, const mpq_class &delta)
{
    if (!is_ample(h, s)) {
        throw Error("in_stable_chamber: polarization is not ample");
    }
    return h.t / h.u < wall_threshold(s, r, delta);
}

/// Type II components on K3 for L = O(m f), gamma = (2, f, n): ascending b,
/// then descending n1.
inline std::vector<TypeIIComponent> enumerate_typeII_K3(long m, long n)
{
    if (m < 1) {
        throw Error("enumerate_typeII_K3: m must be at least 1");
    }
    std::vector<TypeIIComponent> out;
    if (n < 0) {
        return out;
    }
    for (long b = 1; 2 * b <= m + 1; ++b) {
        const DivisorClass alpha{0, m + 1 - 2 * b};
        for (long n1 = n; n1 >= 0; --n1) {
            const long n2 = n - n1;
            if (2 * b == m + 1 && n1 < n2) {
                continue;
            }
            TypeIIComponent c;
            c.b = b;
            c.n1 = n1;
            c.n2 = n2;
            c.alpha = alpha;
            c.vanishes = !alpha.is_zero();
            c.beta1 = {0, b};
            c.beta2 = {0, 1 - b};
            out.push_back(c);
        }
    }
    return out;
}

/// Closed-form component count.
inline long typeII_K3_count(long m, long n)
{
    long c = 0;
    for (long b = 1; 2 * b <= m + 1; ++b) {
        c += 2 * b == m + 1 ? n / 2 + 1 : n + 1;
    }
    return c;
}

struct SearchBox {
    long a_min = 0;
    long a_max = 0;
    long b_min = 0;
    long b_max = 0;
};

/// Type II components for general beta with L = K_S(m f): beta1 ranges over
/// the box, beta2 = beta - beta1, alpha = beta2 + c1(L) - beta1 effective,
/// n1 + n2 + beta1.beta2 = n, (II.a) and (II.b). Ordered by beta1 (a, then b
/// ascending), then descending n1.
inline std::vector<TypeIIComponent> enumerate_typeII_general(const DivisorClass &beta, long m, long k, long n,
                                                             const Polarization &h, const SearchBox &box)
{
    const EllipticSurface s(k);
    const DivisorClass c1l{0, k + m};
    std::vector<TypeIIComponent> out;
    for (long a1 = box.a_min; a1 <= box.a_max; ++a1) {
        for (long b1 = box.b_min; b1 <= box.b_max; ++b1) {
            const DivisorClass beta1{a1, b1};
            const DivisorClass beta2 = beta - beta1;
            const DivisorClass alpha = beta2 + c1l - beta1;
            if (!is_effective(alpha)) {
                continue;
            }
            if (!(pair(h, beta2, s) < pair(h, beta1, s))) {
                continue;
            }
            const long total = n - pair(beta1, beta2, s);
            for (long n1 = total; n1 >= 0; --n1) {
                const long n2 = total - n1;
                if (alpha.is_zero() && n1 < n2) {
                    continue;
                }
                TypeIIComponent c;
                c.b = b1;
                c.n1 = n1;
                c.n2 = n2;
                c.alpha = alpha;
                // the alpha != 0 vanishing rule is a K3 statement
                c.vanishes = k == 0 && !alpha.is_zero();
                c.beta1 = beta1;
                c.beta2 = beta2;
                out.push_back(c);
            }
        }
    }
    return out;
}

} // namespace dt4
