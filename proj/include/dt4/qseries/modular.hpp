#pragma once

#include <vector>

#include <gmpxx.h>

#include "dt4/qseries/half_q_series.hpp"

namespace dt4
{

/// A q-exponent that may be half-integral, stored in half-units.
struct QOrder {
    int halves = 0;

    static constexpr QOrder q(int n) { return {2 * n}; }
    static constexpr QOrder half(int h) { return {h}; }
};

namespace detail
{

/// Integer coefficients of prod_{m>=1} (1 - q^m)^exponent for q^0 .. q^(n-1),
/// via the log-derivative recurrence n a_n = -exponent * sum_k sigma(k) a_{n-k}.
inline std::vector<mpz_class> euler_product_coefficients(long exponent, int n)
{
    std::vector<mpz_class> a(static_cast<std::size_t>(std::max(n, 0)));
    if (n <= 0) {
        return a;
    }
    std::vector<mpz_class> sigma(static_cast<std::size_t>(n));
    for (int d = 1; d < n; ++d) {
        for (int k = d; k < n; k += d) {
            sigma[static_cast<std::size_t>(k)] += d;
        }
    }
    a[0] = 1;
    for (int m = 1; m < n; ++m) {
        mpz_class acc = 0;
        for (int k = 1; k <= m; ++k) {
            acc += sigma[static_cast<std::size_t>(k)] * a[static_cast<std::size_t>(m - k)];
        }
        acc *= -exponent;
        mpz_divexact_ui(acc.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(m));
        a[static_cast<std::size_t>(m)] = acc;
    }
    return a;
}

/// Number of integer exponents e >= 0 with 2e < halves.
inline int integer_count_below(int halves) { return halves <= 0 ? 0 : (halves + 1) / 2; }

} // namespace detail

/// prod_{m>=1} (1 - q^m)^exponent, known below `order`.
inline HalfQSeries product_power(long exponent, QOrder order)
{
    if (order.halves <= 0) {
        throw Error("product_power: order must be positive");
    }
    HalfQSeries r(order.halves);
    r.set_bounds(0, order.halves);
    const auto a = detail::euler_product_coefficients(exponent, detail::integer_count_below(order.halves));
    for (std::size_t k = 0; k < a.size(); ++k) {
        r.accumulate(2 * static_cast<int>(k), EqScalar(a[k]));
    }
    return r;
}

/// 1/Delta = q^-1 prod (1 - q^m)^-24.
inline HalfQSeries delta_inverse(QOrder order)
{
    if (order.halves <= -2) {
        throw Error("delta_inverse: order must exceed -1");
    }
    return product_power(-24, QOrder{order.halves + 2}).shifted(-2);
}

/// Delta = q prod (1 - q^m)^24.
inline HalfQSeries delta(QOrder order)
{
    if (order.halves <= 2) {
        throw Error("delta: order must exceed 1");
    }
    return product_power(24, QOrder{order.halves - 2}).shifted(2);
}

/// Goettsche: sum_n chi(S^[n]) q^n = prod (1 - q^m)^-chi(S).
inline HalfQSeries goettsche_series(long euler_char, QOrder order) { return product_power(-euler_char, order); }

/// F(q) -> F(sign * q^(1/2)) for a series in integer powers of q.
inline HalfQSeries substitute_sqrt(const HalfQSeries &f, int sign)
{
    if (sign != 1 && sign != -1) {
        throw Error("substitute_sqrt: sign must be +1 or -1");
    }
    if (!f.has_only_integer_exponents()) {
        throw Error("substitute_sqrt: input has half-integer exponents");
    }
    const int trunc = f.is_exact() ? HalfQSeries::kExact : (f.truncation() >= 0 ? (f.truncation() + 1) / 2 : f.truncation() / 2);
    HalfQSeries r(trunc);
    const int lo = f.min_exponent() >= 0 ? (f.min_exponent() + 1) / 2 : f.min_exponent() / 2;
    r.set_bounds(std::min(lo, trunc), trunc);
    for (const auto &[e, c] : f.coefficients()) {
        const int qe = e / 2;
        r.accumulate(qe, (sign == -1 && qe % 2 != 0) ? -c : c);
    }
    return r;
}

/// Integer-exponent part of a series.
inline HalfQSeries even_projection(const HalfQSeries &f)
{
    HalfQSeries r(f.truncation());
    r.set_bounds(f.min_exponent(), f.truncation());
    for (const auto &[e, c] : f.coefficients()) {
        if (e % 2 == 0) {
            r.accumulate(e, c);
        }
    }
    return r;
}

/// F(q) -> F(q^k).
inline HalfQSeries substitute_power(const HalfQSeries &f, int k)
{
    if (k <= 0) {
        throw Error("substitute_power: k must be positive");
    }
    const int trunc = f.is_exact() ? HalfQSeries::kExact : f.truncation() * k;
    HalfQSeries r(trunc);
    r.set_bounds(f.min_exponent() * k, trunc);
    for (const auto &[e, c] : f.coefficients()) {
        r.accumulate(e * k, c);
    }
    return r;
}

} // namespace dt4
