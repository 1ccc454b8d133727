#pragma once

#include <functional>

#include "dt4/moduli/elliptic.hpp"
#include "dt4/qseries/modular.hpp"

namespace dt4
{

namespace detail
{
inline EqScalar s_inverse() { return EqScalar::variable(var::s).inverse(); }
} // namespace detail

/// Type I invariant on K3 for gamma = (2, f, n): s^-1 chi(K3^[2n-3]); zero for n <= 1.
inline EqScalar typeI_DT_K3(long n)
{
    if (n < 0) {
        throw Error("typeI_DT_K3: n must be nonnegative");
    }
    if (n <= 1) {
        return {};
    }
    const int j = static_cast<int>(2 * n - 3);
    return detail::s_inverse() * goettsche_series(24, QOrder::q(j + 1)).coefficient(2 * j);
}

/// sum_n typeI_DT_K3(n) q^(n-2), known below `order`.
inline HalfQSeries z_typeI_series(QOrder order)
{
    if (order.halves <= -4) {
        throw Error("z_typeI_series: order must exceed q^-2");
    }
    HalfQSeries r(order.halves);
    // q^(n-2) below order means 2n - 4 < halves
    const long n_max = (order.halves + 4 + 1) / 2 - 1;
    if (n_max >= 2) {
        const auto g = goettsche_series(24, QOrder::q(static_cast<int>(2 * n_max - 2)));
        for (long n = 2; n <= n_max; ++n) {
            r.accumulate(static_cast<int>(2 * n - 4),
                         detail::s_inverse() * g.coefficient(static_cast<int>(2 * (2 * n - 3))));
        }
    }
    r.set_bounds(-4, order.halves);
    return r;
}

/// s^-1 times the integer-exponent part of (Delta^-1(q^1/2) + Delta^-1(-q^1/2))/2.
inline HalfQSeries typeI_modular_side(QOrder order)
{
    if (order.halves <= -4) {
        throw Error("typeI_modular_side: order must exceed q^-2");
    }
    const auto di = delta_inverse(QOrder{std::max(2 * order.halves, 1)});
    const auto sum = substitute_sqrt(di, 1) + substitute_sqrt(di, -1);
    return (detail::s_inverse() * EqScalar::fraction(1, 2)) * even_projection(sum).truncated(order.halves);
}

/// Conjectured type II series: (s^-1/4) Delta^-1(q^2).
inline HalfQSeries z_typeII_conjecture_series(QOrder order)
{
    if (order.halves <= -4) {
        throw Error("z_typeII_conjecture_series: order must exceed q^-2");
    }
    // Delta^-1(q^2) below q^(h/2) needs Delta^-1 below q^(h/4)
    const int inner = std::max((order.halves + 3) / 4 * 2, 1);
    const auto di = substitute_power(delta_inverse(QOrder{inner}), 2).truncated(order.halves);
    return (detail::s_inverse() * EqScalar::fraction(1, 4)) * di;
}

using ComponentContribution = std::function<EqScalar(const TypeIIComponent &)>;

/// sum over n and components of enumerate_typeII_K3(m, n) of contribution * q^(n-2).
/// Components flagged as vanishing contribute zero and are never evaluated.
inline HalfQSeries assemble_typeII_series_K3(long m, QOrder order, const ComponentContribution &contribution)
{
    HalfQSeries r(order.halves);
    for (long n = 0; 2 * n - 4 < order.halves; ++n) {
        for (const auto &c : enumerate_typeII_K3(m, n)) {
            if (!c.vanishes) {
                r.accumulate(static_cast<int>(2 * n - 4), contribution(c));
            }
        }
    }
    r.set_bounds(-4, order.halves);
    return r;
}

} // namespace dt4
