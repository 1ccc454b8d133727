#pragma once

#include <utility>
#include <vector>

#include "dt4/eqalg/scalar.hpp"

namespace dt4
{

/// Laurent coefficients of x in variable v, from the leading pole up to and
/// including exponent `order`. Zero coefficients are omitted. Coefficients do
/// not involve v.
inline std::vector<std::pair<int, EqScalar>> laurent_expand(const EqScalar &x, std::size_t v, int order)
{
    std::vector<std::pair<int, EqScalar>> out;
    if (x.is_zero()) {
        return out;
    }
    const Poly &num = x.numerator();
    const Poly &den = x.denominator();
    const int kn = static_cast<int>(num.low_degree_in(v));
    const int kd = static_cast<int>(den.low_degree_in(v));
    const int valuation = kn - kd;
    if (valuation > order) {
        return out;
    }
    const auto n = num.shifted(v, -kn).coefficients_in(v);
    const auto d = den.shifted(v, -kd).coefficients_in(v);
    if (d.empty() || d[0].is_zero()) {
        throw Error("laurent_expand: denominator has no constant term after pole extraction");
    }
    const EqScalar d0(d[0]);
    const int count = order - valuation + 1;
    std::vector<EqScalar> c;
    c.reserve(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) {
        EqScalar acc = j < static_cast<int>(n.size()) ? EqScalar(n[static_cast<std::size_t>(j)]) : EqScalar();
        for (int i = 1; i <= j && i < static_cast<int>(d.size()); ++i) {
            const auto &di = d[static_cast<std::size_t>(i)];
            if (!di.is_zero()) {
                acc -= EqScalar(di) * c[static_cast<std::size_t>(j - i)];
            }
        }
        c.push_back(acc / d0);
        if (!c.back().is_zero()) {
            out.emplace_back(valuation + j, c.back());
        }
    }
    return out;
}

/// Coefficient of v^-1 in the Laurent expansion of x.
inline EqScalar residue(const EqScalar &x, std::size_t v)
{
    for (auto &[e, c] : laurent_expand(x, v, -1)) {
        if (e == -1) {
            return c;
        }
    }
    return {};
}

} // namespace dt4
