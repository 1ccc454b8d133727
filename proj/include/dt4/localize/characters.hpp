#pragma once

#include <vector>

#include "dt4/localize/model.hpp"

namespace dt4
{

namespace detail
{

/// Character sum over boxes of x^i y^j with chart characters (u1, u2).
inline WeightCharacter box_character(const Partition &lambda, const LinearForm &u1, const LinearForm &u2)
{
    WeightCharacter q;
    for (const auto &[i, j] : lambda.boxes()) {
        q.add(i * u1 + j * u2, 1);
    }
    return q;
}

/// Chart contribution to E_M / M_p for ideals with quotients Q1, Q2:
/// Q2 + conj(Q1) X'Y' - conj(Q1) Q2 (1 - X')(1 - Y'), where X' = conj(x), Y' = conj(y).
inline WeightCharacter local_ext(const Partition &l1, const Partition &l2, const ToricFixedPoint &fp)
{
    const LinearForm u1 = -fp.w1;
    const LinearForm u2 = -fp.w2;
    const WeightCharacter q1 = box_character(l1, u1, u2).dual();
    const WeightCharacter q2 = box_character(l2, u1, u2);
    WeightCharacter koszul;
    koszul.add(LinearForm{}, 1);
    koszul.add(fp.w1, -1);
    koszul.add(fp.w2, -1);
    koszul.add(fp.w1 + fp.w2, 1);
    return q2 + q1.twisted(fp.w1 + fp.w2) - q1 * q2 * koszul;
}

/// Weights of M away from e1, e2 must not vary between fixed points.
inline LinearForm global_shift(const std::vector<LinearForm> &m)
{
    LinearForm shift = m.empty() ? LinearForm{} : m.front();
    shift.c[var::e1] = 0;
    shift.c[var::e2] = 0;
    for (const auto &w : m) {
        LinearForm t = w;
        t.c[var::e1] = 0;
        t.c[var::e2] = 0;
        if (!(t == shift)) {
            throw Error("bundle twist differs between fixed points");
        }
    }
    return shift;
}

inline void check_fixed_point(const HilbFixedPoint &fp, const ToricSurfaceModel &model)
{
    if (fp.assignment.size() != model.num_fixed_points()) {
        throw Error("fixed point does not match model '" + model.name() + "'");
    }
}

} // namespace detail

/// Tangent space to Hilb^n at a monomial fixed point, by the arm/leg formula:
/// each box contributes (l+1) w1 - a w2 and -l w1 + (a+1) w2.
inline WeightCharacter tangent_character(const HilbFixedPoint &fp, const ToricSurfaceModel &model)
{
    detail::check_fixed_point(fp, model);
    WeightCharacter t;
    for (std::size_t p = 0; p < model.num_fixed_points(); ++p) {
        const auto &lambda = fp.assignment[p];
        const auto &[w1, w2] = model.fixed_points()[p];
        for (const auto &[i, j] : lambda.boxes()) {
            const auto [a, l] = arm_leg(lambda, i, j);
            t.add((l + 1) * w1 - a * w2, 1);
            t.add((-l) * w1 + (a + 1) * w2, 1);
        }
    }
    return t;
}

/// Tangent space twisted chartwise: weight shift[p] is added to the chart-p terms.
inline WeightCharacter tangent_character_twisted(const HilbFixedPoint &fp, const ToricSurfaceModel &model,
                                                 const std::vector<LinearForm> &shift)
{
    detail::check_fixed_point(fp, model);
    WeightCharacter t;
    for (std::size_t p = 0; p < model.num_fixed_points(); ++p) {
        const auto &lambda = fp.assignment[p];
        const auto &[w1, w2] = model.fixed_points()[p];
        for (const auto &[i, j] : lambda.boxes()) {
            const auto [a, l] = arm_leg(lambda, i, j);
            t.add((l + 1) * w1 - a * w2 + shift[p], 1);
            t.add((-l) * w1 + (a + 1) * w2 + shift[p], 1);
        }
    }
    return t;
}

/// E^{n1,n2}_M = H^*(M) - RHom(I1, I2 (x) M) at a fixed-point pair.
inline WeightCharacter E_class_character(const HilbFixedPoint &fp1, const HilbFixedPoint &fp2,
                                         const std::vector<LinearForm> &m, const ToricSurfaceModel &model)
{
    detail::check_fixed_point(fp1, model);
    detail::check_fixed_point(fp2, model);
    WeightCharacter e;
    for (std::size_t p = 0; p < model.num_fixed_points(); ++p) {
        if (fp1.assignment[p].empty() && fp2.assignment[p].empty()) {
            continue;
        }
        e += detail::local_ext(fp1.assignment[p], fp2.assignment[p], model.fixed_points()[p]).twisted(m[p]);
    }
    return e;
}

inline WeightCharacter E_class_character(const HilbFixedPoint &fp1, const HilbFixedPoint &fp2,
                                         const TwistedBundleSpec &m, const ToricSurfaceModel &model)
{
    return E_class_character(fp1, fp2, model.weights(m), model);
}

/// Character of H^*(S, M) including the global t, t' twists of M.
inline WeightCharacter cohomology_character_twisted(const ToricSurfaceModel &model, const std::vector<LinearForm> &m)
{
    return cohomology_character(model, m).twisted(detail::global_shift(m));
}

/// chi(I1, I2 (x) M) = H^*(M) - E_M.
inline WeightCharacter euler_character_chi(const HilbFixedPoint &fp1, const HilbFixedPoint &fp2,
                                           const std::vector<LinearForm> &m, const ToricSurfaceModel &model)
{
    return cohomology_character_twisted(model, m) - E_class_character(fp1, fp2, m, model);
}

inline WeightCharacter euler_character_chi(const HilbFixedPoint &fp1, const HilbFixedPoint &fp2,
                                           const TwistedBundleSpec &m, const ToricSurfaceModel &model)
{
    return euler_character_chi(fp1, fp2, model.weights(m), model);
}

/// V^{[n]}_{L} = pushforward of O_Z (x) L: one weight per box, shifted by L at the chart.
inline WeightCharacter V_class_character(const HilbFixedPoint &fp, const std::vector<LinearForm> &l,
                                         const ToricSurfaceModel &model)
{
    detail::check_fixed_point(fp, model);
    WeightCharacter v;
    for (std::size_t p = 0; p < model.num_fixed_points(); ++p) {
        const auto [u1, u2] = model.chart_characters(p);
        v += detail::box_character(fp.assignment[p], u1, u2).twisted(l[p]);
    }
    return v;
}

inline WeightCharacter V_class_character(const HilbFixedPoint &fp, const TwistedBundleSpec &l,
                                         const ToricSurfaceModel &model)
{
    return V_class_character(fp, model.weights(l), model);
}

} // namespace dt4
