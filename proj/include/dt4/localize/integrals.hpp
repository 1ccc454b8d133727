#pragma once

#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "dt4/eqalg/laurent.hpp"
#include "dt4/localize/characters.hpp"

namespace dt4
{

/// One per-fixed-point term, reported for audit.
struct AuditTerm {
    std::string fixed_point;
    EqScalar term;
};

using AuditSink = std::function<void(const AuditTerm &)>;

struct LocalizationOptions {
    /// Applied to every weight before Euler classes are formed.
    Specialization specialization = Specialization::direction(2, 7);
    /// Evaluate lam -> 0 when the specialization is a direction.
    bool take_limit = true;
    unsigned jobs = 1;
    std::size_t batch = 64;
    AuditSink audit;
};

namespace detail
{

/// Euler class of a specialized character; zero weights are rejected both
/// before (symbolically) and after specialization.
inline void multiply_euler(FactoredScalar &f, const WeightCharacter &ch, const Specialization &sp, int sign = 1)
{
    for (const auto &[w, m] : ch.terms()) {
        if (w.is_zero()) {
            throw Error("non-generic torus weight / indeterminate Euler class");
        }
        const LinearForm x = sp.apply(w);
        if (x.is_zero()) {
            throw Error("specialization is not generic for weight " + w.to_string());
        }
        f.multiply_form(x, sign * m);
    }
}

inline std::string pair_label(const HilbFixedPoint &a, const HilbFixedPoint &b)
{
    return a.to_string() + "|" + b.to_string();
}

/// lam -> 0 limit of a scalar in (s, lam, ...).
inline EqScalar lam_limit(const EqScalar &x)
{
    const Poly zero(0);
    const Poly den = x.denominator().substitute(var::lam, zero);
    if (den.is_zero()) {
        throw Error("localization sum has no limit along the chosen direction");
    }
    return EqScalar::from(x.numerator().substitute(var::lam, zero), den);
}

} // namespace detail

/// Integrand at a pair of fixed points: polynomial times factored scalar.
using PairIntegrand = std::function<std::pair<Poly, FactoredScalar>(const HilbFixedPoint &, const HilbFixedPoint &)>;

/// sum over fixed points of Hilb^n1 x Hilb^n2 of integrand / (e(T1) e(T2)).
/// The integrand must already be specialized with options.specialization.
inline EqScalar localization_sum(const ToricSurfaceModel &model, int n1, int n2, const PairIntegrand &integrand,
                                 const LocalizationOptions &options = {})
{
    const auto h1 = hilb_fixed_points(model, n1);
    const auto h2 = hilb_fixed_points(model, n2);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < h1.size(); ++i) {
        for (std::size_t j = 0; j < h2.size(); ++j) {
            pairs.emplace_back(i, j);
        }
    }
    const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(pairs.size())));
    std::vector<FactoredSum> partial(jobs, FactoredSum(options.batch));
    std::vector<std::optional<AuditTerm>> audit(options.audit ? pairs.size() : 0);
    std::vector<std::exception_ptr> failures(jobs);

    auto work = [&](unsigned w) {
        try {
            for (std::size_t k = w; k < pairs.size(); k += jobs) {
                const auto &fp1 = h1[pairs[k].first];
                const auto &fp2 = h2[pairs[k].second];
                auto [num, factor] = integrand(fp1, fp2);
                detail::multiply_euler(factor, tangent_character(fp1, model), options.specialization, -1);
                detail::multiply_euler(factor, tangent_character(fp2, model), options.specialization, -1);
                if (options.audit) {
                    FactoredSum one;
                    one.add(num, factor);
                    audit[k] = AuditTerm{detail::pair_label(fp1, fp2), one.value()};
                }
                partial[w].add(num, factor);
            }
        } catch (...) {
            failures[w] = std::current_exception();
        }
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < jobs; ++w) {
            threads.emplace_back(work, w);
        }
        for (auto &t : threads) {
            t.join();
        }
    }
    for (const auto &f : failures) {
        if (f) {
            std::rethrow_exception(f);
        }
    }
    for (const auto &a : audit) {
        options.audit(*a);
    }
    FactoredSum total(options.batch);
    for (const auto &p : partial) {
        total.add(p);
    }
    EqScalar v = total.value();
    if (options.take_limit && !options.specialization.is_identity()) {
        v = detail::lam_limit(v);
    }
    return v;
}

// ---------------------------------------------------------------------------
// Type II product formula

enum class PrefactorVariant { product, typeIIB };

/// Integer inputs of the type II prefactor.
struct PrefactorData {
    long chi_L2 = 0;   ///< chi(L^2)
    long chi_L = 0;    ///< chi(L)
    long chi_Linv = 0; ///< chi(L^-1)
    long c1_D = 0;     ///< c1(S).D
    long D_sq = 0;     ///< D^2
    // used by the typeIIB variant only
    long L_alpha = 0;  ///< c1(L).alpha
    long L_c1 = 0;     ///< c1(L).c1(S)
    long L_sq = 0;     ///< c1(L)^2
};

/// Prefactor data for L = K + D on a model; alpha is only needed for typeIIB.
inline PrefactorData prefactor_data(const ToricSurfaceModel &model, const Divisor &l, const Divisor &alpha = {})
{
    auto scaled = [](const Divisor &d, long k) {
        Divisor r;
        for (const auto &[n, c] : d) {
            r[n] += k * c;
        }
        return r;
    };
    Divisor dd = l;
    dd["K"] -= 1;
    const Divisor c1 = scaled(ToricSurfaceModel::canonical(), -1);
    PrefactorData p;
    p.chi_L2 = euler_characteristic(model, scaled(l, 2));
    p.chi_L = euler_characteristic(model, l);
    p.chi_Linv = euler_characteristic(model, scaled(l, -1));
    p.c1_D = model.pair(c1, dd);
    p.D_sq = model.pair(dd, dd);
    p.L_alpha = alpha.empty() ? 0 : model.pair(l, alpha);
    p.L_c1 = model.pair(l, c1);
    p.L_sq = model.pair(l, l);
    return p;
}

/// (-1)^e / (2^chi(L^2) (-s)^(chi(L^2)+chi(L)-chi(L^-1))) with the sign
/// exponent e of the chosen variant.
inline EqScalar typeII_prefactor(const PrefactorData &d, PrefactorVariant variant = PrefactorVariant::product)
{
    long twice = 0;
    if (variant == PrefactorVariant::product) {
        twice = d.c1_D + 3 * d.D_sq;
    } else {
        twice = -2 * d.L_alpha + d.L_c1 + 3 * d.L_sq;
    }
    if (twice % 2 != 0) {
        throw Error("prefactor parity undefined: sign exponent " + std::to_string(twice) + "/2 is not an integer");
    }
    const long sign_exp = twice / 2;
    const long s_exp = d.chi_L2 + d.chi_L - d.chi_Linv;
    EqScalar v = EqScalar(sign_exp % 2 == 0 ? 1 : -1);
    v = v * EqScalar(2).pow(-d.chi_L2);
    return v * (-EqScalar::variable(var::s)).pow(-s_exp);
}

/// The pair integrand of the type II product formula, without 1/(e(T1) e(T2)).
inline std::pair<Poly, FactoredScalar> typeII_integrand(const HilbFixedPoint &fp1, const HilbFixedPoint &fp2,
                                                        const ToricSurfaceModel &model,
                                                        const std::vector<LinearForm> &l,
                                                        const std::vector<LinearForm> &k, const Specialization &sp)
{
    const int n = fp1.total + fp2.total;
    const LinearForm s = LinearForm::unit(var::s);
    std::vector<LinearForm> lt(l.size()), k_l(l.size()), k_2l(l.size()), inv_l(l.size());
    for (std::size_t p = 0; p < l.size(); ++p) {
        lt[p] = l[p] + s;
        k_l[p] = k[p] - l[p];
        k_2l[p] = k[p] - 2 * l[p];
        inv_l[p] = -l[p];
    }
    const std::vector<LinearForm> zero(l.size());
    const Poly num = chern_part(E_class_character(fp1, fp2, zero, model).specialized(sp), n);
    FactoredScalar f;
    detail::multiply_euler(f, tangent_character_twisted(fp1, model, lt), sp);
    detail::multiply_euler(f, tangent_character_twisted(fp2, model, lt), sp);
    detail::multiply_euler(f, E_class_character(fp1, fp2, k_2l, model).twisted(-2 * s), sp);
    detail::multiply_euler(f, E_class_character(fp1, fp2, k_l, model).twisted(-s), sp, -1);
    detail::multiply_euler(f, E_class_character(fp1, fp2, inv_l, model).twisted(-s), sp, -1);
    return {num, f};
}

/// Localization sum of the type II product formula (no prefactor).
inline EqScalar typeII_localization_sum(const ToricSurfaceModel &model, const TwistedBundleSpec &l,
                                        const Divisor &k, int n1, int n2, const LocalizationOptions &options = {})
{
    if (n1 < 0 || n2 < 0) {
        throw Error("typeII: n1, n2 must be nonnegative");
    }
    const auto lw = model.weights(l);
    const auto kw = model.weights(k);
    const auto sp = options.specialization;
    return localization_sum(
        model, n1, n2,
        [&](const HilbFixedPoint &a, const HilbFixedPoint &b) { return typeII_integrand(a, b, model, lw, kw, sp); },
        options);
}

struct TypeIIResult {
    EqScalar prefactor;
    EqScalar localization_sum;
    EqScalar value;
};

inline TypeIIResult typeII_component(const ToricSurfaceModel &model, const TwistedBundleSpec &l, const Divisor &k,
                                     int n1, int n2, const PrefactorData &pre,
                                     PrefactorVariant variant = PrefactorVariant::product,
                                     const LocalizationOptions &options = {})
{
    TypeIIResult r;
    r.prefactor = typeII_prefactor(pre, variant);
    r.localization_sum = typeII_localization_sum(model, l, k, n1, n2, options);
    r.value = r.prefactor * r.localization_sum;
    return r;
}

inline EqScalar typeII_component_integral(const ToricSurfaceModel &model, const TwistedBundleSpec &l,
                                          const Divisor &k, int n1, int n2, const PrefactorData &pre,
                                          PrefactorVariant variant = PrefactorVariant::product,
                                          const LocalizationOptions &options = {})
{
    return typeII_component(model, l, k, n1, n2, pre, variant, options).value;
}

// ---------------------------------------------------------------------------
// Q class

/// (a s)^chi(M) / e(RHom(I1, I2 (x) M t^-a)) at a fixed-point pair.
inline EqScalar Q_class_factor(const HilbFixedPoint &fp1, const HilbFixedPoint &fp2, const TwistedBundleSpec &m,
                               long a, const ToricSurfaceModel &model)
{
    if (a == 0) {
        throw Error("Q_class_factor: a must be nonzero");
    }
    const auto mw = model.weights(m);
    const long chi = cohomology_character(model, mw).rank();
    const WeightCharacter rhom = euler_character_chi(fp1, fp2, mw, model).twisted(LinearForm::unit(var::s, -a));
    FactoredScalar f;
    detail::multiply_euler(f, rhom, Specialization::identity(), -1);
    return (EqScalar(a) * EqScalar::variable(var::s)).pow(chi) * f.to_scalar();
}

// ---------------------------------------------------------------------------
// Mochizuki coefficient

struct MochizukiInput {
    TwistedBundleSpec l_beta1;
    TwistedBundleSpec l_beta2;
    TwistedBundleSpec l;
    long p_g = 0;
    /// Extra integer factor on e(V^{[n2]} t'^2); used by linearity checks.
    long numerator_scale = 1;
};

namespace detail
{

inline std::vector<LinearForm> weight_combo(const std::vector<LinearForm> &a, long ca, const std::vector<LinearForm> &b,
                                            long cb, const std::vector<LinearForm> &c, long cc)
{
    std::vector<LinearForm> r(a.size());
    for (std::size_t p = 0; p < a.size(); ++p) {
        r[p] = ca * a[p] + cb * b[p] + cc * c[p];
    }
    return r;
}

} // namespace detail

/// Mochizuki integrand at a pair, as a polynomial times factored scalar
/// (tangent Euler classes not included).
inline std::pair<Poly, FactoredScalar> mochizuki_integrand_parts(const HilbFixedPoint &fp1,
                                                                 const HilbFixedPoint &fp2,
                                                                 const MochizukiInput &in,
                                                                 const ToricSurfaceModel &model,
                                                                 const Specialization &sp)
{
    const LinearForm s = LinearForm::unit(var::s);
    const LinearForm t = LinearForm::unit(var::sp);
    const auto b1 = model.weights(in.l_beta1);
    const auto b2 = model.weights(in.l_beta2);
    const auto l = model.weights(in.l);
    const std::vector<const HilbFixedPoint *> fps{&fp1, &fp2};
    const std::vector<const std::vector<LinearForm> *> bs{&b1, &b2};
    const long c[2] = {-1, 1};

    Poly num = top_chern(V_class_character(fp1, b1, model).specialized(sp));
    num *= top_chern(V_class_character(fp2, b2, model).twisted(2 * t).specialized(sp));
    num *= Poly(in.numerator_scale);

    FactoredScalar f;
    // P(E) = 1 / e(RHom(E, E (x) L t))
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const auto m = detail::weight_combo(*bs[j], 1, *bs[i], -1, l, 1);
            const auto ch = euler_character_chi(*fps[i], *fps[j], m, model).twisted(s + (c[j] - c[i]) * t);
            detail::multiply_euler(f, ch, sp, -1);
        }
    }
    // 1/Q = e(RHom(E1, E2)) e(RHom(E2, E1))
    {
        const auto m12 = detail::weight_combo(b2, 1, b1, -1, l, 0);
        const auto m21 = detail::weight_combo(b1, 1, b2, -1, l, 0);
        detail::multiply_euler(f, euler_character_chi(fp1, fp2, m12, model).twisted(2 * t), sp, 1);
        detail::multiply_euler(f, euler_character_chi(fp2, fp1, m21, model).twisted(-2 * t), sp, 1);
    }
    // (2 s')^-(n1 + n2 - p_g)
    const long e = fp1.total + fp2.total - in.p_g;
    f.multiply_form(sp.apply(t), -e);
    f *= FactoredScalar(e >= 0 ? mpq_class(1, mpz_class(1) << static_cast<unsigned long>(e))
                               : mpq_class(mpz_class(1) << static_cast<unsigned long>(-e)));
    return {num, f};
}

/// Mochizuki integrand as a canonical scalar.
inline EqScalar mochizuki_A_integrand(const HilbFixedPoint &fp1, const HilbFixedPoint &fp2, const MochizukiInput &in,
                                      const ToricSurfaceModel &model,
                                      const Specialization &sp = Specialization::identity())
{
    auto [num, f] = mochizuki_integrand_parts(fp1, fp2, in, model, sp);
    FactoredSum one;
    one.add(num, f);
    return one.value();
}

/// A = Res_{s'=0} of sum over n1 + n2 = n - beta1.beta2 and fixed points of
/// integrand / (e(T1) e(T2)). The residue is taken after the fixed-point sum
/// and the lam -> 0 limit: chart weights with a nonzero e-part are not
/// invertible in nonequivariant cohomology, so a per-fixed-point residue would
/// miss the poles they carry.
inline EqScalar mochizuki_A(const ToricSurfaceModel &model, const MochizukiInput &in, int n,
                            const LocalizationOptions &options = {})
{
    const long b12 = model.pair(in.l_beta1.base_divisor, in.l_beta2.base_divisor);
    const long total = n - b12;
    if (total < 0) {
        return {};
    }
    const auto &sp = options.specialization;
    EqScalar sum;
    for (long n1 = total; n1 >= 0; --n1) {
        sum += localization_sum(
            model, static_cast<int>(n1), static_cast<int>(total - n1),
            [&](const HilbFixedPoint &a, const HilbFixedPoint &b) { return mochizuki_integrand_parts(a, b, in, model, sp); },
            options);
    }
    return residue(sum, var::sp);
}

} // namespace dt4
