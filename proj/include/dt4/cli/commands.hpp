#pragma once

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dt4/localize/integrals.hpp"
#include "dt4/moduli/series.hpp"
#include "dt4/universal/universal.hpp"

namespace dt4::cli
{

using nlohmann::json;

struct Report {
    json body;
    int exit_code = 0;
};

struct Common {
    bool pretty = false;
    std::string audit_path;
    unsigned jobs = 1;
    PrefactorVariant variant = PrefactorVariant::product;
};

inline mpq_class parse_rational(const std::string &text)
{
    mpq_class q;
    if (text.empty() || q.set_str(text, 10) != 0) {
        throw Error("not a rational number: '" + text + "'");
    }
    if (q.get_den() == 0) {
        throw Error("zero denominator in '" + text + "'");
    }
    q.canonicalize();
    return q;
}

/// "H=2,E=-1" -> {H: 2, E: -1}; empty string is the zero class.
inline Divisor parse_divisor(const std::string &text)
{
    Divisor d;
    std::size_t start = 0;
    while (start < text.size()) {
        const auto comma = text.find(',', start);
        const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw Error("divisor term must look like NAME=COEF: '" + item + "'");
        }
        try {
            std::size_t used = 0;
            const long c = std::stol(item.substr(eq + 1), &used);
            if (used != item.size() - eq - 1) {
                throw std::invalid_argument(item);
            }
            d[item.substr(0, eq)] += c;
        } catch (const std::exception &) {
            throw Error("bad divisor coefficient in '" + item + "'");
        }
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return d;
}

inline std::string rational_string(const mpq_class &q) { return q.get_str(); }

inline json series_json(const HalfQSeries &f)
{
    return {{"terms", f.to_json()}, {"truncation_halves", f.truncation()}, {"text", f.to_string()}};
}

/// JSON-lines audit writer; serializes calls.
class AuditFile
{
public:
    explicit AuditFile(const std::string &path)
    {
        if (!path.empty()) {
            out_.open(path);
            if (!out_) {
                throw Error("cannot open audit file '" + path + "'");
            }
        }
    }

    AuditSink sink(const std::string &context)
    {
        if (!out_.is_open()) {
            return {};
        }
        return [this, context](const AuditTerm &t) {
            out_ << json{{"context", context}, {"fixed_point", t.fixed_point}, {"term", t.term.to_string()}}.dump()
                 << "\n";
        };
    }

private:
    std::ofstream out_;
};

// ---------------------------------------------------------------------------

/// Coefficients up to and including q^order.
inline Report cmd_zseries(int order)
{
    if (order < -1) {
        throw Error("--order must be at least -1");
    }
    const QOrder trunc = QOrder::q(order + 1);
    const auto lhs = z_typeI_series(trunc);
    const auto rhs = typeI_modular_side(trunc);
    const auto diff = lhs - rhs;
    const auto conj = z_typeII_conjecture_series(trunc);
    Report r;
    r.body = {{"command", "zseries"},
              {"order", order},
              {"typeI",
               {{"equation", "eq:typeIformula"},
                {"goettsche_side", series_json(lhs)},
                {"modular_side", series_json(rhs)},
                {"difference", series_json(diff)},
                {"difference_is_zero", diff.is_zero_up_to_truncation()}}},
              {"typeII_conjecture", {{"equation", "eq:typeIIgenfct"}, {"series", series_json(conj)}}}};
    r.exit_code = diff.is_zero_up_to_truncation() ? 0 : 1;
    return r;
}

inline Report cmd_chamber(long k, long rank, const std::string &delta, const std::string &t, const std::string &u)
{
    const EllipticSurface s(k);
    const Polarization h{parse_rational(t), parse_rational(u)};
    const mpq_class d = parse_rational(delta);
    Report r;
    const bool ample = is_ample(h, s);
    const auto bog = bogomolov_from_delta(d);
    r.body = {{"command", "chamber"},
              {"equation", "eq:smallfchamber"},
              {"k", k},
              {"r", rank},
              {"delta", rational_string(d)},
              {"t", rational_string(h.t)},
              {"u", rational_string(h.u)},
              {"ample", ample},
              {"t_over_u", h.u > 0 ? json(rational_string(h.t / h.u)) : json(nullptr)},
              {"bogomolov_ok", bog.ok},
              {"wall_threshold", nullptr},
              {"in_stable_chamber", nullptr}};
    if (bog.ok) {
        r.body["wall_threshold"] = rational_string(wall_threshold(s, rank, d));
    } else {
        r.body["bogomolov_message"] = bog.message;
    }
    if (!ample) {
        r.body["diagnostic"] = "polarization is not ample";
    } else if (bog.ok) {
        r.body["in_stable_chamber"] = in_stable_chamber(h, s, rank, d);
    }
    r.exit_code = ample && bog.ok ? 0 : 1;
    return r;
}

inline Report cmd_fixedloci(long m, long n)
{
    if (n < 0) {
        throw Error("--n must be nonnegative");
    }
    const auto comps = enumerate_typeII_K3(m, n);
    json list = json::array();
    bool all_vanish = true;
    for (const auto &c : comps) {
        list.push_back(to_json(c));
        all_vanish = all_vanish && c.vanishes;
    }
    json typeI = {{"equation", "eq:typeI"}};
    if (n <= 1) {
        typeI["locus"] = "empty";
    } else {
        typeI["locus"] = "deformation of K3^[" + std::to_string(2 * n - 3) + "]";
        typeI["hilbert_points"] = 2 * n - 3;
        typeI["contribution"] = typeI_DT_K3(n).to_string();
    }
    const bool count_ok = static_cast<long>(comps.size()) == typeII_K3_count(m, n);
    Report r;
    r.body = {{"command", "fixedloci"},
              {"equation", "eq:typeIIK3"},
              {"m", m},
              {"n", n},
              {"typeII_components", list},
              {"component_count", comps.size()},
              {"count_matches_closed_form", count_ok},
              {"all_vanishing", all_vanish},
              {"typeI", typeI}};
    bool ok = count_ok;
    if (m % 2 == 0) {
        const auto series = assemble_typeII_series_K3(m, QOrder::q(static_cast<int>(n) - 1), [](const auto &) -> EqScalar {
            throw Error("a non-vanishing component was found for even m");
        });
        r.body["even_m_series_is_zero"] = series.is_zero_up_to_truncation();
        ok = ok && all_vanish && series.is_zero_up_to_truncation();
    }
    r.exit_code = ok ? 0 : 1;
    return r;
}

// ---------------------------------------------------------------------------

namespace detail
{

inline std::vector<std::pair<long, long>> check_directions() { return {{2, 7}, {5, -3}, {-4, 9}}; }

inline EqScalar k3_prefactor(PrefactorVariant v)
{
    PrefactorData d;
    d.chi_L2 = d.chi_L = d.chi_Linv = 2;
    return typeII_prefactor(d, v);
}

struct TypeIIFit {
    UniversalPolynomial poly;
    std::size_t samples = 0;
    std::size_t rank = 0;
    std::size_t monomials = 0;
    bool holdout_ok = false;
    EqScalar holdout_value;
    EqScalar holdout_predicted;
    std::string holdout_label;
};

/// beta1 = f, beta2 = 0, D = m f on the elliptic K3 (k = 0).
inline ChernNumbers elliptic_K3_invariants(long m)
{
    const EllipticSurface k3(0);
    const DivisorClass b1 = DivisorClass::fiber();
    const DivisorClass b2{};
    const DivisorClass d = m * DivisorClass::fiber();
    const DivisorClass c1 = c1_class(k3);
    ChernNumbers c;
    c[ChernNumbers::b1_sq] = pair(b1, b1, k3);
    c[ChernNumbers::b2_sq] = pair(b2, b2, k3);
    c[ChernNumbers::b1_c1] = pair(b1, c1, k3);
    c[ChernNumbers::b2_c1] = pair(b2, c1, k3);
    c[ChernNumbers::b1_D] = pair(b1, d, k3);
    c[ChernNumbers::b2_D] = pair(b2, d, k3);
    c[ChernNumbers::b1_b2] = pair(b1, b2, k3);
    c[ChernNumbers::D_sq] = pair(d, d, k3);
    c[ChernNumbers::D_c1] = pair(d, c1, k3);
    c[ChernNumbers::c1_sq] = pair(c1, c1, k3);
    c[ChernNumbers::c2] = 12 * (k3.k + 2);
    return c;
}

inline EqScalar typeII_sum_for(const Configuration &c, int n1, int n2, const LocalizationOptions &o)
{
    const auto model = load_surface(c.surface);
    Divisor l = c.d;
    l["K"] += 1;
    return typeII_localization_sum(model, TwistedBundleSpec{l}, ToricSurfaceModel::canonical(), n1, n2, o);
}

inline TypeIIFit fit_typeII(int n1, int n2, int degree_bound, unsigned jobs)
{
    const auto battery = typeII_battery();
    const auto mask = typeII_invariants();
    TypeIIFit f;
    std::vector<ChernNumbers> points;
    std::vector<FitSample> samples;
    LocalizationOptions o;
    o.jobs = jobs;
    for (const auto &c : battery) {
        const auto model = load_surface(c.surface);
        points.push_back(chern_invariants(model, c.beta1, c.beta2, c.d));
    }
    f.monomials = monomials_up_to(degree_bound, mask).size();
    f.rank = design_rank(points, degree_bound, mask);
    f.samples = battery.size();
    if (f.rank < f.monomials) {
        // fit_universal names the deficient monomials; fail before any integral runs
        std::vector<FitSample> dummy;
        for (const auto &p : points) {
            dummy.push_back({p, EqScalar()});
        }
        fit_universal(dummy, degree_bound, mask);
    }
    for (std::size_t i = 0; i < battery.size(); ++i) {
        samples.push_back({points[i], typeII_sum_for(battery[i], n1, n2, o)});
    }
    f.poly = fit_universal(samples, degree_bound, mask);
    const auto h = typeII_holdout();
    const auto hm = load_surface(h.surface);
    f.holdout_label = h.label();
    f.holdout_value = typeII_sum_for(h, n1, n2, o);
    f.holdout_predicted = f.poly.evaluate(chern_invariants(hm, h.beta1, h.beta2, h.d));
    f.holdout_ok = f.holdout_value == f.holdout_predicted;
    return f;
}

} // namespace detail

struct LocalizeArgs {
    std::string surface = "P2";
    std::string divisor;
    int n1 = 0;
    int n2 = 0;
    long m = 1;
};

/// Type II product formula for one (n1, n2). On a toric model the sum is
/// evaluated directly; on K3 the value comes from the universal polynomial.
inline Report cmd_localize(const LocalizeArgs &a, const Common &common)
{
    if (a.n1 < 0 || a.n2 < 0) {
        throw Error("--n1 and --n2 must be nonnegative");
    }
    Report r;
    r.body = {{"command", "localize"}, {"equation", "eq:product"}, {"surface", a.surface}, {"n1", a.n1}, {"n2", a.n2}};
    r.body["prefactor_variant"] = common.variant == PrefactorVariant::product ? "product" : "typeIIB";
    AuditFile audit(common.audit_path);
    if (a.surface == "K3") {
        if (a.m < 1) {
            throw Error("--m must be at least 1");
        }
        const EqScalar pre = detail::k3_prefactor(common.variant);
        EqScalar integral(1);
        if (a.n1 + a.n2 > 0) {
            const auto fit = detail::fit_typeII(a.n1, a.n2, a.n1 + a.n2, common.jobs);
            integral = fit.poly.evaluate(ChernNumbers::K3_point());
            r.body["universal_polynomial"] = fit.poly.to_json();
            r.body["holdout_reproduced"] = fit.holdout_ok;
        }
        const EqScalar value = pre * integral;
        const EqScalar leading = EqScalar::variable(var::s).inverse() * EqScalar::fraction(1, 4);
        const EqScalar ratio = value / leading;
        const bool monomial = ratio.is_zero() || (ratio.numerator().terms().size() == 1
                                                  && ratio.denominator().terms().size() == 1);
        r.body["m"] = a.m;
        r.body["prefactor"] = pre.to_string();
        r.body["localization_sum"] = integral.to_string();
        r.body["value"] = value.to_string();
        r.body["conjecture_leading_term"] = leading.to_string();
        r.body["ratio_to_conjecture_leading_term"] = ratio.to_string();
        r.body["ratio_is_monomial_in_s"] = monomial;
        r.exit_code = monomial && r.body.value("holdout_reproduced", true) ? 0 : 1;
        return r;
    }
    const auto model = load_surface(a.surface);
    const Divisor d = parse_divisor(a.divisor);
    Divisor l = d;
    l["K"] += 1;
    const auto pre_data = prefactor_data(model, l);
    json values = json::array();
    EqScalar first;
    bool agree = true;
    const auto dirs = detail::check_directions();
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        LocalizationOptions o;
        o.specialization = Specialization::direction(dirs[i].first, dirs[i].second);
        o.jobs = common.jobs;
        if (i == 0) {
            o.audit = audit.sink("direction " + std::to_string(dirs[i].first) + "," + std::to_string(dirs[i].second));
        }
        const auto v = typeII_localization_sum(model, TwistedBundleSpec{l}, ToricSurfaceModel::canonical(), a.n1,
                                               a.n2, o);
        values.push_back({{"direction", {dirs[i].first, dirs[i].second}}, {"value", v.to_string()}});
        if (i == 0) {
            first = v;
        } else {
            agree = agree && v == first;
        }
    }
    const EqScalar pre = typeII_prefactor(pre_data, common.variant);
    r.body["divisor_D"] = a.divisor;
    r.body["chern_numbers"] = chern_invariants(model, {}, {}, d).to_json();
    r.body["prefactor_inputs"] = {{"chi_L2", pre_data.chi_L2}, {"chi_L", pre_data.chi_L},
                                  {"chi_Linv", pre_data.chi_Linv}, {"c1_D", pre_data.c1_D},
                                  {"D_sq", pre_data.D_sq}};
    r.body["prefactor"] = pre.to_string();
    r.body["localization_sum"] = first.to_string();
    r.body["limits_by_direction"] = values;
    r.body["direction_independent"] = agree;
    r.body["value"] = (pre * first).to_string();
    r.exit_code = agree ? 0 : 1;
    return r;
}

struct MochizukiArgs {
    std::string surface = "P2";
    std::string beta1;
    std::string beta2;
    std::string divisor;
    int n = 0;
    std::optional<long> p_g;
};

inline Report cmd_mochizuki(const MochizukiArgs &a, const Common &common)
{
    const auto model = load_surface(a.surface);
    Divisor l = parse_divisor(a.divisor);
    l["K"] += 1;
    MochizukiInput in{{parse_divisor(a.beta1)}, {parse_divisor(a.beta2)}, {l}, a.p_g.value_or(model.chern().p_g())};
    AuditFile audit(common.audit_path);
    Report r;
    r.body = {{"command", "mochizuki"},
              {"equation", "eq:A_term"},
              {"surface", a.surface},
              {"n", a.n},
              {"beta1", a.beta1},
              {"beta2", a.beta2},
              {"divisor_D", a.divisor},
              {"p_g", in.p_g}};
    const long b12 = model.pair(in.l_beta1.base_divisor, in.l_beta2.base_divisor);
    r.body["split_total"] = a.n - b12;
    json values = json::array();
    EqScalar first;
    bool agree = true;
    const auto dirs = detail::check_directions();
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        LocalizationOptions o;
        o.specialization = Specialization::direction(dirs[i].first, dirs[i].second);
        o.jobs = common.jobs;
        if (i == 0) {
            o.audit = audit.sink("mochizuki");
        }
        const auto v = mochizuki_A(model, in, a.n, o);
        values.push_back({{"direction", {dirs[i].first, dirs[i].second}}, {"value", v.to_string()}});
        if (i == 0) {
            first = v;
        } else {
            agree = agree && v == first;
        }
    }
    r.body["A"] = first.to_string();
    r.body["limits_by_direction"] = values;
    r.body["direction_independent"] = agree;
    r.exit_code = agree ? 0 : 1;
    return r;
}

struct FitArgs {
    int n1 = 1;
    int n2 = 0;
    std::optional<int> degree_bound;
};

inline Report cmd_fit(const FitArgs &a, const Common &common)
{
    if (a.n1 < 0 || a.n2 < 0) {
        throw Error("--n1 and --n2 must be nonnegative");
    }
    const int bound = a.degree_bound.value_or(a.n1 + a.n2);
    const auto fit = detail::fit_typeII(a.n1, a.n2, bound, common.jobs);
    Report r;
    json k3 = json::array();
    EqScalar k3_first;
    bool m_independent = true;
    for (long m : {0L, 1L, 3L}) {
        const auto point = detail::elliptic_K3_invariants(m);
        const EqScalar v = fit.poly.evaluate(point);
        k3.push_back({{"m", m}, {"invariants", point.to_json()}, {"value", v.to_string()}});
        if (m == 0) {
            k3_first = v;
        } else {
            m_independent = m_independent && v == k3_first;
        }
    }
    r.body = {{"command", "fit"},
              {"equation", "eq:product"},
              {"n1", a.n1},
              {"n2", a.n2},
              {"degree_bound", bound},
              {"samples", fit.samples},
              {"design_rank", fit.rank},
              {"monomials", fit.monomials},
              {"polynomial", fit.poly.to_json()},
              {"holdout", {{"configuration", fit.holdout_label},
                           {"localized", fit.holdout_value.to_string()},
                           {"predicted", fit.holdout_predicted.to_string()},
                           {"reproduced", fit.holdout_ok}}},
              {"K3_point", ChernNumbers::K3_point().to_json()},
              {"K3_values", k3},
              {"K3_m_independent", m_independent},
              {"K3_with_prefactor", (detail::k3_prefactor(common.variant) * k3_first).to_string()}};
    r.exit_code = fit.holdout_ok && m_independent ? 0 : 1;
    return r;
}

/// Human-readable summary of a report's top-level scalars.
inline void print_pretty(const json &body, std::ostream &os)
{
    for (const auto &[k, v] : body.items()) {
        if (v.is_primitive()) {
            os << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        } else if (v.is_object() && v.contains("text")) {
            os << k << ": " << v["text"].get<std::string>() << "\n";
        } else if (v.is_object()) {
            for (const auto &[k2, v2] : v.items()) {
                if (v2.is_primitive()) {
                    os << k << "." << k2 << ": " << (v2.is_string() ? v2.get<std::string>() : v2.dump()) << "\n";
                } else if (v2.is_object() && v2.contains("text")) {
                    os << k << "." << k2 << ": " << v2["text"].get<std::string>() << "\n";
                }
            }
        }
    }
}

} // namespace dt4::cli
