#pragma once

#include <array>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "dt4/eqalg/factored_sum.hpp"
#include "dt4/partitions/partition.hpp"

namespace dt4
{

/// Tangent weights (w1, w2) of the surface at a torus-fixed point. The chart
/// coordinate functions carry the opposite characters -w1, -w2.
struct ToricFixedPoint {
    LinearForm w1;
    LinearForm w2;
};

struct SurfaceChernData {
    long c1_self = 0; ///< c1(S)^2
    long c2 = 0;      ///< c2(S)
    long chi_O = 0;   ///< chi(O_S)

    long p_g() const { return chi_O - 1; }
    friend bool operator==(const SurfaceChernData &, const SurfaceChernData &) = default;
};

/// Divisor class in a model's lattice: integer combination of named bundles.
using Divisor = std::map<std::string, long>;

/// A line bundle M twisted by t^t_weight and t'^tp_weight.
struct TwistedBundleSpec {
    Divisor base_divisor;
    long t_weight = 0;
    long tp_weight = 0;
};

/// Equivariant fixed-point data of a smooth projective toric surface (or a
/// disjoint union of such): tangent weights at the fixed points and the fiber
/// weight of each named equivariant line bundle at each fixed point.
///
/// Fiber weights use the "character of the local generating section"
/// convention, so the canonical bundle K has weight -(w1 + w2).
class ToricSurfaceModel
{
public:
    ToricSurfaceModel(std::string name, std::vector<ToricFixedPoint> points,
                      std::map<std::string, std::vector<LinearForm>> bundles, SurfaceChernData chern)
        : name_(std::move(name)), points_(std::move(points)), bundles_(std::move(bundles)), chern_(chern)
    {
        validate();
    }

    const std::string &name() const { return name_; }
    const std::vector<ToricFixedPoint> &fixed_points() const { return points_; }
    std::size_t num_fixed_points() const { return points_.size(); }
    long euler_char() const { return static_cast<long>(points_.size()); }
    const SurfaceChernData &chern() const { return chern_; }
    const std::map<std::string, std::vector<LinearForm>> &bundles() const { return bundles_; }

    /// Chart coordinate characters (u1, u2) = (-w1, -w2) at fixed point p.
    std::pair<LinearForm, LinearForm> chart_characters(std::size_t p) const
    {
        return {-points_[p].w1, -points_[p].w2};
    }

    /// Per-fixed-point fiber weights of a divisor class.
    std::vector<LinearForm> weights(const Divisor &d) const
    {
        std::vector<LinearForm> w(points_.size());
        for (const auto &[name, coef] : d) {
            const auto it = bundles_.find(name);
            if (it == bundles_.end()) {
                throw Error("divisor class outside the lattice of model '" + name_ + "': unknown bundle '" + name
                            + "'");
            }
            for (std::size_t p = 0; p < w.size(); ++p) {
                w[p] = w[p] + coef * it->second[p];
            }
        }
        return w;
    }

    std::vector<LinearForm> weights(const TwistedBundleSpec &m) const
    {
        auto w = weights(m.base_divisor);
        const auto shift = LinearForm::of({{var::s, m.t_weight}, {var::sp, m.tp_weight}});
        for (auto &x : w) {
            x = x + shift;
        }
        return w;
    }

    /// Intersection pairing by localization: sum_p a_p b_p / (w1 w2). Must be an
    /// integer; anything else means the bundle data is not equivariantly consistent.
    long pair_weights(const std::vector<LinearForm> &a, const std::vector<LinearForm> &b) const
    {
        FactoredSum sum;
        for (std::size_t p = 0; p < points_.size(); ++p) {
            FactoredScalar f;
            f.multiply_form(points_[p].w1, -1);
            f.multiply_form(points_[p].w2, -1);
            sum.add(a[p].to_poly() * b[p].to_poly(), f);
        }
        const EqScalar v = sum.value();
        if (!v.is_constant()) {
            throw Error("pairing on model '" + name_ + "' is not a constant: " + v.to_string());
        }
        const mpq_class q = v.constant_value();
        if (q.get_den() != 1) {
            throw Error("pairing on model '" + name_ + "' is not integral: " + q.get_str());
        }
        return q.get_num().get_si();
    }

    long pair(const Divisor &a, const Divisor &b) const { return pair_weights(weights(a), weights(b)); }

    static Divisor canonical() { return {{"K", 1}}; }

private:
    void validate()
    {
        for (const auto &fp : points_) {
            // independence of the two tangent weights: some 2x2 minor nonzero
            bool independent = false;
            for (std::size_t i = 0; i < kMaxVars && !independent; ++i) {
                for (std::size_t j = i + 1; j < kMaxVars && !independent; ++j) {
                    independent = fp.w1.c[i] * fp.w2.c[j] - fp.w1.c[j] * fp.w2.c[i] != 0;
                }
            }
            if (!independent) {
                throw Error("model '" + name_ + "': tangent weights at a fixed point are dependent");
            }
        }
        for (const auto &[n, w] : bundles_) {
            if (w.size() != points_.size()) {
                throw Error("model '" + name_ + "': bundle '" + n + "' has wrong number of weights");
            }
        }
        if (!bundles_.contains("K")) {
            std::vector<LinearForm> k;
            for (const auto &fp : points_) {
                k.push_back(-(fp.w1 + fp.w2));
            }
            bundles_.emplace("K", std::move(k));
        }
        if (12 * chern_.chi_O != chern_.c1_self + chern_.c2) {
            throw Error("model '" + name_ + "': Noether relation fails");
        }
        if (chern_.c2 != euler_char()) {
            throw Error("model '" + name_ + "': c2 differs from the number of fixed points");
        }
        const auto k = bundles_.at("K");
        if (pair_weights(k, k) != chern_.c1_self) {
            throw Error("model '" + name_ + "': K^2 by localization differs from c1_self");
        }
        // pair_weights rejects fiber weights that are not equivariantly consistent
        for (const auto &[n, w] : bundles_) {
            pair_weights(w, w);
            pair_weights(w, k);
        }
    }

    std::string name_;
    std::vector<ToricFixedPoint> points_;
    std::map<std::string, std::vector<LinearForm>> bundles_;
    SurfaceChernData chern_;
};

/// Fixed points of Hilb^n of the model.
inline std::vector<HilbFixedPoint> hilb_fixed_points(const ToricSurfaceModel &model, int n)
{
    return hilb_fixed_points(model.num_fixed_points(), n);
}

// ---------------------------------------------------------------------------
// Fans and presets

struct FanRay {
    long x;
    long y;
};

/// Smooth complete toric surface from rays listed counterclockwise. Named
/// bundles: D0..D{r-1} for the toric divisors, plus any aliases.
inline ToricSurfaceModel toric_model_from_fan(const std::string &name, const std::vector<FanRay> &rays,
                                              const std::map<std::string, Divisor> &aliases = {})
{
    const std::size_t r = rays.size();
    if (r < 3) {
        throw Error("fan needs at least three rays");
    }
    auto form = [](long a, long b) { return LinearForm::of({{var::e1, a}, {var::e2, b}}); };
    std::vector<ToricFixedPoint> points;
    // dual basis (m_a, m_b) of each cone (v_i, v_{i+1}); characters of coordinates
    std::vector<std::pair<LinearForm, LinearForm>> duals;
    for (std::size_t i = 0; i < r; ++i) {
        const auto &a = rays[i];
        const auto &b = rays[(i + 1) % r];
        const long det = a.x * b.y - a.y * b.x;
        if (det != 1 && det != -1) {
            throw Error("fan '" + name + "' is not smooth at cone " + std::to_string(i));
        }
        const LinearForm ma = form(b.y * det, -b.x * det);
        const LinearForm mb = form(-a.y * det, a.x * det);
        duals.emplace_back(ma, mb);
        points.push_back({-ma, -mb});
    }
    std::map<std::string, std::vector<LinearForm>> bundles;
    for (std::size_t rho = 0; rho < r; ++rho) {
        std::vector<LinearForm> w(r);
        // cone i contains rays i and i+1; generator character m with <m, v_rho> = -1
        w[rho] = -duals[rho].first;
        w[(rho + r - 1) % r] = -duals[(rho + r - 1) % r].second;
        bundles.emplace("D" + std::to_string(rho), std::move(w));
    }
    for (const auto &[alias, div] : aliases) {
        std::vector<LinearForm> w(r);
        for (const auto &[n, c] : div) {
            for (std::size_t p = 0; p < r; ++p) {
                w[p] = w[p] + c * bundles.at(n)[p];
            }
        }
        bundles.emplace(alias, std::move(w));
    }
    // c2 = number of cones; K^2 = 12 - r for smooth complete toric surfaces
    const SurfaceChernData chern{12 - static_cast<long>(r), static_cast<long>(r), 1};
    return ToricSurfaceModel(name, std::move(points), std::move(bundles), chern);
}

inline std::vector<std::string> preset_names() { return {"P2", "P1xP1", "F1", "F2", "F3"}; }

/// Built-in presets with standard fans.
inline ToricSurfaceModel builtin_preset(const std::string &name)
{
    if (name == "P2") {
        return toric_model_from_fan("P2", {{1, 0}, {0, 1}, {-1, -1}}, {{"H", {{"D0", 1}}}});
    }
    if (name == "P1xP1") {
        return toric_model_from_fan("P1xP1", {{1, 0}, {0, 1}, {-1, 0}, {0, -1}},
                                    {{"H1", {{"D0", 1}}}, {"H2", {{"D1", 1}}}});
    }
    if (name.size() == 2 && name[0] == 'F' && name[1] >= '1' && name[1] <= '9') {
        const long a = name[1] - '0';
        // D0 ~ D2 is the fiber, D1 the negative section (self-intersection -a)
        return toric_model_from_fan(name, {{1, 0}, {0, 1}, {-1, a}, {0, -1}},
                                    {{"F", {{"D0", 1}}}, {"E", {{"D1", 1}}}});
    }
    throw Error("unknown surface preset '" + name + "'");
}

/// Disjoint union; bundles of the i-th summand are renamed "i.NAME" and are
/// trivial on the other summands. K is the union of the canonical bundles.
inline ToricSurfaceModel disjoint_union(const std::vector<ToricSurfaceModel> &parts)
{
    std::vector<ToricFixedPoint> points;
    std::string name;
    SurfaceChernData chern;
    for (const auto &m : parts) {
        points.insert(points.end(), m.fixed_points().begin(), m.fixed_points().end());
        name += (name.empty() ? "" : "+") + m.name();
        chern.c1_self += m.chern().c1_self;
        chern.c2 += m.chern().c2;
        chern.chi_O += m.chern().chi_O;
    }
    std::map<std::string, std::vector<LinearForm>> bundles;
    std::size_t offset = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        for (const auto &[bn, w] : parts[i].bundles()) {
            if (bn == "K") {
                continue;
            }
            std::vector<LinearForm> full(points.size());
            std::copy(w.begin(), w.end(), full.begin() + static_cast<std::ptrdiff_t>(offset));
            bundles.emplace(std::to_string(i + 1) + "." + bn, std::move(full));
        }
        offset += parts[i].num_fixed_points();
    }
    return ToricSurfaceModel(name, std::move(points), std::move(bundles), chern);
}

// ---------------------------------------------------------------------------
// JSON preset files:
//   {"name": ..., "fixed_points": [{"w1": [a, b], "w2": [c, d]}, ...],
//    "bundles": {"H": [[a, b], ...], ...},
//    "chern": {"c1_self": .., "c2": .., "chi_O": ..}}
// Weights are coefficient pairs over (e1, e2).

inline nlohmann::json model_to_json(const ToricSurfaceModel &m)
{
    auto pairf = [](const LinearForm &f) { return nlohmann::json::array({f[var::e1], f[var::e2]}); };
    nlohmann::json j;
    j["name"] = m.name();
    j["fixed_points"] = nlohmann::json::array();
    for (const auto &fp : m.fixed_points()) {
        j["fixed_points"].push_back({{"w1", pairf(fp.w1)}, {"w2", pairf(fp.w2)}});
    }
    j["bundles"] = nlohmann::json::object();
    for (const auto &[n, w] : m.bundles()) {
        auto arr = nlohmann::json::array();
        for (const auto &f : w) {
            arr.push_back(pairf(f));
        }
        j["bundles"][n] = arr;
    }
    j["chern"] = {{"c1_self", m.chern().c1_self}, {"c2", m.chern().c2}, {"chi_O", m.chern().chi_O}};
    return j;
}

inline ToricSurfaceModel model_from_json(const nlohmann::json &j)
{
    auto formf = [](const nlohmann::json &a) {
        if (!a.is_array() || a.size() != 2) {
            throw Error("weight must be a pair [e1, e2]");
        }
        return LinearForm::of({{var::e1, a[0].get<long>()}, {var::e2, a[1].get<long>()}});
    };
    std::vector<ToricFixedPoint> pts;
    for (const auto &fp : j.at("fixed_points")) {
        pts.push_back({formf(fp.at("w1")), formf(fp.at("w2"))});
    }
    std::map<std::string, std::vector<LinearForm>> bundles;
    if (j.contains("bundles")) {
        for (const auto &[n, arr] : j.at("bundles").items()) {
            std::vector<LinearForm> w;
            for (const auto &f : arr) {
                w.push_back(formf(f));
            }
            bundles.emplace(n, std::move(w));
        }
    }
    const auto &c = j.at("chern");
    const SurfaceChernData chern{c.at("c1_self").get<long>(), c.at("c2").get<long>(), c.at("chi_O").get<long>()};
    return ToricSurfaceModel(j.value("name", std::string("custom")), std::move(pts), std::move(bundles), chern);
}

#ifndef DT4_DEFAULT_PRESET_DIR
#define DT4_DEFAULT_PRESET_DIR ""
#endif

/// Resolves a surface name: "A+B" gives a disjoint union; each summand is a
/// path to a JSON file, a preset JSON found in $DT4_PRESET_DIR or the default
/// preset directory, or a built-in preset.
inline ToricSurfaceModel load_surface(const std::string &spec)
{
    if (const auto plus = spec.find('+'); plus != std::string::npos) {
        std::vector<ToricSurfaceModel> parts;
        std::size_t start = 0;
        while (true) {
            const auto next = spec.find('+', start);
            parts.push_back(load_surface(spec.substr(start, next - start)));
            if (next == std::string::npos) {
                break;
            }
            start = next + 1;
        }
        return disjoint_union(parts);
    }
    auto read = [](const std::filesystem::path &p) {
        std::ifstream in(p);
        return model_from_json(nlohmann::json::parse(in));
    };
    if (std::filesystem::is_regular_file(spec)) {
        return read(spec);
    }
    std::vector<std::filesystem::path> dirs;
    if (const char *env = std::getenv("DT4_PRESET_DIR"); env != nullptr && *env != '\0') {
        dirs.emplace_back(env);
    }
    if (std::string(DT4_DEFAULT_PRESET_DIR).size() > 0) {
        dirs.emplace_back(DT4_DEFAULT_PRESET_DIR);
    }
    for (const auto &d : dirs) {
        const auto p = d / (spec + ".json");
        if (std::filesystem::is_regular_file(p)) {
            return read(p);
        }
    }
    return builtin_preset(spec);
}

// ---------------------------------------------------------------------------
// Cohomology characters

namespace detail
{

using Laurent = std::map<LinearForm, long>;

inline void laurent_add(Laurent &p, const LinearForm &e, long c)
{
    if (c == 0) {
        return;
    }
    auto [it, ins] = p.try_emplace(e, c);
    if (!ins) {
        it->second += c;
        if (it->second == 0) {
            p.erase(it);
        }
    }
}

/// Generic functional used to order torus characters.
inline long long xi(const LinearForm &f)
{
    return static_cast<long long>(f[var::e1]) + 1000003LL * static_cast<long long>(f[var::e2]);
}

/// True if v is "positive": xi(v) > 0.
inline bool positive(const LinearForm &v) { return xi(v) > 0; }

/// Exact quotient of a Laurent polynomial by (1 - e^v), xi(v) > 0.
inline Laurent divide_binomial(Laurent p, const LinearForm &v)
{
    Laurent q;
    std::size_t guard = 0;
    while (!p.empty()) {
        auto it = std::min_element(p.begin(), p.end(),
                                   [](const auto &a, const auto &b) { return xi(a.first) < xi(b.first); });
        const LinearForm m = it->first;
        const long c = it->second;
        laurent_add(q, m, c);
        laurent_add(p, m, -c);
        laurent_add(p, m + v, c);
        if (++guard > 2000000) {
            throw Error("cohomology character: inexact Atiyah-Bott division");
        }
    }
    return q;
}

inline Laurent laurent_mul(const Laurent &a, const Laurent &b)
{
    Laurent r;
    for (const auto &[ea, ca] : a) {
        for (const auto &[eb, cb] : b) {
            laurent_add(r, ea + eb, ca * cb);
        }
    }
    return r;
}

} // namespace detail

/// Character of H^*(S, M) = sum (-1)^i H^i(S, M) for the equivariant line
/// bundle with fiber weights m (only the (e1, e2)-part of m is used), via
/// the Atiyah-Bott sum  sum_p e^{m_p} / ((1 - e^{u1_p})(1 - e^{u2_p})).
inline WeightCharacter cohomology_character(const ToricSurfaceModel &model, const std::vector<LinearForm> &m)
{
    using detail::Laurent;
    const std::size_t np = model.num_fixed_points();
    // normalize each binomial 1 - e^u to (unit) * (1 - e^v) with v positive
    std::vector<std::pair<Laurent, std::map<LinearForm, long>>> terms;
    std::map<LinearForm, long> common;
    for (std::size_t p = 0; p < np; ++p) {
        const auto [u1, u2] = model.chart_characters(p);
        LinearForm mono;
        mono.c[var::e1] = m[p][var::e1];
        mono.c[var::e2] = m[p][var::e2];
        long sign = 1;
        std::map<LinearForm, long> den;
        for (const auto &u : {u1, u2}) {
            if (detail::positive(u)) {
                ++den[u];
            } else {
                // 1 - e^u = -e^u (1 - e^-u)
                sign = -sign;
                mono = mono - u;
                ++den[-u];
            }
        }
        for (const auto &[v, k] : den) {
            common[v] = std::max(common[v], k);
        }
        terms.push_back({Laurent{{mono, sign}}, std::move(den)});
    }
    Laurent numerator;
    for (auto &[num, den] : terms) {
        Laurent t = num;
        for (const auto &[v, k] : common) {
            const long have = den.contains(v) ? den.at(v) : 0;
            for (long i = have; i < k; ++i) {
                t = detail::laurent_mul(t, Laurent{{LinearForm{}, 1}, {v, -1}});
            }
        }
        for (const auto &[e, c] : t) {
            detail::laurent_add(numerator, e, c);
        }
    }
    for (const auto &[v, k] : common) {
        for (long i = 0; i < k; ++i) {
            numerator = detail::divide_binomial(std::move(numerator), v);
        }
    }
    WeightCharacter ch;
    for (const auto &[e, c] : numerator) {
        ch.add(e, c);
    }
    return ch;
}

/// chi(S, M) by Riemann-Roch: chi(O) + (M^2 - M.K)/2.
inline long euler_characteristic(const ToricSurfaceModel &model, const Divisor &d)
{
    const long m2 = model.pair(d, d);
    const long mk = model.pair(d, ToricSurfaceModel::canonical());
    if ((m2 - mk) % 2 != 0) {
        throw Error("Riemann-Roch parity failure");
    }
    return model.chern().chi_O + (m2 - mk) / 2;
}

} // namespace dt4
