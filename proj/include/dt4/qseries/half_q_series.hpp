#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "dt4/eqalg/scalar.hpp"

namespace dt4
{

/// Truncated Laurent series in q^(1/2) with EqScalar coefficients.
///
/// Exponents are counted in half-units: q^(1/2) has exponent 1, q has 2.
/// Coefficients are known exactly for min_exponent <= e < truncation; the
/// truncation kExact marks a finite (polynomial) series known to all orders.
class HalfQSeries
{
public:
    static constexpr int kExact = INT_MAX / 4;

    HalfQSeries() = default;

    /// Empty (zero) series known below `truncation` half-units.
    explicit HalfQSeries(int truncation) : min_(truncation), trunc_(truncation) {}

    /// c * q^(e/2), known to all orders.
    static HalfQSeries monomial(int half_exponent, EqScalar c)
    {
        HalfQSeries r;
        r.min_ = half_exponent;
        r.trunc_ = kExact;
        if (!c.is_zero()) {
            r.coeffs_.emplace(half_exponent, std::move(c));
        }
        return r;
    }

    static HalfQSeries constant(EqScalar c) { return monomial(0, std::move(c)); }

    int min_exponent() const { return min_; }
    int truncation() const { return trunc_; }
    bool is_exact() const { return trunc_ >= kExact; }
    const std::map<int, EqScalar> &coefficients() const { return coeffs_; }

    /// Coefficient at e half-units; error if e is not known.
    EqScalar coefficient(int half_exponent) const
    {
        if (half_exponent >= trunc_) {
            throw Error("coefficient at q^(" + std::to_string(half_exponent) + "/2) lies beyond truncation");
        }
        const auto it = coeffs_.find(half_exponent);
        return it == coeffs_.end() ? EqScalar() : it->second;
    }

    bool has_only_integer_exponents() const
    {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const auto &kv) { return kv.first % 2 == 0; });
    }

    /// Lowers the truncation to t (never raises it).
    HalfQSeries truncated(int t) const
    {
        HalfQSeries r = *this;
        r.trunc_ = std::min(trunc_, t);
        r.coeffs_.erase(r.coeffs_.lower_bound(r.trunc_), r.coeffs_.end());
        r.min_ = std::min(r.min_, r.trunc_);
        return r;
    }

    friend HalfQSeries operator+(const HalfQSeries &a, const HalfQSeries &b)
    {
        HalfQSeries r;
        r.trunc_ = std::min(a.trunc_, b.trunc_);
        r.min_ = std::min(std::min(a.min_, b.min_), r.trunc_);
        for (const auto *s : {&a, &b}) {
            for (const auto &[e, c] : s->coeffs_) {
                if (e < r.trunc_) {
                    r.accumulate(e, c);
                }
            }
        }
        return r;
    }

    HalfQSeries operator-() const
    {
        HalfQSeries r = *this;
        for (auto &[e, c] : r.coeffs_) {
            c = -c;
        }
        return r;
    }

    friend HalfQSeries operator-(const HalfQSeries &a, const HalfQSeries &b) { return a + (-b); }

    friend HalfQSeries operator*(const HalfQSeries &a, const HalfQSeries &b)
    {
        HalfQSeries r;
        r.min_ = a.min_ + b.min_;
        r.trunc_ = std::min(sat_add(a.trunc_, b.min_), sat_add(b.trunc_, a.min_));
        for (const auto &[ea, ca] : a.coeffs_) {
            for (const auto &[eb, cb] : b.coeffs_) {
                if (ea + eb < r.trunc_) {
                    r.accumulate(ea + eb, ca * cb);
                }
            }
        }
        r.min_ = std::min(r.min_, r.trunc_);
        return r;
    }

    friend HalfQSeries operator*(const EqScalar &k, const HalfQSeries &a)
    {
        HalfQSeries r = a;
        r.coeffs_.clear();
        if (!k.is_zero()) {
            for (const auto &[e, c] : a.coeffs_) {
                r.coeffs_.emplace(e, k * c);
            }
        }
        return r;
    }

    /// Multiplication by q^(shift/2).
    HalfQSeries shifted(int half_shift) const
    {
        HalfQSeries r;
        r.min_ = min_ + half_shift;
        r.trunc_ = sat_add(trunc_, half_shift);
        for (const auto &[e, c] : coeffs_) {
            r.coeffs_.emplace(e + half_shift, c);
        }
        return r;
    }

    /// Coefficient-wise equality on [min, order); throws if order exceeds
    /// either operand's truncation.
    friend bool equal_up_to(const HalfQSeries &a, const HalfQSeries &b, int order)
    {
        if (order > a.trunc_ || order > b.trunc_) {
            throw Error("series comparison beyond common truncation");
        }
        const int lo = std::min(a.min_, b.min_);
        for (int e = lo; e < order; ++e) {
            if (!(a.coefficient(e) == b.coefficient(e))) {
                return false;
            }
        }
        return true;
    }

    /// Equality up to the common truncation.
    friend bool agree(const HalfQSeries &a, const HalfQSeries &b)
    {
        const int t = std::min(a.trunc_, b.trunc_);
        if (t >= kExact) {
            return a.coeffs_ == b.coeffs_;
        }
        return equal_up_to(a, b, t);
    }

    bool is_zero_up_to_truncation() const { return coeffs_.empty(); }

    /// JSON: list of {exponent_num, exponent_den, coefficient} in lowest terms.
    nlohmann::json to_json() const
    {
        auto arr = nlohmann::json::array();
        for (const auto &[e, c] : coeffs_) {
            const bool integral = e % 2 == 0;
            arr.push_back({{"exponent_num", integral ? e / 2 : e},
                           {"exponent_den", integral ? 1 : 2},
                           {"coefficient", c.to_string()}});
        }
        return arr;
    }

    static HalfQSeries from_json(const nlohmann::json &j, int truncation)
    {
        HalfQSeries r(truncation);
        for (const auto &t : j) {
            const int num = t.at("exponent_num").get<int>();
            const int den = t.at("exponent_den").get<int>();
            if (den != 1 && den != 2) {
                throw Error("series exponent denominator must be 1 or 2");
            }
            const int e = den == 1 ? 2 * num : num;
            r.min_ = std::min(r.min_, e);
            r.accumulate(e, EqScalar::parse(t.at("coefficient").get<std::string>()));
        }
        return r;
    }

    /// Human-readable rendering in q, e.g. "q^-1 + 24 + 324*q + O(q^2)".
    std::string to_string() const
    {
        std::string out;
        for (const auto &[e, c] : coeffs_) {
            if (!out.empty()) {
                out += " + ";
            }
            std::string ex = e % 2 == 0 ? std::to_string(e / 2) : std::to_string(e) + "/2";
            const std::string cs = "(" + c.to_string() + ")";
            out += e == 0 ? cs : cs + "*q^" + ex;
        }
        if (out.empty()) {
            out = "0";
        }
        if (!is_exact()) {
            out += " + O(q^" + (trunc_ % 2 == 0 ? std::to_string(trunc_ / 2) : std::to_string(trunc_) + "/2") + ")";
        }
        return out;
    }

    // Used by the substitution operations below.
    void accumulate(int e, const EqScalar &c)
    {
        if (c.is_zero()) {
            return;
        }
        auto [it, inserted] = coeffs_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) {
                coeffs_.erase(it);
            }
        }
        min_ = std::min(min_, e);
    }

    void set_bounds(int min_exponent, int truncation)
    {
        min_ = min_exponent;
        trunc_ = truncation;
    }

private:
    static int sat_add(int a, int b)
    {
        if (a >= kExact || b >= kExact) {
            return kExact;
        }
        return std::min(a + b, static_cast<int>(kExact));
    }

    std::map<int, EqScalar> coeffs_;
    int min_ = 0;
    int trunc_ = kExact;
};

} // namespace dt4
