#pragma once

#include <array>
#include <cstdlib>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "dt4/eqalg/scalar.hpp"

namespace dt4
{

/// Integer linear form in the registered parameters: a torus weight.
struct LinearForm {
    std::array<long, kMaxVars> c{};

    static LinearForm unit(std::size_t v, long k = 1)
    {
        LinearForm f;
        f.c[v] = k;
        return f;
    }

    static LinearForm of(std::initializer_list<std::pair<std::size_t, long>> parts)
    {
        LinearForm f;
        for (const auto &[v, k] : parts) {
            f.c[v] += k;
        }
        return f;
    }

    bool is_zero() const
    {
        for (auto x : c) {
            if (x != 0) {
                return false;
            }
        }
        return true;
    }

    long operator[](std::size_t v) const { return c[v]; }

    friend LinearForm operator+(LinearForm a, const LinearForm &b)
    {
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            a.c[i] += b.c[i];
        }
        return a;
    }

    friend LinearForm operator-(LinearForm a, const LinearForm &b)
    {
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            a.c[i] -= b.c[i];
        }
        return a;
    }

    LinearForm operator-() const
    {
        LinearForm r;
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            r.c[i] = -c[i];
        }
        return r;
    }

    friend LinearForm operator*(long k, LinearForm a)
    {
        for (auto &x : a.c) {
            x *= k;
        }
        return a;
    }

    friend auto operator<=>(const LinearForm &, const LinearForm &) = default;

    Poly to_poly() const
    {
        std::vector<Poly::Term> terms;
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            if (c[i] != 0) {
                Poly::Term t{Exponents{}, c[i]};
                t.exp[i] = 1;
                terms.push_back(std::move(t));
            }
        }
        return Poly::from_terms(std::move(terms));
    }

    std::string to_string() const { return is_zero() ? "0" : to_poly().to_string(); }
};

/// Linear substitution of parameters: variable i is replaced by image[i].
/// The identity leaves every form unchanged.
struct Specialization {
    std::array<LinearForm, kMaxVars> image;

    static Specialization identity()
    {
        Specialization sp;
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            sp.image[i] = LinearForm::unit(i);
        }
        return sp;
    }

    /// e1 -> r1*lam, e2 -> r2*lam; other parameters fixed.
    static Specialization direction(long r1, long r2)
    {
        auto sp = identity();
        sp.image[var::e1] = LinearForm::unit(var::lam, r1);
        sp.image[var::e2] = LinearForm::unit(var::lam, r2);
        return sp;
    }

    LinearForm apply(const LinearForm &f) const
    {
        LinearForm r;
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            if (f.c[i] != 0) {
                r = r + f.c[i] * image[i];
            }
        }
        return r;
    }

    bool is_identity() const
    {
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            if (!(image[i] == LinearForm::unit(i))) {
                return false;
            }
        }
        return true;
    }
};

/// Finite multiset of torus weights with integer (possibly negative)
/// multiplicities: the character of a T-equivariant K-class at a fixed point.
class WeightCharacter
{
public:
    WeightCharacter() = default;

    static WeightCharacter single(const LinearForm &w, long mult = 1)
    {
        WeightCharacter ch;
        ch.add(w, mult);
        return ch;
    }

    void add(const LinearForm &w, long mult)
    {
        if (mult == 0) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(w, mult);
        if (!inserted) {
            it->second += mult;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    const std::map<LinearForm, long> &terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    long rank() const
    {
        long r = 0;
        for (const auto &[w, m] : terms_) {
            r += m;
        }
        return r;
    }

    /// Number of weights counted with multiplicity, negative terms included.
    long size_with_multiplicity() const
    {
        long r = 0;
        for (const auto &[w, m] : terms_) {
            r += std::labs(m);
        }
        return r;
    }

    WeightCharacter &operator+=(const WeightCharacter &o)
    {
        for (const auto &[w, m] : o.terms_) {
            add(w, m);
        }
        return *this;
    }

    WeightCharacter &operator-=(const WeightCharacter &o)
    {
        for (const auto &[w, m] : o.terms_) {
            add(w, -m);
        }
        return *this;
    }

    friend WeightCharacter operator+(WeightCharacter a, const WeightCharacter &b) { return a += b; }
    friend WeightCharacter operator-(WeightCharacter a, const WeightCharacter &b) { return a -= b; }

    WeightCharacter operator-() const
    {
        WeightCharacter r;
        for (const auto &[w, m] : terms_) {
            r.terms_.emplace(w, -m);
        }
        return r;
    }

    /// Tensor product of characters (convolution of weights).
    friend WeightCharacter operator*(const WeightCharacter &a, const WeightCharacter &b)
    {
        WeightCharacter r;
        for (const auto &[w1, m1] : a.terms_) {
            for (const auto &[w2, m2] : b.terms_) {
                r.add(w1 + w2, m1 * m2);
            }
        }
        return r;
    }

    /// Dual character: every weight negated.
    WeightCharacter dual() const
    {
        WeightCharacter r;
        for (const auto &[w, m] : terms_) {
            r.add(-w, m);
        }
        return r;
    }

    /// Tensor with a one-dimensional representation of weight w.
    WeightCharacter twisted(const LinearForm &w) const
    {
        WeightCharacter r;
        for (const auto &[x, m] : terms_) {
            r.add(x + w, m);
        }
        return r;
    }

    WeightCharacter specialized(const Specialization &sp) const
    {
        WeightCharacter r;
        for (const auto &[w, m] : terms_) {
            r.add(sp.apply(w), m);
        }
        return r;
    }

    friend bool operator==(const WeightCharacter &, const WeightCharacter &) = default;

    std::string to_string() const
    {
        std::string out = "{";
        bool first = true;
        for (const auto &[w, m] : terms_) {
            if (!first) {
                out += ", ";
            }
            first = false;
            out += w.to_string() + ":" + std::to_string(m);
        }
        return out + "}";
    }

private:
    std::map<LinearForm, long> terms_;
};

/// Rational constant times a product of powers of primitive linear forms.
/// Primitive forms are normalized so that the lowest-index nonzero coefficient
/// is positive; distinct normalized forms are non-associate irreducibles, so
/// the value converts to a canonical EqScalar without any gcd.
class FactoredScalar
{
public:
    FactoredScalar() : constant_(1) {}
    explicit FactoredScalar(mpq_class c) : constant_(std::move(c)) { constant_.canonicalize(); }

    static FactoredScalar zero() { return FactoredScalar(mpq_class(0)); }

    bool is_zero() const { return constant_ == 0; }
    const mpq_class &constant() const { return constant_; }
    const std::map<LinearForm, long> &factors() const { return factors_; }

    /// Multiplies by w^k. w must be a nonzero form.
    void multiply_form(const LinearForm &w, long k)
    {
        if (k == 0 || is_zero()) {
            return;
        }
        if (w.is_zero()) {
            if (k > 0) {
                *this = zero();
                return;
            }
            throw Error("non-generic torus weight / indeterminate Euler class");
        }
        long g = 0;
        for (auto x : w.c) {
            g = std::gcd(g, x);
        }
        LinearForm p = w;
        long lead = 0;
        for (auto x : w.c) {
            if (x != 0) {
                lead = x;
                break;
            }
        }
        if (lead < 0) {
            g = -g;
        }
        for (auto &x : p.c) {
            x /= g;
        }
        mpz_class gk;
        mpz_pow_ui(gk.get_mpz_t(), mpz_class(std::labs(g)).get_mpz_t(), static_cast<unsigned long>(std::labs(k)));
        if (g < 0 && (k % 2 != 0)) {
            gk = -gk;
        }
        if (k > 0) {
            constant_ *= gk;
        } else {
            constant_ /= gk;
        }
        auto [it, inserted] = factors_.try_emplace(p, k);
        if (!inserted) {
            it->second += k;
            if (it->second == 0) {
                factors_.erase(it);
            }
        }
    }

    FactoredScalar &operator*=(const FactoredScalar &o)
    {
        if (is_zero() || o.is_zero()) {
            return *this = zero();
        }
        constant_ *= o.constant_;
        for (const auto &[f, k] : o.factors_) {
            auto [it, inserted] = factors_.try_emplace(f, k);
            if (!inserted) {
                it->second += k;
                if (it->second == 0) {
                    factors_.erase(it);
                }
            }
        }
        return *this;
    }

    FactoredScalar inverse() const
    {
        if (is_zero()) {
            throw Error("division by zero FactoredScalar");
        }
        FactoredScalar r(1 / constant_);
        for (const auto &[f, k] : factors_) {
            r.factors_.emplace(f, -k);
        }
        return r;
    }

    EqScalar to_scalar() const
    {
        if (is_zero()) {
            return {};
        }
        Poly num(constant_.get_num());
        Poly den(constant_.get_den());
        for (const auto &[f, k] : factors_) {
            if (k > 0) {
                num *= f.to_poly().pow(static_cast<unsigned>(k));
            } else {
                den *= f.to_poly().pow(static_cast<unsigned>(-k));
            }
        }
        return EqScalar::from_canonical(std::move(num), std::move(den));
    }

private:
    mpq_class constant_;
    std::map<LinearForm, long> factors_;
};

/// Product of weights^multiplicity in factored form. Zero weights are an
/// error regardless of sign of multiplicity.
inline FactoredScalar euler_factored(const WeightCharacter &ch)
{
    FactoredScalar r;
    for (const auto &[w, m] : ch.terms()) {
        if (w.is_zero()) {
            throw Error("non-generic torus weight / indeterminate Euler class");
        }
        r.multiply_form(w, m);
    }
    return r;
}

/// Equivariant Euler class of a virtual character: prod w^mult.
inline EqScalar euler_of_character(const WeightCharacter &ch) { return euler_factored(ch).to_scalar(); }

/// Degree-`degree` part of prod (1 + w)^mult, expanding inverse factors as
/// power series. Uses Newton's identities c_d = (1/d) sum (-1)^(k-1) p_k c_{d-k}
/// with power sums p_k = sum mult * w^k.
inline Poly chern_part(const WeightCharacter &ch, int degree)
{
    if (degree < 0) {
        throw Error("chern_part: negative degree");
    }
    if (degree == 0) {
        return Poly(1);
    }
    std::vector<Poly> power_sums(static_cast<std::size_t>(degree) + 1);
    for (const auto &[w, m] : ch.terms()) {
        if (w.is_zero()) {
            continue;
        }
        const Poly wp = w.to_poly();
        Poly acc(1);
        for (int k = 1; k <= degree; ++k) {
            acc *= wp;
            power_sums[static_cast<std::size_t>(k)] += acc * mpz_class(m);
        }
    }
    std::vector<Poly> c(static_cast<std::size_t>(degree) + 1);
    c[0] = Poly(1);
    for (int d = 1; d <= degree; ++d) {
        Poly acc;
        for (int k = 1; k <= d; ++k) {
            Poly t = power_sums[static_cast<std::size_t>(k)] * c[static_cast<std::size_t>(d - k)];
            if (k % 2 == 0) {
                acc -= t;
            } else {
                acc += t;
            }
        }
        c[static_cast<std::size_t>(d)] = acc.divided_by(mpz_class(d));
    }
    return c[static_cast<std::size_t>(degree)];
}

/// Top Chern class c_rank for a character of nonnegative rank. For a genuine
/// representation this is the product of the weights, zero weights allowed.
inline Poly top_chern(const WeightCharacter &ch)
{
    const long r = ch.rank();
    if (r < 0) {
        throw Error("top_chern: negative rank");
    }
    return chern_part(ch, static_cast<int>(r));
}

} // namespace dt4
