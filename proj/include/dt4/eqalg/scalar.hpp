#pragma once

#include <cctype>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

#include "dt4/eqalg/polynomial.hpp"

namespace dt4
{

/// Exact element of Q(parameters): numerator/denominator in Z[parameters] in
/// canonical form (coprime, denominator with positive graded-lex leading
/// coefficient, zero stored as 0/1).
class EqScalar
{
public:
    EqScalar() : num_(), den_(1) {}
    EqScalar(long c) : num_(c), den_(1) {} // NOLINT(google-explicit-constructor)
    explicit EqScalar(const mpz_class &c) : num_(c), den_(1) {}
    explicit EqScalar(mpq_class c)
    {
        c.canonicalize();
        num_ = Poly(c.get_num());
        den_ = Poly(c.get_den());
    }
    explicit EqScalar(Poly p) : num_(std::move(p)), den_(1) {}

    static EqScalar fraction(long n, long d) { return EqScalar(mpq_class(n, d)); }

    /// Normalizes n/d. Throws on an identically zero denominator.
    static EqScalar from(Poly n, Poly d)
    {
        EqScalar r;
        r.num_ = std::move(n);
        r.den_ = std::move(d);
        r.normalize();
        return r;
    }

    /// Adopts n/d without a gcd computation. The caller guarantees canonical form.
    static EqScalar from_canonical(Poly n, Poly d)
    {
        EqScalar r;
        r.num_ = std::move(n);
        r.den_ = std::move(d);
        return r;
    }

    static EqScalar variable(std::string_view name)
    {
        return EqScalar(Poly::variable(VariableRegistry::global().index(name)));
    }

    static EqScalar variable(std::size_t idx) { return EqScalar(Poly::variable(idx)); }

    const Poly &numerator() const { return num_; }
    const Poly &denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const { return den_.is_constant(); }

    mpq_class constant_value() const
    {
        if (!is_constant()) {
            throw Error("EqScalar is not a constant: " + to_string());
        }
        mpq_class q(num_.constant_value(), den_.constant_value());
        q.canonicalize();
        return q;
    }

    bool depends_on(std::size_t v) const { return num_.depends_on(v) || den_.depends_on(v); }

    EqScalar operator-() const { return from_canonical(-num_, den_); }

    friend EqScalar operator+(const EqScalar &a, const EqScalar &b)
    {
        if (a.is_zero()) {
            return b;
        }
        if (b.is_zero()) {
            return a;
        }
        if (a.den_ == b.den_) {
            return from(a.num_ + b.num_, a.den_);
        }
        const Poly g = gcd(a.den_, b.den_);
        const Poly ad = *a.den_.divide_exact(g);
        const Poly bd = *b.den_.divide_exact(g);
        Poly n = a.num_ * bd + b.num_ * ad;
        Poly d = a.den_ * bd;
        if (n.is_zero()) {
            return {};
        }
        const Poly h = gcd(n, g);
        if (!(h.is_constant() && h.constant_value() == 1)) {
            n = *n.divide_exact(h);
            d = *d.divide_exact(h);
        }
        return from_canonical(std::move(n), std::move(d)).fix_sign();
    }

    friend EqScalar operator-(const EqScalar &a, const EqScalar &b) { return a + (-b); }

    friend EqScalar operator*(const EqScalar &a, const EqScalar &b)
    {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        const Poly g1 = gcd(a.num_, b.den_);
        const Poly g2 = gcd(b.num_, a.den_);
        Poly n = *a.num_.divide_exact(g1) * *b.num_.divide_exact(g2);
        Poly d = *a.den_.divide_exact(g2) * *b.den_.divide_exact(g1);
        return from_canonical(std::move(n), std::move(d)).fix_sign();
    }

    EqScalar inverse() const
    {
        if (is_zero()) {
            throw Error("division by zero EqScalar");
        }
        return from_canonical(den_, num_).fix_sign();
    }

    friend EqScalar operator/(const EqScalar &a, const EqScalar &b) { return a * b.inverse(); }

    EqScalar &operator+=(const EqScalar &o) { return *this = *this + o; }
    EqScalar &operator-=(const EqScalar &o) { return *this = *this - o; }
    EqScalar &operator*=(const EqScalar &o) { return *this = *this * o; }
    EqScalar &operator/=(const EqScalar &o) { return *this = *this / o; }

    EqScalar pow(long k) const
    {
        if (k < 0) {
            return inverse().pow(-k);
        }
        return from_canonical(num_.pow(static_cast<unsigned>(k)), den_.pow(static_cast<unsigned>(k)));
    }

    friend bool operator==(const EqScalar &a, const EqScalar &b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    /// Substitutes variable v by a value and renormalizes.
    EqScalar substitute(std::size_t v, const EqScalar &value) const
    {
        return eval_poly(num_, v, value) / eval_poly(den_, v, value);
    }

    /// Canonical string: "N" when the denominator is 1, otherwise "N/(D)" with
    /// N parenthesized when it has more than one term.
    std::string to_string() const
    {
        if (den_.is_constant() && den_.constant_value() == 1) {
            return num_.to_string();
        }
        std::string n = num_.to_string();
        if (num_.terms().size() > 1) {
            n = "(" + n + ")";
        }
        return n + "/(" + den_.to_string() + ")";
    }

    /// Parses the canonical string form (or any expression in + - * / ^ and
    /// parentheses over integers and registered names).
    static EqScalar parse(std::string_view text);

    friend std::ostream &operator<<(std::ostream &os, const EqScalar &x) { return os << x.to_string(); }

private:
    static EqScalar eval_poly(const Poly &p, std::size_t v, const EqScalar &value)
    {
        const auto cs = p.coefficients_in(v);
        EqScalar r;
        for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
            r = r * value + EqScalar(*it);
        }
        return r;
    }

    EqScalar &fix_sign()
    {
        if (den_.leading_coef() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        return *this;
    }

    void normalize()
    {
        if (den_.is_zero()) {
            throw Error("zero denominator in EqScalar");
        }
        if (num_.is_zero()) {
            den_ = Poly(1);
            return;
        }
        const Poly g = gcd(num_, den_);
        if (!(g.is_constant() && g.constant_value() == 1)) {
            num_ = *num_.divide_exact(g);
            den_ = *den_.divide_exact(g);
        }
        fix_sign();
    }

    Poly num_;
    Poly den_;
};

namespace detail
{

class ScalarParser
{
public:
    explicit ScalarParser(std::string_view s) : s_(s) {}

    EqScalar parse_all()
    {
        EqScalar v = expr();
        skip();
        if (pos_ != s_.size()) {
            fail("trailing input");
        }
        return v;
    }

private:
    [[noreturn]] void fail(const std::string &what) const
    {
        throw Error("cannot parse scalar '" + std::string(s_) + "': " + what + " at offset " + std::to_string(pos_));
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
    }

    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    EqScalar expr()
    {
        EqScalar v = term();
        while (true) {
            if (eat('+')) {
                v += term();
            } else if (eat('-')) {
                v -= term();
            } else {
                return v;
            }
        }
    }

    EqScalar term()
    {
        EqScalar v = factor();
        while (true) {
            if (eat('*')) {
                v *= factor();
            } else if (eat('/')) {
                EqScalar d = factor();
                if (d.is_zero()) {
                    fail("division by zero");
                }
                v /= d;
            } else {
                return v;
            }
        }
    }

    EqScalar factor()
    {
        if (eat('-')) {
            return -factor();
        }
        EqScalar b = base();
        if (eat('^')) {
            skip();
            bool neg = eat('-');
            skip();
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                ++pos_;
            }
            if (start == pos_) {
                fail("expected exponent");
            }
            const long k = std::stol(std::string(s_.substr(start, pos_ - start)));
            b = b.pow(neg ? -k : k);
        }
        return b;
    }

    EqScalar base()
    {
        skip();
        if (eat('(')) {
            EqScalar v = expr();
            if (!eat(')')) {
                fail("expected ')'");
            }
            return v;
        }
        if (pos_ >= s_.size()) {
            fail("unexpected end");
        }
        const std::size_t start = pos_;
        if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                ++pos_;
            }
            return EqScalar(mpz_class(std::string(s_.substr(start, pos_ - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_') {
            while (pos_ < s_.size()
                   && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\'')) {
                ++pos_;
            }
            const auto name = s_.substr(start, pos_ - start);
            const auto idx = VariableRegistry::global().find(name);
            if (!idx) {
                fail("unknown variable '" + std::string(name) + "'");
            }
            return EqScalar::variable(*idx);
        }
        fail("unexpected character");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline EqScalar EqScalar::parse(std::string_view text) { return detail::ScalarParser(text).parse_all(); }

} // namespace dt4
