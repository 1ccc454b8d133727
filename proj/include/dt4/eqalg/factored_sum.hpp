#pragma once

#include <cstddef>
#include <map>
#include <utility>

#include "dt4/eqalg/character.hpp"

namespace dt4
{

/// Accumulates sum_i numerator_i * factor_i over a common denominator that is
/// an integer times a product of primitive linear forms. Localization sums
/// only ever divide by torus weights, so this avoids general multivariate gcds:
/// cancellation is trial division by the known linear factors, and the final
/// value is already canonical.
class FactoredSum
{
public:
    explicit FactoredSum(std::size_t batch = 64) : batch_(batch == 0 ? 1 : batch) {}

    void add(const Poly &numerator, const FactoredScalar &factor)
    {
        if (numerator.is_zero() || factor.is_zero()) {
            return;
        }
        Poly t = numerator * mpz_class(factor.constant().get_num());
        std::map<LinearForm, long> tden;
        for (const auto &[f, k] : factor.factors()) {
            if (k > 0) {
                t *= f.to_poly().pow(static_cast<unsigned>(k));
            } else {
                tden.emplace(f, -k);
            }
        }
        merge_in(std::move(t), mpz_class(factor.constant().get_den()), tden);
    }

    void add(const FactoredScalar &factor) { add(Poly(1), factor); }

    void add(const FactoredSum &other)
    {
        merge_in(other.num_, other.int_den_, other.den_);
    }

    /// Canonical value of the sum.
    EqScalar value()
    {
        cancel();
        if (num_.is_zero()) {
            return {};
        }
        Poly den(int_den_);
        for (const auto &[f, k] : den_) {
            den *= f.to_poly().pow(static_cast<unsigned>(k));
        }
        return EqScalar::from_canonical(num_, std::move(den));
    }

    std::size_t terms_added() const { return added_; }

private:
    void merge_in(Poly t, mpz_class tint, const std::map<LinearForm, long> &tden)
    {
        if (t.is_zero()) {
            return;
        }
        ++added_;
        // common integer denominator
        mpz_class l;
        mpz_lcm(l.get_mpz_t(), int_den_.get_mpz_t(), tint.get_mpz_t());
        if (l != int_den_) {
            num_ *= mpz_class(l / int_den_);
        }
        t *= mpz_class(l / tint);
        int_den_ = l;
        // common form denominator
        for (const auto &[f, k] : tden) {
            auto &have = den_[f];
            if (k > have) {
                if (!num_.is_zero()) {
                    num_ *= f.to_poly().pow(static_cast<unsigned>(k - have));
                }
                have = k;
            }
        }
        for (const auto &[f, have] : den_) {
            const auto it = tden.find(f);
            const long k = it == tden.end() ? 0 : it->second;
            if (have > k) {
                t *= f.to_poly().pow(static_cast<unsigned>(have - k));
            }
        }
        num_ += t;
        if (added_ % batch_ == 0) {
            cancel();
        }
    }

    void cancel()
    {
        if (num_.is_zero()) {
            den_.clear();
            int_den_ = 1;
            return;
        }
        for (auto it = den_.begin(); it != den_.end();) {
            const Poly fp = it->first.to_poly();
            while (it->second > 0) {
                auto q = num_.divide_exact(fp);
                if (!q) {
                    break;
                }
                num_ = std::move(*q);
                --it->second;
            }
            it = it->second == 0 ? den_.erase(it) : std::next(it);
        }
        mpz_class g = num_.content();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), int_den_.get_mpz_t());
        if (g != 1) {
            num_ = num_.divided_by(g);
            int_den_ /= g;
        }
    }

    std::size_t batch_;
    std::size_t added_ = 0;
    Poly num_;
    mpz_class int_den_ = 1;
    std::map<LinearForm, long> den_;
};

} // namespace dt4
