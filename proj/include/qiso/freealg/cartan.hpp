#pragma once

/**
 * @file cartan.hpp
 * @brief The commutative Cartan part of the localized algebra: fractions
 *        p(K) / prod_k D_k^{m_k} with D_k = q^k K + q^{-k} K^{-1}.
 *
 * K stands for q^H.  The numerator is a Laurent polynomial in K with Scalar
 * coefficients.  A fraction is reduced when no D_k in the denominator divides
 * the numerator; since distinct D_k are coprime, the reduced form is unique
 * and equality is structural.
 */

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qiso/scalars/scalar.hpp"

namespace qiso {

class CartanFraction {
public:
    using Numerator = std::map<int, Scalar>;   // power of K -> coefficient
    using Denominator = std::map<int, int>;    // k -> multiplicity of D_k

    CartanFraction() = default;
    CartanFraction(const Scalar& c)  // NOLINT(implicit)
    {
        if (!c.is_zero())
            num_.emplace(0, c);
    }
    CartanFraction(long c) : CartanFraction(Scalar(c)) {}  // NOLINT(implicit)

    CartanFraction(Numerator num, Denominator den) : num_(std::move(num)), den_(std::move(den))
    {
        clean();
        reduce();
    }

    /// K^n
    static CartanFraction k_power(int n) { return CartanFraction(Numerator{{n, Scalar(1)}}, {}); }
    /// G_k = D_k^{-1}
    static CartanFraction g(int k) { return CartanFraction(Numerator{{0, Scalar(1)}}, Denominator{{k, 1}}); }
    /// D_k itself, as a polynomial.
    static CartanFraction d(int k)
    {
        return CartanFraction(Numerator{{1, Scalar::q(k)}, {-1, Scalar::q(-k)}}, {});
    }

    const Numerator& num() const { return num_; }
    const Denominator& den() const { return den_; }
    bool is_zero() const { return num_.empty(); }
    bool is_one() const { return den_.empty() && num_.size() == 1 && num_.begin()->first == 0 && num_.begin()->second.is_one(); }
    bool is_scalar() const { return den_.empty() && (num_.empty() || (num_.size() == 1 && num_.begin()->first == 0)); }

    CartanFraction operator-() const
    {
        CartanFraction x = *this;
        for (auto& [e, c] : x.num_)
            c = -c;
        return x;
    }

    friend CartanFraction operator+(const CartanFraction& a, const CartanFraction& b) { return combine(a, b, false); }
    friend CartanFraction operator-(const CartanFraction& a, const CartanFraction& b) { return combine(a, b, true); }

    friend CartanFraction operator*(const CartanFraction& a, const CartanFraction& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        Numerator n = poly_mul(a.num_, b.num_);
        Denominator d = a.den_;
        for (const auto& [k, m] : b.den_)
            d[k] += m;
        return CartanFraction(std::move(n), std::move(d));
    }

    friend CartanFraction operator*(const Scalar& c, const CartanFraction& x)
    {
        if (c.is_zero())
            return {};
        CartanFraction y = x;
        for (auto& [e, v] : y.num_)
            v = c * v;
        return y;
    }

    CartanFraction& operator+=(const CartanFraction& o) { return *this = *this + o; }
    CartanFraction& operator*=(const CartanFraction& o) { return *this = *this * o; }

    /// phi(K) -> phi(q^n K).  Moves Cartan parts past E^n (n > 0) or F^{-n}.
    CartanFraction shifted(int n) const
    {
        if (n == 0)
            return *this;
        CartanFraction x;
        for (const auto& [e, c] : num_)
            x.num_.emplace(e, e == 0 ? c : c * Scalar::q(n * e));
        for (const auto& [k, m] : den_)
            x.den_.emplace(k + n, m);
        return x;
    }

    friend bool operator==(const CartanFraction& a, const CartanFraction& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const CartanFraction& a, const CartanFraction& b) { return !(a == b); }
    /// Deterministic structural order (for use as a key).
    friend bool operator<(const CartanFraction& a, const CartanFraction& b)
    {
        if (a.den_ != b.den_)
            return a.den_ < b.den_;
        return a.num_ < b.num_;
    }

    /// Evaluate at K = k_value in field F; coefficients are mapped through embed.
    template <class F, class Embed>
    F evaluate(const F& k_value, const F& q_value, Embed&& embed) const
    {
        F numv(0);
        for (const auto& [e, c] : num_)
            numv += embed(c) * LaurentPoly::ipow(k_value, e);
        F denv(1);
        for (const auto& [k, m] : den_) {
            F dk = LaurentPoly::ipow(q_value, k) * k_value + LaurentPoly::ipow(q_value, -k) / k_value;
            denv *= LaurentPoly::ipow(dk, m);
        }
        return numv / denv;
    }

    std::string str() const
    {
        std::string out;
        if (num_.empty())
            return "0";
        bool first = true;
        for (auto it = num_.rbegin(); it != num_.rend(); ++it) {
            auto [e, c] = *it;
            std::string factor = e == 0 ? "" : (e == 1 ? "K" : (e == -1 ? "Kinv" : (e > 0 ? "K^" + std::to_string(e) : "Kinv^" + std::to_string(-e))));
            std::string coef = c.str();
            bool neg = !c.needs_parens() && coef[0] == '-';
            if (neg)
                coef = coef.substr(1);
            if (c.needs_parens())
                coef = "(" + coef + ")";
            std::string body;
            if (factor.empty())
                body = coef;
            else if (coef == "1")
                body = factor;
            else
                body = coef + " " + factor;
            out += first ? (neg ? "-" : "") + body : (neg ? " - " : " + ") + body;
            first = false;
        }
        if (den_.empty())
            return out;
        std::string d;
        for (const auto& [k, m] : den_)
            for (int n = 0; n < m; ++n)
                d += " G[" + std::to_string(k) + "]";
        return (num_.size() > 1 ? "(" + out + ")" : out) + d;
    }

private:
    static Numerator poly_mul(const Numerator& a, const Numerator& b)
    {
        Numerator out;
        for (const auto& [ea, ca] : a)
            for (const auto& [eb, cb] : b) {
                Scalar v = ca * cb;
                auto [it, fresh] = out.try_emplace(ea + eb, v);
                if (!fresh)
                    it->second += v;
            }
        std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
        return out;
    }

    static Numerator poly_add(const Numerator& a, const Numerator& b, bool subtract)
    {
        Numerator out = a;
        for (const auto& [e, c] : b) {
            auto [it, fresh] = out.try_emplace(e, subtract ? -c : c);
            if (!fresh)
                it->second = subtract ? it->second - c : it->second + c;
        }
        std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
        return out;
    }

    static Numerator d_power(int k, int m)
    {
        Numerator out{{0, Scalar(1)}};
        Numerator dk{{1, Scalar::q(k)}, {-1, Scalar::q(-k)}};
        for (int n = 0; n < m; ++n)
            out = poly_mul(out, dk);
        return out;
    }

    static CartanFraction combine(const CartanFraction& a, const CartanFraction& b, bool subtract)
    {
        if (b.is_zero())
            return a;
        if (a.is_zero())
            return subtract ? -b : b;
        if (a.den_ == b.den_)
            return CartanFraction(poly_add(a.num_, b.num_, subtract), a.den_);
        Denominator lcm = a.den_;
        for (const auto& [k, m] : b.den_)
            lcm[k] = std::max(lcm[k], m);
        auto lift = [&lcm](const CartanFraction& x) {
            Numerator n = x.num_;
            for (const auto& [k, m] : lcm) {
                auto it = x.den_.find(k);
                int have = it == x.den_.end() ? 0 : it->second;
                if (m > have)
                    n = poly_mul(n, d_power(k, m - have));
            }
            return n;
        };
        return CartanFraction(poly_add(lift(a), lift(b), subtract), lcm);
    }

    void clean()
    {
        std::erase_if(num_, [](const auto& kv) { return kv.second.is_zero(); });
        std::erase_if(den_, [](const auto& kv) { return kv.second <= 0; });
        if (num_.empty())
            den_.clear();
    }

    /// num / D_k if exact.  D_k = K^{-1}(q^k K^2 + q^{-k}).
    std::optional<Numerator> divide_by_d(int k) const
    {
        if (num_.empty())
            return Numerator{};
        int lo = num_.begin()->first;
        // Polynomial P(K) = num / K^lo, dense coefficients in ascending degree.
        int deg = num_.rbegin()->first - lo;
        if (deg < 2)
            return std::nullopt;
        std::vector<Scalar> p(deg + 1);
        for (const auto& [e, c] : num_)
            p[e - lo] = c;
        Scalar tail = Scalar::q(-k);
        Scalar inv_lead = Scalar::q(-k);
        std::vector<Scalar> quot(deg - 1);
        for (int n = deg; n >= 2; --n) {
            if (p[n].is_zero())
                continue;
            Scalar c = p[n] * inv_lead;
            quot[n - 2] = c;
            p[n] = Scalar();
            p[n - 2] -= c * tail;
        }
        if (!p[0].is_zero() || !p[1].is_zero())
            return std::nullopt;
        Numerator out;
        // num / D_k = K^{lo+1} * quot(K)
        for (int n = 0; n < deg - 1; ++n)
            if (!quot[n].is_zero())
                out.emplace(n + lo + 1, quot[n]);
        return out;
    }

    void reduce()
    {
        for (auto it = den_.begin(); it != den_.end();) {
            while (it->second > 0) {
                auto q = divide_by_d(it->first);
                if (!q)
                    break;
                num_ = std::move(*q);
                --it->second;
            }
            it = it->second == 0 ? den_.erase(it) : std::next(it);
        }
        if (num_.empty())
            den_.clear();
    }

    Numerator num_;
    Denominator den_;
};

}  // namespace qiso
