#pragma once

/**
 * @file iso2.hpp
 * @brief U_q(iso_2) in the PBW basis T1^j T2^k I^l.
 *
 * Products are brought to normal form with the oriented rules
 *
 *     I  T2 -> q^{-1} T2 I + q^{-1/2} T1
 *     I  T1 -> q T1 I - q^{1/2} T2
 *     T2 T1 -> q^{-1} T1 T2
 *
 * which solve the three defining q-commutator relations for the
 * out-of-order product.
 */

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qiso/scalars/scalar.hpp"

namespace qiso {

/// Generators, numbered by their position in the PBW order.
enum class Iso2Gen : int { T1 = 0, T2 = 1, I = 2 };

inline const char* gen_name(Iso2Gen g)
{
    switch (g) {
    case Iso2Gen::T1:
        return "T1";
    case Iso2Gen::T2:
        return "T2";
    case Iso2Gen::I:
        return "I";
    }
    return "?";
}

/// T1^j T2^k I^l.
struct Iso2Monomial {
    int j = 0;
    int k = 0;
    int l = 0;

    int degree() const { return j + k + l; }

    friend bool operator==(const Iso2Monomial&, const Iso2Monomial&) = default;
};

/// Output order: total degree ascending, then (j, k, l) descending.
struct Iso2MonomialOrder {
    bool operator()(const Iso2Monomial& a, const Iso2Monomial& b) const
    {
        if (a.degree() != b.degree())
            return a.degree() < b.degree();
        return std::tie(a.j, a.k, a.l) > std::tie(b.j, b.k, b.l);
    }
};

class Iso2Element {
public:
    using TermMap = std::map<Iso2Monomial, Scalar, Iso2MonomialOrder>;

    Iso2Element() = default;
    Iso2Element(const Scalar& c)  // NOLINT(implicit)
    {
        if (!c.is_zero())
            terms_.emplace(Iso2Monomial{}, c);
    }
    Iso2Element(long c) : Iso2Element(Scalar(c)) {}  // NOLINT(implicit)

    static Iso2Element monomial(const Iso2Monomial& m, const Scalar& c = Scalar(1))
    {
        Iso2Element x;
        if (!c.is_zero())
            x.terms_.emplace(m, c);
        return x;
    }
    static Iso2Element generator(Iso2Gen g)
    {
        switch (g) {
        case Iso2Gen::T1:
            return monomial({1, 0, 0});
        case Iso2Gen::T2:
            return monomial({0, 1, 0});
        case Iso2Gen::I:
            return monomial({0, 0, 1});
        }
        return {};
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Scalar coefficient(const Iso2Monomial& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? Scalar() : it->second;
    }

    int degree() const
    {
        int d = 0;
        for (const auto& [m, c] : terms_)
            d = std::max(d, m.degree());
        return d;
    }

    void add_term(const Iso2Monomial& m, const Scalar& c)
    {
        if (c.is_zero())
            return;
        auto [it, fresh] = terms_.try_emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    Iso2Element operator-() const
    {
        Iso2Element x = *this;
        for (auto& [m, c] : x.terms_)
            c = -c;
        return x;
    }
    Iso2Element& operator+=(const Iso2Element& o)
    {
        for (const auto& [m, c] : o.terms_)
            add_term(m, c);
        return *this;
    }
    Iso2Element& operator-=(const Iso2Element& o)
    {
        for (const auto& [m, c] : o.terms_)
            add_term(m, -c);
        return *this;
    }
    friend Iso2Element operator+(Iso2Element a, const Iso2Element& b) { return a += b; }
    friend Iso2Element operator-(Iso2Element a, const Iso2Element& b) { return a -= b; }

    friend Iso2Element operator*(const Scalar& c, const Iso2Element& x)
    {
        if (c.is_zero())
            return {};
        Iso2Element y;
        for (const auto& [m, v] : x.terms_)
            y.terms_.emplace(m, c * v);
        return y;
    }
    friend Iso2Element operator*(const Iso2Element& x, const Scalar& c) { return c * x; }

    friend Iso2Element operator*(const Iso2Element& a, const Iso2Element& b);
    Iso2Element& operator*=(const Iso2Element& o) { return *this = *this * o; }

    Iso2Element pow(unsigned n) const;

    friend bool operator==(const Iso2Element& a, const Iso2Element& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Iso2Element& a, const Iso2Element& b) { return !(a == b); }

private:
    TermMap terms_;
};

namespace detail {

/// Normal-ordering helper; caches I * T1^x T2^y for the lifetime of one product.
class Iso2Multiplier {
public:
    /// (T1^j T2^k I^l) * (T1^a T2^b I^c)
    Iso2Element monomial_product(const Iso2Monomial& left, const Iso2Monomial& right)
    {
        Iso2Element middle = Iso2Element::monomial({right.j, right.k, 0});
        for (int n = 0; n < left.l; ++n)
            middle = left_I(middle);
        Iso2Element out;
        for (const auto& [m, c] : middle.terms()) {
            // T2^k T1^x = q^{-kx} T1^x T2^k
            Scalar coef = left.k * m.j == 0 ? c : c * Scalar::q(-left.k * m.j);
            out.add_term({left.j + m.j, left.k + m.k, m.l + right.l}, coef);
        }
        return out;
    }

private:
    /// I * x
    Iso2Element left_I(const Iso2Element& x)
    {
        Iso2Element out;
        for (const auto& [m, c] : x.terms()) {
            const Iso2Element& p = i_times(m.j, m.k);
            for (const auto& [pm, pc] : p.terms())
                out.add_term({pm.j, pm.k, pm.l + m.l}, c * pc);
        }
        return out;
    }

    /// I * T1^x T2^y, memoized.
    const Iso2Element& i_times(int x, int y)
    {
        auto key = std::make_pair(x, y);
        auto it = memo_.find(key);
        if (it != memo_.end())
            return it->second;
        Iso2Element result;
        if (x == 0 && y == 0) {
            result = Iso2Element::monomial({0, 0, 1});
        } else if (x > 0) {
            // I T1 (T1^{x-1} T2^y) = (q T1 I - q^{1/2} T2) T1^{x-1} T2^y
            Iso2Element inner = i_times(x - 1, y);
            for (const auto& [m, c] : inner.terms())
                result.add_term({m.j + 1, m.k, m.l}, Scalar::q() * c);
            result.add_term({x - 1, y + 1, 0}, -Scalar::t(1 - 2 * (x - 1)));
        } else {
            // I T2 T2^{y-1} = (q^{-1} T2 I + q^{-1/2} T1) T2^{y-1}
            Iso2Element inner = i_times(0, y - 1);
            for (const auto& [m, c] : inner.terms())
                result.add_term({m.j, m.k + 1, m.l}, Scalar::q(-1) * Scalar::q(-m.j) * c);
            result.add_term({1, y - 1, 0}, Scalar::t(-1));
        }
        return memo_.emplace(key, std::move(result)).first->second;
    }

    std::map<std::pair<int, int>, Iso2Element> memo_;
};

}  // namespace detail

inline Iso2Element operator*(const Iso2Element& a, const Iso2Element& b)
{
    detail::Iso2Multiplier mul;
    Iso2Element out;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            Scalar c = ca * cb;
            Iso2Element prod = mul.monomial_product(ma, mb);
            for (const auto& [m, v] : prod.terms())
                out.add_term(m, c * v);
        }
    return out;
}

inline Iso2Element Iso2Element::pow(unsigned n) const
{
    Iso2Element result(1), base = *this;
    while (n) {
        if (n & 1u)
            result = result * base;
        n >>= 1u;
        if (n)
            base = base * base;
    }
    return result;
}

inline Iso2Element iso2_gen(Iso2Gen g) { return Iso2Element::generator(g); }

/// Normal form of a word in the generators (product left to right).
inline Iso2Element nf_iso2_word(const std::vector<Iso2Gen>& word)
{
    Iso2Element x(1);
    for (Iso2Gen g : word)
        x = x * Iso2Element::generator(g);
    return x;
}

/// T1' = q^{-1/2} I T2 - q^{1/2} T2 I
inline Iso2Element t1_prime()
{
    Iso2Element I = iso2_gen(Iso2Gen::I), T2 = iso2_gen(Iso2Gen::T2);
    return Scalar::t(-1) * (I * T2) - Scalar::t(1) * (T2 * I);
}

/// C_q from its symmetric definition 1/2 (T1 T1' + T1' T1) + 1/2 (q + q^{-1}) T2^2.
inline Iso2Element casimir_definition()
{
    Iso2Element T1 = iso2_gen(Iso2Gen::T1), T2 = iso2_gen(Iso2Gen::T2), T1p = t1_prime();
    Scalar half = Scalar::rational(1, 2);
    return half * (T1 * T1p + T1p * T1) + half * (Scalar::q() + Scalar::q(-1)) * (T2 * T2);
}

/// C_q in PBW form: q^{-1} T1^2 + q T2^2 + q^{-3/2}(1 - q^2) T1 T2 I.
inline Iso2Element casimir_pbw()
{
    Iso2Element c;
    c.add_term({2, 0, 0}, Scalar::q(-1));
    c.add_term({0, 2, 0}, Scalar::q());
    c.add_term({1, 1, 1}, Scalar::t(-3) * (Scalar(1) - Scalar::q(2)));
    return c;
}

}  // namespace qiso
