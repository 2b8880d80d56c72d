#pragma once

// The localized algebra generated by K, Kinv, E, F and the inverses G[k] of
// D_k = q^k K + q^-k Kinv.  Every element is written uniquely as
// sum F^a E^b phi_ab(K) with phi_ab a reduced CartanFraction.

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qiso/freealg/cartan.hpp"

namespace qiso {

struct M2Monomial {
    int a = 0;  // power of F
    int b = 0;  // power of E

    int degree() const { return a + b; }
    friend bool operator==(const M2Monomial&, const M2Monomial&) = default;
};

struct M2MonomialOrder {
    bool operator()(const M2Monomial& x, const M2Monomial& y) const
    {
        if (x.degree() != y.degree())
            return x.degree() < y.degree();
        return std::tie(x.a, x.b) > std::tie(y.a, y.b);
    }
};

enum class M2Gen { K, Kinv, E, F, G };

class M2Element {
public:
    using TermMap = std::map<M2Monomial, CartanFraction, M2MonomialOrder>;

    M2Element() = default;
    M2Element(const Scalar& c) : M2Element(CartanFraction(c)) {}  // NOLINT(implicit)
    M2Element(long c) : M2Element(Scalar(c)) {}                  // NOLINT(implicit)
    M2Element(const CartanFraction& phi)                         // NOLINT(implicit)
    {
        if (!phi.is_zero())
            terms_.emplace(M2Monomial{}, phi);
    }

    static M2Element monomial(M2Monomial m, const CartanFraction& phi = CartanFraction(1))
    {
        M2Element x;
        if (!phi.is_zero())
            x.terms_.emplace(m, phi);
        return x;
    }

    /// G[k] carries its index; other generators ignore it.
    static M2Element generator(M2Gen g, int index = 0)
    {
        switch (g) {
        case M2Gen::K:
            return CartanFraction::k_power(1);
        case M2Gen::Kinv:
            return CartanFraction::k_power(-1);
        case M2Gen::E:
            return monomial({0, 1});
        case M2Gen::F:
            return monomial({1, 0});
        case M2Gen::G:
            return CartanFraction::g(index);
        }
        return {};
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    CartanFraction coefficient(M2Monomial m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? CartanFraction() : it->second;
    }

    void add_term(M2Monomial m, const CartanFraction& phi)
    {
        if (phi.is_zero())
            return;
        auto [it, fresh] = terms_.try_emplace(m, phi);
        if (!fresh) {
            it->second += phi;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    M2Element operator-() const
    {
        M2Element x = *this;
        for (auto& [m, phi] : x.terms_)
            phi = -phi;
        return x;
    }
    M2Element& operator+=(const M2Element& o)
    {
        for (const auto& [m, phi] : o.terms_)
            add_term(m, phi);
        return *this;
    }
    M2Element& operator-=(const M2Element& o)
    {
        for (const auto& [m, phi] : o.terms_)
            add_term(m, -phi);
        return *this;
    }
    friend M2Element operator+(M2Element x, const M2Element& y) { return x += y; }
    friend M2Element operator-(M2Element x, const M2Element& y) { return x -= y; }

    friend M2Element operator*(const Scalar& c, const M2Element& x)
    {
        if (c.is_zero())
            return {};
        M2Element y;
        for (const auto& [m, phi] : x.terms_)
            y.terms_.emplace(m, c * phi);
        return y;
    }
    friend M2Element operator*(const M2Element& x, const Scalar& c) { return c * x; }

    // (F^a E^b phi)(F^c E^d chi) = F^{a+c} E^{b+d} phi(q^{d-c} K) chi
    friend M2Element operator*(const M2Element& x, const M2Element& y)
    {
        M2Element out;
        for (const auto& [mx, phi] : x.terms_)
            for (const auto& [my, chi] : y.terms_)
                out.add_term({mx.a + my.a, mx.b + my.b}, phi.shifted(my.b - my.a) * chi);
        return out;
    }
    M2Element& operator*=(const M2Element& o) { return *this = *this * o; }

    M2Element pow(unsigned n) const
    {
        M2Element result(1), base = *this;
        while (n) {
            if (n & 1u)
                result = result * base;
            n >>= 1u;
            if (n)
                base = base * base;
        }
        return result;
    }

    friend bool operator==(const M2Element& x, const M2Element& y) { return x.terms_ == y.terms_; }
    friend bool operator!=(const M2Element& x, const M2Element& y) { return !(x == y); }

private:
    TermMap terms_;
};

inline M2Element m2_gen(M2Gen g, int index = 0) { return M2Element::generator(g, index); }

/// One letter of an m2 word: a generator, with its index for G.
struct M2Letter {
    M2Gen gen;
    int index = 0;
};

/// Normal form of a product of generators, left to right.
inline M2Element nf_m2hat_word(const std::vector<M2Letter>& word)
{
    M2Element x(1);
    for (const M2Letter& l : word)
        x = x * m2_gen(l.gen, l.index);
    return x;
}

}  // namespace qiso
