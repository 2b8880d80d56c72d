#pragma once

/**
 * @file laurent_poly.hpp
 * @brief Laurent polynomials in (t, s, r) over the Gaussian rationals.
 *
 * t stands for q^{1/2}, so every power of q that shows up in the algebra
 * (including half-integer ones) is an integral power of t.  Terms are kept
 * sorted by descending lexicographic exponent order on (e_t, e_s, e_r) with no
 * zero coefficients, so structural equality is polynomial equality.
 *
 * Besides ring arithmetic this header provides exact division and a
 * multivariate gcd (recursive primitive remainder sequences).  Monomials are
 * units in the Laurent ring, so gcds are only defined up to a monomial times
 * a constant; normalize_unit() fixes the representative.
 */

#include <algorithm>
#include <array>
#include <cassert>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "qiso/scalars/gaussian_rational.hpp"

namespace qiso {

enum class Var : int { T = 0, S = 1, R = 2 };
inline constexpr int kNumVars = 3;

using Exponent = std::array<int, kNumVars>;

inline Exponent operator+(const Exponent& a, const Exponent& b)
{
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Exponent operator-(const Exponent& a, const Exponent& b)
{
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

/// Strict lexicographic "greater" on (e_t, e_s, e_r).
inline bool lex_greater(const Exponent& a, const Exponent& b) { return a > b; }

class LaurentPoly {
public:
    using Term = std::pair<Exponent, GaussianRational>;

    LaurentPoly() = default;
    LaurentPoly(const GaussianRational& c)  // NOLINT(implicit)
    {
        if (!c.is_zero())
            terms_.emplace_back(Exponent{0, 0, 0}, c);
    }
    LaurentPoly(long c) : LaurentPoly(GaussianRational(c)) {}  // NOLINT(implicit)

    static LaurentPoly monomial(const Exponent& e, const GaussianRational& c = 1)
    {
        LaurentPoly p;
        if (!c.is_zero())
            p.terms_.emplace_back(e, c);
        return p;
    }
    static LaurentPoly variable(Var v, int power = 1)
    {
        Exponent e{0, 0, 0};
        e[static_cast<int>(v)] = power;
        return monomial(e);
    }

    /// Build from unsorted, possibly repeated terms.
    static LaurentPoly from_terms(std::vector<Term> terms)
    {
        LaurentPoly p;
        p.terms_ = std::move(terms);
        p.canonicalize();
        return p;
    }

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == Exponent{0, 0, 0}); }
    bool is_one() const { return is_constant() && !terms_.empty() && terms_[0].second.is_one(); }

    const Term& leading() const { return terms_.front(); }
    const Term& trailing() const { return terms_.back(); }

    GaussianRational constant_term() const
    {
        for (const auto& [e, c] : terms_)
            if (e == Exponent{0, 0, 0})
                return c;
        return {};
    }

    /// Bitmask of variables with a nonzero exponent somewhere.
    unsigned vars() const
    {
        unsigned m = 0;
        for (const auto& [e, c] : terms_)
            for (int v = 0; v < kNumVars; ++v)
                if (e[v] != 0)
                    m |= 1u << v;
        return m;
    }

    int max_degree(int v) const
    {
        assert(!terms_.empty());
        int d = terms_[0].first[v];
        for (const auto& t : terms_)
            d = std::max(d, t.first[v]);
        return d;
    }
    int min_degree(int v) const
    {
        assert(!terms_.empty());
        int d = terms_[0].first[v];
        for (const auto& t : terms_)
            d = std::min(d, t.first[v]);
        return d;
    }
    /// Componentwise minimum exponent (the monomial content).
    Exponent min_exponent() const
    {
        Exponent m{0, 0, 0};
        if (terms_.empty())
            return m;
        m = terms_[0].first;
        for (const auto& t : terms_)
            for (int v = 0; v < kNumVars; ++v)
                m[v] = std::min(m[v], t.first[v]);
        return m;
    }

    LaurentPoly operator-() const
    {
        LaurentPoly p = *this;
        for (auto& t : p.terms_)
            t.second = -t.second;
        return p;
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) { return merge(a, b, false); }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return merge(a, b, true); }
    LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
    LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        if (a.is_monomial())
            return b.times_monomial(a.terms_[0].first, a.terms_[0].second);
        if (b.is_monomial())
            return a.times_monomial(b.terms_[0].first, b.terms_[0].second);
        std::map<Exponent, GaussianRational, std::greater<>> acc;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                auto [it, fresh] = acc.try_emplace(ea + eb, ca);
                if (fresh)
                    it->second *= cb;
                else
                    it->second += ca * cb;
            }
        LaurentPoly p;
        p.terms_.reserve(acc.size());
        for (auto& [e, c] : acc)
            if (!c.is_zero())
                p.terms_.emplace_back(e, std::move(c));
        return p;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    LaurentPoly times_monomial(const Exponent& e, const GaussianRational& c) const
    {
        if (c.is_zero())
            return {};
        LaurentPoly p;
        p.terms_.reserve(terms_.size());
        for (const auto& [te, tc] : terms_)
            p.terms_.emplace_back(te + e, c.is_one() ? tc : tc * c);
        return p;
    }
    LaurentPoly shifted(const Exponent& e) const { return times_monomial(e, 1); }

    LaurentPoly scaled(const GaussianRational& c) const { return times_monomial({0, 0, 0}, c); }

    LaurentPoly pow(unsigned n) const
    {
        LaurentPoly result(1), base = *this;
        while (n) {
            if (n & 1u)
                result *= base;
            n >>= 1u;
            if (n)
                base *= base;
        }
        return result;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    /// Deterministic total order, used for sorting output only.
    friend bool operator<(const LaurentPoly& a, const LaurentPoly& b)
    {
        return std::lexicographical_compare(a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
                                            [](const Term& x, const Term& y) {
                                                if (x.first != y.first)
                                                    return x.first > y.first;
                                                return x.second < y.second;
                                            });
    }

    /// Coefficients with respect to variable v: exponent -> polynomial free of v.
    std::map<int, LaurentPoly> coefficients_in(int v) const
    {
        std::map<int, std::vector<Term>> bucket;
        for (const auto& [e, c] : terms_) {
            Exponent f = e;
            f[v] = 0;
            bucket[e[v]].emplace_back(f, c);
        }
        std::map<int, LaurentPoly> out;
        for (auto& [d, ts] : bucket)
            out.emplace(d, from_terms(std::move(ts)));
        return out;
    }

    /// Coefficient of v^d (a polynomial free of v).
    LaurentPoly coefficient_of(int v, int d) const
    {
        std::vector<Term> ts;
        for (const auto& [e, c] : terms_)
            if (e[v] == d) {
                Exponent f = e;
                f[v] = 0;
                ts.emplace_back(f, c);
            }
        return from_terms(std::move(ts));
    }

    /// Divide by the monomial content so every variable has minimum exponent 0.
    LaurentPoly strip_monomial() const
    {
        if (terms_.empty())
            return {};
        Exponent m = min_exponent();
        if (m == Exponent{0, 0, 0})
            return *this;
        return shifted(Exponent{-m[0], -m[1], -m[2]});
    }

    /// Unit normal form: no monomial content, lex-leading coefficient 1.
    LaurentPoly normalize_unit() const
    {
        if (terms_.empty())
            return {};
        LaurentPoly p = strip_monomial();
        const GaussianRational& lc = p.terms_[0].second;
        if (lc.is_one())
            return p;
        return p.scaled(lc.inverse());
    }

    template <class C>
    C evaluate(const C& t, const C& s, const C& r) const
    {
        C acc(0);
        for (const auto& [e, c] : terms_) {
            C coef = [&c] {
                if constexpr (std::is_constructible_v<C, const GaussianRational&>)
                    return C(c);
                else
                    return C(c.to_complex());
            }();
            acc += coef * ipow(t, e[0]) * ipow(s, e[1]) * ipow(r, e[2]);
        }
        return acc;
    }

    /// Text form in q (= t^2), s, r, accepted by the scalar parser.
    std::string str() const
    {
        if (terms_.empty())
            return "0";
        std::string out;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            std::string mono = monomial_str(e);
            std::string coef = c.str();
            bool neg = !coef.empty() && coef[0] == '-';
            if (neg)
                coef = coef.substr(1);
            std::string body;
            if (mono.empty())
                body = coef;
            else if (coef == "1")
                body = mono;
            else
                body = coef + "*" + mono;
            if (first)
                out += neg ? "-" + body : body;
            else
                out += neg ? " - " + body : " + " + body;
            first = false;
        }
        return out;
    }

    static std::string monomial_str(const Exponent& e)
    {
        std::string out;
        auto add = [&out](const std::string& f) {
            if (!out.empty())
                out += "*";
            out += f;
        };
        if (e[0] != 0) {
            if (e[0] % 2 == 0) {
                int k = e[0] / 2;
                add(k == 1 ? "q" : "q^" + std::to_string(k));
            } else {
                add("q^(" + std::to_string(e[0]) + "/2)");
            }
        }
        const char* names[] = {"t", "s", "r"};
        for (int v = 1; v < kNumVars; ++v)
            if (e[v] != 0)
                add(e[v] == 1 ? std::string(names[v]) : std::string(names[v]) + "^" + std::to_string(e[v]));
        return out;
    }

    template <class C>
    static C ipow(const C& x, int e)
    {
        if (e == 0)
            return C(1);
        C base = e > 0 ? x : C(1) / x;
        unsigned n = static_cast<unsigned>(e > 0 ? e : -e);
        C result(1);
        while (n) {
            if (n & 1u)
                result *= base;
            n >>= 1u;
            if (n)
                base *= base;
        }
        return result;
    }

private:
    void canonicalize()
    {
        std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.first > b.first; });
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!out.empty() && out.back().first == t.first)
                out.back().second += t.second;
            else
                out.push_back(std::move(t));
        }
        out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return t.second.is_zero(); }),
                  out.end());
        terms_ = std::move(out);
    }

    static LaurentPoly merge(const LaurentPoly& a, const LaurentPoly& b, bool subtract)
    {
        LaurentPoly p;
        p.terms_.reserve(a.terms_.size() + b.terms_.size());
        auto ia = a.terms_.begin(), ib = b.terms_.begin();
        while (ia != a.terms_.end() || ib != b.terms_.end()) {
            if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->first > ib->first)) {
                p.terms_.push_back(*ia++);
            } else if (ia == a.terms_.end() || ib->first > ia->first) {
                p.terms_.emplace_back(ib->first, subtract ? -ib->second : ib->second);
                ++ib;
            } else {
                GaussianRational c = subtract ? ia->second - ib->second : ia->second + ib->second;
                if (!c.is_zero())
                    p.terms_.emplace_back(ia->first, std::move(c));
                ++ia;
                ++ib;
            }
        }
        return p;
    }

    std::vector<Term> terms_;
};

/// Exact quotient a / b in the Laurent ring, or nullopt if b does not divide a.
inline std::optional<LaurentPoly> exact_divide(const LaurentPoly& a, const LaurentPoly& b)
{
    if (b.is_zero())
        throw DivisionByZero("LaurentPoly: division by zero polynomial");
    if (a.is_zero())
        return LaurentPoly{};
    const auto& [lb_e, lb_c] = b.leading();
    if (b.is_monomial())
        return a.times_monomial(Exponent{-lb_e[0], -lb_e[1], -lb_e[2]}, lb_c.inverse());
    // Degrees are additive per variable, so the quotient lives in a finite box.
    Exponent lo, hi;
    for (int v = 0; v < kNumVars; ++v) {
        lo[v] = a.min_degree(v) - b.min_degree(v);
        hi[v] = a.max_degree(v) - b.max_degree(v);
        if (lo[v] > hi[v])
            return std::nullopt;
    }
    GaussianRational inv_lc = lb_c.inverse();
    std::vector<LaurentPoly::Term> quotient;
    LaurentPoly rem = a;
    while (!rem.is_zero()) {
        Exponent e = rem.leading().first - lb_e;
        for (int v = 0; v < kNumVars; ++v)
            if (e[v] < lo[v] || e[v] > hi[v])
                return std::nullopt;
        GaussianRational c = rem.leading().second * inv_lc;
        rem -= b.times_monomial(e, c);
        quotient.emplace_back(e, std::move(c));
    }
    return LaurentPoly::from_terms(std::move(quotient));
}

namespace detail {

inline LaurentPoly divide_or_die(const LaurentPoly& a, const LaurentPoly& b)
{
    auto q = exact_divide(a, b);
    assert(q && "gcd: expected exact division");
    return *q;
}

/// Pseudo-remainder of a by b with respect to variable v (both polynomials).
inline LaurentPoly pseudo_remainder(LaurentPoly a, const LaurentPoly& b, int v)
{
    int d = b.max_degree(v);
    LaurentPoly lcb = b.coefficient_of(v, d);
    while (!a.is_zero()) {
        int da = a.max_degree(v);
        if (da < d)
            break;
        LaurentPoly lca = a.coefficient_of(v, da);
        Exponent shift{0, 0, 0};
        shift[v] = da - d;
        a = lcb * a - lca * b.shifted(shift);
    }
    return a;
}

/// Remainder over the coefficient field (b has constant leading coefficient in v).
inline LaurentPoly field_remainder(LaurentPoly a, const LaurentPoly& b, int v)
{
    int d = b.max_degree(v);
    GaussianRational inv = b.coefficient_of(v, d).constant_term().inverse();
    while (!a.is_zero()) {
        int da = a.max_degree(v);
        if (da < d)
            break;
        GaussianRational c = a.coefficient_of(v, da).constant_term() * inv;
        Exponent shift{0, 0, 0};
        shift[v] = da - d;
        a -= b.times_monomial(shift, c);
    }
    return a;
}

inline int popcount(unsigned m) { return __builtin_popcount(m); }

/// p with every variable except keep replaced by the given exact value.
inline LaurentPoly specialize(const LaurentPoly& p, int keep, const std::array<GaussianRational, kNumVars>& at)
{
    std::vector<LaurentPoly::Term> out;
    out.reserve(p.size());
    for (const auto& [e, c] : p.terms()) {
        GaussianRational v = c;
        for (int w = 0; w < kNumVars; ++w)
            if (w != keep && e[w] != 0)
                v *= LaurentPoly::ipow(at[w], e[w]);
        Exponent k{0, 0, 0};
        k[keep] = e[keep];
        out.emplace_back(k, v);
    }
    return LaurentPoly::from_terms(std::move(out));
}

}  // namespace detail

LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b);

namespace detail {

/// Upper bound on the main-variable degree of gcd(a, b), from one exact
/// specialization of the other variables.  a and b must be polynomials without
/// monomial factors.  The point is accepted only when the leading and constant
/// coefficients in v survive, which makes the bound rigorous.
inline std::optional<int> specialized_gcd_degree(const LaurentPoly& a, const LaurentPoly& b, int v)
{
    static const int kPoints[][kNumVars] = {{2, 3, 5}, {3, 7, 2}, {5, 2, 11}, {-2, 5, 3}, {7, -3, 13}, {11, 13, -5}};
    int da = a.max_degree(v), db = b.max_degree(v);
    for (const auto& pt : kPoints) {
        std::array<GaussianRational, kNumVars> at{GaussianRational(pt[0]), GaussianRational(pt[1]),
                                                  GaussianRational(pt[2])};
        LaurentPoly sa = specialize(a, v, at), sb = specialize(b, v, at);
        if (sa.is_zero() || sb.is_zero() || sa.max_degree(v) != da || sb.max_degree(v) != db ||
            sa.min_degree(v) != 0 || sb.min_degree(v) != 0)
            continue;
        LaurentPoly g = gcd(sa, sb);
        return g.is_zero() ? da : g.max_degree(v) - g.min_degree(v);
    }
    return std::nullopt;
}

/// gcd of the coefficients of p with respect to v, folded together with seed.
inline LaurentPoly content_with(const LaurentPoly& p, int v, LaurentPoly seed)
{
    for (auto& [d, c] : p.coefficients_in(v)) {
        seed = seed.is_zero() ? c.normalize_unit() : gcd(seed, c);
        if (seed.is_constant())
            return LaurentPoly(1);
    }
    return seed;
}

inline LaurentPoly primitive_part(const LaurentPoly& p, int v)
{
    LaurentPoly c = content_with(p, v, LaurentPoly{});
    if (c.is_constant())
        return p.normalize_unit();
    return divide_or_die(p, c).normalize_unit();
}

}  // namespace detail

/// Greatest common divisor, normalized with normalize_unit(); gcd(0, 0) = 0.
inline LaurentPoly gcd(const LaurentPoly& a_in, const LaurentPoly& b_in)
{
    if (a_in.is_zero())
        return b_in.normalize_unit();
    if (b_in.is_zero())
        return a_in.normalize_unit();
    LaurentPoly a = a_in.strip_monomial();
    LaurentPoly b = b_in.strip_monomial();
    if (a.is_constant() || b.is_constant())
        return LaurentPoly(1);
    if (a == b)
        return a.normalize_unit();
    unsigned va = a.vars(), vb = b.vars();
    for (int v = 0; v < kNumVars; ++v) {
        unsigned bit = 1u << v;
        if ((va & bit) && !(vb & bit))
            return detail::content_with(a, v, b.normalize_unit());
        if ((vb & bit) && !(va & bit))
            return detail::content_with(b, v, a.normalize_unit());
    }
    // Same variable set; pick the main variable of smallest degree.
    int main_var = -1, best = 0;
    for (int v = 0; v < kNumVars; ++v)
        if (va & (1u << v)) {
            int deg = std::max(a.max_degree(v), b.max_degree(v));
            if (main_var < 0 || deg < best) {
                main_var = v;
                best = deg;
            }
        }
    if (detail::popcount(va) == 1) {
        LaurentPoly x = a.normalize_unit(), y = b.normalize_unit();
        if (x.max_degree(main_var) < y.max_degree(main_var))
            std::swap(x, y);
        while (!y.is_zero()) {
            LaurentPoly r = detail::field_remainder(x, y, main_var);
            x = std::move(y);
            y = r.is_zero() ? LaurentPoly{} : r.normalize_unit();
        }
        return x.normalize_unit();
    }
    LaurentPoly ca = detail::content_with(a, main_var, LaurentPoly{});
    LaurentPoly cb = detail::content_with(b, main_var, LaurentPoly{});
    LaurentPoly c = gcd(ca, cb);
    LaurentPoly pa = ca.is_constant() ? a.normalize_unit() : detail::divide_or_die(a, ca).normalize_unit();
    LaurentPoly pb = cb.is_constant() ? b.normalize_unit() : detail::divide_or_die(b, cb).normalize_unit();
    if (pa.max_degree(main_var) < pb.max_degree(main_var))
        std::swap(pa, pb);
    if (auto bound = detail::specialized_gcd_degree(pa, pb, main_var)) {
        if (*bound == 0)
            return c.normalize_unit();
        if (*bound == pb.max_degree(main_var)) {
            if (auto q = exact_divide(pa, pb))
                return (c * pb).normalize_unit();
        }
    }
    LaurentPoly g;
    while (true) {
        if (pb.max_degree(main_var) == 0 && pb.min_degree(main_var) == 0) {
            g = LaurentPoly(1);
            break;
        }
        LaurentPoly r = detail::pseudo_remainder(pa, pb, main_var);
        if (r.is_zero()) {
            g = pb;
            break;
        }
        if (r.strip_monomial().max_degree(main_var) == 0) {
            g = LaurentPoly(1);
            break;
        }
        pa = std::move(pb);
        pb = detail::primitive_part(r, main_var);
    }
    if (!g.is_constant())
        g = detail::primitive_part(g, main_var);
    return (c * g).normalize_unit();
}

}  // namespace qiso
