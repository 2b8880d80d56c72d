#pragma once

// Lowering of parsed expressions to scalars, free word combinations and
// normal-form elements.  Two routes produce elements: expansion into words
// followed by rewriting, and direct multiplication in the element types.
// They must agree; tests use one as the oracle for the other.

#include <gmpxx.h>

#include <stdexcept>
#include <string>

#include "qiso/cli/expr.hpp"
#include "qiso/freealg/rewrite.hpp"

namespace qiso {

inline Scalar eval_scalar(const Expr& e)
{
    switch (e.kind) {
    case Expr::Kind::Number:
        return Scalar(GaussianRational(mpq_class(e.text)));
    case Expr::Kind::Symbol:
        if (e.text == "i")
            return Scalar::i();
        if (e.text == "t")
            return Scalar::t();
        if (e.text == "s")
            return Scalar::s();
        if (e.text == "r")
            return Scalar::r();
        return Scalar::q();
    case Expr::Kind::Generator:
        throw std::invalid_argument("generator '" + e.text + "' in a scalar expression");
    case Expr::Kind::Add:
        return eval_scalar(*e.kids[0]) + eval_scalar(*e.kids[1]);
    case Expr::Kind::Sub:
        return eval_scalar(*e.kids[0]) - eval_scalar(*e.kids[1]);
    case Expr::Kind::Mul:
        return eval_scalar(*e.kids[0]) * eval_scalar(*e.kids[1]);
    case Expr::Kind::Div:
        return eval_scalar(*e.kids[0]) / eval_scalar(*e.kids[1]);
    case Expr::Kind::Neg:
        return -eval_scalar(*e.kids[0]);
    case Expr::Kind::Pow:
        if (e.exp_den == 2)
            return Scalar::t(e.exp_num);
        return eval_scalar(*e.kids[0]).pow(e.exp_num);
    }
    return Scalar();
}

/// Algebra of the first generator in the expression, if any.
inline std::optional<Algebra> expression_algebra(const Expr& e)
{
    if (e.kind == Expr::Kind::Generator)
        return e.text == "I" || e.text == "T1" || e.text == "T2" ? Algebra::Iso2 : Algebra::M2;
    for (const auto& k : e.kids)
        if (auto a = expression_algebra(*k))
            return a;
    return std::nullopt;
}

inline Scalar parse_scalar(std::string_view text)
{
    ExprPtr e = parse_any(text);
    if (e->has_generator())
        throw std::invalid_argument("expected a scalar, got an algebra element: " + std::string(text));
    return eval_scalar(*e);
}

/// Inverse of a Cartan fraction whose numerator is c K^n or c K^n D_k.
inline CartanFraction cartan_inverse(const CartanFraction& phi)
{
    if (phi.is_zero())
        throw DivisionByZero("inverse of a zero Cartan element");
    CartanFraction den_poly(1);
    for (const auto& [k, m] : phi.den())
        for (int n = 0; n < m; ++n)
            den_poly *= CartanFraction::d(k);
    const auto& num = phi.num();
    if (num.size() == 1) {
        auto [e, c] = *num.begin();
        return CartanFraction(CartanFraction::Numerator{{-e, c.inverse()}}, {}) * den_poly;
    }
    if (num.size() == 2) {
        auto [e1, c1] = *num.begin();
        auto [e2, c2] = *num.rbegin();
        if (e2 == e1 + 2) {
            Scalar ratio = c2 / c1;
            const int bound = static_cast<int>(kDefaultMaxWordLength);
            for (int k = -bound; k <= bound; ++k)
                if (ratio == Scalar::q(2 * k)) {
                    Scalar c = c1 * Scalar::q(k);
                    return CartanFraction(CartanFraction::Numerator{{-(e1 + 1), c.inverse()}}, {}) *
                           CartanFraction::g(k) * den_poly;
                }
        }
    }
    throw std::invalid_argument("cannot invert Cartan element " + phi.str());
}

namespace detail {

template <class Letter>
WordCombination<Letter> word_product(const WordCombination<Letter>& a, const WordCombination<Letter>& b)
{
    WordCombination<Letter> out;
    for (const auto& [wa, ca] : a)
        for (const auto& [wb, cb] : b) {
            Word<Letter> w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            add_word(out, w, ca * cb);
        }
    return out;
}

template <class Letter>
WordCombination<Letter> word_sum(WordCombination<Letter> a, const WordCombination<Letter>& b, const Scalar& scale)
{
    for (const auto& [w, c] : b)
        add_word(a, w, scale * c);
    return a;
}

/// Structural fold shared by the word and element routes.
template <class Ops>
typename Ops::Value fold(const Expr& e, const Ops& ops)
{
    using V = typename Ops::Value;
    if (!e.has_generator())
        return ops.scalar(eval_scalar(e));
    switch (e.kind) {
    case Expr::Kind::Generator:
        return ops.generator(e);
    case Expr::Kind::Add:
        return ops.add(fold(*e.kids[0], ops), fold(*e.kids[1], ops), Scalar(1));
    case Expr::Kind::Sub:
        return ops.add(fold(*e.kids[0], ops), fold(*e.kids[1], ops), Scalar(-1));
    case Expr::Kind::Neg:
        return ops.add(ops.scalar(Scalar()), fold(*e.kids[0], ops), Scalar(-1));
    case Expr::Kind::Mul:
        return ops.mul(fold(*e.kids[0], ops), fold(*e.kids[1], ops));
    case Expr::Kind::Div:
        if (e.kids[1]->has_generator())
            throw std::invalid_argument("division by an algebra element");
        return ops.mul(fold(*e.kids[0], ops), ops.scalar(eval_scalar(*e.kids[1]).inverse()));
    case Expr::Kind::Pow: {
        V base = fold(*e.kids[0], ops);
        if (e.exp_num < 0)
            base = ops.invert(base);
        V out = ops.scalar(Scalar(1));
        for (int n = 0; n < std::abs(e.exp_num); ++n)
            out = ops.mul(out, base);
        return out;
    }
    default:
        break;
    }
    throw std::logic_error("unreachable expression kind");
}

template <class Letter>
struct WordOps {
    using Value = WordCombination<Letter>;
    Value scalar(const Scalar& c) const
    {
        Value v;
        add_word(v, Word<Letter>{}, c);
        return v;
    }
    Value add(const Value& a, const Value& b, const Scalar& scale) const { return word_sum(a, b, scale); }
    Value mul(const Value& a, const Value& b) const { return word_product(a, b); }
};

struct Iso2WordOps : WordOps<Iso2Gen> {
    Value generator(const Expr& e) const
    {
        Iso2Gen g = e.text == "T1" ? Iso2Gen::T1 : e.text == "T2" ? Iso2Gen::T2 : Iso2Gen::I;
        Value v;
        add_word(v, Word<Iso2Gen>{g}, Scalar(1));
        return v;
    }
    Value invert(const Value&) const
    {
        throw std::invalid_argument("negative powers of U_q(iso2) elements are not defined");
    }
};

inline M2Letter m2_letter_of(const Expr& e)
{
    if (e.text == "K")
        return {M2Gen::K};
    if (e.text == "Kinv")
        return {M2Gen::Kinv};
    if (e.text == "E")
        return {M2Gen::E};
    if (e.text == "F")
        return {M2Gen::F};
    return {M2Gen::G, e.index};
}

/// Pure Cartan content of an element, or nullopt if E or F occurs.
inline std::optional<CartanFraction> cartan_part(const M2Element& x)
{
    CartanFraction phi;
    for (const auto& [m, c] : x.terms()) {
        if (m.a != 0 || m.b != 0)
            return std::nullopt;
        phi += c;
    }
    return phi;
}

struct M2WordOps : WordOps<M2RewriteLetter> {
    std::size_t cap;
    Value generator(const Expr& e) const
    {
        Value v;
        add_word(v, Word<M2RewriteLetter>{m2_letter(m2_letter_of(e))}, Scalar(1));
        return v;
    }
    Value invert(const Value& x) const
    {
        auto phi = cartan_part(nf_m2hat(x, cap));
        if (!phi)
            throw std::invalid_argument("negative powers apply only to Cartan elements");
        Value v;
        add_word(v, Word<M2RewriteLetter>{M2RewriteLetter::cartan(cartan_inverse(*phi))}, Scalar(1));
        return v;
    }
};

struct Iso2ElementOps {
    using Value = Iso2Element;
    Value scalar(const Scalar& c) const { return Iso2Element(c); }
    Value generator(const Expr& e) const { return iso2_gen(Iso2WordOps{}.generator(e).begin()->first.front()); }
    Value add(const Value& a, const Value& b, const Scalar& scale) const { return a + scale * b; }
    Value mul(const Value& a, const Value& b) const { return a * b; }
    Value invert(const Value&) const
    {
        throw std::invalid_argument("negative powers of U_q(iso2) elements are not defined");
    }
};

struct M2ElementOps {
    using Value = M2Element;
    Value scalar(const Scalar& c) const { return M2Element(c); }
    Value generator(const Expr& e) const
    {
        M2Letter l = m2_letter_of(e);
        return m2_gen(l.gen, l.index);
    }
    Value add(const Value& a, const Value& b, const Scalar& scale) const { return a + scale * b; }
    Value mul(const Value& a, const Value& b) const { return a * b; }
    Value invert(const Value& x) const
    {
        auto phi = cartan_part(x);
        if (!phi)
            throw std::invalid_argument("negative powers apply only to Cartan elements");
        return M2Element(cartan_inverse(*phi));
    }
};

inline void check_word_cap(const Expr& e, std::size_t cap)
{
    long len = e.max_word_length();
    if (len > static_cast<long>(cap))
        throw ResourceLimit("expression expands to words of length " + std::to_string(len) + ", above the cap of " +
                            std::to_string(cap));
}

}  // namespace detail

inline WordCombination<Iso2Gen> iso2_words(const Expr& e, std::size_t cap = kDefaultMaxWordLength)
{
    detail::check_word_cap(e, cap);
    return detail::fold(e, detail::Iso2WordOps{});
}

inline WordCombination<M2RewriteLetter> m2_words(const Expr& e, std::size_t cap = kDefaultMaxWordLength)
{
    detail::check_word_cap(e, cap);
    return detail::fold(e, detail::M2WordOps{{}, cap});
}

/// Normal form through the rewrite system.
inline Iso2Element evaluate_iso2(const Expr& e, std::size_t cap = kDefaultMaxWordLength)
{
    return nf_iso2(iso2_words(e, cap), cap);
}

inline M2Element evaluate_m2(const Expr& e, std::size_t cap = kDefaultMaxWordLength)
{
    return nf_m2hat(m2_words(e, cap), cap);
}

/// Normal form by multiplying elements directly.
inline Iso2Element multiply_out_iso2(const Expr& e, std::size_t cap = kDefaultMaxWordLength)
{
    detail::check_word_cap(e, cap);
    return detail::fold(e, detail::Iso2ElementOps{});
}

inline M2Element multiply_out_m2(const Expr& e, std::size_t cap = kDefaultMaxWordLength)
{
    detail::check_word_cap(e, cap);
    return detail::fold(e, detail::M2ElementOps{});
}

/// "X Y -> rhs" with X, Y iso2 generators; rhs is kept as free words.
inline Iso2RewriteRule parse_iso2_rule(std::string_view text)
{
    auto arrow = text.find("->");
    if (arrow == std::string_view::npos)
        throw ParseError("rule needs '->'", 1, 1);
    ExprPtr lhs = parse_expression(text.substr(0, arrow), Algebra::Iso2);
    ExprPtr rhs = parse_expression(text.substr(arrow + 2), Algebra::Iso2);
    auto left = iso2_words(*lhs);
    if (left.size() != 1 || left.begin()->first.size() != 2 || !left.begin()->second.is_one())
        throw ParseError("rule left side must be a product of two generators", 1, 1);
    const auto& w = left.begin()->first;
    return iso2_rule(w[0], w[1], iso2_words(*rhs));
}

}  // namespace qiso
