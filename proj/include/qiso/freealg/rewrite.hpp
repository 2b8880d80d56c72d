#pragma once

/**
 * @file rewrite.hpp
 * @brief Word rewriting with two-letter left-hand sides, normal forms, and
 *        overlap (ambiguity) checking for both algebras.
 *
 * A rule inspects an adjacent letter pair and either declines or returns the
 * replacement as a linear combination of words.  Reduction always fires the
 * leftmost applicable rule.  An ambiguity is a three-letter word xyz where one
 * rule matches xy and another matches yz; it resolves when both one-step
 * rewrites reach the same normal form.
 *
 * Termination is certified per rule on a sample of letter pairs: each
 * right-hand word must be shorter than the left word, or have the same length,
 * the same multiset of letter ranks and strictly fewer rank inversions.  Both
 * measures are preserved under placing the pair inside a longer word.
 */

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qiso/errors.hpp"
#include "qiso/freealg/iso2.hpp"
#include "qiso/freealg/m2hat.hpp"

namespace qiso {

inline constexpr std::size_t kDefaultMaxWordLength = 64;

template <class Letter>
using Word = std::vector<Letter>;

template <class Letter>
using WordCombination = std::map<Word<Letter>, Scalar>;

template <class Letter>
void add_word(WordCombination<Letter>& acc, const Word<Letter>& w, const Scalar& c)
{
    if (c.is_zero())
        return;
    auto [it, fresh] = acc.try_emplace(w, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero())
            acc.erase(it);
    }
}

template <class Letter>
struct RewriteRule {
    std::string text;
    std::function<std::optional<WordCombination<Letter>>(const Letter&, const Letter&)> apply;
};

/// A two-letter ambiguity whose resolutions disagree.
struct Overlap {
    std::string word;
    std::string via_left;   // normal form after rewriting the first pair first
    std::string via_right;  // normal form after rewriting the second pair first
};

template <class Letter>
class RewriteSystem {
public:
    using Rank = std::function<int(const Letter&)>;
    using Show = std::function<std::string(const Letter&)>;

    RewriteSystem(std::vector<RewriteRule<Letter>> rules, Rank rank, Show show,
                  std::size_t max_length = kDefaultMaxWordLength)
        : rules_(std::move(rules)), rank_(std::move(rank)), show_(std::move(show)), max_length_(max_length)
    {
    }

    const std::vector<RewriteRule<Letter>>& rules() const { return rules_; }
    std::size_t max_length() const { return max_length_; }

    std::string show(const Word<Letter>& w) const
    {
        if (w.empty())
            return "1";
        std::string out;
        for (const Letter& l : w)
            out += (out.empty() ? "" : " ") + show_(l);
        return out;
    }

    /// Leftmost redex as (position, rewrite), if any.
    std::optional<std::pair<std::size_t, WordCombination<Letter>>> first_redex(const Word<Letter>& w) const
    {
        for (std::size_t p = 0; p + 1 < w.size(); ++p)
            for (const auto& rule : rules_)
                if (auto rhs = rule.apply(w[p], w[p + 1]))
                    return std::make_pair(p, std::move(*rhs));
        return std::nullopt;
    }

    /// Replace positions [p, p+2) of w by rhs.
    static WordCombination<Letter> splice(const Word<Letter>& w, std::size_t p, const WordCombination<Letter>& rhs,
                                          const Scalar& coef)
    {
        WordCombination<Letter> out;
        for (const auto& [mid, c] : rhs) {
            Word<Letter> nw(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(p));
            nw.insert(nw.end(), mid.begin(), mid.end());
            nw.insert(nw.end(), w.begin() + static_cast<std::ptrdiff_t>(p + 2), w.end());
            add_word(out, nw, coef * c);
        }
        return out;
    }

    WordCombination<Letter> normal_form(const WordCombination<Letter>& input) const
    {
        for (const auto& [w, c] : input)
            if (w.size() > max_length_)
                throw ResourceLimit("word of length " + std::to_string(w.size()) + " exceeds the cap of " +
                                    std::to_string(max_length_));
        WordCombination<Letter> pending = input, done;
        while (!pending.empty()) {
            auto node = pending.extract(pending.begin());
            const Word<Letter>& w = node.key();
            const Scalar& c = node.mapped();
            auto redex = first_redex(w);
            if (!redex) {
                add_word(done, w, c);
                continue;
            }
            for (const auto& [nw, nc] : splice(w, redex->first, redex->second, c))
                add_word(pending, nw, nc);
        }
        return done;
    }

    WordCombination<Letter> normal_form(const Word<Letter>& w) const
    {
        WordCombination<Letter> x;
        add_word(x, w, Scalar(1));
        return normal_form(x);
    }

    int inversions(const Word<Letter>& w) const
    {
        int n = 0;
        for (std::size_t i = 0; i < w.size(); ++i)
            for (std::size_t j = i + 1; j < w.size(); ++j)
                if (rank_(w[i]) > rank_(w[j]))
                    ++n;
        return n;
    }

    /// Throws NonTerminatingRule when some rule, on some sample pair, fails to decrease the order.
    void check_termination(const std::vector<Letter>& sample) const
    {
        for (const auto& rule : rules_)
            for (const Letter& x : sample)
                for (const Letter& y : sample) {
                    auto rhs = rule.apply(x, y);
                    if (!rhs)
                        continue;
                    Word<Letter> lhs{x, y};
                    for (const auto& [w, c] : *rhs)
                        if (!decreases(lhs, w))
                            throw NonTerminatingRule("rule does not decrease the word order: " + rule.text + " (on " +
                                                         show(lhs) + " -> " + show(w) + ")",
                                                     rule.text);
                }
    }

    /// Unresolved ambiguities among words over `sample`.  to_element collects a
    /// normal form into a comparable element; format prints it.
    template <class Element, class ToElement, class Format>
    std::vector<Overlap> check_confluence(const std::vector<Letter>& sample, ToElement&& to_element,
                                          Format&& format) const
    {
        check_termination(sample);
        std::vector<Overlap> bad;
        for (const Letter& x : sample)
            for (const Letter& y : sample)
                for (const Letter& z : sample) {
                    Word<Letter> w{x, y, z};
                    auto left = one_step(w, 0);
                    auto right = one_step(w, 1);
                    if (!left || !right)
                        continue;
                    for (const auto& l : *left)
                        for (const auto& r : *right) {
                            Element a = to_element(normal_form(l));
                            Element b = to_element(normal_form(r));
                            if (!(a == b))
                                bad.push_back({show(w), format(a), format(b)});
                        }
                }
        return bad;
    }

private:
    /// All one-step rewrites of w at position p (one per matching rule).
    std::optional<std::vector<WordCombination<Letter>>> one_step(const Word<Letter>& w, std::size_t p) const
    {
        std::vector<WordCombination<Letter>> out;
        for (const auto& rule : rules_)
            if (auto rhs = rule.apply(w[p], w[p + 1]))
                out.push_back(splice(w, p, *rhs, Scalar(1)));
        if (out.empty())
            return std::nullopt;
        return out;
    }

    bool decreases(const Word<Letter>& lhs, const Word<Letter>& rhs) const
    {
        if (rhs.size() < lhs.size())
            return true;
        if (rhs.size() > lhs.size())
            return false;
        std::vector<int> rl, rr;
        for (const Letter& l : lhs)
            rl.push_back(rank_(l));
        for (const Letter& l : rhs)
            rr.push_back(rank_(l));
        std::sort(rl.begin(), rl.end());
        std::sort(rr.begin(), rr.end());
        return rl == rr && inversions(rhs) < inversions(lhs);
    }

    std::vector<RewriteRule<Letter>> rules_;
    Rank rank_;
    Show show_;
    std::size_t max_length_;
};

// ---------------------------------------------------------------------------
// U_q(iso2)

using Iso2Word = Word<Iso2Gen>;
using Iso2RewriteRule = RewriteRule<Iso2Gen>;

/// A rule with fixed left pair and fixed right-hand side.
inline Iso2RewriteRule iso2_rule(Iso2Gen x, Iso2Gen y, WordCombination<Iso2Gen> rhs)
{
    std::string text = std::string(gen_name(x)) + " " + gen_name(y) + " ->";
    bool first = true;
    for (const auto& [w, c] : rhs) {
        std::string ws;
        for (Iso2Gen g : w)
            ws += std::string(" ") + gen_name(g);
        text += (first ? " " : " + ") + std::string("(") + c.str() + ")" + ws;
        first = false;
    }
    return {text, [x, y, rhs](Iso2Gen a, Iso2Gen b) -> std::optional<WordCombination<Iso2Gen>> {
                if (a == x && b == y)
                    return rhs;
                return std::nullopt;
            }};
}

inline std::vector<Iso2RewriteRule> iso2_rules()
{
    using G = Iso2Gen;
    return {
        iso2_rule(G::I, G::T2, {{{G::T2, G::I}, Scalar::q(-1)}, {{G::T1}, Scalar::t(-1)}}),
        iso2_rule(G::I, G::T1, {{{G::T1, G::I}, Scalar::q()}, {{G::T2}, -Scalar::t()}}),
        iso2_rule(G::T2, G::T1, {{{G::T1, G::T2}, Scalar::q(-1)}}),
    };
}

/// The system with the T2 T1 rule replaced by T2 T1 -> T1 T2 (not confluent).
inline std::vector<Iso2RewriteRule> iso2_rules_broken()
{
    auto rules = iso2_rules();
    rules[2] = iso2_rule(Iso2Gen::T2, Iso2Gen::T1, {{{Iso2Gen::T1, Iso2Gen::T2}, Scalar(1)}});
    return rules;
}

inline RewriteSystem<Iso2Gen> iso2_system(std::vector<Iso2RewriteRule> rules = iso2_rules(),
                                          std::size_t max_length = kDefaultMaxWordLength)
{
    return RewriteSystem<Iso2Gen>(
        std::move(rules), [](Iso2Gen g) { return static_cast<int>(g); }, [](Iso2Gen g) { return gen_name(g); },
        max_length);
}

/// Collect an irreducible combination into PBW coordinates.
inline Iso2Element iso2_from_words(const WordCombination<Iso2Gen>& x)
{
    Iso2Element out;
    for (const auto& [w, c] : x) {
        Iso2Monomial m;
        bool ordered = true;
        int last = -1;
        for (Iso2Gen g : w) {
            int k = static_cast<int>(g);
            if (k < last)
                ordered = false;
            last = k;
            (g == Iso2Gen::T1 ? m.j : g == Iso2Gen::T2 ? m.k : m.l) += 1;
        }
        if (ordered) {
            out.add_term(m, c);
        } else {
            // Not a PBW word (possible for non-confluent variants); multiply out.
            Iso2Element e(c);
            for (Iso2Gen g : w)
                e = e * iso2_gen(g);
            out += e;
        }
    }
    return out;
}

inline Iso2Element nf_iso2(const WordCombination<Iso2Gen>& x, std::size_t max_length = kDefaultMaxWordLength)
{
    return iso2_from_words(iso2_system(iso2_rules(), max_length).normal_form(x));
}

// ---------------------------------------------------------------------------
// Localized m2.  Letters are F, E, or a whole Cartan fraction.

struct M2RewriteLetter {
    enum class Kind { F = 0, E = 1, Cartan = 2 } kind;
    CartanFraction phi;  // used when kind == Cartan

    static M2RewriteLetter f() { return {Kind::F, {}}; }
    static M2RewriteLetter e() { return {Kind::E, {}}; }
    static M2RewriteLetter cartan(CartanFraction p) { return {Kind::Cartan, std::move(p)}; }

    friend bool operator<(const M2RewriteLetter& a, const M2RewriteLetter& b)
    {
        if (a.kind != b.kind)
            return a.kind < b.kind;
        return a.phi < b.phi;
    }
    friend bool operator==(const M2RewriteLetter& a, const M2RewriteLetter& b)
    {
        return a.kind == b.kind && a.phi == b.phi;
    }
};

inline M2RewriteLetter m2_letter(const M2Letter& g)
{
    switch (g.gen) {
    case M2Gen::E:
        return M2RewriteLetter::e();
    case M2Gen::F:
        return M2RewriteLetter::f();
    case M2Gen::K:
        return M2RewriteLetter::cartan(CartanFraction::k_power(1));
    case M2Gen::Kinv:
        return M2RewriteLetter::cartan(CartanFraction::k_power(-1));
    case M2Gen::G:
        return M2RewriteLetter::cartan(CartanFraction::g(g.index));
    }
    return M2RewriteLetter::f();
}

inline std::vector<RewriteRule<M2RewriteLetter>> m2_rules()
{
    using L = M2RewriteLetter;
    using Combo = WordCombination<L>;
    auto single = [](Word<L> w) {
        Combo c;
        c.emplace(std::move(w), Scalar(1));
        return c;
    };
    return {
        {"E F -> F E",
         [single](const L& a, const L& b) -> std::optional<Combo> {
             if (a.kind == L::Kind::E && b.kind == L::Kind::F)
                 return single({L::f(), L::e()});
             return std::nullopt;
         }},
        {"phi(K) E -> E phi(q K)",
         [single](const L& a, const L& b) -> std::optional<Combo> {
             if (a.kind == L::Kind::Cartan && b.kind == L::Kind::E)
                 return single({L::e(), L::cartan(a.phi.shifted(1))});
             return std::nullopt;
         }},
        {"phi(K) F -> F phi(q^-1 K)",
         [single](const L& a, const L& b) -> std::optional<Combo> {
             if (a.kind == L::Kind::Cartan && b.kind == L::Kind::F)
                 return single({L::f(), L::cartan(a.phi.shifted(-1))});
             return std::nullopt;
         }},
        {"phi(K) chi(K) -> (phi chi)(K)",
         [single](const L& a, const L& b) -> std::optional<Combo> {
             if (a.kind == L::Kind::Cartan && b.kind == L::Kind::Cartan)
                 return single({L::cartan(a.phi * b.phi)});
             return std::nullopt;
         }},
    };
}

inline RewriteSystem<M2RewriteLetter> m2_system(std::size_t max_length = kDefaultMaxWordLength)
{
    using L = M2RewriteLetter;
    return RewriteSystem<L>(
        m2_rules(), [](const L& l) { return static_cast<int>(l.kind); },
        [](const L& l) {
            switch (l.kind) {
            case L::Kind::F:
                return std::string("F");
            case L::Kind::E:
                return std::string("E");
            case L::Kind::Cartan:
                return "[" + l.phi.str() + "]";
            }
            return std::string("?");
        },
        max_length);
}

inline M2Element m2_from_words(const WordCombination<M2RewriteLetter>& x)
{
    M2Element out;
    for (const auto& [w, c] : x) {
        M2Element e(c);
        for (const auto& l : w)
            e = e * (l.kind == M2RewriteLetter::Kind::E   ? m2_gen(M2Gen::E)
                     : l.kind == M2RewriteLetter::Kind::F ? m2_gen(M2Gen::F)
                                                          : M2Element(l.phi));
        out += e;
    }
    return out;
}

/// Letters used when enumerating m2 ambiguities.
inline std::vector<M2RewriteLetter> m2_overlap_sample()
{
    std::vector<M2RewriteLetter> out{M2RewriteLetter::e(), M2RewriteLetter::f(),
                                     M2RewriteLetter::cartan(CartanFraction::k_power(1)),
                                     M2RewriteLetter::cartan(CartanFraction::k_power(-1))};
    for (int k = -2; k <= 2; ++k)
        out.push_back(M2RewriteLetter::cartan(CartanFraction::g(k)));
    return out;
}

inline M2Element nf_m2hat(const WordCombination<M2RewriteLetter>& x, std::size_t max_length = kDefaultMaxWordLength)
{
    return m2_from_words(m2_system(max_length).normal_form(x));
}

inline std::vector<Iso2Gen> iso2_alphabet() { return {Iso2Gen::T1, Iso2Gen::T2, Iso2Gen::I}; }

}  // namespace qiso
