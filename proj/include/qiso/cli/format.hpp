#pragma once

// Printing elements in the input syntax.  Terms follow the element's own
// monomial order; m2 Cartan parts are split into one term per K-power with
// the G[k] factors of the denominator attached.

#include <string>
#include <vector>

#include "qiso/freealg/iso2.hpp"
#include "qiso/freealg/m2hat.hpp"

namespace qiso {

namespace detail {

inline std::string power_factor(const std::string& name, int e)
{
    if (e == 0)
        return "";
    return e == 1 ? name : name + "^" + std::to_string(e);
}

/// Appends "c word" to out, folding a leading minus into the separator.
inline void append_term(std::string& out, const Scalar& c, const std::vector<std::string>& factors)
{
    std::string word;
    for (const auto& f : factors)
        if (!f.empty())
            word += (word.empty() ? "" : " ") + f;
    std::string coef = c.str();
    bool negative = false;
    if (!c.needs_parens() && coef[0] == '-') {
        negative = true;
        coef.erase(0, 1);
    } else if (c.needs_parens()) {
        coef = "(" + coef + ")";
    }
    std::string body;
    if (word.empty())
        body = coef;
    else if (coef == "1")
        body = word;
    else
        body = coef + " " + word;
    if (out.empty())
        out = (negative ? "-" : "") + body;
    else
        out += (negative ? " - " : " + ") + body;
}

}  // namespace detail

inline std::string format_element(const Iso2Element& x)
{
    std::string out;
    for (const auto& [m, c] : x.terms())
        detail::append_term(out, c,
                            {detail::power_factor("T1", m.j), detail::power_factor("T2", m.k),
                             detail::power_factor("I", m.l)});
    return out.empty() ? "0" : out;
}

inline std::string format_element(const M2Element& x)
{
    std::string out;
    for (const auto& [m, phi] : x.terms()) {
        std::vector<std::string> gs;
        for (const auto& [k, mult] : phi.den())
            gs.push_back(detail::power_factor("G[" + std::to_string(k) + "]", mult));
        for (const auto& [e, c] : phi.num()) {
            std::vector<std::string> factors{detail::power_factor("F", m.a), detail::power_factor("E", m.b),
                                             e >= 0 ? detail::power_factor("K", e) : detail::power_factor("Kinv", -e)};
            factors.insert(factors.end(), gs.begin(), gs.end());
            detail::append_term(out, c, factors);
        }
    }
    return out.empty() ? "0" : out;
}

}  // namespace qiso
