#pragma once

// The homomorphism psi from U_q(iso2) into the localized m2 algebra.
//
//   I  -> i/(q - q^-1) (K - Kinv)
//   T2 -> (E - F) G[0]
//   T1 -> i q^-1/2 (K E + Kinv F) G[0]
//
// The last two images are listed in the source without a clear binding to
// T1/T2, so build_psi verifies the defining relations for one binding and
// falls back to the swapped one.

#include <map>
#include <string>
#include <vector>

#include "qiso/errors.hpp"
#include "qiso/freealg/iso2.hpp"
#include "qiso/freealg/m2hat.hpp"

namespace qiso {

struct PsiAssignment {
    M2Element image_I;
    M2Element image_T1;
    M2Element image_T2;
    /// "direct" when (E - F)G[0] is the image of T2, "swapped" otherwise.
    std::string binding;

    const M2Element& image(Iso2Gen g) const
    {
        return g == Iso2Gen::I ? image_I : g == Iso2Gen::T1 ? image_T1 : image_T2;
    }
};

struct RelationCheck {
    std::string name;
    M2Element defect;  // normal form of the relation's image; zero when it holds
    bool holds() const { return defect.is_zero(); }
};

/// Images of the three defining relations, written as LHS - RHS.
inline std::vector<RelationCheck> psi_relation_defects(const M2Element& i, const M2Element& t1, const M2Element& t2)
{
    Scalar up = Scalar::t(), down = Scalar::t(-1);
    return {
        {"q^(1/2) I T2 - q^(-1/2) T2 I = T1", up * (i * t2) - down * (t2 * i) - t1},
        {"q^(1/2) T1 I - q^(-1/2) I T1 = T2", up * (t1 * i) - down * (i * t1) - t2},
        {"q^(1/2) T2 T1 - q^(-1/2) T1 T2 = 0", up * (t2 * t1) - down * (t1 * t2)},
    };
}

namespace detail {

inline M2Element psi_image_I()
{
    Scalar c = Scalar::i() / (Scalar::q() - Scalar::q(-1));
    return c * (m2_gen(M2Gen::K) - m2_gen(M2Gen::Kinv));
}

inline M2Element psi_image_difference() { return (m2_gen(M2Gen::E) - m2_gen(M2Gen::F)) * m2_gen(M2Gen::G, 0); }

inline M2Element psi_image_twisted()
{
    Scalar c = Scalar::i() * Scalar::t(-1);
    return c * (m2_gen(M2Gen::K) * m2_gen(M2Gen::E) + m2_gen(M2Gen::Kinv) * m2_gen(M2Gen::F)) * m2_gen(M2Gen::G, 0);
}

}  // namespace detail

inline PsiAssignment build_psi()
{
    M2Element i = detail::psi_image_I(), diff = detail::psi_image_difference(), twisted = detail::psi_image_twisted();
    auto all_hold = [](const std::vector<RelationCheck>& checks) {
        for (const auto& c : checks)
            if (!c.holds())
                return false;
        return true;
    };
    if (all_hold(psi_relation_defects(i, twisted, diff)))
        return {i, twisted, diff, "direct"};
    if (all_hold(psi_relation_defects(i, diff, twisted)))
        return {i, diff, twisted, "swapped"};
    throw AlgebraMismatch("build_psi: neither binding of the images satisfies the defining relations");
}

/// Shared instance; construction runs the verification once.
inline const PsiAssignment& psi()
{
    static const PsiAssignment instance = build_psi();
    return instance;
}

/// Extend psi multiplicatively and linearly to a PBW combination.
inline M2Element psi_apply(const Iso2Element& x, const PsiAssignment& a = psi())
{
    std::map<int, M2Element> p1{{0, M2Element(1)}}, p2{{0, M2Element(1)}}, pi{{0, M2Element(1)}};
    auto power = [](std::map<int, M2Element>& cache, const M2Element& base, int n) -> const M2Element& {
        for (int k = static_cast<int>(cache.size()); k <= n; ++k)
            cache[k] = cache[k - 1] * base;
        return cache[n];
    };
    M2Element out;
    for (const auto& [m, c] : x.terms())
        out += c * (power(p1, a.image_T1, m.j) * power(p2, a.image_T2, m.k) * power(pi, a.image_I, m.l));
    return out;
}

}  // namespace qiso
