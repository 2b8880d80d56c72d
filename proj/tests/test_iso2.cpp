#include <gtest/gtest.h>

#include "qiso/freealg/iso2.hpp"

using namespace qiso;

namespace {

const Iso2Element I = iso2_gen(Iso2Gen::I);
const Iso2Element T1 = iso2_gen(Iso2Gen::T1);
const Iso2Element T2 = iso2_gen(Iso2Gen::T2);

}  // namespace

TEST(Iso2, OrientedRules)
{
    Iso2Element expect_it2 = Scalar::q(-1) * Iso2Element::monomial({0, 1, 1}) + Scalar::t(-1) * T1;
    EXPECT_EQ(I * T2, expect_it2);
    EXPECT_EQ(I * T1, Scalar::q() * Iso2Element::monomial({1, 0, 1}) - Scalar::t() * T2);
    EXPECT_EQ(T2 * T1, Scalar::q(-1) * Iso2Element::monomial({1, 1, 0}));
}

TEST(Iso2, DefiningRelationsHold)
{
    EXPECT_EQ(Scalar::t() * (I * T2) - Scalar::t(-1) * (T2 * I), T1);
    EXPECT_EQ(Scalar::t() * (T1 * I) - Scalar::t(-1) * (I * T1), T2);
    EXPECT_TRUE((Scalar::t() * (T2 * T1) - Scalar::t(-1) * (T1 * T2)).is_zero());
}

TEST(Iso2, CasimirPbwForm)
{
    Iso2Element c = casimir_definition();
    EXPECT_EQ(c, casimir_pbw());
    EXPECT_EQ(c.size(), 3u);
}

TEST(Iso2, SerreRelations)
{
    Scalar qq = Scalar::q() + Scalar::q(-1);
    EXPECT_EQ(I * I * T2 - qq * (I * T2 * I) + T2 * I * I, -T2);
    EXPECT_TRUE((I * T2 * T2 - qq * (T2 * I * T2) + T2 * T2 * I).is_zero());
}

TEST(Iso2, CasimirIsCentral)
{
    Iso2Element c = casimir_pbw();
    for (const Iso2Element& x : {I, T1, T2})
        EXPECT_TRUE((c * x - x * c).is_zero());
}

TEST(Iso2, Associativity)
{
    Iso2Element a = I * I + Scalar::s() * T1, b = T2 * I - Scalar::q() * T1 * T2, c = I * T2 * T1 + Scalar(3);
    EXPECT_EQ((a * b) * c, a * (b * c));
}
