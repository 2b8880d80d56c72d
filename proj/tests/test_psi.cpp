#include <gtest/gtest.h>

#include <random>

#include "qiso/morphism/psi.hpp"

using namespace qiso;

namespace {

const Iso2Element I = iso2_gen(Iso2Gen::I);
const Iso2Element T1 = iso2_gen(Iso2Gen::T1);
const Iso2Element T2 = iso2_gen(Iso2Gen::T2);

Iso2Element random_element(std::mt19937& rng)
{
    std::uniform_int_distribution<int> exp(0, 3), coef(-2, 2), terms(1, 3);
    const Scalar pool[] = {Scalar(1), Scalar::t(), Scalar::s(), Scalar::i(), Scalar::q(-1) + Scalar::r()};
    std::uniform_int_distribution<int> pick(0, 4);
    Iso2Element x;
    int n = terms(rng);
    for (int k = 0; k < n; ++k) {
        int j = exp(rng), kk = exp(rng), l = exp(rng);
        while (j + kk + l > 3) {
            if (j)
                --j;
            else if (kk)
                --kk;
            else
                --l;
        }
        x.add_term({j, kk, l}, Scalar(coef(rng)) * pool[pick(rng)]);
    }
    return x;
}

}  // namespace

TEST(Psi, BindingVerifies)
{
    const PsiAssignment& a = psi();
    EXPECT_EQ(a.binding, "direct");
    for (const auto& check : psi_relation_defects(a.image_I, a.image_T1, a.image_T2))
        EXPECT_TRUE(check.holds()) << check.name;
}

TEST(Psi, SwappedBindingFails)
{
    const PsiAssignment& a = psi();
    bool all = true;
    for (const auto& check : psi_relation_defects(a.image_I, a.image_T2, a.image_T1))
        all = all && check.holds();
    EXPECT_FALSE(all);
}

TEST(Psi, ImageOfI)
{
    Scalar c = Scalar::i() / (Scalar::q() - Scalar::q(-1));
    EXPECT_EQ(psi().image_I, c * (m2_gen(M2Gen::K) - m2_gen(M2Gen::Kinv)));
}

TEST(Psi, UnitAndGenerators)
{
    EXPECT_EQ(psi_apply(Iso2Element(1)), M2Element(1));
    EXPECT_EQ(psi_apply(I), psi().image_I);
    EXPECT_EQ(psi_apply(T1), psi().image_T1);
    EXPECT_EQ(psi_apply(T2), psi().image_T2);
}

TEST(Psi, RelationOneThroughPsi)
{
    Iso2Element lhs = Scalar::t() * (I * T2) - Scalar::t(-1) * (T2 * I);
    EXPECT_EQ(psi_apply(lhs), psi().image_T1);
}

TEST(Psi, QCommutationOfImages)
{
    const PsiAssignment& a = psi();
    EXPECT_TRUE((Scalar::t() * (a.image_T2 * a.image_T1) - Scalar::t(-1) * (a.image_T1 * a.image_T2)).is_zero());
}

TEST(Psi, CasimirImageIsCentral)
{
    M2Element c = psi_apply(casimir_pbw());
    for (M2Gen g : {M2Gen::E, M2Gen::F, M2Gen::K, M2Gen::Kinv}) {
        M2Element x = m2_gen(g);
        EXPECT_TRUE((c * x - x * c).is_zero());
    }
}

TEST(Psi, HomomorphismOnRandomPairs)
{
    std::mt19937 rng(21);
    for (int n = 0; n < 100; ++n) {
        Iso2Element x = random_element(rng), y = random_element(rng);
        EXPECT_EQ(psi_apply(x * y), psi_apply(x) * psi_apply(y));
    }
}
