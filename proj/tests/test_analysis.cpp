#include <gtest/gtest.h>

#include <random>

#include "qiso/analysis/intertwiner.hpp"
#include "qiso/analysis/spectrum.hpp"

using namespace qiso;

namespace {

const Scalar t = Scalar::t();
const Scalar q = Scalar::q();
const Scalar s = Scalar::s();
const Scalar r = Scalar::r();
const Scalar i = Scalar::i();
const auto sym = symbolic_context();
const Complex I1(0, 1);

using Kind = ClassLabel::Kind;

}  // namespace

TEST(Classify, ExactLadder)
{
    EXPECT_EQ(classify_params(r, s, sym).kind, Kind::ClassicalIrreducible);
    auto deg = classify_params(r, -i * t.pow(5), sym);
    EXPECT_EQ(deg.kind, Kind::DegenerateReducible);
    EXPECT_EQ(deg.m, 2);
    EXPECT_EQ(deg.eps, -1);
    auto ne = classify_params(r, i * q.pow(2), sym);
    EXPECT_EQ(ne.kind, Kind::NotExtendable);
    EXPECT_EQ(ne.n, 2);
    auto neg = classify_params(r, i * t.pow(-3), sym);
    EXPECT_EQ(neg.kind, Kind::DegenerateReducible);
    EXPECT_EQ(neg.m, -2);
    EXPECT_EQ(neg.eps, 1);
    EXPECT_EQ(classify_params(r, Scalar(2) * i * q, sym).kind, Kind::ClassicalIrreducible);
    EXPECT_EQ(classify_params(r, Scalar(1), sym).kind, Kind::ClassicalIrreducible);
}

TEST(Classify, DegenerateSPredicate)
{
    auto hit = is_degenerate_s(i * t, sym);
    ASSERT_TRUE(hit.has_value());
    EXPECT_EQ(hit->first, 0);
    EXPECT_EQ(hit->second, 1);
    EXPECT_FALSE(is_degenerate_s(Scalar(1), sym).has_value());
    EXPECT_FALSE(is_degenerate_s(-i * q.pow(3), sym).has_value());
    EXPECT_EQ(ladder_label(-i * q.pow(3), sym)->kind, Kind::NotExtendable);
}

TEST(Classify, NumericLadder)
{
    auto ctx = numeric_context(Complex(1.7));
    double qv = 1.7;
    auto deg = classify_params(Complex(1), -I1 * std::pow(qv, 2.5), ctx);
    EXPECT_EQ(deg.kind, Kind::DegenerateReducible);
    EXPECT_EQ(deg.m, 2);
    EXPECT_EQ(deg.eps, -1);
    EXPECT_EQ(classify_params(Complex(1), I1 * std::pow(qv, -7.0), ctx).kind, Kind::NotExtendable);
    EXPECT_EQ(classify_params(Complex(1), I1 * std::pow(qv, 2.0) * (1 + 1e-6), ctx).kind,
              Kind::ClassicalIrreducible);
    EXPECT_EQ(classify_params(Complex(1), Complex(0.8, 0.3), ctx).kind, Kind::ClassicalIrreducible);
}

TEST(Spectrum, Examples)
{
    auto ctx = numeric_context(Complex(4.0));
    auto sp = spectrum_I(classical_iso2(Complex(1), Complex(1), ctx), Window{-1, 1}, ctx);
    EXPECT_NEAR(std::abs(sp.eigenvalues[2].second - I1), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(sp.eigenvalues[0].second + I1), 0.0, 1e-12);
    auto nc = spectrum_I(nonclassical(Complex(1), 1, 1), Window{0, 3}, ctx);
    EXPECT_NEAR(nc.eigenvalues[0].second.real(), -2.0 / 3.0, 1e-14);
    EXPECT_TRUE(nc.simple());
}

TEST(Spectrum, PairingAtDegeneratePoint)
{
    auto sp = spectrum_I(classical_iso2(r, i * t, sym), Window{-5, 4}, sym);
    ASSERT_TRUE(sp.pair_sum.has_value());
    EXPECT_EQ(*sp.pair_sum, -1);
    EXPECT_EQ(sp.degenerate_pairs.size(), 5u);
    EXPECT_EQ(sp.max_multiplicity(), 2);
    auto generic = spectrum_I(classical_iso2(r, s, sym), Window{-12, 12}, sym);
    EXPECT_TRUE(generic.simple());
}

TEST(Spectrum, EvenPairingAtNonExtendablePoint)
{
    auto sp = spectrum_I(classical_iso2(r, -i * q, sym), Window{-6, 4}, sym);
    ASSERT_TRUE(sp.pair_sum.has_value());
    EXPECT_EQ(*sp.pair_sum, -2);
    EXPECT_EQ(sp.multiplicity.at(-1), 1);
}

TEST(Trace, NonclassicalT2)
{
    Scalar h0 = t - t.inverse();
    for (int eps : {1, -1})
        for (int eps2 : {1, -1}) {
            Scalar one = trace_T2_nonclassical(r, eps, eps2, 1, sym);
            EXPECT_EQ(one, Scalar(-eps * eps2) * r / h0);
            EXPECT_EQ(trace_T2_nonclassical(r, eps, eps2, 50, sym), one);
        }
    EXPECT_EQ(trace_T2_nonclassical(r, 1, 1, 3, sym), -r / h0);
    EXPECT_NE(trace_T2_nonclassical(r, 1, 1, 3, sym), trace_T2_nonclassical(r, 1, -1, 3, sym));
}

TEST(Equivalence, Decisions)
{
    auto a = classical_iso2(r, s, sym);
    EXPECT_TRUE(equivalent_params(a, classical_iso2(-r, q.pow(3) * s, sym), sym));
    EXPECT_TRUE(equivalent_params(a, classical_iso2(-r, -s.inverse(), sym), sym));
    EXPECT_FALSE(equivalent_params(a, classical_iso2(r, t * s, sym), sym));
    EXPECT_FALSE(equivalent_params(a, classical_iso2(Scalar(2) * r, s, sym), sym));
    auto m = classical_m2(r, s, sym);
    EXPECT_TRUE(equivalent_params(m, classical_m2(-r, q * s, sym), sym));
    EXPECT_FALSE(equivalent_params(m, classical_m2(r, -s.inverse(), sym), sym));
    auto n = nonclassical(r, 1, 1);
    EXPECT_TRUE(equivalent_params(n, nonclassical(-r, 1, -1), sym));
    EXPECT_FALSE(equivalent_params(n, nonclassical(-r, 1, 1), sym));
    EXPECT_FALSE(equivalent_params(n, nonclassical(r, -1, 1), sym));
    EXPECT_FALSE(equivalent_params(n, a, sym));
    EXPECT_THROW(equivalent_params(classical_iso2(r, i * t, sym), a, sym), std::invalid_argument);
}

TEST(Canonical, Examples)
{
    auto c = canonical_params(nonclassical(-r, 1, 1), sym);
    EXPECT_EQ(c.as<Nonclassical<Scalar>>().r, r);
    EXPECT_EQ(c.as<Nonclassical<Scalar>>().eps2, -1);

    auto a = canonical_params(classical_m2(r, q.pow(2) * s, sym), sym);
    EXPECT_EQ(a.as<ClassicalM2<Scalar>>().s, s);

    auto ctx = numeric_context(Complex(1.7));
    auto b = canonical_params(classical_m2(Complex(-2.1), Complex(0.8, 0.3) * 1.7 * 1.7 * 1.7, ctx), ctx);
    EXPECT_NEAR(b.as<ClassicalM2<Complex>>().r.real(), 2.1, 1e-12);
    double mod = std::abs(b.as<ClassicalM2<Complex>>().s);
    EXPECT_GE(mod, 1.0);
    EXPECT_LT(mod, 1.7);
}

TEST(Canonical, IdempotentAndClassConstant)
{
    auto ctx = numeric_context(Complex(1.7));
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int k = 0; k < 20; ++k) {
        Complex rv(u(rng), u(rng)), sv(u(rng), u(rng));
        auto p = classical_iso2(rv, sv, ctx);
        auto c = canonical_params(p, ctx);
        auto cc = canonical_params(c, ctx);
        auto same = [&](const RepParams<Complex>& x, const RepParams<Complex>& y) {
            const auto &a = x.as<ClassicalIso2<Complex>>(), &b = y.as<ClassicalIso2<Complex>>();
            return std::abs(a.r - b.r) < 1e-9 && std::abs(a.s - b.s) < 1e-9 * std::abs(a.s);
        };
        EXPECT_TRUE(same(c, cc));
        auto shifted = classical_iso2(-rv, Complex(1.7 * 1.7) * sv, ctx);
        EXPECT_TRUE(same(canonical_params(shifted, ctx), c));
        auto reflected = classical_iso2(-rv, -1.0 / sv, ctx);
        EXPECT_TRUE(same(canonical_params(reflected, ctx), c));
        EXPECT_TRUE(equivalent_params(p, c, ctx));
    }
}

TEST(Intertwiner, PositiveM2)
{
    auto ctx = numeric_context(Complex(1.7));
    Complex rv(2.1), sv(0.8, 0.3);
    auto res = find_intertwiner(classical_m2(rv, sv, ctx), classical_m2(-rv, 1.7 * sv, ctx), Window{-20, 20}, ctx);
    EXPECT_TRUE(res.found);
    EXPECT_LT(res.residual, 1e-8);
}

TEST(Intertwiner, SelfIsIdentity)
{
    auto ctx = numeric_context(Complex(1.7));
    auto p = classical_iso2(Complex(2.1), Complex(0.8, 0.3), ctx);
    auto res = find_intertwiner(p, p, Window{-10, 10}, ctx);
    ASSERT_TRUE(res.found);
    EXPECT_LT(res.residual, 1e-12);
    // Corner entries are unconstrained by interior equations.
    Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(19, 19);
    EXPECT_LT((res.matrix.block(1, 1, 19, 19) - id).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Intertwiner, ReflectionAndShift)
{
    auto ctx = numeric_context(Complex(1.7));
    Complex rv(2.1), sv(0.8, 0.3);
    auto p = classical_iso2(rv, sv, ctx);
    EXPECT_TRUE(find_intertwiner(p, classical_iso2(-rv, -1.0 / sv, ctx), Window{-20, 20}, ctx).found);
    EXPECT_TRUE(find_intertwiner(p, classical_iso2(rv, 1.7 * 1.7 * sv, ctx), Window{-20, 20}, ctx).found);
    auto neg = find_intertwiner(p, classical_iso2(rv, 1.3 * sv, ctx), Window{-20, 20}, ctx);
    EXPECT_FALSE(neg.found);
    EXPECT_GT(neg.residual, 1e-2);
}

TEST(Intertwiner, NonclassicalPairs)
{
    auto ctx = numeric_context(Complex(1.7));
    Complex rv(1.3, 0.4);
    auto a = nonclassical(rv, 1, 1);
    auto pos = find_intertwiner(a, nonclassical(-rv, 1, -1), Window{0, 20}, ctx);
    EXPECT_TRUE(pos.found);
    auto neg1 = find_intertwiner(a, nonclassical(rv, -1, 1), Window{0, 20}, ctx);
    EXPECT_FALSE(neg1.found);
    EXPECT_GT(neg1.residual, 1e-2);
    auto neg2 = find_intertwiner(a, nonclassical(rv, 1, -1), Window{0, 20}, ctx);
    EXPECT_FALSE(neg2.found);
    EXPECT_GT(neg2.residual, 1e-2);
}

TEST(Intertwiner, SmallEigenvaluesStillSeparate)
{
    // K eigenvalues s q^m shrink to ~1e-5 at the window edge; the gap is relative.
    auto ctx = numeric_context(Complex(1.7));
    Complex rv(2.1), sv(0.8, 0.3);
    auto half = find_intertwiner(classical_m2(rv, sv, ctx), classical_m2(rv, std::sqrt(1.7) * sv, ctx),
                                 Window{-20, 20}, ctx);
    EXPECT_FALSE(half.found);
    EXPECT_GT(half.residual, 1e-2);
    auto scaled = find_intertwiner(classical_m2(rv, sv, ctx), classical_m2(2.0 * rv, sv, ctx), Window{-20, 20}, ctx);
    EXPECT_FALSE(scaled.found);
    EXPECT_GT(scaled.residual, 1e-2);
}
