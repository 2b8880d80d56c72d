#pragma once

// Casimir action and the splitting of R_rs at s = eps i q^(m+1/2).

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include <string>
#include <vector>

#include "qiso/morphism/psi.hpp"
#include "qiso/repmod/families.hpp"

namespace qiso {

template <class F>
struct CasimirAction {
    WindowedOperator<F> op;
    std::optional<F> scalar;  // set when the exact block is scalar * identity
};

/// Image of C_q assembled from generator matrices.  Numeric mode compares
/// with relative tolerance tol against the largest entry.
template <class F>
CasimirAction<F> casimir_of(const Iso2Matrices<F>& g, const FieldContext<F>& ctx, double tol = 0.0)
{
    F unused_s, unused_r;
    if constexpr (std::is_same_v<F, Scalar>) {
        unused_s = Scalar::s();
        unused_r = Scalar::r();
    } else {
        unused_s = unused_r = F(std::numeric_limits<double>::quiet_NaN());
    }
    auto op = represent_iso2(casimir_pbw(), g, ctx, unused_s, unused_r);
    double scale = std::max(1.0, op.max_abs());
    return {op, op.scalar_value(tol * scale)};
}

/// Basis change for the degenerate point.  Block (a, b) maps the V_b part into
/// V_a, with index 0 <-> eps2 = +1 and 1 <-> eps2 = -1.
template <class F>
struct DegenerateSplit {
    int m = 0;
    int eps = 1;
    int size = 0;  // basis vectors per block
    F s;
    Window window;
    std::array<std::array<std::array<WindowedOperator<F>, 2>, 2>, 3> blocks;

    const WindowedOperator<F>& block(Iso2Gen g, int eps_row, int eps_col) const
    {
        return blocks[static_cast<int>(g)][eps_row > 0 ? 0 : 1][eps_col > 0 ? 0 : 1];
    }
};

/// s = eps i q^(m+1/2); pairs |-m+j> and |-m-j-1> share an R(I) eigenvalue.
template <class F>
F degenerate_s(int m, int eps, const FieldContext<F>& ctx)
{
    return FieldTraits<F>::from_int(eps) * FieldTraits<F>::imag() * ctx.t_pow(2 * m + 1);
}

template <class F>
DegenerateSplit<F> decompose_degenerate(const F& r, int m, int eps, const FieldContext<F>& ctx, Window w)
{
    using T = FieldTraits<F>;
    if (w.lo + w.hi != -2 * m - 1)
        throw std::invalid_argument("decompose: window " + w.str() + " is not symmetric about " +
                                    std::to_string(-m) + " - 1/2");
    if (w.hi < -m)
        throw std::invalid_argument("decompose: window " + w.str() + " contains no pair");

    DegenerateSplit<F> out;
    out.m = m;
    out.eps = eps;
    out.size = w.hi + m + 1;
    out.s = degenerate_s(m, eps, ctx);
    out.window = w;
    auto g = classical_matrices(r, out.s, ctx, w);

    auto pair_factor = [&](int j) { return (j % 2 == 0 ? T::one() : T::from_int(-1)) * T::imag(); };
    auto pair_of = [&](int index) { return index >= -m ? index + m : -m - 1 - index; };
    const F half = T::rational(1, 2);

    for (int gi = 0; gi < 3; ++gi) {
        const auto& R = g[static_cast<Iso2Gen>(gi)];
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                out.blocks[gi][a][b] = WindowedOperator<F>(Window{0, out.size - 1}, 1, 0);
        for (int b = 0; b < 2; ++b) {
            F sign_b = T::from_int(b == 0 ? 1 : -1);
            for (int j = 0; j < out.size; ++j) {
                // R applied to |-m+j> + eps2 c_j |-m-j-1>
                typename WindowedOperator<F>::Column v{{-m + j, T::one()}, {-m - j - 1, sign_b * pair_factor(j)}};
                auto image = R.apply(v);
                std::map<int, std::pair<F, F>> by_pair;  // j' -> (x_a, x_b)
                for (const auto& [index, x] : image) {
                    int jp = pair_of(index);
                    auto& slot = by_pair.try_emplace(jp, T::zero(), T::zero()).first->second;
                    (index >= -m ? slot.first : slot.second) = x;
                }
                for (const auto& [jp, xs] : by_pair) {
                    F ratio = xs.second / pair_factor(jp);
                    F plus = half * (xs.first + ratio);
                    F minus = half * (xs.first - ratio);
                    out.blocks[gi][0][b].set(jp, j, plus);
                    out.blocks[gi][1][b].set(jp, j, minus);
                }
            }
        }
    }
    return out;
}

template <class F>
struct NamedDefect {
    std::string name;
    WindowedOperator<F> op;
};

/// Relations of the localized algebra in pi_rs, with G_k checked for |k| <= k_range.
template <class F>
std::vector<NamedDefect<F>> m2_relation_defects(const F& r, const F& s, const FieldContext<F>& ctx, Window w,
                                                int k_range = 3)
{
    auto K = pi_rs_matrix(M2Gen::K, 0, r, s, ctx, w);
    auto Ki = pi_rs_matrix(M2Gen::Kinv, 0, r, s, ctx, w);
    auto E = pi_rs_matrix(M2Gen::E, 0, r, s, ctx, w);
    auto Fm = pi_rs_matrix(M2Gen::F, 0, r, s, ctx, w);
    auto id = WindowedOperator<F>::identity(w);
    std::vector<NamedDefect<F>> out{
        {"K Kinv = 1", K * Ki - id},
        {"Kinv K = 1", Ki * K - id},
        {"K E = q E K", K * E - ctx.q() * (E * K)},
        {"K F = q^-1 F K", K * Fm - (FieldTraits<F>::one() / ctx.q()) * (Fm * K)},
        {"E F = F E", E * Fm - Fm * E},
    };
    for (int k = -k_range; k <= k_range; ++k) {
        auto G = pi_rs_matrix(M2Gen::G, k, r, s, ctx, w);
        auto Dk = ctx.q_pow(k) * K + ctx.q_pow(-k) * Ki;
        std::string tag = "G[" + std::to_string(k) + "]";
        out.push_back({tag + " D_k = 1", G * Dk - id});
        out.push_back({"D_k " + tag + " = 1", Dk * G - id});
    }
    return out;
}

/// R_rs(g)[n, m] - i^(m-n) pi_(ir, s)(psi(g))[n, m] on the common exact columns.
template <class F>
std::array<WindowedOperator<F>, 3> psi_factorization_defects(const F& r, const F& s, const FieldContext<F>& ctx,
                                                             Window w)
{
    using T = FieldTraits<F>;
    const F powers[4] = {T::one(), T::imag(), T::from_int(-1), T::from_int(-1) * T::imag()};
    auto direct = classical_matrices(r, s, ctx, w);
    std::array<WindowedOperator<F>, 3> out;
    for (Iso2Gen g : {Iso2Gen::T1, Iso2Gen::T2, Iso2Gen::I}) {
        auto composed = represent_m2(psi().image(g), T::imag() * r, s, ctx, w);
        const auto& d = direct[g];
        Window cols = d.exact().intersect(composed.exact());
        WindowedOperator<F> defect(cols, std::max(d.reach(), composed.reach()));
        for (int m = cols.lo; m <= cols.hi; ++m) {
            std::map<int, F> rows = d.column(m);
            for (const auto& [n, v] : composed.column(m))
                rows.try_emplace(n, T::zero());
            for (const auto& [n, v] : rows)
                defect.set(n, m, d.at(n, m) - powers[((m - n) % 4 + 4) % 4] * composed.at(n, m));
        }
        out[static_cast<int>(g)] = defect;
    }
    return out;
}

}  // namespace qiso
