#pragma once

// Matrix realizations of the representation families on finite windows.
//
//   pi_rs (m2):       K|m> = s q^m |m>, E|m> = r|m+1>, F|m> = r|m-1>,
//                     G[k] = (q^k K + q^-k Kinv)^-1 on each weight.
//   R_rs (iso2):      diagonal I, tridiagonal T1, T2 with D_m = s q^m + 1/(s q^m).
//   nonclassical:     half-line basis j >= 0 with parameters (r, eps, eps2).
//
// Every builder is templated on the coefficient field (exact Scalar or
// complex<double>).  Symbolic mode uses t = q^(1/2) as the Scalar variable.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "qiso/algebra.hpp"
#include "qiso/errors.hpp"
#include "qiso/freealg/iso2.hpp"
#include "qiso/freealg/m2hat.hpp"
#include "qiso/repmod/window.hpp"
#include "qiso/scalars/numeric.hpp"

namespace qiso {

/// Values of t = q^(1/2) and the pole tolerance used in numeric mode.
template <class F>
struct FieldContext {
    F t;
    double tol = kDefaultPoleTolerance;

    F q() const { return t * t; }
    F q_pow(int n) const { return FieldTraits<F>::pow(t, 2 * n); }
    F t_pow(int n) const { return FieldTraits<F>::pow(t, n); }
};

inline FieldContext<Scalar> symbolic_context() { return {Scalar::t(), 0.0}; }
inline FieldContext<Complex> numeric_context(Complex q, double tol = kDefaultPoleTolerance)
{
    return {std::sqrt(q), tol};
}

/// Map a Scalar coefficient into F, with the symbols t, s, r bound to given values.
template <class F>
F embed_scalar(const Scalar& c, const FieldContext<F>& ctx, const F& s, const F& r)
{
    if constexpr (std::is_same_v<F, Scalar>) {
        if (c.vars() == 0 || (ctx.t == Scalar::t() && s == Scalar::s() && r == Scalar::r()))
            return c;
        return c.substitute(ctx.t, s, r);
    } else {
        return c.evaluate_at(ctx.t, s, r);
    }
}

template <class F>
bool near_zero(const F& x, const FieldContext<F>& ctx, const F& scale)
{
    if constexpr (std::is_same_v<F, Scalar>)
        return x.is_zero();
    else
        return std::abs(x) <= ctx.tol * std::max(1.0, std::abs(scale));
}

// ---------------------------------------------------------------------------
// pi_rs

template <class F>
F pi_weight(const F& s, int m, const FieldContext<F>& ctx)
{
    return s * ctx.q_pow(m);
}

/// q^k K + q^-k Kinv at weight m, throwing NonExtendable on a zero.
template <class F>
F pi_d_value(const F& s, int m, int k, const FieldContext<F>& ctx)
{
    F w = pi_weight(s, m + k, ctx);
    F one = FieldTraits<F>::one();
    F d = w + one / w;
    if (near_zero(d, ctx, w))
        throw NonExtendable("representation does not extend: s = +-i q^" + std::to_string(-(m + k)) +
                                " makes q^" + std::to_string(k) + " K + q^" + std::to_string(-k) +
                                " Kinv singular at weight " + std::to_string(m),
                            -(m + k));
    return d;
}

template <class F>
WindowedOperator<F> pi_rs_matrix(M2Gen gen, int k, const F& r, const F& s, const FieldContext<F>& ctx, Window w)
{
    using T = FieldTraits<F>;
    bool shift = gen == M2Gen::E || gen == M2Gen::F;
    WindowedOperator<F> op(w, shift ? 1 : 0);
    for (int m = w.lo; m <= w.hi; ++m) {
        switch (gen) {
        case M2Gen::K:
            op.set(m, m, pi_weight(s, m, ctx));
            break;
        case M2Gen::Kinv:
            op.set(m, m, T::one() / pi_weight(s, m, ctx));
            break;
        case M2Gen::E:
            op.set(m + 1, m, r);
            break;
        case M2Gen::F:
            op.set(m - 1, m, r);
            break;
        case M2Gen::G:
            op.set(m, m, T::one() / pi_d_value(s, m, k, ctx));
            break;
        }
    }
    return op;
}

/// Image of an arbitrary element under pi_rs.
template <class F>
WindowedOperator<F> represent_m2(const M2Element& x, const F& r, const F& s, const FieldContext<F>& ctx, Window w)
{
    using T = FieldTraits<F>;
    int reach = 0;
    for (const auto& [mono, phi] : x.terms())
        reach = std::max(reach, std::abs(mono.b - mono.a));
    WindowedOperator<F> op(w, reach);
    auto embed = [&](const Scalar& c) { return embed_scalar(c, ctx, s, r); };
    for (int m = w.lo; m <= w.hi; ++m) {
        std::map<int, F> col;
        for (const auto& [mono, phi] : x.terms()) {
            for (const auto& [k, mult] : phi.den())
                (void)pi_d_value(s, m, k, ctx);
            F value = phi.evaluate(pi_weight(s, m, ctx), ctx.q(), embed) * T::pow(r, mono.a + mono.b);
            int row = m + mono.b - mono.a;
            auto [it, fresh] = col.try_emplace(row, value);
            if (!fresh)
                it->second = it->second + value;
        }
        for (const auto& [row, v] : col)
            op.set(row, m, v);
    }
    return op;
}

// ---------------------------------------------------------------------------
// R_rs

template <class F>
F classical_d(const F& s, int m, const FieldContext<F>& ctx)
{
    F w = pi_weight(s, m, ctx);
    return w + FieldTraits<F>::one() / w;
}

/// i (s q^m - s^-1 q^-m) / (q - q^-1)
template <class F>
F classical_eigenvalue(const F& s, int m, const FieldContext<F>& ctx)
{
    using T = FieldTraits<F>;
    F w = pi_weight(s, m, ctx);
    return T::imag() * (w - T::one() / w) / (ctx.q() - T::one() / ctx.q());
}

template <class F>
WindowedOperator<F> r_rs_matrix(Iso2Gen gen, const F& r, const F& s, const FieldContext<F>& ctx, Window w)
{
    using T = FieldTraits<F>;
    std::vector<int> poles;
    for (int m = w.lo; m <= w.hi; ++m)
        if (near_zero(classical_d(s, m, ctx), ctx, pi_weight(s, m, ctx)))
            poles.push_back(m);
    if (!poles.empty()) {
        std::string list;
        for (int m : poles)
            list += (list.empty() ? "" : ", ") + std::to_string(m);
        throw WindowPole("s q^m + s^-1 q^-m vanishes on the window at m = " + list, poles);
    }
    WindowedOperator<F> op(w, gen == Iso2Gen::I ? 0 : 1);
    for (int m = w.lo; m <= w.hi; ++m) {
        F d = classical_d(s, m, ctx);
        F wm = pi_weight(s, m, ctx);
        switch (gen) {
        case Iso2Gen::I:
            op.set(m, m, classical_eigenvalue(s, m, ctx));
            break;
        case Iso2Gen::T2:
            op.set(m + 1, m, r / d);
            op.set(m - 1, m, r / d);
            break;
        case Iso2Gen::T1: {
            F c = T::imag() * ctx.t * r / d;
            op.set(m + 1, m, c * wm);
            op.set(m - 1, m, T::zero() - c / wm);
            break;
        }
        }
    }
    return op;
}

// ---------------------------------------------------------------------------
// Nonclassical family on |j>, j = 0 .. n-1

/// -eps (q^(j+1/2) + q^(-j-1/2)) / (q - q^-1)
template <class F>
F nonclassical_eigenvalue(int eps, int j, const FieldContext<F>& ctx)
{
    using T = FieldTraits<F>;
    F num = ctx.t_pow(2 * j + 1) + ctx.t_pow(-2 * j - 1);
    return T::from_int(-eps) * num / (ctx.q() - T::one() / ctx.q());
}

/// The T2 seed column carries a factor eps; seed_sign_from_eps = false
/// reproduces the variant without it, which fails the relations for eps = -1.
template <class F>
WindowedOperator<F> nonclassical_matrix(Iso2Gen gen, const F& r, int eps, int eps2, const FieldContext<F>& ctx, int n,
                                        bool seed_sign_from_eps = true)
{
    using T = FieldTraits<F>;
    if (n < 1)
        throw std::invalid_argument("nonclassical_matrix: basis size must be positive");
    WindowedOperator<F> op(Window{0, n - 1}, gen == Iso2Gen::I ? 0 : 1, 0);
    F i = T::imag();
    F e = T::from_int(eps), e2 = T::from_int(eps2);
    for (int j = 0; j < n; ++j) {
        F h = ctx.t_pow(2 * j + 1) - ctx.t_pow(-2 * j - 1);
        switch (gen) {
        case Iso2Gen::I:
            op.set(j, j, nonclassical_eigenvalue(eps, j, ctx));
            break;
        case Iso2Gen::T2:
            if (j == 0) {
                F c = T::zero() - (seed_sign_from_eps ? e : T::one()) * r / h;
                op.set(0, 0, c * e2);
                op.set(1, 0, c * i);
            } else {
                F c = T::zero() - e * i * r / h;
                op.set(j + 1, j, c);
                op.set(j - 1, j, c);
            }
            break;
        case Iso2Gen::T1:
            if (j == 0) {
                F c = r / h;
                op.set(0, 0, c * e2);
                op.set(1, 0, c * i * ctx.q());
            } else {
                F c = i * r / h;
                op.set(j + 1, j, c * ctx.q_pow(j + 1));
                op.set(j - 1, j, c * ctx.q_pow(-j));
            }
            break;
        }
    }
    return op;
}

// ---------------------------------------------------------------------------
// Assembling elements from generator matrices

template <class F>
struct Iso2Matrices {
    WindowedOperator<F> I, T1, T2;

    const WindowedOperator<F>& operator[](Iso2Gen g) const
    {
        return g == Iso2Gen::I ? I : g == Iso2Gen::T1 ? T1 : T2;
    }
};

template <class F>
Iso2Matrices<F> classical_matrices(const F& r, const F& s, const FieldContext<F>& ctx, Window w)
{
    return {r_rs_matrix(Iso2Gen::I, r, s, ctx, w), r_rs_matrix(Iso2Gen::T1, r, s, ctx, w),
            r_rs_matrix(Iso2Gen::T2, r, s, ctx, w)};
}

template <class F>
Iso2Matrices<F> nonclassical_matrices(const F& r, int eps, int eps2, const FieldContext<F>& ctx, int n,
                                      bool seed_sign_from_eps = true)
{
    return {nonclassical_matrix(Iso2Gen::I, r, eps, eps2, ctx, n, seed_sign_from_eps),
            nonclassical_matrix(Iso2Gen::T1, r, eps, eps2, ctx, n, seed_sign_from_eps),
            nonclassical_matrix(Iso2Gen::T2, r, eps, eps2, ctx, n, seed_sign_from_eps)};
}

/// Image of a PBW combination; coefficients are embedded with the given symbol values.
template <class F>
WindowedOperator<F> represent_iso2(const Iso2Element& x, const Iso2Matrices<F>& g, const FieldContext<F>& ctx,
                                   const F& s, const F& r)
{
    using T = FieldTraits<F>;
    Window dom = g.I.domain();
    std::optional<int> floor = g.I.floor();
    WindowedOperator<F> total = T::zero() * WindowedOperator<F>::identity(dom, floor);
    for (const auto& [m, c] : x.terms()) {
        WindowedOperator<F> term = WindowedOperator<F>::identity(dom, floor);
        for (int k = 0; k < m.l; ++k)
            term = g.I * term;
        for (int k = 0; k < m.k; ++k)
            term = g.T2 * term;
        for (int k = 0; k < m.j; ++k)
            term = g.T1 * term;
        total = total + embed_scalar(c, ctx, s, r) * term;
    }
    return total;
}

/// Defining relations as operators (each should vanish on its exact window).
template <class F>
struct RelationDefects {
    WindowedOperator<F> rel1, rel2, rel3;

    double max_abs() const { return std::max({rel1.max_abs(), rel2.max_abs(), rel3.max_abs()}); }
    bool holds(double tol = 0.0) const { return rel1.is_zero(tol) && rel2.is_zero(tol) && rel3.is_zero(tol); }
};

template <class F>
RelationDefects<F> iso2_relation_defects(const Iso2Matrices<F>& g, const FieldContext<F>& ctx)
{
    F up = ctx.t, down = FieldTraits<F>::one() / ctx.t;
    return {
        up * (g.I * g.T2) - down * (g.T2 * g.I) - g.T1,
        up * (g.T1 * g.I) - down * (g.I * g.T1) - g.T2,
        up * (g.T2 * g.T1) - down * (g.T1 * g.T2),
    };
}

/// Undeformed relations [I,T2] = T1, [T1,I] = T2, [T2,T1] = 0.
template <class F>
RelationDefects<F> classical_relation_defects(const Iso2Matrices<F>& g)
{
    return {
        (g.I * g.T2) - (g.T2 * g.I) - g.T1,
        (g.T1 * g.I) - (g.I * g.T1) - g.T2,
        (g.T2 * g.T1) - (g.T1 * g.T2),
    };
}

// ---------------------------------------------------------------------------
// One-dimensional representations

struct OneDimFamily {
    Algebra algebra;
    std::string parameter;
    std::string description;
};

inline OneDimFamily one_dim_reps(Algebra algebra)
{
    if (algebra == Algebra::M2)
        return {algebra, "sigma", "K -> sigma, Kinv -> 1/sigma, E -> 0, F -> 0, G[k] -> 1/(q^k sigma + q^-k/sigma)"};
    return {algebra, "c", "I -> c, T1 -> 0, T2 -> 0"};
}

/// Scalar images of the iso2 relations at (I, T1, T2) = (c, x, y).
template <class F>
std::vector<F> one_dim_iso2_defects(const F& c, const F& x, const F& y, const FieldContext<F>& ctx)
{
    F up = ctx.t, down = FieldTraits<F>::one() / ctx.t;
    return {up * c * y - down * y * c - x, up * x * c - down * c * x - y, up * y * x - down * x * y};
}

}  // namespace qiso
