#pragma once

// Parameter sets of the representation families, their classification,
// the equivalence predicate and canonical representatives.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "qiso/repmod/families.hpp"

namespace qiso {

struct ClassLabel {
    enum class Kind { ClassicalIrreducible, DegenerateReducible, NotExtendable, OneDimensional };
    Kind kind = Kind::ClassicalIrreducible;
    int m = 0;    // DegenerateReducible: s = eps i q^(m+1/2)
    int eps = 0;  // DegenerateReducible
    int n = 0;    // NotExtendable: s = +-i q^n

    friend bool operator==(const ClassLabel&, const ClassLabel&) = default;

    std::string str() const
    {
        switch (kind) {
        case Kind::ClassicalIrreducible:
            return "ClassicalIrreducible";
        case Kind::DegenerateReducible:
            return "DegenerateReducible(m=" + std::to_string(m) + ", eps=" + std::to_string(eps) + ")";
        case Kind::NotExtendable:
            return "NotExtendable(n=" + std::to_string(n) + ")";
        case Kind::OneDimensional:
            return "OneDimensional";
        }
        return "?";
    }
};

template <class F>
struct ClassicalM2 {
    F r, s;
};
template <class F>
struct ClassicalIso2 {
    F r, s;
};
template <class F>
struct Nonclassical {
    F r;
    int eps = 1;
    int eps2 = 1;
};
template <class F>
struct OneDimM2 {
    F sigma;
};
template <class F>
struct OneDimIso2 {
    F c;
};

template <class F>
struct RepParams {
    std::variant<ClassicalM2<F>, ClassicalIso2<F>, Nonclassical<F>, OneDimM2<F>, OneDimIso2<F>> family;
    std::optional<ClassLabel> excluded;  // classical families on a ladder point

    Algebra algebra() const
    {
        return std::holds_alternative<ClassicalM2<F>>(family) || std::holds_alternative<OneDimM2<F>>(family)
                   ? Algebra::M2
                   : Algebra::Iso2;
    }
    template <class V>
    bool is() const
    {
        return std::holds_alternative<V>(family);
    }
    template <class V>
    const V& as() const
    {
        return std::get<V>(family);
    }
};

// ---------------------------------------------------------------------------
// Integer powers

/// n with x = t^(step * n), if any.  Exact: x must be that monomial.
/// Numeric: relative tolerance tol, n searched near log|x| / log|t^step| with
/// the given margin (or over [-limit, limit] when |t| = 1).
inline std::optional<int> power_of_t(const Scalar& x, const FieldContext<Scalar>&, int step, int = 8)
{
    if (!x.is_monomial())
        return std::nullopt;
    const auto& [e, c] = x.num().leading();
    if (!c.is_one() || e[1] != 0 || e[2] != 0 || e[0] % step != 0)
        return std::nullopt;
    return e[0] / step;
}

inline std::optional<int> power_of_t(const Complex& x, const FieldContext<Complex>& ctx, int step, int margin = 8)
{
    if (x == Complex(0))
        return std::nullopt;
    const Complex base = FieldTraits<Complex>::pow(ctx.t, step);
    double log_base = std::log(std::abs(base));
    int lo = -64, hi = 64;
    if (std::abs(log_base) > 1e-12) {
        int guess = static_cast<int>(std::lround(std::log(std::abs(x)) / log_base));
        lo = guess - margin;
        hi = guess + margin;
    }
    for (int n = lo; n <= hi; ++n)
        if (std::abs(x - FieldTraits<Complex>::pow(base, n)) <= ctx.tol * std::abs(x))
            return n;
    return std::nullopt;
}

template <class F>
bool same_value(const F& a, const F& b, const FieldContext<F>& ctx)
{
    if constexpr (std::is_same_v<F, Scalar>)
        return a == b;
    else
        return std::abs(a - b) <= ctx.tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// ---------------------------------------------------------------------------
// Ladder points s = c t^k, c = +-i

template <class F>
std::optional<ClassLabel> ladder_label(const F& s, const FieldContext<F>& ctx)
{
    using T = FieldTraits<F>;
    for (int c : {1, -1}) {
        auto k = power_of_t(s / (T::from_int(c) * T::imag()), ctx, 1);
        if (!k)
            continue;
        ClassLabel label;
        if (*k % 2 == 0) {
            label.kind = ClassLabel::Kind::NotExtendable;
            label.n = *k / 2;
        } else {
            label.kind = ClassLabel::Kind::DegenerateReducible;
            label.m = (*k - 1) / 2;
            label.eps = c;
        }
        return label;
    }
    return std::nullopt;
}

/// Degeneracy test: (m, eps) when s = eps i q^(m+1/2).
template <class F>
std::optional<std::pair<int, int>> is_degenerate_s(const F& s, const FieldContext<F>& ctx)
{
    auto label = ladder_label(s, ctx);
    if (label && label->kind == ClassLabel::Kind::DegenerateReducible)
        return std::make_pair(label->m, label->eps);
    return std::nullopt;
}

template <class F>
ClassLabel classify_params(const F& r, const F& s, const FieldContext<F>& ctx)
{
    using T = FieldTraits<F>;
    if (T::is_zero(r, 0.0) || T::is_zero(s, 0.0))
        throw std::invalid_argument("classify: r and s must be nonzero");
    if (auto label = ladder_label(s, ctx))
        return *label;
    return {};
}

template <class F>
ClassLabel classify_params(const RepParams<F>& p, const FieldContext<F>& ctx)
{
    if (p.template is<OneDimM2<F>>() || p.template is<OneDimIso2<F>>())
        return {ClassLabel::Kind::OneDimensional};
    if (p.template is<Nonclassical<F>>())
        return {};
    if (p.template is<ClassicalM2<F>>())
        return classify_params(p.template as<ClassicalM2<F>>().r, p.template as<ClassicalM2<F>>().s, ctx);
    return classify_params(p.template as<ClassicalIso2<F>>().r, p.template as<ClassicalIso2<F>>().s, ctx);
}

/// Builders that record ladder hits.
template <class F>
RepParams<F> classical_iso2(const F& r, const F& s, const FieldContext<F>& ctx)
{
    return {ClassicalIso2<F>{r, s}, ladder_label(s, ctx)};
}
template <class F>
RepParams<F> classical_m2(const F& r, const F& s, const FieldContext<F>& ctx)
{
    return {ClassicalM2<F>{r, s}, ladder_label(s, ctx)};
}
template <class F>
RepParams<F> nonclassical(const F& r, int eps, int eps2)
{
    if ((eps != 1 && eps != -1) || (eps2 != 1 && eps2 != -1))
        throw std::invalid_argument("nonclassical: eps and eps2 must be +1 or -1");
    return {Nonclassical<F>{r, eps, eps2}, std::nullopt};
}

// ---------------------------------------------------------------------------
// Equivalence

namespace detail {

template <class F>
void require_irreducible(const RepParams<F>& p)
{
    if (p.excluded && p.algebra() == Algebra::Iso2) {
        if (p.excluded->kind == ClassLabel::Kind::DegenerateReducible)
            throw std::invalid_argument("parameters are reducible (" + p.excluded->str() +
                                        "); decompose into nonclassical blocks first");
        throw std::invalid_argument("parameters give no representation (" + p.excluded->str() + ")");
    }
}

template <class F>
bool r_up_to_sign(const F& a, const F& b, const FieldContext<F>& ctx)
{
    return same_value(a, b, ctx) || same_value(a, FieldTraits<F>::zero() - b, ctx);
}

}  // namespace detail

template <class F>
bool equivalent_params(const RepParams<F>& p1, const RepParams<F>& p2, const FieldContext<F>& ctx)
{
    using T = FieldTraits<F>;
    detail::require_irreducible(p1);
    detail::require_irreducible(p2);
    if (p1.family.index() != p2.family.index())
        return false;
    if (p1.template is<ClassicalM2<F>>()) {
        const auto &a = p1.template as<ClassicalM2<F>>(), &b = p2.template as<ClassicalM2<F>>();
        return detail::r_up_to_sign(a.r, b.r, ctx) && power_of_t(b.s / a.s, ctx, 2).has_value();
    }
    if (p1.template is<ClassicalIso2<F>>()) {
        const auto &a = p1.template as<ClassicalIso2<F>>(), &b = p2.template as<ClassicalIso2<F>>();
        if (!detail::r_up_to_sign(a.r, b.r, ctx))
            return false;
        // s' = q^n s, or the reflection |m> -> |-m| giving s' = -q^n / s.
        return power_of_t(b.s / a.s, ctx, 2).has_value() ||
               power_of_t(T::zero() - b.s * a.s, ctx, 2).has_value();
    }
    if (p1.template is<Nonclassical<F>>()) {
        const auto &a = p1.template as<Nonclassical<F>>(), &b = p2.template as<Nonclassical<F>>();
        if (a.eps != b.eps)
            return false;
        if (a.eps2 == b.eps2)
            return same_value(a.r, b.r, ctx);
        return same_value(a.r, T::zero() - b.r, ctx);
    }
    if (p1.template is<OneDimM2<F>>())
        return same_value(p1.template as<OneDimM2<F>>().sigma, p2.template as<OneDimM2<F>>().sigma, ctx);
    return same_value(p1.template as<OneDimIso2<F>>().c, p2.template as<OneDimIso2<F>>().c, ctx);
}

// ---------------------------------------------------------------------------
// Canonical representatives

/// True when x counts as "positive": Re x > 0, or Re x = 0 and Im x > 0.
/// Exact values use the leading coefficient of the numerator.
inline bool sign_positive(const Scalar& x, const FieldContext<Scalar>&)
{
    const GaussianRational& c = x.num().leading().second;
    return sgn(c.re()) > 0 || (sgn(c.re()) == 0 && sgn(c.im()) > 0);
}

inline bool sign_positive(const Complex& x, const FieldContext<Complex>& ctx)
{
    double scale = std::max(1.0, std::abs(x));
    if (std::abs(x.real()) > ctx.tol * scale)
        return x.real() > 0;
    return x.imag() > 0;
}

namespace detail {

/// Representative of s q^Z.
inline Scalar shift_representative(const Scalar& s, const FieldContext<Scalar>&)
{
    int e = s.num().min_degree(static_cast<int>(Var::T));
    int n = e >= 0 ? e / 2 : -((-e + 1) / 2);
    return s * Scalar::q(-n);
}

inline Complex shift_representative(const Complex& s, const FieldContext<Complex>& ctx)
{
    Complex q = ctx.q();
    double lq = std::log(std::abs(q));
    if (std::abs(lq) < 1e-12)
        return s;
    // 1 <= |s| < |q| for |q| > 1; |q| < |s| <= 1 otherwise.
    double ratio = std::log(std::abs(s)) / lq;
    int n = static_cast<int>(std::floor(ratio + 1e-12));
    if (lq < 0)
        n = static_cast<int>(std::ceil(ratio - 1e-12));
    return s / FieldTraits<Complex>::pow(q, n);
}

inline bool representative_before(const Scalar& a, const Scalar& b)
{
    std::string x = a.str(), y = b.str();
    return x.size() != y.size() ? x.size() < y.size() : x < y;
}

inline bool representative_before(const Complex& a, const Complex& b)
{
    const double eps = 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
    if (std::abs(a.real() - b.real()) > eps)
        return a.real() < b.real();
    return a.imag() < b.imag();
}

template <class F>
F positive_r(const F& r, const FieldContext<F>& ctx)
{
    return sign_positive(r, ctx) ? r : FieldTraits<F>::zero() - r;
}

}  // namespace detail

template <class F>
RepParams<F> canonical_params(const RepParams<F>& p, const FieldContext<F>& ctx)
{
    using T = FieldTraits<F>;
    RepParams<F> out = p;
    if (p.template is<ClassicalM2<F>>()) {
        const auto& a = p.template as<ClassicalM2<F>>();
        out.family = ClassicalM2<F>{detail::positive_r(a.r, ctx), detail::shift_representative(a.s, ctx)};
        out.excluded = ladder_label(out.template as<ClassicalM2<F>>().s, ctx);
    } else if (p.template is<ClassicalIso2<F>>()) {
        const auto& a = p.template as<ClassicalIso2<F>>();
        F direct = detail::shift_representative(a.s, ctx);
        F reflected = detail::shift_representative(T::zero() - T::one() / a.s, ctx);
        F s = detail::representative_before(reflected, direct) ? reflected : direct;
        out.family = ClassicalIso2<F>{detail::positive_r(a.r, ctx), s};
        out.excluded = ladder_label(s, ctx);
    } else if (p.template is<Nonclassical<F>>()) {
        auto a = p.template as<Nonclassical<F>>();
        if (!sign_positive(a.r, ctx)) {
            a.r = T::zero() - a.r;
            a.eps2 = -a.eps2;
        }
        out.family = a;
    }
    return out;
}

template <class F>
std::string params_str(const RepParams<F>& p)
{
    auto str = [](const F& x) { return FieldTraits<F>::str(x); };
    return std::visit(
        [&](const auto& v) -> std::string {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, ClassicalM2<F>>)
                return "pi(r=" + str(v.r) + ", s=" + str(v.s) + ")";
            else if constexpr (std::is_same_v<V, ClassicalIso2<F>>)
                return "R(r=" + str(v.r) + ", s=" + str(v.s) + ")";
            else if constexpr (std::is_same_v<V, Nonclassical<F>>)
                return "R(r=" + str(v.r) + ", eps=" + std::to_string(v.eps) + ", eps2=" + std::to_string(v.eps2) + ")";
            else if constexpr (std::is_same_v<V, OneDimM2<F>>)
                return "pi(sigma=" + str(v.sigma) + ")";
            else
                return "R1(c=" + str(v.c) + ")";
        },
        p.family);
}

}  // namespace qiso
