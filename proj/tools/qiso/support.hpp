#pragma once

// Option record, value parsing and output helpers for the qiso driver.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "qiso/analysis/intertwiner.hpp"
#include "qiso/analysis/spectrum.hpp"
#include "qiso/cli/evaluate.hpp"
#include "qiso/cli/format.hpp"

namespace qiso::tool {

using json = nlohmann::ordered_json;

/// Raised for bad flag combinations; maps to exit code 2.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RepOptions {
    std::string family = "classical";
    std::string r = "r";
    std::string s = "s";
    std::string c = "1";
    int epsilon = 1;
    int epsilon2 = 1;
};

struct Options {
    std::string algebra = "iso2";
    std::string mode = "exact";
    std::string q = "1.7";
    std::string window = "-5:5";
    std::string format = "text";
    double tol = kDefaultPoleTolerance;
    RepOptions rep;
    RepOptions other;

    int size = 0;   // nonclassical basis size; 0 derives it from the window
    int steps = 6;  // reconstruction depth
    int m = 0;      // degenerate index for decompose
    int g_index = 0;
    std::size_t max_length = kDefaultMaxWordLength;
    std::string generator = "all";
    bool show_matrix = false;

    bool algebra_given = false;
    bool window_given = false;
    bool format_given = false;

    Algebra algebra_value() const { return algebra == "m2" ? Algebra::M2 : Algebra::Iso2; }
    Window window_value() const { return parse_window(window); }
    bool numeric() const { return mode == "numeric"; }
};

// ---------------------------------------------------------------------------
// Values

/// Decimal complex literal: "2.1", "-0.5e-3", "0.8+0.3i", "-2i", "i".
inline std::optional<Complex> parse_decimal_complex(std::string text)
{
    std::erase_if(text, [](char ch) { return std::isspace(static_cast<unsigned char>(ch)); });
    static const std::string num = R"((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)";
    static const std::regex real_only("^([+-]?" + num + ")$");
    static const std::regex with_imag("^([+-]?" + num + ")?([+-]?)(" + num + ")?\\*?i$");
    std::smatch mt;
    if (std::regex_match(text, mt, real_only))
        return Complex(std::stod(mt[1]), 0.0);
    if (std::regex_match(text, mt, with_imag)) {
        if (mt[1].matched && mt[2].length() == 0) {
            if (mt[3].matched)
                return std::nullopt;  // "2 3i" juxtaposition
            return Complex(0.0, std::stod(mt[1]));  // "0.25i", "-2i"
        }
        double re = mt[1].matched ? std::stod(mt[1]) : 0.0;
        double im = mt[3].matched ? std::stod(mt[3]) : 1.0;
        if (mt[2].str() == "-")
            im = -im;
        return Complex(re, im);
    }
    return std::nullopt;
}

/// Numeric value: a decimal literal, or an exact expression in i, t, q evaluated at q.
inline Complex parse_numeric(const std::string& text, Complex t, const std::string& flag)
{
    if (auto v = parse_decimal_complex(text))
        return *v;
    Scalar x;
    try {
        x = parse_scalar(text);
    } catch (const std::exception& e) {
        throw UsageError(flag + ": cannot read '" + text + "' as a number (" + e.what() + ")");
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    Complex v = x.evaluate_at(t, Complex(nan), Complex(nan));
    if (std::isnan(v.real()) || std::isnan(v.imag()))
        throw UsageError(flag + ": '" + text + "' must be numeric in numeric mode");
    return v;
}

template <class F>
struct Field {
    FieldContext<F> ctx;

    F value(const std::string& text, const std::string& flag) const
    {
        if constexpr (std::is_same_v<F, Scalar>) {
            try {
                return parse_scalar(text);
            } catch (const DivisionByZero&) {
                throw;
            } catch (const std::exception& e) {
                throw UsageError(flag + ": " + e.what());
            }
        } else {
            return parse_numeric(text, ctx.t, flag);
        }
    }
};

inline Field<Scalar> exact_field() { return {symbolic_context()}; }

inline Field<Complex> numeric_field(const Options& o)
{
    auto q = parse_decimal_complex(o.q);
    if (!q)
        throw UsageError("--q must be a decimal number, got '" + o.q + "'");
    if (std::abs(*q - Complex(1.0)) == 0.0)
        throw UsageError("--q = 1 is the undeformed point; use q = 1 + h");
    return {numeric_context(*q, o.tol)};
}

/// Runs body<F> with F = Scalar in exact mode and Complex in numeric mode.
template <class Body>
auto with_field(const Options& o, Body&& body)
{
    if (o.numeric())
        return body(numeric_field(o));
    return body(exact_field());
}

template <class F>
json value_json(const F& x)
{
    if constexpr (std::is_same_v<F, Scalar>)
        return x.str();
    else
        return json::array({x.real(), x.imag()});
}

// ---------------------------------------------------------------------------
// Representation parameters

inline int sign_flag(int v, const std::string& flag)
{
    if (v != 1 && v != -1)
        throw UsageError(flag + " must be 1 or -1");
    return v;
}

template <class F>
RepParams<F> build_params(const RepOptions& ro, Algebra algebra, const Field<F>& f, const std::string& prefix = "")
{
    if (ro.family == "classical") {
        F r = f.value(ro.r, "--" + prefix + "r"), s = f.value(ro.s, "--" + prefix + "s");
        return algebra == Algebra::M2 ? classical_m2(r, s, f.ctx) : classical_iso2(r, s, f.ctx);
    }
    if (ro.family == "nonclassical") {
        if (algebra != Algebra::Iso2)
            throw UsageError("the nonclassical family belongs to iso2");
        return nonclassical(f.value(ro.r, "--" + prefix + "r"), sign_flag(ro.epsilon, "--" + prefix + "epsilon"),
                            sign_flag(ro.epsilon2, "--" + prefix + "epsilon2"));
    }
    if (ro.family == "onedim") {
        F c = f.value(ro.c, "--" + prefix + "c");
        RepParams<F> p;
        if (algebra == Algebra::M2)
            p.family = OneDimM2<F>{c};
        else
            p.family = OneDimIso2<F>{c};
        return p;
    }
    throw UsageError("unknown family '" + ro.family + "'");
}

/// Generator matrices of a representation on the requested window.
template <class F>
std::vector<std::pair<std::string, WindowedOperator<F>>> rep_generators(const RepParams<F>& p, const Options& o,
                                                                        const FieldContext<F>& ctx)
{
    using T = FieldTraits<F>;
    Window w = o.window_value();
    std::vector<std::pair<std::string, WindowedOperator<F>>> out;
    if (p.template is<ClassicalIso2<F>>()) {
        const auto& a = p.template as<ClassicalIso2<F>>();
        auto g = classical_matrices(a.r, a.s, ctx, w);
        out = {{"I", g.I}, {"T1", g.T1}, {"T2", g.T2}};
    } else if (p.template is<ClassicalM2<F>>()) {
        const auto& a = p.template as<ClassicalM2<F>>();
        for (auto [name, gen] : {std::pair{"K", M2Gen::K}, {"Kinv", M2Gen::Kinv}, {"E", M2Gen::E}, {"F", M2Gen::F}})
            out.emplace_back(name, pi_rs_matrix(gen, 0, a.r, a.s, ctx, w));
        out.emplace_back("G[" + std::to_string(o.g_index) + "]", pi_rs_matrix(M2Gen::G, o.g_index, a.r, a.s, ctx, w));
    } else if (p.template is<Nonclassical<F>>()) {
        const auto& a = p.template as<Nonclassical<F>>();
        int n = o.size > 0 ? o.size : w.hi + 1;
        if (n < 1)
            throw UsageError("nonclassical basis needs --size >= 1 or a window reaching index 0");
        auto g = nonclassical_matrices(a.r, a.eps, a.eps2, ctx, n);
        out = {{"I", g.I}, {"T1", g.T1}, {"T2", g.T2}};
    } else {
        Window one{0, 0};
        auto diag = [&](const F& v) {
            WindowedOperator<F> op(one, 0);
            op.set(0, 0, v);
            return op;
        };
        if (p.template is<OneDimIso2<F>>()) {
            out = {{"I", diag(p.template as<OneDimIso2<F>>().c)}, {"T1", diag(T::zero())}, {"T2", diag(T::zero())}};
        } else {
            F sigma = p.template as<OneDimM2<F>>().sigma;
            if (T::is_zero(sigma, 0.0))
                throw UsageError("one-dimensional m2 representation needs sigma != 0");
            F d = ctx.q_pow(o.g_index) * sigma + ctx.q_pow(-o.g_index) / sigma;
            if (near_zero(d, ctx, T::one()))
                throw NonExtendable("one-dimensional representation: D_k vanishes at sigma", o.g_index);
            out = {{"K", diag(sigma)}, {"Kinv", diag(T::one() / sigma)}, {"E", diag(T::zero())},
                   {"F", diag(T::zero())}, {"G[" + std::to_string(o.g_index) + "]", diag(T::one() / d)}};
        }
    }
    if (o.generator != "all") {
        std::erase_if(out, [&](const auto& kv) { return kv.first != o.generator; });
        if (out.empty())
            throw UsageError("--gen '" + o.generator + "' is not a generator of this representation");
    }
    return out;
}

template <class F>
Iso2Matrices<F> iso2_matrices(const RepParams<F>& p, const Options& o, const FieldContext<F>& ctx)
{
    if (p.algebra() != Algebra::Iso2)
        throw UsageError("this command needs an iso2 representation");
    Options all = o;
    all.generator = "all";
    auto gens = rep_generators(p, all, ctx);
    return {gens[0].second, gens[1].second, gens[2].second};
}

template <class F>
json matrix_json(const RepParams<F>& p, const std::string& name, const WindowedOperator<F>& op)
{
    json entries = json::array();
    for (const auto& [row, col, v] : op.entries())
        entries.push_back(json::array({row, col, value_json(v)}));
    return {{"params", params_str(p)},
            {"window", op.domain().str()},
            {"exact", op.exact().str()},
            {"generator", name},
            {"entries", entries}};
}

// ---------------------------------------------------------------------------
// Output

inline std::string text_value(const json& v)
{
    return v.is_string() ? v.get<std::string>() : v.dump();
}

inline void print_text(const json& j, std::ostream& os, const std::string& indent = "")
{
    if (j.is_object()) {
        for (const auto& [key, v] : j.items()) {
            if (v.is_object()) {
                os << indent << key << ":\n";
                print_text(v, os, indent + "  ");
            } else if (v.is_array() && !v.empty() && v.front().is_object()) {
                os << indent << key << ":\n";
                for (const auto& item : v) {
                    print_text(item, os, indent + "  ");
                    os << indent << "  --\n";
                }
            } else {
                os << indent << key << ": " << text_value(v) << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& item : j) {
            print_text(item, os, indent);
            if (item.is_object())
                os << indent << "--\n";
        }
    } else {
        os << indent << text_value(j) << "\n";
    }
}

inline void emit(const json& j, const Options& o)
{
    if (o.format == "json")
        std::cout << j.dump(2) << "\n";
    else if (o.format == "csv")
        throw UsageError("--format csv applies to numeric matrix export only");
    else
        print_text(j, std::cout);
}

}  // namespace qiso::tool
