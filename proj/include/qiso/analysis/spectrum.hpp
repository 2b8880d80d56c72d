#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qiso/analysis/params.hpp"

namespace qiso {

template <class F>
struct SpectrumReport {
    std::vector<std::pair<int, F>> eigenvalues;    // (basis index, R(I) eigenvalue)
    std::map<int, int> multiplicity;               // basis index -> count of equal eigenvalues on the window
    std::vector<std::pair<int, int>> degenerate_pairs;
    std::optional<int> pair_sum;                   // common index sum of all pairs, if consistent

    bool simple() const { return degenerate_pairs.empty(); }
    int max_multiplicity() const
    {
        int best = 0;
        for (const auto& [m, k] : multiplicity)
            best = std::max(best, k);
        return best;
    }
};

template <class F>
SpectrumReport<F> spectrum_I(const RepParams<F>& p, Window w, const FieldContext<F>& ctx)
{
    SpectrumReport<F> out;
    if (p.algebra() != Algebra::Iso2)
        throw AlgebraMismatch("spectrum: R(I) is defined for iso2 families only");
    if (p.template is<ClassicalIso2<F>>()) {
        const F& s = p.template as<ClassicalIso2<F>>().s;
        for (int m = w.lo; m <= w.hi; ++m)
            out.eigenvalues.emplace_back(m, classical_eigenvalue(s, m, ctx));
    } else if (p.template is<Nonclassical<F>>()) {
        int eps = p.template as<Nonclassical<F>>().eps;
        for (int j = std::max(w.lo, 0); j <= w.hi; ++j)
            out.eigenvalues.emplace_back(j, nonclassical_eigenvalue(eps, j, ctx));
    } else {
        out.eigenvalues.emplace_back(0, p.template as<OneDimIso2<F>>().c);
    }

    for (const auto& [m, v] : out.eigenvalues)
        out.multiplicity[m] = 1;
    bool consistent = true;
    for (std::size_t a = 0; a < out.eigenvalues.size(); ++a)
        for (std::size_t b = a + 1; b < out.eigenvalues.size(); ++b) {
            const auto& [ma, va] = out.eigenvalues[a];
            const auto& [mb, vb] = out.eigenvalues[b];
            if (!same_value(va, vb, ctx))
                continue;
            ++out.multiplicity[ma];
            ++out.multiplicity[mb];
            out.degenerate_pairs.emplace_back(ma, mb);
            if (!out.pair_sum)
                out.pair_sum = ma + mb;
            else if (*out.pair_sum != ma + mb)
                consistent = false;
        }
    if (!consistent)
        out.pair_sum.reset();
    return out;
}

/// Sum of the diagonal of R(T2) over j < n; only j = 0 contributes.
template <class F>
F trace_T2_nonclassical(const F& r, int eps, int eps2, int n, const FieldContext<F>& ctx)
{
    if (n < 1)
        throw std::invalid_argument("trace: basis size must be at least 1");
    auto T2 = nonclassical_matrix(Iso2Gen::T2, r, eps, eps2, ctx, std::max(n, 1));
    F sum = FieldTraits<F>::zero();
    for (int j = 0; j < n; ++j)
        sum = sum + T2.at(j, j);
    return sum;
}

}  // namespace qiso
