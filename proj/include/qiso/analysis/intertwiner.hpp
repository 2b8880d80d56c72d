#pragma once

// Numeric search for A with A rho_A(g) = rho_B(g) A on a window.
//
// Unknowns are the entries A[b][a].  The diagonal generator (I or K) forces
// A[b][a] = 0 whenever the eigenvalues at a and b differ, so those unknowns
// are dropped up front; the remaining shift generators give a sparse linear
// system whose null space is read off an SVD.  Only index pairs whose
// neighbours lie inside both windows contribute equations.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "qiso/analysis/params.hpp"

namespace qiso {

struct RepMatrices {
    std::vector<WindowedOperator<Complex>> gens;  // diagonal generator first
    Window domain;
    std::optional<int> floor;
};

inline RepMatrices rep_matrices(const RepParams<Complex>& p, Window w, const FieldContext<Complex>& ctx)
{
    RepMatrices out;
    out.domain = w;
    if (p.is<ClassicalM2<Complex>>()) {
        const auto& a = p.as<ClassicalM2<Complex>>();
        for (M2Gen g : {M2Gen::K, M2Gen::E, M2Gen::F})
            out.gens.push_back(pi_rs_matrix(g, 0, a.r, a.s, ctx, w));
    } else if (p.is<ClassicalIso2<Complex>>()) {
        const auto& a = p.as<ClassicalIso2<Complex>>();
        auto g = classical_matrices(a.r, a.s, ctx, w);
        out.gens = {g.I, g.T1, g.T2};
    } else if (p.is<Nonclassical<Complex>>()) {
        const auto& a = p.as<Nonclassical<Complex>>();
        Window half{std::max(w.lo, 0), w.hi};
        if (half.empty())
            throw std::invalid_argument("intertwiner: window " + w.str() + " misses the half-line basis");
        auto g = nonclassical_matrices(a.r, a.eps, a.eps2, ctx, half.hi + 1);
        out.gens = {g.I.restricted(half), g.T1.restricted(half), g.T2.restricted(half)};
        out.domain = half;
        out.floor = 0;
    } else {
        Window one{0, 0};
        WindowedOperator<Complex> diag(one, 0), zero(one, 0);
        diag.set(0, 0, p.is<OneDimM2<Complex>>() ? p.as<OneDimM2<Complex>>().sigma : p.as<OneDimIso2<Complex>>().c);
        out.gens = {diag, zero, zero};
        out.domain = one;
    }
    return out;
}

struct IntertwinerResult {
    bool found = false;
    double residual = std::numeric_limits<double>::infinity();
    Window domain, codomain;
    Eigen::MatrixXcd matrix;  // rows: codomain index - codomain.lo; cols: domain index - domain.lo
    int unknowns = 0;
    int equations = 0;
};

namespace detail {

inline bool interior(const RepMatrices& rep, int m, int reach)
{
    int lo = m - reach;
    if (rep.floor)
        lo = std::max(lo, *rep.floor);
    return rep.domain.contains(Window{lo, m + reach});
}

}  // namespace detail

inline IntertwinerResult find_intertwiner(const RepParams<Complex>& pa, const RepParams<Complex>& pb, Window w,
                                          const FieldContext<Complex>& ctx, double tol = 1e-8)
{
    if (pa.algebra() != pb.algebra())
        throw AlgebraMismatch("intertwiner: representations of different algebras");
    RepMatrices A = rep_matrices(pa, w, ctx), B = rep_matrices(pb, w, ctx);
    IntertwinerResult out;
    out.domain = A.domain;
    out.codomain = B.domain;

    int reach = 0;
    for (const auto& g : A.gens)
        reach = std::max(reach, g.reach());

    // Rows of B's generators: row index -> (column, value).
    std::vector<std::map<int, std::map<int, Complex>>> rows_b(B.gens.size());
    for (std::size_t g = 0; g < B.gens.size(); ++g)
        for (const auto& [col, entries] : B.gens[g].columns())
            for (const auto& [row, v] : entries)
                rows_b[g][row][col] = v;

    // Unknown selection by the diagonal generator.
    const double gap_tol = 1e-7;
    double smallest_pruned_gap = std::numeric_limits<double>::infinity();
    std::map<std::pair<int, int>, int> unknown;  // (b, a) -> column
    for (int b = B.domain.lo; b <= B.domain.hi; ++b)
        for (int a = A.domain.lo; a <= A.domain.hi; ++a) {
            Complex la = A.gens[0].at(a, a), lb = B.gens[0].at(b, b);
            double scale = std::max(std::abs(la), std::abs(lb));
            double gap = scale == 0.0 ? 0.0 : std::abs(la - lb) / scale;
            if (gap > gap_tol)
                smallest_pruned_gap = std::min(smallest_pruned_gap, gap);
            else
                unknown.emplace(std::make_pair(b, a), 0);
        }

    // Equations (g, b, a) for interior a and b; the diagonal generator is
    // already accounted for by the pruning.
    using Key = std::pair<int, int>;
    std::vector<std::map<Key, Complex>> eqs;
    for (std::size_t g = 1; g < A.gens.size(); ++g)
        for (int b = B.domain.lo; b <= B.domain.hi; ++b) {
            if (!detail::interior(B, b, reach))
                continue;
            auto row_b = rows_b[g].find(b);
            for (int a = A.domain.lo; a <= A.domain.hi; ++a) {
                if (!detail::interior(A, a, reach))
                    continue;
                std::map<Key, Complex> coeff;
                for (const auto& [k, v] : A.gens[g].column(a))
                    if (unknown.count({b, k}))
                        coeff[{b, k}] += v;
                if (row_b != rows_b[g].end())
                    for (const auto& [k, v] : row_b->second)
                        if (unknown.count({k, a}))
                            coeff[{k, a}] -= v;
                std::erase_if(coeff, [](const auto& kv) { return kv.second == Complex(0); });
                if (!coeff.empty())
                    eqs.push_back(std::move(coeff));
            }
        }

    // Columns for the unknowns that occur in some equation.
    std::vector<Key> keys;
    for (auto& [key, col] : unknown) {
        bool occurs = eqs.empty() || std::any_of(eqs.begin(), eqs.end(), [&](const auto& e) { return e.count(key) > 0; });
        col = occurs ? static_cast<int>(keys.size()) : -1;
        if (occurs)
            keys.push_back(key);
    }
    out.unknowns = static_cast<int>(keys.size());
    out.equations = static_cast<int>(eqs.size());
    if (keys.empty()) {
        out.residual = smallest_pruned_gap;
        return out;
    }

    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(std::max<Eigen::Index>(eqs.size(), 1), keys.size());
    for (std::size_t e = 0; e < eqs.size(); ++e) {
        double norm = 0.0;
        for (const auto& [key, v] : eqs[e])
            norm = std::max(norm, std::abs(v));
        for (const auto& [key, v] : eqs[e])
            M(e, unknown.at(key)) = v / norm;
    }

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    const Eigen::Index n = static_cast<Eigen::Index>(keys.size());
    Eigen::Index nullity = n - sigma.size();
    for (Eigen::Index k = 0; k < sigma.size(); ++k)
        if (sigma(k) <= tol)
            ++nullity;
    double sigma_min = sigma.size() < n ? 0.0 : sigma(sigma.size() - 1);
    out.residual = std::min(sigma_min, smallest_pruned_gap);
    if (nullity == 0)
        return out;

    // Among null vectors, prefer the one concentrated away from the window edges.
    Eigen::MatrixXcd null_basis = svd.matrixV().rightCols(nullity);
    auto central = [&](const Key& key) {
        return detail::interior(B, key.first, 2 * reach) && detail::interior(A, key.second, 2 * reach);
    };
    std::vector<Eigen::Index> central_rows;
    for (Eigen::Index k = 0; k < n; ++k)
        if (central(keys[k]))
            central_rows.push_back(k);
    Eigen::VectorXcd x;
    if (central_rows.empty() || nullity == 1) {
        x = null_basis.col(0);
    } else {
        Eigen::MatrixXcd P(central_rows.size(), nullity);
        for (std::size_t k = 0; k < central_rows.size(); ++k)
            P.row(k) = null_basis.row(central_rows[k]);
        Eigen::JacobiSVD<Eigen::MatrixXcd> weight(P, Eigen::ComputeFullV);
        x = null_basis * weight.matrixV().col(0);
    }

    Eigen::Index pivot = 0;
    for (Eigen::Index k = 0; k < n; ++k) {
        bool better = std::abs(x(k)) > std::abs(x(pivot)) * (1 + 1e-9);
        if (better && (central_rows.empty() || central(keys[k]) || !central(keys[pivot])))
            pivot = k;
    }
    x /= x(pivot);
    double residual = (M * x).norm() / x.norm();
    out.residual = std::min(residual, smallest_pruned_gap);
    out.found = residual < tol;
    out.matrix = Eigen::MatrixXcd::Zero(B.domain.size(), A.domain.size());
    for (Eigen::Index k = 0; k < n; ++k)
        out.matrix(keys[k].first - B.domain.lo, keys[k].second - A.domain.lo) = x(k);
    return out;
}

}  // namespace qiso
