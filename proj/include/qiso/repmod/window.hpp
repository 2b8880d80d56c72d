#pragma once

// Finite truncations of operators on a weight basis |m>.
//
// A WindowedOperator stores, for each column m of its domain window, the
// image of |m> as a sparse column.  Columns in the exact window hold the true
// action of the infinite operator; composing with an operator whose reach is
// d keeps column m exact only if every basis index within distance d of m is
// an exact column of the left factor.  Relation checks compare exact columns
// only, so truncation never produces spurious failures.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "qiso/scalars/numeric.hpp"

namespace qiso {

struct Window {
    int lo = 0;
    int hi = -1;

    bool empty() const { return lo > hi; }
    int size() const { return empty() ? 0 : hi - lo + 1; }
    bool contains(int m) const { return lo <= m && m <= hi; }
    bool contains(const Window& w) const { return w.empty() || (lo <= w.lo && w.hi <= hi); }
    Window intersect(const Window& o) const { return {std::max(lo, o.lo), std::min(hi, o.hi)}; }
    Window shrunk(int by) const { return {lo + by, hi - by}; }

    friend bool operator==(const Window&, const Window&) = default;
    std::string str() const { return std::to_string(lo) + ":" + std::to_string(hi); }
};

/// Parse "lo:hi".
inline Window parse_window(const std::string& text)
{
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("window must be lo:hi, got '" + text + "'");
    Window w{std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
    if (w.empty())
        throw std::invalid_argument("window needs lo <= hi, got '" + text + "'");
    return w;
}

template <class F>
class WindowedOperator {
public:
    using Traits = FieldTraits<F>;
    using Column = std::map<int, F>;

    WindowedOperator() = default;

    /// floor: lowest basis index (e.g. 0 for a half-line basis), if any.
    WindowedOperator(Window domain, int reach, std::optional<int> floor = std::nullopt)
        : domain_(domain), exact_(domain), reach_(reach), floor_(floor)
    {
        for (int m = domain.lo; m <= domain.hi; ++m)
            cols_[m];
    }

    static WindowedOperator identity(Window domain, std::optional<int> floor = std::nullopt)
    {
        WindowedOperator op(domain, 0, floor);
        for (int m = domain.lo; m <= domain.hi; ++m)
            op.cols_[m][m] = Traits::one();
        return op;
    }

    const Window& domain() const { return domain_; }
    const Window& exact() const { return exact_; }
    int reach() const { return reach_; }
    const std::optional<int>& floor() const { return floor_; }

    Window codomain() const
    {
        Window c{domain_.lo - reach_, domain_.hi + reach_};
        if (floor_)
            c.lo = std::max(c.lo, *floor_);
        return c;
    }

    void set(int row, int col, const F& value)
    {
        auto it = cols_.find(col);
        if (it == cols_.end())
            throw std::out_of_range("WindowedOperator::set: column " + std::to_string(col) + " outside domain");
        if (Traits::is_zero(value, 0.0))
            it->second.erase(row);
        else
            it->second[row] = value;
    }

    F at(int row, int col) const
    {
        auto it = cols_.find(col);
        if (it == cols_.end())
            return Traits::zero();
        auto jt = it->second.find(row);
        return jt == it->second.end() ? Traits::zero() : jt->second;
    }

    const std::map<int, Column>& columns() const { return cols_; }

    const Column& column(int col) const
    {
        auto it = cols_.find(col);
        if (it == cols_.end())
            throw std::out_of_range("WindowedOperator::column: " + std::to_string(col) + " outside domain");
        return it->second;
    }

    /// (row, col, value) over the exact columns, sorted by column then row.
    std::vector<std::tuple<int, int, F>> entries() const
    {
        std::vector<std::tuple<int, int, F>> out;
        for (const auto& [c, col] : cols_)
            if (exact_.contains(c))
                for (const auto& [r, v] : col)
                    out.emplace_back(r, c, v);
        return out;
    }

    /// Narrows the exact window, e.g. when edge columns miss rows outside the basis.
    WindowedOperator& limit_exact(Window w)
    {
        exact_ = exact_.intersect(w);
        return *this;
    }

    WindowedOperator restricted(Window w) const
    {
        WindowedOperator out;
        out.domain_ = domain_.intersect(w);
        out.exact_ = exact_.intersect(w);
        out.reach_ = reach_;
        out.floor_ = floor_;
        for (const auto& [c, col] : cols_)
            if (out.domain_.contains(c))
                out.cols_[c] = col;
        return out;
    }

    /// Image of a finite vector; its support must lie in the exact window.
    Column apply(const Column& v) const
    {
        Column out;
        for (const auto& [m, x] : v) {
            if (!exact_.contains(m))
                throw std::out_of_range("WindowedOperator::apply: index " + std::to_string(m) + " not exact");
            for (const auto& [n, a] : cols_.at(m))
                accumulate(out, n, a * x);
        }
        return out;
    }

    friend WindowedOperator operator*(const F& c, const WindowedOperator& a)
    {
        WindowedOperator out = a;
        for (auto& [m, col] : out.cols_) {
            for (auto& [n, v] : col)
                v = c * v;
            std::erase_if(col, [](const auto& kv) { return Traits::is_zero(kv.second, 0.0); });
        }
        return out;
    }

    friend WindowedOperator operator+(const WindowedOperator& a, const WindowedOperator& b) { return combine(a, b, false); }
    friend WindowedOperator operator-(const WindowedOperator& a, const WindowedOperator& b) { return combine(a, b, true); }

    /// Composition: (b * a)|m> = b(a|m>).
    friend WindowedOperator operator*(const WindowedOperator& b, const WindowedOperator& a)
    {
        WindowedOperator out;
        out.reach_ = a.reach_ + b.reach_;
        out.floor_ = a.floor_ ? a.floor_ : b.floor_;
        Window ex{a.exact_.lo, a.exact_.hi};
        auto ok = [&](int m) {
            int lo = m - a.reach_, hi = m + a.reach_;
            if (a.floor_)
                lo = std::max(lo, *a.floor_);
            return b.exact_.contains(Window{lo, hi});
        };
        while (!ex.empty() && !ok(ex.lo))
            ++ex.lo;
        while (!ex.empty() && !ok(ex.hi))
            --ex.hi;
        for (int m = ex.lo; m <= ex.hi; ++m)
            if (!ok(m))
                throw std::logic_error("WindowedOperator: non-contiguous exact window");
        out.domain_ = ex;
        out.exact_ = ex;
        for (int m = ex.lo; m <= ex.hi; ++m) {
            Column& col = out.cols_[m];
            for (const auto& [k, x] : a.cols_.at(m))
                for (const auto& [n, y] : b.cols_.at(k))
                    accumulate(col, n, y * x);
        }
        return out;
    }

    /// Largest entry magnitude over exact columns (0 for exact fields when all vanish).
    double max_abs() const
    {
        double best = 0.0;
        for (const auto& [r, c, v] : entries())
            best = std::max(best, Traits::magnitude(v));
        return best;
    }

    /// True when every exact column vanishes (within tol for numeric fields).
    bool is_zero(double tol = 0.0) const
    {
        for (const auto& [r, c, v] : entries())
            if (!Traits::is_zero(v, tol))
                return false;
        return true;
    }

    /// If the exact block is lambda * identity, return lambda.
    std::optional<F> scalar_value(double tol = 0.0) const
    {
        std::optional<F> lambda;
        for (int m = exact_.lo; m <= exact_.hi; ++m) {
            const Column& col = cols_.at(m);
            F diag = at(m, m);
            for (const auto& [n, v] : col)
                if (n != m && !Traits::is_zero(v, tol))
                    return std::nullopt;
            if (!lambda)
                lambda = diag;
            else if (!Traits::is_zero(diag - *lambda, tol))
                return std::nullopt;
        }
        return lambda;
    }

private:
    static void accumulate(Column& col, int row, const F& v)
    {
        auto [it, fresh] = col.try_emplace(row, v);
        if (!fresh) {
            it->second = it->second + v;
            if (Traits::is_zero(it->second, 0.0))
                col.erase(it);
        } else if (Traits::is_zero(v, 0.0)) {
            col.erase(it);
        }
    }

    static WindowedOperator combine(const WindowedOperator& a, const WindowedOperator& b, bool subtract)
    {
        WindowedOperator out;
        out.domain_ = a.domain_.intersect(b.domain_);
        out.exact_ = a.exact_.intersect(b.exact_);
        out.reach_ = std::max(a.reach_, b.reach_);
        out.floor_ = a.floor_ ? a.floor_ : b.floor_;
        for (int m = out.domain_.lo; m <= out.domain_.hi; ++m) {
            Column col = a.cols_.at(m);
            for (const auto& [n, v] : b.cols_.at(m))
                accumulate(col, n, subtract ? Traits::zero() - v : v);
            out.cols_[m] = std::move(col);
        }
        return out;
    }

    Window domain_;
    Window exact_;
    int reach_ = 0;
    std::optional<int> floor_;
    std::map<int, Column> cols_;
};

}  // namespace qiso
