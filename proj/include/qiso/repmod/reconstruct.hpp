#pragma once

// Rebuilding an iso2 module from one I-eigenvector.
//
// The cyclic module on |0> with I|0> = lambda|0> and C_q|0> = C|0> has basis
// T1^a |0> and T1^a T2 |0>.  Vectors |j> are generated by the ladder operators
//
//     up(j)   = i T1 - s^-1 q^(-j+1/2) T2     |j+1> = up(j)|j>,   j >= 0
//     down(j) = i T1 + s q^(j+1/2) T2         |j-1> = down(j)|j>, j <= 0
//
// and every claimed identity is checked as an equality in that module.  The
// T2 and T1 actions on |j> are read off from the ladder identities, so the
// coefficient of |j-1> never depends on a printed closed form.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qiso/freealg/iso2.hpp"
#include "qiso/repmod/families.hpp"

namespace qiso {

class SeedModule {
public:
    /// Key (a, e) stands for T1^a T2^e |0>, e in {0, 1}.
    using Vector = std::map<std::pair<int, int>, Scalar>;

    SeedModule(Scalar casimir, Scalar lambda) : casimir_(std::move(casimir)), lambda_(std::move(lambda)) {}

    const Scalar& casimir() const { return casimir_; }
    const Scalar& lambda() const { return lambda_; }

    static Vector seed() { return {{{0, 0}, Scalar(1)}}; }

    Vector apply(const Iso2Element& x, const Vector& v) const
    {
        Vector out;
        for (const auto& [key, c] : v) {
            Iso2Element basis_word;
            basis_word.add_term({key.first, key.second, 0}, Scalar(1));
            Iso2Element product = x * basis_word;
            for (const auto& [mono, coeff] : product.terms())
                add_into(out, reduced(mono.j, mono.k), coeff * lambda_.pow(mono.l) * c);
        }
        return out;
    }

    static Vector combine(const Scalar& a, const Vector& x, const Scalar& b, const Vector& y)
    {
        Vector out;
        add_into(out, x, a);
        add_into(out, y, b);
        return out;
    }

    static bool equal(const Vector& x, const Vector& y) { return combine(Scalar(1), x, Scalar(-1), y).empty(); }

private:
    static void add_into(Vector& out, const Vector& v, const Scalar& factor)
    {
        if (factor.is_zero())
            return;
        for (const auto& [key, c] : v) {
            auto [it, fresh] = out.try_emplace(key, factor * c);
            if (!fresh)
                it->second += factor * c;
            if (it->second.is_zero())
                out.erase(it);
        }
    }

    // T1^a T2^b |0> with b >= 2 rewritten through C_q = C on |0>.
    const Vector& reduced(int a, int b) const
    {
        auto key = std::make_pair(a, b);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        Vector v;
        if (b <= 1) {
            v[key] = Scalar(1);
        } else {
            const Scalar kappa = Scalar::t(-3) * (Scalar(1) - Scalar::q(2));
            const Scalar q_inv = Scalar::q(-1);
            add_into(v, reduced(a, b - 2), q_inv * casimir_);
            add_into(v, reduced(a + 2, b - 2), -q_inv * Scalar::q(-2 * b + 3));
            add_into(v, reduced(a + 1, b - 1), -q_inv * kappa * lambda_ * Scalar::q(-b + 2));
        }
        return memo_.emplace(key, std::move(v)).first->second;
    }

    Scalar casimir_;
    Scalar lambda_;
    mutable std::map<std::pair<int, int>, Vector> memo_;
};

struct ReconstructionCheck {
    std::string name;
    int index;
    bool holds;
};

/// Coefficients of T|j> = above |j+1> + below |j-1>.
struct LadderAction {
    Scalar above;
    Scalar below;
};

struct Reconstruction {
    Scalar r, s, casimir;
    int steps = 0;
    std::optional<int> degenerate_at;  // index where the ladder denominators vanish
    std::vector<ReconstructionCheck> checks;
    std::map<int, LadderAction> t2_action, t1_action;
    std::vector<int> printed_t1_mismatch;  // j >= 1 where the printed |j-1> coefficient of i T1 disagrees
    std::map<int, Scalar> rescaling;       // |j> = rho_j e_j
    std::optional<Iso2Matrices<Scalar>> rescaled;
    bool matches_classical = false;

    bool all_hold() const
    {
        for (const auto& c : checks)
            if (!c.holds)
                return false;
        return !degenerate_at && matches_classical;
    }
};

namespace detail {

inline Iso2Element ladder(const Scalar& t1_coeff, const Scalar& t2_coeff)
{
    Iso2Element x;
    x.add_term({1, 0, 0}, t1_coeff);
    x.add_term({0, 1, 0}, t2_coeff);
    return x;
}

}  // namespace detail

/// [m]_{q,s} = (s q^m - s^-1 q^-m) / (q - q^-1)
inline Scalar q_bracket(int m, const Scalar& s)
{
    return (s * Scalar::q(m) - Scalar::q(-m) / s) / (Scalar::q() - Scalar::q(-1));
}

/// Builds |j> for |j| <= steps from a seed with I|0> = i[0]_{q,s}|0> and
/// C_q = r^2, checks the ladder identities, and compares the rescaled
/// T1, T2 actions with the classical family R_rs.
inline Reconstruction reconstruct_from_seed(const Scalar& r, const Scalar& s, int steps)
{
    if (steps < 1)
        throw std::invalid_argument("reconstruct: steps must be positive");
    const Scalar i = Scalar::i();
    Reconstruction out;
    out.r = r;
    out.s = s;
    out.casimir = r * r;
    out.steps = steps;
    const Scalar& C = out.casimir;
    const Scalar Cq = C * Scalar::q();
    SeedModule module(C, i * q_bracket(0, s));

    auto x_of = [&](int j) { return s.inverse() * Scalar::t(-2 * j + 1); };
    auto y_of = [&](int j) { return s * Scalar::t(2 * j + 1); };
    auto up = [&](int j) { return detail::ladder(i, -x_of(j)); };
    auto down = [&](int j) { return detail::ladder(i, y_of(j)); };

    for (int j = -steps; j <= steps; ++j)
        if ((x_of(j) + y_of(j)).is_zero()) {
            out.degenerate_at = j;
            return out;
        }

    std::map<int, SeedModule::Vector> vec;
    vec[0] = SeedModule::seed();
    for (int j = 0; j < steps; ++j)
        vec[j + 1] = module.apply(up(j), vec[j]);
    for (int j = 0; j > -steps; --j)
        vec[j - 1] = module.apply(down(j), vec[j]);

    auto check = [&](std::string name, int j, bool ok) { out.checks.push_back({std::move(name), j, ok}); };
    auto same = [](const SeedModule::Vector& a, const SeedModule::Vector& b) { return SeedModule::equal(a, b); };
    auto scaled = [](const Scalar& c, const SeedModule::Vector& v) {
        return SeedModule::combine(c, v, Scalar(0), {});
    };
    auto pair_sum = [](const Scalar& a, const SeedModule::Vector& u, const Scalar& b, const SeedModule::Vector& v) {
        return SeedModule::combine(a, u, b, v);
    };
    const Iso2Element I = iso2_gen(Iso2Gen::I), T1 = iso2_gen(Iso2Gen::T1), T2 = iso2_gen(Iso2Gen::T2);

    check("casimir", 0, same(module.apply(casimir_pbw(), vec[0]), scaled(C, vec[0])));
    for (int j = -steps; j <= steps; ++j)
        check("eigenvalue", j, same(module.apply(I, vec[j]), scaled(i * q_bracket(j, s), vec[j])));
    for (int j = 0; j < steps; ++j)
        check("raise-lower", j, same(module.apply(down(j + 1), vec[j + 1]), scaled(-Cq, vec[j])));
    for (int j = 0; j > -steps; --j)
        check("lower-raise", j, same(module.apply(up(j - 1), vec[j - 1]), scaled(-Cq, vec[j])));

    // Actions from the ladder identities:
    //   j >= 1: up|j> = |j+1>, down|j> = -Cq|j-1>;  j = 0: down|0> = |-1>;
    //   j <= -1: up|j> = -Cq|j+1>, down|j> = |j-1>.
    // With down - up = (x + y) T2 and i T1 = up + x T2.
    for (int j = -steps + 1; j < steps; ++j) {
        Scalar x = x_of(j), y = y_of(j), d = x + y;
        Scalar up_coeff = j >= 0 ? Scalar(1) : -Cq;
        Scalar down_coeff = j <= 0 ? Scalar(1) : -Cq;
        LadderAction t2{-up_coeff / d, down_coeff / d};
        LadderAction it1{up_coeff + x * t2.above, x * t2.below};
        LadderAction t1{-i * it1.above, -i * it1.below};
        out.t2_action[j] = t2;
        out.t1_action[j] = t1;
        check("T2-action", j, same(module.apply(T2, vec[j]), pair_sum(t2.above, vec[j + 1], t2.below, vec[j - 1])));
        check("T1-action", j, same(module.apply(T1, vec[j]), pair_sum(t1.above, vec[j + 1], t1.below, vec[j - 1])));
        if (j >= 1 && !(it1.below == Cq * y / d))
            out.printed_t1_mismatch.push_back(j);
    }

    // rho_{j+1} / rho_j fixed by the |j+1> coefficient of T2 against r / D_j.
    auto D = [&](int j) { return s * Scalar::q(j) + Scalar::q(-j) / s; };
    out.rescaling[0] = Scalar(1);
    for (int j = 0; j < steps - 1; ++j)
        out.rescaling[j + 1] = out.rescaling[j] * r / (D(j) * out.t2_action[j].above);
    for (int j = -1; j > -steps; --j)
        out.rescaling[j] = out.rescaling[j + 1] * out.t2_action[j].above * D(j) / r;

    Window w{-steps + 2, steps - 2};
    Window full{-steps + 1, steps - 1};
    Iso2Matrices<Scalar> m{WindowedOperator<Scalar>(full, 0), WindowedOperator<Scalar>(full, 1),
                           WindowedOperator<Scalar>(full, 1)};
    for (int j = full.lo; j <= full.hi; ++j) {
        const Scalar& rho = out.rescaling[j];
        m.I.set(j, j, i * q_bracket(j, s));
        if (out.rescaling.count(j + 1)) {
            m.T2.set(j + 1, j, out.t2_action[j].above * out.rescaling[j + 1] / rho);
            m.T1.set(j + 1, j, out.t1_action[j].above * out.rescaling[j + 1] / rho);
        }
        if (out.rescaling.count(j - 1)) {
            m.T2.set(j - 1, j, out.t2_action[j].below * out.rescaling[j - 1] / rho);
            m.T1.set(j - 1, j, out.t1_action[j].below * out.rescaling[j - 1] / rho);
        }
    }
    auto classical = classical_matrices(r, s, symbolic_context(), full);
    bool match = true;
    for (int j = w.lo; j <= w.hi; ++j)
        for (int k = j - 1; k <= j + 1; ++k)
            for (Iso2Gen g : {Iso2Gen::I, Iso2Gen::T1, Iso2Gen::T2})
                match = match && m[g].at(k, j) == classical[g].at(k, j);
    out.matches_classical = match;
    m.T1.limit_exact(w);
    m.T2.limit_exact(w);
    out.rescaled = std::move(m);
    return out;
}

}  // namespace qiso
