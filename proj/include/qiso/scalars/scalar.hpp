#pragma once

/**
 * @file scalar.hpp
 * @brief Elements of the field of fractions Q(i)(t, s, r).
 *
 * A Scalar is num/den with gcd(num, den) = 1 in the Laurent ring and den in
 * unit normal form (a genuine polynomial, not divisible by any variable, whose
 * lex-leading coefficient is 1).  Fractions that are equal as field elements
 * therefore have identical storage and operator== is structural.
 */

#include <complex>
#include <ostream>
#include <string>
#include <utility>

#include "qiso/errors.hpp"
#include "qiso/scalars/laurent_poly.hpp"

namespace qiso {

class Scalar {
public:
    Scalar() : num_(), den_(1) {}
    Scalar(long v) : num_(v), den_(1) {}                       // NOLINT(implicit)
    Scalar(const GaussianRational& c) : num_(c), den_(1) {}    // NOLINT(implicit)
    Scalar(LaurentPoly num) : num_(std::move(num)), den_(1) {}  // NOLINT(implicit)

    Scalar(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den))
    {
        if (den_.is_zero())
            throw DivisionByZero("Scalar: zero denominator");
        reduce();
    }

    static Scalar i() { return Scalar(GaussianRational::i()); }
    static Scalar t(int power = 1) { return Scalar(LaurentPoly::variable(Var::T, power)); }
    /// q = t^2; q(k) is q^k.
    static Scalar q(int power = 1) { return t(2 * power); }
    static Scalar s(int power = 1) { return Scalar(LaurentPoly::variable(Var::S, power)); }
    static Scalar r(int power = 1) { return Scalar(LaurentPoly::variable(Var::R, power)); }
    static Scalar rational(long num, long den) { return Scalar(GaussianRational::fraction(num, den)); }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_.is_one() && num_.is_one(); }
    /// True when the value is a Laurent polynomial (denominator 1).
    bool is_polynomial() const { return den_.is_one(); }
    /// True when the value is c * t^a s^b r^c for a Gaussian rational c.
    bool is_monomial() const { return den_.is_one() && num_.is_monomial(); }
    bool is_constant() const { return den_.is_one() && num_.is_constant(); }
    unsigned vars() const { return num_.vars() | den_.vars(); }

    Scalar operator-() const
    {
        Scalar x = *this;
        x.num_ = -x.num_;
        return x;
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) { return add(a, b, false); }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return add(a, b, true); }

    friend Scalar operator*(const Scalar& a, const Scalar& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        if (a.den_.is_one() && b.den_.is_one())
            return Scalar(a.num_ * b.num_, LaurentPoly(1), Reduced{});
        // Cross-cancel: gcd(a.num, b.den) and gcd(b.num, a.den).
        LaurentPoly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
        cancel(an, bd);
        cancel(bn, ad);
        Scalar x(an * bn, ad * bd, Reduced{});
        x.normalize_unit();
        return x;
    }

    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    Scalar inverse() const
    {
        if (is_zero())
            throw DivisionByZero("Scalar: division by zero");
        Scalar x(den_, num_, Reduced{});
        x.normalize_unit();
        return x;
    }

    Scalar pow(int n) const
    {
        if (n < 0)
            return inverse().pow(-n);
        Scalar x(num_.pow(static_cast<unsigned>(n)), den_.pow(static_cast<unsigned>(n)), Reduced{});
        return x;
    }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    /// Deterministic order for output and map keys; not a field order.
    friend bool operator<(const Scalar& a, const Scalar& b)
    {
        if (a.den_ != b.den_)
            return a.den_ < b.den_;
        return a.num_ < b.num_;
    }

    /// Re-run gcd reduction and unit normalization (idempotent).
    Scalar normalized() const { return Scalar(num_, den_); }

    /// Substitute complex values; t is taken as given (callers pass sqrt(q)).
    std::complex<double> evaluate_at(std::complex<double> t, std::complex<double> s, std::complex<double> r) const
    {
        return num_.evaluate(t, s, r) / den_.evaluate(t, s, r);
    }

    /// Exact substitution t -> t_value, s -> s_value, r -> r_value.
    Scalar substitute(const Scalar& t_value, const Scalar& s_value, const Scalar& r_value) const
    {
        Scalar d = den_.evaluate(t_value, s_value, r_value);
        if (d.is_zero())
            throw DivisionByZero("Scalar: denominator vanishes under substitution");
        return num_.evaluate(t_value, s_value, r_value) / d;
    }

    std::string str() const
    {
        if (den_.is_one())
            return num_.str();
        std::string n = num_.str();
        if (num_.size() > 1)
            n = "(" + n + ")";
        return n + "/(" + den_.str() + ")";
    }

    /// True if the string form needs parentheses when used as a factor.
    bool needs_parens() const { return !den_.is_one() || num_.size() > 1; }

    friend std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.str(); }

private:
    struct Reduced {};
    Scalar(LaurentPoly num, LaurentPoly den, Reduced) : num_(std::move(num)), den_(std::move(den))
    {
        if (num_.is_zero())
            den_ = LaurentPoly(1);
    }

    static void cancel(LaurentPoly& n, LaurentPoly& d)
    {
        if (d.is_one() || n.is_zero())
            return;
        LaurentPoly g = gcd(n, d);
        if (g.is_constant())
            return;
        n = *exact_divide(n, g);
        d = *exact_divide(d, g);
    }

    void normalize_unit()
    {
        if (num_.is_zero()) {
            den_ = LaurentPoly(1);
            return;
        }
        if (den_.is_monomial()) {
            const auto& [e, c] = den_.leading();
            num_ = num_.times_monomial(Exponent{-e[0], -e[1], -e[2]}, c.inverse());
            den_ = LaurentPoly(1);
            return;
        }
        Exponent m = den_.min_exponent();
        LaurentPoly stripped = den_.strip_monomial();
        GaussianRational lc = stripped.leading().second;
        if (m == Exponent{0, 0, 0} && lc.is_one())
            return;
        GaussianRational inv = lc.inverse();
        den_ = stripped.scaled(inv);
        num_ = num_.times_monomial(Exponent{-m[0], -m[1], -m[2]}, inv);
    }

    void reduce()
    {
        if (num_.is_zero()) {
            den_ = LaurentPoly(1);
            return;
        }
        cancel(num_, den_);
        normalize_unit();
    }

    static Scalar add(const Scalar& a, const Scalar& b, bool subtract)
    {
        if (b.is_zero())
            return a;
        if (a.is_zero())
            return subtract ? -b : b;
        if (a.den_.is_one() && b.den_.is_one())
            return Scalar(subtract ? a.num_ - b.num_ : a.num_ + b.num_, LaurentPoly(1), Reduced{});
        // With one side polynomial the result a.n*b.d +- b.n over b.d is already reduced.
        if (a.den_.is_one()) {
            LaurentPoly n = a.num_ * b.den_;
            return Scalar(subtract ? n - b.num_ : n + b.num_, b.den_, Reduced{});
        }
        if (b.den_.is_one()) {
            LaurentPoly n = b.num_ * a.den_;
            return Scalar(subtract ? a.num_ - n : a.num_ + n, a.den_, Reduced{});
        }
        if (a.den_ == b.den_) {
            return Scalar(subtract ? a.num_ - b.num_ : a.num_ + b.num_, a.den_);
        }
        LaurentPoly g = gcd(a.den_, b.den_);
        if (g.is_constant()) {
            LaurentPoly n = subtract ? a.num_ * b.den_ - b.num_ * a.den_ : a.num_ * b.den_ + b.num_ * a.den_;
            Scalar x(std::move(n), a.den_ * b.den_, Reduced{});
            x.normalize_unit();
            return x;
        }
        LaurentPoly ad = *exact_divide(a.den_, g);
        LaurentPoly bd = *exact_divide(b.den_, g);
        LaurentPoly n = subtract ? a.num_ * bd - b.num_ * ad : a.num_ * bd + b.num_ * ad;
        LaurentPoly d = ad * b.den_;
        if (!n.is_zero()) {
            LaurentPoly h = gcd(n, d);
            if (!h.is_constant()) {
                n = *exact_divide(n, h);
                d = *exact_divide(d, h);
            }
        }
        Scalar x(std::move(n), std::move(d), Reduced{});
        x.normalize_unit();
        return x;
    }

    LaurentPoly num_;
    LaurentPoly den_;
};

}  // namespace qiso
