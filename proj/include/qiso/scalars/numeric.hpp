#pragma once

/**
 * @file numeric.hpp
 * @brief Numeric evaluation of Scalars and the field traits used by the
 *        representation builders (exact Scalar vs complex<double>).
 */

#include <cmath>
#include <complex>
#include <string>

#include "qiso/errors.hpp"
#include "qiso/scalars/scalar.hpp"

namespace qiso {

using Complex = std::complex<double>;

inline constexpr double kDefaultPoleTolerance = 1e-9;

/// Evaluate at (q, s, r) with t the principal square root of q.
inline Complex eval_numeric(const Scalar& a, Complex q, Complex s, Complex r,
                            double tol = kDefaultPoleTolerance)
{
    Complex t = std::sqrt(q);
    Complex den = a.den().evaluate(t, s, r);
    double scale = 0.0;
    for (const auto& [e, c] : a.den().terms())
        scale += std::abs(c.to_complex() * LaurentPoly::ipow(t, e[0]) * LaurentPoly::ipow(s, e[1]) *
                          LaurentPoly::ipow(r, e[2]));
    if (std::abs(den) <= tol * std::max(scale, 1.0))
        throw EvaluationPole("eval_numeric: denominator vanishes at evaluation point", a.den().str());
    return a.num().evaluate(t, s, r) / den;
}

/// Arithmetic hooks the templated builders need from a coefficient field.
template <class F>
struct FieldTraits;

template <>
struct FieldTraits<Scalar> {
    static Scalar zero() { return Scalar(); }
    static Scalar one() { return Scalar(1); }
    static Scalar imag() { return Scalar::i(); }
    static Scalar from_int(long v) { return Scalar(v); }
    static Scalar rational(long n, long d) { return Scalar::rational(n, d); }
    static bool is_zero(const Scalar& x, double = 0.0) { return x.is_zero(); }
    static Scalar pow(const Scalar& x, int n) { return x.pow(n); }
    static std::string str(const Scalar& x) { return x.str(); }
    static double magnitude(const Scalar&) { return 0.0; }
};

template <>
struct FieldTraits<Complex> {
    static Complex zero() { return {0.0, 0.0}; }
    static Complex one() { return {1.0, 0.0}; }
    static Complex imag() { return {0.0, 1.0}; }
    static Complex from_int(long v) { return {static_cast<double>(v), 0.0}; }
    static Complex rational(long n, long d) { return {static_cast<double>(n) / static_cast<double>(d), 0.0}; }
    static bool is_zero(const Complex& x, double tol = kDefaultPoleTolerance) { return std::abs(x) <= tol; }
    static Complex pow(const Complex& x, int n) { return LaurentPoly::ipow(x, n); }
    static std::string str(const Complex& x)
    {
        return "(" + std::to_string(x.real()) + "," + std::to_string(x.imag()) + ")";
    }
    static double magnitude(const Complex& x) { return std::abs(x); }
};

}  // namespace qiso
