#pragma once

/**
 * @file gaussian_rational.hpp
 * @brief Exact numbers a + b i with a, b arbitrary-precision rationals.
 */

#include <complex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

#include "qiso/errors.hpp"

namespace qiso {

class GaussianRational {
public:
    GaussianRational() : re_(0), im_(0) {}
    GaussianRational(long v) : re_(v), im_(0) {}  // NOLINT(implicit)
    GaussianRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im))
    {
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussianRational i() { return {mpq_class(0), mpq_class(1)}; }
    static GaussianRational fraction(long num, long den) { return {mpq_class(num, den), mpq_class(0)}; }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    mpq_class norm() const { return re_ * re_ + im_ * im_; }

    GaussianRational inverse() const
    {
        if (is_zero())
            throw DivisionByZero("GaussianRational: inverse of zero");
        mpq_class n = norm();
        return {re_ / n, -im_ / n};
    }

    GaussianRational operator-() const { return {-re_, -im_}; }

    GaussianRational& operator+=(const GaussianRational& o)
    {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o)
    {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o)
    {
        if (sgn(im_) == 0 && sgn(o.im_) == 0) {
            re_ *= o.re_;
            return *this;
        }
        mpq_class re = re_ * o.re_ - im_ * o.im_;
        mpq_class im = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(re);
        im_ = std::move(im);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o)
    {
        if (o.is_zero())
            throw DivisionByZero("GaussianRational: division by zero");
        if (sgn(o.im_) == 0) {
            re_ /= o.re_;
            im_ /= o.re_;
            return *this;
        }
        return *this *= o.inverse();
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    /// Total order (real part first); used only for deterministic output.
    friend bool operator<(const GaussianRational& a, const GaussianRational& b)
    {
        int c = cmp(a.re_, b.re_);
        if (c != 0)
            return c < 0;
        return cmp(a.im_, b.im_) < 0;
    }

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    /// Text form accepted by the scalar parser: "3", "-1/2", "i", "-2*i", "(1/2+3*i)".
    std::string str() const
    {
        std::ostringstream os;
        if (sgn(im_) == 0) {
            os << re_.get_str();
            return os.str();
        }
        auto imag_part = [](const mpq_class& v) {
            if (v == 1)
                return std::string("i");
            if (v == -1)
                return std::string("-i");
            return v.get_str() + "*i";
        };
        if (sgn(re_) == 0)
            return imag_part(im_);
        os << "(" << re_.get_str();
        std::string ip = imag_part(im_);
        if (ip[0] != '-')
            os << "+";
        os << ip << ")";
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& g) { return os << g.str(); }

private:
    mpq_class re_;
    mpq_class im_;
};

}  // namespace qiso
