#pragma once
// Exact Gaussian-rational scalar: a + b*i with a, b arbitrary-precision rationals.

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <stdexcept>
#include <string>

namespace ybx {

using Rat = boost::multiprecision::cpp_rational;
using C64 = std::complex<double>;

struct GRat {
    Rat re, im;

    GRat() = default;
    GRat(long n) : re(n) {}
    GRat(Rat r) : re(std::move(r)) {}
    GRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
    GRat(long n, long d) : re(Rat(n, d)) {}

    bool is_zero() const { return re == 0 && im == 0; }

    GRat operator-() const { return GRat(-re, -im); }
    GRat operator+(const GRat& o) const { return GRat(re + o.re, im + o.im); }
    GRat operator-(const GRat& o) const { return GRat(re - o.re, im - o.im); }
    GRat operator*(const GRat& o) const {
        return GRat(re * o.re - im * o.im, re * o.im + im * o.re);
    }
    GRat operator/(const GRat& o) const {
        Rat n2 = o.re * o.re + o.im * o.im;
        if (n2 == 0) throw std::domain_error("GRat: division by zero");
        return GRat((re * o.re + im * o.im) / n2, (im * o.re - re * o.im) / n2);
    }
    GRat& operator+=(const GRat& o) { re += o.re; im += o.im; return *this; }
    GRat& operator-=(const GRat& o) { re -= o.re; im -= o.im; return *this; }
    GRat& operator*=(const GRat& o) { *this = *this * o; return *this; }

    bool operator==(const GRat& o) const { return re == o.re && im == o.im; }
    bool operator!=(const GRat& o) const { return !(*this == o); }
    bool operator<(const GRat& o) const {  // ordering for use as map key only
        if (re != o.re) return re < o.re;
        return im < o.im;
    }

    GRat inv() const { return GRat(Rat(1)) / *this; }

    C64 to_c64() const {
        return C64(static_cast<double>(re), static_cast<double>(im));
    }

    std::string str() const {
        auto rs = [](const Rat& r) { return r.str(); };
        if (im == 0) return rs(re);
        if (re == 0) return rs(im) + "*i";
        return "(" + rs(re) + (im > 0 ? "+" : "") + rs(im) + "*i)";
    }
};

// Parse a plain decimal literal ("12", "0.25") into an exact rational.
inline Rat rat_from_decimal(const std::string& text) {
    // accumulate digit by digit: cpp_int's string constructor would treat a
    // leading zero as an octal prefix
    boost::multiprecision::cpp_int acc = 0;
    Rat den = 1;
    bool seen_dot = false;
    for (char ch : text) {
        if (ch == '.') {
            seen_dot = true;
            continue;
        }
        if (ch < '0' || ch > '9') throw std::invalid_argument("bad decimal literal: " + text);
        acc *= 10;
        acc += ch - '0';
        if (seen_dot) den *= 10;
    }
    return Rat(acc) / den;
}

}  // namespace ybx
