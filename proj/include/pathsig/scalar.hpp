#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace pathsig {

/// Exact arbitrary-precision rational, the canonical coefficient type.
/// Expression templates are disabled so the type has plain value semantics
/// inside generic containers and algorithms.
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

/// Relative zero threshold for the float64 backend: a coefficient c of a
/// series with largest magnitude M counts as zero iff |c| <= kFloatZeroTol * (1 + M).
inline constexpr double kFloatZeroTol = 1e-9;

template <typename S>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
    static bool negligible(const Rational& c, const Rational&) { return c == 0; }

    static double to_double(const Rational& c) { return c.template convert_to<double>(); }

    static Rational abs(const Rational& c) { return c < 0 ? Rational(-c) : c; }

    static std::string format(const Rational& c) {
        const auto num = numerator(c);
        const auto den = denominator(c);
        if (den == 1) return num.str();
        return num.str() + "/" + den.str();
    }

    // Accepts "p", "-p", "p/q" with integer p and positive-integer q.
    static Rational parse(const std::string& text) {
        std::size_t i = 0;
        const auto scan_int = [&](bool allow_sign) {
            std::size_t start = i;
            if (allow_sign && i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
            std::size_t digits = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                ++i;
                ++digits;
            }
            if (digits == 0) throw std::runtime_error("invalid rational literal: '" + text + "'");
            return text.substr(start, i - start);
        };
        const std::string num = scan_int(true);
        std::string den = "1";
        if (i < text.size() && text[i] == '/') {
            ++i;
            den = scan_int(false);
        }
        if (i != text.size()) throw std::runtime_error("invalid rational literal: '" + text + "'");
        const boost::multiprecision::cpp_int d{den};
        if (d == 0) throw std::runtime_error("zero denominator in rational literal: '" + text + "'");
        return Rational(boost::multiprecision::cpp_int{num}, d);
    }
};

template <>
struct ScalarOps<double> {
    static bool negligible(double c, double scale) { return std::fabs(c) <= kFloatZeroTol * scale; }

    static double to_double(double c) { return c; }

    static double abs(double c) { return std::fabs(c); }

    static std::string format(double c) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", c);
        return buf;
    }

    // Accepts decimal literals and "p/q" rationals.
    static double parse(const std::string& text) {
        const auto slash = text.find('/');
        if (slash != std::string::npos) {
            const Rational r = ScalarOps<Rational>::parse(text);
            return r.convert_to<double>();
        }
        std::size_t used = 0;
        double value = 0;
        try {
            value = std::stod(text, &used);
        } catch (const std::exception&) {
            throw std::runtime_error("invalid numeric literal: '" + text + "'");
        }
        if (used != text.size()) throw std::runtime_error("invalid numeric literal: '" + text + "'");
        return value;
    }
};

}  // namespace pathsig
