#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cps {

// Exact reduced fraction. Bragg positions are dense in the line, so
// frequencies are kept as integer pairs and never as float keys.
struct Rational {
    long long num{0};
    long long den{1};

    Rational() = default;
    Rational(long long n, long long d) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    Rational operator+(const Rational& o) const { return {num * o.den + o.num * den, den * o.den}; }
    Rational operator-(const Rational& o) const { return {num * o.den - o.num * den, den * o.den}; }
    Rational operator-() const { return {-num, den}; }

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator<(const Rational& o) const { return num * o.den < o.num * den; }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

}  // namespace cps
