#ifndef KEX_RATIONAL_HPP
#define KEX_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace kex {

// Small exact rational. Enumeration probabilities have denominators equal to
// the outcome count (at most 2^20 here), so int64 components with __int128
// intermediates never overflow at this library's scale; a checked narrowing
// guards the claim.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long value) : num(value), den(1) {}  // NOLINT: implicit by design
    Rational(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::invalid_argument("rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    static long long narrow(__int128 x) {
        if (x > INT64_MAX || x < INT64_MIN)
            throw std::overflow_error("rational: value exceeds 64-bit range");
        return static_cast<long long>(x);
    }

    static Rational reduce(__int128 n, __int128 d) {
        if (d == 0) throw std::invalid_argument("rational: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 a = n < 0 ? -n : n;
        __int128 b = d;
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        if (a > 1) {
            n /= a;
            d /= a;
        }
        Rational r;
        r.num = narrow(n);
        r.den = narrow(d);
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return reduce(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den,
                      static_cast<__int128>(a.den) * b.den);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return reduce(static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den,
                      static_cast<__int128>(a.den) * b.den);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return reduce(static_cast<__int128>(a.num) * b.num,
                      static_cast<__int128>(a.den) * b.den);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num == 0) throw std::invalid_argument("rational: division by zero");
        return reduce(static_cast<__int128>(a.num) * b.den,
                      static_cast<__int128>(a.den) * b.num);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

}  // namespace kex

#endif
