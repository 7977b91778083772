#pragma once

#include <string>

#include "tqf/checked.hpp"

namespace tqf {

// Exact rational on checked 128-bit words, always kept in lowest terms
// with a positive denominator.
struct Rat {
    i128 num = 0;
    i128 den = 1;

    Rat() = default;
    Rat(i128 n) : num(n), den(1) {}
    Rat(i128 n, i128 d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw NonPositiveError("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        i128 g = gcd_val(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    bool is_integer() const { return den == 1; }

    i64 as_int() const {
        if (den != 1) throw NonIntegerResultError("rational " + str() + " is not an integer");
        return narrow64(num);
    }

    std::string str() const {
        if (den == 1) return to_string_128(num);
        return to_string_128(num) + "/" + to_string_128(den);
    }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return Rat(add128(mul128(a.num, b.den), mul128(b.num, a.den)), mul128(a.den, b.den));
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return Rat(sub128(mul128(a.num, b.den), mul128(b.num, a.den)), mul128(a.den, b.den));
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return Rat(mul128(a.num, b.num), mul128(a.den, b.den));
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num == 0) throw NonPositiveError("division by zero rational");
        return Rat(mul128(a.num, b.den), mul128(a.den, b.num));
    }
    Rat operator-() const { return Rat(-num, den); }

    friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return mul128(a.num, b.den) < mul128(b.num, a.den);
    }
    friend bool operator<=(const Rat& a, const Rat& b) { return a < b || a == b; }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator>=(const Rat& a, const Rat& b) { return b <= a; }
};

// Nearest integer, ties rounded away from zero. Used by basis reduction.
inline i128 round_rat(const Rat& r) {
    i128 q = floor_div(r.num, r.den);
    i128 rem = r.num - q * r.den;
    if (2 * rem >= r.den) ++q;
    return q;
}

}  // namespace tqf
