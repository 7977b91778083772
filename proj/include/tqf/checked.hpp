#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "tqf/errors.hpp"

// Checked exact integer arithmetic on 64- and 128-bit words.
// Every operation that can leave the representable range throws OverflowError.

namespace tqf {

using i64 = std::int64_t;
using i128 = __int128;

inline i128 add128(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError();
    return r;
}

inline i128 sub128(i128 a, i128 b) {
    i128 r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError();
    return r;
}

inline i128 mul128(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError();
    return r;
}

inline i64 add64(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError();
    return r;
}

inline i64 sub64(i64 a, i64 b) {
    i64 r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError();
    return r;
}

inline i64 mul64(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError();
    return r;
}

inline i64 narrow64(i128 a) {
    if (a > std::numeric_limits<i64>::max() || a < std::numeric_limits<i64>::min())
        throw OverflowError("value does not fit in 64 bits");
    return static_cast<i64>(a);
}

template <typename T>
T abs_val(T a) {
    return a < 0 ? -a : a;
}

template <typename T>
T gcd_val(T a, T b) {
    a = abs_val(a);
    b = abs_val(b);
    while (b != 0) {
        T t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline i128 lcm128(i128 a, i128 b) {
    if (a == 0 || b == 0) return 0;
    return mul128(a / gcd_val(a, b), b);
}

// Floor division/modulus (sign of divisor irrelevant to the contract: b > 0 assumed).
inline i128 floor_div(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline i128 floor_mod(i128 a, i128 b) {
    return a - floor_div(a, b) * b;
}

inline i128 ceil_div(i128 a, i128 b) {
    return -floor_div(-a, b);
}

// Largest s >= 0 with s*s <= x. Requires x >= 0.
inline i128 isqrt(i128 x) {
    if (x < 0) throw NonPositiveError("isqrt of negative value");
    if (x < 2) return x;
    i128 s = static_cast<i128>(sqrtl(static_cast<long double>(x)));
    if (s < 0) s = 0;
    while (s > 0 && s * s > x) --s;
    while ((s + 1) * (s + 1) <= x) ++s;
    return s;
}

inline bool is_square(i128 x) {
    if (x < 0) return false;
    i128 s = isqrt(x);
    return s * s == x;
}

// p^e with overflow checking.
inline i64 checked_pow(i64 base, i64 exp) {
    i64 r = 1;
    for (i64 i = 0; i < exp; ++i) r = mul64(r, base);
    return r;
}

inline std::string to_string_128(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    std::string s;
    while (u > 0) {
        s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    return neg ? "-" + s : s;
}

}  // namespace tqf
