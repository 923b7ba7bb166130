#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace stochlab {

// Exact arithmetic for the combinatorial solvers. cpp_rational keeps
// gcd(num, den) = 1 and den > 0 as a canonical form.
using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline BigRational make_rational(long long num, long long den = 1) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    return BigRational(BigInt(num), BigInt(den));
}

inline double to_double(const BigRational& q) { return q.template convert_to<double>(); }

inline BigInt factorial(unsigned n) {
    BigInt f = 1;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return f;
}

inline BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

inline BigRational rational_pow(const BigRational& base, unsigned exp) {
    BigRational r = 1;
    BigRational b = base;
    unsigned e = exp;
    while (e) {
        if (e & 1u) r *= b;
        b *= b;
        e >>= 1u;
    }
    return r;
}

// Every double is a dyadic rational; the conversion is exact.
inline BigRational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite");
    return BigRational(x);
}

// Shortest continued-fraction rational within `tol` of x; falls back to the
// exact dyadic value when no small denominator fits. Keeps denominators of
// intended fractions like 9/19 small in the exact solvers.
inline BigRational rationalize(double x, double tol = 1e-12, std::uint64_t max_den = 1000000) {
    if (!std::isfinite(x)) throw std::invalid_argument("rationalize: non-finite");
    double target = x;
    long long a_prev = 1, a_curr = static_cast<long long>(std::floor(target));
    long long b_prev = 0, b_curr = 1;
    double frac = target - std::floor(target);
    for (int it = 0; it < 64; ++it) {
        double approx = static_cast<double>(a_curr) / static_cast<double>(b_curr);
        if (std::abs(approx - x) <= tol) return BigRational(BigInt(a_curr), BigInt(b_curr));
        if (frac == 0) break;
        double inv = 1.0 / frac;
        auto digit = static_cast<long long>(std::floor(inv));
        frac = inv - std::floor(inv);
        long long a_next = digit * a_curr + a_prev;
        long long b_next = digit * b_curr + b_prev;
        if (b_next <= 0 || static_cast<std::uint64_t>(b_next) > max_den) break;
        a_prev = a_curr;
        a_curr = a_next;
        b_prev = b_curr;
        b_curr = b_next;
    }
    return rational_from_double(x);
}

inline std::string to_string(const BigRational& q) { return q.str(); }

} // namespace stochlab
