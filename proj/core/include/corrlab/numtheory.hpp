#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace corrlab {

/// Deterministic Miller-Rabin, valid for all n < 2^64 with the fixed base
/// set {2,3,5,7,11,13,17,19,23,29,31,37}.
bool is_prime_u64(std::uint64_t n);

/// Smallest prime strictly greater than n. Throws on overflow.
std::uint64_t next_prime_above(std::uint64_t n);

/// Prime factorization as (prime, exponent) pairs, primes ascending.
/// Trial division for small factors, Brent-Pollard rho above that.
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);

/// Floor of sqrt(n), exact for the full unsigned 128-bit range.
std::uint64_t isqrt_u128(unsigned __int128 n);

/// True iff n = k*k for some integer k >= 0; k is written to *root.
bool is_perfect_square_i64(std::int64_t n, std::int64_t* root = nullptr);

/// Exact rational with reduced representation; denominator > 0 always.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { reduce(); }

    void reduce() {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0) den = 1;
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
};

}  // namespace corrlab
