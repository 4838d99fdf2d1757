#include "corrlab/numtheory.hpp"

#include <algorithm>

namespace corrlab {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

bool miller_rabin(u64 n, u64 a) {
    if (a % n == 0) return true;
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

u64 pollard_brent(u64 n, u64 c0) {
    // Brent's cycle variant of Pollard rho with batched gcds.
    if ((n & 1) == 0) return 2;
    u64 y = c0 % n, c = (c0 * 0x9e3779b97f4a7c15ULL + 1) % n, m = 128;
    if (c == 0) c = 1;
    u64 g = 1, r = 1, q = 1, x = 0, ys = 0;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    while (g == 1) {
        x = y;
        for (u64 i = 0; i < r; ++i) y = f(y);
        for (u64 k = 0; k < r && g == 1; k += m) {
            ys = y;
            u64 lim = std::min(m, r - k);
            for (u64 i = 0; i < lim; ++i) {
                y = f(y);
                u64 diff = x > y ? x - y : y - x;
                q = mulmod(q, diff, n);  // diff 0 -> q 0 -> gcd n -> backtrack below
            }
            g = std::gcd(q, n);
        }
        r <<= 1;
    }
    if (g == n) {
        g = 1;
        do {
            ys = f(ys);
            u64 diff = x > ys ? x - ys : ys - x;
            if (diff == 0) return n;  // cycle closed without a factor; caller retries
            g = std::gcd(diff, n);
        } while (g == 1);
    }
    return g;
}

void factor_rec(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    u64 d = n;
    for (u64 c = 1; d == n; ++c) d = pollard_brent(n, c);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (!miller_rabin(n, a)) return false;
    }
    return true;
}

u64 next_prime_above(u64 n) {
    if (n >= 18446744073709551557ULL) throw std::overflow_error("next_prime_above: overflow");
    u64 c = n + 1;
    if (c <= 2) return 2;
    if ((c & 1) == 0) ++c;
    while (!is_prime_u64(c)) c += 2;
    return c;
}

std::vector<std::pair<u64, int>> factorize(u64 n) {
    std::vector<u64> primes;
    u64 m = n;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        while (m % p == 0) {
            primes.push_back(p);
            m /= p;
        }
    }
    if (m > 1) factor_rec(m, primes);
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<u64, int>> out;
    for (u64 p : primes) {
        if (!out.empty() && out.back().first == p)
            ++out.back().second;
        else
            out.emplace_back(p, 1);
    }
    return out;
}

u64 isqrt_u128(u128 n) {
    if (n == 0) return 0;
    u64 r = static_cast<u64>(std::min<u128>(n, ~u64{0}));
    // Newton iteration from a double seed, then exact fixup.
    double approx = std::max(1.0, __builtin_sqrt(static_cast<double>(n)));
    r = static_cast<u64>(approx);
    for (int i = 0; i < 6; ++i) {
        if (r == 0) {
            r = 1;
            continue;
        }
        u64 q = static_cast<u64>(n / r);
        r = (r >> 1) + (q >> 1) + ((r & q) & 1);
    }
    while ((u128)r * r > n) --r;
    while ((u128)(r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_perfect_square_i64(std::int64_t n, std::int64_t* root) {
    if (n < 0) return false;
    u64 r = isqrt_u128(static_cast<u128>(n));
    if ((u128)r * r != static_cast<u128>(n)) return false;
    if (root) *root = static_cast<std::int64_t>(r);
    return true;
}

}  // namespace corrlab
