#pragma once

#include <algorithm>
#include <atomic>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <thread>
#include <vector>

namespace corrlab {

using cplx = std::complex<double>;

/// Pairwise (cascade) summation. The reduction tree depends only on the
/// length of the input, so the result is identical no matter how the terms
/// were produced (serially or by a parallel map).
template <typename T>
T pairwise_sum(std::span<const T> xs) {
    if (xs.size() <= 16) {
        T acc{};
        for (const T& x : xs) acc += x;
        return acc;
    }
    std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.subspan(0, half)) + pairwise_sum(xs.subspan(half));
}

template <typename T>
T pairwise_sum(const std::vector<T>& xs) {
    return pairwise_sum(std::span<const T>(xs));
}

namespace detail {
std::atomic<int>& thread_budget();
}

/// Global worker budget used by the data-parallel loops. Results are
/// bit-identical for every setting: threads only run the map step, and the
/// reductions are always done over index-ordered buffers.
void set_thread_count(int k);
int thread_count();

/// Runs fn(i) for i in [0, n). fn must only write to per-index slots.
template <typename Fn>
void parallel_for(std::int64_t n, Fn&& fn) {
    int workers = thread_count();
    if (workers <= 1 || n < 2) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    workers = static_cast<int>(std::min<std::int64_t>(workers, n));
    std::int64_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (int w = 1; w < workers; ++w) {
        std::int64_t lo = w * chunk;
        std::int64_t hi = std::min<std::int64_t>(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::int64_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (std::int64_t i = 0; i < std::min<std::int64_t>(chunk, n); ++i) fn(i);
    for (auto& t : pool) t.join();
}

/// Seeded generator used for every randomized run. mt19937_64 has a fully
/// specified sequence, and uniforms are derived from the raw 64-bit output
/// (53 mantissa bits), so streams reproduce across platforms.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // rejection sampling keeps the distribution exact
        std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % n;
    }

    /// Point on the unit circle.
    cplx unit() {
        double t = uniform();
        return std::polar(1.0, 2.0 * 3.14159265358979323846 * t);
    }

    /// Complex number in the unit disk (1-bounded), rejection-free:
    /// radius sqrt(u) times a unit phase.
    cplx disk() { return std::sqrt(uniform()) * unit(); }

    /// Standard normal via Box-Muller (std::normal_distribution is not
    /// portable across standard library implementations).
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// splitmix64 step; used to derive independent per-task seeds from a master
/// seed (documented so runs reproduce).
std::uint64_t split_seed(std::uint64_t master, std::uint64_t index);

}  // namespace corrlab
