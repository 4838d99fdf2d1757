#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "corrlab/numtheory.hpp"

namespace corrlab {

/// Membership bitset over the integers 1..n_max.
struct SubsetMask {
    std::int64_t n_max = 0;
    std::vector<std::uint64_t> bits;

    SubsetMask() = default;
    explicit SubsetMask(std::int64_t n);
    static SubsetMask full(std::int64_t n);
    static SubsetMask empty_set(std::int64_t n);
    static SubsetMask multiples(std::int64_t k, std::int64_t n);
    /// Each of 1..n kept independently with probability density.
    static SubsetMask random(double density, std::uint64_t seed, std::int64_t n);
    static SubsetMask from_members(const std::vector<std::int64_t>& members, std::int64_t n);

    void set(std::int64_t v);
    bool contains(std::int64_t v) const;  // false outside 1..n_max
    std::int64_t popcount() const;
};

struct PatternTwoTerm {
    std::int64_t l1, l2, l3;
    PatternTwoTerm(std::int64_t a, std::int64_t b, std::int64_t c);
};

struct PatternThreeTerm {
    std::int64_t l1, l2, l3, l4, l5, l6, l7;
    PatternThreeTerm(std::int64_t a1, std::int64_t a2, std::int64_t a3, std::int64_t a4,
                     std::int64_t a5, std::int64_t a6, std::int64_t a7);
};

struct LinearProducts {
    std::int64_t L1 = 0, L2 = 0, L1p = 0, L2p = 0;
};

/// L1 = m(m+l1 n), L2 = (m+l2 n)(m+l3 n).
LinearProducts linear_products(std::int64_t m, std::int64_t n, const PatternTwoTerm& pat);
/// Adds L1p = (mp+l4 np)(mp+l5 np), L2p = (mp+l6 np)(mp+l7 np).
LinearProducts linear_products(std::int64_t m, std::int64_t n, std::int64_t mp, std::int64_t np,
                               const PatternThreeTerm& pat);

/// L2/L1 in lowest terms. Requires L1 != 0 (so m != 0).
Rational ratio(std::int64_t m, std::int64_t n, const PatternTwoTerm& pat);

/// Pairs (m, n) in [1..N]^2 with 1 <= m + l_i n <= N for every listed l_i.
std::vector<std::pair<std::int64_t, std::int64_t>> theta_domain(
    std::int64_t N, const std::vector<std::int64_t>& ls);

/// Least (n, m) with L1, L2 distinct members of E; products outside
/// 1..E.n_max never match.
std::optional<std::pair<std::int64_t, std::int64_t>> search_two_term(const SubsetMask& E,
                                                                     const PatternTwoTerm& pat,
                                                                     std::int64_t m_max,
                                                                     std::int64_t n_max);

struct ThreeTermBounds {
    std::int64_t m_max = 10, n_max = 10, mp_max = 10, np_max = 10;
};

struct ThreeTermWitness {
    std::int64_t m, n, mp, np;
    std::int64_t products[3];  // L1*L1p, L1*L2p, L2*L2p
};

/// Least witness in (n, m, np, mp) order with the three products pairwise
/// distinct members of E.
std::optional<ThreeTermWitness> search_three_term(const SubsetMask& E, const PatternThreeTerm& pat,
                                                  const ThreeTermBounds& bounds);

struct DensityProfileRow {
    double delta;
    bool found;
    std::uint64_t steps;  // (n, m) pairs scanned up to and including the witness
    std::optional<std::pair<std::int64_t, std::int64_t>> witness;
};

/// Witness-time experiment: for each density, draw a random subset of
/// 1..set_n_max (per-row seed derived from the master seed) and run the
/// two-term scan. Fully reproducible.
std::vector<DensityProfileRow> density_profile(const PatternTwoTerm& pat, std::int64_t m_max,
                                               std::int64_t n_max, std::int64_t set_n_max,
                                               const std::vector<double>& densities,
                                               std::uint64_t seed);

}  // namespace corrlab
