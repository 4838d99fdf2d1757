#include "corrlab/recurrence.hpp"

#include <bit>
#include <stdexcept>

#include "corrlab/util.hpp"

namespace corrlab {

namespace {

using i64 = std::int64_t;
using i128 = __int128;

i64 checked_product(i128 u, i128 v, const char* what) {
    i128 r = u * v;
    if (r > i128(INT64_MAX) || r < i128(INT64_MIN)) throw std::overflow_error(what);
    return static_cast<i64>(r);
}

}  // namespace

SubsetMask::SubsetMask(i64 n) : n_max(n) {
    if (n < 0) throw std::invalid_argument("SubsetMask: negative size");
    bits.assign(static_cast<std::size_t>(n / 64 + 1), 0);
}

SubsetMask SubsetMask::full(i64 n) {
    SubsetMask m(n);
    for (i64 v = 1; v <= n; ++v) m.set(v);
    return m;
}

SubsetMask SubsetMask::empty_set(i64 n) { return SubsetMask(n); }

SubsetMask SubsetMask::multiples(i64 k, i64 n) {
    if (k < 1) throw std::invalid_argument("SubsetMask::multiples: k must be positive");
    SubsetMask m(n);
    for (i64 v = k; v <= n; v += k) m.set(v);
    return m;
}

SubsetMask SubsetMask::random(double density, std::uint64_t seed, i64 n) {
    if (density < 0.0 || density > 1.0)
        throw std::invalid_argument("SubsetMask::random: density must lie in [0,1]");
    SubsetMask m(n);
    Rng rng(seed);
    for (i64 v = 1; v <= n; ++v)
        if (rng.uniform() < density) m.set(v);
    return m;
}

SubsetMask SubsetMask::from_members(const std::vector<i64>& members, i64 n) {
    SubsetMask m(n);
    for (i64 v : members) {
        if (v < 1 || v > n) throw std::out_of_range("SubsetMask: member outside 1..n_max");
        m.set(v);
    }
    return m;
}

void SubsetMask::set(i64 v) {
    if (v < 1 || v > n_max) throw std::out_of_range("SubsetMask::set: outside 1..n_max");
    bits[static_cast<std::size_t>(v / 64)] |= std::uint64_t{1} << (v % 64);
}

bool SubsetMask::contains(i64 v) const {
    if (v < 1 || v > n_max) return false;
    return (bits[static_cast<std::size_t>(v / 64)] >> (v % 64)) & 1;
}

i64 SubsetMask::popcount() const {
    i64 c = 0;
    for (std::uint64_t w : bits) c += std::popcount(w);
    return c;
}

PatternTwoTerm::PatternTwoTerm(i64 a, i64 b, i64 c) : l1(a), l2(b), l3(c) {
    if (l1 < 1) throw std::invalid_argument("PatternTwoTerm: l1 must be positive");
    if (l2 < 0 || l3 < 0) throw std::invalid_argument("PatternTwoTerm: l2, l3 must be non-negative");
    if (l2 == l3) throw std::invalid_argument("PatternTwoTerm: l2 != l3 required");
}

PatternThreeTerm::PatternThreeTerm(i64 a1, i64 a2, i64 a3, i64 a4, i64 a5, i64 a6, i64 a7)
    : l1(a1), l2(a2), l3(a3), l4(a4), l5(a5), l6(a6), l7(a7) {
    for (i64 v : {l1, l2, l3, l4, l5, l6, l7})
        if (v < 0) throw std::invalid_argument("PatternThreeTerm: negative coefficient");
    if (l1 == 0) throw std::invalid_argument("PatternThreeTerm: l1 must be nonzero");
    if (l2 == l3 || l4 == l5 || l6 == l7)
        throw std::invalid_argument("PatternThreeTerm: paired coefficients must differ");
}

LinearProducts linear_products(i64 m, i64 n, const PatternTwoTerm& pat) {
    LinearProducts out;
    out.L1 = checked_product(m, i128(m) + i128(pat.l1) * n, "linear_products: overflow");
    out.L2 = checked_product(i128(m) + i128(pat.l2) * n, i128(m) + i128(pat.l3) * n,
                             "linear_products: overflow");
    return out;
}

LinearProducts linear_products(i64 m, i64 n, i64 mp, i64 np, const PatternThreeTerm& pat) {
    LinearProducts out;
    out.L1 = checked_product(m, i128(m) + i128(pat.l1) * n, "linear_products: overflow");
    out.L2 = checked_product(i128(m) + i128(pat.l2) * n, i128(m) + i128(pat.l3) * n,
                             "linear_products: overflow");
    out.L1p = checked_product(i128(mp) + i128(pat.l4) * np, i128(mp) + i128(pat.l5) * np,
                              "linear_products: overflow");
    out.L2p = checked_product(i128(mp) + i128(pat.l6) * np, i128(mp) + i128(pat.l7) * np,
                              "linear_products: overflow");
    return out;
}

Rational ratio(i64 m, i64 n, const PatternTwoTerm& pat) {
    if (m == 0) throw std::domain_error("ratio: m = 0 makes L1 vanish");
    LinearProducts lp = linear_products(m, n, pat);
    if (lp.L1 == 0) throw std::domain_error("ratio: L1 = 0");
    return Rational(lp.L2, lp.L1);
}

std::vector<std::pair<i64, i64>> theta_domain(i64 N, const std::vector<i64>& ls) {
    if (N < 1) throw std::invalid_argument("theta_domain: N must be positive");
    std::vector<std::pair<i64, i64>> out;
    for (i64 m = 1; m <= N; ++m) {
        for (i64 n = 1; n <= N; ++n) {
            bool ok = true;
            for (i64 l : ls) {
                i128 v = i128(m) + i128(l) * n;
                if (v < 1 || v > N) {
                    ok = false;
                    break;
                }
            }
            if (ok) out.emplace_back(m, n);
        }
    }
    return out;
}

std::optional<std::pair<i64, i64>> search_two_term(const SubsetMask& E, const PatternTwoTerm& pat,
                                                   i64 m_max, i64 n_max) {
    if (m_max < 1 || n_max < 1) return std::nullopt;

    // stripes over n; each worker records its least (n, m), then a serial
    // min-reduction keeps the deterministic least-witness contract
    int workers = std::max(1, thread_count());
    i64 stripe = (n_max + workers - 1) / workers;
    std::vector<std::optional<std::pair<i64, i64>>> local(workers);
    parallel_for(workers, [&](std::int64_t w) {
        i64 lo = w * stripe + 1;
        i64 hi = std::min<i64>(n_max, (w + 1) * stripe);
        for (i64 n = lo; n <= hi; ++n) {
            for (i64 m = 1; m <= m_max; ++m) {
                LinearProducts lp = linear_products(m, n, pat);
                if (lp.L1 == lp.L2) continue;
                if (!E.contains(lp.L1) || !E.contains(lp.L2)) continue;
                local[w] = std::make_pair(n, m);
                break;
            }
            if (local[w]) break;
        }
    });
    for (const auto& cand : local)
        if (cand) return std::make_pair(cand->second, cand->first);  // stored (n, m) -> return (m, n)
    return std::nullopt;
}

std::optional<ThreeTermWitness> search_three_term(const SubsetMask& E, const PatternThreeTerm& pat,
                                                  const ThreeTermBounds& bounds) {
    for (i64 n = 1; n <= bounds.n_max; ++n) {
        for (i64 m = 1; m <= bounds.m_max; ++m) {
            for (i64 np = 1; np <= bounds.np_max; ++np) {
                for (i64 mp = 1; mp <= bounds.mp_max; ++mp) {
                    LinearProducts lp = linear_products(m, n, mp, np, pat);
                    i64 p1 = checked_product(lp.L1, lp.L1p, "search_three_term: overflow");
                    i64 p2 = checked_product(lp.L1, lp.L2p, "search_three_term: overflow");
                    i64 p3 = checked_product(lp.L2, lp.L2p, "search_three_term: overflow");
                    if (p1 == p2 || p1 == p3 || p2 == p3) continue;
                    if (!E.contains(p1) || !E.contains(p2) || !E.contains(p3)) continue;
                    return ThreeTermWitness{m, n, mp, np, {p1, p2, p3}};
                }
            }
        }
    }
    return std::nullopt;
}

std::vector<DensityProfileRow> density_profile(const PatternTwoTerm& pat, i64 m_max, i64 n_max,
                                               i64 set_n_max, const std::vector<double>& densities,
                                               std::uint64_t seed) {
    std::vector<DensityProfileRow> rows;
    rows.reserve(densities.size());
    for (std::size_t i = 0; i < densities.size(); ++i) {
        SubsetMask E = SubsetMask::random(densities[i], split_seed(seed, i), set_n_max);
        DensityProfileRow row{densities[i], false, 0, std::nullopt};
        // serial scan so the step count is well defined
        for (i64 n = 1; n <= n_max && !row.found; ++n) {
            for (i64 m = 1; m <= m_max; ++m) {
                ++row.steps;
                LinearProducts lp = linear_products(m, n, pat);
                if (lp.L1 != lp.L2 && E.contains(lp.L1) && E.contains(lp.L2)) {
                    row.found = true;
                    row.witness = std::make_pair(m, n);
                    break;
                }
            }
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace corrlab
