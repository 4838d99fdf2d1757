#include "corrlab/quadform.hpp"

#include <algorithm>
#include <stdexcept>

#include "corrlab/numtheory.hpp"

namespace corrlab {

namespace {

using i64 = std::int64_t;
using i128 = __int128;

i64 checked_i64(i128 v, const char* what) {
    if (v > i128(INT64_MAX) || v < i128(INT64_MIN)) throw std::overflow_error(what);
    return static_cast<i64>(v);
}

bool is_square_i128(i128 v, i64* root) {
    if (v < 0) return false;
    std::uint64_t r = isqrt_u128(static_cast<unsigned __int128>(v));
    if ((unsigned __int128)r * r != static_cast<unsigned __int128>(v)) return false;
    *root = static_cast<i64>(r);
    return true;
}

}  // namespace

QuadraticForm::QuadraticForm(i64 a_, i64 b_, i64 c_, i64 d_, i64 e_, i64 f_)
    : a(a_), b(b_), c(c_), d(d_), e(e_), f(f_) {
    if (a == 0 || b == 0 || c == 0)
        throw std::invalid_argument("QuadraticForm: a, b, c must be nonzero");
}

i128 QuadraticForm::eval(i64 x, i64 y, i64 z) const {
    return i128(a) * x * x + i128(b) * y * y + i128(c) * z * z + i128(d) * x * y +
           i128(e) * x * z + i128(f) * y * z;
}

Discriminants discriminants(const QuadraticForm& p) {
    i128 d1 = i128(p.e) * p.e - i128(4) * p.a * p.c;
    i128 d2 = i128(p.f) * p.f - i128(4) * p.b * p.c;
    i128 d3 = (i128(p.e) + p.f) * (i128(p.e) + p.f) - i128(4) * p.c * (i128(p.a) + p.b + p.d);
    return Discriminants{checked_i64(d1, "discriminants: overflow"),
                         checked_i64(d2, "discriminants: overflow"),
                         checked_i64(d3, "discriminants: overflow")};
}

bool is_admissible(const QuadraticForm& p) {
    Discriminants d = discriminants(p);
    for (i64 v : {d.d1, d.d2, d.d3}) {
        if (v <= 0) return false;
        if (!is_perfect_square_i64(v)) return false;
    }
    return true;
}

Coloring::Coloring(i64 n, int r, std::vector<int> cell_values)
    : n_max(n), num_cells(r), cells(std::move(cell_values)) {
    if (n < 0 || r < 1) throw std::invalid_argument("Coloring: bad dimensions");
    if (static_cast<i64>(cells.size()) != n) throw std::invalid_argument("Coloring: size mismatch");
    for (int c : cells)
        if (c < 0 || c >= r) throw std::invalid_argument("Coloring: cell index out of range");
}

Coloring Coloring::uniform(i64 n) { return Coloring(n, 1, std::vector<int>(n, 0)); }

int Coloring::cell_of(i64 v) const {
    if (v < 1 || v > n_max) throw std::out_of_range("Coloring: value outside 1..n_max");
    return cells[v - 1];
}

std::vector<std::pair<i64, i64>> solve_fixed_n(const QuadraticForm& p, i64 n, i64 y_max) {
    if (n < 1) throw std::invalid_argument("solve_fixed_n: n must be positive");
    if (y_max < 1) throw std::invalid_argument("solve_fixed_n: y_max must be positive");
    std::vector<std::pair<i64, i64>> out;  // (x, y), collected per y
    for (i64 y = 1; y <= y_max; ++y) {
        // a x^2 + (d y + e n) x + (b y^2 + c n^2 + f y n) = 0
        i128 B = i128(p.d) * y + i128(p.e) * n;
        i128 C = i128(p.b) * y * y + i128(p.c) * n * n + i128(p.f) * y * n;
        i128 D = B * B - i128(4) * p.a * C;
        i64 r = 0;
        if (!is_square_i128(D, &r)) continue;
        i64 prev = INT64_MIN;
        for (int sign : {+1, -1}) {
            if (r == 0 && sign < 0) break;
            i128 num = -B + i128(sign) * r;
            i128 den = i128(2) * p.a;
            if (num % den != 0) continue;
            i64 x = checked_i64(num / den, "solve_fixed_n: overflow");
            if (x < 1 || x == y || x == prev) continue;
            prev = x;
            out.emplace_back(x, y);
        }
    }
    std::sort(out.begin(), out.end(),
              [](const auto& l, const auto& r2) {
                  return l.second != r2.second ? l.second < r2.second : l.first < r2.first;
              });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::optional<MonoWitness> monochromatic_search(const QuadraticForm& p, const Coloring& coloring,
                                                i64 n_max) {
    for (i64 n = 1; n <= n_max; ++n) {
        std::optional<MonoWitness> best;
        for (const auto& [x, y] : solve_fixed_n(p, n, coloring.n_max)) {
            if (x > coloring.n_max) continue;
            if (coloring.cell_of(x) != coloring.cell_of(y)) continue;
            if (!best || x < best->x || (x == best->x && y < best->y))
                best = MonoWitness{x, y, n, coloring.cell_of(x)};
        }
        if (best) return best;
    }
    return std::nullopt;
}

PrCheckResult exhaustive_pr_check(const QuadraticForm& p, int r, i64 N) {
    if (r < 1 || N < 1) throw std::invalid_argument("exhaustive_pr_check: bad arguments");
    // Distinct-pair solutions {x,y} over all n <= N become graph edges; a
    // coloring avoids the pattern iff it is a proper coloring of the graph.
    std::vector<std::vector<int>> adj(N + 1);
    for (i64 n = 1; n <= N; ++n) {
        for (const auto& [x, y] : solve_fixed_n(p, n, N)) {
            if (x > N) continue;
            adj[x].push_back(static_cast<int>(y));
            adj[y].push_back(static_cast<int>(x));
        }
    }
    for (auto& row : adj) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }

    constexpr std::uint64_t kBudget = 100000000;
    std::vector<int> color(N + 1, -1);
    std::uint64_t nodes = 0;

    // Depth-first proper-coloring search; vertex v may reuse any color seen
    // so far or open exactly one new one (canonical form kills the r!
    // color-permutation symmetry, subsuming "fix the color of 1").
    auto dfs = [&](auto&& self, int v, int used) -> bool {
        if (v > N) return true;
        if (++nodes > kBudget) throw std::range_error("exhaustive_pr_check: budget exceeded");
        int limit = std::min(r - 1, used);
        for (int c = 0; c <= limit; ++c) {
            bool ok = true;
            for (int u : adj[v]) {
                if (u < v && color[u] == c) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            color[v] = c;
            if (self(self, v + 1, std::max(used, c + 1))) return true;
            color[v] = -1;
        }
        return false;
    };

    PrCheckResult res;
    bool properly_colorable = dfs(dfs, 1, 0);
    res.nodes_visited = nodes;
    res.regular = !properly_colorable;
    if (properly_colorable) {
        std::vector<int> cells(color.begin() + 1, color.end());
        res.counterexample = Coloring(N, r, std::move(cells));
    }
    return res;
}

std::optional<SimulWitness> simultaneous_pr_search(const QuadraticForm& p1,
                                                   const QuadraticForm& p2,
                                                   const Coloring& coloring,
                                                   const SimultaneousBounds& bounds) {
    if (coloring.n_max < 1) return std::nullopt;
    auto sorted_solutions = [&](const QuadraticForm& p, i64 n) {
        auto sols = solve_fixed_n(p, n, bounds.x_max);
        std::vector<std::pair<i64, i64>> keep;
        for (const auto& s : sols)
            if (s.first <= bounds.x_max) keep.push_back(s);
        std::sort(keep.begin(), keep.end());  // by (x, y)
        return keep;
    };

    for (i64 n = 1; n <= bounds.n_max; ++n) {
        auto sols1 = sorted_solutions(p1, n);
        if (sols1.empty()) continue;
        for (i64 np = 1; np <= bounds.n_max; ++np) {
            auto sols2 = sorted_solutions(p2, np);
            for (const auto& [x, y] : sols1) {
                for (const auto& [xp, yp] : sols2) {
                    i128 prods[3] = {i128(x) * xp, i128(x) * yp, i128(y) * yp};
                    for (i64 k = 1; k <= bounds.k_max; ++k) {
                        i64 q[3];
                        bool ok = true;
                        for (int i = 0; i < 3 && ok; ++i) {
                            if (prods[i] % k != 0) ok = false;
                            else {
                                q[i] = checked_i64(prods[i] / k, "simultaneous_pr_search: overflow");
                                if (q[i] < 1 || q[i] > coloring.n_max) ok = false;
                            }
                        }
                        if (!ok) continue;
                        if (q[0] == q[1] || q[0] == q[2] || q[1] == q[2]) continue;
                        int cell = coloring.cell_of(q[0]);
                        if (coloring.cell_of(q[1]) != cell || coloring.cell_of(q[2]) != cell)
                            continue;
                        return SimulWitness{x, y, n, xp, yp, np, k, q[0], q[1], q[2], cell};
                    }
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace corrlab
