#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace corrlab {

/// p(x,y,z) = a x^2 + b y^2 + c z^2 + d xy + e xz + f yz with a,b,c nonzero.
struct QuadraticForm {
    std::int64_t a, b, c, d, e, f;

    QuadraticForm(std::int64_t a_, std::int64_t b_, std::int64_t c_, std::int64_t d_,
                  std::int64_t e_, std::int64_t f_);

    /// Exact evaluation in 128-bit arithmetic.
    __int128 eval(std::int64_t x, std::int64_t y, std::int64_t z) const;
};

struct Discriminants {
    std::int64_t d1, d2, d3;  // e^2-4ac, f^2-4bc, (e+f)^2-4c(a+b+d)
};

Discriminants discriminants(const QuadraticForm& p);

/// True iff all three discriminants are strictly positive perfect squares.
bool is_admissible(const QuadraticForm& p);

/// Assignment of a cell index to each integer 1..n_max.
struct Coloring {
    std::int64_t n_max = 0;
    int num_cells = 1;
    std::vector<int> cells;  // cells[i] = cell of integer i+1

    Coloring() = default;
    Coloring(std::int64_t n, int r, std::vector<int> cell_values);
    static Coloring uniform(std::int64_t n);  // single cell

    int cell_of(std::int64_t v) const;
};

/// All (x, y) with x,y >= 1, x != y, y <= y_max and p(x,y,n) = 0, solved
/// exactly per y via the integer quadratic formula. Sorted by (y, x).
std::vector<std::pair<std::int64_t, std::int64_t>> solve_fixed_n(const QuadraticForm& p,
                                                                 std::int64_t n,
                                                                 std::int64_t y_max);

struct MonoWitness {
    std::int64_t x, y, n;
    int cell;
};

/// Least witness ordered by (n, x, y): distinct x, y in the same cell with
/// p(x,y,n) = 0, x,y <= coloring.n_max, n <= n_max.
std::optional<MonoWitness> monochromatic_search(const QuadraticForm& p, const Coloring& coloring,
                                                std::int64_t n_max);

struct PrCheckResult {
    bool regular = false;
    std::optional<Coloring> counterexample;  // present iff not regular
    std::uint64_t nodes_visited = 0;
};

/// True iff every r-coloring of [1..N] contains distinct monochromatic x, y
/// with p(x,y,n) = 0 for some n <= N. Backtracking over colorings with the
/// color of 1 fixed; node budget 1e8.
PrCheckResult exhaustive_pr_check(const QuadraticForm& p, int r, std::int64_t N);

struct SimultaneousBounds {
    std::int64_t x_max = 10, n_max = 10, k_max = 10;
};

struct SimulWitness {
    std::int64_t x, y, n, xp, yp, np, k;
    std::int64_t q1, q2, q3;  // x*xp/k, x*yp/k, y*yp/k
    int cell;
};

/// Solutions (x,y) of p1(.,.,n)=0 and (xp,yp) of p2(.,.,np)=0 together with
/// k >= 1 such that x*xp/k, x*yp/k, y*yp/k are distinct integers in the
/// same cell of the coloring. Least in (n, np, x, y, xp, yp, k).
std::optional<SimulWitness> simultaneous_pr_search(const QuadraticForm& p1,
                                                   const QuadraticForm& p2,
                                                   const Coloring& coloring,
                                                   const SimultaneousBounds& bounds);

}  // namespace corrlab
