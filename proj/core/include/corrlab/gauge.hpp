#pragma once

#include <cstdint>
#include <vector>

namespace corrlab {

/// Real m x k bilinear form, row-major entries.
struct BilinearMatrix {
    std::size_t m = 0, k = 0;
    std::vector<double> entries;

    BilinearMatrix(std::size_t rows, std::size_t cols, std::vector<double> vals);
    double at(std::size_t i, std::size_t j) const { return entries[i * k + j]; }
};

/// max over eps in {+-1}^m of sum_j |sum_i eps_i M_ij|; the inner
/// maximization over the column signs is analytic. m <= 24.
double sign_value(const BilinearMatrix& M);

struct GaugeOptions {
    std::size_t dim = 0;       // 0 -> m + k
    std::size_t restarts = 64; // >= 32
    std::size_t iters = 200;
    std::uint64_t seed = 0;
};

/// Best value of sum_ij M_ij <x_i, y_j> over unit vectors in R^d found by
/// alternating maximization with seeded restarts. Lower bound on the
/// relaxation optimum; restart 0 starts at the sign-optimal configuration,
/// so the result never falls below sign_value.
double hilbert_value(const BilinearMatrix& M, const GaugeOptions& opt = {});

struct GaugeReport {
    double sign = 0.0;
    double hilbert = 0.0;
    double ratio = 0.0;
    bool infinite = false;  // sign 0 with nonzero hilbert (unreachable for real input)
};

/// hilbert / sign; both zero -> ratio 1.
GaugeReport grothendieck_ratio(const BilinearMatrix& M, const GaugeOptions& opt = {});

}  // namespace corrlab
