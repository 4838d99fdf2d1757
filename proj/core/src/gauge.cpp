#include "corrlab/gauge.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "corrlab/util.hpp"

namespace corrlab {

BilinearMatrix::BilinearMatrix(std::size_t rows, std::size_t cols, std::vector<double> vals)
    : m(rows), k(cols), entries(std::move(vals)) {
    if (m < 1 || k < 1) throw std::invalid_argument("BilinearMatrix: need m, k >= 1");
    if (entries.size() != m * k) throw std::invalid_argument("BilinearMatrix: entry count mismatch");
    for (double v : entries)
        if (!std::isfinite(v)) throw std::invalid_argument("BilinearMatrix: entries must be finite");
}

namespace {

struct SignOptimum {
    double value = 0.0;
    std::vector<int> eps;
};

// Gray-code walk over eps with the last sign pinned to +1 (global flip
// symmetry), column sums maintained incrementally.
SignOptimum sign_optimum(const BilinearMatrix& M) {
    if (M.m > 24) throw std::range_error("sign_value: more than 24 rows");
    std::size_t m = M.m, k = M.k;
    std::vector<int> eps(m, 1);
    std::vector<double> colsum(k, 0.0);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < m; ++i) colsum[j] += M.at(i, j);

    auto total = [&] {
        double v = 0.0;
        for (double c : colsum) v += std::abs(c);
        return v;
    };

    SignOptimum best{total(), eps};
    std::uint64_t steps = m > 1 ? (1ull << (m - 1)) : 1;
    for (std::uint64_t g = 1; g < steps; ++g) {
        std::size_t bit = static_cast<std::size_t>(std::countr_zero(g));
        eps[bit] = -eps[bit];
        for (std::size_t j = 0; j < k; ++j) colsum[j] += 2.0 * eps[bit] * M.at(bit, j);
        double v = total();
        if (v > best.value) best = {v, eps};
    }
    return best;
}

double vec_dot(const double* a, const double* b, std::size_t d) {
    double s = 0.0;
    for (std::size_t t = 0; t < d; ++t) s += a[t] * b[t];
    return s;
}

// one restart of alternating ascent; x, y hold m (resp. k) packed unit
// vectors of dimension d and are updated in place
double ascend(const BilinearMatrix& M, std::vector<double>& x, std::vector<double>& y,
              std::size_t d, std::size_t iters) {
    std::size_t m = M.m, k = M.k;
    std::vector<double> acc(d);
    for (std::size_t it = 0; it < iters; ++it) {
        for (std::size_t i = 0; i < m; ++i) {
            std::fill(acc.begin(), acc.end(), 0.0);
            for (std::size_t j = 0; j < k; ++j) {
                double w = M.at(i, j);
                for (std::size_t t = 0; t < d; ++t) acc[t] += w * y[j * d + t];
            }
            double nrm = std::sqrt(vec_dot(acc.data(), acc.data(), d));
            if (nrm > 0.0)
                for (std::size_t t = 0; t < d; ++t) x[i * d + t] = acc[t] / nrm;
        }
        for (std::size_t j = 0; j < k; ++j) {
            std::fill(acc.begin(), acc.end(), 0.0);
            for (std::size_t i = 0; i < m; ++i) {
                double w = M.at(i, j);
                for (std::size_t t = 0; t < d; ++t) acc[t] += w * x[i * d + t];
            }
            double nrm = std::sqrt(vec_dot(acc.data(), acc.data(), d));
            if (nrm > 0.0)
                for (std::size_t t = 0; t < d; ++t) y[j * d + t] = acc[t] / nrm;
        }
    }
    double v = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < k; ++j) v += M.at(i, j) * vec_dot(&x[i * d], &y[j * d], d);
    return v;
}

void random_unit_rows(std::vector<double>& packed, std::size_t count, std::size_t d, Rng& rng) {
    for (std::size_t r = 0; r < count; ++r) {
        double* v = &packed[r * d];
        double nrm = 0.0;
        for (std::size_t t = 0; t < d; ++t) {
            v[t] = rng.gaussian();
            nrm += v[t] * v[t];
        }
        nrm = std::sqrt(nrm);
        if (nrm > 0.0)
            for (std::size_t t = 0; t < d; ++t) v[t] /= nrm;
        else
            v[0] = 1.0;
    }
}

}  // namespace

double sign_value(const BilinearMatrix& M) { return sign_optimum(M).value; }

double hilbert_value(const BilinearMatrix& M, const GaugeOptions& opt) {
    std::size_t m = M.m, k = M.k;
    std::size_t d = opt.dim == 0 ? m + k : opt.dim;
    if (d < m + k) throw std::invalid_argument("hilbert_value: need dim >= m + k");
    if (opt.restarts < 32) throw std::invalid_argument("hilbert_value: need >= 32 restarts");

    SignOptimum sopt = sign_optimum(M);

    std::vector<double> results(opt.restarts);
    parallel_for(opt.restarts, [&](std::size_t r) {
        std::vector<double> x(m * d, 0.0), y(k * d, 0.0);
        if (r == 0) {
            // start at the sign optimum embedded along e_1: guarantees the
            // ascent (monotone) never reports less than sign_value
            for (std::size_t i = 0; i < m; ++i) x[i * d] = sopt.eps[i];
            for (std::size_t j = 0; j < k; ++j) {
                double c = 0.0;
                for (std::size_t i = 0; i < m; ++i) c += sopt.eps[i] * M.at(i, j);
                y[j * d] = c < 0.0 ? -1.0 : 1.0;
            }
        } else {
            Rng rng(split_seed(opt.seed, r));
            random_unit_rows(x, m, d, rng);
            random_unit_rows(y, k, d, rng);
        }
        results[r] = ascend(M, x, y, d, opt.iters);
    });
    return *std::max_element(results.begin(), results.end());
}

GaugeReport grothendieck_ratio(const BilinearMatrix& M, const GaugeOptions& opt) {
    GaugeReport rep;
    rep.sign = sign_value(M);
    rep.hilbert = hilbert_value(M, opt);
    if (rep.sign == 0.0) {
        rep.infinite = rep.hilbert != 0.0;
        rep.ratio = rep.infinite ? std::numeric_limits<double>::infinity() : 1.0;
    } else {
        rep.ratio = rep.hilbert / rep.sign;
    }
    return rep;
}

}  // namespace corrlab
