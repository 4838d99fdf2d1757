#include "corrlab/gowers.hpp"

#include <cmath>
#include <stdexcept>

namespace corrlab {

namespace {

/// Roots the averaged 2^d-power. The average is real in exact arithmetic
/// (the substitution h -> -h, x -> x + h_1 + ... + h_d conjugates each term),
/// so only rounding can push it below zero, and only by a hair.
double root_gowers_power(double avg, int d) {
    if (avg < -1e-12) throw std::logic_error("gowers: averaged power below -1e-12");
    if (avg < 0.0) avg = 0.0;
    return std::pow(avg, 1.0 / static_cast<double>(1 << d));
}

CyclicSignal mult_derivative(const CyclicSignal& f, std::uint64_t h) {
    std::uint64_t M = f.modulus;
    CyclicSignal d(M);
    for (std::uint64_t x = 0; x < M; ++x)
        d.values[x] = f.values[(x + h) % M] * std::conj(f.values[x]);
    return d;
}

}  // namespace

std::string to_string(GowersMethod m) {
    switch (m) {
        case GowersMethod::direct: return "direct";
        case GowersMethod::recursive: return "recursive";
        case GowersMethod::fourier: return "fourier";
    }
    return "unknown";
}

double gowers_norm_direct(const CyclicSignal& f, int d) {
    if (d < 1 || d > 3) throw std::invalid_argument("gowers_norm_direct: d must be in {1,2,3}");
    std::uint64_t M = f.modulus;
    double cells = std::pow(static_cast<double>(M), d + 1);
    if (cells > 1e8) throw std::range_error("gowers_norm_direct: M^(d+1) exceeds 1e8");

    const auto& v = f.values;
    std::vector<cplx> per_x(M);
    if (d == 1) {
        parallel_for(static_cast<std::int64_t>(M), [&](std::int64_t xi) {
            auto x = static_cast<std::uint64_t>(xi);
            cplx acc{0.0, 0.0};
            for (std::uint64_t h = 0; h < M; ++h)
                acc += v[(x + h) % M] * std::conj(v[x]);
            per_x[x] = acc;
        });
    } else if (d == 2) {
        parallel_for(static_cast<std::int64_t>(M), [&](std::int64_t xi) {
            auto x = static_cast<std::uint64_t>(xi);
            cplx acc{0.0, 0.0};
            for (std::uint64_t h1 = 0; h1 < M; ++h1) {
                for (std::uint64_t h2 = 0; h2 < M; ++h2) {
                    cplx t = v[x] * std::conj(v[(x + h1) % M]) * std::conj(v[(x + h2) % M]) *
                             v[(x + h1 + h2) % M];
                    acc += t;
                }
            }
            per_x[x] = acc;
        });
    } else {
        parallel_for(static_cast<std::int64_t>(M), [&](std::int64_t xi) {
            auto x = static_cast<std::uint64_t>(xi);
            cplx acc{0.0, 0.0};
            for (std::uint64_t h1 = 0; h1 < M; ++h1) {
                for (std::uint64_t h2 = 0; h2 < M; ++h2) {
                    for (std::uint64_t h3 = 0; h3 < M; ++h3) {
                        cplx t = v[x] * std::conj(v[(x + h1) % M]) * std::conj(v[(x + h2) % M]) *
                                 std::conj(v[(x + h3) % M]) * v[(x + h1 + h2) % M] *
                                 v[(x + h1 + h3) % M] * v[(x + h2 + h3) % M] *
                                 std::conj(v[(x + h1 + h2 + h3) % M]);
                        acc += t;
                    }
                }
            }
            per_x[x] = acc;
        });
    }
    double avg = (pairwise_sum(per_x) / cells).real();
    return root_gowers_power(avg, d);
}

double gowers_u2_fourier(const CyclicSignal& f) {
    Spectrum s = dft(f);
    std::vector<double> pow4(s.coefficients.size());
    for (std::size_t i = 0; i < pow4.size(); ++i) {
        double a = std::norm(s.coefficients[i]);
        pow4[i] = a * a;
    }
    return std::pow(pairwise_sum(pow4), 0.25);
}

double gowers_norm_recursive(const CyclicSignal& f, int d) {
    if (d < 1 || d > 4) throw std::invalid_argument("gowers_norm_recursive: d must be in 1..4");
    if (d == 1) return std::abs(f.mean());
    std::uint64_t M = f.modulus;
    std::vector<double> inner(M);
    parallel_for(static_cast<std::int64_t>(M), [&](std::int64_t hi) {
        auto h = static_cast<std::uint64_t>(hi);
        CyclicSignal dh = mult_derivative(f, h);
        double val;
        if (d == 2) {
            val = std::norm(dh.mean());
        } else if (d == 3) {
            double u2 = gowers_u2_fourier(dh);
            val = u2 * u2 * u2 * u2;
        } else {
            double u3 = gowers_norm_recursive(dh, 3);
            val = std::pow(u3, 8.0);
        }
        inner[h] = val;
    });
    double avg = pairwise_sum(inner) / static_cast<double>(M);
    return root_gowers_power(avg, d);
}

GowersReport gowers_report(const CyclicSignal& f, GowersMethod method) {
    GowersReport r;
    r.method = method;
    switch (method) {
        case GowersMethod::direct:
            r.norm_u2 = gowers_norm_direct(f, 2);
            r.norm_u3 = gowers_norm_direct(f, 3);
            break;
        case GowersMethod::recursive:
            r.norm_u2 = gowers_norm_recursive(f, 2);
            r.norm_u3 = gowers_norm_recursive(f, 3);
            break;
        case GowersMethod::fourier:
            r.norm_u2 = gowers_u2_fourier(f);
            r.norm_u3 = gowers_norm_recursive(f, 3);
            break;
    }
    return r;
}

LinearFormsAverage linear_forms_average(const CyclicSignal& a0, const CyclicSignal& a1,
                                        const CyclicSignal& a2, const CyclicSignal& a3,
                                        std::uint64_t l1, std::uint64_t l2, std::uint64_t l3,
                                        std::uint64_t N) {
    std::uint64_t M = a0.modulus;
    if (a1.modulus != M || a2.modulus != M || a3.modulus != M)
        throw std::invalid_argument("linear_forms_average: modulus mismatch");
    if (l1 == 0 || l2 == 0 || l3 == 0 || l1 == l2 || l1 == l3 || l2 == l3)
        throw std::invalid_argument("linear_forms_average: l must be distinct and positive");
    if (M <= 10 * (l1 + l2 + l3) * N)
        throw std::invalid_argument("linear_forms_average: modulus too small for N");
    for (const CyclicSignal* a : {&a0, &a1, &a2, &a3}) {
        if (a->sup_norm() > 1.0 + 1e-9)
            throw std::invalid_argument("linear_forms_average: inputs must be 1-bounded");
    }

    // indicator restricts n to 1..N; inner sum over all m
    std::vector<cplx> per_n(N);
    parallel_for(static_cast<std::int64_t>(N), [&](std::int64_t ni) {
        std::uint64_t n = static_cast<std::uint64_t>(ni) + 1;
        std::uint64_t s1 = (l1 * n) % M, s2 = (l2 * n) % M, s3 = (l3 * n) % M;
        cplx acc{0.0, 0.0};
        for (std::uint64_t m = 0; m < M; ++m) {
            acc += a0.values[m] * a1.values[(m + s1) % M] * a2.values[(m + s2) % M] *
                   a3.values[(m + s3) % M];
        }
        per_n[ni] = acc;
    });
    cplx value = pairwise_sum(per_n) / (static_cast<double>(M) * static_cast<double>(M));

    LinearFormsAverage out;
    out.value = value;
    double min_u3 = -1.0;
    for (const CyclicSignal* a : {&a0, &a1, &a2, &a3}) {
        double u3 = gowers_norm_recursive(*a, 3);
        if (min_u3 < 0.0 || u3 < min_u3) min_u3 = u3;
    }
    out.bound_parts.min_u3_root = std::sqrt(min_u3);
    out.bound_parts.tail = 2.0 / static_cast<double>(M);
    if (out.bound_parts.min_u3_root > 0.0)
        out.bound_parts.c2_candidate =
            (std::abs(value) - out.bound_parts.tail) / out.bound_parts.min_u3_root;
    return out;
}

}  // namespace corrlab
