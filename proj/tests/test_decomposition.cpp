#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "corrlab/decomposition.hpp"
#include "corrlab/multiplicative.hpp"
#include "corrlab/util.hpp"
#include "doctest.h"

using namespace corrlab;

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

double max_abs_diff(const CyclicSignal& a, const CyclicSignal& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
    return worst;
}

}  // namespace

TEST_CASE("fejer kernel: flat at W=1, closed form at W=2") {
    auto flat = fejer_kernel(11, 1);
    for (auto& v : flat.signal.values) CHECK(std::abs(v - cplx(1.0, 0.0)) <= 1e-12);

    auto f2 = fejer_kernel(5, 2);
    for (std::uint64_t n = 0; n < 5; ++n) {
        double want = 1.0 + std::cos(kTau * double(n) / 5.0);
        CHECK(std::abs(f2.signal.values[n] - cplx(want, 0.0)) <= 1e-12);
    }

    for (std::uint64_t W : {1, 2, 3, 7, 11}) {
        auto k = fejer_kernel(11, W);
        CHECK(std::abs(k.signal.mean() - cplx(1.0, 0.0)) <= 1e-12);
        for (auto& v : k.signal.values) CHECK(v.real() >= -1e-12);
    }
    CHECK_THROWS_AS(fejer_kernel(11, 0), std::invalid_argument);
    CHECK_THROWS_AS(fejer_kernel(11, 12), std::invalid_argument);
}

TEST_CASE("progression kernel: point mass, flat, and the 11/4 support case") {
    auto pt = progression_kernel(11, 3, 1);
    CHECK(std::abs(pt.signal.values[0] - cplx(11.0, 0.0)) <= 1e-12);
    for (std::uint64_t n = 1; n < 11; ++n) CHECK(std::abs(pt.signal.values[n]) <= 1e-15);

    auto flat = progression_kernel(11, 1, 11);
    for (auto& v : flat.signal.values) CHECK(std::abs(v - cplx(1.0, 0.0)) <= 1e-12);

    auto k = progression_kernel(11, 3, 4);
    for (std::uint64_t n = 0; n < 11; ++n) {
        bool on = (n == 0 || n == 3 || n == 6 || n == 9);
        cplx want = on ? cplx(11.0 / 4.0, 0.0) : cplx(0.0, 0.0);
        CHECK(std::abs(k.signal.values[n] - want) <= 1e-12);
    }
    CHECK(std::abs(k.signal.mean() - cplx(1.0, 0.0)) <= 1e-12);

    CHECK_THROWS_AS(progression_kernel(11, 3, 12), std::invalid_argument);
    CHECK_THROWS_AS(progression_kernel(11, 11, 2), std::invalid_argument);
}

TEST_CASE("kernel convolution stays a kernel") {
    auto a = progression_kernel(101, 3, 7);
    auto b = fejer_kernel(101, 9);
    auto c = kernel_convolve(a, b);
    CHECK(std::abs(c.signal.mean() - cplx(1.0, 0.0)) <= 1e-12);
    for (auto& v : c.signal.values) {
        CHECK(v.real() >= -1e-12);
        CHECK(std::abs(v.imag()) <= 1e-12);
    }
}

TEST_CASE("decompose preserves the mean and reconstructs exactly") {
    auto dec = decompose(MultiplicativeFunction::one(), 100, 101, {1, 5, 5, 9, 9});
    CHECK(std::abs(dec.st.mean() - cplx(100.0 / 101.0, 0.0)) <= 1e-12);

    auto chi_n = MultiplicativeFunction::one().truncation(100, 101);
    CyclicSignal sum(101);
    for (std::uint64_t n = 0; n < 101; ++n)
        sum.values[n] = dec.st.values[n] + dec.un.values[n] + dec.er.values[n];
    CHECK(max_abs_diff(sum, chi_n) <= 1e-12);
}

TEST_CASE("identical kernels make the er part vanish") {
    auto dec = decompose(MultiplicativeFunction::liouville(), 30, 307, {1, 10, 10, 10, 10});
    CHECK(dec.er.sup_norm() <= 1e-13);
    CHECK(diagnostics(dec, 2).l1_er <= 1e-13);
}

TEST_CASE("liouville at scale 2003 reconstructs with the documented bounds") {
    auto chi = MultiplicativeFunction::liouville();
    auto dec = decompose(chi, 50, 2003, {4, 10, 10, 40, 40});

    auto chi_n = chi.truncation(50, 2003);
    CyclicSignal sum(2003);
    for (std::uint64_t n = 0; n < 2003; ++n)
        sum.values[n] = dec.st.values[n] + dec.un.values[n] + dec.er.values[n];
    CHECK(max_abs_diff(sum, chi_n) <= 1e-12);

    CHECK(dec.st.sup_norm() <= 1.0 + 1e-12);
    CHECK(dec.un.sup_norm() <= 2.0 + 1e-12);
    CHECK(dec.er.sup_norm() <= 2.0 + 1e-12);

    auto diag = diagnostics(dec, 3);
    CHECK(diag.lipschitz_Q <= 2.0 / 10.0 + 1e-10);
    CHECK(diag.u2_un >= 0.0);
    REQUIRE(diag.u3_un.has_value());
    CHECK(*diag.u3_un >= diag.u2_un - 1e-9);
    CHECK(diag.l1_er >= 0.0);

    // lipschitz_Q is literally the max shift-by-Q increment of st
    double lip = 0.0;
    for (std::uint64_t n = 0; n < 2003; ++n)
        lip = std::max(lip, std::abs(dec.st.values[(n + 4) % 2003] - dec.st.values[n]));
    CHECK(diag.lipschitz_Q == lip);
}

TEST_CASE("lipschitz bound holds for every catalogue function") {
    for (auto chi : {MultiplicativeFunction::one(), MultiplicativeFunction::liouville(),
                     MultiplicativeFunction::random_phases(5)}) {
        auto dec = decompose(chi, 40, 401, {2, 7, 5, 9, 9});
        CHECK(diagnostics(dec, 2).lipschitz_Q <= 2.0 / 7.0 + 1e-10);
    }
}

TEST_CASE("u2 of the un part shrinks as the Fejer factor sharpens") {
    // Grid {10,20,40}^2 on K2, W2 for the interval indicator: the residual
    // is monotone in the W2 axis (the progression factor smears more as K2
    // grows, so only the Fejer direction contracts).
    auto chi = MultiplicativeFunction::one();
    double table[3][3];
    std::uint64_t steps[3] = {10, 20, 40};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            auto dec = decompose(chi, 100, 1009, {1, 10, 10, steps[i], steps[j]});
            table[i][j] = diagnostics(dec, 2).u2_un;
        }
    for (int i = 0; i < 3; ++i) {
        CHECK(table[i][1] <= table[i][0] + 1e-12);
        CHECK(table[i][2] <= table[i][1] + 1e-12);
    }
    // the sharpest Fejer with the tightest progression wins overall
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(table[0][2] <= table[i][j] + 1e-12);
}

TEST_CASE("decompose_signal is linear") {
    Rng rng(17);
    CyclicSignal f(101), g(101);
    for (auto& v : f.values) v = rng.disk();
    for (auto& v : g.values) v = rng.disk();
    cplx z1(0.3, -1.1), z2(-0.7, 0.2);
    CyclicSignal combo(101);
    for (std::uint64_t n = 0; n < 101; ++n)
        combo.values[n] = z1 * f.values[n] + z2 * g.values[n];

    DecompositionParams params{2, 6, 4, 8, 8};
    auto df = decompose_signal(f, params);
    auto dg = decompose_signal(g, params);
    auto dc = decompose_signal(combo, params);
    for (std::uint64_t n = 0; n < 101; ++n) {
        CHECK(std::abs(dc.st.values[n] - (z1 * df.st.values[n] + z2 * dg.st.values[n])) <= 1e-10);
        CHECK(std::abs(dc.un.values[n] - (z1 * df.un.values[n] + z2 * dg.un.values[n])) <= 1e-10);
        CHECK(std::abs(dc.er.values[n] - (z1 * df.er.values[n] + z2 * dg.er.values[n])) <= 1e-10);
    }
}

TEST_CASE("non-negative input keeps st and the second smoothing non-negative") {
    auto dec = decompose(MultiplicativeFunction::one(), 60, 401, {3, 8, 6, 12, 12});
    for (std::uint64_t n = 0; n < 401; ++n) {
        CHECK(dec.st.values[n].real() >= -1e-12);
        CHECK(std::abs(dec.st.values[n].imag()) <= 1e-12);
        // st + er = chi_N * psi2
        CHECK((dec.st.values[n] + dec.er.values[n]).real() >= -1e-12);
    }
}

TEST_CASE("decompose validates its parameter box") {
    auto chi = MultiplicativeFunction::one();
    CHECK_THROWS_AS(decompose(chi, 10, 101, {1, 10, 10, 5, 10}), std::invalid_argument);
    CHECK_THROWS_AS(decompose(chi, 10, 101, {1, 10, 10, 10, 5}), std::invalid_argument);
    CHECK_THROWS_AS(decompose(chi, 10, 101, {11, 10, 10, 10, 10}), std::invalid_argument);
    CHECK_THROWS_AS(decompose(chi, 10, 101, {0, 10, 10, 10, 10}), std::invalid_argument);
    CHECK_THROWS_AS(decompose(chi, 10, 12, {1, 2, 2, 2, 2}), std::invalid_argument);
    CHECK_THROWS_AS(diagnostics(decompose(chi, 10, 101, {1, 2, 2, 2, 2}), 4),
                    std::invalid_argument);
}
