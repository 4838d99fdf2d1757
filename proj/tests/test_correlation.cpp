#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "corrlab/correlation.hpp"
#include "corrlab/util.hpp"
#include "doctest.h"

using namespace corrlab;

namespace {

std::vector<cplx> random_values(std::size_t s, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<cplx> v(s);
    for (auto& z : v) z = rng.disk();
    return v;
}

std::vector<std::uint32_t> random_perm(std::size_t s, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::uint32_t> p(s);
    std::iota(p.begin(), p.end(), 0u);
    for (std::size_t i = s; i > 1; --i) std::swap(p[i - 1], p[rng.below(i)]);
    return p;
}

// weights constant on the joint orbits of both permutations
std::vector<double> orbit_weights(const std::vector<std::uint32_t>& T,
                                  const std::vector<std::uint32_t>& S, std::uint64_t seed) {
    std::size_t s = T.size();
    std::vector<int> comp(s, -1);
    int classes = 0;
    for (std::size_t x = 0; x < s; ++x) {
        if (comp[x] >= 0) continue;
        std::vector<std::size_t> stack{x};
        comp[x] = classes;
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            for (std::size_t w : {std::size_t(T[v]), std::size_t(S[v])})
                if (comp[w] < 0) {
                    comp[w] = classes;
                    stack.push_back(w);
                }
        }
        ++classes;
    }
    Rng rng(seed);
    std::vector<double> mass(classes);
    for (auto& m : mass) m = 0.25 + rng.uniform();
    std::vector<double> w(s);
    double total = 0.0;
    for (std::size_t x = 0; x < s; ++x) total += mass[comp[x]];
    for (std::size_t x = 0; x < s; ++x) w[x] = mass[comp[x]] / total;
    return w;
}

FiniteSystem random_system(std::size_t s, std::uint64_t seed, std::uint64_t max_order = 1000) {
    for (std::uint64_t bump = 0;; ++bump) {
        auto T = random_perm(s, split_seed(seed, 2 * bump));
        auto S = random_perm(s, split_seed(seed, 2 * bump + 1));
        FiniteSystem sys(orbit_weights(T, S, split_seed(seed, 1000 + bump)), T, S);
        if (system_order(sys) <= max_order) return sys;
    }
}

}  // namespace

TEST_CASE("finite systems enforce the measure axioms") {
    CHECK_NOTHROW(FiniteSystem({0.5, 0.5}, {1, 0}, {0, 1}));
    CHECK_THROWS_AS(FiniteSystem({0.7, 0.3}, {1, 0}, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(FiniteSystem({0.6, 0.3}, {0, 1}, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(FiniteSystem({0.5, 0.5}, {0, 0}, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(FiniteSystem({}, {}, {}), std::invalid_argument);
    CHECK_THROWS_AS(FiniteSystem({1.0, 0.0}, {0, 1}, {0, 1}), std::invalid_argument);
}

TEST_CASE("system_order is the lcm of all cycle lengths") {
    FiniteSystem sys({0.2, 0.2, 0.2, 0.2, 0.2}, {1, 2, 0, 4, 3}, {0, 1, 2, 3, 4});
    CHECK(system_order(sys) == 6);
    FiniteSystem one({1.0}, {0}, {0});
    CHECK(system_order(one) == 1);
}

TEST_CASE("correlation composes the permutations in the Koopman order") {
    FiniteSystem one({1.0}, {0}, {0});
    std::vector<cplx> c1{cplx(1.0, 0.0)};
    for (int g = 0; g < 4; ++g)
        for (int gp = 0; gp < 4; ++gp)
            CHECK(std::abs(correlation(one, c1, c1, c1, g, gp) - cplx(1.0, 0.0)) <= 1e-15);

    FiniteSystem swap2({0.5, 0.5}, {1, 0}, {1, 0});
    std::vector<cplx> ind{cplx(1.0, 0.0), cplx(0.0, 0.0)};
    CHECK(std::abs(correlation(swap2, ind, ind, ind, 1, 0)) <= 1e-15);
    CHECK(std::abs(correlation(swap2, ind, ind, ind, 0, 0) - cplx(0.5, 0.0)) <= 1e-15);

    // gamma = gammap = 0 is the plain weighted triple product
    auto sys = random_system(5, 3);
    auto f = random_values(5, 31), g = random_values(5, 32), h = random_values(5, 33);
    cplx want{};
    for (std::size_t x = 0; x < 5; ++x) want += sys.weights[x] * f[x] * g[x] * h[x];
    CHECK(std::abs(correlation(sys, f, g, h, 0, 0) - want) <= 1e-12);
}

TEST_CASE("correlation_table matches the single-entry route") {
    auto sys = random_system(6, 8);
    auto f = random_values(6, 81), g = random_values(6, 82), h = random_values(6, 83);
    std::uint64_t M = system_order(sys);
    auto table = correlation_table(sys, f, g, h);
    REQUIRE(table.rows == M);
    REQUIRE(table.cols == M);
    for (std::uint64_t a = 0; a < M; ++a)
        for (std::uint64_t b = 0; b < M; ++b)
            CHECK(std::abs(table.at(a, b) - correlation(sys, f, g, h, a, b)) <= 1e-12);
}

TEST_CASE("koopman projections resolve the identity") {
    // identity permutation: the single projection is the identity matrix
    std::vector<std::uint32_t> id{0, 1, 2, 3};
    std::vector<double> w(4, 0.25);
    auto proj = koopman_projections(id, w, 6);
    REQUIRE(proj.size() == 1);
    REQUIRE(proj.count(0) == 1);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(std::abs(proj.at(0).at(i, j) - (i == j ? cplx(1.0, 0.0) : cplx{})) <= 1e-12);

    // 3-cycle: rank-one projections onto the discrete Fourier vectors
    std::vector<std::uint32_t> cyc{1, 2, 0};
    std::vector<double> w3(3, 1.0 / 3.0);
    auto p3 = koopman_projections(cyc, w3, 3);
    REQUIRE(p3.size() == 3);
    constexpr double kTau = 6.283185307179586476925286766559;
    for (std::uint64_t r = 0; r < 3; ++r) {
        REQUIRE(p3.count(r) == 1);
        const CMatrix& P = p3.at(r);
        // entry (x, y) = e(r (t_x - t_y)/3)/3 with positions t along the cycle
        int pos[3] = {0, 1, 2};  // cycle (0 1 2)
        for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 3; ++y) {
                cplx want = std::polar(1.0 / 3.0, kTau * double(r) * double(pos[x] - pos[y]) / 3.0);
                CHECK(std::abs(P.at(x, y) - want) <= 1e-12);
            }
    }

    CHECK_THROWS_AS(koopman_projections(cyc, w3, 4), std::invalid_argument);
}

TEST_CASE("projection algebra holds on random permutations") {
    for (std::size_t s : {5, 9, 12}) {
        auto perm = random_perm(s, 100 + s);
        std::vector<std::uint32_t> idp(s);
        std::iota(idp.begin(), idp.end(), 0u);
        auto w = orbit_weights(perm, idp, 200 + s);
        // M = lcm of the cycle lengths of perm alone
        FiniteSystem probe(w, perm, idp);
        std::uint64_t M = system_order(probe);
        auto proj = koopman_projections(perm, w, M);

        CMatrix total(s, s);
        for (auto& [j, P] : proj)
            for (std::size_t i = 0; i < s * s; ++i) total.a[i] += P.a[i];
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = 0; j < s; ++j)
                CHECK(std::abs(total.at(i, j) - (i == j ? cplx(1.0, 0.0) : cplx{})) <= 1e-12);

        // orthogonality and weighted self-adjointness
        int checked = 0;
        for (auto& [j1, P1] : proj) {
            for (auto& [j2, P2] : proj) {
                if (checked > 16) break;
                CMatrix prod(s, s);
                for (std::size_t i = 0; i < s; ++i)
                    for (std::size_t k = 0; k < s; ++k) {
                        cplx acc{};
                        for (std::size_t t = 0; t < s; ++t) acc += P1.at(i, t) * P2.at(t, k);
                        prod.at(i, k) = acc;
                    }
                const CMatrix& want = P1;
                for (std::size_t i = 0; i < s && j1 == j2; ++i)
                    for (std::size_t k = 0; k < s; ++k)
                        CHECK(std::abs(prod.at(i, k) - want.at(i, k)) <= 1e-12);
                if (j1 != j2)
                    for (std::size_t i = 0; i < s; ++i)
                        for (std::size_t k = 0; k < s; ++k)
                            CHECK(std::abs(prod.at(i, k)) <= 1e-12);
                ++checked;
            }
            for (std::size_t x = 0; x < s; ++x)
                for (std::size_t y = 0; y < s; ++y)
                    CHECK(std::abs(w[x] * P1.at(x, y) - std::conj(P1.at(y, x)) * w[y]) <= 1e-12);
        }
    }
}

TEST_CASE("bilinear_form specializes to correlations on evaluation functions") {
    auto sys = random_system(5, 77);
    std::uint64_t M = system_order(sys);
    auto f = random_values(5, 71), g = random_values(5, 72), h = random_values(5, 73);

    auto ones = std::vector<cplx>(M, cplx(1.0, 0.0));
    CHECK(std::abs(bilinear_form(sys, f, g, h, ones, ones) - correlation(sys, f, g, h, 0, 0)) <=
          1e-10);

    for (std::uint64_t gam = 0; gam < M; ++gam)
        for (std::uint64_t gp = 0; gp < M; ++gp) {
            cplx lhs = bilinear_form(sys, f, g, h, xi_on_sigma(gam, M), xi_on_sigma(gp, M));
            CHECK(std::abs(lhs - correlation(sys, f, g, h, gam, gp)) <= 1e-10);
        }
}

TEST_CASE("bilinear_form obeys the Cauchy-Schwarz chain") {
    auto sys = random_system(6, 41);
    std::uint64_t M = system_order(sys);
    for (int rep = 0; rep < 20; ++rep) {
        auto f = random_values(6, split_seed(600, 3 * rep));
        auto g = random_values(6, split_seed(600, 3 * rep + 1));
        auto h = random_values(6, split_seed(600, 3 * rep + 2));
        auto phi = random_values(M, split_seed(601, 2 * rep));
        auto psi = random_values(M, split_seed(601, 2 * rep + 1));

        double sup_phi = 0.0, sup_psi = 0.0, sup_g = 0.0, l2f = 0.0, l2h = 0.0;
        for (auto& z : phi) sup_phi = std::max(sup_phi, std::abs(z));
        for (auto& z : psi) sup_psi = std::max(sup_psi, std::abs(z));
        for (auto& z : g) sup_g = std::max(sup_g, std::abs(z));
        for (std::size_t x = 0; x < 6; ++x) {
            l2f += sys.weights[x] * std::norm(f[x]);
            l2h += sys.weights[x] * std::norm(h[x]);
        }
        double bound = sup_phi * sup_psi * std::sqrt(l2f) * sup_g * std::sqrt(l2h);
        CHECK(std::abs(bilinear_form(sys, f, g, h, phi, psi)) <= bound + 1e-9);
    }
}

TEST_CASE("spectral pair satisfies the representation identity") {
    FiniteSystem one({1.0}, {0}, {0});
    std::vector<cplx> c1{cplx(1.0, 0.0)};
    auto p1 = spectral_pair(one, c1, c1, c1);
    CHECK(p1.order == 1);
    CHECK(max_identity_error(p1, one, c1, c1, c1) <= 1e-12);

    FiniteSystem swap2({0.5, 0.5}, {1, 0}, {1, 0});
    std::vector<cplx> ind{cplx(1.0, 0.0), cplx(0.0, 0.0)};
    auto p2 = spectral_pair(swap2, ind, ind, ind);
    CHECK(p2.order == 2);
    CHECK(max_identity_error(p2, swap2, ind, ind, ind) <= 1e-10);

    for (int rep = 0; rep < 10; ++rep) {
        std::size_t s = 2 + rep % 7;
        auto sys = random_system(s, split_seed(700, rep), 60);
        auto f = random_values(s, split_seed(701, rep));
        auto g = random_values(s, split_seed(702, rep));
        auto h = random_values(s, split_seed(703, rep));
        auto pair = spectral_pair(sys, f, g, h);

        double sum = 0.0;
        for (double lw : pair.lambda_weights) {
            CHECK(lw >= 0.0);
            sum += lw;
        }
        CHECK(std::abs(sum - 1.0) <= 1e-12);
        CHECK(max_identity_error(pair, sys, f, g, h) <= 1e-9);
    }
}

TEST_CASE("order beyond the matrix budget is rejected") {
    // cycle lengths 7, 11, 13 force order 1001 > 1000
    std::size_t s = 31;
    std::vector<std::uint32_t> T(s), S(s);
    std::iota(S.begin(), S.end(), 0u);
    std::size_t base = 0;
    for (std::size_t len : {7, 11, 13}) {
        for (std::size_t i = 0; i < len; ++i) T[base + i] = std::uint32_t(base + (i + 1) % len);
        base += len;
    }
    FiniteSystem sys(std::vector<double>(s, 1.0 / double(s)), T, S);
    CHECK(system_order(sys) == 1001);
    auto f = random_values(s, 1);
    CHECK_THROWS_AS(spectral_pair(sys, f, f, f), std::range_error);
    CHECK_THROWS_AS(correlation_table(sys, f, f, f), std::range_error);
}

TEST_CASE("bilinear bound report holds on random coefficient pairs") {
    auto sys = random_system(6, 55);
    std::uint64_t M = system_order(sys);
    auto f = random_values(6, 51), g = random_values(6, 52), h = random_values(6, 53);
    auto pair = spectral_pair(sys, f, g, h);

    auto zero = std::vector<cplx>(M, cplx{});
    auto rz = verify_bilinear_bound(pair, zero, zero, sys, f, g, h);
    CHECK(rz.lhs == 0.0);
    CHECK(rz.holds);

    auto table = correlation_table(sys, f, g, h);
    double op = opnorm_G(pair);

    // single-atom coefficients: lhs is one correlation, norms are 1
    auto d0 = zero, d1 = zero;
    d0[0] = cplx(1.0, 0.0);
    d1[M - 1] = cplx(1.0, 0.0);
    auto rd = verify_bilinear_bound(pair, d0, d1, table, op);
    CHECK(std::abs(rd.lhs - std::abs(table.at(0, M - 1))) <= 1e-12);
    CHECK(std::abs(rd.rhs - op) <= 1e-9);
    CHECK(rd.holds);

    for (int rep = 0; rep < 20; ++rep) {
        auto a = random_values(M, split_seed(801, rep));
        auto b = random_values(M, split_seed(802, rep));
        auto r1 = verify_bilinear_bound(pair, a, b, sys, f, g, h);
        auto r2 = verify_bilinear_bound(pair, a, b, table, op);
        CHECK(r1.holds);
        CHECK(r2.holds);
        CHECK(std::abs(r1.lhs - r2.lhs) <= 1e-12);
        CHECK(std::abs(r1.rhs - r2.rhs) <= 1e-12);
    }
}

TEST_CASE("G sends non-negative combinations to a non-negative pairing") {
    // indicator data: every correlation is >= 0, so the lambda-pairing of
    // G(phi) against psi must stay >= 0 for non-negative xi-combinations
    std::vector<std::uint32_t> T{1, 2, 3, 0, 5, 4};
    std::vector<std::uint32_t> S{0, 2, 1, 4, 3, 5};
    FiniteSystem sys(orbit_weights(T, S, 9), T, S);
    std::uint64_t M = system_order(sys);
    std::vector<cplx> indicator(6);
    indicator[0] = indicator[2] = indicator[5] = cplx(1.0, 0.0);
    auto pair = spectral_pair(sys, indicator, indicator, indicator);

    Rng rng(19);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<cplx> phi(M, cplx{}), psi(M, cplx{});
        for (std::uint64_t gam = 0; gam < M; ++gam) {
            double c = rng.uniform(), d = rng.uniform();
            auto xi = xi_on_sigma(gam, M);
            for (std::uint64_t j = 0; j < M; ++j) {
                phi[j] += c * xi[j];
                psi[j] += d * xi[j];
            }
        }
        cplx pairing = lambda_integrate(pair, apply_G(pair, phi), psi);
        CHECK(pairing.real() >= -1e-9);
        CHECK(std::abs(pairing.imag()) <= 1e-9);
    }
}
