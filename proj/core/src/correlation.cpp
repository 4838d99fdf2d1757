#include "corrlab/correlation.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace corrlab {

namespace {

constexpr double kTau = 6.28318530717958647692;

cplx unit_phase(std::uint64_t num, std::uint64_t den) {
    return std::polar(1.0, kTau * static_cast<double>(num % den) / static_cast<double>(den));
}

std::vector<std::vector<std::uint32_t>> cycles_of(const std::vector<std::uint32_t>& perm) {
    std::size_t s = perm.size();
    std::vector<bool> seen(s, false);
    std::vector<std::vector<std::uint32_t>> out;
    for (std::uint32_t x = 0; x < s; ++x) {
        if (seen[x]) continue;
        std::vector<std::uint32_t> cyc;
        std::uint32_t v = x;
        while (!seen[v]) {
            seen[v] = true;
            cyc.push_back(v);
            v = perm[v];
        }
        out.push_back(std::move(cyc));
    }
    return out;
}

void check_permutation(const std::vector<std::uint32_t>& perm, std::size_t s) {
    if (perm.size() != s) throw std::invalid_argument("FiniteSystem: permutation size mismatch");
    std::vector<bool> hit(s, false);
    for (std::uint32_t v : perm) {
        if (v >= s || hit[v]) throw std::invalid_argument("FiniteSystem: not a permutation");
        hit[v] = true;
    }
}

std::vector<std::uint32_t> perm_power(const std::vector<std::uint32_t>& perm, std::uint64_t k) {
    std::size_t s = perm.size();
    std::vector<std::uint32_t> out(s);
    for (std::uint32_t x = 0; x < s; ++x) out[x] = x;
    std::vector<std::uint32_t> base = perm;
    while (k) {
        if (k & 1) {
            std::vector<std::uint32_t> next(s);
            for (std::uint32_t x = 0; x < s; ++x) next[x] = base[out[x]];
            out = std::move(next);
        }
        std::vector<std::uint32_t> sq(s);
        for (std::uint32_t x = 0; x < s; ++x) sq[x] = base[base[x]];
        base = std::move(sq);
        k >>= 1;
    }
    return out;
}

}  // namespace

std::vector<cplx> matvec(const CMatrix& m, const std::vector<cplx>& v) {
    if (v.size() != m.cols) throw std::invalid_argument("matvec: dimension mismatch");
    std::vector<cplx> out(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i) {
        cplx acc{0.0, 0.0};
        for (std::size_t j = 0; j < m.cols; ++j) acc += m.at(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

FiniteSystem::FiniteSystem(std::vector<double> w, std::vector<std::uint32_t> t,
                           std::vector<std::uint32_t> s)
    : weights(std::move(w)), T(std::move(t)), S(std::move(s)) {
    std::size_t n = weights.size();
    if (n == 0) throw std::invalid_argument("FiniteSystem: empty");
    check_permutation(T, n);
    check_permutation(S, n);
    double total = 0.0;
    for (double x : weights) {
        if (!(x > 0.0)) throw std::invalid_argument("FiniteSystem: weights must be positive");
        total += x;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("FiniteSystem: weights must sum to 1");
    for (const auto* perm : {&T, &S}) {
        for (const auto& cyc : cycles_of(*perm)) {
            for (std::uint32_t v : cyc) {
                if (std::abs(weights[v] - weights[cyc[0]]) > 1e-12)
                    throw std::invalid_argument("FiniteSystem: weights not invariant on cycles");
            }
        }
    }
}

std::uint64_t system_order(const FiniteSystem& sys) {
    std::uint64_t M = 1;
    for (const auto* perm : {&sys.T, &sys.S})
        for (const auto& cyc : cycles_of(*perm)) M = std::lcm(M, static_cast<std::uint64_t>(cyc.size()));
    return M;
}

cplx correlation(const FiniteSystem& sys, const std::vector<cplx>& f, const std::vector<cplx>& g,
                 const std::vector<cplx>& h, std::int64_t gamma, std::int64_t gammap) {
    std::size_t s = sys.size();
    if (f.size() != s || g.size() != s || h.size() != s)
        throw std::invalid_argument("correlation: function size mismatch");
    std::uint64_t M = system_order(sys);
    auto wrap = [M](std::int64_t k) {
        std::int64_t r = k % static_cast<std::int64_t>(M);
        return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(M) : r);
    };
    auto tg = perm_power(sys.T, wrap(gamma));
    auto sg = perm_power(sys.S, wrap(gammap));
    std::vector<cplx> terms(s);
    for (std::size_t x = 0; x < s; ++x)
        terms[x] = sys.weights[x] * f[sg[tg[x]]] * g[tg[x]] * h[x];
    return pairwise_sum(terms);
}

CMatrix correlation_table(const FiniteSystem& sys, const std::vector<cplx>& f,
                          const std::vector<cplx>& g, const std::vector<cplx>& h) {
    std::size_t s = sys.size();
    if (f.size() != s || g.size() != s || h.size() != s)
        throw std::invalid_argument("correlation_table: function size mismatch");
    std::uint64_t M = system_order(sys);
    if (M > 1000) throw std::range_error("correlation_table: order exceeds matrix budget");

    CMatrix out(M, M);
    std::vector<std::uint32_t> tg(s), sg(s);
    for (std::uint32_t x = 0; x < s; ++x) tg[x] = x;
    std::vector<cplx> terms(s);
    for (std::uint64_t gamma = 0; gamma < M; ++gamma) {
        for (std::uint32_t x = 0; x < s; ++x) sg[x] = x;
        for (std::uint64_t gammap = 0; gammap < M; ++gammap) {
            for (std::size_t x = 0; x < s; ++x)
                terms[x] = sys.weights[x] * f[sg[tg[x]]] * g[tg[x]] * h[x];
            out.at(gamma, gammap) = pairwise_sum(terms);
            for (std::size_t x = 0; x < s; ++x) sg[x] = sys.S[sg[x]];
        }
        for (std::size_t x = 0; x < s; ++x) tg[x] = sys.T[tg[x]];
    }
    return out;
}

std::map<std::uint64_t, CMatrix> koopman_projections(const std::vector<std::uint32_t>& perm,
                                                     const std::vector<double>& weights,
                                                     std::uint64_t M) {
    std::size_t s = perm.size();
    if (weights.size() != s) throw std::invalid_argument("koopman_projections: size mismatch");
    std::map<std::uint64_t, CMatrix> out;
    for (const auto& cyc : cycles_of(perm)) {
        std::uint64_t c = cyc.size();
        if (M % c != 0) throw std::invalid_argument("koopman_projections: cycle length must divide M");
        for (std::uint64_t r = 0; r < c; ++r) {
            std::uint64_t j = r * (M / c);
            auto it = out.find(j);
            if (it == out.end()) it = out.emplace(j, CMatrix(s, s)).first;
            CMatrix& P = it->second;
            // eigenvector v_r(x_t) = e(rt/c); projection (1/c) v v^H
            for (std::uint64_t t = 0; t < c; ++t) {
                for (std::uint64_t u = 0; u < c; ++u) {
                    std::uint64_t diff = (r * ((t + c - u) % c)) % c;
                    P.at(cyc[t], cyc[u]) += unit_phase(diff, c) / static_cast<double>(c);
                }
            }
        }
    }
    return out;
}

cplx bilinear_form(const FiniteSystem& sys, const std::vector<cplx>& f, const std::vector<cplx>& g,
                   const std::vector<cplx>& h, const std::vector<cplx>& phi,
                   const std::vector<cplx>& psi) {
    std::size_t s = sys.size();
    std::uint64_t M = system_order(sys);
    if (phi.size() != M || psi.size() != M)
        throw std::invalid_argument("bilinear_form: multiplier arrays must have length M");
    if (f.size() != s || g.size() != s || h.size() != s)
        throw std::invalid_argument("bilinear_form: function size mismatch");

    auto projT = koopman_projections(sys.T, sys.weights, M);
    auto projS = koopman_projections(sys.S, sys.weights, M);
    CMatrix Tphi(s, s), Spsi(s, s);
    for (const auto& [j, P] : projT)
        for (std::size_t i = 0; i < s * s; ++i) Tphi.a[i] += phi[j] * P.a[i];
    for (const auto& [j, P] : projS)
        for (std::size_t i = 0; i < s * s; ++i) Spsi.a[i] += psi[j] * P.a[i];

    std::vector<cplx> u = matvec(Spsi, f);
    for (std::size_t x = 0; x < s; ++x) u[x] *= g[x];
    std::vector<cplx> v = matvec(Tphi, u);
    std::vector<cplx> terms(s);
    for (std::size_t x = 0; x < s; ++x) terms[x] = sys.weights[x] * v[x] * h[x];
    return pairwise_sum(terms);
}

std::vector<cplx> xi_on_sigma(std::uint64_t gamma, std::uint64_t M) {
    std::vector<cplx> xi(M);
    for (std::uint64_t j = 0; j < M; ++j) xi[j] = unit_phase(j * (gamma % M), M);
    return xi;
}

SpectralPair spectral_pair(const FiniteSystem& sys, const std::vector<cplx>& f,
                           const std::vector<cplx>& g, const std::vector<cplx>& h) {
    std::uint64_t M = system_order(sys);
    if (M > 1000) throw std::range_error("spectral_pair: order exceeds matrix budget");
    std::size_t s = sys.size();
    if (f.size() != s || g.size() != s || h.size() != s)
        throw std::invalid_argument("spectral_pair: function size mismatch");

    auto projT = koopman_projections(sys.T, sys.weights, M);
    auto projS = koopman_projections(sys.S, sys.weights, M);

    // spectral multipliers for every evaluation function: T_{xi_gamma} =
    // sum_j e(j gamma / M) P_j; only cycle-borne j contribute
    std::vector<CMatrix> Tops(M, CMatrix(s, s)), Sops(M, CMatrix(s, s));
    for (std::uint64_t gamma = 0; gamma < M; ++gamma) {
        for (const auto& [j, P] : projT) {
            cplx w = unit_phase(j * gamma, M);
            for (std::size_t i = 0; i < s * s; ++i) Tops[gamma].a[i] += w * P.a[i];
        }
        for (const auto& [j, P] : projS) {
            cplx w = unit_phase(j * gamma, M);
            for (std::size_t i = 0; i < s * s; ++i) Sops[gamma].a[i] += w * P.a[i];
        }
    }

    // Phi(xi_gamma, xi_beta) through the operator route
    CMatrix Phi(M, M);
    for (std::uint64_t beta = 0; beta < M; ++beta) {
        std::vector<cplx> u = matvec(Sops[beta], f);
        for (std::size_t x = 0; x < s; ++x) u[x] *= g[x];
        for (std::uint64_t gamma = 0; gamma < M; ++gamma) {
            std::vector<cplx> v = matvec(Tops[gamma], u);
            std::vector<cplx> terms(s);
            for (std::size_t x = 0; x < s; ++x) terms[x] = sys.weights[x] * v[x] * h[x];
            Phi.at(gamma, beta) = pairwise_sum(terms);
        }
    }

    SpectralPair pair;
    pair.order = M;
    pair.lambda_weights.assign(M, 1.0 / static_cast<double>(M));
    pair.G_matrix = CMatrix(M, M);
    // G(xi_gamma) = sum_beta Phi(xi_gamma, xi_beta) xi_{-beta}: coefficient
    // of xi_alpha in column gamma is Phi(gamma, (M - alpha) mod M)
    for (std::uint64_t gamma = 0; gamma < M; ++gamma)
        for (std::uint64_t alpha = 0; alpha < M; ++alpha)
            pair.G_matrix.at(alpha, gamma) = Phi.at(gamma, (M - alpha) % M);
    return pair;
}

std::vector<cplx> apply_G(const SpectralPair& pair, const std::vector<cplx>& phi_on_sigma) {
    std::uint64_t M = pair.order;
    if (phi_on_sigma.size() != M) throw std::invalid_argument("apply_G: size mismatch");
    // coefficients in the orthonormal xi basis: c_gamma = <phi, xi_gamma>
    std::vector<cplx> coef(M);
    for (std::uint64_t gamma = 0; gamma < M; ++gamma) {
        std::vector<cplx> terms(M);
        for (std::uint64_t j = 0; j < M; ++j)
            terms[j] = phi_on_sigma[j] * std::conj(unit_phase(j * gamma, M)) * pair.lambda_weights[j];
        coef[gamma] = pairwise_sum(terms);
    }
    std::vector<cplx> img_coef = matvec(pair.G_matrix, coef);
    std::vector<cplx> out(M);
    for (std::uint64_t j = 0; j < M; ++j) {
        std::vector<cplx> terms(M);
        for (std::uint64_t alpha = 0; alpha < M; ++alpha)
            terms[alpha] = img_coef[alpha] * unit_phase(j * alpha, M);
        out[j] = pairwise_sum(terms);
    }
    return out;
}

cplx lambda_integrate(const SpectralPair& pair, const std::vector<cplx>& u,
                      const std::vector<cplx>& v) {
    std::uint64_t M = pair.order;
    if (u.size() != M || v.size() != M) throw std::invalid_argument("lambda_integrate: size mismatch");
    std::vector<cplx> terms(M);
    for (std::uint64_t j = 0; j < M; ++j) terms[j] = u[j] * v[j] * pair.lambda_weights[j];
    return pairwise_sum(terms);
}

double max_identity_error(const SpectralPair& pair, const FiniteSystem& sys,
                          const std::vector<cplx>& f, const std::vector<cplx>& g,
                          const std::vector<cplx>& h) {
    std::uint64_t M = pair.order;
    // G(xi_gamma) pointwise on the character group, from the stored basis
    // coefficients
    std::vector<std::vector<cplx>> Gfun(M, std::vector<cplx>(M));
    for (std::uint64_t gamma = 0; gamma < M; ++gamma) {
        for (std::uint64_t j = 0; j < M; ++j) {
            std::vector<cplx> terms(M);
            for (std::uint64_t alpha = 0; alpha < M; ++alpha)
                terms[alpha] = pair.G_matrix.at(alpha, gamma) * unit_phase(j * alpha, M);
            Gfun[gamma][j] = pairwise_sum(terms);
        }
    }
    CMatrix direct = correlation_table(sys, f, g, h);
    double worst = 0.0;
    for (std::uint64_t gamma = 0; gamma < M; ++gamma) {
        for (std::uint64_t gammap = 0; gammap < M; ++gammap) {
            cplx rhs = lambda_integrate(pair, Gfun[gamma], xi_on_sigma(gammap, M));
            worst = std::max(worst, std::abs(direct.at(gamma, gammap) - rhs));
        }
    }
    return worst;
}

double opnorm_G(const SpectralPair& pair) {
    std::uint64_t M = pair.order;
    // power iteration on G^H G with a fixed seeded start
    Rng rng(0x9d2c5680u);
    std::vector<cplx> v(M);
    double nrm = 0.0;
    for (auto& z : v) z = cplx{rng.gaussian(), rng.gaussian()};
    for (const auto& z : v) nrm += std::norm(z);
    nrm = std::sqrt(nrm);
    for (auto& z : v) z /= nrm;

    double prev = 0.0;
    for (int it = 0; it < 200; ++it) {
        // w = G v; u = G^H w
        std::vector<cplx> w = matvec(pair.G_matrix, v);
        std::vector<cplx> u(M, cplx{0.0, 0.0});
        for (std::size_t i = 0; i < M; ++i)
            for (std::size_t j = 0; j < M; ++j) u[j] += std::conj(pair.G_matrix.at(i, j)) * w[i];
        double len = 0.0;
        for (const auto& z : u) len += std::norm(z);
        len = std::sqrt(len);
        if (len == 0.0) return 0.0;
        double est = std::sqrt(len);  // ||G^H G v|| -> lambda_max, opnorm = sqrt
        for (std::size_t i = 0; i < M; ++i) v[i] = u[i] / len;
        if (it > 2 && std::abs(est - prev) < 1e-12) {
            prev = est;
            break;
        }
        prev = est;
    }
    return prev;
}

BilinearBoundReport verify_bilinear_bound(const SpectralPair& pair, const std::vector<cplx>& a,
                                          const std::vector<cplx>& b, const CMatrix& corr,
                                          double opnorm) {
    std::uint64_t M = pair.order;
    if (a.size() != M || b.size() != M)
        throw std::invalid_argument("verify_bilinear_bound: coefficient size mismatch");
    if (corr.rows != M || corr.cols != M)
        throw std::invalid_argument("verify_bilinear_bound: correlation table size mismatch");

    std::vector<cplx> terms(M * M);
    for (std::uint64_t gamma = 0; gamma < M; ++gamma)
        for (std::uint64_t gammap = 0; gammap < M; ++gammap)
            terms[gamma * M + gammap] = a[gamma] * b[gammap] * corr.at(gamma, gammap);
    double lhs = std::abs(pairwise_sum(terms));

    auto l2_of_combo = [&](const std::vector<cplx>& coefs) {
        // ||sum_gamma c_gamma xi_gamma||_{L2(lambda)}
        std::vector<double> vals(M);
        for (std::uint64_t j = 0; j < M; ++j) {
            std::vector<cplx> t(M);
            for (std::uint64_t gamma = 0; gamma < M; ++gamma)
                t[gamma] = coefs[gamma] * unit_phase(j * gamma, M);
            vals[j] = std::norm(pairwise_sum(t)) * pair.lambda_weights[j];
        }
        return std::sqrt(pairwise_sum(vals));
    };

    BilinearBoundReport rep;
    rep.opnorm = opnorm > 0.0 ? opnorm : opnorm_G(pair);
    rep.lhs = lhs;
    rep.rhs = rep.opnorm * l2_of_combo(a) * l2_of_combo(b);
    rep.holds = rep.lhs <= rep.rhs + 1e-8;
    return rep;
}

BilinearBoundReport verify_bilinear_bound(const SpectralPair& pair, const std::vector<cplx>& a,
                                          const std::vector<cplx>& b, const FiniteSystem& sys,
                                          const std::vector<cplx>& f, const std::vector<cplx>& g,
                                          const std::vector<cplx>& h) {
    return verify_bilinear_bound(pair, a, b, correlation_table(sys, f, g, h), 0.0);
}

}  // namespace corrlab
