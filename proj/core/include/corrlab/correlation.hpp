#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "corrlab/util.hpp"

namespace corrlab {

/// Dense complex matrix, row-major.
struct CMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<cplx> a;

    CMatrix() = default;
    CMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
    cplx& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const cplx& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

std::vector<cplx> matvec(const CMatrix& m, const std::vector<cplx>& v);

/// Weighted point set with two measure-preserving permutations. The
/// weights are forced constant on T-cycles and on S-cycles and sum to 1.
struct FiniteSystem {
    std::vector<double> weights;
    std::vector<std::uint32_t> T, S;

    FiniteSystem(std::vector<double> w, std::vector<std::uint32_t> t, std::vector<std::uint32_t> s);
    std::size_t size() const { return weights.size(); }
};

/// lcm of every cycle length of T and of S.
std::uint64_t system_order(const FiniteSystem& sys);

/// sum_x w(x) f(S^gp(T^g(x))) g(T^g(x)) h(x). Pure permutation-power route,
/// no spectral machinery.
cplx correlation(const FiniteSystem& sys, const std::vector<cplx>& f, const std::vector<cplx>& g,
                 const std::vector<cplx>& h, std::int64_t gamma, std::int64_t gammap);

/// All M x M correlations by the direct route, permutation powers built
/// incrementally. Entry (gamma, gammap).
CMatrix correlation_table(const FiniteSystem& sys, const std::vector<cplx>& f,
                          const std::vector<cplx>& g, const std::vector<cplx>& h);

/// Spectral projections of the composition operator F -> F o perm, indexed
/// by character j in Z/M: closed-form cycle construction, only cycle-length
/// many are nonzero. Requires every cycle length to divide M.
std::map<std::uint64_t, CMatrix> koopman_projections(const std::vector<std::uint32_t>& perm,
                                                     const std::vector<double>& weights,
                                                     std::uint64_t M);

/// Phi(phi, psi) = sum_x w(x) [T_phi(S_psi f . g)](x) h(x), with
/// T_phi = sum_j phi(j) P_j built from the projections of T (and S_psi
/// alike). The pairing with h carries no conjugation.
cplx bilinear_form(const FiniteSystem& sys, const std::vector<cplx>& f, const std::vector<cplx>& g,
                   const std::vector<cplx>& h, const std::vector<cplx>& phi,
                   const std::vector<cplx>& psi);

/// Probability measure on the M characters plus the operator G expressed in
/// the evaluation-function basis: G(xi_gamma) = sum_beta Phi(xi_gamma,
/// xi_beta) xi_{-beta}, so that the lambda-integral of G(xi_gamma).xi_gammap
/// reproduces Phi exactly.
struct SpectralPair {
    std::uint64_t order = 1;                 // M
    std::vector<double> lambda_weights;      // uniform 1/M
    CMatrix G_matrix;                        // column gamma = coefficients of G(xi_gamma)
};

/// Builds (lambda, G) through the operator route (projections and spectral
/// multipliers), never through the direct correlation sums. M <= 1000.
SpectralPair spectral_pair(const FiniteSystem& sys, const std::vector<cplx>& f,
                           const std::vector<cplx>& g, const std::vector<cplx>& h);

/// Evaluation function xi_gamma on the character group, as an array over j.
std::vector<cplx> xi_on_sigma(std::uint64_t gamma, std::uint64_t M);

/// G applied to an arbitrary function on the character group (expanded in
/// the orthonormal xi basis first), returned pointwise on the group.
std::vector<cplx> apply_G(const SpectralPair& pair, const std::vector<cplx>& phi_on_sigma);

/// integral of u.v against lambda (bilinear pairing, no conjugation).
cplx lambda_integrate(const SpectralPair& pair, const std::vector<cplx>& u,
                      const std::vector<cplx>& v);

/// max over all (gamma, gammap) of |direct correlation - numeric
/// integral of G(xi_gamma).xi_gammap dlambda|; the two routes share no code.
double max_identity_error(const SpectralPair& pair, const FiniteSystem& sys,
                          const std::vector<cplx>& f, const std::vector<cplx>& g,
                          const std::vector<cplx>& h);

/// L2(lambda) operator norm of G by power iteration on G*G
/// (200 iterations or 1e-12 stagnation).
double opnorm_G(const SpectralPair& pair);

struct BilinearBoundReport {
    double lhs = 0.0;       // |sum_{g,gp} a_g b_gp correlation(g, gp)|
    double rhs = 0.0;       // opnorm(G) ||sum a xi||_L2 ||sum b xi||_L2
    double opnorm = 0.0;
    bool holds = false;     // lhs <= rhs + 1e-8
};

BilinearBoundReport verify_bilinear_bound(const SpectralPair& pair, const std::vector<cplx>& a,
                                          const std::vector<cplx>& b, const FiniteSystem& sys,
                                          const std::vector<cplx>& f, const std::vector<cplx>& g,
                                          const std::vector<cplx>& h);

/// Variant with the correlation table and opnorm precomputed; pass
/// opnorm <= 0 to have it recomputed. Lets callers amortize both across
/// many coefficient pairs on the same system.
BilinearBoundReport verify_bilinear_bound(const SpectralPair& pair, const std::vector<cplx>& a,
                                          const std::vector<cplx>& b, const CMatrix& corr,
                                          double opnorm);

}  // namespace corrlab
