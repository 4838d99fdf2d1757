#include "corrlab/decomposition.hpp"

#include <cmath>
#include <stdexcept>

#include "corrlab/gowers.hpp"
#include "corrlab/numtheory.hpp"

namespace corrlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Validates non-negativity (with ripple clamp) and renormalizes the mean
/// to 1, absorbing accumulated rounding from kernel construction.
Kernel finalize_kernel(CyclicSignal s) {
    double mean = 0.0;
    {
        std::vector<double> re(s.values.size());
        for (std::size_t i = 0; i < s.values.size(); ++i) {
            double v = s.values[i].real();
            if (v < -1e-12) throw std::logic_error("kernel: negative value beyond ripple");
            if (v < 0.0) v = 0.0;
            re[i] = v;
        }
        mean = pairwise_sum(re) / static_cast<double>(s.modulus);
        if (mean <= 0.0) throw std::logic_error("kernel: zero mass");
        for (std::size_t i = 0; i < s.values.size(); ++i) s.values[i] = cplx{re[i] / mean, 0.0};
    }
    return Kernel{std::move(s)};
}

}  // namespace

Kernel fejer_kernel(std::uint64_t Ntilde, std::uint64_t W) {
    if (W < 1 || W > Ntilde) throw std::invalid_argument("fejer_kernel: W out of range");
    CyclicSignal s(Ntilde);
    double dW = static_cast<double>(W);
    double dM = static_cast<double>(Ntilde);
    for (std::uint64_t n = 0; n < Ntilde; ++n) {
        if (n == 0) {
            s.values[n] = cplx{dW, 0.0};
            continue;
        }
        // |sum_{j<W} e(jn/M)|^2 = (sin(pi W n / M) / sin(pi n / M))^2
        double num = std::sin(kPi * dW * static_cast<double>(n) / dM);
        double den = std::sin(kPi * static_cast<double>(n) / dM);
        double v = (num / den) * (num / den) / dW;
        s.values[n] = cplx{v, 0.0};
    }
    return finalize_kernel(std::move(s));
}

Kernel progression_kernel(std::uint64_t Ntilde, std::uint64_t Q, std::uint64_t K) {
    if (K < 1 || K > Ntilde) throw std::invalid_argument("progression_kernel: K out of range");
    if (Q == 0 || Q % Ntilde == 0)
        throw std::invalid_argument("progression_kernel: Q must be nonzero mod the modulus");
    CyclicSignal s(Ntilde);
    double mass = static_cast<double>(Ntilde) / static_cast<double>(K);
    std::uint64_t step = Q % Ntilde;
    std::uint64_t idx = 0;
    for (std::uint64_t k = 0; k < K; ++k) {
        s.values[idx] = cplx{mass, 0.0};
        idx = (idx + step) % Ntilde;
    }
    return finalize_kernel(std::move(s));
}

Kernel kernel_convolve(const Kernel& a, const Kernel& b) {
    return finalize_kernel(convolve(a.signal, b.signal));
}

Decomposition decompose_signal(const CyclicSignal& input, const DecompositionParams& params) {
    std::uint64_t M = input.modulus;
    if (params.K1 < 1 || params.W1 < 1 || params.K2 < 1 || params.W2 < 1 || params.Q < 1)
        throw std::invalid_argument("decompose: parameters must be positive");
    if (params.K2 < params.K1 || params.W2 < params.W1)
        throw std::invalid_argument("decompose: second kernel must refine the first (K2>=K1, W2>=W1)");
    if (params.K1 * params.Q >= M || params.K2 * params.Q >= M)
        throw std::invalid_argument("decompose: K*Q must stay below the modulus");

    Kernel psi1 = kernel_convolve(progression_kernel(M, params.Q, params.K1),
                                  fejer_kernel(M, params.W1));
    Kernel psi2 = kernel_convolve(progression_kernel(M, params.Q, params.K2),
                                  fejer_kernel(M, params.W2));

    CyclicSignal st = convolve(input, psi1.signal);
    CyclicSignal smooth2 = convolve(input, psi2.signal);

    Decomposition dec;
    dec.params = params;
    dec.st = st;
    dec.er = CyclicSignal(M);
    dec.un = CyclicSignal(M);
    for (std::uint64_t n = 0; n < M; ++n) {
        dec.er.values[n] = smooth2.values[n] - st.values[n];
        dec.un.values[n] = input.values[n] - smooth2.values[n];
    }
    return dec;
}

Decomposition decompose(const MultiplicativeFunction& chi, std::uint64_t N, std::uint64_t Ntilde,
                        const DecompositionParams& params) {
    if (!is_prime_u64(Ntilde) || Ntilde <= N)
        throw std::invalid_argument("decompose: modulus must be a prime above N");
    return decompose_signal(chi.truncation(N, Ntilde), params);
}

DecompositionDiagnostics diagnostics(const Decomposition& dec, int s) {
    if (s != 2 && s != 3) throw std::invalid_argument("diagnostics: s must be 2 or 3");
    std::uint64_t M = dec.st.modulus;
    std::uint64_t Q = dec.params.Q % M;
    DecompositionDiagnostics d;
    for (std::uint64_t n = 0; n < M; ++n) {
        double diff = std::abs(dec.st.values[(n + Q) % M] - dec.st.values[n]);
        d.lipschitz_Q = std::max(d.lipschitz_Q, diff);
    }
    d.u2_un = gowers_u2_fourier(dec.un);
    if (s == 3) d.u3_un = gowers_norm_recursive(dec.un, 3);
    std::vector<double> abs_er(M);
    for (std::uint64_t n = 0; n < M; ++n) abs_er[n] = std::abs(dec.er.values[n]);
    d.l1_er = pairwise_sum(abs_er) / static_cast<double>(M);
    return d;
}

}  // namespace corrlab
