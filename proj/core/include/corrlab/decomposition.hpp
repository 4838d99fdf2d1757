#pragma once

#include <cstdint>
#include <optional>

#include "corrlab/cyclic.hpp"
#include "corrlab/multiplicative.hpp"

namespace corrlab {

/// Non-negative real signal with mean 1. Construction clamps FFT ripple in
/// [-1e-12, 0) to zero and rejects anything more negative.
struct Kernel {
    CyclicSignal signal;
};

/// F_W(n) = (1/W) |sum_{j<W} e(jn/M)|^2; triangular Fourier coefficients
/// supported on |xi| < W.
Kernel fejer_kernel(std::uint64_t Ntilde, std::uint64_t W);

/// Mass M/K on each of the K distinct residues {kQ mod M : 0 <= k < K}.
/// Requires K <= M and Q not divisible by M (the support must have K
/// distinct points).
Kernel progression_kernel(std::uint64_t Ntilde, std::uint64_t Q, std::uint64_t K);

/// Product of two kernels under convolution; again a kernel.
Kernel kernel_convolve(const Kernel& a, const Kernel& b);

struct DecompositionParams {
    std::uint64_t Q = 1;
    std::uint64_t K1 = 1, W1 = 1;
    std::uint64_t K2 = 1, W2 = 1;
};

/// st + un + er = input pointwise; st = input * psi1, st + er = input * psi2
/// with psi_i = progression(Q,K_i) * fejer(W_i). |st| <= 1 and
/// |un|, |er| <= 2 whenever the input is 1-bounded.
struct Decomposition {
    CyclicSignal st, un, er;
    DecompositionParams params;
};

/// Linear in the input signal.
Decomposition decompose_signal(const CyclicSignal& input, const DecompositionParams& params);

/// Decomposes the truncation of chi to 1..N inside Z/Ntilde.
Decomposition decompose(const MultiplicativeFunction& chi, std::uint64_t N, std::uint64_t Ntilde,
                        const DecompositionParams& params);

struct DecompositionDiagnostics {
    double lipschitz_Q = 0.0;           // max_n |st(n+Q) - st(n)|, provably <= 2/K1
    double u2_un = 0.0;
    std::optional<double> u3_un;        // only when requested with s = 3
    double l1_er = 0.0;                 // E_n |er(n)|
};

/// s selects the uniformity order measured on the un part (2 or 3).
DecompositionDiagnostics diagnostics(const Decomposition& dec, int s);

}  // namespace corrlab
