#pragma once

#include <cstdint>
#include <vector>

#include "corrlab/util.hpp"

namespace corrlab {

/// Complex-valued function on Z/M, residues 0..M-1.
struct CyclicSignal {
    std::uint64_t modulus = 1;
    std::vector<cplx> values;

    CyclicSignal() : values(1) {}
    explicit CyclicSignal(std::uint64_t M) : modulus(M), values(M) {}
    CyclicSignal(std::uint64_t M, std::vector<cplx> v);

    static CyclicSignal constant(std::uint64_t M, cplx z);
    /// M * indicator of {0}; the convolution identity.
    static CyclicSignal point_mass(std::uint64_t M);

    cplx mean() const;
    double sup_norm() const;
    /// Throws if any stored value is NaN or infinite.
    void check_finite() const;
};

/// Fourier coefficients under the averaging normalization
/// f_hat(xi) = E_x f(x) e(-x*xi/M).
struct Spectrum {
    std::uint64_t modulus = 1;
    std::vector<cplx> coefficients;
};

/// Least prime strictly greater than 10*l*N.
std::uint64_t choose_modulus(std::uint64_t N, std::uint64_t l);

/// O(M log M) for every M (chirp-transform reduction to a padded
/// power-of-two length; plans are cached per modulus).
Spectrum dft(const CyclicSignal& f);

/// f(x) = sum_xi f_hat(xi) e(+x*xi/M); exact inverse of dft.
CyclicSignal inverse_dft(const Spectrum& s);

/// (f*g)(n) = E_k f(n-k) g(k), computed on the Fourier side.
CyclicSignal convolve(const CyclicSignal& f, const CyclicSignal& g);

/// Places values(n) at residue n for n = 1..N, zero at 0 and above N.
/// values[i] is the value at integer i+1.
CyclicSignal truncate_embed(const std::vector<cplx>& values, std::uint64_t Ntilde);

}  // namespace corrlab
