#pragma once

#include <optional>
#include <string>

#include "corrlab/cyclic.hpp"

namespace corrlab {

enum class GowersMethod { direct, recursive, fourier };

std::string to_string(GowersMethod m);

struct GowersReport {
    double norm_u2 = 0.0;
    double norm_u3 = 0.0;
    GowersMethod method = GowersMethod::recursive;
};

/// Reference implementation straight from the defining average:
/// ||f||^{2^d} = E_{x,h_1..h_d} prod_w C^{|w|} f(x + w.h). Requires
/// M^{d+1} <= 1e8 and d in {1,2,3}.
double gowers_norm_direct(const CyclicSignal& f, int d);

/// ( sum_xi |f_hat(xi)|^4 )^{1/4}, O(M log M).
double gowers_u2_fourier(const CyclicSignal& f);

/// ||f||_{U^d}^{2^d} = E_h ||D_h f||_{U^{d-1}}^{2^{d-1}} with
/// D_h f(x) = f(x+h) conj(f(x)), base ||g||_{U^1} = |E g|. d <= 4;
/// the d=3 inner norms go through gowers_u2_fourier.
double gowers_norm_recursive(const CyclicSignal& f, int d);

/// U^2 and U^3 of one signal by the chosen method. "fourier" computes
/// U^2 on the Fourier side and U^3 recursively.
GowersReport gowers_report(const CyclicSignal& f, GowersMethod method);

struct LinearFormsAverage {
    cplx value;
    struct BoundParts {
        std::optional<double> c2_candidate;
        double min_u3_root = 0.0;
        double tail = 0.0;  // 2/modulus
    } bound_parts;
};

/// E_{m,n} 1_{[1..N]}(n) a0(m) a1(m+l1 n) a2(m+l2 n) a3(m+l3 n) over the
/// common modulus, plus the components of the U^3 bound it is tested
/// against: min_j ||a_j||_{U^3}^{1/2} and the 2/modulus tail.
LinearFormsAverage linear_forms_average(const CyclicSignal& a0, const CyclicSignal& a1,
                                        const CyclicSignal& a2, const CyclicSignal& a3,
                                        std::uint64_t l1, std::uint64_t l2, std::uint64_t l3,
                                        std::uint64_t N);

}  // namespace corrlab
