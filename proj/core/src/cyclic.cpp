#include "corrlab/cyclic.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "corrlab/numtheory.hpp"

namespace corrlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_pow2(std::uint64_t n) { return n && (n & (n - 1)) == 0; }

std::uint64_t next_pow2(std::uint64_t n) {
    std::uint64_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

/// Radix-2 in-place FFT with sign -1 (forward). Twiddles precomputed.
struct Pow2Fft {
    std::size_t L = 1;
    std::vector<cplx> roots;  // roots[k] = e(-k/L), k < L/2

    explicit Pow2Fft(std::size_t len) : L(len) {
        roots.resize(L / 2 + 1);
        for (std::size_t k = 0; k <= L / 2; ++k)
            roots[k] = std::polar(1.0, -2.0 * kPi * static_cast<double>(k) / static_cast<double>(L));
    }

    void forward(std::vector<cplx>& a) const {
        // bit-reversal permutation
        for (std::size_t i = 1, j = 0; i < L; ++i) {
            std::size_t bit = L >> 1;
            for (; j & bit; bit >>= 1) j ^= bit;
            j ^= bit;
            if (i < j) std::swap(a[i], a[j]);
        }
        for (std::size_t len = 2; len <= L; len <<= 1) {
            std::size_t stride = L / len;
            for (std::size_t i = 0; i < L; i += len) {
                for (std::size_t k = 0; k < len / 2; ++k) {
                    cplx w = roots[k * stride];
                    cplx u = a[i + k];
                    cplx v = a[i + k + len / 2] * w;
                    a[i + k] = u + v;
                    a[i + k + len / 2] = u - v;
                }
            }
        }
    }

    void inverse(std::vector<cplx>& a) const {
        for (auto& z : a) z = std::conj(z);
        forward(a);
        double inv = 1.0 / static_cast<double>(L);
        for (auto& z : a) z = std::conj(z) * inv;
    }
};

/// Chirp-transform plan for one modulus M: the length-M transform with
/// sign -1 becomes a cyclic convolution of length L = next_pow2(2M-1).
/// chirp[t] = e(-t^2 / 2M) with t^2 reduced mod 2M to keep the angle small.
struct TransformPlan {
    std::uint64_t M;
    bool direct_pow2;
    std::unique_ptr<Pow2Fft> fft;
    std::vector<cplx> chirp;        // size M
    std::vector<cplx> chirp_fft;    // FFT of the conjugate-chirp sequence, size L

    explicit TransformPlan(std::uint64_t mod) : M(mod), direct_pow2(is_pow2(mod)) {
        if (direct_pow2) {
            fft = std::make_unique<Pow2Fft>(M);
            return;
        }
        std::size_t L = next_pow2(2 * M - 1);
        fft = std::make_unique<Pow2Fft>(L);
        chirp.resize(M);
        for (std::uint64_t t = 0; t < M; ++t) {
            std::uint64_t tsq = static_cast<std::uint64_t>(((unsigned __int128)t * t) % (2 * M));
            chirp[t] = std::polar(1.0, -kPi * static_cast<double>(tsq) / static_cast<double>(M));
        }
        std::vector<cplx> b(L, cplx{0.0, 0.0});
        b[0] = std::conj(chirp[0]);
        for (std::uint64_t t = 1; t < M; ++t) {
            b[t] = std::conj(chirp[t]);
            b[L - t] = std::conj(chirp[t]);
        }
        fft->forward(b);
        chirp_fft = std::move(b);
    }

    /// out[xi] = sum_x in[x] e(-x*xi/M), unnormalized.
    std::vector<cplx> transform(const std::vector<cplx>& in) const {
        if (M == 1) return in;
        if (direct_pow2) {
            std::vector<cplx> a = in;
            fft->forward(a);
            return a;
        }
        std::size_t L = fft->L;
        std::vector<cplx> a(L, cplx{0.0, 0.0});
        for (std::uint64_t x = 0; x < M; ++x) a[x] = in[x] * chirp[x];
        fft->forward(a);
        for (std::size_t i = 0; i < L; ++i) a[i] *= chirp_fft[i];
        fft->inverse(a);
        std::vector<cplx> out(M);
        for (std::uint64_t xi = 0; xi < M; ++xi) out[xi] = a[xi] * chirp[xi];
        return out;
    }
};

std::shared_ptr<const TransformPlan> plan_for(std::uint64_t M) {
    static std::mutex mu;
    static std::map<std::uint64_t, std::shared_ptr<const TransformPlan>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(M);
    if (it != cache.end()) return it->second;
    auto plan = std::make_shared<const TransformPlan>(M);
    cache.emplace(M, plan);
    return plan;
}

}  // namespace

CyclicSignal::CyclicSignal(std::uint64_t M, std::vector<cplx> v) : modulus(M), values(std::move(v)) {
    if (modulus == 0) throw std::invalid_argument("CyclicSignal: modulus must be positive");
    if (values.size() != modulus) throw std::invalid_argument("CyclicSignal: length must equal modulus");
}

CyclicSignal CyclicSignal::constant(std::uint64_t M, cplx z) {
    CyclicSignal f(M);
    for (auto& v : f.values) v = z;
    return f;
}

CyclicSignal CyclicSignal::point_mass(std::uint64_t M) {
    CyclicSignal f(M);
    f.values[0] = cplx{static_cast<double>(M), 0.0};
    return f;
}

cplx CyclicSignal::mean() const {
    return pairwise_sum(values) / static_cast<double>(modulus);
}

double CyclicSignal::sup_norm() const {
    double m = 0.0;
    for (const cplx& v : values) m = std::max(m, std::abs(v));
    return m;
}

void CyclicSignal::check_finite() const {
    for (const cplx& v : values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::domain_error("CyclicSignal: non-finite value");
    }
}

std::uint64_t choose_modulus(std::uint64_t N, std::uint64_t l) {
    if (N == 0 || l == 0) throw std::invalid_argument("choose_modulus: N and l must be positive");
    unsigned __int128 bound = (unsigned __int128)10 * l * N;
    if (bound > (unsigned __int128)1 << 62) throw std::range_error("choose_modulus: bound overflow");
    return next_prime_above(static_cast<std::uint64_t>(bound));
}

Spectrum dft(const CyclicSignal& f) {
    auto plan = plan_for(f.modulus);
    std::vector<cplx> out = plan->transform(f.values);
    double inv = 1.0 / static_cast<double>(f.modulus);
    for (auto& z : out) z *= inv;
    return Spectrum{f.modulus, std::move(out)};
}

CyclicSignal inverse_dft(const Spectrum& s) {
    // sum with sign +1 via the conjugation trick
    auto plan = plan_for(s.modulus);
    std::vector<cplx> tmp(s.coefficients.size());
    for (std::size_t i = 0; i < tmp.size(); ++i) tmp[i] = std::conj(s.coefficients[i]);
    std::vector<cplx> out = plan->transform(tmp);
    for (auto& z : out) z = std::conj(z);
    return CyclicSignal{s.modulus, std::move(out)};
}

CyclicSignal convolve(const CyclicSignal& f, const CyclicSignal& g) {
    if (f.modulus != g.modulus) throw std::invalid_argument("convolve: modulus mismatch");
    Spectrum fs = dft(f);
    Spectrum gs = dft(g);
    for (std::size_t i = 0; i < fs.coefficients.size(); ++i) fs.coefficients[i] *= gs.coefficients[i];
    return inverse_dft(fs);
}

CyclicSignal truncate_embed(const std::vector<cplx>& values, std::uint64_t Ntilde) {
    if (Ntilde <= values.size()) throw std::invalid_argument("truncate_embed: modulus must exceed N");
    CyclicSignal out(Ntilde);
    for (std::size_t i = 0; i < values.size(); ++i) out.values[i + 1] = values[i];
    return out;
}

}  // namespace corrlab
