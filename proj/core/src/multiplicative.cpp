#include "corrlab/multiplicative.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace corrlab {

namespace {

constexpr double kTau = 6.28318530717958647692;

std::uint64_t least_primitive_root(std::uint64_t q) {
    // q is prime; test generators against the prime factors of q-1
    if (q == 2) return 1;
    std::uint64_t phi = q - 1;
    auto factors = factorize(phi);
    for (std::uint64_t g = 2; g < q; ++g) {
        bool ok = true;
        for (const auto& [p, e] : factors) {
            // g^(phi/p) mod q
            std::uint64_t exp = phi / p, r = 1, b = g;
            while (exp) {
                if (exp & 1) r = static_cast<std::uint64_t>((unsigned __int128)r * b % q);
                b = static_cast<std::uint64_t>((unsigned __int128)b * b % q);
                exp >>= 1;
            }
            if (r == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw std::logic_error("least_primitive_root: none found");
}

std::uint64_t discrete_log(std::uint64_t a, std::uint64_t g, std::uint64_t q) {
    std::uint64_t v = 1;
    for (std::uint64_t k = 0; k < q; ++k) {
        if (v == a % q) return k;
        v = static_cast<std::uint64_t>((unsigned __int128)v * g % q);
    }
    throw std::logic_error("discrete_log: not in the cyclic group");
}

void require_unimodular(cplx z) {
    if (std::abs(std::abs(z) - 1.0) > 1e-12)
        throw std::invalid_argument("MultiplicativeFunction: phase must be unimodular");
}

}  // namespace

MultiplicativeFunction MultiplicativeFunction::one() {
    MultiplicativeFunction f;
    f.base_ = Base::one;
    f.name_ = "one";
    return f;
}

MultiplicativeFunction MultiplicativeFunction::liouville() {
    MultiplicativeFunction f;
    f.base_ = Base::liouville;
    f.name_ = "liouville";
    return f;
}

MultiplicativeFunction MultiplicativeFunction::random_phases(std::uint64_t seed) {
    MultiplicativeFunction f;
    f.base_ = Base::random_seed;
    f.seed_ = seed;
    f.name_ = "random(" + std::to_string(seed) + ")";
    return f;
}

MultiplicativeFunction MultiplicativeFunction::character(std::uint64_t q, std::uint64_t j) {
    if (!is_prime_u64(q)) throw std::invalid_argument("character: q must be prime");
    MultiplicativeFunction f;
    f.base_ = Base::character;
    f.char_q_ = q;
    f.char_j_ = j % (q - 1 == 0 ? 1 : q - 1);
    f.char_root_ = least_primitive_root(q);
    f.name_ = "character(" + std::to_string(q) + "," + std::to_string(j) + ")";
    return f;
}

MultiplicativeFunction MultiplicativeFunction::from_prime_phases(
    std::map<std::uint64_t, cplx> phases, std::string name) {
    MultiplicativeFunction f;
    f.base_ = Base::one;
    f.name_ = std::move(name);
    for (const auto& [p, z] : phases) f.set_prime_phase(p, z);
    return f;
}

void MultiplicativeFunction::set_prime_phase(std::uint64_t p, cplx z) {
    if (!is_prime_u64(p)) throw std::invalid_argument("set_prime_phase: p must be prime");
    require_unimodular(z);
    overrides_[p] = z;
}

cplx MultiplicativeFunction::base_phase(std::uint64_t p) const {
    switch (base_) {
        case Base::one: return cplx{1.0, 0.0};
        case Base::liouville: return cplx{-1.0, 0.0};
        case Base::random_seed: {
            double turns = static_cast<double>(split_seed(seed_, p) >> 11) * 0x1.0p-53;
            return std::polar(1.0, kTau * turns);
        }
        case Base::character: {
            if (p % char_q_ == 0) return cplx{1.0, 0.0};
            if (char_q_ == 2) return cplx{1.0, 0.0};
            std::uint64_t ind = discrete_log(p % char_q_, char_root_, char_q_);
            double turns = static_cast<double>(char_j_ * ind % (char_q_ - 1)) /
                           static_cast<double>(char_q_ - 1);
            return std::polar(1.0, kTau * turns);
        }
    }
    return cplx{1.0, 0.0};
}

cplx MultiplicativeFunction::prime_phase(std::uint64_t p) const {
    auto it = overrides_.find(p);
    if (it != overrides_.end()) return it->second;
    return base_phase(p);
}

cplx MultiplicativeFunction::evaluate(std::uint64_t n) const {
    if (n == 0) throw std::invalid_argument("evaluate: n must be positive");
    cplx out{1.0, 0.0};
    for (const auto& [p, e] : factorize(n)) {
        cplx ph = prime_phase(p);
        for (int i = 0; i < e; ++i) out *= ph;
    }
    return out;
}

CyclicSignal MultiplicativeFunction::truncation(std::uint64_t N, std::uint64_t Ntilde) const {
    if (!is_prime_u64(Ntilde)) throw std::invalid_argument("truncation: modulus must be prime");
    if (N > 100000000) throw std::range_error("truncation: N exceeds sieve budget");
    // smallest prime factor sieve; chi(n) = chi(n/spf) * chi(spf)
    std::vector<std::uint32_t> spf(N + 1, 0);
    for (std::uint64_t i = 2; i <= N; ++i) {
        if (spf[i] == 0) {
            for (std::uint64_t m = i; m <= N; m += i)
                if (spf[m] == 0) spf[m] = static_cast<std::uint32_t>(i);
        }
    }
    std::vector<cplx> vals(N);
    if (N >= 1) vals[0] = cplx{1.0, 0.0};
    for (std::uint64_t n = 2; n <= N; ++n) {
        std::uint64_t p = spf[n];
        vals[n - 1] = vals[n / p - 1] * prime_phase(p);
    }
    return truncate_embed(vals, Ntilde);
}

std::vector<std::uint64_t> folner_set(const FolnerSpec& spec) {
    if (spec.max_exponent < 0) throw std::invalid_argument("folner_set: negative exponent bound");
    for (std::size_t i = 0; i < spec.primes.size(); ++i) {
        if (!is_prime_u64(spec.primes[i])) throw std::invalid_argument("folner_set: non-prime entry");
        for (std::size_t j = i + 1; j < spec.primes.size(); ++j)
            if (spec.primes[i] == spec.primes[j])
                throw std::invalid_argument("folner_set: primes must be distinct");
    }
    double size_est = std::pow(static_cast<double>(spec.max_exponent + 1),
                               static_cast<double>(spec.primes.size()));
    if (size_est > 1e7) throw std::range_error("folner_set: size limit exceeded");

    std::vector<std::uint64_t> out{1};
    for (std::uint64_t p : spec.primes) {
        std::vector<std::uint64_t> next;
        next.reserve(out.size() * (spec.max_exponent + 1));
        for (std::uint64_t base : out) {
            unsigned __int128 v = base;
            next.push_back(base);
            for (int e = 1; e <= spec.max_exponent; ++e) {
                v *= p;
                if (v > ~std::uint64_t{0}) throw std::overflow_error("folner_set: product overflow");
                next.push_back(static_cast<std::uint64_t>(v));
            }
        }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double folner_defect(const std::vector<std::uint64_t>& folner, const Rational& a) {
    if (a.num <= 0) throw std::invalid_argument("folner_defect: a must be positive");
    std::uint64_t common = 0;
    for (std::uint64_t x : folner) {
        unsigned __int128 num = (unsigned __int128)a.num * x;
        if (num % static_cast<std::uint64_t>(a.den) != 0) continue;
        unsigned __int128 y = num / static_cast<std::uint64_t>(a.den);
        if (y > ~std::uint64_t{0}) continue;
        if (std::binary_search(folner.begin(), folner.end(), static_cast<std::uint64_t>(y)))
            ++common;
    }
    // |aF| = |F|, so |sym diff| = 2(|F| - |aF cap F|)
    return 2.0 * (1.0 - static_cast<double>(common) / static_cast<double>(folner.size()));
}

std::vector<double> mult_density_estimate(const std::function<bool(std::uint64_t)>& member,
                                          const std::vector<FolnerSpec>& specs) {
    std::vector<double> out(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
        auto phi = folner_set(specs[i]);
        std::uint64_t count = 0;
        for (std::uint64_t x : phi)
            if (member(x)) ++count;
        out[i] = static_cast<double>(count) / static_cast<double>(phi.size());
    }
    return out;
}

}  // namespace corrlab
