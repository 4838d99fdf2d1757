#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "corrlab/cyclic.hpp"
#include "corrlab/numtheory.hpp"

namespace corrlab {

/// Completely multiplicative unimodular function, determined by its values
/// on primes. A base rule supplies the default phase for every prime
/// (constant 1, constant -1, seed-hashed phase, or a character lift);
/// explicit per-prime overrides sit on top.
class MultiplicativeFunction {
  public:
    static MultiplicativeFunction one();
    static MultiplicativeFunction liouville();
    /// Independent uniform phase per prime, reproducible from the seed.
    static MultiplicativeFunction random_phases(std::uint64_t seed);
    /// chi(p) = e(j * ind_g(p) / (q-1)) for primes p with p mod q != 0,
    /// where g is the least primitive root of the prime q; phase 1 on
    /// p = q (unimodular lift of the Dirichlet character).
    static MultiplicativeFunction character(std::uint64_t q, std::uint64_t j);
    /// Base rule 1 with the given overrides.
    static MultiplicativeFunction from_prime_phases(std::map<std::uint64_t, cplx> phases,
                                                    std::string name = "custom");

    /// Override one prime's phase. Must be unimodular to 1e-12.
    void set_prime_phase(std::uint64_t p, cplx z);

    cplx prime_phase(std::uint64_t p) const;
    /// Product of prime phases with multiplicity; evaluate(1) = 1.
    cplx evaluate(std::uint64_t n) const;
    const std::string& name() const { return name_; }

    /// Z/Ntilde signal equal to chi on 1..N, zero elsewhere. Uses a
    /// smallest-prime-factor sieve, so cost is O(N) evaluations.
    CyclicSignal truncation(std::uint64_t N, std::uint64_t Ntilde) const;

  private:
    enum class Base { one, liouville, random_seed, character };
    Base base_ = Base::one;
    std::uint64_t seed_ = 0;
    std::uint64_t char_q_ = 0, char_j_ = 0, char_root_ = 0;
    std::map<std::uint64_t, cplx> overrides_;
    std::string name_ = "one";

    cplx base_phase(std::uint64_t p) const;
};

struct FolnerSpec {
    std::vector<std::uint64_t> primes;  // distinct
    int max_exponent = 0;               // E >= 0
};

/// { prod p_i^{e_i} : 0 <= e_i <= E }, sorted ascending. (E+1)^k <= 1e7 and
/// all products must fit in 64 bits.
std::vector<std::uint64_t> folner_set(const FolnerSpec& spec);

/// |a*Phi symmetric-difference Phi| / |Phi|, exact. Members of a*Phi that
/// are not integers count as outside Phi.
double folner_defect(const std::vector<std::uint64_t>& folner, const Rational& a);

/// Finite-stage density estimates |E cap Phi_i| / |Phi_i|; no limit claim.
std::vector<double> mult_density_estimate(const std::function<bool(std::uint64_t)>& member,
                                          const std::vector<FolnerSpec>& specs);

}  // namespace corrlab
