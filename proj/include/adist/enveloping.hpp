#pragma once

#include "adist/dist_elem.hpp"

namespace adist {

/**
 * Element of U(Lie(G) (x) K) in the ordered power basis e^a h^b f^c.  This is
 * the straightening arena for reductive multiplication; coefficients are
 * rationals tagged with the ambient prime.
 */
class EnvElement {
public:
    EnvElement(std::shared_ptr<const ChevalleyDatum> datum, unsigned long prime)
        : datum_(std::move(datum)), p_(prime) {}

    const std::shared_ptr<const ChevalleyDatum>& datum() const { return datum_; }
    unsigned long prime() const { return p_; }
    const std::map<MultiIndex, ValuedRational>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    long degree() const;

    void add_term(const MultiIndex& k, const ValuedRational& c);
    EnvElement& operator+=(const EnvElement& o);
    EnvElement& operator-=(const EnvElement& o);
    friend EnvElement operator+(EnvElement a, const EnvElement& b) { return a += b; }
    friend EnvElement operator-(EnvElement a, const EnvElement& b) { return a -= b; }
    EnvElement scaled(const ValuedRational& c) const;

    static EnvElement unit(std::shared_ptr<const ChevalleyDatum> d, unsigned long p);
    static EnvElement generator(std::shared_ptr<const ChevalleyDatum> d, unsigned long p,
                                unsigned index, std::uint32_t power = 1);

    friend bool operator==(const EnvElement& a, const EnvElement& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const EnvElement& a, const EnvElement& b) { return !(a == b); }

private:
    std::shared_ptr<const ChevalleyDatum> datum_;
    unsigned long p_;
    std::map<MultiIndex, ValuedRational> terms_;
};

/// PBW straightening product.
EnvElement env_mul(const EnvElement& a, const EnvElement& b);
EnvElement env_commutator(const EnvElement& a, const EnvElement& b);
/// x^e as repeated env_mul.
EnvElement env_pow(const EnvElement& a, unsigned long e);

/// Divided/binomial PBW coordinates at level ctx.m -> ordered power basis over K.
EnvElement dist_to_env(const DistElement& u);
/// Ordered power basis -> divided/binomial PBW coordinates at level ctx.m.
DistElement env_to_dist(const EnvElement& a, const Group& g, const LevelContext& ctx);

/// Signed Stirling numbers of the first kind: (x)_n = sum_j s1(n,j) x^j.
const mpz_class& stirling1(unsigned long n, unsigned long j);
/// Stirling numbers of the second kind: x^n = sum_j S2(n,j) (x)_j.
const mpz_class& stirling2(unsigned long n, unsigned long j);

/**
 * The binomial polynomial C(x + shift, k) expanded in the power basis of a
 * single torus generator: a dense coefficient vector of length k+1.
 */
std::vector<ValuedRational> shifted_binomial_in_powers(long shift, unsigned long k, unsigned long p);

}  // namespace adist
