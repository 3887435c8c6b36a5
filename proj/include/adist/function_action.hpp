#pragma once

#include "adist/pd_poly.hpp"

namespace adist {

/**
 * Element of the coordinate ring V[G] of a toral group: a (Laurent) polynomial
 * in T_1..T_N.  Negative exponents are allowed on multiplicative coordinates
 * only.
 */
class GroupFunction {
public:
    using Exponent = std::vector<long>;

    GroupFunction(Group group, unsigned long prime);

    static GroupFunction monomial(const Group& g, unsigned long prime, const Exponent& e,
                                  const ValuedRational& c);

    const Group& group() const { return group_; }
    unsigned long prime() const { return p_; }
    const std::map<Exponent, ValuedRational>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    long degree() const;  // max sum of |exponents|

    void add_term(const Exponent& e, const ValuedRational& c);
    GroupFunction& operator+=(const GroupFunction& o);
    friend GroupFunction operator+(GroupFunction a, const GroupFunction& b) { return a += b; }
    GroupFunction scaled(const ValuedRational& c) const;
    friend GroupFunction operator*(const GroupFunction& a, const GroupFunction& b);

    friend bool operator==(const GroupFunction& a, const GroupFunction& b) {
        return a.group_ == b.group_ && a.terms_ == b.terms_;
    }

    /// Value at the identity point (0 on additive, 1 on multiplicative coordinates).
    ValuedRational at_identity() const;

    std::string str() const;

private:
    Group group_;
    unsigned long p_;
    std::map<Exponent, ValuedRational> terms_;
};

/**
 * The action of D^(m)(G) on V[G]: u pairs against the divided-power Taylor
 * coefficients of f at the identity.  On basis elements,
 *   Ga:  xi^<k>(T^j) = q_k! C(j,k) evaluated at 0, i.e. q_k! delta_{jk};
 *   Gm:  xi^<k>(T^j) = q_k! C(j,k).
 */
ValuedRational act(const DistElement& u, const GroupFunction& f);

/// Taylor expansion rho_m(f) = sum_{|k| <= n} <xi^<k>, f> t^{k}.
PdPolynomial taylor(const GroupFunction& f, unsigned order, const LevelContext& ctx);

/// Rebuild a polynomial from its level-infinity Taylor data (exact on degree <= n).
GroupFunction from_taylor(const PdPolynomial& series, const Group& g);

}  // namespace adist
