#pragma once

#include "adist/dist_elem.hpp"

namespace adist {

/**
 * Element of the truncated divided-power algebra P^n_(m)(G): a linear
 * combination of monomials t^{k} with |k| <= n.  The basis is dual to the
 * xi^<k> of DistElement.
 */
class PdPolynomial {
public:
    PdPolynomial(LevelContext ctx, unsigned rank, unsigned order)
        : ctx_(ctx), rank_(rank), order_(order) {}

    static PdPolynomial one(const LevelContext& ctx, unsigned rank, unsigned order);
    static PdPolynomial monomial(const LevelContext& ctx, unsigned rank, unsigned order,
                                 const MultiIndex& k);

    const LevelContext& ctx() const { return ctx_; }
    unsigned rank() const { return rank_; }
    unsigned order() const { return order_; }
    const std::map<MultiIndex, ValuedRational>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    ValuedRational coefficient(const MultiIndex& k) const;
    void add_term(const MultiIndex& k, const ValuedRational& c);

    PdPolynomial& operator+=(const PdPolynomial& o);
    friend PdPolynomial operator+(PdPolynomial a, const PdPolynomial& b) { return a += b; }
    PdPolynomial scaled(const ValuedRational& c) const;

    friend bool operator==(const PdPolynomial& a, const PdPolynomial& b) {
        return a.ctx_ == b.ctx_ && a.rank_ == b.rank_ && a.order_ == b.order_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const PdPolynomial& a, const PdPolynomial& b) { return !(a == b); }

    std::string str() const;

private:
    LevelContext ctx_;
    unsigned rank_;
    unsigned order_;
    std::map<MultiIndex, ValuedRational> terms_;
};

/// t^{k'} t^{k''} = <k'+k''; k'> t^{k'+k''}, truncated past the order bound.
PdPolynomial pd_mul(const PdPolynomial& a, const PdPolynomial& b);

/// (x+y)^{k} = sum {k; k'} x^{k'} y^{k''}: the list of (k', k'', coefficient).
struct SumExpandTerm {
    unsigned long kp;
    unsigned long kpp;
    ValuedRational coeff;
};
std::vector<SumExpandTerm> pd_sum_expand(unsigned long k, const LevelContext& ctx);

/// One tensor term of a comultiplication expansion.
struct TensorTerm {
    MultiIndex left;
    MultiIndex right;
    ValuedRational coeff;
};

/// delta^{n,n'}(t^{k}) for the additive group (gamma term vanishes).
std::vector<TensorTerm> comul_additive(const MultiIndex& k, unsigned n, unsigned np,
                                       const LevelContext& ctx);

/// delta^{n,n'}(tau^{l}) for the multiplicative group, expanded symbolically
/// from mu#(tau) = tau(x)1 + 1(x)tau + tau(x)tau.
std::vector<TensorTerm> comul_multiplicative(unsigned long l, unsigned n, unsigned np,
                                             const LevelContext& ctx);

/// Comultiplication of a full monomial of a toral group (tensor over coordinates).
std::vector<TensorTerm> comul_toral(const Group& g, const MultiIndex& k, unsigned n, unsigned np,
                                    const LevelContext& ctx);

/// Duality pairing <xi^<k>, t^{k'}> = delta_{k,k'}, extended bilinearly.
ValuedRational pair(const DistElement& u, const PdPolynomial& f);

/// Cache of comultiplication expansions, for bulk oracle runs.
class ComulCache {
public:
    explicit ComulCache(unsigned n, unsigned np) : n_(n), np_(np) {}
    const std::vector<TensorTerm>& get(const Group& g, const MultiIndex& k, const LevelContext& ctx);

private:
    unsigned n_, np_;
    std::map<MultiIndex, std::vector<TensorTerm>> cache_;
};

/**
 * The duality-route product: (u.v)(t^{k}) = (u (x) v)(delta t^{k}).  The
 * independent oracle for the closed forms of mul() on Ga and Gm.
 */
DistElement mul_via_comul(const DistElement& u, const DistElement& v, ComulCache* cache = nullptr);

}  // namespace adist
