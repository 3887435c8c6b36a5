#pragma once

#include "adist/dist_elem.hpp"

namespace adist {

/** One-dimensional chart carrying level-m differential operators. */
struct Chart {
    enum class Kind { affine_line, torus, p1 };

    Kind kind = Kind::affine_line;
    unsigned index = 0;  // P1 chart index, 0 or 1

    static Chart affine_line() { return {Kind::affine_line, 0}; }
    static Chart torus() { return {Kind::torus, 0}; }
    static Chart p1(unsigned i) {
        if (i > 1) throw std::invalid_argument("Chart: P1 chart index is 0 or 1");
        return {Kind::p1, i};
    }

    /// Coordinate label used in printing: T on the torus, t elsewhere.
    std::string coord() const { return kind == Kind::torus ? "T" : "t"; }
    bool allows_poles() const { return kind != Kind::affine_line; }

    friend bool operator==(const Chart& a, const Chart& b) {
        return a.kind == b.kind && a.index == b.index;
    }
    friend bool operator!=(const Chart& a, const Chart& b) { return !(a == b); }

    std::string str() const;
};

/// Laurent polynomial in the chart coordinate.
using LaurentPoly = std::map<long, ValuedRational>;

/**
 * Level-m differential operator on a chart: sum a_{jk} t^j d^<k> with
 * d^<k> = q_k! d^k / k!.  The affine line forbids negative Laurent exponents.
 */
class DiffOp {
public:
    DiffOp(LevelContext ctx, Chart chart) : ctx_(ctx), chart_(chart) {}

    static DiffOp zero(const LevelContext& ctx, const Chart& c) { return DiffOp(ctx, c); }
    static DiffOp unit(const LevelContext& ctx, const Chart& c);
    /// a t^j d^<k>
    static DiffOp term(const LevelContext& ctx, const Chart& c, long j, unsigned long k,
                       const ValuedRational& a);

    const LevelContext& ctx() const { return ctx_; }
    const Chart& chart() const { return chart_; }
    const std::map<std::pair<long, unsigned long>, ValuedRational>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    /// max divided-power order k
    long order() const;
    /// most negative Laurent exponent present (0 when none)
    long min_laurent() const;
    bool is_integral() const;
    bool pole_free() const { return min_laurent() >= 0; }

    ValuedRational coefficient(long j, unsigned long k) const;
    void add_term(long j, unsigned long k, const ValuedRational& c);

    DiffOp operator-() const;
    DiffOp& operator+=(const DiffOp& o);
    DiffOp& operator-=(const DiffOp& o);
    friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
    friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
    DiffOp scaled(const ValuedRational& c) const;

    friend bool operator==(const DiffOp& a, const DiffOp& b) {
        return a.ctx_ == b.ctx_ && a.chart_ == b.chart_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const DiffOp& a, const DiffOp& b) { return !(a == b); }

    std::string str() const;

private:
    LevelContext ctx_;
    Chart chart_;
    std::map<std::pair<long, unsigned long>, ValuedRational> terms_;
};

/// Operator composition, normalized with coefficients to the left of the d's:
/// d^<k> f = sum <k;k'> d^<k'>(f) d^<k''> and d^<a> d^<b> = {a+b;a} d^<a+b>.
DiffOp compose(const DiffOp& P, const DiffOp& Q);
DiffOp op_commutator(const DiffOp& P, const DiffOp& Q);
DiffOp op_pow(const DiffOp& P, unsigned long e);

/// d^<k>(t^j) = q_k! C(j,k) t^{j-k}, extended bilinearly.
LaurentPoly apply(const DiffOp& P, const LaurentPoly& f);

/**
 * The anti-homomorphism Q_m from distributions to chart operators: Ga gives
 * xi^<k> -> d^<k> on the affine line, Gm gives xi^<k> -> T^k d^<k> on the
 * torus, and sl2 maps through the infinitesimal-action vector fields on a P1
 * chart (chart 0: e -> -d, h -> 2td, f -> t^2 d, extended anti-multiplicatively
 * over K).  Integrality of the image is a property to check, never assumed.
 */
DiffOp qmap(const DistElement& u, const Chart& target);

/// The sl2/P1 branch of qmap with an explicit twist weight; lambda = 0 is the
/// untwisted map.  flag_p1 drives the twisted variant.
DiffOp qmap_sl2(const DistElement& u, const Chart& target, long lambda);

/// P(e) as a distribution; inverse of qmap on group charts (0 resp. 1 is the identity).
DistElement eval_at_identity(const DiffOp& P, const Group& g);

/// Pushforward along t -> t + c (Ga chart) or t -> c t (Gm chart, c a p-adic unit).
DiffOp translate_conjugate(const DiffOp& P, const ValuedRational& c);

/// Lattice basis of the operators of order <= n invariant under a symbolic
/// translation, computed by an exact linear solve degree by degree.
std::vector<DiffOp> invariant_operators(unsigned n, const Group& g, const LevelContext& ctx);

}  // namespace adist
