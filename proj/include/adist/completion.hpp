#pragma once

#include <optional>

#include "adist/pd_poly.hpp"

namespace adist {

/// Exact rational, prime-agnostic (certificate slopes, norm exponents).
using Frac = mpq_class;

/** Affine lower bound v(a_k) >= eta |k| + c witnessing dagger membership. */
struct GrowthCertificate {
    Frac eta;
    Frac c;

    GrowthCertificate(Frac e, Frac cc) : eta(std::move(e)), c(std::move(cc)) {
        if (eta <= 0) throw std::invalid_argument("GrowthCertificate: eta must be positive");
    }
};

/**
 * Declared generation law of a coefficient family past the horizon: the
 * valuations grow affinely with declared slope (slope 0 covers the constant
 * families).  Only what a test family genuinely declares; never inferred.
 */
struct ValuationPattern {
    Frac slope;
    Frac offset;
};

enum class DaggerVerdict { certified, refuted_at_horizon, indeterminate };

std::string to_string(DaggerVerdict v);

/**
 * Truncated model of an element of the completed algebra: finitely many
 * coefficients up to an order horizon, optionally carrying a growth
 * certificate (validated against the stored terms) and a declared pattern.
 */
class TruncatedSeries {
public:
    TruncatedSeries(LevelContext ctx, unsigned rank, unsigned long horizon)
        : ctx_(ctx), rank_(rank), horizon_(horizon) {}

    const LevelContext& ctx() const { return ctx_; }
    unsigned rank() const { return rank_; }
    unsigned long horizon() const { return horizon_; }
    const std::map<MultiIndex, ValuedRational>& terms() const { return terms_; }
    const std::optional<GrowthCertificate>& certificate() const { return cert_; }
    const std::optional<ValuationPattern>& pattern() const { return pattern_; }

    bool is_zero() const { return terms_.empty(); }
    bool in_infinity_basis() const { return ctx_.m.is_infinite(); }

    void add_term(const MultiIndex& k, const ValuedRational& c);
    /// Attach a certificate; rejected unless dominated by the stored valuations.
    void attach_certificate(const GrowthCertificate& cert);
    void declare_pattern(const ValuationPattern& pat) { pattern_ = pat; }

    /// Convert level-m coordinates to the xi^[k] basis (multiply by q_k!).
    TruncatedSeries to_infinity_basis() const;

private:
    LevelContext ctx_;
    unsigned rank_;
    unsigned long horizon_;
    std::map<MultiIndex, ValuedRational> terms_;
    std::optional<GrowthCertificate> cert_;
    std::optional<ValuationPattern> pattern_;
};

/// Does v(a_k) >= eta |k| + c hold on every stored term?
bool certificate_holds(const TruncatedSeries& s, const GrowthCertificate& cert);

/**
 * The finite-data shadow of the dagger criterion.  Requires [k]-basis
 * coordinates.  certified: the declared bound holds on every stored term;
 * refuted-at-horizon: the bound fails on stored data, or the declared pattern
 * (slope <= 0) admits no affine bound at all; indeterminate otherwise.  Full-
 * series membership is never claimed from finite data.
 */
DaggerVerdict dagger_classify(const TruncatedSeries& s);
DaggerVerdict dagger_classify(const TruncatedSeries& s, const GrowthCertificate& cert);

/// ord of the reductions mod p^{i+1}: for each i <= i_max the largest |k| with
/// v(a_k) <= i (-1 when the reduction vanishes); empty for the zero series.
std::vector<long> ord_profile(const TruncatedSeries& s, long i_max);

/** Norm value p^exponent; zero flags the zero series. */
struct PPower {
    bool zero = false;
    long exponent = 0;
};

/// Banach norm p^{-min v(a_k)} over the stored terms.
PPower banach_norm(const TruncatedSeries& s);

/// Kronecker pairing <xi^[k], t^{k'}> = delta, extended bilinearly.
ValuedRational ar_pairing(const TruncatedSeries& s, const PdPolynomial& f);

/** sup |a_k| r^{|k|} in exact log form, r = p^{-slope}. */
struct ArBound {
    bool zero = false;
    Frac log_p;  // log_p of the bound
    MultiIndex attained_at;
};

ArBound ar_norm_bound(const TruncatedSeries& s, const Frac& slope);

/** Valuation growth of the level-map factors q^(m)_k! / q^(m')_k!. */
struct PhiGrowth {
    std::vector<long> table;  // index k
    bool monotone = false;
    long max = 0;
    /// strictly larger at the end than at half range: the finite shadow of unboundedness
    bool unbounded_on_range = false;
};

PhiGrowth phi_valuation_growth(Level m, Level m2, unsigned long k_max, Prime p);

}  // namespace adist
