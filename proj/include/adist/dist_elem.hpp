#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "adist/chevalley.hpp"
#include "adist/padic.hpp"

namespace adist {

/**
 * Element of D^(m)(G): a finite linear combination of divided-power PBW
 * monomials.  For toral groups a monomial is xi_1^<k_1>...xi_N^<k_N>; for a
 * reductive group the exponent vector runs over the basis order
 * [N-part | torus | Nbar-part], the torus slots being binomial generators
 * q_k! C(xi'', k).  At level infinity the same container holds coordinates in
 * the xi^[k] basis.
 */
class DistElement {
public:
    DistElement(Group group, LevelContext ctx) : group_(std::move(group)), ctx_(ctx) {}

    static DistElement zero(const Group& g, const LevelContext& ctx) { return DistElement(g, ctx); }
    static DistElement unit(const Group& g, const LevelContext& ctx);
    /// The basis element xi^<k> (coefficient 1).
    static DistElement basis(const Group& g, const LevelContext& ctx, const MultiIndex& k);
    /// Single generator slot i with divided exponent k.
    static DistElement generator(const Group& g, const LevelContext& ctx, unsigned slot, std::uint32_t k = 1);

    const Group& group() const { return group_; }
    const LevelContext& ctx() const { return ctx_; }
    const std::map<MultiIndex, ValuedRational>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    /// max |k| over terms; -1 for the zero element.
    long order() const;
    /// every coefficient has valuation >= 0
    bool is_integral() const;

    ValuedRational coefficient(const MultiIndex& k) const;
    void set_coefficient(const MultiIndex& k, const ValuedRational& c);
    void add_term(const MultiIndex& k, const ValuedRational& c);

    DistElement operator-() const;
    DistElement& operator+=(const DistElement& o);
    DistElement& operator-=(const DistElement& o);
    friend DistElement operator+(DistElement a, const DistElement& b) { return a += b; }
    friend DistElement operator-(DistElement a, const DistElement& b) { return a -= b; }
    DistElement scaled(const ValuedRational& c) const;

    friend bool operator==(const DistElement& a, const DistElement& b) {
        return a.group_ == b.group_ && a.ctx_ == b.ctx_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const DistElement& a, const DistElement& b) { return !(a == b); }

    /// Deterministic print: terms by (degree, lex), "3*xi<4> + ..." style.
    std::string str() const;

private:
    void check_compatible(const DistElement& o) const;

    Group group_;
    LevelContext ctx_;
    std::map<MultiIndex, ValuedRational> terms_;
};

/// Product in D^(m)(G): closed forms for Ga/Gm/products, the enveloping-algebra
/// route for reductive groups.
DistElement mul(const DistElement& u, const DistElement& v);
DistElement commutator(const DistElement& u, const DistElement& v);

/// Level map Phi_{m,m'} for m' >= m (coefficient rescale by q^(m)! / q^(m')!).
DistElement level_map(const DistElement& u, Level target);

/** Image in the level-m symmetric algebra: the top-degree part. */
struct SymbolElement {
    DistElement value;

    long degree() const { return value.order(); }
};

SymbolElement symbol(const DistElement& u);
/// Product in Sym^(m)(Lie G): componentwise cro coefficients, commutative.
SymbolElement symbol_mul(const SymbolElement& a, const SymbolElement& b);

// ---- normalize ------------------------------------------------------------

enum class PowerStyle {
    plain,   // g^k, an ordinary k-th power
    angle,   // g<k>, the level-m divided power basis element
    square,  // g[k], the level-infinity basis element (g^k/k! resp. binom(g,k))
};

struct WordFactor {
    std::string label;
    std::uint32_t exponent = 1;
    PowerStyle style = PowerStyle::plain;
};

/// PBW normal form of a noncommutative word with a rational scalar in front.
DistElement normalize(std::span<const WordFactor> word, const ValuedRational& scalar,
                      const Group& g, const LevelContext& ctx);

// ---- Gm recurrences ---------------------------------------------------------

struct GmRecurrenceReport {
    bool recurrence_holds = false;   // k (or p^m) xi^<k> = (xi-k+1) xi^<k-1>
    bool closed_form_holds = false;  // k!/q_k! xi^<k> = (xi-k+1)...(xi-1)xi
    std::string detail;
};

GmRecurrenceReport gm_recurrence_check(unsigned long k, const LevelContext& ctx);

// ---- commutator identity suite (the executable 5.4.2 ingredients) ----------

struct SuiteBounds {
    unsigned max_power_exp = 3;   // k in xi^{p^k}, capped so p^k stays desk-scale
    unsigned max_binom = 8;       // k in [C(xi'',k), xi]
    unsigned max_shift = 8;       // |n| in C(xi''-n, k)
};

struct SuiteItem {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteReport {
    std::vector<SuiteItem> items;
    bool all_pass() const {
        for (auto& i : items)
            if (!i.pass) return false;
        return true;
    }
};

SuiteReport commutator_identity_suite(const std::shared_ptr<const ChevalleyDatum>& datum,
                                      const LevelContext& ctx, const SuiteBounds& bounds = {});

/// Kostant check: (e^k/k!)(f^k/k!) has coefficient 1 on C(h,k) in the
/// binomial PBW basis and p-integral coefficients everywhere.
bool kostant_check(const std::shared_ptr<const ChevalleyDatum>& datum, unsigned triple_index,
                   unsigned long k, Prime p, std::string* detail = nullptr);

}  // namespace adist
