#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "adist/rational.hpp"

namespace adist {

/** The level m of the divided-power structure: a natural number or infinity. */
class Level {
public:
    Level() : m_(0) {}
    static Level finite(unsigned m) { Level l; l.m_ = m; return l; }
    static Level infinity() { Level l; l.m_.reset(); return l; }

    bool is_infinite() const { return !m_.has_value(); }
    unsigned value() const {
        if (!m_) throw std::logic_error("Level: value() on infinite level");
        return *m_;
    }

    friend bool operator==(const Level& a, const Level& b) { return a.m_ == b.m_; }
    friend bool operator!=(const Level& a, const Level& b) { return a.m_ != b.m_; }
    /// Partial order used by level maps: every finite level precedes infinity.
    friend bool operator<=(const Level& a, const Level& b) {
        if (b.is_infinite()) return true;
        if (a.is_infinite()) return false;
        return a.value() <= b.value();
    }

    std::string str() const { return m_ ? std::to_string(*m_) : std::string("inf"); }

private:
    std::optional<unsigned> m_;
};

/** A prime together with a level; fixed for a whole computation. */
struct LevelContext {
    Prime p;
    Level m;

    LevelContext(Prime prime, Level level) : p(prime), m(level) {}
    LevelContext(unsigned long prime, unsigned level) : p(prime), m(Level::finite(level)) {}

    friend bool operator==(const LevelContext& a, const LevelContext& b) {
        return a.p == b.p && a.m == b.m;
    }
    friend bool operator!=(const LevelContext& a, const LevelContext& b) { return !(a == b); }
};

/** Multi-index (k_1,...,k_N) of fixed length. */
struct MultiIndex {
    std::vector<std::uint32_t> e;

    MultiIndex() = default;
    explicit MultiIndex(std::size_t n) : e(n, 0) {}
    MultiIndex(std::initializer_list<std::uint32_t> init) : e(init) {}

    std::size_t size() const { return e.size(); }
    std::uint32_t operator[](std::size_t i) const { return e[i]; }
    std::uint32_t& operator[](std::size_t i) { return e[i]; }

    unsigned long total() const {
        unsigned long s = 0;
        for (auto k : e) s += k;
        return s;
    }

    /// Componentwise comparison (the partial order of the coefficient formulary).
    bool dominates(const MultiIndex& o) const {
        if (e.size() != o.e.size()) throw std::invalid_argument("MultiIndex: length mismatch");
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] < o.e[i]) return false;
        return true;
    }

    MultiIndex plus(const MultiIndex& o) const;
    MultiIndex minus(const MultiIndex& o) const;

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.e == b.e; }
    friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return a.e != b.e; }
    friend bool operator<(const MultiIndex& a, const MultiIndex& b) { return a.e < b.e; }
};

// ---- scalar combinatorics -------------------------------------------------

/// q_k = floor(k / p^m); 0 at level infinity, k at level 0.
unsigned long q_of(unsigned long k, const LevelContext& ctx);

/// v_p(k!) by Legendre's formula.
unsigned long factorial_valuation(unsigned long k, Prime p);
unsigned long factorial_valuation(unsigned long k, unsigned long p);

/// k!, memoized up to a configurable bound (default 1024).
const mpz_class& factorial(unsigned long k);
mpz_class binomial(unsigned long n, unsigned long k);
/// C(j,k) for an arbitrary integer j (generalized binomial, an integer).
mpz_class binomial_z(long j, unsigned long k);

/**
 * Exact product/quotient of factorials, assembled prime by prime from
 * Legendre's formula so the resulting fraction is born reduced and its
 * p-valuation costs no big-integer work.
 */
ValuedRational factorial_ratio(const std::vector<unsigned long>& numer,
                               const std::vector<unsigned long>& denom, Prime p);

/// The modified multinomial <k; k'> = q_k!/(q_{k'}! q_{k''}!), a natural number.
ValuedRational pd_multinomial(unsigned long k, unsigned long kp, const LevelContext& ctx);

/// The modified binomial {k; k'} = C(k,k') / <k; k'>, p-integral.
ValuedRational pd_binomial(unsigned long k, unsigned long kp, const LevelContext& ctx);

/// Componentwise products over a multi-index pair.
ValuedRational pd_multinomial(const MultiIndex& k, const MultiIndex& kp, const LevelContext& ctx);
ValuedRational pd_binomial(const MultiIndex& k, const MultiIndex& kp, const LevelContext& ctx);

/// q_uk! = prod q_{k_i}! as an exact integer.
ValuedRational q_factorial(const MultiIndex& k, const LevelContext& ctx);

}  // namespace adist
