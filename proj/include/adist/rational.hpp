#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace adist {

/** A prime number, checked at construction. */
class Prime {
public:
    explicit Prime(unsigned long p);
    unsigned long value() const { return p_; }
    friend bool operator==(const Prime& a, const Prime& b) { return a.p_ == b.p_; }
    friend bool operator!=(const Prime& a, const Prime& b) { return a.p_ != b.p_; }

private:
    unsigned long p_;
};

/// Valuation of zero.  Every finite valuation in this project is far below this.
inline constexpr long kValInfinity = std::numeric_limits<long>::max();

/**
 * Exact rational number carrying its p-adic valuation.
 *
 * The fraction is kept reduced with a positive denominator, and the valuation
 * v_p(num) - v_p(den) is computed once at construction.  Arithmetic between
 * values attached to different primes is rejected.
 */
class ValuedRational {
public:
    ValuedRational() : p_(2), val_(kValInfinity) { num_ = 0; den_ = 1; }
    explicit ValuedRational(Prime p) : ValuedRational(p.value()) {}
    explicit ValuedRational(unsigned long p) : p_(p), val_(kValInfinity) { num_ = 0; den_ = 1; }
    ValuedRational(Prime p, long n) : ValuedRational(p.value(), mpz_class(n), mpz_class(1)) {}
    ValuedRational(unsigned long p, long n) : ValuedRational(p, mpz_class(n), mpz_class(1)) {}
    ValuedRational(unsigned long p, mpz_class num, mpz_class den);

    /// Parse "a/b" or "a" (base 10).
    static ValuedRational parse(unsigned long p, const std::string& text);

    /// Trusted constructor: fraction already reduced, valuation already known.
    static ValuedRational from_reduced(unsigned long p, mpz_class num, mpz_class den, long val);

    const mpz_class& num() const { return num_; }
    const mpz_class& den() const { return den_; }
    unsigned long prime() const { return p_; }

    /// v_p of the value; kValInfinity for zero.
    long valuation() const { return val_; }

    bool is_zero() const { return num_ == 0; }
    bool is_one() const { return num_ == 1 && den_ == 1; }
    /// Lies in Z_(p), i.e. valuation >= 0.
    bool is_p_integral() const { return val_ >= 0; }
    /// Lies in Z (denominator 1).
    bool is_integer() const { return den_ == 1; }
    /// Unit of Z_p: valuation exactly 0.
    bool is_p_unit() const { return val_ == 0; }

    ValuedRational operator-() const;
    ValuedRational& operator+=(const ValuedRational& o);
    ValuedRational& operator-=(const ValuedRational& o);
    ValuedRational& operator*=(const ValuedRational& o);
    ValuedRational& operator/=(const ValuedRational& o);

    friend ValuedRational operator+(ValuedRational a, const ValuedRational& b) { return a += b; }
    friend ValuedRational operator-(ValuedRational a, const ValuedRational& b) { return a -= b; }
    friend ValuedRational operator*(ValuedRational a, const ValuedRational& b) { return a *= b; }
    friend ValuedRational operator/(ValuedRational a, const ValuedRational& b) { return a /= b; }

    friend bool operator==(const ValuedRational& a, const ValuedRational& b) {
        return a.p_ == b.p_ && a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const ValuedRational& a, const ValuedRational& b) { return !(a == b); }

    ValuedRational inverse() const;
    ValuedRational pow(unsigned long e) const;

    std::string str() const;

private:
    void check_same_prime(const ValuedRational& o) const;
    void normalize();

    mpz_class num_;
    mpz_class den_;   // > 0, coprime to num_
    unsigned long p_;
    long val_;        // cached v_p
};

/// v_p(n) for a nonzero integer; kValInfinity for 0.
long int_valuation(const mpz_class& n, unsigned long p);

}  // namespace adist
