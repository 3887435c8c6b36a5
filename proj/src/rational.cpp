#include "adist/rational.hpp"

namespace adist {

Prime::Prime(unsigned long p) : p_(p) {
    if (p < 2) throw std::invalid_argument("Prime: value must be >= 2");
    for (unsigned long d = 2; d * d <= p; ++d)
        if (p % d == 0) throw std::invalid_argument("Prime: " + std::to_string(p) + " is composite");
}

long int_valuation(const mpz_class& n, unsigned long p) {
    if (n == 0) return kValInfinity;
    mpz_class q, pz(static_cast<unsigned long>(p));
    // mpz_remove strips all factors of p and returns their count
    return static_cast<long>(mpz_remove(q.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t()));
}

ValuedRational::ValuedRational(unsigned long p, mpz_class num, mpz_class den)
    : num_(std::move(num)), den_(std::move(den)), p_(p) {
    if (den_ == 0) throw std::invalid_argument("ValuedRational: zero denominator");
    normalize();
}

void ValuedRational::normalize() {
    if (num_ == 0) {
        den_ = 1;
        val_ = kValInfinity;
        return;
    }
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
    if (g != 1) {
        mpz_divexact(num_.get_mpz_t(), num_.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
    }
    long vn = int_valuation(num_, p_);
    long vd = den_ == 1 ? 0 : int_valuation(den_, p_);
    val_ = vn - vd;
}

ValuedRational ValuedRational::from_reduced(unsigned long p, mpz_class num, mpz_class den, long val) {
    ValuedRational r(p);
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    r.val_ = r.num_ == 0 ? kValInfinity : val;
    return r;
}

ValuedRational ValuedRational::parse(unsigned long p, const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return ValuedRational(p, mpz_class(text), mpz_class(1));
    return ValuedRational(p, mpz_class(text.substr(0, slash)), mpz_class(text.substr(slash + 1)));
}

void ValuedRational::check_same_prime(const ValuedRational& o) const {
    if (p_ != o.p_)
        throw std::invalid_argument("ValuedRational: mixed primes " + std::to_string(p_) + " and " +
                                    std::to_string(o.p_));
}

ValuedRational ValuedRational::operator-() const {
    ValuedRational r = *this;
    r.num_ = -r.num_;
    return r;
}

ValuedRational& ValuedRational::operator+=(const ValuedRational& o) {
    check_same_prime(o);
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
}

ValuedRational& ValuedRational::operator-=(const ValuedRational& o) {
    check_same_prime(o);
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
}

ValuedRational& ValuedRational::operator*=(const ValuedRational& o) {
    check_same_prime(o);
    if (is_zero() || o.is_zero()) {
        num_ = 0;
        den_ = 1;
        val_ = kValInfinity;
        return *this;
    }
    // cross-reduce so the final gcd is trivial
    mpz_class g1, g2;
    mpz_gcd(g1.get_mpz_t(), num_.get_mpz_t(), o.den_.get_mpz_t());
    mpz_gcd(g2.get_mpz_t(), o.num_.get_mpz_t(), den_.get_mpz_t());
    mpz_class a = num_ / g1, b = o.num_ / g2, c = den_ / g2, d = o.den_ / g1;
    num_ = a * b;
    den_ = c * d;
    val_ += o.val_;
    return *this;
}

ValuedRational& ValuedRational::operator/=(const ValuedRational& o) {
    if (o.is_zero()) throw std::domain_error("ValuedRational: division by zero");
    return *this *= o.inverse();
}

ValuedRational ValuedRational::inverse() const {
    if (is_zero()) throw std::domain_error("ValuedRational: inverse of zero");
    ValuedRational r(p_);
    if (num_ < 0) { r.num_ = -den_; r.den_ = -num_; }
    else { r.num_ = den_; r.den_ = num_; }
    r.val_ = -val_;
    return r;
}

ValuedRational ValuedRational::pow(unsigned long e) const {
    ValuedRational r(p_, 1);
    ValuedRational base = *this;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

std::string ValuedRational::str() const {
    if (den_ == 1) return num_.get_str();
    return num_.get_str() + "/" + den_.get_str();
}

}  // namespace adist
