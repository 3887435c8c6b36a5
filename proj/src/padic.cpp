#include "adist/padic.hpp"

#include <algorithm>
#include <mutex>

namespace adist {

MultiIndex MultiIndex::plus(const MultiIndex& o) const {
    if (e.size() != o.e.size()) throw std::invalid_argument("MultiIndex: length mismatch");
    MultiIndex r(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] = e[i] + o.e[i];
    return r;
}

MultiIndex MultiIndex::minus(const MultiIndex& o) const {
    if (!dominates(o)) throw std::invalid_argument("MultiIndex: subtraction would go negative");
    MultiIndex r(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] = e[i] - o.e[i];
    return r;
}

unsigned long q_of(unsigned long k, const LevelContext& ctx) {
    if (ctx.m.is_infinite()) return 0;
    unsigned long pm = 1;
    const unsigned long p = ctx.p.value();
    for (unsigned i = 0; i < ctx.m.value(); ++i) {
        if (pm > k) return 0;  // p^m already exceeds k
        pm *= p;
    }
    return k / pm;
}

unsigned long factorial_valuation(unsigned long k, unsigned long p) {
    unsigned long v = 0;
    while (k) {
        k /= p;
        v += k;
    }
    return v;
}

unsigned long factorial_valuation(unsigned long k, Prime p) {
    return factorial_valuation(k, p.value());
}

namespace {

constexpr unsigned long kFactorialCacheBound = 1024;

std::mutex g_fact_mutex;
std::vector<mpz_class> g_factorials{mpz_class(1)};  // g_factorials[n] = n!

std::mutex g_sieve_mutex;
std::vector<unsigned long> g_primes;
unsigned long g_sieve_limit = 0;

void extend_sieve(unsigned long limit) {
    if (limit <= g_sieve_limit) return;
    limit = std::max<unsigned long>(limit, 1024);
    std::vector<bool> comp(limit + 1, false);
    g_primes.clear();
    for (unsigned long i = 2; i <= limit; ++i) {
        if (!comp[i]) {
            g_primes.push_back(i);
            for (unsigned long j = i * i; j <= limit; j += i) comp[j] = true;
        }
    }
    g_sieve_limit = limit;
}

}  // namespace

const mpz_class& factorial(unsigned long k) {
    std::scoped_lock lock(g_fact_mutex);
    if (k >= g_factorials.size()) {
        if (k > kFactorialCacheBound)
            throw std::invalid_argument("factorial: argument exceeds cache bound " +
                                        std::to_string(kFactorialCacheBound));
        g_factorials.reserve(k + 1);
        for (unsigned long n = g_factorials.size(); n <= k; ++n)
            g_factorials.push_back(g_factorials.back() * static_cast<unsigned long>(n));
    }
    return g_factorials[k];
}

mpz_class binomial(unsigned long n, unsigned long k) {
    if (k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

mpz_class binomial_z(long j, unsigned long k) {
    // C(j,k) = j(j-1)...(j-k+1)/k!, an integer for every integer j
    mpz_class num = 1;
    for (unsigned long i = 0; i < k; ++i) num *= mpz_class(j - static_cast<long>(i));
    mpz_class r;
    mpz_divexact(r.get_mpz_t(), num.get_mpz_t(), factorial(k).get_mpz_t());
    return r;
}

ValuedRational factorial_ratio(const std::vector<unsigned long>& numer,
                               const std::vector<unsigned long>& denom, Prime p) {
    unsigned long maxn = 1;
    for (auto n : numer) maxn = std::max(maxn, n);
    for (auto n : denom) maxn = std::max(maxn, n);

    std::scoped_lock lock(g_sieve_mutex);
    extend_sieve(maxn);

    mpz_class num(1), den(1);
    long val = 0;
    const unsigned long pv = p.value();
    for (unsigned long q : g_primes) {
        if (q > maxn) break;
        long e = 0;
        for (auto n : numer) e += static_cast<long>(factorial_valuation(n, q));
        for (auto n : denom) e -= static_cast<long>(factorial_valuation(n, q));
        if (q == pv) val = e;
        if (e > 0) {
            mpz_class pw;
            mpz_ui_pow_ui(pw.get_mpz_t(), q, static_cast<unsigned long>(e));
            num *= pw;
        } else if (e < 0) {
            mpz_class pw;
            mpz_ui_pow_ui(pw.get_mpz_t(), q, static_cast<unsigned long>(-e));
            den *= pw;
        }
    }
    return ValuedRational::from_reduced(pv, std::move(num), std::move(den), val);
}

ValuedRational pd_multinomial(unsigned long k, unsigned long kp, const LevelContext& ctx) {
    if (kp > k) throw std::invalid_argument("pd_multinomial: k' > k");
    const unsigned long kpp = k - kp;
    return factorial_ratio({q_of(k, ctx)}, {q_of(kp, ctx), q_of(kpp, ctx)}, ctx.p);
}

ValuedRational pd_binomial(unsigned long k, unsigned long kp, const LevelContext& ctx) {
    if (kp > k) throw std::invalid_argument("pd_binomial: k' > k");
    const unsigned long kpp = k - kp;
    // C(k,k') / <k;k'> as one factorial ratio
    return factorial_ratio({k, q_of(kp, ctx), q_of(kpp, ctx)},
                           {kp, kpp, q_of(k, ctx)}, ctx.p);
}

ValuedRational pd_multinomial(const MultiIndex& k, const MultiIndex& kp, const LevelContext& ctx) {
    if (!k.dominates(kp)) throw std::invalid_argument("pd_multinomial: uk' > uk componentwise");
    std::vector<unsigned long> num, den;
    for (std::size_t i = 0; i < k.size(); ++i) {
        num.push_back(q_of(k[i], ctx));
        den.push_back(q_of(kp[i], ctx));
        den.push_back(q_of(k[i] - kp[i], ctx));
    }
    return factorial_ratio(num, den, ctx.p);
}

ValuedRational pd_binomial(const MultiIndex& k, const MultiIndex& kp, const LevelContext& ctx) {
    if (!k.dominates(kp)) throw std::invalid_argument("pd_binomial: uk' > uk componentwise");
    std::vector<unsigned long> num, den;
    for (std::size_t i = 0; i < k.size(); ++i) {
        num.push_back(k[i]);
        num.push_back(q_of(kp[i], ctx));
        num.push_back(q_of(k[i] - kp[i], ctx));
        den.push_back(kp[i]);
        den.push_back(k[i] - kp[i]);
        den.push_back(q_of(k[i], ctx));
    }
    return factorial_ratio(num, den, ctx.p);
}

ValuedRational q_factorial(const MultiIndex& k, const LevelContext& ctx) {
    std::vector<unsigned long> num;
    for (std::size_t i = 0; i < k.size(); ++i) num.push_back(q_of(k[i], ctx));
    return factorial_ratio(num, {}, ctx.p);
}

}  // namespace adist
